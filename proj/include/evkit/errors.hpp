// Copyright 2026 The evkit Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef EVKIT_ERRORS_HPP
#define EVKIT_ERRORS_HPP

#include <cstddef>
#include <stdexcept>
#include <string>

namespace evkit
{

/// Base for failures caused by input data rather than by the caller's arguments.
class DataError : public std::runtime_error
{
public:
  using std::runtime_error::runtime_error;
};

class ParseError : public DataError
{
public:
  ParseError(std::size_t line, const std::string & what)
  : DataError("line " + std::to_string(line) + ": " + what), line_(line)
  {
  }
  std::size_t line() const { return line_; }

private:
  std::size_t line_;
};

class OrderError : public DataError
{
public:
  using DataError::DataError;
};

class FormatError : public DataError
{
public:
  using DataError::DataError;
};

/// Raised when a measurement has no defined answer (e.g. registering constant frames).
class UndefinedError : public DataError
{
public:
  using DataError::DataError;
};

}  // namespace evkit

#endif  // EVKIT_ERRORS_HPP
