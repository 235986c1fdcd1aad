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

#include "evkit/frames.hpp"

#include <algorithm>
#include <cstdio>
#include <stdexcept>

#include "evkit/errors.hpp"

namespace evkit
{

void FrameSequence::validate() const
{
  if (frames.empty()) throw std::invalid_argument("frame sequence is empty");
  if (!(fps > 0)) throw std::invalid_argument("fps must be positive");
  for (const auto & f : frames) {
    if (!f.same_shape(width, height)) throw std::invalid_argument("frames differ in size");
  }
}

FrameSequence read_frame_dir(const std::filesystem::path & dir, double fps)
{
  if (!std::filesystem::is_directory(dir)) throw DataError("not a directory: " + dir.string());
  std::vector<std::filesystem::path> files;
  for (const auto & entry : std::filesystem::directory_iterator(dir)) {
    if (entry.is_regular_file() && entry.path().extension() == ".pgm") files.push_back(entry.path());
  }
  std::sort(files.begin(), files.end());
  if (files.empty()) throw DataError("no .pgm frames in " + dir.string());

  FrameSequence seq;
  seq.fps = fps;
  for (const auto & f : files) seq.frames.push_back(read_pgm(f));
  seq.width = seq.frames.front().width;
  seq.height = seq.frames.front().height;
  for (const auto & f : seq.frames) {
    if (!f.same_shape(seq.width, seq.height)) throw FormatError("frames in " + dir.string() + " differ in size");
  }
  if (!(fps > 0)) throw std::invalid_argument("fps must be positive");
  return seq;
}

void write_frame_dir(const std::filesystem::path & dir, const FrameSequence & seq)
{
  std::filesystem::create_directories(dir);
  char name[32];
  for (std::size_t i = 0; i < seq.frames.size(); ++i) {
    std::snprintf(name, sizeof(name), "frame_%05zu.pgm", i);
    write_pgm(dir / name, seq.frames[i]);
  }
}

}  // namespace evkit
