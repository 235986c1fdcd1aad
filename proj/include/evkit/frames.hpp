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

#ifndef EVKIT_FRAMES_HPP
#define EVKIT_FRAMES_HPP

#include <cstddef>
#include <filesystem>
#include <vector>

#include "evkit/image.hpp"

namespace evkit
{

/// Grayscale frames in [0,1] at a fixed rate.
struct FrameSequence
{
  std::size_t width = 0;
  std::size_t height = 0;
  double fps = 30.0;
  std::vector<Image> frames;

  std::size_t size() const { return frames.size(); }
  /// Throws std::invalid_argument on an empty sequence, mismatched frame
  /// sizes, or a non-positive frame rate.
  void validate() const;
};

/// Reads every `*.pgm` in `dir` in lexicographic filename order.
FrameSequence read_frame_dir(const std::filesystem::path & dir, double fps);

/// Writes `frame_00000.pgm`, `frame_00001.pgm`, ... into `dir` (created if needed).
void write_frame_dir(const std::filesystem::path & dir, const FrameSequence & seq);

}  // namespace evkit

#endif  // EVKIT_FRAMES_HPP
