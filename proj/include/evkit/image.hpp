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

#ifndef EVKIT_IMAGE_HPP
#define EVKIT_IMAGE_HPP

#include <complex>
#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <vector>

namespace evkit
{

/// Row-major 2-D grid.
template <typename T>
struct Grid
{
  std::size_t width = 0;
  std::size_t height = 0;
  std::vector<T> data;

  Grid() = default;
  Grid(std::size_t w, std::size_t h, T fill = T{}) : width(w), height(h), data(w * h, fill) {}

  T & operator()(std::size_t x, std::size_t y) { return data[y * width + x]; }
  const T & operator()(std::size_t x, std::size_t y) const { return data[y * width + x]; }
  std::size_t size() const { return data.size(); }
  bool same_shape(std::size_t w, std::size_t h) const { return width == w && height == h; }

  friend bool operator==(const Grid &, const Grid &) = default;
};

using Image = Grid<double>;
using ComplexGrid = Grid<std::complex<double>>;

struct RgbImage
{
  std::size_t width = 0;
  std::size_t height = 0;
  std::vector<std::uint8_t> rgb;  // 3 bytes per pixel, row-major

  RgbImage() = default;
  RgbImage(std::size_t w, std::size_t h) : width(w), height(h), rgb(w * h * 3, 0) {}
  void set(std::size_t x, std::size_t y, std::uint8_t r, std::uint8_t g, std::uint8_t b)
  {
    auto * p = &rgb[(y * width + x) * 3];
    p[0] = r;
    p[1] = g;
    p[2] = b;
  }
};

/// 8-bit binary PGM (P5). Values are mapped [0,1] <-> [0,255] with rounding and clamping.
Image read_pgm(const std::filesystem::path & path);
void write_pgm(const std::filesystem::path & path, const Image & img);

/// Binary PPM (P6).
void write_ppm(const std::filesystem::path & path, const RgbImage & img);
/// 8-bit RGB PNG.
void write_png(const std::filesystem::path & path, const RgbImage & img);
/// Writes PNG for a `.png` extension, PPM otherwise.
void write_rgb_image(const std::filesystem::path & path, const RgbImage & img);

}  // namespace evkit

#endif  // EVKIT_IMAGE_HPP
