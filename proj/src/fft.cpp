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

#include "evkit/fft.hpp"

#include <fftw3.h>

#include <map>
#include <mutex>
#include <stdexcept>
#include <tuple>
#include <vector>

namespace evkit
{
namespace
{
void execute(void * plan, std::span<const std::complex<double>> in, std::span<std::complex<double>> out)
{
  if (in.data() == out.data()) {
    std::vector<std::complex<double>> copy(in.begin(), in.end());
    fftw_execute_dft(
      static_cast<fftw_plan>(plan), reinterpret_cast<fftw_complex *>(copy.data()),
      reinterpret_cast<fftw_complex *>(out.data()));
    return;
  }
  fftw_execute_dft(
    static_cast<fftw_plan>(plan),
    reinterpret_cast<fftw_complex *>(const_cast<std::complex<double> *>(in.data())),
    reinterpret_cast<fftw_complex *>(out.data()));
}

// The FFTW planner is not thread-safe; execution with the new-array interface is.
std::mutex g_plan_mutex;

fftw_plan get_plan(std::size_t w, std::size_t h, int sign)
{
  if (w == 0 || h == 0) throw std::invalid_argument("FFT size must be positive");
  static std::map<std::tuple<std::size_t, std::size_t, int>, fftw_plan> cache;
  std::lock_guard<std::mutex> lock(g_plan_mutex);
  const auto key = std::make_tuple(w, h, sign);
  if (auto it = cache.find(key); it != cache.end()) return it->second;

  std::vector<std::complex<double>> scratch_in(w * h), scratch_out(w * h);
  // Out-of-place, FFTW_UNALIGNED: plans run on arbitrary std::vector storage
  // and give identical results regardless of buffer alignment.
  fftw_plan plan = fftw_plan_dft_2d(
    static_cast<int>(h), static_cast<int>(w), reinterpret_cast<fftw_complex *>(scratch_in.data()),
    reinterpret_cast<fftw_complex *>(scratch_out.data()), sign, FFTW_ESTIMATE | FFTW_UNALIGNED);
  if (!plan) throw std::runtime_error("FFTW planning failed");
  cache.emplace(key, plan);
  return plan;
}
}  // namespace

Fft2d::Fft2d(std::size_t width, std::size_t height)
: width_(width),
  height_(height),
  forward_plan_(get_plan(width, height, FFTW_FORWARD)),
  inverse_plan_(get_plan(width, height, FFTW_BACKWARD))
{
}

void Fft2d::forward(std::span<const std::complex<double>> in, std::span<std::complex<double>> out) const
{
  if (in.size() != width_ * height_ || out.size() != in.size()) {
    throw std::invalid_argument("FFT buffer size mismatch");
  }
  execute(forward_plan_, in, out);
}

void Fft2d::inverse(std::span<const std::complex<double>> in, std::span<std::complex<double>> out) const
{
  if (in.size() != width_ * height_ || out.size() != in.size()) {
    throw std::invalid_argument("FFT buffer size mismatch");
  }
  execute(inverse_plan_, in, out);
  const double scale = 1.0 / static_cast<double>(out.size());
  for (auto & v : out) v *= scale;
}

ComplexGrid Fft2d::forward(const ComplexGrid & in) const
{
  ComplexGrid out(width_, height_);
  forward(in.data, out.data);
  return out;
}

ComplexGrid Fft2d::forward(const Image & in) const
{
  ComplexGrid tmp(in.width, in.height);
  for (std::size_t i = 0; i < in.size(); ++i) tmp.data[i] = in.data[i];
  return forward(tmp);
}

ComplexGrid Fft2d::inverse(const ComplexGrid & in) const
{
  ComplexGrid out(width_, height_);
  inverse(in.data, out.data);
  return out;
}

}  // namespace evkit
