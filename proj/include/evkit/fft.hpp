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

#ifndef EVKIT_FFT_HPP
#define EVKIT_FFT_HPP

#include <complex>
#include <cstddef>
#include <span>

#include "evkit/image.hpp"

namespace evkit
{

/// Exact-size 2-D DFT over row-major complex grids (FFTW backend).
///
/// forward: X[k] = sum_n x[n] exp(-2 pi i k.n / N)
/// inverse: x[n] = (1/N) sum_k X[k] exp(+2 pi i k.n / N)
///
/// Plans are created once per size and shared. Transforms may be called
/// concurrently from any thread.
class Fft2d
{
public:
  Fft2d(std::size_t width, std::size_t height);

  std::size_t width() const { return width_; }
  std::size_t height() const { return height_; }

  void forward(std::span<const std::complex<double>> in, std::span<std::complex<double>> out) const;
  void inverse(std::span<const std::complex<double>> in, std::span<std::complex<double>> out) const;

  ComplexGrid forward(const ComplexGrid & in) const;
  ComplexGrid forward(const Image & in) const;
  ComplexGrid inverse(const ComplexGrid & in) const;

private:
  std::size_t width_;
  std::size_t height_;
  void * forward_plan_;
  void * inverse_plan_;
};

/// Signed frequency (cycles per sample) of DFT bin `k` out of `n`: k/n for
/// k < n/2, (k - n)/n otherwise. The Nyquist bin of an even n maps to -0.5.
inline double bin_frequency(std::size_t k, std::size_t n)
{
  const double kk = static_cast<double>(k);
  const double nn = static_cast<double>(n);
  return 2 * k < n ? kk / nn : (kk - nn) / nn;
}

}  // namespace evkit

#endif  // EVKIT_FFT_HPP
