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

#ifndef EVKIT_STEERABLE_HPP
#define EVKIT_STEERABLE_HPP

#include <cstddef>
#include <memory>
#include <span>
#include <vector>

#include "evkit/fft.hpp"
#include "evkit/image.hpp"

namespace evkit
{

struct BandInfo
{
  std::size_t level = 0;        // 0 = finest
  std::size_t orientation = 0;
  double theta = 0.0;           // preferred orientation, radians in [0, pi)
  double center_freq = 0.0;     // radial peak, cycles per pixel
};

/// Frequency-domain window of one complex band, sampled on the padded grid.
struct BandMask
{
  BandInfo info;
  std::vector<double> real;      // symmetric window m(f)
  std::vector<double> analytic;  // m(f) times the one-sided factor {0, 1, 2}
};

/// Complex steerable pyramid filters for one frame size.
///
/// Frames are mirror-padded by `pad` pixels on each side before the transform.
/// Radial windows are raised-cosine in log2 frequency with a transition width
/// of 1/octave_fraction octaves; angular windows are alpha |cos(theta - theta_k)|^(K-1).
/// Bands are stored at full resolution.
class FilterBank
{
public:
  static constexpr std::size_t kDefaultPad = 16;

  /// Throws std::invalid_argument when width or height < 16, n_orientations < 2,
  /// or octave_fraction is not 1 or 2.
  static FilterBank build(
    std::size_t width, std::size_t height, std::size_t n_orientations = 4, std::size_t octave_fraction = 1,
    std::size_t pad = kDefaultPad);

  std::size_t width() const { return width_; }
  std::size_t height() const { return height_; }
  std::size_t pad() const { return pad_; }
  std::size_t grid_width() const { return width_ + 2 * pad_; }
  std::size_t grid_height() const { return height_ + 2 * pad_; }
  std::size_t n_orientations() const { return n_orientations_; }
  std::size_t octave_fraction() const { return octave_fraction_; }
  std::size_t n_levels() const { return n_levels_; }

  std::span<const BandMask> bands() const { return bands_; }
  /// The low-pass residual split into one analytic band per orientation.
  std::span<const BandMask> lowpass_bands() const { return lowpass_bands_; }
  std::span<const double> highpass() const { return highpass_; }
  std::span<const double> lowpass() const { return lowpass_; }
  const Fft2d & fft() const { return *fft_; }

  /// max over frequency samples of |sum of squared masks - 1|.
  double tiling_residual() const;

  /// Mirror-pads `frame` to the grid and returns its spectrum.
  ComplexGrid spectrum(const Image & frame) const;
  /// Inverse of the padding: the frame-sized window of a grid-sized image.
  Image crop(std::span<const double> grid) const;

  bool operator==(const FilterBank & o) const
  {
    return width_ == o.width_ && height_ == o.height_ && pad_ == o.pad_ && n_orientations_ == o.n_orientations_ &&
           octave_fraction_ == o.octave_fraction_;
  }

private:
  std::size_t width_ = 0, height_ = 0, pad_ = 0;
  std::size_t n_orientations_ = 0, octave_fraction_ = 1, n_levels_ = 0;
  std::vector<BandMask> bands_;
  std::vector<BandMask> lowpass_bands_;
  std::vector<double> highpass_;
  std::vector<double> lowpass_;
  std::shared_ptr<const Fft2d> fft_;
};

/// Complex band coefficients on the padded grid plus the real residuals.
struct Pyramid
{
  std::size_t grid_width = 0;
  std::size_t grid_height = 0;
  std::vector<ComplexGrid> bands;  // same order as FilterBank::bands()
  Image highpass;
  Image lowpass;
};

/// Throws std::invalid_argument if the frame size differs from the bank's.
Pyramid decompose(const Image & frame, const FilterBank & bank);
/// Same as decompose, starting from `bank.spectrum(frame)`.
Pyramid decompose_spectrum(const ComplexGrid & spectrum, const FilterBank & bank);

/// Complex response of one band: IFFT(analytic mask * spectrum).
ComplexGrid band_coefficients(const ComplexGrid & spectrum, const BandMask & band, const Fft2d & fft);

/// Adds mask * FFT(coeffs) into `accum` (the synthesis half of one band).
void accumulate_band(const ComplexGrid & coeffs, const BandMask & band, const Fft2d & fft, ComplexGrid & accum);

/// Throws std::invalid_argument if the pyramid does not match the bank.
Image reconstruct(const Pyramid & pyr, const FilterBank & bank);

/// Multiplies every coefficient of band b by exp(i offsets[b]).
/// Throws std::invalid_argument if offsets.size() differs from the band count.
Pyramid shift_phase(const Pyramid & pyr, std::span<const double> offsets);

/// Wraps into (-pi, pi].
double wrap_phase(double phi);

/// Energy of the real part of each band followed by the high-pass and
/// low-pass residual energies.
std::vector<double> band_energies(const Pyramid & pyr);

}  // namespace evkit

#endif  // EVKIT_STEERABLE_HPP
