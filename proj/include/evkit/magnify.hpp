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

#ifndef EVKIT_MAGNIFY_HPP
#define EVKIT_MAGNIFY_HPP

#include <complex>
#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "evkit/freqmap.hpp"
#include "evkit/frames.hpp"
#include "evkit/steerable.hpp"

namespace evkit
{

enum class FilterKind { Butterworth, Fir };

struct TemporalFilter
{
  FilterKind kind = FilterKind::Butterworth;
  std::size_t order = 2;     // butterworth
  std::size_t n_taps = 65;   // fir, odd
  double f_lo_hz = 0.0;
  double f_hi_hz = 0.0;
  double sample_rate = 30.0;

  /// Throws std::invalid_argument unless 0 < f_lo < f_hi < sample_rate / 2,
  /// order >= 1 and n_taps is odd and >= 3.
  void validate() const;
};

/// Direct-form II transposed second-order section, a0 = 1.
struct Biquad
{
  double b0 = 0, b1 = 0, b2 = 0;
  double a1 = 0, a2 = 0;
};

/// A designed bandpass filter.
///
/// Butterworth: analog prototype mapped to a bandpass with prewarped edges and
/// discretised by the bilinear transform, as a cascade of biquads normalised to
/// unit gain at the geometric centre of the band. Applied causally.
///
/// FIR: Hamming-windowed sinc with unit gain at the arithmetic band centre,
/// applied with its (n_taps - 1) / 2 sample delay removed (samples outside the
/// series are zero).
class DesignedFilter
{
public:
  explicit DesignedFilter(const TemporalFilter & spec);

  const TemporalFilter & spec() const { return spec_; }
  std::span<const Biquad> sections() const { return sections_; }
  std::span<const double> taps() const { return taps_; }

  std::complex<double> response(double f_hz) const;
  double magnitude(double f_hz) const { return std::abs(response(f_hz)); }

  /// Filters a single series.
  std::vector<double> apply(std::span<const double> x) const;
  /// Frames flagged as unreliable because of start-up (and, for FIR, end) effects.
  std::vector<bool> transient_mask(std::size_t n_frames) const;

private:
  TemporalFilter spec_;
  std::vector<Biquad> sections_;
  std::vector<double> taps_;
};

/// Same as DesignedFilter(spec); throws std::invalid_argument on an invalid spec.
DesignedFilter design_temporal_filter(const TemporalFilter & spec);

/// Per-pixel state of a biquad cascade, stepped one frame at a time.
class CascadeState
{
public:
  CascadeState(std::span<const Biquad> sections, std::size_t n_pixels);
  /// Filters one time sample of every pixel in place.
  void step(std::span<double> samples);

private:
  std::vector<Biquad> sections_;
  std::size_t n_pixels_;
  std::vector<double> z1_, z2_;  // section-major
};

struct MagnifyParams
{
  double m = 10.0;
  TemporalFilter filter;
  double denoise_sigma_px = 2.0;
  bool amplify_lowpass_residual = false;

  void validate() const;
};

/// wrap(arg(c_t) - arg(c_ref)) per coefficient.
/// Throws std::invalid_argument if the grids differ in shape.
std::vector<double> phase_delta(const ComplexGrid & coeffs, const ComplexGrid & reference);
/// Band-by-band phase_delta of two pyramids.
std::vector<std::vector<double>> phase_delta(const Pyramid & pyr, const Pyramid & reference);

/// Amplitude-weighted Gaussian smoothing G*(A^2 dphi) / G*(A^2) with periodic
/// boundaries and a kernel radius of ceil(3 sigma). sigma = 0 returns the input.
/// Pixels whose smoothed weight is zero keep their value.
std::vector<double> denoise_phase(
  std::span<const double> delta, std::span<const double> amplitude, std::size_t width, std::size_t height,
  double sigma_px);

struct MagnifyResult
{
  FrameSequence frames;
  std::vector<bool> transient;
};

/// Phase-based magnification against the first frame. Output intensities are
/// clamped to [0, 1]. Throws std::invalid_argument for fewer than 3 frames,
/// invalid parameters, or a bank of the wrong size.
MagnifyResult magnify_sequence(const FrameSequence & frames, const MagnifyParams & params, const FilterBank & bank);

/// Frame-at-a-time magnification with bounded state; Butterworth only. Produces
/// the same frames, bit for bit, as magnify_sequence.
class StreamingMagnifier
{
public:
  StreamingMagnifier(const FilterBank & bank, const MagnifyParams & params);
  Image push(const Image & frame);
  std::size_t frames_seen() const { return seen_; }

private:
  struct BandState
  {
    std::vector<double> reference_phase;
    CascadeState filter;
  };

  const FilterBank & bank_;
  MagnifyParams params_;
  DesignedFilter filter_;
  std::vector<const BandMask *> bands_;
  std::vector<BandState> state_;
  std::size_t seen_ = 0;
};

struct Displacement
{
  double dx = 0;
  double dy = 0;
};

/// Sub-pixel translation of each frame relative to frames[reference_index],
/// with frame(x) = reference(x + d): integer phase-correlation peak refined by
/// a weighted least-squares fit of the cross-spectrum phase slope.
/// Throws UndefinedError if the reference or a frame is constant and
/// std::invalid_argument for fewer than 2 frames or a bad index.
std::vector<Displacement> measure_displacement(const FrameSequence & frames, std::size_t reference_index = 0);

/// Passband taken from the fullest bin of a frequency histogram.
/// Throws DataError for an empty histogram.
std::pair<double, double> band_from_histogram(const FreqHistogram & hist);

}  // namespace evkit

#endif  // EVKIT_MAGNIFY_HPP
