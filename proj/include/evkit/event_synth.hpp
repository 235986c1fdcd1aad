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

#ifndef EVKIT_EVENT_SYNTH_HPP
#define EVKIT_EVENT_SYNTH_HPP

#include <cstdint>

#include "evkit/event_model.hpp"
#include "evkit/frames.hpp"

namespace evkit
{

/// Software analogue of the sensor biases: log-intensity contrast thresholds
/// and the per-pixel refractory (dead) time.
struct SensorModel
{
  double contrast_threshold_on = 0.2;
  double contrast_threshold_off = 0.2;
  duration_us refractory_us = 0;

  void validate() const;
};

/// Optional uniform timestamp jitter in [-jitter_us, +jitter_us], seeded.
struct SynthNoise
{
  duration_us jitter_us = 0;
  std::uint64_t seed = 0;
};

struct Rect
{
  std::uint32_t x = 0;
  std::uint32_t y = 0;
  std::uint32_t width = 0;
  std::uint32_t height = 0;

  bool contains(std::uint32_t px, std::uint32_t py) const
  {
    return px >= x && py >= y && px - x < width && py - y < height;
  }
};

inline constexpr double kMaxFlickerHz = 5000.0;

/// Square-wave illumination: every pixel of `region` emits an ON event at the
/// start of each period and an OFF event half a period later. `phase_deg`
/// delays the waveform by phase/360 of a period. Events outside
/// [0, duration_us) are not emitted. Output is sorted by (t, y, x, p).
/// Throws std::invalid_argument unless 0 < freq_hz <= 5000 and the region lies
/// inside the geometry.
EventStream synth_flicker(
  SensorGeometry geometry, Rect region, double freq_hz, duration_us duration_us_total,
  const SensorModel & model = {}, double phase_deg = 0.0, const SynthNoise & noise = {});

/// A patch of independent square-wave pixels: each pixel draws its frequency
/// uniformly from [f_lo_hz, f_hi_hz] and its phase uniformly from [0, 360)
/// using a generator seeded from (noise.seed, pixel index).
EventStream synth_vibration(
  SensorGeometry geometry, Rect region, double f_lo_hz, double f_hi_hz, duration_us duration_us_total,
  const SensorModel & model = {}, const SynthNoise & noise = {});
/// The frequency synth_vibration assigns to pixel (x, y).
double vibration_frequency(
  SensorGeometry geometry, std::uint32_t x, std::uint32_t y, double f_lo_hz, double f_hi_hz, std::uint64_t seed);

/// Contrast-threshold event generation from frames. Per pixel the log
/// intensity (clamped to [1e-3, 1]) is linearly interpolated between frames;
/// each crossing of the reference level +/- threshold emits an event at the
/// interpolated time and moves the reference by one threshold. Crossings within
/// refractory_us of the pixel's last emitted event are suppressed (the
/// reference still moves). Frame k is at k * 1e6 / fps microseconds.
EventStream synth_from_frames(const FrameSequence & frames, const SensorModel & model, const SynthNoise & noise = {});

enum class Pattern { GaussianBlob, SineGrating };

struct PatternOptions
{
  double blob_sigma_px = 3.0;
  double grating_period_px = 8.0;
  /// Motion (and grating wave-vector) direction, degrees from +x.
  double direction_deg = 0.0;
  double background = 0.2;
  double contrast = 0.6;
};

/// Frame k holds pattern(x + delta_k * dir) with
/// delta_k = amplitude_px * sin(2 pi motion_freq_hz * k / fps), translated by
/// a Fourier phase ramp so sub-pixel displacements are exact for the periodic
/// pattern. The blob is centred; the grating is 0.5 + 0.5 cos(2 pi x / period).
/// Throws std::invalid_argument when motion_freq_hz >= fps / 2.
FrameSequence synth_moving_pattern(
  std::size_t width, std::size_t height, double fps, std::size_t n_frames, Pattern pattern,
  double amplitude_px, double motion_freq_hz, const PatternOptions & opts = {});

/// Translates an image by (dx, dy) with a Fourier phase ramp: out(x) = in(x + d).
Image fourier_shift(const Image & img, double dx, double dy);

}  // namespace evkit

#endif  // EVKIT_EVENT_SYNTH_HPP
