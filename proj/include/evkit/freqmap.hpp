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

#ifndef EVKIT_FREQMAP_HPP
#define EVKIT_FREQMAP_HPP

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "evkit/event_model.hpp"
#include "evkit/image.hpp"

namespace evkit
{

// Per-pixel frequency from hypertransitions: the time between successive
// polarity transitions of one direction (ON->OFF by default) at a pixel.
//
// Pixel state persists across batches. A batch is the reporting cadence: the
// map after a batch shows each pixel's estimate from its recent intervals.
// An interval longer than `stale_windows * window_us` means the pixel went
// quiet; its history is discarded. This bounds the lowest frequency a given
// window can report (about 1 / (stale_windows * window)).

enum class Transition { OnToOff, OffToOn };
enum class Estimator { Mean, Median };

struct FreqMapConfig
{
  Transition transition = Transition::OnToOff;
  duration_us window_us = 20000;
  std::size_t min_intervals = 2;
  Estimator estimator = Estimator::Mean;
  double f_min_hz = 1.0;
  double f_max_hz = 5000.0;
  double stale_windows = 2.0;
  std::size_t max_history = 16;

  duration_us stale_us() const;
  /// Throws std::invalid_argument when a field is out of range.
  void validate() const;
};

/// Window presets in microseconds.
namespace window_preset
{
inline constexpr duration_us kVibration = 20000;
inline constexpr duration_us kStructure = 15000;
inline constexpr duration_us kFlicker = 50000;
}  // namespace window_preset

struct PixelTransitionState
{
  std::optional<Polarity> last_polarity;
  std::optional<timestamp_us> last_transition_t;
  std::vector<duration_us> intervals;  // oldest first, at most max_history
};

/// Feeds one event of a pixel (time-ordered). Returns the new interval when the
/// event completes a transition of the configured direction that has a
/// non-stale predecessor.
std::optional<duration_us> update_pixel_state(
  PixelTransitionState & state, const Event & event, const FreqMapConfig & cfg);

/// 1e6 / estimator(intervals), or nullopt if fewer than min_intervals or the
/// result falls outside [f_min_hz, f_max_hz].
std::optional<double> estimate_frequency(std::span<const duration_us> intervals, const FreqMapConfig & cfg);

class FrequencyMap
{
public:
  FrequencyMap() = default;
  explicit FrequencyMap(SensorGeometry g);

  const SensorGeometry & geometry() const { return geometry_; }
  std::optional<double> at(std::uint32_t x, std::uint32_t y) const;
  void set(std::uint32_t x, std::uint32_t y, std::optional<double> hz);
  std::size_t estimated_count() const;
  /// Raw storage; NaN marks unestimated pixels.
  const std::vector<double> & values() const { return values_; }

  friend bool operator==(const FrequencyMap & a, const FrequencyMap & b);

private:
  SensorGeometry geometry_{1, 1};
  std::vector<double> values_;
};

class FrequencyTracker
{
public:
  FrequencyTracker(SensorGeometry geometry, FreqMapConfig cfg);

  /// Consumes a batch (row-parallel) and returns the map as of its window end.
  FrequencyMap process(const EventBatch & batch);
  /// Map as of `now_us` without consuming events.
  FrequencyMap snapshot(timestamp_us now_us) const;

  const PixelTransitionState & state(std::uint32_t x, std::uint32_t y) const;
  const FreqMapConfig & config() const { return cfg_; }

private:
  SensorGeometry geometry_;
  FreqMapConfig cfg_;
  std::vector<PixelTransitionState> states_;
};

/// Map of a single batch from fresh pixel state.
FrequencyMap compute_freq_map(const EventBatch & batch, SensorGeometry geometry, const FreqMapConfig & cfg);

/// Tracks a whole stream in tumbling windows of cfg.window_us; returns one map per batch.
std::vector<FrequencyMap> compute_freq_maps(
  const EventStream & stream, const FreqMapConfig & cfg, std::optional<timestamp_us> origin_us = {});

/// The map after the last batch of the stream (all-unestimated for an empty stream).
FrequencyMap compute_stream_freq_map(
  const EventStream & stream, const FreqMapConfig & cfg, std::optional<timestamp_us> origin_us = {});

enum class Colormap { Turbo, Hsv };

inline constexpr std::size_t kLegendWidth = 48;
inline constexpr std::uint8_t kUnestimatedGrey = 128;

/// 256-entry colormap lookup.
std::array<std::uint8_t, 3> colormap_entry(Colormap cmap, std::size_t index);

/// Linear [f_min, f_max] -> colormap; grey for unestimated pixels; a
/// kLegendWidth-wide scale strip with min/max labels is appended on the right.
RgbImage render_freq_map(const FrequencyMap & map, const FreqMapConfig & cfg, Colormap cmap);

struct HistogramBin
{
  double lo_hz = 0;
  double hi_hz = 0;
  std::size_t count = 0;
};

struct FreqHistogram
{
  std::vector<HistogramBin> bins;
  std::size_t dominant = 0;  // index of the fullest bin; meaningless when bins is empty

  /// Local maxima with nonzero count, fullest first.
  std::vector<std::size_t> modes() const;
};

/// Histogram over estimated pixels, equal-width bins spanning
/// [floor(min), ceil(max)] of the estimates (width 1 Hz if they coincide).
/// Empty when nothing is estimated. Throws std::invalid_argument for n_bins == 0.
FreqHistogram freq_histogram(const FrequencyMap & map, std::size_t n_bins);

/// `x,y,freq_hz` rows (header first), unestimated pixels omitted.
std::string freq_map_to_csv(const FrequencyMap & map);
FrequencyMap freq_map_from_csv(const std::string & text, std::optional<SensorGeometry> geometry = {});

/// `bin_lo_hz,bin_hi_hz,count` rows (header first).
std::string histogram_to_csv(const FreqHistogram & hist);
FreqHistogram histogram_from_csv(const std::string & text);

}  // namespace evkit

#endif  // EVKIT_FREQMAP_HPP
