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

#ifndef EVKIT_EVENT_FILTERS_HPP
#define EVKIT_EVENT_FILTERS_HPP

#include <cstddef>
#include <optional>
#include <span>
#include <string_view>
#include <variant>
#include <vector>

#include "evkit/event_model.hpp"
#include "evkit/freqmap.hpp"

namespace evkit
{

// All filters take a time-sorted stream, return a sorted subset of it, and are
// deterministic for any thread count.

/// Spatio-temporal-contrast filter. A burst is a run of same-polarity events at
/// one pixel, each within burst_window_us of the previous one; an opposite
/// polarity event ends the burst. The first event of every burst is dropped
/// (so isolated events vanish), the second is kept, and the rest of the trail
/// is kept only with keep_trail.
struct StcConfig
{
  duration_us burst_window_us = 10000;
  bool keep_trail = false;
};

/// Event-rate control by uniform stride decimation in tumbling windows.
struct ErcConfig
{
  double max_rate_eps = 1e6;
  duration_us window_us = 1000;
};

struct FlickerBand
{
  double lo_hz = 0;
  double hi_hz = 0;
};

struct RefractoryConfig
{
  duration_us dead_time_us = 0;
};

struct AntiFlickerConfig
{
  std::vector<FlickerBand> bands;
  duration_us window_us = window_preset::kFlicker;
};

EventStream stc_filter(const EventStream & stream, const StcConfig & cfg);

/// Keeps an event iff t - t_last_kept >= dead_time_us at its pixel.
EventStream refractory_filter(const EventStream & stream, duration_us dead_time_us);

/// In each window (aligned to the first event) with N events above the cap
/// C = floor(max_rate_eps * window_us / 1e6) (at least 1), keeps indices
/// floor(k * N / C) for k = 0..C-1.
EventStream erc_decimate(const EventStream & stream, const ErcConfig & cfg);

/// Tracks per-pixel frequency in windows of `window_us` and drops all events
/// of a window at pixels whose estimate at the window end lies in any band
/// (inclusive). `freq_cfg` supplies every other estimation parameter.
EventStream anti_flicker(
  const EventStream & stream, std::span<const FlickerBand> bands, duration_us window_us,
  const FreqMapConfig & freq_cfg = {});

using FilterStep = std::variant<StcConfig, RefractoryConfig, ErcConfig, AntiFlickerConfig>;

/// Applies the steps in order.
EventStream apply_filters(const EventStream & stream, std::span<const FilterStep> steps);

/// Collects filter steps in the order their keys appear. Shared by the CLI
/// flags and the key=value config file so both build identical chains.
class FilterChainBuilder
{
public:
  void add_stc(duration_us burst_window_us);
  void add_refractory(duration_us dead_time_us);
  void add_erc(double kilo_events_per_second);
  /// All bands join one anti-flicker step placed at the first band's position.
  void add_af_band(FlickerBand band);

  void set_keep_trail(bool on) { keep_trail_ = on; }
  void set_erc_window(duration_us w) { erc_window_us_ = w; }
  void set_af_window(duration_us w) { af_window_us_ = w; }

  /// Modifiers apply to every step of their kind regardless of position.
  std::vector<FilterStep> build() const;
  bool empty() const { return steps_.empty(); }

private:
  std::vector<FilterStep> steps_;
  std::optional<std::size_t> af_index_;
  bool keep_trail_ = false;
  duration_us erc_window_us_ = 1000;
  duration_us af_window_us_ = window_preset::kFlicker;
};

/// Parses a plain-text `key = value` filter config into `builder`; `#` starts
/// a comment. Keys: stc-window-us, keep-trail, refractory-us, erc-keps,
/// erc-window-us, af-band (lo:hi, repeatable), af-window-ms.
/// Throws ParseError on unknown keys or bad values.
void parse_filter_config(std::string_view text, FilterChainBuilder & builder);

void validate(const StcConfig & cfg);
void validate(const ErcConfig & cfg);
void validate(const FlickerBand & band);

}  // namespace evkit

#endif  // EVKIT_EVENT_FILTERS_HPP
