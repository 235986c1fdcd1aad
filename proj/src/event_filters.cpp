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

#include "evkit/event_filters.hpp"

#include <charconv>
#include <cmath>
#include <stdexcept>
#include <string>

#include "evkit/errors.hpp"
#include "evkit/parallel.hpp"

namespace evkit
{
namespace
{
struct StcState
{
  timestamp_us last_t = 0;
  Polarity last_p = Polarity::Off;
  std::uint32_t burst_pos = 0;  // 0 = first event of a burst
  bool seen = false;
};

struct RefractoryState
{
  timestamp_us last_kept = 0;
  bool seen = false;
};

std::string_view trim(std::string_view s)
{
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  return s;
}

template <typename T>
T parse_value(std::size_t line, std::string_view key, std::string_view v)
{
  T out{};
  const auto [p, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
  if (ec != std::errc() || p != v.data() + v.size()) {
    throw ParseError(line, "bad value for " + std::string(key) + ": '" + std::string(v) + "'");
  }
  return out;
}

FlickerBand parse_band(std::size_t line, std::string_view v)
{
  const auto colon = v.find(':');
  if (colon == std::string_view::npos) throw ParseError(line, "band must be lo:hi");
  FlickerBand b{parse_value<double>(line, "af-band", v.substr(0, colon)),
                parse_value<double>(line, "af-band", v.substr(colon + 1))};
  try {
    validate(b);
  } catch (const std::invalid_argument & e) {
    throw ParseError(line, e.what());
  }
  return b;
}
}  // namespace

void validate(const StcConfig & cfg)
{
  if (cfg.burst_window_us < 1) throw std::invalid_argument("STC burst window must be at least 1 us");
}

void validate(const ErcConfig & cfg)
{
  if (!(cfg.max_rate_eps >= 1)) throw std::invalid_argument("ERC rate cap must be at least 1 event/s");
  if (cfg.window_us < 1) throw std::invalid_argument("ERC window must be at least 1 us");
}

void validate(const FlickerBand & band)
{
  if (!(band.lo_hz > 0 && band.lo_hz < band.hi_hz)) {
    throw std::invalid_argument("flicker band must satisfy 0 < lo < hi");
  }
}

EventStream stc_filter(const EventStream & stream, const StcConfig & cfg)
{
  validate(cfg);
  const auto keep = per_pixel_mask<StcState>(stream, [&](StcState & s, const Event & e) {
    const bool continues = s.seen && e.p == s.last_p && e.t - s.last_t <= cfg.burst_window_us;
    s.burst_pos = continues ? s.burst_pos + 1 : 0;
    s.last_t = e.t;
    s.last_p = e.p;
    s.seen = true;
    return s.burst_pos == 1 || (s.burst_pos > 1 && cfg.keep_trail);
  });
  return select_events(stream, keep);
}

EventStream refractory_filter(const EventStream & stream, duration_us dead_time_us)
{
  const auto keep = per_pixel_mask<RefractoryState>(stream, [&](RefractoryState & s, const Event & e) {
    if (s.seen && e.t - s.last_kept < dead_time_us) return false;
    s.last_kept = e.t;
    s.seen = true;
    return true;
  });
  return select_events(stream, keep);
}

EventStream erc_decimate(const EventStream & stream, const ErcConfig & cfg)
{
  validate(cfg);
  const double cap_real = std::floor(cfg.max_rate_eps * static_cast<double>(cfg.window_us) / 1e6);
  const std::size_t cap = cap_real < 1 ? 1 : static_cast<std::size_t>(cap_real);

  EventStream out;
  out.geometry = stream.geometry;
  for (const auto & batch : batch_events(stream, cfg.window_us)) {
    const std::size_t n = batch.events.size();
    if (n <= cap) {
      out.events.insert(out.events.end(), batch.events.begin(), batch.events.end());
      continue;
    }
    for (std::size_t k = 0; k < cap; ++k) {
      // floor(k * N / C) is strictly increasing for N > C, so order is preserved.
      out.events.push_back(batch.events[k * n / cap]);
    }
  }
  return out;
}

EventStream anti_flicker(
  const EventStream & stream, std::span<const FlickerBand> bands, duration_us window_us,
  const FreqMapConfig & freq_cfg)
{
  for (const auto & b : bands) validate(b);
  if (bands.empty() || stream.empty()) return stream;

  FreqMapConfig cfg = freq_cfg;
  cfg.window_us = window_us;
  FrequencyTracker tracker(stream.geometry, cfg);

  std::vector<std::uint8_t> keep(stream.events.size(), 1);
  std::size_t offset = 0;
  for (const auto & batch : batch_events(stream, window_us)) {
    const FrequencyMap map = tracker.process(batch);
    const auto n = static_cast<std::int64_t>(batch.events.size());
#pragma omp parallel for schedule(static)
    for (std::int64_t i = 0; i < n; ++i) {
      const Event & e = batch.events[static_cast<std::size_t>(i)];
      const auto hz = map.at(e.x, e.y);
      if (!hz) continue;
      for (const auto & b : bands) {
        if (*hz >= b.lo_hz && *hz <= b.hi_hz) {
          keep[offset + static_cast<std::size_t>(i)] = 0;
          break;
        }
      }
    }
    offset += batch.events.size();
  }
  return select_events(stream, keep);
}

EventStream apply_filters(const EventStream & stream, std::span<const FilterStep> steps)
{
  EventStream cur = stream;
  for (const auto & step : steps) {
    cur = std::visit(
      [&](const auto & c) -> EventStream {
        using T = std::decay_t<decltype(c)>;
        if constexpr (std::is_same_v<T, StcConfig>) {
          return stc_filter(cur, c);
        } else if constexpr (std::is_same_v<T, RefractoryConfig>) {
          return refractory_filter(cur, c.dead_time_us);
        } else if constexpr (std::is_same_v<T, ErcConfig>) {
          return erc_decimate(cur, c);
        } else {
          return anti_flicker(cur, c.bands, c.window_us);
        }
      },
      step);
  }
  return cur;
}

void FilterChainBuilder::add_stc(duration_us burst_window_us)
{
  StcConfig c{burst_window_us, false};
  validate(c);
  steps_.emplace_back(c);
}

void FilterChainBuilder::add_refractory(duration_us dead_time_us) { steps_.emplace_back(RefractoryConfig{dead_time_us}); }

void FilterChainBuilder::add_erc(double kilo_events_per_second)
{
  ErcConfig c{kilo_events_per_second * 1000.0, 1000};
  validate(c);
  steps_.emplace_back(c);
}

void FilterChainBuilder::add_af_band(FlickerBand band)
{
  validate(band);
  if (!af_index_) {
    af_index_ = steps_.size();
    steps_.emplace_back(AntiFlickerConfig{});
  }
  std::get<AntiFlickerConfig>(steps_[*af_index_]).bands.push_back(band);
}

std::vector<FilterStep> FilterChainBuilder::build() const
{
  std::vector<FilterStep> out = steps_;
  for (auto & step : out) {
    if (auto * stc = std::get_if<StcConfig>(&step)) stc->keep_trail = keep_trail_;
    if (auto * erc = std::get_if<ErcConfig>(&step)) erc->window_us = erc_window_us_;
    if (auto * af = std::get_if<AntiFlickerConfig>(&step)) af->window_us = af_window_us_;
  }
  for (const auto & step : out) {
    if (const auto * erc = std::get_if<ErcConfig>(&step)) validate(*erc);
  }
  return out;
}

void parse_filter_config(std::string_view text, FilterChainBuilder & builder)
{
  std::size_t line_no = 0;
  while (!text.empty()) {
    ++line_no;
    const auto nl = text.find('\n');
    std::string_view line = text.substr(0, nl);
    text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
    if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;

    const auto eq = line.find('=');
    if (eq == std::string_view::npos) throw ParseError(line_no, "expected key = value");
    const std::string_view key = trim(line.substr(0, eq));
    const std::string_view value = trim(line.substr(eq + 1));

    try {
      if (key == "stc-window-us") {
        builder.add_stc(parse_value<duration_us>(line_no, key, value));
      } else if (key == "keep-trail") {
        if (value != "true" && value != "false") throw ParseError(line_no, "keep-trail must be true or false");
        builder.set_keep_trail(value == "true");
      } else if (key == "refractory-us") {
        builder.add_refractory(parse_value<duration_us>(line_no, key, value));
      } else if (key == "erc-keps") {
        builder.add_erc(parse_value<double>(line_no, key, value));
      } else if (key == "erc-window-us") {
        builder.set_erc_window(parse_value<duration_us>(line_no, key, value));
      } else if (key == "af-band") {
        builder.add_af_band(parse_band(line_no, value));
      } else if (key == "af-window-ms") {
        const double ms = parse_value<double>(line_no, key, value);
        if (!(ms >= 1)) throw ParseError(line_no, "af-window-ms must be at least 1");
        builder.set_af_window(static_cast<duration_us>(std::llround(ms * 1000.0)));
      } else {
        throw ParseError(line_no, "unknown key '" + std::string(key) + "'");
      }
    } catch (const std::invalid_argument & e) {
      throw ParseError(line_no, e.what());
    }
  }
}

}  // namespace evkit
