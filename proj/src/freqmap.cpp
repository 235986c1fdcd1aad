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

#include "evkit/freqmap.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <limits>
#include <numeric>
#include <stdexcept>

#include "evkit/errors.hpp"
#include "evkit/parallel.hpp"

namespace evkit
{
namespace
{
constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

Polarity transition_from(Transition t) { return t == Transition::OnToOff ? Polarity::On : Polarity::Off; }

// 3x5 bitmap glyphs for legend labels; each row is 3 bits, MSB left.
const std::uint8_t * glyph(char c)
{
  static const std::uint8_t digits[10][5] = {
    {7, 5, 5, 5, 7}, {2, 6, 2, 2, 7}, {7, 1, 7, 4, 7}, {7, 1, 7, 1, 7}, {5, 5, 7, 1, 1},
    {7, 4, 7, 1, 7}, {7, 4, 7, 5, 7}, {7, 1, 1, 1, 1}, {7, 5, 7, 5, 7}, {7, 5, 7, 1, 7}};
  static const std::uint8_t dot[5] = {0, 0, 0, 0, 2};
  static const std::uint8_t blank[5] = {0, 0, 0, 0, 0};
  if (c >= '0' && c <= '9') return digits[c - '0'];
  if (c == '.') return dot;
  return blank;
}

void draw_text(RgbImage & img, std::size_t x0, std::size_t y0, const std::string & text)
{
  for (std::size_t i = 0; i < text.size(); ++i) {
    const std::uint8_t * g = glyph(text[i]);
    for (std::size_t r = 0; r < 5; ++r) {
      for (std::size_t c = 0; c < 3; ++c) {
        const std::size_t x = x0 + i * 4 + c, y = y0 + r;
        if ((g[r] >> (2 - c)) & 1 && x < img.width && y < img.height) img.set(x, y, 255, 255, 255);
      }
    }
  }
}

std::string label(double hz)
{
  char buf[32];
  if (hz == std::floor(hz) && std::abs(hz) < 1e9) {
    std::snprintf(buf, sizeof(buf), "%.0f", hz);
  } else {
    std::snprintf(buf, sizeof(buf), "%.1f", hz);
  }
  return buf;
}

std::uint8_t unit_to_byte(double v) { return static_cast<std::uint8_t>(std::lround(std::clamp(v, 0.0, 1.0) * 255.0)); }

template <typename T>
bool parse_number(std::string_view s, T & out)
{
  const auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
  return ec == std::errc() && p == s.data() + s.size();
}

std::vector<std::string_view> split_csv_line(std::string_view line)
{
  std::vector<std::string_view> out;
  for (;;) {
    const auto c = line.find(',');
    out.push_back(line.substr(0, c));
    if (c == std::string_view::npos) break;
    line.remove_prefix(c + 1);
  }
  return out;
}

template <typename Fn>
void for_each_line(std::string_view text, Fn && fn)
{
  std::size_t line_no = 0;
  while (!text.empty()) {
    ++line_no;
    const auto nl = text.find('\n');
    std::string_view line = text.substr(0, nl);
    text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (line.empty()) continue;
    fn(line_no, line);
  }
}
}  // namespace

duration_us FreqMapConfig::stale_us() const
{
  return static_cast<duration_us>(std::llround(stale_windows * static_cast<double>(window_us)));
}

void FreqMapConfig::validate() const
{
  if (window_us < 1000) throw std::invalid_argument("frequency window must be at least 1 ms");
  if (!(f_min_hz > 0) || !(f_min_hz < f_max_hz) || f_max_hz > 5000.0) {
    throw std::invalid_argument("frequency clamp must satisfy 0 < f_min < f_max <= 5000 Hz");
  }
  if (min_intervals < 1) throw std::invalid_argument("min_intervals must be at least 1");
  if (max_history < min_intervals) throw std::invalid_argument("max_history must be >= min_intervals");
  if (!(stale_windows > 0)) throw std::invalid_argument("stale_windows must be positive");
}

std::optional<duration_us> update_pixel_state(
  PixelTransitionState & state, const Event & event, const FreqMapConfig & cfg)
{
  const Polarity from = transition_from(cfg.transition);
  std::optional<duration_us> interval;
  if (state.last_polarity == from && event.p == opposite(from)) {
    if (state.last_transition_t) {
      const duration_us dt = event.t - *state.last_transition_t;
      if (dt > cfg.stale_us()) {
        state.intervals.clear();
      } else if (dt > 0) {
        state.intervals.push_back(dt);
        if (state.intervals.size() > cfg.max_history) {
          state.intervals.erase(state.intervals.begin());
        }
        interval = dt;
      }
    }
    state.last_transition_t = event.t;
  }
  state.last_polarity = event.p;
  return interval;
}

std::optional<double> estimate_frequency(std::span<const duration_us> intervals, const FreqMapConfig & cfg)
{
  if (intervals.empty() || intervals.size() < cfg.min_intervals) return std::nullopt;
  double period_us = 0;
  if (cfg.estimator == Estimator::Mean) {
    const std::uint64_t sum = std::accumulate(intervals.begin(), intervals.end(), std::uint64_t{0});
    period_us = static_cast<double>(sum) / static_cast<double>(intervals.size());
  } else {
    std::vector<duration_us> v(intervals.begin(), intervals.end());
    const std::size_t mid = v.size() / 2;
    std::nth_element(v.begin(), v.begin() + mid, v.end());
    if (v.size() % 2) {
      period_us = static_cast<double>(v[mid]);
    } else {
      const auto lower = *std::max_element(v.begin(), v.begin() + mid);
      period_us = 0.5 * (static_cast<double>(lower) + static_cast<double>(v[mid]));
    }
  }
  if (!(period_us > 0)) return std::nullopt;
  const double hz = 1e6 / period_us;
  if (hz < cfg.f_min_hz || hz > cfg.f_max_hz) return std::nullopt;
  return hz;
}

FrequencyMap::FrequencyMap(SensorGeometry g) : geometry_(g), values_(g.pixel_count(), kNaN) {}

std::optional<double> FrequencyMap::at(std::uint32_t x, std::uint32_t y) const
{
  const double v = values_.at(std::size_t{y} * geometry_.width + x);
  if (std::isnan(v)) return std::nullopt;
  return v;
}

void FrequencyMap::set(std::uint32_t x, std::uint32_t y, std::optional<double> hz)
{
  values_.at(std::size_t{y} * geometry_.width + x) = hz.value_or(kNaN);
}

std::size_t FrequencyMap::estimated_count() const
{
  return static_cast<std::size_t>(
    std::count_if(values_.begin(), values_.end(), [](double v) { return !std::isnan(v); }));
}

bool operator==(const FrequencyMap & a, const FrequencyMap & b)
{
  if (a.geometry_ != b.geometry_ || a.values_.size() != b.values_.size()) return false;
  for (std::size_t i = 0; i < a.values_.size(); ++i) {
    const double u = a.values_[i], v = b.values_[i];
    if (std::isnan(u) != std::isnan(v)) return false;
    if (!std::isnan(u) && u != v) return false;
  }
  return true;
}

FrequencyTracker::FrequencyTracker(SensorGeometry geometry, FreqMapConfig cfg)
: geometry_(geometry), cfg_(cfg), states_(geometry.pixel_count())
{
  cfg_.validate();
}

FrequencyMap FrequencyTracker::process(const EventBatch & batch)
{
  const RowIndex rows = index_rows(batch.events, geometry_.height);
  const auto n_rows = static_cast<std::int64_t>(geometry_.height);
#pragma omp parallel for schedule(dynamic, 8)
  for (std::int64_t y = 0; y < n_rows; ++y) {
    for (const std::uint32_t i : rows.row(static_cast<std::size_t>(y))) {
      const Event & e = batch.events[i];
      update_pixel_state(states_[std::size_t{e.y} * geometry_.width + e.x], e, cfg_);
    }
  }
  return snapshot(batch.window_end_us);
}

FrequencyMap FrequencyTracker::snapshot(timestamp_us now_us) const
{
  FrequencyMap map(geometry_);
  const duration_us stale = cfg_.stale_us();
  const auto n_rows = static_cast<std::int64_t>(geometry_.height);
#pragma omp parallel for schedule(static)
  for (std::int64_t y = 0; y < n_rows; ++y) {
    for (std::uint32_t x = 0; x < geometry_.width; ++x) {
      const auto & s = states_[static_cast<std::size_t>(y) * geometry_.width + x];
      if (!s.last_transition_t || now_us - *s.last_transition_t > stale) continue;
      map.set(x, static_cast<std::uint32_t>(y), estimate_frequency(s.intervals, cfg_));
    }
  }
  return map;
}

const PixelTransitionState & FrequencyTracker::state(std::uint32_t x, std::uint32_t y) const
{
  return states_.at(std::size_t{y} * geometry_.width + x);
}

FrequencyMap compute_freq_map(const EventBatch & batch, SensorGeometry geometry, const FreqMapConfig & cfg)
{
  FrequencyTracker tracker(geometry, cfg);
  return tracker.process(batch);
}

std::vector<FrequencyMap> compute_freq_maps(
  const EventStream & stream, const FreqMapConfig & cfg, std::optional<timestamp_us> origin_us)
{
  FrequencyTracker tracker(stream.geometry, cfg);
  std::vector<FrequencyMap> maps;
  for (const auto & batch : batch_events(stream, cfg.window_us, origin_us)) {
    maps.push_back(tracker.process(batch));
  }
  return maps;
}

FrequencyMap compute_stream_freq_map(
  const EventStream & stream, const FreqMapConfig & cfg, std::optional<timestamp_us> origin_us)
{
  FrequencyTracker tracker(stream.geometry, cfg);
  FrequencyMap last(stream.geometry);
  for (const auto & batch : batch_events(stream, cfg.window_us, origin_us)) {
    last = tracker.process(batch);
  }
  return last;
}

std::array<std::uint8_t, 3> colormap_entry(Colormap cmap, std::size_t index)
{
  const double x = static_cast<double>(std::min<std::size_t>(index, 255)) / 255.0;
  if (cmap == Colormap::Turbo) {
    // Polynomial fit of the Turbo colormap.
    const double r =
      0.13572138 + x * (4.61539260 + x * (-42.66032258 + x * (132.13108234 + x * (-152.94239396 + x * 59.28637943))));
    const double g =
      0.09140261 + x * (2.19418839 + x * (4.84296658 + x * (-14.18503333 + x * (4.27729857 + x * 2.82956604))));
    const double b =
      0.10667330 + x * (12.64194608 + x * (-60.58204836 + x * (110.36276771 + x * (-89.90310912 + x * 27.34824973))));
    return {unit_to_byte(r), unit_to_byte(g), unit_to_byte(b)};
  }
  // HSV at full saturation/value, hue running 240 deg (blue) -> 0 deg (red).
  const double h = (1.0 - x) * 4.0;  // sextant units
  const int sector = std::min(3, static_cast<int>(h));
  const double f = h - sector;
  double r = 0, g = 0, b = 0;
  switch (sector) {
    case 0: r = 1, g = f, b = 0; break;
    case 1: r = 1 - f, g = 1, b = 0; break;
    case 2: r = 0, g = 1, b = f; break;
    default: r = 0, g = 1 - f, b = 1; break;
  }
  return {unit_to_byte(r), unit_to_byte(g), unit_to_byte(b)};
}

RgbImage render_freq_map(const FrequencyMap & map, const FreqMapConfig & cfg, Colormap cmap)
{
  const auto & g = map.geometry();
  RgbImage img(g.width + kLegendWidth, g.height);
  const double span = cfg.f_max_hz - cfg.f_min_hz;
  auto index_of = [&](double hz) {
    const double u = std::clamp((hz - cfg.f_min_hz) / span, 0.0, 1.0);
    return static_cast<std::size_t>(std::lround(u * 255.0));
  };

  for (std::uint32_t y = 0; y < g.height; ++y) {
    for (std::uint32_t x = 0; x < g.width; ++x) {
      const auto v = map.at(x, y);
      if (!v) {
        img.set(x, y, kUnestimatedGrey, kUnestimatedGrey, kUnestimatedGrey);
      } else {
        const auto c = colormap_entry(cmap, index_of(*v));
        img.set(x, y, c[0], c[1], c[2]);
      }
    }
  }

  // Legend: 4 px gap, 12 px bar (f_max at top), labels to the right.
  const std::size_t bar_x0 = g.width + 4, bar_x1 = bar_x0 + 12;
  for (std::size_t y = 0; y < g.height; ++y) {
    const std::size_t idx =
      g.height > 1 ? static_cast<std::size_t>(std::lround(255.0 * double(g.height - 1 - y) / double(g.height - 1))) : 255;
    const auto c = colormap_entry(cmap, idx);
    for (std::size_t x = bar_x0; x < bar_x1; ++x) img.set(x, y, c[0], c[1], c[2]);
  }
  if (g.height >= 12) {
    draw_text(img, bar_x1 + 2, 0, label(cfg.f_max_hz));
    draw_text(img, bar_x1 + 2, g.height - 5, label(cfg.f_min_hz));
  }
  return img;
}

std::vector<std::size_t> FreqHistogram::modes() const
{
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < bins.size(); ++i) {
    const std::size_t c = bins[i].count;
    if (c == 0) continue;
    const std::size_t left = i > 0 ? bins[i - 1].count : 0;
    const std::size_t right = i + 1 < bins.size() ? bins[i + 1].count : 0;
    // Plateaus report their leftmost bin.
    if (c > left && c >= right) out.push_back(i);
  }
  std::stable_sort(out.begin(), out.end(), [&](std::size_t a, std::size_t b) { return bins[a].count > bins[b].count; });
  return out;
}

FreqHistogram freq_histogram(const FrequencyMap & map, std::size_t n_bins)
{
  if (n_bins == 0) throw std::invalid_argument("histogram needs at least one bin");
  FreqHistogram hist;
  double lo = std::numeric_limits<double>::infinity(), hi = -lo;
  for (double v : map.values()) {
    if (std::isnan(v)) continue;
    lo = std::min(lo, v);
    hi = std::max(hi, v);
  }
  if (lo > hi) return hist;
  lo = std::floor(lo);
  hi = std::ceil(hi);
  if (hi <= lo) hi = lo + 1;
  const double width = (hi - lo) / static_cast<double>(n_bins);
  hist.bins.resize(n_bins);
  for (std::size_t i = 0; i < n_bins; ++i) {
    hist.bins[i].lo_hz = lo + width * static_cast<double>(i);
    hist.bins[i].hi_hz = i + 1 == n_bins ? hi : lo + width * static_cast<double>(i + 1);
  }
  for (double v : map.values()) {
    if (std::isnan(v)) continue;
    auto idx = static_cast<std::size_t>((v - lo) / width);
    hist.bins[std::min(idx, n_bins - 1)].count++;
  }
  hist.dominant = static_cast<std::size_t>(
    std::max_element(hist.bins.begin(), hist.bins.end(), [](const auto & a, const auto & b) { return a.count < b.count; }) -
    hist.bins.begin());
  return hist;
}

std::string freq_map_to_csv(const FrequencyMap & map)
{
  std::string out = "x,y,freq_hz\n";
  char buf[64];
  const auto & g = map.geometry();
  for (std::uint32_t y = 0; y < g.height; ++y) {
    for (std::uint32_t x = 0; x < g.width; ++x) {
      if (const auto v = map.at(x, y)) {
        std::snprintf(buf, sizeof(buf), "%u,%u,%.6f\n", x, y, *v);
        out += buf;
      }
    }
  }
  return out;
}

FrequencyMap freq_map_from_csv(const std::string & text, std::optional<SensorGeometry> geometry)
{
  struct Row { std::uint32_t x, y; double hz; };
  std::vector<Row> rows;
  std::uint32_t max_x = 0, max_y = 0;
  for_each_line(text, [&](std::size_t line_no, std::string_view line) {
    if (line == "x,y,freq_hz") return;
    const auto f = split_csv_line(line);
    Row r{};
    if (f.size() != 3 || !parse_number(f[0], r.x) || !parse_number(f[1], r.y) || !parse_number(f[2], r.hz)) {
      throw ParseError(line_no, "expected x,y,freq_hz");
    }
    max_x = std::max(max_x, r.x);
    max_y = std::max(max_y, r.y);
    rows.push_back(r);
  });
  const SensorGeometry g = geometry.value_or(SensorGeometry{max_x + 1, max_y + 1});
  FrequencyMap map(g);
  for (const auto & r : rows) {
    if (!g.contains(r.x, r.y)) throw FormatError("map row outside geometry");
    map.set(r.x, r.y, r.hz);
  }
  return map;
}

std::string histogram_to_csv(const FreqHistogram & hist)
{
  std::string out = "bin_lo_hz,bin_hi_hz,count\n";
  char buf[96];
  for (const auto & b : hist.bins) {
    std::snprintf(buf, sizeof(buf), "%.6f,%.6f,%zu\n", b.lo_hz, b.hi_hz, b.count);
    out += buf;
  }
  return out;
}

FreqHistogram histogram_from_csv(const std::string & text)
{
  FreqHistogram hist;
  for_each_line(text, [&](std::size_t line_no, std::string_view line) {
    if (line == "bin_lo_hz,bin_hi_hz,count") return;
    const auto f = split_csv_line(line);
    HistogramBin b;
    if (f.size() != 3 || !parse_number(f[0], b.lo_hz) || !parse_number(f[1], b.hi_hz) || !parse_number(f[2], b.count)) {
      throw ParseError(line_no, "expected bin_lo_hz,bin_hi_hz,count");
    }
    hist.bins.push_back(b);
  });
  for (std::size_t i = 0; i < hist.bins.size(); ++i) {
    if (hist.bins[i].count > hist.bins[hist.dominant].count) hist.dominant = i;
  }
  return hist;
}

}  // namespace evkit
