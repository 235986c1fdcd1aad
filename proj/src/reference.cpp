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

#include "evkit/reference.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <stdexcept>

namespace evkit::reference
{
namespace
{
struct Pixel
{
  int last_p = -1;
  bool has_transition = false;
  timestamp_us last_transition = 0;
  std::deque<duration_us> intervals;
};

double median(std::vector<duration_us> v)
{
  std::sort(v.begin(), v.end());
  const std::size_t n = v.size();
  return n % 2 ? static_cast<double>(v[n / 2]) : (static_cast<double>(v[n / 2 - 1]) + static_cast<double>(v[n / 2])) / 2;
}
}  // namespace

FrequencyMap stream_freq_map(const EventStream & stream, const FreqMapConfig & cfg)
{
  cfg.validate();
  const auto & g = stream.geometry;
  FrequencyMap map(g);
  if (stream.events.empty()) return map;

  const int from = cfg.transition == Transition::OnToOff ? 1 : 0;
  const duration_us stale = cfg.stale_us();
  std::vector<Pixel> px(g.pixel_count());
  const timestamp_us origin = stream.events.front().t;
  const timestamp_us last_t = stream.events.back().t;
  const timestamp_us end = origin + ((last_t - origin) / cfg.window_us + 1) * cfg.window_us;

  for (const Event & e : stream.events) {
    Pixel & p = px[std::size_t{e.y} * g.width + e.x];
    const int pol = e.p == Polarity::On ? 1 : 0;
    if (p.last_p == from && pol != from) {
      if (p.has_transition) {
        const duration_us dt = e.t - p.last_transition;
        if (dt > stale) {
          p.intervals.clear();
        } else if (dt > 0) {
          p.intervals.push_back(dt);
          if (p.intervals.size() > cfg.max_history) p.intervals.pop_front();
        }
      }
      p.has_transition = true;
      p.last_transition = e.t;
    }
    p.last_p = pol;
  }

  for (std::uint32_t y = 0; y < g.height; ++y) {
    for (std::uint32_t x = 0; x < g.width; ++x) {
      const Pixel & p = px[std::size_t{y} * g.width + x];
      if (!p.has_transition || end - p.last_transition > stale) continue;
      if (p.intervals.empty() || p.intervals.size() < cfg.min_intervals) continue;
      std::vector<duration_us> iv(p.intervals.begin(), p.intervals.end());
      double period = 0;
      if (cfg.estimator == Estimator::Mean) {
        std::uint64_t sum = 0;
        for (auto d : iv) sum += d;
        period = static_cast<double>(sum) / static_cast<double>(iv.size());
      } else {
        period = median(iv);
      }
      const double hz = 1e6 / period;
      if (hz >= cfg.f_min_hz && hz <= cfg.f_max_hz) map.set(x, y, hz);
    }
  }
  return map;
}

EventStream stc_filter(const EventStream & stream, const StcConfig & cfg)
{
  validate(cfg);
  const auto & g = stream.geometry;
  std::vector<int> last_p(g.pixel_count(), -1);
  std::vector<timestamp_us> last_t(g.pixel_count(), 0);
  std::vector<std::uint32_t> pos(g.pixel_count(), 0);
  EventStream out;
  out.geometry = g;
  for (const Event & e : stream.events) {
    const std::size_t i = std::size_t{e.y} * g.width + e.x;
    const int pol = static_cast<int>(e.p);
    pos[i] = last_p[i] == pol && e.t - last_t[i] <= cfg.burst_window_us ? pos[i] + 1 : 0;
    last_p[i] = pol;
    last_t[i] = e.t;
    if (pos[i] == 1 || (pos[i] > 1 && cfg.keep_trail)) out.events.push_back(e);
  }
  return out;
}

EventStream refractory_filter(const EventStream & stream, duration_us dead_time_us)
{
  const auto & g = stream.geometry;
  std::vector<std::uint8_t> seen(g.pixel_count(), 0);
  std::vector<timestamp_us> last(g.pixel_count(), 0);
  EventStream out;
  out.geometry = g;
  for (const Event & e : stream.events) {
    const std::size_t i = std::size_t{e.y} * g.width + e.x;
    if (seen[i] && e.t - last[i] < dead_time_us) continue;
    seen[i] = 1;
    last[i] = e.t;
    out.events.push_back(e);
  }
  return out;
}

EventStream synth_flicker(
  SensorGeometry geometry, Rect region, double freq_hz, duration_us duration_us_total, const SensorModel & model,
  double phase_deg)
{
  if (!(freq_hz > 0 && freq_hz <= kMaxFlickerHz)) throw std::invalid_argument("bad flicker frequency");
  model.validate();
  const double period = 1e6 / freq_hz;
  const double delay = phase_deg / 360.0 * period;

  // Time-major generation: walk half-periods and emit the whole region at each edge.
  std::vector<std::uint8_t> seen(geometry.pixel_count(), 0);
  std::vector<timestamp_us> last(geometry.pixel_count(), 0);
  EventStream out;
  out.geometry = geometry;
  const auto first = static_cast<std::int64_t>(std::floor(-delay / (period / 2))) - 2;
  for (std::int64_t h = first;; ++h) {
    const std::int64_t k = h >= 0 ? h / 2 : -((-h + 1) / 2);
    const double on = delay + static_cast<double>(k) * period;
    const double when = h - 2 * k == 0 ? on : on + 0.5 * period;
    if (on >= static_cast<double>(duration_us_total)) break;
    const auto t = std::llround(when);
    if (t < 0 || static_cast<duration_us>(t) >= duration_us_total) continue;
    const Polarity p = h - 2 * k == 0 ? Polarity::On : Polarity::Off;
    for (std::uint32_t y = region.y; y < region.y + region.height; ++y) {
      for (std::uint32_t x = region.x; x < region.x + region.width; ++x) {
        const std::size_t i = std::size_t{y} * geometry.width + x;
        const auto tt = static_cast<timestamp_us>(t);
        if (seen[i] && tt - last[i] < model.refractory_us) continue;
        seen[i] = 1;
        last[i] = tt;
        out.events.push_back({tt, static_cast<std::uint16_t>(x), static_cast<std::uint16_t>(y), p});
      }
    }
  }
  std::stable_sort(out.events.begin(), out.events.end(), canonical_less);
  return out;
}

Pyramid decompose(const Image & frame, const FilterBank & bank)
{
  const ComplexGrid spec = bank.spectrum(frame);
  const std::size_t n = spec.size();
  Pyramid pyr;
  pyr.grid_width = bank.grid_width();
  pyr.grid_height = bank.grid_height();
  for (const auto & band : bank.bands()) {
    ComplexGrid c(pyr.grid_width, pyr.grid_height);
    for (std::size_t i = 0; i < n; ++i) c.data[i] = spec.data[i] * band.analytic[i];
    bank.fft().inverse(c.data, c.data);
    pyr.bands.push_back(std::move(c));
  }
  for (auto [mask, dst] : {std::pair{bank.highpass(), &pyr.highpass}, std::pair{bank.lowpass(), &pyr.lowpass}}) {
    ComplexGrid c(pyr.grid_width, pyr.grid_height);
    for (std::size_t i = 0; i < n; ++i) c.data[i] = spec.data[i] * mask[i];
    bank.fft().inverse(c.data, c.data);
    *dst = Image(pyr.grid_width, pyr.grid_height);
    for (std::size_t i = 0; i < n; ++i) dst->data[i] = c.data[i].real();
  }
  return pyr;
}

}  // namespace evkit::reference
