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

#include "evkit/event_synth.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <stdexcept>
#include <utility>

#include "evkit/fft.hpp"

namespace evkit
{
namespace
{
std::uint64_t splitmix64(std::uint64_t x)
{
  x += 0x9E3779B97F4A7C15ull;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
  return x ^ (x >> 31);
}

// Independent per-pixel jitter source, so output does not depend on scheduling.
class PixelJitter
{
public:
  PixelJitter(const SynthNoise & noise, std::size_t pixel)
  : jitter_(static_cast<std::int64_t>(noise.jitter_us)),
    rng_(splitmix64(noise.seed ^ splitmix64(pixel))),
    dist_(-jitter_, jitter_)
  {
  }
  timestamp_us apply(timestamp_us t)
  {
    if (jitter_ == 0) return t;
    const std::int64_t v = static_cast<std::int64_t>(t) + dist_(rng_);
    return v < 0 ? 0 : static_cast<timestamp_us>(v);
  }

private:
  std::int64_t jitter_;
  std::mt19937_64 rng_;
  std::uniform_int_distribution<std::int64_t> dist_;
};

// Appends `ev` unless it falls inside the refractory period of the pixel's last emitted event.
struct RefractoryGate
{
  duration_us dead = 0;
  bool seen = false;
  timestamp_us last = 0;

  bool admit(timestamp_us t)
  {
    if (seen && t - last < dead) return false;
    seen = true;
    last = t;
    return true;
  }
};

struct Edge
{
  timestamp_us t;
  Polarity p;
};

// ON at the start of each period, OFF half a period later, delayed by phase/360 periods.
std::vector<Edge> square_wave_edges(double freq_hz, double phase_deg, duration_us duration)
{
  const double period = 1e6 / freq_hz;
  const double delay = phase_deg / 360.0 * period;
  std::vector<Edge> edges;
  const auto k0 = static_cast<std::int64_t>(std::floor(-delay / period)) - 1;
  for (std::int64_t k = k0;; ++k) {
    const double on = delay + static_cast<double>(k) * period;
    if (on >= static_cast<double>(duration)) break;
    for (const auto & [when, pol] : {std::pair{on, Polarity::On}, std::pair{on + 0.5 * period, Polarity::Off}}) {
      const auto t = std::llround(when);
      if (t >= 0 && static_cast<duration_us>(t) < duration) edges.push_back({static_cast<timestamp_us>(t), pol});
    }
  }
  return edges;
}

void check_region(SensorGeometry geometry, Rect region)
{
  if (region.x + std::uint64_t{region.width} > geometry.width ||
      region.y + std::uint64_t{region.height} > geometry.height) {
    throw std::invalid_argument("region outside sensor geometry");
  }
}

void sort_canonical(std::vector<Event> & ev) { std::sort(ev.begin(), ev.end(), canonical_less); }

std::vector<Event> concat_rows(std::vector<std::vector<Event>> & rows)
{
  std::size_t n = 0;
  for (const auto & r : rows) n += r.size();
  std::vector<Event> out;
  out.reserve(n);
  for (auto & r : rows) {
    out.insert(out.end(), r.begin(), r.end());
    r.clear();
    r.shrink_to_fit();
  }
  return out;
}
}  // namespace

void SensorModel::validate() const
{
  if (!(contrast_threshold_on > 0) || !(contrast_threshold_off > 0)) {
    throw std::invalid_argument("contrast thresholds must be positive");
  }
}

EventStream synth_flicker(
  SensorGeometry geometry, Rect region, double freq_hz, duration_us duration_us_total,
  const SensorModel & model, double phase_deg, const SynthNoise & noise)
{
  if (!(freq_hz > 0 && freq_hz <= kMaxFlickerHz)) {
    throw std::invalid_argument("flicker frequency must be in (0, 5000] Hz");
  }
  check_region(geometry, region);
  model.validate();

  const std::vector<Edge> edges = square_wave_edges(freq_hz, phase_deg, duration_us_total);

  std::vector<std::vector<Event>> rows(region.height);
  const auto n_rows = static_cast<std::int64_t>(region.height);
#pragma omp parallel for schedule(dynamic, 4)
  for (std::int64_t r = 0; r < n_rows; ++r) {
    const auto y = static_cast<std::uint16_t>(region.y + r);
    auto & out = rows[static_cast<std::size_t>(r)];
    out.reserve(edges.size() * region.width);
    for (std::uint32_t c = 0; c < region.width; ++c) {
      const auto x = static_cast<std::uint16_t>(region.x + c);
      PixelJitter jitter(noise, std::size_t{y} * geometry.width + x);
      RefractoryGate gate{model.refractory_us};
      for (const auto & e : edges) {
        const timestamp_us t = jitter.apply(e.t);
        if (gate.admit(t)) out.push_back({t, x, y, e.p});
      }
    }
  }

  EventStream s;
  s.geometry = geometry;
  s.events = concat_rows(rows);
  sort_canonical(s.events);
  return s;
}

namespace
{
std::pair<double, double> draw_vibration(std::size_t pixel, double f_lo_hz, double f_hi_hz, std::uint64_t seed)
{
  std::mt19937_64 rng(splitmix64(~seed ^ splitmix64(pixel)));
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const double freq = f_lo_hz + (f_hi_hz - f_lo_hz) * unit(rng);
  const double phase = 360.0 * unit(rng);
  return {freq, phase};
}
}  // namespace

double vibration_frequency(
  SensorGeometry geometry, std::uint32_t x, std::uint32_t y, double f_lo_hz, double f_hi_hz, std::uint64_t seed)
{
  return draw_vibration(std::size_t{y} * geometry.width + x, f_lo_hz, f_hi_hz, seed).first;
}

EventStream synth_vibration(
  SensorGeometry geometry, Rect region, double f_lo_hz, double f_hi_hz, duration_us duration_us_total,
  const SensorModel & model, const SynthNoise & noise)
{
  if (!(f_lo_hz > 0 && f_lo_hz <= f_hi_hz && f_hi_hz <= kMaxFlickerHz)) {
    throw std::invalid_argument("vibration band must satisfy 0 < lo <= hi <= 5000 Hz");
  }
  check_region(geometry, region);
  model.validate();

  std::vector<std::vector<Event>> rows(region.height);
  const auto n_rows = static_cast<std::int64_t>(region.height);
#pragma omp parallel for schedule(dynamic, 4)
  for (std::int64_t r = 0; r < n_rows; ++r) {
    const auto y = static_cast<std::uint16_t>(region.y + r);
    auto & out = rows[static_cast<std::size_t>(r)];
    for (std::uint32_t c = 0; c < region.width; ++c) {
      const auto x = static_cast<std::uint16_t>(region.x + c);
      const std::size_t pixel = std::size_t{y} * geometry.width + x;
      const auto [freq, phase] = draw_vibration(pixel, f_lo_hz, f_hi_hz, noise.seed);
      PixelJitter jitter(noise, pixel);
      RefractoryGate gate{model.refractory_us};
      for (const auto & e : square_wave_edges(freq, phase, duration_us_total)) {
        const timestamp_us t = jitter.apply(e.t);
        if (gate.admit(t)) out.push_back({t, x, y, e.p});
      }
    }
  }

  EventStream s;
  s.geometry = geometry;
  s.events = concat_rows(rows);
  sort_canonical(s.events);
  return s;
}

EventStream synth_from_frames(const FrameSequence & frames, const SensorModel & model, const SynthNoise & noise)
{
  frames.validate();
  model.validate();
  if (frames.width > 0xFFFF || frames.height > 0xFFFF) throw std::invalid_argument("frame too large for event coordinates");

  const std::size_t w = frames.width, h = frames.height, n = frames.size();
  const double dt = 1e6 / frames.fps;
  auto log_at = [&](std::size_t k, std::size_t i) {
    return std::log(std::clamp(frames.frames[k].data[i], 1e-3, 1.0));
  };

  std::vector<std::vector<Event>> rows(h);
  const auto n_rows = static_cast<std::int64_t>(h);
#pragma omp parallel for schedule(dynamic, 4)
  for (std::int64_t yy = 0; yy < n_rows; ++yy) {
    const auto y = static_cast<std::size_t>(yy);
    auto & out = rows[y];
    for (std::size_t x = 0; x < w; ++x) {
      const std::size_t i = y * w + x;
      PixelJitter jitter(noise, i);
      RefractoryGate gate{model.refractory_us};
      double ref = log_at(0, i);
      auto emit = [&](double when, Polarity p) {
        const timestamp_us t = jitter.apply(static_cast<timestamp_us>(std::llround(std::max(0.0, when))));
        if (gate.admit(t)) out.push_back({t, static_cast<std::uint16_t>(x), static_cast<std::uint16_t>(y), p});
      };
      for (std::size_t k = 0; k + 1 < n; ++k) {
        const double a = log_at(k, i), b = log_at(k + 1, i);
        if (b == a) continue;
        const double t0 = static_cast<double>(k) * dt;
        // The segment is monotone, so only one direction can fire within it.
        while (b >= ref + model.contrast_threshold_on) {
          ref += model.contrast_threshold_on;
          emit(t0 + (ref - a) / (b - a) * dt, Polarity::On);
        }
        while (b <= ref - model.contrast_threshold_off) {
          ref -= model.contrast_threshold_off;
          emit(t0 + (ref - a) / (b - a) * dt, Polarity::Off);
        }
      }
    }
  }

  EventStream s;
  s.geometry = {static_cast<std::uint32_t>(w), static_cast<std::uint32_t>(h)};
  s.events = concat_rows(rows);
  sort_canonical(s.events);
  return s;
}

Image fourier_shift(const Image & img, double dx, double dy)
{
  const Fft2d fft(img.width, img.height);
  ComplexGrid spec = fft.forward(img);
  for (std::size_t v = 0; v < img.height; ++v) {
    const double fy = bin_frequency(v, img.height);
    for (std::size_t u = 0; u < img.width; ++u) {
      const double fx = bin_frequency(u, img.width);
      spec(u, v) *= std::polar(1.0, 2.0 * std::numbers::pi * (fx * dx + fy * dy));
    }
  }
  const ComplexGrid back = fft.inverse(spec);
  Image out(img.width, img.height);
  for (std::size_t i = 0; i < out.size(); ++i) out.data[i] = back.data[i].real();
  return out;
}

FrameSequence synth_moving_pattern(
  std::size_t width, std::size_t height, double fps, std::size_t n_frames, Pattern pattern,
  double amplitude_px, double motion_freq_hz, const PatternOptions & opts)
{
  if (width == 0 || height == 0 || n_frames == 0) throw std::invalid_argument("empty pattern sequence");
  if (!(fps > 0)) throw std::invalid_argument("fps must be positive");
  if (!(motion_freq_hz >= 0 && motion_freq_hz < fps / 2)) {
    throw std::invalid_argument("motion frequency must be below fps/2 (aliasing)");
  }

  const double pi = std::numbers::pi;
  const double dir = opts.direction_deg * pi / 180.0;
  const double ux = std::cos(dir), uy = std::sin(dir);

  Image base(width, height);
  const double cx = static_cast<double>(width) / 2, cy = static_cast<double>(height) / 2;
  for (std::size_t y = 0; y < height; ++y) {
    for (std::size_t x = 0; x < width; ++x) {
      const double px = static_cast<double>(x), py = static_cast<double>(y);
      if (pattern == Pattern::GaussianBlob) {
        const double r2 = (px - cx) * (px - cx) + (py - cy) * (py - cy);
        base(x, y) = opts.background + opts.contrast * std::exp(-r2 / (2 * opts.blob_sigma_px * opts.blob_sigma_px));
      } else {
        base(x, y) = 0.5 + 0.5 * std::cos(2 * pi * (px * ux + py * uy) / opts.grating_period_px);
      }
    }
  }

  const Fft2d fft(width, height);
  const ComplexGrid spec = fft.forward(base);

  FrameSequence seq;
  seq.width = width;
  seq.height = height;
  seq.fps = fps;
  seq.frames.resize(n_frames);
  const auto n = static_cast<std::int64_t>(n_frames);
#pragma omp parallel for schedule(static)
  for (std::int64_t k = 0; k < n; ++k) {
    const double delta = amplitude_px * std::sin(2 * pi * motion_freq_hz * static_cast<double>(k) / fps);
    ComplexGrid shifted = spec;
    for (std::size_t v = 0; v < height; ++v) {
      const double fy = bin_frequency(v, height);
      for (std::size_t u = 0; u < width; ++u) {
        const double fx = bin_frequency(u, width);
        shifted(u, v) *= std::polar(1.0, 2 * pi * (fx * ux + fy * uy) * delta);
      }
    }
    ComplexGrid back(width, height);
    fft.inverse(shifted.data, back.data);
    Image frame(width, height);
    for (std::size_t i = 0; i < frame.size(); ++i) frame.data[i] = back.data[i].real();
    seq.frames[static_cast<std::size_t>(k)] = std::move(frame);
  }
  return seq;
}

}  // namespace evkit
