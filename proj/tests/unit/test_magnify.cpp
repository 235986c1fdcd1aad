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

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "evkit/errors.hpp"
#include "evkit/event_synth.hpp"
#include "evkit/magnify.hpp"
#include "evkit/parallel.hpp"
#include "test_util.hpp"

namespace evkit
{
namespace
{
constexpr double kPi = std::numbers::pi;

TemporalFilter butterworth(double lo, double hi, double fs = 30.0, std::size_t order = 2)
{
  TemporalFilter f;
  f.kind = FilterKind::Butterworth;
  f.order = order;
  f.f_lo_hz = lo;
  f.f_hi_hz = hi;
  f.sample_rate = fs;
  return f;
}

TemporalFilter fir(double lo, double hi, double fs = 30.0, std::size_t taps = 65)
{
  TemporalFilter f = butterworth(lo, hi, fs);
  f.kind = FilterKind::Fir;
  f.n_taps = taps;
  return f;
}

// Analytic magnitude of the bilinear bandpass Butterworth with prewarped edges.
double butterworth_magnitude(const TemporalFilter & s, double f)
{
  const double w = std::tan(kPi * f / s.sample_rate);
  const double w1 = std::tan(kPi * s.f_lo_hz / s.sample_rate), w2 = std::tan(kPi * s.f_hi_hz / s.sample_rate);
  const double q = (w * w - w1 * w2) / (w * (w2 - w1));
  return 1.0 / std::sqrt(1.0 + std::pow(q * q, static_cast<double>(s.order)));
}

TEST(Butterworth, ResponseAtKeyFrequencies)
{
  const DesignedFilter f(butterworth(4, 6));
  EXPECT_GT(f.magnitude(5.0), 0.9);
  EXPECT_LT(f.magnitude(0.0), 0.01);
  EXPECT_LT(f.magnitude(14.0), 0.15);
}

TEST(Butterworth, MatchesAnalyticMagnitude)
{
  for (const std::size_t order : {1, 2, 3, 4}) {
    for (const auto & [lo, hi, fs] : {std::tuple{4.0, 6.0, 30.0}, std::tuple{0.5, 3.0, 25.0}, std::tuple{10.0, 40.0, 120.0}}) {
      const TemporalFilter spec = butterworth(lo, hi, fs, order);
      const DesignedFilter f(spec);
      EXPECT_EQ(f.sections().size(), order);
      for (double freq = 0.05; freq < fs / 2; freq += fs / 97) {
        EXPECT_NEAR(f.magnitude(freq), butterworth_magnitude(spec, freq), 1e-9) << order << " " << freq;
      }
    }
  }
}

TEST(Butterworth, ApplyReachesSteadyStateGain)
{
  const DesignedFilter f(butterworth(4, 6));
  std::vector<double> x(600);
  for (std::size_t n = 0; n < x.size(); ++n) x[n] = std::sin(2 * kPi * 7.0 * static_cast<double>(n) / 30.0);
  const auto y = f.apply(x);
  double peak = 0;
  for (std::size_t n = 300; n < y.size(); ++n) peak = std::max(peak, std::abs(y[n]));
  EXPECT_NEAR(peak, f.magnitude(7.0), 0.01);
}

TEST(Butterworth, TransientCoversTwoLowEdgePeriods)
{
  const DesignedFilter f(butterworth(4, 6));
  const auto mask = f.transient_mask(90);
  for (std::size_t i = 0; i < 90; ++i) EXPECT_EQ(mask[i], i < 15) << i;
}

TEST(Fir, StopbandAtDc)
{
  const DesignedFilter f(fir(4, 6));
  EXPECT_LT(f.magnitude(0.0), 0.01);
  EXPECT_NEAR(f.magnitude(5.0), 1.0, 1e-12);
  const auto t = f.taps();
  ASSERT_EQ(t.size(), 65u);
  for (std::size_t i = 0; i < t.size(); ++i) EXPECT_NEAR(t[i], t[t.size() - 1 - i], 1e-15);
}

TEST(Fir, ZeroPhaseApply)
{
  const DesignedFilter f(fir(4, 6));
  std::vector<double> x(300);
  for (std::size_t n = 0; n < x.size(); ++n) x[n] = std::cos(2 * kPi * 5.0 * static_cast<double>(n) / 30.0);
  const auto y = f.apply(x);
  for (std::size_t n = 40; n < 260; ++n) EXPECT_NEAR(y[n], x[n], 0.02) << n;
  const auto mask = f.transient_mask(300);
  for (std::size_t i = 0; i < 300; ++i) EXPECT_EQ(mask[i], i < 32 || i >= 268) << i;
}

TEST(TemporalFilterSpec, Validation)
{
  EXPECT_THROW(design_temporal_filter(butterworth(4, 15)), std::invalid_argument);
  EXPECT_THROW(design_temporal_filter(butterworth(6, 4)), std::invalid_argument);
  EXPECT_THROW(design_temporal_filter(butterworth(0, 4)), std::invalid_argument);
  EXPECT_THROW(design_temporal_filter(fir(4, 6, 30, 64)), std::invalid_argument);
  EXPECT_THROW(design_temporal_filter(butterworth(4, 6, 30, 0)), std::invalid_argument);
}

TEST(CascadeState, MatchesSeriesApply)
{
  const DesignedFilter f(butterworth(2, 9, 30, 3));
  std::mt19937_64 rng(1);
  std::normal_distribution<double> n;
  const std::size_t pixels = 5, steps = 50;
  std::vector<std::vector<double>> series(pixels, std::vector<double>(steps));
  for (auto & s : series) {
    for (auto & v : s) v = n(rng);
  }
  CascadeState st(f.sections(), pixels);
  std::vector<std::vector<double>> out(pixels, std::vector<double>(steps));
  for (std::size_t t = 0; t < steps; ++t) {
    std::vector<double> frame(pixels);
    for (std::size_t p = 0; p < pixels; ++p) frame[p] = series[p][t];
    st.step(frame);
    for (std::size_t p = 0; p < pixels; ++p) out[p][t] = frame[p];
  }
  for (std::size_t p = 0; p < pixels; ++p) EXPECT_EQ(out[p], f.apply(series[p]));
}

TEST(PhaseDelta, IdenticalIsZero)
{
  ComplexGrid a(3, 2);
  for (std::size_t i = 0; i < a.size(); ++i) a.data[i] = std::polar(1.0 + static_cast<double>(i), 0.3 * static_cast<double>(i));
  for (const double d : phase_delta(a, a)) EXPECT_EQ(d, 0.0);
}

TEST(PhaseDelta, WrapsDifference)
{
  ComplexGrid t(1, 1, std::polar(1.0, 3.0)), r(1, 1, std::polar(1.0, -3.0));
  EXPECT_NEAR(phase_delta(t, r)[0], 6.0 - 2 * kPi, 1e-12);
  EXPECT_NEAR(phase_delta(t, r)[0], -0.2832, 1e-4);
  EXPECT_THROW(phase_delta(ComplexGrid(2, 2), ComplexGrid(2, 3)), std::invalid_argument);
}

TEST(PhaseDelta, TranslationGivesBandFrequencyTimesShift)
{
  const std::size_t n = 64;
  const FilterBank bank = FilterBank::build(n, n);
  const double f = 1.0 / 8.0;
  auto make = [&](double shift) {
    Image img(n, n);
    for (std::size_t y = 0; y < n; ++y) {
      for (std::size_t x = 0; x < n; ++x) img(x, y) = 0.5 + 0.3 * std::cos(2 * kPi * f * (static_cast<double>(x) + 0.5 + shift));
    }
    return img;
  };
  std::size_t target = 0;
  for (std::size_t b = 0; b < bank.bands().size(); ++b) {
    const auto & info = bank.bands()[b].info;
    if (info.orientation == 0 && std::abs(info.center_freq - f) < 1e-12) target = b;
  }
  ASSERT_DOUBLE_EQ(bank.bands()[target].info.center_freq, f);
  for (const double delta : {0.05, 0.2, -0.3}) {
    const auto d = phase_delta(decompose(make(delta), bank), decompose(make(0.0), bank))[target];
    const std::size_t centre = (bank.grid_height() / 2) * bank.grid_width() + bank.grid_width() / 2;
    EXPECT_NEAR(d[centre], 2 * kPi * f * delta, 0.05 * std::abs(2 * kPi * f * delta)) << delta;
  }
}

// Direct evaluation of G*(A^2 d) / G*(A^2) with periodic indexing.
std::vector<double> brute_denoise(
  const std::vector<double> & d, const std::vector<double> & a, std::size_t w, std::size_t h, double sigma)
{
  const auto r = static_cast<long>(std::ceil(3 * sigma));
  std::vector<double> out(d.size());
  for (std::size_t y = 0; y < h; ++y) {
    for (std::size_t x = 0; x < w; ++x) {
      double num = 0, den = 0;
      for (long dy = -r; dy <= r; ++dy) {
        for (long dx = -r; dx <= r; ++dx) {
          const auto xx = static_cast<std::size_t>((static_cast<long>(x) + dx + 100 * static_cast<long>(w)) % static_cast<long>(w));
          const auto yy = static_cast<std::size_t>((static_cast<long>(y) + dy + 100 * static_cast<long>(h)) % static_cast<long>(h));
          const double g = std::exp(-static_cast<double>(dx * dx + dy * dy) / (2 * sigma * sigma));
          const double wgt = a[yy * w + xx] * a[yy * w + xx];
          num += g * wgt * d[yy * w + xx];
          den += g * wgt;
        }
      }
      out[y * w + x] = den > 0 ? num / den : d[y * w + x];
    }
  }
  return out;
}

TEST(Denoise, MatchesDirectWeightedAverage)
{
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(-1, 1);
  const std::size_t w = 13, h = 9;
  std::vector<double> d(w * h), a(w * h);
  for (auto & v : d) v = u(rng);
  for (auto & v : a) v = std::abs(u(rng));
  for (const double sigma : {0.7, 1.5, 2.0}) {
    const auto got = denoise_phase(d, a, w, h, sigma);
    const auto want = brute_denoise(d, a, w, h, sigma);
    for (std::size_t i = 0; i < d.size(); ++i) EXPECT_NEAR(got[i], want[i], 1e-12);
  }
}

TEST(Denoise, SigmaZeroIsIdentity)
{
  const std::vector<double> d{0.1, -0.2, 0.3, 0.4}, a{1, 2, 3, 4};
  EXPECT_EQ(denoise_phase(d, a, 2, 2, 0.0), d);
}

TEST(Denoise, ConstantPhaseUnchanged)
{
  std::mt19937_64 rng(6);
  std::uniform_real_distribution<double> u(0.01, 1);
  std::vector<double> a(20 * 20);
  for (auto & v : a) v = u(rng);
  const std::vector<double> d(a.size(), 0.37);
  for (const double v : denoise_phase(d, a, 20, 20, 2.0)) EXPECT_NEAR(v, 0.37, 1e-12);
}

TEST(Denoise, SuppressesNoiseAtLowAmplitude)
{
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> u(-3, 3);
  std::bernoulli_distribution weak(0.15);
  const std::size_t w = 32, h = 32;
  std::vector<double> d(w * h, 0.3), a(w * h, 1.0);
  std::vector<std::size_t> noisy;
  for (std::size_t i = 0; i < d.size(); ++i) {
    if (weak(rng)) {
      a[i] = 0.02;
      d[i] = u(rng);
      noisy.push_back(i);
    }
  }
  const auto out = denoise_phase(d, a, w, h, 2.0);
  double before = 0, after = 0;
  for (auto i : noisy) {
    before += (d[i] - 0.3) * (d[i] - 0.3);
    after += (out[i] - 0.3) * (out[i] - 0.3);
  }
  EXPECT_LT(after, 0.01 * before);
}

FrameSequence blob(std::size_t n, std::size_t frames, double amp, double hz, double fps = 30.0)
{
  return synth_moving_pattern(n, n, fps, frames, Pattern::GaussianBlob, amp, hz);
}

MagnifyParams params(double m, TemporalFilter f)
{
  MagnifyParams p;
  p.m = m;
  p.filter = f;
  return p;
}

TEST(Magnify, ZeroGainIsIdentity)
{
  const FrameSequence in = blob(32, 24, 0.2, 5.0);
  const FilterBank bank = FilterBank::build(32, 32);
  for (const auto & f : {butterworth(4, 6), fir(4, 6, 30, 9)}) {
    const MagnifyResult r = magnify_sequence(in, params(0.0, f), bank);
    ASSERT_EQ(r.frames.size(), in.size());
    for (std::size_t k = 0; k < in.size(); ++k) EXPECT_LT(test::max_abs_diff(r.frames.frames[k], in.frames[k]), 2e-3);
  }
}

TEST(Magnify, AmplifiesInBandMotion)
{
  const FrameSequence in = blob(48, 60, 0.2, 5.0);
  const FilterBank bank = FilterBank::build(48, 48);
  const MagnifyResult r = magnify_sequence(in, params(4.0, butterworth(4, 6)), bank);
  const auto d_in = measure_displacement(in), d_out = measure_displacement(r.frames);
  double a_in = 0, a_out = 0;
  for (std::size_t k = 0; k < in.size(); ++k) {
    if (r.transient[k]) continue;
    a_in = std::max(a_in, std::abs(d_in[k].dx));
    a_out = std::max(a_out, std::abs(d_out[k].dx));
  }
  EXPECT_GT(a_out / a_in, 3.0);
  EXPECT_LT(a_out / a_in, 6.0);
}

TEST(Magnify, StreamingMatchesBatchExactly)
{
  const FrameSequence in = blob(32, 20, 0.3, 4.0);
  const FilterBank bank = FilterBank::build(32, 32, 4, 2);
  for (const bool lowpass : {false, true}) {
    MagnifyParams p = params(7.0, butterworth(3, 6));
    p.amplify_lowpass_residual = lowpass;
    const MagnifyResult batch = magnify_sequence(in, p, bank);
    StreamingMagnifier s(bank, p);
    for (std::size_t k = 0; k < in.size(); ++k) EXPECT_EQ(s.push(in.frames[k]), batch.frames.frames[k]) << k;
    EXPECT_EQ(s.frames_seen(), in.size());
  }
}

TEST(Magnify, ResultDoesNotDependOnThreads)
{
  const FrameSequence in = blob(32, 16, 0.3, 4.0);
  const FilterBank bank = FilterBank::build(32, 32);
  for (const auto & f : {butterworth(3, 6), fir(3, 6, 30, 7)}) {
    set_thread_count(1);
    const MagnifyResult a = magnify_sequence(in, params(5.0, f), bank);
    set_thread_count(4);
    const MagnifyResult b = magnify_sequence(in, params(5.0, f), bank);
    set_thread_count(0);
    for (std::size_t k = 0; k < in.size(); ++k) EXPECT_EQ(a.frames.frames[k], b.frames.frames[k]);
  }
}

TEST(Magnify, RejectsBadInput)
{
  const FilterBank bank = FilterBank::build(32, 32);
  EXPECT_THROW(magnify_sequence(blob(32, 2, 0.2, 5.0), params(1, butterworth(4, 6)), bank), std::invalid_argument);
  EXPECT_THROW(magnify_sequence(blob(40, 10, 0.2, 5.0), params(1, butterworth(4, 6)), bank), std::invalid_argument);
  EXPECT_THROW(StreamingMagnifier(bank, params(1, fir(4, 6))), std::invalid_argument);
  MagnifyParams p = params(1, butterworth(4, 6));
  p.denoise_sigma_px = -1;
  EXPECT_THROW(p.validate(), std::invalid_argument);
}

TEST(MeasureDisplacement, IdenticalFramesAreZero)
{
  const FrameSequence f = blob(32, 3, 0.0, 5.0);
  for (const auto & d : measure_displacement(f)) {
    EXPECT_EQ(d.dx, 0.0);
    EXPECT_EQ(d.dy, 0.0);
  }
}

TEST(MeasureDisplacement, RecoversExactShifts)
{
  std::mt19937_64 rng(9);
  std::uniform_real_distribution<double> u(-2.5, 2.5);
  for (const Pattern pat : {Pattern::GaussianBlob, Pattern::SineGrating}) {
    const FrameSequence base = synth_moving_pattern(64, 64, 30, 1, pat, 0.0, 1.0, {3.0, 9.0, 30.0});
    FrameSequence f = base;
    std::vector<std::pair<double, double>> truth{{0, 0}};
    for (int i = 0; i < 8; ++i) {
      const double dx = u(rng), dy = pat == Pattern::SineGrating ? 0.0 : u(rng);
      f.frames.push_back(fourier_shift(base.frames[0], dx, dy));
      truth.emplace_back(dx, dy);
    }
    const auto d = measure_displacement(f);
    for (std::size_t k = 0; k < f.size(); ++k) {
      const auto [dx, dy] = truth[k];
      // A grating only constrains motion along its wave vector (30 degrees).
      const double c = std::cos(kPi / 6), s = std::sin(kPi / 6);
      if (pat == Pattern::SineGrating) {
        EXPECT_NEAR(d[k].dx * c + d[k].dy * s, dx * c + dy * s, 0.02) << k;
      } else {
        EXPECT_NEAR(d[k].dx, dx, 0.02) << k;
        EXPECT_NEAR(d[k].dy, dy, 0.02) << k;
      }
    }
  }
}

TEST(MeasureDisplacement, QuarterPixel)
{
  const FrameSequence base = blob(64, 1, 0.0, 1.0);
  FrameSequence f = base;
  f.frames.push_back(fourier_shift(base.frames[0], 0.25, 0.0));
  const auto d = measure_displacement(f);
  EXPECT_NEAR(d[1].dx, 0.25, 0.02);
}

TEST(MeasureDisplacement, ConstantFramesAreUndefined)
{
  FrameSequence f;
  f.width = f.height = 16;
  f.frames.assign(3, Image(16, 16, 0.5));
  EXPECT_THROW(measure_displacement(f), UndefinedError);
  EXPECT_THROW(measure_displacement(blob(16, 1, 0.0, 1.0)), std::invalid_argument);
}

TEST(BandFromHistogram, UsesDominantBin)
{
  FreqHistogram h;
  h.bins = {{30, 35, 2}, {35, 40, 9}, {40, 45, 4}};
  h.dominant = 1;
  const auto [lo, hi] = band_from_histogram(h);
  EXPECT_DOUBLE_EQ(lo, 35);
  EXPECT_DOUBLE_EQ(hi, 40);
  EXPECT_THROW(band_from_histogram(FreqHistogram{}), DataError);
}

}  // namespace
}  // namespace evkit
