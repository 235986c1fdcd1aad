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

#include "evkit/magnify.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

#include "evkit/errors.hpp"

namespace evkit
{
namespace
{
constexpr double kPi = std::numbers::pi;
constexpr double kWhiteningFloor = 1e-3;
using cd = std::complex<double>;

std::vector<Biquad> design_butterworth(const TemporalFilter & s)
{
  const std::size_t n = s.order;
  const double w1 = std::tan(kPi * s.f_lo_hz / s.sample_rate);
  const double w2 = std::tan(kPi * s.f_hi_hz / s.sample_rate);
  const double bw = w2 - w1;
  const double w0sq = w1 * w2;

  std::vector<cd> poles;
  for (std::size_t k = 0; k < n; ++k) {
    const cd p = std::polar(1.0, kPi * static_cast<double>(2 * k + n + 1) / static_cast<double>(2 * n));
    const cd disc = std::sqrt(p * p * bw * bw - 4.0 * w0sq);
    for (const cd sp : {(p * bw + disc) / 2.0, (p * bw - disc) / 2.0}) poles.push_back((1.0 + sp) / (1.0 - sp));
  }

  constexpr double kImagTol = 1e-12;
  std::vector<cd> upper;
  std::vector<double> real;
  for (const cd z : poles) {
    if (z.imag() > kImagTol) upper.push_back(z);
    else if (std::abs(z.imag()) <= kImagTol) real.push_back(z.real());
  }
  std::sort(upper.begin(), upper.end(), [](cd a, cd b) { return std::arg(a) < std::arg(b); });
  std::sort(real.begin(), real.end());

  std::vector<Biquad> out;
  for (const cd z : upper) out.push_back({1, 0, -1, -2 * z.real(), std::norm(z)});
  for (std::size_t i = 0; i + 1 < real.size(); i += 2) {
    out.push_back({1, 0, -1, -(real[i] + real[i + 1]), real[i] * real[i + 1]});
  }
  return out;
}

cd cascade_response(std::span<const Biquad> sections, double omega)
{
  const cd zi = std::polar(1.0, -omega);
  const cd zi2 = zi * zi;
  cd h = 1.0;
  for (const auto & b : sections) h *= (b.b0 + b.b1 * zi + b.b2 * zi2) / (1.0 + b.a1 * zi + b.a2 * zi2);
  return h;
}

std::vector<double> design_fir(const TemporalFilter & s)
{
  const std::size_t n = s.n_taps;
  const double d = static_cast<double>(n - 1) / 2;
  const double f1 = s.f_lo_hz / s.sample_rate, f2 = s.f_hi_hz / s.sample_rate;
  auto lowpass = [](double fc, double m) { return m == 0 ? 2 * fc : std::sin(2 * kPi * fc * m) / (kPi * m); };
  std::vector<double> h(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double m = static_cast<double>(i) - d;
    const double window = 0.54 - 0.46 * std::cos(2 * kPi * static_cast<double>(i) / static_cast<double>(n - 1));
    h[i] = window * (lowpass(f2, m) - lowpass(f1, m));
  }
  const double omega = kPi * (f1 + f2);
  cd resp = 0;
  for (std::size_t i = 0; i < n; ++i) resp += h[i] * std::polar(1.0, -omega * static_cast<double>(i));
  const double g = 1.0 / std::abs(resp);
  for (auto & v : h) v *= g;
  return h;
}

std::size_t butterworth_transient(const TemporalFilter & s)
{
  return static_cast<std::size_t>(std::ceil(2.0 / s.f_lo_hz * s.sample_rate));
}

std::vector<double> phases(const ComplexGrid & g)
{
  std::vector<double> out(g.size());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = std::arg(g.data[i]);
  return out;
}

std::vector<double> wrapped_delta(const ComplexGrid & coeffs, std::span<const double> reference_phase)
{
  std::vector<double> out(coeffs.size());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = wrap_phase(std::arg(coeffs.data[i]) - reference_phase[i]);
  return out;
}

std::vector<const BandMask *> active_bands(const FilterBank & bank, bool with_lowpass)
{
  std::vector<const BandMask *> out;
  for (const auto & b : bank.bands()) out.push_back(&b);
  if (with_lowpass) {
    for (const auto & b : bank.lowpass_bands()) out.push_back(&b);
  }
  return out;
}

// Spectrum of the parts that are never phase-modified.
ComplexGrid passthrough(const ComplexGrid & spectrum, const FilterBank & bank, bool with_lowpass)
{
  ComplexGrid out(spectrum.width, spectrum.height);
  const auto hi = bank.highpass();
  const auto lo = bank.lowpass();
  for (std::size_t i = 0; i < out.size(); ++i) {
    const double g = hi[i] * hi[i] + (with_lowpass ? 0.0 : lo[i] * lo[i]);
    out.data[i] = g * spectrum.data[i];
  }
  return out;
}

// Denoise, rotate and synthesise one band of one frame.
ComplexGrid band_contribution(
  ComplexGrid coeffs, std::vector<double> filtered, const BandMask & band, const MagnifyParams & p,
  const FilterBank & bank)
{
  if (p.denoise_sigma_px > 0) {
    std::vector<double> amp(coeffs.size());
    for (std::size_t i = 0; i < amp.size(); ++i) amp[i] = std::abs(coeffs.data[i]);
    filtered = denoise_phase(filtered, amp, coeffs.width, coeffs.height, p.denoise_sigma_px);
  }
  for (std::size_t i = 0; i < coeffs.size(); ++i) coeffs.data[i] *= std::polar(1.0, p.m * filtered[i]);
  ComplexGrid out(coeffs.width, coeffs.height);
  accumulate_band(coeffs, band, bank.fft(), out);
  return out;
}

Image synthesise(ComplexGrid & accum, const FilterBank & bank)
{
  bank.fft().inverse(accum.data, accum.data);
  std::vector<double> re(accum.size());
  for (std::size_t i = 0; i < re.size(); ++i) re[i] = std::clamp(accum.data[i].real(), 0.0, 1.0);
  return bank.crop(re);
}

void add_into(ComplexGrid & accum, const ComplexGrid & x)
{
  for (std::size_t i = 0; i < accum.size(); ++i) accum.data[i] += x.data[i];
}
}  // namespace

void TemporalFilter::validate() const
{
  if (!(sample_rate > 0)) throw std::invalid_argument("sample rate must be positive");
  if (!(f_lo_hz > 0 && f_lo_hz < f_hi_hz && f_hi_hz < sample_rate / 2)) {
    throw std::invalid_argument("passband must satisfy 0 < f_lo < f_hi < fps/2");
  }
  if (kind == FilterKind::Butterworth && order < 1) throw std::invalid_argument("butterworth order must be at least 1");
  if (kind == FilterKind::Fir && (n_taps < 3 || n_taps % 2 == 0)) {
    throw std::invalid_argument("FIR tap count must be odd and at least 3");
  }
}

DesignedFilter::DesignedFilter(const TemporalFilter & spec) : spec_(spec)
{
  spec_.validate();
  if (spec_.kind == FilterKind::Butterworth) {
    sections_ = design_butterworth(spec_);
    const double omega0 = 2 * std::atan(std::sqrt(std::tan(kPi * spec_.f_lo_hz / spec_.sample_rate) *
                                                  std::tan(kPi * spec_.f_hi_hz / spec_.sample_rate)));
    const double g = 1.0 / std::abs(cascade_response(sections_, omega0));
    sections_.front().b0 *= g;
    sections_.front().b1 *= g;
    sections_.front().b2 *= g;
  } else {
    taps_ = design_fir(spec_);
  }
}

std::complex<double> DesignedFilter::response(double f_hz) const
{
  const double omega = 2 * kPi * f_hz / spec_.sample_rate;
  if (spec_.kind == FilterKind::Butterworth) return cascade_response(sections_, omega);
  const double d = static_cast<double>(taps_.size() - 1) / 2;
  cd h = 0;
  for (std::size_t i = 0; i < taps_.size(); ++i) h += taps_[i] * std::polar(1.0, -omega * (static_cast<double>(i) - d));
  return h;
}

std::vector<double> DesignedFilter::apply(std::span<const double> x) const
{
  std::vector<double> y(x.begin(), x.end());
  if (spec_.kind == FilterKind::Butterworth) {
    CascadeState st(sections_, 1);
    for (auto & v : y) st.step({&v, 1});
    return y;
  }
  const auto n = static_cast<std::ptrdiff_t>(x.size());
  const auto d = static_cast<std::ptrdiff_t>(taps_.size() - 1) / 2;
  for (std::ptrdiff_t t = 0; t < n; ++t) {
    double acc = 0;
    for (std::ptrdiff_t j = 0; j < static_cast<std::ptrdiff_t>(taps_.size()); ++j) {
      const std::ptrdiff_t src = t + d - j;
      if (src >= 0 && src < n) acc += taps_[static_cast<std::size_t>(j)] * x[static_cast<std::size_t>(src)];
    }
    y[static_cast<std::size_t>(t)] = acc;
  }
  return y;
}

std::vector<bool> DesignedFilter::transient_mask(std::size_t n_frames) const
{
  std::vector<bool> mask(n_frames, false);
  if (spec_.kind == FilterKind::Butterworth) {
    const std::size_t k = std::min(n_frames, butterworth_transient(spec_));
    std::fill(mask.begin(), mask.begin() + static_cast<std::ptrdiff_t>(k), true);
  } else {
    const std::size_t d = (taps_.size() - 1) / 2;
    for (std::size_t t = 0; t < n_frames; ++t) mask[t] = t < d || t + d >= n_frames;
  }
  return mask;
}

DesignedFilter design_temporal_filter(const TemporalFilter & spec) { return DesignedFilter(spec); }

CascadeState::CascadeState(std::span<const Biquad> sections, std::size_t n_pixels)
: sections_(sections.begin(), sections.end()),
  n_pixels_(n_pixels),
  z1_(sections.size() * n_pixels, 0.0),
  z2_(sections.size() * n_pixels, 0.0)
{
}

void CascadeState::step(std::span<double> samples)
{
  if (samples.size() != n_pixels_) throw std::invalid_argument("sample count does not match filter state");
  const auto n = static_cast<std::int64_t>(n_pixels_);
#pragma omp parallel for schedule(static) if (n > 4096)
  for (std::int64_t ii = 0; ii < n; ++ii) {
    const auto i = static_cast<std::size_t>(ii);
    double x = samples[i];
    for (std::size_t k = 0; k < sections_.size(); ++k) {
      const Biquad & b = sections_[k];
      double & z1 = z1_[k * n_pixels_ + i];
      double & z2 = z2_[k * n_pixels_ + i];
      const double y = b.b0 * x + z1;
      z1 = b.b1 * x - b.a1 * y + z2;
      z2 = b.b2 * x - b.a2 * y;
      x = y;
    }
    samples[i] = x;
  }
}

void MagnifyParams::validate() const
{
  if (!std::isfinite(m)) throw std::invalid_argument("magnification factor must be finite");
  if (!(denoise_sigma_px >= 0) || !std::isfinite(denoise_sigma_px)) {
    throw std::invalid_argument("denoise sigma must be finite and non-negative");
  }
  filter.validate();
}

std::vector<double> phase_delta(const ComplexGrid & coeffs, const ComplexGrid & reference)
{
  if (!coeffs.same_shape(reference.width, reference.height)) throw std::invalid_argument("coefficient grids differ");
  return wrapped_delta(coeffs, phases(reference));
}

std::vector<std::vector<double>> phase_delta(const Pyramid & pyr, const Pyramid & reference)
{
  if (pyr.bands.size() != reference.bands.size()) throw std::invalid_argument("pyramids come from different banks");
  std::vector<std::vector<double>> out;
  out.reserve(pyr.bands.size());
  for (std::size_t b = 0; b < pyr.bands.size(); ++b) out.push_back(phase_delta(pyr.bands[b], reference.bands[b]));
  return out;
}

std::vector<double> denoise_phase(
  std::span<const double> delta, std::span<const double> amplitude, std::size_t width, std::size_t height,
  double sigma_px)
{
  if (delta.size() != width * height || amplitude.size() != delta.size()) {
    throw std::invalid_argument("phase and amplitude grids must match");
  }
  if (!(sigma_px >= 0)) throw std::invalid_argument("sigma must be non-negative");
  std::vector<double> out(delta.begin(), delta.end());
  if (sigma_px == 0) return out;

  const auto radius = static_cast<std::ptrdiff_t>(std::ceil(3 * sigma_px));
  std::vector<double> kernel(static_cast<std::size_t>(2 * radius + 1));
  double ksum = 0;
  for (std::ptrdiff_t k = -radius; k <= radius; ++k) {
    const double v = std::exp(-static_cast<double>(k * k) / (2 * sigma_px * sigma_px));
    kernel[static_cast<std::size_t>(k + radius)] = v;
    ksum += v;
  }
  for (auto & v : kernel) v /= ksum;

  const std::size_t w = width, h = height;
  const auto taps = kernel.size();
  auto wrapped = [&](std::size_t n) {
    std::vector<std::size_t> idx(n * taps);
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t k = 0; k < taps; ++k) {
        const auto j = static_cast<std::ptrdiff_t>(i + k) - radius;
        const auto nn = static_cast<std::ptrdiff_t>(n);
        idx[i * taps + k] = static_cast<std::size_t>(((j % nn) + nn) % nn);
      }
    }
    return idx;
  };
  const std::vector<std::size_t> xi = wrapped(w), yi = wrapped(h);

  std::vector<double> num(delta.size()), den(delta.size());
  for (std::size_t i = 0; i < delta.size(); ++i) {
    den[i] = amplitude[i] * amplitude[i];
    num[i] = den[i] * delta[i];
  }
  std::vector<double> tn(delta.size()), td(delta.size());
  for (std::size_t y = 0; y < h; ++y) {
    const double * nr = &num[y * w];
    const double * dr = &den[y * w];
    for (std::size_t x = 0; x < w; ++x) {
      const std::size_t * ix = &xi[x * taps];
      double a = 0, b = 0;
      for (std::size_t k = 0; k < taps; ++k) {
        a += kernel[k] * nr[ix[k]];
        b += kernel[k] * dr[ix[k]];
      }
      tn[y * w + x] = a;
      td[y * w + x] = b;
    }
  }
  std::vector<double> a(w), b(w);
  for (std::size_t y = 0; y < h; ++y) {
    std::fill(a.begin(), a.end(), 0.0);
    std::fill(b.begin(), b.end(), 0.0);
    for (std::size_t k = 0; k < taps; ++k) {
      const double kv = kernel[k];
      const double * nr = &tn[yi[y * taps + k] * w];
      const double * dr = &td[yi[y * taps + k] * w];
      for (std::size_t x = 0; x < w; ++x) {
        a[x] += kv * nr[x];
        b[x] += kv * dr[x];
      }
    }
    for (std::size_t x = 0; x < w; ++x) {
      if (b[x] > 0) out[y * w + x] = a[x] / b[x];
    }
  }
  return out;
}

MagnifyResult magnify_sequence(const FrameSequence & frames, const MagnifyParams & params, const FilterBank & bank)
{
  frames.validate();
  if (frames.size() < 3) throw std::invalid_argument("magnification needs at least 3 frames");
  if (frames.width != bank.width() || frames.height != bank.height()) {
    throw std::invalid_argument("frame size does not match filter bank");
  }
  MagnifyParams p = params;
  p.filter.sample_rate = frames.fps;
  p.validate();
  const DesignedFilter filter(p.filter);

  MagnifyResult result;
  result.transient = filter.transient_mask(frames.size());
  result.frames.width = frames.width;
  result.frames.height = frames.height;
  result.frames.fps = frames.fps;
  result.frames.frames.resize(frames.size());

  if (p.filter.kind == FilterKind::Butterworth) {
    StreamingMagnifier stream(bank, p);
    for (std::size_t t = 0; t < frames.size(); ++t) result.frames.frames[t] = stream.push(frames.frames[t]);
    return result;
  }

  // The FIR path looks ahead, so it works band by band over the whole sequence.
  const std::size_t n_t = frames.size();
  const auto nt = static_cast<std::int64_t>(n_t);
  std::vector<ComplexGrid> spectra(n_t), accum(n_t);
#pragma omp parallel for schedule(static)
  for (std::int64_t t = 0; t < nt; ++t) {
    const auto i = static_cast<std::size_t>(t);
    spectra[i] = bank.spectrum(frames.frames[i]);
    accum[i] = passthrough(spectra[i], bank, p.amplify_lowpass_residual);
  }

  const std::size_t n_px = bank.grid_width() * bank.grid_height();
  for (const BandMask * band : active_bands(bank, p.amplify_lowpass_residual)) {
    std::vector<ComplexGrid> coeffs(n_t);
    std::vector<std::vector<double>> dphi(n_t);
#pragma omp parallel for schedule(static)
    for (std::int64_t t = 0; t < nt; ++t) {
      coeffs[static_cast<std::size_t>(t)] = band_coefficients(spectra[static_cast<std::size_t>(t)], *band, bank.fft());
    }
    const std::vector<double> ref = phases(coeffs[0]);
#pragma omp parallel for schedule(static)
    for (std::int64_t t = 0; t < nt; ++t) {
      dphi[static_cast<std::size_t>(t)] = wrapped_delta(coeffs[static_cast<std::size_t>(t)], ref);
    }

    std::vector<std::vector<double>> filtered(n_t, std::vector<double>(n_px));
    const auto npx = static_cast<std::int64_t>(n_px);
#pragma omp parallel for schedule(static)
    for (std::int64_t ii = 0; ii < npx; ++ii) {
      const auto i = static_cast<std::size_t>(ii);
      std::vector<double> series(n_t);
      for (std::size_t t = 0; t < n_t; ++t) series[t] = dphi[t][i];
      const std::vector<double> y = filter.apply(series);
      for (std::size_t t = 0; t < n_t; ++t) filtered[t][i] = y[t];
    }

#pragma omp parallel for schedule(static)
    for (std::int64_t t = 0; t < nt; ++t) {
      const auto i = static_cast<std::size_t>(t);
      add_into(accum[i], band_contribution(std::move(coeffs[i]), std::move(filtered[i]), *band, p, bank));
    }
  }

#pragma omp parallel for schedule(static)
  for (std::int64_t t = 0; t < nt; ++t) {
    result.frames.frames[static_cast<std::size_t>(t)] = synthesise(accum[static_cast<std::size_t>(t)], bank);
  }
  return result;
}

StreamingMagnifier::StreamingMagnifier(const FilterBank & bank, const MagnifyParams & params)
: bank_(bank), params_(params), filter_(params.filter), bands_(active_bands(bank, params.amplify_lowpass_residual))
{
  params_.validate();
  if (params_.filter.kind != FilterKind::Butterworth) {
    throw std::invalid_argument("streaming magnification needs a causal (butterworth) filter");
  }
}

Image StreamingMagnifier::push(const Image & frame)
{
  const ComplexGrid spectrum = bank_.spectrum(frame);
  const std::size_t n_px = bank_.grid_width() * bank_.grid_height();
  const std::size_t nb = bands_.size();

  std::vector<ComplexGrid> coeffs(nb);
  const auto nbi = static_cast<std::int64_t>(nb);
#pragma omp parallel for schedule(dynamic, 1)
  for (std::int64_t b = 0; b < nbi; ++b) {
    coeffs[static_cast<std::size_t>(b)] = band_coefficients(spectrum, *bands_[static_cast<std::size_t>(b)], bank_.fft());
  }
  if (seen_ == 0) {
    state_.clear();
    for (std::size_t b = 0; b < nb; ++b) state_.push_back({phases(coeffs[b]), CascadeState(filter_.sections(), n_px)});
  }
  ++seen_;

  std::vector<ComplexGrid> contrib(nb);
#pragma omp parallel for schedule(dynamic, 1)
  for (std::int64_t bi = 0; bi < nbi; ++bi) {
    const auto b = static_cast<std::size_t>(bi);
    std::vector<double> dphi = wrapped_delta(coeffs[b], state_[b].reference_phase);
    state_[b].filter.step(dphi);
    contrib[b] = band_contribution(std::move(coeffs[b]), std::move(dphi), *bands_[b], params_, bank_);
  }

  ComplexGrid accum = passthrough(spectrum, bank_, params_.amplify_lowpass_residual);
  for (const auto & c : contrib) add_into(accum, c);
  return synthesise(accum, bank_);
}

std::vector<Displacement> measure_displacement(const FrameSequence & frames, std::size_t reference_index)
{
  if (frames.size() < 2) throw std::invalid_argument("displacement needs at least 2 frames");
  if (reference_index >= frames.size()) throw std::invalid_argument("reference index out of range");
  frames.validate();

  const std::size_t w = frames.width, h = frames.height, n = w * h;
  const Fft2d fft(w, h);
  auto zero_mean_spectrum = [&](const Image & img) {
    double mean = 0;
    for (double v : img.data) mean += v;
    mean /= static_cast<double>(n);
    double energy = 0;
    ComplexGrid g(w, h);
    for (std::size_t i = 0; i < n; ++i) {
      const double v = img.data[i] - mean;
      energy += v * v;
      g.data[i] = v;
    }
    if (energy <= 1e-18 * static_cast<double>(n)) throw UndefinedError("displacement undefined for a constant frame");
    fft.forward(g.data, g.data);
    return g;
  };

  const ComplexGrid ref = zero_mean_spectrum(frames.frames[reference_index]);
  std::vector<Displacement> out(frames.size());
  std::vector<std::string> errors(frames.size());
  const auto nf = static_cast<std::int64_t>(frames.size());
#pragma omp parallel for schedule(dynamic, 1)
  for (std::int64_t kk = 0; kk < nf; ++kk) {
    const auto k = static_cast<std::size_t>(kk);
    ComplexGrid cur;
    try {
      cur = zero_mean_spectrum(frames.frames[k]);
    } catch (const UndefinedError & e) {
      errors[k] = e.what();
      continue;
    }

    ComplexGrid cross(w, h), corr(w, h);
    double max_mag = 0;
    for (std::size_t i = 0; i < n; ++i) {
      cross.data[i] = cur.data[i] * std::conj(ref.data[i]);
      max_mag = std::max(max_mag, std::abs(cross.data[i]));
    }
    // Regularised whitening keeps spectral lines that hold only round-off from steering the peak.
    const double floor = kWhiteningFloor * max_mag;
    for (std::size_t i = 0; i < n; ++i) corr.data[i] = cross.data[i] / (std::abs(cross.data[i]) + floor);
    fft.inverse(corr.data, corr.data);
    double best = -std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < n; ++i) best = std::max(best, corr.data[i].real());
    // Periodic patterns give several equal peaks; take the smallest displacement among them.
    double dx = 0, dy = 0, best_r2 = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < n; ++i) {
      if (corr.data[i].real() < best - 1e-9 * std::abs(best)) continue;
      const double cx = -bin_frequency(i % w, w) * static_cast<double>(w);
      const double cy = -bin_frequency(i / w, h) * static_cast<double>(h);
      if (cx * cx + cy * cy < best_r2) {
        best_r2 = cx * cx + cy * cy;
        dx = cx;
        dy = cy;
      }
    }

    for (int iter = 0; iter < 3; ++iter) {
      double sxx = 0, sxy = 0, syy = 0, bx = 0, by = 0;
      for (std::size_t v = 0; v < h; ++v) {
        const double fy = bin_frequency(v, h);
        for (std::size_t u = 0; u < w; ++u) {
          const double fx = bin_frequency(u, w);
          const double r = std::hypot(fx, fy);
          if (r == 0 || r > 0.25) continue;
          const std::size_t i = v * w + u;
          const double wt = std::abs(cur.data[i]) * std::abs(ref.data[i]);
          if (wt == 0) continue;
          const double gx = 2 * kPi * fx, gy = 2 * kPi * fy;
          const double phi = std::arg(cross.data[i] * std::polar(1.0, -(gx * dx + gy * dy)));
          sxx += wt * gx * gx;
          sxy += wt * gx * gy;
          syy += wt * gy * gy;
          bx += wt * gx * phi;
          by += wt * gy * phi;
        }
      }
      // Pseudo-inverse of the symmetric 2x2 normal matrix; a 1-D pattern constrains only one axis.
      const double tr = sxx + syy, det = sxx * syy - sxy * sxy;
      const double disc = std::sqrt(std::max(0.0, tr * tr / 4 - det));
      const double l1 = tr / 2 + disc, l2 = tr / 2 - disc;
      if (!(l1 > 0)) break;
      double e1x = sxy, e1y = l1 - sxx;
      if (std::hypot(e1x, e1y) < 1e-12 * l1) {
        e1x = sxx >= syy ? 1 : 0;
        e1y = sxx >= syy ? 0 : 1;
      }
      const double norm = std::hypot(e1x, e1y);
      e1x /= norm;
      e1y /= norm;
      const double e2x = -e1y, e2y = e1x;
      double ddx = (e1x * bx + e1y * by) / l1 * e1x, ddy = (e1x * bx + e1y * by) / l1 * e1y;
      if (l2 > 1e-9 * l1) {
        const double c2 = (e2x * bx + e2y * by) / l2;
        ddx += c2 * e2x;
        ddy += c2 * e2y;
      }
      dx += ddx;
      dy += ddy;
    }
    out[k] = {dx, dy};
  }
  for (const auto & e : errors) {
    if (!e.empty()) throw UndefinedError(e);
  }
  return out;
}

std::pair<double, double> band_from_histogram(const FreqHistogram & hist)
{
  if (hist.bins.empty()) throw DataError("histogram is empty; no band to import");
  const auto & bin = hist.bins.at(hist.dominant);
  return {bin.lo_hz, bin.hi_hz};
}

}  // namespace evkit
