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

#include "evkit/steerable.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace evkit
{
namespace
{
constexpr double kPi = std::numbers::pi;

// Raised-cosine transition pair in log2 frequency: hi^2 + lo^2 = 1, with the
// transition on u in [-(s+1) w, -s w].
double radial_hi(double u, double shift, double w)
{
  const double t = std::clamp(-(u + shift) / w, 0.0, 1.0);
  return std::cos(kPi / 2 * t);
}

double radial_lo(double u, double shift, double w)
{
  const double t = std::clamp(-(u + shift) / w, 0.0, 1.0);
  return std::sin(kPi / 2 * t);
}

double angular_gain(std::size_t k_count)
{
  // alpha^2 = 2^(2n) (n!)^2 / (K (2n)!), n = K - 1, so the squared windows sum to one.
  const double n = static_cast<double>(k_count - 1);
  const double log_a2 = 2 * n * std::log(2.0) + 2 * std::lgamma(n + 1) - std::log(static_cast<double>(k_count)) -
                        std::lgamma(2 * n + 1);
  return std::exp(0.5 * log_a2);
}

std::size_t reflect(std::ptrdiff_t i, std::size_t n)
{
  const auto nn = static_cast<std::ptrdiff_t>(n);
  while (i < 0 || i >= nn) i = i < 0 ? -i - 1 : 2 * nn - i - 1;
  return static_cast<std::size_t>(i);
}

void check_grid(const ComplexGrid & g, const FilterBank & bank)
{
  if (!g.same_shape(bank.grid_width(), bank.grid_height())) {
    throw std::invalid_argument("coefficient grid does not match filter bank");
  }
}
}  // namespace

FilterBank FilterBank::build(
  std::size_t width, std::size_t height, std::size_t n_orientations, std::size_t octave_fraction, std::size_t pad)
{
  if (width < 16 || height < 16) throw std::invalid_argument("image too small for a pyramid (need at least 16x16)");
  if (n_orientations < 2) throw std::invalid_argument("need at least 2 orientations");
  if (octave_fraction != 1 && octave_fraction != 2) throw std::invalid_argument("octave fraction must be 1 or 2");

  FilterBank fb;
  fb.width_ = width;
  fb.height_ = height;
  fb.pad_ = pad;
  fb.n_orientations_ = n_orientations;
  fb.octave_fraction_ = octave_fraction;
  const auto octaves = static_cast<std::size_t>(std::floor(std::log2(static_cast<double>(std::min(width, height)))));
  fb.n_levels_ = (octaves - 2) * octave_fraction;

  const std::size_t gw = fb.grid_width(), gh = fb.grid_height(), n = gw * gh;
  fb.fft_ = std::make_shared<const Fft2d>(gw, gh);

  const double wt = 1.0 / static_cast<double>(octave_fraction);
  const double alpha = angular_gain(n_orientations);
  const double power = static_cast<double>(n_orientations - 1);
  const auto levels = fb.n_levels_;

  std::vector<double> thetas(n_orientations);
  for (std::size_t k = 0; k < n_orientations; ++k) {
    thetas[k] = kPi * static_cast<double>(k) / static_cast<double>(n_orientations);
  }

  for (std::size_t l = 0; l < levels; ++l) {
    for (std::size_t k = 0; k < n_orientations; ++k) {
      BandMask b;
      b.info = {l, k, thetas[k], 0.5 * std::exp2(-static_cast<double>(l + 1) * wt)};
      b.real.resize(n);
      b.analytic.resize(n);
      fb.bands_.push_back(std::move(b));
    }
  }
  for (std::size_t k = 0; k < n_orientations; ++k) {
    BandMask b;
    b.info = {levels, k, thetas[k], 0.0};
    b.real.resize(n);
    b.analytic.resize(n);
    fb.lowpass_bands_.push_back(std::move(b));
  }
  fb.highpass_.resize(n);
  fb.lowpass_.resize(n);

  const auto rows = static_cast<std::int64_t>(gh);
#pragma omp parallel for schedule(static)
  for (std::int64_t vv = 0; vv < rows; ++vv) {
    const auto v = static_cast<std::size_t>(vv);
    const double fy = bin_frequency(v, gh);
    const bool v_self = v == 0 || 2 * v == gh;
    for (std::size_t u_bin = 0; u_bin < gw; ++u_bin) {
      const std::size_t i = v * gw + u_bin;
      const double fx = bin_frequency(u_bin, gw);
      const double r = std::hypot(fx, fy);
      const bool self_conjugate = v_self && (u_bin == 0 || 2 * u_bin == gw);
      const double u = r > 0 ? std::log2(2 * r) : -std::numeric_limits<double>::infinity();
      const double theta = std::atan2(fy, fx);

      std::vector<double> g(n_orientations), a(n_orientations);
      for (std::size_t k = 0; k < n_orientations; ++k) {
        if (r == 0) {
          g[k] = 1.0 / std::sqrt(static_cast<double>(n_orientations));
          a[k] = 1.0;
          continue;
        }
        g[k] = alpha * std::pow(std::abs(std::cos(theta - thetas[k])), power);
        const double c = (fx * std::cos(thetas[k]) + fy * std::sin(thetas[k])) / r;
        a[k] = self_conjugate || c == 0 ? 1.0 : (c > 0 ? 2.0 : 0.0);
      }

      fb.highpass_[i] = radial_hi(u, 0, wt);
      for (std::size_t l = 0; l < levels; ++l) {
        const double radial = radial_lo(u, static_cast<double>(l) * wt, wt) *
                              radial_hi(u, static_cast<double>(l + 1) * wt, wt);
        for (std::size_t k = 0; k < n_orientations; ++k) {
          BandMask & b = fb.bands_[l * n_orientations + k];
          b.real[i] = radial * g[k];
          b.analytic[i] = b.real[i] * a[k];
        }
      }
      const double lo = radial_lo(u, static_cast<double>(levels) * wt, wt);
      fb.lowpass_[i] = lo;
      for (std::size_t k = 0; k < n_orientations; ++k) {
        BandMask & b = fb.lowpass_bands_[k];
        b.real[i] = lo * g[k];
        b.analytic[i] = b.real[i] * a[k];
      }
    }
  }
  return fb;
}

double FilterBank::tiling_residual() const
{
  double worst = 0;
  for (std::size_t i = 0; i < highpass_.size(); ++i) {
    double s = highpass_[i] * highpass_[i] + lowpass_[i] * lowpass_[i];
    for (const auto & b : bands_) s += b.real[i] * b.real[i];
    worst = std::max(worst, std::abs(s - 1.0));
  }
  return worst;
}

ComplexGrid FilterBank::spectrum(const Image & frame) const
{
  if (!frame.same_shape(width_, height_)) throw std::invalid_argument("frame size does not match filter bank");
  const std::size_t gw = grid_width(), gh = grid_height();
  const auto p = static_cast<std::ptrdiff_t>(pad_);
  ComplexGrid padded(gw, gh);
  for (std::size_t y = 0; y < gh; ++y) {
    const std::size_t sy = reflect(static_cast<std::ptrdiff_t>(y) - p, height_);
    for (std::size_t x = 0; x < gw; ++x) {
      padded(x, y) = frame(reflect(static_cast<std::ptrdiff_t>(x) - p, width_), sy);
    }
  }
  ComplexGrid out(gw, gh);
  fft_->forward(padded.data, out.data);
  return out;
}

Image FilterBank::crop(std::span<const double> grid) const
{
  if (grid.size() != grid_width() * grid_height()) throw std::invalid_argument("grid size does not match filter bank");
  Image out(width_, height_);
  for (std::size_t y = 0; y < height_; ++y) {
    const double * row = grid.data() + (y + pad_) * grid_width() + pad_;
    std::copy(row, row + width_, &out(0, y));
  }
  return out;
}

ComplexGrid band_coefficients(const ComplexGrid & spectrum, const BandMask & band, const Fft2d & fft)
{
  ComplexGrid tmp(spectrum.width, spectrum.height);
  for (std::size_t i = 0; i < tmp.size(); ++i) tmp.data[i] = spectrum.data[i] * band.analytic[i];
  fft.inverse(tmp.data, tmp.data);
  return tmp;
}

void accumulate_band(const ComplexGrid & coeffs, const BandMask & band, const Fft2d & fft, ComplexGrid & accum)
{
  ComplexGrid tmp(coeffs.width, coeffs.height);
  fft.forward(coeffs.data, tmp.data);
  for (std::size_t i = 0; i < tmp.size(); ++i) accum.data[i] += band.real[i] * tmp.data[i];
}

namespace
{
Image real_residual(const ComplexGrid & spectrum, std::span<const double> mask, const Fft2d & fft)
{
  ComplexGrid tmp(spectrum.width, spectrum.height);
  for (std::size_t i = 0; i < tmp.size(); ++i) tmp.data[i] = spectrum.data[i] * mask[i];
  fft.inverse(tmp.data, tmp.data);
  Image out(spectrum.width, spectrum.height);
  for (std::size_t i = 0; i < out.size(); ++i) out.data[i] = tmp.data[i].real();
  return out;
}

void accumulate_real(const Image & residual, std::span<const double> mask, const Fft2d & fft, ComplexGrid & accum)
{
  ComplexGrid tmp(residual.width, residual.height);
  for (std::size_t i = 0; i < tmp.size(); ++i) tmp.data[i] = residual.data[i];
  fft.forward(tmp.data, tmp.data);
  for (std::size_t i = 0; i < tmp.size(); ++i) accum.data[i] += mask[i] * tmp.data[i];
}
}  // namespace

Pyramid decompose_spectrum(const ComplexGrid & spectrum, const FilterBank & bank)
{
  check_grid(spectrum, bank);
  const auto bands = bank.bands();
  Pyramid pyr;
  pyr.grid_width = bank.grid_width();
  pyr.grid_height = bank.grid_height();
  pyr.bands.resize(bands.size());
  const auto nb = static_cast<std::int64_t>(bands.size());
#pragma omp parallel for schedule(dynamic, 1)
  for (std::int64_t b = 0; b < nb; ++b) {
    pyr.bands[static_cast<std::size_t>(b)] = band_coefficients(spectrum, bands[static_cast<std::size_t>(b)], bank.fft());
  }
  pyr.highpass = real_residual(spectrum, bank.highpass(), bank.fft());
  pyr.lowpass = real_residual(spectrum, bank.lowpass(), bank.fft());
  return pyr;
}

Pyramid decompose(const Image & frame, const FilterBank & bank) { return decompose_spectrum(bank.spectrum(frame), bank); }

Image reconstruct(const Pyramid & pyr, const FilterBank & bank)
{
  const auto bands = bank.bands();
  if (pyr.bands.size() != bands.size() || pyr.grid_width != bank.grid_width() ||
      pyr.grid_height != bank.grid_height() || !pyr.highpass.same_shape(pyr.grid_width, pyr.grid_height) ||
      !pyr.lowpass.same_shape(pyr.grid_width, pyr.grid_height)) {
    throw std::invalid_argument("pyramid does not match filter bank");
  }
  for (const auto & c : pyr.bands) check_grid(c, bank);

  ComplexGrid accum(pyr.grid_width, pyr.grid_height);
  for (std::size_t b = 0; b < bands.size(); ++b) accumulate_band(pyr.bands[b], bands[b], bank.fft(), accum);
  accumulate_real(pyr.highpass, bank.highpass(), bank.fft(), accum);
  accumulate_real(pyr.lowpass, bank.lowpass(), bank.fft(), accum);
  bank.fft().inverse(accum.data, accum.data);

  std::vector<double> re(accum.size());
  for (std::size_t i = 0; i < re.size(); ++i) re[i] = accum.data[i].real();
  return bank.crop(re);
}

Pyramid shift_phase(const Pyramid & pyr, std::span<const double> offsets)
{
  if (offsets.size() != pyr.bands.size()) throw std::invalid_argument("one phase offset per band required");
  Pyramid out = pyr;
  for (std::size_t b = 0; b < offsets.size(); ++b) {
    const std::complex<double> rot = std::polar(1.0, offsets[b]);
    for (auto & c : out.bands[b].data) c *= rot;
  }
  return out;
}

double wrap_phase(double phi)
{
  const double r = std::remainder(phi, 2 * kPi);
  return r <= -kPi ? r + 2 * kPi : r;
}

std::vector<double> band_energies(const Pyramid & pyr)
{
  std::vector<double> e;
  e.reserve(pyr.bands.size() + 2);
  for (const auto & b : pyr.bands) {
    double s = 0;
    for (const auto & c : b.data) s += c.real() * c.real();
    e.push_back(s);
  }
  for (const Image * r : {&pyr.highpass, &pyr.lowpass}) {
    double s = 0;
    for (double v : r->data) s += v * v;
    e.push_back(s);
  }
  return e;
}

}  // namespace evkit
