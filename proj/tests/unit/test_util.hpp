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

#ifndef EVKIT_TESTS_TEST_UTIL_HPP
#define EVKIT_TESTS_TEST_UTIL_HPP

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <random>
#include <string>
#include <vector>

#include "evkit/event_model.hpp"
#include "evkit/image.hpp"

namespace evkit::test
{

inline Event ev(timestamp_us t, std::uint16_t x, std::uint16_t y, Polarity p) { return {t, x, y, p}; }
inline Event on(timestamp_us t, std::uint16_t x = 0, std::uint16_t y = 0) { return {t, x, y, Polarity::On}; }
inline Event off(timestamp_us t, std::uint16_t x = 0, std::uint16_t y = 0) { return {t, x, y, Polarity::Off}; }

inline EventStream make_stream(SensorGeometry g, std::vector<Event> events) { return {g, std::move(events)}; }

/// Sorted random stream with dense per-pixel activity.
inline EventStream random_stream(std::mt19937_64 & rng, std::size_t max_events = 200, std::uint32_t max_side = 64)
{
  std::uniform_int_distribution<std::uint32_t> side(1, max_side);
  EventStream s;
  s.geometry = {side(rng), side(rng)};
  std::uniform_int_distribution<std::size_t> count(0, max_events);
  std::uniform_int_distribution<std::uint32_t> xs(0, s.geometry.width - 1), ys(0, s.geometry.height - 1);
  std::uniform_int_distribution<timestamp_us> dt(0, 3000);
  std::bernoulli_distribution pol(0.5);
  const std::size_t n = count(rng);
  timestamp_us t = std::uniform_int_distribution<timestamp_us>(0, 1'000'000)(rng);
  for (std::size_t i = 0; i < n; ++i) {
    t += dt(rng);
    s.events.push_back(
      {t, static_cast<std::uint16_t>(xs(rng)), static_cast<std::uint16_t>(ys(rng)),
       pol(rng) ? Polarity::On : Polarity::Off});
  }
  return s;
}

/// Events of one pixel, in stream order.
inline std::vector<Event> pixel_events(const EventStream & s, std::uint16_t x, std::uint16_t y)
{
  std::vector<Event> out;
  std::copy_if(s.events.begin(), s.events.end(), std::back_inserter(out), [&](const Event & e) {
    return e.x == x && e.y == y;
  });
  return out;
}

inline bool is_subsequence(const std::vector<Event> & sub, const std::vector<Event> & full)
{
  auto it = full.begin();
  for (const Event & e : sub) {
    it = std::find(it, full.end(), e);
    if (it == full.end()) return false;
    ++it;
  }
  return true;
}

inline Image random_image(std::mt19937_64 & rng, std::size_t w, std::size_t h)
{
  std::uniform_real_distribution<double> u(0.0, 1.0);
  Image img(w, h);
  for (auto & v : img.data) v = u(rng);
  return img;
}

inline double max_abs_diff(const Image & a, const Image & b)
{
  double m = 0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a.data[i] - b.data[i]));
  return m;
}

/// Fresh directory under the system temp dir, removed on destruction.
class TempDir
{
public:
  explicit TempDir(const std::string & tag)
  {
    std::random_device rd;
    path_ = std::filesystem::temp_directory_path() / ("evkit_" + tag + "_" + std::to_string(rd()));
    std::filesystem::create_directories(path_);
  }
  ~TempDir()
  {
    std::error_code ec;
    std::filesystem::remove_all(path_, ec);
  }
  TempDir(const TempDir &) = delete;
  TempDir & operator=(const TempDir &) = delete;
  const std::filesystem::path & path() const { return path_; }
  std::string operator/(const std::string & name) const { return (path_ / name).string(); }

private:
  std::filesystem::path path_;
};

}  // namespace evkit::test

#endif  // EVKIT_TESTS_TEST_UTIL_HPP
