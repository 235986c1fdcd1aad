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

#include "evkit/event_model.hpp"

#include <algorithm>
#include <stdexcept>
#include <tuple>

namespace evkit
{

std::vector<Violation> validate_stream(const EventStream & stream)
{
  std::vector<Violation> out;
  const auto & g = stream.geometry;
  if (g.width < 1 || g.height < 1) {
    out.push_back({0, "geometry must be at least 1x1"});
  }
  for (std::size_t i = 0; i < stream.events.size(); ++i) {
    const Event & e = stream.events[i];
    if (e.x >= g.width) out.push_back({i, "x out of range at index " + std::to_string(i)});
    if (e.y >= g.height) out.push_back({i, "y out of range at index " + std::to_string(i)});
    if (e.p != Polarity::On && e.p != Polarity::Off) {
      out.push_back({i, "invalid polarity at index " + std::to_string(i)});
    }
    if (i > 0 && e.t < stream.events[i - 1].t) {
      out.push_back({i, "non-monotonic at index " + std::to_string(i)});
    }
  }
  return out;
}

std::vector<EventBatch> batch_events(
  const EventStream & stream, duration_us window_us, std::optional<timestamp_us> origin_us)
{
  if (window_us == 0) throw std::invalid_argument("batch window must be at least 1 us");
  std::vector<EventBatch> batches;
  const auto & ev = stream.events;
  if (ev.empty()) return batches;

  const timestamp_us origin = origin_us.value_or(ev.front().t);
  if (ev.front().t < origin) {
    throw std::invalid_argument("event precedes batch origin");
  }
  const std::uint64_t last_window = (ev.back().t - origin) / window_us;
  batches.reserve(last_window + 1);

  std::size_t begin = 0;
  for (std::uint64_t k = 0; k <= last_window; ++k) {
    const timestamp_us start = origin + k * window_us;
    const timestamp_us end = start + window_us;
    std::size_t stop = begin;
    while (stop < ev.size() && ev[stop].t < end) ++stop;
    batches.push_back({start, end, std::span<const Event>(ev.data() + begin, stop - begin)});
    begin = stop;
  }
  return batches;
}

void sort_by_time(std::vector<Event> & events)
{
  std::stable_sort(
    events.begin(), events.end(), [](const Event & a, const Event & b) { return a.t < b.t; });
}

bool canonical_less(const Event & a, const Event & b)
{
  return std::tie(a.t, a.y, a.x, a.p) < std::tie(b.t, b.y, b.x, b.p);
}

}  // namespace evkit
