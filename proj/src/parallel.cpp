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

#include "evkit/parallel.hpp"

#include <stdexcept>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace evkit
{
namespace
{
int g_default_threads = 0;
}

void set_thread_count(int n)
{
#ifdef _OPENMP
  if (g_default_threads == 0) g_default_threads = omp_get_max_threads();
  omp_set_num_threads(n > 0 ? n : g_default_threads);
#else
  (void)n;
#endif
}

int thread_count()
{
#ifdef _OPENMP
  return omp_get_max_threads();
#else
  return 1;
#endif
}

RowIndex index_rows(std::span<const Event> events, std::uint32_t height)
{
  if (events.size() > 0xFFFFFFFFull) throw std::length_error("too many events for row index");
  RowIndex idx;
  idx.offsets.assign(std::size_t{height} + 1, 0);
  for (const auto & e : events) {
    if (e.y >= height) throw std::out_of_range("event row outside geometry");
    ++idx.offsets[e.y + 1];
  }
  for (std::size_t y = 0; y < height; ++y) idx.offsets[y + 1] += idx.offsets[y];
  idx.order.resize(events.size());
  std::vector<std::size_t> cursor(idx.offsets.begin(), idx.offsets.end() - 1);
  for (std::size_t i = 0; i < events.size(); ++i) {
    idx.order[cursor[events[i].y]++] = static_cast<std::uint32_t>(i);
  }
  return idx;
}

EventStream select_events(const EventStream & stream, std::span<const std::uint8_t> keep)
{
  EventStream out;
  out.geometry = stream.geometry;
  std::size_t n = 0;
  for (auto k : keep) n += k ? 1 : 0;
  out.events.reserve(n);
  for (std::size_t i = 0; i < stream.events.size(); ++i) {
    if (keep[i]) out.events.push_back(stream.events[i]);
  }
  return out;
}

}  // namespace evkit
