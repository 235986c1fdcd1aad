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

#ifndef EVKIT_PARALLEL_HPP
#define EVKIT_PARALLEL_HPP

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "evkit/event_model.hpp"

namespace evkit
{

/// Caps OpenMP worker threads for all kernels. n = 0 restores the runtime default.
void set_thread_count(int n);
int thread_count();

/// Event indices grouped by sensor row, preserving stream order inside each row.
/// Rows are independent units of work for per-pixel state machines.
struct RowIndex
{
  std::vector<std::size_t> offsets;  // height + 1 entries
  std::vector<std::uint32_t> order;  // event indices, row-major buckets

  std::span<const std::uint32_t> row(std::size_t y) const
  {
    return {order.data() + offsets[y], offsets[y + 1] - offsets[y]};
  }
};

RowIndex index_rows(std::span<const Event> events, std::uint32_t height);

/// Runs `kernel(state, event) -> bool` over every event with one `State` per
/// pixel, sharding by row across threads. Returns the keep mask in stream order;
/// the result does not depend on the thread count.
template <typename State, typename Kernel>
std::vector<std::uint8_t> per_pixel_mask(const EventStream & stream, Kernel && kernel)
{
  const auto & g = stream.geometry;
  const RowIndex rows = index_rows(stream.events, g.height);
  std::vector<State> states(g.pixel_count());
  std::vector<std::uint8_t> keep(stream.events.size(), 0);
  const auto n_rows = static_cast<std::int64_t>(g.height);
#pragma omp parallel for schedule(dynamic, 8)
  for (std::int64_t y = 0; y < n_rows; ++y) {
    for (const std::uint32_t i : rows.row(static_cast<std::size_t>(y))) {
      const Event & e = stream.events[i];
      keep[i] = kernel(states[std::size_t{e.y} * g.width + e.x], e) ? 1 : 0;
    }
  }
  return keep;
}

/// Copies the events whose mask entry is nonzero, preserving order.
EventStream select_events(const EventStream & stream, std::span<const std::uint8_t> keep);

}  // namespace evkit

#endif  // EVKIT_PARALLEL_HPP
