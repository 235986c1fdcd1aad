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

#ifndef EVKIT_EVENT_MODEL_HPP
#define EVKIT_EVENT_MODEL_HPP

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace evkit
{

/// Timestamps and durations are integer microseconds throughout the event path.
using timestamp_us = std::uint64_t;
using duration_us = std::uint64_t;

enum class Polarity : std::uint8_t { Off = 0, On = 1 };

/// Signed form used in the literature: ON = +1, OFF = -1.
constexpr int signed_polarity(Polarity p) { return p == Polarity::On ? 1 : -1; }
constexpr Polarity opposite(Polarity p) { return p == Polarity::On ? Polarity::Off : Polarity::On; }

struct Event
{
  timestamp_us t = 0;
  std::uint16_t x = 0;
  std::uint16_t y = 0;
  Polarity p = Polarity::Off;

  friend bool operator==(const Event &, const Event &) = default;
};

struct SensorGeometry
{
  std::uint32_t width = 1280;
  std::uint32_t height = 720;

  std::size_t pixel_count() const { return std::size_t{width} * height; }
  bool contains(std::uint32_t x, std::uint32_t y) const { return x < width && y < height; }
  friend bool operator==(const SensorGeometry &, const SensorGeometry &) = default;
};

/// Default EVK-4 profile.
inline constexpr SensorGeometry kEvk4Geometry{1280, 720};

struct EventStream
{
  SensorGeometry geometry;
  std::vector<Event> events;

  bool empty() const { return events.empty(); }
  std::size_t size() const { return events.size(); }
  friend bool operator==(const EventStream &, const EventStream &) = default;
};

/// A tumbling-window slice of a stream. Views into the parent stream, which
/// must outlive the batch.
struct EventBatch
{
  timestamp_us window_start_us = 0;
  timestamp_us window_end_us = 0;
  std::span<const Event> events;
};

struct Violation
{
  std::size_t index = 0;
  std::string rule;
};

/// Checks every stream invariant. An empty result means the stream is valid.
std::vector<Violation> validate_stream(const EventStream & stream);

/// Partitions `stream` into contiguous windows [origin + k*window, origin + (k+1)*window).
/// Empty windows between events are emitted; trailing empty windows are not.
/// When `origin_us` is absent the first event's timestamp is used.
/// Throws std::invalid_argument for window_us == 0 or an event earlier than origin.
std::vector<EventBatch> batch_events(
  const EventStream & stream, duration_us window_us, std::optional<timestamp_us> origin_us = {});

/// Stable sort by timestamp only; ties keep their input order.
void sort_by_time(std::vector<Event> & events);

/// Total order used wherever output must not depend on how it was produced.
bool canonical_less(const Event & a, const Event & b);

}  // namespace evkit

#endif  // EVKIT_EVENT_MODEL_HPP
