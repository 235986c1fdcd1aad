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

#ifndef EVKIT_REFERENCE_HPP
#define EVKIT_REFERENCE_HPP

#include "evkit/event_filters.hpp"
#include "evkit/event_synth.hpp"
#include "evkit/freqmap.hpp"
#include "evkit/steerable.hpp"

/// Single-threaded, straight-line versions of the parallel kernels. They walk
/// the stream once in order with a flat per-pixel state table and exist to
/// cross-check and benchmark the row-sharded implementations.
namespace evkit::reference
{

FrequencyMap stream_freq_map(const EventStream & stream, const FreqMapConfig & cfg);
EventStream stc_filter(const EventStream & stream, const StcConfig & cfg);
EventStream refractory_filter(const EventStream & stream, duration_us dead_time_us);
EventStream synth_flicker(
  SensorGeometry geometry, Rect region, double freq_hz, duration_us duration_us_total, const SensorModel & model = {},
  double phase_deg = 0.0);
Pyramid decompose(const Image & frame, const FilterBank & bank);

}  // namespace evkit::reference

#endif  // EVKIT_REFERENCE_HPP
