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

#include <stdexcept>

#include "evkit/event_model.hpp"
#include "test_util.hpp"

namespace evkit
{
namespace
{
using test::on;

TEST(ValidateStream, ReportsOrderingViolationAtSecondIndex)
{
  const auto v = validate_stream(test::make_stream({4, 4}, {on(5), on(3)}));
  ASSERT_EQ(v.size(), 1u);
  EXPECT_EQ(v[0].index, 1u);
  EXPECT_NE(v[0].rule.find("non-monotonic"), std::string::npos);
}

TEST(ValidateStream, ReportsColumnOutOfRange)
{
  const auto v = validate_stream(test::make_stream(kEvk4Geometry, {on(0, 1280, 0)}));
  ASSERT_EQ(v.size(), 1u);
  EXPECT_EQ(v[0].index, 0u);
  EXPECT_NE(v[0].rule.find("x out of range"), std::string::npos);
}

TEST(ValidateStream, EmptyStreamIsValid) { EXPECT_TRUE(validate_stream(EventStream{}).empty()); }

TEST(ValidateStream, EqualTimestampsAreAllowed)
{
  EXPECT_TRUE(validate_stream(test::make_stream({4, 4}, {on(5), on(5, 1), on(5, 2)})).empty());
}

TEST(BatchEvents, PartitionsIntoTumblingWindows)
{
  const EventStream s = test::make_stream({4, 4}, {on(0), on(10000), on(25000)});
  const auto b = batch_events(s, 20000, 0);
  ASSERT_EQ(b.size(), 2u);
  EXPECT_EQ(b[0].window_start_us, 0u);
  EXPECT_EQ(b[0].window_end_us, 20000u);
  ASSERT_EQ(b[0].events.size(), 2u);
  EXPECT_EQ(b[0].events[1].t, 10000u);
  ASSERT_EQ(b[1].events.size(), 1u);
  EXPECT_EQ(b[1].events[0].t, 25000u);
}

TEST(BatchEvents, EmptyStreamGivesNoBatches) { EXPECT_TRUE(batch_events(EventStream{}, 1000).empty()); }

TEST(BatchEvents, ZeroWindowIsRejected)
{
  EXPECT_THROW(batch_events(test::make_stream({4, 4}, {on(0)}), 0), std::invalid_argument);
}

TEST(BatchEvents, EventBeforeOriginIsRejected)
{
  EXPECT_THROW(batch_events(test::make_stream({4, 4}, {on(5)}), 10, 10), std::invalid_argument);
}

TEST(BatchEvents, UniformEventsSplitEvenly)
{
  EventStream s;
  s.geometry = {4, 4};
  for (timestamp_us t = 0; t < 100000; t += 10) s.events.push_back(on(t));
  const auto b = batch_events(s, 25000, 0);
  ASSERT_EQ(b.size(), 4u);
  // Brute-force partition count.
  for (std::size_t k = 0; k < 4; ++k) {
    std::size_t expected = 0;
    for (const auto & e : s.events) expected += e.t / 25000 == k ? 1 : 0;
    EXPECT_EQ(b[k].events.size(), expected);
  }
}

TEST(BatchEvents, DefaultOriginIsFirstEvent)
{
  const EventStream s = test::make_stream({4, 4}, {on(1500), on(2400), on(2600)});
  const auto b = batch_events(s, 1000);
  ASSERT_EQ(b.size(), 2u);
  EXPECT_EQ(b[0].window_start_us, 1500u);
  EXPECT_EQ(b[0].events.size(), 2u);
}

TEST(BatchEvents, InteriorEmptyWindowsAreKept)
{
  const auto b = batch_events(test::make_stream({4, 4}, {on(0), on(3500)}), 1000, 0);
  ASSERT_EQ(b.size(), 4u);
  EXPECT_TRUE(b[1].events.empty());
  EXPECT_TRUE(b[2].events.empty());
}

TEST(BatchEvents, ConcatenationReproducesStream)
{
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 200; ++trial) {
    const EventStream s = test::random_stream(rng);
    if (s.empty()) continue;
    const duration_us w = std::uniform_int_distribution<duration_us>(1, 20000)(rng);
    std::vector<Event> joined;
    for (const auto & b : batch_events(s, w)) {
      for (const auto & e : b.events) {
        EXPECT_GE(e.t, b.window_start_us);
        EXPECT_LT(e.t, b.window_end_us);
        joined.push_back(e);
      }
    }
    EXPECT_EQ(joined, s.events);
  }
}

TEST(SortByTime, IsStable)
{
  std::vector<Event> v{on(5, 1), on(3, 2), on(5, 0), on(3, 1)};
  sort_by_time(v);
  EXPECT_EQ(v, (std::vector<Event>{on(3, 2), on(3, 1), on(5, 1), on(5, 0)}));
}

TEST(Polarity, SignedMapping)
{
  EXPECT_EQ(signed_polarity(Polarity::On), 1);
  EXPECT_EQ(signed_polarity(Polarity::Off), -1);
  EXPECT_EQ(static_cast<int>(Polarity::On), 1);
  EXPECT_EQ(static_cast<int>(Polarity::Off), 0);
}

}  // namespace
}  // namespace evkit
