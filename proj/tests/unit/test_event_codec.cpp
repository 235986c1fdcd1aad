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

#include "evkit/errors.hpp"
#include "evkit/event_codec.hpp"
#include "test_util.hpp"

namespace evkit
{
namespace
{
using test::off;
using test::on;

std::vector<std::uint8_t> golden_fixture()
{
  return read_binary_file(std::filesystem::path(EVKIT_FIXTURE_DIR) / "golden_4x4_t7_x1_y2_on.evs1");
}

TEST(Csv, DecodesTwoEvents)
{
  const EventStream s = decode_csv("0,3,4,1\n100,3,4,0\n");
  ASSERT_EQ(s.size(), 2u);
  EXPECT_EQ(s.events[1], off(100, 3, 4));
  EXPECT_EQ(s.geometry, (SensorGeometry{4, 5}));
}

TEST(Csv, AcceptsHeaderLine)
{
  const EventStream s = decode_csv("t,x,y,p\n0,3,4,1\n");
  ASSERT_EQ(s.size(), 1u);
}

TEST(Csv, MalformedLineReportsLineNumber)
{
  try {
    decode_csv("abc,3,4,1");
    FAIL() << "expected ParseError";
  } catch (const ParseError & e) {
    EXPECT_EQ(e.line(), 1u);
  }
  try {
    decode_csv("0,1,1,1\n5,1,1,2\n");
    FAIL() << "expected ParseError";
  } catch (const ParseError & e) {
    EXPECT_EQ(e.line(), 2u);
  }
}

TEST(Csv, RejectsOutOfOrderUnlessSorting)
{
  EXPECT_THROW(decode_csv("5,0,0,1\n3,0,0,1\n"), OrderError);
  CsvDecodeOptions opts;
  opts.sort = true;
  const EventStream s = decode_csv("5,0,0,1\n3,0,0,1\n", opts);
  EXPECT_EQ(s.events[0].t, 3u);
}

TEST(Csv, RejectsCoordinatesOutsideGivenGeometry)
{
  CsvDecodeOptions opts;
  opts.geometry = SensorGeometry{4, 4};
  EXPECT_THROW(decode_csv("0,4,0,1\n", opts), FormatError);
}

TEST(Csv, EncodesCanonicalForm)
{
  EXPECT_EQ(encode_csv(test::make_stream({4, 4}, {on(0, 1, 2)})), "0,1,2,1\n");
  EXPECT_EQ(encode_csv(EventStream{}), "");
}

TEST(Csv, RoundTripsRandomStreams)
{
  std::mt19937_64 rng(7);
  for (int i = 0; i < 500; ++i) {
    const EventStream s = test::random_stream(rng);
    const std::string text = encode_csv(s);
    CsvDecodeOptions opts;
    opts.geometry = s.geometry;
    const EventStream back = decode_csv(text, opts);
    EXPECT_EQ(back, s);
    EXPECT_EQ(encode_csv(back), text);
  }
}

TEST(Evs1, GoldenRecordBytes)
{
  const auto bytes = encode_evs1(test::make_stream({4, 4}, {on(7, 1, 2)}));
  ASSERT_EQ(bytes.size(), kEvs1HeaderSize + kEvs1RecordSize);
  const std::vector<std::uint8_t> body(bytes.begin() + kEvs1HeaderSize, bytes.end());
  const std::vector<std::uint8_t> expected{0x07, 0, 0, 0, 0, 0, 0, 0, 0x01, 0, 0x02, 0, 0x01, 0, 0, 0};
  EXPECT_EQ(body, expected);
  EXPECT_EQ(bytes, golden_fixture());
}

TEST(Evs1, GoldenFixtureDecodes)
{
  const EventStream s = decode_evs1(golden_fixture());
  EXPECT_EQ(s, test::make_stream({4, 4}, {on(7, 1, 2)}));
  const Evs1Header h = read_evs1_header(golden_fixture());
  EXPECT_EQ(h.width, 4);
  EXPECT_EQ(h.height, 4);
  EXPECT_EQ(h.version, 1);
}

TEST(Evs1, TruncatedBodyIsRejected)
{
  auto bytes = golden_fixture();
  bytes.pop_back();
  EXPECT_THROW(decode_evs1(bytes), FormatError);
}

TEST(Evs1, BadMagicIsRejected)
{
  auto bytes = golden_fixture();
  bytes[0] = 'X';
  EXPECT_THROW(decode_evs1(bytes), FormatError);
}

TEST(Evs1, CoordinateOutsideHeaderIsRejected)
{
  auto bytes = golden_fixture();
  bytes[kEvs1HeaderSize + 8] = 4;  // x = 4 on a 4-wide sensor
  EXPECT_THROW(decode_evs1(bytes), FormatError);
}

TEST(Evs1, NonzeroPadIsAWarning)
{
  auto bytes = golden_fixture();
  bytes.back() = 0xff;
  std::vector<std::string> warnings;
  const EventStream s = decode_evs1(bytes, warnings);
  EXPECT_EQ(s.size(), 1u);
  EXPECT_FALSE(warnings.empty());
}

TEST(Evs1, EncodedSizeIsHeaderPlusRecords)
{
  std::mt19937_64 rng(3);
  for (int i = 0; i < 50; ++i) {
    const EventStream s = test::random_stream(rng);
    EXPECT_EQ(encode_evs1(s).size(), kEvs1HeaderSize + kEvs1RecordSize * s.size());
  }
}

TEST(Evs1, RoundTripsRandomStreams)
{
  std::mt19937_64 rng(5);
  for (int i = 0; i < 500; ++i) {
    const EventStream s = test::random_stream(rng);
    EXPECT_EQ(decode_evs1(encode_evs1(s)), s);
  }
}

TEST(EventFiles, DispatchOnExtension)
{
  test::TempDir dir("codec");
  const EventStream s = test::make_stream({8, 8}, {on(1, 2, 3), off(9, 7, 7)});
  write_event_file(dir / "a.csv", s);
  write_event_file(dir / "a.evs1", s);
  CsvDecodeOptions opts;
  opts.geometry = s.geometry;
  EXPECT_EQ(read_event_file(dir / "a.csv", opts), s);
  EXPECT_EQ(read_event_file(dir / "a.evs1"), s);
  EXPECT_EQ(read_text_file(dir / "a.csv"), "1,2,3,1\n9,7,7,0\n");
}

}  // namespace
}  // namespace evkit
