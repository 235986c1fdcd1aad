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

#include <sstream>

#include "evkit/cli.hpp"
#include "evkit/event_codec.hpp"
#include "evkit/event_filters.hpp"
#include "evkit/event_synth.hpp"
#include "evkit/frames.hpp"
#include "evkit/freqmap.hpp"
#include "test_util.hpp"

namespace evkit
{
namespace
{
struct Outcome
{
  int code = 0;
  std::string out;
  std::string err;
};

Outcome run(const std::vector<std::string> & args)
{
  std::ostringstream out, err;
  const int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

class Cli : public ::testing::Test
{
protected:
  test::TempDir dir{"cli"};
  std::string path(const std::string & name) const { return dir / name; }
};

TEST_F(Cli, InfoReportsCounts)
{
  write_event_file(path("a.evs1"), test::make_stream({8, 6}, {test::on(100), test::off(400), test::on(900, 3, 2)}));
  const Outcome r = run({"info", path("a.evs1")});
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.out, "geometry: 8x6\nevents: 3\nduration_us: 800\non: 2\noff: 1\n");
  EXPECT_TRUE(r.err.empty());
}

TEST_F(Cli, ConvertRoundTrips)
{
  const EventStream s = synth_flicker({10, 10}, {2, 2, 3, 3}, 60.0, 100000);
  write_event_file(path("a.evs1"), s);
  ASSERT_EQ(run({"convert", path("a.evs1"), "--out", path("a.csv")}).code, 0);
  ASSERT_EQ(run({"convert", path("a.csv"), "--width", "10", "--height", "10", "--out", path("b.evs1")}).code, 0);
  EXPECT_EQ(read_binary_file(path("a.evs1")), read_binary_file(path("b.evs1")));
}

TEST_F(Cli, ConvertSortsOnRequest)
{
  write_text_file(path("u.csv"), "5,0,0,1\n3,0,0,0\n");
  EXPECT_EQ(run({"convert", path("u.csv"), "--out", path("u.evs1")}).code, cli::kExitData);
  EXPECT_EQ(run({"convert", path("u.csv"), "--sort", "--out", path("u.evs1")}).code, 0);
  EXPECT_EQ(read_event_file(path("u.evs1")).events.front().t, 3u);
}

TEST_F(Cli, FreqmapOnFortyHz)
{
  ASSERT_EQ(
    run({"synth", "flicker", "--width", "16", "--height", "16", "--region", "4,4,8,8", "--freq", "40", "--duration-ms",
         "300", "--out", path("f.evs1")})
      .code,
    0);
  const Outcome r = run(
    {"freqmap", path("f.evs1"), "--window-ms", "20", "--out", path("m.ppm"), "--csv", path("m.csv"), "--hist",
     path("h.csv")});
  ASSERT_EQ(r.code, 0) << r.err;
  const FrequencyMap m = freq_map_from_csv(read_text_file(path("m.csv")), SensorGeometry{16, 16});
  EXPECT_EQ(m.estimated_count(), 64u);
  for (std::uint32_t y = 4; y < 12; ++y) {
    for (std::uint32_t x = 4; x < 12; ++x) EXPECT_NEAR(*m.at(x, y), 40.0, 0.8);
  }
  EXPECT_TRUE(std::filesystem::exists(path("m.ppm")));
  EXPECT_EQ(read_text_file(path("m.ppm")).substr(0, 2), "P6");
}

TEST_F(Cli, FilterFlagsApplyInOrder)
{
  const EventStream s = synth_flicker({6, 6}, {0, 0, 6, 6}, 200.0, 100000, {}, 0.0, {700, 5});
  write_event_file(path("s.evs1"), s);
  ASSERT_EQ(run({"filter", path("s.evs1"), "--refractory-us", "3000", "--stc-window-us", "6000", "--out", path("a.evs1")}).code, 0);
  ASSERT_EQ(run({"filter", path("s.evs1"), "--stc-window-us", "6000", "--refractory-us", "3000", "--out", path("b.evs1")}).code, 0);
  FilterChainBuilder a, b;
  a.add_refractory(3000);
  a.add_stc(6000);
  b.add_stc(6000);
  b.add_refractory(3000);
  EXPECT_EQ(read_event_file(path("a.evs1")), apply_filters(s, a.build()));
  EXPECT_EQ(read_event_file(path("b.evs1")), apply_filters(s, b.build()));
  EXPECT_NE(read_event_file(path("a.evs1")), read_event_file(path("b.evs1")));
}

TEST_F(Cli, FilterConfigFileComesFirst)
{
  const EventStream s = synth_flicker({6, 6}, {0, 0, 6, 6}, 200.0, 100000, {}, 0.0, {700, 5});
  write_event_file(path("s.evs1"), s);
  write_text_file(path("f.cfg"), "stc-window-us = 6000\n");
  ASSERT_EQ(run({"filter", path("s.evs1"), "--config", path("f.cfg"), "--refractory-us", "3000", "--out", path("a.evs1")}).code, 0);
  FilterChainBuilder b;
  b.add_stc(6000);
  b.add_refractory(3000);
  EXPECT_EQ(read_event_file(path("a.evs1")), apply_filters(s, b.build()));
}

TEST_F(Cli, SeedDefaultsToZero)
{
  const std::vector<std::string> base{"synth", "vibration", "--width", "8", "--height", "8", "--duration-ms", "50", "--jitter-us", "100"};
  auto with = [&](std::vector<std::string> extra, const std::string & out) {
    std::vector<std::string> a = extra;
    a.insert(a.end(), base.begin(), base.end());
    a.push_back("--out");
    a.push_back(path(out));
    return run(a).code;
  };
  ASSERT_EQ(with({}, "d.evs1"), 0);
  ASSERT_EQ(with({"--seed", "0"}, "z.evs1"), 0);
  ASSERT_EQ(with({"--seed", "5"}, "f.evs1"), 0);
  EXPECT_EQ(read_binary_file(path("d.evs1")), read_binary_file(path("z.evs1")));
  EXPECT_NE(read_binary_file(path("d.evs1")), read_binary_file(path("f.evs1")));
}

TEST_F(Cli, MagnifyAndMeasure)
{
  ASSERT_EQ(
    run({"synth", "moving-pattern", "--width", "32", "--height", "32", "--frames", "12", "--out", path("in")}).code, 0);
  const Outcome m = run({"magnify", path("in"), "--fps", "30", "--band", "4:6", "--m", "0", "--out", path("out")});
  ASSERT_EQ(m.code, 0) << m.err;
  EXPECT_EQ(read_frame_dir(path("out"), 30).size(), 12u);
  const Outcome d = run({"measure", path("in"), "--fps", "30"});
  ASSERT_EQ(d.code, 0) << d.err;
  EXPECT_EQ(d.out.substr(0, 12), "frame,dx,dy\n");
  EXPECT_EQ(std::count(d.out.begin(), d.out.end(), '\n'), 13);
}

TEST_F(Cli, BandFromHistogram)
{
  write_text_file(path("h.csv"), "bin_lo_hz,bin_hi_hz,count\n3,4,1\n4,6,10\n6,7,2\n");
  ASSERT_EQ(
    run({"synth", "moving-pattern", "--width", "32", "--height", "32", "--frames", "6", "--out", path("in")}).code, 0);
  const Outcome r = run({"magnify", path("in"), "--fps", "30", "--band-from", path("h.csv"), "--out", path("out")});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_NE(r.out.find("band_hz: 4.000:6.000"), std::string::npos);
}

TEST_F(Cli, HistogramAndRender)
{
  write_text_file(path("m.csv"), "x,y,freq_hz\n0,0,10\n1,0,10\n2,1,30\n");
  const Outcome h = run({"histogram", path("m.csv"), "--bins", "2"});
  ASSERT_EQ(h.code, 0);
  EXPECT_EQ(h.out, "bin_lo_hz,bin_hi_hz,count\n10.000000,20.000000,2\n20.000000,30.000000,1\n");
  EXPECT_EQ(run({"render", path("m.csv"), "--fmin", "5", "--fmax", "40", "--out", path("r.png")}).code, 0);
  EXPECT_EQ(read_text_file(path("r.png")).substr(1, 3), "PNG");
}

TEST_F(Cli, ExitCodes)
{
  EXPECT_EQ(run({}).code, cli::kExitUsage);
  EXPECT_EQ(run({"frobnicate"}).code, cli::kExitUsage);
  EXPECT_EQ(run({"info", path("missing.evs1")}).code, cli::kExitData);
  write_text_file(path("bad.csv"), "nope\n");
  const Outcome bad = run({"info", path("bad.csv")});
  EXPECT_EQ(bad.code, cli::kExitData);
  EXPECT_NE(bad.err.find("line 1"), std::string::npos);
  EXPECT_TRUE(bad.out.empty());
  write_event_file(path("a.evs1"), test::make_stream({4, 4}, {test::on(0)}));
  EXPECT_EQ(run({"freqmap", path("a.evs1"), "--window-ms", "0.5"}).code, cli::kExitUsage);
  EXPECT_EQ(run({"freqmap", path("a.evs1"), "--transition", "sideways"}).code, cli::kExitUsage);
  EXPECT_EQ(run({"filter", path("a.evs1"), "--af-band", "9", "--out", path("b.evs1")}).code, cli::kExitUsage);
  EXPECT_EQ(run({"--help"}).code, cli::kExitOk);
}

}  // namespace
}  // namespace evkit
