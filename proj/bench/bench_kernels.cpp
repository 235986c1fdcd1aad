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

// Parallel kernels against their serial references. The `threads` argument of
// the parallel variants is passed to set_thread_count.

#include <benchmark/benchmark.h>

#include <algorithm>
#include <random>

#include "evkit/event_filters.hpp"
#include "evkit/event_synth.hpp"
#include "evkit/freqmap.hpp"
#include "evkit/magnify.hpp"
#include "evkit/parallel.hpp"
#include "evkit/reference.hpp"
#include "evkit/steerable.hpp"

namespace
{
using namespace evkit;

const EventStream & scene()
{
  static const EventStream s = [] {
    const SensorGeometry g{640, 480};
    EventStream a = synth_flicker(g, {0, 0, 320, 480}, 100.0, 500000, {}, 0.0, {200, 1});
    const EventStream b = synth_vibration(g, {320, 0, 320, 480}, 40.0, 50.0, 500000, {}, {200, 2});
    a.events.insert(a.events.end(), b.events.begin(), b.events.end());
    std::stable_sort(a.events.begin(), a.events.end(), canonical_less);
    return a;
  }();
  return s;
}

void threads_arg(benchmark::internal::Benchmark * b)
{
  for (int t : {1, 2, 4, 8}) b->Arg(t);
  b->ArgName("threads")->Unit(benchmark::kMillisecond)->UseRealTime();
}

void items(benchmark::State & state, std::size_t n)
{
  state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations() * n));
}

void BM_FreqMap_Parallel(benchmark::State & state)
{
  scene();
  set_thread_count(static_cast<int>(state.range(0)));
  FreqMapConfig cfg;
  for (auto _ : state) benchmark::DoNotOptimize(compute_stream_freq_map(scene(), cfg));
  items(state, scene().size());
  set_thread_count(0);
}
BENCHMARK(BM_FreqMap_Parallel)->Apply(threads_arg);

void BM_FreqMap_Reference(benchmark::State & state)
{
  FreqMapConfig cfg;
  for (auto _ : state) benchmark::DoNotOptimize(reference::stream_freq_map(scene(), cfg));
  items(state, scene().size());
}
BENCHMARK(BM_FreqMap_Reference)->Unit(benchmark::kMillisecond)->UseRealTime();

void BM_Stc_Parallel(benchmark::State & state)
{
  set_thread_count(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(stc_filter(scene(), {10000, false}));
  items(state, scene().size());
  set_thread_count(0);
}
BENCHMARK(BM_Stc_Parallel)->Apply(threads_arg);

void BM_Stc_Reference(benchmark::State & state)
{
  for (auto _ : state) benchmark::DoNotOptimize(reference::stc_filter(scene(), {10000, false}));
  items(state, scene().size());
}
BENCHMARK(BM_Stc_Reference)->Unit(benchmark::kMillisecond)->UseRealTime();

void BM_Refractory_Parallel(benchmark::State & state)
{
  set_thread_count(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(refractory_filter(scene(), 6000));
  items(state, scene().size());
  set_thread_count(0);
}
BENCHMARK(BM_Refractory_Parallel)->Apply(threads_arg);

void BM_Refractory_Reference(benchmark::State & state)
{
  for (auto _ : state) benchmark::DoNotOptimize(reference::refractory_filter(scene(), 6000));
  items(state, scene().size());
}
BENCHMARK(BM_Refractory_Reference)->Unit(benchmark::kMillisecond)->UseRealTime();

void BM_SynthFlicker_Parallel(benchmark::State & state)
{
  set_thread_count(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(synth_flicker({640, 480}, {0, 0, 640, 480}, 100.0, 200000));
  set_thread_count(0);
}
BENCHMARK(BM_SynthFlicker_Parallel)->Apply(threads_arg);

void BM_SynthFlicker_Reference(benchmark::State & state)
{
  for (auto _ : state) benchmark::DoNotOptimize(reference::synth_flicker({640, 480}, {0, 0, 640, 480}, 100.0, 200000));
}
BENCHMARK(BM_SynthFlicker_Reference)->Unit(benchmark::kMillisecond)->UseRealTime();

const FilterBank & bank()
{
  static const FilterBank b = FilterBank::build(256, 256, 4, 2);
  return b;
}

const Image & frame()
{
  static const Image img = [] {
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> u(0, 1);
    Image f(256, 256);
    for (auto & v : f.data) v = u(rng);
    return f;
  }();
  return img;
}

void BM_Decompose_Parallel(benchmark::State & state)
{
  frame();
  bank();
  set_thread_count(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(decompose(frame(), bank()));
  set_thread_count(0);
}
BENCHMARK(BM_Decompose_Parallel)->Apply(threads_arg);

void BM_Decompose_Reference(benchmark::State & state)
{
  for (auto _ : state) benchmark::DoNotOptimize(reference::decompose(frame(), bank()));
}
BENCHMARK(BM_Decompose_Reference)->Unit(benchmark::kMillisecond)->UseRealTime();

void BM_Magnify(benchmark::State & state)
{
  set_thread_count(static_cast<int>(state.range(0)));
  const FrameSequence in = synth_moving_pattern(96, 96, 30.0, 30, Pattern::GaussianBlob, 0.2, 5.0);
  const FilterBank b = FilterBank::build(96, 96);
  MagnifyParams p;
  p.filter.f_lo_hz = 4;
  p.filter.f_hi_hz = 6;
  p.filter.sample_rate = in.fps;
  for (auto _ : state) benchmark::DoNotOptimize(magnify_sequence(in, p, b));
  items(state, in.frames.size());
  set_thread_count(0);
}
BENCHMARK(BM_Magnify)->Apply(threads_arg);

}  // namespace

BENCHMARK_MAIN();
