// OpenMP profile kernels against the serial reference.
#include <benchmark/benchmark.h>

#include "prokit/analysis.hpp"
#include "prokit/random.hpp"

using namespace prokit;

namespace {

struct Case {
  FgModule m;
  std::vector<Vec> xs;
};

// Z/2[s,t]/(s^2, t^3) x Z/16 on the sequence (s + 2, t, 4): three rows with nontrivial colons.
const Case& workload() {
  static const Case c = [] {
    RingPtr a = monomial_algebra(2, 2, 3);
    RingPtr r = product({a, zmod(16)});
    Vec s = tuple_element(*r, {a->named().at("s"), Vec{2}});
    Vec t = tuple_element(*r, {a->named().at("t"), Vec{0}});
    Vec four = tuple_element(*r, {a->zero(), Vec{4}});
    return Case{FgModule::regular(r), {s, t, four}};
  }();
  return c;
}

constexpr unsigned kNMax = 4;

unsigned budget() { return default_m_max(workload().m, workload().xs.size(), kNMax); }

void lipman_parallel(benchmark::State& st) {
  for (auto _ : st)
    benchmark::DoNotOptimize(lipman_profile(workload().m, workload().xs, kNMax, budget(), int(st.range(0))));
}

void lipman_serial(benchmark::State& st) {
  for (auto _ : st) benchmark::DoNotOptimize(serial::lipman_profile(workload().m, workload().xs, kNMax, budget()));
}

void gm_parallel(benchmark::State& st) {
  for (auto _ : st)
    benchmark::DoNotOptimize(gm_profile(workload().m, workload().xs, kNMax, budget(), int(st.range(0))));
}

void gm_serial(benchmark::State& st) {
  for (auto _ : st) benchmark::DoNotOptimize(serial::gm_profile(workload().m, workload().xs, kNMax, budget()));
}

void weak_parallel(benchmark::State& st) {
  for (auto _ : st)
    benchmark::DoNotOptimize(weak_profile(workload().m, workload().xs, kNMax, budget(), 3, int(st.range(0))));
}

void weak_serial(benchmark::State& st) {
  for (auto _ : st) benchmark::DoNotOptimize(serial::weak_profile(workload().m, workload().xs, kNMax, budget(), 3));
}

}  // namespace

BENCHMARK(lipman_serial)->Unit(benchmark::kMillisecond);
BENCHMARK(lipman_parallel)->Arg(1)->Arg(2)->Arg(4)->Unit(benchmark::kMillisecond);
BENCHMARK(gm_serial)->Unit(benchmark::kMillisecond);
BENCHMARK(gm_parallel)->Arg(1)->Arg(2)->Arg(4)->Unit(benchmark::kMillisecond);
BENCHMARK(weak_serial)->Unit(benchmark::kMillisecond);
BENCHMARK(weak_parallel)->Arg(1)->Arg(2)->Arg(4)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
