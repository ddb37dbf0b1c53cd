#include <benchmark/benchmark.h>

#include <maslov/maslov_index.hpp>
#include <maslov/propagation.hpp>
#include <maslov/spectral.hpp>
#include <maslov/symplectic.hpp>

#include <cmath>

using namespace maslov;
using Eigen::MatrixXd;

namespace {

Potential mathieu_pair() {
  return Potential::diagonal_cosine({2.0, -1.3}, {1.0, 2.0}, 0.0, 2 * M_PI);
}

void bm_propagate_fundamental(benchmark::State& state) {
  Potential pot = mathieu_pair();
  RealifiedSystem sys = rescaled_system(pot, 0.7, 1.0);
  for (auto _ : state) benchmark::DoNotOptimize(propagate_fundamental(sys));
}
BENCHMARK(bm_propagate_fundamental)->Unit(benchmark::kMillisecond);

void bm_monodromy(benchmark::State& state) {
  Potential pot = mathieu_pair();
  for (auto _ : state) benchmark::DoNotOptimize(monodromy(pot, 0.7));
}
BENCHMARK(bm_monodromy)->Unit(benchmark::kMillisecond);

void bm_fd_spectrum(benchmark::State& state) {
  Potential pot = mathieu_pair();
  for (auto _ : state)
    benchmark::DoNotOptimize(
        fd_spectrum(pot, M_PI / 2, 1.0, static_cast<int>(state.range(0)), 4.0));
}
BENCHMARK(bm_fd_spectrum)->Arg(200)->Arg(400)->Unit(benchmark::kMillisecond);

void bm_floquet_spectrum(benchmark::State& state) {
  Potential pot = mathieu_pair();
  for (auto _ : state)
    benchmark::DoNotOptimize(floquet_spectrum(pot, M_PI / 2, 1.0, -3.5, 1.5));
}
BENCHMARK(bm_floquet_spectrum)->Unit(benchmark::kMillisecond);

void bm_souriau_map(benchmark::State& state) {
  Potential pot = mathieu_pair();
  Segment seg;
  seg.variable = Segment::Variable::lambda;
  seg.s_begin = -3.5;
  seg.s_end = 1.5;
  seg.theta = M_PI / 2;
  LagrangianFrame ref = segment_reference_frame(pot, seg);
  LagrangianFrame moving = segment_moving_frame(pot, seg, 0.4);
  for (auto _ : state) benchmark::DoNotOptimize(souriau_map(ref, moving));
}
BENCHMARK(bm_souriau_map)->Unit(benchmark::kMicrosecond);

void bm_theta_segment_index(benchmark::State& state) {
  Potential pot = mathieu_pair();
  Segment seg;
  seg.variable = Segment::Variable::theta;
  seg.s_begin = M_PI / 4;
  seg.s_end = M_PI / 2;
  seg.lambda = 0.6;
  PathSpec path;
  path.segments.push_back(seg);
  for (auto _ : state) benchmark::DoNotOptimize(maslov_crossing_form(pot, path));
}
BENCHMARK(bm_theta_segment_index)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
