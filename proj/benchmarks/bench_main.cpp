#include <benchmark/benchmark.h>

#include "torfol/adjoint.hpp"
#include "torfol/foliation.hpp"
#include "torfol/lctset.hpp"

using namespace torfol;

namespace {

Fan projective(std::size_t n) {
  std::vector<QVec> rays;
  for (std::size_t i = 0; i < n; ++i) rays.push_back(unit_vector(n, i));
  rays.push_back(QVec(n, Rational(-1)));
  std::vector<RaySet> cones;
  for (std::size_t skip = 0; skip <= n; ++skip) {
    RaySet c;
    for (std::size_t i = 0; i <= n; ++i)
      if (i != skip) c.push_back(i);
    cones.push_back(c);
  }
  return Fan(AmbientLattice::standard(n), rays, cones);
}

struct Acc {
  Fan fan;
  FoliationSpace w;
};

Acc acc(long n) {
  const auto lattice = AmbientLattice::generated_by(2, {{1, 0}, {0, 1}, {ratio(1, n), ratio(1, n)}});
  return {Fan(lattice, {{1, 0}, {0, 1}}, {{0, 1}}), FoliationSpace(lattice, {{0, 1}}, 0)};
}

}  // namespace

static void BM_FanConstruction(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(projective(n));
}
BENCHMARK(BM_FanConstruction)->DenseRange(2, 5);

static void BM_SupportFunction(benchmark::State& state) {
  const auto f = projective(static_cast<std::size_t>(state.range(0)));
  const auto kx = canonical_divisor(f);
  for (auto _ : state) benchmark::DoNotOptimize(support_function(f, kx));
}
BENCHMARK(BM_SupportFunction)->DenseRange(2, 5);

static void BM_IsFano(benchmark::State& state) {
  const auto f = projective(3);
  const FoliationSpace w(f.lattice(), {{1, 0, 0}}, 1);
  for (auto _ : state) benchmark::DoNotOptimize(is_fano(f, w));
}
BENCHMARK(BM_IsFano);

static void BM_DicriticalLocus(benchmark::State& state) {
  const auto f = projective(4);
  const FoliationSpace w(f.lattice(), {{0, 1, 0, 0}, {0, 0, 1, 1}}, 1);
  for (auto _ : state) benchmark::DoNotOptimize(dicritical_locus(f, w));
}
BENCHMARK(BM_DicriticalLocus);

static void BM_IsDeltaLcAcc(benchmark::State& state) {
  const auto m = acc(state.range(0));
  const AdjointStructure a{m.fan, m.w, TorusDivisor::zero(m.fan), ratio(1, 2)};
  for (auto _ : state) benchmark::DoNotOptimize(is_delta_lc(a, ratio(1, 2)));
}
BENCHMARK(BM_IsDeltaLcAcc)->Arg(6)->Arg(20)->Arg(100);

static void BM_LctIntervalAcc(benchmark::State& state) {
  const auto m = acc(state.range(0));
  const auto zero = TorusDivisor::zero(m.fan);
  for (auto _ : state) benchmark::DoNotOptimize(lct_interval(m.fan, m.w, zero, ratio(1, 2)));
}
BENCHMARK(BM_LctIntervalAcc)->Arg(6)->Arg(20)->Arg(100);

static void BM_LctIntervalDensity(benchmark::State& state) {
  const auto s = static_cast<std::size_t>(state.range(0));
  const auto inst = density_family(ratio(1, 2), s, 1, 2, 1);
  const auto zero = TorusDivisor::zero(inst.fan);
  for (auto _ : state) benchmark::DoNotOptimize(lct_interval(inst.fan, inst.w, zero, ratio(1, 2)));
}
BENCHMARK(BM_LctIntervalDensity)->Arg(5)->Arg(11)->Arg(41);

static void BM_Membership(benchmark::State& state) {
  const QVec x{ratio(1, state.range(0)), ratio(1, state.range(0))};
  for (auto _ : state) benchmark::DoNotOptimize(is_member_V(x, 2, 1, ratio(1, 2)));
}
BENCHMARK(BM_Membership)->Arg(6)->Arg(60)->Arg(600);

static void BM_Certificate(benchmark::State& state) {
  const auto f = projective(3);
  const FoliationSpace w(f.lattice(), {{1, 0, 0}}, 1);
  const auto zero = TorusDivisor::zero(f);
  for (auto _ : state)
    benchmark::DoNotOptimize(boundedness_certificate(f, w, zero, ratio(1, 2), ratio(1, 2), ratio(1, 10)));
}
BENCHMARK(BM_Certificate);
BENCHMARK_MAIN();
