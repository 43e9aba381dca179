#include "sepkit/approx.hpp"
#include "sepkit/exact.hpp"
#include "sepkit/hull.hpp"
#include "sepkit/lpviol.hpp"
#include "sepkit/sep1d.hpp"

#include <benchmark/benchmark.h>

#include <random>
#include <set>

using namespace sepkit;

namespace {

bool is_prime(long v) {
  if (v < 2) return false;
  for (long d = 2; d * d <= v; ++d)
    if (v % d == 0) return false;
  return true;
}

// (x, x² mod p), no three collinear; colored by a line, then `flips` swapped.
std::vector<LabeledPoint> instance(int n, int flips, std::uint64_t seed = 7) {
  std::mt19937_64 rng(seed);
  long p = 4L * n + 7;
  while (!is_prime(p)) ++p;
  std::set<long> xs;
  std::uniform_int_distribution<long> pick(0, p - 1);
  while (static_cast<int>(xs.size()) < n) xs.insert(pick(rng));
  std::vector<LabeledPoint> pts;
  int id = 0;
  for (long x : xs) {
    const long y = x * x % p;
    pts.push_back({PointR2{Rat(x), Rat(y)}, y > p / 2 ? Color::Blue : Color::Red, id++});
  }
  std::uniform_int_distribution<int> who(0, n - 1);
  for (int f = 0; f < flips; ++f) {
    auto& q = pts[static_cast<std::size_t>(who(rng))];
    q.color = other(q.color);
  }
  return pts;
}

void BM_Exact(benchmark::State& st) {
  const int n = static_cast<int>(st.range(0)), k = static_cast<int>(st.range(1));
  const auto pts = instance(n, k);
  for (auto _ : st) benchmark::DoNotOptimize(solve_exact(pts, k));
  st.SetComplexityN(n);
}
BENCHMARK(BM_Exact)->ArgsProduct({{250, 500, 1000, 2000}, {8}})->Unit(benchmark::kMillisecond);
BENCHMARK(BM_Exact)->ArgsProduct({{1000}, {2, 4, 16, 32}})->Unit(benchmark::kMillisecond);

void BM_Approx(benchmark::State& st) {
  const int n = static_cast<int>(st.range(0));
  const Rat eps = make_rat(1, st.range(1));
  const auto pts = instance(n, 4);
  for (auto _ : st) benchmark::DoNotOptimize(solve_approx(pts, 4, eps, default_tol()));
}
BENCHMARK(BM_Approx)->ArgsProduct({{100, 200}, {1, 2, 10}})->Unit(benchmark::kMillisecond);

void BM_MaxMargin(benchmark::State& st) {
  const auto pts = instance(static_cast<int>(st.range(0)), 0);
  for (auto _ : st) benchmark::DoNotOptimize(max_margin_static(pts));
}
BENCHMARK(BM_MaxMargin)->Range(256, 8192)->Unit(benchmark::kMicrosecond);

void BM_MaxMarginDynamic(benchmark::State& st) {
  const auto pts = instance(static_cast<int>(st.range(0)), 0);
  for (auto _ : st) {
    DynMargin dyn;
    for (const auto& p : pts) dyn.insert(p);
    for (const auto& p : pts) dyn.erase(p.id);
  }
  st.SetItemsProcessed(st.iterations() * 2 * st.range(0));
}
BENCHMARK(BM_MaxMarginDynamic)->Range(128, 1024)->Unit(benchmark::kMillisecond);

void BM_LeftmostValid(benchmark::State& st) {
  const int k = static_cast<int>(st.range(1));
  const auto cs = dual_constraints(instance(static_cast<int>(st.range(0)), k), Orientation::BlueAbove);
  for (auto _ : st) benchmark::DoNotOptimize(static_leftmost_valid(cs, k));
}
BENCHMARK(BM_LeftmostValid)->ArgsProduct({{500, 1000, 2000}, {4, 16}})->Unit(benchmark::kMillisecond);

void BM_DynLPUpdates(benchmark::State& st) {
  const int n = static_cast<int>(st.range(0)), k = 4;
  const auto pts = instance(n, k);
  for (auto _ : st) {
    DynLP lp({}, DynOptions{k, false, Partitioner::Median});
    for (const auto& p : pts) lp.insert(DynLine{dualize_point(p.point), p.color, p.id, std::nullopt});
    benchmark::DoNotOptimize(lp.query(k));
  }
  st.SetItemsProcessed(st.iterations() * n);
}
BENCHMARK(BM_DynLPUpdates)->Arg(100)->Arg(200)->Arg(400)->Unit(benchmark::kMillisecond);

void BM_Tree1D(benchmark::State& st) {
  const int n = static_cast<int>(st.range(0));
  std::mt19937_64 rng(3);
  std::vector<Point1D> pts;
  for (int i = 0; i < n; ++i) pts.push_back({Rat(2 * i + 1), rng() % 2 ? Color::Red : Color::Blue, i});
  std::shuffle(pts.begin(), pts.end(), rng);
  for (auto _ : st) {
    Tree1D t(11);
    for (const auto& p : pts) t.insert(p);
    benchmark::DoNotOptimize(t.query(n / 8));
  }
  st.SetItemsProcessed(st.iterations() * n);
}
BENCHMARK(BM_Tree1D)->Range(1024, 16384)->Unit(benchmark::kMillisecond);

}  // namespace
BENCHMARK_MAIN();
