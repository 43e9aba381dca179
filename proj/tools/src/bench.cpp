#include "commands.hpp"

#include "sepkit_cli/cli.hpp"

#include <algorithm>
#include <chrono>
#include <random>
#include <set>

namespace sepkit::cli {

namespace {

bool is_prime(long v) {
  if (v < 2) return false;
  for (long d = 2; d * d <= v; ++d)
    if (v % d == 0) return false;
  return true;
}

// Points (x, x² mod p) for a prime p have no three on a line.  Colors come
// from a random line with `flips` of them swapped.
std::vector<LabeledPoint> instance(std::mt19937_64& rng, int n, int flips) {
  long p = 4L * n + 7;
  while (!is_prime(p)) ++p;
  std::set<long> xs;
  std::uniform_int_distribution<long> pick(0, p - 1);
  while (static_cast<int>(xs.size()) < n) xs.insert(pick(rng));
  std::uniform_int_distribution<long> slope(-4, 4);
  const long m = slope(rng), c = p / 2;
  std::vector<LabeledPoint> pts;
  int id = 0;
  for (long x : xs) {
    const long y = x * x % p;
    const Color col = y > m * (x - p / 2) + c ? Color::Blue : Color::Red;
    pts.push_back(LabeledPoint{PointR2{Rat(x), Rat(y)}, col, id++});
  }
  std::uniform_int_distribution<int> who(0, n - 1);
  for (int f = 0; f < flips; ++f) {
    auto& q = pts[static_cast<std::size_t>(who(rng))];
    q.color = other(q.color);
  }
  const bool red = std::any_of(pts.begin(), pts.end(), [](const LabeledPoint& q) { return q.color == Color::Red; });
  const bool blue = std::any_of(pts.begin(), pts.end(), [](const LabeledPoint& q) { return q.color == Color::Blue; });
  if (!red) pts[0].color = Color::Red;
  if (!blue) pts[0].color = Color::Blue;
  return pts;
}

template <class F>
double wall_ms(F&& f) {
  const auto t0 = std::chrono::steady_clock::now();
  f();
  return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
}

}  // namespace

int cmd_bench(const RunConfig& cfg, std::ostream& out) {
  std::mt19937_64 rng(cfg.seed);
  out << "n,k,solver,wall_ms,candidates,value\n";
  auto row = [&](int n, int k, const char* solver, double ms, long cand, const std::string& value) {
    out << n << ',' << k << ',' << solver << ',' << ms << ',' << cand << ',' << value << '\n';
  };
  for (int n : cfg.sizes) {
    if (n < 2) throw UsageError("bench sizes must be at least 2");
    for (int rep = 0; rep < cfg.reps; ++rep) {
      const int k = cfg.problem == "minmax" ? n : std::min(cfg.k.value_or(0), n);
      const auto pts = instance(rng, n, std::min(k, n / 10));
      if (cfg.dim == 1) {
        const auto line = to_1d(pts);
        Result1D r;
        const double ms = wall_ms([&] {
          Tree1D t(cfg.seed);
          for (const auto& p : line) t.insert(p);
          r = t.query(k);
        });
        row(n, k, "tree1d", ms, n, r.separator_x ? rat_str(r.max_dist) : "none");
        continue;
      }
      if (cfg.problem == "maxstrip") {
        StripResult r;
        const double ms = wall_ms([&] { r = max_margin_static(pts); });
        row(n, 0, "hull", ms, n, strip_status_name(r.status));
      } else if (cfg.problem == "minmis") {
        int kmin = 0;
        const double ms = wall_ms([&] {
          kmin = fewest_violations(
              {dual_constraints(pts, Orientation::BlueAbove), dual_constraints(pts, Orientation::RedAbove)});
        });
        row(n, kmin, "lp", ms, n, std::to_string(kmin));
      } else {
        if (cfg.problem != "kmm-approx") {
          ExactSolveReport r;
          const double ms = wall_ms([&] { r = solve_exact(pts, k); });
          row(n, k, "exact", ms, r.counts[0] + r.counts[1] + r.counts[2] + r.counts[3],
              r.best ? sqrt_decimal_str(r.max_sq) : "none");
        }
        if (cfg.eps) {
          ApproxReport r;
          const double ms = wall_ms([&] { r = solve_approx(pts, k, *cfg.eps, cfg.tol); });
          row(n, k, "approx", ms, r.decisions, r.separator ? sqrt_decimal_str(r.euclid_max_sq) : "none");
        }
      }
    }
  }
  return kOk;
}

}  // namespace sepkit::cli
