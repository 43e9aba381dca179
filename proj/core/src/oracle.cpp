#include "sepkit/oracle.hpp"

#include "sepkit/errors.hpp"

#include <algorithm>
#include <limits>
#include <map>

namespace sepkit {

// ---------------------------------------------------------------- 1D

namespace {

struct Eval1D {
  Rat s;
  int mis[2];
  Rat val[2];
};

}  // namespace

std::vector<Result1D> oracle_1d_many(const std::vector<Point1D>& pts, const std::vector<int>& ks) {
  std::vector<Result1D> out(ks.size());
  if (pts.empty()) {
    for (std::size_t i = 0; i < ks.size(); ++i)
      if (ks[i] >= 0) {
        out[i].separator_x = Rat(0);
        out[i].max_dist = 0;
      }
    return out;
  }
  // per color sorted coordinates
  std::vector<Rat> xs[2];
  for (const auto& p : pts) xs[p.color == Color::Red ? 0 : 1].push_back(p.x);
  for (auto& v : xs) std::sort(v.begin(), v.end());

  std::vector<Rat> all;
  for (const auto& p : pts) all.push_back(p.x);
  std::sort(all.begin(), all.end());
  std::vector<Rat> cand = all;
  for (std::size_t i = 0; i + 1 < all.size(); ++i) cand.push_back((all[i] + all[i + 1]) / 2);
  // orientation o: color index o is wrong on the right, 1-o wrong on the left
  for (int o = 0; o < 2; ++o) {
    const auto& right_bad = xs[o];
    const auto& left_bad = xs[1 - o];
    if (!right_bad.empty() && !left_bad.empty() && right_bad.back() > left_bad.front())
      cand.push_back((right_bad.back() + left_bad.front()) / 2);
  }
  std::sort(cand.begin(), cand.end());
  cand.erase(std::unique(cand.begin(), cand.end()), cand.end());

  std::vector<Eval1D> evals;
  for (const auto& s : cand) {
    Eval1D e{s, {0, 0}, {0, 0}};
    for (int o = 0; o < 2; ++o) {
      const auto& right_bad = xs[o];
      const auto& left_bad = xs[1 - o];
      int r = static_cast<int>(right_bad.end() - std::upper_bound(right_bad.begin(), right_bad.end(), s));
      int l = static_cast<int>(std::lower_bound(left_bad.begin(), left_bad.end(), s) - left_bad.begin());
      e.mis[o] = r + l;
      Rat v = 0;
      if (r > 0) v = std::max(v, Rat(right_bad.back() - s));
      if (l > 0) v = std::max(v, Rat(s - left_bad.front()));
      e.val[o] = v;
    }
    evals.push_back(std::move(e));
  }

  for (std::size_t qi = 0; qi < ks.size(); ++qi) {
    const int k = ks[qi];
    Result1D best;
    best.max_dist = 0;
    // candidates are sorted by s, so the first strict improvement wins ties
    for (int o = 0; o < 2; ++o) {
      for (const auto& e : evals) {
        if (e.mis[o] > k) continue;
        bool better = !best.separator_x || e.val[o] < best.max_dist ||
                      (e.val[o] == best.max_dist && e.s < *best.separator_x);
        if (better) {
          best.separator_x = e.s;
          best.max_dist = e.val[o];
          best.mis = e.mis[o];
          best.orientation = o == 0 ? Orientation::BlueAbove : Orientation::RedAbove;
        }
      }
    }
    out[qi] = best;
  }
  return out;
}

Result1D oracle_1d(const std::vector<Point1D>& pts, int k) { return oracle_1d_many(pts, {k}).front(); }

// ---------------------------------------------------------------- LP

namespace {

int count_violations(const ConstraintSet& cs, const PointR2& q) {
  int n = 0;
  for (const auto& r : cs.red)
    if (q.y > r.line.at(q.x)) ++n;
  for (const auto& b : cs.blue)
    if (q.y < b.line.at(q.x)) ++n;
  return n;
}

std::vector<LineR2> all_lines(const ConstraintSet& cs) {
  std::vector<LineR2> out;
  for (const auto& r : cs.red) out.push_back(r.line);
  for (const auto& b : cs.blue) out.push_back(b.line);
  return out;
}

std::vector<PointR2> arrangement_vertices(const std::vector<LineR2>& lines) {
  std::vector<PointR2> out;
  for (std::size_t i = 0; i < lines.size(); ++i)
    for (std::size_t j = i + 1; j < lines.size(); ++j)
      if (auto p = crossing(lines[i], lines[j])) out.push_back(*p);
  return out;
}

// Sample points on a vertical line left of every vertex: one inside each
// face and one on each line.
std::vector<PointR2> far_left_probes(const std::vector<LineR2>& lines, const std::vector<PointR2>& verts) {
  Rat x0 = 0;
  if (!verts.empty()) {
    Rat lo = verts.front().x, hi = verts.front().x;
    for (const auto& v : verts) {
      lo = std::min(lo, v.x);
      hi = std::max(hi, v.x);
    }
    x0 = lo - (hi - lo) - 1;
  }
  std::vector<Rat> ys;
  for (const auto& l : lines) ys.push_back(l.at(x0));
  std::sort(ys.begin(), ys.end());
  ys.erase(std::unique(ys.begin(), ys.end()), ys.end());
  std::vector<PointR2> out;
  if (ys.empty()) {
    out.push_back({x0, Rat(0)});
    return out;
  }
  out.push_back({x0, ys.front() - 1});
  for (std::size_t i = 0; i < ys.size(); ++i) {
    out.push_back({x0, ys[i]});
    if (i + 1 < ys.size()) out.push_back({x0, (ys[i] + ys[i + 1]) / 2});
  }
  out.push_back({x0, ys.back() + 1});
  return out;
}

}  // namespace

LPResult oracle_leftmost_valid(const ConstraintSet& cs, int k) {
  if (k < 0) return LPResult::infeasible();
  if (cs.red.empty() || cs.blue.empty()) return LPResult::unbounded(UnboundedReason::EmptySide);
  auto lines = all_lines(cs);
  auto verts = arrangement_vertices(lines);
  for (const auto& p : far_left_probes(lines, verts))
    if (count_violations(cs, p) <= k) return LPResult::unbounded(UnboundedReason::Left);
  std::optional<PointR2> best;
  int best_v = 0;
  for (const auto& v : verts) {
    if (best && (v.x > best->x || (v.x == best->x && v.y >= best->y))) continue;
    int c = count_violations(cs, v);
    if (c <= k) {
      best = v;
      best_v = c;
    }
  }
  if (!best) return LPResult::infeasible();
  return LPResult::feasible(*best, best_v);
}

int oracle_min_violations(const ConstraintSet& cs) {
  if (cs.red.empty() || cs.blue.empty()) return 0;
  auto lines = all_lines(cs);
  auto verts = arrangement_vertices(lines);
  int best = std::numeric_limits<int>::max();
  for (const auto& v : verts) best = std::min(best, count_violations(cs, v));
  for (const auto& p : far_left_probes(lines, verts)) best = std::min(best, count_violations(cs, p));
  return best;
}

int oracle_minmis(const std::vector<LabeledPoint>& pts) {
  int best = std::numeric_limits<int>::max();
  for (Orientation o : {Orientation::BlueAbove, Orientation::RedAbove}) {
    ConstraintSet cs;
    for (const auto& p : pts) {
      bool as_red = (p.color == Color::Red) == (o == Orientation::BlueAbove);
      (as_red ? cs.red : cs.blue).push_back(ConstraintLine{dualize_point(p.point), p.id});
    }
    best = std::min(best, oracle_min_violations(cs));
  }
  return best;
}

// ---------------------------------------------------------------- k-mis MinMax

namespace {

// Candidate evaluation runs on integer coordinates (inputs scaled by the
// common denominator).  Int is __int128 for small inputs and mpz otherwise.
template <class Int>
struct KmmSearch {
  struct P {
    Int x, y;
    int color;  // 0 red, 1 blue
  };
  std::vector<P> pts;
  int kmax = 0;
  // best[o][m]: smallest farthest error with exactly m misclassifications
  struct Best {
    bool set = false;
    Int num, den;  // error² = num / den in scaled units
    Int a, b, c;
  };
  std::vector<Best> best[2];
  long candidates = 0, skipped = 0;

  static bool less(const Int& n1, const Int& d1, const Int& n2, const Int& d2) { return n1 * d2 < n2 * d1; }

  void consider(Int a, Int b, Int c) {
    if (b == 0) {
      ++skipped;
      return;
    }
    if (b < 0) {
      a = -a;
      b = -b;
      c = -c;
    }
    ++candidates;
    int mis[2] = {0, 0};
    Int worst[2] = {0, 0};
    for (const auto& p : pts) {
      Int v = a * p.x + b * p.y + c;  // > 0 above
      if (v == 0) continue;
      bool above = v > 0;
      // orientation 0 = BlueAbove: red above or blue below is wrong
      int wrong = (p.color == 0) == above ? 0 : 1;
      Int av = v < 0 ? Int(-v) : v;
      ++mis[wrong];
      if (av > worst[wrong]) worst[wrong] = av;
    }
    Int den = a * a + b * b;
    for (int o = 0; o < 2; ++o) {
      if (mis[o] > kmax) continue;
      Int num = worst[o] * worst[o];
      Best& bb = best[o][static_cast<std::size_t>(mis[o])];
      if (!bb.set || less(num, den, bb.num, bb.den)) bb = Best{true, num, den, a, b, c};
    }
  }

  void line_through(const P& p, const P& q) { consider(q.y - p.y, p.x - q.x, -((q.y - p.y) * p.x + (p.x - q.x) * p.y)); }

  // line through s with direction (dx, dy), s given doubled
  void line_dir(const Int& sx2, const Int& sy2, const Int& dx, const Int& dy) {
    // dy*X - dx*Y + c = 0 through (sx2/2, sy2/2); scale by 2
    Int a = 2 * dy, b = -2 * dx;
    Int c = -(dy * sx2 - dx * sy2);
    consider(a, b, c);
  }

  void run() {
    const std::size_t n = pts.size();
    for (std::size_t i = 0; i < n; ++i) consider(Int(0), Int(1), -pts[i].y);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j) line_through(pts[i], pts[j]);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j) {
        const P& p = pts[i];
        const P& q = pts[j];
        Int dx = q.x - p.x, dy = q.y - p.y;
        for (std::size_t w = 0; w < n; ++w) {
          if (w == i || w == j) continue;
          const P& z = pts[w];
          if (p.color == q.color) {
            // through z parallel to pq
            line_dir(2 * z.x, 2 * z.y, dx, dy);
            // halfway between line pq and z
            if (z.color != p.color) line_dir(p.x + z.x, p.y + z.y, dx, dy);
          } else {
            // through z and the midpoint of p and q
            Int mx2 = p.x + q.x, my2 = p.y + q.y;
            Int ddx = mx2 - 2 * z.x, ddy = my2 - 2 * z.y;
            if (ddx == 0 && ddy == 0) {
              ++skipped;
              continue;
            }
            line_dir(2 * z.x, 2 * z.y, ddx, ddy);
          }
        }
      }
  }
};

template <class Int>
Rat to_rat(const Int& v);

template <>
Rat to_rat<mpz_class>(const mpz_class& v) {
  return Rat(v);
}

template <>
Rat to_rat<__int128>(const __int128& v) {
  // split into 62-bit chunks
  bool neg = v < 0;
  unsigned __int128 u = neg ? static_cast<unsigned __int128>(-v) : static_cast<unsigned __int128>(v);
  mpz_class hi(static_cast<unsigned long>(u >> 64));
  mpz_class lo(static_cast<unsigned long>(u & 0xFFFFFFFFFFFFFFFFull));
  mpz_class r = (hi << 64) + lo;
  return Rat(neg ? mpz_class(-r) : r);
}

template <class Int>
std::vector<OracleReport> run_kmm(const std::vector<LabeledPoint>& in, const mpz_class& scale, int kmax,
                                  std::vector<std::pair<mpz_class, mpz_class>> scaled) {
  KmmSearch<Int> s;
  s.kmax = kmax;
  for (int o = 0; o < 2; ++o) s.best[o].assign(static_cast<std::size_t>(kmax) + 1, {});
  for (std::size_t i = 0; i < in.size(); ++i) {
    typename KmmSearch<Int>::P p;
    if constexpr (std::is_same_v<Int, mpz_class>) {
      p.x = scaled[i].first;
      p.y = scaled[i].second;
    } else {
      p.x = static_cast<Int>(scaled[i].first.get_si());
      p.y = static_cast<Int>(scaled[i].second.get_si());
    }
    p.color = in[i].color == Color::Red ? 0 : 1;
    s.pts.push_back(p);
  }
  s.run();

  std::vector<OracleReport> out(static_cast<std::size_t>(kmax) + 1);
  const Rat scale_sq = Rat(scale) * Rat(scale);
  for (int k = 0; k <= kmax; ++k) {
    OracleReport rep;
    rep.candidates = s.candidates;
    rep.skipped = s.skipped;
    const typename KmmSearch<Int>::Best* pick = nullptr;
    int pick_o = 0, pick_m = 0;
    for (int o = 0; o < 2; ++o)
      for (int m = 0; m <= k; ++m) {
        const auto& b = s.best[o][static_cast<std::size_t>(m)];
        if (!b.set) continue;
        if (!pick || KmmSearch<Int>::less(b.num, b.den, pick->num, pick->den)) {
          pick = &b;
          pick_o = o;
          pick_m = m;
        }
      }
    if (pick) {
      rep.feasible = true;
      rep.mis = pick_m;
      Rat num = to_rat<Int>(pick->num), den = to_rat<Int>(pick->den);
      rep.max_sq = num / den / scale_sq;
      Rat a = to_rat<Int>(pick->a), b = to_rat<Int>(pick->b), c = to_rat<Int>(pick->c);
      Separator sep;
      sep.line.m = -a / b;
      sep.line.c = -c / (b * Rat(scale));
      sep.orientation = pick_o == 0 ? Orientation::BlueAbove : Orientation::RedAbove;
      rep.witness = sep;
    }
    out[static_cast<std::size_t>(k)] = rep;
  }
  return out;
}

}  // namespace

std::vector<OracleReport> oracle_kmm_upto(const std::vector<LabeledPoint>& pts, int kmax, int cap) {
  if (static_cast<int>(pts.size()) > cap)
    throw CapExceeded("oracle_kmm: " + std::to_string(pts.size()) + " points exceed cap " + std::to_string(cap));
  if (kmax < 0) return {};
  mpz_class scale = 1;
  for (const auto& p : pts) {
    mpz_lcm(scale.get_mpz_t(), scale.get_mpz_t(), p.point.x.get_den_mpz_t());
    mpz_lcm(scale.get_mpz_t(), scale.get_mpz_t(), p.point.y.get_den_mpz_t());
  }
  std::vector<std::pair<mpz_class, mpz_class>> scaled;
  mpz_class biggest = 0;
  for (const auto& p : pts) {
    Rat x = p.point.x * Rat(scale), y = p.point.y * Rat(scale);
    scaled.emplace_back(x.get_num(), y.get_num());
    biggest = std::max(biggest, mpz_class(abs(x.get_num())));
    biggest = std::max(biggest, mpz_class(abs(y.get_num())));
  }
  if (biggest < (mpz_class(1) << 18)) return run_kmm<__int128>(pts, scale, kmax, std::move(scaled));
  return run_kmm<mpz_class>(pts, scale, kmax, std::move(scaled));
}

OracleReport oracle_kmm(const std::vector<LabeledPoint>& pts, int k, int cap) {
  if (k < 0) {
    if (static_cast<int>(pts.size()) > cap) throw CapExceeded("oracle_kmm: too many points");
    return {};
  }
  return oracle_kmm_upto(pts, k, cap).back();
}

}  // namespace sepkit
