#include "sepkit/lpviol.hpp"

#include "sepkit/errors.hpp"

#include <algorithm>
#include <climits>
#include <set>

namespace sepkit {

ConstraintSet dual_constraints(const std::vector<LabeledPoint>& pts, Orientation o) {
  ConstraintSet cs;
  for (const auto& p : pts) {
    bool as_red = (p.color == Color::Red) == (o == Orientation::BlueAbove);
    (as_red ? cs.red : cs.blue).push_back(ConstraintLine{dualize_point(p.point), p.id});
  }
  return cs;
}

bool LPResult::operator==(const LPResult& o) const {
  if (status != o.status) return false;
  if (status == LPStatus::Feasible) return point == o.point && violations == o.violations;
  if (status == LPStatus::Unbounded) return reason == o.reason;
  return true;
}

const char* status_name(LPStatus s) {
  switch (s) {
    case LPStatus::Feasible:
      return "Feasible";
    case LPStatus::Unbounded:
      return "Unbounded";
    default:
      return "Infeasible";
  }
}

const char* reason_name(UnboundedReason r) {
  switch (r) {
    case UnboundedReason::Left:
      return "left";
    case UnboundedReason::EmptySide:
      return "empty_side";
    default:
      return "none";
  }
}

int violations_at(const ConstraintSet& cs, const PointR2& q) {
  int n = 0;
  for (const auto& r : cs.red)
    if (q.y > r.line.at(q.x)) ++n;
  for (const auto& b : cs.blue)
    if (q.y < b.line.at(q.x)) ++n;
  return n;
}

// ------------------------------------------------------------ chain tools

bool ChainInterval::contains(const Rat& x) const {
  return !empty && (lo_inf || lo <= x) && (hi_inf || x <= hi);
}

ChainInterval red_over_blue(const ChainSet& red, std::size_t i, const ChainSet& blue, std::size_t j) {
  const Chain& a = red.chains[i];
  const Chain& b = blue.chains[j];
  ChainInterval out;
  std::size_t pa = 0, pb = 0;
  std::optional<Rat> s;  // nullopt: -inf
  while (true) {
    const ChainPiece& A = a.pieces[pa];
    const ChainPiece& B = b.pieces[pb];
    std::optional<Rat> e;  // nullopt: +inf
    if (!A.to_plus_inf) e = A.x1;
    if (!B.to_plus_inf && (!e || B.x1 < *e)) e = B.x1;
    const LineR2& la = red.lines[static_cast<std::size_t>(A.line)];
    const LineR2& lb = blue.lines[static_cast<std::size_t>(B.line)];
    const Rat alpha = la.m - lb.m, beta = la.c - lb.c;
    std::optional<Rat> fs, fe;  // feasible part of [s, e]
    bool feasible = false;
    if (alpha == 0) {
      if (beta >= 0) {
        feasible = true;
        fs = s;
        fe = e;
      }
    } else {
      Rat r = -beta / alpha;
      if (alpha > 0) {
        fs = (s && *s > r) ? *s : r;
        fe = e;
        feasible = !e || *fs <= *e;
      } else {
        fs = s;
        fe = (e && *e < r) ? *e : r;
        feasible = !s || *s <= *fe;
      }
    }
    if (feasible) {
      if (out.empty) {
        out.empty = false;
        out.lo_inf = !fs;
        if (fs) out.lo = *fs;
      }
      out.hi_inf = !fe;
      if (fe) out.hi = *fe;
    }
    if (!e) break;
    if (!A.to_plus_inf && A.x1 == *e) ++pa;
    if (!B.to_plus_inf && B.x1 == *e) ++pb;
    s = e;
  }
  return out;
}

void PlyStructure::insert(const ChainInterval& iv, int tag) {
  ++count_;
  if (iv.empty) {
    ++empty_;
    return;
  }
  if (!iv.lo_inf) starts_.insert({iv.lo, tag});
  if (!iv.hi_inf) ends_.insert({iv.hi, tag});
}

void PlyStructure::erase(const ChainInterval& iv, int tag) {
  --count_;
  if (iv.empty) {
    --empty_;
    return;
  }
  if (!iv.lo_inf) starts_.erase({iv.lo, tag});
  if (!iv.hi_inf) ends_.erase({iv.hi, tag});
}

int PlyStructure::outside(const Rat& x) const {
  std::size_t ended = ends_.order_of_key({x, INT_MIN});
  std::size_t later = starts_.size() - starts_.order_of_key({x, INT_MAX});
  return empty_ + static_cast<int>(ended + later);
}

// ------------------------------------------------------------ static

namespace {

// Bottom-to-top order far to the left.
bool below_at_minus_inf(const LineR2& a, const LineR2& b) {
  if (a.m != b.m) return a.m > b.m;
  return a.c < b.c;
}

struct Scan {
  LPResult res;
  int min_v = INT_MAX;  // smallest exact count <= k seen at any probe or candidate
};

std::vector<LineR2> lines_of(const std::vector<ConstraintLine>& v) {
  std::vector<LineR2> out;
  out.reserve(v.size());
  for (const auto& c : v) out.push_back(c.line);
  return out;
}

void check_colors_disjoint(const ConstraintSet& cs) {
  std::set<std::pair<Rat, Rat>> blue;
  for (const auto& b : cs.blue) blue.insert({b.line.m, b.line.c});
  for (const auto& r : cs.red)
    if (blue.count({r.line.m, r.line.c}))
      throw GeneralPosition("line " + rat_str(r.line.m) + "x+" + rat_str(r.line.c) + " is both red and blue");
}

// Every budget-k answer sits on a crossing of a red and a blue chain of the
// k+1 extreme lines, or far left on the first piece of a chain.
Scan scan(const ConstraintSet& cs, int k, bool early_unbounded, LPStats* stats) {
  Scan out;
  const int nr = static_cast<int>(cs.red.size()), nb = static_cast<int>(cs.blue.size());
  if (nr <= k || nb <= k) {
    out.res = LPResult::unbounded(UnboundedReason::Left);
    out.min_v = std::min(nr, nb);
    if (early_unbounded) return out;
  }
  if (nr <= k) out.min_v = std::min(out.min_v, nr);
  if (nb <= k) out.min_v = std::min(out.min_v, nb);

  ChainSet R = chain_decomposition(lines_of(cs.red), k, Direction::Lower);
  ChainSet B = chain_decomposition(lines_of(cs.blue), k, Direction::Upper);
  const std::size_t kr = R.chains.size(), kb = B.chains.size();
  if (stats) stats->chains += static_cast<long>(kr + kb);

  // far left: lines starting the chains
  std::vector<LineR2> rf, bf;
  for (std::size_t i = 0; i < kr; ++i) rf.push_back(R.line_of(i, 0));
  for (std::size_t j = 0; j < kb; ++j) bf.push_back(B.line_of(j, 0));
  bool unbounded = out.res.status == LPStatus::Unbounded;
  auto probe = [&](const LineR2& l) {
    int v = 0;
    for (const auto& r : rf) v += below_at_minus_inf(r, l) ? 1 : 0;
    for (const auto& b : bf) v += below_at_minus_inf(l, b) ? 1 : 0;
    if (v <= k) {
      unbounded = true;
      out.min_v = std::min(out.min_v, v);
    }
  };
  for (const auto& l : rf) probe(l);
  for (const auto& l : bf) probe(l);
  if (unbounded && early_unbounded) {
    out.res = LPResult::unbounded(UnboundedReason::Left);
    return out;
  }

  std::vector<std::vector<ChainInterval>> iv(kr, std::vector<ChainInterval>(kb));
  std::vector<PlyStructure> ply_r(kr), ply_b(kb);
  for (std::size_t i = 0; i < kr; ++i)
    for (std::size_t j = 0; j < kb; ++j) {
      iv[i][j] = red_over_blue(R, i, B, j);
      ply_r[i].insert(iv[i][j], static_cast<int>(j));
      ply_b[j].insert(iv[i][j], static_cast<int>(i));
    }
  std::optional<PointR2> best;
  int best_v = 0;
  auto consider = [&](std::size_t i, std::size_t j, const Rat& x) {
    if (stats) ++stats->candidates;
    int v = ply_r[i].outside(x) + ply_b[j].outside(x);
    if (v > k) return;
    out.min_v = std::min(out.min_v, v);
    PointR2 p{x, R.value(i, x)};
    if (!best || p.x < best->x || (p.x == best->x && p.y < best->y)) {
      best = p;
      best_v = v;
    }
  };
  for (std::size_t i = 0; i < kr; ++i)
    for (std::size_t j = 0; j < kb; ++j) {
      const ChainInterval& c = iv[i][j];
      if (c.empty) continue;
      if (!c.lo_inf) consider(i, j, c.lo);
      if (!c.hi_inf && (c.lo_inf || c.hi != c.lo)) consider(i, j, c.hi);
    }
  if (unbounded)
    out.res = LPResult::unbounded(UnboundedReason::Left);
  else if (best)
    out.res = LPResult::feasible(*best, best_v);
  else
    out.res = LPResult::infeasible();
  return out;
}

}  // namespace

LPResult static_leftmost_valid(const ConstraintSet& cs, int k, LPStats* stats) {
  if (k < 0) return LPResult::infeasible();
  if (cs.red.empty() || cs.blue.empty()) return LPResult::unbounded(UnboundedReason::EmptySide);
  check_colors_disjoint(cs);
  return scan(cs, k, true, stats).res;
}

std::pair<int, LPResult> static_min_violations(const ConstraintSet& cs) {
  if (cs.red.empty() || cs.blue.empty()) return {0, LPResult::unbounded(UnboundedReason::EmptySide)};
  check_colors_disjoint(cs);
  int k = 0;
  while (true) {
    Scan s = scan(cs, k, false, nullptr);
    if (s.res.status != LPStatus::Infeasible) {
      int kmin = s.min_v;
      return {kmin, kmin == k ? s.res : scan(cs, kmin, true, nullptr).res};
    }
    k = k == 0 ? 1 : 2 * k;
  }
}

// Budgets double for all sets together, so a set with a large minimum never
// costs more than the cheapest one.
int fewest_violations(const std::vector<ConstraintSet>& sets) {
  for (const auto& cs : sets) {
    if (cs.red.empty() || cs.blue.empty()) return 0;
    check_colors_disjoint(cs);
  }
  for (int k = 0;; k = k == 0 ? 1 : 2 * k) {
    std::optional<int> best;
    for (const auto& cs : sets) {
      Scan s = scan(cs, k, false, nullptr);
      if (s.res.status != LPStatus::Infeasible) best = std::min(best.value_or(s.min_v), s.min_v);
    }
    if (best) return *best;
  }
}

}  // namespace sepkit
