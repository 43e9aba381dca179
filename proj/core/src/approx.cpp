#include "sepkit/approx.hpp"

#include "sepkit/errors.hpp"

#include <algorithm>
#include <cmath>
#include <tuple>

namespace sepkit {

namespace {

constexpr long double kPi = 3.141592653589793238462643383279502884L;

Rat rat_up(long double v, long den) {
  return make_rat(static_cast<long>(std::ceil(v * static_cast<long double>(den))), den);
}

std::vector<Rotation> frames(int t) {
  std::vector<Rotation> out;
  const long den = 1L << 30;
  for (int w = 0; w < t; ++w) {
    const long double phi = -kPi / 2 + (w + 0.5L) * kPi / t;
    const long double h = std::tan(phi / 2);
    out.push_back(rotation_from_half_tangent(make_rat(std::lround(h * den), den)));
  }
  return out;
}

std::vector<LineR2> lines_of(const std::vector<ConstraintLine>& v) {
  std::vector<LineR2> out;
  out.reserve(v.size());
  for (const auto& c : v) out.push_back(c.line);
  return out;
}

ChainSet shifted(const ChainSet& s, const Rat& d) {
  ChainSet out = s;
  for (auto& l : out.lines) l.c += d;
  return out;
}

bool before(const DeltaCandidate& a, const DeltaCandidate& b) {
  return std::tie(a.err, a.q.x, a.q.y) < std::tie(b.err, b.q.x, b.q.y);
}

}  // namespace

bool covers_all_directions(const TGon& g) {
  const std::size_t t = g.rotations.size();
  for (std::size_t w = 0; w < t; ++w) {
    const Rotation& a = g.rotations[w];
    Rotation b = g.rotations[(w + 1) % t];
    if (w + 1 == t) b = Rotation{-b.cs, -b.sn};  // the same line direction, half a turn on
    const Rat s = a.cs * b.sn - a.sn * b.cs, c = a.cs * b.cs + a.sn * b.sn;
    // tan of half the gap is s / (1 + c)
    if (s <= 0 || s > g.tau * (1 + c)) return false;
  }
  return true;
}

TGon make_tgon(const Rat& eps) {
  if (eps <= 0) throw NonPositiveEps("eps must be positive, got " + rat_str(eps));
  const long double e = eps.get_d();
  int t = 3;
  while (1.0L / std::cos(kPi / t) > 1.0L + e + 1e-12L) ++t;
  const Rat bound = (1 + eps) * (1 + eps);
  for (;; ++t) {
    TGon g;
    g.t = t;
    g.eps = eps;
    g.rotations = frames(t);
    const long double half = std::tan(kPi / (2 * t));
    for (long double slack = 1e-9L; slack < 1e-2L; slack *= 10) {
      g.tau = rat_up(half * (1 + slack), 1L << 40);
      if (1 + g.tau * g.tau > bound) break;
      if (covers_all_directions(g)) return g;
    }
  }
}

// ---------------------------------------------------------------- decision

DeltaContext::DeltaContext(ConstraintSet cs, int k, Rat tau, std::optional<Rat> forbidden_x)
    : cs_(std::move(cs)), k_(k), tau_(std::move(tau)), forbidden_(std::move(forbidden_x)) {
  if (cs_.red.empty() || cs_.blue.empty()) throw EmptyColor("delta context needs both colors");
  const auto rl = lines_of(cs_.red), bl = lines_of(cs_.blue);
  red_ = chain_decomposition(rl, k_, Direction::Lower);
  blue_ = chain_decomposition(bl, k_, Direction::Upper);
  red_env_ = envelope_set(rl, Direction::Lower);
  blue_env_ = envelope_set(bl, Direction::Upper);

  std::vector<DeltaCandidate> c;
  for (std::size_t i = 0; i < red_.chains.size(); ++i)
    for (std::size_t j = 0; j < blue_.chains.size(); ++j) {
      const ChainInterval iv = red_over_blue(red_, i, blue_, j);
      if (iv.empty) continue;
      if (!iv.lo_inf) offer(c, PointR2{iv.lo, red_.value(i, iv.lo)});
      if (!iv.hi_inf) offer(c, PointR2{iv.hi, red_.value(i, iv.hi)});
    }
  const Rat wall = -tau_;
  for (std::size_t i = 0; i < red_.chains.size(); ++i) offer(c, PointR2{wall, red_.value(i, wall)});
  for (std::size_t j = 0; j < blue_.chains.size(); ++j) offer(c, PointR2{wall, blue_.value(j, wall)});
  std::sort(c.begin(), c.end(), before);
  c.erase(std::unique(c.begin(), c.end(), [](const DeltaCandidate& a, const DeltaCandidate& b) { return a.q == b.q; }),
          c.end());
  fixed_ = std::move(c);
  if (!fixed_.empty()) p_min_ = fixed_.front();
}

Rat DeltaContext::vertical_error(const PointR2& q) const {
  Rat e = q.y - red_env_.value(0, q.x);
  Rat f = blue_env_.value(0, q.x) - q.y;
  if (f > e) e = f;
  return e > 0 ? e : Rat(0);
}

bool DeltaContext::admissible(const PointR2& q) const {
  if (q.x < -tau_ || q.x > tau_) return false;
  if (forbidden_ && q.x == *forbidden_) return false;
  return violations_at(cs_, q) <= k_;
}

void DeltaContext::offer(std::vector<DeltaCandidate>& out, const PointR2& q) const {
  if (q.x < -tau_ || q.x > tau_) return;
  if (forbidden_ && q.x == *forbidden_) return;
  const int v = violations_at(cs_, q);
  if (v > k_) return;
  out.push_back(DeltaCandidate{q, vertical_error(q), v});
}

std::optional<PointR2> DeltaContext::decide(const Rat& delta) const {
  ++decisions_;
  std::optional<DeltaCandidate> best;
  if (!fixed_.empty() && fixed_.front().err <= delta) best = fixed_.front();

  // the region within delta: under the red envelope raised by delta, over
  // the blue envelope lowered by delta
  const ChainSet up = shifted(red_env_, delta), down = shifted(blue_env_, -delta);
  std::vector<DeltaCandidate> c;
  auto cross = [&](const ChainSet& a, std::size_t i, const ChainSet& b, std::size_t j) {
    const ChainInterval iv = red_over_blue(a, i, b, j);
    if (iv.empty) return;
    if (!iv.lo_inf) offer(c, PointR2{iv.lo, a.value(i, iv.lo)});
    if (!iv.hi_inf) offer(c, PointR2{iv.hi, a.value(i, iv.hi)});
  };
  for (std::size_t j = 0; j < blue_.chains.size(); ++j) cross(up, 0, blue_, j);
  for (std::size_t i = 0; i < red_.chains.size(); ++i) cross(red_, i, down, 0);
  cross(up, 0, down, 0);
  const Rat wall = -tau_;
  offer(c, PointR2{wall, up.value(0, wall)});
  offer(c, PointR2{wall, down.value(0, wall)});
  for (const auto& d : c)
    if (d.err <= delta && (!best || before(d, *best))) best = d;
  if (!best) return std::nullopt;
  return best->q;
}

Rat default_tol() { return Rat("1/1000000000000"); }

WedgeSolution solve_wedge(const DeltaContext& ctx, const Rat& tol, const std::optional<Rat>& cutoff) {
  WedgeSolution out;
  const long start = ctx.decisions();
  const auto& pm = ctx.p_min();
  if (!pm) return out;
  out.feasible = true;
  Rat hi = pm->err;
  PointR2 at = pm->q;
  if (cutoff && hi > *cutoff) {
    auto r = ctx.decide(*cutoff);
    if (!r) {
      out.pruned = true;
      out.decisions = ctx.decisions() - start;
      return out;
    }
    at = *r;
    hi = ctx.vertical_error(at);
  }
  Rat lo = 0;
  if (hi > 0) {
    if (auto r = ctx.decide(0)) {
      at = *r;
      hi = 0;
    }
  }
  while (hi > 0 && lo * (1 + tol) < hi) {
    const Rat mid = (lo + hi) / 2;
    if (auto r = ctx.decide(mid)) {
      at = *r;
      hi = ctx.vertical_error(at);
    } else {
      lo = mid;
    }
  }
  out.delta = hi;
  out.point = at;
  out.decisions = ctx.decisions() - start;
  return out;
}

// ---------------------------------------------------------------- frames

std::vector<LabeledPoint> to_frame(const std::vector<LabeledPoint>& pts, const Rotation& rot) {
  std::vector<LabeledPoint> out = pts;
  for (auto& p : out) p.point = rot.inverse(p.point);
  return out;
}

std::optional<Rat> vertical_slope_in_frame(const Rotation& rot) {
  if (rot.sn == 0) return std::nullopt;
  return rot.cs / rot.sn;
}

Separator from_frame(const PointR2& dual, Orientation frame_o, const Rotation& rot) {
  // -m x' + y' + y = 0 in the frame, positive on its upper side
  const PointR2 n = rot.apply(PointR2{-dual.x, Rat(1)});
  if (n.y == 0) throw InvariantError("separator is vertical in the input frame");
  Separator s;
  s.line = LineR2{-n.x / n.y, -dual.y / n.y};
  const bool blue_positive = frame_o == Orientation::BlueAbove;
  s.orientation = blue_positive == (n.y > 0) ? Orientation::BlueAbove : Orientation::RedAbove;
  return s;
}

// Shared by the static and dynamic solvers; k_min is already known.
ApproxReport solve_frames(const std::vector<LabeledPoint>& pts, int k, const TGon& g, const Rat& tol, int k_min) {
  ApproxReport rep;
  rep.eps = g.eps;
  rep.tol = tol;
  rep.tau = g.tau;
  rep.t = g.t;
  rep.k_min = k_min;
  if (k < k_min) return rep;
  std::optional<Rat> best;
  for (int w = 0; w < g.t; ++w) {
    const Rotation& rot = g.rotations[static_cast<std::size_t>(w)];
    const auto fp = to_frame(pts, rot);
    const auto forbidden = vertical_slope_in_frame(rot);
    for (Orientation o : {Orientation::BlueAbove, Orientation::RedAbove}) {
      DeltaContext ctx(dual_constraints(fp, o), k, g.tau, forbidden);
      WedgeSolution s = solve_wedge(ctx, tol, best);
      rep.decisions += s.decisions;
      if (s.pruned) ++rep.wedges_pruned;
      if (!s.feasible || s.pruned) continue;
      if (!best || s.delta < *best) {
        best = s.delta;
        rep.wedge = w;
        rep.frame_orientation = o;
        rep.dual = s.point;
        rep.approx_err = s.delta;
      }
    }
  }
  if (!best) throw InvariantError("no wedge admits a separator although k >= k_min");
  const Rotation& rot = g.rotations[static_cast<std::size_t>(rep.wedge)];
  rep.separator = from_frame(rep.dual, rep.frame_orientation, rot);
  const MisReport m = classify_mis(*rep.separator, pts);
  rep.mis = m.mis;
  rep.euclid_max_sq = m.max_sq;
  const Rat a2 = rep.approx_err * rep.approx_err;
  if (m.mis > k || m.max_sq > a2 || a2 > (1 + g.tau * g.tau) * m.max_sq)
    throw InvariantError("approximate separator fails its error bounds");
  return rep;
}

ApproxReport solve_approx(const std::vector<LabeledPoint>& pts, int k, const Rat& eps, const Rat& tol) {
  const TGon g = make_tgon(eps);
  bool red = false, blue = false;
  for (const auto& p : pts) (p.color == Color::Red ? red : blue) = true;
  if (!red || !blue) throw EmptyColor("approximate solver needs both colors");
  const int n = static_cast<int>(pts.size());
  k = std::clamp(k, 0, n);
  const int k_min = fewest_violations(
      {dual_constraints(pts, Orientation::BlueAbove), dual_constraints(pts, Orientation::RedAbove)});
  return solve_frames(pts, k, g, tol, k_min);
}

}  // namespace sepkit
