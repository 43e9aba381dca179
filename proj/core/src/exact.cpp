#include "sepkit/exact.hpp"

#include "sepkit/errors.hpp"
#include "sepkit/lpviol.hpp"

#include <algorithm>
#include <map>

namespace sepkit {

namespace {

bool lex_less(const PointR2& a, const PointR2& b) { return a.x != b.x ? a.x < b.x : a.y < b.y; }

std::pair<std::vector<LineR2>, std::vector<LineR2>> dual_lines(const std::vector<LabeledPoint>& pts, Orientation o) {
  auto cs = dual_constraints(pts, o);
  std::vector<LineR2> red, blue;
  for (const auto& r : cs.red) red.push_back(r.line);
  for (const auto& b : cs.blue) blue.push_back(b.line);
  return {red, blue};
}

}  // namespace

const char* kind_name(CandidateKind k) {
  switch (k) {
    case CandidateKind::A:
      return "a";
    case CandidateKind::B:
      return "b";
    case CandidateKind::C:
      return "c";
    default:
      return "d";
  }
}

Separator separator_of(const PointR2& q, Orientation o) { return Separator{LineR2{q.x, -q.y}, o}; }

// ------------------------------------------------------------ curve

MinMaxCurve minmax_curve(const std::vector<LineR2>& red, const std::vector<LineR2>& blue) {
  if (red.empty() || blue.empty()) throw EmptyColor("the curve needs points of both colors");
  MinMaxCurve c;
  c.red = red;
  c.blue = blue;
  const Chain lo = envelope(red, Direction::Lower);
  const Chain hi = envelope(blue, Direction::Upper);
  std::size_t a = 0, b = 0;
  std::optional<Rat> s;
  while (true) {
    const ChainPiece& A = lo.pieces[a];
    const ChainPiece& B = hi.pieces[b];
    std::optional<Rat> e;
    if (!A.to_plus_inf) e = A.x1;
    if (!B.to_plus_inf && (!e || B.x1 < *e)) e = B.x1;
    CurveSegment seg;
    seg.from_minus_inf = !s;
    if (s) seg.x0 = *s;
    seg.to_plus_inf = !e;
    if (e) seg.x1 = *e;
    seg.red = A.line;
    seg.blue = B.line;
    const LineR2& r = red[static_cast<std::size_t>(A.line)];
    const LineR2& u = blue[static_cast<std::size_t>(B.line)];
    seg.line = LineR2{(r.m + u.m) / 2, (r.c + u.c) / 2};
    c.segments.push_back(seg);
    if (!e) break;
    c.vertices.push_back(PointR2{*e, seg.line.at(*e)});
    if (!A.to_plus_inf && A.x1 == *e) ++a;
    if (!B.to_plus_inf && B.x1 == *e) ++b;
    s = e;
  }
  return c;
}

MinMaxCurve minmax_curve(const std::vector<LabeledPoint>& pts, Orientation o) {
  auto [red, blue] = dual_lines(pts, o);
  return minmax_curve(red, blue);
}

std::size_t MinMaxCurve::segment_at(const Rat& x) const {
  std::size_t lo = 0, hi = segments.size() - 1;
  while (lo < hi) {
    std::size_t mid = (lo + hi) / 2;
    if (x <= segments[mid].x1)
      hi = mid;
    else
      lo = mid + 1;
  }
  return lo;
}

Rat MinMaxCurve::at(const Rat& x) const { return segments[segment_at(x)].line.at(x); }

Rat MinMaxCurve::red_floor(const Rat& x) const {
  return red[static_cast<std::size_t>(segments[segment_at(x)].red)].at(x);
}

Rat MinMaxCurve::blue_ceiling(const Rat& x) const {
  return blue[static_cast<std::size_t>(segments[segment_at(x)].blue)].at(x);
}

Rat MinMaxCurve::vertical_error(const PointR2& q) const {
  const CurveSegment& s = segments[segment_at(q.x)];
  Rat up = q.y - red[static_cast<std::size_t>(s.red)].at(q.x);
  Rat down = blue[static_cast<std::size_t>(s.blue)].at(q.x) - q.y;
  Rat v = std::max(up, down);
  return v > 0 ? v : Rat(0);
}

Rat MinMaxCurve::error_sq(const PointR2& q) const {
  Rat v = vertical_error(q);
  return v * v / (q.x * q.x + 1);
}

// ------------------------------------------------------------ candidates

namespace {

struct Raw {
  PointR2 q;
  CandidateKind kind;
  Rat err;
};

// Walks every valid trapezoid.  Between consecutive candidate abscissae the
// best point of the trapezoid follows one line and its error comes from one
// fixed pair of lines, so the error there has no interior minimum.
struct Enumerator {
  const OverlayFaceMap& map;
  const MinMaxCurve& curve;
  std::vector<Raw>* out = nullptr;  // all candidates, or
  std::optional<Raw> best;          // only the best
  std::optional<Rat> tail;

  bool is_vertex(const PointR2& p) const { return std::binary_search(map.vertices.begin(), map.vertices.end(), p, lex_less); }

  bool curve_vertex(const Rat& x) const {
    return std::binary_search(curve.vertices.begin(), curve.vertices.end(), PointR2{x, Rat(0)},
                              [](const PointR2& a, const PointR2& b) { return a.x < b.x; });
  }

  static bool before(const Raw& a, const Raw& b) {
    if (a.err != b.err) return a.err < b.err;
    if (a.q.x != b.q.x) return a.q.x < b.q.x;
    if (a.q.y != b.q.y) return a.q.y < b.q.y;
    return a.kind < b.kind;
  }

  void emit(const Trapezoid& z, const CurveSegment& s, const Rat& x, bool crossing) {
    const Rat mid = s.line.at(x);
    Rat y = mid;
    bool clamped = false;
    if (z.lower && y < z.lower->at(x)) {
      y = z.lower->at(x);
      clamped = true;
    } else if (z.upper && y > z.upper->at(x)) {
      y = z.upper->at(x);
      clamped = true;
    }
    Raw r{PointR2{x, y}, CandidateKind::D, Rat(0)};
    if (crossing)
      r.kind = CandidateKind::D;
    else if (!clamped && curve_vertex(x))
      r.kind = CandidateKind::B;
    else if (clamped && is_vertex(r.q))
      r.kind = CandidateKind::A;
    else
      r.kind = CandidateKind::C;
    const Rat up = y - curve.red[static_cast<std::size_t>(s.red)].at(x);
    const Rat down = curve.blue[static_cast<std::size_t>(s.blue)].at(x) - y;
    Rat v = std::max(up, down);
    if (v < 0) v = 0;
    r.err = v * v / (x * x + 1);
    if (out) out->push_back(r);
    if (!best || before(r, *best)) best = r;
  }

  // Squared error approached far out along the trapezoid, beyond `far`.
  Rat limit(const Trapezoid& z, const CurveSegment& s, const Rat& far) const {
    const LineR2& r = curve.red[static_cast<std::size_t>(s.red)];
    const LineR2& b = curve.blue[static_cast<std::size_t>(s.blue)];
    LineR2 path = s.line;
    if (z.lower && path.at(far) < z.lower->at(far))
      path = *z.lower;
    else if (z.upper && path.at(far) > z.upper->at(far))
      path = *z.upper;
    const Rat up = path.at(far) - r.at(far), down = b.at(far) - path.at(far);
    if (up <= 0 && down <= 0) return Rat(0);
    const Rat slope = up >= down ? path.m - r.m : b.m - path.m;
    return slope * slope;
  }

  void trapezoid(const Trapezoid& z) {
    std::size_t i = z.from_minus_inf ? 0 : curve.segment_at(z.x0);
    for (; i < curve.segments.size(); ++i) {
      const CurveSegment& s = curve.segments[i];
      if (!z.to_plus_inf && !s.from_minus_inf && s.x0 > z.x1) break;
      // overlap [a, b]
      std::optional<Rat> a, b;
      if (!s.from_minus_inf) a = s.x0;
      if (!z.from_minus_inf && (!a || z.x0 > *a)) a = z.x0;
      if (!s.to_plus_inf) b = s.x1;
      if (!z.to_plus_inf && (!b || z.x1 < *b)) b = z.x1;
      if (a && b && *a > *b) continue;
      if (a) emit(z, s, *a, false);
      if (b && (!a || *b != *a)) emit(z, s, *b, false);
      // crossings inside the overlap
      const LineR2& r = curve.red[static_cast<std::size_t>(s.red)];
      const LineR2& u = curve.blue[static_cast<std::size_t>(s.blue)];
      std::vector<std::pair<LineR2, LineR2>> pairs{{r, u}};
      for (const auto& side : {z.lower, z.upper}) {
        if (!side) continue;
        pairs.push_back({*side, s.line});
        pairs.push_back({*side, r});
        pairs.push_back({*side, u});
      }
      std::optional<Rat> far_right = a, far_left = b;
      for (const auto& [p, q] : pairs) {
        auto x = crossing_x(p, q);
        if (!x) continue;
        if ((a && *x <= *a) || (b && *x >= *b)) continue;
        emit(z, s, *x, true);
        if (!far_right || *x > *far_right) far_right = *x;
        if (!far_left || *x < *far_left) far_left = *x;
      }
      if (!b) {
        Rat far = (far_right ? *far_right : Rat(0)) + 1;
        Rat t = limit(z, s, far);
        if (!tail || t < *tail) tail = t;
      }
      if (!a) {
        Rat far = (far_left ? *far_left : Rat(0)) - 1;
        Rat t = limit(z, s, far);
        if (!tail || t < *tail) tail = t;
      }
      if (!b) break;
    }
  }

  void run() {
    for (const auto& f : map.faces) {
      if (!f.valid) continue;
      for (const auto& z : f.pieces) trapezoid(z);
    }
  }
};

}  // namespace

std::vector<CandidatePoint> candidates(const std::vector<LabeledPoint>& pts, int k, Orientation o) {
  auto [red, blue] = dual_lines(pts, o);
  if (red.empty() || blue.empty()) throw EmptyColor("candidates need points of both colors");
  k = std::clamp(k, 0, static_cast<int>(pts.size()));
  const MinMaxCurve curve = minmax_curve(red, blue);
  const OverlayFaceMap map = overlay_and_label(red, blue, k);
  std::vector<Raw> raw;
  Enumerator e{map, curve, &raw, std::nullopt, std::nullopt};
  e.run();
  // one entry per location, keeping the first kind
  std::map<std::pair<Rat, Rat>, Raw> uniq;
  for (const auto& r : raw) {
    auto [it, fresh] = uniq.emplace(std::make_pair(r.q.x, r.q.y), r);
    if (!fresh && r.kind < it->second.kind) it->second.kind = r.kind;
  }
  std::vector<CandidatePoint> out;
  for (const auto& [key, r] : uniq) {
    MisReport m = classify_mis(separator_of(r.q, o), pts);
    out.push_back(CandidatePoint{r.q, r.kind, m.mis, m.max_sq});
  }
  return out;
}

std::optional<PointR2> closest_valid_at(const OverlayFaceMap& map, const MinMaxCurve& curve, const Rat& x) {
  const Rat mid = curve.at(x);
  std::optional<PointR2> best;
  Rat best_d;
  for (const auto& f : map.faces) {
    if (!f.valid) continue;
    for (const auto& z : f.pieces) {
      if (!z.from_minus_inf && x < z.x0) continue;
      if (!z.to_plus_inf && x > z.x1) continue;
      Rat y = mid;
      if (z.lower && y < z.lower->at(x)) y = z.lower->at(x);
      if (z.upper && y > z.upper->at(x)) y = z.upper->at(x);
      Rat d = y > mid ? Rat(y - mid) : Rat(mid - y);
      if (!best || d < best_d || (d == best_d && y < best->y)) {
        best = PointR2{x, y};
        best_d = d;
      }
    }
  }
  return best;
}

ExactSolveReport solve_exact(const std::vector<LabeledPoint>& pts, int k) {
  bool has_red = false, has_blue = false;
  for (const auto& p : pts) (p.color == Color::Red ? has_red : has_blue) = true;
  if (!has_red || !has_blue) throw EmptyColor("the exact solver needs points of both colors");
  k = std::clamp(k, 0, static_cast<int>(pts.size()));

  ExactSolveReport rep;
  rep.k_min = fewest_violations(
      {dual_constraints(pts, Orientation::BlueAbove), dual_constraints(pts, Orientation::RedAbove)});
  if (k < rep.k_min) return rep;

  std::optional<Raw> best;
  Orientation best_o = Orientation::BlueAbove;
  for (Orientation o : {Orientation::BlueAbove, Orientation::RedAbove}) {
    auto [red, blue] = dual_lines(pts, o);
    const MinMaxCurve curve = minmax_curve(red, blue);
    const OverlayFaceMap map = overlay_and_label(red, blue, k);
    rep.valid_faces += map.valid_faces();
    std::vector<Raw> raw;
    Enumerator e{map, curve, &raw, std::nullopt, std::nullopt};
    e.run();
    for (const auto& r : raw) ++rep.counts[static_cast<std::size_t>(r.kind)];
    if (e.tail && (!rep.tail_sq || *e.tail < *rep.tail_sq)) rep.tail_sq = e.tail;
    if (e.best && (!best || Enumerator::before(*e.best, *best))) {
      best = e.best;
      best_o = o;
    }
  }
  if (!best) throw InvariantError("no candidate although k >= k_min");
  rep.dual = best->q;
  rep.kind = best->kind;
  rep.orientation = best_o;
  rep.best = separator_of(best->q, best_o);
  MisReport m = classify_mis(*rep.best, pts);
  if (m.max_sq != best->err || m.mis > k)
    throw InvariantError("candidate evaluation disagrees with direct classification");
  rep.mis = m.mis;
  rep.max_sq = m.max_sq;
  rep.separable = m.max_sq == 0;
  rep.tail_better = rep.tail_sq && *rep.tail_sq < rep.max_sq;
  return rep;
}

}  // namespace sepkit
