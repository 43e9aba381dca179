#include "sepkit/geom.hpp"

#include <algorithm>

namespace sepkit {

const char* color_name(Color c) { return c == Color::Red ? "R" : "B"; }

const char* orientation_name(Orientation o) {
  return o == Orientation::BlueAbove ? "BlueAbove" : "RedAbove";
}

LineR2 dualize_point(const PointR2& p) { return LineR2{p.x, -p.y}; }

PointR2 dualize_line(const LineR2& l) { return PointR2{l.m, -l.c}; }

Rat vertical_distance(const PointR2& p, const LineR2& l) { return p.y - l.at(p.x); }

Rat euclid_dist_sq(const PointR2& p, const LineR2& l) {
  Rat d = vertical_distance(p, l);
  return d * d / (l.m * l.m + 1);
}

bool is_misclassified(const LabeledPoint& p, const Separator& sep) {
  int s = sgn(vertical_distance(p.point, sep.line));
  if (s == 0) return false;
  bool above = s > 0;
  bool red_up = sep.orientation == Orientation::RedAbove;
  // red belongs above iff red_up
  if (p.color == Color::Red) return above != red_up;
  return above == red_up;
}

MisReport classify_mis(const Separator& sep, const std::vector<LabeledPoint>& pts) {
  MisReport rep;
  rep.max_sq = 0;
  for (const auto& p : pts) {
    if (!is_misclassified(p, sep)) continue;
    ++rep.mis;
    rep.misclassified_ids.push_back(p.id);
    Rat d = euclid_dist_sq(p.point, sep.line);
    if (d > rep.max_sq) rep.max_sq = d;
  }
  std::sort(rep.misclassified_ids.begin(), rep.misclassified_ids.end());
  return rep;
}

int count_mis(const Separator& sep, const std::vector<LabeledPoint>& pts, int limit) {
  int n = 0;
  for (const auto& p : pts) {
    if (is_misclassified(p, sep) && ++n > limit && limit >= 0) return n;
  }
  return n;
}

std::optional<Rat> crossing_x(const LineR2& a, const LineR2& b) {
  if (a.m == b.m) return std::nullopt;
  return Rat((b.c - a.c) / (a.m - b.m));
}

std::optional<PointR2> crossing(const LineR2& a, const LineR2& b) {
  auto x = crossing_x(a, b);
  if (!x) return std::nullopt;
  return PointR2{*x, a.at(*x)};
}

Rat cross(const PointR2& o, const PointR2& a, const PointR2& b) {
  return (a.x - o.x) * (b.y - o.y) - (a.y - o.y) * (b.x - o.x);
}

int orient(const PointR2& a, const PointR2& b, const PointR2& c) { return sgn(cross(a, b, c)); }

Rat dist_sq(const PointR2& a, const PointR2& b) {
  Rat dx = a.x - b.x, dy = a.y - b.y;
  return dx * dx + dy * dy;
}

std::optional<LineR2> GeneralLine::as_graph() const {
  if (b == 0) return std::nullopt;
  return LineR2{Rat(-a / b), Rat(-c / b)};
}

PointR2 Rotation::apply(const PointR2& p) const {
  return PointR2{cs * p.x - sn * p.y, sn * p.x + cs * p.y};
}

PointR2 Rotation::inverse(const PointR2& p) const {
  return PointR2{cs * p.x + sn * p.y, -sn * p.x + cs * p.y};
}

Rotation rotation_from_half_tangent(const Rat& t) {
  Rat d = 1 + t * t;
  return Rotation{Rat((1 - t * t) / d), Rat(2 * t / d)};
}

}  // namespace sepkit
