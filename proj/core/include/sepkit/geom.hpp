#pragma once

#include "sepkit/rat.hpp"

#include <optional>
#include <vector>

namespace sepkit {

enum class Color { Red, Blue };
enum class Orientation { BlueAbove, RedAbove };

inline Color other(Color c) { return c == Color::Red ? Color::Blue : Color::Red; }
inline Orientation flipped(Orientation o) {
  return o == Orientation::BlueAbove ? Orientation::RedAbove : Orientation::BlueAbove;
}
const char* color_name(Color c);             // "R" / "B"
const char* orientation_name(Orientation o);  // "BlueAbove" / "RedAbove"

struct PointR2 {
  Rat x, y;
  bool operator==(const PointR2&) const = default;
};

// y = m x + c
struct LineR2 {
  Rat m, c;
  Rat at(const Rat& x) const { return m * x + c; }
  bool operator==(const LineR2&) const = default;
};

struct LabeledPoint {
  PointR2 point;
  Color color = Color::Red;
  int id = 0;
};

struct Separator {
  LineR2 line;
  Orientation orientation = Orientation::BlueAbove;
};

struct MisReport {
  int mis = 0;
  Rat max_sq;
  std::vector<int> misclassified_ids;  // sorted
};

LineR2 dualize_point(const PointR2& p);
PointR2 dualize_line(const LineR2& l);

// Positive when p lies above l.
Rat vertical_distance(const PointR2& p, const LineR2& l);
Rat euclid_dist_sq(const PointR2& p, const LineR2& l);

// Points on the line are never misclassified.
MisReport classify_mis(const Separator& sep, const std::vector<LabeledPoint>& pts);
// Count only; stops early once the count exceeds `limit`.
int count_mis(const Separator& sep, const std::vector<LabeledPoint>& pts, int limit = -1);

bool is_misclassified(const LabeledPoint& p, const Separator& sep);

// x where a and b meet; nullopt for parallel lines.
std::optional<Rat> crossing_x(const LineR2& a, const LineR2& b);
std::optional<PointR2> crossing(const LineR2& a, const LineR2& b);

// Orientation of (a, b, c): >0 counter-clockwise, 0 collinear.
int orient(const PointR2& a, const PointR2& b, const PointR2& c);
Rat cross(const PointR2& o, const PointR2& a, const PointR2& b);
Rat dist_sq(const PointR2& a, const PointR2& b);

// A line a x + b y + c = 0 that may be vertical.
struct GeneralLine {
  Rat a, b, c;
  Rat eval(const PointR2& p) const { return a * p.x + b * p.y + c; }
  std::optional<LineR2> as_graph() const;
};

// Rational rotation by the unit vector (cs, sn), cs² + sn² = 1.
struct Rotation {
  Rat cs = 1, sn = 0;
  PointR2 apply(const PointR2& p) const;    // rotate counter-clockwise
  PointR2 inverse(const PointR2& p) const;  // rotate clockwise
};

// Rational point on the unit circle ((1-t²)/(1+t²), 2t/(1+t²)).
Rotation rotation_from_half_tangent(const Rat& t);

}  // namespace sepkit
