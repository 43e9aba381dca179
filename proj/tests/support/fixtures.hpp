#pragma once

// Small named instances shared by the unit and acceptance tests.

#include "sepkit/geom.hpp"
#include "sepkit/lpviol.hpp"
#include "sepkit/sep1d.hpp"

#include <vector>

namespace fx {

using namespace sepkit;

inline Rat q(long n, long d = 1) { return make_rat(n, d); }
inline PointR2 P(long x, long y) { return PointR2{q(x), q(y)}; }
inline LineR2 L(long m, long c) { return LineR2{q(m), q(c)}; }

// 1D: reds at 1 and 5, blues at 3 and 7.
inline std::vector<Point1D> ds1() {
  return {{q(1), Color::Red, 0}, {q(5), Color::Red, 1}, {q(3), Color::Blue, 2}, {q(7), Color::Blue, 3}};
}

// Two horizontal segments, red at y=0 and blue at y=3.
inline std::vector<LabeledPoint> ds2() {
  return {{P(0, 0), Color::Red, 0}, {P(1, 0), Color::Red, 1}, {P(0, 3), Color::Blue, 2}, {P(1, 3), Color::Blue, 3}};
}

// Crossed diagonals: not separable.
inline std::vector<LabeledPoint> ds3() {
  return {{P(0, 0), Color::Red, 0}, {P(2, 2), Color::Red, 1}, {P(0, 2), Color::Blue, 2}, {P(2, 0), Color::Blue, 3}};
}

inline std::vector<LineR2> duals(const std::vector<LabeledPoint>& pts, Color c) {
  std::vector<LineR2> out;
  for (const auto& p : pts)
    if (p.color == c) out.push_back(dualize_point(p.point));
  return out;
}

}  // namespace fx
