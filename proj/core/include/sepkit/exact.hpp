#pragma once

#include "sepkit/geom.hpp"
#include "sepkit/levels.hpp"

#include <array>
#include <optional>
#include <vector>

namespace sepkit {

// In the dual a separator is a point q = (m, y).  The farthest misclassified
// red point is the lowest red line and the farthest blue one the highest blue
// line, so the vertical error at q is max(y - lo_red(m), hi_blue(m) - y, 0).
// The curve runs halfway between those two envelopes.
struct CurveSegment {
  Rat x0, x1;
  bool from_minus_inf = false, to_plus_inf = false;
  int red = 0, blue = 0;  // lines of the two envelopes over this segment
  LineR2 line;
};

struct MinMaxCurve {
  std::vector<LineR2> red, blue;
  std::vector<PointR2> vertices;  // merged envelope breakpoints, by x
  std::vector<CurveSegment> segments;

  std::size_t segment_at(const Rat& x) const;  // the left one at a breakpoint
  Rat at(const Rat& x) const;
  Rat red_floor(const Rat& x) const;   // lowest red line
  Rat blue_ceiling(const Rat& x) const;  // highest blue line
  Rat vertical_error(const PointR2& q) const;
  // Squared euclidean farthest error of the primal separator of q.
  Rat error_sq(const PointR2& q) const;
};

MinMaxCurve minmax_curve(const std::vector<LineR2>& red, const std::vector<LineR2>& blue);  // EmptyColor
MinMaxCurve minmax_curve(const std::vector<LabeledPoint>& pts, Orientation o);

// The primal separator of a dual point.
Separator separator_of(const PointR2& q, Orientation o);

//  A: corner of the valid region
//  B: curve vertex inside the valid region
//  C: nearest valid point straight above or below a curve vertex, or a
//     wall point of the vertical decomposition
//  D: where the curve or an envelope line crosses a boundary edge
enum class CandidateKind { A, B, C, D };
const char* kind_name(CandidateKind k);

struct CandidatePoint {
  PointR2 location;
  CandidateKind kind = CandidateKind::A;
  int mis = 0;
  Rat max_sq;
};

// Every point where the error over the valid region can be locally minimal,
// evaluated exactly.  EmptyColor when a color is missing.
std::vector<CandidatePoint> candidates(const std::vector<LabeledPoint>& pts, int k, Orientation o);

// Valid point at abscissa x vertically closest to the curve.
std::optional<PointR2> closest_valid_at(const OverlayFaceMap& map, const MinMaxCurve& curve, const Rat& x);

struct ExactSolveReport {
  std::optional<Separator> best;
  PointR2 dual;
  CandidateKind kind = CandidateKind::A;
  int mis = 0;
  Rat max_sq;
  int k_min = 0;
  bool separable = false;
  Orientation orientation = Orientation::BlueAbove;
  std::array<long, 4> counts{};  // candidates per kind, both orientations
  long valid_faces = 0;
  // Set when an unbounded valid region approaches a strictly smaller error
  // toward a vertical separator than any attained candidate.
  bool tail_better = false;
  std::optional<Rat> tail_sq;
};

// Exact optimum over both orientations.  k is clamped to [0, n].
ExactSolveReport solve_exact(const std::vector<LabeledPoint>& pts, int k);

}  // namespace sepkit
