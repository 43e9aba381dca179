#pragma once

// Brute-force reference solvers.  They share no code with the fast solvers
// beyond the geometric primitives and are meant for small inputs.

#include "sepkit/geom.hpp"
#include "sepkit/lpviol.hpp"
#include "sepkit/sep1d.hpp"

#include <optional>
#include <vector>

namespace sepkit {

// Scans every coordinate, every midpoint of consecutive coordinates and the
// unbudgeted optimum of both orientations.
Result1D oracle_1d(const std::vector<Point1D>& pts, int k);
// Same answer for several budgets at once.
std::vector<Result1D> oracle_1d_many(const std::vector<Point1D>& pts, const std::vector<int>& ks);

// Leftmost point with at most k violations by checking every arrangement
// vertex plus probes left of all vertices.
LPResult oracle_leftmost_valid(const ConstraintSet& cs, int k);
int oracle_min_violations(const ConstraintSet& cs);
// Fewest misclassifications of any non-vertical separator.
int oracle_minmis(const std::vector<LabeledPoint>& pts);

struct OracleReport {
  bool feasible = false;
  int mis = 0;
  Rat max_sq;
  std::optional<Separator> witness;
  long candidates = 0;
  long skipped = 0;  // vertical or degenerate candidate lines
};

// Minimum farthest-error over a finite family of candidate lines:
//  lines through two points; lines parallel to two same-colored points and
//  halfway to a point of the other color; lines through a point parallel to
//  two same-colored points; lines through a point and the midpoint of a
//  red and a blue point; horizontal lines through each point.
OracleReport oracle_kmm(const std::vector<LabeledPoint>& pts, int k, int cap = 60);
// Reports for k = 0..kmax from a single enumeration.
std::vector<OracleReport> oracle_kmm_upto(const std::vector<LabeledPoint>& pts, int kmax, int cap = 60);

}  // namespace sepkit
