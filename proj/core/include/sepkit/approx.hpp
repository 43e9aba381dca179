#pragma once

#include "sepkit/geom.hpp"
#include "sepkit/levels.hpp"
#include "sepkit/lpviol.hpp"

#include <memory>
#include <optional>
#include <vector>

namespace sepkit {

// Line directions split into t wedges.  Wedge w is handled in a frame turned
// clockwise by rotations[w], where its lines have slope in [-tau, tau].  In
// that frame the vertical distance to a line of slope m is the euclidean one
// times sqrt(1 + m²) <= sqrt(1 + tau²) <= 1 + eps.
struct TGon {
  int t = 3;
  Rat eps;
  Rat tau;
  std::vector<Rotation> rotations;
};

// t is the smallest integer >= 3 with 1/cos(pi/t) <= 1 + eps, bumped further
// only if the rational frames fail to cover every direction.
TGon make_tgon(const Rat& eps);  // NonPositiveEps

// Exact cover check: every line direction lies within slope tau of a frame.
bool covers_all_directions(const TGon& g);

struct DeltaCandidate {
  PointR2 q;
  Rat err;
  int mis = 0;
};

// Decision structure for one wedge and orientation, in the wedge's frame.
// A dual point is admissible when it lies in the slab |x| <= tau, has at
// most k violations and is not at `forbidden_x` (the slope that is vertical
// back in the input frame).
class DeltaContext {
 public:
  DeltaContext(ConstraintSet cs, int k, Rat tau, std::optional<Rat> forbidden_x = std::nullopt);

  // An admissible point with vertical error <= delta, the one of least error
  // among those examined; empty when none exists.
  std::optional<PointR2> decide(const Rat& delta) const;

  // Best admissible crossing of a red and a blue chain (or of a chain with
  // the left slab wall); empty when the wedge has no admissible point.
  const std::optional<DeltaCandidate>& p_min() const { return p_min_; }

  Rat vertical_error(const PointR2& q) const;
  bool admissible(const PointR2& q) const;
  const ConstraintSet& constraints() const { return cs_; }
  const Rat& tau() const { return tau_; }
  long decisions() const { return decisions_; }

 private:
  ConstraintSet cs_;
  int k_;
  Rat tau_;
  std::optional<Rat> forbidden_;
  ChainSet red_, blue_;          // chains covering the <=k levels
  ChainSet red_env_, blue_env_;  // lowest red line, highest blue line
  std::vector<DeltaCandidate> fixed_;  // admissible, by error
  std::optional<DeltaCandidate> p_min_;
  mutable long decisions_ = 0;

  void offer(std::vector<DeltaCandidate>& out, const PointR2& q) const;
};

struct WedgeSolution {
  bool feasible = false;
  bool pruned = false;  // could not reach the cutoff
  Rat delta;
  PointR2 point;
  long decisions = 0;
};

// Smallest error in the wedge up to a relative tolerance: decide(delta)
// succeeds and decide(delta / (1 + tol)) fails, or delta is 0.  With a
// cutoff, gives up early when decide(cutoff) fails.
WedgeSolution solve_wedge(const DeltaContext& ctx, const Rat& tol, const std::optional<Rat>& cutoff = std::nullopt);

Rat default_tol();  // 1e-12

struct ApproxReport {
  std::optional<Separator> separator;
  int mis = 0;
  Rat approx_err;  // vertical error in the chosen frame
  Rat euclid_max_sq;
  Rat eps, tol, tau;
  int t = 0;
  int wedge = -1;
  Orientation frame_orientation = Orientation::BlueAbove;
  PointR2 dual;  // in the chosen frame
  int k_min = 0;
  long decisions = 0;
  long wedges_pruned = 0;
};

// Best over all wedges and both orientations.  k is clamped to [0, n];
// EmptyColor when a color is missing, NonPositiveEps for eps <= 0.
ApproxReport solve_approx(const std::vector<LabeledPoint>& pts, int k, const Rat& eps,
                          const Rat& tol = default_tol());

// Per-frame pieces shared with the dynamic solver.
std::vector<LabeledPoint> to_frame(const std::vector<LabeledPoint>& pts, const Rotation& rot);
std::optional<Rat> vertical_slope_in_frame(const Rotation& rot);
Separator from_frame(const PointR2& dual, Orientation frame_o, const Rotation& rot);
// Every wedge and orientation for a budget k >= k_min.
ApproxReport solve_frames(const std::vector<LabeledPoint>& pts, int k, const TGon& g, const Rat& tol, int k_min);

// Semi-online version: points carry the update index of their deletion.
struct DynPoint {
  LabeledPoint point;
  std::optional<long> delete_at;
};

class DynApprox {
 public:
  DynApprox(const std::vector<DynPoint>& initial, int k, const Rat& eps, const Rat& tol = default_tol());
  ~DynApprox();
  DynApprox(const DynApprox&) = delete;
  DynApprox& operator=(const DynApprox&) = delete;

  const ApproxReport& insert(const DynPoint& p);  // ScheduleViolation, GeneralPosition
  const ApproxReport& erase(int id);              // UnknownId, ScheduleViolation
  const ApproxReport& report() const { return report_; }
  std::vector<LabeledPoint> live() const;
  long update_index() const;
  long contexts_built() const { return built_; }

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
  ApproxReport report_;
  long built_ = 0;
  void refresh();
};

}  // namespace sepkit
