#pragma once

#include "sepkit/geom.hpp"
#include "sepkit/levels.hpp"
#include "sepkit/partition_tree.hpp"

#include <ext/pb_ds/assoc_container.hpp>
#include <ext/pb_ds/tree_policy.hpp>

#include <map>
#include <memory>
#include <optional>
#include <unordered_map>
#include <utility>
#include <vector>

namespace sepkit {

// A point q violates a red line when it lies strictly above it and a blue
// line when it lies strictly below it.  The objective is the leftmost point.
struct ConstraintLine {
  LineR2 line;
  int id = 0;
};

struct ConstraintSet {
  std::vector<ConstraintLine> red, blue;
  std::size_t size() const { return red.size() + blue.size(); }
};

// Dual constraints of a labeled point set: a dual point is a separator with
// orientation o and its violation count is that separator's Mis.
ConstraintSet dual_constraints(const std::vector<LabeledPoint>& pts, Orientation o);

enum class LPStatus { Feasible, Unbounded, Infeasible };
enum class UnboundedReason { None, Left, EmptySide };

struct LPResult {
  LPStatus status = LPStatus::Infeasible;
  PointR2 point;       // Feasible only
  int violations = 0;  // Feasible only
  UnboundedReason reason = UnboundedReason::None;

  static LPResult feasible(PointR2 p, int v) { return {LPStatus::Feasible, std::move(p), v, UnboundedReason::None}; }
  static LPResult unbounded(UnboundedReason r) { return {LPStatus::Unbounded, {}, 0, r}; }
  static LPResult infeasible() { return {}; }
  bool operator==(const LPResult& o) const;
};

const char* status_name(LPStatus s);
const char* reason_name(UnboundedReason r);

int violations_at(const ConstraintSet& cs, const PointR2& q);

// ------------------------------------------------------------ chain tools

// Closed x-range where a concave red chain is on or above a convex blue
// chain.  Their difference is concave, so the range is an interval.
struct ChainInterval {
  bool empty = true;
  bool lo_inf = false, hi_inf = false;
  Rat lo, hi;
  bool contains(const Rat& x) const;
};

ChainInterval red_over_blue(const ChainSet& red, std::size_t i, const ChainSet& blue, std::size_t j);

// For one chain: the intervals induced by every opposing chain.  An opposing
// chain is strictly on the far side at x exactly when its interval misses x.
class PlyStructure {
 public:
  void insert(const ChainInterval& iv, int tag);
  void erase(const ChainInterval& iv, int tag);
  int outside(const Rat& x) const;
  std::size_t intervals() const { return count_; }
  std::size_t starts() const { return starts_.size(); }
  std::size_t ends() const { return ends_.size(); }

 private:
  using Key = std::pair<Rat, int>;
  using Set = __gnu_pbds::tree<Key, __gnu_pbds::null_type, std::less<Key>, __gnu_pbds::rb_tree_tag,
                               __gnu_pbds::tree_order_statistics_node_update>;
  Set starts_, ends_;  // finite ends only
  int empty_ = 0;
  std::size_t count_ = 0;
};

// ------------------------------------------------------------ static

struct LPStats {
  long chains = 0;
  long candidates = 0;
};

// Throws GeneralPosition when a red line coincides with a blue line.
LPResult static_leftmost_valid(const ConstraintSet& cs, int k, LPStats* stats = nullptr);
std::pair<int, LPResult> static_min_violations(const ConstraintSet& cs);
// Smallest minimum over the sets; 0 when any set lacks a color.
int fewest_violations(const std::vector<ConstraintSet>& sets);

// ------------------------------------------------------------ dynamic

struct DynLine {
  LineR2 line;
  Color color = Color::Red;
  int id = 0;
  std::optional<long> delete_at;  // update index of the promised deletion
};

struct DynOptions {
  int k = 0;                 // largest budget a query may ask for
  bool track_kmin = false;   // pick the working budget from the current k_min
  Partitioner partitioner = Partitioner::Median;
};

struct DynStats {
  long updates = 0;
  long cheap = 0;
  long partial_rebuilds = 0;
  long full_rebuilds = 0;
  long points = 0;  // intersection points currently tracked
  long tree_visits = 0;
};

struct DynLayerInfo {
  int index = 0;
  long created_at = 0;
  long rebuild_by = 0;  // the layer is rebuilt no later than after this update
  std::vector<int> ids;
};

// Leftmost point with at most k violations under semi-online insertions and
// deletions.  Lines live in layers bucketed by promised deletion time, each
// with its own chain decomposition; recent and soon-deleted lines sit in a
// leftover list as single-line chains.  Crossing points of red and blue
// chains carry violation counts kept current by halfplane updates.
class DynLP {
 public:
  DynLP(const std::vector<DynLine>& lines, DynOptions opt);
  ~DynLP();
  DynLP(const DynLP&) = delete;
  DynLP& operator=(const DynLP&) = delete;

  // Returns the id used (a fresh one when `line.id` < 0).
  int insert(DynLine line);
  void erase(int id);  // UnknownId, ScheduleViolation

  LPResult query(int k);
  std::pair<int, LPResult> query_kmin();

  long update_index() const { return u_; }
  int working_k() const { return kw_; }
  int cadence() const { return 1 << x_; }
  std::size_t live() const { return lines_.size(); }
  ConstraintSet live_set() const;
  const DynStats& stats() const { return stats_; }

  // Test hooks.
  std::vector<DynLayerInfo> layers() const;
  std::size_t leftover_size() const;
  bool audit() const;
  std::optional<long> delete_at(int id) const;

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
  std::map<int, DynLine> lines_;
  DynOptions opt_;
  long u_ = 0;
  int kw_ = 0;
  int x_ = 0;
  DynStats stats_;
  int next_id_ = 0;

  void full_rebuild();
  void partial_rebuild(int upto);
  void assign(const std::vector<int>& pool, int upto);
  void after_update();
  void rebuild_points();
};

}  // namespace sepkit
