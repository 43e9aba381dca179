#pragma once

#include "sepkit/geom.hpp"

#include <cstdint>
#include <memory>
#include <optional>
#include <random>
#include <unordered_map>
#include <vector>

namespace sepkit {

struct HullVertex {
  PointR2 p;
  int id = 0;
};

// Upper and lower hull chains, left to right.  x-coordinates must be
// distinct; collinear middle points are dropped.
struct HullChains {
  std::vector<HullVertex> upper, lower;
  // Counter-clockwise polygon (one or two vertices when degenerate).
  std::vector<HullVertex> polygon() const;
};

HullChains convex_hull(std::vector<HullVertex> pts);

// Fully dynamic convex hull.  A treap keyed by x stores at every node the
// hull chains of its subtree; a parent's chain is spliced from its
// children's chains at the bridge.  Chains are persistent balanced
// sequences, so splicing copies O(log n) nodes and leaves the children's
// chains intact.
class DynHull {
 public:
  explicit DynHull(std::uint64_t seed = 0x5eed);

  void insert(const PointR2& p, int id);  // DuplicateCoordinate on a repeated x or id
  void erase(int id);                     // UnknownId
  bool contains(int id) const { return by_id_.count(id) != 0; }
  std::size_t size() const { return by_id_.size(); }

  HullChains chains() const;
  int height() const;

  struct Seq;  // persistent sequence node
  using SeqPtr = std::shared_ptr<const Seq>;

 private:
  struct Node {
    HullVertex v;
    std::uint32_t prio = 0;
    int left = -1, right = -1;
    SeqPtr upper, lower;
  };
  std::vector<Node> nodes_;
  std::vector<int> free_;
  int root_ = -1;
  std::unordered_map<int, Rat> by_id_;
  std::mt19937 rng_;

  void pull(int u);
  void split(int u, const Rat& x, int& l, int& r);  // l: keys < x
  int merge(int a, int b);
  int remove(int u, const Rat& x);
  int height(int u) const;
};

enum class StripStatus { Separable, NotSeparable, EmptySide };
const char* strip_status_name(StripStatus s);

struct StripResult {
  StripStatus status = StripStatus::NotSeparable;
  // Middle line of the widest empty strip, perpendicular to the witness
  // segment; `separator` is empty when that line is vertical.
  GeneralLine middle;
  std::optional<Separator> separator;
  Rat width_sq;
  PointR2 red_point, blue_point;      // closest points of the two hulls
  std::vector<int> red_ids, blue_ids;  // hull vertices spanning them
  bool same_value(const StripResult& o) const;
};

// Strip between two hull polygons (counter-clockwise, possibly degenerate).
StripResult strip_between(const std::vector<HullVertex>& red, const std::vector<HullVertex>& blue);
StripResult max_margin_static(const std::vector<LabeledPoint>& pts);

// Hulls of both colors under insertions and deletions.
class DynMargin {
 public:
  DynMargin() = default;
  explicit DynMargin(const std::vector<LabeledPoint>& pts);
  StripResult insert(const LabeledPoint& p);  // DuplicateCoordinate
  StripResult erase(int id);                  // UnknownId
  StripResult result() const;
  const DynHull& hull(Color c) const { return c == Color::Red ? red_ : blue_; }
  std::size_t size() const { return red_.size() + blue_.size(); }

 private:
  DynHull red_{0x7ed}, blue_{0xb1e};
};

}  // namespace sepkit
