#pragma once

#include "sepkit/geom.hpp"

#include <optional>
#include <unordered_map>
#include <vector>

namespace sepkit {

// How a node's points are split between its two children.
//  Median: alternate x and y median cuts (kd-style).
//  Unbalanced: peel off a single point per level; slow, for testing only.
enum class Partitioner { Median, Unbalanced };

struct CountedPoint {
  PointR2 p;
  int count = 0;
  int id = 0;
};

// Points with integer counters.  Every node keeps a pending increment for
// its whole subtree and the smallest counter below it, so halfplane
// increments touch only the nodes whose box the line crosses.
class PartitionTree {
 public:
  PartitionTree(std::vector<CountedPoint> pts, Partitioner part);

  // Adds delta to every live point strictly above (or strictly below) l.
  // Returns the number of nodes visited.
  long halfplane_add(const LineR2& l, bool above, int delta);
  void erase(int slot);

  struct Hit {
    int id = 0;
    PointR2 p;
    int count = 0;
  };
  // Lexicographically smallest (x, y) live point with count <= k.
  std::optional<Hit> leftmost_at_most(int k) const;
  std::optional<int> min_count() const;

  std::size_t size() const { return pts_.size(); }
  std::size_t live() const { return live_; }
  int count_of(int slot) const;
  bool is_live(int slot) const { return !dead_[static_cast<std::size_t>(slot)]; }
  const CountedPoint& point(int slot) const { return pts_[static_cast<std::size_t>(slot)]; }
  // Live points with their current counters.
  std::vector<CountedPoint> materialize() const;
  // Recomputes every node minimum from scratch and compares.
  bool audit() const;
  int depth() const;

 private:
  struct Node {
    Rat x0, x1, y0, y1;
    int left = -1, right = -1, parent = -1;
    int lo = 0, hi = 0;  // slot range in order_
    int buf = 0;
    std::optional<int> min;  // smallest counter below, excluding buf of this node and above
  };
  std::vector<CountedPoint> pts_;  // count is the leaf-level part
  std::vector<char> dead_;
  std::vector<int> order_, leaf_of_;
  std::vector<Node> nodes_;
  std::size_t live_ = 0;

  int build(int lo, int hi, int depth, int parent, Partitioner part);
  void pull(int u);
  long add_rec(int u, const LineR2& l, bool above, int delta);
  int acc_above(int u) const;  // sum of buffers of u and its ancestors
};

// Logarithmic method: trees of geometrically growing sizes; a new batch
// merges with every tree not larger than it.
class PartitionForest {
 public:
  explicit PartitionForest(Partitioner part = Partitioner::Median) : part_(part) {}

  void add(std::vector<CountedPoint> pts);
  long halfplane_add(const LineR2& l, bool above, int delta);
  void erase(int id);  // no-op for unknown ids
  std::optional<PartitionTree::Hit> leftmost_at_most(int k) const;
  std::optional<int> min_count() const;
  std::optional<int> count_of(int id) const;
  std::size_t live() const;
  std::size_t trees() const { return trees_.size(); }
  bool audit() const;
  void clear();

 private:
  Partitioner part_;
  std::vector<PartitionTree> trees_;
  std::unordered_map<int, std::pair<int, int>> where_;  // id -> (tree, slot)
  std::size_t erased_ = 0;
  void reindex();
  void compact();
};

}  // namespace sepkit
