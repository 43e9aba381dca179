#pragma once

#include "sepkit/geom.hpp"

#include <cstdint>
#include <optional>
#include <random>
#include <unordered_map>
#include <vector>

namespace sepkit {

// In one dimension BlueAbove means blue points belong right of the
// separator and red points left of it; RedAbove is the mirror.
struct Point1D {
  Rat x;
  Color color = Color::Red;
  int id = 0;
};

struct Result1D {
  std::optional<Rat> separator_x;  // empty when no separator meets the budget
  int mis = 0;
  Rat max_dist;
  Orientation orientation = Orientation::BlueAbove;
};

bool operator==(const Result1D& a, const Result1D& b);

// Misclassification count of a separator at s (points at s are correct).
int mis_1d(const std::vector<Point1D>& pts, const Rat& s, Orientation o);
Rat max_dist_1d(const std::vector<Point1D>& pts, const Rat& s, Orientation o);

// Balanced (treap) search tree over the live points. Each node keeps the
// per-color counts of its subtree and, per orientation, the fewest
// misclassifications any separator achieves when only that subtree counts.
class Tree1D {
 public:
  explicit Tree1D(std::uint64_t seed = 0x51de);

  void insert(const Point1D& p);  // DuplicateCoordinate on clash of x or id
  void erase(int id);             // UnknownId
  Result1D query(int k) const;

  std::size_t size() const { return by_id_.size(); }
  int min_mis() const;
  int min_mis(Orientation o) const;
  int mis_at(const Rat& s, Orientation o) const;

  // The separator minimizing the farthest error when every point may be
  // misclassified, and its count.
  struct Unbudgeted {
    Rat s;
    Rat value;
    bool separable = false;
  };
  Unbudgeted unbudgeted(Orientation o) const;

  // Test hooks.
  int height() const;
  bool audit() const;  // recomputes every annotation by brute force
  std::vector<Point1D> points() const;

 private:
  struct Node {
    Rat x;
    Color color;
    int id;
    std::uint32_t prio;
    int left = -1, right = -1;
    int cnt[2] = {0, 0};  // indexed by color
    int best[2] = {0, 0};  // indexed by orientation
  };

  static int ci(Color c) { return c == Color::Red ? 0 : 1; }
  static int oi(Orientation o) { return o == Orientation::BlueAbove ? 0 : 1; }
  int cnt(int u, int c) const { return u < 0 ? 0 : nodes_[u].cnt[c]; }
  int best(int u, int o) const { return u < 0 ? 0 : nodes_[u].best[o]; }
  void pull(int u);
  int alloc(const Point1D& p);
  void split(int u, const Rat& x, int& l, int& r);  // l: keys < x
  int merge(int a, int b);
  std::optional<Rat> rightmost_valid(int u, const Rat& bound, int ext_right, int ext_left, bool contained, int o,
                                     int k) const;
  std::optional<Rat> leftmost_valid(int u, const Rat& bound, int ext_right, int ext_left, bool contained, int o,
                                    int k) const;
  std::optional<Result1D> query_orientation(Orientation o, int k) const;
  int height(int u) const;
  void collect(int u, std::vector<int>& out) const;

  std::vector<Node> nodes_;
  std::vector<int> free_;
  int root_ = -1;
  std::unordered_map<int, Rat> by_id_;
  std::mt19937 rng_;
};

Tree1D build_1d(const std::vector<Point1D>& pts);

}  // namespace sepkit
