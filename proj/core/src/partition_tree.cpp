#include "sepkit/partition_tree.hpp"

#include <algorithm>
#include <numeric>

namespace sepkit {

namespace {

constexpr int kLeaf = 4;

std::optional<int> plus(const std::optional<int>& a, int b) {
  if (!a) return std::nullopt;
  return *a + b;
}

std::optional<int> min_opt(const std::optional<int>& a, const std::optional<int>& b) {
  if (!a) return b;
  if (!b) return a;
  return std::min(*a, *b);
}

bool lex_less(const PointR2& a, const PointR2& b) { return a.x != b.x ? a.x < b.x : a.y < b.y; }

}  // namespace

PartitionTree::PartitionTree(std::vector<CountedPoint> pts, Partitioner part) : pts_(std::move(pts)) {
  dead_.assign(pts_.size(), 0);
  order_.resize(pts_.size());
  std::iota(order_.begin(), order_.end(), 0);
  leaf_of_.assign(pts_.size(), -1);
  live_ = pts_.size();
  if (!pts_.empty()) build(0, static_cast<int>(pts_.size()), 0, -1, part);
}

int PartitionTree::build(int lo, int hi, int depth, int parent, Partitioner part) {
  const int u = static_cast<int>(nodes_.size());
  nodes_.emplace_back();
  {
    Node& n = nodes_.back();
    n.parent = parent;
    n.lo = lo;
    n.hi = hi;
    const PointR2& f = pts_[static_cast<std::size_t>(order_[static_cast<std::size_t>(lo)])].p;
    n.x0 = n.x1 = f.x;
    n.y0 = n.y1 = f.y;
    for (int i = lo + 1; i < hi; ++i) {
      const PointR2& p = pts_[static_cast<std::size_t>(order_[static_cast<std::size_t>(i)])].p;
      if (p.x < n.x0) n.x0 = p.x;
      if (p.x > n.x1) n.x1 = p.x;
      if (p.y < n.y0) n.y0 = p.y;
      if (p.y > n.y1) n.y1 = p.y;
    }
  }
  if (hi - lo <= kLeaf) {
    for (int i = lo; i < hi; ++i) leaf_of_[static_cast<std::size_t>(order_[static_cast<std::size_t>(i)])] = u;
    pull(u);
    return u;
  }
  auto first = order_.begin() + lo, last = order_.begin() + hi;
  auto by_x = [&](int a, int b) {
    return lex_less(pts_[static_cast<std::size_t>(a)].p, pts_[static_cast<std::size_t>(b)].p);
  };
  auto by_y = [&](int a, int b) {
    const PointR2& p = pts_[static_cast<std::size_t>(a)].p;
    const PointR2& q = pts_[static_cast<std::size_t>(b)].p;
    return p.y != q.y ? p.y < q.y : p.x < q.x;
  };
  int mid;
  if (part == Partitioner::Median) {
    mid = lo + (hi - lo) / 2;
    if (depth % 2 == 0)
      std::nth_element(first, order_.begin() + mid, last, by_x);
    else
      std::nth_element(first, order_.begin() + mid, last, by_y);
  } else {
    mid = lo + 1;
    std::iter_swap(first, std::max_element(first, last, by_x));
  }
  int l = build(lo, mid, depth + 1, u, part);
  int r = build(mid, hi, depth + 1, u, part);
  nodes_[static_cast<std::size_t>(u)].left = l;
  nodes_[static_cast<std::size_t>(u)].right = r;
  pull(u);
  return u;
}

void PartitionTree::pull(int u) {
  Node& n = nodes_[static_cast<std::size_t>(u)];
  if (n.left < 0) {
    std::optional<int> m;
    for (int i = n.lo; i < n.hi; ++i) {
      int s = order_[static_cast<std::size_t>(i)];
      if (!dead_[static_cast<std::size_t>(s)]) m = min_opt(m, pts_[static_cast<std::size_t>(s)].count);
    }
    n.min = m;
    return;
  }
  const Node& a = nodes_[static_cast<std::size_t>(n.left)];
  const Node& b = nodes_[static_cast<std::size_t>(n.right)];
  n.min = min_opt(plus(a.min, a.buf), plus(b.min, b.buf));
}

long PartitionTree::add_rec(int u, const LineR2& l, bool above, int delta) {
  Node& n = nodes_[static_cast<std::size_t>(u)];
  const Rat a = l.at(n.x0), b = l.at(n.x1);
  const Rat& lmax = a < b ? b : a;
  const Rat& lmin = a < b ? a : b;
  const bool all = above ? n.y0 > lmax : n.y1 < lmin;
  const bool none = above ? n.y1 <= lmin : n.y0 >= lmax;
  if (none) return 1;
  if (all) {
    n.buf += delta;
    return 1;
  }
  long visits = 1;
  if (n.left < 0) {
    for (int i = n.lo; i < n.hi; ++i) {
      CountedPoint& p = pts_[static_cast<std::size_t>(order_[static_cast<std::size_t>(i)])];
      Rat v = l.at(p.p.x);
      if (above ? p.p.y > v : p.p.y < v) p.count += delta;
    }
  } else {
    const int left = n.left, right = n.right;
    visits += add_rec(left, l, above, delta);
    visits += add_rec(right, l, above, delta);
  }
  pull(u);
  return visits;
}

long PartitionTree::halfplane_add(const LineR2& l, bool above, int delta) {
  if (nodes_.empty()) return 0;
  return add_rec(0, l, above, delta);
}

void PartitionTree::erase(int slot) {
  if (dead_[static_cast<std::size_t>(slot)]) return;
  dead_[static_cast<std::size_t>(slot)] = 1;
  --live_;
  for (int u = leaf_of_[static_cast<std::size_t>(slot)]; u >= 0; u = nodes_[static_cast<std::size_t>(u)].parent) pull(u);
}

int PartitionTree::acc_above(int u) const {
  int s = 0;
  for (; u >= 0; u = nodes_[static_cast<std::size_t>(u)].parent) s += nodes_[static_cast<std::size_t>(u)].buf;
  return s;
}

int PartitionTree::count_of(int slot) const {
  return pts_[static_cast<std::size_t>(slot)].count + acc_above(leaf_of_[static_cast<std::size_t>(slot)]);
}

std::optional<int> PartitionTree::min_count() const {
  if (nodes_.empty()) return std::nullopt;
  return plus(nodes_[0].min, nodes_[0].buf);
}

std::optional<PartitionTree::Hit> PartitionTree::leftmost_at_most(int k) const {
  std::optional<Hit> best;
  if (nodes_.empty()) return best;
  auto worse_box = [&](const Node& n) {
    return best && (n.x0 > best->p.x || (n.x0 == best->p.x && n.y0 > best->p.y));
  };
  auto rec = [&](auto&& self, int u, int acc) -> void {
    const Node& n = nodes_[static_cast<std::size_t>(u)];
    if (!n.min || *n.min + acc > k || worse_box(n)) return;
    if (n.left < 0) {
      for (int i = n.lo; i < n.hi; ++i) {
        int s = order_[static_cast<std::size_t>(i)];
        if (dead_[static_cast<std::size_t>(s)]) continue;
        const CountedPoint& p = pts_[static_cast<std::size_t>(s)];
        int c = p.count + acc;
        if (c > k) continue;
        if (!best || lex_less(p.p, best->p)) best = Hit{p.id, p.p, c};
      }
      return;
    }
    const Node& a = nodes_[static_cast<std::size_t>(n.left)];
    const Node& b = nodes_[static_cast<std::size_t>(n.right)];
    // nearer box first
    bool left_first = !(b.x0 < a.x0 || (b.x0 == a.x0 && b.y0 < a.y0));
    int first = left_first ? n.left : n.right, second = left_first ? n.right : n.left;
    self(self, first, acc + nodes_[static_cast<std::size_t>(first)].buf);
    self(self, second, acc + nodes_[static_cast<std::size_t>(second)].buf);
  };
  rec(rec, 0, nodes_[0].buf);
  return best;
}

std::vector<CountedPoint> PartitionTree::materialize() const {
  std::vector<CountedPoint> out;
  out.reserve(live_);
  for (std::size_t s = 0; s < pts_.size(); ++s)
    if (!dead_[s]) out.push_back(CountedPoint{pts_[s].p, count_of(static_cast<int>(s)), pts_[s].id});
  return out;
}

bool PartitionTree::audit() const {
  for (std::size_t u = 0; u < nodes_.size(); ++u) {
    const Node& n = nodes_[u];
    const int acc = acc_above(static_cast<int>(u));
    std::optional<int> m;
    for (int i = n.lo; i < n.hi; ++i) {
      int s = order_[static_cast<std::size_t>(i)];
      if (!dead_[static_cast<std::size_t>(s)]) m = min_opt(m, count_of(s) - acc);
    }
    if (m != n.min) return false;
  }
  return true;
}

int PartitionTree::depth() const {
  int best = 0;
  for (std::size_t s = 0; s < pts_.size(); ++s) {
    int d = 0;
    for (int u = leaf_of_[s]; u >= 0; u = nodes_[static_cast<std::size_t>(u)].parent) ++d;
    best = std::max(best, d);
  }
  return best;
}

// ------------------------------------------------------------ forest

void PartitionForest::reindex() {
  where_.clear();
  for (std::size_t t = 0; t < trees_.size(); ++t)
    for (std::size_t s = 0; s < trees_[t].size(); ++s)
      if (trees_[t].is_live(static_cast<int>(s)))
        where_[trees_[t].point(static_cast<int>(s)).id] = {static_cast<int>(t), static_cast<int>(s)};
}

void PartitionForest::add(std::vector<CountedPoint> pts) {
  if (pts.empty()) return;
  while (!trees_.empty() && trees_.back().live() <= pts.size()) {
    auto more = trees_.back().materialize();
    pts.insert(pts.end(), more.begin(), more.end());
    erased_ -= std::min(erased_, trees_.back().size() - trees_.back().live());
    trees_.pop_back();
  }
  trees_.emplace_back(std::move(pts), part_);
  const int t = static_cast<int>(trees_.size()) - 1;
  for (std::size_t s = 0; s < trees_.back().size(); ++s)
    where_[trees_.back().point(static_cast<int>(s)).id] = {t, static_cast<int>(s)};
}

long PartitionForest::halfplane_add(const LineR2& l, bool above, int delta) {
  long v = 0;
  for (auto& t : trees_) v += t.halfplane_add(l, above, delta);
  return v;
}

void PartitionForest::erase(int id) {
  auto it = where_.find(id);
  if (it == where_.end()) return;
  trees_[static_cast<std::size_t>(it->second.first)].erase(it->second.second);
  where_.erase(it);
  ++erased_;
  if (erased_ > 8 && erased_ > live() / 2) compact();
}

void PartitionForest::compact() {
  std::vector<CountedPoint> all;
  for (const auto& t : trees_) {
    auto m = t.materialize();
    all.insert(all.end(), m.begin(), m.end());
  }
  trees_.clear();
  erased_ = 0;
  if (!all.empty()) trees_.emplace_back(std::move(all), part_);
  reindex();
}

std::optional<PartitionTree::Hit> PartitionForest::leftmost_at_most(int k) const {
  std::optional<PartitionTree::Hit> best;
  for (const auto& t : trees_) {
    auto h = t.leftmost_at_most(k);
    if (h && (!best || lex_less(h->p, best->p))) best = h;
  }
  return best;
}

std::optional<int> PartitionForest::min_count() const {
  std::optional<int> m;
  for (const auto& t : trees_) m = min_opt(m, t.min_count());
  return m;
}

std::optional<int> PartitionForest::count_of(int id) const {
  auto it = where_.find(id);
  if (it == where_.end()) return std::nullopt;
  return trees_[static_cast<std::size_t>(it->second.first)].count_of(it->second.second);
}

std::size_t PartitionForest::live() const {
  std::size_t s = 0;
  for (const auto& t : trees_) s += t.live();
  return s;
}

bool PartitionForest::audit() const {
  for (const auto& t : trees_)
    if (!t.audit()) return false;
  return true;
}

void PartitionForest::clear() {
  trees_.clear();
  where_.clear();
  erased_ = 0;
}

}  // namespace sepkit
