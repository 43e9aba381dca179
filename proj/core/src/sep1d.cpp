#include "sepkit/sep1d.hpp"

#include "sepkit/errors.hpp"

#include <algorithm>
#include <functional>

namespace sepkit {

bool operator==(const Result1D& a, const Result1D& b) {
  return a.separator_x == b.separator_x && a.mis == b.mis && a.max_dist == b.max_dist &&
         a.orientation == b.orientation;
}

namespace {

// Color that is misclassified right of the separator under o.
Color right_bad(Orientation o) { return o == Orientation::BlueAbove ? Color::Red : Color::Blue; }

}  // namespace

int mis_1d(const std::vector<Point1D>& pts, const Rat& s, Orientation o) {
  Color rb = right_bad(o);
  int n = 0;
  for (const auto& p : pts) {
    if (p.x > s && p.color == rb) ++n;
    if (p.x < s && p.color != rb) ++n;
  }
  return n;
}

Rat max_dist_1d(const std::vector<Point1D>& pts, const Rat& s, Orientation o) {
  Color rb = right_bad(o);
  Rat best = 0;
  for (const auto& p : pts) {
    bool bad = (p.x > s && p.color == rb) || (p.x < s && p.color != rb);
    if (bad) best = std::max(best, abs_rat(p.x - s));
  }
  return best;
}

Tree1D::Tree1D(std::uint64_t seed) : rng_(static_cast<std::uint32_t>(seed)) {}

void Tree1D::pull(int u) {
  Node& n = nodes_[u];
  const int v = n.left, w = n.right;
  const int pc = ci(n.color);
  for (int c = 0; c < 2; ++c) n.cnt[c] = cnt(v, c) + cnt(w, c) + (pc == c ? 1 : 0);
  for (int o = 0; o < 2; ++o) {
    const int rb = o, lb = 1 - o;
    int through_left = best(v, o) + cnt(w, rb) + (pc == rb ? 1 : 0);
    int through_right = best(w, o) + cnt(v, lb) + (pc == lb ? 1 : 0);
    int at_point = cnt(v, lb) + cnt(w, rb);
    n.best[o] = std::min({through_left, through_right, at_point});
  }
}

int Tree1D::alloc(const Point1D& p) {
  Node n{p.x, p.color, p.id, static_cast<std::uint32_t>(rng_())};
  int u;
  if (!free_.empty()) {
    u = free_.back();
    free_.pop_back();
    nodes_[u] = n;
  } else {
    u = static_cast<int>(nodes_.size());
    nodes_.push_back(n);
  }
  pull(u);
  return u;
}

void Tree1D::split(int u, const Rat& x, int& l, int& r) {
  if (u < 0) {
    l = r = -1;
    return;
  }
  if (nodes_[u].x < x) {
    split(nodes_[u].right, x, nodes_[u].right, r);
    l = u;
  } else {
    split(nodes_[u].left, x, l, nodes_[u].left);
    r = u;
  }
  pull(u);
}

int Tree1D::merge(int a, int b) {
  if (a < 0) return b;
  if (b < 0) return a;
  if (nodes_[a].prio > nodes_[b].prio) {
    nodes_[a].right = merge(nodes_[a].right, b);
    pull(a);
    return a;
  }
  nodes_[b].left = merge(a, nodes_[b].left);
  pull(b);
  return b;
}

void Tree1D::insert(const Point1D& p) {
  if (by_id_.count(p.id)) throw DuplicateCoordinate("id " + std::to_string(p.id) + " already present");
  int l, r;
  split(root_, p.x, l, r);
  // r starts with the smallest key >= p.x
  int u = r;
  while (u >= 0 && nodes_[u].left >= 0) u = nodes_[u].left;
  if (u >= 0 && nodes_[u].x == p.x) {
    root_ = merge(l, r);
    throw DuplicateCoordinate("coordinate " + rat_str(p.x) + " already present");
  }
  root_ = merge(merge(l, alloc(p)), r);
  by_id_.emplace(p.id, p.x);
}

void Tree1D::erase(int id) {
  auto it = by_id_.find(id);
  if (it == by_id_.end()) throw UnknownId("unknown id " + std::to_string(id));
  Rat x = it->second;
  by_id_.erase(it);
  int l, mid;
  split(root_, x, l, mid);
  // the minimum of mid is the node with key x
  std::vector<int> spine;  // ancestors of the minimum, top down
  int u = mid;
  while (nodes_[u].left >= 0) {
    spine.push_back(u);
    u = nodes_[u].left;
  }
  if (spine.empty()) {
    mid = nodes_[u].right;
  } else {
    nodes_[spine.back()].left = nodes_[u].right;
    for (auto itv = spine.rbegin(); itv != spine.rend(); ++itv) pull(*itv);
  }
  free_.push_back(u);
  root_ = merge(l, mid);
}

int Tree1D::min_mis(Orientation o) const { return best(root_, oi(o)); }

int Tree1D::min_mis() const { return std::min(min_mis(Orientation::BlueAbove), min_mis(Orientation::RedAbove)); }

int Tree1D::mis_at(const Rat& s, Orientation o) const {
  const int rb = oi(o), lb = 1 - rb;
  int total = 0, u = root_;
  while (u >= 0) {
    const Node& n = nodes_[u];
    if (n.x < s) {
      total += cnt(n.left, lb) + (ci(n.color) == lb ? 1 : 0);
      u = n.right;
    } else if (n.x > s) {
      total += cnt(n.right, rb) + (ci(n.color) == rb ? 1 : 0);
      u = n.left;
    } else {
      total += cnt(n.left, lb) + cnt(n.right, rb);
      u = -1;
    }
  }
  return total;
}

std::optional<Rat> Tree1D::rightmost_valid(int u, const Rat& bound, int ext_right, int ext_left, bool contained,
                                           int o, int k) const {
  if (u < 0) return std::nullopt;
  if (contained && best(u, o) + ext_right + ext_left > k) return std::nullopt;
  const int rb = o, lb = 1 - o;
  const Node& n = nodes_[u];
  const int pc = ci(n.color);
  if (!contained && n.x >= bound)
    return rightmost_valid(n.left, bound, ext_right + cnt(n.right, rb) + (pc == rb), ext_left, false, o, k);
  if (auto r = rightmost_valid(n.right, bound, ext_right, ext_left + cnt(n.left, lb) + (pc == lb), contained, o, k))
    return r;
  if (ext_right + cnt(n.right, rb) + ext_left + cnt(n.left, lb) <= k) return n.x;
  return rightmost_valid(n.left, bound, ext_right + cnt(n.right, rb) + (pc == rb), ext_left, true, o, k);
}

std::optional<Rat> Tree1D::leftmost_valid(int u, const Rat& bound, int ext_right, int ext_left, bool contained, int o,
                                          int k) const {
  if (u < 0) return std::nullopt;
  if (contained && best(u, o) + ext_right + ext_left > k) return std::nullopt;
  const int rb = o, lb = 1 - o;
  const Node& n = nodes_[u];
  const int pc = ci(n.color);
  if (!contained && n.x <= bound)
    return leftmost_valid(n.right, bound, ext_right, ext_left + cnt(n.left, lb) + (pc == lb), false, o, k);
  if (auto r = leftmost_valid(n.left, bound, ext_right + cnt(n.right, rb) + (pc == rb), ext_left, contained, o, k))
    return r;
  if (ext_right + cnt(n.right, rb) + ext_left + cnt(n.left, lb) <= k) return n.x;
  return leftmost_valid(n.right, bound, ext_right, ext_left + cnt(n.left, lb) + (pc == lb), true, o, k);
}

namespace {

// Extremes of a color among the live points, found by walking the tree.
template <class Nodes>
std::optional<Rat> extreme(const Nodes& nodes, int root, int color, bool want_max) {
  int u = root;
  std::optional<Rat> out;
  while (u >= 0) {
    const auto& n = nodes[u];
    int near = want_max ? n.right : n.left;
    int far = want_max ? n.left : n.right;
    if (near >= 0 && nodes[near].cnt[color] > 0) {
      u = near;
      continue;
    }
    if ((n.color == Color::Red ? 0 : 1) == color) return n.x;
    if (far >= 0 && nodes[far].cnt[color] > 0) {
      u = far;
      continue;
    }
    return out;
  }
  return out;
}

}  // namespace

Tree1D::Unbudgeted Tree1D::unbudgeted(Orientation o) const {
  const int rb = oi(o), lb = 1 - rb;
  auto max_rb = extreme(nodes_, root_, rb, true);
  auto min_lb = extreme(nodes_, root_, lb, false);
  Unbudgeted u;
  if (max_rb && min_lb && *max_rb > *min_lb) {
    u.s = (*max_rb + *min_lb) / 2;
    u.value = (*max_rb - *min_lb) / 2;
    return u;
  }
  u.separable = true;
  u.value = 0;
  if (max_rb)
    u.s = *max_rb;
  else if (min_lb)
    u.s = *min_lb;
  else
    u.s = 0;
  return u;
}

std::optional<Result1D> Tree1D::query_orientation(Orientation o, int k) const {
  const int oo = oi(o);
  if (best(root_, oo) > k) return std::nullopt;
  Unbudgeted ub = unbudgeted(o);
  Result1D res;
  res.orientation = o;
  if (ub.separable || mis_at(ub.s, o) <= k) {
    res.separator_x = ub.s;
    res.max_dist = ub.value;
    res.mis = mis_at(ub.s, o);
    return res;
  }
  const int rb = oo, lb = 1 - oo;
  Rat max_rb = *extreme(nodes_, root_, rb, true);
  Rat min_lb = *extreme(nodes_, root_, lb, false);
  auto left = rightmost_valid(root_, ub.s, 0, 0, false, oo, k);
  auto right = leftmost_valid(root_, ub.s, 0, 0, false, oo, k);
  if (!left && !right) throw InvariantError("sep1d: root reports a valid separator but none was found");
  std::optional<Rat> lv, rv;
  if (left) lv = max_rb - *left;
  if (right) rv = *right - min_lb;
  if (left && (!right || *lv <= *rv)) {
    res.separator_x = *left;
    res.max_dist = *lv;
  } else {
    res.separator_x = *right;
    res.max_dist = *rv;
  }
  res.mis = mis_at(*res.separator_x, o);
  return res;
}

Result1D Tree1D::query(int k) const {
  if (k < 0) k = -1;
  if (root_ < 0) {
    Result1D r;
    if (k >= 0) {
      r.separator_x = Rat(0);
      r.max_dist = 0;
    }
    return r;
  }
  auto a = query_orientation(Orientation::BlueAbove, k);
  auto b = query_orientation(Orientation::RedAbove, k);
  if (!a && !b) {
    Result1D none;
    none.max_dist = 0;
    return none;
  }
  if (!b) return *a;
  if (!a) return *b;
  if (b->max_dist < a->max_dist || (b->max_dist == a->max_dist && *b->separator_x < *a->separator_x)) return *b;
  return *a;
}

int Tree1D::height(int u) const {
  if (u < 0) return 0;
  return 1 + std::max(height(nodes_[u].left), height(nodes_[u].right));
}

int Tree1D::height() const { return height(root_); }

void Tree1D::collect(int u, std::vector<int>& out) const {
  if (u < 0) return;
  collect(nodes_[u].left, out);
  out.push_back(u);
  collect(nodes_[u].right, out);
}

std::vector<Point1D> Tree1D::points() const {
  std::vector<int> idx;
  collect(root_, idx);
  std::vector<Point1D> out;
  for (int u : idx) out.push_back(Point1D{nodes_[u].x, nodes_[u].color, nodes_[u].id});
  return out;
}

bool Tree1D::audit() const {
  bool ok = true;
  std::function<void(int)> visit = [&](int u) {
    if (u < 0) return;
    visit(nodes_[u].left);
    visit(nodes_[u].right);
    std::vector<int> idx;
    collect(u, idx);
    int c[2] = {0, 0};
    std::vector<Point1D> pts;
    for (int v : idx) {
      ++c[ci(nodes_[v].color)];
      pts.push_back(Point1D{nodes_[v].x, nodes_[v].color, nodes_[v].id});
    }
    if (c[0] != nodes_[u].cnt[0] || c[1] != nodes_[u].cnt[1]) ok = false;
    for (Orientation o : {Orientation::BlueAbove, Orientation::RedAbove}) {
      // positions: each point, each gap, and both ends
      int bestv = mis_1d(pts, pts.front().x - 1, o);
      for (std::size_t i = 0; i < pts.size(); ++i) {
        bestv = std::min(bestv, mis_1d(pts, pts[i].x, o));
        Rat next = i + 1 < pts.size() ? Rat((pts[i].x + pts[i + 1].x) / 2) : Rat(pts[i].x + 1);
        bestv = std::min(bestv, mis_1d(pts, next, o));
      }
      if (bestv != nodes_[u].best[oi(o)]) ok = false;
    }
    if (nodes_[u].left >= 0 && !(nodes_[nodes_[u].left].x < nodes_[u].x)) ok = false;
    if (nodes_[u].right >= 0 && !(nodes_[u].x < nodes_[nodes_[u].right].x)) ok = false;
  };
  visit(root_);
  return ok;
}

Tree1D build_1d(const std::vector<Point1D>& pts) {
  Tree1D t;
  for (const auto& p : pts) t.insert(p);
  return t;
}

}  // namespace sepkit
