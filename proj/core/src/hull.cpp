#include "sepkit/hull.hpp"

#include "sepkit/errors.hpp"

#include <algorithm>

namespace sepkit {

std::vector<HullVertex> HullChains::polygon() const {
  // lower runs left to right, upper right to left; the extremes are shared
  std::vector<HullVertex> out(lower.begin(), lower.end());
  for (std::size_t i = upper.size(); i-- > 0;) {
    if (i + 1 == upper.size() || i == 0) continue;
    out.push_back(upper[i]);
  }
  return out;
}

HullChains convex_hull(std::vector<HullVertex> pts) {
  std::sort(pts.begin(), pts.end(), [](const HullVertex& a, const HullVertex& b) {
    return a.p.x != b.p.x ? a.p.x < b.p.x : a.p.y < b.p.y;
  });
  HullChains h;
  auto chain = [&](int sign) {
    std::vector<HullVertex> c;
    for (const auto& v : pts) {
      while (c.size() >= 2 && sign * orient(c[c.size() - 2].p, c.back().p, v.p) >= 0) c.pop_back();
      c.push_back(v);
    }
    return c;
  };
  h.upper = chain(1);
  h.lower = chain(-1);
  return h;
}

// ---- persistent sequences -------------------------------------------------

struct DynHull::Seq {
  HullVertex v;
  std::uint32_t prio;
  int size;
  SeqPtr l, r;
};

namespace {

using SeqPtr = DynHull::SeqPtr;
using Seq = DynHull::Seq;

int sz(const SeqPtr& t) { return t ? t->size : 0; }

SeqPtr make(const HullVertex& v, std::uint32_t prio, SeqPtr l, SeqPtr r) {
  const int s = 1 + sz(l) + sz(r);
  return std::make_shared<const Seq>(Seq{v, prio, s, std::move(l), std::move(r)});
}

std::uint32_t seq_prio(int id) {
  std::uint64_t z = static_cast<std::uint64_t>(static_cast<std::uint32_t>(id)) + 0x9e3779b97f4a7c15ull;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
  return static_cast<std::uint32_t>(z ^ (z >> 31));
}

SeqPtr join(const SeqPtr& a, const SeqPtr& b) {
  if (!a) return b;
  if (!b) return a;
  if (a->prio >= b->prio) return make(a->v, a->prio, a->l, join(a->r, b));
  return make(b->v, b->prio, join(a, b->l), b->r);
}

// First k elements and the rest.
std::pair<SeqPtr, SeqPtr> split_at(const SeqPtr& t, int k) {
  if (!t) return {nullptr, nullptr};
  if (k <= sz(t->l)) {
    auto [a, b] = split_at(t->l, k);
    return {a, make(t->v, t->prio, b, t->r)};
  }
  auto [a, b] = split_at(t->r, k - sz(t->l) - 1);
  return {make(t->v, t->prio, t->l, a), b};
}

const HullVertex& kth(const Seq* t, int i) {
  while (true) {
    const int ls = sz(t->l);
    if (i < ls) {
      t = t->l.get();
    } else if (i == ls) {
      return t->v;
    } else {
      i -= ls + 1;
      t = t->r.get();
    }
  }
}

void collect(const SeqPtr& t, std::vector<HullVertex>& out) {
  if (!t) return;
  collect(t->l, out);
  out.push_back(t->v);
  collect(t->r, out);
}

// Splices the chains of two point sets, all of `a` left of all of `b`.
// sign +1 joins upper chains, -1 lower chains.
SeqPtr bridge_join(const SeqPtr& a, const SeqPtr& b, int sign) {
  if (!a) return b;
  if (!b) return a;
  const int na = a->size, nb = b->size;
  // contact on b of the tangent from p; collinear points are passed over
  auto tangent = [&](const PointR2& p) {
    int lo = 0, hi = nb - 1;
    while (lo < hi) {
      const int mid = (lo + hi) / 2;
      if (sign * orient(p, kth(b.get(), mid).p, kth(b.get(), mid + 1).p) >= 0)
        lo = mid + 1;
      else
        hi = mid;
    }
    return lo;
  };
  int lo = 0, hi = na - 1;
  while (lo < hi) {
    const int mid = (lo + hi) / 2;
    const PointR2& p = kth(a.get(), mid).p;
    const PointR2& t = kth(b.get(), tangent(p)).p;
    if (sign * orient(p, t, kth(a.get(), mid + 1).p) > 0)
      lo = mid + 1;
    else
      hi = mid;
  }
  const int j = tangent(kth(a.get(), lo).p);
  return join(split_at(a, lo + 1).first, split_at(b, j).second);
}

}  // namespace

// ---- dynamic hull ----------------------------------------------------------

DynHull::DynHull(std::uint64_t seed) : rng_(static_cast<std::mt19937::result_type>(seed)) {}

void DynHull::pull(int u) {
  Node& n = nodes_[static_cast<std::size_t>(u)];
  SeqPtr self = make(n.v, seq_prio(n.v.id), nullptr, nullptr);
  SeqPtr lu = n.left >= 0 ? nodes_[static_cast<std::size_t>(n.left)].upper : nullptr;
  SeqPtr ll = n.left >= 0 ? nodes_[static_cast<std::size_t>(n.left)].lower : nullptr;
  SeqPtr ru = n.right >= 0 ? nodes_[static_cast<std::size_t>(n.right)].upper : nullptr;
  SeqPtr rl = n.right >= 0 ? nodes_[static_cast<std::size_t>(n.right)].lower : nullptr;
  n.upper = bridge_join(bridge_join(lu, self, 1), ru, 1);
  n.lower = bridge_join(bridge_join(ll, self, -1), rl, -1);
}

void DynHull::split(int u, const Rat& x, int& l, int& r) {
  if (u < 0) {
    l = r = -1;
    return;
  }
  Node& n = nodes_[static_cast<std::size_t>(u)];
  if (n.v.p.x < x) {
    int a = -1, b = -1;
    split(n.right, x, a, b);
    nodes_[static_cast<std::size_t>(u)].right = a;
    l = u;
    r = b;
  } else {
    int a = -1, b = -1;
    split(n.left, x, a, b);
    nodes_[static_cast<std::size_t>(u)].left = b;
    l = a;
    r = u;
  }
  pull(u);
}

int DynHull::merge(int a, int b) {
  if (a < 0) return b;
  if (b < 0) return a;
  if (nodes_[static_cast<std::size_t>(a)].prio >= nodes_[static_cast<std::size_t>(b)].prio) {
    const int m = merge(nodes_[static_cast<std::size_t>(a)].right, b);
    nodes_[static_cast<std::size_t>(a)].right = m;
    pull(a);
    return a;
  }
  const int m = merge(a, nodes_[static_cast<std::size_t>(b)].left);
  nodes_[static_cast<std::size_t>(b)].left = m;
  pull(b);
  return b;
}

void DynHull::insert(const PointR2& p, int id) {
  if (by_id_.count(id)) throw DuplicateCoordinate("hull: id " + std::to_string(id) + " already present");
  for (int u = root_; u >= 0;) {
    const Node& n = nodes_[static_cast<std::size_t>(u)];
    if (n.v.p.x == p.x) throw DuplicateCoordinate("hull: x = " + p.x.get_str() + " already present");
    u = p.x < n.v.p.x ? n.left : n.right;
  }
  int u;
  if (!free_.empty()) {
    u = free_.back();
    free_.pop_back();
  } else {
    u = static_cast<int>(nodes_.size());
    nodes_.emplace_back();
  }
  Node& n = nodes_[static_cast<std::size_t>(u)];
  n = Node{};
  n.v = HullVertex{p, id};
  n.prio = static_cast<std::uint32_t>(rng_());
  pull(u);
  int l = -1, r = -1;
  split(root_, p.x, l, r);
  root_ = merge(merge(l, u), r);
  by_id_.emplace(id, p.x);
}

int DynHull::remove(int u, const Rat& x) {
  Node& n = nodes_[static_cast<std::size_t>(u)];
  if (n.v.p.x == x) {
    const int kids = merge(n.left, n.right);
    nodes_[static_cast<std::size_t>(u)] = Node{};
    free_.push_back(u);
    return kids;
  }
  if (x < n.v.p.x) {
    const int c = remove(n.left, x);
    nodes_[static_cast<std::size_t>(u)].left = c;
  } else {
    const int c = remove(n.right, x);
    nodes_[static_cast<std::size_t>(u)].right = c;
  }
  pull(u);
  return u;
}

void DynHull::erase(int id) {
  auto it = by_id_.find(id);
  if (it == by_id_.end()) throw UnknownId("hull: no point with id " + std::to_string(id));
  root_ = remove(root_, it->second);
  by_id_.erase(it);
}

HullChains DynHull::chains() const {
  HullChains h;
  if (root_ < 0) return h;
  collect(nodes_[static_cast<std::size_t>(root_)].upper, h.upper);
  collect(nodes_[static_cast<std::size_t>(root_)].lower, h.lower);
  return h;
}

int DynHull::height(int u) const {
  if (u < 0) return 0;
  const Node& n = nodes_[static_cast<std::size_t>(u)];
  return 1 + std::max(height(n.left), height(n.right));
}

int DynHull::height() const { return height(root_); }

// ---- widest strip ------------------------------------------------------------

const char* strip_status_name(StripStatus s) {
  switch (s) {
    case StripStatus::Separable: return "Separable";
    case StripStatus::NotSeparable: return "NotSeparable";
    case StripStatus::EmptySide: return "EmptySide";
  }
  return "?";
}

bool StripResult::same_value(const StripResult& o) const {
  if (status != o.status) return false;
  return status != StripStatus::Separable || width_sq == o.width_sq;
}

namespace {

struct Edge {
  HullVertex a, b;  // a == b for a lone point
};

std::vector<Edge> edges_of(const std::vector<HullVertex>& poly) {
  std::vector<Edge> out;
  if (poly.size() == 1) {
    out.push_back({poly[0], poly[0]});
  } else if (poly.size() == 2) {
    out.push_back({poly[0], poly[1]});
  } else {
    for (std::size_t i = 0; i < poly.size(); ++i) out.push_back({poly[i], poly[(i + 1) % poly.size()]});
  }
  return out;
}

bool on_segment(const PointR2& p, const PointR2& a, const PointR2& b) {
  return orient(a, b, p) == 0 && std::min(a.x, b.x) <= p.x && p.x <= std::max(a.x, b.x) &&
         std::min(a.y, b.y) <= p.y && p.y <= std::max(a.y, b.y);
}

bool segments_meet(const Edge& e, const Edge& f) {
  const int o1 = orient(e.a.p, e.b.p, f.a.p), o2 = orient(e.a.p, e.b.p, f.b.p);
  const int o3 = orient(f.a.p, f.b.p, e.a.p), o4 = orient(f.a.p, f.b.p, e.b.p);
  if (e.a.p != e.b.p && f.a.p != f.b.p && o1 * o2 < 0 && o3 * o4 < 0) return true;
  return on_segment(f.a.p, e.a.p, e.b.p) || on_segment(f.b.p, e.a.p, e.b.p) ||
         on_segment(e.a.p, f.a.p, f.b.p) || on_segment(e.b.p, f.a.p, f.b.p);
}

// Closed containment in a counter-clockwise polygon with at least 3 vertices.
bool inside(const PointR2& p, const std::vector<HullVertex>& poly) {
  if (poly.size() < 3) return false;
  for (std::size_t i = 0; i < poly.size(); ++i)
    if (orient(poly[i].p, poly[(i + 1) % poly.size()].p, p) < 0) return false;
  return true;
}

struct Nearest {
  PointR2 point;
  std::vector<int> ids;
  Rat d2;
};

Nearest nearest_on(const PointR2& p, const Edge& e) {
  if (e.a.p == e.b.p) return {e.a.p, {e.a.id}, dist_sq(p, e.a.p)};
  const Rat dx = e.b.p.x - e.a.p.x, dy = e.b.p.y - e.a.p.y;
  const Rat t = ((p.x - e.a.p.x) * dx + (p.y - e.a.p.y) * dy) / (dx * dx + dy * dy);
  if (t <= 0) return {e.a.p, {e.a.id}, dist_sq(p, e.a.p)};
  if (t >= 1) return {e.b.p, {e.b.id}, dist_sq(p, e.b.p)};
  PointR2 f{e.a.p.x + t * dx, e.a.p.y + t * dy};
  return {f, {e.a.id, e.b.id}, dist_sq(p, f)};
}

}  // namespace

StripResult strip_between(const std::vector<HullVertex>& red, const std::vector<HullVertex>& blue) {
  StripResult res;
  if (red.empty() || blue.empty()) {
    res.status = StripStatus::EmptySide;
    return res;
  }
  const auto re = edges_of(red), be = edges_of(blue);
  bool meet = false;
  for (const auto& e : re)
    for (const auto& f : be) meet = meet || segments_meet(e, f);
  meet = meet || inside(red[0].p, blue) || inside(blue[0].p, red);
  if (meet) {
    res.status = StripStatus::NotSeparable;
    return res;
  }

  bool have = false;
  for (const auto& v : red)
    for (const auto& f : be) {
      auto n = nearest_on(v.p, f);
      if (!have || n.d2 < res.width_sq) {
        have = true;
        res.width_sq = n.d2;
        res.red_point = v.p;
        res.red_ids = {v.id};
        res.blue_point = n.point;
        res.blue_ids = n.ids;
      }
    }
  for (const auto& v : blue)
    for (const auto& e : re) {
      auto n = nearest_on(v.p, e);
      if (n.d2 < res.width_sq) {
        res.width_sq = n.d2;
        res.blue_point = v.p;
        res.blue_ids = {v.id};
        res.red_point = n.point;
        res.red_ids = n.ids;
      }
    }

  res.status = StripStatus::Separable;
  const Rat dx = res.blue_point.x - res.red_point.x, dy = res.blue_point.y - res.red_point.y;
  const PointR2 mid{(res.red_point.x + res.blue_point.x) / 2, (res.red_point.y + res.blue_point.y) / 2};
  res.middle = GeneralLine{dx, dy, -(dx * mid.x + dy * mid.y)};
  if (auto g = res.middle.as_graph()) {
    const bool blue_above = res.blue_point.y > g->at(res.blue_point.x);
    res.separator = Separator{*g, blue_above ? Orientation::BlueAbove : Orientation::RedAbove};
  }
  return res;
}

StripResult max_margin_static(const std::vector<LabeledPoint>& pts) {
  std::vector<HullVertex> r, b;
  for (const auto& p : pts) (p.color == Color::Red ? r : b).push_back({p.point, p.id});
  return strip_between(convex_hull(r).polygon(), convex_hull(b).polygon());
}

DynMargin::DynMargin(const std::vector<LabeledPoint>& pts) {
  for (const auto& p : pts) insert(p);
}

StripResult DynMargin::insert(const LabeledPoint& p) {
  if (red_.contains(p.id) || blue_.contains(p.id))
    throw DuplicateCoordinate("margin: id " + std::to_string(p.id) + " already present");
  (p.color == Color::Red ? red_ : blue_).insert(p.point, p.id);
  return result();
}

StripResult DynMargin::erase(int id) {
  if (red_.contains(id))
    red_.erase(id);
  else if (blue_.contains(id))
    blue_.erase(id);
  else
    throw UnknownId("margin: no point with id " + std::to_string(id));
  return result();
}

StripResult DynMargin::result() const {
  return strip_between(red_.chains().polygon(), blue_.chains().polygon());
}

}  // namespace sepkit
