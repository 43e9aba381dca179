#include "sepkit/errors.hpp"
#include "sepkit/lpviol.hpp"

#include <algorithm>
#include <climits>
#include <set>
#include <tuple>

namespace sepkit {

namespace {

using OrderKey = std::tuple<Rat, Rat, int>;  // far-left order: (-m, c, id)
using OrderSet = __gnu_pbds::tree<OrderKey, __gnu_pbds::null_type, std::less<OrderKey>, __gnu_pbds::rb_tree_tag,
                                  __gnu_pbds::tree_order_statistics_node_update>;

OrderKey order_key(const LineR2& l, int id) { return {-l.m, l.c, id}; }

int strictly_below(const OrderSet& s, const LineR2& l) {
  return static_cast<int>(s.order_of_key(OrderKey{-l.m, l.c, INT_MIN}));
}
int strictly_above(const OrderSet& s, const LineR2& l) {
  return static_cast<int>(s.size() - s.order_of_key(OrderKey{-l.m, l.c, INT_MAX}));
}

int pow2_at_least(long v) {
  int e = 0;
  while ((1L << e) < v) ++e;
  return e;
}

int floor_log2(long v) {
  int e = 0;
  while ((2L << e) <= v) ++e;
  return e;
}

}  // namespace

struct DynLP::Impl {
  struct ChainRec {
    std::shared_ptr<const ChainSet> set;
    std::size_t idx = 0;
    Color color = Color::Red;
    int line_id = -1;  // leftover chains only
    bool alive = true;
    PlyStructure ply;
    std::vector<int> points;
  };
  struct Layer {
    int index = 0;
    long created_at = 0;
    std::vector<int> ids;
    std::shared_ptr<const ChainSet> red, blue;
  };

  std::vector<ChainRec> chains;
  std::map<std::pair<int, int>, ChainInterval> intervals;  // (red chain, blue chain)
  std::map<int, Layer> layers;                              // by index
  std::map<int, int> leftover;                              // line id -> chain
  std::map<int, int> layer_of;                              // line id -> layer index, -1 leftover
  PartitionForest forest;
  OrderSet order[2];  // by color
  int next_point = 0;
  std::map<int, PointR2> where;  // tracked point -> location
  long u0 = 0;
  int z = 0;
  long inserted_since_full = 0;
  std::size_t n_at_full = 0;

  explicit Impl(Partitioner p) : forest(p) {}

  static int ci(Color c) { return c == Color::Red ? 0 : 1; }

  int add_chain(std::shared_ptr<const ChainSet> set, std::size_t idx, Color c, int line_id) {
    ChainRec r;
    r.set = std::move(set);
    r.idx = idx;
    r.color = c;
    r.line_id = line_id;
    chains.push_back(std::move(r));
    return static_cast<int>(chains.size()) - 1;
  }

  // Crossings of red chain a and blue chain b, counted with the plies.
  void add_points(int a, int b, const ChainInterval& iv, std::vector<CountedPoint>& out) {
    if (iv.empty) return;
    auto emit = [&](const Rat& x) {
      ChainRec& r = chains[static_cast<std::size_t>(a)];
      ChainRec& s = chains[static_cast<std::size_t>(b)];
      PointR2 p{x, r.set->value(r.idx, x)};
      int cnt = r.ply.outside(x) + s.ply.outside(x);
      int id = next_point++;
      where[id] = p;
      r.points.push_back(id);
      s.points.push_back(id);
      out.push_back(CountedPoint{p, cnt, id});
    };
    if (!iv.lo_inf) emit(iv.lo);
    if (!iv.hi_inf && (iv.lo_inf || iv.hi != iv.lo)) emit(iv.hi);
  }

  void link(int a, int b) {
    ChainRec& r = chains[static_cast<std::size_t>(a)];
    ChainRec& s = chains[static_cast<std::size_t>(b)];
    ChainInterval iv = red_over_blue(*r.set, r.idx, *s.set, s.idx);
    r.ply.insert(iv, b);
    s.ply.insert(iv, a);
    intervals[{a, b}] = iv;
  }
};

DynLP::DynLP(const std::vector<DynLine>& lines, DynOptions opt)
    : impl_(std::make_unique<Impl>(opt.partitioner)), opt_(opt) {
  if (opt.k < 0) throw InvariantError("dynamic budget must be >= 0");
  std::set<long> dels;
  std::set<std::pair<Rat, Rat>> seen[2];
  for (const auto& l : lines) {
    if (lines_.count(l.id)) throw InvariantError("duplicate line id " + std::to_string(l.id));
    if (l.delete_at) {
      if (*l.delete_at < 1) throw ScheduleViolation("deletion scheduled before the first update");
      if (!dels.insert(*l.delete_at).second) throw ScheduleViolation("two deletions scheduled for one update");
    }
    seen[Impl::ci(l.color)].insert({l.line.m, l.line.c});
    lines_[l.id] = l;
    next_id_ = std::max(next_id_, l.id + 1);
  }
  for (const auto& p : seen[0])
    if (seen[1].count(p)) throw GeneralPosition("a line is both red and blue");
  for (const auto& [id, l] : lines_) impl_->order[Impl::ci(l.color)].insert(order_key(l.line, id));
  full_rebuild();
}

DynLP::~DynLP() = default;

ConstraintSet DynLP::live_set() const {
  ConstraintSet cs;
  for (const auto& [id, l] : lines_) (l.color == Color::Red ? cs.red : cs.blue).push_back(ConstraintLine{l.line, id});
  return cs;
}

std::optional<long> DynLP::delete_at(int id) const {
  auto it = lines_.find(id);
  if (it == lines_.end()) throw UnknownId("no line with id " + std::to_string(id));
  return it->second.delete_at;
}

void DynLP::full_rebuild() {
  Impl& I = *impl_;
  ++stats_.full_rebuilds;
  I.u0 = u_;
  I.inserted_since_full = 0;
  I.n_at_full = lines_.size();
  if (opt_.track_kmin) {
    int kmin = static_min_violations(live_set()).first;
    kw_ = 2 * (1 << pow2_at_least(std::max(kmin, 1)));
  } else {
    kw_ = opt_.k;
  }
  const long n = static_cast<long>(lines_.size());
  x_ = pow2_at_least(std::max(1L, static_cast<long>(kw_) * ceil_log2(static_cast<std::uint64_t>(std::max(n, 1L)))));
  I.z = std::max(x_, ceil_log2(static_cast<std::uint64_t>(n + 1)));
  I.layers.clear();
  std::vector<int> pool;
  for (const auto& [id, l] : lines_) pool.push_back(id);
  assign(pool, I.z);
}

// Rebuilds layers x..upto and the leftover list, escalating while the top
// bucket would hold more than twice its nominal size.
void DynLP::partial_rebuild(int upto) {
  Impl& I = *impl_;
  auto top_size = [&](const std::vector<int>& pool, int i) {
    long t = 0;
    for (int id : pool) {
      const auto& d = lines_.at(id).delete_at;
      if (!d) {
        ++t;
        continue;
      }
      long rem = *d - u_ - 1;
      if (rem >= (1L << x_) && floor_log2(rem) >= i) ++t;
    }
    return t;
  };
  std::vector<int> pool;
  for (const auto& [id, where] : I.layer_of)
    if (where <= upto) pool.push_back(id);
  while (upto < I.z && top_size(pool, upto) > (2L << upto)) {
    ++upto;
    for (const auto& [id, where] : I.layer_of)
      if (where == upto) pool.push_back(id);
  }
  if (upto >= I.z) {
    full_rebuild();
    return;
  }
  ++stats_.partial_rebuilds;
  for (int i = x_; i <= upto; ++i) I.layers.erase(i);
  assign(pool, upto);
}

void DynLP::assign(const std::vector<int>& pool, int upto) {
  Impl& I = *impl_;
  std::map<int, std::vector<int>> bucket;
  for (int id : pool) {
    const auto& d = lines_.at(id).delete_at;
    long rem = d ? *d - u_ - 1 : LONG_MAX;
    if (rem < (1L << x_)) {
      I.layer_of[id] = -1;
      continue;
    }
    int i = rem == LONG_MAX ? upto : std::clamp(floor_log2(rem), x_, upto);
    bucket[i].push_back(id);
    I.layer_of[id] = i;
  }
  for (auto& [i, ids] : bucket) {
    Impl::Layer L;
    L.index = i;
    L.created_at = u_;
    L.ids = ids;
    std::vector<LineR2> red, blue;
    for (int id : ids) {
      const DynLine& l = lines_.at(id);
      (l.color == Color::Red ? red : blue).push_back(l.line);
    }
    if (!red.empty()) L.red = std::make_shared<ChainSet>(chain_decomposition(red, kw_, Direction::Lower));
    if (!blue.empty()) L.blue = std::make_shared<ChainSet>(chain_decomposition(blue, kw_, Direction::Upper));
    I.layers[i] = std::move(L);
  }
  rebuild_points();
}

void DynLP::rebuild_points() {
  Impl& I = *impl_;
  I.chains.clear();
  I.intervals.clear();
  I.leftover.clear();
  I.forest.clear();
  I.where.clear();
  std::vector<int> reds, blues;
  for (const auto& [i, L] : I.layers) {
    if (L.red)
      for (std::size_t c = 0; c < L.red->chains.size(); ++c) reds.push_back(I.add_chain(L.red, c, Color::Red, -1));
    if (L.blue)
      for (std::size_t c = 0; c < L.blue->chains.size(); ++c) blues.push_back(I.add_chain(L.blue, c, Color::Blue, -1));
  }
  for (const auto& [id, where] : I.layer_of) {
    if (where >= 0) continue;
    const DynLine& l = lines_.at(id);
    auto set = std::make_shared<ChainSet>(envelope_set({l.line}, l.color == Color::Red ? Direction::Lower : Direction::Upper));
    int c = I.add_chain(set, 0, l.color, id);
    I.leftover[id] = c;
    (l.color == Color::Red ? reds : blues).push_back(c);
  }
  for (int a : reds)
    for (int b : blues) I.link(a, b);
  std::vector<CountedPoint> pts;
  for (const auto& [key, iv] : I.intervals) I.add_points(key.first, key.second, iv, pts);
  stats_.points = static_cast<long>(pts.size());
  I.forest.add(std::move(pts));
}

void DynLP::after_update() {
  Impl& I = *impl_;
  ++stats_.updates;
  const std::size_t n = std::max<std::size_t>(lines_.size(), 1);
  if (I.n_at_full + static_cast<std::size_t>(I.inserted_since_full) > 2 * n) {
    full_rebuild();
    return;
  }
  const long step = 1L << x_;
  const long since = u_ - I.u0;
  if (since % step != 0) {
    ++stats_.cheap;
    return;
  }
  long e = since / step;
  int upto = x_ + __builtin_ctzl(static_cast<unsigned long>(e));
  if (upto >= I.z)
    full_rebuild();
  else
    partial_rebuild(upto);
}

int DynLP::insert(DynLine line) {
  Impl& I = *impl_;
  if (line.id < 0) line.id = next_id_;
  if (lines_.count(line.id)) throw InvariantError("duplicate line id " + std::to_string(line.id));
  if (line.delete_at) {
    if (*line.delete_at <= u_ + 1) throw ScheduleViolation("deletion must come after the insertion");
    for (const auto& [id, l] : lines_)
      if (l.delete_at && *l.delete_at == *line.delete_at)
        throw ScheduleViolation("two deletions scheduled for one update");
  }
  const int c = Impl::ci(line.color);
  for (const auto& [id, l] : lines_)
    if (l.color != line.color && l.line == line.line) throw GeneralPosition("a line is both red and blue");
  next_id_ = std::max(next_id_, line.id + 1);
  ++u_;
  ++I.inserted_since_full;
  lines_[line.id] = line;
  I.order[c].insert(order_key(line.line, line.id));
  I.layer_of[line.id] = -1;

  // every tracked point now on the wrong side of the new line
  stats_.tree_visits += I.forest.halfplane_add(line.line, line.color == Color::Red, +1);

  auto set = std::make_shared<ChainSet>(envelope_set({line.line}, c == 0 ? Direction::Lower : Direction::Upper));
  int me = I.add_chain(set, 0, line.color, line.id);
  I.leftover[line.id] = me;
  std::vector<int> opp;
  for (std::size_t i = 0; i < I.chains.size(); ++i)
    if (I.chains[i].alive && I.chains[i].color != line.color) opp.push_back(static_cast<int>(i));
  for (int o : opp) {
    if (c == 0)
      I.link(me, o);
    else
      I.link(o, me);
  }
  std::vector<CountedPoint> pts;
  for (int o : opp) {
    auto key = c == 0 ? std::make_pair(me, o) : std::make_pair(o, me);
    I.add_points(key.first, key.second, I.intervals[key], pts);
  }
  stats_.points += static_cast<long>(pts.size());
  I.forest.add(std::move(pts));
  after_update();
  return line.id;
}

void DynLP::erase(int id) {
  Impl& I = *impl_;
  auto it = lines_.find(id);
  if (it == lines_.end()) throw UnknownId("no line with id " + std::to_string(id));
  const DynLine line = it->second;
  if (line.delete_at && u_ + 1 < *line.delete_at)
    throw ScheduleViolation("line " + std::to_string(id) + " deleted at update " + std::to_string(u_ + 1) +
                            ", promised " + std::to_string(*line.delete_at));
  ++u_;
  const int c = Impl::ci(line.color);
  lines_.erase(it);
  I.order[c].erase(order_key(line.line, id));
  const int where = I.layer_of.at(id);
  I.layer_of.erase(id);
  if (where >= 0) {
    // only reachable when a promise was kept late; the layer goes stale
    full_rebuild();
    ++stats_.updates;
    return;
  }
  stats_.tree_visits += I.forest.halfplane_add(line.line, line.color == Color::Red, -1);
  const int me = I.leftover.at(id);
  I.leftover.erase(id);
  Impl::ChainRec& rec = I.chains[static_cast<std::size_t>(me)];
  rec.alive = false;
  for (int p : rec.points) {
    I.forest.erase(p);
    I.where.erase(p);
  }
  stats_.points -= static_cast<long>(rec.points.size());
  rec.points.clear();
  for (std::size_t o = 0; o < I.chains.size(); ++o) {
    Impl::ChainRec& other = I.chains[o];
    if (!other.alive || other.color == line.color) continue;
    auto key = c == 0 ? std::make_pair(me, static_cast<int>(o)) : std::make_pair(static_cast<int>(o), me);
    auto iv = I.intervals.find(key);
    if (iv == I.intervals.end()) continue;
    other.ply.erase(iv->second, me);
    I.intervals.erase(iv);
  }
  after_update();
}

LPResult DynLP::query(int k) {
  Impl& I = *impl_;
  if (k < 0) return LPResult::infeasible();
  if (k > kw_) {
    if (!opt_.track_kmin) throw InvariantError("query budget exceeds the structure's budget");
    // rebuild with a budget large enough for this query
    opt_.track_kmin = false;
    opt_.k = std::max(k, 2 * kw_);
    full_rebuild();
    opt_.track_kmin = true;
  }
  const int nr = static_cast<int>(I.order[0].size()), nb = static_cast<int>(I.order[1].size());
  if (nr == 0 || nb == 0) return LPResult::unbounded(UnboundedReason::EmptySide);
  if (nr <= k || nb <= k) return LPResult::unbounded(UnboundedReason::Left);
  for (const auto& ch : I.chains) {
    if (!ch.alive) continue;
    const LineR2& l = ch.set->line_of(ch.idx, 0);
    if (strictly_below(I.order[0], l) + strictly_above(I.order[1], l) <= k)
      return LPResult::unbounded(UnboundedReason::Left);
  }
  auto hit = I.forest.leftmost_at_most(k);
  if (!hit) return LPResult::infeasible();
  return LPResult::feasible(hit->p, hit->count);
}

std::pair<int, LPResult> DynLP::query_kmin() {
  Impl& I = *impl_;
  const int nr = static_cast<int>(I.order[0].size()), nb = static_cast<int>(I.order[1].size());
  if (nr == 0 || nb == 0) return {0, LPResult::unbounded(UnboundedReason::EmptySide)};
  for (int attempt = 0; attempt < 2; ++attempt) {
    int v = std::min(nr, nb);
    for (const auto& ch : I.chains) {
      if (!ch.alive) continue;
      const LineR2& l = ch.set->line_of(ch.idx, 0);
      v = std::min(v, strictly_below(I.order[0], l) + strictly_above(I.order[1], l));
    }
    if (auto m = I.forest.min_count()) v = std::min(v, *m);
    if (v <= kw_) return {v, query(v)};
    if (!opt_.track_kmin) break;
    full_rebuild();
  }
  auto r = static_min_violations(live_set());
  return r;
}

std::vector<DynLayerInfo> DynLP::layers() const {
  std::vector<DynLayerInfo> out;
  for (const auto& [i, L] : impl_->layers) {
    DynLayerInfo d;
    d.index = i;
    d.created_at = L.created_at;
    d.rebuild_by = i >= impl_->z ? impl_->u0 + (1L << i) : L.created_at + (1L << i);
    for (int id : L.ids)
      if (lines_.count(id)) d.ids.push_back(id);
    out.push_back(std::move(d));
  }
  return out;
}

std::size_t DynLP::leftover_size() const { return impl_->leftover.size(); }

// Tracked counts never exceed the true count and match it within budget.
bool DynLP::audit() const {
  const Impl& I = *impl_;
  if (!I.forest.audit()) return false;
  if (I.forest.live() != I.where.size()) return false;
  const ConstraintSet cs = live_set();
  for (const auto& [id, p] : I.where) {
    auto c = I.forest.count_of(id);
    if (!c) return false;
    const int direct = violations_at(cs, p);
    if (*c > direct || (*c <= kw_ && *c != direct)) return false;
  }
  return true;
}

}  // namespace sepkit
