#include "sepkit/levels.hpp"

#include "sepkit/errors.hpp"

#include <algorithm>
#include <numeric>

namespace sepkit {

KineticSweep::KineticSweep(std::vector<SweepFamily> families, bool with_midline) : fams_(std::move(families)) {
  const int nf = static_cast<int>(fams_.size());
  members_.resize(fams_.size());
  tour_.resize(fams_.size());
  bnd_ver_.assign(fams_.size(), 0);
  for (int f = 0; f < nf; ++f) {
    first_.push_back(static_cast<int>(eq_.size()));
    for (std::size_t i = 0; i < fams_[f].lines.size(); ++i) {
      eq_.push_back(fams_[f].lines[i]);
      fam_of_.push_back(f);
      idx_of_.push_back(static_cast<int>(i));
    }
  }
  const bool mid = with_midline && nf == 2 && !fams_[0].lines.empty() && !fams_[1].lines.empty() &&
                   fams_[0].dir == Direction::Lower && fams_[1].dir == Direction::Upper;
  if (mid) {
    midline_ = static_cast<int>(eq_.size());
    eq_.push_back(LineR2{});
    fam_of_.push_back(-1);
    idx_of_.push_back(-1);
  }
  const std::size_t nt = eq_.size();
  rank_.assign(nt, -1);
  next_.assign(nt, -1);
  prev_.assign(nt, -1);
  adj_ver_.assign(nt, 0);

  // membership at -inf
  for (int f = 0; f < nf; ++f) {
    const int n = static_cast<int>(fams_[f].lines.size());
    std::vector<int> order(static_cast<std::size_t>(n));
    std::iota(order.begin(), order.end(), first_[f]);
    if (fams_[f].dir == Direction::Lower)
      std::sort(order.begin(), order.end(), [&](int a, int b) { return before(a, b); });
    else
      std::sort(order.begin(), order.end(), [&](int a, int b) { return before(b, a); });
    const int kf = std::min(std::max(fams_[f].K, 1), n);
    for (int r = 0; r < kf; ++r) {
      members_[f].push_back(order[static_cast<std::size_t>(r)]);
      rank_[static_cast<std::size_t>(order[static_cast<std::size_t>(r)])] = r;
    }
    Tourney& T = tour_[f];
    if (n > kf) {
      T.size = 1;
      while (T.size < n) T.size <<= 1;
      T.win.assign(2 * static_cast<std::size_t>(T.size), -1);
      T.ver.assign(2 * static_cast<std::size_t>(T.size), 0);
      for (int i = 0; i < n; ++i)
        if (rank_[static_cast<std::size_t>(first_[f] + i)] < 0)
          T.win[static_cast<std::size_t>(T.size + i)] = first_[f] + i;
    }
  }
  if (midline_ >= 0) {
    const LineR2& r0 = eq(members_[0][0]);
    const LineR2& b0 = eq(members_[1][0]);
    eq_[static_cast<std::size_t>(midline_)] = LineR2{(r0.m + b0.m) / 2, (r0.c + b0.c) / 2};
  }

  std::vector<int> list;
  for (int f = 0; f < nf; ++f)
    for (int t : members_[f]) list.push_back(t);
  if (midline_ >= 0) list.push_back(midline_);
  std::sort(list.begin(), list.end(), [&](int a, int b) { return before(a, b); });
  for (std::size_t i = 0; i < list.size(); ++i) {
    if (i > 0) prev_[static_cast<std::size_t>(list[i])] = list[i - 1];
    if (i + 1 < list.size()) next_[static_cast<std::size_t>(list[i])] = list[i + 1];
  }
  if (!list.empty()) {
    bottom_ = list.front();
    top_ = list.back();
  }
}

bool KineticSweep::before(int a, int b) const {
  const LineR2& la = eq(a);
  const LineR2& lb = eq(b);
  if (!started_) {
    if (la.m != lb.m) return la.m > lb.m;
    if (la.c != lb.c) return la.c < lb.c;
    return a < b;
  }
  Rat va = la.at(now_), vb = lb.at(now_);
  if (va != vb) return va < vb;
  if (la.m != lb.m) return la.m < lb.m;
  if (la.c != lb.c) return la.c < lb.c;
  return a < b;
}

std::optional<Rat> KineticSweep::meet_after(int lo, int hi) const {
  const LineR2& a = eq(lo);
  const LineR2& b = eq(hi);
  if (!(a.m > b.m)) return std::nullopt;
  return Rat((b.c - a.c) / (a.m - b.m));
}

bool KineticSweep::better(int f, int a, int b) const {
  return fams_[static_cast<std::size_t>(f)].dir == Direction::Lower ? before(a, b) : before(b, a);
}

void KineticSweep::push(Rat t, int kind, int a, int b, unsigned ver) { pq_.push(Event{std::move(t), kind, a, b, ver}); }

void KineticSweep::adjacent_cert(int lo) {
  unsigned v = ++adj_ver_[static_cast<std::size_t>(lo)];
  int hi = next(lo);
  if (hi < 0) return;
  if (started_ && !before(lo, hi)) {
    push(now_, Adjacent, lo, hi, v);
    return;
  }
  if (auto t = meet_after(lo, hi)) push(*t, Adjacent, lo, hi, v);
}

void KineticSweep::boundary_cert(int f) {
  unsigned v = ++bnd_ver_[static_cast<std::size_t>(f)];
  const Tourney& T = tour_[static_cast<std::size_t>(f)];
  if (T.size == 0) return;
  int w = T.win[1];
  if (w < 0) return;
  int a = members_[static_cast<std::size_t>(f)].back();
  if (started_ && better(f, w, a)) {
    push(now_, Boundary, f, 0, v);
    return;
  }
  auto t = fams_[static_cast<std::size_t>(f)].dir == Direction::Lower ? meet_after(a, w) : meet_after(w, a);
  if (t) push(*t, Boundary, f, 0, v);
}

void KineticSweep::tourney_pull(int f, int u) {
  Tourney& T = tour_[static_cast<std::size_t>(f)];
  const std::size_t su = static_cast<std::size_t>(u);
  int a = T.win[2 * su], b = T.win[2 * su + 1];
  unsigned v = ++T.ver[su];
  if (a < 0 || b < 0) {
    T.win[su] = a < 0 ? b : a;
    return;
  }
  int w = better(f, a, b) ? a : b;
  int l = w == a ? b : a;
  T.win[su] = w;
  auto t = fams_[static_cast<std::size_t>(f)].dir == Direction::Lower ? meet_after(w, l) : meet_after(l, w);
  if (t) push(*t, Knockout, f, u, v);
}

void KineticSweep::tourney_set(int f, int leaf, bool active) {
  Tourney& T = tour_[static_cast<std::size_t>(f)];
  int u = T.size + leaf;
  T.win[static_cast<std::size_t>(u)] = active ? first_[static_cast<std::size_t>(f)] + leaf : -1;
  for (u >>= 1; u >= 1; u >>= 1) tourney_pull(f, u);
}

void KineticSweep::link_replace(int old_t, int new_t) {
  const std::size_t o = static_cast<std::size_t>(old_t), n = static_cast<std::size_t>(new_t);
  prev_[n] = prev_[o];
  next_[n] = next_[o];
  if (prev_[n] >= 0) next_[static_cast<std::size_t>(prev_[n])] = new_t;
  if (next_[n] >= 0) prev_[static_cast<std::size_t>(next_[n])] = new_t;
  if (bottom_ == old_t) bottom_ = new_t;
  if (top_ == old_t) top_ = new_t;
  prev_[o] = next_[o] = -1;
  ++adj_ver_[o];
}

void KineticSweep::do_swap(int lo, SweepVisitor& v) {
  const int hi = next(lo);
  v.swap(*this, lo, hi);
  ++stats_.swaps;
  const int p = prev(lo), q = next(hi);
  // p, lo, hi, q  ->  p, hi, lo, q
  next_[static_cast<std::size_t>(hi)] = lo;
  prev_[static_cast<std::size_t>(hi)] = p;
  next_[static_cast<std::size_t>(lo)] = q;
  prev_[static_cast<std::size_t>(lo)] = hi;
  if (p >= 0)
    next_[static_cast<std::size_t>(p)] = hi;
  else
    bottom_ = hi;
  if (q >= 0)
    prev_[static_cast<std::size_t>(q)] = lo;
  else
    top_ = lo;

  const int fl = track_family(lo), fh = track_family(hi);
  if (fl >= 0 && fl == fh) {
    std::size_t rl = static_cast<std::size_t>(rank(lo)), rh = static_cast<std::size_t>(rank(hi));
    std::swap(rank_[static_cast<std::size_t>(lo)], rank_[static_cast<std::size_t>(hi)]);
    members_[static_cast<std::size_t>(fl)][rl] = hi;
    members_[static_cast<std::size_t>(fl)][rh] = lo;
    const std::size_t last = members_[static_cast<std::size_t>(fl)].size() - 1;
    if (rl == 0 || rh == 0) midline_dirty_ = true;
    if (rl == last || rh == last) boundary_cert(fl);
  }
  if (p >= 0) adjacent_cert(p);
  adjacent_cert(hi);
  adjacent_cert(lo);
}

void KineticSweep::do_exchange(int f, SweepVisitor& v) {
  Tourney& T = tour_[static_cast<std::size_t>(f)];
  auto& mem = members_[static_cast<std::size_t>(f)];
  const int a = mem.back();
  const int w = T.win[1];
  v.exchange(*this, f, a, w);
  ++stats_.exchanges;
  link_replace(a, w);
  rank_[static_cast<std::size_t>(w)] = rank_[static_cast<std::size_t>(a)];
  rank_[static_cast<std::size_t>(a)] = -1;
  mem.back() = w;
  tourney_set(f, track_index(w), false);
  tourney_set(f, track_index(a), true);
  if (prev(w) >= 0) adjacent_cert(prev(w));
  adjacent_cert(w);
  boundary_cert(f);
  if (mem.size() == 1) midline_dirty_ = true;
}

void KineticSweep::refresh_midline(SweepVisitor& v) {
  if (midline_ < 0 || !midline_dirty_) return;
  midline_dirty_ = false;
  const LineR2& r0 = eq(members_[0][0]);
  const LineR2& b0 = eq(members_[1][0]);
  LineR2 m{(r0.m + b0.m) / 2, (r0.c + b0.c) / 2};
  if (m == eq(midline_)) return;
  eq_[static_cast<std::size_t>(midline_)] = m;
  if (prev(midline_) >= 0) adjacent_cert(prev(midline_));
  adjacent_cert(midline_);
  v.midline_bend(*this);
}

int KineticSweep::count_below(int f, const Rat& y) const {
  const auto& mem = members_[static_cast<std::size_t>(f)];
  int lo = 0, hi = static_cast<int>(mem.size());
  if (fams_[static_cast<std::size_t>(f)].dir == Direction::Lower) {
    // first rank with value >= y
    while (lo < hi) {
      int mid = (lo + hi) / 2;
      if (value(mem[static_cast<std::size_t>(mid)]) < y)
        lo = mid + 1;
      else
        hi = mid;
    }
    return lo;
  }
  // descending values: first rank with value < y
  while (lo < hi) {
    int mid = (lo + hi) / 2;
    if (value(mem[static_cast<std::size_t>(mid)]) < y)
      hi = mid;
    else
      lo = mid + 1;
  }
  return static_cast<int>(mem.size()) - lo;
}

int KineticSweep::count_above(int f, const Rat& y) const {
  const auto& mem = members_[static_cast<std::size_t>(f)];
  int lo = 0, hi = static_cast<int>(mem.size());
  if (fams_[static_cast<std::size_t>(f)].dir == Direction::Lower) {
    // first rank with value > y
    while (lo < hi) {
      int mid = (lo + hi) / 2;
      if (value(mem[static_cast<std::size_t>(mid)]) > y)
        hi = mid;
      else
        lo = mid + 1;
    }
    return static_cast<int>(mem.size()) - lo;
  }
  // descending values: first rank with value <= y
  while (lo < hi) {
    int mid = (lo + hi) / 2;
    if (value(mem[static_cast<std::size_t>(mid)]) > y)
      lo = mid + 1;
    else
      hi = mid;
  }
  return lo;
}

void KineticSweep::run(SweepVisitor& v) {
  for (int t = bottom_; t >= 0; t = next(t)) adjacent_cert(t);
  for (int f = 0; f < families(); ++f) {
    Tourney& T = tour_[static_cast<std::size_t>(f)];
    for (int u = T.size - 1; u >= 1; --u) tourney_pull(f, u);
    boundary_cert(f);
  }
  v.start(*this);

  auto stale = [&](const Event& e) {
    switch (e.kind) {
      case Adjacent:
        return adj_ver_[static_cast<std::size_t>(e.a)] != e.ver;
      case Boundary:
        return bnd_ver_[static_cast<std::size_t>(e.a)] != e.ver;
      default:
        return tour_[static_cast<std::size_t>(e.a)].ver[static_cast<std::size_t>(e.b)] != e.ver;
    }
  };

  while (true) {
    while (!pq_.empty() && stale(pq_.top())) {
      pq_.pop();
      ++stats_.stale;
    }
    if (pq_.empty()) break;
    if (started_ && pq_.top().t > now_) v.batch_end(*this);
    Event e = pq_.top();
    pq_.pop();
    if (started_ && e.t < now_) throw InvariantError("kinetic sweep: event in the past");
    now_ = e.t;
    started_ = true;
    ++stats_.events;
    switch (e.kind) {
      case Adjacent:
        if (before(e.a, e.b)) throw InvariantError("kinetic sweep: adjacent certificate fired while ordered");
        do_swap(e.a, v);
        break;
      case Boundary:
        do_exchange(e.a, v);
        break;
      default: {
        ++stats_.tournament;
        const int f = e.a;
        for (int u = e.b; u >= 1; u >>= 1) tourney_pull(f, u);
        boundary_cert(f);
        break;
      }
    }
    refresh_midline(v);
  }
  if (started_) v.batch_end(*this);
  v.finish(*this);
}

}  // namespace sepkit
