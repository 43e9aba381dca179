#include "sepkit/errors.hpp"
#include "sepkit/levels.hpp"

#include <algorithm>
#include <numeric>

namespace sepkit {

std::size_t Chain::piece_at(const Rat& x) const {
  for (std::size_t i = 0; i < pieces.size(); ++i)
    if (pieces[i].to_plus_inf || x <= pieces[i].x1) return i;
  return pieces.empty() ? 0 : pieces.size() - 1;
}

Rat ChainSet::value(std::size_t chain, const Rat& x) const {
  const Chain& c = chains[chain];
  return lines[static_cast<std::size_t>(c.pieces[c.piece_at(x)].line)].at(x);
}

const LineR2& ChainSet::line_of(std::size_t chain, std::size_t piece) const {
  return lines[static_cast<std::size_t>(chains[chain].pieces[piece].line)];
}

std::size_t ChainSet::piece_count() const {
  std::size_t s = 0;
  for (const Chain& c : chains) s += c.pieces.size();
  return s;
}

namespace {

Chain lower_envelope(const std::vector<LineR2>& lines) {
  std::vector<int> order(lines.size());
  std::iota(order.begin(), order.end(), 0);
  // lowest at -inf first: steepest slope, then smallest intercept
  std::sort(order.begin(), order.end(), [&](int a, int b) {
    const LineR2& p = lines[static_cast<std::size_t>(a)];
    const LineR2& q = lines[static_cast<std::size_t>(b)];
    if (p.m != q.m) return p.m > q.m;
    if (p.c != q.c) return p.c < q.c;
    return a < b;
  });
  std::vector<int> st;
  for (int i : order) {
    const LineR2& l3 = lines[static_cast<std::size_t>(i)];
    if (!st.empty() && lines[static_cast<std::size_t>(st.back())].m == l3.m) continue;
    while (st.size() >= 2) {
      const LineR2& l1 = lines[static_cast<std::size_t>(st[st.size() - 2])];
      const LineR2& l2 = lines[static_cast<std::size_t>(st.back())];
      if (*crossing_x(l1, l3) <= *crossing_x(l1, l2))
        st.pop_back();
      else
        break;
    }
    st.push_back(i);
  }
  Chain ch;
  ch.kind = ChainKind::Concave;
  for (std::size_t j = 0; j < st.size(); ++j) {
    ChainPiece p;
    p.line = st[j];
    p.from_minus_inf = j == 0;
    p.to_plus_inf = j + 1 == st.size();
    if (j > 0) p.x0 = *crossing_x(lines[static_cast<std::size_t>(st[j - 1])], lines[static_cast<std::size_t>(st[j])]);
    if (j + 1 < st.size())
      p.x1 = *crossing_x(lines[static_cast<std::size_t>(st[j])], lines[static_cast<std::size_t>(st[j + 1])]);
    ch.pieces.push_back(p);
  }
  return ch;
}

std::vector<LineR2> negated(const std::vector<LineR2>& lines) {
  std::vector<LineR2> out;
  out.reserve(lines.size());
  for (const LineR2& l : lines) out.push_back(LineR2{-l.m, -l.c});
  return out;
}

// Chains follow their line through swaps and turn onto the entering line
// when their line drops out of the tracked band.
struct ChainBuilder : SweepVisitor {
  std::vector<Chain> chains;
  std::vector<int> chain_of;  // by track
  std::vector<Rat> open_x;
  std::vector<char> open_inf;

  void start(const KineticSweep& s) override {
    chain_of.assign(static_cast<std::size_t>(s.track_count()), -1);
    const int K = s.member_count(0);
    chains.resize(static_cast<std::size_t>(K));
    open_x.resize(static_cast<std::size_t>(K));
    open_inf.assign(static_cast<std::size_t>(K), 1);
    for (int r = 0; r < K; ++r) chain_of[static_cast<std::size_t>(s.member(0, r))] = r;
  }
  void close(int c, int track, const KineticSweep& s, bool to_inf) {
    ChainPiece p;
    p.line = track;
    p.from_minus_inf = open_inf[static_cast<std::size_t>(c)] != 0;
    p.x0 = open_x[static_cast<std::size_t>(c)];
    p.to_plus_inf = to_inf;
    if (!to_inf) p.x1 = s.now();
    if (!p.from_minus_inf && !p.to_plus_inf && p.x0 == p.x1) return;
    chains[static_cast<std::size_t>(c)].pieces.push_back(p);
  }
  void exchange(const KineticSweep& s, int, int leaving, int entering) override {
    int c = chain_of[static_cast<std::size_t>(leaving)];
    close(c, leaving, s, false);
    chain_of[static_cast<std::size_t>(leaving)] = -1;
    chain_of[static_cast<std::size_t>(entering)] = c;
    open_x[static_cast<std::size_t>(c)] = s.now();
    open_inf[static_cast<std::size_t>(c)] = 0;
  }
  void finish(const KineticSweep& s) override {
    for (int r = 0; r < s.member_count(0); ++r) {
      int t = s.member(0, r);
      close(chain_of[static_cast<std::size_t>(t)], t, s, true);
    }
  }
};

}  // namespace

Chain envelope(const std::vector<LineR2>& lines, Direction dir) {
  if (lines.empty()) throw EmptyInput("envelope of no lines");
  if (dir == Direction::Lower) return lower_envelope(lines);
  Chain ch = lower_envelope(negated(lines));
  ch.kind = ChainKind::Convex;
  return ch;
}

ChainSet envelope_set(const std::vector<LineR2>& lines, Direction dir) {
  ChainSet cs;
  cs.lines = lines;
  cs.dir = dir;
  cs.chains.push_back(envelope(lines, dir));
  return cs;
}

ChainSet chain_decomposition(const std::vector<LineR2>& lines, int k, Direction dir) {
  if (lines.empty()) throw EmptyInput("chain decomposition of no lines");
  if (k < 0) throw InvariantError("chain decomposition needs k >= 0");
  SweepFamily fam{lines, dir, k + 1};
  KineticSweep sweep({fam}, false);
  ChainBuilder b;
  sweep.run(b);
  ChainSet cs;
  cs.lines = lines;
  cs.dir = dir;
  cs.chains = std::move(b.chains);
  for (Chain& c : cs.chains) c.kind = dir == Direction::Lower ? ChainKind::Concave : ChainKind::Convex;
  return cs;
}

}  // namespace sepkit
