#include "sepkit/errors.hpp"
#include "sepkit/levels.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace sepkit {

namespace {

std::vector<LineR2> negated(const std::vector<LineR2>& lines) {
  std::vector<LineR2> out;
  out.reserve(lines.size());
  for (const LineR2& l : lines) out.push_back(LineR2{-l.m, -l.c});
  return out;
}

bool point_less(const PointR2& a, const PointR2& b) { return a.x != b.x ? a.x < b.x : a.y < b.y; }

bool edge_less(const LevelEdge& a, const LevelEdge& b) {
  if (a.line != b.line) return a.line < b.line;
  if (a.from_minus_inf != b.from_minus_inf) return a.from_minus_inf;
  return a.x0 < b.x0;
}

void sort_subdivision(LevelSubdivision& s) {
  std::sort(s.vertices.begin(), s.vertices.end(),
            [](const LevelVertex& a, const LevelVertex& b) { return point_less(a.p, b.p); });
  std::sort(s.edges.begin(), s.edges.end(), edge_less);
}

// ------------------------------------------------------------ kinetic path

struct LevelBuilder : SweepVisitor {
  int k = 0;
  std::map<std::pair<Rat, Rat>, int> verts;
  std::vector<LevelEdge> edges;
  std::vector<Rat> open_x;
  std::vector<char> open_inf;
  std::vector<int> gap_above;
  std::vector<char> alive;
  std::vector<Rat> born_at;
  std::vector<int> born;
  long faces = 0;

  int new_gap(const KineticSweep& s) {
    alive.push_back(1);
    born_at.push_back(s.now());
    return static_cast<int>(alive.size()) - 1;
  }

  void start(const KineticSweep& s) override {
    const std::size_t nt = static_cast<std::size_t>(s.track_count());
    open_x.assign(nt, Rat(0));
    open_inf.assign(nt, 1);
    gap_above.assign(nt, -1);
    for (int t = s.bottom(); t >= 0; t = s.next(t)) {
      gap_above[static_cast<std::size_t>(t)] = new_gap(s);
    }
    const int n = static_cast<int>(s.family(0).lines.size());
    faces = std::min(k, n) + 1;
  }

  void vertex(const KineticSweep& s, int t) {
    Rat y = s.value(t);
    int level = s.count_below(0, y);
    if (level <= k) verts.emplace(std::make_pair(s.now(), y), level);
  }

  void split(const KineticSweep& s, int t) {
    close(s, t, false);
    open_x[static_cast<std::size_t>(t)] = s.now();
    open_inf[static_cast<std::size_t>(t)] = 0;
  }

  void close(const KineticSweep& s, int t, bool to_inf) {
    LevelEdge e;
    e.line = t;
    e.from_minus_inf = open_inf[static_cast<std::size_t>(t)] != 0;
    e.x0 = open_x[static_cast<std::size_t>(t)];
    e.to_plus_inf = to_inf;
    if (!to_inf) e.x1 = s.now();
    if (!e.from_minus_inf && !e.to_plus_inf && e.x0 == e.x1) return;
    edges.push_back(e);
  }

  void swap(const KineticSweep& s, int lo, int up) override {
    vertex(s, lo);
    split(s, lo);
    split(s, up);
    int old = gap_above[static_cast<std::size_t>(lo)];
    alive[static_cast<std::size_t>(old)] = 0;
    int g = new_gap(s);
    gap_above[static_cast<std::size_t>(lo)] = gap_above[static_cast<std::size_t>(up)];
    gap_above[static_cast<std::size_t>(up)] = g;
    born.push_back(g);
  }

  void exchange(const KineticSweep& s, int, int leaving, int entering) override {
    vertex(s, leaving);
    close(s, leaving, false);
    open_x[static_cast<std::size_t>(entering)] = s.now();
    open_inf[static_cast<std::size_t>(entering)] = 0;
    gap_above[static_cast<std::size_t>(entering)] = gap_above[static_cast<std::size_t>(leaving)];
  }

  void batch_end(const KineticSweep&) override {
    for (int g : born)
      if (alive[static_cast<std::size_t>(g)]) ++faces;
    born.clear();
  }

  void finish(const KineticSweep& s) override {
    for (int r = 0; r < s.member_count(0); ++r) close(s, s.member(0, r), true);
  }
};

LevelSubdivision kinetic_lower(const std::vector<LineR2>& lines, int k) {
  KineticSweep sweep({SweepFamily{lines, Direction::Lower, k + 1}}, false);
  LevelBuilder b;
  b.k = k;
  sweep.run(b);
  LevelSubdivision s;
  s.k = k;
  for (auto& [p, level] : b.verts) s.vertices.push_back(LevelVertex{PointR2{p.first, p.second}, level});
  s.edges = std::move(b.edges);
  s.faces = b.faces;
  return s;
}

// ------------------------------------------------------------ baseline path

int strictly_below(const std::vector<LineR2>& lines, const Rat& x, const Rat& y) {
  int c = 0;
  for (const LineR2& l : lines)
    if (l.at(x) < y) ++c;
  return c;
}

LevelSubdivision baseline_lower(const std::vector<LineR2>& lines, int k) {
  const std::size_t n = lines.size();
  std::map<std::pair<Rat, Rat>, std::set<std::size_t>> through;
  std::vector<std::set<Rat>> on_line(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      if (lines[i].m == lines[j].m) continue;
      Rat x = *crossing_x(lines[i], lines[j]);
      Rat y = lines[i].at(x);
      auto& s = through[{x, y}];
      s.insert(i);
      s.insert(j);
      on_line[i].insert(x);
      on_line[j].insert(x);
    }
  LevelSubdivision out;
  out.k = k;
  out.faces = std::min<long>(k, static_cast<long>(n)) + 1;
  for (auto& [p, ls] : through) {
    int level = strictly_below(lines, p.first, p.second);
    if (level > k) continue;
    out.vertices.push_back(LevelVertex{PointR2{p.first, p.second}, level});
    long m = static_cast<long>(ls.size());
    out.faces += std::max<long>(0, std::min<long>(m - 1, k - level));
  }
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<Rat> xs(on_line[i].begin(), on_line[i].end());
    auto keep = [&](const Rat& x) { return strictly_below(lines, x, lines[i].at(x)) <= k; };
    for (std::size_t j = 0; j <= xs.size(); ++j) {
      LevelEdge e;
      e.line = static_cast<int>(i);
      e.from_minus_inf = j == 0;
      e.to_plus_inf = j == xs.size();
      Rat sample;
      if (xs.empty())
        sample = 0;
      else if (e.from_minus_inf)
        sample = xs.front() - 1;
      else if (e.to_plus_inf)
        sample = xs.back() + 1;
      else
        sample = (xs[j - 1] + xs[j]) / 2;
      if (!e.from_minus_inf) e.x0 = xs[j - 1];
      if (!e.to_plus_inf) e.x1 = xs[j];
      if (keep(sample)) out.edges.push_back(e);
    }
  }
  return out;
}

}  // namespace

LevelSubdivision build_leq_k(const std::vector<LineR2>& lines, int k, Direction dir, LevelMethod method) {
  if (lines.empty()) throw EmptyInput("level of no lines");
  if (k < 0) throw InvariantError("level needs k >= 0");
  const std::vector<LineR2> work = dir == Direction::Lower ? lines : negated(lines);
  LevelSubdivision s = method == LevelMethod::Kinetic ? kinetic_lower(work, k) : baseline_lower(work, k);
  s.dir = dir;
  if (dir == Direction::Upper)
    for (LevelVertex& v : s.vertices) v.p.y = -v.p.y;
  sort_subdivision(s);
  return s;
}

// ------------------------------------------------------------ overlay

namespace {

struct Gap {
  int r = 0, b = 0;  // red members below, blue members above
  int face = -1;
  Rat x0;
  bool x0_inf = true;
  int lower = -1, upper = -1;  // bounding tracks
};

struct OverlayBuilder : SweepVisitor {
  int k = 0;
  bool red_all = false, blue_all = false;
  std::vector<Gap> gaps;
  std::vector<int> gap_above;
  int bottom_gap = -1;
  std::vector<OverlayFace> faces;
  std::vector<std::optional<Rat>> face_born;
  std::vector<char> face_dead;
  std::vector<std::pair<int, int>> adjacency;
  std::vector<PointR2> verts;

  std::optional<LineR2> line(const KineticSweep& s, int t) const {
    if (t < 0) return std::nullopt;
    return s.eq(t);
  }

  int make_gap(const KineticSweep& s, int r, int b, int lower, int upper) {
    Gap g;
    g.r = r;
    g.b = b;
    g.lower = lower;
    g.upper = upper;
    g.x0_inf = s.at_minus_infinity();
    if (!g.x0_inf) g.x0 = s.now();
    const bool exact = (red_all || r < s.member_count(0)) && (blue_all || b < s.member_count(1));
    if (exact) {
      OverlayFace f;
      f.mis = r + b;
      f.valid = f.mis <= k;
      g.face = static_cast<int>(faces.size());
      faces.push_back(std::move(f));
      face_born.push_back(s.at_minus_infinity() ? std::nullopt : std::optional<Rat>(s.now()));
      face_dead.push_back(0);
    }
    gaps.push_back(g);
    return static_cast<int>(gaps.size()) - 1;
  }

  void adjacent(int g1, int g2) {
    int a = gaps[static_cast<std::size_t>(g1)].face, b = gaps[static_cast<std::size_t>(g2)].face;
    if (a >= 0 && b >= 0) adjacency.emplace_back(std::min(a, b), std::max(a, b));
  }

  void close_piece(const KineticSweep& s, int gi, bool to_inf) {
    Gap& g = gaps[static_cast<std::size_t>(gi)];
    if (g.face < 0) return;
    Trapezoid z;
    z.from_minus_inf = g.x0_inf;
    z.x0 = g.x0;
    z.to_plus_inf = to_inf;
    if (!to_inf) z.x1 = s.now();
    if (!z.from_minus_inf && !z.to_plus_inf && z.x0 == z.x1) return;
    z.lower = line(s, g.lower);
    z.upper = line(s, g.upper);
    faces[static_cast<std::size_t>(g.face)].pieces.push_back(std::move(z));
  }

  void restart(const KineticSweep& s, int gi, int lower, int upper) {
    close_piece(s, gi, false);
    Gap& g = gaps[static_cast<std::size_t>(gi)];
    g.x0 = s.now();
    g.x0_inf = false;
    g.lower = lower;
    g.upper = upper;
  }

  int gap_below(int t) const {
    return t < 0 ? bottom_gap : gap_above[static_cast<std::size_t>(t)];
  }

  void start(const KineticSweep& s) override {
    gap_above.assign(static_cast<std::size_t>(s.track_count()), -1);
    int r = 0, b = s.member_count(1);
    bottom_gap = make_gap(s, r, b, -1, s.bottom());
    int prev = bottom_gap;
    for (int t = s.bottom(); t >= 0; t = s.next(t)) {
      if (s.track_family(t) == 0)
        ++r;
      else
        --b;
      int g = make_gap(s, r, b, t, s.next(t));
      gap_above[static_cast<std::size_t>(t)] = g;
      adjacent(prev, g);
      prev = g;
    }
  }

  void swap(const KineticSweep& s, int lo, int up) override {
    verts.push_back(PointR2{s.now(), s.value(lo)});
    const int p = s.prev(lo), q = s.next(up);
    const int below = gap_below(p);
    const int mid = gap_above[static_cast<std::size_t>(lo)];
    const int top = gap_above[static_cast<std::size_t>(up)];
    restart(s, below, p, up);
    close_piece(s, mid, false);
    const Gap old = gaps[static_cast<std::size_t>(mid)];
    if (old.face >= 0 && face_born[static_cast<std::size_t>(old.face)] == s.now())
      face_dead[static_cast<std::size_t>(old.face)] = 1;
    restart(s, top, lo, q);
    int r = old.r, b = old.b;
    if (s.track_family(lo) == 0) --r; else ++b;
    if (s.track_family(up) == 0) ++r; else --b;
    int g = make_gap(s, r, b, up, lo);
    gap_above[static_cast<std::size_t>(lo)] = top;
    gap_above[static_cast<std::size_t>(up)] = g;
    adjacent(below, g);
    adjacent(g, top);
  }

  void exchange(const KineticSweep& s, int, int leaving, int entering) override {
    verts.push_back(PointR2{s.now(), s.value(leaving)});
    const int p = s.prev(leaving), q = s.next(leaving);
    const int below = gap_below(p);
    const int above = gap_above[static_cast<std::size_t>(leaving)];
    restart(s, below, p, entering);
    restart(s, above, entering, q);
    gap_above[static_cast<std::size_t>(entering)] = above;
    gap_above[static_cast<std::size_t>(leaving)] = -1;
  }

  void finish(const KineticSweep& s) override {
    close_piece(s, bottom_gap, true);
    for (int t = s.bottom(); t >= 0; t = s.next(t)) close_piece(s, gap_above[static_cast<std::size_t>(t)], true);
  }
};

Rat sample_x(const Trapezoid& z) {
  if (z.from_minus_inf && z.to_plus_inf) return Rat(0);
  if (z.from_minus_inf) return z.x1 - 1;
  if (z.to_plus_inf) return z.x0 + 1;
  return (z.x0 + z.x1) / 2;
}

PointR2 sample_in(const Trapezoid& z) {
  Rat x = sample_x(z);
  if (z.lower && z.upper) return PointR2{x, (z.lower->at(x) + z.upper->at(x)) / 2};
  if (z.lower) return PointR2{x, z.lower->at(x) + 1};
  if (z.upper) return PointR2{x, z.upper->at(x) - 1};
  return PointR2{x, Rat(0)};
}

// Keep the part of a convex polygon with sign * (y - level) <= 0.
std::vector<PointR2> clip_y(const std::vector<PointR2>& poly, const Rat& level, int sign) {
  std::vector<PointR2> out;
  const std::size_t n = poly.size();
  for (std::size_t i = 0; i < n; ++i) {
    const PointR2& a = poly[i];
    const PointR2& b = poly[(i + 1) % n];
    const bool ina = sign * sepkit::sign(a.y - level) <= 0;
    const bool inb = sign * sepkit::sign(b.y - level) <= 0;
    if (ina) out.push_back(a);
    if (ina != inb) {
      Rat t = (level - a.y) / (b.y - a.y);
      out.push_back(PointR2{a.x + t * (b.x - a.x), level});
    }
  }
  return out;
}

}  // namespace

OverlayFaceMap overlay_and_label(const std::vector<LineR2>& red, const std::vector<LineR2>& blue, int k) {
  if (red.empty() || blue.empty()) throw EmptyInput("overlay needs lines of both colors");
  if (k < 0) throw InvariantError("overlay needs k >= 0");
  KineticSweep sweep({SweepFamily{red, Direction::Lower, k + 1}, SweepFamily{blue, Direction::Upper, k + 1}}, false);
  OverlayBuilder b;
  b.k = k;
  b.red_all = static_cast<int>(red.size()) <= k + 1;
  b.blue_all = static_cast<int>(blue.size()) <= k + 1;
  sweep.run(b);

  OverlayFaceMap out;
  out.k = k;
  std::vector<int> remap(b.faces.size(), -1);
  for (std::size_t i = 0; i < b.faces.size(); ++i) {
    if (b.face_dead[i] || b.faces[i].pieces.empty()) continue;
    remap[i] = static_cast<int>(out.faces.size());
    OverlayFace f = std::move(b.faces[i]);
    for (const Trapezoid& z : f.pieces)
      if (z.from_minus_inf || z.to_plus_inf || !z.lower || !z.upper) f.unbounded = true;
    f.sample = sample_in(f.pieces.front());
    out.faces.push_back(std::move(f));
  }
  for (auto [a, c] : b.adjacency) {
    int x = remap[static_cast<std::size_t>(a)], y = remap[static_cast<std::size_t>(c)];
    if (x >= 0 && y >= 0 && x != y) out.adjacency.emplace_back(std::min(x, y), std::max(x, y));
  }
  std::sort(out.adjacency.begin(), out.adjacency.end());
  out.adjacency.erase(std::unique(out.adjacency.begin(), out.adjacency.end()), out.adjacency.end());

  // box: twice the span of all vertices and line intercepts
  out.vertices = b.verts;
  std::sort(out.vertices.begin(), out.vertices.end(),
            [](const PointR2& a, const PointR2& c) { return a.x != c.x ? a.x < c.x : a.y < c.y; });
  out.vertices.erase(std::unique(out.vertices.begin(), out.vertices.end()), out.vertices.end());
  std::vector<PointR2> pts = b.verts;
  for (const LineR2& l : red) pts.push_back(PointR2{Rat(0), l.c});
  for (const LineR2& l : blue) pts.push_back(PointR2{Rat(0), l.c});
  Rat xmin = pts[0].x, xmax = pts[0].x, ymin = pts[0].y, ymax = pts[0].y;
  for (const PointR2& p : pts) {
    xmin = std::min(xmin, p.x);
    xmax = std::max(xmax, p.x);
    ymin = std::min(ymin, p.y);
    ymax = std::max(ymax, p.y);
  }
  Rat sx = std::max(Rat(xmax - xmin), Rat(1)), sy = std::max(Rat(ymax - ymin), Rat(1));
  out.box = BoundingBox{xmin - sx / 2, xmax + sx / 2, ymin - sy / 2, ymax + sy / 2};
  return out;
}

long OverlayFaceMap::valid_faces() const {
  return static_cast<long>(std::count_if(faces.begin(), faces.end(), [](const OverlayFace& f) { return f.valid; }));
}

std::vector<std::vector<PointR2>> OverlayFaceMap::polygons(int face) const {
  std::vector<std::vector<PointR2>> out;
  for (const Trapezoid& z : faces[static_cast<std::size_t>(face)].pieces) {
    Rat xa = z.from_minus_inf ? box.xmin : std::max(z.x0, box.xmin);
    Rat xb = z.to_plus_inf ? box.xmax : std::min(z.x1, box.xmax);
    if (!(xa < xb)) continue;
    // exact lines first, then clip to the box's horizontal sides
    auto raw_lo = [&](const Rat& x) { return z.lower ? z.lower->at(x) : box.ymin; };
    auto raw_hi = [&](const Rat& x) { return z.upper ? z.upper->at(x) : box.ymax; };
    std::vector<PointR2> poly{{xa, raw_lo(xa)}, {xb, raw_lo(xb)}, {xb, raw_hi(xb)}, {xa, raw_hi(xa)}};
    poly = clip_y(poly, box.ymax, 1);
    if (!poly.empty()) poly = clip_y(poly, box.ymin, -1);
    if (poly.size() >= 3) out.push_back(std::move(poly));
  }
  return out;
}

}  // namespace sepkit
