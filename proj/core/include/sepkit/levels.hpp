#pragma once

#include "sepkit/geom.hpp"

#include <optional>
#include <queue>
#include <string>
#include <vector>

namespace sepkit {

// Lower: count lines strictly below a point. Upper: strictly above.
enum class Direction { Lower, Upper };

// ------------------------------------------------------------------ sweep

// Kinetic sweep from x = -inf to +inf.  Each family keeps its K extreme
// lines (bottom K for Lower, top K for Upper) as members; members of all
// families live in one vertically sorted list together with an optional
// midline track halfway between the lowest member of family 0 (Lower) and
// the highest member of family 1 (Upper).
class KineticSweep;

struct SweepVisitor {
  virtual ~SweepVisitor() = default;
  virtual void start(const KineticSweep&) {}
  // Adjacent tracks meet at now(); called before they trade places.
  virtual void swap(const KineticSweep&, int /*lower*/, int /*upper*/) {}
  // `entering` (a non-member) replaces `leaving` as the K-th member.
  virtual void exchange(const KineticSweep&, int /*family*/, int /*leaving*/, int /*entering*/) {}
  // The midline changed direction at now().
  virtual void midline_bend(const KineticSweep&) {}
  // Every event at now() has been handled.
  virtual void batch_end(const KineticSweep&) {}
  virtual void finish(const KineticSweep&) {}
};

struct SweepFamily {
  std::vector<LineR2> lines;
  Direction dir = Direction::Lower;
  int K = 1;
};

struct SweepStats {
  long events = 0;
  long swaps = 0;
  long exchanges = 0;
  long tournament = 0;
  long stale = 0;
};

class KineticSweep {
 public:
  KineticSweep(std::vector<SweepFamily> families, bool with_midline);
  void run(SweepVisitor& v);

  int families() const { return static_cast<int>(fams_.size()); }
  const SweepFamily& family(int f) const { return fams_[static_cast<std::size_t>(f)]; }
  int track_count() const { return static_cast<int>(eq_.size()); }
  int midline() const { return midline_; }
  bool is_midline(int t) const { return t == midline_; }
  int track_family(int t) const { return fam_of_[static_cast<std::size_t>(t)]; }
  int track_index(int t) const { return idx_of_[static_cast<std::size_t>(t)]; }  // index in family.lines
  int track_of(int f, int i) const { return first_[static_cast<std::size_t>(f)] + i; }
  const LineR2& eq(int t) const { return eq_[static_cast<std::size_t>(t)]; }
  int rank(int t) const { return rank_[static_cast<std::size_t>(t)]; }
  int member(int f, int r) const { return members_[static_cast<std::size_t>(f)][static_cast<std::size_t>(r)]; }
  int member_count(int f) const { return static_cast<int>(members_[static_cast<std::size_t>(f)].size()); }
  int next(int t) const { return next_[static_cast<std::size_t>(t)]; }
  int prev(int t) const { return prev_[static_cast<std::size_t>(t)]; }
  int bottom() const { return bottom_; }
  int top() const { return top_; }

  bool at_minus_infinity() const { return !started_; }
  const Rat& now() const { return now_; }
  Rat value(int t) const { return eq(t).at(now_); }

  // Members of f with value at now() strictly below / above y.
  int count_below(int f, const Rat& y) const;
  int count_above(int f, const Rat& y) const;

  const SweepStats& stats() const { return stats_; }

  // Order just right of now(), or at -inf before the first event.
  bool before(int a, int b) const;

 private:
  enum Kind { Adjacent, Boundary, Knockout };
  struct Event {
    Rat t;
    int kind;
    int a, b;
    unsigned ver;
  };
  struct Later {
    bool operator()(const Event& x, const Event& y) const { return x.t > y.t; }
  };

  std::optional<Rat> meet_after(int lo, int hi) const;  // when `hi` drops below `lo`
  bool better(int f, int a, int b) const;               // a beats b for entering f
  void adjacent_cert(int lo);
  void boundary_cert(int f);
  void tourney_pull(int f, int node);
  void tourney_set(int f, int leaf, bool active);
  void refresh_midline(SweepVisitor& v);
  void link_replace(int old_t, int new_t);
  void do_swap(int lo, SweepVisitor& v);
  void do_exchange(int f, SweepVisitor& v);
  void push(Rat t, int kind, int a, int b, unsigned ver);

  std::vector<SweepFamily> fams_;
  std::vector<int> first_;
  std::vector<LineR2> eq_;
  std::vector<int> fam_of_, idx_of_, rank_;
  std::vector<std::vector<int>> members_;
  std::vector<int> next_, prev_;
  std::vector<unsigned> adj_ver_, bnd_ver_;
  int bottom_ = -1, top_ = -1;
  int midline_ = -1;

  struct Tourney {
    int size = 0;  // leaves
    std::vector<int> win;
    std::vector<unsigned> ver;
  };
  std::vector<Tourney> tour_;

  std::priority_queue<Event, std::vector<Event>, Later> pq_;
  Rat now_;
  bool started_ = false;
  bool midline_dirty_ = false;
  SweepStats stats_;
};

// ------------------------------------------------------------------ chains

enum class ChainKind { Concave, Convex };

struct ChainPiece {
  int line = 0;  // index into the owning ChainSet's lines
  Rat x0, x1;
  bool from_minus_inf = false, to_plus_inf = false;
};

struct Chain {
  std::vector<ChainPiece> pieces;
  ChainKind kind = ChainKind::Concave;

  // Piece covering x (the left one at a breakpoint).
  std::size_t piece_at(const Rat& x) const;
};

struct ChainSet {
  std::vector<LineR2> lines;
  std::vector<Chain> chains;
  Direction dir = Direction::Lower;
  std::string source = "static";

  Rat value(std::size_t chain, const Rat& x) const;
  const LineR2& line_of(std::size_t chain, std::size_t piece) const;
  std::size_t piece_count() const;
};

// Lower envelope is concave, upper envelope convex.
Chain envelope(const std::vector<LineR2>& lines, Direction dir);
ChainSet envelope_set(const std::vector<LineR2>& lines, Direction dir);

// min(k+1, n) chains that together cover the <=k-level; each chain is
// concave (Lower) or convex (Upper) and spans the whole x-axis.
ChainSet chain_decomposition(const std::vector<LineR2>& lines, int k, Direction dir);

// ------------------------------------------------------------------ levels

struct LevelVertex {
  PointR2 p;
  int level = 0;  // lines strictly on the counted side
};

struct LevelEdge {
  int line = 0;
  Rat x0, x1;
  bool from_minus_inf = false, to_plus_inf = false;
};

struct LevelSubdivision {
  Direction dir = Direction::Lower;
  int k = 0;
  std::vector<LevelVertex> vertices;  // sorted by (x, y)
  std::vector<LevelEdge> edges;       // sorted by (line, x0)
  long faces = 0;
};

enum class LevelMethod { Kinetic, Baseline };

LevelSubdivision build_leq_k(const std::vector<LineR2>& lines, int k, Direction dir,
                             LevelMethod method = LevelMethod::Kinetic);

// ------------------------------------------------------------------ overlay

struct Trapezoid {
  Rat x0, x1;
  bool from_minus_inf = false, to_plus_inf = false;
  std::optional<LineR2> lower, upper;  // empty: unbounded
};

struct OverlayFace {
  int mis = 0;
  bool valid = false;
  bool unbounded = false;
  PointR2 sample;
  std::vector<Trapezoid> pieces;
};

struct BoundingBox {
  Rat xmin, xmax, ymin, ymax;
};

struct OverlayFaceMap {
  int k = 0;
  std::vector<OverlayFace> faces;               // faces of the region only
  std::vector<std::pair<int, int>> adjacency;   // faces sharing an edge
  std::vector<PointR2> vertices;                // crossings of tracked lines, by (x, y)
  BoundingBox box;
  long valid_faces() const;
  // Clipped trapezoid polygons of a face, counter-clockwise.
  std::vector<std::vector<PointR2>> polygons(int face) const;
};

// Region where at most k red lines lie strictly below and at most k blue
// lines strictly above; faces labeled with red-below + blue-above.
OverlayFaceMap overlay_and_label(const std::vector<LineR2>& red, const std::vector<LineR2>& blue, int k);

}  // namespace sepkit
