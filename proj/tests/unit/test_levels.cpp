#include <doctest.h>

#include "fixtures.hpp"
#include "gen.hpp"
#include "sepkit/errors.hpp"
#include "sepkit/levels.hpp"

#include <set>

using namespace sepkit;
using fx::L;
using fx::q;

namespace {

int below(const std::vector<LineR2>& ls, const PointR2& p) {
  int c = 0;
  for (const auto& l : ls)
    if (l.at(p.x) < p.y) ++c;
  return c;
}
int above(const std::vector<LineR2>& ls, const PointR2& p) {
  int c = 0;
  for (const auto& l : ls)
    if (l.at(p.x) > p.y) ++c;
  return c;
}

bool in_piece(const Trapezoid& z, const PointR2& p) {
  if (!z.from_minus_inf && p.x < z.x0) return false;
  if (!z.to_plus_inf && p.x > z.x1) return false;
  if (z.lower && !(z.lower->at(p.x) < p.y)) return false;
  if (z.upper && !(p.y < z.upper->at(p.x))) return false;
  return true;
}

int face_of(const OverlayFaceMap& m, const PointR2& p) {
  for (std::size_t i = 0; i < m.faces.size(); ++i)
    for (const auto& z : m.faces[i].pieces)
      if (in_piece(z, p)) return static_cast<int>(i);
  return -1;
}

std::vector<Rat> edge_samples(const LevelEdge& e) {
  if (e.from_minus_inf && e.to_plus_inf) return {q(-1000), q(0), q(1000)};
  if (e.from_minus_inf) return {e.x1, e.x1 - 1, e.x1 - 1000};
  if (e.to_plus_inf) return {e.x0, e.x0 + 1, e.x0 + 1000};
  return {e.x0, (e.x0 + e.x1) / 2, e.x1};
}

Rat piece_sample(const ChainPiece& p) {
  if (p.from_minus_inf && p.to_plus_inf) return q(0);
  if (p.from_minus_inf) return p.x1 - 1;
  if (p.to_plus_inf) return p.x0 + 1;
  return (p.x0 + p.x1) / 2;
}

bool same_edges(const LevelSubdivision& a, const LevelSubdivision& b) {
  if (a.edges.size() != b.edges.size()) return false;
  for (std::size_t i = 0; i < a.edges.size(); ++i) {
    const auto &x = a.edges[i], &y = b.edges[i];
    if (x.line != y.line || x.from_minus_inf != y.from_minus_inf || x.to_plus_inf != y.to_plus_inf) return false;
    if (!x.from_minus_inf && x.x0 != y.x0) return false;
    if (!x.to_plus_inf && x.x1 != y.x1) return false;
  }
  return true;
}

bool same_vertices(const LevelSubdivision& a, const LevelSubdivision& b) {
  if (a.vertices.size() != b.vertices.size()) return false;
  for (std::size_t i = 0; i < a.vertices.size(); ++i)
    if (!(a.vertices[i].p == b.vertices[i].p) || a.vertices[i].level != b.vertices[i].level) return false;
  return true;
}

void check_chain_shape(const ChainSet& cs) {
  for (const auto& ch : cs.chains) {
    REQUIRE(!ch.pieces.empty());
    CHECK(ch.pieces.front().from_minus_inf);
    CHECK(ch.pieces.back().to_plus_inf);
    for (std::size_t i = 0; i + 1 < ch.pieces.size(); ++i) {
      const auto &a = ch.pieces[i], &b = ch.pieces[i + 1];
      CHECK(a.x1 == b.x0);
      const LineR2& la = cs.lines[static_cast<std::size_t>(a.line)];
      const LineR2& lb = cs.lines[static_cast<std::size_t>(b.line)];
      CHECK(la.at(a.x1) == lb.at(b.x0));
      if (ch.kind == ChainKind::Concave)
        CHECK(la.m > lb.m);
      else
        CHECK(la.m < lb.m);
    }
  }
}

}  // namespace

TEST_SUITE("levels") {
  TEST_CASE("envelope examples") {
    Chain c = envelope({L(0, 0), L(2, -2)}, Direction::Lower);
    REQUIRE(c.pieces.size() == 2);
    CHECK(c.pieces[0].line == 1);
    CHECK(c.pieces[0].from_minus_inf);
    CHECK(c.pieces[0].x1 == q(1));
    CHECK(c.pieces[1].line == 0);
    CHECK(c.pieces[1].x0 == q(1));
    CHECK(c.pieces[1].to_plus_inf);

    Chain u = envelope({L(0, -2), L(2, 0)}, Direction::Upper);
    REQUIRE(u.pieces.size() == 2);
    CHECK(u.kind == ChainKind::Convex);
    CHECK(u.pieces[0].line == 0);
    CHECK(u.pieces[0].x1 == q(-1));
    CHECK(u.pieces[1].line == 1);

    Chain one = envelope({L(3, 1)}, Direction::Lower);
    REQUIRE(one.pieces.size() == 1);
    CHECK(one.pieces[0].from_minus_inf);
    CHECK(one.pieces[0].to_plus_inf);

    CHECK_THROWS_AS(envelope({}, Direction::Lower), EmptyInput);
  }

  TEST_CASE("level of parallel lines") {
    auto s = build_leq_k({L(0, 0), L(0, 1), L(0, 2)}, 0, Direction::Lower);
    CHECK(s.vertices.empty());
    REQUIRE(s.edges.size() == 1);
    CHECK(s.edges[0].line == 0);
    CHECK(s.edges[0].from_minus_inf);
    CHECK(s.edges[0].to_plus_inf);
    CHECK(s.faces == 1);
  }

  TEST_CASE("two crossing lines with k=1 keep the whole arrangement") {
    auto s = build_leq_k({L(0, 0), L(2, -2)}, 1, Direction::Lower);
    REQUIRE(s.vertices.size() == 1);
    CHECK(s.vertices[0].p == fx::P(1, 0));
    CHECK(s.vertices[0].level == 0);
    CHECK(s.edges.size() == 4);
    CHECK(s.faces == 3);  // the face above both lines has two lines below it
  }

  TEST_CASE("three concurrent lines meet in one vertex") {
    auto s = build_leq_k({L(1, 0), L(-1, 0), L(0, 0)}, 0, Direction::Lower);
    REQUIRE(s.vertices.size() == 1);
    CHECK(s.vertices[0].p == fx::P(0, 0));
    CHECK(s.vertices[0].level == 0);
    CHECK(s.faces == 1);
    auto b = build_leq_k({L(1, 0), L(-1, 0), L(0, 0)}, 0, Direction::Lower, LevelMethod::Baseline);
    CHECK(same_vertices(s, b));
    CHECK(same_edges(s, b));
  }

  TEST_CASE("chain decomposition examples") {
    std::vector<LineR2> two{L(0, 0), L(2, -2)};
    auto c0 = chain_decomposition(two, 0, Direction::Lower);
    REQUIRE(c0.chains.size() == 1);
    Chain env = envelope(two, Direction::Lower);
    REQUIRE(c0.chains[0].pieces.size() == env.pieces.size());
    for (std::size_t i = 0; i < env.pieces.size(); ++i) CHECK(c0.chains[0].pieces[i].line == env.pieces[i].line);

    auto c1 = chain_decomposition(two, 1, Direction::Lower);
    REQUIRE(c1.chains.size() == 2);
    check_chain_shape(c1);
    auto sub = build_leq_k(two, 1, Direction::Lower);
    for (const auto& e : sub.edges)
      for (const Rat& x : edge_samples(e)) {
        Rat y = two[static_cast<std::size_t>(e.line)].at(x);
        bool hit = false;
        for (std::size_t c = 0; c < c1.chains.size(); ++c) hit = hit || c1.value(c, x) == y;
        CHECK(hit);
      }

    std::vector<LineR2> par{L(1, 0), L(1, 3), L(1, -2), L(1, 7)};
    for (int k : {0, 1, 2, 5}) {
      auto cs = chain_decomposition(par, k, Direction::Upper);
      CHECK(static_cast<int>(cs.chains.size()) == std::min(k + 1, 4));
      for (const auto& ch : cs.chains) CHECK(ch.pieces.size() == 1);
    }
  }

  TEST_CASE("overlay examples") {
    auto ds3 = fx::ds3();
    auto m = overlay_and_label(fx::duals(ds3, Color::Red), fx::duals(ds3, Color::Blue), 1);
    int a = face_of(m, PointR2{q(1), q(-1, 2)});
    REQUIRE(a >= 0);
    CHECK(m.faces[static_cast<std::size_t>(a)].mis == 1);
    CHECK(m.faces[static_cast<std::size_t>(a)].valid);
    int b = face_of(m, fx::P(1, 1));
    REQUIRE(b >= 0);
    CHECK(m.faces[static_cast<std::size_t>(b)].mis == 3);
    CHECK_FALSE(m.faces[static_cast<std::size_t>(b)].valid);

    auto none = overlay_and_label({L(0, 0)}, {L(0, 1)}, 0);
    CHECK(none.valid_faces() == 0);

    auto band = overlay_and_label({L(0, 1)}, {L(0, 0)}, 0);
    CHECK(band.valid_faces() == 1);
    for (const auto& f : band.faces)
      if (f.valid) {
        CHECK(f.unbounded);
        CHECK(f.mis == 0);
      }
    CHECK_THROWS_AS(overlay_and_label({}, {L(0, 0)}, 0), EmptyInput);
  }

  TEST_CASE("clipped polygons stay inside the box") {
    auto ds3 = fx::ds3();
    auto m = overlay_and_label(fx::duals(ds3, Color::Red), fx::duals(ds3, Color::Blue), 2);
    for (std::size_t f = 0; f < m.faces.size(); ++f)
      for (const auto& poly : m.polygons(static_cast<int>(f))) {
        CHECK(poly.size() >= 3);
        for (const auto& p : poly) {
          CHECK(p.x >= m.box.xmin);
          CHECK(p.x <= m.box.xmax);
          CHECK(p.y >= m.box.ymin);
          CHECK(p.y <= m.box.ymax);
        }
      }
  }

  TEST_CASE("kinetic and baseline levels agree; vertices are sound") {
    gen::Rng rng(11);
    int probes = 0;
    for (int it = 0; it < 120; ++it) {
      int n = static_cast<int>(rng.uniform(1, 14));
      auto ls = gen::lines(rng, n, 4, 8);
      int k = static_cast<int>(rng.uniform(0, n));
      for (Direction d : {Direction::Lower, Direction::Upper}) {
        auto a = build_leq_k(ls, k, d, LevelMethod::Kinetic);
        auto b = build_leq_k(ls, k, d, LevelMethod::Baseline);
        CHECK(same_vertices(a, b));
        CHECK(same_edges(a, b));
        CHECK(a.faces == b.faces);
        for (const auto& v : a.vertices) {
          int lv = d == Direction::Lower ? below(ls, v.p) : above(ls, v.p);
          CHECK(lv == v.level);
          CHECK(lv <= k);
          ++probes;
        }
      }
    }
    CHECK(probes > 200);
  }

  TEST_CASE("chains cover the level, stay inside it and bend one way") {
    gen::Rng rng(12);
    for (int it = 0; it < 120; ++it) {
      int n = static_cast<int>(rng.uniform(1, 16));
      auto ls = gen::lines(rng, n, 5, 10);
      int k = static_cast<int>(rng.uniform(0, 5));
      for (Direction d : {Direction::Lower, Direction::Upper}) {
        auto cs = chain_decomposition(ls, k, d);
        CHECK(static_cast<int>(cs.chains.size()) == std::min(k + 1, n));
        check_chain_shape(cs);
        for (std::size_t c = 0; c < cs.chains.size(); ++c)
          for (const auto& p : cs.chains[c].pieces) {
            Rat x = piece_sample(p);
            PointR2 pt{x, ls[static_cast<std::size_t>(p.line)].at(x)};
            CHECK((d == Direction::Lower ? below(ls, pt) : above(ls, pt)) <= k);
          }
        auto sub = build_leq_k(ls, k, d);
        for (const auto& e : sub.edges)
          for (const Rat& x : edge_samples(e)) {
            Rat y = ls[static_cast<std::size_t>(e.line)].at(x);
            bool hit = false;
            for (std::size_t c = 0; c < cs.chains.size() && !hit; ++c) hit = cs.value(c, x) == y;
            CHECK(hit);
          }
      }
    }
  }

  TEST_CASE("bichromatic vertices inside both levels lie on chain crossings") {
    gen::Rng rng(13);
    for (int it = 0; it < 60; ++it) {
      auto red = gen::lines(rng, static_cast<int>(rng.uniform(1, 10)), 4, 8);
      auto blue = gen::lines(rng, static_cast<int>(rng.uniform(1, 10)), 4, 8);
      int k = static_cast<int>(rng.uniform(0, 4));
      auto rc = chain_decomposition(red, k, Direction::Lower);
      auto bc = chain_decomposition(blue, k, Direction::Upper);
      std::set<std::pair<Rat, Rat>> found;
      for (const auto& a : rc.chains)
        for (const auto& b : bc.chains)
          for (const auto& pa : a.pieces)
            for (const auto& pb : b.pieces) {
              auto p = crossing(red[static_cast<std::size_t>(pa.line)], blue[static_cast<std::size_t>(pb.line)]);
              if (!p) continue;
              auto inside = [&](const ChainPiece& z) {
                return (z.from_minus_inf || z.x0 <= p->x) && (z.to_plus_inf || p->x <= z.x1);
              };
              if (inside(pa) && inside(pb)) found.insert({p->x, p->y});
            }
      for (const auto& r : red)
        for (const auto& b : blue) {
          auto p = crossing(r, b);
          if (!p || below(red, *p) > k || above(blue, *p) > k) continue;
          CHECK(found.count({p->x, p->y}) == 1);
        }
    }
  }

  TEST_CASE("overlay labels match direct counts and neighbours differ by one") {
    gen::Rng rng(14);
    long checked = 0;
    for (int it = 0; it < 100; ++it) {
      auto pts = gen::general_points(rng, static_cast<int>(rng.uniform(2, 14)), 30);
      auto red = fx::duals(pts, Color::Red), blue = fx::duals(pts, Color::Blue);
      int k = static_cast<int>(rng.uniform(0, 4));
      auto m = overlay_and_label(red, blue, k);
      for (const auto& f : m.faces) {
        int r = below(red, f.sample), b = above(blue, f.sample);
        CHECK(f.mis == r + b);
        CHECK(f.valid == (f.mis <= k));
        CHECK(in_piece(f.pieces.front(), f.sample));
        ++checked;
      }
      for (auto [a, b] : m.adjacency) {
        int d = m.faces[static_cast<std::size_t>(a)].mis - m.faces[static_cast<std::size_t>(b)].mis;
        CHECK((d == 1 || d == -1));
      }
      // every valid point of the plane lies in a valid face
      for (int s = 0; s < 10; ++s) {
        PointR2 p{rng.rat(-20, 20, 3), rng.rat(-60, 60, 7)};
        int mis = below(red, p) + above(blue, p);
        if (mis > k) continue;
        int f = face_of(m, p);
        bool on_line = false;
        for (const auto& l : red) on_line = on_line || l.at(p.x) == p.y;
        for (const auto& l : blue) on_line = on_line || l.at(p.x) == p.y;
        if (on_line) continue;
        REQUIRE(f >= 0);
        CHECK(m.faces[static_cast<std::size_t>(f)].mis == mis);
      }
    }
    CHECK(checked > 300);
  }

  TEST_CASE("kinetic sweep reports its work") {
    gen::Rng rng(15);
    auto ls = gen::lines(rng, 30);
    KineticSweep s({SweepFamily{ls, Direction::Lower, 3}}, false);
    SweepVisitor v;
    s.run(v);
    CHECK(s.stats().events > 0);
    CHECK(s.member_count(0) == 3);
    for (int r = 0; r + 1 < 3; ++r) CHECK(s.before(s.member(0, r), s.member(0, r + 1)));
  }
}
