#include <doctest.h>

#include "fixtures.hpp"
#include "gen.hpp"
#include "sepkit/errors.hpp"
#include "sepkit/hull.hpp"

#include <map>
#include <set>

using namespace sepkit;
using fx::P;
using fx::q;

namespace {

// Random points with distinct x per color and no collinear triples.
std::vector<LabeledPoint> distinct_x(gen::Rng& rng, int n, long range) {
  std::vector<LabeledPoint> out;
  std::set<std::pair<int, Rat>> seen;
  for (auto& p : gen::general_points(rng, n, range)) {
    if (!seen.insert({static_cast<int>(p.color), p.point.x}).second) continue;
    out.push_back(p);
  }
  return out;
}

std::vector<HullVertex> verts(const std::vector<LabeledPoint>& pts, Color c) {
  std::vector<HullVertex> out;
  for (const auto& p : pts)
    if (p.color == c) out.push_back({p.point, p.id});
  return out;
}

bool same_chain(const std::vector<HullVertex>& a, const std::vector<HullVertex>& b) {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a[i].p != b[i].p || a[i].id != b[i].id) return false;
  return true;
}

// Nothing strictly between the two lines through the witness points.
bool strip_empty(const StripResult& s, const std::vector<LabeledPoint>& pts) {
  const Rat dx = s.blue_point.x - s.red_point.x, dy = s.blue_point.y - s.red_point.y;
  const Rat hi = dx * dx + dy * dy;
  for (const auto& p : pts) {
    const Rat t = dx * (p.point.x - s.red_point.x) + dy * (p.point.y - s.red_point.y);
    if (0 < t && t < hi) return false;
  }
  return true;
}

}  // namespace

TEST_SUITE("hull") {
  TEST_CASE("static hull chains") {
    std::vector<HullVertex> sq{{P(0, 0), 0}, {P(1, 2), 1}, {P(2, 1), 2}, {P(3, 3), 3}, {P(4, 0), 4}, {P(2, 5), 5}};
    auto h = convex_hull(sq);
    REQUIRE(h.upper.size() == 4);
    CHECK(h.upper[1].id == 5);
    CHECK(h.upper[2].id == 3);
    REQUIRE(h.lower.size() == 2);
    auto poly = h.polygon();
    CHECK(poly.size() == 4);
    for (std::size_t i = 0; i < poly.size(); ++i)
      CHECK(orient(poly[i].p, poly[(i + 1) % 4].p, poly[(i + 2) % 4].p) > 0);
  }

  TEST_CASE("dynamic hull tracks the static one") {
    for (std::uint64_t seed : {80u, 81u, 82u}) {
      gen::Rng rng(seed);
      DynHull h(seed);
      std::map<int, PointR2> live;
      std::set<Rat> xs;
      int next = 0;
      for (int step = 0; step < 400; ++step) {
        if (!live.empty() && rng.uniform(0, 99) < 40) {
          auto it = live.begin();
          std::advance(it, rng.uniform(0, static_cast<long>(live.size()) - 1));
          xs.erase(it->second.x);
          h.erase(it->first);
          live.erase(it);
        } else {
          PointR2 p{rng.rat(-60, 60, 3), rng.rat(-60, 60, 3)};
          if (xs.count(p.x)) {
            CHECK_THROWS_AS(h.insert(p, next++), DuplicateCoordinate);
            continue;
          }
          xs.insert(p.x);
          live.emplace(next, p);
          h.insert(p, next++);
        }
        std::vector<HullVertex> all;
        for (const auto& [id, p] : live) all.push_back({p, id});
        auto want = convex_hull(all);
        auto got = h.chains();
        INFO("seed=" << seed << " step=" << step);
        REQUIRE(same_chain(got.upper, want.upper));
        REQUIRE(same_chain(got.lower, want.lower));
      }
      CHECK(h.height() <= 40);
      CHECK_THROWS_AS(h.erase(-5), UnknownId);
    }
  }

  TEST_CASE("parallel segments") {
    auto s = max_margin_static(fx::ds2());
    REQUIRE(s.status == StripStatus::Separable);
    CHECK(s.width_sq == 9);
    REQUIRE(s.separator);
    CHECK(s.separator->line == LineR2{q(0), q(3, 2)});
    CHECK(s.separator->orientation == Orientation::BlueAbove);
    CHECK(dist_sq(s.red_point, s.blue_point) == 9);
  }

  TEST_CASE("crossed diagonals") {
    CHECK(max_margin_static(fx::ds3()).status == StripStatus::NotSeparable);
  }

  TEST_CASE("two single points") {
    std::vector<LabeledPoint> pts{{P(0, 0), Color::Red, 0}, {P(3, 4), Color::Blue, 1}};
    auto s = max_margin_static(pts);
    REQUIRE(s.status == StripStatus::Separable);
    CHECK(s.width_sq == 25);
    REQUIRE(s.separator);
    CHECK(s.separator->line.m == q(-3, 4));
    CHECK(s.separator->line.at(q(3, 2)) == 2);
    CHECK(s.red_ids == std::vector<int>{0});
    CHECK(s.blue_ids == std::vector<int>{1});
  }

  TEST_CASE("vertical middle line and empty side") {
    std::vector<LabeledPoint> pts{{P(0, 0), Color::Red, 0}, {P(2, 0), Color::Blue, 1}};
    auto s = max_margin_static(pts);
    REQUIRE(s.status == StripStatus::Separable);
    CHECK(!s.separator);
    CHECK(s.width_sq == 4);
    CHECK(s.middle.eval(P(1, 7)) == 0);
    CHECK(max_margin_static(gen::of_color(fx::ds2(), Color::Red)).status == StripStatus::EmptySide);
  }

  TEST_CASE("touching hulls") {
    std::vector<LabeledPoint> pts{{P(0, 0), Color::Red, 0}, {P(2, 2), Color::Red, 1}, {P(1, 1), Color::Blue, 2},
                                  {P(3, 0), Color::Blue, 3}};
    CHECK(max_margin_static(pts).status == StripStatus::NotSeparable);
  }

  TEST_CASE("dynamic examples") {
    DynMargin m(fx::ds2());
    const auto before = m.result();
    auto a = m.insert({PointR2{q(1, 2), q(1)}, Color::Blue, 10});
    REQUIRE(a.status == StripStatus::Separable);
    CHECK(a.width_sq == 1);
    REQUIRE(a.separator);
    CHECK(a.separator->line == LineR2{q(0), q(1, 2)});
    auto back = m.erase(10);
    CHECK(back.same_value(before));
    CHECK(back.red_point == before.red_point);
    CHECK(back.blue_point == before.blue_point);
    auto b = m.insert({PointR2{q(1, 2), q(-1)}, Color::Blue, 11});
    CHECK(b.status == StripStatus::NotSeparable);
    CHECK_THROWS_AS(m.erase(99), UnknownId);
    CHECK_THROWS_AS(m.insert({P(0, 7), Color::Red, 12}), DuplicateCoordinate);
  }

  TEST_CASE("dynamic margin equals static") {
    for (std::uint64_t seed : {90u, 91u, 92u, 93u}) {
      gen::Rng rng(seed);
      // two clouds pushed apart so that separable states are common
      auto pool = distinct_x(rng, 60, 40);
      const long shift = static_cast<long>(seed % 2) * 30;
      for (auto& p : pool) p.point.y += p.color == Color::Red ? -shift : shift;
      DynMargin m;
      std::vector<LabeledPoint> live;
      std::vector<LabeledPoint> idle = pool;
      int separable = 0;
      for (int step = 0; step < 300; ++step) {
        StripResult got;
        if (!live.empty() && (idle.empty() || rng.uniform(0, 99) < 45)) {
          const auto i = static_cast<std::size_t>(rng.uniform(0, static_cast<long>(live.size()) - 1));
          got = m.erase(live[i].id);
          idle.push_back(live[i]);
          live.erase(live.begin() + static_cast<long>(i));
        } else {
          const auto i = static_cast<std::size_t>(rng.uniform(0, static_cast<long>(idle.size()) - 1));
          got = m.insert(idle[i]);
          live.push_back(idle[i]);
          idle.erase(idle.begin() + static_cast<long>(i));
        }
        auto want = max_margin_static(live);
        INFO("seed=" << seed << " step=" << step);
        REQUIRE(got.same_value(want));
        if (got.status != StripStatus::Separable) continue;
        ++separable;
        CHECK(dist_sq(got.red_point, got.blue_point) == got.width_sq);
        CHECK(strip_empty(got, live));
        // perpendicular to the witness segment
        const Rat dx = got.blue_point.x - got.red_point.x, dy = got.blue_point.y - got.red_point.y;
        CHECK(got.middle.a * dy - got.middle.b * dx == 0);
        if (got.separator && dx != 0) CHECK(got.separator->line.m * (dy / dx) == -1);
        if (got.separator) {
          auto mis = classify_mis(*got.separator, live);
          CHECK(mis.mis == 0);
        }
      }
      if (seed % 2) CHECK(separable > 50);
    }
  }

  TEST_CASE("hull vertices define the witness") {
    gen::Rng rng(95);
    for (int it = 0; it < 50; ++it) {
      auto pts = distinct_x(rng, static_cast<int>(rng.uniform(2, 25)), 30);
      for (auto& p : pts) p.point.x += p.color == Color::Red ? -40 : 40;
      auto s = max_margin_static(pts);
      REQUIRE(s.status == StripStatus::Separable);
      auto rh = convex_hull(verts(pts, Color::Red)).polygon();
      auto bh = convex_hull(verts(pts, Color::Blue)).polygon();
      // brute force over all point pairs bounds the hull distance from above
      Rat best = -1;
      for (const auto& r : verts(pts, Color::Red))
        for (const auto& b : verts(pts, Color::Blue))
          if (best < 0 || dist_sq(r.p, b.p) < best) best = dist_sq(r.p, b.p);
      CHECK(s.width_sq <= best);
      CHECK(strip_empty(s, pts));
      CHECK(strip_between(rh, bh).width_sq == s.width_sq);
    }
  }
}
