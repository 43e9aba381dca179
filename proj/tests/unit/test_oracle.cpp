#include <doctest.h>

#include "fixtures.hpp"
#include "gen.hpp"
#include "sepkit/errors.hpp"
#include "sepkit/oracle.hpp"

using namespace sepkit;
using fx::L;
using fx::q;

TEST_SUITE("oracle") {
  TEST_CASE("1d scan") {
    auto r1 = oracle_1d(fx::ds1(), 1);
    REQUIRE(r1.separator_x);
    CHECK(r1.max_dist == q(2));
    auto r4 = oracle_1d(fx::ds1(), 4);
    REQUIRE(r4.separator_x);
    CHECK(*r4.separator_x == q(4));
    CHECK(r4.max_dist == q(1));
    std::vector<Point1D> reds{{q(1), Color::Red, 0}, {q(4), Color::Red, 1}};
    auto r = oracle_1d(reds, 2);
    REQUIRE(r.separator_x);
    CHECK(r.max_dist == 0);
    CHECK(!oracle_1d(fx::ds1(), 0).separator_x);
  }

  TEST_CASE("fewest misclassifications") {
    CHECK(oracle_minmis(fx::ds3()) == 1);
    CHECK(oracle_minmis(fx::ds2()) == 0);
    ConstraintSet band;
    band.red.push_back({L(0, 0), 0});
    band.blue.push_back({L(0, 1), 1});
    CHECK(oracle_leftmost_valid(band, 0).status == LPStatus::Infeasible);
  }

  TEST_CASE("farthest error under a budget") {
    auto d1 = oracle_kmm(fx::ds3(), 1);
    CHECK(d1.feasible);
    CHECK(d1.max_sq == q(2));
    REQUIRE(d1.witness);
    CHECK(classify_mis(*d1.witness, fx::ds3()).max_sq == q(2));
    CHECK(classify_mis(*d1.witness, fx::ds3()).mis <= 1);
    auto d4 = oracle_kmm(fx::ds3(), 4);
    CHECK(d4.max_sq == q(1, 2));
    auto d0 = oracle_kmm(fx::ds3(), 0);
    CHECK(!d0.feasible);
    auto s = oracle_kmm(fx::ds2(), 0);
    CHECK(s.feasible);
    CHECK(s.max_sq == 0);
  }

  TEST_CASE("cap") {
    gen::Rng rng(3);
    auto pts = gen::general_points(rng, 12, 40);
    CHECK_THROWS_AS(oracle_kmm(pts, 1, 10), CapExceeded);
  }

  TEST_CASE("larger budgets never hurt") {
    gen::Rng rng(4);
    for (int it = 0; it < 30; ++it) {
      auto pts = gen::general_points(rng, static_cast<int>(rng.uniform(3, 12)), 20);
      auto all = oracle_kmm_upto(pts, 5);
      for (std::size_t k = 0; k < all.size(); ++k) {
        CHECK(all[k].max_sq == oracle_kmm(pts, static_cast<int>(k)).max_sq);
        if (k > 0 && all[k - 1].feasible) {
          CHECK(all[k].feasible);
          CHECK(all[k].max_sq <= all[k - 1].max_sq);
        }
        if (all[k].feasible) {
          auto m = classify_mis(*all[k].witness, pts);
          CHECK(m.mis <= static_cast<int>(k));
          CHECK(m.max_sq == all[k].max_sq);
        }
      }
    }
  }

  TEST_CASE("brute force fewest misclassifications agrees with the LP solver") {
    gen::Rng rng(5);
    for (int it = 0; it < 60; ++it) {
      auto pts = gen::general_points(rng, static_cast<int>(rng.uniform(2, 20)), 30);
      int fast = std::min(static_min_violations(dual_constraints(pts, Orientation::BlueAbove)).first,
                          static_min_violations(dual_constraints(pts, Orientation::RedAbove)).first);
      CHECK(oracle_minmis(pts) == fast);
      auto feasible_at = oracle_kmm(pts, fast);
      CHECK(feasible_at.feasible);
      if (fast > 0) CHECK(!oracle_kmm(pts, fast - 1).feasible);
    }
  }
}
