#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "caa/adversary.hpp"
#include "caa/hull.hpp"
#include "caa/metrics.hpp"
#include "caa/simnet.hpp"

using namespace caa;

TEST_CASE("convex lower-bound scenario shape") {
  Scenario sc = build_convex_lb_scenario(3, 1, 1.0, 0.0);
  CHECK(sc.n == 5);
  CHECK(sc.t == 1);
  CHECK(sc.f == 1);
  CHECK(sc.d == 3);
  CHECK(sc.inputs[0] == Vec{0, 0, 0});
  CHECK(sc.inputs[1] == Vec{1, 0, 0});
  CHECK(sc.byz_ids == std::vector<int>{4});
  CHECK_NOTHROW(validate(sc));

  Scenario d2 = build_convex_lb_scenario(2, 2, 1.0, 1e-6);
  CHECK(d2.n == 7);
  CHECK(d2.inputs[2] == d2.inputs[1]);  // one group of t=2 shares a vector
}

TEST_CASE("convex lower bound collapses the safe area to the origin") {
  Scenario sc = build_convex_lb_scenario(2, 1, 1.0, 1e-6);
  Transcript tr = run(sc);
  PointSet committed = committed_inputs(tr);
  REQUIRE(committed.size() == 4);
  std::optional<Vec> p = safe_point(committed, sc.n - sc.t);
  REQUIRE(p);
  CHECK(std::abs((*p)[0]) < 1e-5);
  CHECK(std::abs((*p)[1]) < 1e-5);
}

TEST_CASE("convex lower bound ratio approaches 2d from below") {
  for (int d : {2, 3}) {
    const double at_small = safe_area_ratio(run(build_convex_lb_scenario(d, 1, 1.0, 1e-6)));
    const double at_large = safe_area_ratio(run(build_convex_lb_scenario(d, 1, 1.0, 1e-3)));
    CHECK(at_small <= 2.0 * d + 1e-12);
    CHECK(at_large < at_small);                // monotone approach
    CHECK(2.0 * d - at_small < 1e-3);
  }
}

TEST_CASE("strong-validity lower-bound scenarios") {
  Scenario sync = build_strong_validity_lb_scenario(4, 1, 2, Schedule::Synchronous);
  CHECK(sync.kind == ProtocolKind::SyncBox);
  CHECK(sync.inputs == PointSet{{0, 0}, {0, 0}, {1, 0}, {0, 0}});
  CHECK(sync.byz_ids == std::vector<int>{3});
  CHECK_NOTHROW(validate(sync));

  Scenario async = build_strong_validity_lb_scenario(7, 2, 2, Schedule::Asynchronous);
  CHECK(async.kind == ProtocolKind::AsyncBox);
  CHECK(async.adversary.kind == AdversaryKind::AsyncHider);
  CHECK(async.adversary.victims.size() == 2);
  int e1_count = 0;
  for (const Vec& v : async.correct_inputs()) e1_count += v == Vec{1, 0} ? 1 : 0;
  CHECK(e1_count == 4);  // 2t holders of e1
  CHECK_NOTHROW(validate(async));
}

TEST_CASE("mda box breaker emits the off-axis vector scaled by the live spread") {
  Scenario sc = build_mda_box_breaker_scenario(5, 1, 2);
  CHECK_NOTHROW(validate(sc));
  Transcript tr = run(sc);
  REQUIRE_FALSE(tr.aborted);

  // round 1: correct spread is 1, so the byzantine vector is (0, 0.999)
  bool found = false;
  for (const RoundRecord& rec : tr.records) {
    if (rec.round != 1) continue;
    for (std::size_t i = 0; i < rec.accepted_senders.size(); ++i) {
      if (sc.is_byzantine(rec.accepted_senders[i])) {
        found = true;
        CHECK(rec.accepted_vectors[i][0] == 0.0);
        CHECK(rec.accepted_vectors[i][1] == Catch::Approx(0.999));
      }
    }
  }
  CHECK(found);

  // decided vectors end up off the segment spanned by the correct inputs
  RunReport rep = evaluate(tr);
  CHECK(rep.box_valid == TriState::Violated);
  for (const auto& [id, v] : tr.decided) CHECK(v[1] > sc.epsilon);
  CHECK(consistent_broadcasts(tr));
}

TEST_CASE("the same breaker strategy cannot push the box algorithm outside") {
  Scenario sc = build_mda_box_breaker_scenario(5, 1, 2);
  sc.kind = ProtocolKind::SyncBox;
  sc.name = "";
  Transcript tr = run(sc);
  REQUIRE_FALSE(tr.aborted);
  RunReport rep = evaluate(tr);
  CHECK(rep.box_valid == TriState::Holds);
}

TEST_CASE("seeded strategy output passes the consistency validator") {
  for (std::uint64_t seed : {1ULL, 2ULL, 3ULL}) {
    Scenario sc;
    sc.kind = ProtocolKind::SyncBox;
    sc.schedule = Schedule::Synchronous;
    sc.n = 7;
    sc.t = 2;
    sc.f = 2;
    sc.d = 2;
    sc.epsilon = 0.05;
    sc.seed = seed;
    Rng rng(seed * 31);
    for (int i = 0; i < 7; ++i) sc.inputs.push_back({rng.uniform(0, 8), rng.uniform(0, 8)});
    sc.byz_ids = {5, 6};
    sc.adversary.kind = AdversaryKind::Seeded;
    sc.adversary.value_range = {0.0, 8.0};
    Transcript tr = run(sc);
    CHECK(consistent_broadcasts(tr));
  }
}

TEST_CASE("builder argument validation") {
  CHECK_THROWS_AS(build_convex_lb_scenario(1, 1, 1.0, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(build_convex_lb_scenario(2, 0, 1.0, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(build_convex_lb_scenario(2, 1, 0.0, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(build_strong_validity_lb_scenario(6, 2, 2, Schedule::Synchronous),
                  std::invalid_argument);
  CHECK_THROWS_AS(build_mda_box_breaker_scenario(4, 1, 2), std::invalid_argument);
  CHECK_THROWS_AS(build_mda_box_breaker_scenario(5, 1, 1), std::invalid_argument);
}
