#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "caa/adversary.hpp"
#include "caa/config.hpp"
#include "caa/metrics.hpp"
#include "caa/simnet.hpp"

using namespace caa;

TEST_CASE("true centroid") {
  Scenario sc = build_strong_validity_lb_scenario(4, 1, 2, Schedule::Synchronous);
  Vec c = true_centroid(sc);
  CHECK(c[0] == Catch::Approx(1.0 / 3.0));
  CHECK(c[1] == 0.0);

  Scenario cl = build_convex_lb_scenario(3, 1, 1.0, 0.0);
  Vec cc = true_centroid(cl);
  CHECK(cc[0] == Catch::Approx(0.75));
  CHECK(cc[1] == 0.0);
  CHECK(cc[2] == 0.0);

  Scenario same = sc;
  same.inputs.assign(4, Vec{2, 2});
  CHECK(true_centroid(same) == Vec{2, 2});
}

TEST_CASE("optimal radius from committed inputs") {
  {
    Transcript tr = run(build_strong_validity_lb_scenario(4, 1, 2, Schedule::Synchronous));
    CHECK(opt_radius(tr) == Catch::Approx(1.0 / 6.0).margin(1e-12));
  }
  {
    Transcript tr = run(build_convex_lb_scenario(3, 1, 1.0, 0.0));
    CHECK(opt_radius(tr) == Catch::Approx(0.125).margin(1e-12));
  }
  {
    // silent byzantine nodes leave only n-t committed inputs: one possible
    // centroid, radius zero
    Scenario sc = build_strong_validity_lb_scenario(4, 1, 2, Schedule::Synchronous);
    sc.adversary = AdversaryStrategy{};  // Silent
    Transcript tr = run(sc);
    CHECK(committed_inputs(tr).size() == 3);
    CHECK(opt_radius(tr) == 0.0);
  }
  {
    // f=0 twin of the lower-bound scenario commits the same multiset
    Scenario sc = build_strong_validity_lb_scenario(4, 1, 2, Schedule::Synchronous);
    sc.f = 0;
    sc.byz_ids.clear();
    sc.adversary = AdversaryStrategy{};
    Transcript tr = run(sc);
    CHECK(committed_inputs(tr).size() == 4);
    CHECK(opt_radius(tr) == Catch::Approx(1.0 / 6.0).margin(1e-12));
  }
}

TEST_CASE("approximation ratio conventions") {
  // radius 0 with an exact hit reports 1
  Scenario sc = build_strong_validity_lb_scenario(4, 1, 2, Schedule::Synchronous);
  sc.adversary = AdversaryStrategy{};  // silent => radius 0
  sc.inputs = {{3, 3}, {3, 3}, {3, 3}, {9, 9}};  // byz input never sent
  Transcript tr = run(sc);
  RunReport rep = evaluate(tr);
  CHECK(rep.opt_radius == 0.0);
  CHECK(rep.approx_ratio == 1.0);

  // radius 0 with a miss reports infinity; no protocol here actually
  // misses under a round-1-silent adversary, so feed the evaluator a
  // transcript whose decisions were knocked off the centroid
  Transcript forced = tr;
  for (auto& [id, v] : forced.decided) v[0] += 1.0;
  RunReport rep2 = evaluate(forced);
  CHECK(rep2.opt_radius == 0.0);
  CHECK(std::isinf(rep2.approx_ratio));
}

TEST_CASE("validity tri-states") {
  {
    // unanimous correct inputs, byzantine elsewhere: strong holds, weak n/a
    Scenario sc = build_strong_validity_lb_scenario(4, 1, 2, Schedule::Synchronous);
    sc.inputs = {{2, 1}, {2, 1}, {2, 1}, {0, 0}};
    Transcript tr = run(sc);
    RunReport rep = evaluate(tr);
    CHECK(rep.strong_valid == TriState::Holds);
    CHECK(rep.weak_valid == TriState::NotApplicable);
    CHECK(rep.box_valid == TriState::Holds);
    CHECK(rep.convex_valid == TriState::Holds);
  }
  {
    // all correct and unanimous: weak applies and holds
    Scenario sc;
    sc.kind = ProtocolKind::SyncBox;
    sc.schedule = Schedule::Synchronous;
    sc.n = 4;
    sc.t = 1;
    sc.f = 0;
    sc.d = 2;
    sc.epsilon = 0.05;
    sc.seed = 5;
    sc.inputs.assign(4, Vec{1, 1});
    Transcript tr = run(sc);
    RunReport rep = evaluate(tr);
    CHECK(rep.weak_valid == TriState::Holds);
    CHECK(rep.strong_valid == TriState::Holds);
  }
  {
    Transcript tr = run(build_mda_box_breaker_scenario(5, 1, 2));
    RunReport rep = evaluate(tr);
    CHECK(rep.box_valid == TriState::Violated);
    CHECK(rep.strong_valid == TriState::NotApplicable);
  }
}

TEST_CASE("epsilon agreement") {
  Scenario sc = build_strong_validity_lb_scenario(4, 1, 2, Schedule::Synchronous);
  Transcript tr = run(sc);
  REQUIRE(tr.all_correct_decided());
  CHECK(eps_agreement(tr, sc.epsilon));
  RunReport rep = evaluate(tr);
  REQUIRE(rep.eps_agreement);
  CHECK(*rep.eps_agreement);
  CHECK(rep.max_pairwise_final_dist <= sc.epsilon);
}

TEST_CASE("safe-area ratio of the lower-bound presets") {
  Transcript d3 = run(preset_scenario("convex-lb-d3"));
  const double r3 = safe_area_ratio(d3);
  CHECK(r3 > 5.99);
  CHECK(r3 <= 6.0);

  Transcript d2 = run(preset_scenario("convex-lb-d2"));
  const double r2 = safe_area_ratio(d2);
  CHECK(r2 > 3.99);
  CHECK(r2 <= 4.0);
}

TEST_CASE("the true centroid lies in the hull of the committed subset centroids") {
  for (std::uint64_t seed : {11ULL, 12ULL, 13ULL, 14ULL}) {
    Scenario sc;
    sc.kind = ProtocolKind::SyncBox;
    sc.schedule = Schedule::Synchronous;
    sc.n = 7;
    sc.t = 2;
    sc.f = static_cast<int>(seed % 3);  // also exercises f < t
    sc.d = 2;
    sc.epsilon = 0.05;
    sc.seed = seed;
    Rng rng(seed * 17);
    for (int i = 0; i < 7; ++i) sc.inputs.push_back({rng.uniform(0, 8), rng.uniform(0, 8)});
    for (int i = 7 - sc.f; i < 7; ++i) sc.byz_ids.push_back(i);
    sc.adversary.kind = AdversaryKind::Seeded;
    sc.adversary.value_range = {0.0, 8.0};
    Transcript tr = run(sc);
    PointSet cents = enumerate_centroids(committed_inputs(tr), 5);
    CHECK(in_convex_hull(true_centroid(sc), cents));
  }
}

TEST_CASE("correct vector timeline tracks frozen nodes") {
  Scenario sc = build_strong_validity_lb_scenario(4, 1, 2, Schedule::Synchronous);
  Transcript tr = run(sc);
  auto timeline = correct_vector_timeline(tr);
  REQUIRE(timeline.size() == static_cast<std::size_t>(tr.rounds_used) + 1);
  CHECK(timeline.front().at(0) == sc.inputs[0]);
  for (const auto& [id, v] : tr.decided) CHECK(timeline.back().at(id) == v);
}
