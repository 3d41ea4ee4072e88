#include <cmath>
#include <random>

#include "doctest.h"
#include "toy_domain.hpp"

using namespace rae;
using namespace rae::upom;

namespace {

UtilityParams params(double k, std::map<ObjectId, double> rewards = {}) {
  UtilityParams p;
  p.k = k;
  p.eta = 1000;
  p.rewards = std::move(rewards);
  return p;
}

}  // namespace

TEST_CASE("utility: hand-evaluated examples") {
  const auto p = params(0.1, {{"o", 10.0}});
  CHECK(utility(UtilityTrace{}, p) == 0.0);
  UtilityTrace t;
  t.steps = {{"a", {}, 2}, {"b", {"o"}, 3}};
  CHECK(utility(t, p) == doctest::Approx(7.63918).epsilon(1e-6));
  CHECK(collection_term(10.0, 5, p) == doctest::Approx(10.0 * (0.4 + 0.6 * std::exp(-0.5))));

  t.start_cost = 5;
  CHECK(utility(t, p) == doctest::Approx(10.0 * (0.4 + 0.6 * std::exp(-1.0))));
}

TEST_CASE("utility: near-zero decay gives the reward sum") {
  auto p = params(1e-15, {{"a", 3.0}, {"b", 4.0}});
  UtilityTrace t;
  t.steps = {{"x", {"a"}, 100}, {"y", {"b"}, 200}};
  CHECK(utility(t, p) == doctest::Approx(7.0));
}

TEST_CASE("utility: partial success keeps earlier terms") {
  const auto p = params(0.05, {{"a", 10.0}, {"b", 8.0}});
  UtilityTrace t;
  t.steps = {{"grasp", {}, 4}, {"place", {"a"}, 4}, {"grasp", {}, 4}};
  CHECK(utility(t, p) == collection_term(10.0, 8, p));
}

TEST_CASE("utility: properties") {
  std::mt19937_64 rng(7);
  std::uniform_int_distribution<int> cost(0, 30);
  for (int i = 0; i < 200; ++i) {
    const auto p = params(0.01 + 0.1 * uniform01(rng), {{"o", 1.0 + 20.0 * uniform01(rng)}});
    const std::int64_t c = cost(rng);
    CHECK(collection_term(p.reward("o"), c, p) >= collection_term(p.reward("o"), c + 1 + cost(rng), p));
    UtilityTrace t;
    t.steps = {{"s", {"o"}, c}};
    auto zero = p;
    zero.rewards["o"] = 0.0;
    CHECK(utility(t, zero) == 0.0);
  }
}

TEST_CASE("utility params validation") {
  CHECK_NOTHROW(params(0.1).validate());
  auto bad = params(0.1);
  bad.c2 = 0.5;
  CHECK_THROWS(bad.validate());
  CHECK_THROWS(params(0.0).validate());
}

TEST_CASE("ucb_select cases") {
  auto d = toy::ten_vs_two();
  const auto cands = applicable_instances(d->task, WorldState{}, d->methods);
  REQUIRE(cands.size() == 2);
  SearchNode node;
  CHECK(ucb_select(node, {cands[0]}, 1.4) == 0);
  node.stats[cands[0].key()] = {3, 9.0};
  CHECK(ucb_select(node, cands, 1.4) == 1);
  node.stats[cands[1].key()] = {3, 1.0};
  CHECK(ucb_select(node, cands, 0.0) == 0);
  node.stats[cands[1].key()] = {3, 9.0};
  CHECK(ucb_select(node, cands, 0.0) == 0);
  node.stats[cands[0].key()] = {10, 5.0};
  node.stats[cands[1].key()] = {1, 5.0};
  CHECK(ucb_select(node, cands, 1.0, 10.0) == 1);
  CHECK_THROWS(ucb_select(node, {}, 1.0));
}

TEST_CASE("rollout: deterministic and failing methods") {
  auto d = toy::make({{"sure", "a", 10.0, 1.0}, {"never", "b", 10.0, 0.0}});
  Rng rng(3);
  SearchStore store;
  PlannerConfig cfg;
  double a_sum = 0, b_sum = 0;
  int a_n = 0, b_n = 0;
  for (int i = 0; i < 100; ++i) {
    const auto rec = rollout(d->task, WorldState{}, d->planning, store, rng, cfg);
    REQUIRE(rec.path.size() == 1);
    if (rec.path[0].args[0] == Value(std::string("a"))) {
      CHECK(rec.terminated_by == Termination::kCompletion);
      a_sum += rec.utility;
      ++a_n;
    } else {
      CHECK(rec.terminated_by == Termination::kCommandFailure);
      b_sum += rec.utility;
      ++b_n;
    }
  }
  REQUIRE(a_n > 0);
  REQUIRE(b_n > 0);
  CHECK(a_sum / a_n == doctest::Approx(10.0).epsilon(1e-6));
  CHECK(b_sum == 0.0);
}

TEST_CASE("rollout: no applicable instance") {
  MethodRegistry reg;
  reg.declare_task("t", 0);
  toy::TakeSimulator sim({});
  PlanningDomain pd{&reg, &sim, params(0.1)};
  SearchStore store;
  Rng rng(1);
  const auto rec = rollout(TaskSignature{"t", {}}, WorldState{}, pd, store, rng, PlannerConfig{});
  CHECK(rec.path.empty());
  CHECK(rec.utility == 0.0);
  CHECK(rec.terminated_by == Termination::kCommandFailure);
}

TEST_CASE("rollout: cost never exceeds eta") {
  auto d = toy::make({{"sure", "a", 10.0, 1.0}});
  d->planning.utility.eta = 5;
  WorldState s;
  s.time_passed = 5;
  SearchStore store;
  Rng rng(1);
  const auto rec = rollout(d->task, s, d->planning, store, rng, PlannerConfig{});
  CHECK(rec.terminated_by == Termination::kTimeLimit);
  CHECK(rec.end_time <= 5);
  CHECK(rec.utility == 0.0);
}

TEST_CASE("select_method_instance") {
  SUBCASE("better method wins at budget 100") {
    auto d = toy::ten_vs_two();
    Rng rng(11);
    const auto r = select_method_instance(d->task, WorldState{}, d->planning, {.budget = 100}, rng);
    REQUIRE(r.chosen);
    CHECK(r.chosen->name() == "large");
    CHECK(r.records.size() == 100);
  }
  SUBCASE("budget 1 returns the sampled root choice") {
    auto d = toy::ten_vs_two();
    Rng rng(11);
    const auto r = select_method_instance(d->task, WorldState{}, d->planning, {.budget = 1}, rng);
    REQUIRE(r.records.size() == 1);
    REQUIRE(r.chosen);
    CHECK(r.chosen->key() == r.candidates[r.records[0].root_candidate].key());
  }
  SUBCASE("all failing -> none") {
    auto d = toy::make({{"x", "a", 10.0, 0.0}, {"y", "b", 10.0, 0.0}});
    Rng rng(2);
    const auto r = select_method_instance(d->task, WorldState{}, d->planning, {.budget = 20}, rng);
    CHECK_FALSE(r.chosen);
    CHECK(r.records.size() == 20);
  }
  SUBCASE("exclusions and empty candidates") {
    auto d = toy::ten_vs_two();
    Rng rng(2);
    const auto r = select_method_instance(d->task, WorldState{}, d->planning, {.budget = 10}, rng, {"large()"});
    REQUIRE(r.candidates.size() == 1);
    CHECK(r.chosen->name() == "small");
    const auto none =
        select_method_instance(d->task, WorldState{}, d->planning, {.budget = 10}, rng, {"large()", "small()"});
    CHECK(none.candidates.empty());
    CHECK_FALSE(none.chosen);
    CHECK_THROWS(select_method_instance(d->task, WorldState{}, d->planning, {.budget = 0}, rng));
  }
  SUBCASE("deterministic per seed") {
    auto d = toy::ten_vs_two();
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
      Rng a(seed), b(seed);
      const auto ra = select_method_instance(d->task, WorldState{}, d->planning, {.budget = 30}, a);
      const auto rb = select_method_instance(d->task, WorldState{}, d->planning, {.budget = 30}, b);
      CHECK(ra.chosen->key() == rb.chosen->key());
      REQUIRE(ra.records.size() == rb.records.size());
      for (std::size_t i = 0; i < ra.records.size(); ++i) CHECK(ra.records[i].path_key() == rb.records[i].path_key());
    }
  }
}

TEST_CASE("cluster_rollouts") {
  auto rec = [](const std::string& cmd, double u) {
    RolloutRecord r;
    r.path = {{cmd, {}, true}};
    r.utility = u;
    return r;
  };
  std::vector<RolloutRecord> same(100, rec("a", 5.0));
  auto c = cluster_rollouts(same);
  REQUIRE(c.size() == 1);
  CHECK(c[0].size == 100);
  CHECK(c[0].success);

  std::vector<RolloutRecord> distinct;
  for (int i = 0; i < 100; ++i) distinct.push_back(rec("c" + std::to_string(i), 0.5));
  c = cluster_rollouts(distinct);
  CHECK(c.size() == 100);
  for (const auto& cl : c) CHECK_FALSE(cl.success);

  std::mt19937_64 rng(5);
  std::vector<RolloutRecord> mixed;
  for (int i = 0; i < 100; ++i) {
    const int k = static_cast<int>(rng() % 7);
    mixed.push_back(rec("m" + std::to_string(k), k * 0.4));
  }
  c = cluster_rollouts(mixed);
  int total = 0;
  std::set<std::string> keys;
  for (const auto& cl : c) {
    total += cl.size;
    CHECK(keys.insert(cl.path_key).second);
    CHECK(cl.success == (cl.utility > 1.0));
  }
  CHECK(total == 100);
}
