#include <doctest.h>

#include <algorithm>
#include <random>

#include "oracles.hpp"
#include "umwelt/errors.hpp"
#include "umwelt/random_model.hpp"
#include "umwelt/refinement.hpp"

using namespace umwelt;
using oracle::Blocks;
using oracle::labels;

TEST_CASE("five-state model: sigma(beta), refinement and the fixpoint") {
  auto m = oracle::load_model("five_state.json");
  auto sb = sigma_beta(m);
  CHECK(labels(sb) == Blocks{{"1", "4", "5"}, {"2"}, {"3"}});
  CHECK(labels(refine_step(m, sb)) == Blocks{{"1"}, {"2"}, {"3"}, {"4", "5"}});

  auto sep = w_sep(m);
  CHECK(labels(sep.partition) == Blocks{{"1"}, {"2"}, {"3"}, {"4", "5"}});
  CHECK(sep.trace.fixpoint_index == 1);
  REQUIRE(sep.trace.stages.size() == 2);
  CHECK(sep.trace.stages[0] == sb);

  // One action, so kappa carries the same information as alpha.
  CHECK(w_am(m).partition == sep.partition);
}

TEST_CASE("sigma(beta) edge cases") {
  auto m = oracle::load_model("already_minimal.json");
  CHECK(sigma_beta(m).is_discrete());
  auto blind = remove_sensor_state(remove_sensor_state(m, 2), 1);
  CHECK(blind.sensor.size() == 1);
  CHECK(sigma_beta(blind).is_trivial());
}

TEST_CASE("refine_step fixpoints") {
  auto m = oracle::load_model("five_state.json");
  auto d = Partition::discrete(m.world);
  CHECK(refine_step(m, d) == d);

  // Identical alpha rows for every action leave any partition unchanged.
  auto c = m;
  for (std::size_t w = 0; w < 5; ++w)
    for (std::size_t v = 0; v < 5; ++v) c.alpha(w, v) = Scalar::ratio(v == 1 ? 1 : 0);
  auto sb = sigma_beta(c);
  CHECK(refine_step(c, sb) == sb);
}

TEST_CASE("constant sensors and constant dynamics give the trivial partition in zero steps") {
  auto m = oracle::load_model("five_state.json");
  for (std::size_t w = 0; w < 5; ++w) {
    m.beta(w, 0) = Scalar::ratio(1, 2);
    m.beta(w, 1) = Scalar::ratio(1, 2);
    for (std::size_t v = 0; v < 5; ++v) m.alpha(w, v) = Scalar::ratio(1, 5);
  }
  auto sep = w_sep(m);
  CHECK(sep.partition.is_trivial());
  CHECK(sep.trace.fixpoint_index == 0);
}

TEST_CASE("w_am preconditions and zero-weight actions") {
  auto m = oracle::load_model("memoryless_violation.json");
  m.memoryless = false;
  CHECK_THROWS_AS(w_am(m), PreconditionError);

  // Two actions where the policy never picks the second one: its dynamics
  // must not create splits.
  auto base = oracle::load_model("five_state.json");
  const FiniteSpace A("A", {"a0", "a1"});
  Kernel alpha("alpha", {A, base.world}, {base.world});
  for (std::size_t w = 0; w < 5; ++w)
    for (std::size_t v = 0; v < 5; ++v) {
      alpha(w, v) = base.alpha(w, v);
      alpha(5 + w, v) = Scalar::ratio(v == w ? 1 : 0);
    }
  Kernel pi("pi", {base.memory}, {A});
  pi(0, 0) = Scalar::ratio(1);
  auto two = make_model(alpha, base.beta, base.phi, pi, true);
  CHECK(w_am(two).partition == w_am(base).partition);
}

TEST_CASE("check_invariance") {
  auto m = oracle::load_model("five_state.json");
  auto intrinsic = Partition::from_block_ids(m.world, std::vector<std::size_t>{0, 1, 2, 0, 0});
  auto r = check_invariance(m, intrinsic);
  CHECK_FALSE(r.invariant);
  REQUIRE(r.witness);
  CHECK(r.witness->action == 0);
  CHECK(m.world.label(r.witness->state) == "1");
  CHECK(m.world.label(r.witness->other) == "4");
  REQUIRE(r.witness->block.size() == 1);
  CHECK(m.world.label(r.witness->block[0]) == "2");
  CHECK(r.witness->mass_state == Scalar::ratio(1, 2));
  CHECK(r.witness->mass_other == Scalar::ratio(0));

  CHECK(check_invariance(m, w_sep(m).partition).invariant);
  CHECK(check_invariance(m, Partition::discrete(m.world)).invariant);
}

TEST_CASE("w_sep equals the exhaustively found coarsest stable partition") {
  std::mt19937_64 rng(2024);
  RandomModelBounds b;
  b.max_world = 6;
  b.max_action = 2;
  for (int t = 0; t < 60; ++t) {
    auto m = random_model(rng, b);
    auto sep = w_sep(m);
    auto expected = oracle::coarsest_stable_partition(m);
    REQUIRE(!expected.empty());
    CHECK(sep.partition == Partition::from_block_ids(m.world, expected));
    CHECK(sep.trace.fixpoint_index + 1 <= m.world.size());
  }
}

TEST_CASE("refinement properties on random models") {
  std::mt19937_64 rng(99);
  for (int t = 0; t < 150; ++t) {
    auto m = random_model(rng);
    auto sep = w_sep(m);
    const auto& stages = sep.trace.stages;
    CHECK(stages.size() <= m.world.size());
    for (std::size_t i = 1; i < stages.size(); ++i) {
      CHECK(stages[i].refines(stages[i - 1]));
      CHECK(stages[i].block_count() > stages[i - 1].block_count());
    }
    CHECK(refine_step(m, sep.partition) == sep.partition);
    CHECK(check_invariance(m, sep.partition).invariant);

    // Joint (a, w) signatures yield the same fixpoint as per-action ones.
    Partition p = sigma_beta(m);
    const std::size_t nw = m.world.size();
    for (;;) {
      std::vector<std::string> keys(nw);
      for (std::size_t w = 0; w < nw; ++w) {
        keys[w] = std::to_string(p.block_of(w));
        for (std::size_t a = 0; a < m.action.size(); ++a)
          for (const auto& block : p.blocks()) keys[w] += "," + mass_on(m.world_step(a, w), block).to_string();
      }
      std::vector<std::size_t> ids(nw);
      for (std::size_t w = 0; w < nw; ++w)
        ids[w] = static_cast<std::size_t>(std::find(keys.begin(), keys.end(), keys[w]) - keys.begin());
      auto next = Partition::from_block_ids(m.world, ids);
      if (next == p) break;
      p = next;
    }
    CHECK(p == sep.partition);

    if (m.memoryless) {
      auto am = w_am(m);
      CHECK(am.partition.refines(sigma_beta(m)));
      CHECK(am.trace.stages.size() <= m.world.size());
      CHECK_NOTHROW(to_string(compare_partitions(am.partition, sep.partition)));
    }
  }
}

TEST_CASE("every strictly coarser beta-respecting partition breaks invariance") {
  std::mt19937_64 rng(5);
  RandomModelBounds b;
  b.max_world = 6;
  for (int t = 0; t < 40; ++t) {
    auto m = random_model(rng, b);
    auto sep = w_sep(m).partition;
    auto sb = sigma_beta(m);
    oracle::for_each_partition(m.world.size(), [&](const std::vector<std::size_t>& ids) {
      auto p = Partition::from_block_ids(m.world, ids);
      if (p == sep || !sep.refines(p) || !p.refines(sb)) return;
      CHECK_FALSE(check_invariance(m, p).invariant);
    });
  }
}

TEST_CASE("compare_partitions") {
  const FiniteSpace X("X", {"1", "2", "3"});
  auto a = Partition::from_block_ids(X, std::vector<std::size_t>{0, 0, 1});
  auto b = Partition::from_block_ids(X, std::vector<std::size_t>{0, 1, 1});
  CHECK(compare_partitions(a, a) == Relation::equal);
  CHECK(compare_partitions(Partition::discrete(X), a) == Relation::finer);
  CHECK(compare_partitions(a, Partition::discrete(X)) == Relation::coarser);
  CHECK(compare_partitions(a, b) == Relation::incomparable);
}
