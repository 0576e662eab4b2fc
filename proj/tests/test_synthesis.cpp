#include <doctest.h>

#include <random>

#include "oracles.hpp"
#include "umwelt/errors.hpp"
#include "umwelt/random_model.hpp"
#include "umwelt/synthesis.hpp"

using namespace umwelt;
using oracle::Blocks;
using oracle::labels;

namespace {

MonteCarloOptions quick_mc() {
  MonteCarloOptions mc;
  mc.samples = 20000;
  mc.tolerance = 0.05;
  return mc;
}

}  // namespace

TEST_CASE("representatives are least indices") {
  auto m = oracle::load_model("five_state.json");
  auto sel = select_representatives(intrinsic_partition(m));
  CHECK(sel.representative == std::vector<StateIndex>{0, 1, 2, 0, 0});
  CHECK(sel.idempotent());
  CHECK(sel.induced_partition(m.world) == intrinsic_partition(m).partition);

  CHECK(select_representatives(Partition::discrete(m.world)).representative == std::vector<StateIndex>{0, 1, 2, 3, 4});
  CHECK(select_representatives(Partition::trivial(m.world)).representative == std::vector<StateIndex>{0, 0, 0, 0, 0});
}

TEST_CASE("five-state model: alpha' copies the rows of state 1 and is certified") {
  auto m = oracle::load_model("five_state.json");
  auto sel = select_representatives(intrinsic_partition(m));
  auto mod = synthesize_alpha_prime(m, sel);
  for (std::size_t w : {0u, 3u, 4u}) {
    CHECK(mod.alpha_prime(w, 1) == Scalar::ratio(1, 2));
    CHECK(mod.alpha_prime(w, 2) == Scalar::ratio(1, 2));
  }
  for (std::size_t w : {1u, 2u})
    for (std::size_t v = 0; v < 5; ++v) CHECK(mod.alpha_prime(w, v) == m.alpha(w, v));
  CHECK(mod.modified().beta == m.beta);
  CHECK(validate(mod.modified()).empty());

  auto cert = verify_equivalence(m, mod);
  CHECK(cert.equivalent);
  CHECK(cert.state_equivalent == std::vector<bool>(5, true));
  CHECK_FALSE(cert.counterexample);
  CHECK(cert.monte_carlo.ran);
  CHECK(cert.monte_carlo.passed);
  CHECK(cert.monte_carlo.max_tv <= 0.02);

  auto min = certify_minimal_model(m, mod);
  CHECK(min.minimal);
  CHECK(labels(min.separate_modified) == Blocks{{"1", "4", "5"}, {"2"}, {"3"}});
}

TEST_CASE("identity selector and block-constant dynamics leave alpha unchanged") {
  auto m = oracle::load_model("five_state.json");
  auto id = synthesize_alpha_prime(m, select_representatives(Partition::discrete(m.world)));
  CHECK(id.alpha_prime == m.alpha);
  CHECK(verify_equivalence(m, id, quick_mc()).equivalent);

  auto minimal = oracle::load_model("already_minimal.json");
  auto mod = synthesize_alpha_prime(minimal, select_representatives(intrinsic_partition(minimal)));
  CHECK(mod.alpha_prime == minimal.alpha);
  auto min = certify_minimal_model(minimal, mod);
  CHECK(min.minimal);
  CHECK(min.separate_modified == w_sep(minimal).partition);
}

TEST_CASE("a corrupted selector yields a short counterexample") {
  auto m = oracle::load_model("already_minimal.json");
  Selector bad{{0, 0, 2}};
  auto mod = synthesize_alpha_prime(m, bad);
  auto cert = verify_equivalence(m, mod, quick_mc());
  CHECK_FALSE(cert.equivalent);
  REQUIRE(cert.counterexample);
  CHECK(cert.counterexample->sensors.size() <= 2);
  CHECK(cert.counterexample->original != cert.counterexample->modified);
  // Both estimators see the corruption.
  CHECK(cert.monte_carlo.max_tv > 0.05);
  MonteCarloOptions plain = quick_mc();
  plain.estimator = Estimator::frequencies;
  CHECK(verify_equivalence(m, mod, plain).monte_carlo.max_tv > 0.05);
  CHECK(m.world.label(cert.counterexample->state) == "y");
  // The witness word really separates the two processes.
  ActionWord word = cert.counterexample->actions;
  word.push_back(0);
  CHECK(sensor_process(m, cert.counterexample->state, word).probability(cert.counterexample->sensors) ==
        cert.counterexample->original);
  CHECK(sensor_process(mod.modified(), cert.counterexample->state, word).probability(cert.counterexample->sensors) ==
        cert.counterexample->modified);
}

TEST_CASE("block mixtures") {
  auto m = oracle::load_model("five_state.json");
  auto sel = select_representatives(intrinsic_partition(m));
  std::vector<Scalar> w{Scalar::ratio(1, 2), Scalar::ratio(1), Scalar::ratio(1), Scalar::ratio(1, 2), Scalar::ratio(0)};
  auto mix = synthesize_alpha_prime(m, sel, w);
  CHECK(mix.alpha_prime(0, 1) == Scalar::ratio(1, 4));
  CHECK(mix.alpha_prime(0, 3) == Scalar::ratio(1, 2));
  CHECK(mix.alpha_prime(4, 3) == Scalar::ratio(1, 2));
  CHECK(verify_equivalence(m, mix, quick_mc()).equivalent);
  CHECK(certify_minimal_model(m, mix).minimal);

  w[4] = Scalar::ratio(1, 3);
  CHECK_THROWS_AS(synthesize_alpha_prime(m, sel, w), PreconditionError);
}

TEST_CASE("union model layout") {
  auto m = oracle::load_model("five_state.json");
  auto u = union_model(m, m);
  CHECK(u.world.size() == 10);
  CHECK(u.world.label(0) == "L:1");
  CHECK(u.world.label(5) == "R:1");
  CHECK(validate(u).empty());
}

TEST_CASE("synthesis properties on random models") {
  std::mt19937_64 rng(77);
  RandomModelBounds b;
  b.max_world = 7;
  MonteCarloOptions off;
  off.enabled = false;
  for (int t = 0; t < 80; ++t) {
    auto m = random_model(rng, b);
    auto intr = intrinsic_partition(m);
    auto sel = select_representatives(intr);
    auto mod = synthesize_alpha_prime(m, sel);
    auto modified = mod.modified();
    const std::size_t nw = m.world.size();
    for (std::size_t a = 0; a < m.action.size(); ++a)
      for (std::size_t w = 0; w < nw; ++w)
        for (std::size_t v = 0; v < nw; ++v) CHECK(mod.alpha_prime(a * nw + w, v) == mod.alpha_prime(a * nw + sel(w), v));
    CHECK(verify_equivalence(m, mod, off).equivalent);
    CHECK(certify_minimal_model(m, mod).minimal);
    CHECK(intrinsic_partition(modified).partition == intr.partition);

    if (t < 20) {
      ActionWord word(4);
      for (auto& a : word) a = rng() % m.action.size();
      for (std::size_t w = 0; w < nw; ++w)
        CHECK(total_variation(sensor_process(m, w, word), sensor_process(modified, w, word)) == 0.0);
    }
  }
}
