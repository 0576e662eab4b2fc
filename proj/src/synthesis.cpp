#include "umwelt/synthesis.hpp"

#include <random>

#include "umwelt/errors.hpp"

namespace umwelt {

bool Selector::idempotent() const {
  for (auto r : representative)
    if (r >= representative.size() || representative[r] != r) return false;
  return true;
}

Partition Selector::induced_partition(const FiniteSpace& world) const {
  if (representative.size() != world.size()) throw SpaceMismatch("selector size differs from the world space");
  return Partition::from_block_ids(world, representative);
}

Selector select_representatives(const Partition& partition) {
  Selector sel;
  sel.representative.resize(partition.size());
  for (const auto& block : partition.blocks())
    for (auto s : block) sel.representative[s] = block.front();
  return sel;
}

Selector select_representatives(const IntrinsicResult& intrinsic) {
  return select_representatives(intrinsic.partition);
}

LoopModel ModifiedModel::modified() const {
  LoopModel m = base;
  m.alpha = alpha_prime;
  m.alpha.set_name("alpha");
  return m;
}

ModifiedModel synthesize_alpha_prime(const LoopModel& m, const Selector& selector,
                                     const std::optional<std::vector<Scalar>>& mixture) {
  const std::size_t nw = m.world.size();
  if (selector.representative.size() != nw) throw SpaceMismatch("selector size differs from the world space");
  for (auto r : selector.representative)
    if (r >= nw) throw PreconditionError("selector maps outside the world space");

  ModifiedModel out{m, selector, m.alpha};
  out.alpha_prime.set_name("alpha_prime");
  if (!mixture) {
    for (std::size_t a = 0; a < m.action.size(); ++a) {
      for (std::size_t w = 0; w < nw; ++w) {
        auto src = m.world_step(a, selector(w));
        auto dst = out.alpha_prime.row(a * nw + w);
        std::copy(src.begin(), src.end(), dst.begin());
      }
    }
    return out;
  }

  const auto& weights = *mixture;
  if (weights.size() != nw) throw SpaceMismatch("mixture weights need one entry per world state");
  const Partition fibres = selector.induced_partition(m.world);
  for (const auto& block : fibres.blocks()) {
    Scalar total = m.arithmetic.zero();
    for (auto u : block) {
      if (weights[u] < Scalar()) throw PreconditionError("mixture weights must be non-negative");
      total += weights[u];
    }
    if (!m.arithmetic.equal(total, m.arithmetic.one()))
      throw PreconditionError("mixture weights of block containing '" + m.world.label(block.front()) +
                              "' sum to " + total.to_string());
    for (std::size_t a = 0; a < m.action.size(); ++a) {
      std::vector<Scalar> row(nw, m.arithmetic.zero());
      for (auto u : block) {
        auto src = m.world_step(a, u);
        for (std::size_t v = 0; v < nw; ++v) row[v] += weights[u] * src[v];
      }
      for (auto w : block) {
        auto dst = out.alpha_prime.row(a * nw + w);
        std::copy(row.begin(), row.end(), dst.begin());
      }
    }
  }
  return out;
}

LoopModel union_model(const LoopModel& left, const LoopModel& right) {
  if (left.sensor != right.sensor || left.action != right.action || left.memory != right.memory ||
      left.world.size() != right.world.size())
    throw SpaceMismatch("union_model: models must share S, C, A and |W|");
  const std::size_t nw = left.world.size();
  std::vector<std::string> labels;
  for (const auto& l : left.world.labels()) labels.push_back("L:" + l);
  for (const auto& l : right.world.labels()) labels.push_back("R:" + l);
  FiniteSpace world(left.world.name(), std::move(labels));
  const auto& arith = left.arithmetic;

  Kernel alpha("alpha", {left.action, world}, {world}, arith);
  Kernel beta("beta", {world}, {left.sensor}, arith);
  for (std::size_t w = 0; w < nw; ++w) {
    for (std::size_t s = 0; s < left.sensor.size(); ++s) {
      beta(w, s) = left.beta(w, s);
      beta(nw + w, s) = right.beta(w, s);
    }
    for (std::size_t a = 0; a < left.action.size(); ++a) {
      auto l = left.world_step(a, w);
      auto r = right.world_step(a, w);
      for (std::size_t v = 0; v < nw; ++v) {
        alpha(a * 2 * nw + w, v) = l[v];
        alpha(a * 2 * nw + nw + w, nw + v) = r[v];
      }
    }
  }
  return make_model(std::move(alpha), std::move(beta), left.phi, left.pi, left.memoryless, arith);
}

std::string to_string(Estimator e) { return e == Estimator::paths ? "paths" : "frequencies"; }

EquivalenceCertificate verify_equivalence(const LoopModel& m, const ModifiedModel& mod, const MonteCarloOptions& mc) {
  const std::size_t nw = m.world.size();
  const LoopModel modified = mod.modified();
  const LoopModel joint = union_model(m, modified);
  const IntrinsicResult result = intrinsic_partition(joint);

  EquivalenceCertificate cert;
  cert.basis_dimension = result.basis.dimension();
  cert.state_equivalent.resize(nw);
  cert.equivalent = true;
  for (std::size_t w = 0; w < nw; ++w) {
    cert.state_equivalent[w] = result.partition.same_block(w, nw + w);
    if (cert.state_equivalent[w]) continue;
    cert.equivalent = false;
    auto v = distinguishing_word(result, w, nw + w, m.arithmetic);
    if (v && (!cert.counterexample || v->sensors.size() < cert.counterexample->sensors.size()))
      cert.counterexample = Counterexample{w, v->sensors, v->actions, v->values[w], v->values[nw + w]};
  }

  if (!mc.enabled || mc.horizon == 0) return cert;
  cert.monte_carlo.ran = true;
  cert.monte_carlo.estimator = mc.estimator;
  std::mt19937_64 words(mc.seed);
  std::uniform_int_distribution<std::size_t> letter(0, m.action.size() - 1);
  for (std::size_t w = 0; w < nw; ++w) {
    for (std::size_t k = 0; k < mc.words_per_state; ++k) {
      ActionWord word(mc.horizon);
      for (auto& a : word) a = letter(words);
      const auto exact = sensor_process(m, w, word);
      const auto empirical = mc.estimator == Estimator::paths ? simulate_paths(modified, w, word, mc.samples, words())
                                                               : simulate(modified, w, word, mc.samples, words());
      const double tv = total_variation(exact, empirical);
      ++cert.monte_carlo.pairs;
      if (tv > cert.monte_carlo.max_tv || cert.monte_carlo.pairs == 1) {
        cert.monte_carlo.max_tv = tv;
        cert.monte_carlo.worst_state = w;
        cert.monte_carlo.worst_word = word;
      }
    }
  }
  cert.monte_carlo.passed = cert.monte_carlo.max_tv <= mc.tolerance;
  return cert;
}

MinimalityCertificate certify_minimal_model(const LoopModel& m, const ModifiedModel& mod) {
  MinimalityCertificate cert{false, w_sep(mod.modified()).partition, intrinsic_partition(m).partition};
  cert.minimal = cert.separate_modified == cert.intrinsic_original;
  return cert;
}

}  // namespace umwelt
