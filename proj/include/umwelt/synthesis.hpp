#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "umwelt/intrinsic.hpp"

namespace umwelt {

/// Idempotent choice of one representative world state per block.
struct Selector {
  std::vector<StateIndex> representative;

  StateIndex operator()(StateIndex w) const { return representative.at(w); }
  bool idempotent() const;
  /// Partition of W into the fibres of the selector.
  Partition induced_partition(const FiniteSpace& world) const;
};

/// Least-indexed state of each block.
Selector select_representatives(const IntrinsicResult& intrinsic);
Selector select_representatives(const Partition& partition);

struct ModifiedModel {
  LoopModel base;
  Selector selector;
  /// alpha'_a(w) = alpha_a(selector(w)), or a block mixture when weights are given.
  Kernel alpha_prime;

  /// The base model with alpha replaced by alpha'.
  LoopModel modified() const;
};

/// Copies each state's alpha rows from its representative. With `mixture`,
/// alpha'_a(w) is instead sum over u in the selector fibre of w of
/// mixture[u] * alpha_a(u); the weights of each fibre must sum to one
/// (PreconditionError otherwise).
ModifiedModel synthesize_alpha_prime(const LoopModel& model, const Selector& selector,
                                     const std::optional<std::vector<Scalar>>& mixture = std::nullopt);

/// Disjoint union of two models over the same S, C, A: world labels are
/// prefixed "L:" and "R:", alpha acts within each copy, beta is shared.
LoopModel union_model(const LoopModel& left, const LoopModel& right);

enum class Estimator {
  paths,        ///< simulate_paths: sampled world paths, exact sensor laws
  frequencies,  ///< simulate: plain sensor-word frequencies
};

struct MonteCarloOptions {
  Estimator estimator = Estimator::paths;
  std::size_t horizon = 5;
  std::size_t samples = 100000;
  std::size_t words_per_state = 1;
  std::uint64_t seed = 0x5eed;
  double tolerance = 0.02;
  bool enabled = true;
};

struct Counterexample {
  StateIndex state;
  SensorWord sensors;
  ActionWord actions;  ///< one letter shorter than `sensors`
  Scalar original;     ///< probability of the word from `state` under alpha
  Scalar modified;     ///< same under alpha'
};

std::string to_string(Estimator e);

struct MonteCarloCheck {
  bool ran = false;
  Estimator estimator = Estimator::paths;
  bool passed = true;
  double max_tv = 0.0;
  StateIndex worst_state = 0;
  ActionWord worst_word;
  std::size_t pairs = 0;
};

struct EquivalenceCertificate {
  bool equivalent = false;
  /// Per world state: sensory-equivalent to its copy in the union model.
  std::vector<bool> state_equivalent;
  std::optional<Counterexample> counterexample;
  std::size_t basis_dimension = 0;
  MonteCarloCheck monte_carlo;
};

/// Certifies through the union-model basis that every state is sensory
/// equivalent to its copy under alpha'; then compares simulated alpha'
/// processes with the exact alpha processes on seeded random words.
EquivalenceCertificate verify_equivalence(const LoopModel& model, const ModifiedModel& modified,
                                          const MonteCarloOptions& mc = {});

struct MinimalityCertificate {
  bool minimal = false;
  Partition separate_modified;  ///< W_sep of the modified model
  Partition intrinsic_original;
};

MinimalityCertificate certify_minimal_model(const LoopModel& model, const ModifiedModel& modified);

}  // namespace umwelt
