#pragma once

#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "umwelt/loop_model.hpp"
#include "umwelt/partition.hpp"
#include "umwelt/refinement.hpp"
#include "umwelt/sensor_process.hpp"

namespace umwelt {

/// A functional over world states together with the word that produced it.
/// values[w] = P(S_1..S_k = sensors | W_1 = w, A_1..A_{k-1} = actions), so
/// `actions` is one letter shorter than `sensors` (both empty for the
/// all-ones functional).
struct BasisVector {
  std::vector<Scalar> values;
  SensorWord sensors;
  ActionWord actions;
};

/// Linearly independent word functionals whose span is closed under every
/// operator T_{a,s}(v) = beta(., s) * (alpha_a v) and contains every
/// finite-horizon word functional.
struct EquivalenceBasis {
  std::vector<BasisVector> vectors;
  /// False in float mode: rank decisions then depend on the tolerance.
  bool authoritative = true;

  std::size_t dimension() const { return vectors.size(); }
};

/// T_{a,s}(v) = beta(., s) (pointwise) times alpha_a v.
std::vector<Scalar> word_operator(const LoopModel& model, StateIndex action, StateIndex sensor,
                                  std::span<const Scalar> v);

/// Worklist closure from the all-ones vector and the sensor columns
/// beta(., s), expanded breadth-first so generating words come out in
/// nondecreasing length.
EquivalenceBasis build_basis(const LoopModel& model);

/// Whether v lies in the span of the basis vectors.
bool in_span(const EquivalenceBasis& basis, std::span<const Scalar> v, const Arithmetic& arith);

struct IntrinsicResult {
  Partition partition;
  EquivalenceBasis basis;
};

/// Sensory-equivalence classes: w ~ w' iff every basis functional agrees.
IntrinsicResult intrinsic_partition(const LoopModel& model);

/// First basis vector separating w and w' (shortest distinguishing word), if any.
std::optional<BasisVector> distinguishing_word(const IntrinsicResult& result, StateIndex w, StateIndex other,
                                               const Arithmetic& arith);

struct OracleLimits {
  /// Budget for sum over n <= horizon of |A|^n |S|^n.
  std::size_t max_enumeration = std::size_t{1} << 24;
  ProcessLimits process;
};

/// Compares the sensor-process tables of w and w' for every action word of
/// length 1..horizon. Throws CapExceeded when the budget is too small and
/// PreconditionError when horizon == 0.
bool brute_force_equivalent(const LoopModel& model, StateIndex w, StateIndex other, std::size_t horizon,
                            const OracleLimits& limits = {});

/// Calls `visit` with every nonzero word functional with 1..horizon sensor
/// letters (computed by backward recursion, no linear algebra).
void enumerate_word_functionals(const LoopModel& model, std::size_t horizon,
                                const std::function<void(const BasisVector&)>& visit,
                                const OracleLimits& limits = {});

/// Classes of states whose word functionals agree up to the horizon.
Partition brute_force_partition(const LoopModel& model, std::size_t horizon, const OracleLimits& limits = {});

struct ContainmentReport {
  Partition intrinsic;
  Partition separate;
  bool contained = false;  ///< intrinsic coarsens-or-equals W_sep
  bool equal = false;
  /// Invariance of the intrinsic partition; equal iff it holds.
  InvarianceResult intrinsic_invariance;
  bool criterion_consistent = false;
  /// A state whose W_sep block escapes its intrinsic block (a bug if set).
  std::optional<StateIndex> violating_state;
};

ContainmentReport check_containment(const LoopModel& model);

}  // namespace umwelt
