#pragma once

#include <optional>
#include <string>
#include <vector>

#include "umwelt/loop_model.hpp"
#include "umwelt/partition.hpp"

namespace umwelt {

/// Stages of the cumulative refinement: stage n holds the atoms of the
/// sigma-algebra generated by the first n+1 levels. stages.back() is the
/// fixpoint and fixpoint_index == stages.size() - 1.
struct RefinementTrace {
  std::vector<Partition> stages;
  std::size_t fixpoint_index = 0;
};

/// Classes of world states with equal sensor rows.
Partition sigma_beta(const LoopModel& model);

/// One refinement level: keeps the blocks of `p` and additionally separates
/// w, w' whenever alpha_a(w)(B) != alpha_a(w')(B) for some action a and
/// block B of `p`.
Partition refine_step(const LoopModel& model, const Partition& p);

struct RefinementResult {
  Partition partition;
  RefinementTrace trace;
};

/// Coarsest partition refining sigma(beta) on which every alpha_a is
/// measurable. Throws PreconditionError for an invalid model.
RefinementResult w_sep(const LoopModel& model);

/// Same scheme with the signature kappa(w)({a} x B). Requires a memoryless
/// model.
RefinementResult w_am(const LoopModel& model);

struct InvarianceWitness {
  StateIndex action;
  StateIndex state;
  StateIndex other;               ///< same block as `state`
  std::vector<StateIndex> block;  ///< target block on which the masses differ
  Scalar mass_state;
  Scalar mass_other;
};

struct InvarianceResult {
  bool invariant = true;
  std::optional<InvarianceWitness> witness;
};

/// Checks alpha_a^{-1}(W) within W for the sigma-algebra of `p`: for every
/// action a and p-block B, alpha_a(.)(B) must be constant on p-blocks. On
/// failure the witness follows the successors of the first offending state,
/// so it names a block that state actually reaches.
InvarianceResult check_invariance(const LoopModel& model, const Partition& p);

enum class Relation { equal, finer, coarser, incomparable };

/// Relation of `p` to `q` in the refinement order ("finer" means p refines q).
Relation compare_partitions(const Partition& p, const Partition& q);
std::string to_string(Relation r);

}  // namespace umwelt
