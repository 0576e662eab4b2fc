#pragma once

#include <optional>
#include <string>
#include <vector>

#include "umwelt/kernel.hpp"

namespace umwelt {

using ActionWord = std::vector<StateIndex>;
using SensorWord = std::vector<StateIndex>;

/// A finite sensorimotor loop:
///
///   alpha: A x W -> W   (world update)
///   beta:  W -> S       (sensor)
///   phi:   S x C -> C   (memory update)
///   pi:    C -> A       (policy)
///
/// plus an initial distribution over W x S x C x A (mixed-radix order).
struct LoopModel {
  FiniteSpace world;
  FiniteSpace sensor;
  FiniteSpace memory;
  FiniteSpace action;
  Kernel alpha;
  Kernel beta;
  Kernel phi;
  Kernel pi;
  std::vector<Scalar> initial;
  bool memoryless = false;
  Arithmetic arithmetic;

  /// alpha_a(w) as a row over W.
  std::span<const Scalar> world_step(StateIndex a, StateIndex w) const {
    return alpha.row(a * world.size() + w);
  }
  /// beta(w) as a row over S.
  std::span<const Scalar> sense(StateIndex w) const { return beta.row(w); }

  /// Uniform over W, Dirac on the first label of S, C and A.
  static std::vector<Scalar> default_initial(const FiniteSpace& w, const FiniteSpace& s,
                                             const FiniteSpace& c, const FiniteSpace& a,
                                             const Arithmetic& arith);
};

/// Assembles a model from kernels; fills `initial` with the default when
/// empty. Does not validate.
LoopModel make_model(Kernel alpha, Kernel beta, Kernel phi, Kernel pi, bool memoryless,
                     Arithmetic arith = {}, std::vector<Scalar> initial = {});

struct Violation {
  std::string kernel;              ///< "alpha", "beta", ..., "initial", "model"
  std::optional<std::size_t> row;  ///< offending row, when applicable
  std::string check;               ///< "shape", "negative-entry", "row-sum", "memoryless", "arithmetic"
  std::string detail;

  std::string to_string() const;
};

/// Checks every structural and stochastic invariant; an empty result means
/// the model is valid.
std::vector<Violation> validate(const LoopModel& model);

/// Shape and row checks for one kernel; returns false on a shape mismatch.
bool check_kernel(const Kernel& k, const std::string& name, const std::vector<FiniteSpace>& source,
                  const std::vector<FiniteSpace>& target, const Arithmetic& arith, std::vector<Violation>& out);

/// Reports rows of phi: S x C -> C that depend on the previous memory state.
void check_memoryless(const Kernel& phi, const std::string& name, const Arithmetic& arith,
                      std::vector<Violation>& out);

/// Throws PreconditionError listing the violations when the model is invalid.
void require_valid(const LoopModel& model);

/// phi restricted to the first memory state, as a kernel S -> C. For a
/// memoryless model this is the whole of phi.
Kernel memoryless_update(const LoopModel& model);

/// gamma = beta * phi * pi : W -> A. Requires a memoryless model.
Kernel gamma(const LoopModel& model);

/// kappa(w)(a, w') = gamma(w)(a) * alpha(a, w)(w') : W -> A x W.
/// Requires a memoryless model.
Kernel kappa(const LoopModel& model);

}  // namespace umwelt
