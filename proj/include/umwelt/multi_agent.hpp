#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "umwelt/intrinsic.hpp"
#include "umwelt/loop_model.hpp"

namespace umwelt {

/// One agent's own spaces and mechanisms.
struct AgentLoop {
  FiniteSpace sensor;
  FiniteSpace memory;
  FiniteSpace action;
  Kernel beta;  ///< W -> S_i
  Kernel phi;   ///< S_i x C_i -> C_i
  Kernel pi;    ///< C_i -> A_i
  bool memoryless = false;
};

/// Two agents coupled through one world update alpha: A_1 x A_2 x W -> W.
struct TwoAgentModel {
  FiniteSpace world;
  std::array<AgentLoop, 2> agents;
  Kernel alpha;
  Arithmetic arithmetic;
};

std::vector<Violation> validate(const TwoAgentModel& model);

struct JointLimits {
  std::size_t max_joint_states = 4096;
};

/// Agent i's loop with the partner folded into its outer world
/// W x S_j x C_j x A_j.
struct AgentView {
  std::size_t agent = 0;
  LoopModel model;
};

/// One step of the derived world update draws w' ~ alpha(a_1, a_2, w), then
/// the partner's s_j' ~ beta_j(w'), c_j' ~ phi_j(s_j', c_j), a_j' ~ pi_j(c_j').
/// Throws CapExceeded when the outer world exceeds the cap.
AgentView agent_view(const TwoAgentModel& model, std::size_t agent, const JointLimits& limits = {});

struct LiftedComparison {
  std::array<Partition, 2> lifted;  ///< per agent, over the joint space
  Partition meet;  ///< distinctions both agents make
  Partition join;  ///< distinctions either agent makes
  std::vector<bool> block_is_world_cylinder;  ///< per meet block
  /// The meet as a partition of W, when every block is a W-cylinder.
  std::optional<Partition> on_world;
};

struct SharedDistinctions {
  /// W x S_1 x C_1 x A_1 x S_2 x C_2 x A_2.
  FiniteSpace joint;
  std::array<AgentView, 2> views;
  std::array<Partition, 2> intrinsic;  ///< per agent, over its outer world
  std::array<Partition, 2> separate;
  LiftedComparison intrinsic_shared;
  LiftedComparison separate_shared;
};

/// Lifts both agents' intrinsic (and W_sep) partitions to the joint space as
/// cylinder partitions and intersects them.
SharedDistinctions shared_distinctions(const TwoAgentModel& model, const JointLimits& limits = {});

/// Lifts a partition of agent i's outer world to the joint space.
Partition lift_to_joint(const TwoAgentModel& model, std::size_t agent, const Partition& view_partition,
                        const FiniteSpace& joint);

struct UmweltRow {
  std::string agent;         ///< "passive observer", "blind actor" or "general"
  std::string intersection;  ///< verdict for W_merk meet W_wirk
  std::string union_;        ///< verdict for W_merk join W_wirk
  std::string intrinsic;     ///< verdict for W_int
};

struct UmweltTable {
  Partition merkwelt;  ///< sigma(beta)
  Partition intrinsic;
  bool passive_observer = false;  ///< |A| = 1
  bool blind_actor = false;       ///< |S| = 1
  bool intrinsic_contains_merkwelt = false;
  std::vector<UmweltRow> rows;
};

/// Computes W_merk and W_int and the table rows for the degenerate agents.
/// The effector world is taken as trivial for a passive observer and left
/// symbolic otherwise.
UmweltTable umwelt_table(const LoopModel& model);

}  // namespace umwelt
