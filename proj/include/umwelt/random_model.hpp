#pragma once

#include <cstdint>
#include <functional>
#include <random>

#include "umwelt/loop_model.hpp"
#include "umwelt/partition.hpp"

namespace umwelt {

struct RandomModelBounds {
  std::size_t max_world = 8;
  std::size_t max_sensor = 4;
  std::size_t max_action = 4;
  std::size_t max_memory = 3;
  /// Entries are k/d with d drawn from 1..max_denominator per row.
  long max_denominator = 8;
  /// Chance that a row copies an earlier row of the same kernel, which keeps
  /// nontrivial equivalence classes common.
  double duplicate_row = 0.35;
};

/// Seeded random valid model in rational mode. Sizes are uniform in
/// 1..max; the memoryless flag is a fair coin.
LoopModel random_model(std::mt19937_64& rng, const RandomModelBounds& bounds = {});

/// Random partition of `space` with a uniformly drawn number of block labels.
Partition random_partition(std::mt19937_64& rng, const FiniteSpace& space);

/// Drops one state of W, S, C or A, renormalising the affected rows (a row
/// left without mass becomes a Dirac on the first state).
LoopModel remove_world_state(const LoopModel& m, StateIndex w);
LoopModel remove_sensor_state(const LoopModel& m, StateIndex s);
LoopModel remove_memory_state(const LoopModel& m, StateIndex c);
LoopModel remove_action_state(const LoopModel& m, StateIndex a);

/// Greedy shrinking: repeatedly applies the removals above while `fails`
/// still holds, until no single removal keeps it failing.
LoopModel shrink_model(const LoopModel& m, const std::function<bool(const LoopModel&)>& fails);

}  // namespace umwelt
