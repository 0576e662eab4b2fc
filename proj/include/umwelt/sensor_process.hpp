#pragma once

#include <cstdint>
#include <vector>

#include "umwelt/loop_model.hpp"

namespace umwelt {

/// Distribution of the first n sensor values when the world starts in a fixed
/// state and the agent follows a fixed action word of length n. Sensor value
/// k is read from W_k; action k then moves W_k to W_{k+1}, so the last action
/// of the word never influences the table.
struct SensorProcess {
  ActionWord action_word;
  std::size_t sensor_states = 0;
  /// Indexed by sensor word in mixed-radix order (first letter most significant).
  std::vector<Scalar> table;

  std::size_t horizon() const { return action_word.size(); }
  const Scalar& probability(const SensorWord& word) const;
  std::size_t index_of(const SensorWord& word) const;
  SensorWord word_at(std::size_t index) const;
};

struct ProcessLimits {
  /// |S|^n ceiling; the default admits n = 12 at |S| = 4.
  std::size_t max_table_entries = std::size_t{1} << 24;
};

/// Exact open-loop sensor process. The policy is ignored. Throws
/// PreconditionError on invalid indices and CapExceeded when |S|^n exceeds
/// the table cap.
SensorProcess sensor_process(const LoopModel& model, StateIndex w, const ActionWord& word,
                             const ProcessLimits& limits = {});

/// Empirical open-loop sensor process from `samples` seeded rollouts.
/// Frequencies are exact rationals count/samples in rational mode.
SensorProcess simulate(const LoopModel& model, StateIndex w, const ActionWord& word,
                       std::size_t samples, std::uint64_t seed, const ProcessLimits& limits = {});

/// Conditional Monte Carlo: samples `samples` world paths W_1..W_n under the
/// action word and averages the exact sensor laws prod_k beta(W_k, s_k) over
/// them. Only the world dynamics are random, so the estimate's noise does not
/// grow with |S|^n.
SensorProcess simulate_paths(const LoopModel& model, StateIndex w, const ActionWord& word,
                             std::size_t samples, std::uint64_t seed, const ProcessLimits& limits = {});

/// Closed-loop rollouts: (W_0, S_0, C_0, A_0) is drawn from the initial
/// distribution, then W_k ~ alpha(A_{k-1}, W_{k-1}), S_k ~ beta(W_k),
/// C_k ~ phi(S_k, C_{k-1}), A_k ~ pi(C_k). Returns the empirical frequencies of
/// S_1..S_n, indexed like SensorProcess::table.
std::vector<Scalar> simulate_with_policy(const LoopModel& model, std::size_t horizon,
                                         std::size_t samples, std::uint64_t seed,
                                         const ProcessLimits& limits = {});

/// Total-variation distance between two tables over the same word set.
double total_variation(const SensorProcess& p, const SensorProcess& q);

}  // namespace umwelt
