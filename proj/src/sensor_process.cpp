#include "umwelt/sensor_process.hpp"

#include <algorithm>

#include <cmath>
#include <random>

#include "umwelt/errors.hpp"

namespace umwelt {

namespace {

std::size_t table_size(std::size_t sensors, std::size_t horizon, const ProcessLimits& limits) {
  std::size_t n = 1;
  for (std::size_t k = 0; k < horizon; ++k) {
    if (n > limits.max_table_entries / sensors)
      throw CapExceeded("sensor table |S|^" + std::to_string(horizon) + " exceeds the cap of " +
                        std::to_string(limits.max_table_entries) + " entries");
    n *= sensors;
  }
  if (n > limits.max_table_entries)
    throw CapExceeded("sensor table exceeds the cap of " + std::to_string(limits.max_table_entries));
  return n;
}

void check_arguments(const LoopModel& m, StateIndex w, const ActionWord& word) {
  if (w >= m.world.size()) throw PreconditionError("world state index out of range");
  for (auto a : word)
    if (a >= m.action.size()) throw PreconditionError("action word contains an invalid action");
}

// Depth-first walk over sensor words. `mass` is the joint measure
// P(s_1..s_k, W_{k+1} = .) restricted to the current prefix, before sensing.
void expand(const LoopModel& m, const ActionWord& word, std::size_t depth, std::size_t prefix,
            const std::vector<Scalar>& mass, std::vector<Scalar>& table) {
  const std::size_t nw = m.world.size();
  const std::size_t ns = m.sensor.size();
  const bool last = depth + 1 == word.size();
  for (std::size_t s = 0; s < ns; ++s) {
    std::vector<Scalar> sensed(nw, m.arithmetic.zero());
    bool any = false;
    for (std::size_t w = 0; w < nw; ++w) {
      if (mass[w].is_exact_zero()) continue;
      const Scalar& b = m.beta(w, s);
      if (b.is_exact_zero()) continue;
      sensed[w] = mass[w] * b;
      any = true;
    }
    const std::size_t index = prefix * ns + s;
    if (last) {
      Scalar total = m.arithmetic.zero();
      for (const auto& x : sensed) total += x;
      table[index] = total;
      continue;
    }
    if (!any) continue;  // the whole subtree stays at zero
    std::vector<Scalar> next(nw, m.arithmetic.zero());
    for (std::size_t w = 0; w < nw; ++w) {
      if (sensed[w].is_exact_zero()) continue;
      auto step = m.world_step(word[depth], w);
      for (std::size_t v = 0; v < nw; ++v)
        if (!step[v].is_exact_zero()) next[v] += sensed[w] * step[v];
    }
    expand(m, word, depth + 1, index, next, table);
  }
}

std::vector<std::discrete_distribution<std::size_t>> row_samplers(const Kernel& k) {
  std::vector<std::discrete_distribution<std::size_t>> out;
  out.reserve(k.rows());
  for (std::size_t r = 0; r < k.rows(); ++r) {
    std::vector<double> weights;
    weights.reserve(k.cols());
    for (const auto& x : k.row(r)) weights.push_back(std::max(0.0, x.to_double()));
    out.emplace_back(weights.begin(), weights.end());
  }
  return out;
}

std::vector<Scalar> frequencies(const std::vector<std::size_t>& counts, std::size_t samples,
                                const Arithmetic& arith) {
  std::vector<Scalar> out;
  out.reserve(counts.size());
  for (auto c : counts) {
    if (arith.is_exact()) {
      mpq_class q(mpz_class(std::to_string(c)), mpz_class(std::to_string(samples)));
      q.canonicalize();
      out.emplace_back(std::move(q));
    } else {
      out.emplace_back(static_cast<double>(c) / static_cast<double>(samples));
    }
  }
  return out;
}

}  // namespace

std::size_t SensorProcess::index_of(const SensorWord& word) const {
  if (word.size() != horizon()) throw PreconditionError("sensor word length differs from the horizon");
  std::size_t index = 0;
  for (auto s : word) {
    if (s >= sensor_states) throw PreconditionError("sensor word contains an invalid sensor value");
    index = index * sensor_states + s;
  }
  return index;
}

SensorWord SensorProcess::word_at(std::size_t index) const {
  SensorWord word(horizon());
  for (std::size_t k = word.size(); k-- > 0;) {
    word[k] = index % sensor_states;
    index /= sensor_states;
  }
  return word;
}

const Scalar& SensorProcess::probability(const SensorWord& word) const { return table.at(index_of(word)); }

SensorProcess sensor_process(const LoopModel& m, StateIndex w, const ActionWord& word,
                             const ProcessLimits& limits) {
  check_arguments(m, w, word);
  SensorProcess out{word, m.sensor.size(), {}};
  out.table.assign(table_size(m.sensor.size(), word.size(), limits), m.arithmetic.zero());
  if (word.empty()) {
    out.table[0] = m.arithmetic.one();
    return out;
  }
  std::vector<Scalar> start(m.world.size(), m.arithmetic.zero());
  start[w] = m.arithmetic.one();
  expand(m, word, 0, 0, start, out.table);
  return out;
}

SensorProcess simulate(const LoopModel& m, StateIndex w, const ActionWord& word, std::size_t samples,
                       std::uint64_t seed, const ProcessLimits& limits) {
  check_arguments(m, w, word);
  if (samples == 0) throw PreconditionError("simulate needs at least one sample");
  const std::size_t ns = m.sensor.size();
  std::vector<std::size_t> counts(table_size(ns, word.size(), limits), 0);
  auto sense = row_samplers(m.beta);
  auto step = row_samplers(m.alpha);
  std::mt19937_64 rng(seed);
  const std::size_t nw = m.world.size();
  for (std::size_t i = 0; i < samples; ++i) {
    std::size_t state = w;
    std::size_t index = 0;
    for (std::size_t k = 0; k < word.size(); ++k) {
      index = index * ns + sense[state](rng);
      if (k + 1 < word.size()) state = step[word[k] * nw + state](rng);
    }
    ++counts[index];
  }
  return SensorProcess{word, ns, frequencies(counts, samples, m.arithmetic)};
}

namespace {

/// Sensor-word counts below a node of the sorted path list: paths[first, last)
/// share their first `depth` worlds.
std::vector<Scalar> path_table(const LoopModel& m, const std::vector<std::vector<StateIndex>>& paths,
                               std::size_t first, std::size_t last, std::size_t depth) {
  const std::size_t n = paths[first].size(), ns = m.sensor.size();
  auto sense = m.sense(paths[first][depth]);
  if (depth + 1 == n) {
    const Scalar count = m.arithmetic.ratio(static_cast<long>(last - first));
    std::vector<Scalar> out;
    for (const auto& b : sense) out.push_back(count * b);
    return out;
  }
  std::vector<Scalar> below;
  for (std::size_t i = first; i < last;) {
    std::size_t j = i;
    while (j < last && paths[j][depth + 1] == paths[i][depth + 1]) ++j;
    auto child = path_table(m, paths, i, j, depth + 1);
    if (below.empty()) below = std::move(child);
    else
      for (std::size_t k = 0; k < below.size(); ++k) below[k] += child[k];
    i = j;
  }
  std::vector<Scalar> out(ns * below.size());
  for (std::size_t s = 0; s < ns; ++s) {
    if (sense[s].is_exact_zero()) continue;
    for (std::size_t k = 0; k < below.size(); ++k) out[s * below.size() + k] = sense[s] * below[k];
  }
  return out;
}

}  // namespace

SensorProcess simulate_paths(const LoopModel& m, StateIndex w, const ActionWord& word, std::size_t samples,
                             std::uint64_t seed, const ProcessLimits& limits) {
  check_arguments(m, w, word);
  if (samples == 0) throw PreconditionError("simulate needs at least one sample");
  const std::size_t ns = m.sensor.size();
  table_size(ns, word.size(), limits);
  if (word.empty()) return SensorProcess{word, ns, {m.arithmetic.one()}};
  auto step = row_samplers(m.alpha);
  std::mt19937_64 rng(seed);
  const std::size_t nw = m.world.size();
  std::vector<std::vector<StateIndex>> paths(samples, std::vector<StateIndex>(word.size()));
  for (auto& path : paths) {
    path[0] = w;
    for (std::size_t k = 0; k + 1 < word.size(); ++k) path[k + 1] = step[word[k] * nw + path[k]](rng);
  }
  std::sort(paths.begin(), paths.end());
  auto table = path_table(m, paths, 0, samples, 0);
  const Scalar total = m.arithmetic.ratio(static_cast<long>(samples));
  for (auto& x : table) x /= total;
  return SensorProcess{word, ns, std::move(table)};
}

std::vector<Scalar> simulate_with_policy(const LoopModel& m, std::size_t horizon, std::size_t samples,
                                         std::uint64_t seed, const ProcessLimits& limits) {
  if (samples == 0) throw PreconditionError("simulate needs at least one sample");
  const std::size_t nw = m.world.size(), ns = m.sensor.size(), nc = m.memory.size(), na = m.action.size();
  std::vector<std::size_t> counts(table_size(ns, horizon, limits), 0);
  std::vector<double> init_weights;
  for (const auto& x : m.initial) init_weights.push_back(std::max(0.0, x.to_double()));
  std::discrete_distribution<std::size_t> initial(init_weights.begin(), init_weights.end());
  auto sense = row_samplers(m.beta);
  auto step = row_samplers(m.alpha);
  auto update = row_samplers(m.phi);
  auto act = row_samplers(m.pi);
  std::mt19937_64 rng(seed);
  for (std::size_t i = 0; i < samples; ++i) {
    std::size_t joint = initial(rng);
    std::size_t a = joint % na;
    joint /= na;
    std::size_t c = joint % nc;
    joint /= nc;
    joint /= ns;
    std::size_t w = joint;
    std::size_t index = 0;
    for (std::size_t k = 0; k < horizon; ++k) {
      w = step[a * nw + w](rng);
      std::size_t s = sense[w](rng);
      c = update[s * nc + c](rng);
      a = act[c](rng);
      index = index * ns + s;
    }
    ++counts[index];
  }
  return frequencies(counts, samples, m.arithmetic);
}

double total_variation(const SensorProcess& p, const SensorProcess& q) {
  if (p.table.size() != q.table.size() || p.sensor_states != q.sensor_states)
    throw SpaceMismatch("total_variation: tables over different word sets");
  double sum = 0.0;
  for (std::size_t i = 0; i < p.table.size(); ++i) sum += std::fabs(p.table[i].to_double() - q.table[i].to_double());
  return 0.5 * sum;
}

}  // namespace umwelt
