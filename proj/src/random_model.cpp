#include "umwelt/random_model.hpp"

#include <algorithm>

namespace umwelt {

namespace {

std::size_t uniform(std::mt19937_64& rng, std::size_t lo, std::size_t hi) {
  return std::uniform_int_distribution<std::size_t>(lo, hi)(rng);
}

void random_row(std::mt19937_64& rng, std::span<Scalar> row, long max_den) {
  const long d = static_cast<long>(uniform(rng, 1, static_cast<std::size_t>(max_den)));
  std::vector<long> units(row.size(), 0);
  for (long k = 0; k < d; ++k) ++units[uniform(rng, 0, row.size() - 1)];
  for (std::size_t i = 0; i < row.size(); ++i) row[i] = Scalar::ratio(units[i], d);
}

/// Fills rows [first, first + count) of k, sometimes copying an earlier row
/// of the same range.
void random_rows(std::mt19937_64& rng, Kernel& k, std::size_t first, std::size_t count,
                 const RandomModelBounds& b) {
  std::bernoulli_distribution dup(b.duplicate_row);
  for (std::size_t r = 0; r < count; ++r) {
    auto row = k.row(first + r);
    if (r > 0 && dup(rng)) {
      auto src = k.row(first + uniform(rng, 0, r - 1));
      std::copy(src.begin(), src.end(), row.begin());
    } else {
      random_row(rng, row, b.max_denominator);
    }
  }
}

FiniteSpace shrink_space(const FiniteSpace& s, StateIndex drop) {
  std::vector<std::string> labels;
  for (std::size_t i = 0; i < s.size(); ++i)
    if (i != drop) labels.push_back(s.label(i));
  return FiniteSpace(s.name(), std::move(labels));
}

StateIndex old_index(StateIndex i, StateIndex drop) { return i < drop ? i : i + 1; }

/// Restricts every factor equal to `space` to all states but `drop`.
Kernel restrict(const Kernel& k, const FiniteSpace& space, StateIndex drop) {
  auto map_factors = [&](const std::vector<FiniteSpace>& fs, std::vector<bool>& hit) {
    std::vector<FiniteSpace> out;
    for (const auto& f : fs) {
      hit.push_back(f == space);
      out.push_back(f == space ? shrink_space(f, drop) : f);
    }
    return out;
  };
  std::vector<bool> src_hit, tgt_hit;
  auto source = map_factors(k.source(), src_hit);
  auto target = map_factors(k.target(), tgt_hit);
  const bool float_mode = !k.entries().empty() && !k.entries()[0].is_rational();
  const Arithmetic arith = float_mode ? Arithmetic::floating(0.0) : Arithmetic::exact();
  Kernel out(k.name(), source, target, arith);
  for (std::size_t r = 0; r < out.rows(); ++r) {
    auto coords = unflatten(source, r);
    for (std::size_t i = 0; i < coords.size(); ++i)
      if (src_hit[i]) coords[i] = old_index(coords[i], drop);
    auto old_row = k.row(k.row_index(coords));
    auto row = out.row(r);
    Scalar total = arith.zero();
    for (std::size_t c = 0; c < out.cols(); ++c) {
      auto tc = unflatten(target, c);
      for (std::size_t i = 0; i < tc.size(); ++i)
        if (tgt_hit[i]) tc[i] = old_index(tc[i], drop);
      row[c] = old_row[flatten(k.target(), tc)];
      total += row[c];
    }
    if (arith.is_zero(total)) {
      row[0] = arith.one();
    } else {
      for (auto& x : row) x /= total;
    }
  }
  return out;
}

LoopModel remove_state(const LoopModel& m, const FiniteSpace& space, StateIndex drop) {
  if (space.size() <= 1) return m;
  return make_model(restrict(m.alpha, space, drop), restrict(m.beta, space, drop), restrict(m.phi, space, drop),
                    restrict(m.pi, space, drop), m.memoryless, m.arithmetic);
}

}  // namespace

LoopModel random_model(std::mt19937_64& rng, const RandomModelBounds& b) {
  const auto w = FiniteSpace::numbered("W", uniform(rng, 1, b.max_world), 1);
  const auto s = FiniteSpace::numbered("S", uniform(rng, 1, b.max_sensor));
  const auto c = FiniteSpace::numbered("C", uniform(rng, 1, b.max_memory));
  const auto a = FiniteSpace::numbered("A", uniform(rng, 1, b.max_action));
  const bool memoryless = std::bernoulli_distribution(0.5)(rng);

  Kernel alpha("alpha", {a, w}, {w});
  for (std::size_t ai = 0; ai < a.size(); ++ai) random_rows(rng, alpha, ai * w.size(), w.size(), b);
  Kernel beta("beta", {w}, {s});
  random_rows(rng, beta, 0, w.size(), b);
  Kernel phi("phi", {s, c}, {c});
  if (memoryless) {
    for (std::size_t si = 0; si < s.size(); ++si) {
      random_row(rng, phi.row(si * c.size()), b.max_denominator);
      for (std::size_t ci = 1; ci < c.size(); ++ci) {
        auto src = phi.row(si * c.size());
        std::copy(src.begin(), src.end(), phi.row(si * c.size() + ci).begin());
      }
    }
  } else {
    random_rows(rng, phi, 0, phi.rows(), b);
  }
  Kernel pi("pi", {c}, {a});
  random_rows(rng, pi, 0, c.size(), b);
  return make_model(std::move(alpha), std::move(beta), std::move(phi), std::move(pi), memoryless);
}

Partition random_partition(std::mt19937_64& rng, const FiniteSpace& space) {
  const std::size_t labels = uniform(rng, 1, space.size());
  std::vector<std::size_t> ids(space.size());
  for (auto& id : ids) id = uniform(rng, 0, labels - 1);
  return Partition::from_block_ids(space, ids);
}

LoopModel remove_world_state(const LoopModel& m, StateIndex w) { return remove_state(m, m.world, w); }
LoopModel remove_sensor_state(const LoopModel& m, StateIndex s) { return remove_state(m, m.sensor, s); }
LoopModel remove_memory_state(const LoopModel& m, StateIndex c) { return remove_state(m, m.memory, c); }
LoopModel remove_action_state(const LoopModel& m, StateIndex a) { return remove_state(m, m.action, a); }

LoopModel shrink_model(const LoopModel& m, const std::function<bool(const LoopModel&)>& fails) {
  LoopModel current = m;
  using Remover = LoopModel (*)(const LoopModel&, StateIndex);
  const std::pair<Remover, const FiniteSpace LoopModel::*> moves[] = {
      {remove_world_state, &LoopModel::world},
      {remove_action_state, &LoopModel::action},
      {remove_sensor_state, &LoopModel::sensor},
      {remove_memory_state, &LoopModel::memory},
  };
  bool progress = true;
  while (progress) {
    progress = false;
    for (const auto& [remove, space] : moves) {
      for (std::size_t i = 0; (current.*space).size() > 1 && i < (current.*space).size(); ++i) {
        LoopModel candidate = remove(current, i);
        if (fails(candidate)) {
          current = std::move(candidate);
          progress = true;
          break;
        }
      }
    }
  }
  return current;
}

}  // namespace umwelt
