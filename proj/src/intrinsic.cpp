#include "umwelt/intrinsic.hpp"

#include <cmath>
#include <deque>

#include "umwelt/errors.hpp"

namespace umwelt {

namespace {

// Row-echelon store used for span membership. Each stored row is reduced
// against all earlier rows and normalised to 1 at its pivot, so sequential
// reduction in insertion order decides membership.
class Echelon {
 public:
  explicit Echelon(const Arithmetic& arith) : arith_(arith) {}

  /// Reduces v; inserts it and returns true if it was independent.
  bool insert(std::span<const Scalar> v) {
    auto reduced = reduce(v);
    if (!reduced) return false;
    auto& [pivot, row] = *reduced;
    const Scalar lead = row[pivot];
    for (auto& x : row) x /= lead;
    rows_.push_back({pivot, std::move(row)});
    return true;
  }

  bool contains(std::span<const Scalar> v) const { return !reduce(v).has_value(); }

 private:
  struct Row {
    std::size_t pivot;
    std::vector<Scalar> values;
  };

  bool negligible(const Scalar& x) const {
    if (arith_.is_exact()) return x.is_exact_zero();
    return std::fabs(x.to_double()) <= arith_.epsilon * scale_;
  }

  std::optional<std::pair<std::size_t, std::vector<Scalar>>> reduce(std::span<const Scalar> v) const {
    std::vector<Scalar> row(v.begin(), v.end());
    if (!arith_.is_exact()) {
      for (const auto& x : row) scale_ = std::max(scale_, std::fabs(x.to_double()));
    }
    for (const auto& r : rows_) {
      const Scalar factor = row[r.pivot];
      if (factor.is_exact_zero()) continue;
      for (std::size_t i = 0; i < row.size(); ++i)
        if (!r.values[i].is_exact_zero()) row[i] -= factor * r.values[i];
      row[r.pivot] = arith_.zero();
    }
    for (std::size_t i = 0; i < row.size(); ++i)
      if (!negligible(row[i])) return std::make_pair(i, std::move(row));
    return std::nullopt;
  }

  Arithmetic arith_;
  std::vector<Row> rows_;
  // Largest magnitude seen so far; the float pivot threshold is eps * scale_.
  mutable double scale_ = 1.0;
};

bool all_zero(std::span<const Scalar> v, const Arithmetic& arith) {
  for (const auto& x : v)
    if (!arith.is_zero(x)) return false;
  return true;
}

std::size_t enumeration_size(std::size_t actions, std::size_t sensors, std::size_t horizon, std::size_t cap) {
  std::size_t total = 0, level = 1;
  const std::size_t per_step = actions * sensors;
  for (std::size_t n = 1; n <= horizon; ++n) {
    if (level > cap / per_step) throw CapExceeded("enumeration over " + std::to_string(horizon) + " steps exceeds the cap");
    level *= per_step;
    total += level;
    if (total > cap) throw CapExceeded("enumeration over " + std::to_string(horizon) + " steps exceeds the cap");
  }
  return total;
}

}  // namespace

std::vector<Scalar> word_operator(const LoopModel& m, StateIndex a, StateIndex s, std::span<const Scalar> v) {
  const std::size_t nw = m.world.size();
  std::vector<Scalar> out(nw, m.arithmetic.zero());
  for (std::size_t w = 0; w < nw; ++w) {
    const Scalar& b = m.beta(w, s);
    if (b.is_exact_zero()) continue;
    auto step = m.world_step(a, w);
    Scalar acc = m.arithmetic.zero();
    for (std::size_t u = 0; u < nw; ++u)
      if (!step[u].is_exact_zero() && !v[u].is_exact_zero()) acc += step[u] * v[u];
    out[w] = b * acc;
  }
  return out;
}

EquivalenceBasis build_basis(const LoopModel& m) {
  require_valid(m);
  const auto& arith = m.arithmetic;
  const std::size_t nw = m.world.size();
  EquivalenceBasis basis;
  basis.authoritative = arith.is_exact();
  Echelon echelon(arith);
  std::deque<std::size_t> worklist;

  auto offer = [&](BasisVector candidate) {
    if (basis.vectors.size() == nw) return;
    if (!echelon.insert(candidate.values)) return;
    worklist.push_back(basis.vectors.size());
    basis.vectors.push_back(std::move(candidate));
  };

  offer({std::vector<Scalar>(nw, arith.one()), {}, {}});
  for (std::size_t s = 0; s < m.sensor.size(); ++s) {
    std::vector<Scalar> column(nw);
    for (std::size_t w = 0; w < nw; ++w) column[w] = m.beta(w, s);
    offer({std::move(column), {s}, {}});
  }
  while (!worklist.empty() && basis.vectors.size() < nw) {
    const std::size_t index = worklist.front();
    worklist.pop_front();
    // Copy: offer() may reallocate basis.vectors.
    const BasisVector parent = basis.vectors[index];
    for (std::size_t a = 0; a < m.action.size(); ++a) {
      for (std::size_t s = 0; s < m.sensor.size(); ++s) {
        BasisVector child{word_operator(m, a, s, parent.values), {s}, {}};
        if (parent.sensors.empty()) {
          // T_{a,s}(1) = beta(., s): the action is never taken.
          child.actions.clear();
        } else {
          child.sensors.insert(child.sensors.end(), parent.sensors.begin(), parent.sensors.end());
          child.actions.push_back(a);
          child.actions.insert(child.actions.end(), parent.actions.begin(), parent.actions.end());
        }
        offer(std::move(child));
      }
    }
  }
  return basis;
}

bool in_span(const EquivalenceBasis& basis, std::span<const Scalar> v, const Arithmetic& arith) {
  Echelon echelon(arith);
  for (const auto& b : basis.vectors) echelon.insert(b.values);
  return echelon.contains(v);
}

IntrinsicResult intrinsic_partition(const LoopModel& m) {
  EquivalenceBasis basis = build_basis(m);
  Partition p = Partition::trivial(m.world);
  for (const auto& v : basis.vectors) p = split_by_key(p, v.values, m.arithmetic);
  return {std::move(p), std::move(basis)};
}

std::optional<BasisVector> distinguishing_word(const IntrinsicResult& result, StateIndex w, StateIndex other,
                                               const Arithmetic& arith) {
  for (const auto& v : result.basis.vectors)
    if (!arith.equal(v.values.at(w), v.values.at(other))) return v;
  return std::nullopt;
}

bool brute_force_equivalent(const LoopModel& m, StateIndex w, StateIndex other, std::size_t horizon,
                            const OracleLimits& limits) {
  if (horizon == 0) throw PreconditionError("brute_force_equivalent needs horizon >= 1");
  if (w >= m.world.size() || other >= m.world.size()) throw PreconditionError("world state index out of range");
  enumeration_size(m.action.size(), m.sensor.size(), horizon, limits.max_enumeration);
  if (w == other) return true;
  const std::size_t na = m.action.size();
  for (std::size_t n = 1; n <= horizon; ++n) {
    ActionWord word(n, 0);
    while (true) {
      auto p = sensor_process(m, w, word, limits.process);
      auto q = sensor_process(m, other, word, limits.process);
      for (std::size_t i = 0; i < p.table.size(); ++i)
        if (!m.arithmetic.equal(p.table[i], q.table[i])) return false;
      // Next action word in lexicographic order.
      std::size_t k = n;
      while (k > 0 && ++word[k - 1] == na) word[--k] = 0;
      if (k == 0) break;
    }
  }
  return true;
}

void enumerate_word_functionals(const LoopModel& m, std::size_t horizon,
                                const std::function<void(const BasisVector&)>& visit,
                                const OracleLimits& limits) {
  if (horizon == 0) return;
  enumeration_size(m.action.size(), m.sensor.size(), horizon, limits.max_enumeration);
  const std::size_t nw = m.world.size();
  // f_{s u, a v} = T_{a,s}(f_{u, v}), grown from the last letter backwards.
  std::function<void(const BasisVector&)> grow = [&](const BasisVector& f) {
    visit(f);
    if (f.sensors.size() == horizon) return;
    for (std::size_t a = 0; a < m.action.size(); ++a) {
      for (std::size_t s = 0; s < m.sensor.size(); ++s) {
        BasisVector g{word_operator(m, a, s, f.values), {s}, {a}};
        if (all_zero(g.values, m.arithmetic)) continue;  // every extension vanishes too
        g.sensors.insert(g.sensors.end(), f.sensors.begin(), f.sensors.end());
        g.actions.insert(g.actions.end(), f.actions.begin(), f.actions.end());
        grow(g);
      }
    }
  };
  for (std::size_t s = 0; s < m.sensor.size(); ++s) {
    BasisVector f{std::vector<Scalar>(nw), {s}, {}};
    for (std::size_t w = 0; w < nw; ++w) f.values[w] = m.beta(w, s);
    if (!all_zero(f.values, m.arithmetic)) grow(f);
  }
}

Partition brute_force_partition(const LoopModel& m, std::size_t horizon, const OracleLimits& limits) {
  Partition p = Partition::trivial(m.world);
  enumerate_word_functionals(
      m, horizon, [&](const BasisVector& f) { p = split_by_key(p, f.values, m.arithmetic); }, limits);
  return p;
}

ContainmentReport check_containment(const LoopModel& m) {
  auto intrinsic = intrinsic_partition(m).partition;
  auto separate = w_sep(m).partition;
  ContainmentReport report;
  report.intrinsic = intrinsic;
  report.separate = separate;
  report.contained = separate.refines(intrinsic);
  report.equal = report.contained && intrinsic.refines(separate);
  report.intrinsic_invariance = check_invariance(m, intrinsic);
  report.criterion_consistent = report.equal == report.intrinsic_invariance.invariant;
  if (!report.contained) {
    for (StateIndex w = 0; w < m.world.size() && !report.violating_state; ++w)
      for (auto v : separate.block(separate.block_of(w)))
        if (!intrinsic.same_block(w, v)) {
          report.violating_state = w;
          break;
        }
  }
  return report;
}

}  // namespace umwelt
