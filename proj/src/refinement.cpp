#include "umwelt/refinement.hpp"

#include <functional>

#include "umwelt/errors.hpp"

namespace umwelt {

namespace {

using SignatureFn = std::function<Partition(const LoopModel&, const Partition&)>;

RefinementResult fixpoint(const LoopModel& m, const SignatureFn& step) {
  RefinementTrace trace;
  trace.stages.push_back(sigma_beta(m));
  // Each strict refinement adds a block, so at most |W| - 1 steps happen.
  while (true) {
    Partition next = step(m, trace.stages.back());
    if (next == trace.stages.back()) break;
    if (trace.stages.size() > m.world.size())
      throw std::logic_error("refinement failed to stabilise within |W| steps");
    trace.stages.push_back(std::move(next));
  }
  trace.fixpoint_index = trace.stages.size() - 1;
  Partition result = trace.stages.back();
  return {std::move(result), std::move(trace)};
}

Partition kappa_step(const LoopModel& m, const Partition& p) {
  const Kernel k = kappa(m);
  const std::size_t nw = m.world.size();
  Partition out = p;
  std::vector<Scalar> keys(nw);
  for (std::size_t a = 0; a < m.action.size(); ++a) {
    for (const auto& block : p.blocks()) {
      for (std::size_t w = 0; w < nw; ++w) {
        Scalar mass = m.arithmetic.zero();
        for (auto v : block) mass += k(w, a * nw + v);
        keys[w] = std::move(mass);
      }
      out = split_by_key(out, keys, m.arithmetic);
    }
  }
  return out;
}

}  // namespace

Partition sigma_beta(const LoopModel& m) {
  Partition p = Partition::trivial(m.world);
  std::vector<Scalar> keys(m.world.size());
  for (std::size_t s = 0; s < m.sensor.size(); ++s) {
    for (std::size_t w = 0; w < m.world.size(); ++w) keys[w] = m.beta(w, s);
    p = split_by_key(p, keys, m.arithmetic);
  }
  return p;
}

Partition refine_step(const LoopModel& m, const Partition& p) {
  if (p.space() != m.world) throw SpaceMismatch("refine_step: partition is not over the world space");
  Partition out = p;
  std::vector<Scalar> keys(m.world.size());
  // Signatures are taken against the blocks of p, not of the partially split out.
  for (std::size_t a = 0; a < m.action.size(); ++a) {
    for (const auto& block : p.blocks()) {
      for (std::size_t w = 0; w < m.world.size(); ++w) keys[w] = mass_on(m.world_step(a, w), block);
      out = split_by_key(out, keys, m.arithmetic);
    }
  }
  return out;
}

RefinementResult w_sep(const LoopModel& m) {
  require_valid(m);
  return fixpoint(m, refine_step);
}

RefinementResult w_am(const LoopModel& m) {
  if (!m.memoryless) throw PreconditionError("w_am requires a memoryless model");
  require_valid(m);
  return fixpoint(m, kappa_step);
}

InvarianceResult check_invariance(const LoopModel& m, const Partition& p) {
  if (p.space() != m.world) throw SpaceMismatch("check_invariance: partition is not over the world space");
  const auto& arith = m.arithmetic;
  for (std::size_t a = 0; a < m.action.size(); ++a) {
    for (const auto& source_block : p.blocks()) {
      const StateIndex w = source_block.front();
      auto row = m.world_step(a, w);
      for (std::size_t i = 1; i < source_block.size(); ++i) {
        const StateIndex other = source_block[i];
        auto other_row = m.world_step(a, other);
        // Both rows have total mass one, so comparing on every block reached
        // by w covers the remaining blocks as well.
        for (std::size_t v = 0; v < row.size(); ++v) {
          if (arith.is_zero(row[v])) continue;
          const auto& target = p.block(p.block_of(v));
          Scalar mine = mass_on(row, target);
          Scalar theirs = mass_on(other_row, target);
          if (!arith.equal(mine, theirs))
            return {false, InvarianceWitness{a, w, other, target, std::move(mine), std::move(theirs)}};
        }
      }
    }
  }
  return {true, std::nullopt};
}

Relation compare_partitions(const Partition& p, const Partition& q) {
  const bool pq = p.refines(q);
  const bool qp = q.refines(p);
  if (pq && qp) return Relation::equal;
  if (pq) return Relation::finer;
  if (qp) return Relation::coarser;
  return Relation::incomparable;
}

std::string to_string(Relation r) {
  switch (r) {
    case Relation::equal: return "equal";
    case Relation::finer: return "finer";
    case Relation::coarser: return "coarser";
    case Relation::incomparable: return "incomparable";
  }
  return "?";
}

}  // namespace umwelt
