#include "umwelt/multi_agent.hpp"

#include <limits>

#include "umwelt/errors.hpp"
#include "umwelt/refinement.hpp"

namespace umwelt {

std::vector<Violation> validate(const TwoAgentModel& m) {
  std::vector<Violation> out;
  const auto& arith = m.arithmetic;
  const auto& [one, two] = m.agents;
  check_kernel(m.alpha, "alpha", {one.action, two.action, m.world}, {m.world}, arith, out);
  for (std::size_t i = 0; i < 2; ++i) {
    const auto& ag = m.agents[i];
    const std::string tag = "agent" + std::to_string(i + 1) + ".";
    check_kernel(ag.beta, tag + "sensors", {m.world}, {ag.sensor}, arith, out);
    const bool phi_ok = check_kernel(ag.phi, tag + "memory", {ag.sensor, ag.memory}, {ag.memory}, arith, out);
    check_kernel(ag.pi, tag + "policy", {ag.memory}, {ag.action}, arith, out);
    if (ag.memoryless && phi_ok) check_memoryless(ag.phi, tag + "memory", arith, out);
  }
  return out;
}

namespace {

void require_valid(const TwoAgentModel& m) {
  auto violations = validate(m);
  if (violations.empty()) return;
  std::string msg = "invalid two-agent model:";
  for (const auto& v : violations) msg += "\n  " + v.to_string();
  throw PreconditionError(msg);
}

void check_cap(std::size_t n, const JointLimits& limits, const char* what) {
  if (n > limits.max_joint_states)
    throw CapExceeded(std::string(what) + " has " + std::to_string(n) + " states, above the cap of " +
                      std::to_string(limits.max_joint_states));
}

std::size_t checked_product(std::initializer_list<std::size_t> sizes, const JointLimits& limits, const char* what) {
  std::size_t n = 1;
  bool overflow = false;
  for (auto s : sizes) {
    if (s != 0 && n > std::numeric_limits<std::size_t>::max() / s) overflow = true;
    n *= s;
  }
  if (overflow)
    throw CapExceeded(std::string(what) + " is too large to index, above the cap of " +
                      std::to_string(limits.max_joint_states));
  check_cap(n, limits, what);
  return n;
}

std::size_t alpha_row(const TwoAgentModel& m, std::size_t a1, std::size_t a2, std::size_t w) {
  return (a1 * m.agents[1].action.size() + a2) * m.world.size() + w;
}

FiniteSpace joint_space(const TwoAgentModel& m) {
  const auto& [one, two] = m.agents;
  std::vector<FiniteSpace> factors{m.world, one.sensor, one.memory, one.action, two.sensor, two.memory, two.action};
  return FiniteSpace::product("J", factors);
}

LiftedComparison compare_lifted(const TwoAgentModel& m, const std::array<Partition, 2>& per_agent,
                                const FiniteSpace& joint) {
  LiftedComparison out;
  out.lifted = {lift_to_joint(m, 0, per_agent[0], joint), lift_to_joint(m, 1, per_agent[1], joint)};
  out.meet = partition_meet(out.lifted[0], out.lifted[1]);
  out.join = partition_join(out.lifted[0], out.lifted[1]);
  // The world coordinate is the most significant one in the joint order.
  const std::size_t fibre = joint.size() / m.world.size();
  out.block_is_world_cylinder.assign(out.meet.block_count(), true);
  std::vector<std::size_t> world_block(m.world.size());
  bool all_cylinders = true;
  for (std::size_t w = 0; w < m.world.size(); ++w) {
    const std::size_t id = out.meet.block_of(w * fibre);
    world_block[w] = id;
    for (std::size_t k = 1; k < fibre; ++k) {
      const std::size_t other = out.meet.block_of(w * fibre + k);
      if (other != id) {
        out.block_is_world_cylinder[id] = false;
        out.block_is_world_cylinder[other] = false;
        all_cylinders = false;
      }
    }
  }
  if (all_cylinders) out.on_world = Partition::from_block_ids(m.world, world_block);
  return out;
}

}  // namespace

AgentView agent_view(const TwoAgentModel& m, std::size_t agent, const JointLimits& limits) {
  if (agent > 1) throw PreconditionError("agent index must be 0 or 1");
  require_valid(m);
  const AgentLoop& self = m.agents[agent];
  const AgentLoop& partner = m.agents[1 - agent];
  const std::size_t nw = m.world.size(), ns = partner.sensor.size(), nc = partner.memory.size(),
                    na = partner.action.size();
  checked_product({nw, ns, nc, na}, limits, "outer world");
  std::vector<FiniteSpace> factors{m.world, partner.sensor, partner.memory, partner.action};
  FiniteSpace outer = FiniteSpace::product("W" + std::to_string(agent + 1), factors);
  const auto& arith = m.arithmetic;

  Kernel alpha("alpha", {self.action, outer}, {outer}, arith);
  const std::size_t no = outer.size();
  for (std::size_t ai = 0; ai < self.action.size(); ++ai) {
    for (std::size_t x = 0; x < no; ++x) {
      const auto coords = unflatten(factors, x);
      const std::size_t w = coords[0], cj = coords[2], aj = coords[3];
      const std::size_t row_index = agent == 0 ? alpha_row(m, ai, aj, w) : alpha_row(m, aj, ai, w);
      auto world_row = m.alpha.row(row_index);
      auto out_row = alpha.row(ai * no + x);
      for (std::size_t w2 = 0; w2 < nw; ++w2) {
        if (world_row[w2].is_exact_zero()) continue;
        for (std::size_t s2 = 0; s2 < ns; ++s2) {
          const Scalar& b = partner.beta(w2, s2);
          if (b.is_exact_zero()) continue;
          const Scalar pw = world_row[w2] * b;
          auto mem_row = partner.phi.row(s2 * nc + cj);
          for (std::size_t c2 = 0; c2 < nc; ++c2) {
            if (mem_row[c2].is_exact_zero()) continue;
            const Scalar pc = pw * mem_row[c2];
            for (std::size_t a2 = 0; a2 < na; ++a2) {
              const Scalar& p = partner.pi(c2, a2);
              if (p.is_exact_zero()) continue;
              out_row[((w2 * ns + s2) * nc + c2) * na + a2] += pc * p;
            }
          }
        }
      }
    }
  }

  Kernel beta("beta", {outer}, {self.sensor}, arith);
  for (std::size_t x = 0; x < no; ++x) {
    auto src = self.beta.row(x / (ns * nc * na));
    auto dst = beta.row(x);
    std::copy(src.begin(), src.end(), dst.begin());
  }
  return AgentView{agent, make_model(std::move(alpha), std::move(beta), self.phi, self.pi, self.memoryless, arith)};
}

Partition lift_to_joint(const TwoAgentModel& m, std::size_t agent, const Partition& view_partition,
                        const FiniteSpace& joint) {
  const auto& [one, two] = m.agents;
  std::vector<FiniteSpace> factors{m.world, one.sensor, one.memory, one.action, two.sensor, two.memory, two.action};
  const AgentLoop& partner = m.agents[1 - agent];
  const std::size_t ns = partner.sensor.size(), nc = partner.memory.size(), na = partner.action.size();
  std::vector<std::size_t> ids(joint.size());
  for (std::size_t j = 0; j < joint.size(); ++j) {
    const auto c = unflatten(factors, j);
    // Agent one's outer world carries agent two's coordinates (4..6), and vice versa.
    const std::size_t base = agent == 0 ? 4 : 1;
    const std::size_t view_state = ((c[0] * ns + c[base]) * nc + c[base + 1]) * na + c[base + 2];
    ids[j] = view_partition.block_of(view_state);
  }
  return Partition::from_block_ids(joint, ids);
}

SharedDistinctions shared_distinctions(const TwoAgentModel& m, const JointLimits& limits) {
  const auto& [one, two] = m.agents;
  checked_product({m.world.size(), one.sensor.size(), one.memory.size(), one.action.size(), two.sensor.size(),
                   two.memory.size(), two.action.size()},
                  limits, "joint space");
  std::array<AgentView, 2> views{agent_view(m, 0, limits), agent_view(m, 1, limits)};
  std::array<Partition, 2> intrinsic{intrinsic_partition(views[0].model).partition,
                                     intrinsic_partition(views[1].model).partition};
  std::array<Partition, 2> separate{w_sep(views[0].model).partition, w_sep(views[1].model).partition};
  FiniteSpace joint = joint_space(m);
  auto intrinsic_shared = compare_lifted(m, intrinsic, joint);
  auto separate_shared = compare_lifted(m, separate, joint);
  return SharedDistinctions{std::move(joint),          std::move(views),
                            std::move(intrinsic),      std::move(separate),
                            std::move(intrinsic_shared), std::move(separate_shared)};
}

UmweltTable umwelt_table(const LoopModel& m) {
  UmweltTable t;
  t.merkwelt = sigma_beta(m);
  t.intrinsic = intrinsic_partition(m).partition;
  t.passive_observer = m.action.size() == 1;
  t.blind_actor = m.sensor.size() == 1;
  t.intrinsic_contains_merkwelt = t.intrinsic.refines(t.merkwelt);
  const std::string int_verdict = t.intrinsic.is_trivial()           ? "no Umwelt"
                                  : t.intrinsic_contains_merkwelt ? "contains Merkwelt"
                                                                  : "misses Merkwelt";
  if (t.passive_observer) {
    // A passive observer has no effects, so W_wirk = {0, W}.
    const Partition wirk = Partition::trivial(m.world);
    const Partition cap = partition_meet(t.merkwelt, wirk);
    const Partition vee = partition_join(t.merkwelt, wirk);
    t.rows.push_back({"passive observer", cap.is_trivial() ? "no Umwelt" : "nontrivial",
                      vee == t.merkwelt ? "equals Merkwelt" : "differs from Merkwelt", int_verdict});
  }
  if (t.blind_actor) {
    // W_merk = sigma(beta) is trivial, so the meet is trivial and the join is
    // W_wirk whatever the effector world is.
    t.rows.push_back({"blind actor", t.merkwelt.is_trivial() ? "no Umwelt" : "nontrivial", "equals Wirkwelt",
                      int_verdict});
  }
  if (!t.passive_observer && !t.blind_actor)
    t.rows.push_back({"general", "not determined", "not determined", int_verdict});
  return t;
}

}  // namespace umwelt
