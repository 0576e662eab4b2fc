#pragma once

// Independent reference computations used only by the tests. None of them
// calls the refinement, basis or lattice code under test.

#include <gmpxx.h>

#include <functional>
#include <map>
#include <string>
#include <vector>

#include "umwelt/io.hpp"
#include "umwelt/loop_model.hpp"
#include "umwelt/partition.hpp"
#include "umwelt/sensor_process.hpp"

namespace oracle {

using umwelt::LoopModel;
using umwelt::Partition;
using umwelt::Scalar;
using umwelt::StateIndex;

inline std::string fixture(const std::string& name) { return std::string(UMWELT_FIXTURE_DIR) + "/" + name; }

inline LoopModel load_model(const std::string& name) {
  return umwelt::model_from_json(umwelt::parse_json(umwelt::read_file(fixture(name))));
}

/// Blocks as label lists, for readable comparisons.
inline std::vector<std::vector<std::string>> labels(const Partition& p) {
  std::vector<std::vector<std::string>> out;
  for (const auto& b : p.blocks()) {
    auto& block = out.emplace_back();
    for (auto s : b) block.push_back(p.space().label(s));
  }
  return out;
}

using Blocks = std::vector<std::vector<std::string>>;

/// Every set partition of {0..n-1} as restricted growth strings.
inline void for_each_partition(std::size_t n, const std::function<void(const std::vector<std::size_t>&)>& visit) {
  std::vector<std::size_t> ids(n, 0);
  std::function<void(std::size_t, std::size_t)> rec = [&](std::size_t i, std::size_t used) {
    if (i == n) {
      visit(ids);
      return;
    }
    for (std::size_t b = 0; b <= used && b < n; ++b) {
      ids[i] = b;
      rec(i + 1, b == used ? used + 1 : used);
    }
  };
  if (n == 0) visit(ids);
  else rec(0, 0);
}

inline std::size_t block_count(const std::vector<std::size_t>& ids) {
  std::size_t m = 0;
  for (auto b : ids) m = std::max(m, b + 1);
  return m;
}

/// Whether `fine` refines `coarse` (both as block-id vectors).
inline bool refines(const std::vector<std::size_t>& fine, const std::vector<std::size_t>& coarse) {
  for (std::size_t i = 0; i < fine.size(); ++i)
    for (std::size_t j = 0; j < fine.size(); ++j)
      if (fine[i] == fine[j] && coarse[i] != coarse[j]) return false;
  return true;
}

/// Equal beta rows within blocks, and alpha_a(.)(B) constant on blocks for
/// every action and block.
inline bool stable(const LoopModel& m, const std::vector<std::size_t>& ids) {
  const std::size_t nw = m.world.size(), nb = block_count(ids);
  for (std::size_t u = 0; u < nw; ++u)
    for (std::size_t v = u + 1; v < nw; ++v) {
      if (ids[u] != ids[v]) continue;
      for (std::size_t s = 0; s < m.sensor.size(); ++s)
        if (!(m.beta(u, s) == m.beta(v, s))) return false;
      for (std::size_t a = 0; a < m.action.size(); ++a) {
        std::vector<Scalar> mu(nb), mv(nb);
        for (std::size_t t = 0; t < nw; ++t) {
          mu[ids[t]] += m.alpha(a * nw + u, t);
          mv[ids[t]] += m.alpha(a * nw + v, t);
        }
        if (mu != mv) return false;
      }
    }
  return true;
}

/// Coarsest stable partition by exhaustive search. Also checks that it is
/// the unique coarsest one (every stable partition refines it); returns an
/// empty vector otherwise.
inline std::vector<std::size_t> coarsest_stable_partition(const LoopModel& m) {
  std::vector<std::vector<std::size_t>> found;
  for_each_partition(m.world.size(), [&](const std::vector<std::size_t>& ids) {
    if (stable(m, ids)) found.push_back(ids);
  });
  std::vector<std::size_t> best;
  for (const auto& ids : found)
    if (best.empty() || block_count(ids) < block_count(best)) best = ids;
  for (const auto& ids : found)
    if (!refines(ids, best)) return {};
  return best;
}

/// Rank of a list of rational vectors by plain Gaussian elimination.
inline std::size_t rank(std::vector<std::vector<mpq_class>> rows) {
  if (rows.empty()) return 0;
  const std::size_t cols = rows[0].size();
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows.size(); ++c) {
    std::size_t pivot = r;
    while (pivot < rows.size() && rows[pivot][c] == 0) ++pivot;
    if (pivot == rows.size()) continue;
    std::swap(rows[r], rows[pivot]);
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (i == r || rows[i][c] == 0) continue;
      const mpq_class f = rows[i][c] / rows[r][c];
      for (std::size_t k = c; k < cols; ++k) rows[i][k] -= f * rows[r][k];
    }
    ++r;
  }
  return r;
}

/// Word functionals f(w) = P(S_1..S_n = s | W_1 = w, actions) for all n in
/// 1..horizon, read off forward sensor-process tables, plus the ones vector.
inline std::vector<std::vector<mpq_class>> forward_functionals(const LoopModel& m, std::size_t horizon) {
  std::vector<std::vector<mpq_class>> out;
  out.emplace_back(m.world.size(), mpq_class(1));
  const std::size_t na = m.action.size();
  for (std::size_t n = 1; n <= horizon; ++n) {
    // Actions of length n (the last one is irrelevant, fixed to 0).
    std::size_t words = 1;
    for (std::size_t k = 1; k < n; ++k) words *= na;
    for (std::size_t code = 0; code < words; ++code) {
      umwelt::ActionWord word(n, 0);
      std::size_t x = code;
      for (std::size_t k = n - 1; k-- > 0;) {
        word[k] = x % na;
        x /= na;
      }
      std::vector<umwelt::SensorProcess> tables;
      for (StateIndex w = 0; w < m.world.size(); ++w) tables.push_back(umwelt::sensor_process(m, w, word));
      for (std::size_t t = 0; t < tables[0].table.size(); ++t) {
        std::vector<mpq_class> f;
        for (const auto& p : tables) f.push_back(p.table[t].rational());
        out.push_back(std::move(f));
      }
    }
  }
  return out;
}

/// Brute-force check that a partition is the finest common coarsening: every
/// strictly finer partition fails to be coarsened by both inputs.
inline bool meet_is_minimal(const Partition& meet, const Partition& p, const Partition& q) {
  const auto& mid = meet.block_ids();
  bool ok = true;
  for_each_partition(meet.size(), [&](const std::vector<std::size_t>& ids) {
    if (!ok) return;
    if (!refines(ids, mid) || block_count(ids) == meet.block_count()) return;
    // ids strictly finer than the meet: it must not be coarser than both p and q.
    if (refines(p.block_ids(), ids) && refines(q.block_ids(), ids)) ok = false;
  });
  return ok;
}

/// Derived outer-world update for agent i by explicit path enumeration over
/// (w', s_j', c_j', a_j'), as a map from (a_i, x) row to the target distribution.
inline std::vector<std::vector<mpq_class>> agent_alpha_by_paths(const umwelt::TwoAgentModel& m, std::size_t i) {
  const auto& self = m.agents[i];
  const auto& other = m.agents[1 - i];
  const std::size_t nw = m.world.size(), ns = other.sensor.size(), nc = other.memory.size(),
                    na = other.action.size(), n2 = m.agents[1].action.size();
  const std::size_t no = nw * ns * nc * na;
  std::vector<std::vector<mpq_class>> rows(self.action.size() * no, std::vector<mpq_class>(no));
  for (std::size_t ai = 0; ai < self.action.size(); ++ai)
    for (std::size_t w = 0; w < nw; ++w)
      for (std::size_t s = 0; s < ns; ++s)
        for (std::size_t c = 0; c < nc; ++c)
          for (std::size_t aj = 0; aj < na; ++aj) {
            const std::size_t x = ((w * ns + s) * nc + c) * na + aj;
            const std::size_t a1 = i == 0 ? ai : aj, a2 = i == 0 ? aj : ai;
            const std::size_t arow = (a1 * n2 + a2) * nw + w;
            for (std::size_t w2 = 0; w2 < nw; ++w2)
              for (std::size_t s2 = 0; s2 < ns; ++s2)
                for (std::size_t c2 = 0; c2 < nc; ++c2)
                  for (std::size_t a2j = 0; a2j < na; ++a2j) {
                    const mpq_class p = m.alpha(arow, w2).rational() * other.beta(w2, s2).rational() *
                                        other.phi(s2 * nc + c, c2).rational() * other.pi(c2, a2j).rational();
                    rows[ai * no + x][((w2 * ns + s2) * nc + c2) * na + a2j] += p;
                  }
          }
  return rows;
}

}  // namespace oracle
