#include "umwelt/partition.hpp"

#include <algorithm>
#include <numeric>
#include <unordered_map>

#include "umwelt/errors.hpp"

namespace umwelt {

Partition Partition::from_block_ids(FiniteSpace space, std::span<const std::size_t> ids) {
  if (ids.size() != space.size()) throw SpaceMismatch("block id count differs from space size");
  Partition p;
  p.space_ = std::move(space);
  p.block_of_.resize(ids.size());
  // Relabel in order of first appearance, which is the least-member order.
  std::unordered_map<std::size_t, std::size_t> canonical_of;
  for (StateIndex s = 0; s < ids.size(); ++s) {
    auto [it, fresh] = canonical_of.try_emplace(ids[s], p.blocks_.size());
    if (fresh) p.blocks_.emplace_back();
    p.block_of_[s] = it->second;
    p.blocks_[it->second].push_back(s);
  }
  return p;
}

Partition Partition::from_blocks(FiniteSpace space, const std::vector<std::vector<StateIndex>>& blocks) {
  constexpr auto unset = static_cast<std::size_t>(-1);
  std::vector<std::size_t> ids(space.size(), unset);
  for (std::size_t b = 0; b < blocks.size(); ++b) {
    if (blocks[b].empty()) throw PreconditionError("partition has an empty block");
    for (auto s : blocks[b]) {
      if (s >= ids.size()) throw PreconditionError("partition block contains an unknown state");
      if (ids[s] != unset) throw PreconditionError("partition blocks overlap at state '" + space.label(s) + "'");
      ids[s] = b;
    }
  }
  for (StateIndex s = 0; s < ids.size(); ++s)
    if (ids[s] == unset) throw PreconditionError("partition does not cover state '" + space.label(s) + "'");
  return from_block_ids(std::move(space), ids);
}

Partition Partition::discrete(FiniteSpace space) {
  std::vector<std::size_t> ids(space.size());
  std::iota(ids.begin(), ids.end(), 0);
  return from_block_ids(std::move(space), ids);
}

Partition Partition::trivial(FiniteSpace space) {
  std::vector<std::size_t> ids(space.size(), 0);
  return from_block_ids(std::move(space), ids);
}

bool Partition::refines(const Partition& coarser) const {
  if (space_ != coarser.space_) throw SpaceMismatch("refines: partitions of different spaces");
  for (const auto& block : blocks_)
    for (auto s : block)
      if (coarser.block_of_[s] != coarser.block_of_[block.front()]) return false;
  return true;
}

Partition partition_join(const Partition& p, const Partition& q) {
  if (p.space() != q.space()) throw SpaceMismatch("join: partitions of different spaces");
  std::vector<std::size_t> ids(p.size());
  for (StateIndex s = 0; s < ids.size(); ++s) ids[s] = p.block_of(s) * q.block_count() + q.block_of(s);
  return Partition::from_block_ids(p.space(), ids);
}

Partition partition_meet(const Partition& p, const Partition& q) {
  if (p.space() != q.space()) throw SpaceMismatch("meet: partitions of different spaces");
  // Union-find over states; every block of either partition is merged.
  std::vector<std::size_t> parent(p.size());
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  auto merge_blocks = [&](const Partition& part) {
    for (const auto& block : part.blocks()) {
      for (std::size_t i = 1; i < block.size(); ++i) {
        auto a = find(block.front()), b = find(block[i]);
        if (a != b) parent[std::max(a, b)] = std::min(a, b);
      }
    }
  };
  merge_blocks(p);
  merge_blocks(q);
  std::vector<std::size_t> ids(p.size());
  for (StateIndex s = 0; s < ids.size(); ++s) ids[s] = find(s);
  return Partition::from_block_ids(p.space(), ids);
}

Partition split_by_key(const Partition& p, std::span<const Scalar> keys, const Arithmetic& arith) {
  if (keys.size() != p.size()) throw SpaceMismatch("split_by_key: one key per state required");
  std::vector<std::size_t> ids(p.size());
  std::size_t next_id = 0;
  for (const auto& block : p.blocks()) {
    std::vector<StateIndex> order = block;
    std::stable_sort(order.begin(), order.end(),
                     [&](StateIndex a, StateIndex b) { return keys[a] < keys[b]; });
    ids[order.front()] = next_id;
    for (std::size_t i = 1; i < order.size(); ++i) {
      if (!arith.equal(keys[order[i - 1]], keys[order[i]])) ++next_id;
      ids[order[i]] = next_id;
    }
    ++next_id;
  }
  return Partition::from_block_ids(p.space(), ids);
}

}  // namespace umwelt
