#pragma once

#include <span>
#include <vector>

#include "umwelt/scalar.hpp"
#include "umwelt/space.hpp"

namespace umwelt {

/// A partition of a finite space, i.e. the atoms of a finite sigma-algebra.
///
/// Always canonical: each block is sorted, blocks are ordered by their least
/// member and block ids follow that order. Two partitions describing the same
/// sigma-algebra therefore compare equal member-wise.
class Partition {
 public:
  Partition() = default;

  /// Canonicalizes arbitrary block ids (one per state).
  static Partition from_block_ids(FiniteSpace space, std::span<const std::size_t> ids);
  /// Throws PreconditionError unless the blocks are disjoint, nonempty and
  /// cover the space.
  static Partition from_blocks(FiniteSpace space, const std::vector<std::vector<StateIndex>>& blocks);
  /// All singletons.
  static Partition discrete(FiniteSpace space);
  /// The single block {W}.
  static Partition trivial(FiniteSpace space);

  const FiniteSpace& space() const { return space_; }
  std::size_t size() const { return block_of_.size(); }
  std::size_t block_count() const { return blocks_.size(); }
  std::size_t block_of(StateIndex s) const { return block_of_.at(s); }
  const std::vector<std::size_t>& block_ids() const { return block_of_; }
  const std::vector<std::vector<StateIndex>>& blocks() const { return blocks_; }
  const std::vector<StateIndex>& block(std::size_t id) const { return blocks_.at(id); }

  bool same_block(StateIndex a, StateIndex b) const { return block_of_.at(a) == block_of_.at(b); }
  bool is_discrete() const { return blocks_.size() == block_of_.size(); }
  bool is_trivial() const { return blocks_.size() == 1; }

  /// True when every block of *this lies inside a block of `coarser`
  /// (equivalently sigma(coarser) is contained in sigma(*this)).
  bool refines(const Partition& coarser) const;

  friend bool operator==(const Partition& a, const Partition& b) {
    return a.space_ == b.space_ && a.block_of_ == b.block_of_;
  }

 private:
  FiniteSpace space_;
  std::vector<std::size_t> block_of_;
  std::vector<std::vector<StateIndex>> blocks_;
};

/// Coarsest common refinement: nonempty intersections of blocks.
/// Throws SpaceMismatch on different spaces.
Partition partition_join(const Partition& p, const Partition& q);

/// Finest common coarsening: connected components of the block overlap
/// relation. Its unions of blocks are exactly the sets that are unions of
/// p-blocks and of q-blocks.
Partition partition_meet(const Partition& p, const Partition& q);

/// Splits every block by a per-state key. Inside a block, states are sorted
/// by key and cut wherever consecutive keys differ by more than the
/// arithmetic's tolerance (exact inequality in rational mode).
Partition split_by_key(const Partition& p, std::span<const Scalar> keys, const Arithmetic& arith);

}  // namespace umwelt
