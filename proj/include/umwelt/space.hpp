#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

namespace umwelt {

using StateIndex = std::size_t;

/// A named finite state space with a fixed label order. All matrices index
/// against that order.
class FiniteSpace {
 public:
  FiniteSpace() = default;
  /// Throws PreconditionError on an empty label list or duplicate labels.
  FiniteSpace(std::string name, std::vector<std::string> labels);

  /// Builds labels 0..n-1.
  static FiniteSpace numbered(std::string name, std::size_t n, std::size_t first = 0);

  /// Product space; labels are the component labels joined by '|', with the
  /// first factor varying slowest.
  static FiniteSpace product(std::string name, std::span<const FiniteSpace> factors);

  const std::string& name() const { return name_; }
  std::size_t size() const { return labels_.size(); }
  const std::vector<std::string>& labels() const { return labels_; }
  const std::string& label(StateIndex i) const { return labels_.at(i); }
  std::optional<StateIndex> find(const std::string& label) const;
  /// Throws PreconditionError for an unknown label.
  StateIndex index_of(const std::string& label) const;

  friend bool operator==(const FiniteSpace& a, const FiniteSpace& b) {
    return a.name_ == b.name_ && a.labels_ == b.labels_;
  }

 private:
  std::string name_;
  std::vector<std::string> labels_;
  std::unordered_map<std::string, StateIndex> index_;
};

/// Mixed-radix indexing over an ordered product of spaces (first factor most
/// significant).
std::size_t product_size(std::span<const FiniteSpace> factors);
std::size_t flatten(std::span<const FiniteSpace> factors, std::span<const StateIndex> coords);
std::vector<StateIndex> unflatten(std::span<const FiniteSpace> factors, std::size_t index);

}  // namespace umwelt
