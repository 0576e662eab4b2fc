#include "umwelt/space.hpp"

#include "umwelt/errors.hpp"

namespace umwelt {

FiniteSpace::FiniteSpace(std::string name, std::vector<std::string> labels)
    : name_(std::move(name)), labels_(std::move(labels)) {
  if (labels_.empty()) throw PreconditionError("space '" + name_ + "' has no states");
  index_.reserve(labels_.size());
  for (StateIndex i = 0; i < labels_.size(); ++i) {
    if (!index_.emplace(labels_[i], i).second)
      throw PreconditionError("space '" + name_ + "' has duplicate label '" + labels_[i] + "'");
  }
}

FiniteSpace FiniteSpace::numbered(std::string name, std::size_t n, std::size_t first) {
  std::vector<std::string> labels;
  labels.reserve(n);
  for (std::size_t i = 0; i < n; ++i) labels.push_back(std::to_string(first + i));
  return FiniteSpace(std::move(name), std::move(labels));
}

FiniteSpace FiniteSpace::product(std::string name, std::span<const FiniteSpace> factors) {
  std::vector<std::string> labels;
  const std::size_t n = product_size(factors);
  labels.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    auto coords = unflatten(factors, i);
    std::string label;
    for (std::size_t f = 0; f < factors.size(); ++f) {
      if (f) label += '|';
      label += factors[f].label(coords[f]);
    }
    labels.push_back(std::move(label));
  }
  return FiniteSpace(std::move(name), std::move(labels));
}

std::optional<StateIndex> FiniteSpace::find(const std::string& label) const {
  auto it = index_.find(label);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

StateIndex FiniteSpace::index_of(const std::string& label) const {
  auto it = index_.find(label);
  if (it == index_.end())
    throw PreconditionError("unknown state '" + label + "' in space '" + name_ + "'");
  return it->second;
}

std::size_t product_size(std::span<const FiniteSpace> factors) {
  std::size_t n = 1;
  for (const auto& f : factors) n *= f.size();
  return n;
}

std::size_t flatten(std::span<const FiniteSpace> factors, std::span<const StateIndex> coords) {
  if (coords.size() != factors.size()) throw SpaceMismatch("coordinate arity mismatch");
  std::size_t index = 0;
  for (std::size_t f = 0; f < factors.size(); ++f) index = index * factors[f].size() + coords[f];
  return index;
}

std::vector<StateIndex> unflatten(std::span<const FiniteSpace> factors, std::size_t index) {
  std::vector<StateIndex> coords(factors.size());
  for (std::size_t f = factors.size(); f-- > 0;) {
    coords[f] = index % factors[f].size();
    index /= factors[f].size();
  }
  return coords;
}

}  // namespace umwelt
