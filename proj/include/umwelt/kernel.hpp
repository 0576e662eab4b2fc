#pragma once

#include <span>
#include <string>
#include <vector>

#include "umwelt/scalar.hpp"
#include "umwelt/space.hpp"

namespace umwelt {

/// A Markov kernel between finite (product) spaces, stored as a dense
/// row-stochastic matrix. Rows follow the mixed-radix order of the source
/// factors, columns that of the target factors.
class Kernel {
 public:
  Kernel() = default;
  /// Zero-filled kernel; entries must be set before use.
  Kernel(std::string name, std::vector<FiniteSpace> source, std::vector<FiniteSpace> target,
         const Arithmetic& arith = {});
  /// Throws SpaceMismatch if the entry count does not match the shape.
  Kernel(std::string name, std::vector<FiniteSpace> source, std::vector<FiniteSpace> target,
         std::vector<Scalar> entries);

  static Kernel identity(const FiniteSpace& space, const Arithmetic& arith = {});
  /// Every row equal to `distribution`.
  static Kernel constant(std::string name, std::vector<FiniteSpace> source,
                         std::vector<FiniteSpace> target, std::span<const Scalar> distribution);

  const std::string& name() const { return name_; }
  void set_name(std::string name) { name_ = std::move(name); }
  const std::vector<FiniteSpace>& source() const { return source_; }
  const std::vector<FiniteSpace>& target() const { return target_; }
  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  const Scalar& operator()(std::size_t row, std::size_t col) const { return entries_[row * cols_ + col]; }
  Scalar& operator()(std::size_t row, std::size_t col) { return entries_[row * cols_ + col]; }
  std::span<const Scalar> row(std::size_t r) const { return {entries_.data() + r * cols_, cols_}; }
  std::span<Scalar> row(std::size_t r) { return {entries_.data() + r * cols_, cols_}; }
  const std::vector<Scalar>& entries() const { return entries_; }

  /// Row index for a source coordinate tuple.
  std::size_t row_index(std::span<const StateIndex> coords) const { return flatten(source_, coords); }

  friend bool operator==(const Kernel& a, const Kernel& b) {
    return a.source_ == b.source_ && a.target_ == b.target_ && a.entries_ == b.entries_;
  }

 private:
  std::string name_;
  std::vector<FiniteSpace> source_;
  std::vector<FiniteSpace> target_;
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Scalar> entries_;
};

/// Kernel composition (matrix product). Throws SpaceMismatch unless
/// first.target() == second.source().
Kernel compose(const Kernel& first, const Kernel& second);

/// Sum of a row's entries.
Scalar row_sum(std::span<const Scalar> row);

/// Sum of row[i] over the listed columns.
Scalar mass_on(std::span<const Scalar> row, std::span<const StateIndex> columns);

}  // namespace umwelt
