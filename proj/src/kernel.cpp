#include "umwelt/kernel.hpp"

#include "umwelt/errors.hpp"

namespace umwelt {

Kernel::Kernel(std::string name, std::vector<FiniteSpace> source, std::vector<FiniteSpace> target,
               const Arithmetic& arith)
    : name_(std::move(name)),
      source_(std::move(source)),
      target_(std::move(target)),
      rows_(product_size(source_)),
      cols_(product_size(target_)),
      entries_(rows_ * cols_, arith.zero()) {}

Kernel::Kernel(std::string name, std::vector<FiniteSpace> source, std::vector<FiniteSpace> target,
               std::vector<Scalar> entries)
    : name_(std::move(name)),
      source_(std::move(source)),
      target_(std::move(target)),
      rows_(product_size(source_)),
      cols_(product_size(target_)),
      entries_(std::move(entries)) {
  if (entries_.size() != rows_ * cols_)
    throw SpaceMismatch("kernel '" + name_ + "': expected " + std::to_string(rows_ * cols_) +
                        " entries, got " + std::to_string(entries_.size()));
}

Kernel Kernel::identity(const FiniteSpace& space, const Arithmetic& arith) {
  Kernel k("id_" + space.name(), {space}, {space}, arith);
  for (std::size_t i = 0; i < space.size(); ++i) k(i, i) = arith.one();
  return k;
}

Kernel Kernel::constant(std::string name, std::vector<FiniteSpace> source,
                        std::vector<FiniteSpace> target, std::span<const Scalar> distribution) {
  Kernel k(std::move(name), std::move(source), std::move(target));
  if (distribution.size() != k.cols()) throw SpaceMismatch("constant kernel: distribution size mismatch");
  for (std::size_t r = 0; r < k.rows(); ++r)
    for (std::size_t c = 0; c < k.cols(); ++c) k(r, c) = distribution[c];
  return k;
}

Kernel compose(const Kernel& first, const Kernel& second) {
  if (first.target() != second.source())
    throw SpaceMismatch("cannot compose '" + first.name() + "' with '" + second.name() +
                        "': target and source spaces differ");
  const bool exact = first.entries().empty() || first.entries().front().is_rational();
  Kernel out(first.name() + "*" + second.name(), first.source(), second.target(),
             exact ? Arithmetic::exact() : Arithmetic::floating(0.0));
  for (std::size_t r = 0; r < first.rows(); ++r) {
    auto out_row = out.row(r);
    for (std::size_t m = 0; m < first.cols(); ++m) {
      const Scalar& w = first(r, m);
      if (w.is_exact_zero()) continue;
      for (std::size_t c = 0; c < second.cols(); ++c) {
        const Scalar& v = second(m, c);
        if (!v.is_exact_zero()) out_row[c] += w * v;
      }
    }
  }
  return out;
}

Scalar row_sum(std::span<const Scalar> row) {
  Scalar total;
  for (const auto& x : row) total += x;
  return total;
}

Scalar mass_on(std::span<const Scalar> row, std::span<const StateIndex> columns) {
  Scalar total;
  for (auto c : columns) total += row[c];
  return total;
}

}  // namespace umwelt
