#include "nqd/graded_algebra.hpp"

#include "nqd/errors.hpp"

namespace nqd {

std::vector<std::string> GradedAlgebra::labels(std::size_t n) const {
  std::vector<std::string> out;
  for (std::size_t i = 0; i < dim(n); ++i) out.push_back(label(n, i));
  return out;
}

const std::vector<SparseVector>& GradedAlgebra::product_table(std::size_t i, std::size_t j) const {
  std::lock_guard lock(table_mutex_);
  auto& slot = tables_[{i, j}];
  if (!slot) {
    const std::size_t di = dim(i), dj = dim(j);
    auto table = std::make_unique<std::vector<SparseVector>>(di * dj);
    for (std::size_t a = 0; a < di; ++a)
      for (std::size_t b = 0; b < dj; ++b) (*table)[a * dj + b] = basis_product(i, a, j, b);
    slot = std::move(table);
  }
  return *slot;
}

Vector GradedAlgebra::multiply(std::size_t i, std::span<const Scalar> x, std::size_t j,
                               std::span<const Scalar> y) const {
  const std::size_t di = dim(i), dj = dim(j);
  if (x.size() != di || y.size() != dj) throw DimensionMismatch("multiply: coordinate length mismatch");
  Vector out(dim(i + j));
  if (is_zero(x) || is_zero(y)) return out;
  const auto& table = product_table(i, j);
  for (std::size_t a = 0; a < di; ++a) {
    if (x[a].is_zero()) continue;
    for (std::size_t b = 0; b < dj; ++b) {
      if (y[b].is_zero()) continue;
      const Scalar c = x[a] * y[b];
      for (const auto& e : table[a * dj + b]) out[e.index] += c * e.value;
    }
  }
  return out;
}

Vector GradedAlgebra::commutator(std::size_t i, std::span<const Scalar> x, std::size_t j,
                                 std::span<const Scalar> y) const {
  Vector xy = multiply(i, x, j, y);
  Vector yx = multiply(j, y, i, x);
  axpy(xy, (i * j) % 2 ? Scalar(1) : Scalar(-1), yx);
  return xy;
}

Matrix GradedAlgebra::multiplication_matrix(std::size_t i, std::span<const Scalar> x, std::size_t j,
                                            bool left) const {
  const std::size_t dj = dim(j);
  Matrix m(dim(i + j), dj);
  for (std::size_t b = 0; b < dj; ++b) {
    Vector e = unit_vector(dj, b);
    Vector col = left ? multiply(i, x, j, e) : multiply(j, e, i, x);
    for (std::size_t r = 0; r < col.size(); ++r) m.at(r, b) = col[r];
  }
  return m;
}

std::size_t GradedAlgebra::word_degree(std::span<const std::size_t> word) const {
  std::size_t d = 0;
  for (std::size_t g : word) d += generators().at(g).degree;
  return d;
}

Vector GradedAlgebra::word_product(std::span<const std::size_t> word) const {
  const auto& gens = generators();
  Vector acc = unit();
  std::size_t deg = 0;
  for (std::size_t g : word) {
    const Generator& gen = gens.at(g);
    acc = multiply(deg, acc, gen.degree, gen.element);
    deg += gen.degree;
  }
  return acc;
}

Vector GradedAlgebra::power(std::size_t degree, std::span<const Scalar> x, std::size_t exponent) const {
  Vector acc = unit();
  for (std::size_t k = 0; k < exponent; ++k) acc = multiply(k * degree, acc, degree, x);
  return acc;
}

}  // namespace nqd
