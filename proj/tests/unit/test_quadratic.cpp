#include <gtest/gtest.h>

#include <random>

#include "nqd/errors.hpp"
#include "nqd/quadratic.hpp"
#include "nqd/tensor.hpp"
#include "oracles.hpp"

using namespace nqd;

namespace {

// x_i x_j - x_j x_i (sign = -1) or x_i x_j + x_j x_i (sign = +1), i < j, plus
// x_i x_i when sign = +1.
Subspace pair_relations(std::size_t g, int sign) {
  std::vector<SparseVector> gens;
  for (std::size_t i = 0; i < g; ++i)
    for (std::size_t j = i; j < g; ++j) {
      if (i == j) {
        if (sign > 0) gens.push_back({{i * g + i, Scalar(1)}});
        continue;
      }
      gens.push_back({{i * g + j, Scalar(1)}, {j * g + i, Scalar(sign)}});
    }
  return Subspace::span(g * g, gens);
}

std::vector<std::string> names(std::size_t g) {
  std::vector<std::string> out;
  for (std::size_t i = 0; i < g; ++i) out.push_back("v" + std::to_string(i + 1));
  return out;
}

QuadraticAlgebra symmetric(std::size_t g) { return QuadraticAlgebra(names(g), pair_relations(g, -1)); }
QuadraticAlgebra exterior(std::size_t g) { return QuadraticAlgebra(names(g), pair_relations(g, +1)); }

}  // namespace

TEST(Tensor, WordIndexExamples) {
  EXPECT_EQ(word_index(std::vector<std::size_t>{}, TensorBasis(2, 0)), 0u);
  EXPECT_EQ(word_index(std::vector<std::size_t>{0, 0}, TensorBasis(2, 2)), 0u);
  EXPECT_EQ(word_index(std::vector<std::size_t>{1, 0}, TensorBasis(2, 2)), 2u);
  const TensorBasis b(3, 4);
  for (std::size_t i = 0; i < b.size(); ++i) EXPECT_EQ(word_index(index_word(i, b), b), i);
}

TEST(Tensor, FilteredLayout) {
  const FilteredTensorBasis fb(3, 3);
  EXPECT_EQ(fb.size(), (81u - 1) / 2);
  EXPECT_EQ(fb.offset(1), 1u);
  EXPECT_EQ(fb.offset(2), 4u);
  EXPECT_EQ(fb.degree_of(3), 1u);
  // x (x) y + x, from bound 2 into bound 3: blocks 2 and 1.
  const FilteredTensorBasis f2(2, 2), f3(2, 3);
  const SparseVector e = embed_filtered({{f2.offset(1), Scalar(1)}, {f2.offset(2) + 1, Scalar(1)}}, f2, f3);
  ASSERT_EQ(e.size(), 2u);
  EXPECT_EQ(f3.degree_of(e[0].index), 1u);
  EXPECT_EQ(f3.degree_of(e[1].index), 2u);
  EXPECT_THROW(embed_filtered({}, f3, f2), Error);
}

TEST(Tensor, IdealComponentExamples) {
  EXPECT_EQ(homogeneous_ideal_component(Subspace(4), 2, 3).dim(), 0u);
  EXPECT_EQ(homogeneous_ideal_component(Subspace::full(4), 2, 2).dim(), 4u);
  const Subspace comm = pair_relations(2, -1);
  EXPECT_EQ(homogeneous_ideal_component(comm, 2, 3).dim(), 4u);
  EXPECT_EQ(homogeneous_ideal_component(comm, 2, 2), comm);
  EXPECT_EQ(homogeneous_ideal_component(comm, 2, 1).dim(), 0u);
}

TEST(Tensor, IdealComponentsBoundedBySpanningCount) {
  std::mt19937_64 rng(11);
  for (int t = 0; t < 20; ++t) {
    const std::size_t g = 2 + rng() % 2;
    std::vector<SparseVector> gens;
    for (int k = 0; k < 2; ++k) {
      Vector v(g * g);
      for (auto& x : v) x = Scalar(static_cast<long long>(rng() % 3) - 1);
      gens.push_back(to_sparse(v));
    }
    const Subspace rel = Subspace::span(g * g, gens);
    const auto comps = homogeneous_ideal_components(rel, g, 4);
    for (std::size_t n = 2; n <= 4; ++n) {
      EXPECT_EQ(comps[n], homogeneous_ideal_component(rel, g, n));
      EXPECT_LE(comps[n].dim(), (n - 1) * ipow(g, n - 2) * rel.dim());
    }
  }
}

TEST(Quadratic, DualExamples) {
  const QuadraticAlgebra free2(names(2), Subspace(4));
  EXPECT_EQ(quadratic_dual(free2).relations().dim(), 4u);
  EXPECT_EQ(hilbert(quadratic_dual(free2), 3), (std::vector<std::size_t>{1, 2, 0, 0}));

  const QuadraticAlgebra s3 = symmetric(3);
  const QuadraticAlgebra d = quadratic_dual(s3);
  EXPECT_EQ(d.relations().dim(), 6u);
  EXPECT_EQ(d.relations(), pair_relations(3, +1));
  EXPECT_EQ(hilbert(d, 4), (std::vector<std::size_t>{1, 3, 3, 1, 0}));
  EXPECT_EQ(d.gen_names()[0], "v1*");
  EXPECT_EQ(quadratic_dual(d).gen_names()[0], "v1");
}

TEST(Quadratic, DoubleDualRandom) {
  std::mt19937_64 rng(3);
  for (int t = 0; t < 100; ++t) {
    const std::size_t g = 1 + rng() % 4;
    const std::size_t k = rng() % (g * g + 1);
    std::vector<SparseVector> gens;
    for (std::size_t i = 0; i < k; ++i) {
      Vector v(g * g);
      for (auto& x : v) x = Scalar(static_cast<long long>(rng() % 5) - 2);
      gens.push_back(to_sparse(v));
    }
    const QuadraticAlgebra a(names(g), Subspace::span(g * g, gens));
    const QuadraticAlgebra dd = quadratic_dual(quadratic_dual(a));
    EXPECT_EQ(dd.relations(), a.relations());
    EXPECT_EQ(a.relations().dim() + quadratic_dual(a).relations().dim(), g * g);
  }
}

TEST(Quadratic, ComponentsAndHilbert) {
  EXPECT_EQ(symmetric(3).component(2).dim(), 6u);
  EXPECT_EQ(exterior(3).component(4).dim(), 0u);
  EXPECT_EQ(hilbert(symmetric(3), 4), (std::vector<std::size_t>{1, 3, 6, 10, 15}));
  EXPECT_EQ(hilbert(QuadraticAlgebra(names(2), Subspace(4)), 3), (std::vector<std::size_t>{1, 2, 4, 8}));
  for (std::size_t g = 1; g <= 4; ++g)
    for (std::size_t n = 0; n <= 4; ++n) {
      EXPECT_EQ(symmetric(g).dim(n), oracle::binomial(n + g - 1, g - 1));
      EXPECT_EQ(exterior(g).dim(n), oracle::binomial(g, n));
    }
}

TEST(Quadratic, Multiplication) {
  const QuadraticAlgebra l = exterior(2), s = symmetric(2);
  const Vector x = unit_vector(2, 0), y = unit_vector(2, 1);
  EXPECT_EQ(l.multiply(0, l.unit(), 1, x), x);
  EXPECT_TRUE(is_zero(l.multiply(1, x, 1, x)));
  EXPECT_EQ(s.multiply(1, x, 1, y), s.multiply(1, y, 1, x));
  EXPECT_EQ(l.multiply(1, x, 1, y), scaled(l.multiply(1, y, 1, x), Scalar(-1)));
  // Associativity on all basis triples of a random algebra.
  std::vector<SparseVector> gens{{{1, Scalar(1)}, {3, Scalar(2)}}, {{5, Scalar(1)}, {7, Scalar(-1)}}};
  const QuadraticAlgebra a(names(3), Subspace::span(9, gens));
  for (std::size_t i = 0; i < a.dim(1); ++i)
    for (std::size_t j = 0; j < a.dim(1); ++j)
      for (std::size_t k = 0; k < a.dim(2); ++k) {
        const Vector u = unit_vector(a.dim(1), i), v = unit_vector(a.dim(1), j), w = unit_vector(a.dim(2), k);
        EXPECT_EQ(a.multiply(2, a.multiply(1, u, 1, v), 2, w), a.multiply(1, u, 3, a.multiply(1, v, 2, w)));
      }
}
