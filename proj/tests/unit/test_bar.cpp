#include <gtest/gtest.h>

#include <random>

#include "nqd/bar.hpp"
#include "nqd/corpus.hpp"
#include "nqd/duality.hpp"
#include "nqd/errors.hpp"
#include "oracles.hpp"

using namespace nqd;

namespace {

std::vector<std::string> names(std::size_t g) {
  std::vector<std::string> out;
  for (std::size_t i = 0; i < g; ++i) out.push_back("v" + std::to_string(i + 1));
  return out;
}

QuadraticAlgebra symmetric(std::size_t g) {
  std::vector<SparseVector> gens;
  for (std::size_t i = 0; i < g; ++i)
    for (std::size_t j = i + 1; j < g; ++j) gens.push_back({{i * g + j, Scalar(1)}, {j * g + i, Scalar(-1)}});
  return QuadraticAlgebra(names(g), Subspace::span(g * g, gens));
}

QuadraticAlgebra exterior(std::size_t g) { return quadratic_dual(symmetric(g)); }

std::vector<NQPresentation> koszul_corpus() {
  Matrix q3(3, 3);
  q3.at(0, 0) = 1;
  q3.at(1, 1) = -1;
  q3.at(2, 2) = 2;
  q3.at(0, 2) = q3.at(2, 0) = 1;
  return {clifford({"v", "w"}, Matrix::identity(2)), clifford({"a", "b", "c"}, q3),
          enveloping(LieData::abelian({"x", "y", "z"})), enveloping(heisenberg3()), weyl(),
          enveloping(sl2()), heisenberg_extension()};
}

std::size_t off_diagonal_mass(const ExtTable& t) {
  std::size_t s = 0;
  for (std::size_t j = 0; j <= t.max_degree; ++j)
    for (std::size_t i = 0; i <= j; ++i)
      if (i != j) s += t.dims[i][j];
  return s;
}

}  // namespace

TEST(BarBasis, CompositionsAndLabels) {
  const QuadraticAlgebra s2 = symmetric(2);
  // (1|1|1) has 8 elements; (1|2), (2|1) have 2*3 each.
  EXPECT_EQ(BarBasis(s2, 3, 3).size(), 8u);
  EXPECT_EQ(BarBasis(s2, 2, 3).size(), 12u);
  EXPECT_EQ(BarBasis(s2, 0, 0).size(), 1u);
  EXPECT_EQ(BarBasis(s2, 0, 2).size(), 0u);
  const BarBasis b(s2, 2, 3);
  for (std::size_t i = 0; i < b.size(); ++i) EXPECT_EQ(b.encode(b.decode(i)), i);
  EXPECT_EQ(b.label(s2, 0), "(v1|v1.v1)");
}

TEST(Ext, SpecExamples) {
  const ExtTable s = ext_table(symmetric(2), 4);
  for (std::size_t i = 0; i <= 4; ++i) EXPECT_EQ(s.dims[i][i], (std::vector<std::size_t>{1, 2, 1, 0, 0})[i]);
  EXPECT_EQ(off_diagonal_mass(s), 0u);

  const QuadraticAlgebra free2(names(2), Subspace(4));
  const ExtTable f = ext_table(free2, 4);
  for (std::size_t j = 0; j <= 4; ++j)
    for (std::size_t i = 2; i <= j; ++i) EXPECT_EQ(f.dims[i][j], 0u) << i << "," << j;
  EXPECT_EQ(f.dims[1][1], 2u);

  EXPECT_EQ(ext_table(free2, 2).dims[2][2], 0u);
}

TEST(Ext, LowDegreeConsistencyOnRandomAlgebras) {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 20; ++trial) {
    const std::size_t g = 2 + rng() % 2;
    std::vector<SparseVector> gens;
    for (std::size_t r = 0, n = rng() % (g * g); r < n; ++r) {
      SparseVector v;
      for (std::size_t c = 0; c < g * g; ++c)
        if (int x = static_cast<int>(rng() % 5) - 2; x != 0 && rng() % 2) v.push_back({c, Scalar(x)});
      gens.push_back(v);
    }
    const QuadraticAlgebra a(names(g), Subspace::span(g * g, gens));
    const ExtTable t = ext_table(a, 3);
    EXPECT_EQ(t.dims[1][1], g);
    EXPECT_EQ(t.dims[2][2], a.relations().dim());
    EXPECT_EQ(t.dims[1][2] + t.dims[1][3], 0u);
    EXPECT_EQ(a.relations().dim() + quadratic_dual(a).relations().dim(), g * g);
  }
}

TEST(Koszul, Examples) {
  EXPECT_TRUE(koszul_verdict(symmetric(3), 4).koszul);
  EXPECT_TRUE(koszul_verdict(exterior(2), 5).koszul);
  const QuadraticAlgebra xy(names(3), Subspace::span(9, {SparseVector{{1, Scalar(1)}}}));
  EXPECT_TRUE(koszul_verdict(xy, 4).koszul);
}

TEST(Koszul, AgreesWithDual) {
  std::vector<QuadraticAlgebra> algs{symmetric(2), symmetric(3), exterior(3),
                                     QuadraticAlgebra(names(3), Subspace::span(9, {SparseVector{{1, Scalar(1)}}}))};
  const auto cdg = dualize(pbw_counterexample(), false);
  algs.push_back(dynamic_cast<const QuadraticAlgebra&>(cdg.base()));
  for (const auto& a : algs) {
    const KoszulVerdict v = koszul_verdict(a, 4), w = koszul_verdict(quadratic_dual(a), 4);
    EXPECT_EQ(v.koszul, w.koszul);
  }
}

TEST(Koszul, CounterexampleBaseIsNotKoszul) {
  const auto psi = dualize(pbw_counterexample());
  EXPECT_TRUE(koszul_verdict(psi.base(), 3).koszul);
  const KoszulVerdict v = koszul_verdict(psi.base(), 4);
  EXPECT_FALSE(v.koszul);
  ASSERT_TRUE(v.witness.has_value());
  EXPECT_NE(v.witness->first, v.witness->second);
}

TEST(Bar, HomogeneousHasZeroDifferentials) {
  const CdgAlgebra psi = dualize(enveloping(LieData::abelian({"x", "y"})));
  const BarComplex bar(psi, 4);
  EXPECT_EQ(bar.reach(), 0u);
  for (std::size_t m = 0; m + 2 <= 4; ++m)
    for (std::size_t n = 0; n <= m; ++n) {
      EXPECT_TRUE(bar.differential(n, m).is_zero());
      EXPECT_TRUE(bar.curvature_insertion(n, m).is_zero());
    }
  EXPECT_FALSE(bar.partial(2, 2).is_zero());
}

TEST(Bar, SignTranscription) {
  // Weyl dual: B = Lambda(x*, y*) with normal word y*.x*, d = 0, h = -x*y* = y*.x*.
  const CdgAlgebra psi = dualize(weyl());
  const GradedAlgebra& b = psi.base();
  const BarComplex bar(psi, 5);
  EXPECT_EQ(bar.reach(), 2u);
  ASSERT_EQ(b.dim(2), 1u);
  ASSERT_EQ(b.label(2, 0), "y*.x*");
  const std::size_t xy = 0;

  // delta() = (h) on the empty tensor.
  const SparseMap& d00 = bar.curvature_insertion(0, 0);
  ASSERT_EQ(d00.columns[0].size(), 1u);
  EXPECT_EQ(d00.columns[0][0].value, Scalar(1));

  // delta(b) = (-1)^0 (h|b) + (-1)^{1+1} (b|h) for b in B^1.
  const BarBasis& one = bar.basis(1, 1);
  const BarBasis& three = bar.basis(2, 3);
  const SparseMap& d11 = bar.curvature_insertion(1, 1);
  for (std::size_t i = 0; i < one.size(); ++i) {
    const std::size_t hb = three.encode({{2, xy}, {1, i}}), bh = three.encode({{1, i}, {2, xy}});
    SparseVector expect{{std::min(hb, bh), Scalar(1)}, {std::max(hb, bh), Scalar(1)}};
    EXPECT_EQ(d11.columns[i], expect);
  }

  // partial(b1|b2) = (-1)^{i1+1} b1 b2: (x*|y*) -> x*y* = -y*.x*.
  const BarBasis& two = bar.basis(2, 2);
  const SparseMap& p22 = bar.partial(2, 2);
  const std::size_t col = two.encode({{1, 0}, {1, 1}});
  ASSERT_EQ(p22.columns[col].size(), 1u);
  EXPECT_EQ(p22.columns[col][0].value, Scalar(-1));
  // Three factors: (x*|x*|y*) -> (-1)^{1+1}(x*x*|y*) + (-1)^{2+2}(x*|x*y*) = -(x*|y*.x*).
  const SparseMap& p33 = bar.partial(3, 3);
  const std::size_t c3 = bar.basis(3, 3).encode({{1, 0}, {1, 0}, {1, 1}});
  EXPECT_EQ(p33.columns[c3], (SparseVector{{bar.basis(2, 3).encode({{1, 0}, {2, 0}}), Scalar(-1)}}));
  EXPECT_EQ(partial_sign({1, 1}, 1), 1);
  EXPECT_EQ(partial_sign({1, 1, 1}, 2), 1);
  EXPECT_EQ(partial_sign({1, 2, 1}, 2), -1);
  EXPECT_EQ(partial_sign({2, 1}, 1), -1);
  EXPECT_EQ(insertion_sign({1, 1}, 1), 1);
  EXPECT_EQ(insertion_sign({1, 1}, 2), -1 * -1);
  EXPECT_EQ(insertion_sign({2, 1}, 2), -1);
}

TEST(Bar, CheDifferentialIsInducedCoderivation) {
  // CE dual of heis3: d z* = -x* y*, so d(z*) in the bar is the same element.
  const CdgAlgebra psi = dualize(enveloping(heisenberg3()));
  const BarComplex bar(psi, 4);
  EXPECT_EQ(bar.reach(), 1u);
  const Matrix& d1 = psi.d1();
  const SparseMap& bd = bar.differential(1, 1);
  for (std::size_t a = 0; a < d1.cols(); ++a) EXPECT_EQ(bd.columns[a], to_sparse(d1.column(a)));
  // Two factors: d(a|b) = (da|b) + (-1)^{1+1} (a|db).
  const BarBasis& src = bar.basis(2, 2);
  const BarBasis& tgt = bar.basis(2, 3);
  const SparseMap& d22 = bar.differential(2, 2);
  for (std::size_t idx = 0; idx < src.size(); ++idx) {
    const auto f = src.decode(idx);
    std::vector<Entry> acc;
    for (const auto& e : to_sparse(d1.column(f[0].second))) acc.push_back({tgt.encode({{2, e.index}, f[1]}), e.value});
    for (const auto& e : to_sparse(d1.column(f[1].second))) acc.push_back({tgt.encode({f[0], {2, e.index}}), e.value});
    SparseMap one(tgt.size(), 1);
    one.columns[0] = to_sparse([&] {
      Vector v(tgt.size());
      for (const auto& e : acc) v[e.index] += e.value;
      return v;
    }());
    EXPECT_EQ(d22.columns[idx], one.columns[0]);
  }
}

TEST(Bar, SquareZeroOnCorpusDuals) {
  for (const auto& p : koszul_corpus()) {
    const CdgAlgebra psi = dualize(p);
    const SquareZeroReport rep = check_square_zero(BarComplex(psi, 7));
    EXPECT_TRUE(rep.ok) << relation_strings(p).front();
    for (const auto& c : rep.checks) ADD_FAILURE() << c.identity << " at (" << c.n << "," << c.m << ")";
    EXPECT_GT(rep.evaluated, 0u);
  }
  EXPECT_THROW(BarComplex(matrix_connection_fixture(), 3), InvariantViolation);
}

TEST(Bar, PartialSignIsPinnedByCurvature) {
  // With d and h both nonzero, d^2 on the bar is nonzero and cancels only
  // against partial delta + delta partial; negating partial breaks the identity.
  // Cobar of k x k x k (a free base algebra) twisted by a degree-one element.
  const AugmentedAlgebra k3{{"e", "f"}, {{Vector{Scalar(1), Scalar(0)}, Vector(2)}, {Vector(2), Vector{Scalar(0), Scalar(1)}}}};
  const CdgAlgebra base = cobar_of(k3);
  const CdgAlgebra psi = twist(base, Vector{Scalar(1), Scalar(2)});
  ASSERT_TRUE(verify_cdg(psi, 4).ok);
  const BarComplex bar(psi, 5);
  bool seen = false;
  for (std::size_t m = 1; m + 2 <= 5; ++m)
    for (std::size_t n = 1; n <= m; ++n) {
      const SparseMap dd = bar.differential(n, m + 1) * bar.differential(n, m);
      if (dd.is_zero()) continue;
      seen = true;
      const SparseMap mixed = bar.partial(n + 1, m + 2) * bar.curvature_insertion(n, m) +
                              bar.curvature_insertion(n - 1, m) * bar.partial(n, m);
      EXPECT_TRUE((dd + mixed).is_zero());
      EXPECT_FALSE(mixed.is_zero());
    }
  EXPECT_TRUE(seen);
}

TEST(Bar, SquareZeroDetectsBrokenCurvature) {
  // Weyl dual with h scaled and d made nonzero fails d^2 = [h, .] and the bar notices.
  const CdgAlgebra good = dualize(heisenberg_extension());
  Vector h = good.curvature();
  h[0] += Scalar(1);
  h[1] += Scalar(2);
  const CdgAlgebra bad(good.base_ptr(), good.d_on_generators(), h);
  if (!verify_cdg(bad, 3).ok) {
    EXPECT_FALSE(check_square_zero(BarComplex(bad, 4)).ok);
  }
}

TEST(BarCohomology, SymmetricDualGivesPolynomialDims) {
  const CdgAlgebra psi = dualize(enveloping(LieData::abelian({"x", "y"})));
  const BarCohomology h = bar_cohomology(psi, 0, 4);
  EXPECT_EQ(h.filtered, (std::vector<std::size_t>{1, 3, 6, 10, 15}));
  for (bool e : h.edge) EXPECT_FALSE(e);
}

TEST(BarCohomology, FreeDataVanishesInPositiveIndex) {
  // B = Lambda-free data: dual of the free algebra is B with B^2 = 0.
  const QuadraticAlgebra free2(names(2), Subspace(4));
  const auto b = std::make_shared<QuadraticAlgebra>(quadratic_dual(free2));
  const CdgAlgebra psi(b, {Vector(0), Vector(0)}, Vector(0));
  const BarComplex bar(psi, 5);
  for (std::size_t k = 1; k <= 3; ++k) {
    const BarCohomology h = bar_cohomology(bar, k);
    EXPECT_EQ(h.filtered.back(), 0u) << k;
  }
  EXPECT_EQ(bar_cohomology(bar, 0).filtered, (std::vector<std::size_t>{1, 3, 7, 15, 31, 63}));
}

TEST(BarCohomology, WeylUsesCurvatureCorrections) {
  const CdgAlgebra psi = dualize(weyl());
  const BarCohomology h = bar_cohomology(psi, 0, 6);
  const FiltrationReport f = filtration_dims(weyl(), 4, 2);
  for (std::size_t m = 0; m <= 4; ++m) EXPECT_EQ(h.filtered[m], f.filtered[m]) << m;
  EXPECT_TRUE(h.edge[5]);
  EXPECT_TRUE(h.edge[6]);
  EXPECT_FALSE(h.edge[4]);
  // Without delta the dims are those of the graded algebra, which coincide here;
  // the boundaries differ: the Weyl relation has a scalar term.
  const std::vector<Subspace> bnd = h0_boundaries(BarComplex(psi, 4));
  EXPECT_EQ(bnd[2], saturate(weyl(), 2, 2).space);
}

TEST(H0Compare, SpecExamples) {
  const H0Comparison c = h0_compare(dualize(clifford({"v", "w"}, Matrix::identity(2))), 3, 2);
  EXPECT_TRUE(c.ok);
  EXPECT_EQ(c.bar_dims, (std::vector<std::size_t>{1, 3, 4, 4}));
  EXPECT_EQ(c.filtration_dims, c.bar_dims);

  const H0Comparison u = h0_compare(dualize(enveloping(heisenberg3())), 3, 2);
  EXPECT_TRUE(u.ok);
  EXPECT_EQ(u.bar_dims, (std::vector<std::size_t>{1, 4, 10, 20}));

  const QuadraticAlgebra free2(names(2), Subspace(4));
  const auto b = std::make_shared<QuadraticAlgebra>(quadratic_dual(free2));
  const H0Comparison fr = h0_compare(CdgAlgebra(b, {Vector(0), Vector(0)}, Vector(0)), 3, 1);
  EXPECT_TRUE(fr.ok);
  EXPECT_EQ(fr.bar_dims, (std::vector<std::size_t>{1, 3, 7, 15}));
}

TEST(H0Compare, WholeKoszulCorpus) {
  for (const auto& p : koszul_corpus()) {
    const H0Comparison c = h0_compare(dualize(p), 3, 2);
    EXPECT_TRUE(c.ok) << relation_strings(p).front();
    for (bool s : c.subspaces_equal) EXPECT_TRUE(s);
  }
}

TEST(Pbw, CorpusHoldsAndAgreesWithWeakQls) {
  for (const auto& p : koszul_corpus()) {
    const PbwVerdict v = pbw_check(dualize(p), 4, 2);
    EXPECT_TRUE(v.holds) << relation_strings(p).front();
    EXPECT_TRUE(v.base_koszul.koszul);
    EXPECT_EQ(weak_qls_check(p, 4, 2).pbw, v.holds);
  }
}

TEST(Pbw, CounterexampleFailsAtDegreeTwo) {
  const NQPresentation p = pbw_counterexample();
  const PbwVerdict v = pbw_check(dualize(p), 4, 2);
  EXPECT_FALSE(v.holds);
  EXPECT_EQ(v.first_failure, std::optional<std::size_t>(2));
  EXPECT_EQ(v.gr_dims[2], 5u);
  EXPECT_EQ(v.dual_dims[2], 7u);
  EXPECT_FALSE(v.base_koszul.koszul);
  EXPECT_FALSE(v.base_koszul.weak);
  EXPECT_EQ(v.base_koszul.witness, std::make_optional(std::make_pair<std::size_t, std::size_t>(3, 4)));
  EXPECT_EQ(weak_qls_check(p, 4, 2).pbw, v.holds);
}

TEST(Pbw, CounterexampleAtSlackOneFailsOnlyAtDegreeThree) {
  // Words of degree 4 are needed before yz - zy enters J cap T_2.
  const PbwVerdict v = pbw_check(dualize(pbw_counterexample()), 4, 1);
  EXPECT_FALSE(v.holds);
  EXPECT_EQ(v.first_failure, std::optional<std::size_t>(3));
  EXPECT_EQ(v.gr_dims[3], 13u);
  EXPECT_EQ(v.dual_dims[3], 15u);
}

TEST(Pbw, HomogeneousHoldsTrivially) {
  const PbwVerdict v = pbw_check(dualize(enveloping(LieData::abelian({"x", "y", "z"}))), 4, 1);
  EXPECT_TRUE(v.holds);
  EXPECT_EQ(v.gr_dims, (std::vector<std::size_t>{1, 3, 6, 10, 15}));
}

TEST(Cobar, SquareZeroExtension) {
  // A = k[x]/x^2: the cobar is free on x* with d = 0; H^b_0 recovers A.
  AugmentedAlgebra a{{"x"}, {{Vector{Scalar(0)}}}};
  const CdgAlgebra c = cobar_of(a);
  EXPECT_TRUE(c.is_dg());
  for (std::size_t n = 1; n <= 4; ++n) EXPECT_EQ(c.base().dim(n), 1u);
  EXPECT_TRUE(is_zero(c.d_on_generators()[0]));
  EXPECT_EQ(bar_cohomology(c, 0, 5).filtered, (std::vector<std::size_t>{1, 2, 2, 2, 2, 2}));
}

TEST(Cobar, ProductOfFieldsCrossCheck) {
  // A = k x k, A_+ = span(e), e^2 = e.
  AugmentedAlgebra a{{"e"}, {{Vector{Scalar(1)}}}};
  const CdgAlgebra c = cobar_of(a);
  for (std::size_t n = 1; n <= 4; ++n) EXPECT_EQ(c.base().dim(n), 1u);
  EXPECT_FALSE(is_zero(c.d_on_generators()[0]));
  const std::vector<std::size_t> dg = dg_cohomology_dims(c, 4);
  const BarCohomology h = bar_cohomology(c, 0, 5);
  EXPECT_EQ(h.filtered, (std::vector<std::size_t>{1, 2, 2, 2, 2, 2}));
  EXPECT_TRUE(check_square_zero(BarComplex(c, 6)).ok);
  EXPECT_EQ(dg.size(), 5u);
}
