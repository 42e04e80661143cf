#include <gtest/gtest.h>

#include <random>

#include "nqd/corpus.hpp"
#include "nqd/errors.hpp"
#include "nqd/duality.hpp"
#include "nqd/presentation.hpp"
#include "oracles.hpp"

using namespace nqd;

namespace {

Matrix identity_form(std::size_t n) { return Matrix::identity(n); }

NQPresentation heis_u() { return enveloping(heisenberg3()); }

std::vector<std::size_t> take(const std::vector<std::size_t>& v, std::size_t n) {
  return std::vector<std::size_t>(v.begin(), v.begin() + static_cast<std::ptrdiff_t>(n));
}

}  // namespace

TEST(Nonhom, J2Examples) {
  // Homogeneous data: J_2 sits in the V (x) V block.
  const NQPresentation s = enveloping(LieData::abelian({"x", "y"}));
  const FilteredTensorBasis fb(2, 2);
  const Subspace j2 = j2_subspace(s);
  for (const auto& row : j2.rows())
    for (const auto& e : row) EXPECT_GE(e.index, fb.offset(2));

  const NQPresentation c = clifford({"v", "w"}, identity_form(2));
  EXPECT_EQ(relation_strings(c), (std::vector<std::string>{"v.v - 1/2", "v.w + w.v", "w.w - 1/2"}));

  const NQPresentation ce = pbw_counterexample();
  EXPECT_EQ(j2_subspace(ce).dim(), 2u);
  EXPECT_EQ(relation_strings(ce), (std::vector<std::string>{"x.x + y.z - z", "x.y - x - y"}));
}

TEST(Nonhom, GraphInvariantRejectsLowerRelations) {
  const FilteredTensorBasis fb(2, 2);
  // x = 1 is not a graph over I.
  EXPECT_THROW(NQPresentation::from_relations({"x", "y"}, {{{0, Scalar(-1)}, {fb.offset(1), Scalar(1)}}}),
               InvariantViolation);
  // x.y - x and x.y together force x into J_2.
  EXPECT_THROW(NQPresentation::from_relations(
                   {"x", "y"}, {{{fb.offset(1), Scalar(-1)}, {fb.offset(2) + 1, Scalar(1)}},
                                {{fb.offset(2) + 1, Scalar(1)}}}),
               InvariantViolation);
}

TEST(Nonhom, SaturationExamples) {
  const SaturationResult r = saturate(heis_u(), 2, 2);
  EXPECT_EQ(r.space.dim(), 3u);
  EXPECT_TRUE(r.stabilized);
  EXPECT_EQ(r.space.dim(), oracle::saturation_dim(heis_u(), 2, 2));

  const SaturationResult c = saturate(pbw_counterexample(), 2, 2);
  EXPECT_GT(c.dims[2], c.dims[0]);
  EXPECT_EQ(c.dims[0], 2u);
  EXPECT_EQ(c.space.dim(), oracle::saturation_dim(pbw_counterexample(), 2, 2));
  EXPECT_EQ(c.dims[0], oracle::saturation_dim(pbw_counterexample(), 2, 0));
}

TEST(Nonhom, HomogeneousSaturationMatchesIdealComponents) {
  const NQPresentation s = enveloping(LieData::abelian({"x", "y", "z"}));
  const SaturationTower t = saturate_all(s, 4, 0);
  for (std::size_t n = 0; n <= 4; ++n) {
    EXPECT_TRUE(t.stabilized(n));
    EXPECT_EQ(t.dims[n][0], ipow(3, n + 1) / 2 - oracle::binomial(n + 3, 3));
  }
}

TEST(Nonhom, SaturationAgreesWithBruteForce) {
  const std::vector<NQPresentation> ps{heis_u(), pbw_counterexample(), clifford({"v", "w"}, identity_form(2)),
                                       weyl(), enveloping(sl2())};
  for (const auto& p : ps) {
    const SaturationTower t = saturate_all(p, 3, 2);
    for (std::size_t n = 0; n <= 3; ++n)
      for (std::size_t s = 0; s <= 2; ++s) {
        if (n + s > 4) continue;
        EXPECT_EQ(t.dims[n][s], oracle::saturation_dim(p, n, s)) << "n=" << n << " s=" << s;
      }
  }
}

TEST(Nonhom, FiltrationExamples) {
  const FiltrationReport h = filtration_dims(heis_u(), 4, 2);
  EXPECT_EQ(h.filtered, (std::vector<std::size_t>{1, 4, 10, 20, 35}));
  for (std::size_t n = 0; n <= 4; ++n) EXPECT_EQ(h.filtered[n], oracle::binomial(n + 3, 3));
  EXPECT_EQ(h.graded, (std::vector<std::size_t>{1, 3, 6, 10, 15}));

  const FiltrationReport c = filtration_dims(clifford({"v", "w"}, identity_form(2)), 3, 2);
  EXPECT_EQ(c.filtered, (std::vector<std::size_t>{1, 3, 4, 4}));

  const FiltrationReport ce = filtration_dims(pbw_counterexample(), 2, 2);
  EXPECT_LT(ce.graded[2], 7u);
  for (std::size_t n = 1; n < ce.filtered.size(); ++n) EXPECT_GE(ce.filtered[n], ce.filtered[n - 1]);
}

TEST(Nonhom, WeakQlsVerdicts) {
  const WeakQlsVerdict hom = weak_qls_check(enveloping(LieData::abelian({"x", "y"})), 4, 0);
  EXPECT_TRUE(hom.pbw);
  const WeakQlsVerdict h = weak_qls_check(heis_u(), 4, 2);
  EXPECT_TRUE(h.pbw);
  EXPECT_EQ(h.quadratic_dims, take(h.filtration.graded, 5));
  const WeakQlsVerdict c = weak_qls_check(pbw_counterexample(), 3, 2);
  EXPECT_FALSE(c.pbw);
  ASSERT_TRUE(c.first_mismatch.has_value());
  EXPECT_EQ(*c.first_mismatch, 2u);
}

TEST(Nonhom, CliffordTotalDimension) {
  const std::vector<std::string> all{"a", "b", "c"};
  for (std::size_t g = 1; g <= 3; ++g) {
    Matrix q(g, g);
    for (std::size_t i = 0; i < g; ++i) q.at(i, i) = Scalar(static_cast<long long>(i) + 1);
    if (g > 1) q.at(0, 1) = q.at(1, 0) = 1;
    const std::vector<std::string> names(all.begin(), all.begin() + static_cast<std::ptrdiff_t>(g));
    EXPECT_EQ(filtration_dims(clifford(names, q), g + 1, 2).filtered.back(), std::size_t{1} << g);
  }
}

TEST(Nonhom, ComplementChange) {
  const NQPresentation h = heis_u();
  EXPECT_EQ(change_complement(h, Vector(3)), h);

  // The lambda family arises from a Clifford algebra by a complement change.
  const Vector lambda{Scalar(1), Scalar(2)};
  const NQPresentation lam = clifford_linear({"v", "w"}, lambda);
  const FilteredTensorBasis fb(2, 2);
  std::vector<SparseVector> direct;
  for (std::size_t i = 0; i < 2; ++i)
    for (std::size_t j = i; j < 2; ++j) {
      Vector r(fb.size());
      r[fb.offset(2) + i * 2 + j] += 1;
      r[fb.offset(2) + j * 2 + i] += 1;
      r[fb.offset(1) + j] -= lambda[i];
      r[fb.offset(1) + i] -= lambda[j];
      direct.push_back(to_sparse(r));
    }
  EXPECT_EQ(j2_subspace(lam), Subspace::span(fb.size(), direct));
  EXPECT_EQ(filtration_dims(lam, 3, 2).filtered, (std::vector<std::size_t>{1, 3, 4, 4}));

  std::mt19937_64 rng(5);
  for (int t = 0; t < 5; ++t) {
    Vector alpha(3);
    for (auto& x : alpha) x = Scalar(static_cast<long long>(rng() % 7) - 3);
    const NQPresentation moved = change_complement(h, alpha);
    EXPECT_EQ(filtration_dims(moved, 3, 1).filtered, filtration_dims(h, 3, 1).filtered);
    // v -> v + alpha(v) carries the new ideal onto the old one in each degree.
    for (std::size_t n = 0; n <= 3; ++n) {
      const FilteredTensorBasis b(3, n);
      const Subspace old_j = saturate(h, n, 1).space;
      std::vector<SparseVector> mapped;
      const SaturationResult sat = saturate(moved, n, 1);
      for (const auto& row : sat.space.rows()) mapped.push_back(substitute_shift(row, alpha, b));
      EXPECT_EQ(Subspace::span(b.size(), mapped), old_j);
    }
    // alpha is recovered from V' = {v + alpha(v)} inside k + V, and only that alpha fits.
    std::vector<SparseVector> vprime;
    for (std::size_t a = 0; a < 3; ++a) vprime.push_back(to_sparse(Vector{alpha[a] * Scalar(2), a == 0 ? Scalar(2) : Scalar(0),
                                                                            a == 1 ? Scalar(2) : Scalar(0),
                                                                            a == 2 ? Scalar(2) : Scalar(0)}));
    vprime.push_back(sparse_axpy(vprime[0], Scalar(1), vprime[1]));
    const auto back = complement_shift(3, vprime);
    ASSERT_TRUE(back.has_value());
    EXPECT_EQ(*back, alpha);
    EXPECT_EQ(change_complement(moved, scaled(alpha, Scalar(-1))), h);
  }
}

TEST(Nonhom, ComplementContainingUnitIsRejected) {
  EXPECT_FALSE(complement_shift(2, {{{0, Scalar(1)}}, {{1, Scalar(1)}}}).has_value());
  EXPECT_FALSE(complement_shift(2, {{{1, Scalar(1)}}}).has_value());
  EXPECT_EQ(*complement_shift(2, {{{0, Scalar(3)}, {2, Scalar(1)}}, {{1, Scalar(1)}}}), (Vector{Scalar(0), Scalar(3)}));
}

TEST(Nonhom, AugmentationShiftKillsScalars) {
  Vector eps{Scalar(1), Scalar(2), Scalar(0)};
  // U(heis3) moved so that the augmentation becomes eps.
  const NQPresentation moved = change_complement(heis_u(), eps);
  ASSERT_TRUE(moved.augmentation().has_value());
  EXPECT_EQ(*moved.augmentation(), eps);
  validate_augmentation(moved);
  const NQPresentation back = augmentation_shift(moved);
  EXPECT_TRUE(is_zero(back.h()));
  EXPECT_EQ(back, heis_u());

  const NQPresentation bad(moved.gen_names(), moved.quadratic_part(), moved.phi(), moved.h(), moved.field(),
                           Vector{Scalar(0), Scalar(0), Scalar(1)});
  EXPECT_THROW(validate_augmentation(bad), InvariantViolation);
}
