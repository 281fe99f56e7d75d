#include <gtest/gtest.h>

#include <cmath>

#include "oracle.hpp"
#include "upq/metric.hpp"
#include "upq/sampler.hpp"

namespace {

using namespace upq;

ComplexMatrix mat2(Complex a, Complex b, Complex c, Complex d) {
  ComplexMatrix m(2, 2);
  m << a, b, c, d;
  return m;
}

// cosh(ln 2) = 5/4, sinh(ln 2) = 3/4.
ComplexMatrix boost_ln2() { return mat2(1.25, 0.75, 0.75, 1.25); }

TEST(SignatureMetric, Construction) {
  const auto m11 = make_metric(1, 1);
  EXPECT_EQ(m11.n(), 2);
  EXPECT_EQ(m11.matrix(), mat2(1, 0, 0, -1));

  const auto m12 = make_metric(1, 2);
  EXPECT_EQ(m12.diagonal(), (RealVector(3) << 1, -1, -1).finished());

  const auto m22 = make_metric(2, 2);
  const ComplexMatrix j = m22.matrix();
  EXPECT_EQ(j * j, ComplexMatrix::Identity(4, 4));

  // Degenerate signatures reduce to the ordinary unitary group.
  EXPECT_EQ(make_metric(0, 3).matrix(), -ComplexMatrix::Identity(3, 3));
  EXPECT_EQ(make_metric(2, 0).matrix(), ComplexMatrix::Identity(2, 2));
}

TEST(SignatureMetric, RejectsEmptyOrNegative) {
  EXPECT_THROW(make_metric(0, 0), InputError);
  EXPECT_THROW(make_metric(-1, 2), InputError);
}

TEST(IndefiniteForm, BasisVectorsAndHandExpansion) {
  const auto metric = make_metric(1, 1);
  ComplexVector e1(2), e2(2);
  e1 << 1, 0;
  e2 << 0, 1;
  EXPECT_EQ(indefinite_form(e1, e1, metric), Complex(1.0));
  EXPECT_EQ(indefinite_form(e2, e2, metric), Complex(-1.0));

  ComplexVector z(2), w(2);
  z << 1 / std::sqrt(2.0), 1 / std::sqrt(2.0);
  w << 1 / std::sqrt(2.0), -1 / std::sqrt(2.0);
  const Complex b = indefinite_form(z, w, metric);
  EXPECT_NEAR(b.real(), 1.0, 1e-15);
  EXPECT_NEAR(b.imag(), 0.0, 1e-15);
}

TEST(IndefiniteForm, ConjugateSymmetric) {
  const auto metric = make_metric(2, 3);
  Rng rng(5);
  for (int trial = 0; trial < 50; ++trial) {
    const ComplexVector z = complex_gaussian(5, 1, rng);
    const ComplexVector w = complex_gaussian(5, 1, rng);
    EXPECT_LE(std::abs(indefinite_form(z, w, metric) - std::conj(indefinite_form(w, z, metric))),
              1e-14);
  }
}

TEST(IndefiniteForm, DimensionMismatch) {
  EXPECT_THROW(indefinite_form(ComplexVector::Zero(2), ComplexVector::Zero(3), make_metric(1, 1)),
               InputError);
  EXPECT_THROW(quadratic_form(ComplexVector::Zero(2), make_metric(1, 2)), InputError);
}

TEST(QuadraticForm, Examples) {
  const auto metric = make_metric(1, 2);
  EXPECT_DOUBLE_EQ(quadratic_form((ComplexVector(3) << 3, 4, 0).finished(), metric), -7.0);
  EXPECT_DOUBLE_EQ(quadratic_form(ComplexVector::Zero(3), metric), 0.0);
  const ComplexVector z = (ComplexVector(3) << std::sqrt(2.0), 1, 0).finished() / std::sqrt(3.0);
  EXPECT_NEAR(quadratic_form(z, metric), 1.0 / 3.0, 1e-15);
}

TEST(Membership, Examples) {
  const auto metric = make_metric(1, 1);
  EXPECT_EQ(membership_residual(ComplexMatrix::Identity(2, 2), metric), 0.0);
  EXPECT_LE(membership_residual(boost_ln2(), metric), 1e-16);
  EXPECT_GT(membership_residual(2.0 * ComplexMatrix::Identity(2, 2), metric), 0.1);

  EXPECT_TRUE(is_pseudo_unitary(ComplexMatrix::Identity(2, 2), metric, 1e-10));
  EXPECT_TRUE(is_pseudo_unitary(boost_ln2(), metric, 1e-10));
  EXPECT_FALSE(is_pseudo_unitary(2.0 * ComplexMatrix::Identity(2, 2), metric, 1e-10));
}

TEST(Membership, RejectsWrongShape) {
  EXPECT_THROW(is_pseudo_unitary(ComplexMatrix::Identity(3, 3), make_metric(1, 1)), InputError);
  EXPECT_THROW(membership_residual(ComplexMatrix::Zero(2, 3), make_metric(1, 1)), InputError);
}

TEST(Membership, AgreesWithBruteForce) {
  for (std::uint64_t seed = 0; seed < 40; ++seed) {
    const auto metric = make_metric(1 + seed % 3, 1 + seed % 4);
    ComplexMatrix m = sample_upq(metric, seed);
    if (seed % 2) m(0, 0) += 1e-4;
    const auto d = oracle::from(m);
    const double expected =
        oracle::group_defect(d, metric.p()) / (1.0 + std::pow(oracle::frobenius(d), 2));
    EXPECT_NEAR(membership_residual(m, metric), expected, 1e-15 + 1e-12 * expected);
  }
}

TEST(Hermitian, Examples) {
  EXPECT_TRUE(is_hermitian(mat2(1, 0, 0, -1)));
  EXPECT_FALSE(is_hermitian(mat2(0, Complex(0, 1), Complex(0, 1), 0)));
  EXPECT_TRUE(is_hermitian(mat2(0, Complex(0, 1), Complex(0, -1), 0)));
  EXPECT_FALSE(is_hermitian(ComplexMatrix::Zero(2, 3)));
}

TEST(BlockIdentities, Examples) {
  const auto metric = make_metric(1, 1);
  EXPECT_LE(block_identities_residual(boost_ln2(), metric), 1e-16);
  EXPECT_EQ(block_identities_residual(ComplexMatrix::Identity(2, 2), metric), 0.0);
  EXPECT_GT(block_identities_residual(ComplexMatrix::Ones(2, 2), metric), 0.1);
}

TEST(BlockIdentities, BoundedByMembershipResidual) {
  Rng rng(11);
  for (int trial = 0; trial < 50; ++trial) {
    const auto metric = make_metric(1 + trial % 3, 2 + trial % 2);
    const ComplexMatrix m = complex_gaussian(metric.n(), metric.n(), rng);
    EXPECT_LE(block_identities_residual(m, metric), membership_residual(m, metric) * (1 + 1e-12));
    const ComplexMatrix g = sample_upq(metric, 100 + trial);
    EXPECT_LE(block_identities_residual(g, metric), 1e-14);
  }
}

TEST(FastInverse, Examples) {
  const auto metric = make_metric(1, 1);
  EXPECT_EQ(fast_inverse(mat2(1, 0, 0, -1), metric), mat2(1, 0, 0, -1));
  EXPECT_EQ(fast_inverse(boost_ln2(), metric), mat2(1.25, -0.75, -0.75, 1.25));

  Rng rng(3);
  const ComplexMatrix u = haar_unitary(2, rng);
  const ComplexMatrix v = haar_unitary(3, rng);
  const auto m23 = make_metric(2, 3);
  const ComplexMatrix inv = fast_inverse(block_diagonal(u, v), m23);
  EXPECT_LE((inv - block_diagonal(u.adjoint(), v.adjoint())).norm(), 1e-15);
}

TEST(FastInverse, RejectsNonMembers) {
  EXPECT_THROW(fast_inverse(2.0 * ComplexMatrix::Identity(2, 2), make_metric(1, 1)), DomainError);
}

TEST(FastInverse, TwoSidedInverseOnSamples) {
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    const auto metric = make_metric(1 + seed % 4, 1 + (seed / 4) % 3);
    const ComplexMatrix m = sample_upq(metric, seed);
    const ComplexMatrix inv = fast_inverse(m, metric);
    const auto id = ComplexMatrix::Identity(metric.n(), metric.n());
    EXPECT_LE((inv * m - id).norm(), 1e-11);
    EXPECT_LE((m * inv - id).norm(), 1e-11);
    // Equivalently J M^* J.
    const ComplexMatrix j = metric.matrix();
    EXPECT_LE((inv - j * m.adjoint() * j).norm(), 1e-15);
  }
}

TEST(CompactIntersection, Examples) {
  const auto metric = make_metric(2, 2);
  Rng rng(9);
  const ComplexMatrix q = block_diagonal(haar_unitary(2, rng), haar_unitary(2, rng));
  const auto check = check_compact_intersection(q, metric);
  EXPECT_TRUE(check);
  EXPECT_EQ(check.m12_norm, 0.0);
  EXPECT_EQ(check.m21_norm, 0.0);

  EXPECT_FALSE(check_compact_intersection(boost_ln2(), make_metric(1, 1)));
  EXPECT_TRUE(check_compact_intersection(ComplexMatrix::Identity(4, 4), metric));
}

TEST(CompactIntersection, MembersHaveZeroOffDiagonal) {
  // Rotating a unitary of U(n) that happens to lie in U(p,q) cannot leak
  // into the off-diagonal blocks.
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    const auto metric = make_metric(2, 3);
    const ComplexMatrix m = sample_upq(metric, seed, {.scale = 0.0});
    const auto check = check_compact_intersection(m, metric);
    ASSERT_TRUE(check);
    EXPECT_LE(check.m12_norm, 1e-10);
    EXPECT_LE(check.m21_norm, 1e-10);
  }
}

TEST(GroupProperties, DeterminantModulusAndFormInvariance) {
  Rng rng(21);
  for (std::uint64_t seed = 0; seed < 40; ++seed) {
    const auto metric = make_metric(1 + seed % 3, 1 + seed % 2);
    const ComplexMatrix m = sample_upq(metric, seed);
    EXPECT_NEAR(std::abs(m.determinant()), 1.0, 1e-10);

    const ComplexVector z = complex_gaussian(metric.n(), 1, rng);
    const ComplexVector w = complex_gaussian(metric.n(), 1, rng);
    const Complex before = indefinite_form(z, w, metric);
    const Complex after = indefinite_form(m * z, m * w, metric);
    EXPECT_LE(std::abs(after - before), 1e-10 * z.norm() * w.norm() * (1 + m.squaredNorm()));
  }
}

TEST(GroupProperties, ResidualInvariantUnderEquivalence) {
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    const auto metric = make_metric(2, 2);
    Rng rng(seed);
    ComplexMatrix m = sample_upq(metric, seed);
    m(1, 2) += 1e-3;  // push off the group so the residual is not just rounding
    const ComplexMatrix q = haar_block_unitary(metric, rng);
    const double r = membership_residual(m, metric);
    EXPECT_NEAR(membership_residual(-m, metric), r, 1e-12 * r);
    EXPECT_NEAR(membership_residual(q.adjoint() * m * q, metric), r, 1e-10 * r);
  }
}

}  // namespace
