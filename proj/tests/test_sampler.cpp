#include <gtest/gtest.h>

#include <cmath>

#include "upq/sampler.hpp"

namespace {

using namespace upq;

TEST(Rng, DeterministicAndInRange) {
  Rng a(42), b(42), c(43);
  bool differs = false;
  for (int i = 0; i < 1000; ++i) {
    const double x = a.uniform();
    EXPECT_EQ(x, b.uniform());
    EXPECT_GE(x, 0.0);
    EXPECT_LT(x, 1.0);
    differs |= x != c.uniform();
  }
  EXPECT_TRUE(differs);
}

TEST(Rng, NormalMoments) {
  Rng rng(1);
  const int n = 200000;
  double sum = 0, sq = 0;
  for (int i = 0; i < n; ++i) {
    const double x = rng.normal();
    sum += x;
    sq += x * x;
  }
  EXPECT_NEAR(sum / n, 0.0, 0.01);
  EXPECT_NEAR(sq / n, 1.0, 0.02);

  double c2 = 0;
  for (int i = 0; i < n; ++i) c2 += std::norm(rng.complex_normal());
  EXPECT_NEAR(c2 / n, 1.0, 0.02);
}

TEST(Rng, Categorical) {
  Rng rng(3);
  const std::array<double, 3> w{0.0, 0.25, 0.75};
  std::array<int, 3> counts{};
  for (int i = 0; i < 40000; ++i) ++counts[rng.categorical(w)];
  EXPECT_EQ(counts[0], 0);
  EXPECT_NEAR(counts[1] / 40000.0, 0.25, 0.02);
}

TEST(HaarUnitary, Examples) {
  const ComplexMatrix one = haar_unitary(1, 5);
  EXPECT_NEAR(std::abs(one(0, 0)), 1.0, 1e-15);

  const ComplexMatrix u = haar_unitary(4, 7);
  EXPECT_LE((u.adjoint() * u - ComplexMatrix::Identity(4, 4)).norm(), 1e-12);

  EXPECT_EQ(haar_unitary(6, 11), haar_unitary(6, 11));
  EXPECT_NE(haar_unitary(6, 11), haar_unitary(6, 12));
  EXPECT_THROW(haar_unitary(0, 1), InputError);
}

TEST(HaarUnitary, FirstEntryMoment) {
  // For Haar U(n), E|u_11|^2 = 1/n and the phase of u_11 is uniform.
  const int n = 3, trials = 20000;
  Rng rng(77);
  double m2 = 0;
  Complex mean = 0;
  for (int i = 0; i < trials; ++i) {
    const Complex x = haar_unitary(n, rng)(0, 0);
    m2 += std::norm(x);
    mean += x;
  }
  EXPECT_NEAR(m2 / trials, 1.0 / n, 0.01);
  EXPECT_LE(std::abs(mean / static_cast<double>(trials)), 0.02);
}

TEST(SampleUsPp, ForcedIdentityAndMetric) {
  SampleSpec spec;
  spec.metric = make_metric(3, 3);
  spec.weights = {1, 0, 0, 0};
  spec.t_distribution = std::vector<double>{0, 0, 0};
  EXPECT_LE((sample_us_pp(spec).matrix - ComplexMatrix::Identity(6, 6)).norm(), 1e-14);

  spec.weights = {0, 0, 1, 0};
  spec.random_frame = false;
  EXPECT_EQ(sample_us_pp(spec).matrix, spec.metric.matrix());
}

TEST(SampleUsPp, Errors) {
  SampleSpec spec;
  spec.metric = make_metric(1, 2);
  EXPECT_THROW(sample_us_pp(spec), InputError);
  spec.metric = make_metric(2, 2);
  spec.weights = {0.5, 0.5, 0.5, -0.5};
  EXPECT_THROW(sample_us_pp(spec), InputError);
  spec.weights = {0.5, 0.2, 0.2, 0.2};
  EXPECT_THROW(sample_us_pp(spec), InputError);
  spec.weights = {1, 0, 0, 0};
  spec.t_distribution = std::vector<double>{1.0};
  EXPECT_THROW(sample_us_pp(spec), InputError);
}

TEST(SampleUsPp, MembersAndGroundTruth) {
  for (int p : {1, 2, 4, 8}) {
    for (std::uint64_t seed = 0; seed < 25; ++seed) {
      SampleSpec spec;
      spec.metric = make_metric(p, p);
      spec.seed = seed;
      const UsppSample s = sample_us_pp(spec);
      EXPECT_LE(membership_residual(s.matrix, spec.metric), 1e-10);
      EXPECT_TRUE(is_hermitian(s.matrix));
      ASSERT_EQ(s.truth.blocks.size(), static_cast<std::size_t>(p));
      EXPECT_LE((assemble_blocks(s.truth.blocks, spec.metric, s.truth.frame) - s.matrix).norm(),
                1e-12 * s.matrix.norm());
      EXPECT_TRUE(same_invariant(canonical_invariant(s.matrix, spec.metric),
                                 canonical_invariant(s.truth.blocks)));
    }
  }
}

TEST(SampleUsPp, Deterministic) {
  SampleSpec spec;
  spec.metric = make_metric(3, 3);
  spec.seed = 123;
  EXPECT_EQ(sample_us_pp(spec).matrix, sample_us_pp(spec).matrix);
}

TEST(SampleUsLie, Examples) {
  const auto metric = make_metric(2, 3);
  EXPECT_EQ(sample_us_lie(metric, 1, 0.0).block(), ComplexMatrix::Zero(2, 3));
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const LieElement t = sample_us_lie(metric, seed, 1.5);
    EXPECT_TRUE(validate_lie_algebra(t.assembled(), metric));
    EXPECT_LE(membership_residual(exp_us(t), metric), 1e-10);
  }
  EXPECT_EQ(sample_us_lie(metric, 9).block(), sample_us_lie(metric, 9).block());
}

TEST(SampleUpq, Examples) {
  const auto metric = make_metric(2, 3);
  const ComplexMatrix block_unitary = sample_upq(metric, 4, {.scale = 0.0});
  EXPECT_TRUE(check_compact_intersection(block_unitary, metric));

  const ComplexMatrix positive = sample_upq(metric, 4, {.identity_frame = true});
  EXPECT_TRUE(is_hermitian(positive));
  EXPECT_TRUE(is_in_exp_image(positive, metric));
}

TEST(SampleUpq, GenericDrawsAreNeitherHermitianNorUnitary) {
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    const auto metric = make_metric(1 + seed % 3, 1 + seed % 2);
    const ComplexMatrix m = sample_upq(metric, seed);
    EXPECT_LE(membership_residual(m, metric), 1e-10);
    EXPECT_FALSE(is_hermitian(m)) << seed;
    EXPECT_FALSE(check_compact_intersection(m, metric)) << seed;
  }
  EXPECT_EQ(sample_upq(make_metric(2, 2), 5), sample_upq(make_metric(2, 2), 5));
}

TEST(SampleGenerators, ValidAndBounded) {
  const auto metric = make_metric(3, 2);
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    for (int k = 0; k <= 2; ++k) {
      const GeneratorSet g = sample_generators(metric, seed, k);
      EXPECT_EQ(g.rank(), static_cast<std::size_t>(k));
      EXPECT_TRUE(validate_generators(g).empty());
    }
  }
  EXPECT_THROW(sample_generators(metric, 0, 3), InputError);
}

TEST(Samples, MembershipAtDeskScale) {
  // p + q <= 16.
  for (const auto [p, q] : {std::pair{8, 8}, std::pair{3, 13}, std::pair{10, 6}}) {
    const auto metric = make_metric(p, q);
    for (std::uint64_t seed = 0; seed < 5; ++seed) {
      EXPECT_LE(membership_residual(sample_upq(metric, seed, {.scale = 0.5}), metric), 1e-10);
      EXPECT_LE(membership_residual(exp_us(sample_us_lie(metric, seed, 0.5)), metric), 1e-10);
    }
  }
}

}  // namespace
