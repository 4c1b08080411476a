#include <gtest/gtest.h>

#include "gramian/lab.hpp"
#include "gramian/partial_isometry.hpp"

namespace {

using namespace gkit;

GramianOperator scalar_op(std::initializer_list<Complex> row_major) {
  ComplexMatrix m(2, 2);
  auto it = row_major.begin();
  for (int i = 0; i < 2; ++i)
    for (int k = 0; k < 2; ++k) m(i, k) = *it++;
  return GramianOperator::from_data({2, 1}, m);
}

ComplexMatrix diag2(double a, double b) {
  ComplexMatrix m = ComplexMatrix::Zero(2, 2);
  m(0, 0) = a;
  m(1, 1) = b;
  return m;
}

void expect_all_true(const ClassificationReport& r) {
  EXPECT_TRUE(r.is_partial_isometry);
  EXPECT_TRUE(r.cond_ii);
  EXPECT_TRUE(r.cond_iii);
  EXPECT_TRUE(r.cond_cstar);
  EXPECT_TRUE(r.cond_iv);
  EXPECT_TRUE(r.consistent);
}

TEST(Classify, Identity) {
  const auto r = classify(GramianOperator::identity({3, 2}));
  expect_all_true(r);
  EXPECT_EQ(r.initial_projection.data, ComplexMatrix::Identity(6, 6));
  EXPECT_EQ(r.final_projection.data, ComplexMatrix::Identity(6, 6));
  EXPECT_EQ(r.rank, 6);
}

TEST(Classify, ShiftOnTwoDimensions) {
  const auto r = classify(scalar_op({0, 0, 1, 0}));
  expect_all_true(r);
  EXPECT_EQ(r.initial_projection.data, diag2(1, 0));
  EXPECT_EQ(r.final_projection.data, diag2(0, 1));
  EXPECT_LE(spectral_norm(r.kernel_projection.data - diag2(0, 1)), 1e-15);
  EXPECT_LE(spectral_norm(r.range_projection.data - diag2(0, 1)), 1e-15);
}

TEST(Classify, ScaledShiftIsRejected) {
  const auto r = classify(scalar_op({0, 2, 0, 0}));
  EXPECT_FALSE(r.is_partial_isometry);
  EXPECT_FALSE(r.cond_ii);
  EXPECT_FALSE(r.cond_iii);
  EXPECT_FALSE(r.cond_cstar);
  EXPECT_FALSE(r.cond_iv);
  EXPECT_TRUE(r.consistent);
  EXPECT_EQ(r.initial_projection.data, diag2(0, 4));
  EXPECT_FALSE(r.marginal);
}

TEST(Classify, RectangularOperators) {
  // A gramian isometry H → K with K larger than H.
  Rng rng(1);
  const SpaceShape h{2, 2};
  const SpaceShape k{3, 2};
  const ComplexMatrix u = rng.haar_unitary(6);
  const auto iso = GramianOperator::from_data(h, k, u.leftCols(4));
  const auto r = classify(iso);
  expect_all_true(r);
  EXPECT_LE(spectral_norm(r.initial_projection.data - ComplexMatrix::Identity(4, 4)), 1e-12);
  EXPECT_EQ(r.kernel_projection.shape_in, h);
  EXPECT_EQ(r.range_projection.shape_in, k);
}

TEST(Classify, MarginalFlag) {
  Tolerances tol;
  auto t = GramianOperator::identity({2, 1});
  t.data(0, 0) = 1 + 2 * tol.eq_rel;
  const auto r = classify(t, tol);
  EXPECT_TRUE(r.marginal);
}

TEST(Classify, TinyOperatorIsFlaggedNotFlipped) {
  // εG with ε = 1e-5: ‖(T*T)² − T*T‖ ~ ε² passes eq_rel while ‖TT*T − T‖ ~ ε
  // does not. The report must say so.
  Rng rng(7);
  const auto t = GramianOperator::from_data({2, 2}, 1e-5 * rng.gaussian(4, 4));
  const auto r = classify(t);
  EXPECT_TRUE(r.cond_ii);
  EXPECT_FALSE(r.cond_cstar);
  EXPECT_FALSE(r.consistent);
  EXPECT_TRUE(r.marginal);
  EXPECT_FALSE(r.is_partial_isometry);
}

TEST(Classify, IsometriesAndCoisometries) {
  Rng rng(2);
  for (int i = 0; i < 30; ++i) {
    const SpaceShape small{static_cast<int>(rng.uniform_int(1, 3)), 2};
    const SpaceShape large{small.n + static_cast<int>(rng.uniform_int(0, 2)), 2};
    const ComplexMatrix u = rng.haar_unitary(large.dim());
    const auto iso = GramianOperator::from_data(small, large, u.leftCols(small.dim()));
    expect_all_true(classify(iso));
    expect_all_true(classify(adjoint(iso)));
  }
}

TEST(Classify, EquivalentConditionsAgree) {
  Rng rng(3);
  for (int i = 0; i < 200; ++i) {
    const SpaceShape s{static_cast<int>(rng.uniform_int(1, 4)), static_cast<int>(rng.uniform_int(1, 3))};
    const int rank = static_cast<int>(rng.uniform_int(0, s.dim()));
    auto t = sample_partial_isometry(s, rank, rng.next_u64());
    if (i % 2 == 1) {
      const double eps = std::pow(10.0, -1.0 - 2.0 * rng.uniform());
      t.data += eps * rng.gaussian(s.dim(), s.dim());
    }
    const auto r = classify(t);
    EXPECT_TRUE(r.consistent) << "trial " << i;
    EXPECT_EQ(r.is_partial_isometry, i % 2 == 0) << "trial " << i;
  }
}

TEST(Classify, GramianPreservedOnInitialSpace) {
  Rng rng(4);
  for (int i = 0; i < 50; ++i) {
    const SpaceShape s{static_cast<int>(rng.uniform_int(1, 4)), static_cast<int>(rng.uniform_int(1, 3))};
    const auto t = sample_partial_isometry(s, static_cast<int>(rng.uniform_int(0, s.dim())), rng.next_u64());
    const auto r = classify(t);
    ASSERT_TRUE(r.is_partial_isometry);
    const auto h = GramianVector::random(s, rng);
    const auto ph = apply(r.initial_projection, h);
    const auto tph = apply(t, ph);
    EXPECT_LE(spectral_norm(gramian(tph, tph) - gramian(ph, ph)), 1e-10 * (1 + spectral_norm(gramian(h, h))));

    const ComplexMatrix id = ComplexMatrix::Identity(s.dim(), s.dim());
    EXPECT_LE(spectral_norm(r.initial_projection.data + r.kernel_projection.data - id), 1e-8);
    EXPECT_LE(r.final_agreement, 1e-8);
    EXPECT_LE(r.initial_agreement, 1e-8);
  }
}

TEST(Projections, Examples) {
  Rng rng(5);
  const auto u = GramianOperator::from_data({2, 2}, rng.haar_unitary(4));
  EXPECT_LE(spectral_norm(initial_projection(u).data - ComplexMatrix::Identity(4, 4)), 1e-12);
  EXPECT_LE(spectral_norm(final_projection(u).data - ComplexMatrix::Identity(4, 4)), 1e-12);

  const auto shift = scalar_op({0, 0, 1, 0});
  EXPECT_EQ(initial_projection(shift).data, diag2(1, 0));
  EXPECT_EQ(final_projection(shift).data, diag2(0, 1));

  const auto zero = GramianOperator::zero({2, 1}, {2, 1});
  EXPECT_EQ(initial_projection(zero).data, ComplexMatrix::Zero(2, 2));
  EXPECT_EQ(final_projection(zero).data, ComplexMatrix::Zero(2, 2));
}

TEST(Projections, RejectNonPartialIsometries) {
  EXPECT_THROW(initial_projection(scalar_op({0, 2, 0, 0})), NotPartialIsometry);
  EXPECT_THROW(final_projection(scalar_op({1, 1, 0, 0})), NotPartialIsometry);
}

}  // namespace
