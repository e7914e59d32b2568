#include <gtest/gtest.h>

#include <random>

#include "ahp/priority.hpp"
#include "support.hpp"

using ahp::Index;
using ahp::PairwiseMatrixd;
using ahp::PriorityMethod;
using testing_support::dense_principal;
using testing_support::intransitive3;

TEST(Eigenvector, IntransitiveFixtureMatchesClosedForm) {
  const auto r = ahp::derive_eigenvector(intransitive3());
  EXPECT_NEAR(r.lambda_max, testing_support::kIntransitiveLambda, 1e-10);
  for (Index i = 0; i < 3; ++i)
    EXPECT_NEAR(r.priorities.weights(i), testing_support::kIntransitiveWeights[i], 1e-10);
  EXPECT_NEAR(r.priorities.weights.sum(), 1.0, 1e-15);
  EXPECT_EQ(r.priorities.labels, (std::vector<std::string>{"A", "B", "C"}));
  EXPECT_LT(r.residual, 1e-12);

  const double t = std::cbrt(16.0);
  EXPECT_NEAR(r.lambda_max, 1.0 + t + 1.0 / t, 1e-10);
}

TEST(Eigenvector, MatchesDenseEigensolver) {
  std::mt19937_64 rng(11);
  std::uniform_int_distribution<int> level(0, 16);
  const auto scale = ahp::JudgmentScale::saaty();
  for (int trial = 0; trial < 100; ++trial) {
    const Index n = 3 + Index(trial % 8);
    std::vector<ahp::UpperEntry<double>> upper;
    for (Index i = 0; i < n; ++i)
      for (Index j = i + 1; j < n; ++j)
        upper.push_back({i, j, scale.levels()[std::size_t(level(rng))].value});
    const auto m = PairwiseMatrixd::from_upper_triangle(n, upper);
    const auto ours = ahp::derive_eigenvector(m);
    const auto ref = dense_principal(m.matrix());
    EXPECT_NEAR(ours.lambda_max, ref.lambda, 1e-8);
    EXPECT_LT((ours.priorities.weights - ref.w).cwiseAbs().maxCoeff(), 1e-8);
  }
}

TEST(Eigenvector, LambdaNeverBelowOrder) {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> logv(-2.0, 2.0);
  for (int trial = 0; trial < 300; ++trial) {
    const Index n = 2 + Index(trial % 10);
    std::vector<ahp::UpperEntry<double>> upper;
    for (Index i = 0; i < n; ++i)
      for (Index j = i + 1; j < n; ++j) upper.push_back({i, j, std::exp(logv(rng))});
    const auto r = ahp::derive_eigenvector(PairwiseMatrixd::from_upper_triangle(n, upper));
    EXPECT_GE(r.lambda_max, double(n) - 1e-9);
    EXPECT_TRUE((r.priorities.weights.array() > 0).all());
  }
}

TEST(Eigenvector, PermutationEquivariant) {
  const auto m = intransitive3();
  const std::vector<Index> perm{1, 2, 0};
  const auto w = ahp::derive_eigenvector(m).priorities.weights;
  const auto wp = ahp::derive_eigenvector(m.permuted(perm)).priorities.weights;
  for (Index i = 0; i < 3; ++i) EXPECT_NEAR(wp(i), w(perm[std::size_t(i)]), 1e-12);
}

TEST(Eigenvector, IterationBudgetExhaustedThrows) {
  ahp::PowerIterationOptions opts;
  opts.max_iterations = 1;
  opts.tolerance = 1e-300;
  try {
    ahp::derive_eigenvector(intransitive3(), opts);
    FAIL();
  } catch (const ahp::Error& e) {
    EXPECT_EQ(e.code(), ahp::ErrorCode::NoConvergence);
  }
}

TEST(GeometricRow, AgreesWithEigenvectorForOrderThree) {
  const auto g = ahp::derive_geometric_row(intransitive3());
  for (Index i = 0; i < 3; ++i) EXPECT_NEAR(g.weights(i), testing_support::kIntransitiveWeights[i], 1e-14);
  EXPECT_EQ(g.method, PriorityMethod::GeometricRow);
}

TEST(Consistency, IntransitiveTripleIsRejected) {
  const auto m = intransitive3();
  const auto a = ahp::analyze(m);
  const double ci = (testing_support::kIntransitiveLambda - 3.0) / 2.0;
  EXPECT_NEAR(a.consistency.ci, ci, 1e-10);
  EXPECT_EQ(a.consistency.ri, ahp::RandomIndexTable::builtin().at(3));
  EXPECT_NEAR(a.consistency.cr, ci / a.consistency.ri, 1e-10);
  EXPECT_GT(a.consistency.cr, 0.12);
  EXPECT_FALSE(a.consistency.accepted);
}

TEST(Consistency, RankOneMatricesAreExact) {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(0.05, 1.0);
  for (Index n = 3; n <= 9; ++n) {
    Eigen::VectorXd w(n);
    for (Index i = 0; i < n; ++i) w(i) = u(rng);
    w /= w.sum();
    const auto m = PairwiseMatrixd::from_weights(w);
    for (auto method : {PriorityMethod::Eigenvector, PriorityMethod::GeometricRow}) {
      const auto a = ahp::analyze(m, method);
      EXPECT_NEAR(a.consistency.lambda_max, double(n), 1e-9);
      EXPECT_NEAR(a.consistency.cr, 0.0, 1e-9);
      EXPECT_LT((a.priorities.weights - w).cwiseAbs().maxCoeff(), 1e-9);
      EXPECT_TRUE(a.consistency.accepted);
    }
  }
}

TEST(Consistency, SmallOrdersAreTriviallyConsistent) {
  const auto m = PairwiseMatrixd::from_upper_triangle(2, {{0, 1, 7.0}});
  const auto a = ahp::analyze(m);
  EXPECT_EQ(a.consistency.lambda_max, 2.0);
  EXPECT_EQ(a.consistency.ci, 0.0);
  EXPECT_EQ(a.consistency.cr, 0.0);
  EXPECT_NEAR(a.priorities.weights(0), 0.875, 1e-12);
  const auto one = ahp::analyze(PairwiseMatrixd::uniform(1));
  EXPECT_EQ(one.priorities.weights(0), 1.0);
  EXPECT_EQ(one.consistency.cr, 0.0);
}

TEST(Consistency, ThresholdIsAParameter) {
  const auto m = intransitive3();
  const auto w = ahp::derive_eigenvector(m).priorities;
  EXPECT_TRUE(ahp::consistency(m, w, ahp::RandomIndexTable::builtin(), 1.0).accepted);
  EXPECT_THROW(ahp::consistency(m, w, ahp::RandomIndexTable::builtin(), 0.0), ahp::Error);
  EXPECT_THROW(ahp::consistency(m, w, ahp::RandomIndexTable::builtin(), 1.5), ahp::Error);
}

TEST(Consistency, MissingOrderInTable) {
  const ahp::RandomIndexTable partial({{1, 0.0}, {2, 0.0}, {3, 0.52}}, ahp::RIProvenance::UserSupplied);
  const auto m = PairwiseMatrixd::uniform(4);
  const auto w = ahp::derive_eigenvector(m).priorities;
  try {
    ahp::consistency(m, w, partial);
    FAIL();
  } catch (const ahp::Error& e) {
    EXPECT_EQ(e.code(), ahp::ErrorCode::MissingRI);
  }
}

TEST(Consistency, RejectsBadWeights) {
  const auto m = intransitive3();
  ahp::PriorityVectord w{Eigen::Vector3d(0.5, 0.5, 0.0), m.labels(), PriorityMethod::Direct};
  EXPECT_THROW(ahp::consistency(m, w), ahp::Error);
  ahp::PriorityVectord short_w{Eigen::Vector2d(0.5, 0.5), {"A", "B"}, PriorityMethod::Direct};
  EXPECT_THROW(ahp::consistency(m, short_w), ahp::Error);
}

TEST(RandomIndexTable, Validation) {
  using T = ahp::RandomIndexTable;
  EXPECT_THROW(T({{1, 0.0}, {2, 0.1}}, ahp::RIProvenance::UserSupplied), ahp::Error);
  EXPECT_THROW(T({{3, 0.9}, {4, 0.5}}, ahp::RIProvenance::UserSupplied), ahp::Error);
  EXPECT_THROW(T({{16, 1.6}}, ahp::RIProvenance::UserSupplied), ahp::Error);
  const auto& b = T::builtin();
  EXPECT_EQ(b.at(1), 0.0);
  EXPECT_EQ(b.at(2), 0.0);
  EXPECT_EQ(b.provenance(), ahp::RIProvenance::DerivedMonteCarlo);
  double prev = 0.0;
  for (int n = 1; n <= T::kMaxOrder; ++n) {
    EXPECT_GE(b.at(n), prev);
    prev = b.at(n);
  }
}

TEST(PriorityMethod, Names) {
  EXPECT_EQ(ahp::parse_priority_method("geometric"), PriorityMethod::GeometricRow);
  EXPECT_EQ(ahp::parse_priority_method("eigenvector"), PriorityMethod::Eigenvector);
  EXPECT_THROW(ahp::parse_priority_method("median"), ahp::Error);
}
