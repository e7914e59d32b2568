#pragma once

#include <Eigen/Eigenvalues>

#include "ahp/pcm.hpp"

namespace testing_support {

// A prefers B 2:1, B prefers C 4:1, C prefers A 2:1.
inline ahp::PairwiseMatrixd intransitive3() {
  return ahp::PairwiseMatrixd::from_upper_triangle(3, {{0, 1, 2.0}, {0, 2, 0.5}, {1, 2, 4.0}},
                                                   {"A", "B", "C"});
}

// lambda = 1 + t + 1/t with t = 16^(1/3); weights from the cube-root row products.
inline constexpr double kIntransitiveLambda = 3.916692362781796;
inline constexpr double kIntransitiveWeights[3] = {0.3274800020733262, 0.4125989480318005,
                                                   0.25992104989487325};

struct DenseEigen {
  double lambda;
  Eigen::VectorXd w;
};

// Reference principal eigenpair from a general dense eigensolver.
inline DenseEigen dense_principal(const Eigen::MatrixXd& m) {
  Eigen::EigenSolver<Eigen::MatrixXd> es(m);
  Eigen::Index k = 0;
  es.eigenvalues().real().maxCoeff(&k);
  Eigen::VectorXd w = es.eigenvectors().col(k).real();
  w /= w.sum();
  return {es.eigenvalues()(k).real(), w};
}

}  // namespace testing_support
