#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "ahp/pcm.hpp"

namespace ahp {

inline constexpr double kDefaultCrThreshold = 0.12;

/// Direct marks weights supplied as data rather than derived from judgments.
enum class PriorityMethod { Eigenvector, GeometricRow, Direct };

std::string_view to_string(PriorityMethod method) noexcept;
PriorityMethod parse_priority_method(std::string_view text);

/// Normalized weights over a node's children.
template <typename Scalar>
struct PriorityVector {
  VectorX<Scalar> weights;
  std::vector<std::string> labels;
  PriorityMethod method = PriorityMethod::Eigenvector;

  Index size() const noexcept { return weights.size(); }

  Scalar weight(std::string_view label) const {
    for (std::size_t i = 0; i < labels.size(); ++i)
      if (labels[i] == label) return weights(Index(i));
    throw Error(ErrorCode::LabelMismatch, "no weight for '" + std::string(label) + "'");
  }

  friend bool operator==(const PriorityVector& a, const PriorityVector& b) {
    return a.labels == b.labels && a.method == b.method && a.size() == b.size() &&
           a.weights == b.weights;
  }
};

using PriorityVectord = PriorityVector<double>;

struct PowerIterationOptions {
  double tolerance = 1e-12;  // max-norm between successive normalized iterates
  int max_iterations = 10000;
  double start_scale = 1.0;  // the start vector is start_scale * (1,...,1)
};

template <typename Scalar>
struct EigenvectorResult {
  PriorityVector<Scalar> priorities;
  Scalar lambda_max;
  int iterations;
  Scalar residual;
};

/// lambda_max = mean over i of (M w)_i / w_i.
template <typename Scalar, typename Derived>
Scalar lambda_max_estimate(const PairwiseMatrix<Scalar>& m,
                           const Eigen::MatrixBase<Derived>& w) {
  const VectorX<Scalar> mw = m.matrix() * w;
  return (mw.array() / w.array()).mean();
}

/// Principal right eigenvector by power iteration, normalized by the vector
/// sum at every step. Positive reciprocal matrices have a simple dominant
/// eigenvalue, so the iteration converges from any positive start.
template <typename Scalar>
EigenvectorResult<Scalar> derive_eigenvector(const PairwiseMatrix<Scalar>& m,
                                             const PowerIterationOptions& opts = {}) {
  if (!(opts.tolerance > 0.0) || opts.max_iterations < 1 || !(opts.start_scale > 0.0)) {
    throw Error(ErrorCode::InvalidArgument, "power iteration options out of range");
  }
  const Index n = m.order();
  VectorX<Scalar> current = VectorX<Scalar>::Constant(n, Scalar(opts.start_scale));
  current /= current.sum();
  Scalar residual = std::numeric_limits<Scalar>::infinity();
  int it = 0;
  while (it < opts.max_iterations) {
    VectorX<Scalar> next = m.matrix() * current;
    next /= next.sum();
    residual = (next - current).cwiseAbs().maxCoeff();
    current = std::move(next);
    ++it;
    if (residual < Scalar(opts.tolerance)) break;
  }
  if (!(residual < Scalar(opts.tolerance))) {
    std::ostringstream msg;
    msg << "power iteration stopped after " << it << " iterations with residual "
        << double(residual);
    throw Error(ErrorCode::NoConvergence, msg.str());
  }
  PriorityVector<Scalar> pv{current, m.labels(), PriorityMethod::Eigenvector};
  const Scalar lambda = lambda_max_estimate(m, current);
  return {std::move(pv), lambda, it, residual};
}

/// Row geometric means normalized to sum 1. Exact on consistent matrices.
template <typename Scalar>
PriorityVector<Scalar> derive_geometric_row(const PairwiseMatrix<Scalar>& m) {
  const Index n = m.order();
  VectorX<Scalar> w(n);
  for (Index i = 0; i < n; ++i) {
    w(i) = std::exp(m.matrix().row(i).array().log().sum() / Scalar(n));
  }
  w /= w.sum();
  return {std::move(w), m.labels(), PriorityMethod::GeometricRow};
}

template <typename Scalar>
PriorityVector<Scalar> derive(const PairwiseMatrix<Scalar>& m, PriorityMethod method,
                              const PowerIterationOptions& opts = {}) {
  if (method == PriorityMethod::GeometricRow) return derive_geometric_row(m);
  return derive_eigenvector(m, opts).priorities;
}

enum class RIProvenance { DerivedMonteCarlo, UserSupplied };

std::string_view to_string(RIProvenance p) noexcept;

/// Random Index by matrix order. Orders 1 and 2 are always 0.
class RandomIndexTable {
 public:
  static constexpr int kMaxOrder = 15;

  RandomIndexTable(std::map<int, double> values, RIProvenance provenance);

  /// Table generated by the Monte Carlo estimator with the documented seed.
  static const RandomIndexTable& builtin();

  std::optional<double> find(int n) const;
  /// Throws MissingRI when the order is not covered.
  double at(int n) const;

  const std::map<int, double>& values() const noexcept { return values_; }
  RIProvenance provenance() const noexcept { return provenance_; }

  friend bool operator==(const RandomIndexTable&, const RandomIndexTable&) = default;

 private:
  std::map<int, double> values_;
  RIProvenance provenance_;
};

struct ConsistencyReport {
  double lambda_max = 0.0;
  double ci = 0.0;
  double ri = 0.0;
  double cr = 0.0;
  Index n = 0;
  double threshold = kDefaultCrThreshold;
  bool accepted = true;
};

/// Consistency diagnostics of `m` given weights derived from it:
/// lambda_max from (M w)_i / w_i, CI = (lambda_max - n)/(n - 1), CR = CI/RI(n).
/// Orders up to 2 are consistent by construction and report zeros.
template <typename Scalar>
ConsistencyReport consistency(const PairwiseMatrix<Scalar>& m, const PriorityVector<Scalar>& w,
                              const RandomIndexTable& ri_table = RandomIndexTable::builtin(),
                              double threshold = kDefaultCrThreshold) {
  if (!(threshold > 0.0 && threshold <= 1.0)) {
    throw Error(ErrorCode::InvalidArgument, "threshold must lie in (0, 1]");
  }
  const Index n = m.order();
  if (w.size() != n) {
    throw Error(ErrorCode::ShapeMismatch, "weight vector length differs from matrix order");
  }
  if ((w.weights.array() <= Scalar(0)).any()) {
    throw Error(ErrorCode::DegenerateWeights, "every weight must be positive");
  }
  ConsistencyReport r;
  r.n = n;
  r.threshold = threshold;
  if (n <= 2) {
    r.lambda_max = double(n);
    r.accepted = true;
    return r;
  }
  r.lambda_max = double(lambda_max_estimate(m, w.weights));
  r.ci = (r.lambda_max - double(n)) / double(n - 1);
  r.ri = ri_table.at(int(n));
  if (r.ri > 0.0) {
    r.cr = r.ci / r.ri;
  } else if (r.ci <= kDefaultConsistencyTolerance) {
    r.cr = 0.0;
  } else {
    throw Error(ErrorCode::MissingRI, "RI(" + std::to_string(n) + ") is zero");
  }
  r.accepted = r.cr <= threshold;
  return r;
}

template <typename Scalar>
struct Analysis {
  PriorityVector<Scalar> priorities;
  ConsistencyReport consistency;
};

/// Derive weights with `method` and screen them.
template <typename Scalar>
Analysis<Scalar> analyze(const PairwiseMatrix<Scalar>& m,
                         PriorityMethod method = PriorityMethod::Eigenvector,
                         const RandomIndexTable& ri_table = RandomIndexTable::builtin(),
                         double threshold = kDefaultCrThreshold) {
  PriorityVector<Scalar> w = derive(m, method);
  ConsistencyReport report = consistency(m, w, ri_table, threshold);
  return {std::move(w), report};
}

}  // namespace ahp
