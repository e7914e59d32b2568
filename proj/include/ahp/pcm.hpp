#pragma once

#include <cmath>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Core>

#include "ahp/error.hpp"

namespace ahp {

using Index = Eigen::Index;

template <typename Scalar>
using MatrixX = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
template <typename Scalar>
using VectorX = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

inline constexpr double kDefaultReciprocityTolerance = 1e-12;
inline constexpr double kDefaultConsistencyTolerance = 1e-9;

struct ScaleLevel {
  double value;
  std::string_view label;
};

/// The 1..9 judgment scale with its reciprocals (17 levels). In strict mode
/// only these levels are admissible off the diagonal; otherwise any positive
/// real is accepted.
class JudgmentScale {
 public:
  static JudgmentScale saaty(bool strict = true);

  bool strict() const noexcept { return strict_; }
  std::span<const ScaleLevel> levels() const noexcept { return levels_; }

  /// True when `value` matches a level within relative tolerance.
  bool is_level(double value, double rel_tol = 1e-9) const noexcept;

  /// Verbal label of an integer magnitude 1..9; empty for anything else.
  static std::string_view label(int magnitude) noexcept;

 private:
  explicit JudgmentScale(bool strict);

  bool strict_;
  std::vector<ScaleLevel> levels_;
};

template <typename Scalar>
struct UpperEntry {
  Index row;
  Index col;
  Scalar value;
};

/// Default node names "c1".."cn" for programmatic matrices.
std::vector<std::string> default_labels(Index order);

/// Square positive reciprocal judgment matrix. Only the strict upper triangle
/// is stored by the caller; the lower triangle is derived as reciprocals at
/// construction, so reciprocity holds exactly and the object is immutable.
template <typename Scalar>
class PairwiseMatrix {
 public:
  using Matrix = MatrixX<Scalar>;

  static PairwiseMatrix from_upper_triangle(
      Index order, std::span<const UpperEntry<Scalar>> upper,
      std::vector<std::string> labels = {}) {
    if (order < 1) {
      throw Error(ErrorCode::InvalidMatrix, "order must be at least 1");
    }
    labels = checked_labels(order, std::move(labels));
    Matrix m = Matrix::Constant(order, order, Scalar(0));
    for (const auto& e : upper) {
      if (e.row < 0 || e.col >= order || e.row >= e.col) {
        throw Error(ErrorCode::InvalidMatrix,
                    "entry (" + std::to_string(e.row) + "," +
                        std::to_string(e.col) + ") is not strictly upper");
      }
      if (!(e.value > Scalar(0)) || !std::isfinite(double(e.value))) {
        throw Error(ErrorCode::NonPositiveValue,
                    "entry (" + std::to_string(e.row) + "," +
                        std::to_string(e.col) + ") must be positive and finite");
      }
      if (m(e.row, e.col) != Scalar(0)) {
        throw Error(ErrorCode::DuplicatePair,
                    "pair (" + std::to_string(e.row) + "," +
                        std::to_string(e.col) + ") given twice");
      }
      m(e.row, e.col) = e.value;
    }
    for (Index i = 0; i < order; ++i) {
      m(i, i) = Scalar(1);
      for (Index j = i + 1; j < order; ++j) {
        if (m(i, j) == Scalar(0)) {
          throw Error(ErrorCode::MissingPair,
                      "pair (" + labels[i] + "," + labels[j] + ") missing");
        }
        m(j, i) = Scalar(1) / m(i, j);
      }
    }
    return PairwiseMatrix(std::move(m), std::move(labels));
  }

  static PairwiseMatrix from_upper_triangle(
      Index order, std::initializer_list<UpperEntry<Scalar>> upper,
      std::vector<std::string> labels = {}) {
    return from_upper_triangle(
        order, std::span<const UpperEntry<Scalar>>(upper.begin(), upper.size()),
        std::move(labels));
  }

  /// Builds from a full dense matrix. The upper triangle is authoritative;
  /// the lower triangle must already be its reciprocal within `rel_tol`.
  template <typename Derived>
  static PairwiseMatrix from_dense(const Eigen::MatrixBase<Derived>& dense,
                                   std::vector<std::string> labels = {},
                                   double rel_tol = kDefaultReciprocityTolerance);

  /// Identity-like matrix of all ones (every pair judged equal).
  static PairwiseMatrix uniform(Index order, std::vector<std::string> labels = {}) {
    std::vector<UpperEntry<Scalar>> upper;
    for (Index i = 0; i < order; ++i)
      for (Index j = i + 1; j < order; ++j) upper.push_back({i, j, Scalar(1)});
    return from_upper_triangle(order, upper, std::move(labels));
  }

  /// Rank-one consistent matrix X_ij = w_i / w_j.
  template <typename Derived>
  static PairwiseMatrix from_weights(const Eigen::MatrixBase<Derived>& w,
                                     std::vector<std::string> labels = {}) {
    const Index n = w.size();
    std::vector<UpperEntry<Scalar>> upper;
    for (Index i = 0; i < n; ++i)
      for (Index j = i + 1; j < n; ++j) upper.push_back({i, j, Scalar(w(i) / w(j))});
    return from_upper_triangle(n, upper, std::move(labels));
  }

  Index order() const noexcept { return matrix_.rows(); }
  const Matrix& matrix() const noexcept { return matrix_; }
  Scalar operator()(Index i, Index j) const { return matrix_(i, j); }
  const std::vector<std::string>& labels() const noexcept { return labels_; }

  std::vector<UpperEntry<Scalar>> upper_triangle() const {
    std::vector<UpperEntry<Scalar>> out;
    for (Index i = 0; i < order(); ++i)
      for (Index j = i + 1; j < order(); ++j) out.push_back({i, j, matrix_(i, j)});
    return out;
  }

  /// Simultaneous row/column permutation: result(i,j) = this(perm[i], perm[j]).
  PairwiseMatrix permuted(std::span<const Index> perm) const {
    const Index n = order();
    if (Index(perm.size()) != n) {
      throw Error(ErrorCode::OrderMismatch, "permutation length differs from order");
    }
    std::vector<UpperEntry<Scalar>> upper;
    std::vector<std::string> labels(n);
    for (Index i = 0; i < n; ++i) {
      labels[i] = labels_[perm[i]];
      for (Index j = i + 1; j < n; ++j) upper.push_back({i, j, matrix_(perm[i], perm[j])});
    }
    return from_upper_triangle(n, upper, std::move(labels));
  }

  PairwiseMatrix with_labels(std::vector<std::string> labels) const {
    return PairwiseMatrix(matrix_, checked_labels(order(), std::move(labels)));
  }

  friend bool operator==(const PairwiseMatrix& a, const PairwiseMatrix& b) {
    return a.labels_ == b.labels_ && a.matrix_ == b.matrix_;
  }

 private:
  PairwiseMatrix(Matrix m, std::vector<std::string> labels)
      : matrix_(std::move(m)), labels_(std::move(labels)) {}

  static std::vector<std::string> checked_labels(Index order,
                                                 std::vector<std::string> labels) {
    if (labels.empty()) return default_labels(order);
    if (Index(labels.size()) != order) {
      throw Error(ErrorCode::InvalidMatrix, "label count " +
                                                std::to_string(labels.size()) +
                                                " differs from order " +
                                                std::to_string(order));
    }
    for (std::size_t i = 0; i < labels.size(); ++i)
      for (std::size_t j = i + 1; j < labels.size(); ++j)
        if (labels[i] == labels[j]) throw Error(ErrorCode::InvalidMatrix, "duplicate label '" + labels[i] + "'");
    return labels;
  }

  Matrix matrix_;
  std::vector<std::string> labels_;
};

using PairwiseMatrixd = PairwiseMatrix<double>;

enum class ViolationKind { NotSquare, NonFinite, NonPositive, Diagonal, Reciprocity, OffScale };

std::string_view to_string(ViolationKind kind) noexcept;

struct Violation {
  ViolationKind kind;
  Index row;
  Index col;
  std::string message;
};

struct ValidationReport {
  std::vector<Violation> violations;

  bool ok() const noexcept { return violations.empty(); }
};

/// Checks the structural rules of a judgment matrix. Violations are reported,
/// never thrown. Reciprocity is reported once per unordered pair at (i,j), i<j.
template <typename Derived>
ValidationReport validate(const Eigen::MatrixBase<Derived>& m, const JudgmentScale& scale,
                          double rel_tol = kDefaultReciprocityTolerance) {
  ValidationReport report;
  auto add = [&](ViolationKind kind, Index i, Index j, std::string msg) {
    report.violations.push_back({kind, i, j, std::move(msg)});
  };
  auto at = [](Index i, Index j) {
    return "(" + std::to_string(i) + "," + std::to_string(j) + ")";
  };
  if (m.rows() != m.cols()) {
    add(ViolationKind::NotSquare, m.rows(), m.cols(), "matrix is not square");
    return report;
  }
  const Index n = m.rows();
  for (Index i = 0; i < n; ++i) {
    for (Index j = 0; j < n; ++j) {
      const double x = double(m(i, j));
      if (!std::isfinite(x)) {
        add(ViolationKind::NonFinite, i, j, "entry " + at(i, j) + " is not finite");
      } else if (x <= 0.0) {
        add(ViolationKind::NonPositive, i, j, "entry " + at(i, j) + " is not positive");
      }
    }
  }
  for (Index i = 0; i < n; ++i) {
    const double d = double(m(i, i));
    if (std::isfinite(d) && d != 1.0) {
      add(ViolationKind::Diagonal, i, i, "diagonal " + at(i, i) + " is not 1");
    }
    for (Index j = i + 1; j < n; ++j) {
      const double a = double(m(i, j));
      const double b = double(m(j, i));
      if (!std::isfinite(a) || !std::isfinite(b) || a <= 0.0 || b <= 0.0) continue;
      if (std::abs(a * b - 1.0) > rel_tol) {
        add(ViolationKind::Reciprocity, i, j,
            "entries " + at(i, j) + "/" + at(j, i) + " are not reciprocal");
      }
      if (scale.strict() && !scale.is_level(a)) {
        add(ViolationKind::OffScale, i, j, "entry " + at(i, j) + " is not a scale level");
      }
      if (scale.strict() && !scale.is_level(b)) {
        add(ViolationKind::OffScale, j, i, "entry " + at(j, i) + " is not a scale level");
      }
    }
  }
  return report;
}

template <typename Scalar>
ValidationReport validate(const PairwiseMatrix<Scalar>& m, const JudgmentScale& scale,
                          double rel_tol = kDefaultReciprocityTolerance) {
  return validate(m.matrix(), scale, rel_tol);
}

template <typename Scalar>
template <typename Derived>
PairwiseMatrix<Scalar> PairwiseMatrix<Scalar>::from_dense(
    const Eigen::MatrixBase<Derived>& dense, std::vector<std::string> labels,
    double rel_tol) {
  const ValidationReport report = validate(dense, JudgmentScale::saaty(false), rel_tol);
  if (!report.ok()) {
    throw Error(ErrorCode::InvalidMatrix, report.violations.front().message);
  }
  const Index n = dense.rows();
  std::vector<UpperEntry<Scalar>> upper;
  for (Index i = 0; i < n; ++i)
    for (Index j = i + 1; j < n; ++j) upper.push_back({i, j, Scalar(dense(i, j))});
  return from_upper_triangle(n, upper, std::move(labels));
}

/// Cardinal transitivity: X_ik == X_ij * X_jk for every triple, within a
/// relative tolerance.
template <typename Scalar>
bool is_consistent(const PairwiseMatrix<Scalar>& m,
                   double tol = kDefaultConsistencyTolerance) {
  const auto& x = m.matrix();
  const Index n = m.order();
  for (Index i = 0; i < n; ++i)
    for (Index j = 0; j < n; ++j)
      for (Index k = 0; k < n; ++k) {
        const double direct = double(x(i, k));
        const double chained = double(x(i, j) * x(j, k));
        if (std::abs(direct - chained) > tol * std::max(std::abs(direct), std::abs(chained)))
          return false;
      }
  return true;
}

}  // namespace ahp
