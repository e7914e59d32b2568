#include "ahp/pcm.hpp"

#include <algorithm>

namespace ahp {

JudgmentScale::JudgmentScale(bool strict) : strict_(strict) {
  for (int m = 9; m >= 2; --m) levels_.push_back({1.0 / m, "reciprocal"});
  for (int m = 1; m <= 9; ++m) levels_.push_back({double(m), label(m)});
}

JudgmentScale JudgmentScale::saaty(bool strict) { return JudgmentScale(strict); }

bool JudgmentScale::is_level(double value, double rel_tol) const noexcept {
  return std::any_of(levels_.begin(), levels_.end(), [&](const ScaleLevel& l) {
    return std::abs(value - l.value) <= rel_tol * l.value;
  });
}

std::string_view JudgmentScale::label(int magnitude) noexcept {
  switch (magnitude) {
    case 1: return "equally preferred";
    case 3: return "moderately preferred";
    case 5: return "strongly preferred";
    case 7: return "very strongly preferred";
    case 9: return "extremely preferred";
    case 2:
    case 4:
    case 6:
    case 8: return "intermediate";
    default: return {};
  }
}

std::vector<std::string> default_labels(Index order) {
  std::vector<std::string> out;
  out.reserve(std::size_t(std::max<Index>(order, 0)));
  for (Index i = 0; i < order; ++i) out.push_back("c" + std::to_string(i + 1));
  return out;
}

std::string_view to_string(ViolationKind kind) noexcept {
  switch (kind) {
    case ViolationKind::NotSquare: return "not_square";
    case ViolationKind::NonFinite: return "non_finite";
    case ViolationKind::NonPositive: return "non_positive";
    case ViolationKind::Diagonal: return "diagonal";
    case ViolationKind::Reciprocity: return "reciprocity";
    case ViolationKind::OffScale: return "off_scale";
  }
  return "unknown";
}

}  // namespace ahp
