#include "ahp/priority.hpp"

#include <cmath>

namespace ahp {

std::string_view to_string(PriorityMethod method) noexcept {
  switch (method) {
    case PriorityMethod::Eigenvector: return "eigenvector";
    case PriorityMethod::GeometricRow: return "geometric";
    case PriorityMethod::Direct: return "direct";
  }
  return "unknown";
}

PriorityMethod parse_priority_method(std::string_view text) {
  if (text == "eigenvector") return PriorityMethod::Eigenvector;
  if (text == "geometric" || text == "geometric_row") return PriorityMethod::GeometricRow;
  if (text == "direct") return PriorityMethod::Direct;
  throw Error(ErrorCode::InvalidArgument, "unknown method '" + std::string(text) + "'");
}

std::string_view to_string(RIProvenance p) noexcept {
  return p == RIProvenance::DerivedMonteCarlo ? "derived_monte_carlo" : "user_supplied";
}

RandomIndexTable::RandomIndexTable(std::map<int, double> values, RIProvenance provenance)
    : values_(std::move(values)), provenance_(provenance) {
  double previous = 0.0;
  for (const auto& [n, ri] : values_) {
    if (n < 1 || n > kMaxOrder) {
      throw Error(ErrorCode::InvalidArgument, "RI order " + std::to_string(n) + " out of range");
    }
    if (!std::isfinite(ri) || ri < 0.0) {
      throw Error(ErrorCode::InvalidArgument, "RI(" + std::to_string(n) + ") is invalid");
    }
    if (n <= 2 && ri != 0.0) {
      throw Error(ErrorCode::InvalidArgument, "RI(1) and RI(2) must be 0");
    }
    if (ri < previous) {
      throw Error(ErrorCode::InvalidArgument, "RI must be nondecreasing in n");
    }
    previous = ri;
  }
}

std::optional<double> RandomIndexTable::find(int n) const {
  if (n >= 1 && n <= 2) return 0.0;
  if (auto it = values_.find(n); it != values_.end()) return it->second;
  return std::nullopt;
}

double RandomIndexTable::at(int n) const {
  if (auto v = find(n)) return *v;
  throw Error(ErrorCode::MissingRI, "no random index for order " + std::to_string(n));
}

}  // namespace ahp
