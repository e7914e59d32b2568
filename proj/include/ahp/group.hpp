#pragma once

#include <map>
#include <span>
#include <string>
#include <vector>

#include "ahp/priority.hpp"

namespace ahp {

/// One respondent's questionnaire: a judgment matrix per hierarchy node whose
/// children are compared (the goal node compares criteria, each criterion
/// compares alternatives).
struct JudgmentSet {
  std::string respondent_id;
  std::string group_id;
  std::map<std::string, PairwiseMatrixd> matrices;
  std::string submitted_at;  // ISO-8601, informational

  friend bool operator==(const JudgmentSet&, const JudgmentSet&) = default;
};

struct Rejection {
  std::string respondent_id;
  std::string node;
  double cr;
};

struct FilterReport {
  std::size_t total = 0;
  std::size_t accepted = 0;
  std::size_t salvaged = 0;  // partially kept respondents (salvage mode only)
  std::vector<Rejection> rejected;
  double threshold = kDefaultCrThreshold;

  std::vector<std::string> rejected_respondents() const;
};

struct FilterOptions {
  double threshold = kDefaultCrThreshold;
  PriorityMethod method = PriorityMethod::Eigenvector;
  /// Keep a failing respondent's passing matrices instead of dropping the
  /// whole questionnaire.
  bool salvage_matrices = false;
};

struct FilterResult {
  std::vector<JudgmentSet> accepted;
  FilterReport report;
};

/// A respondent passes iff every matrix in the set has CR <= threshold.
FilterResult filter_by_cr(std::span<const JudgmentSet> sets, const FilterOptions& options = {},
                          const RandomIndexTable& ri = RandomIndexTable::builtin());

/// Aggregation of individual priorities: componentwise geometric mean,
/// renormalized to sum 1.
PriorityVectord aggregate_priorities_geometric(std::span<const PriorityVectord> vectors);

/// Aggregation of individual judgments: entrywise geometric mean.
PairwiseMatrixd aggregate_judgments_geometric(std::span<const PairwiseMatrixd> matrices);

struct NodePriorities {
  std::string node;
  std::vector<std::pair<std::string, PriorityVectord>> per_respondent;  // sorted by id
  PriorityVectord group;
  FilterReport report;
};

/// Per-respondent derive, CR screen on the whole set, then AIP over the
/// survivors' matrices for `node`. Respondents are reduced in id order.
NodePriorities group_priorities(std::span<const JudgmentSet> sets, const std::string& node,
                                const FilterOptions& options = {},
                                const RandomIndexTable& ri = RandomIndexTable::builtin());

}  // namespace ahp
