#pragma once

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "ahp/priority.hpp"

namespace ahp {

/// Goal -> criteria -> alternatives. Alternatives may be empty for
/// weights-only studies.
struct Hierarchy {
  std::string goal;
  std::vector<std::string> criteria;
  std::vector<std::string> alternatives;

  /// Throws InvalidHierarchy on empty or duplicate names.
  void validate() const;

  bool is_node(const std::string& name) const;
  /// Children compared under `node`: criteria for the goal, alternatives for
  /// a criterion. Throws InvalidArgument for unknown nodes.
  const std::vector<std::string>& children(const std::string& node) const;

  friend bool operator==(const Hierarchy&, const Hierarchy&) = default;
};

struct LocalPriorities {
  PriorityVectord criteria_weights;
  std::map<std::string, PriorityVectord> per_criterion;
};

struct ScoredAlternative {
  std::string name;
  double score;
};

struct GlobalScores {
  std::vector<ScoredAlternative> scores;  // hierarchy order
  std::vector<std::string> ranking;       // descending, ties by name

  double score(const std::string& name) const;
};

/// Scores in the given order with the ranking filled in. Used for directly
/// supplied scores as well as by synthesize().
GlobalScores make_global_scores(std::vector<ScoredAlternative> scores);

/// score(a) = sum_c w_c * local_c(a).
GlobalScores synthesize(const Hierarchy& h, const LocalPriorities& lp);

/// Descending by score; equal scores ordered lexicographically by name.
std::vector<std::string> rank(const GlobalScores& scores);

struct GroupMean {
  std::string name;
  std::vector<std::string> members;
  double mean;
  int rank;  // competition ranking; tied groups share a rank
};

struct GroupRollup {
  std::vector<GroupMean> groups;  // ranked order
  std::optional<int> tie_decimals;

  const GroupMean& group(const std::string& name) const;
};

using GroupMap = std::vector<std::pair<std::string, std::vector<std::string>>>;

/// Arithmetic mean of member scores per group. Groups must partition the
/// scored alternatives. When `tie_decimals` is set, groups whose means agree
/// at that half-up display precision share a rank; otherwise only exact
/// equality ties.
GroupRollup rollup_mean(const GlobalScores& scores, const GroupMap& groups,
                        std::optional<int> tie_decimals = std::nullopt);

}  // namespace ahp
