#include "ahp/hierarchy.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "ahp/format.hpp"

namespace ahp {
namespace {

void check_unique(const std::vector<std::string>& names, const char* what) {
  std::set<std::string> seen;
  for (const auto& n : names) {
    if (n.empty()) throw Error(ErrorCode::InvalidHierarchy, std::string(what) + " name is empty");
    if (!seen.insert(n).second) {
      throw Error(ErrorCode::InvalidHierarchy, std::string("duplicate ") + what + " '" + n + "'");
    }
  }
}

constexpr double kSumTolerance = 1e-9;

void check_vector(const PriorityVectord& v, const std::vector<std::string>& labels,
                  const std::string& what) {
  if (v.labels != labels || v.size() != Index(labels.size())) {
    throw Error(ErrorCode::ShapeMismatch, what + " labels do not match the hierarchy");
  }
  if (std::abs(v.weights.sum() - 1.0) > kSumTolerance) {
    throw Error(ErrorCode::ShapeMismatch, what + " does not sum to 1");
  }
}

}  // namespace

void Hierarchy::validate() const {
  if (goal.empty()) throw Error(ErrorCode::InvalidHierarchy, "goal name is empty");
  if (criteria.empty()) throw Error(ErrorCode::InvalidHierarchy, "at least one criterion required");
  check_unique(criteria, "criterion");
  check_unique(alternatives, "alternative");
  std::vector<std::string> all = criteria;
  all.push_back(goal);
  check_unique(all, "node");
}

bool Hierarchy::is_node(const std::string& name) const {
  return name == goal || std::find(criteria.begin(), criteria.end(), name) != criteria.end();
}

const std::vector<std::string>& Hierarchy::children(const std::string& node) const {
  if (node == goal) return criteria;
  if (std::find(criteria.begin(), criteria.end(), node) != criteria.end()) return alternatives;
  throw Error(ErrorCode::InvalidArgument, "unknown node '" + node + "'");
}

double GlobalScores::score(const std::string& name) const {
  for (const auto& s : scores)
    if (s.name == name) return s.score;
  throw Error(ErrorCode::UnknownAlternative, "no score for '" + name + "'");
}

GlobalScores make_global_scores(std::vector<ScoredAlternative> scores) {
  GlobalScores out{std::move(scores), {}};
  out.ranking = rank(out);
  return out;
}

GlobalScores synthesize(const Hierarchy& h, const LocalPriorities& lp) {
  check_vector(lp.criteria_weights, h.criteria, "criteria weights");
  if (lp.per_criterion.size() != h.criteria.size()) {
    throw Error(ErrorCode::ShapeMismatch, "local priorities must cover exactly the criteria");
  }
  const Index alts = Index(h.alternatives.size());
  const Index crit = Index(h.criteria.size());
  MatrixX<double> local(alts, crit);
  for (Index c = 0; c < crit; ++c) {
    const auto& name = h.criteria[std::size_t(c)];
    auto it = lp.per_criterion.find(name);
    if (it == lp.per_criterion.end()) {
      throw Error(ErrorCode::ShapeMismatch, "no local priorities for criterion '" + name + "'");
    }
    check_vector(it->second, h.alternatives, "local priorities of '" + name + "'");
    local.col(c) = it->second.weights;
  }
  const VectorX<double> global = local * lp.criteria_weights.weights;
  std::vector<ScoredAlternative> scores;
  for (Index a = 0; a < alts; ++a) scores.push_back({h.alternatives[std::size_t(a)], global(a)});
  return make_global_scores(std::move(scores));
}

std::vector<std::string> rank(const GlobalScores& scores) {
  std::vector<ScoredAlternative> sorted = scores.scores;
  std::sort(sorted.begin(), sorted.end(), [](const auto& a, const auto& b) {
    if (a.score != b.score) return a.score > b.score;
    return a.name < b.name;
  });
  std::vector<std::string> out;
  for (const auto& s : sorted) out.push_back(s.name);
  return out;
}

const GroupMean& GroupRollup::group(const std::string& name) const {
  for (const auto& g : groups)
    if (g.name == name) return g;
  throw Error(ErrorCode::InvalidArgument, "no group '" + name + "'");
}

GroupRollup rollup_mean(const GlobalScores& scores, const GroupMap& groups,
                        std::optional<int> tie_decimals) {
  std::map<std::string, std::string> owner;
  for (const auto& s : scores.scores) owner[s.name];
  GroupRollup out;
  out.tie_decimals = tie_decimals;
  for (const auto& [name, members] : groups) {
    if (members.empty()) throw Error(ErrorCode::ShapeMismatch, "group '" + name + "' is empty");
    double sum = 0.0;
    for (const auto& m : members) {
      auto it = owner.find(m);
      if (it == owner.end()) throw Error(ErrorCode::UnknownAlternative, "unknown alternative '" + m + "'");
      if (!it->second.empty()) {
        throw Error(ErrorCode::OverlappingGroups,
                    "'" + m + "' is in both '" + it->second + "' and '" + name + "'");
      }
      it->second = name;
      sum += scores.score(m);
    }
    out.groups.push_back({name, members, sum / double(members.size()), 0});
  }
  for (const auto& [alt, group] : owner) {
    if (group.empty()) throw Error(ErrorCode::ShapeMismatch, "'" + alt + "' is in no group");
  }

  auto key = [&](const GroupMean& g) {
    return tie_decimals ? round_half_up(g.mean, *tie_decimals) : g.mean;
  };
  std::sort(out.groups.begin(), out.groups.end(), [&](const GroupMean& a, const GroupMean& b) {
    const double ka = key(a), kb = key(b);
    if (ka != kb) return ka > kb;
    return a.name < b.name;
  });
  for (std::size_t i = 0; i < out.groups.size(); ++i) {
    out.groups[i].rank = (i > 0 && key(out.groups[i]) == key(out.groups[i - 1]))
                             ? out.groups[i - 1].rank
                             : int(i) + 1;
  }
  return out;
}

}  // namespace ahp
