#include "ahp/group.hpp"

#include <algorithm>
#include <cmath>
#include <set>

namespace ahp {

std::vector<std::string> FilterReport::rejected_respondents() const {
  std::vector<std::string> ids;
  for (const auto& r : rejected)
    if (std::find(ids.begin(), ids.end(), r.respondent_id) == ids.end())
      ids.push_back(r.respondent_id);
  return ids;
}

FilterResult filter_by_cr(std::span<const JudgmentSet> sets, const FilterOptions& options,
                          const RandomIndexTable& ri) {
  FilterResult out;
  out.report.total = sets.size();
  out.report.threshold = options.threshold;
  for (const auto& set : sets) {
    JudgmentSet kept = set;
    bool failed = false;
    for (const auto& [node, matrix] : set.matrices) {
      const auto analysis = analyze(matrix, options.method, ri, options.threshold);
      if (!analysis.consistency.accepted) {
        failed = true;
        out.report.rejected.push_back({set.respondent_id, node, analysis.consistency.cr});
        kept.matrices.erase(node);
      }
    }
    if (!failed) {
      ++out.report.accepted;
      out.accepted.push_back(std::move(kept));
    } else if (options.salvage_matrices && !kept.matrices.empty()) {
      ++out.report.salvaged;
      out.accepted.push_back(std::move(kept));
    }
  }
  return out;
}

PriorityVectord aggregate_priorities_geometric(std::span<const PriorityVectord> vectors) {
  if (vectors.empty()) throw Error(ErrorCode::EmptyPanel, "no priority vectors to aggregate");
  const auto& first = vectors.front();
  VectorX<double> log_sum = VectorX<double>::Zero(first.size());
  for (const auto& v : vectors) {
    if (v.labels != first.labels || v.size() != first.size()) {
      throw Error(ErrorCode::LabelMismatch, "priority vectors disagree on labels");
    }
    if ((v.weights.array() <= 0.0).any()) {
      throw Error(ErrorCode::ZeroWeight, "geometric aggregation needs positive weights");
    }
    log_sum += v.weights.array().log().matrix();
  }
  VectorX<double> w = (log_sum / double(vectors.size())).array().exp().matrix();
  w /= w.sum();
  return {std::move(w), first.labels, first.method};
}

PairwiseMatrixd aggregate_judgments_geometric(std::span<const PairwiseMatrixd> matrices) {
  if (matrices.empty()) throw Error(ErrorCode::EmptyPanel, "no matrices to aggregate");
  const auto& first = matrices.front();
  const Index n = first.order();
  MatrixX<double> log_sum = MatrixX<double>::Zero(n, n);
  for (const auto& m : matrices) {
    if (m.order() != n) throw Error(ErrorCode::OrderMismatch, "matrices differ in order");
    if (m.labels() != first.labels()) {
      throw Error(ErrorCode::LabelMismatch, "matrices disagree on labels");
    }
    log_sum += m.matrix().array().log().matrix();
  }
  const double count = double(matrices.size());
  std::vector<UpperEntry<double>> upper;
  for (Index i = 0; i < n; ++i)
    for (Index j = i + 1; j < n; ++j) upper.push_back({i, j, std::exp(log_sum(i, j) / count)});
  return PairwiseMatrixd::from_upper_triangle(n, upper, first.labels());
}

NodePriorities group_priorities(std::span<const JudgmentSet> sets, const std::string& node,
                                const FilterOptions& options, const RandomIndexTable& ri) {
  std::set<std::string> seen;
  for (const auto& s : sets) {
    if (!seen.insert(s.respondent_id).second) {
      throw Error(ErrorCode::InvalidArgument, "duplicate respondent '" + s.respondent_id + "'");
    }
  }
  FilterResult filtered = filter_by_cr(sets, options, ri);
  std::sort(filtered.accepted.begin(), filtered.accepted.end(),
            [](const JudgmentSet& a, const JudgmentSet& b) {
              return a.respondent_id < b.respondent_id;
            });

  NodePriorities out;
  out.node = node;
  out.report = std::move(filtered.report);
  std::vector<PriorityVectord> vectors;
  for (const auto& set : filtered.accepted) {
    auto it = set.matrices.find(node);
    if (it == set.matrices.end()) continue;
    PriorityVectord w = derive(it->second, options.method);
    out.per_respondent.emplace_back(set.respondent_id, w);
    vectors.push_back(std::move(w));
  }
  if (vectors.empty()) {
    throw Error(ErrorCode::EmptyPanel, "no accepted judgments for node '" + node + "'");
  }
  out.group = aggregate_priorities_geometric(vectors);
  return out;
}

}  // namespace ahp
