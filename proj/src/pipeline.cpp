#include "ahp/pipeline.hpp"

#include <fstream>
#include <sstream>

namespace ahp {

RandomIndexTable resolve_ri_table(const Study& study, const std::filesystem::path& base_dir) {
  if (study.config.ri_table) return *study.config.ri_table;
  if (study.config.ri_table_path) {
    std::filesystem::path p = *study.config.ri_table_path;
    if (p.is_relative() && !base_dir.empty()) p = base_dir / p;
    std::ifstream in(p);
    if (!in) throw Error(ErrorCode::Io, "cannot read random index table " + p.string());
    std::ostringstream buf;
    buf << in.rdbuf();
    try {
      return random_index_table_from_json(json::parse(buf.str()));
    } catch (const json::exception& e) {
      throw Error(ErrorCode::SchemaViolation, p.string() + ": " + e.what());
    }
  }
  return RandomIndexTable::builtin();
}

FilterOptions filter_options(const Study& study, std::optional<double> threshold) {
  FilterOptions o;
  o.threshold = threshold.value_or(study.config.threshold);
  o.method = study.config.method;
  o.salvage_matrices = study.config.salvage_matrices;
  return o;
}

PriorityVectord study_criteria_weights(const Study& study, const FilterOptions& options,
                                       const RandomIndexTable& ri,
                                       std::optional<FilterReport>* report) {
  if (study.criteria_weights) return *study.criteria_weights;
  NodePriorities np = group_priorities(study.judgments, study.hierarchy.goal, options, ri);
  if (report) *report = np.report;
  return np.group;
}

LocalPriorities study_local_priorities(const Study& study, const FilterOptions& options,
                                       const RandomIndexTable& ri) {
  if (study.hierarchy.alternatives.empty()) {
    throw Error(ErrorCode::ShapeMismatch, "no alternatives in the hierarchy");
  }
  LocalPriorities lp{study_criteria_weights(study, options, ri), {}};
  for (const auto& c : study.hierarchy.criteria) {
    if (auto it = study.alternative_priorities.find(c); it != study.alternative_priorities.end()) {
      lp.per_criterion.emplace(c, it->second);
    } else {
      lp.per_criterion.emplace(c, group_priorities(study.judgments, c, options, ri).group);
    }
  }
  return lp;
}

StudyResults compute_results(const Study& study, const RandomIndexTable& ri,
                             std::optional<double> threshold) {
  StudyResults out;
  const FilterOptions options = filter_options(study, threshold);
  try {
    out.criteria_weights = study_criteria_weights(study, options, ri, &out.filter);
  } catch (const Error& e) {
    out.notes.push_back(std::string("criteria weights: ") + e.what());
    return out;
  }
  if (study.hierarchy.alternatives.empty()) {
    out.notes.push_back("synthesis: no alternatives in the hierarchy");
    return out;
  }
  try {
    out.local = study_local_priorities(study, options, ri);
    out.scores = synthesize(study.hierarchy, *out.local);
  } catch (const Error& e) {
    out.notes.push_back(std::string("synthesis: ") + e.what());
    return out;
  }
  if (!study.groups.empty()) {
    try {
      out.rollup = rollup_mean(*out.scores, study.groups, 3);
    } catch (const Error& e) {
      out.notes.push_back(std::string("rollup: ") + e.what());
    }
  }
  return out;
}

ReportInput report_input(const Study& study, const StudyResults& r) {
  ReportInput in;
  in.criteria_weights = r.criteria_weights;
  in.filter = r.filter;
  if (r.local) in.hierarchy = study.hierarchy;
  in.local = r.local;
  in.scores = r.scores;
  in.rollup = r.rollup;
  return in;
}

json to_json(const StudyResults& r) {
  json out = json::object();
  if (r.criteria_weights) out["criteria_weights"] = to_json(*r.criteria_weights);
  if (r.filter) out["filter"] = to_json(*r.filter);
  if (r.scores) out["synthesis"] = to_json(*r.scores);
  if (r.rollup) out["rollup"] = to_json(*r.rollup);
  out["notes"] = r.notes;
  return out;
}

DelphiStudy delphi_state(const Study& study) {
  Panel panel;
  for (const auto& e : study.panel) panel.experts.push_back(e.id);
  return DelphiStudy(study.item_pool, std::move(panel),
                     DelphiConfig{study.config.retention_fraction, study.config.max_rounds},
                     study.rounds);
}

void store_delphi(Study& study, const DelphiStudy& delphi) { study.rounds = delphi.rounds(); }

}  // namespace ahp
