#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "ahp/io.hpp"

namespace ahp {

/// Inline table, then the referenced file (relative to `base_dir`), then the
/// built-in table.
RandomIndexTable resolve_ri_table(const Study& study, const std::filesystem::path& base_dir = {});

FilterOptions filter_options(const Study& study, std::optional<double> threshold = std::nullopt);

/// Direct weights when the study supplies them, otherwise the screened
/// geometric-mean aggregate of the respondents' goal matrices.
PriorityVectord study_criteria_weights(const Study& study, const FilterOptions& options,
                                       const RandomIndexTable& ri,
                                       std::optional<FilterReport>* report = nullptr);

/// Per-criterion alternative priorities, direct or aggregated per criterion.
/// Throws ShapeMismatch when the study has no alternatives.
LocalPriorities study_local_priorities(const Study& study, const FilterOptions& options,
                                       const RandomIndexTable& ri);

struct StudyResults {
  std::optional<PriorityVectord> criteria_weights;
  std::optional<FilterReport> filter;
  std::optional<LocalPriorities> local;
  std::optional<GlobalScores> scores;
  std::optional<GroupRollup> rollup;
  std::vector<std::string> notes;  // why a stage was skipped
};

/// Everything computable from the study; stages that lack inputs are skipped
/// and explained in `notes` rather than thrown.
StudyResults compute_results(const Study& study, const RandomIndexTable& ri,
                             std::optional<double> threshold = std::nullopt);

ReportInput report_input(const Study& study, const StudyResults& results);
json to_json(const StudyResults& results);

/// Delphi state machine view of the study's pool, panel and rounds.
DelphiStudy delphi_state(const Study& study);
void store_delphi(Study& study, const DelphiStudy& delphi);

}  // namespace ahp
