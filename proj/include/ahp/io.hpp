#pragma once

#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "json.hpp"

#include "ahp/delphi.hpp"
#include "ahp/group.hpp"
#include "ahp/hierarchy.hpp"
#include "ahp/random_index.hpp"
#include "ahp/priority.hpp"

namespace ahp {

using json = nlohmann::ordered_json;

inline constexpr int kStudySchemaVersion = 1;

struct Expert {
  std::string id;
  std::string token;  // opaque, pre-issued; authenticates the expert to the service
  std::string group;

  friend bool operator==(const Expert&, const Expert&) = default;
};

struct StudyConfig {
  double threshold = kDefaultCrThreshold;
  double retention_fraction = 0.5;
  int max_rounds = 5;
  PriorityMethod method = PriorityMethod::Eigenvector;
  bool salvage_matrices = false;
  bool strict_scale = true;  // judgment entries must be scale levels
  std::optional<std::string> ri_table_path;
  std::optional<RandomIndexTable> ri_table;

  friend bool operator==(const StudyConfig&, const StudyConfig&) = default;
};

/// Everything a study carries, in one versioned document.
struct Study {
  int schema_version = kStudySchemaVersion;
  std::string title;
  Hierarchy hierarchy;
  ItemPool item_pool;
  std::vector<Expert> panel;
  std::vector<DelphiRound> rounds;
  std::vector<JudgmentSet> judgments;
  // Directly supplied local priorities (alternative to pairwise judgments).
  std::optional<PriorityVectord> criteria_weights;
  std::map<std::string, PriorityVectord> alternative_priorities;
  GroupMap groups;
  StudyConfig config;

  const Expert* expert_by_token(const std::string& token) const;
  const Expert* expert(const std::string& id) const;

  friend bool operator==(const Study&, const Study&) = default;
};

struct SchemaIssue {
  std::string location;  // JSON pointer, or "line N" for CSV
  std::string message;
};

/// Parse failure carrying every issue found, not only the first.
class StudyError : public Error {
 public:
  StudyError(ErrorCode code, std::vector<SchemaIssue> issues);
  const std::vector<SchemaIssue>& issues() const noexcept { return issues_; }

 private:
  std::vector<SchemaIssue> issues_;
};

/// Throws StudyError with VersionUnsupported, SchemaViolation or
/// DanglingReference.
Study parse_study(const json& document);
Study parse_study_text(const std::string& text);
json emit_study(const Study& study);

Study read_study_file(const std::filesystem::path& path);
void write_study_file(const std::filesystem::path& path, const Study& study);
/// Write to a sibling temp file, then rename over `path`.
void write_text_atomic(const std::filesystem::path& path, const std::string& text);

// Questionnaire rows ------------------------------------------------------

enum class Side { First, Second };

std::string_view to_string(Side side) noexcept;
Side parse_side(std::string_view text);

/// One line of the two-sided 9..1..9 instrument. A mark on the first
/// component's side means the first is preferred by `magnitude`.
struct QuestionnaireRow {
  std::string first;
  std::string second;
  Side side = Side::First;
  int magnitude = 1;

  friend bool operator==(const QuestionnaireRow&, const QuestionnaireRow&) = default;
};

/// side=first => X(first, second) = magnitude; side=second => 1/magnitude.
/// Rows must cover every unordered pair of `children` exactly once.
PairwiseMatrixd ingest_questionnaire(std::span<const QuestionnaireRow> rows,
                                     const std::vector<std::string>& children);

/// Upper-triangle rows of a scale-valued matrix. Throws BadMagnitude when an
/// entry is not an integer level or its reciprocal.
std::vector<QuestionnaireRow> to_questionnaire_rows(const PairwiseMatrixd& m);

json rows_to_json(std::span<const QuestionnaireRow> rows);
std::vector<QuestionnaireRow> rows_from_json(const json& rows);

/// CSV bulk import: header naming at least respondent,node,first,second,side,
/// magnitude (optional group, submitted_at). Rows group into JudgmentSets in
/// order of first appearance.
std::vector<JudgmentSet> parse_judgments_csv(const std::string& text, const Hierarchy& h);

// Random index tables ----------------------------------------------------

json random_index_table_to_json(const RandomIndexTable& table,
                                std::span<const RIEstimate> details = {});
RandomIndexTable random_index_table_from_json(const json& document);

// Reports -----------------------------------------------------------------

struct ReportInput {
  std::optional<PriorityVectord> criteria_weights;
  std::optional<FilterReport> filter;
  std::optional<Hierarchy> hierarchy;
  std::optional<LocalPriorities> local;
  std::optional<GlobalScores> scores;
  std::optional<GroupRollup> rollup;
};

struct Report {
  json document;
  std::string table;  // human-readable, 3-decimal half-up
};

Report emit_report(const ReportInput& input, int decimals = 3);

json to_json(const PriorityVectord& v);
json to_json(const ConsistencyReport& r);
json to_json(const FilterReport& r);
json to_json(const GlobalScores& s);
json to_json(const GroupRollup& r);

}  // namespace ahp
