#include <algorithm>
#include <cmath>
#include <map>
#include <sstream>

#include "ahp/io.hpp"

namespace ahp {

std::string_view to_string(Side side) noexcept { return side == Side::First ? "first" : "second"; }

Side parse_side(std::string_view text) {
  if (text == "first") return Side::First;
  if (text == "second") return Side::Second;
  throw Error(ErrorCode::SchemaViolation, "side must be 'first' or 'second'");
}

PairwiseMatrixd ingest_questionnaire(std::span<const QuestionnaireRow> rows,
                                     const std::vector<std::string>& children) {
  auto index_of = [&](const std::string& name) -> Index {
    auto it = std::find(children.begin(), children.end(), name);
    if (it == children.end()) {
      throw Error(ErrorCode::DanglingReference, "unknown component '" + name + "'");
    }
    return Index(it - children.begin());
  };
  std::vector<UpperEntry<double>> upper;
  for (const auto& row : rows) {
    if (row.magnitude < 1 || row.magnitude > 9) {
      throw Error(ErrorCode::BadMagnitude, "magnitude " + std::to_string(row.magnitude) +
                                               " outside 1..9 for (" + row.first + ", " +
                                               row.second + ")");
    }
    const Index a = index_of(row.first);
    const Index b = index_of(row.second);
    if (a == b) {
      throw Error(ErrorCode::SchemaViolation, "'" + row.first + "' compared with itself");
    }
    const double first_over_second =
        row.side == Side::First ? double(row.magnitude) : 1.0 / row.magnitude;
    if (a < b) {
      upper.push_back({a, b, first_over_second});
    } else {
      upper.push_back({b, a, 1.0 / first_over_second});
    }
  }
  return PairwiseMatrixd::from_upper_triangle(Index(children.size()), upper, children);
}

std::vector<QuestionnaireRow> to_questionnaire_rows(const PairwiseMatrixd& m) {
  std::vector<QuestionnaireRow> out;
  for (const auto& e : m.upper_triangle()) {
    const bool first = e.value >= 1.0;
    const double magnitude = first ? e.value : 1.0 / e.value;
    const double rounded = std::round(magnitude);
    if (rounded < 1 || rounded > 9 || std::abs(magnitude - rounded) > 1e-9 * rounded) {
      throw Error(ErrorCode::BadMagnitude, "entry (" + m.labels()[std::size_t(e.row)] + ", " +
                                               m.labels()[std::size_t(e.col)] +
                                               ") is not a scale level");
    }
    out.push_back({m.labels()[std::size_t(e.row)], m.labels()[std::size_t(e.col)],
                   first ? Side::First : Side::Second, int(rounded)});
  }
  return out;
}

json rows_to_json(std::span<const QuestionnaireRow> rows) {
  json out = json::array();
  for (const auto& r : rows) {
    out.push_back({{"first", r.first},
                   {"second", r.second},
                   {"side", std::string(to_string(r.side))},
                   {"magnitude", r.magnitude}});
  }
  return out;
}

std::vector<QuestionnaireRow> rows_from_json(const json& rows) {
  if (!rows.is_array()) throw Error(ErrorCode::SchemaViolation, "rows must be an array");
  std::vector<QuestionnaireRow> out;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const json& r = rows[i];
    const std::string where = "row " + std::to_string(i) + ": ";
    if (!r.is_object() || !r.contains("first") || !r.contains("second") ||
        !r.contains("magnitude") || !r["first"].is_string() || !r["second"].is_string()) {
      throw Error(ErrorCode::SchemaViolation, where + "needs first, second and magnitude");
    }
    const json& mag = r["magnitude"];
    if (!mag.is_number_integer()) {
      throw Error(ErrorCode::BadMagnitude, where + "magnitude must be an integer 1..9");
    }
    QuestionnaireRow row;
    row.first = r["first"].get<std::string>();
    row.second = r["second"].get<std::string>();
    row.magnitude = mag.get<int>();
    if (r.contains("side")) {
      if (!r["side"].is_string()) throw Error(ErrorCode::SchemaViolation, where + "bad side");
      row.side = parse_side(r["side"].get<std::string>());
    } else if (row.magnitude != 1) {
      throw Error(ErrorCode::SchemaViolation, where + "side required unless magnitude is 1");
    }
    out.push_back(std::move(row));
  }
  return out;
}

namespace {

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> fields;
  std::string field;
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char c = line[i];
    if (quoted) {
      if (c == '"' && i + 1 < line.size() && line[i + 1] == '"') {
        field += '"';
        ++i;
      } else if (c == '"') {
        quoted = false;
      } else {
        field += c;
      }
    } else if (c == '"') {
      quoted = true;
    } else if (c == ',') {
      fields.push_back(std::move(field));
      field.clear();
    } else {
      field += c;
    }
  }
  fields.push_back(std::move(field));
  for (auto& f : fields) {
    const auto b = f.find_first_not_of(" \t");
    const auto e = f.find_last_not_of(" \t");
    f = b == std::string::npos ? std::string() : f.substr(b, e - b + 1);
  }
  return fields;
}

}  // namespace

std::vector<JudgmentSet> parse_judgments_csv(const std::string& text, const Hierarchy& h) {
  std::istringstream in(text);
  std::string line;
  std::vector<SchemaIssue> schema, dangling;
  std::map<std::string, std::size_t> column;
  int line_no = 0;

  struct Pending {
    std::string respondent, group, submitted_at;
    std::vector<std::string> node_order;
    std::map<std::string, std::vector<QuestionnaireRow>> rows;
    std::map<std::string, int> first_line;
  };
  std::vector<Pending> pending;
  std::map<std::string, std::size_t> by_respondent;

  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.find_first_not_of(" \t") == std::string::npos) continue;
    const auto fields = split_csv_line(line);
    const std::string where = "line " + std::to_string(line_no);
    if (column.empty()) {
      for (std::size_t i = 0; i < fields.size(); ++i) column[fields[i]] = i;
      for (const char* required : {"respondent", "node", "first", "second", "side", "magnitude"}) {
        if (!column.count(required)) {
          throw StudyError(ErrorCode::SchemaViolation,
                           {{where, std::string("missing column '") + required + "'"}});
        }
      }
      continue;
    }
    auto get = [&](const char* name) -> std::string {
      auto it = column.find(name);
      if (it == column.end() || it->second >= fields.size()) return {};
      return fields[it->second];
    };
    if (fields.size() < column.size()) {
      schema.push_back({where, "expected " + std::to_string(column.size()) + " fields"});
      continue;
    }
    QuestionnaireRow row;
    row.first = get("first");
    row.second = get("second");
    const std::string side = get("side");
    const std::string magnitude = get("magnitude");
    try {
      std::size_t used = 0;
      row.magnitude = std::stoi(magnitude, &used);
      if (used != magnitude.size()) throw std::invalid_argument("trailing");
    } catch (const std::exception&) {
      schema.push_back({where, "magnitude '" + magnitude + "' is not an integer"});
      continue;
    }
    if (side.empty() && row.magnitude == 1) {
      row.side = Side::First;
    } else if (side == "first" || side == "second") {
      row.side = parse_side(side);
    } else {
      schema.push_back({where, "side '" + side + "' must be first or second"});
      continue;
    }
    const std::string respondent = get("respondent");
    const std::string node = get("node");
    if (respondent.empty()) {
      schema.push_back({where, "respondent is empty"});
      continue;
    }
    if (!h.is_node(node)) {
      dangling.push_back({where, "unknown node '" + node + "'"});
      continue;
    }
    auto [it, inserted] = by_respondent.emplace(respondent, pending.size());
    if (inserted) pending.push_back({respondent, get("group"), get("submitted_at"), {}, {}, {}});
    Pending& p = pending[it->second];
    if (!p.rows.count(node)) {
      p.node_order.push_back(node);
      p.first_line[node] = line_no;
    }
    p.rows[node].push_back(std::move(row));
  }

  std::vector<JudgmentSet> out;
  for (auto& p : pending) {
    JudgmentSet set{p.respondent, p.group, {}, p.submitted_at};
    for (const auto& node : p.node_order) {
      const std::string where = "line " + std::to_string(p.first_line[node]);
      try {
        set.matrices.emplace(node, ingest_questionnaire(p.rows[node], h.children(node)));
      } catch (const Error& e) {
        auto& sink = e.code() == ErrorCode::DanglingReference ? dangling : schema;
        sink.push_back({where, "respondent '" + p.respondent + "', node '" + node + "': " + e.what()});
      }
    }
    out.push_back(std::move(set));
  }
  if (!schema.empty()) {
    schema.insert(schema.end(), dangling.begin(), dangling.end());
    throw StudyError(ErrorCode::SchemaViolation, std::move(schema));
  }
  if (!dangling.empty()) throw StudyError(ErrorCode::DanglingReference, std::move(dangling));
  return out;
}

}  // namespace ahp
