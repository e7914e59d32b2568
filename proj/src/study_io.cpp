#include <algorithm>
#include <charconv>
#include <fstream>
#include <set>
#include <sstream>

#include "ahp/io.hpp"
#include "ahp/random_index.hpp"

namespace ahp {
namespace {

std::string summarize(ErrorCode code, const std::vector<SchemaIssue>& issues) {
  std::string msg = std::to_string(issues.size()) + " issue(s)";
  for (const auto& i : issues) msg += "; " + i.location + ": " + i.message;
  (void)code;
  return msg;
}

/// Collects issues while walking a document so one parse reports them all.
class Reader {
 public:
  std::vector<SchemaIssue> schema;
  std::vector<SchemaIssue> dangling;

  void bad(const std::string& loc, std::string msg) { schema.push_back({loc, std::move(msg)}); }
  void dangle(const std::string& loc, std::string msg) { dangling.push_back({loc, std::move(msg)}); }

  const json* field(const json& obj, const char* key, const std::string& loc, bool required) {
    if (obj.is_object()) {
      auto it = obj.find(key);
      if (it != obj.end()) return &*it;
    }
    if (required) bad(loc + "/" + key, "required field missing");
    return nullptr;
  }

  std::optional<std::string> text(const json* v, const std::string& loc) {
    if (!v) return std::nullopt;
    if (!v->is_string()) {
      bad(loc, "expected a string");
      return std::nullopt;
    }
    return v->get<std::string>();
  }

  std::optional<double> real(const json* v, const std::string& loc) {
    if (!v) return std::nullopt;
    if (v->is_number()) return v->get<double>();
    if (v->is_string()) {
      const std::string s = v->get<std::string>();
      double out = 0.0;
      auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
      if (ec == std::errc{} && p == s.data() + s.size()) return out;
    }
    bad(loc, "expected a real number");
    return std::nullopt;
  }

  std::optional<long long> integer(const json* v, const std::string& loc) {
    if (!v) return std::nullopt;
    if (v->is_number_integer()) return v->get<long long>();
    bad(loc, "expected an integer");
    return std::nullopt;
  }

  std::optional<bool> boolean(const json* v, const std::string& loc) {
    if (!v) return std::nullopt;
    if (v->is_boolean()) return v->get<bool>();
    bad(loc, "expected a boolean");
    return std::nullopt;
  }

  std::vector<std::string> strings(const json* v, const std::string& loc) {
    std::vector<std::string> out;
    if (!v) return out;
    if (!v->is_array()) {
      bad(loc, "expected an array of strings");
      return out;
    }
    for (std::size_t i = 0; i < v->size(); ++i) {
      if (auto s = text(&(*v)[i], loc + "/" + std::to_string(i))) out.push_back(*s);
    }
    return out;
  }

  bool expect(const json* v, bool (json::*pred)() const noexcept, const std::string& loc,
              const char* what) {
    if (!v) return false;
    if (!((*v).*pred)()) {
      bad(loc, std::string("expected ") + what);
      return false;
    }
    return true;
  }
};

std::string key_path(const std::string& base, const std::string& key) {
  // JSON pointer escaping
  std::string k;
  for (char c : key) {
    if (c == '~') k += "~0";
    else if (c == '/') k += "~1";
    else k += c;
  }
  return base + "/" + k;
}

StudyConfig parse_config(Reader& r, const json* cfg) {
  StudyConfig c;
  if (!r.expect(cfg, &json::is_object, "/config", "an object")) return c;
  const std::string loc = "/config";
  if (auto v = r.real(r.field(*cfg, "threshold", loc, false), loc + "/threshold")) {
    if (*v > 0.0 && *v <= 1.0) c.threshold = *v;
    else r.bad(loc + "/threshold", "must lie in (0, 1]");
  }
  if (auto v = r.real(r.field(*cfg, "retention_fraction", loc, false), loc + "/retention_fraction")) {
    if (*v > 0.0 && *v <= 1.0) c.retention_fraction = *v;
    else r.bad(loc + "/retention_fraction", "must lie in (0, 1]");
  }
  if (auto v = r.integer(r.field(*cfg, "max_rounds", loc, false), loc + "/max_rounds")) {
    if (*v >= 1) c.max_rounds = int(*v);
    else r.bad(loc + "/max_rounds", "must be at least 1");
  }
  if (auto v = r.text(r.field(*cfg, "method", loc, false), loc + "/method")) {
    if (*v == "eigenvector" || *v == "geometric") c.method = parse_priority_method(*v);
    else r.bad(loc + "/method", "must be 'eigenvector' or 'geometric'");
  }
  if (auto v = r.boolean(r.field(*cfg, "salvage_matrices", loc, false), loc + "/salvage_matrices"))
    c.salvage_matrices = *v;
  if (auto v = r.boolean(r.field(*cfg, "strict_scale", loc, false), loc + "/strict_scale"))
    c.strict_scale = *v;
  if (const json* ri = r.field(*cfg, "ri_table", loc, false)) {
    const std::string rloc = loc + "/ri_table";
    if (!r.expect(ri, &json::is_object, rloc, "an object")) return c;
    if (ri->contains("path")) {
      c.ri_table_path = r.text(&(*ri)["path"], rloc + "/path");
    } else {
      try {
        c.ri_table = random_index_table_from_json(*ri);
      } catch (const Error& e) {
        r.bad(rloc, e.what());
      }
    }
  }
  return c;
}

Hierarchy parse_hierarchy(Reader& r, const json& doc) {
  Hierarchy h;
  const json* node = r.field(doc, "hierarchy", "", true);
  if (!r.expect(node, &json::is_object, "/hierarchy", "an object")) return h;
  h.goal = r.text(r.field(*node, "goal", "/hierarchy", true), "/hierarchy/goal").value_or("");
  h.criteria = r.strings(r.field(*node, "criteria", "/hierarchy", true), "/hierarchy/criteria");
  h.alternatives =
      r.strings(r.field(*node, "alternatives", "/hierarchy", false), "/hierarchy/alternatives");
  try {
    h.validate();
  } catch (const Error& e) {
    r.bad("/hierarchy", e.what());
  }
  return h;
}

ItemPool parse_pool(Reader& r, const json* pool) {
  ItemPool out;
  if (!r.expect(pool, &json::is_array, "/item_pool", "an array")) return out;
  std::set<std::string> ids;
  for (std::size_t i = 0; i < pool->size(); ++i) {
    const std::string loc = "/item_pool/" + std::to_string(i);
    const json& item = (*pool)[i];
    if (!r.expect(&item, &json::is_object, loc, "an object")) continue;
    PoolItem p;
    p.id = r.text(r.field(item, "id", loc, true), loc + "/id").value_or("");
    p.name = r.text(r.field(item, "name", loc, false), loc + "/name").value_or("");
    p.description = r.text(r.field(item, "description", loc, false), loc + "/description").value_or("");
    p.sources = r.strings(r.field(item, "sources", loc, false), loc + "/sources");
    if (p.id.empty()) continue;
    if (!ids.insert(p.id).second) r.bad(loc + "/id", "duplicate item id '" + p.id + "'");
    out.items.push_back(std::move(p));
  }
  return out;
}

std::vector<Expert> parse_panel(Reader& r, const json* panel) {
  std::vector<Expert> out;
  if (!r.expect(panel, &json::is_array, "/panel", "an array")) return out;
  std::set<std::string> ids, tokens;
  for (std::size_t i = 0; i < panel->size(); ++i) {
    const std::string loc = "/panel/" + std::to_string(i);
    const json& e = (*panel)[i];
    if (!r.expect(&e, &json::is_object, loc, "an object")) continue;
    Expert x;
    x.id = r.text(r.field(e, "id", loc, true), loc + "/id").value_or("");
    x.token = r.text(r.field(e, "token", loc, false), loc + "/token").value_or("");
    x.group = r.text(r.field(e, "group", loc, false), loc + "/group").value_or("");
    if (x.id.empty()) continue;
    if (!ids.insert(x.id).second) r.bad(loc + "/id", "duplicate expert id '" + x.id + "'");
    if (!x.token.empty() && !tokens.insert(x.token).second) r.bad(loc + "/token", "duplicate token");
    out.push_back(std::move(x));
  }
  return out;
}

std::vector<DelphiRound> parse_rounds(Reader& r, const json* delphi, const ItemPool& pool,
                                      const std::vector<Expert>& panel) {
  std::vector<DelphiRound> out;
  if (!r.expect(delphi, &json::is_object, "/delphi", "an object")) return out;
  const json* rounds = r.field(*delphi, "rounds", "/delphi", false);
  if (!r.expect(rounds, &json::is_array, "/delphi/rounds", "an array")) return out;
  auto known_expert = [&](const std::string& id) {
    return std::any_of(panel.begin(), panel.end(), [&](const Expert& e) { return e.id == id; });
  };
  auto check_item = [&](const std::string& id, const std::string& loc) {
    if (!pool.contains(id)) r.dangle(loc, "unknown item '" + id + "'");
  };
  for (std::size_t i = 0; i < rounds->size(); ++i) {
    const std::string loc = "/delphi/rounds/" + std::to_string(i);
    const json& j = (*rounds)[i];
    if (!r.expect(&j, &json::is_object, loc, "an object")) continue;
    DelphiRound round;
    round.round_number = int(r.integer(r.field(j, "round", loc, true), loc + "/round").value_or(0));
    if (round.round_number != int(i) + 1) r.bad(loc + "/round", "rounds must be numbered 1..k");
    const std::string status =
        r.text(r.field(j, "status", loc, true), loc + "/status").value_or("closed");
    if (status == "open") {
      round.status = RoundStatus::Open;
      if (i + 1 != rounds->size()) r.bad(loc + "/status", "only the last round may be open");
    } else if (status == "closed") {
      round.status = RoundStatus::Closed;
    } else {
      r.bad(loc + "/status", "must be 'open' or 'closed'");
    }
    if (const json* votes = r.field(j, "votes", loc, false);
        r.expect(votes, &json::is_object, loc + "/votes", "an object")) {
      for (const auto& [expert, sel] : votes->items()) {
        const std::string vloc = key_path(loc + "/votes", expert);
        if (!known_expert(expert)) r.dangle(vloc, "unknown expert '" + expert + "'");
        ItemSet items;
        for (const auto& item : r.strings(&sel, vloc)) {
          check_item(item, vloc);
          items.insert(item);
        }
        round.votes[expert] = std::move(items);
      }
    }
    round.comments = r.strings(r.field(j, "comments", loc, false), loc + "/comments");
    std::sort(round.comments.begin(), round.comments.end());
    if (const json* fb = r.field(j, "feedback", loc, false);
        r.expect(fb, &json::is_object, loc + "/feedback", "an object")) {
      for (const auto& [item, count] : fb->items()) {
        const std::string floc = key_path(loc + "/feedback", item);
        check_item(item, floc);
        if (auto c = r.integer(&count, floc)) round.feedback[item] = int(*c);
      }
    }
    for (const auto& item : r.strings(r.field(j, "retained", loc, false), loc + "/retained")) {
      check_item(item, loc + "/retained");
      round.retained.insert(item);
    }
    round.converged =
        r.boolean(r.field(j, "converged", loc, false), loc + "/converged").value_or(false);
    out.push_back(std::move(round));
  }
  return out;
}

std::optional<PairwiseMatrixd> parse_matrix(Reader& r, const json& j, const std::string& loc,
                                            const Hierarchy& h, const StudyConfig& cfg,
                                            std::string& node) {
  node = r.text(r.field(j, "node", loc, true), loc + "/node").value_or("");
  if (node.empty()) return std::nullopt;
  if (!h.is_node(node)) {
    r.dangle(loc + "/node", "unknown node '" + node + "'");
    return std::nullopt;
  }
  const auto& children = h.children(node);
  if (children.empty()) {
    r.bad(loc + "/node", "node '" + node + "' has no children to compare");
    return std::nullopt;
  }
  try {
    if (const json* rows = r.field(j, "rows", loc, false)) {
      return ingest_questionnaire(rows_from_json(*rows), children);
    }
    const json* entries = r.field(j, "entries", loc, true);
    if (!r.expect(entries, &json::is_array, loc + "/entries", "an array")) return std::nullopt;
    std::vector<UpperEntry<double>> upper;
    bool ok = true;
    for (std::size_t k = 0; k < entries->size(); ++k) {
      const std::string eloc = loc + "/entries/" + std::to_string(k);
      const json& e = (*entries)[k];
      if (!e.is_array() || e.size() != 3 || !e[0].is_number_integer() ||
          !e[1].is_number_integer()) {
        r.bad(eloc, "expected [row, col, value]");
        ok = false;
        continue;
      }
      auto v = r.real(&e[2], eloc + "/2");
      if (!v) {
        ok = false;
        continue;
      }
      if (cfg.strict_scale && !JudgmentScale::saaty(true).is_level(*v)) {
        r.bad(eloc, "value is not a scale level (strict_scale)");
        ok = false;
      }
      upper.push_back({e[0].get<Index>(), e[1].get<Index>(), *v});
    }
    if (!ok) return std::nullopt;
    return PairwiseMatrixd::from_upper_triangle(Index(children.size()), upper, children);
  } catch (const Error& e) {
    if (e.code() == ErrorCode::DanglingReference) r.dangle(loc, e.what());
    else r.bad(loc, e.what());
  }
  return std::nullopt;
}

std::vector<JudgmentSet> parse_judgments(Reader& r, const json* judgments, const Hierarchy& h,
                                         const StudyConfig& cfg) {
  std::vector<JudgmentSet> out;
  if (!r.expect(judgments, &json::is_array, "/judgments", "an array")) return out;
  std::set<std::string> ids;
  for (std::size_t i = 0; i < judgments->size(); ++i) {
    const std::string loc = "/judgments/" + std::to_string(i);
    const json& j = (*judgments)[i];
    if (!r.expect(&j, &json::is_object, loc, "an object")) continue;
    JudgmentSet set;
    set.respondent_id = r.text(r.field(j, "respondent", loc, true), loc + "/respondent").value_or("");
    set.group_id = r.text(r.field(j, "group", loc, false), loc + "/group").value_or("");
    set.submitted_at =
        r.text(r.field(j, "submitted_at", loc, false), loc + "/submitted_at").value_or("");
    if (!set.respondent_id.empty() && !ids.insert(set.respondent_id).second) {
      r.bad(loc + "/respondent", "duplicate respondent '" + set.respondent_id + "'");
    }
    const json* matrices = r.field(j, "matrices", loc, true);
    if (r.expect(matrices, &json::is_array, loc + "/matrices", "an array")) {
      for (std::size_t k = 0; k < matrices->size(); ++k) {
        const std::string mloc = loc + "/matrices/" + std::to_string(k);
        std::string node;
        if (auto m = parse_matrix(r, (*matrices)[k], mloc, h, cfg, node)) {
          if (!set.matrices.emplace(node, std::move(*m)).second) {
            r.bad(mloc + "/node", "node '" + node + "' given twice");
          }
        }
      }
    }
    out.push_back(std::move(set));
  }
  return out;
}

std::optional<PriorityVectord> parse_direct_vector(Reader& r, const json* obj,
                                                   const std::vector<std::string>& labels,
                                                   const std::string& loc) {
  if (!r.expect(obj, &json::is_object, loc, "an object of name -> weight")) return std::nullopt;
  VectorX<double> w(Index(labels.size()));
  bool ok = true;
  for (std::size_t i = 0; i < labels.size(); ++i) {
    auto it = obj->find(labels[i]);
    if (it == obj->end()) {
      r.bad(loc, "missing weight for '" + labels[i] + "'");
      ok = false;
      continue;
    }
    if (auto v = r.real(&*it, key_path(loc, labels[i]))) w(Index(i)) = *v;
    else ok = false;
  }
  for (const auto& [name, value] : obj->items()) {
    if (std::find(labels.begin(), labels.end(), name) == labels.end()) {
      r.dangle(key_path(loc, name), "unknown name '" + name + "'");
      ok = false;
    }
  }
  if (!ok) return std::nullopt;
  return PriorityVectord{std::move(w), labels, PriorityMethod::Direct};
}

GroupMap parse_groups(Reader& r, const json* groups, const Hierarchy& h) {
  GroupMap out;
  if (!r.expect(groups, &json::is_array, "/groups", "an array")) return out;
  std::map<std::string, std::string> owner;
  for (std::size_t i = 0; i < groups->size(); ++i) {
    const std::string loc = "/groups/" + std::to_string(i);
    const json& g = (*groups)[i];
    if (!r.expect(&g, &json::is_object, loc, "an object")) continue;
    const std::string name = r.text(r.field(g, "name", loc, true), loc + "/name").value_or("");
    auto members = r.strings(r.field(g, "members", loc, true), loc + "/members");
    for (const auto& m : members) {
      if (std::find(h.alternatives.begin(), h.alternatives.end(), m) == h.alternatives.end()) {
        r.dangle(loc + "/members", "unknown alternative '" + m + "'");
      } else if (auto [it, ok] = owner.emplace(m, name); !ok) {
        r.bad(loc + "/members", "'" + m + "' already in group '" + it->second + "'");
      }
    }
    out.emplace_back(name, std::move(members));
  }
  return out;
}

json real_json(double v) { return v; }

}  // namespace

StudyError::StudyError(ErrorCode code, std::vector<SchemaIssue> issues)
    : Error(code, summarize(code, issues)), issues_(std::move(issues)) {}

const Expert* Study::expert_by_token(const std::string& token) const {
  if (token.empty()) return nullptr;
  for (const auto& e : panel)
    if (e.token == token) return &e;
  return nullptr;
}

const Expert* Study::expert(const std::string& id) const {
  for (const auto& e : panel)
    if (e.id == id) return &e;
  return nullptr;
}

Study parse_study(const json& doc) {
  if (!doc.is_object()) {
    throw StudyError(ErrorCode::SchemaViolation, {{"", "study document must be a JSON object"}});
  }
  auto version = doc.find("schema_version");
  if (version == doc.end()) {
    throw StudyError(ErrorCode::VersionUnsupported, {{"/schema_version", "missing"}});
  }
  if (!version->is_number_integer() || version->get<long long>() != kStudySchemaVersion) {
    throw StudyError(ErrorCode::VersionUnsupported,
                     {{"/schema_version", "unsupported version " + version->dump() +
                                              " (expected " +
                                              std::to_string(kStudySchemaVersion) + ")"}});
  }

  Reader r;
  Study s;
  s.title = r.text(r.field(doc, "title", "", false), "/title").value_or("");
  s.config = parse_config(r, r.field(doc, "config", "", false));
  s.hierarchy = parse_hierarchy(r, doc);
  s.item_pool = parse_pool(r, r.field(doc, "item_pool", "", false));
  s.panel = parse_panel(r, r.field(doc, "panel", "", false));
  s.rounds = parse_rounds(r, r.field(doc, "delphi", "", false), s.item_pool, s.panel);
  s.judgments = parse_judgments(r, r.field(doc, "judgments", "", false), s.hierarchy, s.config);

  if (const json* lp = r.field(doc, "local_priorities", "", false);
      r.expect(lp, &json::is_object, "/local_priorities", "an object")) {
    if (const json* cw = r.field(*lp, "criteria_weights", "/local_priorities", false)) {
      s.criteria_weights =
          parse_direct_vector(r, cw, s.hierarchy.criteria, "/local_priorities/criteria_weights");
    }
    if (const json* alts = r.field(*lp, "alternatives", "/local_priorities", false);
        r.expect(alts, &json::is_object, "/local_priorities/alternatives", "an object")) {
      for (const auto& [criterion, vec] : alts->items()) {
        const std::string loc = key_path("/local_priorities/alternatives", criterion);
        const auto& crit = s.hierarchy.criteria;
        if (std::find(crit.begin(), crit.end(), criterion) == crit.end()) {
          r.dangle(loc, "unknown criterion '" + criterion + "'");
          continue;
        }
        if (auto v = parse_direct_vector(r, &vec, s.hierarchy.alternatives, loc)) {
          s.alternative_priorities.emplace(criterion, std::move(*v));
        }
      }
    }
  }
  s.groups = parse_groups(r, r.field(doc, "groups", "", false), s.hierarchy);

  if (!r.schema.empty()) {
    r.schema.insert(r.schema.end(), r.dangling.begin(), r.dangling.end());
    throw StudyError(ErrorCode::SchemaViolation, std::move(r.schema));
  }
  if (!r.dangling.empty()) throw StudyError(ErrorCode::DanglingReference, std::move(r.dangling));
  return s;
}

Study parse_study_text(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw StudyError(ErrorCode::SchemaViolation,
                     {{"byte " + std::to_string(e.byte), "malformed JSON: " + std::string(e.what())}});
  }
  return parse_study(doc);
}

json emit_study(const Study& s) {
  json doc;
  doc["schema_version"] = s.schema_version;
  if (!s.title.empty()) doc["title"] = s.title;
  doc["hierarchy"] = {{"goal", s.hierarchy.goal},
                      {"criteria", s.hierarchy.criteria},
                      {"alternatives", s.hierarchy.alternatives}};
  if (!s.item_pool.items.empty()) {
    json pool = json::array();
    for (const auto& i : s.item_pool.items) {
      pool.push_back({{"id", i.id}, {"name", i.name}, {"description", i.description},
                      {"sources", i.sources}});
    }
    doc["item_pool"] = std::move(pool);
  }
  if (!s.panel.empty()) {
    json panel = json::array();
    for (const auto& e : s.panel) panel.push_back({{"id", e.id}, {"token", e.token}, {"group", e.group}});
    doc["panel"] = std::move(panel);
  }
  if (!s.rounds.empty()) {
    json rounds = json::array();
    for (const auto& rd : s.rounds) {
      json votes = json::object();
      for (const auto& [expert, sel] : rd.votes) votes[expert] = json(std::vector<std::string>(sel.begin(), sel.end()));
      json feedback = json::object();
      for (const auto& [item, count] : rd.feedback) feedback[item] = count;
      rounds.push_back({{"round", rd.round_number},
                        {"status", std::string(to_string(rd.status))},
                        {"votes", std::move(votes)},
                        {"comments", rd.comments},
                        {"feedback", std::move(feedback)},
                        {"retained", std::vector<std::string>(rd.retained.begin(), rd.retained.end())},
                        {"converged", rd.converged}});
    }
    doc["delphi"] = {{"rounds", std::move(rounds)}};
  }
  if (!s.judgments.empty()) {
    json sets = json::array();
    for (const auto& set : s.judgments) {
      json matrices = json::array();
      for (const auto& [node, m] : set.matrices) {
        json entries = json::array();
        for (const auto& e : m.upper_triangle()) entries.push_back({e.row, e.col, real_json(e.value)});
        matrices.push_back({{"node", node}, {"entries", std::move(entries)}});
      }
      sets.push_back({{"respondent", set.respondent_id},
                      {"group", set.group_id},
                      {"submitted_at", set.submitted_at},
                      {"matrices", std::move(matrices)}});
    }
    doc["judgments"] = std::move(sets);
  }
  if (s.criteria_weights || !s.alternative_priorities.empty()) {
    auto vec = [](const PriorityVectord& v) {
      json o = json::object();
      for (Index i = 0; i < v.size(); ++i) o[v.labels[std::size_t(i)]] = real_json(v.weights(i));
      return o;
    };
    json lp = json::object();
    if (s.criteria_weights) lp["criteria_weights"] = vec(*s.criteria_weights);
    if (!s.alternative_priorities.empty()) {
      json alts = json::object();
      for (const auto& c : s.hierarchy.criteria) {
        if (auto it = s.alternative_priorities.find(c); it != s.alternative_priorities.end())
          alts[c] = vec(it->second);
      }
      lp["alternatives"] = std::move(alts);
    }
    doc["local_priorities"] = std::move(lp);
  }
  if (!s.groups.empty()) {
    json groups = json::array();
    for (const auto& [name, members] : s.groups) groups.push_back({{"name", name}, {"members", members}});
    doc["groups"] = std::move(groups);
  }
  json cfg = {{"threshold", s.config.threshold},
              {"retention_fraction", s.config.retention_fraction},
              {"max_rounds", s.config.max_rounds},
              {"method", std::string(to_string(s.config.method))},
              {"salvage_matrices", s.config.salvage_matrices},
              {"strict_scale", s.config.strict_scale}};
  if (s.config.ri_table_path) {
    cfg["ri_table"] = {{"path", *s.config.ri_table_path}};
  } else if (s.config.ri_table) {
    cfg["ri_table"] = random_index_table_to_json(*s.config.ri_table);
  }
  doc["config"] = std::move(cfg);
  return doc;
}

Study read_study_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::Io, "cannot read " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_study_text(buf.str());
}

void write_text_atomic(const std::filesystem::path& path, const std::string& text) {
  std::filesystem::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error(ErrorCode::Io, "cannot write " + tmp.string());
    out << text;
    out.flush();
    if (!out) throw Error(ErrorCode::Io, "short write to " + tmp.string());
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) throw Error(ErrorCode::Io, "cannot replace " + path.string() + ": " + ec.message());
}

void write_study_file(const std::filesystem::path& path, const Study& study) {
  write_text_atomic(path, emit_study(study).dump(2) + "\n");
}

json random_index_table_to_json(const RandomIndexTable& table, std::span<const RIEstimate> details) {
  json values = json::object();
  for (const auto& [n, ri] : table.values()) values[std::to_string(n)] = ri;
  json out = {{"kind", "random_index_table"},
              {"provenance", std::string(to_string(table.provenance()))},
              {"values", std::move(values)}};
  if (!details.empty()) {
    json est = json::array();
    for (const auto& e : details) {
      est.push_back({{"n", e.n}, {"mean_ci", e.mean_ci}, {"samples", e.samples},
                     {"std_error", e.std_error}, {"seed", e.seed}});
    }
    out["estimates"] = std::move(est);
  }
  return out;
}

RandomIndexTable random_index_table_from_json(const json& doc) {
  if (!doc.is_object() || !doc.contains("values") || !doc["values"].is_object()) {
    throw Error(ErrorCode::SchemaViolation, "random index table needs a 'values' object");
  }
  RIProvenance provenance = RIProvenance::UserSupplied;
  if (doc.contains("provenance")) {
    const json& p = doc["provenance"];
    if (p == "derived_monte_carlo") provenance = RIProvenance::DerivedMonteCarlo;
    else if (p != "user_supplied") throw Error(ErrorCode::SchemaViolation, "unknown provenance");
  }
  std::map<int, double> values;
  for (const auto& [key, value] : doc["values"].items()) {
    int n = 0;
    auto [p, ec] = std::from_chars(key.data(), key.data() + key.size(), n);
    if (ec != std::errc{} || p != key.data() + key.size() || !value.is_number()) {
      throw Error(ErrorCode::SchemaViolation, "bad random index entry '" + key + "'");
    }
    values[n] = value.get<double>();
  }
  try {
    return RandomIndexTable(std::move(values), provenance);
  } catch (const Error& e) {
    throw Error(ErrorCode::SchemaViolation, e.what());
  }
}

}  // namespace ahp
