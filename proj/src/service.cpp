#include "ahp/service.hpp"

#include <chrono>
#include <ctime>
#include <mutex>
#include <set>

#include "httplib.h"

namespace ahp {
namespace {

Response error(int status, const std::string& message, json violations = json()) {
  json body = {{"error", message}};
  if (!violations.is_null()) body["violations"] = std::move(violations);
  return {status, std::move(body)};
}

int status_for(ErrorCode code) {
  switch (code) {
    case ErrorCode::UnknownExpert: return 401;
    case ErrorCode::RoundClosed:
    case ErrorCode::NoOpenRound:
    case ErrorCode::PreviousRoundOpen:
    case ErrorCode::MaxRoundsExceeded:
    case ErrorCode::NoVotes: return 409;
    case ErrorCode::Io: return 500;
    default: return 422;
  }
}

std::string utc_now() {
  const std::time_t t = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

std::string token_of(const json& body) {
  if (body.is_object() && body.contains("token") && body["token"].is_string())
    return body["token"].get<std::string>();
  return {};
}

}  // namespace

Session::Session(Study study, std::optional<std::filesystem::path> snapshot_path,
                 std::optional<RandomIndexTable> ri, std::string facilitator_token)
    : study_(std::move(study)),
      snapshot_path_(std::move(snapshot_path)),
      ri_(ri ? std::move(*ri) : RandomIndexTable::builtin()),
      facilitator_token_(std::move(facilitator_token)) {}

std::uint64_t Session::revision() const {
  std::shared_lock lock(mutex_);
  return revision_;
}

Study Session::study() const {
  std::shared_lock lock(mutex_);
  return study_;
}

// Caller holds the unique lock.
Response Session::commit(Study next, json body) {
  if (snapshot_path_) {
    try {
      write_study_file(*snapshot_path_, next);
    } catch (const Error& e) {
      return error(500, std::string("snapshot failed: ") + e.what());
    }
  }
  study_ = std::move(next);
  ++revision_;
  body["revision"] = revision_;
  return {200, std::move(body)};
}

bool Session::facilitator_ok(const json& body) const {
  return facilitator_token_.empty() || token_of(body) == facilitator_token_;
}

Response Session::get_study() const {
  std::shared_lock lock(mutex_);
  const Study& s = study_;
  json pool = json::array();
  for (const auto& i : s.item_pool.items) {
    pool.push_back({{"id", i.id}, {"name", i.name}, {"description", i.description}});
  }
  json rounds = json::array();
  json open_round = nullptr;
  for (const auto& r : s.rounds) {
    rounds.push_back({{"round", r.round_number}, {"status", std::string(to_string(r.status))},
                      {"voters", r.votes.size()}});
    if (r.status == RoundStatus::Open) open_round = r.round_number;
  }
  json body = {{"schema_version", s.schema_version},
               {"title", s.title},
               {"hierarchy",
                {{"goal", s.hierarchy.goal},
                 {"criteria", s.hierarchy.criteria},
                 {"alternatives", s.hierarchy.alternatives}}},
               {"item_pool", std::move(pool)},
               {"delphi", {{"rounds", std::move(rounds)}, {"open_round", open_round}}},
               {"config",
                {{"threshold", s.config.threshold},
                 {"method", std::string(to_string(s.config.method))},
                 {"scale", {1, 2, 3, 4, 5, 6, 7, 8, 9}}}},
               {"revision", revision_}};
  return {200, std::move(body)};
}

Response Session::post_judgments(const json& body) {
  std::unique_lock lock(mutex_);
  const Expert* expert = study_.expert_by_token(token_of(body));
  if (!expert) return error(401, "unknown token");
  if (!body.contains("node") || !body["node"].is_string()) {
    return error(422, "invalid submission", json::array({{{"field", "node"}, {"message", "required"}}}));
  }
  const std::string node = body["node"].get<std::string>();
  if (!study_.hierarchy.is_node(node)) {
    return error(422, "invalid submission",
                 json::array({{{"field", "node"}, {"message", "unknown node '" + node + "'"}}}));
  }
  const auto& children = study_.hierarchy.children(node);
  if (children.empty()) {
    return error(422, "invalid submission",
                 json::array({{{"field", "node"}, {"message", "node has no children"}}}));
  }
  std::optional<PairwiseMatrixd> matrix;
  try {
    matrix = ingest_questionnaire(rows_from_json(body.value("rows", json())), children);
  } catch (const Error& e) {
    return error(422, "invalid submission",
                 json::array({{{"field", "rows"},
                               {"code", std::string(to_string(e.code()))},
                               {"message", e.what()}}}));
  }

  Analysis<double> analysis;
  try {
    analysis = analyze(*matrix, study_.config.method, ri_, study_.config.threshold);
  } catch (const Error& e) {
    return error(422, e.what());
  }

  Study next = study_;
  auto it = std::find_if(next.judgments.begin(), next.judgments.end(),
                         [&](const JudgmentSet& s) { return s.respondent_id == expert->id; });
  if (it == next.judgments.end()) {
    next.judgments.push_back({expert->id, expert->group, {}, {}});
    it = std::prev(next.judgments.end());
  }
  it->matrices.insert_or_assign(node, *matrix);
  it->submitted_at = body.value("submitted_at", utc_now());

  json reply = {{"stored", true},
                {"node", node},
                {"weights", to_json(analysis.priorities)},
                {"consistency", to_json(analysis.consistency)}};
  return commit(std::move(next), std::move(reply));
}

Response Session::delphi_open(const json& body) {
  std::unique_lock lock(mutex_);
  if (!facilitator_ok(body)) return error(401, "facilitator token required");
  try {
    DelphiStudy delphi = delphi_state(study_);
    const int round = delphi.open_round().round_number;
    Study next = study_;
    store_delphi(next, delphi);
    return commit(std::move(next), {{"round", round}, {"status", "open"}});
  } catch (const Error& e) {
    return error(status_for(e.code()), e.what());
  }
}

Response Session::delphi_vote(const json& body) {
  std::unique_lock lock(mutex_);
  const Expert* expert = study_.expert_by_token(token_of(body));
  if (!expert) return error(401, "unknown token");
  const json items = body.value("items", json());
  if (!items.is_array()) return error(422, "items must be an array of item ids");
  ItemSet selection;
  for (const auto& i : items) {
    if (!i.is_string()) return error(422, "items must be an array of item ids");
    selection.insert(i.get<std::string>());
  }
  std::optional<std::string> comment;
  if (body.contains("comment") && body["comment"].is_string()) comment = body["comment"].get<std::string>();
  try {
    DelphiStudy delphi = delphi_state(study_);
    delphi.record_vote(expert->id, selection, comment);
    Study next = study_;
    store_delphi(next, delphi);
    return commit(std::move(next),
                  {{"recorded", true}, {"round", delphi.open()->round_number}});
  } catch (const Error& e) {
    return error(status_for(e.code()), e.what());
  }
}

Response Session::delphi_close(const json& body) {
  std::unique_lock lock(mutex_);
  if (!facilitator_ok(body)) return error(401, "facilitator token required");
  try {
    DelphiStudy delphi = delphi_state(study_);
    const double fraction = body.value("retention_fraction", study_.config.retention_fraction);
    const CloseResult closed = delphi.close_round(fraction);
    Study next = study_;
    store_delphi(next, delphi);
    return commit(std::move(next),
                  {{"round", delphi.last_closed()->round_number},
                   {"retained", std::vector<std::string>(closed.retained.begin(), closed.retained.end())},
                   {"converged", closed.converged}});
  } catch (const Error& e) {
    return error(status_for(e.code()), e.what());
  }
}

Response Session::delphi_feedback() const {
  std::shared_lock lock(mutex_);
  RoundFeedback fb;
  json open_round = nullptr;
  if (!study_.rounds.empty()) {
    const DelphiStudy delphi = delphi_state(study_);
    fb = delphi.feedback();
    if (const DelphiRound* r = delphi.open()) open_round = r->round_number;
  }
  json counts = json::object();
  for (const auto& item : study_.item_pool.items) {
    auto it = fb.counts.find(item.id);
    counts[item.id] = it == fb.counts.end() ? 0 : it->second;
  }
  return {200,
          {{"round", fb.round_number},
           {"voters", fb.voters},
           {"counts", std::move(counts)},
           {"comments", fb.comments},
           {"open_round", open_round},
           {"revision", revision_}}};
}

Response Session::get_results() const {
  std::shared_lock lock(mutex_);
  json body = to_json(compute_results(study_, ri_));
  // Screening outcome is reported as counts; who was rejected stays private.
  if (body.contains("filter")) {
    json& f = body["filter"];
    std::set<std::string> ids;
    for (const auto& r : f["rejected"]) ids.insert(r["respondent"].get<std::string>());
    f["rejected"] = ids.size();
  }
  body["revision"] = revision_;
  return {200, std::move(body)};
}

void mount_routes(httplib::Server& server, Session& session) {
  auto reply = [](httplib::Response& res, const Response& r) {
    res.status = r.status;
    res.set_content(r.body.dump(), "application/json");
  };
  auto parse_body = [](const httplib::Request& req) -> std::optional<json> {
    json body = req.body.empty() ? json::object() : json::parse(req.body, nullptr, false);
    if (body.is_discarded() || !body.is_object()) return std::nullopt;
    const std::string auth = req.get_header_value("Authorization");
    constexpr std::string_view bearer = "Bearer ";
    if (!body.contains("token") && auth.rfind(bearer, 0) == 0) {
      body["token"] = auth.substr(bearer.size());
    }
    return body;
  };
  auto post = [&server, reply, parse_body](const char* path, auto handler) {
    server.Post(path, [reply, parse_body, handler](const httplib::Request& req, httplib::Response& res) {
      auto body = parse_body(req);
      if (!body) return reply(res, error(400, "body must be a JSON object"));
      reply(res, handler(*body));
    });
  };
  server.Get("/study", [&session, reply](const httplib::Request&, httplib::Response& res) {
    reply(res, session.get_study());
  });
  server.Get("/results", [&session, reply](const httplib::Request&, httplib::Response& res) {
    reply(res, session.get_results());
  });
  server.Get("/delphi/feedback", [&session, reply](const httplib::Request&, httplib::Response& res) {
    reply(res, session.delphi_feedback());
  });
  post("/judgments", [&session](const json& b) { return session.post_judgments(b); });
  post("/delphi/open", [&session](const json& b) { return session.delphi_open(b); });
  post("/delphi/vote", [&session](const json& b) { return session.delphi_vote(b); });
  post("/delphi/close", [&session](const json& b) { return session.delphi_close(b); });
}

bool serve(Session& session, const std::string& host, int port) {
  httplib::Server server;
  mount_routes(server, session);
  return server.listen(host, port);
}

}  // namespace ahp
