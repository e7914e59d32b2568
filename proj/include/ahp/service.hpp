#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <shared_mutex>
#include <string>

#include "ahp/pipeline.hpp"

namespace httplib {
class Server;
}

namespace ahp {

struct Response {
  int status = 200;
  json body;
};

/// One hosted study. Mutations are serialized and either fully apply (state,
/// revision and snapshot file together) or leave everything untouched. Reads
/// run concurrently and observe a single revision.
class Session {
 public:
  Session(Study study, std::optional<std::filesystem::path> snapshot_path = std::nullopt,
          std::optional<RandomIndexTable> ri = std::nullopt, std::string facilitator_token = {});

  Response get_study() const;
  Response post_judgments(const json& body);
  Response delphi_open(const json& body);
  Response delphi_vote(const json& body);
  Response delphi_close(const json& body);
  Response delphi_feedback() const;
  Response get_results() const;

  std::uint64_t revision() const;
  Study study() const;

 private:
  Response commit(Study next, json body);
  bool facilitator_ok(const json& body) const;

  mutable std::shared_mutex mutex_;
  Study study_;
  std::uint64_t revision_ = 0;
  std::optional<std::filesystem::path> snapshot_path_;
  RandomIndexTable ri_;
  std::string facilitator_token_;
};

/// Registers the HTTP routes of `session` on `server`. A bearer token in the
/// Authorization header is used when the body carries no "token".
void mount_routes(httplib::Server& server, Session& session);

/// Blocking listen; returns false when the port cannot be bound.
bool serve(Session& session, const std::string& host, int port);

}  // namespace ahp
