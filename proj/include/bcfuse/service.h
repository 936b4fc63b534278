//
// bcfuse - Copyright 2026 The bcfuse Authors.
// SPDX-License-Identifier: Apache-2.0
//

#ifndef BCFUSE_SERVICE_H_
#define BCFUSE_SERVICE_H_

#include <cstddef>
#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <random>
#include <shared_mutex>
#include <string>
#include <vector>

#include <json.hpp>

#include "bcfuse/error.h"
#include "bcfuse/pipeline.h"
#include "bcfuse/resolve.h"

namespace httplib {
class Server;
}

namespace bcfuse {

inline constexpr int kDefaultPort = 7341;

enum class SessionPhase { kReviewing, kFinalized };

struct SessionInputs {
  std::vector<NamedText> components;
  std::optional<NamedText> domain;
  std::optional<NamedText> lexicon;
  AlignmentParams params;
};

class PendingConflictsError: public StateError {
public:
  explicit PendingConflictsError(std::vector<std::size_t> pending);
  const std::vector<std::size_t> &pending() const { return pending_; }

private:
  std::vector<std::size_t> pending_;
};

struct SessionSnapshot {
  std::string id;
  SessionPhase phase = SessionPhase::kReviewing;
  std::vector<Conflict> conflicts;
};

// In-memory review sessions over a shared, file-backed action history.
// Mutations of one session are serialized; different sessions proceed in
// parallel.
class SessionManager {
public:
  using Clock = std::function<std::string()>;

  explicit SessionManager(std::shared_ptr<HistoryStore> history,
                          Clock clock = utc_timestamp);

  // Throws ParseError / ValidationError for bad inputs.
  SessionSnapshot create(const SessionInputs &inputs);
  SessionSnapshot snapshot(const std::string &id) const;

  // Decides one conflict and writes the choice to the history. Throws
  // NotFoundError (SESSION_NOT_FOUND, CONFLICT_NOT_FOUND), StateError
  // (ALREADY_DECIDED) or ValidationError (ILLEGAL_ACTION, BAD_ACTION).
  Conflict decide(const std::string &id, std::size_t index,
                  const ResolutionAction &action);

  // Merge of the decisions taken so far; pending conflicts are listed in
  // report.unresolved.
  IntegrationResult preview(const std::string &id) const;

  // Throws PendingConflictsError while conflicts remain undecided. Repeated
  // calls return the same artifact.
  IntegrationArtifact finalize(const std::string &id);

  CorrespondenceOntology alignment(const std::string &id) const;

  // Domain ontology of a session, for rendering rename suggestions.
  const Ontology &domain(const std::string &id) const;

  const HistoryStore &history() const { return *history_; }

private:
  struct Session {
    std::string id;
    PreparedIntegration prepared;
    std::vector<Conflict> conflicts;
    SessionPhase phase = SessionPhase::kReviewing;
    std::uint64_t version = 0;
    std::optional<IntegrationArtifact> artifact;

    mutable std::shared_mutex mu;
    mutable std::mutex cache_mu;
    mutable std::optional<std::pair<std::uint64_t, IntegrationResult>> preview;
  };

  std::shared_ptr<Session> find(const std::string &id) const;
  std::string new_id();

  std::shared_ptr<HistoryStore> history_;
  Clock clock_;
  mutable std::shared_mutex mu_;
  std::map<std::string, std::shared_ptr<Session>> sessions_;
  std::mutex rng_mu_;
  std::mt19937_64 rng_;
};

// JSON renderings shared by the HTTP API and tests.
nlohmann::json to_json(const ResolutionAction &a);
nlohmann::json to_json(const Conflict &c, std::size_t index,
                       const Ontology &domain);
nlohmann::json to_json(const ComponentModel &m);
nlohmann::json to_json(const IntegrationReport &r);
nlohmann::json to_json(const SessionSnapshot &s, const Ontology &domain);

// Accepts the action text form ("renameSame(Paper)") or an object
// {"kind": ..., "label"/"labelA"/"labelB"/"kept": ...}.
ResolutionAction action_from_json(const nlohmann::json &j);

// Error body {code, message, detail} and HTTP status for an exception.
std::pair<int, nlohmann::json> error_response(const std::exception &e);

// Registers the session API on a server:
//   POST /sessions                           create a session
//   GET  /sessions/{id}/conflicts            conflict list
//   POST /sessions/{id}/conflicts/{i}/decision
//   GET  /sessions/{id}/preview
//   POST /sessions/{id}/finalize
//   GET  /sessions/{id}/alignment
void register_routes(httplib::Server &server, SessionManager &sessions);

// Blocks serving on host:port until the process is stopped.
bool serve(SessionManager &sessions, const std::string &host, int port);

}  // namespace bcfuse

#endif  // BCFUSE_SERVICE_H_
