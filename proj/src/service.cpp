//
// bcfuse - Copyright 2026 The bcfuse Authors.
// SPDX-License-Identifier: Apache-2.0
//

#include "bcfuse/service.h"

#include <iomanip>
#include <sstream>

#include <httplib.h>

#include "bcfuse/merge.h"

namespace bcfuse {

using nlohmann::json;

namespace {

std::string join_indices(const std::vector<std::size_t> &v) {
  std::string out;
  for (std::size_t i: v)
    out += (out.empty() ? "" : ", ") + std::to_string(i);
  return out;
}

}  // namespace

PendingConflictsError::PendingConflictsError(std::vector<std::size_t> pending)
    : StateError("PENDING_CONFLICTS",
                 "conflicts still pending: " + join_indices(pending)),
      pending_(std::move(pending)) { }

SessionManager::SessionManager(std::shared_ptr<HistoryStore> history,
                               Clock clock)
    : history_(std::move(history)), clock_(std::move(clock)),
      rng_(std::random_device {}()) { }

std::string SessionManager::new_id() {
  std::lock_guard lock(rng_mu_);
  std::ostringstream ss;
  ss << std::hex << std::setfill('0') << std::setw(16) << rng_()
     << std::setw(16) << rng_();
  return ss.str();
}

SessionSnapshot SessionManager::create(const SessionInputs &inputs) {
  auto session = std::make_shared<Session>();
  session->prepared =
      prepare(load_inputs(inputs.components, inputs.domain, inputs.lexicon,
                          inputs.params),
              history_->snapshot());
  session->conflicts = session->prepared.conflicts;
  session->id = new_id();

  SessionSnapshot snap { session->id, session->phase, session->conflicts };
  std::unique_lock lock(mu_);
  sessions_.emplace(session->id, std::move(session));
  return snap;
}

std::shared_ptr<SessionManager::Session>
SessionManager::find(const std::string &id) const {
  std::shared_lock lock(mu_);
  auto it = sessions_.find(id);
  if (it == sessions_.end())
    throw NotFoundError("SESSION_NOT_FOUND", "no session '" + id + "'");
  return it->second;
}

SessionSnapshot SessionManager::snapshot(const std::string &id) const {
  auto s = find(id);
  std::shared_lock lock(s->mu);
  return { s->id, s->phase, s->conflicts };
}

Conflict SessionManager::decide(const std::string &id, std::size_t index,
                                const ResolutionAction &action) {
  auto s = find(id);
  std::unique_lock lock(s->mu);
  if (index >= s->conflicts.size())
    throw NotFoundError("CONFLICT_NOT_FOUND",
                        "session has " + std::to_string(s->conflicts.size())
                            + " conflicts, no index " + std::to_string(index));
  Conflict &c = s->conflicts[index];
  c.check_decidable(action);
  // Persist first: a failed write leaves the conflict pending.
  history_->append(
      { clock_(), c.relation(), c.context_key(), action.kind });
  c.decide(action);
  ++s->version;
  return c;
}

IntegrationResult SessionManager::preview(const std::string &id) const {
  auto s = find(id);
  std::shared_lock lock(s->mu);
  std::lock_guard cache_lock(s->cache_mu);
  if (!s->preview || s->preview->first != s->version)
    s->preview.emplace(s->version,
                       integrate_partial(s->prepared.inputs.models,
                                         s->conflicts,
                                         s->prepared.inputs.resources.domain));
  return s->preview->second;
}

IntegrationArtifact SessionManager::finalize(const std::string &id) {
  auto s = find(id);
  std::unique_lock lock(s->mu);
  if (s->artifact)
    return *s->artifact;

  std::vector<std::size_t> pending;
  for (std::size_t i = 0; i < s->conflicts.size(); ++i)
    if (s->conflicts[i].pending())
      pending.push_back(i);
  if (!pending.empty())
    throw PendingConflictsError(std::move(pending));

  s->artifact = finish(s->prepared, s->conflicts);
  s->phase = SessionPhase::kFinalized;
  return *s->artifact;
}

CorrespondenceOntology SessionManager::alignment(const std::string &id) const {
  auto s = find(id);
  return s->prepared.alignment;  // immutable after creation
}

const Ontology &SessionManager::domain(const std::string &id) const {
  auto s = find(id);
  return s->prepared.inputs.resources.domain;  // immutable, session kept alive
}

json to_json(const ResolutionAction &a) {
  json j { { "kind", to_string(a.kind) }, { "text", format_action(a) } };
  if (a.label)
    j["label"] = *a.label;
  if (a.label_a)
    j["labelA"] = *a.label_a;
  if (a.label_b)
    j["labelB"] = *a.label_b;
  if (a.kept)
    j["kept"] = *a.kept == Side::kSource ? "source" : "target";
  return j;
}

namespace {

json side_json(const ConceptRef &ref, const std::optional<Anchor> &anchor,
               const Ontology &domain) {
  json j { { "component", ref.component }, { "concept", ref.concept_id } };
  if (anchor) {
    const OntologyConcept *d = domain.find(anchor->concept_id);
    j["anchor"] = { { "concept", anchor->concept_id },
                    { "label", d ? d->label : anchor->concept_id },
                    { "score", anchor->score } };
  } else {
    j["anchor"] = nullptr;
  }
  return j;
}

}  // namespace

json to_json(const Conflict &c, std::size_t index, const Ontology &domain) {
  const Correspondence &corr = c.correspondence();
  const RuleCatalogEntry &rule = lookup_rule(c.relation());

  json alternatives = json::array();
  json legal = json::array({ to_string(rule.default_action) });
  for (ActionKind k: rule.alternatives) {
    alternatives.push_back(to_string(k));
    legal.push_back(to_string(k));
  }

  auto shared = corr.shared_anchor();
  json j {
    { "index", index },
    { "source", side_json(corr.source, corr.source_anchor, domain) },
    { "target", side_json(corr.target, corr.target_anchor, domain) },
    { "relation", to_string(c.relation()) },
    { "confidence", corr.confidence },
    { "similarity", corr.similarity },
    { "anchor", shared ? json(*shared) : json() },
    { "contextKey", c.context_key() },
    { "defaultAction", to_json(c.default_action()) },
    { "recommendedAction", to_json(c.recommended_action()) },
    { "recommendedFromHistory", c.recommended_action() != c.default_action() },
    { "alternatives", alternatives },
    { "legalActions", legal },
    { "status", c.pending() ? "pending" : "decided" },
    { "decision", c.decision() ? to_json(*c.decision()) : json() },
  };
  if (c.relation() == SemanticRelation::kSynonym)
    j["suggestedLabel"] = choose_rename_label(corr, domain);
  return j;
}

json to_json(const ComponentModel &m) {
  json structures = json::array();
  for (const Structure &s: m.structures) {
    json concepts = json::array(), relations = json::array(),
         services = json::array();
    for (const Concept &c: s.concepts) {
      json attrs = json::array();
      for (const Attribute &a: c.attributes)
        attrs.push_back({ { "name", a.name }, { "type", a.type } });
      concepts.push_back({ { "name", c.name }, { "attributes", attrs } });
    }
    for (const Relation &r: s.relations) {
      relations.push_back({
          { "source", r.source },
          { "target", r.target },
          { "kind", to_string(r.kind) },
          { "label", r.label ? json(*r.label) : json() },
          { "cardinality", r.cardinality ? json(*r.cardinality) : json() },
      });
    }
    for (const ServiceSignature &sv: s.services) {
      json params = json::array();
      for (const Parameter &p: sv.params)
        params.push_back({ { "name", p.name }, { "type", p.type } });
      services.push_back({
          { "name", sv.name },
          { "params", params },
          { "returnType", sv.return_type ? json(*sv.return_type) : json() },
      });
    }
    structures.push_back({ { "id", s.id },
                           { "concepts", concepts },
                           { "relations", relations },
                           { "services", services } });
  }
  return { { "name", m.name },
           { "kind", to_string(m.kind) },
           { "reuse", to_string(m.reuse) },
           { "structures", structures } };
}

json to_json(const IntegrationReport &r) {
  json decisions = json::array();
  for (const AppliedDecision &d: r.decisions) {
    json e {
      { "index", d.index },
      { "relation", to_string(d.relation) },
      { "contextKey", d.context_key },
      { "action", to_json(d.action) },
      { "source", { { "before", d.source_before }, { "after", d.source_after } } },
      { "target", { { "before", d.target_before }, { "after", d.target_after } } },
      { "skipped", d.skipped },
    };
    if (!d.note.empty())
      e["note"] = d.note;
    decisions.push_back(std::move(e));
  }
  return { { "decisions", decisions }, { "unresolved", r.unresolved } };
}

json to_json(const SessionSnapshot &s, const Ontology &domain) {
  json conflicts = json::array();
  for (std::size_t i = 0; i < s.conflicts.size(); ++i)
    conflicts.push_back(to_json(s.conflicts[i], i, domain));
  return { { "id", s.id },
           { "phase", s.phase == SessionPhase::kReviewing ? "reviewing"
                                                          : "finalized" },
           { "conflicts", conflicts } };
}

ResolutionAction action_from_json(const json &j) {
  if (j.is_string())
    return parse_action(j.get<std::string>());
  if (!j.is_object() || !j.contains("kind") || !j["kind"].is_string())
    throw ValidationError("BAD_ACTION",
                          "action must be a string or an object with 'kind'");
  auto kind = parse_action_kind(j["kind"].get<std::string>());
  if (!kind)
    throw ValidationError("BAD_ACTION", "unknown action kind");

  auto str = [&](const char *key) -> std::optional<std::string> {
    if (!j.contains(key) || j[key].is_null())
      return std::nullopt;
    if (!j[key].is_string())
      throw ValidationError("BAD_ACTION",
                            std::string("'") + key + "' must be a string");
    return j[key].get<std::string>();
  };

  ResolutionAction a { *kind };
  a.label = str("label");
  a.label_a = str("labelA");
  a.label_b = str("labelB");
  if (auto kept = str("kept")) {
    if (*kept == "source")
      a.kept = Side::kSource;
    else if (*kept == "target")
      a.kept = Side::kTarget;
    else
      throw ValidationError("BAD_ACTION", "kept must be source or target");
  }
  a.check();
  return a;
}

std::pair<int, json> error_response(const std::exception &e) {
  json detail = json::object();
  int status = 500;
  std::string code = "INTERNAL";

  if (const auto *pe = dynamic_cast<const ParseError *>(&e)) {
    status = 422;
    code = pe->code();
    detail = { { "source", pe->source() },
               { "line", pe->line() },
               { "column", pe->column() },
               { "expected", pe->expected() } };
  } else if (const auto *pc = dynamic_cast<const PendingConflictsError *>(&e)) {
    status = 409;
    code = pc->code();
    detail = { { "pending", pc->pending() } };
  } else if (const auto *se = dynamic_cast<const StateError *>(&e)) {
    status = 409;
    code = se->code();
  } else if (const auto *nf = dynamic_cast<const NotFoundError *>(&e)) {
    status = 404;
    code = nf->code();
  } else if (const auto *ve = dynamic_cast<const ValidationError *>(&e)) {
    status = 422;
    code = ve->code();
  } else if (const auto *je = dynamic_cast<const json::exception *>(&e)) {
    status = 400;
    code = "BAD_REQUEST";
    detail = { { "json", je->id } };
  } else if (const auto *be = dynamic_cast<const Error *>(&e)) {
    code = be->code();
  }
  return { status,
           { { "code", code }, { "message", e.what() }, { "detail", detail } } };
}

namespace {

void send_json(httplib::Response &res, const json &body, int status = 200) {
  res.status = status;
  res.set_content(body.dump(2) + "\n", "application/json");
}

std::optional<NamedText> named_text(const json &j, const std::string &dflt) {
  if (j.is_null())
    return std::nullopt;
  if (j.is_string())
    return NamedText { dflt, j.get<std::string>() };
  return NamedText { j.value("name", dflt), j.at("text").get<std::string>() };
}

SessionInputs inputs_from_request(const httplib::Request &req) {
  SessionInputs in;
  if (req.is_multipart_form_data()) {
    for (const auto &f: req.get_file_values("component"))
      in.components.push_back(
          { f.filename.empty() ? "component" : f.filename, f.content });
    if (req.has_file("domain")) {
      auto f = req.get_file_value("domain");
      in.domain = NamedText { f.filename.empty() ? "domain" : f.filename,
                              f.content };
    }
    if (req.has_file("lexicon")) {
      auto f = req.get_file_value("lexicon");
      in.lexicon = NamedText { f.filename.empty() ? "lexicon" : f.filename,
                               f.content };
    }
  } else {
    json body = json::parse(req.body);
    const json &components = body.at("components");
    if (!components.is_array())
      throw ValidationError("BAD_REQUEST", "'components' must be an array");
    for (std::size_t i = 0; i < components.size(); ++i)
      in.components.push_back(
          *named_text(components[i], "component[" + std::to_string(i) + "]"));
    in.domain = named_text(body.value("domain", json()), "domain");
    in.lexicon = named_text(body.value("lexicon", json()), "lexicon");
    if (body.contains("params")) {
      const json &p = body["params"];
      in.params.anchor_threshold =
          p.value("anchorThreshold", in.params.anchor_threshold);
      in.params.homonym_attr_jaccard_max =
          p.value("homonymAttrJaccardMax", in.params.homonym_attr_jaccard_max);
      in.params.lexical_weight =
          p.value("lexicalWeight", in.params.lexical_weight);
    }
  }
  if (in.components.empty())
    throw ValidationError("BAD_REQUEST", "at least one component is required");
  return in;
}

template<typename Fn>
auto guarded(Fn fn) {
  return [fn](const httplib::Request &req, httplib::Response &res) {
    try {
      fn(req, res);
    } catch (const std::exception &e) {
      auto [status, body] = error_response(e);
      send_json(res, body, status);
    }
  };
}

}  // namespace

void register_routes(httplib::Server &server, SessionManager &sessions) {
  server.Post("/sessions", guarded([&](const auto &req, auto &res) {
    SessionSnapshot snap = sessions.create(inputs_from_request(req));
    send_json(res, to_json(snap, sessions.domain(snap.id)), 201);
  }));

  server.Get(R"(/sessions/([^/]+)/conflicts)",
             guarded([&](const auto &req, auto &res) {
               std::string id = req.matches[1];
               send_json(res, to_json(sessions.snapshot(id), sessions.domain(id)));
             }));

  server.Post(R"(/sessions/([^/]+)/conflicts/(\d+)/decision)",
              guarded([&](const auto &req, auto &res) {
                std::string id = req.matches[1];
                std::string idx = req.matches[2];
                if (idx.size() > 9)
                  throw NotFoundError("CONFLICT_NOT_FOUND",
                                      "conflict index out of range");
                json body = json::parse(req.body);
                ResolutionAction action = action_from_json(body.at("action"));
                std::size_t index = std::stoul(idx);
                Conflict c = sessions.decide(id, index, action);
                send_json(res, to_json(c, index, sessions.domain(id)));
              }));

  server.Get(R"(/sessions/([^/]+)/preview)",
             guarded([&](const auto &req, auto &res) {
               std::string id = req.matches[1];
               IntegrationResult r = sessions.preview(id);
               SessionSnapshot snap = sessions.snapshot(id);
               json unresolved = json::array();
               for (std::size_t i: r.report.unresolved) {
                 const Correspondence &c = snap.conflicts[i].correspondence();
                 unresolved.push_back(
                     { { "index", i },
                       { "relation", to_string(c.relation) },
                       { "source", { { "component", c.source.component },
                                     { "concept", c.source.concept_id } } },
                       { "target", { { "component", c.target.component },
                                     { "concept", c.target.concept_id } } } });
               }
               send_json(res, { { "model", to_json(r.model) },
                                { "decisions", to_json(r.report)["decisions"] },
                                { "unresolved", unresolved } });
             }));

  server.Post(R"(/sessions/([^/]+)/finalize)",
              guarded([&](const auto &req, auto &res) {
                IntegrationArtifact a = sessions.finalize(req.matches[1]);
                send_json(res, { { "bcm", a.bcm },
                                 { "report", to_json(a.report) },
                                 { "reportText", a.report.to_text() } });
              }));

  server.Get(R"(/sessions/([^/]+)/alignment)",
             guarded([&](const auto &req, auto &res) {
               res.set_content(export_alignment(sessions.alignment(req.matches[1])),
                               "application/json");
             }));
}

bool serve(SessionManager &sessions, const std::string &host, int port) {
  httplib::Server server;
  register_routes(server, sessions);
  return server.listen(host, port);
}

}  // namespace bcfuse
