//
// bcfuse - Copyright 2026 The bcfuse Authors.
// SPDX-License-Identifier: Apache-2.0
//

#include "bcfuse/resolve.h"

#include <algorithm>
#include <chrono>
#include <ctime>
#include <fstream>
#include <map>
#include <sstream>
#include <tuple>

#include "bcfuse/error.h"
#include "bcfuse/ingest.h"
#include "bcfuse/model.h"

namespace bcfuse {

std::string_view to_string(ActionKind k) {
  switch (k) {
  case ActionKind::kRenameSame:
    return "renameSame";
  case ActionKind::kRenameDifferent:
    return "renameDifferent";
  case ActionKind::kMergeConcepts:
    return "mergeConcepts";
  case ActionKind::kDeleteOne:
    return "deleteOne";
  case ActionKind::kKeepBoth:
    return "keepBoth";
  }
  return "keepBoth";
}

std::optional<ActionKind> parse_action_kind(std::string_view s) {
  for (ActionKind k: { ActionKind::kRenameSame, ActionKind::kRenameDifferent,
                       ActionKind::kMergeConcepts, ActionKind::kDeleteOne,
                       ActionKind::kKeepBoth })
    if (to_string(k) == s)
      return k;
  return std::nullopt;
}

ResolutionAction ResolutionAction::rename_same(std::string label) {
  ResolutionAction a { ActionKind::kRenameSame };
  a.label = std::move(label);
  return a;
}

ResolutionAction ResolutionAction::rename_different(std::string a,
                                                    std::string b) {
  ResolutionAction r { ActionKind::kRenameDifferent };
  r.label_a = std::move(a);
  r.label_b = std::move(b);
  return r;
}

ResolutionAction ResolutionAction::delete_one(Side kept) {
  ResolutionAction a { ActionKind::kDeleteOne };
  a.kept = kept;
  return a;
}

void ResolutionAction::check() const {
  auto bad = [](const std::string &msg) {
    throw ValidationError("BAD_ACTION", msg);
  };
  for (const auto *l: { &label, &label_a, &label_b })
    if (*l && !is_identifier(**l))
      bad("label '" + **l + "' is not an identifier");
  if (label_a.has_value() != label_b.has_value())
    bad(std::string(to_string(kind)) + " needs both labels or neither");
  if (label_a && label_b
      && normalize_label(*label_a) == normalize_label(*label_b))
    bad("the two labels must differ after normalization");
}

std::string format_action(const ResolutionAction &a) {
  std::string out(to_string(a.kind));
  switch (a.kind) {
  case ActionKind::kRenameSame:
    if (a.label)
      out += "(" + *a.label + ")";
    break;
  case ActionKind::kRenameDifferent:
  case ActionKind::kKeepBoth:
    if (a.label_a && a.label_b)
      out += "(" + *a.label_a + "," + *a.label_b + ")";
    break;
  case ActionKind::kDeleteOne:
    if (a.kept)
      out += *a.kept == Side::kSource ? "(source)" : "(target)";
    break;
  default:
    break;
  }
  return out;
}

namespace {

std::string trim(std::string_view s) {
  auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos)
    return {};
  auto e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

}  // namespace

ResolutionAction parse_action(std::string_view text) {
  std::string t = trim(text);
  auto bad = [&]() -> ValidationError {
    return ValidationError("BAD_ACTION", "cannot parse action '" + t + "'");
  };

  std::string name = t;
  std::vector<std::string> args;
  if (auto open = t.find('('); open != std::string::npos) {
    if (t.back() != ')')
      throw bad();
    name = trim(std::string_view(t).substr(0, open));
    std::string inner = t.substr(open + 1, t.size() - open - 2);
    std::stringstream ss(inner);
    std::string part;
    while (std::getline(ss, part, ','))
      args.push_back(trim(part));
    if (args.empty() || std::any_of(args.begin(), args.end(),
                                    [](const auto &s) { return s.empty(); }))
      throw bad();
  }

  auto kind = parse_action_kind(name);
  if (!kind)
    throw bad();

  ResolutionAction a { *kind };
  switch (*kind) {
  case ActionKind::kRenameSame:
    if (args.size() > 1)
      throw bad();
    if (args.size() == 1)
      a.label = args[0];
    break;
  case ActionKind::kRenameDifferent:
  case ActionKind::kKeepBoth:
    if (args.size() == 1 || args.size() > 2)
      throw bad();
    if (args.size() == 2) {
      a.label_a = args[0];
      a.label_b = args[1];
    }
    break;
  case ActionKind::kDeleteOne:
    if (args.size() > 1)
      throw bad();
    if (args.size() == 1) {
      if (args[0] == "source")
        a.kept = Side::kSource;
      else if (args[0] == "target")
        a.kept = Side::kTarget;
      else
        throw bad();
    }
    break;
  default:
    if (!args.empty())
      throw bad();
  }
  a.check();
  return a;
}

const RuleCatalogEntry &lookup_rule(SemanticRelation relation) {
  static const RuleCatalogEntry kSynonym {
    SemanticRelation::kSynonym,
    ActionKind::kRenameSame,
    { ActionKind::kMergeConcepts, ActionKind::kDeleteOne,
      ActionKind::kKeepBoth },
  };
  static const RuleCatalogEntry kHomonym {
    SemanticRelation::kHomonym,
    ActionKind::kRenameDifferent,
    { ActionKind::kKeepBoth },
  };
  static const RuleCatalogEntry kEquivalent {
    SemanticRelation::kEquivalent,
    ActionKind::kMergeConcepts,
    { ActionKind::kKeepBoth, ActionKind::kDeleteOne },
  };
  switch (relation) {
  case SemanticRelation::kSynonym:
    return kSynonym;
  case SemanticRelation::kHomonym:
    return kHomonym;
  case SemanticRelation::kEquivalent:
    return kEquivalent;
  }
  return kSynonym;
}

bool is_legal_action(SemanticRelation relation, ActionKind kind) {
  const RuleCatalogEntry &e = lookup_rule(relation);
  return e.default_action == kind
         || std::find(e.alternatives.begin(), e.alternatives.end(), kind)
                != e.alternatives.end();
}

std::string context_key(const Correspondence &c, const Ontology &domain) {
  std::string key = std::string(to_string(c.relation)) + "|";
  if (!c.source_anchor || !c.target_anchor)
    return key + "unanchored";
  auto nca = nearest_common_ancestor(domain, c.source_anchor->concept_id,
                                     c.target_anchor->concept_id);
  return key + (nca ? *nca : "unrelated");
}

Conflict::Conflict(Correspondence correspondence, std::string context_key,
                   ResolutionAction recommended)
    : correspondence_(std::move(correspondence)),
      context_key_(std::move(context_key)),
      recommended_(std::move(recommended)) { }

ResolutionAction Conflict::default_action() const {
  return ResolutionAction::of(lookup_rule(relation()).default_action);
}

void Conflict::check_decidable(const ResolutionAction &action) const {
  if (decision_)
    throw StateError("ALREADY_DECIDED", "conflict is already decided");
  if (!is_legal_action(relation(), action.kind))
    throw ValidationError("ILLEGAL_ACTION",
                          std::string(to_string(action.kind))
                              + " is not offered for a "
                              + std::string(to_string(relation())));
  action.check();
}

void Conflict::decide(ResolutionAction action) {
  check_decidable(action);
  decision_ = std::move(action);
}

ActionHistory::ActionHistory(std::size_t threshold): threshold_(threshold) {
  if (threshold_ < 1)
    throw ValidationError("BAD_THRESHOLD", "threshold must be at least 1");
}

ResolutionAction recommend(const Conflict &c, const ActionHistory &history) {
  struct Tally {
    std::size_t count = 0;
    std::size_t last = 0;
  };
  std::map<ActionKind, Tally> tally;
  const auto &records = history.records();
  for (std::size_t i = 0; i < records.size(); ++i) {
    const HistoryRecord &r = records[i];
    if (r.relation != c.relation() || r.context_key != c.context_key())
      continue;
    Tally &t = tally[r.action];
    ++t.count;
    t.last = i;
  }

  std::optional<std::pair<ActionKind, Tally>> best;
  for (const auto &[kind, t]: tally) {
    if (t.count < history.threshold())
      continue;
    if (!best || t.count > best->second.count
        || (t.count == best->second.count && t.last > best->second.last))
      best = { kind, t };
  }
  // Recorded kinds are always legal for the relation unless the history
  // file was edited by hand; fall back to the default then.
  if (best && is_legal_action(c.relation(), best->first))
    return ResolutionAction::of(best->first);
  return c.default_action();
}

std::vector<Conflict> detect_conflicts(const CorrespondenceOntology &co,
                                       const Ontology &domain,
                                       const ActionHistory &history) {
  std::vector<Correspondence> sorted = co.correspondences;
  std::stable_sort(sorted.begin(), sorted.end(),
                   [](const auto &x, const auto &y) {
                     return std::tie(x.relation, x.source, x.target)
                            < std::tie(y.relation, y.source, y.target);
                   });

  std::vector<Conflict> out;
  out.reserve(sorted.size());
  for (Correspondence &c: sorted) {
    std::string key = context_key(c, domain);
    ResolutionAction dflt =
        ResolutionAction::of(lookup_rule(c.relation).default_action);
    Conflict conflict(std::move(c), std::move(key), dflt);
    conflict.set_recommended_action(recommend(conflict, history));
    out.push_back(std::move(conflict));
  }
  return out;
}

std::vector<Conflict> detect_conflicts(const CorrespondenceOntology &co,
                                       const Ontology &domain) {
  return detect_conflicts(co, domain, ActionHistory());
}

void record_decision(ActionHistory &history, Conflict &conflict,
                     const ResolutionAction &action, std::string timestamp) {
  conflict.decide(action);
  history.append({ std::move(timestamp), conflict.relation(),
                   conflict.context_key(), action.kind });
}

std::string format_history_record(const HistoryRecord &r) {
  return r.timestamp + "\t" + std::string(to_string(r.relation)) + "\t"
         + r.context_key + "\t" + std::string(to_string(r.action));
}

HistoryRecord parse_history_record(std::string_view line, int lineno) {
  std::vector<std::string> fields;
  std::size_t start = 0;
  while (true) {
    std::size_t tab = line.find('\t', start);
    fields.emplace_back(line.substr(start, tab == std::string_view::npos
                                               ? std::string_view::npos
                                               : tab - start));
    if (tab == std::string_view::npos)
      break;
    start = tab + 1;
  }
  if (!fields.empty() && !fields.back().empty() && fields.back().back() == '\r')
    fields.back().pop_back();
  if (fields.size() != 4)
    throw ParseError(lineno, 1, "4 tab-separated fields",
                     "history record has " + std::to_string(fields.size())
                         + " fields");
  auto relation = parse_semantic_relation(fields[1]);
  if (!relation)
    throw ParseError(lineno, 1, "relation", "bad relation '" + fields[1] + "'");
  auto action = parse_action_kind(fields[3]);
  if (!action)
    throw ParseError(lineno, 1, "action kind",
                     "bad action '" + fields[3] + "'");
  if (fields[0].empty() || fields[2].empty())
    throw ParseError(lineno, 1, "timestamp and context", "empty field");
  return { fields[0], *relation, fields[2], *action };
}

HistoryStore::HistoryStore(std::string path, std::size_t threshold)
    : path_(std::move(path)), history_(threshold) {
  if (path_.empty())
    return;
  std::ifstream in(path_);
  if (!in)
    return;  // created on first append
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (trim(line).empty())
      continue;
    history_.append(parse_history_record(line, lineno));
  }
}

ActionHistory HistoryStore::snapshot() const {
  std::lock_guard lock(mu_);
  return history_;
}

void HistoryStore::append(const HistoryRecord &r) {
  std::lock_guard lock(mu_);
  if (!path_.empty()) {
    std::ofstream out(path_, std::ios::app);
    if (!out)
      throw Error("HISTORY_IO", "cannot append to '" + path_ + "'");
    out << format_history_record(r) << '\n';
    out.flush();
    if (!out)
      throw Error("HISTORY_IO", "write to '" + path_ + "' failed");
  }
  history_.append(r);
}

std::size_t HistoryStore::size() const {
  std::lock_guard lock(mu_);
  return history_.records().size();
}

std::string utc_timestamp() {
  std::time_t now =
      std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm {};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

}  // namespace bcfuse
