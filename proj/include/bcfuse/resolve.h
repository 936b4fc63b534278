//
// bcfuse - Copyright 2026 The bcfuse Authors.
// SPDX-License-Identifier: Apache-2.0
//

#ifndef BCFUSE_RESOLVE_H_
#define BCFUSE_RESOLVE_H_

#include <cstddef>
#include <mutex>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "bcfuse/align.h"
#include "bcfuse/ontology.h"

namespace bcfuse {

enum class ActionKind {
  kRenameSame,
  kRenameDifferent,
  kMergeConcepts,
  kDeleteOne,
  kKeepBoth,
};

std::string_view to_string(ActionKind k);
std::optional<ActionKind> parse_action_kind(std::string_view s);

enum class Side { kSource, kTarget };

// A resolution action. Parameters left empty are filled with defaults when
// the action is applied: renameSame takes the domain label of the anchor,
// renameDifferent takes "<label>_<component>" on each side, deleteOne keeps
// the source.
struct ResolutionAction {
  ResolutionAction() = default;
  explicit ResolutionAction(ActionKind k): kind(k) { }

  ActionKind kind = ActionKind::kKeepBoth;
  std::optional<std::string> label;    // renameSame
  std::optional<std::string> label_a;  // renameDifferent and keepBoth, source side
  std::optional<std::string> label_b;  // renameDifferent and keepBoth, target side
  std::optional<Side> kept;            // deleteOne

  bool operator==(const ResolutionAction &) const = default;

  static ResolutionAction of(ActionKind kind) { return ResolutionAction(kind); }
  static ResolutionAction rename_same(std::string label);
  static ResolutionAction rename_different(std::string a, std::string b);
  static ResolutionAction delete_one(Side kept);

  // Throws ValidationError (BAD_ACTION) on ill-formed parameters, e.g.
  // renameDifferent labels equal after normalization.
  void check() const;
};

// Text form used by decision files and reports:
//   renameSame | renameSame(Paper) | renameDifferent(A,B) | mergeConcepts |
//   deleteOne | deleteOne(source) | deleteOne(target) | keepBoth
std::string format_action(const ResolutionAction &a);
// Throws ValidationError (BAD_ACTION).
ResolutionAction parse_action(std::string_view text);

struct RuleCatalogEntry {
  SemanticRelation relation;
  ActionKind default_action;
  std::vector<ActionKind> alternatives;
};

const RuleCatalogEntry &lookup_rule(SemanticRelation relation);

// True when `kind` is the default or one of the alternatives for `relation`.
bool is_legal_action(SemanticRelation relation, ActionKind kind);

// "<relation>|<nearest common is-a ancestor of the anchors>", with
// "unanchored" when either side has no anchor and "unrelated" when the
// anchors share no ancestor.
std::string context_key(const Correspondence &c, const Ontology &domain);

class Conflict {
public:
  Conflict(Correspondence correspondence, std::string context_key,
           ResolutionAction recommended);

  const Correspondence &correspondence() const { return correspondence_; }
  SemanticRelation relation() const { return correspondence_.relation; }
  const std::string &context_key() const { return context_key_; }
  ResolutionAction default_action() const;
  const ResolutionAction &recommended_action() const { return recommended_; }
  void set_recommended_action(ResolutionAction a) { recommended_ = std::move(a); }

  bool pending() const { return !decision_.has_value(); }
  const std::optional<ResolutionAction> &decision() const { return decision_; }

  // Throws StateError (ALREADY_DECIDED) or ValidationError (ILLEGAL_ACTION).
  void decide(ResolutionAction action);
  // Throws unless decide() would accept the action.
  void check_decidable(const ResolutionAction &action) const;

private:
  Correspondence correspondence_;
  std::string context_key_;
  ResolutionAction recommended_;
  std::optional<ResolutionAction> decision_;
};

struct HistoryRecord {
  std::string timestamp;  // ISO 8601
  SemanticRelation relation;
  std::string context_key;
  ActionKind action;

  bool operator==(const HistoryRecord &) const = default;
};

// Append-only log of designer decisions.
class ActionHistory {
public:
  explicit ActionHistory(std::size_t threshold = 3);

  std::size_t threshold() const { return threshold_; }
  const std::vector<HistoryRecord> &records() const { return records_; }
  void append(HistoryRecord r) { records_.push_back(std::move(r)); }

private:
  std::size_t threshold_;
  std::vector<HistoryRecord> records_;
};

// Most frequent action recorded for the conflict's (relation, context) once
// its count reaches the threshold (ties: the most recently recorded action
// wins); the catalog default otherwise.
ResolutionAction recommend(const Conflict &c, const ActionHistory &history);

// One conflict per correspondence, ordered by (relation, source, target),
// with recommendations taken from `history`.
std::vector<Conflict> detect_conflicts(const CorrespondenceOntology &co,
                                       const Ontology &domain,
                                       const ActionHistory &history);
std::vector<Conflict> detect_conflicts(const CorrespondenceOntology &co,
                                       const Ontology &domain);

// Marks the conflict decided and appends a record. The history is left
// untouched when the decision is rejected.
void record_decision(ActionHistory &history, Conflict &conflict,
                     const ResolutionAction &action, std::string timestamp);

std::string format_history_record(const HistoryRecord &r);
// Throws ParseError.
HistoryRecord parse_history_record(std::string_view line, int lineno = 1);

// File-backed history shared by sessions. Every append is written through
// to the file before it becomes visible. Thread safe.
class HistoryStore {
public:
  // Loads existing records; an empty path keeps the history in memory only.
  HistoryStore(std::string path, std::size_t threshold);

  ActionHistory snapshot() const;
  void append(const HistoryRecord &r);
  std::size_t size() const;
  const std::string &path() const { return path_; }

private:
  std::string path_;
  mutable std::mutex mu_;
  ActionHistory history_;
};

// Current UTC time as "YYYY-MM-DDTHH:MM:SSZ".
std::string utc_timestamp();

}  // namespace bcfuse

#endif  // BCFUSE_RESOLVE_H_
