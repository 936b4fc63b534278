//
// bcfuse - Copyright 2026 The bcfuse Authors.
// SPDX-License-Identifier: Apache-2.0
//

#ifndef BCFUSE_MERGE_H_
#define BCFUSE_MERGE_H_

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "bcfuse/align.h"
#include "bcfuse/model.h"
#include "bcfuse/resolve.h"

namespace bcfuse {

// Target label for a renameSame: the anchor's domain label when anchored,
// otherwise the smaller of the two normalized labels. Labels that are not
// identifiers are turned into one by joining their words with '_'.
std::string choose_rename_label(const Correspondence &c,
                                const Ontology &domain);

// Fills in the parameters a decided action left open.
ResolutionAction resolve_defaults(const ResolutionAction &action,
                                  const Correspondence &c,
                                  const Ontology &domain);

struct AppliedDecision {
  std::size_t index = 0;  // conflict index
  SemanticRelation relation = SemanticRelation::kSynonym;
  std::string context_key;
  ResolutionAction action;  // with defaults filled in
  std::string source_before, source_after;
  std::string target_before, target_after;
  // Set when the decision no longer applied (e.g. a side was deleted by an
  // earlier decision); `note` explains why.
  bool skipped = false;
  std::string note;
};

struct IntegrationReport {
  std::vector<AppliedDecision> decisions;
  std::vector<std::size_t> unresolved;  // pending conflict indices

  // One line per decision: index, relation, context key, applied action.
  std::string to_text() const;
};

struct IntegrationResult {
  ComponentModel model;
  IntegrationReport report;
  // Output concept each input concept ended up in; nullopt when deleted.
  std::map<ConceptRef, std::optional<std::string>> concept_map;
};

/// Merges components into one reusable component.
///
/// All structures are flattened into a single structure, then every decided
/// conflict is applied in order. The result is named by joining the input
/// names with '+'; it is an entity component only when all inputs are.
///
/// Throws StateError (UNDECIDED_CONFLICT) when a conflict is pending,
/// NotFoundError when a decision names an unknown concept, and
/// ValidationError when the merged model fails validate().
IntegrationResult integrate(const std::vector<ComponentModel> &models,
                            const CorrespondenceOntology &co,
                            const std::vector<Conflict> &decisions,
                            const Ontology &domain);

// Like integrate() but pending conflicts are left unapplied and listed in
// report.unresolved, and the result is not validated.
IntegrationResult integrate_partial(const std::vector<ComponentModel> &models,
                                    const std::vector<Conflict> &conflicts,
                                    const Ontology &domain);

}  // namespace bcfuse

#endif  // BCFUSE_MERGE_H_
