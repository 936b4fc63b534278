//
// bcfuse - Copyright 2026 The bcfuse Authors.
// SPDX-License-Identifier: Apache-2.0
//

#ifndef BCFUSE_PIPELINE_H_
#define BCFUSE_PIPELINE_H_

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "bcfuse/align.h"
#include "bcfuse/merge.h"
#include "bcfuse/model.h"
#include "bcfuse/resolve.h"

// The integration process shared by batch mode and the session service, so
// both produce identical artifacts for identical decisions.

namespace bcfuse {

struct NamedText {
  std::string name;  // file path or upload field name, for error messages
  std::string text;
};

struct IntegrationInputs {
  std::vector<ComponentModel> models;
  ResourceSet resources;
  AlignmentParams params;
};

// Parses and validates every input. An absent domain yields an empty
// ontology and an absent lexicon an empty one. Parse errors carry the input
// name as their source.
IntegrationInputs load_inputs(const std::vector<NamedText> &components,
                              const std::optional<NamedText> &domain,
                              const std::optional<NamedText> &lexicon,
                              const AlignmentParams &params = {});

struct PreparedIntegration {
  IntegrationInputs inputs;
  std::vector<Ontology> ontologies;
  CorrespondenceOntology alignment;
  std::vector<Conflict> conflicts;  // pending, with recommendations
};

// Transformation, alignment and conflict detection.
PreparedIntegration prepare(IntegrationInputs inputs,
                            const ActionHistory &history);

// "<conflictIndex>\t<action>" lines; blank lines and '#' comments skipped.
// Throws ParseError.
std::map<std::size_t, ResolutionAction> parse_decisions(const std::string &text);

struct IntegrationArtifact {
  ComponentModel model;
  std::string bcm;
  IntegrationReport report;
};

// Merges with every conflict decided and serializes the result.
IntegrationArtifact finish(const PreparedIntegration &prepared,
                           const std::vector<Conflict> &decided);

// Batch mode: decides every conflict with the explicit decision for its
// index when given, its recommended action otherwise, then finishes.
// Throws NotFoundError for decisions naming a conflict index that does not
// exist.
IntegrationArtifact
run_batch(const PreparedIntegration &prepared,
          const std::map<std::size_t, ResolutionAction> &decisions = {});

}  // namespace bcfuse

#endif  // BCFUSE_PIPELINE_H_
