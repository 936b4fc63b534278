//
// bcfuse - Copyright 2026 The bcfuse Authors.
// SPDX-License-Identifier: Apache-2.0
//

#include "bcfuse/pipeline.h"

#include <sstream>

#include "bcfuse/error.h"
#include "bcfuse/ingest.h"
#include "bcfuse/transform.h"

namespace bcfuse {

namespace {

template<typename Fn>
auto with_source(const NamedText &input, Fn &&fn) {
  try {
    return fn(input.text);
  } catch (const ParseError &e) {
    throw e.with_source(input.name);
  } catch (const ValidationError &e) {
    throw ValidationError(e.code(), input.name + ": " + e.what());
  }
}

}  // namespace

IntegrationInputs load_inputs(const std::vector<NamedText> &components,
                              const std::optional<NamedText> &domain,
                              const std::optional<NamedText> &lexicon,
                              const AlignmentParams &params) {
  params.check();
  IntegrationInputs in;
  in.params = params;
  for (const NamedText &c: components) {
    ComponentModel m = with_source(c, [](const std::string &t) {
      return load_bcm(t);
    });
    m.provenance = c.name;
    in.models.push_back(std::move(m));
  }
  if (domain)
    in.resources.domain = with_source(*domain, [](const std::string &t) {
      return parse_onto(t);
    });
  else
    in.resources.domain.name = "empty";
  if (lexicon)
    in.resources.lexicon = with_source(*lexicon, [](const std::string &t) {
      return parse_lexicon(t);
    });
  return in;
}

PreparedIntegration prepare(IntegrationInputs inputs,
                            const ActionHistory &history) {
  PreparedIntegration p;
  p.inputs = std::move(inputs);
  for (const ComponentModel &m: p.inputs.models)
    p.ontologies.push_back(to_ontology(m));
  p.alignment = align_all(p.ontologies, p.inputs.resources, p.inputs.params);
  p.conflicts = detect_conflicts(p.alignment, p.inputs.resources.domain,
                                 history);
  return p;
}

std::map<std::size_t, ResolutionAction>
parse_decisions(const std::string &text) {
  std::map<std::size_t, ResolutionAction> out;
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    line = line.substr(0, line.find('#'));
    if (line.find_first_not_of(" \t\r") == std::string::npos)
      continue;
    auto tab = line.find('\t');
    if (tab == std::string::npos)
      throw ParseError(lineno, 1, "<index>\\t<action>", "missing tab");
    std::string idx = line.substr(0, tab);
    if (idx.empty() || idx.size() > 9
        || idx.find_first_not_of("0123456789") != std::string::npos)
      throw ParseError(lineno, 1, "conflict index", "bad index '" + idx + "'");
    try {
      auto [it, fresh] =
          out.emplace(std::stoul(idx), parse_action(line.substr(tab + 1)));
      if (!fresh)
        throw ParseError(lineno, 1, "one decision per conflict",
                         "conflict " + idx + " decided twice");
    } catch (const ValidationError &e) {
      throw ParseError(lineno, static_cast<int>(tab) + 2, "action", e.what());
    }
  }
  return out;
}

IntegrationArtifact finish(const PreparedIntegration &prepared,
                           const std::vector<Conflict> &decided) {
  IntegrationResult r = integrate(prepared.inputs.models, prepared.alignment,
                                  decided, prepared.inputs.resources.domain);
  IntegrationArtifact a;
  a.bcm = serialize_bcm(r.model);
  a.model = std::move(r.model);
  a.report = std::move(r.report);
  return a;
}

IntegrationArtifact
run_batch(const PreparedIntegration &prepared,
          const std::map<std::size_t, ResolutionAction> &decisions) {
  std::vector<Conflict> conflicts = prepared.conflicts;
  for (const auto &[index, _]: decisions) {
    if (index >= conflicts.size())
      throw NotFoundError("CONFLICT_NOT_FOUND",
                          "decision for conflict " + std::to_string(index)
                              + " but only "
                              + std::to_string(conflicts.size())
                              + " conflicts exist");
  }
  for (std::size_t i = 0; i < conflicts.size(); ++i) {
    auto it = decisions.find(i);
    conflicts[i].decide(it != decisions.end()
                            ? it->second
                            : conflicts[i].recommended_action());
  }
  return finish(prepared, conflicts);
}

}  // namespace bcfuse
