//
// bcfuse - Copyright 2026 The bcfuse Authors.
// SPDX-License-Identifier: Apache-2.0
//

#ifndef BCFUSE_ALIGN_H_
#define BCFUSE_ALIGN_H_

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "bcfuse/ingest.h"
#include "bcfuse/ontology.h"

namespace bcfuse {

struct AlignmentParams {
  // Minimum score for a component concept to anchor on a domain concept.
  double anchor_threshold = 0.8;
  // Equal labels whose attribute-name Jaccard falls below this are homonyms.
  double homonym_attr_jaccard_max = 0.25;
  // Weight of the lexical part in Correspondence::similarity.
  double lexical_weight = 0.5;

  // Throws ValidationError (BAD_PARAM) unless every field is in [0, 1].
  void check() const;
};

struct ResourceSet {
  Ontology domain;
  Lexicon lexicon;
};

enum class SemanticRelation { kSynonym, kHomonym, kEquivalent };

std::string_view to_string(SemanticRelation r);
std::optional<SemanticRelation> parse_semantic_relation(std::string_view s);

struct ConceptRef {
  std::string component;
  std::string concept_id;

  auto operator<=>(const ConceptRef &) const = default;
};

struct Anchor {
  std::string concept_id;  // domain concept
  double score = 0.0;

  bool operator==(const Anchor &) const = default;
};

struct Correspondence {
  ConceptRef source;
  ConceptRef target;
  SemanticRelation relation = SemanticRelation::kSynonym;
  double confidence = 0.0;
  std::optional<Anchor> source_anchor;
  std::optional<Anchor> target_anchor;
  // lexical_weight * lexical + (1 - lexical_weight) * semantic similarity
  // of the anchors (0 when either side is unanchored). Informational.
  double similarity = 0.0;

  bool operator==(const Correspondence &) const = default;

  // The domain concept both sides anchor on, if they share one.
  std::optional<std::string> shared_anchor() const;
  Correspondence swapped() const;
};

struct ComponentCorrespondence {
  std::string component_a;
  std::string component_b;
  SemanticRelation relation = SemanticRelation::kSynonym;
  double support = 0.0;

  bool operator==(const ComponentCorrespondence &) const = default;
};

struct CorrespondenceOntology {
  std::vector<Correspondence> correspondences;
  std::vector<ComponentCorrespondence> component_correspondences;

  bool operator==(const CorrespondenceOntology &) const = default;
};

// 1 - levenshtein(a', b') / max(|a'|, |b'|) over normalized labels; 1.0 when
// both normalize to the same string.
double lexical_similarity(std::string_view a, std::string_view b);

std::size_t edit_distance(std::string_view a, std::string_view b);

// 1 / (1 + d) with d the undirected is-a path length; 0 when disconnected.
// Throws NotFoundError for ids missing from the domain.
double semantic_similarity(std::string_view a, std::string_view b,
                           const Ontology &domain);

// Best-scoring domain concept for a label, if its score reaches
// params.anchor_threshold. A label sharing a lexicon synset with one of the
// domain concept's labels or aliases scores 1.0.
std::optional<Anchor> anchor(std::string_view label,
                             const ResourceSet &resources,
                             const AlignmentParams &params);

// A component concept as seen by the classifier.
struct ConceptView {
  ConceptRef ref;
  std::string label;
  std::vector<std::string> attributes;
  std::optional<Anchor> anchor;
};

// Jaccard index of two attribute-name sets (normalized). Two empty sets
// count as identical.
double attribute_jaccard(const std::vector<std::string> &a,
                         const std::vector<std::string> &b);

// Synonym / homonym / equivalent, or nothing. a and b must come from
// different components.
std::optional<Correspondence> classify(const ConceptView &a,
                                       const ConceptView &b,
                                       const AlignmentParams &params,
                                       const Ontology *domain = nullptr);

// Member concepts of a component ontology, anchored against the resources.
std::vector<ConceptView> concept_views(const Ontology &o,
                                       const ResourceSet &resources,
                                       const AlignmentParams &params);

CorrespondenceOntology align_pair(const Ontology &o1, const Ontology &o2,
                                  const ResourceSet &resources,
                                  const AlignmentParams &params);

// Pairwise alignment of every (i < j) pair, aggregated into one
// correspondence ontology.
CorrespondenceOntology align_all(const std::vector<Ontology> &ontologies,
                                 const ResourceSet &resources,
                                 const AlignmentParams &params);

// Component-level correspondences: for each component pair, support is the
// number of synonym/equivalent correspondences over the smaller component's
// concept count (capped at 1). Pairs with support >= 0.5 are reported as
// synonyms.
std::vector<ComponentCorrespondence>
build_bcco(const std::vector<Correspondence> &correspondences,
           const std::map<std::string, std::size_t> &component_sizes);

inline constexpr double kBccoSupportCutoff = 0.5;

// Canonical ordering used everywhere correspondences are listed.
void sort_correspondences(std::vector<Correspondence> &v);

// JSON alignment export; keys sorted, arrays in canonical order.
std::string export_alignment(const CorrespondenceOntology &co);

}  // namespace bcfuse

#endif  // BCFUSE_ALIGN_H_
