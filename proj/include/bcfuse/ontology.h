//
// bcfuse - Copyright 2026 The bcfuse Authors.
// SPDX-License-Identifier: Apache-2.0
//

#ifndef BCFUSE_ONTOLOGY_H_
#define BCFUSE_ONTOLOGY_H_

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace bcfuse {

// kRoot and kValueType concepts are synthesized when a component is
// transformed; kMember concepts stand for the component's own concepts.
enum class ConceptRole { kDomain, kRoot, kMember, kValueType };

struct OntologyConcept {
  std::string id;
  std::string label;
  std::vector<std::string> aliases;  // sorted, unique
  ConceptRole role = ConceptRole::kDomain;
  // Owning component for component-derived concepts, empty for domain ones.
  std::string origin;

  bool operator==(const OntologyConcept &) const = default;
};

struct IsaEdge {
  std::string child;
  std::string parent;

  auto operator<=>(const IsaEdge &) const = default;
};

struct RelEdge {
  std::string id;
  std::string source;
  std::string target;
  std::string label;

  auto operator<=>(const RelEdge &) const = default;
};

struct Ontology {
  std::string name;
  std::vector<OntologyConcept> concepts;
  std::vector<IsaEdge> isa_edges;
  std::vector<RelEdge> rel_edges;

  bool operator==(const Ontology &) const = default;

  const OntologyConcept *find(std::string_view id) const;
  bool contains(std::string_view id) const { return find(id) != nullptr; }
};

std::size_t concept_count(const Ontology &o);

// Checks unique ids, edge references and is-a acyclicity. Throws
// ValidationError with code DUP_CONCEPT, UNKNOWN_CONCEPT or ISA_CYCLE.
void check_ontology(const Ontology &o);

// Direct is-a parents of a concept, sorted.
std::vector<std::string> isa_parents(const Ontology &o, std::string_view id);

// Shortest path length between two concepts over is-a edges taken as
// undirected, or nullopt when they are disconnected.
std::optional<std::size_t> isa_distance(const Ontology &o, std::string_view a,
                                        std::string_view b);

// Nearest common is-a ancestor (a concept counts as its own ancestor).
// Minimizes the summed upward distance; ties go to the smallest id.
std::optional<std::string> nearest_common_ancestor(const Ontology &o,
                                                   std::string_view a,
                                                   std::string_view b);

// Attribute names of a component-derived concept, read from its
// "hasAttr:<name>" edges. Sorted, unique.
std::vector<std::string> attribute_names(const Ontology &o,
                                         std::string_view concept_id);

}  // namespace bcfuse

#endif  // BCFUSE_ONTOLOGY_H_
