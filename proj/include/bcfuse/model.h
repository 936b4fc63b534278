//
// bcfuse - Copyright 2026 The bcfuse Authors.
// SPDX-License-Identifier: Apache-2.0
//

#ifndef BCFUSE_MODEL_H_
#define BCFUSE_MODEL_H_

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace bcfuse {

enum class ComponentKind { kEntity, kProcess };
enum class ReuseKind { kReusable, kGeneric };
enum class RelationKind { kAssociation, kIsA, kComposition };

std::string_view to_string(ComponentKind kind);
std::string_view to_string(ReuseKind kind);
// Short keyword used by the .bcm grammar ("assoc", "isa", "comp").
std::string_view to_string(RelationKind kind);

std::optional<ComponentKind> parse_component_kind(std::string_view s);
std::optional<ReuseKind> parse_reuse_kind(std::string_view s);
std::optional<RelationKind> parse_relation_kind(std::string_view s);

struct Attribute {
  std::string name;
  std::string type;

  auto operator<=>(const Attribute &) const = default;
};

struct Concept {
  std::string name;
  std::vector<Attribute> attributes;

  auto operator<=>(const Concept &) const = default;
};

struct Relation {
  std::string source;
  std::string target;
  RelationKind kind = RelationKind::kAssociation;
  std::optional<std::string> label;
  std::optional<std::string> cardinality;

  auto operator<=>(const Relation &) const = default;
};

struct Parameter {
  std::string name;
  std::string type;

  auto operator<=>(const Parameter &) const = default;
};

struct ServiceSignature {
  std::string name;
  std::vector<Parameter> params;
  std::optional<std::string> return_type;

  auto operator<=>(const ServiceSignature &) const = default;
};

struct Structure {
  std::string id;
  std::vector<Concept> concepts;
  std::vector<Relation> relations;
  std::vector<ServiceSignature> services;

  bool operator==(const Structure &) const = default;

  const Concept *find_concept(std::string_view name) const;
};

struct ComponentModel {
  std::string name;
  ComponentKind kind = ComponentKind::kEntity;
  ReuseKind reuse = ReuseKind::kReusable;
  std::vector<Structure> structures;
  // Source-file path, or "merged" for integration results. Not part of the
  // serialized form and therefore not compared.
  std::string provenance;

  bool operator==(const ComponentModel &o) const {
    return name == o.name && kind == o.kind && reuse == o.reuse
           && structures == o.structures;
  }
};

// Sorts concepts, attributes, relations and services lexicographically.
// Structure order is preserved (it is significant for generic components).
ComponentModel canonicalize(ComponentModel model);

/// Lower-cases a label and splits camelCase, snake_case and whitespace
/// separated words, re-joining the tokens with single spaces.
///
/// "conferenceSession" -> "conference session",
/// "Login_Session " -> "login session".
///
/// Throws ValidationError (code EMPTY_LABEL) when no token remains.
std::string normalize_label(std::string_view raw);

// Same tokenization as normalize_label but never throws; degenerate input
// yields the empty string.
std::string normalize_label_or_empty(std::string_view raw);

// ASCII letters, digits and '_' starting with a letter.
bool is_identifier(std::string_view s);

// One or more identifiers joined by '+'. Integration results are named by
// joining their inputs this way.
bool is_component_name(std::string_view s);

struct ValidationFinding {
  std::string code;
  // Slash separated path to the offending element, e.g.
  // "SubmissionMgr/structure[main]/relation[2]".
  std::string path;
  std::string message;

  bool operator==(const ValidationFinding &) const = default;
};

// Finding codes emitted by validate().
namespace finding {
inline constexpr std::string_view kBadName = "BAD_NAME";
inline constexpr std::string_view kStructCount = "STRUCT_COUNT";
inline constexpr std::string_view kDupConcept = "DUP_CONCEPT";
inline constexpr std::string_view kDupAttribute = "DUP_ATTR";
inline constexpr std::string_view kDanglingRef = "DANGLING_REF";
inline constexpr std::string_view kIsaLabel = "ISA_LABEL";
inline constexpr std::string_view kBadCardinality = "BAD_CARDINALITY";
inline constexpr std::string_view kDupParam = "DUP_PARAM";
inline constexpr std::string_view kDupStructure = "DUP_STRUCTURE";
}  // namespace finding

std::vector<ValidationFinding> validate(const ComponentModel &model);

// Throws ValidationError carrying the first finding when validate() is not
// empty.
void require_valid(const ComponentModel &model);

bool is_cardinality(std::string_view s);

}  // namespace bcfuse

#endif  // BCFUSE_MODEL_H_
