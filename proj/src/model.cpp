//
// bcfuse - Copyright 2026 The bcfuse Authors.
// SPDX-License-Identifier: Apache-2.0
//

#include "bcfuse/model.h"

#include <algorithm>
#include <cctype>
#include <set>

#include "bcfuse/error.h"

namespace bcfuse {

std::string_view to_string(ComponentKind kind) {
  return kind == ComponentKind::kEntity ? "entity" : "process";
}

std::string_view to_string(ReuseKind kind) {
  return kind == ReuseKind::kReusable ? "reusable" : "generic";
}

std::string_view to_string(RelationKind kind) {
  switch (kind) {
  case RelationKind::kAssociation:
    return "assoc";
  case RelationKind::kIsA:
    return "isa";
  case RelationKind::kComposition:
    return "comp";
  }
  return "assoc";
}

std::optional<ComponentKind> parse_component_kind(std::string_view s) {
  if (s == "entity")
    return ComponentKind::kEntity;
  if (s == "process")
    return ComponentKind::kProcess;
  return std::nullopt;
}

std::optional<ReuseKind> parse_reuse_kind(std::string_view s) {
  if (s == "reusable")
    return ReuseKind::kReusable;
  if (s == "generic")
    return ReuseKind::kGeneric;
  return std::nullopt;
}

std::optional<RelationKind> parse_relation_kind(std::string_view s) {
  if (s == "assoc")
    return RelationKind::kAssociation;
  if (s == "isa")
    return RelationKind::kIsA;
  if (s == "comp")
    return RelationKind::kComposition;
  return std::nullopt;
}

const Concept *Structure::find_concept(std::string_view name) const {
  auto it = std::find_if(concepts.begin(), concepts.end(),
                         [&](const Concept &c) { return c.name == name; });
  return it == concepts.end() ? nullptr : &*it;
}

ComponentModel canonicalize(ComponentModel model) {
  for (Structure &s: model.structures) {
    for (Concept &c: s.concepts)
      std::sort(c.attributes.begin(), c.attributes.end());
    std::sort(s.concepts.begin(), s.concepts.end());
    std::sort(s.relations.begin(), s.relations.end());
    std::sort(s.services.begin(), s.services.end());
  }
  return model;
}

namespace {

bool is_lower(char c) {
  return std::islower(static_cast<unsigned char>(c)) != 0;
}

bool is_upper(char c) {
  return std::isupper(static_cast<unsigned char>(c)) != 0;
}

bool is_digit(char c) {
  return std::isdigit(static_cast<unsigned char>(c)) != 0;
}

bool is_alnum(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) != 0;
}

}  // namespace

std::string normalize_label_or_empty(std::string_view raw) {
  std::vector<std::string> tokens;
  std::string current;

  auto flush = [&]() {
    if (!current.empty()) {
      tokens.push_back(std::move(current));
      current.clear();
    }
  };

  for (std::size_t i = 0; i < raw.size(); ++i) {
    const char c = raw[i];
    if (!is_alnum(c)) {
      flush();
      continue;
    }

    if (is_upper(c) && !current.empty()) {
      const char prev = raw[i - 1];
      const bool next_lower = i + 1 < raw.size() && is_lower(raw[i + 1]);
      // "conferenceSession" splits before 'S'; "XMLParser" splits before 'P'.
      if (is_lower(prev) || is_digit(prev) || (is_upper(prev) && next_lower))
        flush();
    }
    current.push_back(
        static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
  }
  flush();

  std::string out;
  for (const std::string &t: tokens) {
    if (!out.empty())
      out.push_back(' ');
    out += t;
  }
  return out;
}

std::string normalize_label(std::string_view raw) {
  std::string out = normalize_label_or_empty(raw);
  if (out.empty())
    throw ValidationError("EMPTY_LABEL", "label '" + std::string(raw)
                                             + "' has no word characters");
  return out;
}

bool is_identifier(std::string_view s) {
  if (s.empty() || !std::isalpha(static_cast<unsigned char>(s.front())))
    return false;
  return std::all_of(s.begin(), s.end(),
                     [](char c) { return is_alnum(c) || c == '_'; });
}

bool is_component_name(std::string_view s) {
  std::size_t start = 0;
  while (true) {
    std::size_t plus = s.find('+', start);
    std::string_view part = s.substr(start, plus == std::string_view::npos
                                                ? std::string_view::npos
                                                : plus - start);
    if (!is_identifier(part))
      return false;
    if (plus == std::string_view::npos)
      return true;
    start = plus + 1;
  }
}

bool is_cardinality(std::string_view s) {
  std::size_t dots = s.find("..");
  if (dots == std::string_view::npos || dots == 0)
    return false;
  std::string_view lo = s.substr(0, dots), hi = s.substr(dots + 2);
  auto all_digits = [](std::string_view v) {
    return !v.empty() && std::all_of(v.begin(), v.end(), is_digit);
  };
  if (!all_digits(lo))
    return false;
  if (hi == "*")
    return true;
  if (!all_digits(hi) || lo.size() > 9 || hi.size() > 9)
    return false;
  return std::stol(std::string(lo)) <= std::stol(std::string(hi));
}

namespace {

class Validator {
public:
  explicit Validator(const ComponentModel &model): model_(model) { }

  std::vector<ValidationFinding> run() {
    if (!is_component_name(model_.name))
      add(finding::kBadName, model_.name,
          "component name '" + model_.name + "' is not an identifier");

    const std::size_t n = model_.structures.size();
    if (model_.reuse == ReuseKind::kReusable && n != 1)
      add(finding::kStructCount, model_.name,
          "reusable component must have exactly 1 structure, has "
              + std::to_string(n));
    if (model_.reuse == ReuseKind::kGeneric && n < 1)
      add(finding::kStructCount, model_.name,
          "generic component must have at least 1 structure");

    std::set<std::string> ids;
    for (const Structure &s: model_.structures) {
      std::string path = model_.name + "/structure[" + s.id + "]";
      if (!is_identifier(s.id))
        add(finding::kBadName, path, "structure id is not an identifier");
      if (!ids.insert(s.id).second)
        add(finding::kDupStructure, path, "duplicate structure id");
      check_structure(s, path);
    }
    return std::move(findings_);
  }

private:
  void add(std::string_view code, std::string path, std::string message) {
    findings_.push_back(
        { std::string(code), std::move(path), std::move(message) });
  }

  void check_structure(const Structure &s, const std::string &path) {
    std::set<std::string> normalized;
    for (const Concept &c: s.concepts) {
      std::string cpath = path + "/concept[" + c.name + "]";
      if (!is_identifier(c.name)) {
        add(finding::kBadName, cpath, "concept name is not an identifier");
      } else if (!normalized.insert(normalize_label(c.name)).second) {
        add(finding::kDupConcept, cpath,
            "concept '" + c.name + "' is declared more than once");
      }

      std::set<std::string> attrs;
      for (const Attribute &a: c.attributes) {
        std::string apath = cpath + "/attr[" + a.name + "]";
        if (!is_identifier(a.name) || !is_identifier(a.type))
          add(finding::kBadName, apath, "attribute name or type is invalid");
        else if (!attrs.insert(a.name).second)
          add(finding::kDupAttribute, apath, "duplicate attribute");
      }
    }

    for (std::size_t i = 0; i < s.relations.size(); ++i) {
      const Relation &r = s.relations[i];
      std::string rpath = path + "/relation[" + std::to_string(i) + "]";
      for (const std::string *end: { &r.source, &r.target }) {
        if (s.find_concept(*end) == nullptr)
          add(finding::kDanglingRef, rpath,
              "relation endpoint '" + *end + "' is not a concept");
      }
      if (r.kind == RelationKind::kIsA && r.label)
        add(finding::kIsaLabel, rpath, "isa relations carry no label");
      if (r.label && !is_identifier(*r.label))
        add(finding::kBadName, rpath, "relation label is not a word");
      if (r.cardinality && !is_cardinality(*r.cardinality))
        add(finding::kBadCardinality, rpath,
            "cardinality '" + *r.cardinality + "' is not m..n");
    }

    for (const ServiceSignature &sv: s.services) {
      std::string spath = path + "/service[" + sv.name + "]";
      if (!is_identifier(sv.name))
        add(finding::kBadName, spath, "service name is not an identifier");
      if (sv.return_type && !is_identifier(*sv.return_type))
        add(finding::kBadName, spath, "return type is not an identifier");
      std::set<std::string> params;
      for (const Parameter &p: sv.params) {
        if (!is_identifier(p.name) || !is_identifier(p.type))
          add(finding::kBadName, spath + "/param[" + p.name + "]",
              "parameter name or type is invalid");
        else if (!params.insert(p.name).second)
          add(finding::kDupParam, spath + "/param[" + p.name + "]",
              "duplicate parameter");
      }
    }
  }

  const ComponentModel &model_;
  std::vector<ValidationFinding> findings_;
};

}  // namespace

std::vector<ValidationFinding> validate(const ComponentModel &model) {
  return Validator(model).run();
}

void require_valid(const ComponentModel &model) {
  auto findings = validate(model);
  if (!findings.empty()) {
    const ValidationFinding &f = findings.front();
    throw ValidationError(f.code, f.path + ": " + f.message);
  }
}

}  // namespace bcfuse
