//
// bcfuse - Copyright 2026 The bcfuse Authors.
// SPDX-License-Identifier: Apache-2.0
//

#include "bcfuse/transform.h"

#include <algorithm>
#include <map>
#include <set>

namespace bcfuse {

Structure flatten(const ComponentModel &model) {
  Structure out;
  out.id = model.structures.size() == 1 ? model.structures.front().id : "union";

  std::map<std::string, std::size_t> by_label;  // normalized -> index
  for (const Structure &s: model.structures) {
    std::map<std::string, std::string> rename;
    for (const Concept &c: s.concepts) {
      std::string key = normalize_label_or_empty(c.name);
      auto [it, fresh] = by_label.emplace(key, out.concepts.size());
      if (fresh) {
        out.concepts.push_back(c);
      } else {
        Concept &kept = out.concepts[it->second];
        for (const Attribute &a: c.attributes) {
          bool seen = std::any_of(
              kept.attributes.begin(), kept.attributes.end(),
              [&](const Attribute &k) { return k.name == a.name; });
          if (!seen)
            kept.attributes.push_back(a);
        }
      }
      rename[c.name] = out.concepts[it->second].name;
    }

    for (Relation r: s.relations) {
      if (auto it = rename.find(r.source); it != rename.end())
        r.source = it->second;
      if (auto it = rename.find(r.target); it != rename.end())
        r.target = it->second;
      out.relations.push_back(std::move(r));
    }
    for (const ServiceSignature &sv: s.services) {
      if (std::find(out.services.begin(), out.services.end(), sv)
          == out.services.end())
        out.services.push_back(sv);
    }
  }
  return out;
}

Ontology to_ontology(const ComponentModel &model) {
  require_valid(model);
  Structure flat = flatten(model);

  Ontology o;
  o.name = model.name;

  std::set<std::string> member_ids;
  for (const Concept &c: flat.concepts)
    member_ids.insert(c.name);

  // The root takes the component name unless a member concept already does.
  std::string root_id = member_ids.contains(model.name)
                            ? "component:" + model.name
                            : model.name;
  o.concepts.push_back(
      { root_id, model.name, {}, ConceptRole::kRoot, model.name });

  std::set<std::string> value_types;
  std::size_t edge_no = 0;
  auto next_edge_id = [&]() { return "e" + std::to_string(edge_no++); };

  std::vector<Concept> concepts = flat.concepts;
  std::sort(concepts.begin(), concepts.end());
  for (const Concept &c: concepts) {
    o.concepts.push_back(
        { c.name, c.name, {}, ConceptRole::kMember, model.name });
    o.rel_edges.push_back(
        { next_edge_id(), c.name, root_id, std::string(kPartOfLabel) });

    std::vector<Attribute> attrs = c.attributes;
    std::sort(attrs.begin(), attrs.end());
    for (const Attribute &a: attrs) {
      std::string vt = std::string(kValueTypePrefix) + a.type;
      value_types.insert(a.type);
      o.rel_edges.push_back({ next_edge_id(), c.name, vt,
                              std::string(kHasAttrPrefix) + a.name });
    }
  }
  for (const std::string &t: value_types) {
    o.concepts.push_back({ std::string(kValueTypePrefix) + t, t, {},
                           ConceptRole::kValueType, model.name });
  }

  std::vector<Relation> relations = flat.relations;
  std::sort(relations.begin(), relations.end());
  for (const Relation &r: relations) {
    if (r.kind == RelationKind::kIsA) {
      o.isa_edges.push_back({ r.source, r.target });
    } else {
      std::string label = r.label ? *r.label : std::string(to_string(r.kind));
      o.rel_edges.push_back({ next_edge_id(), r.source, r.target, label });
    }
  }
  return o;
}

}  // namespace bcfuse
