//
// bcfuse - Copyright 2026 The bcfuse Authors.
// SPDX-License-Identifier: Apache-2.0
//

#include "bcfuse/align.h"

#include <algorithm>
#include <set>
#include <tuple>

#include <json.hpp>

#include "bcfuse/error.h"

namespace bcfuse {

void AlignmentParams::check() const {
  for (double v: { anchor_threshold, homonym_attr_jaccard_max, lexical_weight })
    if (!(v >= 0.0 && v <= 1.0))
      throw ValidationError("BAD_PARAM",
                            "alignment parameters must lie in [0, 1]");
}

std::string_view to_string(SemanticRelation r) {
  switch (r) {
  case SemanticRelation::kSynonym:
    return "synonym";
  case SemanticRelation::kHomonym:
    return "homonym";
  case SemanticRelation::kEquivalent:
    return "equivalent";
  }
  return "synonym";
}

std::optional<SemanticRelation> parse_semantic_relation(std::string_view s) {
  if (s == "synonym")
    return SemanticRelation::kSynonym;
  if (s == "homonym")
    return SemanticRelation::kHomonym;
  if (s == "equivalent")
    return SemanticRelation::kEquivalent;
  return std::nullopt;
}

std::optional<std::string> Correspondence::shared_anchor() const {
  if (source_anchor && target_anchor
      && source_anchor->concept_id == target_anchor->concept_id)
    return source_anchor->concept_id;
  return std::nullopt;
}

Correspondence Correspondence::swapped() const {
  Correspondence c = *this;
  std::swap(c.source, c.target);
  std::swap(c.source_anchor, c.target_anchor);
  return c;
}

std::size_t edit_distance(std::string_view a, std::string_view b) {
  std::vector<std::size_t> prev(b.size() + 1), cur(b.size() + 1);
  for (std::size_t j = 0; j <= b.size(); ++j)
    prev[j] = j;
  for (std::size_t i = 1; i <= a.size(); ++i) {
    cur[0] = i;
    for (std::size_t j = 1; j <= b.size(); ++j) {
      std::size_t subst = prev[j - 1] + (a[i - 1] == b[j - 1] ? 0 : 1);
      cur[j] = std::min({ prev[j] + 1, cur[j - 1] + 1, subst });
    }
    std::swap(prev, cur);
  }
  return prev[b.size()];
}

double lexical_similarity(std::string_view a, std::string_view b) {
  std::string na = normalize_label_or_empty(a);
  std::string nb = normalize_label_or_empty(b);
  if (na == nb)
    return 1.0;
  std::size_t longest = std::max(na.size(), nb.size());
  return 1.0
         - static_cast<double>(edit_distance(na, nb))
               / static_cast<double>(longest);
}

double semantic_similarity(std::string_view a, std::string_view b,
                           const Ontology &domain) {
  for (std::string_view id: { a, b })
    if (!domain.contains(id))
      throw NotFoundError("UNKNOWN_CONCEPT",
                          "'" + std::string(id) + "' is not a domain concept");
  auto d = isa_distance(domain, a, b);
  return d ? 1.0 / (1.0 + static_cast<double>(*d)) : 0.0;
}

std::optional<Anchor> anchor(std::string_view label,
                             const ResourceSet &resources,
                             const AlignmentParams &params) {
  const std::string norm = normalize_label_or_empty(label);

  std::optional<Anchor> best;
  for (const OntologyConcept &d: resources.domain.concepts) {
    std::vector<std::string_view> names { d.label };
    names.insert(names.end(), d.aliases.begin(), d.aliases.end());

    double score = 0.0;
    for (std::string_view name: names) {
      if (resources.lexicon.are_synonyms(norm, normalize_label_or_empty(name))) {
        score = 1.0;
        break;
      }
      score = std::max(score, lexical_similarity(norm, name));
    }

    if (!best || score > best->score
        || (score == best->score && d.id < best->concept_id))
      best = Anchor { d.id, score };
  }

  if (best && best->score >= params.anchor_threshold)
    return best;
  return std::nullopt;
}

double attribute_jaccard(const std::vector<std::string> &a,
                         const std::vector<std::string> &b) {
  std::set<std::string> sa, sb;
  for (const auto &x: a)
    sa.insert(normalize_label_or_empty(x));
  for (const auto &x: b)
    sb.insert(normalize_label_or_empty(x));
  if (sa.empty() && sb.empty())
    return 1.0;

  std::size_t common = 0;
  for (const auto &x: sa)
    common += sb.count(x);
  std::size_t uni = sa.size() + sb.size() - common;
  return static_cast<double>(common) / static_cast<double>(uni);
}

std::optional<Correspondence> classify(const ConceptView &a,
                                       const ConceptView &b,
                                       const AlignmentParams &params,
                                       const Ontology *domain) {
  const bool same_label = normalize_label_or_empty(a.label)
                          == normalize_label_or_empty(b.label);
  const bool both_unanchored = !a.anchor && !b.anchor;
  const bool same_anchor = a.anchor && b.anchor
                           && a.anchor->concept_id == b.anchor->concept_id;
  const double anchor_product = (a.anchor ? a.anchor->score : 1.0)
                                * (b.anchor ? b.anchor->score : 1.0);

  Correspondence c;
  c.source = a.ref;
  c.target = b.ref;
  c.source_anchor = a.anchor;
  c.target_anchor = b.anchor;

  if (same_label) {
    double jaccard = attribute_jaccard(a.attributes, b.attributes);
    if ((same_anchor || both_unanchored)
        && jaccard >= params.homonym_attr_jaccard_max) {
      c.relation = SemanticRelation::kEquivalent;
      c.confidence = anchor_product;
    } else {
      c.relation = SemanticRelation::kHomonym;
      c.confidence = 1.0 - jaccard;
    }
  } else if (same_anchor) {
    c.relation = SemanticRelation::kSynonym;
    c.confidence = anchor_product;
  } else {
    return std::nullopt;
  }

  double semantic = 0.0;
  if (domain != nullptr && a.anchor && b.anchor)
    semantic = semantic_similarity(a.anchor->concept_id, b.anchor->concept_id,
                                   *domain);
  c.similarity = params.lexical_weight * lexical_similarity(a.label, b.label)
                 + (1.0 - params.lexical_weight) * semantic;
  return c;
}

std::vector<ConceptView> concept_views(const Ontology &o,
                                       const ResourceSet &resources,
                                       const AlignmentParams &params) {
  std::vector<ConceptView> out;
  for (const OntologyConcept &c: o.concepts) {
    if (c.role != ConceptRole::kMember)
      continue;
    ConceptView v;
    v.ref = { o.name, c.id };
    v.label = c.label;
    v.attributes = attribute_names(o, c.id);
    v.anchor = anchor(c.label, resources, params);
    out.push_back(std::move(v));
  }
  std::sort(out.begin(), out.end(),
            [](const auto &x, const auto &y) { return x.ref < y.ref; });
  return out;
}

void sort_correspondences(std::vector<Correspondence> &v) {
  std::sort(v.begin(), v.end(), [](const auto &x, const auto &y) {
    return std::tie(x.source, x.target) < std::tie(y.source, y.target);
  });
}

namespace {

std::vector<Correspondence> cross(const std::vector<ConceptView> &left,
                                  const std::vector<ConceptView> &right,
                                  const ResourceSet &resources,
                                  const AlignmentParams &params) {
  std::vector<Correspondence> out;
  for (const ConceptView &a: left) {
    for (const ConceptView &b: right) {
      if (auto c = classify(a, b, params, &resources.domain))
        out.push_back(std::move(*c));
    }
  }
  return out;
}

std::size_t member_count(const Ontology &o) {
  return static_cast<std::size_t>(
      std::count_if(o.concepts.begin(), o.concepts.end(), [](const auto &c) {
        return c.role == ConceptRole::kMember;
      }));
}

}  // namespace

CorrespondenceOntology align_pair(const Ontology &o1, const Ontology &o2,
                                  const ResourceSet &resources,
                                  const AlignmentParams &params) {
  return align_all({ o1, o2 }, resources, params);
}

CorrespondenceOntology align_all(const std::vector<Ontology> &ontologies,
                                 const ResourceSet &resources,
                                 const AlignmentParams &params) {
  params.check();
  std::set<std::string> names;
  for (const Ontology &o: ontologies)
    if (!names.insert(o.name).second)
      throw ValidationError("DUP_COMPONENT",
                            "component '" + o.name + "' appears twice");

  std::vector<std::vector<ConceptView>> views;
  std::map<std::string, std::size_t> sizes;
  for (const Ontology &o: ontologies) {
    views.push_back(concept_views(o, resources, params));
    sizes[o.name] = member_count(o);
  }

  CorrespondenceOntology co;
  for (std::size_t i = 0; i < ontologies.size(); ++i) {
    for (std::size_t j = i + 1; j < ontologies.size(); ++j) {
      auto part = cross(views[i], views[j], resources, params);
      co.correspondences.insert(co.correspondences.end(), part.begin(),
                                part.end());
    }
  }
  sort_correspondences(co.correspondences);
  co.component_correspondences = build_bcco(co.correspondences, sizes);
  return co;
}

std::vector<ComponentCorrespondence>
build_bcco(const std::vector<Correspondence> &correspondences,
           const std::map<std::string, std::size_t> &component_sizes) {
  std::map<std::pair<std::string, std::string>, std::size_t> counts;
  for (const Correspondence &c: correspondences) {
    auto key = std::minmax(c.source.component, c.target.component);
    std::size_t &n = counts[{ key.first, key.second }];
    if (c.relation != SemanticRelation::kHomonym)
      ++n;
  }

  auto size_of = [&](const std::string &name) -> std::size_t {
    auto it = component_sizes.find(name);
    return it == component_sizes.end() ? 0 : it->second;
  };

  std::vector<ComponentCorrespondence> out;
  for (const auto &[pair, n]: counts) {
    std::size_t smaller = std::min(size_of(pair.first), size_of(pair.second));
    if (smaller == 0 || n == 0)
      continue;
    double support = std::min(
        1.0, static_cast<double>(n) / static_cast<double>(smaller));
    if (support >= kBccoSupportCutoff)
      out.push_back(
          { pair.first, pair.second, SemanticRelation::kSynonym, support });
  }
  return out;
}

namespace {

nlohmann::json anchor_json(const std::optional<Anchor> &a) {
  if (!a)
    return nullptr;
  return { { "concept", a->concept_id }, { "score", a->score } };
}

}  // namespace

std::string export_alignment(const CorrespondenceOntology &co) {
  nlohmann::json doc;
  doc["correspondences"] = nlohmann::json::array();
  for (const Correspondence &c: co.correspondences) {
    auto shared = c.shared_anchor();
    doc["correspondences"].push_back({
        { "source",
          { { "component", c.source.component },
            { "concept", c.source.concept_id },
            { "anchor", anchor_json(c.source_anchor) } } },
        { "target",
          { { "component", c.target.component },
            { "concept", c.target.concept_id },
            { "anchor", anchor_json(c.target_anchor) } } },
        { "relation", to_string(c.relation) },
        { "confidence", c.confidence },
        { "similarity", c.similarity },
        { "anchor", shared ? nlohmann::json(*shared) : nlohmann::json() },
    });
  }
  doc["components"] = nlohmann::json::array();
  for (const ComponentCorrespondence &cc: co.component_correspondences) {
    doc["components"].push_back({ { "a", cc.component_a },
                                  { "b", cc.component_b },
                                  { "relation", to_string(cc.relation) },
                                  { "support", cc.support } });
  }
  return doc.dump(2) + "\n";
}

}  // namespace bcfuse
