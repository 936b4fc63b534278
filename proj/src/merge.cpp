//
// bcfuse - Copyright 2026 The bcfuse Authors.
// SPDX-License-Identifier: Apache-2.0
//

#include "bcfuse/merge.h"

#include <algorithm>
#include <cctype>
#include <map>
#include <numeric>
#include <set>
#include <sstream>

#include "bcfuse/error.h"
#include "bcfuse/transform.h"

namespace bcfuse {

namespace {

std::string as_identifier(const std::string &label) {
  if (is_identifier(label))
    return label;
  std::string out = normalize_label_or_empty(label);
  std::replace(out.begin(), out.end(), ' ', '_');
  if (out.empty() || !std::isalpha(static_cast<unsigned char>(out.front())))
    out = "c_" + out;
  return out;
}

std::string suffixed(const std::string &label, const std::string &component) {
  std::string suffix = component;
  std::replace(suffix.begin(), suffix.end(), '+', '_');
  return label + "_" + suffix;
}

}  // namespace

std::string choose_rename_label(const Correspondence &c,
                                const Ontology &domain) {
  if (auto shared = c.shared_anchor()) {
    if (const OntologyConcept *d = domain.find(*shared))
      return as_identifier(d->label);
  }
  std::string a = normalize_label_or_empty(c.source.concept_id);
  std::string b = normalize_label_or_empty(c.target.concept_id);
  return as_identifier(std::min(a, b));
}

ResolutionAction resolve_defaults(const ResolutionAction &action,
                                  const Correspondence &c,
                                  const Ontology &domain) {
  ResolutionAction out = action;
  switch (action.kind) {
  case ActionKind::kRenameSame:
    if (!out.label)
      out.label = choose_rename_label(c, domain);
    break;
  case ActionKind::kRenameDifferent:
  case ActionKind::kKeepBoth:
    if (!out.label_a || !out.label_b) {
      out.label_a = suffixed(c.source.concept_id, c.source.component);
      out.label_b = suffixed(c.target.concept_id, c.target.component);
    }
    break;
  case ActionKind::kDeleteOne:
    if (!out.kept)
      out.kept = Side::kSource;
    break;
  case ActionKind::kMergeConcepts:
    break;
  }
  return out;
}

std::string IntegrationReport::to_text() const {
  std::ostringstream out;
  for (const AppliedDecision &d: decisions)
    out << d.index << '\t' << to_string(d.relation) << '\t' << d.context_key
        << '\t' << format_action(d.action) << '\n';
  return out.str();
}

namespace {

struct Node {
  ConceptRef ref;
  std::string label;
  std::vector<Attribute> attributes;
  bool deleted = false;
};

struct Edge {
  std::size_t source;
  std::size_t target;
  RelationKind kind;
  std::optional<std::string> label;
  std::optional<std::string> cardinality;
};

class MergeState {
public:
  explicit MergeState(const std::vector<ComponentModel> &models) {
    for (const ComponentModel &m: models) {
      Structure flat = flatten(m);
      std::map<std::string, std::size_t> local;
      for (const Concept &c: flat.concepts) {
        local[c.name] = nodes_.size();
        index_[{ m.name, c.name }] = nodes_.size();
        nodes_.push_back({ { m.name, c.name }, c.name, c.attributes });
      }
      for (const Relation &r: flat.relations) {
        auto s = local.find(r.source), t = local.find(r.target);
        if (s == local.end() || t == local.end())
          throw ValidationError("DANGLING_REF",
                                m.name + ": relation endpoint is not a concept");
        edges_.push_back(
            { s->second, t->second, r.kind, r.label, r.cardinality });
      }
      services_.insert(services_.end(), flat.services.begin(),
                       flat.services.end());
    }
    parent_.resize(nodes_.size());
    std::iota(parent_.begin(), parent_.end(), 0);
  }

  std::map<ConceptRef, std::optional<std::string>> concept_map() {
    std::map<ConceptRef, std::optional<std::string>> out;
    for (std::size_t i = 0; i < nodes_.size(); ++i) {
      const Node &r = rep(i);
      out[nodes_[i].ref] =
          r.deleted ? std::nullopt : std::optional<std::string>(r.label);
    }
    return out;
  }

  std::size_t node(const ConceptRef &ref) const {
    auto it = index_.find(ref);
    if (it == index_.end())
      throw NotFoundError("UNKNOWN_CONCEPT", "decision references unknown concept "
                                                 + ref.component + "."
                                                 + ref.concept_id);
    return it->second;
  }

  std::size_t find(std::size_t x) {
    while (parent_[x] != x) {
      parent_[x] = parent_[parent_[x]];
      x = parent_[x];
    }
    return x;
  }

  Node &rep(std::size_t x) { return nodes_[find(x)]; }

  void unify(std::size_t a, std::size_t b, const std::string &label) {
    std::size_t ra = find(a), rb = find(b);
    if (ra != rb) {
      parent_[rb] = ra;
      for (const Attribute &attr: nodes_[rb].attributes) {
        auto &into = nodes_[ra].attributes;
        bool seen = std::any_of(into.begin(), into.end(), [&](const auto &x) {
          return x.name == attr.name;
        });
        if (!seen)
          into.push_back(attr);
      }
    }
    nodes_[ra].label = label;
  }

  ComponentModel build(const std::vector<ComponentModel> &models) {
    ComponentModel out;
    out.provenance = "merged";
    out.reuse = ReuseKind::kReusable;
    out.kind = ComponentKind::kEntity;
    for (std::size_t i = 0; i < models.size(); ++i) {
      out.name += (i ? "+" : "") + models[i].name;
      if (models[i].kind == ComponentKind::kProcess)
        out.kind = ComponentKind::kProcess;
    }

    Structure s;
    s.id = models.size() == 1 && models[0].structures.size() == 1
               ? models[0].structures[0].id
               : "merged";
    for (std::size_t i = 0; i < nodes_.size(); ++i) {
      if (find(i) != i || nodes_[i].deleted)
        continue;
      s.concepts.push_back({ nodes_[i].label, nodes_[i].attributes });
    }

    std::set<Relation> seen;
    for (const Edge &e: edges_) {
      const Node &src = rep(e.source);
      const Node &dst = rep(e.target);
      if (src.deleted || dst.deleted)
        continue;
      Relation r { src.label, dst.label, e.kind, e.label, e.cardinality };
      if (seen.insert(r).second)
        s.relations.push_back(std::move(r));
    }

    std::set<ServiceSignature> seen_services;
    for (const ServiceSignature &sv: services_) {
      if (seen_services.insert(sv).second)
        s.services.push_back(sv);
    }

    out.structures.push_back(std::move(s));
    return canonicalize(std::move(out));
  }

private:
  std::vector<Node> nodes_;
  std::vector<std::size_t> parent_;
  std::vector<Edge> edges_;
  std::vector<ServiceSignature> services_;
  std::map<ConceptRef, std::size_t> index_;
};

AppliedDecision apply(MergeState &state, std::size_t index,
                      const Conflict &conflict, const Ontology &domain) {
  const Correspondence &c = conflict.correspondence();
  AppliedDecision d;
  d.index = index;
  d.relation = c.relation;
  d.context_key = conflict.context_key();
  d.action = resolve_defaults(*conflict.decision(), c, domain);

  std::size_t src = state.node(c.source), dst = state.node(c.target);
  Node &rs = state.rep(src);
  Node &rt = state.rep(dst);
  d.source_before = rs.label;
  d.target_before = rt.label;

  auto finish = [&]() {
    d.source_after = state.rep(src).deleted ? "" : state.rep(src).label;
    d.target_after = state.rep(dst).deleted ? "" : state.rep(dst).label;
    return d;
  };
  auto skip = [&](std::string note) {
    d.skipped = true;
    d.note = std::move(note);
    return finish();
  };

  if (rs.deleted || rt.deleted)
    return skip("a concept of this pair was deleted by an earlier decision");
  const bool joined = state.find(src) == state.find(dst);

  switch (d.action.kind) {
  case ActionKind::kRenameSame:
    state.unify(src, dst, *d.action.label);
    break;
  case ActionKind::kMergeConcepts:
    state.unify(src, dst, std::min(rs.label, rt.label));
    break;
  case ActionKind::kRenameDifferent:
  case ActionKind::kKeepBoth:
    if (joined)
      return skip("the pair was merged by an earlier decision");
    rs.label = *d.action.label_a;
    rt.label = *d.action.label_b;
    break;
  case ActionKind::kDeleteOne:
    if (joined)
      return skip("the pair was merged by an earlier decision");
    (*d.action.kept == Side::kSource ? rt : rs).deleted = true;
    break;
  }
  return finish();
}

}  // namespace

IntegrationResult integrate_partial(const std::vector<ComponentModel> &models,
                                    const std::vector<Conflict> &conflicts,
                                    const Ontology &domain) {
  MergeState state(models);
  IntegrationResult result;
  for (std::size_t i = 0; i < conflicts.size(); ++i) {
    if (conflicts[i].pending()) {
      result.report.unresolved.push_back(i);
      continue;
    }
    result.report.decisions.push_back(apply(state, i, conflicts[i], domain));
  }
  result.model = state.build(models);
  result.concept_map = state.concept_map();
  return result;
}

IntegrationResult integrate(const std::vector<ComponentModel> &models,
                            const CorrespondenceOntology &co,
                            const std::vector<Conflict> &decisions,
                            const Ontology &domain) {
  std::set<std::string> names;
  for (const ComponentModel &m: models) {
    require_valid(m);
    if (!names.insert(m.name).second)
      throw ValidationError("DUP_COMPONENT",
                            "component '" + m.name + "' appears twice");
  }

  for (std::size_t i = 0; i < decisions.size(); ++i) {
    if (decisions[i].pending())
      throw StateError("UNDECIDED_CONFLICT",
                       "conflict " + std::to_string(i) + " is not decided");
    const Correspondence &c = decisions[i].correspondence();
    if (std::find(co.correspondences.begin(), co.correspondences.end(), c)
        == co.correspondences.end())
      throw NotFoundError("UNKNOWN_CORRESPONDENCE",
                          "conflict " + std::to_string(i)
                              + " is not part of the correspondence ontology");
  }
  for (const Correspondence &c: co.correspondences) {
    bool covered = std::any_of(decisions.begin(), decisions.end(),
                               [&](const Conflict &k) {
                                 return k.correspondence() == c;
                               });
    if (!covered)
      throw StateError("UNDECIDED_CONFLICT",
                       "no decision for " + c.source.component + "."
                           + c.source.concept_id + " / " + c.target.component
                           + "." + c.target.concept_id);
  }

  IntegrationResult result = integrate_partial(models, decisions, domain);
  auto findings = validate(result.model);
  if (!findings.empty()) {
    std::string msg = "merged model is invalid:";
    for (const ValidationFinding &f: findings)
      msg += " [" + f.code + "] " + f.path + ": " + f.message + ";";
    throw ValidationError("MERGE_INVALID", msg);
  }
  return result;
}

}  // namespace bcfuse
