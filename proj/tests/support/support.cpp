//
// bcfuse - Copyright 2026 The bcfuse Authors.
// SPDX-License-Identifier: Apache-2.0
//

#include "support.h"

#include <algorithm>
#include <functional>
#include <limits>
#include <map>
#include <numeric>
#include <set>
#include <sstream>

#include "bcfuse/error.h"
#include "bcfuse/merge.h"
#include "bcfuse/pipeline.h"
#include "bcfuse/resolve.h"
#include "bcfuse/transform.h"

#ifndef BCFUSE_FIXTURE_DIR
#error "BCFUSE_FIXTURE_DIR must be defined"
#endif

namespace bcfuse::testing {

std::string fixture_path(const std::string &name) {
  return std::string(BCFUSE_FIXTURE_DIR) + "/" + name;
}

std::string fixture_text(const std::string &name) {
  return read_file(fixture_path(name));
}

ComponentModel bc1() {
  return load_bcm(fixture_text("bc1.bcm"));
}

ComponentModel bc2() {
  return load_bcm(fixture_text("bc2.bcm"));
}

Ontology domain_d() {
  return parse_onto(fixture_text("domain.onto"));
}

Lexicon fixture_lexicon() {
  return parse_lexicon(fixture_text("lexicon.syn"));
}

ResourceSet fixture_resources() {
  return { domain_d(), fixture_lexicon() };
}

std::size_t edit_distance_oracle(const std::string &a, const std::string &b) {
  std::map<std::pair<std::size_t, std::size_t>, std::size_t> memo;
  std::function<std::size_t(std::size_t, std::size_t)> d =
      [&](std::size_t i, std::size_t j) -> std::size_t {
    if (i == 0)
      return j;
    if (j == 0)
      return i;
    auto key = std::make_pair(i, j);
    if (auto it = memo.find(key); it != memo.end())
      return it->second;
    std::size_t best = std::min(d(i - 1, j) + 1, d(i, j - 1) + 1);
    best = std::min(best, d(i - 1, j - 1) + (a[i - 1] == b[j - 1] ? 0 : 1));
    memo[key] = best;
    return best;
  };
  return d(a.size(), b.size());
}

std::optional<std::size_t> isa_distance_oracle(const Ontology &o,
                                               const std::string &a,
                                               const std::string &b) {
  constexpr std::size_t kInf = std::numeric_limits<std::size_t>::max() / 4;
  std::map<std::string, std::size_t> idx;
  for (const auto &c: o.concepts)
    idx.emplace(c.id, idx.size());
  const std::size_t n = idx.size();
  std::vector<std::vector<std::size_t>> dist(n, std::vector<std::size_t>(n, kInf));
  for (std::size_t i = 0; i < n; ++i)
    dist[i][i] = 0;
  for (const IsaEdge &e: o.isa_edges) {
    std::size_t u = idx.at(e.child), v = idx.at(e.parent);
    dist[u][v] = std::min<std::size_t>(dist[u][v], 1);
    dist[v][u] = std::min<std::size_t>(dist[v][u], 1);
  }
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        dist[i][j] = std::min(dist[i][j], dist[i][k] + dist[k][j]);
  std::size_t d = dist[idx.at(a)][idx.at(b)];
  if (d >= kInf)
    return std::nullopt;
  return d;
}

namespace {

std::string rel_tag(const Relation &r) {
  return std::string(to_string(r.kind)) + ":" + r.label.value_or("");
}

}  // namespace

bool isomorphic_oracle(const SubComponent &a, const SubComponent &b) {
  if (a.members().size() != b.members().size())
    return false;
  const auto &ma = a.members();
  const auto &mb = b.members();

  std::vector<std::size_t> perm(mb.size());
  std::iota(perm.begin(), perm.end(), 0);
  do {
    std::map<std::string, std::string> f;
    for (std::size_t i = 0; i < ma.size(); ++i)
      f[ma[i]] = mb[perm[i]];

    std::multiset<std::string> edges_a, edges_b;
    std::map<std::string, std::multiset<std::string>> bound_a, bound_b;
    for (const Relation &r: a.structure().relations) {
      bool s = a.contains(r.source), t = a.contains(r.target);
      if (s && t)
        edges_a.insert(f[r.source] + ">" + f[r.target] + ">" + rel_tag(r));
      else if (s)
        bound_a[f[r.source]].insert("out " + rel_tag(r));
      else if (t)
        bound_a[f[r.target]].insert("in " + rel_tag(r));
    }
    for (const Relation &r: b.structure().relations) {
      bool s = b.contains(r.source), t = b.contains(r.target);
      if (s && t)
        edges_b.insert(r.source + ">" + r.target + ">" + rel_tag(r));
      else if (s)
        bound_b[r.source].insert("out " + rel_tag(r));
      else if (t)
        bound_b[r.target].insert("in " + rel_tag(r));
    }
    if (edges_a == edges_b && bound_a == bound_b)
      return true;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return false;
}

namespace {

const std::vector<std::string> kDefaultNames {
  "Paper",  "Article", "Manuscript", "Author",  "Writer", "Reviewer",
  "Session", "Event",  "Conference", "Person",  "Document", "Review",
  "Topic",  "Room",    "Chair",      "Track",   "paper",  "conferenceSession",
  "Login_Session", "Venue", "Invoice", "Zebra",
};

const std::vector<std::string> kDistinctAnchorNames {
  "Paper",  "Author", "Reviewer", "Session", "Conference", "Person",
  "Document", "Review", "Event",  "Topic",   "Room",       "Venue",
  "Invoice", "Track",
};

const std::vector<std::string> kAttrNames {
  "title", "abstract", "token", "expiry", "room", "chair", "name", "email",
  "date",  "score",
};

const std::vector<std::string> kRelLabels { "writes", "reviews", "holds",
                                            "cites",  "owns" };

template<typename T>
const T &pick(Rng &rng, const std::vector<T> &v) {
  return v[std::uniform_int_distribution<std::size_t>(0, v.size() - 1)(rng)];
}

std::size_t uniform(Rng &rng, std::size_t lo, std::size_t hi) {
  return std::uniform_int_distribution<std::size_t>(lo, hi)(rng);
}

bool coin(Rng &rng, double p = 0.5) {
  return std::bernoulli_distribution(p)(rng);
}

// One type per attribute name, so flattening never has to choose.
std::string attr_type(const std::string &name) {
  if (name == "score")
    return "int";
  if (name == "date" || name == "expiry")
    return "date";
  return "string";
}

Structure random_structure(Rng &rng, const std::string &id,
                           const std::vector<std::string> &names,
                           const ModelGenOptions &opts) {
  Structure s;
  s.id = id;
  for (const std::string &n: names) {
    Concept c { n, {} };
    std::set<std::string> attrs;
    std::size_t k = uniform(rng, 0, 3);
    for (std::size_t i = 0; i < k; ++i)
      attrs.insert(pick(rng, kAttrNames));
    for (const std::string &a: attrs)
      c.attributes.push_back({ a, attr_type(a) });
    s.concepts.push_back(std::move(c));
  }
  if (!names.empty()) {
    std::size_t r = uniform(rng, 0, opts.max_relations);
    for (std::size_t i = 0; i < r; ++i) {
      Relation rel;
      rel.source = pick(rng, names);
      rel.target = pick(rng, names);
      std::size_t kind = uniform(rng, 0, 5);
      rel.kind = kind == 0   ? RelationKind::kIsA
                 : kind == 1 ? RelationKind::kComposition
                             : RelationKind::kAssociation;
      if (rel.kind != RelationKind::kIsA && coin(rng, 0.7))
        rel.label = pick(rng, kRelLabels);
      if (coin(rng, 0.2))
        rel.cardinality = coin(rng) ? "0..*" : "1..1";
      s.relations.push_back(std::move(rel));
    }
  }
  if (coin(rng, 0.3)) {
    ServiceSignature sv { "find", { { "key", "string" } }, std::nullopt };
    if (coin(rng))
      sv.return_type = names.empty() ? "string" : pick(rng, names);
    s.services.push_back(std::move(sv));
  }
  return s;
}

}  // namespace

ComponentModel random_model(Rng &rng, const std::string &name,
                            const ModelGenOptions &opts) {
  std::vector<std::string> pool =
      !opts.name_pool.empty()   ? opts.name_pool
      : opts.distinct_anchors ? kDistinctAnchorNames
                              : kDefaultNames;
  std::shuffle(pool.begin(), pool.end(), rng);

  std::vector<std::string> names;
  std::set<std::string> seen;
  std::size_t want = uniform(rng, 0, opts.max_concepts);
  for (const std::string &n: pool) {
    if (names.size() >= want)
      break;
    if (seen.insert(normalize_label(n)).second)
      names.push_back(n);
  }

  ComponentModel m;
  m.name = name;
  m.kind = coin(rng, 0.8) ? ComponentKind::kEntity : ComponentKind::kProcess;
  if (opts.allow_generic && coin(rng, 0.3) && !names.empty()) {
    m.reuse = ReuseKind::kGeneric;
    std::size_t count = uniform(rng, 1, 3);
    for (std::size_t i = 0; i < count; ++i) {
      std::vector<std::string> subset;
      for (const std::string &n: names)
        if (coin(rng, 0.7))
          subset.push_back(n);
      m.structures.push_back(
          random_structure(rng, "s" + std::to_string(i), subset, opts));
    }
  } else {
    m.reuse = ReuseKind::kReusable;
    m.structures.push_back(random_structure(rng, "main", names, opts));
  }
  return m;
}

std::string random_label(Rng &rng, std::size_t max_len) {
  static const std::string kChars =
      "abcdefghijklmnopqrstuvwxyzABCDEFGHIJKLMNOPQRSTUVWXYZ0123456789_ -";
  std::string s;
  std::size_t n = uniform(rng, 0, max_len);
  for (std::size_t i = 0; i < n; ++i)
    s.push_back(kChars[uniform(rng, 0, kChars.size() - 1)]);
  return s;
}

std::string random_bytes(Rng &rng, std::size_t max_len) {
  std::string s;
  std::size_t n = uniform(rng, 0, max_len);
  for (std::size_t i = 0; i < n; ++i)
    s.push_back(static_cast<char>(uniform(rng, 0, 255)));
  return s;
}

Ontology random_ontology(Rng &rng, std::size_t max_concepts) {
  Ontology o;
  o.name = "Random";
  std::size_t n = uniform(rng, 1, max_concepts);
  for (std::size_t i = 0; i < n; ++i)
    o.concepts.push_back(
        { "c" + std::to_string(i), "c" + std::to_string(i), {}, ConceptRole::kDomain, "" });
  // Parents always have a smaller index, so the is-a graph stays acyclic.
  for (std::size_t i = 1; i < n; ++i) {
    if (coin(rng, 0.8))
      o.isa_edges.push_back(
          { "c" + std::to_string(i), "c" + std::to_string(uniform(rng, 0, i - 1)) });
    if (coin(rng, 0.15))
      o.isa_edges.push_back(
          { "c" + std::to_string(i), "c" + std::to_string(uniform(rng, 0, i - 1)) });
  }
  return o;
}

namespace {

CheckResult fail(CheckResult r, std::string detail) {
  r.ok = false;
  r.detail = std::move(detail);
  return r;
}

std::string join(const std::vector<std::string> &v) {
  std::string out;
  for (const auto &s: v)
    out += (out.empty() ? "" : ",") + s;
  return out;
}

}  // namespace

CheckResult check_normalize_idempotent(std::size_t n, std::uint64_t seed) {
  Rng rng(seed);
  CheckResult r;
  for (; r.cases < n; ++r.cases) {
    std::string s = random_label(rng, 24);
    std::string once = normalize_label_or_empty(s);
    if (normalize_label_or_empty(once) != once)
      return fail(r, "not idempotent on '" + s + "'");
    if (once.find_first_of("ABCDEFGHIJKLMNOPQRSTUVWXYZ_") != std::string::npos
        || once.find("  ") != std::string::npos || once.starts_with(' ')
        || once.ends_with(' '))
      return fail(r, "not normal form: '" + once + "'");
  }
  return r;
}

CheckResult check_bcm_round_trip(std::size_t n, std::uint64_t seed) {
  Rng rng(seed);
  CheckResult r;
  for (; r.cases < n; ++r.cases) {
    ComponentModel m = random_model(rng, "Gen" + std::to_string(r.cases));
    if (!validate(m).empty())
      return fail(r, "generator produced an invalid model");
    std::string text = serialize_bcm(m);
    ComponentModel back = parse_bcm(text);
    if (!(back == canonicalize(m)))
      return fail(r, "round trip changed the model:\n" + text);
    if (serialize_bcm(back) != text)
      return fail(r, "serialization is not a fixed point:\n" + text);
  }
  return r;
}

CheckResult check_parser_totality(std::size_t n, std::uint64_t seed) {
  Rng rng(seed);
  CheckResult r;
  const std::vector<std::string> seeds { fixture_text("bc1.bcm"),
                                         fixture_text("bc2.bcm"),
                                         fixture_text("domain.onto"),
                                         fixture_text("lexicon.syn") };
  const std::string tokens[] = { "component ", "structure ", "concept ",
                                 "attr ", "relation ", "service ",
                                 "ontology ", "isa ", "rel ", "syn ",
                                 "kind=", "reuse=", "label=\"", "->", "(",
                                 ")", ":", ",", "\"", "\n", "#", "=",
                                 "card=", "..", "*", "A", "b_1", " " };

  auto feed = [&](const std::string &input) -> std::optional<std::string> {
    auto attempt = [&](auto &&fn, const char *what) -> std::optional<std::string> {
      try {
        fn(input);
      } catch (const Error &) {
      } catch (const std::exception &e) {
        return std::string(what) + " threw non-library exception: " + e.what();
      }
      return std::nullopt;
    };
    if (auto f = attempt([](const std::string &s) { parse_bcm(s); }, "parse_bcm"))
      return f;
    if (auto f = attempt([](const std::string &s) { parse_onto(s); }, "parse_onto"))
      return f;
    return attempt([](const std::string &s) { parse_lexicon(s); },
                   "parse_lexicon");
  };

  for (; r.cases < n; ++r.cases) {
    std::string input;
    switch (r.cases % 3) {
    case 0:
      input = random_bytes(rng, 256);
      break;
    case 1:
      for (std::size_t k = uniform(rng, 0, 40); k > 0; --k)
        input += tokens[uniform(rng, 0, std::size(tokens) - 1)];
      break;
    default: {
      input = pick(rng, seeds);
      for (std::size_t k = uniform(rng, 1, 6); k > 0 && !input.empty(); --k) {
        std::size_t pos = uniform(rng, 0, input.size() - 1);
        switch (uniform(rng, 0, 2)) {
        case 0:
          input.erase(pos, 1);
          break;
        case 1:
          input.insert(pos, 1, static_cast<char>(uniform(rng, 0, 255)));
          break;
        default:
          input[pos] = static_cast<char>(uniform(rng, 0, 255));
        }
      }
    }
    }
    if (auto f = feed(input))
      return fail(r, *f);
  }

  // One input at the size limit.
  std::string big;
  while (big.size() < (1u << 20) - 64)
    big += "concept A\n  attr x : y\n";
  big = "component Big kind=entity reuse=reusable\nstructure main\n" + big;
  big.resize(1u << 20);
  if (auto f = feed(big))
    return fail(r, *f);
  ++r.cases;
  return r;
}

CheckResult check_similarity_axioms(std::size_t n, std::uint64_t seed) {
  Rng rng(seed);
  CheckResult r;
  for (; r.cases < n; ++r.cases) {
    std::string a = random_label(rng, 12), b = random_label(rng, 12);
    double ab = lexical_similarity(a, b), ba = lexical_similarity(b, a);
    if (ab != ba)
      return fail(r, "lexical asymmetric on '" + a + "','" + b + "'");
    if (!(ab >= 0.0 && ab <= 1.0))
      return fail(r, "lexical out of range on '" + a + "','" + b + "'");
    if (lexical_similarity(a, a) != 1.0)
      return fail(r, "lexical identity fails on '" + a + "'");
  }

  Ontology onto;
  for (std::size_t i = 0; i < n; ++i, ++r.cases) {
    if (i % 100 == 0)
      onto = random_ontology(rng, 12);
    const std::string &a = pick(rng, onto.concepts).id;
    const std::string &b = pick(rng, onto.concepts).id;
    double ab = semantic_similarity(a, b, onto);
    double ba = semantic_similarity(b, a, onto);
    if (ab != ba)
      return fail(r, "semantic asymmetric on " + a + "," + b);
    if (!(ab >= 0.0 && ab <= 1.0))
      return fail(r, "semantic out of range on " + a + "," + b);
    if (semantic_similarity(a, a, onto) != 1.0)
      return fail(r, "semantic identity fails on " + a);
  }
  return r;
}

CheckResult check_alignment_symmetry(std::size_t n, std::uint64_t seed) {
  Rng rng(seed);
  ResourceSet res = fixture_resources();
  AlignmentParams params;
  CheckResult r;
  for (; r.cases < n; ++r.cases) {
    Ontology o1 = to_ontology(random_model(rng, "Left"));
    Ontology o2 = to_ontology(random_model(rng, "Right"));
    CorrespondenceOntology ab = align_pair(o1, o2, res, params);
    CorrespondenceOntology ba = align_pair(o2, o1, res, params);
    std::vector<Correspondence> swapped;
    for (const Correspondence &c: ba.correspondences)
      swapped.push_back(c.swapped());
    sort_correspondences(swapped);
    if (swapped != ab.correspondences)
      return fail(r, "alignment is not symmetric for case "
                         + std::to_string(r.cases));
    if (ab.component_correspondences != ba.component_correspondences)
      return fail(r, "component correspondences differ for case "
                         + std::to_string(r.cases));
  }
  return r;
}

CheckResult check_transform_preservation(std::size_t n, std::uint64_t seed) {
  Rng rng(seed);
  CheckResult r;
  for (; r.cases < n; ++r.cases) {
    ComponentModel m = random_model(rng, "T" + std::to_string(r.cases));
    Ontology o = to_ontology(m);

    std::set<std::string> labels, types;
    std::multiset<std::string> relations;
    std::map<std::string, std::string> canonical;  // normalized -> kept name
    for (const Structure &s: m.structures)
      for (const Concept &c: s.concepts) {
        std::string key = normalize_label(c.name);
        labels.insert(key);
        canonical.emplace(key, c.name);
        for (const Attribute &a: c.attributes)
          types.insert(a.type);
      }
    for (const Structure &s: m.structures)
      for (const Relation &rel: s.relations) {
        std::string src = canonical.at(normalize_label(rel.source));
        std::string dst = canonical.at(normalize_label(rel.target));
        std::string label = rel.kind == RelationKind::kIsA
                                ? "isa"
                                : rel.label.value_or(
                                    std::string(to_string(rel.kind)));
        relations.insert(src + ">" + dst + ">" + label);
      }

    std::size_t expected = labels.size() + 1 + types.size();
    if (concept_count(o) != expected)
      return fail(r, "concept count " + std::to_string(concept_count(o))
                         + " != " + std::to_string(expected) + " for "
                         + serialize_bcm(m));

    std::multiset<std::string> edges;
    for (const IsaEdge &e: o.isa_edges)
      edges.insert(e.child + ">" + e.parent + ">isa");
    for (const RelEdge &e: o.rel_edges) {
      if (e.label == kPartOfLabel || e.label.starts_with(kHasAttrPrefix))
        continue;
      edges.insert(e.source + ">" + e.target + ">" + e.label);
    }
    if (edges != relations)
      return fail(r, "relations not preserved one-to-one for "
                         + serialize_bcm(m));

    if (serialize_onto(to_ontology(m)) != serialize_onto(o))
      return fail(r, "transform is not deterministic");
  }
  return r;
}

namespace {

std::vector<ComponentModel> random_models(Rng &rng, std::size_t count,
                                          const ModelGenOptions &opts = {}) {
  static const char *kNames[] = { "Alpha", "Beta", "Gamma" };
  std::vector<ComponentModel> out;
  for (std::size_t i = 0; i < count; ++i)
    out.push_back(random_model(rng, kNames[i], opts));
  return out;
}

PreparedIntegration prepare_models(const std::vector<ComponentModel> &models) {
  IntegrationInputs in;
  in.models = models;
  in.resources = fixture_resources();
  return prepare(std::move(in), ActionHistory());
}

}  // namespace

CheckResult check_merge_conservation(std::size_t n, std::uint64_t seed) {
  Rng rng(seed);
  CheckResult r;
  for (; r.cases < n; ++r.cases) {
    auto models = random_models(rng, uniform(rng, 2, 3));
    PreparedIntegration p = prepare_models(models);

    std::vector<Conflict> conflicts = p.conflicts;
    bool any_delete = false;
    for (Conflict &c: conflicts) {
      const RuleCatalogEntry &rule = lookup_rule(c.relation());
      std::vector<ActionKind> legal { rule.default_action };
      legal.insert(legal.end(), rule.alternatives.begin(),
                   rule.alternatives.end());
      ActionKind k = pick(rng, legal);
      ResolutionAction a(k);
      if (k == ActionKind::kDeleteOne) {
        a.kept = coin(rng) ? Side::kSource : Side::kTarget;
        any_delete = true;
      }
      c.decide(a);
    }
    IntegrationResult res = integrate_partial(models, conflicts,
                                              p.inputs.resources.domain);
    const Structure &out = res.model.structures.at(0);

    std::map<std::string, std::set<std::string>> out_attrs;
    for (const Concept &c: out.concepts)
      for (const Attribute &a: c.attributes)
        out_attrs[c.name].insert(a.name);
    std::set<std::string> out_names;
    for (const Concept &c: out.concepts)
      out_names.insert(c.name);

    std::map<std::string, std::set<std::string>> preimage_attrs;
    std::set<std::string> expected_relations;
    for (const ComponentModel &m: models) {
      Structure flat = flatten(m);
      for (const Concept &c: flat.concepts) {
        auto image = res.concept_map.at({ m.name, c.name });
        if (!image) {
          if (!any_delete)
            return fail(r, "concept dropped without a deleteOne decision");
          continue;
        }
        if (!out_names.contains(*image))
          return fail(r, "image concept " + *image + " missing from output");
        for (const Attribute &a: c.attributes) {
          if (!out_attrs[*image].contains(a.name))
            return fail(r, "attribute " + c.name + "." + a.name + " lost");
          preimage_attrs[*image].insert(a.name);
        }
      }
      for (const Relation &rel: flat.relations) {
        auto s = res.concept_map.at({ m.name, rel.source });
        auto t = res.concept_map.at({ m.name, rel.target });
        if (!s || !t)
          continue;
        Relation mapped { *s, *t, rel.kind, rel.label, rel.cardinality };
        if (std::find(out.relations.begin(), out.relations.end(), mapped)
            == out.relations.end())
          return fail(r, "relation " + rel.source + "->" + rel.target
                             + " lost");
        std::ostringstream key;
        key << mapped.source << '>' << mapped.target << '>'
            << to_string(mapped.kind) << '>' << mapped.label.value_or("");
        expected_relations.insert(key.str());
      }
    }
    for (const auto &[name, attrs]: out_attrs)
      if (attrs != preimage_attrs[name])
        return fail(r, "output concept " + name + " has foreign attributes");
    for (const Relation &rel: out.relations) {
      std::ostringstream key;
      key << rel.source << '>' << rel.target << '>' << to_string(rel.kind)
          << '>' << rel.label.value_or("");
      if (!expected_relations.contains(key.str()))
        return fail(r, "relation without preimage in output");
    }
  }
  return r;
}

CheckResult check_naming_conflict_free(std::size_t n, std::uint64_t seed) {
  Rng rng(seed);
  CheckResult r;
  for (; r.cases < n; ++r.cases) {
    auto models = random_models(rng, uniform(rng, 2, 3));
    PreparedIntegration p = prepare_models(models);
    IntegrationArtifact a;
    try {
      a = run_batch(p);
    } catch (const Error &e) {
      std::string inputs;
      for (const auto &m: models)
        inputs += serialize_bcm(m);
      return fail(r, std::string("default integration failed: ") + e.what()
                         + "\n" + inputs);
    }
    std::set<std::string> labels;
    for (const Concept &c: a.model.structures.at(0).concepts)
      if (!labels.insert(normalize_label(c.name)).second)
        return fail(r, "duplicate label " + c.name);
  }
  return r;
}

CheckResult check_self_merge_idempotence(std::size_t n, std::uint64_t seed) {
  Rng rng(seed);
  ModelGenOptions opts;
  opts.distinct_anchors = true;
  CheckResult r;
  for (; r.cases < n; ++r.cases) {
    ComponentModel m = random_model(rng, "Original", opts);
    ComponentModel copy = m;
    copy.name = "Copy";
    PreparedIntegration p = prepare_models({ m, copy });

    std::vector<Conflict> conflicts = p.conflicts;
    for (Conflict &c: conflicts) {
      if (c.relation() != SemanticRelation::kEquivalent)
        return fail(r, "unexpected " + std::string(to_string(c.relation()))
                           + " between a component and its copy");
      c.decide(ResolutionAction::of(ActionKind::kMergeConcepts));
    }
    IntegrationArtifact a = finish(p, conflicts);

    std::vector<std::string> before, after;
    for (const Concept &c: flatten(m).concepts)
      before.push_back(c.name);
    for (const Concept &c: a.model.structures.at(0).concepts)
      after.push_back(c.name);
    std::sort(before.begin(), before.end());
    if (before != after)
      return fail(r, "labels {" + join(before) + "} became {" + join(after)
                         + "}");
  }
  return r;
}

SoundnessResult check_prefilter_soundness(std::size_t n, std::uint64_t seed,
                                          std::size_t max_members) {
  Rng rng(seed);
  SoundnessResult out;
  ModelGenOptions opts;
  opts.allow_generic = false;
  opts.max_concepts = 8;
  opts.max_relations = 10;
  // Short uniform names keep relabeled copies easy to build.
  opts.name_pool = { "A", "B", "C", "D", "E", "F", "G", "H" };

  auto random_subset = [&](const ComponentModel &m) {
    std::vector<std::string> names;
    for (const Concept &c: m.structures[0].concepts)
      names.push_back(c.name);
    std::shuffle(names.begin(), names.end(), rng);
    names.resize(uniform(rng, 1, std::min(max_members, names.size())));
    return names;
  };

  CheckResult &r = out.check;
  while (r.cases < n) {
    ComponentModel m1 = random_model(rng, "Left", opts);
    if (m1.structures[0].concepts.empty())
      continue;
    std::vector<std::string> s1 = random_subset(m1);

    ComponentModel m2;
    std::vector<std::string> s2;
    if (coin(rng)) {
      // Relabeled, reordered copy: isomorphic by construction unless mutated.
      std::vector<std::string> from, to;
      for (const Concept &c: m1.structures[0].concepts)
        from.push_back(c.name);
      to = from;
      std::shuffle(to.begin(), to.end(), rng);
      std::map<std::string, std::string> f;
      for (std::size_t i = 0; i < from.size(); ++i)
        f[from[i]] = "N" + to[i];
      m2 = m1;
      m2.name = "Right";
      for (Concept &c: m2.structures[0].concepts)
        c.name = f[c.name];
      for (Relation &rel: m2.structures[0].relations) {
        rel.source = f[rel.source];
        rel.target = f[rel.target];
      }
      std::shuffle(m2.structures[0].relations.begin(),
                   m2.structures[0].relations.end(), rng);
      if (coin(rng, 0.3) && !m2.structures[0].relations.empty()) {
        Relation &rel = m2.structures[0].relations.front();
        rel.kind = RelationKind::kAssociation;
        rel.label = pick(rng, kRelLabels);
      }
      for (const std::string &s: s1)
        s2.push_back(f[s]);
    } else {
      m2 = random_model(rng, "Right", opts);
      if (m2.structures[0].concepts.empty())
        continue;
      s2 = random_subset(m2);
    }

    SubComponent a(m1, s1), b(m2, s2);
    bool iso = brute_force_isomorphic(a, b);
    IsoVerdict v = non_iso_check(a, b);
    ++r.cases;
    if (iso)
      ++out.isomorphic_pairs;
    if (v.non_isomorphic)
      ++out.rejected_pairs;
    if (iso && v.non_isomorphic) {
      r.ok = false;
      r.detail = "isomorphic pair rejected by rule " + format_verdict(v) + ":\n"
                 + serialize_bcm(m1) + serialize_bcm(m2);
      return out;
    }
  }
  r.detail = std::to_string(out.isomorphic_pairs) + " isomorphic, "
             + std::to_string(out.rejected_pairs) + " rejected";
  return out;
}

}  // namespace bcfuse::testing
