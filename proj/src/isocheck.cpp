//
// bcfuse - Copyright 2026 The bcfuse Authors.
// SPDX-License-Identifier: Apache-2.0
//

#include "bcfuse/isocheck.h"

#include <algorithm>
#include <map>

#include "bcfuse/error.h"
#include "bcfuse/transform.h"

namespace bcfuse {

SubComponent::SubComponent(const ComponentModel &parent,
                           std::vector<std::string> members)
    : component_(parent.name), structure_(flatten(parent)),
      members_(std::move(members)) {
  std::sort(members_.begin(), members_.end());
  members_.erase(std::unique(members_.begin(), members_.end()), members_.end());
  if (members_.empty())
    throw ValidationError("EMPTY_SUBCOMPONENT",
                          "a sub-component needs at least one concept");
  for (const std::string &m: members_) {
    if (structure_.find_concept(m) == nullptr)
      throw ValidationError("UNKNOWN_CONCEPT", "'" + m + "' is not a concept of "
                                                   + component_);
  }
}

SubComponent SubComponent::whole(const ComponentModel &parent) {
  std::vector<std::string> names;
  for (const Concept &c: flatten(parent).concepts)
    names.push_back(c.name);
  return SubComponent(parent, std::move(names));
}

bool SubComponent::contains(std::string_view concept_name) const {
  return std::binary_search(members_.begin(), members_.end(), concept_name);
}

namespace {

std::string tag(const Relation &r) {
  return std::string(to_string(r.kind)) + ":" + r.label.value_or("");
}

}  // namespace

TypeSignature set_type(const SubComponent &s) {
  TypeSignature sig;
  for (const Relation &r: s.structure().relations) {
    if (s.contains(r.source) != s.contains(r.target)) {
      sig.label_set.insert(tag(r));
      ++sig.degree;
    }
  }
  return sig;
}

std::string format_verdict(const IsoVerdict &v) {
  if (!v.non_isomorphic)
    return "possiblyIsomorphic";
  return v.fired == IsoRule::kA ? "nonIsomorphic(A)" : "nonIsomorphic(B)";
}

IsoVerdict non_iso_check(const SubComponent &a, const SubComponent &b) {
  TypeSignature sa = set_type(a), sb = set_type(b);
  if (sa.label_set != sb.label_set)
    return { true, IsoRule::kA };
  if (sa.degree != sb.degree || a.members().size() != b.members().size())
    return { true, IsoRule::kB };
  return { false, IsoRule::kNone };
}

namespace {

// Member-indexed view of a sub-component's relations.
struct Indexed {
  std::size_t n = 0;
  // Sorted "(out|in)<tag>" list of boundary relations per member.
  std::vector<std::vector<std::string>> boundary;
  // Sorted tags of internal relations per ordered (src, dst) member pair.
  std::map<std::pair<std::size_t, std::size_t>, std::vector<std::string>>
      internal;

  explicit Indexed(const SubComponent &s): n(s.members().size()), boundary(n) {
    auto index_of = [&](const std::string &name) -> std::ptrdiff_t {
      auto it = std::lower_bound(s.members().begin(), s.members().end(), name);
      if (it == s.members().end() || *it != name)
        return -1;
      return it - s.members().begin();
    };
    for (const Relation &r: s.structure().relations) {
      auto src = index_of(r.source), dst = index_of(r.target);
      if (src >= 0 && dst >= 0)
        internal[{ src, dst }].push_back(tag(r));
      else if (src >= 0)
        boundary[src].push_back("out " + tag(r));
      else if (dst >= 0)
        boundary[dst].push_back("in " + tag(r));
    }
    for (auto &b: boundary)
      std::sort(b.begin(), b.end());
    for (auto &[_, v]: internal)
      std::sort(v.begin(), v.end());
  }

  const std::vector<std::string> &edges(std::size_t s, std::size_t d) const {
    static const std::vector<std::string> kNone;
    auto it = internal.find({ s, d });
    return it == internal.end() ? kNone : it->second;
  }
};

class BijectionSearch {
public:
  BijectionSearch(const Indexed &a, const Indexed &b)
      : a_(a), b_(b), map_(a.n), used_(b.n, false) { }

  bool run() { return extend(0); }

private:
  bool extend(std::size_t i) {
    if (i == a_.n)
      return true;
    for (std::size_t j = 0; j < b_.n; ++j) {
      if (used_[j] || a_.boundary[i] != b_.boundary[j])
        continue;
      map_[i] = j;
      if (!consistent(i))
        continue;
      used_[j] = true;
      if (extend(i + 1))
        return true;
      used_[j] = false;
    }
    return false;
  }

  // Internal relations between member i and every already mapped member.
  bool consistent(std::size_t i) const {
    for (std::size_t k = 0; k <= i; ++k) {
      if (a_.edges(i, k) != b_.edges(map_[i], map_[k])
          || a_.edges(k, i) != b_.edges(map_[k], map_[i]))
        return false;
    }
    return true;
  }

  const Indexed &a_;
  const Indexed &b_;
  std::vector<std::size_t> map_;
  std::vector<bool> used_;
};

}  // namespace

bool brute_force_isomorphic(const SubComponent &a, const SubComponent &b) {
  for (const SubComponent *s: { &a, &b }) {
    if (s->members().size() > kBruteForceLimit)
      throw ValidationError("SIZE_LIMIT",
                            "brute-force isomorphism is limited to "
                                + std::to_string(kBruteForceLimit)
                                + " concepts");
  }
  if (a.members().size() != b.members().size())
    return false;
  Indexed ia(a), ib(b);
  return BijectionSearch(ia, ib).run();
}

}  // namespace bcfuse
