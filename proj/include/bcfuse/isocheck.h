//
// bcfuse - Copyright 2026 The bcfuse Authors.
// SPDX-License-Identifier: Apache-2.0
//

#ifndef BCFUSE_ISOCHECK_H_
#define BCFUSE_ISOCHECK_H_

#include <cstddef>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "bcfuse/model.h"

namespace bcfuse {

// A subset of a component's concepts. The parent is flattened, so generic
// components are viewed through the union of their structures.
class SubComponent {
public:
  // Throws ValidationError when `members` is empty or names a concept the
  // parent lacks.
  SubComponent(const ComponentModel &parent, std::vector<std::string> members);

  // All concepts of the component.
  static SubComponent whole(const ComponentModel &parent);

  const std::string &component() const { return component_; }
  const Structure &structure() const { return structure_; }
  const std::vector<std::string> &members() const { return members_; }
  bool contains(std::string_view concept_name) const;

private:
  std::string component_;
  Structure structure_;
  std::vector<std::string> members_;  // sorted
};

// External relations of a sub-component: "<kind>:<label>" tags of relations
// with exactly one endpoint inside, and how many such relations there are.
struct TypeSignature {
  std::set<std::string> label_set;
  std::size_t degree = 0;

  bool operator==(const TypeSignature &) const = default;
};

TypeSignature set_type(const SubComponent &s);

enum class IsoRule { kNone, kA, kB };

struct IsoVerdict {
  bool non_isomorphic = false;
  IsoRule fired = IsoRule::kNone;

  bool operator==(const IsoVerdict &) const = default;
};

std::string format_verdict(const IsoVerdict &v);

// Cheap rejection filter. Rule A: the external label sets differ. Rule B:
// the external degrees differ, or the member counts do. Otherwise the pair
// is possibly isomorphic.
IsoVerdict non_iso_check(const SubComponent &a, const SubComponent &b);

inline constexpr std::size_t kBruteForceLimit = 10;

// Exhaustive search for a bijection between members that preserves internal
// relations (direction, kind, label, multiplicity) and each concept's
// boundary relations. Throws ValidationError (SIZE_LIMIT) above
// kBruteForceLimit members.
bool brute_force_isomorphic(const SubComponent &a, const SubComponent &b);

}  // namespace bcfuse

#endif  // BCFUSE_ISOCHECK_H_
