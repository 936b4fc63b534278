//
// bcfuse - Copyright 2026 The bcfuse Authors.
// SPDX-License-Identifier: Apache-2.0
//

#ifndef BCFUSE_TRANSFORM_H_
#define BCFUSE_TRANSFORM_H_

#include <string>

#include "bcfuse/model.h"
#include "bcfuse/ontology.h"

namespace bcfuse {

// Id prefix of synthesized value-type concepts ("valuetype:string").
inline constexpr std::string_view kValueTypePrefix = "valuetype:";
inline constexpr std::string_view kPartOfLabel = "partOf";
inline constexpr std::string_view kHasAttrPrefix = "hasAttr:";

// Union of all structures of a component, concepts deduplicated by
// normalized label (first occurrence keeps its name, attributes are
// merged) and relation endpoints re-pointed accordingly. Reusable
// components come back unchanged apart from the structure id.
Structure flatten(const ComponentModel &model);

/// Transforms a business component into its ontology.
///
/// The result has one root concept named after the component, one member
/// concept per (flattened) model concept linked to the root by a `partOf`
/// edge, and one value-type concept per distinct attribute type reached
/// through `hasAttr:<name>` edges. Model relations of kind isa become is-a
/// edges; assoc/comp relations become edges labeled with the relation label
/// (or "assoc"/"comp" when unlabeled).
///
/// Throws ValidationError when the model fails validate().
Ontology to_ontology(const ComponentModel &model);

}  // namespace bcfuse

#endif  // BCFUSE_TRANSFORM_H_
