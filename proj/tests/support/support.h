//
// bcfuse - Copyright 2026 The bcfuse Authors.
// SPDX-License-Identifier: Apache-2.0
//

#ifndef BCFUSE_TESTS_SUPPORT_H_
#define BCFUSE_TESTS_SUPPORT_H_

#include <cstddef>
#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "bcfuse/align.h"
#include "bcfuse/ingest.h"
#include "bcfuse/isocheck.h"
#include "bcfuse/model.h"
#include "bcfuse/ontology.h"

namespace bcfuse::testing {

using Rng = std::mt19937_64;

std::string fixture_path(const std::string &name);
std::string fixture_text(const std::string &name);

ComponentModel bc1();
ComponentModel bc2();
Ontology domain_d();
Lexicon fixture_lexicon();
ResourceSet fixture_resources();

// --- oracles, independent of the library's algorithms ---

// Top-down memoized recursion over the edit-distance definition.
std::size_t edit_distance_oracle(const std::string &a, const std::string &b);

// All-pairs shortest undirected is-a distances by Floyd-Warshall.
std::optional<std::size_t> isa_distance_oracle(const Ontology &o,
                                               const std::string &a,
                                               const std::string &b);

// Tries every permutation of b's members (std::next_permutation) and
// compares complete relabeled relation multisets.
bool isomorphic_oracle(const SubComponent &a, const SubComponent &b);

// --- generators ---

struct ModelGenOptions {
  std::size_t max_concepts = 6;
  std::size_t max_relations = 6;
  bool allow_generic = true;
  // Draws concept names only from labels that anchor on distinct domain
  // concepts of fixture D.
  bool distinct_anchors = false;
  std::vector<std::string> name_pool;  // overrides the default pool
};

ComponentModel random_model(Rng &rng, const std::string &name,
                            const ModelGenOptions &opts = {});

std::string random_label(Rng &rng, std::size_t max_len = 16);
std::string random_bytes(Rng &rng, std::size_t max_len);

// Random domain ontology with an acyclic is-a graph.
Ontology random_ontology(Rng &rng, std::size_t max_concepts = 10);

// --- reusable property checks ---

struct CheckResult {
  bool ok = true;
  std::size_t cases = 0;
  std::string detail;  // first counterexample, or a summary
};

CheckResult check_normalize_idempotent(std::size_t n, std::uint64_t seed);
CheckResult check_bcm_round_trip(std::size_t n, std::uint64_t seed);
CheckResult check_parser_totality(std::size_t n, std::uint64_t seed);
CheckResult check_similarity_axioms(std::size_t n, std::uint64_t seed);
CheckResult check_alignment_symmetry(std::size_t n, std::uint64_t seed);
CheckResult check_transform_preservation(std::size_t n, std::uint64_t seed);
CheckResult check_merge_conservation(std::size_t n, std::uint64_t seed);
CheckResult check_naming_conflict_free(std::size_t n, std::uint64_t seed);
CheckResult check_self_merge_idempotence(std::size_t n, std::uint64_t seed);

struct SoundnessResult {
  CheckResult check;
  std::size_t isomorphic_pairs = 0;
  std::size_t rejected_pairs = 0;
};

// Pre-filter soundness over random sub-component pairs of at most
// `max_members` concepts each.
SoundnessResult check_prefilter_soundness(std::size_t n, std::uint64_t seed,
                                          std::size_t max_members = 6);

}  // namespace bcfuse::testing

#endif  // BCFUSE_TESTS_SUPPORT_H_
