//
// bcfuse - Copyright 2026 The bcfuse Authors.
// SPDX-License-Identifier: Apache-2.0
//

#ifndef BCFUSE_INGEST_H_
#define BCFUSE_INGEST_H_

#include <string>
#include <string_view>
#include <vector>

#include "bcfuse/model.h"
#include "bcfuse/ontology.h"

namespace bcfuse {

// Synonym sets of normalized labels.
struct Lexicon {
  std::vector<std::vector<std::string>> synsets;  // each sorted, size >= 2

  bool operator==(const Lexicon &) const = default;

  // True when the two normalized labels occur together in some synset.
  bool are_synonyms(std::string_view a, std::string_view b) const;
};

// Parses the line-oriented .bcm format. Only syntax is checked here;
// semantic problems (duplicate concepts, dangling relation endpoints, ...)
// are left for validate(). Throws ParseError.
ComponentModel parse_bcm(std::string_view text);

// parse_bcm followed by require_valid().
ComponentModel load_bcm(std::string_view text);

// Canonical text: collections sorted, one directive per line. Throws
// ValidationError for models failing validate().
std::string serialize_bcm(const ComponentModel &model);

// Throws ParseError on syntax errors and ValidationError (UNKNOWN_CONCEPT,
// ISA_CYCLE, DUP_CONCEPT) on semantic ones.
Ontology parse_onto(std::string_view text);

std::string serialize_onto(const Ontology &o);

// One synset per line, comma separated. Blank lines and '#' comments are
// skipped. A line with fewer than two distinct normalized terms is a
// ParseError.
Lexicon parse_lexicon(std::string_view text);

std::string read_file(const std::string &path);

}  // namespace bcfuse

#endif  // BCFUSE_INGEST_H_
