//
// bcfuse - Copyright 2026 The bcfuse Authors.
// SPDX-License-Identifier: Apache-2.0
//

#include "bcfuse/ingest.h"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <functional>
#include <set>
#include <sstream>

#include "bcfuse/error.h"

namespace bcfuse {

bool Lexicon::are_synonyms(std::string_view a, std::string_view b) const {
  for (const auto &synset: synsets) {
    bool has_a = std::binary_search(synset.begin(), synset.end(), a);
    if (has_a && std::binary_search(synset.begin(), synset.end(), b))
      return true;
  }
  return false;
}

namespace {

bool is_space(char c) {
  return c == ' ' || c == '\t' || c == '\r' || c == '\f' || c == '\v';
}

bool is_word_char(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) != 0 || c == '_';
}

// Splits text into lines, remembering 1-based line numbers.
std::vector<std::string_view> split_lines(std::string_view text) {
  std::vector<std::string_view> lines;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t nl = text.find('\n', start);
    if (nl == std::string_view::npos) {
      lines.push_back(text.substr(start));
      break;
    }
    lines.push_back(text.substr(start, nl - start));
    start = nl + 1;
  }
  return lines;
}

// Cursor over one line. Columns are 1-based byte offsets.
class LineCursor {
public:
  LineCursor(std::string_view line, int lineno): line_(line), lineno_(lineno) {
    // Strip a trailing comment that is not inside a quoted string.
    bool quoted = false;
    for (std::size_t i = 0; i < line_.size(); ++i) {
      char c = line_[i];
      if (quoted && c == '\\') {
        ++i;
      } else if (c == '"') {
        quoted = !quoted;
      } else if (c == '#' && !quoted) {
        line_ = line_.substr(0, i);
        break;
      }
    }
  }

  void skip_ws() {
    while (pos_ < line_.size() && is_space(line_[pos_]))
      ++pos_;
  }

  bool at_end() {
    skip_ws();
    return pos_ >= line_.size();
  }

  int column() const { return static_cast<int>(pos_) + 1; }
  int line() const { return lineno_; }

  [[noreturn]] void fail(const std::string &expected) const {
    std::string found = pos_ < line_.size()
                            ? "'" + std::string(1, line_[pos_]) + "'"
                            : "end of line";
    throw ParseError(lineno_, column(), expected,
                     "expected " + expected + ", found " + found);
  }

  std::string_view take_while(const std::function<bool(char)> &pred) {
    std::size_t start = pos_;
    while (pos_ < line_.size() && pred(line_[pos_]))
      ++pos_;
    return line_.substr(start, pos_ - start);
  }

  // A run of word characters; `extra` lists additional accepted bytes.
  std::string word(const std::string &expected, std::string_view extra = {}) {
    skip_ws();
    std::string_view w = take_while([&](char c) {
      return is_word_char(c) || extra.find(c) != std::string_view::npos;
    });
    if (w.empty())
      fail(expected);
    return std::string(w);
  }

  // Any run of printable bytes other than whitespace, '"', '=' and '#'.
  std::string token(const std::string &expected) {
    skip_ws();
    std::string_view w = take_while([](char c) {
      auto u = static_cast<unsigned char>(c);
      return u > 0x20 && u != 0x7f && c != '"' && c != '=';
    });
    if (w.empty())
      fail(expected);
    return std::string(w);
  }

  bool try_literal(std::string_view lit) {
    skip_ws();
    if (line_.substr(pos_).starts_with(lit)) {
      pos_ += lit.size();
      return true;
    }
    return false;
  }

  void literal(std::string_view lit) {
    if (!try_literal(lit))
      fail("'" + std::string(lit) + "'");
  }

  std::string quoted(const std::string &expected) {
    skip_ws();
    if (pos_ >= line_.size() || line_[pos_] != '"')
      fail(expected);
    ++pos_;
    std::string out;
    while (pos_ < line_.size() && line_[pos_] != '"') {
      if (line_[pos_] == '\\' && pos_ + 1 < line_.size())
        ++pos_;
      out.push_back(line_[pos_++]);
    }
    if (pos_ >= line_.size())
      fail("closing '\"'");
    ++pos_;
    return out;
  }

  // `key=` followed by a value read with `read`. Returns false (consuming
  // nothing) when the next token is not `key=`.
  bool try_key(std::string_view key) {
    skip_ws();
    std::size_t save = pos_;
    if (try_literal(key) && pos_ < line_.size() && line_[pos_] == '=') {
      ++pos_;
      return true;
    }
    pos_ = save;
    return false;
  }

  void expect_end() {
    if (!at_end())
      fail("end of line");
  }

private:
  std::string_view line_;
  int lineno_;
  std::size_t pos_ = 0;
};

class BcmParser {
public:
  explicit BcmParser(std::string_view text): lines_(split_lines(text)) { }

  ComponentModel parse() {
    ComponentModel model;
    bool have_header = false;
    int lineno = 0;

    for (std::string_view raw: lines_) {
      LineCursor cur(raw, ++lineno);
      if (cur.at_end())
        continue;

      std::string directive = cur.word("directive");
      if (!have_header) {
        if (directive != "component")
          throw ParseError(lineno, 1, "'component'",
                           "expected 'component' header");
        parse_header(cur, model);
        have_header = true;
        continue;
      }

      if (directive == "component") {
        cur.fail("a single 'component' header");
      } else if (directive == "structure") {
        Structure s;
        s.id = cur.word("structure id");
        cur.expect_end();
        model.structures.push_back(std::move(s));
        concept_ = nullptr;
      } else if (directive == "concept") {
        Structure &s = current(cur, model);
        Concept c;
        c.name = cur.word("concept name");
        cur.expect_end();
        s.concepts.push_back(std::move(c));
        concept_ = &s.concepts.back();
      } else if (directive == "attr") {
        if (concept_ == nullptr)
          throw ParseError(lineno, 1, "'concept'",
                           "attribute outside of a concept");
        Attribute a;
        a.name = cur.word("attribute name");
        cur.literal(":");
        a.type = cur.word("attribute type");
        cur.expect_end();
        concept_->attributes.push_back(std::move(a));
      } else if (directive == "relation") {
        current(cur, model).relations.push_back(parse_relation(cur));
      } else if (directive == "service") {
        current(cur, model).services.push_back(parse_service(cur));
      } else {
        throw ParseError(lineno, 1,
                         "one of structure, concept, attr, relation, service",
                         "unknown directive '" + directive + "'");
      }
    }

    if (!have_header)
      throw ParseError(1, 1, "'component'", "missing 'component' header");
    return model;
  }

private:
  Structure &current(LineCursor &cur, ComponentModel &model) {
    if (model.structures.empty())
      throw ParseError(cur.line(), 1, "'structure'",
                       "directive before any 'structure'");
    return model.structures.back();
  }

  static void parse_header(LineCursor &cur, ComponentModel &model) {
    model.name = cur.word("component name", "+");
    bool have_kind = false, have_reuse = false;
    while (!cur.at_end()) {
      if (cur.try_key("kind")) {
        std::string v = cur.word("entity or process");
        auto k = parse_component_kind(v);
        if (!k)
          throw ParseError(cur.line(), cur.column() - int(v.size()),
                           "entity or process", "bad kind '" + v + "'");
        model.kind = *k;
        have_kind = true;
      } else if (cur.try_key("reuse")) {
        std::string v = cur.word("reusable or generic");
        auto r = parse_reuse_kind(v);
        if (!r)
          throw ParseError(cur.line(), cur.column() - int(v.size()),
                           "reusable or generic", "bad reuse '" + v + "'");
        model.reuse = *r;
        have_reuse = true;
      } else {
        cur.fail("kind= or reuse=");
      }
    }
    if (!have_kind)
      cur.fail("kind=");
    if (!have_reuse)
      cur.fail("reuse=");
  }

  static Relation parse_relation(LineCursor &cur) {
    Relation r;
    r.source = cur.word("source concept");
    cur.literal("->");
    r.target = cur.word("target concept");
    bool have_kind = false;
    while (!cur.at_end()) {
      if (cur.try_key("kind")) {
        std::string v = cur.word("assoc, isa or comp");
        auto k = parse_relation_kind(v);
        if (!k)
          throw ParseError(cur.line(), cur.column() - int(v.size()),
                           "assoc, isa or comp", "bad kind '" + v + "'");
        r.kind = *k;
        have_kind = true;
      } else if (cur.try_key("label")) {
        r.label = cur.word("label");
      } else if (cur.try_key("card")) {
        r.cardinality = cur.word("cardinality", ".*");
      } else {
        cur.fail("kind=, label= or card=");
      }
    }
    if (!have_kind)
      cur.fail("kind=");
    return r;
  }

  static ServiceSignature parse_service(LineCursor &cur) {
    ServiceSignature s;
    s.name = cur.word("service name");
    cur.literal("(");
    if (!cur.try_literal(")")) {
      do {
        Parameter p;
        p.name = cur.word("parameter name");
        cur.literal(":");
        p.type = cur.word("parameter type");
        s.params.push_back(std::move(p));
      } while (cur.try_literal(","));
      cur.literal(")");
    }
    if (cur.try_literal(":"))
      s.return_type = cur.word("return type");
    cur.expect_end();
    return s;
  }

  std::vector<std::string_view> lines_;
  Concept *concept_ = nullptr;
};

}  // namespace

ComponentModel parse_bcm(std::string_view text) {
  return BcmParser(text).parse();
}

ComponentModel load_bcm(std::string_view text) {
  ComponentModel m = parse_bcm(text);
  require_valid(m);
  return m;
}

std::string serialize_bcm(const ComponentModel &input) {
  require_valid(input);
  ComponentModel model = canonicalize(input);

  std::ostringstream out;
  out << "component " << model.name << " kind=" << to_string(model.kind)
      << " reuse=" << to_string(model.reuse) << '\n';
  for (const Structure &s: model.structures) {
    out << "structure " << s.id << '\n';
    for (const Concept &c: s.concepts) {
      out << "concept " << c.name << '\n';
      for (const Attribute &a: c.attributes)
        out << "  attr " << a.name << " : " << a.type << '\n';
    }
    for (const Relation &r: s.relations) {
      out << "relation " << r.source << " -> " << r.target
          << " kind=" << to_string(r.kind);
      if (r.label)
        out << " label=" << *r.label;
      if (r.cardinality)
        out << " card=" << *r.cardinality;
      out << '\n';
    }
    for (const ServiceSignature &sv: s.services) {
      out << "service " << sv.name << '(';
      for (std::size_t i = 0; i < sv.params.size(); ++i) {
        if (i)
          out << ", ";
        out << sv.params[i].name << ':' << sv.params[i].type;
      }
      out << ')';
      if (sv.return_type)
        out << " : " << *sv.return_type;
      out << '\n';
    }
  }
  return out.str();
}

Ontology parse_onto(std::string_view text) {
  Ontology o;
  bool have_header = false;
  int lineno = 0;

  struct Pending {
    int line;
    std::vector<std::string> refs;
  };
  std::vector<Pending> refs;
  std::vector<std::pair<int, std::vector<std::string>>> syns;

  for (std::string_view raw: split_lines(text)) {
    LineCursor cur(raw, ++lineno);
    if (cur.at_end())
      continue;
    std::string directive = cur.word("directive");
    if (!have_header) {
      if (directive != "ontology")
        throw ParseError(lineno, 1, "'ontology'", "expected 'ontology' header");
      o.name = cur.token("ontology name");
      cur.expect_end();
      have_header = true;
      continue;
    }

    if (directive == "concept") {
      OntologyConcept c;
      c.id = cur.token("concept id");
      c.label = c.id;
      if (cur.try_key("label"))
        c.label = cur.quoted("quoted label");
      cur.expect_end();
      if (o.find(c.id) != nullptr)
        throw ValidationError("DUP_CONCEPT", "line " + std::to_string(lineno)
                                                 + ": concept '" + c.id
                                                 + "' is declared twice");
      o.concepts.push_back(std::move(c));
    } else if (directive == "isa") {
      IsaEdge e;
      e.child = cur.token("child concept");
      e.parent = cur.token("parent concept");
      cur.expect_end();
      refs.push_back({ lineno, { e.child, e.parent } });
      o.isa_edges.push_back(std::move(e));
    } else if (directive == "rel") {
      RelEdge e;
      e.id = cur.token("relation id");
      e.source = cur.token("source concept");
      e.target = cur.token("target concept");
      if (cur.try_key("label"))
        e.label = cur.quoted("quoted label");
      else
        cur.fail("label=");
      cur.expect_end();
      refs.push_back({ lineno, { e.source, e.target } });
      o.rel_edges.push_back(std::move(e));
    } else if (directive == "syn") {
      std::vector<std::string> v { cur.token("concept id") };
      do {
        v.push_back(cur.quoted("quoted alias"));
      } while (!cur.at_end());
      syns.emplace_back(lineno, std::move(v));
    } else {
      throw ParseError(lineno, 1, "one of concept, isa, rel, syn",
                       "unknown directive '" + directive + "'");
    }
  }
  if (!have_header)
    throw ParseError(1, 1, "'ontology'", "missing 'ontology' header");

  for (const Pending &p: refs) {
    for (const std::string &id: p.refs) {
      if (!o.contains(id))
        throw ValidationError("UNKNOWN_CONCEPT",
                              "line " + std::to_string(p.line)
                                  + ": unknown concept '" + id + "'");
    }
  }
  for (auto &[line, v]: syns) {
    auto it = std::find_if(o.concepts.begin(), o.concepts.end(),
                           [&](const auto &c) { return c.id == v.front(); });
    if (it == o.concepts.end())
      throw ValidationError("UNKNOWN_CONCEPT",
                            "line " + std::to_string(line)
                                + ": unknown concept '" + v.front() + "'");
    it->aliases.insert(it->aliases.end(), v.begin() + 1, v.end());
    std::sort(it->aliases.begin(), it->aliases.end());
    it->aliases.erase(std::unique(it->aliases.begin(), it->aliases.end()),
                      it->aliases.end());
  }

  check_ontology(o);
  return o;
}

namespace {

std::string quote(std::string_view s) {
  std::string out = "\"";
  for (char c: s) {
    if (c == '"' || c == '\\')
      out.push_back('\\');
    out.push_back(c);
  }
  out.push_back('"');
  return out;
}

}  // namespace

std::string serialize_onto(const Ontology &input) {
  Ontology o = input;
  std::sort(o.concepts.begin(), o.concepts.end(),
            [](const auto &a, const auto &b) { return a.id < b.id; });
  std::sort(o.isa_edges.begin(), o.isa_edges.end());
  std::sort(o.rel_edges.begin(), o.rel_edges.end());

  std::ostringstream out;
  out << "ontology " << o.name << '\n';
  for (const OntologyConcept &c: o.concepts)
    out << "concept " << c.id << " label=" << quote(c.label) << '\n';
  for (const IsaEdge &e: o.isa_edges)
    out << "isa " << e.child << ' ' << e.parent << '\n';
  for (const RelEdge &e: o.rel_edges)
    out << "rel " << e.id << ' ' << e.source << ' ' << e.target
        << " label=" << quote(e.label) << '\n';
  for (const OntologyConcept &c: o.concepts) {
    if (c.aliases.empty())
      continue;
    out << "syn " << c.id;
    for (const std::string &a: c.aliases)
      out << ' ' << quote(a);
    out << '\n';
  }
  return out.str();
}

Lexicon parse_lexicon(std::string_view text) {
  Lexicon lex;
  int lineno = 0;
  for (std::string_view raw: split_lines(text)) {
    ++lineno;
    std::string_view line = raw.substr(0, raw.find('#'));
    if (std::all_of(line.begin(), line.end(), is_space))
      continue;

    std::set<std::string> terms;
    std::size_t start = 0;
    while (start <= line.size()) {
      std::size_t comma = line.find(',', start);
      std::string_view term = line.substr(
          start, comma == std::string_view::npos ? std::string_view::npos
                                                 : comma - start);
      std::string norm = normalize_label_or_empty(term);
      if (norm.empty())
        throw ParseError(lineno, static_cast<int>(start) + 1, "term",
                         "empty term in synset");
      terms.insert(std::move(norm));
      if (comma == std::string_view::npos)
        break;
      start = comma + 1;
    }
    if (terms.size() < 2)
      throw ParseError(lineno, 1, "at least two distinct terms",
                       "synset needs at least two distinct terms");
    lex.synsets.emplace_back(terms.begin(), terms.end());
  }
  return lex;
}

std::string read_file(const std::string &path) {
  std::ifstream in(path, std::ios::binary);
  if (!in)
    throw NotFoundError("FILE_NOT_FOUND", "cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace bcfuse
