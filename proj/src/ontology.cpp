//
// bcfuse - Copyright 2026 The bcfuse Authors.
// SPDX-License-Identifier: Apache-2.0
//

#include "bcfuse/ontology.h"

#include <algorithm>
#include <deque>
#include <map>
#include <set>

#include "bcfuse/error.h"

namespace bcfuse {

const OntologyConcept *Ontology::find(std::string_view id) const {
  auto it = std::find_if(concepts.begin(), concepts.end(),
                         [&](const OntologyConcept &c) { return c.id == id; });
  return it == concepts.end() ? nullptr : &*it;
}

std::size_t concept_count(const Ontology &o) {
  return o.concepts.size();
}

namespace {

using Adjacency = std::map<std::string, std::vector<std::string>, std::less<>>;

Adjacency parent_map(const Ontology &o) {
  Adjacency parents;
  for (const IsaEdge &e: o.isa_edges)
    parents[e.child].push_back(e.parent);
  for (auto &[_, v]: parents)
    std::sort(v.begin(), v.end());
  return parents;
}

// Distances from `start` to every ancestor (including itself).
std::map<std::string, std::size_t> ancestor_depths(const Adjacency &parents,
                                                   std::string_view start) {
  std::map<std::string, std::size_t> depth;
  std::deque<std::string> queue { std::string(start) };
  depth[std::string(start)] = 0;
  while (!queue.empty()) {
    std::string cur = std::move(queue.front());
    queue.pop_front();
    auto it = parents.find(cur);
    if (it == parents.end())
      continue;
    for (const std::string &p: it->second) {
      if (depth.emplace(p, depth[cur] + 1).second)
        queue.push_back(p);
    }
  }
  return depth;
}

}  // namespace

void check_ontology(const Ontology &o) {
  std::set<std::string, std::less<>> ids;
  for (const OntologyConcept &c: o.concepts) {
    if (!ids.insert(c.id).second)
      throw ValidationError("DUP_CONCEPT",
                            "concept '" + c.id + "' is declared twice");
  }

  auto require = [&](const std::string &id, std::string_view where) {
    if (!ids.contains(id))
      throw ValidationError("UNKNOWN_CONCEPT",
                            std::string(where) + " references unknown concept '"
                                + id + "'");
  };
  for (const IsaEdge &e: o.isa_edges) {
    require(e.child, "isa edge");
    require(e.parent, "isa edge");
  }
  for (const RelEdge &e: o.rel_edges) {
    require(e.source, "rel " + e.id);
    require(e.target, "rel " + e.id);
  }

  // Iterative three-colour DFS; reports the first cycle found.
  Adjacency parents = parent_map(o);
  std::map<std::string, int, std::less<>> colour;
  for (const OntologyConcept &start: o.concepts) {
    if (colour[start.id] != 0)
      continue;
    std::vector<std::pair<std::string, std::size_t>> stack { { start.id, 0 } };
    colour[start.id] = 1;
    while (!stack.empty()) {
      auto &[node, next] = stack.back();
      auto it = parents.find(node);
      if (it == parents.end() || next >= it->second.size()) {
        colour[node] = 2;
        stack.pop_back();
        continue;
      }
      const std::string parent = it->second[next++];
      if (colour[parent] == 1) {
        std::string path;
        bool on = false;
        for (const auto &frame: stack) {
          on = on || frame.first == parent;
          if (on)
            path += frame.first + " -> ";
        }
        throw ValidationError("ISA_CYCLE", "is-a cycle: " + path + parent);
      }
      if (colour[parent] == 0) {
        colour[parent] = 1;
        stack.emplace_back(parent, 0);
      }
    }
  }
}

std::vector<std::string> isa_parents(const Ontology &o, std::string_view id) {
  std::vector<std::string> out;
  for (const IsaEdge &e: o.isa_edges) {
    if (e.child == id)
      out.push_back(e.parent);
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::optional<std::size_t> isa_distance(const Ontology &o, std::string_view a,
                                        std::string_view b) {
  Adjacency undirected;
  for (const IsaEdge &e: o.isa_edges) {
    undirected[e.child].push_back(e.parent);
    undirected[e.parent].push_back(e.child);
  }

  std::map<std::string, std::size_t, std::less<>> dist;
  std::deque<std::string> queue { std::string(a) };
  dist[std::string(a)] = 0;
  while (!queue.empty()) {
    std::string cur = std::move(queue.front());
    queue.pop_front();
    if (cur == b)
      return dist[cur];
    auto it = undirected.find(cur);
    if (it == undirected.end())
      continue;
    for (const std::string &n: it->second) {
      if (dist.emplace(n, dist[cur] + 1).second)
        queue.push_back(n);
    }
  }
  return std::nullopt;
}

std::optional<std::string> nearest_common_ancestor(const Ontology &o,
                                                   std::string_view a,
                                                   std::string_view b) {
  Adjacency parents = parent_map(o);
  auto da = ancestor_depths(parents, a);
  auto db = ancestor_depths(parents, b);

  std::optional<std::string> best;
  std::size_t best_cost = 0;
  for (const auto &[id, depth]: da) {  // ordered by id: first wins ties
    auto it = db.find(id);
    if (it == db.end())
      continue;
    std::size_t cost = depth + it->second;
    if (!best || cost < best_cost) {
      best = id;
      best_cost = cost;
    }
  }
  return best;
}

std::vector<std::string> attribute_names(const Ontology &o,
                                         std::string_view concept_id) {
  constexpr std::string_view kPrefix = "hasAttr:";
  std::vector<std::string> out;
  for (const RelEdge &e: o.rel_edges) {
    if (e.source == concept_id && e.label.starts_with(kPrefix))
      out.push_back(e.label.substr(kPrefix.size()));
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

}  // namespace bcfuse
