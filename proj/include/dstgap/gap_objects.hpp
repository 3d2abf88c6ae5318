// Copyright 2026 The dstgap Authors
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

// The abstract objects a layered gap instance is built from: a bi-regular
// bipartite graph H = (A + B, E_H) whose edges are colored by terminals so
// that every color class is a matching of the same size s.

#include <algorithm>
#include <cstddef>
#include <set>
#include <string>
#include <tuple>
#include <vector>

#include "dstgap/error.hpp"

namespace dstgap {

struct GapEdge {
  std::size_t a = 0;
  std::size_t b = 0;
  std::size_t color = 0;

  friend bool operator==(const GapEdge&, const GapEdge&) = default;
};

enum class FamilyKind { kNone, kZk, kSubset };

// Which generator produced a set of objects. Labels of A-vertices, B-vertices
// and colors are rendered subsets in colex order when kind != kNone.
struct FamilyTag {
  FamilyKind kind = FamilyKind::kNone;
  int k = 0;       // zk
  int m = 0;       // subset
  int a = 0;       // subset
  int thresh = 0;  // subset, default J-set threshold

  friend bool operator==(const FamilyTag&, const FamilyTag&) = default;
};

struct GapObjects {
  std::vector<std::string> a_vertices;
  std::vector<std::string> b_vertices;
  std::vector<std::string> colors;
  std::vector<GapEdge> edges;
  std::size_t d = 0;
  std::size_t d_prime = 0;
  std::size_t s = 0;
  std::size_t k = 0;
  FamilyTag family;
};

struct Check {
  std::string name;
  bool passed = true;
  // Advisory checks are reported but do not fail validation.
  bool advisory = false;
  std::vector<std::string> witnesses;
};

struct ValidationReport {
  std::vector<Check> checks;

  bool ok() const {
    return std::all_of(checks.begin(), checks.end(),
                       [](const Check& c) { return c.passed || c.advisory; });
  }

  const Check* find(const std::string& name) const {
    for (const auto& c : checks) {
      if (c.name == name) return &c;
    }
    return nullptr;
  }
};

// Throws InputError when an edge refers to a vertex or color that does not exist.
inline void check_indices(const GapObjects& obj) {
  for (std::size_t i = 0; i < obj.edges.size(); ++i) {
    const auto& e = obj.edges[i];
    if (e.a >= obj.a_vertices.size() || e.b >= obj.b_vertices.size() ||
        e.color >= obj.colors.size()) {
      throw InputError("gap edge #" + std::to_string(i) + " has an out-of-range index");
    }
  }
}

// K_v for every B-vertex: the sorted, de-duplicated colors on its incident edges.
inline std::vector<std::vector<std::size_t>> color_sets(const GapObjects& obj) {
  check_indices(obj);
  std::vector<std::vector<std::size_t>> out(obj.b_vertices.size());
  for (const auto& e : obj.edges) out[e.b].push_back(e.color);
  for (auto& ks : out) {
    std::sort(ks.begin(), ks.end());
    ks.erase(std::unique(ks.begin(), ks.end()), ks.end());
  }
  return out;
}

// Neighbors in H of every A-vertex, sorted by B index.
inline std::vector<std::vector<std::size_t>> a_neighbors(const GapObjects& obj) {
  std::vector<std::vector<std::size_t>> out(obj.a_vertices.size());
  for (const auto& e : obj.edges) out[e.a].push_back(e.b);
  for (auto& ns : out) std::sort(ns.begin(), ns.end());
  return out;
}

inline std::vector<std::vector<std::size_t>> b_neighbors(const GapObjects& obj) {
  std::vector<std::vector<std::size_t>> out(obj.b_vertices.size());
  for (const auto& e : obj.edges) out[e.b].push_back(e.a);
  for (auto& ns : out) std::sort(ns.begin(), ns.end());
  return out;
}

// Every property of the objects is checked and every violation is listed.
// |A| <= |B| and d >= d' are advisory: small members of both families (the
// k = 4 subset-containment family among them) violate them, and nothing
// downstream depends on them.
inline ValidationReport validate_objects(const GapObjects& obj) {
  check_indices(obj);
  constexpr std::size_t kMaxWitnesses = 16;
  ValidationReport report;
  auto add = [&](std::string name, bool advisory = false) -> Check& {
    report.checks.push_back(Check{std::move(name), true, advisory, {}});
    return report.checks.back();
  };
  auto fail = [&](Check& c, std::string why) {
    c.passed = false;
    if (c.witnesses.size() < kMaxWitnesses) c.witnesses.push_back(std::move(why));
  };

  const std::size_t na = obj.a_vertices.size();
  const std::size_t nb = obj.b_vertices.size();
  const std::size_t ne = obj.edges.size();

  Check& nonempty = add("nonempty");
  if (ne == 0 || obj.s == 0 || obj.k == 0) fail(nonempty, "H has no edges or s = 0 or k = 0");

  Check& ncolors = add("color_count");
  if (obj.colors.size() != obj.k) {
    fail(ncolors, "k = " + std::to_string(obj.k) + " but " + std::to_string(obj.colors.size()) +
                      " colors are listed");
  }

  std::vector<std::size_t> deg_a(na, 0), deg_b(nb, 0);
  for (const auto& e : obj.edges) {
    ++deg_a[e.a];
    ++deg_b[e.b];
  }
  Check& da = add("a_degree");
  for (std::size_t u = 0; u < na; ++u) {
    if (deg_a[u] != obj.d) {
      fail(da, "A-vertex " + obj.a_vertices[u] + " has degree " + std::to_string(deg_a[u]) +
                   ", expected d = " + std::to_string(obj.d));
    }
  }
  Check& db = add("b_degree");
  for (std::size_t v = 0; v < nb; ++v) {
    if (deg_b[v] != obj.d_prime) {
      fail(db, "B-vertex " + obj.b_vertices[v] + " has degree " + std::to_string(deg_b[v]) +
                   ", expected d' = " + std::to_string(obj.d_prime));
    }
  }

  Check& parallel = add("no_parallel_edges");
  {
    std::vector<std::pair<std::size_t, std::size_t>> ends;
    ends.reserve(ne);
    for (const auto& e : obj.edges) ends.emplace_back(e.a, e.b);
    std::sort(ends.begin(), ends.end());
    for (std::size_t i = 1; i < ends.size(); ++i) {
      if (ends[i] == ends[i - 1]) {
        fail(parallel, "duplicate edge " + obj.a_vertices[ends[i].first] + " -> " +
                           obj.b_vertices[ends[i].second]);
      }
    }
  }

  Check& matching = add("color_class_matching");
  Check& class_size = add("color_class_size");
  {
    std::vector<std::vector<const GapEdge*>> classes(obj.colors.size());
    for (const auto& e : obj.edges) classes[e.color].push_back(&e);
    for (std::size_t t = 0; t < classes.size(); ++t) {
      if (classes[t].size() != obj.s) {
        fail(class_size, "color " + obj.colors[t] + " has " + std::to_string(classes[t].size()) +
                             " edges, expected s = " + std::to_string(obj.s));
      }
      std::set<std::size_t> seen_a, seen_b;
      for (const GapEdge* e : classes[t]) {
        if (!seen_a.insert(e->a).second) {
          fail(matching, "color " + obj.colors[t] + " is not a matching: A-vertex " +
                             obj.a_vertices[e->a] + " is matched twice");
        }
        if (!seen_b.insert(e->b).second) {
          fail(matching, "color " + obj.colors[t] + " is not a matching: B-vertex " +
                             obj.b_vertices[e->b] + " is matched twice");
        }
      }
    }
  }

  Check& counting = add("edge_count_identity");
  if (!(obj.s * obj.k == ne && obj.d * na == ne && obj.d_prime * nb == ne)) {
    fail(counting, "s*k = " + std::to_string(obj.s * obj.k) + ", d*|A| = " +
                       std::to_string(obj.d * na) + ", d'*|B| = " + std::to_string(obj.d_prime * nb) +
                       ", |E_H| = " + std::to_string(ne));
  }
  Check& s_le_a = add("s_le_a");
  if (obj.s > na) fail(s_le_a, "s = " + std::to_string(obj.s) + " > |A| = " + std::to_string(na));
  Check& k_ge = add("k_ge_degrees");
  if (obj.k < obj.d || obj.k < obj.d_prime) {
    fail(k_ge, "k = " + std::to_string(obj.k) + " is smaller than d or d'");
  }

  Check& kv = add("k_v_size");
  {
    const auto sets = color_sets(obj);
    for (std::size_t v = 0; v < nb; ++v) {
      if (sets[v].size() != obj.d_prime) {
        fail(kv, "B-vertex " + obj.b_vertices[v] + " sees " + std::to_string(sets[v].size()) +
                     " distinct colors, expected d' = " + std::to_string(obj.d_prime));
      }
    }
  }

  Check& a_le_b = add("a_le_b", /*advisory=*/true);
  if (na > nb) fail(a_le_b, "|A| = " + std::to_string(na) + " > |B| = " + std::to_string(nb));
  Check& d_ge = add("d_ge_d_prime", /*advisory=*/true);
  if (obj.d < obj.d_prime) {
    fail(d_ge, "d = " + std::to_string(obj.d) + " < d' = " + std::to_string(obj.d_prime));
  }
  return report;
}

}  // namespace dstgap
