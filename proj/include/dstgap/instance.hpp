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

// The 5-level directed Steiner tree instance built from gap objects:
//
//   level 0: root r
//   level 1: A           E1 = {(r, u)}            cost |B|/|A|
//   level 2: B           E2 = E_H, directed A->B  cost 0
//   level 3: B' (copies) E3 = {(v, pi(v))}        cost 1
//   level 4: K           E4 = {(pi(v), t) : t in K_v}  cost 0
//
// Vertex ids are dense and level-contiguous; inside a level they follow the
// id order of the gap objects.

#include <algorithm>
#include <array>
#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <tuple>
#include <unordered_map>
#include <vector>

#include "dstgap/error.hpp"
#include "dstgap/gap_objects.hpp"
#include "dstgap/rational.hpp"

namespace dstgap {

using VertexId = std::size_t;
using EdgeId = std::size_t;

inline constexpr int kLevels = 5;

struct DstEdge {
  VertexId tail = 0;
  VertexId head = 0;
  Rational cost;
  int level = 0;  // 1..4: the edge goes from level-1 to level
  // Color of an E2 edge, i.e. the terminal whose matching contains it.
  std::optional<std::size_t> color;
};

class DstInstance {
 public:
  DstInstance() = default;

  // `levels[i]` are the labels of level i; edges must run between consecutive
  // levels. `pi[j]` is the vertex id of the copy of the j-th B-vertex.
  DstInstance(std::array<std::vector<std::string>, kLevels> levels, std::vector<DstEdge> edges,
              std::vector<VertexId> pi, GapObjects objects)
      : levels_(std::move(levels)), edges_(std::move(edges)), pi_(std::move(pi)),
        objects_(std::move(objects)) {
    offsets_[0] = 0;
    for (int i = 0; i < kLevels; ++i) offsets_[i + 1] = offsets_[i] + levels_[i].size();
    if (levels_[0].size() != 1) throw InputError("level 0 must hold exactly the root");
    for (std::size_t i = 0; i < edges_.size(); ++i) {
      const auto& e = edges_[i];
      if (e.tail >= vertex_count() || e.head >= vertex_count()) {
        throw InputError("edge #" + std::to_string(i) + " refers to a missing vertex");
      }
      if (e.level < 1 || e.level >= kLevels || level_of(e.tail) != e.level - 1 ||
          level_of(e.head) != e.level) {
        throw InputError("edge #" + std::to_string(i) + " does not join consecutive levels");
      }
      if (e.cost < 0) throw InputError("edge #" + std::to_string(i) + " has negative cost");
    }
    if (pi_.size() != levels_[2].size()) throw InputError("pi must map every B-vertex");
    for (VertexId p : pi_) {
      if (p >= vertex_count() || level_of(p) != 3) throw InputError("pi maps outside level 3");
    }
    index_.reserve(edges_.size());
    for (EdgeId i = 0; i < edges_.size(); ++i) {
      if (!index_.emplace(key(edges_[i].tail, edges_[i].head), i).second) {
        throw InputError("parallel edge " + label(edges_[i].tail) + " -> " + label(edges_[i].head));
      }
    }
  }

  std::size_t vertex_count() const { return offsets_[kLevels]; }
  VertexId root() const { return 0; }
  std::size_t level_size(int level) const { return levels_[level].size(); }
  VertexId level_begin(int level) const { return offsets_[level]; }
  VertexId vertex(int level, std::size_t index) const { return offsets_[level] + index; }

  int level_of(VertexId v) const {
    for (int i = 0; i < kLevels; ++i) {
      if (v < offsets_[i + 1]) return i;
    }
    throw InputError("vertex id out of range");
  }

  std::size_t index_in_level(VertexId v) const { return v - offsets_[level_of(v)]; }

  const std::string& label(VertexId v) const {
    const int l = level_of(v);
    return levels_[l][v - offsets_[l]];
  }

  const std::array<std::vector<std::string>, kLevels>& levels() const { return levels_; }
  const std::vector<DstEdge>& edges() const { return edges_; }
  const std::vector<VertexId>& pi() const { return pi_; }
  const GapObjects& objects() const { return objects_; }

  std::vector<VertexId> terminals() const {
    std::vector<VertexId> out(level_size(4));
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = vertex(4, i);
    return out;
  }

  std::optional<EdgeId> find_edge(VertexId tail, VertexId head) const {
    auto it = index_.find(key(tail, head));
    if (it == index_.end()) return std::nullopt;
    return it->second;
  }

  // Outgoing edge ids per vertex, in edge order.
  std::vector<std::vector<EdgeId>> out_edges() const {
    std::vector<std::vector<EdgeId>> out(vertex_count());
    for (EdgeId i = 0; i < edges_.size(); ++i) out[edges_[i].tail].push_back(i);
    return out;
  }

  std::vector<std::vector<EdgeId>> in_edges() const {
    std::vector<std::vector<EdgeId>> in(vertex_count());
    for (EdgeId i = 0; i < edges_.size(); ++i) in[edges_[i].head].push_back(i);
    return in;
  }

  // Sum of c_e * x_e.
  template <typename Vec>
  Rational cost_of(const Vec& x) const {
    if (x.size() != edges_.size()) throw InputError("cost_of: one value per edge expected");
    Rational total = 0;
    for (EdgeId i = 0; i < edges_.size(); ++i) total += edges_[i].cost * x[i];
    return total;
  }

 private:
  static std::uint64_t key(VertexId t, VertexId h) {
    return (static_cast<std::uint64_t>(t) << 32) | static_cast<std::uint64_t>(h);
  }

  std::array<std::vector<std::string>, kLevels> levels_;
  std::array<std::size_t, kLevels + 1> offsets_{};
  std::vector<DstEdge> edges_;
  std::vector<VertexId> pi_;
  GapObjects objects_;
  std::unordered_map<std::uint64_t, EdgeId> index_;
};

inline std::string level_label(int level, const std::string& name) {
  switch (level) {
    case 0: return "r";
    case 1: return "A" + name;
    case 2: return "B" + name;
    case 3: return "B'" + name;
    default: return "K" + name;
  }
}

// Edges are emitted sorted by (level, tail id, head id).
inline DstInstance build_instance(const GapObjects& obj) {
  const ValidationReport report = validate_objects(obj);
  if (!report.ok()) {
    std::string why;
    for (const auto& c : report.checks) {
      if (!c.passed && !c.advisory) {
        why += " " + c.name;
        if (!c.witnesses.empty()) why += " (" + c.witnesses.front() + ")";
      }
    }
    throw InputError("gap objects failed validation:" + why);
  }
  const std::size_t na = obj.a_vertices.size();
  const std::size_t nb = obj.b_vertices.size();

  std::array<std::vector<std::string>, kLevels> levels;
  levels[0] = {"r"};
  for (const auto& l : obj.a_vertices) levels[1].push_back(level_label(1, l));
  for (const auto& l : obj.b_vertices) levels[2].push_back(level_label(2, l));
  for (const auto& l : obj.b_vertices) levels[3].push_back(level_label(3, l));
  for (const auto& l : obj.colors) levels[4].push_back(level_label(4, l));

  const VertexId a0 = 1, b0 = a0 + na, bp0 = b0 + nb, k0 = bp0 + nb;
  const Rational e1_cost = make_rational(static_cast<long>(nb), static_cast<long>(na));

  std::vector<DstEdge> edges;
  edges.reserve(na + obj.edges.size() * 2 + nb);
  for (std::size_t u = 0; u < na; ++u) edges.push_back(DstEdge{0, a0 + u, e1_cost, 1, std::nullopt});
  // obj.edges is not guaranteed sorted when built by hand.
  std::vector<GapEdge> h = obj.edges;
  std::sort(h.begin(), h.end(), [](const GapEdge& x, const GapEdge& y) {
    return std::tie(x.a, x.b) < std::tie(y.a, y.b);
  });
  for (const auto& e : h) edges.push_back(DstEdge{a0 + e.a, b0 + e.b, Rational(0), 2, e.color});
  for (std::size_t v = 0; v < nb; ++v) edges.push_back(DstEdge{b0 + v, bp0 + v, Rational(1), 3, std::nullopt});
  const auto kv = color_sets(obj);
  for (std::size_t v = 0; v < nb; ++v) {
    for (std::size_t t : kv[v]) edges.push_back(DstEdge{bp0 + v, k0 + t, Rational(0), 4, std::nullopt});
  }
  std::vector<VertexId> pi(nb);
  for (std::size_t v = 0; v < nb; ++v) pi[v] = bp0 + v;
  return DstInstance(std::move(levels), std::move(edges), std::move(pi), obj);
}

struct InstanceStats {
  std::size_t n = 0;
  std::array<std::size_t, kLevels> level_sizes{};
  std::array<std::size_t, kLevels> edge_counts{};  // index 1..4 used
  std::size_t d = 0, d_prime = 0, s = 0, k = 0;
  Rational total_edge_cost;
  Rational canonical_lp_cost;  // 2|B|/s
};

inline InstanceStats instance_stats(const DstInstance& inst) {
  InstanceStats st;
  st.n = inst.vertex_count();
  for (int i = 0; i < kLevels; ++i) st.level_sizes[static_cast<std::size_t>(i)] = inst.level_size(i);
  for (const auto& e : inst.edges()) {
    ++st.edge_counts[static_cast<std::size_t>(e.level)];
    st.total_edge_cost += e.cost;
  }
  const auto& obj = inst.objects();
  st.d = obj.d;
  st.d_prime = obj.d_prime;
  st.s = obj.s;
  st.k = obj.k;
  if (obj.s > 0) {
    st.canonical_lp_cost = make_rational(2 * static_cast<long>(inst.level_size(2)), static_cast<long>(obj.s));
  }
  return st;
}

// Checks a (possibly hand-edited) instance against the construction rules.
inline ValidationReport check_instance(const DstInstance& inst) {
  ValidationReport report;
  auto add = [&](std::string name) -> Check& {
    report.checks.push_back(Check{std::move(name), true, false, {}});
    return report.checks.back();
  };
  auto fail = [](Check& c, std::string why) {
    c.passed = false;
    if (c.witnesses.size() < 16) c.witnesses.push_back(std::move(why));
  };
  const auto& obj = inst.objects();
  const std::size_t na = inst.level_size(1), nb = inst.level_size(2), nt = inst.level_size(4);

  Check& shape = add("level_sizes");
  if (na != obj.a_vertices.size() || nb != obj.b_vertices.size() || inst.level_size(3) != nb ||
      nt != obj.k) {
    fail(shape, "level sizes disagree with the gap objects");
  }
  Check& n = add("vertex_count");
  if (inst.vertex_count() != 1 + na + 2 * nb + nt) fail(n, "n != 1 + |A| + 2|B| + k");

  std::array<std::size_t, kLevels> counts{};
  Check& costs = add("edge_costs");
  const Rational e1 = na ? make_rational(static_cast<long>(nb), static_cast<long>(na)) : Rational(0);
  for (const auto& e : inst.edges()) {
    ++counts[static_cast<std::size_t>(e.level)];
    const Rational want = e.level == 1 ? e1 : e.level == 3 ? Rational(1) : Rational(0);
    if (e.cost != want) {
      fail(costs, inst.label(e.tail) + " -> " + inst.label(e.head) + " costs " + to_string(e.cost) +
                      ", expected " + to_string(want));
    }
  }
  Check& ec = add("edge_class_counts");
  if (counts[1] != na || counts[2] != obj.edges.size() || counts[3] != nb || counts[4] != nb * obj.d_prime) {
    fail(ec, "|E1|,|E2|,|E3|,|E4| = " + std::to_string(counts[1]) + "," + std::to_string(counts[2]) + "," +
                 std::to_string(counts[3]) + "," + std::to_string(counts[4]));
  }

  Check& e3 = add("pi_edges");
  for (std::size_t v = 0; v < nb; ++v) {
    if (!inst.find_edge(inst.vertex(2, v), inst.pi()[v])) {
      fail(e3, "missing E3 edge out of " + inst.label(inst.vertex(2, v)));
    }
  }

  Check& out4 = add("copy_out_neighbors");
  {
    const auto kv = color_sets(obj);
    const auto out = inst.out_edges();
    for (std::size_t v = 0; v < nb && v < kv.size(); ++v) {
      std::vector<std::size_t> heads;
      for (EdgeId e : out[inst.pi()[v]]) heads.push_back(inst.index_in_level(inst.edges()[e].head));
      std::sort(heads.begin(), heads.end());
      if (heads != kv[v]) fail(out4, "out-neighbors of " + inst.label(inst.pi()[v]) + " differ from K_v");
    }
  }
  Check& indeg = add("terminal_in_degree");
  {
    const auto in = inst.in_edges();
    for (VertexId t : inst.terminals()) {
      if (in[t].size() != obj.s) {
        fail(indeg, inst.label(t) + " has in-degree " + std::to_string(in[t].size()) + ", expected s = " +
                        std::to_string(obj.s));
      }
    }
  }
  return report;
}

}  // namespace dstgap
