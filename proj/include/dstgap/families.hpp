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

// Generators for the two subset-containment families of gap objects.
//
//   zk(k):                 A = (K choose sqrt k), B = (K choose sqrt k + 1),
//                          color of (A, B) = the element of B \ A.
//   subset(m, a, thresh):  A = K = ([m] choose a), B = ([m] choose 2a),
//                          color of (A, B) = the a-set B \ A.
//
// In both, (A, B) is an edge iff A is contained in B. Vertices and colors are
// indexed by colex rank and labelled by the rendered subset.

#include <algorithm>
#include <bit>
#include <charconv>
#include <cmath>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "dstgap/error.hpp"
#include "dstgap/gap_objects.hpp"
#include "dstgap/rational.hpp"
#include "dstgap/subsets.hpp"

namespace dstgap {

struct SizeCap {
  std::uint64_t max_edges = 10'000'000;
};

struct SubsetFamilyParams {
  int m = 0;
  int a = 0;
  int thresh = 0;
};

// J_u for every A-vertex u, as sorted color indices.
struct JSetFamily {
  std::vector<std::vector<std::size_t>> sets;
};

inline int exact_sqrt(int k) {
  if (k < 0) return -1;
  int r = static_cast<int>(std::lround(std::sqrt(static_cast<double>(k))));
  while (r * r > k) --r;
  while ((r + 1) * (r + 1) <= k) ++r;
  return r * r == k ? r : -1;
}

namespace detail {

inline std::vector<SubsetMask> all_subsets(int m, int r) {
  std::vector<SubsetMask> out;
  out.reserve(binomial_u64(m, r));
  for_each_subset(m, r, [&](SubsetMask s) { out.push_back(s); });
  return out;
}

inline std::vector<std::string> labels_of(const std::vector<SubsetMask>& masks) {
  std::vector<std::string> out;
  out.reserve(masks.size());
  for (SubsetMask s : masks) out.push_back(render_mask(s));
  return out;
}

inline void sort_edges(std::vector<GapEdge>& edges) {
  std::sort(edges.begin(), edges.end(), [](const GapEdge& x, const GapEdge& y) {
    return std::tie(x.a, x.b, x.color) < std::tie(y.a, y.b, y.color);
  });
}

inline void check_cap(const BigInt& edges, const SizeCap& cap) {
  if (edges > BigInt(std::to_string(cap.max_edges))) {
    throw CapExceeded("instance would have " + edges.get_str() + " edges in H, cap is " +
                      std::to_string(cap.max_edges));
  }
}

}  // namespace detail

inline GapObjects zk_objects(int k, const SizeCap& cap = {}) {
  const int r = exact_sqrt(k);
  if (r < 0) throw ParamError("k must be a perfect square (got " + std::to_string(k) + ")");
  if (k < 4) throw ParamError("k must be at least 4 (got " + std::to_string(k) + ")");
  if (k > kMaxGroundSet) throw CapExceeded("k exceeds the bitmask ground-set limit");
  detail::check_cap(binomial(k, r + 1) * (r + 1), cap);

  const auto a_masks = detail::all_subsets(k, r);
  const auto b_masks = detail::all_subsets(k, r + 1);
  GapObjects obj;
  obj.a_vertices = detail::labels_of(a_masks);
  obj.b_vertices = detail::labels_of(b_masks);
  for (int e = 1; e <= k; ++e) obj.colors.push_back(render_subset({e}));
  obj.edges.reserve(b_masks.size() * static_cast<std::size_t>(r + 1));
  for (std::size_t bi = 0; bi < b_masks.size(); ++bi) {
    for (SubsetMask rest = b_masks[bi]; rest != 0; rest &= rest - 1) {
      const SubsetMask bit = rest & (~rest + 1);
      obj.edges.push_back(GapEdge{rank_mask(b_masks[bi] ^ bit), bi,
                                  static_cast<std::size_t>(std::countr_zero(bit))});
    }
  }
  detail::sort_edges(obj.edges);
  obj.k = static_cast<std::size_t>(k);
  obj.d = static_cast<std::size_t>(k - r);
  obj.d_prime = static_cast<std::size_t>(r + 1);
  obj.s = obj.edges.size() / obj.k;
  obj.family = FamilyTag{FamilyKind::kZk, k, 0, 0, 0};
  return obj;
}

inline void check_params(const SubsetFamilyParams& p) {
  if (p.m < 1 || p.a < 1) throw ParamError("m and a must be positive");
  if (2 * p.a > p.m) throw ParamError("2a must not exceed m");
  if (p.thresh < 0 || p.thresh >= p.a) throw ParamError("thresh must satisfy 0 <= thresh < a");
  if (p.m > kMaxGroundSet) throw CapExceeded("m exceeds the bitmask ground-set limit");
}

inline GapObjects subset_objects(const SubsetFamilyParams& p, const SizeCap& cap = {}) {
  check_params(p);
  detail::check_cap(binomial(p.m, 2 * p.a) * binomial(2 * p.a, p.a), cap);

  const auto a_masks = detail::all_subsets(p.m, p.a);
  const auto b_masks = detail::all_subsets(p.m, 2 * p.a);
  GapObjects obj;
  obj.a_vertices = detail::labels_of(a_masks);
  obj.b_vertices = detail::labels_of(b_masks);
  obj.colors = obj.a_vertices;
  obj.edges.reserve(b_masks.size() * binomial_u64(2 * p.a, p.a));
  for (std::size_t bi = 0; bi < b_masks.size(); ++bi) {
    for_each_submask(b_masks[bi], p.a, [&](SubsetMask c) {
      obj.edges.push_back(GapEdge{rank_mask(b_masks[bi] ^ c), bi, rank_mask(c)});
    });
  }
  detail::sort_edges(obj.edges);
  obj.k = a_masks.size();
  obj.d = binomial_u64(p.m - p.a, p.a);
  obj.d_prime = binomial_u64(2 * p.a, p.a);
  obj.s = obj.edges.size() / obj.k;
  obj.family = FamilyTag{FamilyKind::kSubset, 0, p.m, p.a, p.thresh};
  return obj;
}

// Parses a rendered subset label such as "{1,4,5}".
inline Subset parse_subset_label(const std::string& label) {
  if (label.size() < 2 || label.front() != '{' || label.back() != '}') {
    throw InputError("not a subset label: '" + label + "'");
  }
  Subset out;
  std::size_t pos = 1;
  while (pos + 1 < label.size()) {
    std::size_t end = label.find(',', pos);
    if (end == std::string::npos || end > label.size() - 1) end = label.size() - 1;
    int value = 0;
    const char* first = label.data() + pos;
    const char* last = label.data() + end;
    const auto [ptr, ec] = std::from_chars(first, last, value);
    if (ec != std::errc() || ptr != last || value < 1 || value > kMaxGroundSet) {
      throw InputError("bad element in subset label '" + label + "'");
    }
    out.push_back(value);
    pos = end + 1;
  }
  return out;
}

// For zk objects J_u is u itself, read as a set of colors. For subset objects
// J_u = {C in K : |C intersect u| > thresh}; `thresh` overrides the value
// stored in the family tag. Sets are computed from the labels, so objects
// whose ids were permuted are handled too.
inline JSetFamily default_j_sets(const GapObjects& obj, std::optional<int> thresh = std::nullopt) {
  if (obj.family.kind == FamilyKind::kNone) {
    throw InputError("default J-sets need objects from the zk or subset family");
  }
  std::vector<SubsetMask> a_masks, c_masks;
  for (const auto& l : obj.a_vertices) a_masks.push_back(mask_of(parse_subset_label(l)));
  for (const auto& l : obj.colors) c_masks.push_back(mask_of(parse_subset_label(l)));
  int th = 0;
  if (obj.family.kind == FamilyKind::kZk) {
    // A color {e} is in J_u iff e is in u, i.e. |{e} intersect u| > 0.
    th = 0;
  } else {
    th = thresh.value_or(obj.family.thresh);
    if (th < 0) throw ParamError("thresh must be non-negative");
  }
  JSetFamily out;
  out.sets.resize(a_masks.size());
  for (std::size_t u = 0; u < a_masks.size(); ++u) {
    for (std::size_t c = 0; c < c_masks.size(); ++c) {
      if (std::popcount(a_masks[u] & c_masks[c]) > th) out.sets[u].push_back(c);
    }
  }
  return out;
}

// An isomorphic copy of family objects with the ground set relabelled by
// `perm` (perm[e-1] is the new name of element e). Ids are re-assigned in colex
// order of the new labels, so the copy differs from the original in vertex,
// color and edge order.
inline GapObjects relabel_ground_set(const GapObjects& obj, const std::vector<int>& perm) {
  auto map_label = [&](const std::string& label) {
    SubsetMask mask = 0;
    for (int e : parse_subset_label(label)) {
      if (e < 1 || static_cast<std::size_t>(e) > perm.size()) throw ParamError("permutation too short");
      mask |= SubsetMask{1} << (perm[static_cast<std::size_t>(e - 1)] - 1);
    }
    return mask;
  };
  auto reorder = [&](const std::vector<std::string>& labels, std::vector<std::string>& new_labels) {
    std::vector<SubsetMask> masks;
    for (const auto& l : labels) masks.push_back(map_label(l));
    std::vector<std::size_t> order(labels.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) { return masks[x] < masks[y]; });
    std::vector<std::size_t> new_id(labels.size());
    new_labels.assign(labels.size(), {});
    for (std::size_t pos = 0; pos < order.size(); ++pos) {
      new_id[order[pos]] = pos;
      new_labels[pos] = render_mask(masks[order[pos]]);
    }
    return new_id;
  };
  GapObjects out = obj;
  const auto a_id = reorder(obj.a_vertices, out.a_vertices);
  const auto b_id = reorder(obj.b_vertices, out.b_vertices);
  const auto c_id = reorder(obj.colors, out.colors);
  for (auto& e : out.edges) e = GapEdge{a_id[e.a], b_id[e.b], c_id[e.color]};
  detail::sort_edges(out.edges);
  return out;
}

// Same objects with A-vertex, B-vertex and color ids reassigned: old id i
// becomes a_perm[i] (resp. b_perm, c_perm). Labels travel with their vertex.
inline GapObjects permute_objects(const GapObjects& obj, const std::vector<std::size_t>& a_perm,
                                  const std::vector<std::size_t>& b_perm,
                                  const std::vector<std::size_t>& c_perm) {
  if (a_perm.size() != obj.a_vertices.size() || b_perm.size() != obj.b_vertices.size() ||
      c_perm.size() != obj.colors.size()) {
    throw ParamError("permutation sizes do not match the objects");
  }
  GapObjects out = obj;
  for (std::size_t i = 0; i < a_perm.size(); ++i) out.a_vertices.at(a_perm[i]) = obj.a_vertices[i];
  for (std::size_t i = 0; i < b_perm.size(); ++i) out.b_vertices.at(b_perm[i]) = obj.b_vertices[i];
  for (std::size_t i = 0; i < c_perm.size(); ++i) out.colors.at(c_perm[i]) = obj.colors[i];
  for (auto& e : out.edges) e = GapEdge{a_perm[e.a], b_perm[e.b], c_perm[e.color]};
  detail::sort_edges(out.edges);
  return out;
}

}  // namespace dstgap
