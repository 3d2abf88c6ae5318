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

// Fixed-size subsets of the ground set [m] = {1..m}, ranked in colexicographic
// order through the combinatorial number system:
//
//   rank({c_1 < c_2 < ... < c_r}) = sum_i C(c_i - 1, i)
//
// Colex order on r-subsets coincides with increasing order of the bitmask
// (bit e-1 set for element e), so masks enumerated by Gosper's hack come out
// already ranked 0, 1, 2, ...

#include <bit>
#include <cstdint>
#include <limits>
#include <string>
#include <vector>

#include "dstgap/error.hpp"

namespace dstgap {

using Subset = std::vector<int>;
using SubsetMask = std::uint64_t;

// Largest ground set a mask can hold.
inline constexpr int kMaxGroundSet = 63;

inline std::uint64_t binomial_u64(int n, int r) {
  if (r < 0 || n < 0 || r > n) return 0;
  if (r > n - r) r = n - r;
  unsigned __int128 acc = 1;
  for (int i = 1; i <= r; ++i) {
    acc = acc * static_cast<unsigned>(n - r + i) / static_cast<unsigned>(i);
    if (acc > std::numeric_limits<std::uint64_t>::max()) {
      throw CapExceeded("binomial C(" + std::to_string(n) + "," + std::to_string(r) +
                        ") does not fit in 64 bits");
    }
  }
  return static_cast<std::uint64_t>(acc);
}

inline SubsetMask mask_of(const Subset& set) {
  SubsetMask mask = 0;
  for (int e : set) {
    if (e < 1 || e > kMaxGroundSet) throw ParamError("subset element out of range");
    mask |= SubsetMask{1} << (e - 1);
  }
  return mask;
}

inline Subset subset_of(SubsetMask mask) {
  Subset out;
  out.reserve(std::popcount(mask));
  while (mask != 0) {
    out.push_back(std::countr_zero(mask) + 1);
    mask &= mask - 1;
  }
  return out;
}

inline std::string render_subset(const Subset& set) {
  std::string out = "{";
  for (std::size_t i = 0; i < set.size(); ++i) {
    if (i) out += ',';
    out += std::to_string(set[i]);
  }
  out += '}';
  return out;
}

inline std::string render_mask(SubsetMask mask) { return render_subset(subset_of(mask)); }

inline std::uint64_t rank_subset(const Subset& set, int m) {
  std::uint64_t rank = 0;
  int prev = 0;
  for (std::size_t i = 0; i < set.size(); ++i) {
    const int c = set[i];
    if (c <= prev || c > m) {
      throw ParamError("rank_subset: expected strictly increasing elements in [1," +
                       std::to_string(m) + "]");
    }
    rank += binomial_u64(c - 1, static_cast<int>(i) + 1);
    prev = c;
  }
  return rank;
}

inline std::uint64_t rank_mask(SubsetMask mask) {
  std::uint64_t rank = 0;
  int i = 1;
  while (mask != 0) {
    rank += binomial_u64(std::countr_zero(mask), i++);
    mask &= mask - 1;
  }
  return rank;
}

// Greedy inverse of rank_subset: the largest element is the largest c with
// C(c-1, size) <= rank, then recurse on the remainder.
inline Subset unrank_subset(std::uint64_t rank, int m, int size) {
  if (size < 0 || size > m) throw ParamError("unrank_subset: size out of range");
  if (rank >= binomial_u64(m, size)) {
    throw ParamError("unrank_subset: rank " + std::to_string(rank) + " out of range for C(" +
                     std::to_string(m) + "," + std::to_string(size) + ")");
  }
  Subset out(static_cast<std::size_t>(size));
  int c = m;
  for (int i = size; i >= 1; --i) {
    while (binomial_u64(c - 1, i) > rank) --c;
    out[static_cast<std::size_t>(i - 1)] = c;
    rank -= binomial_u64(c - 1, i);
    --c;
  }
  return out;
}

// Calls fn(mask) for every r-subset of [m] in colex order.
template <typename Fn>
void for_each_subset(int m, int r, Fn&& fn) {
  if (m > kMaxGroundSet) throw CapExceeded("ground set too large for bitmask enumeration");
  if (r < 0 || r > m) return;
  if (r == 0) {
    fn(SubsetMask{0});
    return;
  }
  const SubsetMask limit = SubsetMask{1} << m;
  SubsetMask mask = (SubsetMask{1} << r) - 1;
  while (mask < limit) {
    fn(mask);
    const SubsetMask low = mask & (~mask + 1);
    const SubsetMask ripple = mask + low;
    mask = (((ripple ^ mask) >> 2) / low) | ripple;
  }
}

// Calls fn(sub) for every r-element sub-mask of `mask`, in colex order of the
// positions inside `mask`.
template <typename Fn>
void for_each_submask(SubsetMask mask, int r, Fn&& fn) {
  std::vector<SubsetMask> bits;
  for (SubsetMask rest = mask; rest != 0; rest &= rest - 1) bits.push_back(rest & (~rest + 1));
  const int n = static_cast<int>(bits.size());
  for_each_subset(n, r, [&](SubsetMask pick) {
    SubsetMask sub = 0;
    for (SubsetMask p = pick; p != 0; p &= p - 1) sub |= bits[static_cast<std::size_t>(std::countr_zero(p))];
    fn(sub);
  });
}

}  // namespace dstgap
