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

// Independent reference computations for the tests. Nothing here calls into
// the library's algorithms; only its data types are shared.

#include <algorithm>
#include <bit>
#include <cstdint>
#include <deque>
#include <optional>
#include <set>
#include <vector>

#include "dstgap/dstgap.hpp"

namespace oracle {

using dstgap::BigInt;
using dstgap::Rational;

// Pascal's triangle.
inline BigInt binom(int n, int r) {
  if (r < 0 || n < 0 || r > n) return 0;
  std::vector<BigInt> row{1};
  for (int i = 1; i <= n; ++i) {
    std::vector<BigInt> next(static_cast<std::size_t>(i) + 1);
    next.front() = next.back() = 1;
    for (int j = 1; j < i; ++j) next[static_cast<std::size_t>(j)] = row[static_cast<std::size_t>(j) - 1] + row[static_cast<std::size_t>(j)];
    row = std::move(next);
  }
  return row[static_cast<std::size_t>(r)];
}

// All r-subsets of {1..m} as sorted vectors, in lexicographic order.
inline std::vector<std::vector<int>> subsets(int m, int r) {
  std::vector<std::vector<int>> out;
  std::vector<int> cur;
  auto rec = [&](auto&& self, int next) -> void {
    if (static_cast<int>(cur.size()) == r) {
      out.push_back(cur);
      return;
    }
    for (int e = next; e <= m; ++e) {
      cur.push_back(e);
      self(self, e + 1);
      cur.pop_back();
    }
  };
  rec(rec, 1);
  return out;
}

inline int overlap(const std::vector<int>& x, const std::vector<int>& y) {
  std::vector<int> both;
  std::set_intersection(x.begin(), x.end(), y.begin(), y.end(), std::back_inserter(both));
  return static_cast<int>(both.size());
}

// Pr[|C cap S| <= / >= t] for a uniform n-subset C of an N-set with |S| = K,
// by enumerating every subset.
struct TailCounts {
  BigInt total, at_most, at_least;
};

inline TailCounts enumerate_tail(int N, int K, int n, int t) {
  TailCounts c;
  const std::uint64_t success_mask = (K == 0) ? 0 : ((std::uint64_t{1} << K) - 1);
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << N); ++mask) {
    if (std::popcount(mask) != n) continue;
    const int x = std::popcount(mask & success_mask);
    c.total += 1;
    if (x <= t) c.at_most += 1;
    if (x >= t) c.at_least += 1;
  }
  return c;
}

// Edmonds-Karp on rationals.
inline Rational max_flow(std::size_t n, const std::vector<std::pair<std::size_t, std::size_t>>& arcs,
                         const std::vector<Rational>& cap, std::size_t s, std::size_t t) {
  std::vector<std::vector<Rational>> res(n, std::vector<Rational>(n));
  for (std::size_t i = 0; i < arcs.size(); ++i) res[arcs[i].first][arcs[i].second] += cap[i];
  Rational total = 0;
  for (;;) {
    std::vector<std::optional<std::size_t>> parent(n);
    parent[s] = s;
    std::deque<std::size_t> q{s};
    while (!q.empty() && !parent[t]) {
      const std::size_t v = q.front();
      q.pop_front();
      for (std::size_t w = 0; w < n; ++w) {
        if (!parent[w] && res[v][w] > 0) {
          parent[w] = v;
          q.push_back(w);
        }
      }
    }
    if (!parent[t]) return total;
    Rational push = -1;
    for (std::size_t v = t; v != s; v = *parent[v]) {
      const Rational& r = res[*parent[v]][v];
      if (push < 0 || r < push) push = r;
    }
    for (std::size_t v = t; v != s; v = *parent[v]) {
      res[*parent[v]][v] -= push;
      res[v][*parent[v]] += push;
    }
    total += push;
  }
}

// Edges run level to level, so one pass in level order decides reachability.
inline std::vector<std::size_t> level_order(const dstgap::DstInstance& inst) {
  std::vector<std::size_t> order(inst.edges().size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t x, std::size_t y) { return inst.edges()[x].level < inst.edges()[y].level; });
  return order;
}

inline bool reaches_all(const dstgap::DstInstance& inst, const std::vector<bool>& on,
                        const std::vector<std::size_t>& order) {
  std::vector<bool> seen(inst.vertex_count(), false);
  seen[inst.root()] = true;
  for (std::size_t e : order) {
    if (on[e] && seen[inst.edges()[e].tail]) seen[inst.edges()[e].head] = true;
  }
  for (auto t : inst.terminals()) {
    if (!seen[t]) return false;
  }
  return true;
}

// Minimum integral cost over every subset of the positive-cost edges.
inline std::optional<Rational> subset_opt(const dstgap::DstInstance& inst) {
  std::vector<std::size_t> priced;
  std::vector<bool> on(inst.edges().size(), false);
  for (std::size_t e = 0; e < inst.edges().size(); ++e) {
    if (inst.edges()[e].cost > 0) {
      priced.push_back(e);
    } else {
      on[e] = true;
    }
  }
  if (priced.size() > 22) return std::nullopt;
  const auto order = level_order(inst);
  std::optional<Rational> best;
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << priced.size()); ++mask) {
    Rational cost = 0;
    for (std::size_t i = 0; i < priced.size(); ++i) {
      const bool use = (mask >> i) & 1U;
      on[priced[i]] = use;
      if (use) cost += inst.edges()[priced[i]].cost;
    }
    if (best && cost >= *best) continue;
    if (reaches_all(inst, on, order)) best = cost;
  }
  return best;
}

// alpha from its definition with ordered sets.
inline Rational alpha(const dstgap::GapObjects& obj, const std::vector<std::set<std::size_t>>& j) {
  std::vector<std::set<std::size_t>> kv(obj.b_vertices.size());
  for (const auto& e : obj.edges) kv[e.b].insert(e.color);
  std::optional<Rational> best;
  auto lower = [&](const Rational& q) {
    if (!best || q < *best) best = q;
  };
  for (std::size_t u = 0; u < obj.a_vertices.size(); ++u) {
    if (!j[u].empty()) lower(Rational(static_cast<long>(obj.d)) / static_cast<long>(j[u].size()));
    for (const auto& e : obj.edges) {
      if (e.a != u) continue;
      std::size_t outside = 0;
      for (auto c : kv[e.b]) outside += j[u].count(c) ? 0 : 1;
      if (outside > 0) lower(Rational(static_cast<long>(obj.d_prime)) / static_cast<long>(outside));
    }
  }
  return best.value_or(Rational(0));
}

// J_u from labels: colors whose ground-set overlap with u exceeds thresh.
inline std::vector<std::set<std::size_t>> j_sets(const dstgap::GapObjects& obj, int thresh) {
  std::vector<std::set<std::size_t>> out(obj.a_vertices.size());
  for (std::size_t u = 0; u < obj.a_vertices.size(); ++u) {
    const auto su = dstgap::parse_subset_label(obj.a_vertices[u]);
    for (std::size_t c = 0; c < obj.colors.size(); ++c) {
      if (overlap(su, dstgap::parse_subset_label(obj.colors[c])) > thresh) out[u].insert(c);
    }
  }
  return out;
}

}  // namespace oracle
