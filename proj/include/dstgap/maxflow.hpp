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

// Exact maximum flow with rational capacities.
//
// Capacities are scaled by the lcm of their denominators and Dinic's
// algorithm runs on the resulting big integers, so no value is ever rounded.
// The minimum cut is read off the final residual graph and its capacity is
// checked against the flow value before returning.

#include <algorithm>
#include <cstddef>
#include <limits>
#include <utility>
#include <vector>

#include "dstgap/error.hpp"
#include "dstgap/rational.hpp"

namespace dstgap {

struct Arc {
  std::size_t tail = 0;
  std::size_t head = 0;
};

struct MaxFlowResult {
  Rational value;
  std::vector<Rational> flow;      // per arc
  std::vector<bool> source_side;   // per vertex
  std::vector<std::size_t> cut;    // arcs from the source side to the sink side
  Rational cut_capacity;
};

namespace detail {

class Dinic {
 public:
  Dinic(std::size_t n, const std::vector<Arc>& arcs, const std::vector<BigInt>& cap)
      : n_(n), adj_(n), level_(n), iter_(n) {
    res_.reserve(arcs.size() * 2);
    head_.reserve(arcs.size() * 2);
    for (std::size_t i = 0; i < arcs.size(); ++i) {
      adj_[arcs[i].tail].push_back(2 * i);
      adj_[arcs[i].head].push_back(2 * i + 1);
      head_.push_back(arcs[i].head);
      head_.push_back(arcs[i].tail);
      res_.push_back(cap[i]);
      res_.emplace_back(0);
    }
  }

  BigInt run(std::size_t s, std::size_t t) {
    BigInt total = 0;
    if (s == t) return total;
    while (bfs(s, t)) {
      std::fill(iter_.begin(), iter_.end(), 0);
      for (;;) {
        BigInt pushed = dfs(s, t, BigInt(-1));
        if (pushed == 0) break;
        total += pushed;
      }
    }
    return total;
  }

  // Vertices reachable from s in the residual graph.
  std::vector<bool> reachable(std::size_t s) const {
    std::vector<bool> seen(n_, false);
    std::vector<std::size_t> stack{s};
    seen[s] = true;
    while (!stack.empty()) {
      const std::size_t v = stack.back();
      stack.pop_back();
      for (std::size_t e : adj_[v]) {
        if (sgn(res_[e]) > 0 && !seen[head_[e]]) {
          seen[head_[e]] = true;
          stack.push_back(head_[e]);
        }
      }
    }
    return seen;
  }

  // Flow on arc i is the residual capacity of its reverse twin.
  const BigInt& flow_on(std::size_t i) const { return res_[2 * i + 1]; }

 private:
  bool bfs(std::size_t s, std::size_t t) {
    std::fill(level_.begin(), level_.end(), -1);
    std::vector<std::size_t> queue{s};
    level_[s] = 0;
    for (std::size_t qi = 0; qi < queue.size(); ++qi) {
      const std::size_t v = queue[qi];
      for (std::size_t e : adj_[v]) {
        if (sgn(res_[e]) > 0 && level_[head_[e]] < 0) {
          level_[head_[e]] = level_[v] + 1;
          queue.push_back(head_[e]);
        }
      }
    }
    return level_[t] >= 0;
  }

  // limit < 0 stands for "unbounded".
  BigInt dfs(std::size_t v, std::size_t t, const BigInt& limit) {
    if (v == t) return limit;
    for (std::size_t& i = iter_[v]; i < adj_[v].size(); ++i) {
      const std::size_t e = adj_[v][i];
      const std::size_t w = head_[e];
      if (sgn(res_[e]) <= 0 || level_[w] != level_[v] + 1) continue;
      const BigInt& room = res_[e];
      BigInt want = (sgn(limit) < 0 || room < limit) ? room : limit;
      BigInt got = dfs(w, t, want);
      if (sgn(got) > 0) {
        res_[e] -= got;
        res_[e ^ 1] += got;
        return got;
      }
    }
    return BigInt(0);
  }

  std::size_t n_;
  std::vector<std::vector<std::size_t>> adj_;
  std::vector<std::size_t> head_;
  std::vector<BigInt> res_;
  std::vector<long> level_;
  std::vector<std::size_t> iter_;
};

}  // namespace detail

inline MaxFlowResult max_flow(std::size_t n, const std::vector<Arc>& arcs, const std::vector<Rational>& cap,
                              std::size_t source, std::size_t sink) {
  if (cap.size() != arcs.size()) throw InputError("max_flow: one capacity per arc is required");
  if (source >= n || sink >= n) throw InputError("max_flow: terminal out of range");
  BigInt scale = 1;
  for (const auto& c : cap) {
    if (c < 0) throw InputError("max_flow: negative capacity");
    scale = lcm(scale, c.get_den());
  }
  std::vector<BigInt> scaled;
  scaled.reserve(cap.size());
  for (const auto& c : cap) scaled.push_back(c.get_num() * (scale / c.get_den()));

  detail::Dinic dinic(n, arcs, scaled);
  const BigInt value = dinic.run(source, sink);

  MaxFlowResult out;
  out.value = make_rational(value, scale);
  out.flow.reserve(arcs.size());
  for (std::size_t i = 0; i < arcs.size(); ++i) out.flow.push_back(make_rational(dinic.flow_on(i), scale));
  out.source_side = dinic.reachable(source);
  out.cut_capacity = 0;
  for (std::size_t i = 0; i < arcs.size(); ++i) {
    if (out.source_side[arcs[i].tail] && !out.source_side[arcs[i].head]) {
      out.cut.push_back(i);
      out.cut_capacity += cap[i];
    }
  }
  if (source != sink && out.cut_capacity != out.value) {
    throw InternalError("max_flow: cut capacity " + to_string(out.cut_capacity) + " != flow " +
                        to_string(out.value));
  }
  return out;
}

}  // namespace dstgap
