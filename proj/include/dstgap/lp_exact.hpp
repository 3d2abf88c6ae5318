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

// Exact optimum of the flow LP. Two equivalent formulations are available.
//
// Edge flow, per terminal t:
//   min  sum_e c_e x_e
//   s.t. inflow_t(v) - outflow_t(v) = [v == t]   for every v != r
//        f_{t,e} <= x_e                          for every edge e
//
// Path flow, per terminal t (the instances are layered DAGs, so a terminal
// has at most |E_H| root paths and the path list stays small):
//   sum_{P in paths(t)} f_P >= 1
//   sum_{P in paths(t), P ni e} f_P <= x_e
//
// Only edges lying on some r->t path get variables. With
// `drop_free_capacities` the capacity rows of zero-cost edges are omitted and
// x_e is set to max_t (flow of t on e) afterwards; the optimal value is
// unchanged because a zero-cost x_e can always be raised to cover its flows.

#include <algorithm>
#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "dstgap/error.hpp"
#include "dstgap/flow_lp.hpp"
#include "dstgap/instance.hpp"
#include "dstgap/simplex.hpp"

namespace dstgap {

enum class LpFormulation { kPath, kEdgeFlow };

struct LpOptions {
  LpFormulation formulation = LpFormulation::kPath;
  std::size_t max_variables = 50'000;
  bool drop_free_capacities = true;
  SimplexOptions simplex;
};

struct LpResult {
  Rational optimal_value;
  FractionalSolution x_opt;
  std::vector<std::string> constraint_names;
  std::vector<Rational> dual_certificate;  // one per constraint
  CertificateCheck certificate;
  std::size_t variables = 0;
  std::size_t constraints = 0;
  std::size_t pivots = 0;
};

struct CompactLp {
  LinearProgram lp;
  std::vector<std::optional<std::size_t>> x_var;  // per edge
  // A flow column carries one unit of terminal flow over each of `edges`.
  struct FlowVar {
    std::size_t terminal;
    std::vector<EdgeId> edges;
    std::size_t column;
  };
  std::vector<FlowVar> flows;
};

// Edges on at least one root -> t path.
inline std::vector<EdgeId> relevant_edges(const DstInstance& inst, VertexId t,
                                          const std::vector<std::vector<EdgeId>>& out,
                                          const std::vector<std::vector<EdgeId>>& in) {
  const std::size_t n = inst.vertex_count();
  std::vector<bool> from_root(n, false), to_t(n, false);
  std::vector<VertexId> stack{inst.root()};
  from_root[inst.root()] = true;
  while (!stack.empty()) {
    const VertexId v = stack.back();
    stack.pop_back();
    for (EdgeId e : out[v]) {
      if (!from_root[inst.edges()[e].head]) {
        from_root[inst.edges()[e].head] = true;
        stack.push_back(inst.edges()[e].head);
      }
    }
  }
  stack = {t};
  to_t[t] = true;
  while (!stack.empty()) {
    const VertexId v = stack.back();
    stack.pop_back();
    for (EdgeId e : in[v]) {
      if (!to_t[inst.edges()[e].tail]) {
        to_t[inst.edges()[e].tail] = true;
        stack.push_back(inst.edges()[e].tail);
      }
    }
  }
  std::vector<EdgeId> rel;
  for (EdgeId e = 0; e < inst.edges().size(); ++e) {
    if (from_root[inst.edges()[e].tail] && to_t[inst.edges()[e].head]) rel.push_back(e);
  }
  return rel;
}

namespace detail {

inline std::string edge_name(const DstInstance& inst, EdgeId e) {
  return inst.label(inst.edges()[e].tail) + "->" + inst.label(inst.edges()[e].head);
}

// All root -> t paths using only `rel` edges; throws once more than `cap` exist.
inline std::vector<std::vector<EdgeId>> root_paths(const DstInstance& inst, VertexId t,
                                                   const std::vector<EdgeId>& rel,
                                                   const std::vector<std::vector<EdgeId>>& out,
                                                   std::size_t cap) {
  std::vector<bool> is_rel(inst.edges().size(), false);
  for (EdgeId e : rel) is_rel[e] = true;
  std::vector<std::vector<EdgeId>> paths;
  std::vector<EdgeId> cur;
  auto dfs = [&](auto&& self, VertexId v) -> void {
    if (v == t) {
      if (paths.size() == cap) throw CapExceeded("path LP exceeds " + std::to_string(cap) + " variables");
      paths.push_back(cur);
      return;
    }
    for (EdgeId e : out[v]) {
      if (!is_rel[e]) continue;
      cur.push_back(e);
      self(self, inst.edges()[e].head);
      cur.pop_back();
    }
  };
  dfs(dfs, inst.root());
  return paths;
}

}  // namespace detail

inline CompactLp build_path_lp(const DstInstance& inst, const LpOptions& opt = {}) {
  CompactLp c;
  const auto out = inst.out_edges();
  const auto in = inst.in_edges();
  const auto terms = inst.terminals();
  std::vector<std::vector<std::vector<EdgeId>>> paths(terms.size());
  std::vector<bool> needs_x(inst.edges().size(), false);
  std::size_t budget = opt.max_variables;
  for (std::size_t ti = 0; ti < terms.size(); ++ti) {
    paths[ti] = detail::root_paths(inst, terms[ti], relevant_edges(inst, terms[ti], out, in), out, budget);
    budget -= paths[ti].size();
    for (const auto& p : paths[ti]) {
      for (EdgeId e : p) {
        if (!opt.drop_free_capacities || sgn(inst.edges()[e].cost) > 0) needs_x[e] = true;
      }
    }
  }
  c.x_var.assign(inst.edges().size(), std::nullopt);
  std::size_t col = 0;
  for (EdgeId e = 0; e < needs_x.size(); ++e) {
    if (needs_x[e]) c.x_var[e] = col++;
  }
  if (col + opt.max_variables - budget > opt.max_variables) {
    throw CapExceeded("path LP would have " + std::to_string(col + opt.max_variables - budget) +
                      " variables, cap is " + std::to_string(opt.max_variables));
  }
  c.lp.objective.assign(col, Rational(0));
  for (EdgeId e = 0; e < needs_x.size(); ++e) {
    if (c.x_var[e]) c.lp.objective[*c.x_var[e]] = inst.edges()[e].cost;
  }
  for (std::size_t ti = 0; ti < terms.size(); ++ti) {
    LpRow demand{{}, Sense::kGe, Rational(1), "demand[" + inst.label(terms[ti]) + "]"};
    std::vector<std::vector<std::size_t>> through(inst.edges().size());
    for (auto& p : paths[ti]) {
      demand.terms.emplace_back(col, Rational(1));
      for (EdgeId e : p) through[e].push_back(col);
      c.flows.push_back({ti, std::move(p), col});
      c.lp.objective.emplace_back(0);
      ++col;
    }
    c.lp.rows.push_back(std::move(demand));
    for (EdgeId e = 0; e < through.size(); ++e) {
      if (through[e].empty() || !c.x_var[e]) continue;
      LpRow row{{}, Sense::kLe, Rational(0),
                "capacity[" + inst.label(terms[ti]) + "][" + detail::edge_name(inst, e) + "]"};
      for (std::size_t j : through[e]) row.terms.emplace_back(j, Rational(1));
      row.terms.emplace_back(*c.x_var[e], Rational(-1));
      c.lp.rows.push_back(std::move(row));
    }
  }
  c.lp.num_vars = col;
  return c;
}

inline CompactLp build_compact_lp(const DstInstance& inst, const LpOptions& opt = {}) {
  CompactLp c;
  const auto out = inst.out_edges();
  const auto in = inst.in_edges();
  const auto terms = inst.terminals();
  std::vector<std::vector<EdgeId>> rel(terms.size());
  std::vector<bool> needs_x(inst.edges().size(), false);
  std::size_t flow_count = 0;
  for (std::size_t ti = 0; ti < terms.size(); ++ti) {
    rel[ti] = relevant_edges(inst, terms[ti], out, in);
    flow_count += rel[ti].size();
    for (EdgeId e : rel[ti]) {
      if (!opt.drop_free_capacities || sgn(inst.edges()[e].cost) > 0) needs_x[e] = true;
    }
  }
  const auto x_count = static_cast<std::size_t>(std::count(needs_x.begin(), needs_x.end(), true));
  if (x_count + flow_count > opt.max_variables) {
    throw CapExceeded("flow LP would have " + std::to_string(x_count + flow_count) + " variables, cap is " +
                      std::to_string(opt.max_variables));
  }
  c.x_var.assign(inst.edges().size(), std::nullopt);
  std::size_t col = 0;
  for (EdgeId e = 0; e < needs_x.size(); ++e) {
    if (needs_x[e]) c.x_var[e] = col++;
  }
  c.lp.objective.assign(col, Rational(0));
  for (EdgeId e = 0; e < needs_x.size(); ++e) {
    if (c.x_var[e]) c.lp.objective[*c.x_var[e]] = inst.edges()[e].cost;
  }
  for (std::size_t ti = 0; ti < terms.size(); ++ti) {
    const VertexId t = terms[ti];
    if (rel[ti].empty()) {
      // Unreachable terminal: demand row with no columns makes the LP infeasible.
      c.lp.rows.push_back(LpRow{{}, Sense::kEq, Rational(1), "demand[" + inst.label(t) + "]"});
      continue;
    }
    std::vector<std::size_t> fcol(inst.edges().size(), 0);
    for (EdgeId e : rel[ti]) {
      fcol[e] = col;
      c.flows.push_back({ti, {e}, col});
      c.lp.objective.emplace_back(0);
      ++col;
    }
    std::vector<VertexId> touched;
    for (EdgeId e : rel[ti]) {
      touched.push_back(inst.edges()[e].tail);
      touched.push_back(inst.edges()[e].head);
    }
    std::sort(touched.begin(), touched.end());
    touched.erase(std::unique(touched.begin(), touched.end()), touched.end());
    std::vector<bool> is_rel(inst.edges().size(), false);
    for (EdgeId e : rel[ti]) is_rel[e] = true;
    for (VertexId v : touched) {
      if (v == inst.root()) continue;
      LpRow row;
      row.sense = Sense::kEq;
      row.rhs = v == t ? 1 : 0;
      row.name = "conserve[" + inst.label(t) + "][" + inst.label(v) + "]";
      for (EdgeId e : in[v]) {
        if (is_rel[e]) row.terms.emplace_back(fcol[e], Rational(1));
      }
      for (EdgeId e : out[v]) {
        if (is_rel[e]) row.terms.emplace_back(fcol[e], Rational(-1));
      }
      c.lp.rows.push_back(std::move(row));
    }
    for (EdgeId e : rel[ti]) {
      if (!c.x_var[e]) continue;
      LpRow row;
      row.sense = Sense::kLe;
      row.rhs = 0;
      row.name = "capacity[" + inst.label(t) + "][" + detail::edge_name(inst, e) + "]";
      row.terms.emplace_back(fcol[e], Rational(1));
      row.terms.emplace_back(*c.x_var[e], Rational(-1));
      c.lp.rows.push_back(std::move(row));
    }
  }
  c.lp.num_vars = col;
  return c;
}

inline LpResult solve_lp_exact(const DstInstance& inst, const LpOptions& opt = {}) {
  const CompactLp c =
      opt.formulation == LpFormulation::kPath ? build_path_lp(inst, opt) : build_compact_lp(inst, opt);
  const SimplexResult sr = solve_simplex(c.lp, opt.simplex);
  if (sr.status != LpStatus::kOptimal) {
    throw InternalError(sr.status == LpStatus::kInfeasible
                            ? "flow LP is infeasible (some terminal is unreachable from the root)"
                            : "flow LP is unbounded");
  }
  LpResult res;
  res.variables = c.lp.num_vars;
  res.constraints = c.lp.rows.size();
  res.pivots = sr.pivots;
  res.certificate = check_certificate(c.lp, sr.x, sr.y);
  if (!res.certificate.ok()) throw InternalError("flow LP certificate rejected: " + res.certificate.failure);
  std::vector<Rational> x(inst.edges().size());
  for (EdgeId e = 0; e < x.size(); ++e) {
    if (c.x_var[e]) x[e] = sr.x[*c.x_var[e]];
  }
  // Free edges: x_e is the largest per-terminal flow crossing e.
  std::vector<Rational> load(inst.edges().size());
  for (std::size_t i = 0; i < c.flows.size();) {
    const std::size_t ti = c.flows[i].terminal;
    std::vector<EdgeId> touched;
    for (; i < c.flows.size() && c.flows[i].terminal == ti; ++i) {
      for (EdgeId e : c.flows[i].edges) {
        if (c.x_var[e]) continue;
        if (sgn(load[e]) == 0) touched.push_back(e);
        load[e] += sr.x[c.flows[i].column];
      }
    }
    for (EdgeId e : touched) {
      if (load[e] > x[e]) x[e] = load[e];
      load[e] = 0;
    }
  }
  res.x_opt = FractionalSolution(std::move(x));
  res.optimal_value = inst.cost_of(res.x_opt.x);
  if (res.optimal_value != sr.objective) throw InternalError("flow LP objective mismatch after lifting x");
  for (const auto& row : c.lp.rows) res.constraint_names.push_back(row.name);
  res.dual_certificate = sr.y;
  return res;
}

}  // namespace dstgap
