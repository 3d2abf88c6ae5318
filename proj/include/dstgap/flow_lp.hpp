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

// Fractional solutions of the flow LP
//
//   min  sum_e c_e x_e
//   s.t. sum_{P in P_t} f^t_P = 1                 for every terminal t
//        sum_{P in P_t, e in P} f^t_P <= x_e      for every e, t
//        x, f >= 0
//
// checked the way the LP is meant to be read: x is feasible iff every
// terminal receives at least one unit of r->t flow under capacities x.

#include <algorithm>
#include <cstddef>
#include <set>
#include <string>
#include <thread>
#include <vector>

#include "dstgap/error.hpp"
#include "dstgap/instance.hpp"
#include "dstgap/maxflow.hpp"
#include "dstgap/rational.hpp"

namespace dstgap {

struct FractionalSolution {
  std::vector<Rational> x;  // indexed by edge id

  explicit FractionalSolution(std::vector<Rational> values = {}) : x(std::move(values)) {
    for (const auto& v : x) {
      if (v < 0) throw InputError("fractional solution has a negative coordinate");
    }
  }
};

struct TerminalFlow {
  VertexId terminal = 0;
  Rational value;
  std::vector<EdgeId> cut;  // a minimum r-t cut
};

struct FeasibilityReport {
  std::vector<TerminalFlow> terminals;
  bool feasible = true;

  std::vector<VertexId> failing() const {
    std::vector<VertexId> out;
    for (const auto& tf : terminals) {
      if (tf.value < 1) out.push_back(tf.terminal);
    }
    return out;
  }
};

struct PathWitness {
  VertexId terminal = 0;
  std::vector<std::vector<EdgeId>> paths;
  std::vector<Rational> weights;
};

// x_e = 1/s on every edge.
inline FractionalSolution canonical_solution(const DstInstance& inst) {
  const std::size_t s = inst.objects().s;
  if (s == 0) throw InputError("canonical solution needs s > 0");
  return FractionalSolution(std::vector<Rational>(inst.edges().size(), make_rational(1, static_cast<long>(s))));
}

inline TerminalFlow max_flow_value(const DstInstance& inst, const FractionalSolution& x, VertexId terminal) {
  if (x.x.size() != inst.edges().size()) throw InputError("solution must give a capacity for every edge");
  std::vector<Arc> arcs;
  arcs.reserve(inst.edges().size());
  for (const auto& e : inst.edges()) arcs.push_back(Arc{e.tail, e.head});
  const MaxFlowResult mf = max_flow(inst.vertex_count(), arcs, x.x, inst.root(), terminal);
  return TerminalFlow{terminal, mf.value, mf.cut};
}

// Runs one max-flow per terminal on up to `jobs` threads.
inline FeasibilityReport verify_feasibility(const DstInstance& inst, const FractionalSolution& x,
                                            unsigned jobs = 1) {
  const auto terms = inst.terminals();
  FeasibilityReport report;
  report.terminals.resize(terms.size());
  jobs = std::max(1u, std::min<unsigned>(jobs, static_cast<unsigned>(std::max<std::size_t>(1, terms.size()))));
  auto work = [&](std::size_t begin) {
    for (std::size_t i = begin; i < terms.size(); i += jobs) report.terminals[i] = max_flow_value(inst, x, terms[i]);
  };
  if (jobs == 1) {
    work(0);
  } else {
    std::vector<std::jthread> pool;
    for (unsigned j = 0; j < jobs; ++j) pool.emplace_back(work, j);
  }
  report.feasible = std::all_of(report.terminals.begin(), report.terminals.end(),
                                [](const TerminalFlow& tf) { return tf.value >= 1; });
  return report;
}

// The s paths r -> u -> v -> pi(v) -> t, one per edge (u, v) of color t.
inline PathWitness path_witness(const DstInstance& inst, VertexId terminal) {
  if (inst.level_of(terminal) != 4) throw InputError("path_witness: not a terminal");
  const std::size_t color = inst.index_in_level(terminal);
  const auto& obj = inst.objects();
  if (obj.s == 0) throw InputError("path_witness: s = 0");
  PathWitness w;
  w.terminal = terminal;
  auto need = [&](VertexId tail, VertexId head) {
    auto e = inst.find_edge(tail, head);
    if (!e) throw InputError("path_witness: instance lacks edge " + inst.label(tail) + " -> " + inst.label(head));
    return *e;
  };
  for (const auto& ge : obj.edges) {
    if (ge.color != color) continue;
    const VertexId u = inst.vertex(1, ge.a);
    const VertexId v = inst.vertex(2, ge.b);
    const VertexId vc = inst.pi()[ge.b];
    w.paths.push_back({need(inst.root(), u), need(u, v), need(v, vc), need(vc, terminal)});
    w.weights.push_back(make_rational(1, static_cast<long>(obj.s)));
  }
  return w;
}

struct WitnessCheck {
  bool ok = true;
  std::string reason;
};

// Checks the path-form constraints for one terminal: simple r->t paths,
// weights >= 0 summing to 1, per-edge load <= x_e.
inline WitnessCheck check_witness(const DstInstance& inst, const FractionalSolution& x, const PathWitness& w) {
  if (w.paths.size() != w.weights.size()) return {false, "paths and weights differ in length"};
  Rational total = 0;
  std::vector<Rational> load(inst.edges().size());
  for (std::size_t p = 0; p < w.paths.size(); ++p) {
    const auto& path = w.paths[p];
    if (w.weights[p] < 0) return {false, "negative path weight"};
    if (path.empty()) return {false, "empty path"};
    VertexId at = inst.root();
    std::set<VertexId> visited{at};
    for (EdgeId e : path) {
      if (e >= inst.edges().size()) return {false, "edge id out of range"};
      if (inst.edges()[e].tail != at) return {false, "path is not contiguous"};
      at = inst.edges()[e].head;
      if (!visited.insert(at).second) return {false, "path is not simple"};
      load[e] += w.weights[p];
    }
    if (at != w.terminal) return {false, "path does not end at the terminal"};
    total += w.weights[p];
  }
  if (total != 1) return {false, "weights sum to " + to_string(total)};
  for (EdgeId e = 0; e < load.size(); ++e) {
    if (load[e] > x.x.at(e)) {
      return {false, "edge " + inst.label(inst.edges()[e].tail) + " -> " + inst.label(inst.edges()[e].head) +
                         " carries " + to_string(load[e]) + " > x_e = " + to_string(x.x[e])};
    }
  }
  return {};
}

}  // namespace dstgap
