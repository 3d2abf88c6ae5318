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

// Integral side of a layered gap instance.
//
// certify_gap() turns per-vertex J-sets into a lower bound on the integral
// optimum: if |J_u| <= d/alpha for every A-vertex u and |K_v \ J_u| <= d'/alpha
// for every edge (u, v) of H, then every sub-tree hanging off a single E1 edge
// reaches at most d'/alpha terminals per unit of cost, so
//
//   OPT >= k / (d'/alpha) = alpha |B| / s.
//
// solve_structured() and brute_force_opt() compute the integral optimum
// exactly on small instances. The first searches over (S subset of A,
// V' subset of B) with branch-and-bound; the second enumerates sets of
// priced edges and checks reachability in the real graph. They share no code
// beyond the instance itself.

#include <algorithm>
#include <bit>
#include <cstdint>
#include <limits>
#include <numeric>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "dstgap/error.hpp"
#include "dstgap/families.hpp"
#include "dstgap/gap_objects.hpp"
#include "dstgap/instance.hpp"
#include "dstgap/rational.hpp"

namespace dstgap {

struct CertificateEntry {
  std::size_t u = 0;
  std::size_t j_size = 0;
  std::size_t max_uncovered = 0;  // max over edges (u, v) of |K_v \ J_u|
};

struct GapCertificate {
  Rational alpha;
  std::vector<CertificateEntry> per_u;
  Rational opt_lower_bound;  // alpha |B| / s
  Rational gap_lower_bound;  // alpha / 2
  bool self_check_passed = false;
};

namespace detail {

class Bits {
 public:
  explicit Bits(std::size_t n = 0) : n_(n), w_((n + 63) / 64, 0) {}
  void set(std::size_t i) { w_[i >> 6] |= std::uint64_t{1} << (i & 63); }
  void reset(std::size_t i) { w_[i >> 6] &= ~(std::uint64_t{1} << (i & 63)); }
  bool test(std::size_t i) const { return (w_[i >> 6] >> (i & 63)) & 1U; }
  std::size_t count() const {
    std::size_t c = 0;
    for (auto w : w_) c += static_cast<std::size_t>(std::popcount(w));
    return c;
  }
  std::size_t count_and(const Bits& o) const {
    std::size_t c = 0;
    for (std::size_t i = 0; i < w_.size(); ++i) c += static_cast<std::size_t>(std::popcount(w_[i] & o.w_[i]));
    return c;
  }
  std::size_t count_and_not(const Bits& o) const {
    std::size_t c = 0;
    for (std::size_t i = 0; i < w_.size(); ++i) c += static_cast<std::size_t>(std::popcount(w_[i] & ~o.w_[i]));
    return c;
  }
  Bits& operator|=(const Bits& o) {
    for (std::size_t i = 0; i < w_.size(); ++i) w_[i] |= o.w_[i];
    return *this;
  }
  std::size_t size() const { return n_; }
  bool all() const { return count() == n_; }
  std::optional<std::size_t> first_unset() const {
    for (std::size_t i = 0; i < w_.size(); ++i) {
      const std::uint64_t inv = ~w_[i];
      if (inv != 0) {
        const std::size_t at = i * 64 + static_cast<std::size_t>(std::countr_zero(inv));
        if (at < n_) return at;
        return std::nullopt;
      }
    }
    return std::nullopt;
  }
  friend bool operator==(const Bits&, const Bits&) = default;

 private:
  std::size_t n_;
  std::vector<std::uint64_t> w_;
};

inline Rational alpha_term(std::size_t degree, std::size_t size) {
  return make_rational(static_cast<long>(degree), static_cast<long>(size));
}

}  // namespace detail

// Largest alpha for which the J-sets satisfy both conditions. Sets of size 0
// impose no constraint.
inline GapCertificate certify_gap(const GapObjects& obj, const JSetFamily& j) {
  check_indices(obj);
  const std::size_t na = obj.a_vertices.size();
  if (j.sets.size() != na) throw InputError("J-set family must assign a set to every A-vertex");
  const std::size_t k = obj.colors.size();

  std::vector<detail::Bits> jb(na, detail::Bits(k));
  for (std::size_t u = 0; u < na; ++u) {
    for (std::size_t c : j.sets[u]) {
      if (c >= k) throw InputError("J-set refers to a missing color");
      jb[u].set(c);
    }
  }
  std::vector<detail::Bits> kv(obj.b_vertices.size(), detail::Bits(k));
  for (const auto& e : obj.edges) kv[e.b].set(e.color);

  GapCertificate cert;
  cert.per_u.resize(na);
  std::optional<Rational> alpha;
  auto lower = [&](const Rational& q) {
    if (!alpha || q < *alpha) alpha = q;
  };
  for (std::size_t u = 0; u < na; ++u) {
    cert.per_u[u].u = u;
    cert.per_u[u].j_size = jb[u].count();
  }
  for (const auto& e : obj.edges) {
    auto& entry = cert.per_u[e.a];
    entry.max_uncovered = std::max(entry.max_uncovered, kv[e.b].count_and_not(jb[e.a]));
  }
  for (const auto& entry : cert.per_u) {
    if (entry.j_size > 0) lower(detail::alpha_term(obj.d, entry.j_size));
    if (entry.max_uncovered > 0) lower(detail::alpha_term(obj.d_prime, entry.max_uncovered));
  }
  if (!alpha) throw InternalError("certify_gap: every constraint is vacuous");
  cert.alpha = *alpha;
  const auto nb = static_cast<long>(obj.b_vertices.size());
  cert.opt_lower_bound = cert.alpha * make_rational(nb, static_cast<long>(obj.s));
  cert.gap_lower_bound = cert.alpha / 2;

  // Re-derive everything with ordered sets built straight from the edge list.
  std::optional<Rational> alpha2;
  bool per_u_match = true;
  std::vector<std::set<std::size_t>> kv2(obj.b_vertices.size());
  for (const auto& e : obj.edges) kv2[e.b].insert(e.color);
  std::vector<std::size_t> worst(na, 0);
  for (const auto& e : obj.edges) {
    const std::set<std::size_t> ju(j.sets[e.a].begin(), j.sets[e.a].end());
    std::vector<std::size_t> diff;
    std::set_difference(kv2[e.b].begin(), kv2[e.b].end(), ju.begin(), ju.end(), std::back_inserter(diff));
    worst[e.a] = std::max(worst[e.a], diff.size());
  }
  for (std::size_t u = 0; u < na; ++u) {
    const std::set<std::size_t> ju(j.sets[u].begin(), j.sets[u].end());
    if (ju.size() != cert.per_u[u].j_size || worst[u] != cert.per_u[u].max_uncovered) per_u_match = false;
    for (const Rational& q : {ju.empty() ? Rational(-1) : detail::alpha_term(obj.d, ju.size()),
                              worst[u] == 0 ? Rational(-1) : detail::alpha_term(obj.d_prime, worst[u])}) {
      if (q >= 0 && (!alpha2 || q < *alpha2)) alpha2 = q;
    }
  }
  cert.self_check_passed = per_u_match && alpha2 && *alpha2 == cert.alpha;
  return cert;
}

struct DensityReport {
  Rational bound;         // (|J_u| + sum |K_v \ J_u|) / (d/d' + |V'|)
  Rational true_density;  // |union K_v| / (|B|/|A| + |V'|)
  std::size_t covered = 0;
};

// Density of the sub-tree {r->u} + {u->v, v->pi(v) : v in v_set} + E4 edges.
inline DensityReport density_bound(const GapObjects& obj, const JSetFamily& j, std::size_t u,
                                   const std::vector<std::size_t>& v_set) {
  check_indices(obj);
  if (u >= obj.a_vertices.size() || j.sets.size() != obj.a_vertices.size()) {
    throw InputError("density_bound: bad A-vertex or J-set family");
  }
  const auto nbrs = a_neighbors(obj);
  const auto kv = color_sets(obj);
  const std::set<std::size_t> ju(j.sets[u].begin(), j.sets[u].end());
  std::set<std::size_t> seen_v;
  std::set<std::size_t> covered;
  std::size_t budget = ju.size();
  for (std::size_t v : v_set) {
    if (!std::binary_search(nbrs[u].begin(), nbrs[u].end(), v)) {
      throw InputError("density_bound: " + (v < obj.b_vertices.size() ? obj.b_vertices[v] : std::string("?")) +
                       " is not a neighbor of " + obj.a_vertices[u]);
    }
    if (!seen_v.insert(v).second) throw InputError("density_bound: repeated B-vertex");
    for (std::size_t c : kv[v]) {
      covered.insert(c);
      if (!ju.count(c)) ++budget;
    }
  }
  DensityReport out;
  out.covered = covered.size();
  const auto na = static_cast<long>(obj.a_vertices.size());
  const auto nb = static_cast<long>(obj.b_vertices.size());
  const auto nv = static_cast<long>(v_set.size());
  out.bound = make_rational(static_cast<long>(budget), 1) /
              (make_rational(static_cast<long>(obj.d), static_cast<long>(obj.d_prime)) + nv);
  out.true_density = make_rational(static_cast<long>(out.covered), 1) / (make_rational(nb, na) + nv);
  if (out.true_density > out.bound) throw InternalError("density exceeds its J-set bound");
  return out;
}

enum class SolveStatus { kOptimal, kBounded, kInfeasible };

struct StructuredSolution {
  SolveStatus status = SolveStatus::kOptimal;
  std::vector<std::size_t> opened_a;  // indices into level 1
  std::vector<std::size_t> opened_b;  // indices into level 2
  std::vector<std::pair<std::size_t, std::size_t>> assignment;  // (v, u)
  Rational cost;                       // best found
  Rational lower_bound;                // equals cost when optimal
  std::uint64_t nodes = 0;
};

struct SearchOptions {
  std::uint64_t node_limit = 20'000'000;
};

namespace detail {

// Prices of A-vertices (E1 edges) and B-vertices (E3 edges) on a common
// integer scale. Unpriced or missing edges mean the vertex cannot be used.
struct PricedLayers {
  BigInt scale;
  std::vector<std::optional<std::int64_t>> a_cost, b_cost;
  std::vector<std::vector<std::size_t>> a_nbrs, b_nbrs;  // H adjacency from E2
  std::vector<Bits> reach;                               // K_v via pi(v)'s E4 edges
};

inline PricedLayers priced_layers(const DstInstance& inst) {
  PricedLayers p;
  const std::size_t na = inst.level_size(1), nb = inst.level_size(2), k = inst.level_size(4);
  p.scale = 1;
  for (const auto& e : inst.edges()) {
    if ((e.level == 2 || e.level == 4) && sgn(e.cost) != 0) {
      throw InputError("structured solvers need zero-cost E2 and E4 edges");
    }
    p.scale = lcm(p.scale, e.cost.get_den());
  }
  auto scaled = [&](const Rational& c) {
    const BigInt v = c.get_num() * (p.scale / c.get_den());
    if (!v.fits_slong_p()) throw CapExceeded("edge cost does not fit the integer search scale");
    return static_cast<std::int64_t>(v.get_si());
  };
  p.a_cost.assign(na, std::nullopt);
  p.b_cost.assign(nb, std::nullopt);
  p.a_nbrs.assign(na, {});
  p.b_nbrs.assign(nb, {});
  p.reach.assign(nb, Bits(k));
  std::vector<std::optional<std::size_t>> copy_of(inst.level_size(3));
  for (std::size_t v = 0; v < nb; ++v) copy_of[inst.index_in_level(inst.pi()[v])] = v;
  for (const auto& e : inst.edges()) {
    const std::size_t ti = inst.index_in_level(e.tail), hi = inst.index_in_level(e.head);
    switch (e.level) {
      case 1: p.a_cost[hi] = scaled(e.cost); break;
      case 2:
        p.a_nbrs[ti].push_back(hi);
        p.b_nbrs[hi].push_back(ti);
        break;
      case 3:
        if (copy_of[hi] && *copy_of[hi] == ti) p.b_cost[ti] = scaled(e.cost);
        break;
      case 4:
        if (copy_of[ti]) p.reach[*copy_of[ti]].set(hi);
        break;
      default: break;
    }
  }
  return p;
}

class StructuredSearch {
 public:
  StructuredSearch(const PricedLayers& p, std::size_t k, const SearchOptions& opt)
      : p_(p), k_(k), opt_(opt), covered_(k), open_a_(p.a_cost.size(), false),
        excl_a_(p.a_cost.size(), false), excl_b_(p.b_cost.size(), false) {}

  void run() {
    greedy_incumbent();
    Bits all(k_);
    for (std::size_t v = 0; v < p_.b_cost.size(); ++v) {
      if (usable_b(v)) all |= p_.reach[v];
    }
    if (all.count() != k_) {
      infeasible_ = true;
      return;
    }
    root_bound_ = bound_rest(covered_);
    search(0);
  }

  bool infeasible() const { return infeasible_; }
  bool complete() const { return !aborted_; }
  std::uint64_t nodes() const { return nodes_; }
  std::int64_t best() const { return best_; }
  // Lower bound on the optimum, scaled: exact when complete.
  Rational root_bound() const { return root_bound_; }
  const std::vector<std::size_t>& best_a() const { return best_a_; }
  const std::vector<std::pair<std::size_t, std::size_t>>& best_b() const { return best_b_; }

 private:
  bool usable_b(std::size_t v) const {
    if (!p_.b_cost[v]) return false;
    return std::any_of(p_.b_nbrs[v].begin(), p_.b_nbrs[v].end(),
                       [&](std::size_t u) { return p_.a_cost[u].has_value(); });
  }

  // Every further unit of cost covers at most max_v |K_v cap U| / cost_v new
  // terminals, whatever A-vertices get opened on the way.
  Rational bound_rest(const Bits& covered) const {
    const std::size_t uncovered = k_ - covered.count();
    if (uncovered == 0) return Rational(0);
    Rational best_density = -1;
    for (std::size_t v = 0; v < p_.b_cost.size(); ++v) {
      if (excl_b_[v] || !p_.b_cost[v]) continue;
      const std::size_t gain = p_.reach[v].count_and_not(covered);
      if (gain == 0) continue;
      const Rational dens = *p_.b_cost[v] == 0 ? Rational(static_cast<long>(k_) + 1)
                                               : make_rational(static_cast<long>(gain), *p_.b_cost[v]);
      if (dens > best_density) best_density = dens;
    }
    if (best_density <= 0) return Rational(std::numeric_limits<long>::max());
    return make_rational(static_cast<long>(uncovered), 1) / best_density;
  }

  void greedy_incumbent() {
    Bits cov(k_);
    std::vector<bool> open(p_.a_cost.size(), false);
    std::vector<std::size_t> a_list;
    std::vector<std::pair<std::size_t, std::size_t>> b_list;
    std::int64_t cost = 0;
    while (cov.count() < k_) {
      // Best (gain / marginal cost) over B-vertices, paying for the cheapest support.
      std::optional<std::size_t> pick_v, pick_u;
      Rational pick_dens = -1;
      for (std::size_t v = 0; v < p_.b_cost.size(); ++v) {
        if (!usable_b(v)) continue;
        const std::size_t gain = p_.reach[v].count_and_not(cov);
        if (gain == 0) continue;
        std::optional<std::size_t> sup;
        std::int64_t sup_cost = 0;
        for (std::size_t u : p_.b_nbrs[v]) {
          if (!p_.a_cost[u]) continue;
          const std::int64_t c = open[u] ? 0 : *p_.a_cost[u];
          if (!sup || c < sup_cost) {
            sup = u;
            sup_cost = c;
          }
        }
        const std::int64_t marginal = sup_cost + *p_.b_cost[v];
        const Rational dens = marginal == 0 ? Rational(static_cast<long>(k_) + 1)
                                            : make_rational(static_cast<long>(gain), marginal);
        if (dens > pick_dens) {
          pick_dens = dens;
          pick_v = v;
          pick_u = sup;
        }
      }
      if (!pick_v) return;  // infeasible; run() reports it
      if (!open[*pick_u]) {
        open[*pick_u] = true;
        a_list.push_back(*pick_u);
        cost += *p_.a_cost[*pick_u];
      }
      b_list.emplace_back(*pick_v, *pick_u);
      cost += *p_.b_cost[*pick_v];
      cov |= p_.reach[*pick_v];
    }
    best_ = cost;
    best_a_ = a_list;
    best_b_ = b_list;
    have_best_ = true;
  }

  void search(std::int64_t cost) {
    if (aborted_) return;
    if (++nodes_ > opt_.node_limit) {
      aborted_ = true;
      return;
    }
    if (covered_.count() == k_) {
      if (!have_best_ || cost < best_) {
        best_ = cost;
        best_a_ = cur_a_;
        best_b_ = cur_b_;
        have_best_ = true;
      }
      return;
    }
    if (have_best_ && Rational(static_cast<long>(cost)) + bound_rest(covered_) >= best_) return;

    // Branch on the uncovered terminal with the fewest candidates.
    std::optional<std::size_t> terminal;
    std::size_t fewest = std::numeric_limits<std::size_t>::max();
    std::vector<std::size_t> candidates;
    for (std::size_t t = 0; t < k_; ++t) {
      if (covered_.test(t)) continue;
      std::vector<std::size_t> cand;
      for (std::size_t v = 0; v < p_.b_cost.size(); ++v) {
        if (!excl_b_[v] && p_.b_cost[v] && p_.reach[v].test(t) && has_support(v)) cand.push_back(v);
      }
      if (cand.size() < fewest) {
        fewest = cand.size();
        terminal = t;
        candidates = std::move(cand);
        if (fewest <= 1) break;
      }
    }
    if (candidates.empty()) return;
    std::stable_sort(candidates.begin(), candidates.end(), [&](std::size_t x, std::size_t y) {
      return p_.reach[x].count_and_not(covered_) > p_.reach[y].count_and_not(covered_);
    });

    std::vector<std::size_t> excluded_here;
    for (std::size_t v : candidates) {
      const Bits saved = covered_;
      covered_ |= p_.reach[v];
      if (supported(v)) {
        cur_b_.emplace_back(v, support_of(v));
        search(cost + *p_.b_cost[v]);
        cur_b_.pop_back();
      } else {
        std::vector<std::size_t> excluded_u;
        for (std::size_t u : p_.b_nbrs[v]) {
          if (excl_a_[u] || !p_.a_cost[u]) continue;
          open_a_[u] = true;
          cur_a_.push_back(u);
          cur_b_.emplace_back(v, u);
          search(cost + *p_.a_cost[u] + *p_.b_cost[v]);
          cur_b_.pop_back();
          cur_a_.pop_back();
          open_a_[u] = false;
          excl_a_[u] = true;
          excluded_u.push_back(u);
        }
        for (std::size_t u : excluded_u) excl_a_[u] = false;
      }
      covered_ = saved;
      excl_b_[v] = true;
      excluded_here.push_back(v);
      if (aborted_) break;
    }
    for (std::size_t v : excluded_here) excl_b_[v] = false;
  }

  bool supported(std::size_t v) const {
    return std::any_of(p_.b_nbrs[v].begin(), p_.b_nbrs[v].end(), [&](std::size_t u) { return open_a_[u]; });
  }
  std::size_t support_of(std::size_t v) const {
    // Smallest-index open neighbor.
    for (std::size_t u : p_.b_nbrs[v]) {
      if (open_a_[u]) return u;
    }
    throw InternalError("support_of: no open neighbor");
  }
  bool has_support(std::size_t v) const {
    return std::any_of(p_.b_nbrs[v].begin(), p_.b_nbrs[v].end(),
                       [&](std::size_t u) { return open_a_[u] || (!excl_a_[u] && p_.a_cost[u]); });
  }

  const PricedLayers& p_;
  std::size_t k_;
  SearchOptions opt_;
  Bits covered_;
  std::vector<bool> open_a_, excl_a_, excl_b_;
  std::vector<std::size_t> cur_a_;
  std::vector<std::pair<std::size_t, std::size_t>> cur_b_;
  std::int64_t best_ = 0;
  bool have_best_ = false;
  std::vector<std::size_t> best_a_;
  std::vector<std::pair<std::size_t, std::size_t>> best_b_;
  std::uint64_t nodes_ = 0;
  bool aborted_ = false;
  bool infeasible_ = false;
  Rational root_bound_;
};

}  // namespace detail

inline StructuredSolution solve_structured(const DstInstance& inst, const SearchOptions& opt = {}) {
  const detail::PricedLayers p = detail::priced_layers(inst);
  detail::StructuredSearch search(p, inst.level_size(4), opt);
  search.run();
  StructuredSolution sol;
  sol.nodes = search.nodes();
  if (search.infeasible()) {
    sol.status = SolveStatus::kInfeasible;
    return sol;
  }
  sol.cost = make_rational(BigInt(static_cast<long>(search.best())), p.scale);
  sol.opened_a = search.best_a();
  std::sort(sol.opened_a.begin(), sol.opened_a.end());
  // Each v is reported with its smallest-index opened neighbor.
  for (const auto& vu : search.best_b()) {
    sol.opened_b.push_back(vu.first);
    std::size_t u = vu.second;
    for (std::size_t cand : p.b_nbrs[vu.first]) {
      if (std::binary_search(sol.opened_a.begin(), sol.opened_a.end(), cand)) {
        u = cand;
        break;
      }
    }
    sol.assignment.emplace_back(vu.first, u);
  }
  std::sort(sol.opened_b.begin(), sol.opened_b.end());
  std::sort(sol.assignment.begin(), sol.assignment.end());
  if (search.complete()) {
    sol.status = SolveStatus::kOptimal;
    sol.lower_bound = sol.cost;
  } else {
    sol.status = SolveStatus::kBounded;
    sol.lower_bound = search.root_bound() / p.scale;
  }
  return sol;
}

// Checks a structured solution against the instance graph directly.
inline bool structured_solution_valid(const DstInstance& inst, const StructuredSolution& sol) {
  std::vector<bool> a_open(inst.level_size(1), false);
  for (std::size_t u : sol.opened_a) a_open.at(u) = true;
  std::vector<bool> reached(inst.vertex_count(), false);
  Rational cost = 0;
  for (std::size_t u : sol.opened_a) {
    auto e = inst.find_edge(inst.root(), inst.vertex(1, u));
    if (!e) return false;
    cost += inst.edges()[*e].cost;
  }
  for (const auto& [v, u] : sol.assignment) {
    if (!a_open.at(u)) return false;
    const VertexId bv = inst.vertex(2, v);
    auto e2 = inst.find_edge(inst.vertex(1, u), bv);
    auto e3 = inst.find_edge(bv, inst.pi().at(v));
    if (!e2 || !e3) return false;
    cost += inst.edges()[*e3].cost;
    reached[inst.pi()[v]] = true;
  }
  for (const auto& e : inst.edges()) {
    if (e.level == 4 && reached[e.tail]) reached[e.head] = true;
  }
  for (VertexId t : inst.terminals()) {
    if (!reached[t]) return false;
  }
  return cost == sol.cost;
}

struct BruteForceOptions {
  std::size_t max_priced_edges = 32;     // |A| + |B| on family instances
  std::uint64_t max_checks = 200'000'000;
};

struct BruteForceResult {
  bool feasible = true;
  Rational opt;
  std::vector<VertexId> unreachable;  // when infeasible
  std::uint64_t checks = 0;
};

// Enumerates sets of priced edges in order of cost, adds every free edge, and
// returns the cost of the first set whose subgraph reaches all terminals.
// Priced edges must have one cost on E1 and one cost on E3.
inline BruteForceResult brute_force_opt(const DstInstance& inst, const BruteForceOptions& opt = {}) {
  std::vector<EdgeId> e1, e3;
  std::optional<Rational> c1, c3;
  for (EdgeId i = 0; i < inst.edges().size(); ++i) {
    const auto& e = inst.edges()[i];
    if (sgn(e.cost) == 0) continue;
    auto& list = e.level == 1 ? e1 : e3;
    auto& price = e.level == 1 ? c1 : c3;
    if (e.level != 1 && e.level != 3) throw InputError("brute_force_opt: priced edge outside E1/E3");
    if (price && *price != e.cost) throw InputError("brute_force_opt: non-uniform prices within a level");
    price = e.cost;
    list.push_back(i);
  }
  if (e1.size() + e3.size() > opt.max_priced_edges) {
    throw CapExceeded("brute force over " + std::to_string(e1.size() + e3.size()) + " priced edges, cap is " +
                      std::to_string(opt.max_priced_edges));
  }
  const auto out = inst.out_edges();
  const auto terms = inst.terminals();
  std::vector<char> enabled(inst.edges().size(), 0);
  for (EdgeId i = 0; i < enabled.size(); ++i) enabled[i] = sgn(inst.edges()[i].cost) == 0;
  std::vector<char> seen(inst.vertex_count());
  std::vector<VertexId> stack;
  auto reaches_all = [&]() {
    std::fill(seen.begin(), seen.end(), 0);
    stack.assign(1, inst.root());
    seen[inst.root()] = 1;
    while (!stack.empty()) {
      const VertexId v = stack.back();
      stack.pop_back();
      for (EdgeId e : out[v]) {
        if (enabled[e] && !seen[inst.edges()[e].head]) {
          seen[inst.edges()[e].head] = 1;
          stack.push_back(inst.edges()[e].head);
        }
      }
    }
    return std::all_of(terms.begin(), terms.end(), [&](VertexId t) { return seen[t] != 0; });
  };

  BruteForceResult res;
  for (EdgeId i : e1) enabled[i] = 1;
  for (EdgeId i : e3) enabled[i] = 1;
  if (!reaches_all()) {
    res.feasible = false;
    for (VertexId t : terms) {
      if (!seen[t]) res.unreachable.push_back(t);
    }
    return res;
  }
  for (EdgeId i : e1) enabled[i] = 0;
  for (EdgeId i : e3) enabled[i] = 0;

  struct Level {
    std::size_t i, j;
    Rational cost;
  };
  std::vector<Level> levels;
  for (std::size_t i = 0; i <= e1.size(); ++i) {
    for (std::size_t j = 0; j <= e3.size(); ++j) {
      levels.push_back({i, j, Rational(static_cast<long>(i)) * c1.value_or(0) + Rational(static_cast<long>(j)) * c3.value_or(0)});
    }
  }
  std::stable_sort(levels.begin(), levels.end(), [](const Level& x, const Level& y) { return x.cost < y.cost; });

  // Visits every r-combination of `items`, toggling `enabled`; stops when fn returns true.
  auto combos = [&](const std::vector<EdgeId>& items, std::size_t r, auto&& fn) -> bool {
    std::vector<std::size_t> idx(r);
    std::iota(idx.begin(), idx.end(), 0);
    for (;;) {
      for (std::size_t x : idx) enabled[items[x]] = 1;
      const bool stop = fn();
      for (std::size_t x : idx) enabled[items[x]] = 0;
      if (stop) return true;
      std::size_t p = r;
      while (p > 0 && idx[p - 1] == items.size() - r + p - 1) --p;
      if (p == 0) return false;
      ++idx[p - 1];
      for (std::size_t q = p; q < r; ++q) idx[q] = idx[q - 1] + 1;
    }
  };

  for (const auto& lv : levels) {
    const bool found = combos(e1, lv.i, [&]() {
      return combos(e3, lv.j, [&]() {
        if (++res.checks > opt.max_checks) throw CapExceeded("brute force exceeded its check budget");
        return reaches_all();
      });
    });
    if (found) {
      res.opt = lv.cost;
      return res;
    }
  }
  throw InternalError("brute force found no feasible edge set although the full graph is feasible");
}

}  // namespace dstgap
