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

#include <random>
#include <set>

#include <gtest/gtest.h>

#include "dstgap/dstgap.hpp"
#include "oracles.hpp"

namespace dstgap {
namespace {

std::vector<std::set<std::size_t>> as_sets(const JSetFamily& j) {
  std::vector<std::set<std::size_t>> out;
  for (const auto& s : j.sets) out.emplace_back(s.begin(), s.end());
  return out;
}

TEST(Certificate, ZkAlphaIsRootKMinusOne) {
  for (int k : {4, 9, 16}) {
    const GapObjects obj = zk_objects(k);
    const JSetFamily j = default_j_sets(obj);
    const GapCertificate cert = certify_gap(obj, j);
    const long r = static_cast<long>(std::lround(std::sqrt(k)));
    EXPECT_EQ(cert.alpha, r - 1) << k;
    EXPECT_EQ(cert.alpha, oracle::alpha(obj, as_sets(j)));
    EXPECT_TRUE(cert.self_check_passed);
    EXPECT_EQ(cert.opt_lower_bound,
              cert.alpha * make_rational(static_cast<long>(obj.b_vertices.size()), static_cast<long>(obj.s)));
    EXPECT_EQ(cert.gap_lower_bound, cert.alpha / 2);
  }
  const GapCertificate four = certify_gap(zk_objects(4), default_j_sets(zk_objects(4)));
  EXPECT_EQ(four.opt_lower_bound, make_rational(4, 3));
}

TEST(Certificate, SubsetSixTwo) {
  const GapObjects obj = subset_objects({6, 2, 1});
  const GapCertificate one = certify_gap(obj, default_j_sets(obj, 1));
  EXPECT_EQ(one.alpha, make_rational(6, 5));
  EXPECT_EQ(one.opt_lower_bound, 3);
  const GapCertificate zero = certify_gap(obj, default_j_sets(obj, 0));
  // |J_u| = 9 gives 6/9 = 2/3 < 6/5.
  EXPECT_EQ(zero.alpha, make_rational(2, 3));
  for (int t : {0, 1}) EXPECT_EQ(certify_gap(obj, default_j_sets(obj, t)).alpha, oracle::alpha(obj, oracle::j_sets(obj, t)));
}

TEST(Certificate, MatchesClosedFormCounts) {
  for (auto [m, a] : std::vector<std::pair<int, int>>{{6, 2}, {8, 2}, {9, 3}, {10, 2}}) {
    for (int t = 0; t < a; ++t) {
      const GapObjects obj = subset_objects({m, a, t});
      EXPECT_EQ(certify_gap(obj, default_j_sets(obj)).alpha, subset_counts(m, a, t).alpha) << m << a << t;
    }
  }
}

TEST(Certificate, RandomJSetsAgreeWithOracle) {
  std::mt19937 rng(23);
  const GapObjects obj = subset_objects({6, 2, 0});
  for (int trial = 0; trial < 40; ++trial) {
    JSetFamily j;
    j.sets.resize(obj.a_vertices.size());
    for (auto& s : j.sets) {
      for (std::size_t c = 0; c < obj.colors.size(); ++c) {
        if (rng() % 3 == 0) s.push_back(c);
      }
    }
    const GapCertificate cert = certify_gap(obj, j);
    EXPECT_TRUE(cert.self_check_passed);
    EXPECT_EQ(cert.alpha, oracle::alpha(obj, as_sets(j)));
  }
  JSetFamily bad;
  bad.sets.assign(obj.a_vertices.size(), {});
  bad.sets[0] = {999};
  EXPECT_THROW(certify_gap(obj, bad), InputError);
  bad.sets.pop_back();
  EXPECT_THROW(certify_gap(obj, bad), InputError);
}

TEST(Density, BoundHoldsOnEveryStarOfZkFour) {
  const GapObjects obj = zk_objects(4);
  const JSetFamily j = default_j_sets(obj);
  const GapCertificate cert = certify_gap(obj, j);
  const auto nbrs = a_neighbors(obj);
  for (std::size_t u = 0; u < obj.a_vertices.size(); ++u) {
    const auto& nb = nbrs[u];
    for (std::uint64_t pick = 1; pick < (std::uint64_t{1} << nb.size()); ++pick) {
      std::vector<std::size_t> vs;
      for (std::size_t i = 0; i < nb.size(); ++i) {
        if ((pick >> i) & 1U) vs.push_back(nb[i]);
      }
      const DensityReport rep = density_bound(obj, j, u, vs);
      EXPECT_LE(rep.true_density, rep.bound);
      // Per-star ceiling d'/alpha.
      EXPECT_LE(rep.bound, make_rational(static_cast<long>(obj.d_prime)) / cert.alpha);
    }
  }
  std::size_t stranger = 0;
  while (std::binary_search(nbrs[0].begin(), nbrs[0].end(), stranger)) ++stranger;
  EXPECT_THROW(density_bound(obj, j, 0, {stranger}), InputError);
  EXPECT_THROW(density_bound(obj, j, 0, {nbrs[0][0], nbrs[0][0]}), InputError);
}

struct SolverCase {
  const char* name;
  GapObjects obj;
};

std::vector<SolverCase> small_cases() {
  return {{"zk4", zk_objects(4)},          {"s3_1", subset_objects({3, 1, 0})}, {"s5_1", subset_objects({5, 1, 0})},
          {"s4_2", subset_objects({4, 2, 1})}, {"s5_2", subset_objects({5, 2, 1})}, {"s6_3", subset_objects({6, 3, 1})}};
}

TEST(Solvers, AgreeWithSubsetEnumeration) {
  for (const auto& c : small_cases()) {
    const DstInstance inst = build_instance(c.obj);
    const auto want = oracle::subset_opt(inst);
    ASSERT_TRUE(want.has_value()) << c.name;
    const StructuredSolution ss = solve_structured(inst);
    const BruteForceResult bf = brute_force_opt(inst);
    EXPECT_EQ(ss.status, SolveStatus::kOptimal) << c.name;
    EXPECT_EQ(ss.cost, *want) << c.name;
    EXPECT_EQ(bf.opt, *want) << c.name;
    EXPECT_TRUE(structured_solution_valid(inst, ss)) << c.name;
    const GapCertificate cert = certify_gap(c.obj, default_j_sets(c.obj));
    EXPECT_GE(*want, cert.opt_lower_bound) << c.name;
  }
}

TEST(Solvers, ZkFourOptimum) {
  const DstInstance inst = build_instance(zk_objects(4));
  EXPECT_EQ(solve_structured(inst).cost, make_rational(8, 3));
  EXPECT_EQ(brute_force_opt(inst).opt, make_rational(8, 3));
}

TEST(Solvers, SubsetSixTwoStructuredEqualsBrute) {
  const DstInstance inst = build_instance(subset_objects({6, 2, 1}));
  const StructuredSolution ss = solve_structured(inst);
  const BruteForceResult bf = brute_force_opt(inst);
  EXPECT_EQ(ss.cost, bf.opt);
  EXPECT_EQ(bf.opt, 5);
  EXPECT_GE(bf.opt, 3);
}

TEST(Solvers, TamperedSolutionIsRejected) {
  const DstInstance inst = build_instance(zk_objects(4));
  StructuredSolution ss = solve_structured(inst);
  ASSERT_TRUE(structured_solution_valid(inst, ss));
  StructuredSolution cheaper = ss;
  cheaper.cost -= 1;
  EXPECT_FALSE(structured_solution_valid(inst, cheaper));
  StructuredSolution missing = ss;
  missing.assignment.pop_back();
  EXPECT_FALSE(structured_solution_valid(inst, missing));
}

TEST(Solvers, InfeasibleInstanceIsReported) {
  const DstInstance good = build_instance(zk_objects(4));
  const VertexId t = good.terminals().front();
  std::vector<DstEdge> edges;
  for (const auto& e : good.edges()) {
    if (e.head != t) edges.push_back(e);
  }
  const DstInstance bad(good.levels(), edges, good.pi(), good.objects());
  const BruteForceResult bf = brute_force_opt(bad);
  EXPECT_FALSE(bf.feasible);
  EXPECT_EQ(bf.unreachable, std::vector<VertexId>{t});
  EXPECT_EQ(solve_structured(bad).status, SolveStatus::kInfeasible);
}

TEST(Solvers, CapsAndBudgets) {
  const DstInstance big = build_instance(zk_objects(9));
  EXPECT_THROW(brute_force_opt(big), CapExceeded);
  const StructuredSolution partial = solve_structured(big, SearchOptions{50});
  EXPECT_EQ(partial.status, SolveStatus::kBounded);
  EXPECT_LE(partial.lower_bound, partial.cost);
  EXPECT_TRUE(structured_solution_valid(big, partial));
}

}  // namespace
}  // namespace dstgap
