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

#include <algorithm>
#include <numeric>
#include <random>
#include <set>
#include <string>
#include <tuple>

#include <gtest/gtest.h>

#include "dstgap/dstgap.hpp"
#include "oracles.hpp"

namespace dstgap {
namespace {

using LabelEdge = std::tuple<std::string, std::string, std::string>;

std::set<LabelEdge> label_edges(const GapObjects& obj) {
  std::set<LabelEdge> out;
  for (const auto& e : obj.edges) out.emplace(obj.a_vertices[e.a], obj.b_vertices[e.b], obj.colors[e.color]);
  return out;
}

std::vector<int> minus(std::vector<int> s, int e) {
  s.erase(std::find(s.begin(), s.end(), e));
  return s;
}

// zk: B = (sqrt k + 1)-sets, A = sqrt k-sets, B - {e} -> B with color {e}.
std::set<LabelEdge> zk_oracle(int k, int r) {
  std::set<LabelEdge> out;
  for (const auto& b : oracle::subsets(k, r + 1)) {
    for (int e : b) out.emplace(render_subset(minus(b, e)), render_subset(b), render_subset({e}));
  }
  return out;
}

// subset: B = 2a-sets, A = a-sets inside B, color of (A, B) is B - A.
std::set<LabelEdge> subset_oracle(int m, int a) {
  std::set<LabelEdge> out;
  for (const auto& b : oracle::subsets(m, 2 * a)) {
    for (const auto& u : oracle::subsets(m, a)) {
      if (oracle::overlap(u, b) != a) continue;
      std::vector<int> rest;
      std::set_difference(b.begin(), b.end(), u.begin(), u.end(), std::back_inserter(rest));
      out.emplace(render_subset(u), render_subset(b), render_subset(rest));
    }
  }
  return out;
}

class ZkFamily : public ::testing::TestWithParam<int> {};

TEST_P(ZkFamily, MatchesDefinitionAndDegrees) {
  const int k = GetParam();
  const int r = static_cast<int>(std::lround(std::sqrt(k)));
  const GapObjects obj = zk_objects(k);
  EXPECT_TRUE(validate_objects(obj).ok());
  EXPECT_EQ(label_edges(obj), zk_oracle(k, r));
  EXPECT_EQ(obj.d, static_cast<std::size_t>(k - r));
  EXPECT_EQ(obj.d_prime, static_cast<std::size_t>(r + 1));
  EXPECT_EQ(obj.k, static_cast<std::size_t>(k));
  EXPECT_EQ(obj.a_vertices.size(), oracle::binom(k, r).get_ui());
  EXPECT_EQ(obj.b_vertices.size(), oracle::binom(k, r + 1).get_ui());
  EXPECT_EQ(obj.s, oracle::binom(k - 1, r).get_ui());
  // Labels come out in colex order.
  for (std::size_t i = 0; i < obj.a_vertices.size(); ++i) {
    EXPECT_EQ(rank_subset(parse_subset_label(obj.a_vertices[i]), k), i);
  }
}

INSTANTIATE_TEST_SUITE_P(Squares, ZkFamily, ::testing::Values(4, 9, 16));

TEST(ZkFamilyParams, Rejected) {
  for (int k : {0, 1, 2, 5, 8, 10}) EXPECT_THROW(zk_objects(k), ParamError) << k;
  try {
    zk_objects(5);
  } catch (const ParamError& e) {
    EXPECT_NE(std::string(e.what()).find("k must be a perfect square"), std::string::npos);
  }
  EXPECT_THROW(zk_objects(16, SizeCap{100}), CapExceeded);
  EXPECT_THROW(zk_objects(64), CapExceeded);
}

struct SubsetCase {
  int m, a;
};

class SubsetFamily : public ::testing::TestWithParam<SubsetCase> {};

TEST_P(SubsetFamily, MatchesDefinition) {
  const auto [m, a] = GetParam();
  const GapObjects obj = subset_objects({m, a, 0});
  EXPECT_TRUE(validate_objects(obj).ok());
  EXPECT_EQ(label_edges(obj), subset_oracle(m, a));
  EXPECT_EQ(obj.d, oracle::binom(m - a, a).get_ui());
  EXPECT_EQ(obj.d_prime, oracle::binom(2 * a, a).get_ui());
  EXPECT_EQ(obj.k, oracle::binom(m, a).get_ui());
  EXPECT_EQ(obj.s * obj.k, obj.edges.size());
}

INSTANTIATE_TEST_SUITE_P(Small, SubsetFamily,
                         ::testing::Values(SubsetCase{2, 1}, SubsetCase{3, 1}, SubsetCase{5, 1}, SubsetCase{4, 2},
                                           SubsetCase{5, 2}, SubsetCase{6, 2}, SubsetCase{8, 2}, SubsetCase{7, 3},
                                           SubsetCase{6, 3}));

TEST(SubsetFamilyParams, SixTwo) {
  const GapObjects obj = subset_objects({6, 2, 1});
  EXPECT_EQ(obj.d, 6u);
  EXPECT_EQ(obj.d_prime, 6u);
  EXPECT_EQ(obj.s, 6u);
  EXPECT_EQ(obj.k, 15u);
  const GapObjects four = subset_objects({4, 2, 0});
  EXPECT_EQ(four.edges.size(), 6u);
  EXPECT_EQ(four.d, 1u);
}

TEST(SubsetFamilyParams, Rejected) {
  EXPECT_THROW(subset_objects({0, 1, 0}), ParamError);
  EXPECT_THROW(subset_objects({5, 3, 0}), ParamError);
  EXPECT_THROW(subset_objects({6, 2, 2}), ParamError);
  EXPECT_THROW(subset_objects({6, 2, -1}), ParamError);
  EXPECT_THROW(subset_objects({64, 2, 0}), CapExceeded);
  EXPECT_THROW(subset_objects({20, 5, 0}, SizeCap{1000}), CapExceeded);
}

TEST(JSets, SubsetThresholds) {
  const GapObjects obj = subset_objects({6, 2, 1});
  const JSetFamily one = default_j_sets(obj);
  const JSetFamily zero = default_j_sets(obj, 0);
  for (std::size_t u = 0; u < obj.a_vertices.size(); ++u) {
    // thresh 1: only the color equal to u; thresh 0: 15 - C(4, 2) colors.
    ASSERT_EQ(one.sets[u].size(), 1u);
    EXPECT_EQ(obj.colors[one.sets[u][0]], obj.a_vertices[u]);
    EXPECT_EQ(zero.sets[u].size(), 9u);
    const auto ref = oracle::j_sets(obj, 0)[u];
    EXPECT_EQ(std::set<std::size_t>(zero.sets[u].begin(), zero.sets[u].end()), ref);
  }
  EXPECT_THROW(default_j_sets(obj, -1), ParamError);
}

TEST(JSets, ZkUsesMembership) {
  const GapObjects obj = zk_objects(9);
  const JSetFamily j = default_j_sets(obj);
  for (std::size_t u = 0; u < obj.a_vertices.size(); ++u) {
    std::vector<std::string> got;
    for (auto c : j.sets[u]) got.push_back(obj.colors[c]);
    std::vector<std::string> want;
    for (int e : parse_subset_label(obj.a_vertices[u])) want.push_back(render_subset({e}));
    EXPECT_EQ(got, want);
  }
}

TEST(JSets, UnknownFamily) {
  GapObjects obj = zk_objects(4);
  obj.family = FamilyTag{};
  EXPECT_THROW(default_j_sets(obj), InputError);
}

TEST(Labels, Parse) {
  EXPECT_EQ(parse_subset_label("{1,4,5}"), (Subset{1, 4, 5}));
  EXPECT_EQ(parse_subset_label("{}"), Subset{});
  for (const char* bad : {"1,2", "{1,,2}", "{a}", "{0}", "{99}", "{1,2", ""}) {
    EXPECT_THROW(parse_subset_label(bad), InputError) << bad;
  }
}

TEST(Symmetry, GroundSetRelabelling) {
  std::mt19937 rng(7);
  for (const GapObjects& obj : {zk_objects(9), subset_objects({7, 2, 1})}) {
    const int m = obj.family.kind == FamilyKind::kZk ? obj.family.k : obj.family.m;
    std::vector<int> perm(static_cast<std::size_t>(m));
    std::iota(perm.begin(), perm.end(), 1);
    std::shuffle(perm.begin(), perm.end(), rng);
    const GapObjects moved = relabel_ground_set(obj, perm);
    EXPECT_TRUE(validate_objects(moved).ok());
    // The families are symmetric under the ground set, so the copy is equal.
    EXPECT_EQ(label_edges(moved), label_edges(obj));
  }
}

TEST(Symmetry, IdPermutationKeepsStructure) {
  const GapObjects obj = subset_objects({6, 2, 1});
  std::mt19937 rng(11);
  auto perm = [&](std::size_t n) {
    std::vector<std::size_t> p(n);
    std::iota(p.begin(), p.end(), 0);
    std::shuffle(p.begin(), p.end(), rng);
    return p;
  };
  const GapObjects moved =
      permute_objects(obj, perm(obj.a_vertices.size()), perm(obj.b_vertices.size()), perm(obj.colors.size()));
  EXPECT_TRUE(validate_objects(moved).ok());
  EXPECT_EQ(label_edges(moved), label_edges(obj));
  EXPECT_NE(moved.a_vertices, obj.a_vertices);
  const JSetFamily j = default_j_sets(moved);
  EXPECT_EQ(certify_gap(moved, j).alpha, certify_gap(obj, default_j_sets(obj)).alpha);
  EXPECT_THROW(permute_objects(obj, {0}, {}, {}), ParamError);
}

}  // namespace
}  // namespace dstgap
