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

#include <cmath>

#include <gtest/gtest.h>

#include "dstgap/dstgap.hpp"
#include "oracles.hpp"

namespace dstgap {
namespace {

TEST(Hypergeometric, PmfSumsToOneAndMatchesEnumeration) {
  for (int N = 0; N <= 12; ++N) {
    for (int K = 0; K <= N; ++K) {
      for (int n = 0; n <= N; ++n) {
        const auto pmf = hypergeom_pmf(TailQuery{N, K, n, 0});
        Rational total = 0;
        for (const auto& p : pmf) total += p;
        ASSERT_EQ(total, 1);
        for (int t = 0; t <= n; ++t) {
          const auto ref = oracle::enumerate_tail(N, K, n, t);
          ASSERT_EQ(hypergeom_tail(TailQuery{N, K, n, t}, TailDirection::kAtMost), make_rational(ref.at_most, ref.total));
          ASSERT_EQ(hypergeom_tail(TailQuery{N, K, n, t}, TailDirection::kAtLeast),
                    make_rational(ref.at_least, ref.total));
        }
      }
    }
  }
}

TEST(Hypergeometric, EightFourFour) {
  EXPECT_EQ(hypergeom_tail(TailQuery{8, 4, 4, 1}, TailDirection::kAtMost), make_rational(17, 70));
  EXPECT_EQ(hypergeom_tail(TailQuery{8, 4, 4, 1}, TailDirection::kAbove), make_rational(53, 70));
  EXPECT_THROW(hypergeom_pmf(TailQuery{4, 5, 1, 0}), ParamError);
}

TEST(Enclosures, BracketTheTrueValue) {
  for (long num : {-300, -7, -1, 0, 1, 5}) {
    for (long den : {1L, 3L, 64L}) {
      const Rational x = make_rational(num, den);
      const Enclosure e = exp_enclosure(x, 30);
      EXPECT_LE(mpfr_cmp(e.lo.get(), e.hi.get()), 0);
      const double ref = std::exp(static_cast<double>(num) / static_cast<double>(den));
      EXPECT_NEAR(e.lo.to_double() / ref, 1.0, 1e-12);
      EXPECT_NEAR(e.hi.to_double() / ref, 1.0, 1e-12);
    }
  }
  EXPECT_TRUE(certainly_le(Rational(1), exp_enclosure(Rational(0), 30)));
  EXPECT_FALSE(certainly_le(make_rational(100001, 100000), exp_enclosure(Rational(0), 30)));
  // e = 2.71828182845904523536...; 2718281828459045/10^15 is below, the next is above.
  const Enclosure e1 = exp_enclosure(Rational(1), 40);
  EXPECT_TRUE(certainly_le(make_rational(BigInt("2718281828459045"), BigInt("1000000000000000")), e1));
  EXPECT_FALSE(certainly_le(make_rational(BigInt("2718281828459046"), BigInt("1000000000000000")), e1));
}

TEST(Chernoff, Exponents) {
  EXPECT_EQ(chernoff_upper_exponent(Rational(4), Rational(2)), -4);
  EXPECT_EQ(chernoff_lower_exponent(Rational(4), make_rational(1, 2)), make_rational(-1, 2));
  EXPECT_THROW(chernoff_lower_exponent(Rational(4), Rational(1)), ParamError);
  EXPECT_THROW(chernoff_upper_exponent(Rational(4), Rational(0)), ParamError);
}

TEST(Chernoff, GenericSweepHasNoViolations) {
  const SweepResult s = chernoff_sweep(14);
  EXPECT_GT(s.checked, 1000u);
  EXPECT_EQ(s.violations, 0u) << (s.failures.empty() ? "" : s.failures.front());
}

TEST(SubsetCounts, MatchDirectCounting) {
  for (auto [m, a] : std::vector<std::pair<int, int>>{{6, 2}, {8, 2}, {9, 3}, {10, 4}}) {
    for (int t = 0; t < a; ++t) {
      const SubsetCounts c = subset_counts(m, a, t);
      EXPECT_EQ(c.k, oracle::binom(m, a));
      EXPECT_EQ(c.d, oracle::binom(m - a, a));
      EXPECT_EQ(c.d_prime, oracle::binom(2 * a, a));
      // Fix A = {1..a} inside B = {1..2a}. K_B is every a-subset of B.
      const std::vector<int> A = oracle::subsets(a, a).front();
      const std::vector<int> B = oracle::subsets(2 * a, 2 * a).front();
      long j = 0, kb = 0;
      for (const auto& col : oracle::subsets(m, a)) {
        const bool in_j = oracle::overlap(col, A) > t;
        j += in_j ? 1 : 0;
        kb += (!in_j && oracle::overlap(col, B) == a) ? 1 : 0;
      }
      EXPECT_EQ(c.j_size, j);
      EXPECT_EQ(c.kb_minus_j, kb);
    }
  }
  EXPECT_THROW(subset_counts(6, 2, 2), ParamError);
}

TEST(FixedConstants, IdentitiesHoldExactly) {
  for (const auto& id : constant_identities()) EXPECT_TRUE(id.holds()) << id.name;
}

TEST(FixedConstants, SixtyFourExactValues) {
  const JaBound ja = verify_ja_bound(64);
  EXPECT_EQ(ja.k_over_d, make_rational(oracle::binom(64, 4), oracle::binom(60, 4)));
  // |K_B \ J_A| / d' = Pr[|C cap A| <= 1] for C uniform among 4-subsets of an 8-set.
  const KbBound kb = verify_kb_bound(64);
  EXPECT_EQ(kb.tail, make_rational(17, 70));
  const auto ref = oracle::enumerate_tail(8, 4, 4, 1);
  EXPECT_EQ(kb.tail, make_rational(ref.at_most, ref.total));
  EXPECT_NEAR(ja.k_over_d.get_d(), 1.30297, 1e-5);
  EXPECT_NEAR(ja.tail.get_d(), 0.0170938, 1e-6);
  EXPECT_TRUE(ja.report.all_satisfied());
  EXPECT_TRUE(kb.report.all_satisfied());
}

class FixedM : public ::testing::TestWithParam<long> {};

TEST_P(FixedM, AllInequalitiesSatisfied) {
  const long m = GetParam();
  const JaBound ja = verify_ja_bound(m, 40);
  const KbBound kb = verify_kb_bound(m, 40);
  for (const auto& c : ja.report.comparisons) EXPECT_TRUE(c.satisfied) << m << " " << c.name;
  for (const auto& c : kb.report.comparisons) EXPECT_TRUE(c.satisfied) << m << " " << c.name;
  // |J_A| / d = tail * k / d.
  EXPECT_EQ(ja.ja_over_d, ja.tail * ja.k_over_d);
}

INSTANTIATE_TEST_SUITE_P(Sweep, FixedM, ::testing::Values(64L, 128L, 256L, 512L, 1024L));

TEST(FixedConstants, RejectsBadM) {
  for (long m : {0L, 63L, 65L, -64L}) {
    EXPECT_THROW(verify_ja_bound(m), ParamError);
    EXPECT_THROW(verify_kb_bound(m), ParamError);
    EXPECT_THROW(alpha_asymptotics({m}), ParamError);
  }
}

TEST(Alpha, GrowsWithM) {
  const AlphaReport r = alpha_asymptotics({256, 64, 1024, 128, 512});
  ASSERT_EQ(r.rows.size(), 5u);
  EXPECT_TRUE(r.strictly_increasing);
  EXPECT_TRUE(r.all_above_one);
  EXPECT_EQ(r.rows.front().m, 64);
  EXPECT_EQ(r.rows.front().alpha, make_rational(70, 17));
  for (std::size_t i = 1; i < r.rows.size(); ++i) EXPECT_GT(r.rows[i].alpha, r.rows[i - 1].alpha);
}

}  // namespace
}  // namespace dstgap
