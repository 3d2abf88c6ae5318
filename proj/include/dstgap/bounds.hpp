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

// Closed-form checks of the tail estimates behind the subset family, run on
// binomial coefficients instead of materialized graphs.
//
// With a = rho m (rho = 1/16) and threshold theta m (theta = 1/64), fix an
// a-set A. For a uniform a-set C, |C cap A| is hypergeometric(m, a, a) and
//
//   |J_A| / k      = Pr[|C cap A| > theta m]   <= exp(-9 rho^2 m / 5)
//   k / d          = C(m, a) / C(m - a, a)     <= exp(8 rho^2 m / 7)
//   |J_A| / d      = product of the two        <= exp(-23 rho^2 m / 35)
//
// and for a uniform a-subset C of a 2a-set B containing A, |C cap A| is
// hypergeometric(2a, a, a) and
//
//   |K_B \ J_A| / d' = Pr[|C cap A| <= theta m] <= exp(-m / 256).
//
// Every "exact" value is a rational; every bound is an MPFR enclosure and a
// comparison is reported satisfied only if the exact value is at most the
// lower end of the enclosure.

#include <algorithm>
#include <string>
#include <vector>

#include "dstgap/bigfloat.hpp"
#include "dstgap/error.hpp"
#include "dstgap/rational.hpp"

namespace dstgap {

struct TailQuery {
  long population = 0;  // N
  long successes = 0;   // K
  long draws = 0;       // n
  long threshold = 0;
};

enum class TailDirection { kAbove, kAtLeast, kAtMost };

inline void check_query(const TailQuery& q) {
  if (q.population < 0 || q.successes < 0 || q.draws < 0 || q.successes > q.population ||
      q.draws > q.population) {
    throw ParamError("hypergeometric query needs 0 <= K <= N and 0 <= n <= N");
  }
}

// pmf[i] = Pr[X = i] = C(K, i) C(N - K, n - i) / C(N, n), i = 0..n.
inline std::vector<Rational> hypergeom_pmf(const TailQuery& q) {
  check_query(q);
  const BigInt total = binomial(q.population, q.draws);
  std::vector<Rational> pmf;
  pmf.reserve(static_cast<std::size_t>(q.draws) + 1);
  for (long i = 0; i <= q.draws; ++i) {
    pmf.push_back(make_rational(binomial(q.successes, i) * binomial(q.population - q.successes, q.draws - i), total));
  }
  return pmf;
}

inline Rational hypergeom_tail(const TailQuery& q, TailDirection dir) {
  const auto pmf = hypergeom_pmf(q);
  Rational p = 0;
  for (long i = 0; i < static_cast<long>(pmf.size()); ++i) {
    const bool in = dir == TailDirection::kAbove   ? i > q.threshold
                    : dir == TailDirection::kAtLeast ? i >= q.threshold
                                                     : i <= q.threshold;
    if (in) p += pmf[static_cast<std::size_t>(i)];
  }
  return p;
}

// Exponents of the two negatively-correlated Chernoff bounds.
inline Rational chernoff_upper_exponent(const Rational& mu, const Rational& delta) {
  if (mu < 0 || delta <= 0) throw ParamError("upper Chernoff bound needs mu >= 0 and delta > 0");
  return -(delta * delta * mu) / (2 + delta);
}

inline Rational chernoff_lower_exponent(const Rational& mu, const Rational& delta) {
  if (mu < 0 || delta <= 0 || delta >= 1) throw ParamError("lower Chernoff bound needs mu >= 0 and 0 < delta < 1");
  return -(delta * delta * mu) / 2;
}

// exp(-delta^2 mu / (2 + delta)) bounds Pr[X >= (1 + delta) mu].
inline Enclosure chernoff_upper(const Rational& mu, const Rational& delta, unsigned digits = 50) {
  return exp_enclosure(chernoff_upper_exponent(mu, delta), digits);
}

// exp(-delta^2 mu / 2) bounds Pr[X <= (1 - delta) mu].
inline Enclosure chernoff_lower(const Rational& mu, const Rational& delta, unsigned digits = 50) {
  return exp_enclosure(chernoff_lower_exponent(mu, delta), digits);
}

inline Rational rho() { return make_rational(1, 16); }
inline Rational theta() { return make_rational(1, 64); }

struct Comparison {
  std::string name;
  Rational exact;
  Rational exponent;  // bound = exp(exponent); 0 for the exact-only comparisons
  Enclosure bound;
  bool satisfied = false;
};

inline Comparison compare_to_exp(std::string name, const Rational& exact, const Rational& exponent, unsigned digits) {
  Comparison c{std::move(name), exact, exponent, exp_enclosure(exponent, digits), false};
  c.satisfied = certainly_le(exact, c.bound);
  return c;
}

// Subset-family quantities for general (m, a, thresh), from binomials only.
// Symmetry makes |J_A| the same for every A and |K_B \ J_A| the same for
// every edge (A, B).
struct SubsetCounts {
  BigInt k, d, d_prime, a_count, b_count, n;
  BigInt j_size;        // |J_A|
  BigInt kb_minus_j;    // |K_B \ J_A|
  Rational alpha;       // min(d/|J_A|, d'/|K_B \ J_A|) over the non-vacuous terms
};

inline SubsetCounts subset_counts(long m, long a, long thresh) {
  if (a < 1 || 2 * a > m || thresh < 0 || thresh >= a) throw ParamError("need 1 <= a, 2a <= m, 0 <= thresh < a");
  SubsetCounts c;
  c.k = c.a_count = binomial(m, a);
  c.b_count = binomial(m, 2 * a);
  c.d = binomial(m - a, a);
  c.d_prime = binomial(2 * a, a);
  c.n = 1 + c.a_count + 2 * c.b_count + c.k;
  c.j_size = 0;
  for (long i = thresh + 1; i <= a; ++i) c.j_size += binomial(a, i) * binomial(m - a, a - i);
  c.kb_minus_j = 0;
  for (long i = 0; i <= thresh; ++i) c.kb_minus_j += binomial(a, i) * binomial(a, a - i);
  bool have = false;
  auto lower = [&](const Rational& q) {
    if (!have || q < c.alpha) c.alpha = q;
    have = true;
  };
  if (c.j_size > 0) lower(make_rational(c.d, c.j_size));
  if (c.kb_minus_j > 0) lower(make_rational(c.d_prime, c.kb_minus_j));
  return c;
}

inline void check_fixed_m(long m) {
  if (m <= 0 || m % 64 != 0) {
    throw ParamError("m must be a positive multiple of 64 (got " + std::to_string(m) + ")");
  }
}

struct TailReport {
  long m = 0;
  std::vector<Comparison> comparisons;

  bool all_satisfied() const {
    return std::all_of(comparisons.begin(), comparisons.end(), [](const Comparison& c) { return c.satisfied; });
  }
  const Comparison& at(const std::string& name) const {
    for (const auto& c : comparisons) {
      if (c.name == name) return c;
    }
    throw InputError("no comparison named " + name);
  }
};

struct JaBound {
  TailReport report;
  Rational tail;        // Pr[|C cap A| > theta m]
  Rational k_over_d;
  Rational ja_over_d;   // |J_A| / d
};

inline JaBound verify_ja_bound(long m, unsigned digits = 50) {
  check_fixed_m(m);
  const long a = m / 16, thr = m / 64;
  const Rational r2m = rho() * rho() * m;
  JaBound out;
  out.report.m = m;
  out.tail = hypergeom_tail(TailQuery{m, a, a, thr}, TailDirection::kAbove);
  out.k_over_d = make_rational(binomial(m, a), binomial(m - a, a));
  out.ja_over_d = out.tail * out.k_over_d;

  auto& cs = out.report.comparisons;
  cs.push_back(compare_to_exp("ja_over_d", out.ja_over_d, -make_rational(23, 35) * r2m, digits));
  cs.push_back(compare_to_exp("tail_ja", out.tail, -make_rational(9, 5) * r2m, digits));
  cs.push_back(compare_to_exp("k_over_d", out.k_over_d, make_rational(8, 7) * r2m, digits));

  // Chernoff upper form: Pr[X >= (1 + delta) mu] with mu = rho^2 m, (1 + delta) mu = theta m.
  const Rational mu = r2m;
  const Rational delta = theta() * m / mu - 1;
  const Rational at_least = hypergeom_tail(TailQuery{m, a, a, thr}, TailDirection::kAtLeast);
  cs.push_back(compare_to_exp("chernoff_upper_ja", at_least, chernoff_upper_exponent(mu, delta), digits));

  // k/d <= ((1 - rho)/(1 - 2 rho))^(rho m), compared exactly.
  Rational ratio_pow = 1;
  const Rational ratio = (1 - rho()) / (1 - 2 * rho());
  for (long i = 0; i < a; ++i) ratio_pow *= ratio;
  Comparison exact_cmp{"k_over_d_product", out.k_over_d, Rational(0), exp_enclosure(Rational(0), digits), out.k_over_d <= ratio_pow};
  cs.push_back(std::move(exact_cmp));

  // |J_A| counted directly must agree with the tail probability.
  const SubsetCounts sc = subset_counts(m, a, thr);
  Comparison count_cmp{"ja_count_consistent", make_rational(sc.j_size, sc.k), Rational(0),
                       exp_enclosure(Rational(0), digits), make_rational(sc.j_size, sc.k) == out.tail};
  cs.push_back(std::move(count_cmp));
  return out;
}

struct KbBound {
  TailReport report;
  Rational tail;  // |K_B \ J_A| / d' = Pr[|C cap A| <= theta m]
};

inline KbBound verify_kb_bound(long m, unsigned digits = 50) {
  check_fixed_m(m);
  const long a = m / 16, thr = m / 64;
  KbBound out;
  out.report.m = m;
  out.tail = hypergeom_tail(TailQuery{2 * a, a, a, thr}, TailDirection::kAtMost);
  auto& cs = out.report.comparisons;
  cs.push_back(compare_to_exp("kb_over_d_prime", out.tail, make_rational(-m, 256), digits));
  // Chernoff lower form with mu = a/2 and delta = 1/2.
  cs.push_back(compare_to_exp("chernoff_lower_kb", out.tail,
                              chernoff_lower_exponent(make_rational(a, 2), make_rational(1, 2)), digits));
  const SubsetCounts sc = subset_counts(m, a, thr);
  Comparison count_cmp{"kb_count_consistent", make_rational(sc.kb_minus_j, sc.d_prime), Rational(0),
                       exp_enclosure(Rational(0), digits), make_rational(sc.kb_minus_j, sc.d_prime) == out.tail};
  cs.push_back(std::move(count_cmp));
  return out;
}

struct AlphaRow {
  long m = 0;
  Rational alpha;
  double log_alpha_over_m = 0;
  double log_n_over_m = 0;
  SubsetCounts counts;
};

struct AlphaReport {
  std::vector<AlphaRow> rows;  // sorted by m
  bool strictly_increasing = true;
  bool all_above_one = true;
};

inline AlphaReport alpha_asymptotics(std::vector<long> m_list) {
  for (long m : m_list) check_fixed_m(m);
  std::sort(m_list.begin(), m_list.end());
  m_list.erase(std::unique(m_list.begin(), m_list.end()), m_list.end());
  AlphaReport rep;
  for (long m : m_list) {
    AlphaRow row;
    row.m = m;
    row.counts = subset_counts(m, m / 16, m / 64);
    row.alpha = row.counts.alpha;
    row.log_alpha_over_m = log_of(row.alpha) / static_cast<double>(m);
    row.log_n_over_m = log_of(row.counts.n) / static_cast<double>(m);
    if (!rep.rows.empty() && !(row.alpha > rep.rows.back().alpha)) rep.strictly_increasing = false;
    if (!(row.alpha > 1)) rep.all_above_one = false;
    rep.rows.push_back(std::move(row));
  }
  return rep;
}

struct Identity {
  std::string name;
  Rational lhs;
  Rational rhs;
  bool holds() const { return lhs == rhs; }
};

// The constant arithmetic used when the two tail estimates are folded into
// closed forms, evaluated at rho = 1/16, theta = 1/64.
inline std::vector<Identity> constant_identities() {
  const Rational r = rho(), t = theta(), r2 = r * r;
  const Rational delta_up = t / r2 - 1;
  return {
      {"theta = 4 rho^2", t, 4 * r2},
      {"theta = rho / 4", t, r / 4},
      {"(theta - rho^2)/(theta + rho^2) (theta - rho^2) = 9 rho^2 / 5", (t - r2) / (t + r2) * (t - r2),
       make_rational(9, 5) * r2},
      {"delta^2/(2 + delta) rho^2 = 9 rho^2 / 5 at delta = theta/rho^2 - 1",
       delta_up * delta_up / (2 + delta_up) * r2, make_rational(9, 5) * r2},
      {"rho^2 / (1 - 2 rho) = 8 rho^2 / 7", r2 / (1 - 2 * r), make_rational(8, 7) * r2},
      {"9/5 - 8/7 = 23/35", make_rational(9, 5) - make_rational(8, 7), make_rational(23, 35)},
      {"(1/2)^2 / 2 * (rho / 2) = rho / 16", make_rational(1, 4) / 2 * (r / 2), r / 16},
      {"rho / 16 = 1/256", r / 16, make_rational(1, 256)},
      {"mu = rho m / 2 = 2 theta m", r / 2, 2 * t},
  };
}

struct SweepResult {
  std::size_t checked = 0;
  std::size_t violations = 0;
  std::vector<std::string> failures;
};

// Both Chernoff forms against exact hypergeometric tails for every
// (N, K, n) with N <= max_population and every integer threshold on the
// right side of the mean.
inline SweepResult chernoff_sweep(long max_population, unsigned digits = 30) {
  SweepResult out;
  for (long N = 1; N <= max_population; ++N) {
    for (long K = 1; K <= N; ++K) {
      for (long n = 1; n <= N; ++n) {
        const Rational mu = make_rational(K * n, N);
        const auto pmf = hypergeom_pmf(TailQuery{N, K, n, 0});
        for (long t = 0; t <= n; ++t) {
          Rational at_least = 0, at_most = 0;
          for (long i = 0; i <= n; ++i) {
            if (i >= t) at_least += pmf[static_cast<std::size_t>(i)];
            if (i <= t) at_most += pmf[static_cast<std::size_t>(i)];
          }
          if (t > mu) {
            const Rational delta = t / mu - 1;
            ++out.checked;
            if (!certainly_le(at_least, chernoff_upper(mu, delta, digits))) {
              ++out.violations;
              out.failures.push_back("upper N=" + std::to_string(N) + " K=" + std::to_string(K) +
                                     " n=" + std::to_string(n) + " t=" + std::to_string(t));
            }
          }
          if (t < mu && t > 0) {
            const Rational delta = 1 - t / mu;
            ++out.checked;
            if (!certainly_le(at_most, chernoff_lower(mu, delta, digits))) {
              ++out.violations;
              out.failures.push_back("lower N=" + std::to_string(N) + " K=" + std::to_string(K) +
                                     " n=" + std::to_string(n) + " t=" + std::to_string(t));
            }
          }
        }
      }
    }
  }
  return out;
}

}  // namespace dstgap
