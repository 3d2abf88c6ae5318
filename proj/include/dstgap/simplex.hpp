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

// Two-phase tableau simplex over exact rationals.
//
// Problem form:  min c^T x  s.t.  a_i^T x (<=, =, >=) b_i,  x >= 0.
//
// Duals follow the convention of the Lagrangian c^T x - y^T (Ax - b):
// the dual is  max b^T y  s.t.  A^T y <= c,  with y_i <= 0 on <= rows,
// y_i >= 0 on >= rows and y_i free on equality rows. check_certificate()
// re-verifies primal feasibility, dual feasibility and equal objectives from
// the original sparse data, independently of the tableau.

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "dstgap/error.hpp"
#include "dstgap/rational.hpp"

namespace dstgap {

enum class Sense { kLe, kEq, kGe };

struct LpRow {
  std::vector<std::pair<std::size_t, Rational>> terms;
  Sense sense = Sense::kEq;
  Rational rhs;
  std::string name;
};

struct LinearProgram {
  std::size_t num_vars = 0;
  std::vector<Rational> objective;  // minimized; size num_vars
  std::vector<LpRow> rows;
};

enum class PivotRule {
  kBland,
  // Most negative reduced cost with lexicographic tie-breaking in the ratio
  // test. A long run of degenerate pivots still switches to Bland for the
  // rest of the solve, which keeps the anti-cycling guarantee even after
  // artificials were driven out.
  kDantzigThenBland,
};

struct SimplexOptions {
  PivotRule rule = PivotRule::kDantzigThenBland;
  std::size_t degenerate_run_limit = 5000;
  std::size_t max_cells = 2'000'000;  // tableau rows * columns
};

enum class LpStatus { kOptimal, kInfeasible, kUnbounded };

struct SimplexResult {
  LpStatus status = LpStatus::kOptimal;
  Rational objective;
  std::vector<Rational> x;  // primal, size num_vars
  std::vector<Rational> y;  // dual, one per row
  std::size_t pivots = 0;
};

struct CertificateCheck {
  bool primal_feasible = false;
  bool dual_feasible = false;
  bool objectives_equal = false;
  Rational primal_objective;
  Rational dual_objective;
  std::string failure;

  bool ok() const { return primal_feasible && dual_feasible && objectives_equal; }
};

inline CertificateCheck check_certificate(const LinearProgram& lp, const std::vector<Rational>& x,
                                          const std::vector<Rational>& y) {
  CertificateCheck out;
  if (x.size() != lp.num_vars || y.size() != lp.rows.size()) {
    out.failure = "certificate has the wrong dimensions";
    return out;
  }
  out.primal_feasible = true;
  for (std::size_t j = 0; j < x.size(); ++j) {
    if (x[j] < 0) {
      out.primal_feasible = false;
      out.failure = "x[" + std::to_string(j) + "] < 0";
    }
  }
  std::vector<Rational> aty(lp.num_vars);
  out.dual_objective = 0;
  out.dual_feasible = true;
  for (std::size_t i = 0; i < lp.rows.size(); ++i) {
    const auto& row = lp.rows[i];
    Rational lhs = 0;
    for (const auto& [j, a] : row.terms) {
      lhs += a * x[j];
      aty[j] += a * y[i];
    }
    const bool row_ok = row.sense == Sense::kLe ? lhs <= row.rhs : row.sense == Sense::kGe ? lhs >= row.rhs : lhs == row.rhs;
    if (!row_ok) {
      out.primal_feasible = false;
      out.failure = "row " + row.name + " violated";
    }
    if ((row.sense == Sense::kLe && y[i] > 0) || (row.sense == Sense::kGe && y[i] < 0)) {
      out.dual_feasible = false;
      out.failure = "dual of row " + row.name + " has the wrong sign";
    }
    out.dual_objective += row.rhs * y[i];
  }
  out.primal_objective = 0;
  for (std::size_t j = 0; j < lp.num_vars; ++j) {
    out.primal_objective += lp.objective[j] * x[j];
    if (aty[j] > lp.objective[j]) {
      out.dual_feasible = false;
      out.failure = "reduced cost of column " + std::to_string(j) + " is negative";
    }
  }
  out.objectives_equal = out.primal_objective == out.dual_objective;
  if (!out.objectives_equal && out.failure.empty()) out.failure = "primal and dual objectives differ";
  return out;
}

namespace detail {

class Tableau {
 public:
  Tableau(const LinearProgram& lp, const SimplexOptions& opt) : lp_(lp), opt_(opt) {
    const std::size_t m = lp.rows.size();
    n_ = lp.num_vars;
    sign_.assign(m, 1);
    std::size_t slacks = 0, arts = 0;
    for (const auto& row : lp.rows) {
      if (row.sense != Sense::kEq) ++slacks;
    }
    // Columns: structural | slacks | artificials | rhs.
    std::vector<int> slack_sign(m, 0);
    for (std::size_t i = 0; i < m; ++i) {
      const auto& row = lp.rows[i];
      if (row.rhs < 0) sign_[i] = -1;
      if (row.sense == Sense::kLe) slack_sign[i] = 1;
      if (row.sense == Sense::kGe) slack_sign[i] = -1;
      if (slack_sign[i] * sign_[i] != 1) ++arts;
    }
    art_begin_ = n_ + slacks;
    cols_ = art_begin_ + arts;
    if ((m + 1) * (cols_ + 1) > opt.max_cells) {
      throw CapExceeded("simplex tableau would have " + std::to_string((m + 1) * (cols_ + 1)) +
                        " cells, cap is " + std::to_string(opt.max_cells));
    }
    rhs_col_ = cols_;
    t_.assign(m, std::vector<Rational>(cols_ + 1));
    basis_.assign(m, 0);
    unit_col_.assign(m, 0);
    std::size_t next_slack = n_, next_art = art_begin_;
    for (std::size_t i = 0; i < m; ++i) {
      const auto& row = lp.rows[i];
      for (const auto& [j, a] : row.terms) {
        if (j >= n_) throw InputError("LP row " + row.name + " references a missing column");
        t_[i][j] += sign_[i] * a;
      }
      t_[i][rhs_col_] = sign_[i] * row.rhs;
      if (slack_sign[i] != 0) {
        t_[i][next_slack] = slack_sign[i] * sign_[i];
        if (slack_sign[i] * sign_[i] == 1) {
          basis_[i] = unit_col_[i] = next_slack;
        }
        ++next_slack;
      }
      if (slack_sign[i] * sign_[i] != 1) {
        t_[i][next_art] = 1;
        basis_[i] = unit_col_[i] = next_art;
        ++next_art;
      }
    }
  }

  SimplexResult solve() {
    SimplexResult out;
    // Phase I: minimize the sum of artificials.
    std::vector<Rational> cost(cols_);
    for (std::size_t j = art_begin_; j < cols_; ++j) cost[j] = 1;
    price(cost);
    if (!iterate()) throw InternalError("phase I reported unbounded");
    if (-obj_[rhs_col_] > 0) {
      out.status = LpStatus::kInfeasible;
      out.pivots = pivots_;
      return out;
    }
    drive_out_artificials();

    std::fill(cost.begin(), cost.end(), Rational(0));
    for (std::size_t j = 0; j < n_; ++j) cost[j] = lp_.objective[j];
    price(cost);
    if (!iterate()) {
      out.status = LpStatus::kUnbounded;
      out.pivots = pivots_;
      return out;
    }

    out.status = LpStatus::kOptimal;
    out.pivots = pivots_;
    out.x.assign(n_, Rational(0));
    for (std::size_t i = 0; i < basis_.size(); ++i) {
      if (basis_[i] < n_) out.x[basis_[i]] = t_[i][rhs_col_];
    }
    out.y.resize(basis_.size());
    for (std::size_t i = 0; i < basis_.size(); ++i) out.y[i] = -obj_[unit_col_[i]] * sign_[i];
    out.objective = 0;
    for (std::size_t j = 0; j < n_; ++j) out.objective += lp_.objective[j] * out.x[j];
    return out;
  }

 private:
  void price(const std::vector<Rational>& cost) {
    obj_.assign(cols_ + 1, Rational(0));
    for (std::size_t j = 0; j < cols_; ++j) obj_[j] = cost[j];
    for (std::size_t i = 0; i < basis_.size(); ++i) {
      const Rational& cb = cost[basis_[i]];
      if (sgn(cb) == 0) continue;
      for (std::size_t j = 0; j <= cols_; ++j) {
        if (sgn(t_[i][j]) != 0) obj_[j] -= cb * t_[i][j];
      }
    }
  }

  // Returns false on an unbounded ray.
  bool iterate() {
    bool bland = opt_.rule == PivotRule::kBland;
    std::size_t degenerate_run = 0;
    for (;;) {
      std::size_t enter = cols_;
      for (std::size_t j = 0; j < art_begin_; ++j) {
        if (sgn(obj_[j]) >= 0) continue;
        if (bland) {
          enter = j;
          break;
        }
        if (enter == cols_ || obj_[j] < obj_[enter]) enter = j;
      }
      if (enter == cols_) return true;

      std::size_t leave = basis_.size();
      Rational best_ratio;
      for (std::size_t i = 0; i < basis_.size(); ++i) {
        if (sgn(t_[i][enter]) <= 0) continue;
        Rational ratio = t_[i][rhs_col_] / t_[i][enter];
        const int cmp = leave == basis_.size() ? -1 : cmp_ratio(ratio, best_ratio);
        if (cmp < 0 || (cmp == 0 && tie_wins(i, leave, enter, bland))) {
          leave = i;
          best_ratio = std::move(ratio);
        }
      }
      if (leave == basis_.size()) return false;
      if (sgn(best_ratio) == 0) {
        if (++degenerate_run > opt_.degenerate_run_limit) bland = true;
      } else {
        degenerate_run = 0;
      }
      pivot(leave, enter);
    }
  }

  static int cmp_ratio(const Rational& a, const Rational& b) { return cmp(a, b); }

  // Tie in the ratio test: Bland takes the smallest basic index, otherwise
  // the row whose (initial unit columns / entering entry) is lex smaller.
  bool tie_wins(std::size_t i, std::size_t cur, std::size_t enter, bool bland) const {
    if (!bland) {
      for (std::size_t k : unit_col_) {
        const Rational a = t_[i][k] / t_[i][enter];
        const Rational b = t_[cur][k] / t_[cur][enter];
        if (a != b) return a < b;
      }
    }
    return basis_[i] < basis_[cur];
  }

  void pivot(std::size_t r, std::size_t c) {
    ++pivots_;
    auto& prow = t_[r];
    const Rational piv = prow[c];
    std::vector<std::size_t> nz;
    for (std::size_t j = 0; j <= cols_; ++j) {
      if (sgn(prow[j]) != 0) {
        prow[j] /= piv;
        nz.push_back(j);
      }
    }
    Rational tmp;
    auto eliminate = [&](std::vector<Rational>& row) {
      if (sgn(row[c]) == 0) return;
      const Rational f = row[c];
      for (std::size_t j : nz) {
        mpq_mul(tmp.get_mpq_t(), f.get_mpq_t(), prow[j].get_mpq_t());
        mpq_sub(row[j].get_mpq_t(), row[j].get_mpq_t(), tmp.get_mpq_t());
      }
    };
    for (std::size_t i = 0; i < t_.size(); ++i) {
      if (i != r) eliminate(t_[i]);
    }
    eliminate(obj_);
    basis_[r] = c;
  }

  void drive_out_artificials() {
    for (std::size_t i = 0; i < basis_.size(); ++i) {
      if (basis_[i] < art_begin_) continue;
      for (std::size_t j = 0; j < art_begin_; ++j) {
        if (sgn(t_[i][j]) != 0) {
          pivot(i, j);
          break;
        }
      }
      // A row with no structural or slack entry left is redundant; its
      // artificial stays basic at zero and never re-enters the pricing.
    }
  }

  const LinearProgram& lp_;
  SimplexOptions opt_;
  std::size_t n_ = 0, cols_ = 0, art_begin_ = 0, rhs_col_ = 0;
  std::vector<int> sign_;
  std::vector<std::vector<Rational>> t_;
  std::vector<Rational> obj_;
  std::vector<std::size_t> basis_;
  std::vector<std::size_t> unit_col_;
  std::size_t pivots_ = 0;
};

}  // namespace detail

inline SimplexResult solve_simplex(const LinearProgram& lp, const SimplexOptions& opt = {}) {
  if (lp.objective.size() != lp.num_vars) throw InputError("objective length differs from num_vars");
  detail::Tableau tab(lp, opt);
  return tab.solve();
}

}  // namespace dstgap
