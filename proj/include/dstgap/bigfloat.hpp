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

// Thin RAII wrapper over MPFR plus enclosures [lo, hi] of exp(q) for exact
// rational q. lo and hi are computed with downward and upward rounding at
// every step, so lo <= exp(q) <= hi holds rigorously.

#include <mpfr.h>

#include <cmath>
#include <string>
#include <vector>

#include "dstgap/error.hpp"
#include "dstgap/rational.hpp"

namespace dstgap {

class BigFloat {
 public:
  explicit BigFloat(mpfr_prec_t prec) { mpfr_init2(v_, prec); }
  BigFloat(const BigFloat& o) {
    mpfr_init2(v_, mpfr_get_prec(o.v_));
    mpfr_set(v_, o.v_, MPFR_RNDN);
  }
  BigFloat& operator=(const BigFloat& o) {
    if (this != &o) {
      mpfr_set_prec(v_, mpfr_get_prec(o.v_));
      mpfr_set(v_, o.v_, MPFR_RNDN);
    }
    return *this;
  }
  ~BigFloat() { mpfr_clear(v_); }

  mpfr_ptr get() { return v_; }
  mpfr_srcptr get() const { return v_; }

  // Scientific notation with `digits` significant digits, rounded per `rnd`.
  std::string str(int digits = 12, mpfr_rnd_t rnd = MPFR_RNDN) const {
    const char* fmt = rnd == MPFR_RNDD ? "%.*RDe" : rnd == MPFR_RNDU ? "%.*RUe" : "%.*RNe";
    const int len = mpfr_snprintf(nullptr, 0, fmt, digits - 1, v_);
    std::string out(static_cast<std::size_t>(len) + 1, '\0');
    mpfr_snprintf(out.data(), out.size(), fmt, digits - 1, v_);
    out.resize(static_cast<std::size_t>(len));
    return out;
  }

  double to_double() const { return mpfr_get_d(v_, MPFR_RNDN); }

 private:
  mpfr_t v_;
};

inline mpfr_prec_t bits_for_digits(unsigned digits) {
  return static_cast<mpfr_prec_t>(std::ceil(digits * 3.3219280948873623)) + 16;
}

struct Enclosure {
  BigFloat lo;
  BigFloat hi;
};

inline Enclosure exp_enclosure(const Rational& x, unsigned digits) {
  const mpfr_prec_t prec = bits_for_digits(digits);
  Enclosure e{BigFloat(prec), BigFloat(prec)};
  // exp is increasing: round the argument the same way as the result.
  mpfr_set_q(e.lo.get(), x.get_mpq_t(), MPFR_RNDD);
  mpfr_exp(e.lo.get(), e.lo.get(), MPFR_RNDD);
  mpfr_set_q(e.hi.get(), x.get_mpq_t(), MPFR_RNDU);
  mpfr_exp(e.hi.get(), e.hi.get(), MPFR_RNDU);
  return e;
}

// q <= value for every value in the enclosure, hence q <= the true value.
inline bool certainly_le(const Rational& q, const Enclosure& e) {
  return mpfr_cmp_q(e.lo.get(), q.get_mpq_t()) >= 0;
}

inline std::string decimal(const Rational& q, int digits = 12) {
  BigFloat f(bits_for_digits(static_cast<unsigned>(digits) + 10));
  mpfr_set_q(f.get(), q.get_mpq_t(), MPFR_RNDN);
  return f.str(digits);
}

// Natural log of a positive integer, for reporting only.
inline double log_of(const BigInt& z) {
  if (z <= 0) throw ParamError("log of a non-positive number");
  BigFloat f(128);
  mpfr_set_z(f.get(), z.get_mpz_t(), MPFR_RNDN);
  mpfr_log(f.get(), f.get(), MPFR_RNDN);
  return f.to_double();
}

inline double log_of(const Rational& q) {
  if (q <= 0) throw ParamError("log of a non-positive number");
  BigFloat f(256);
  mpfr_set_q(f.get(), q.get_mpq_t(), MPFR_RNDN);
  mpfr_log(f.get(), f.get(), MPFR_RNDN);
  return f.to_double();
}

}  // namespace dstgap
