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

// Exact arithmetic used by every cost, flow and probability in the library.
// Rational is GMP's mpq_class: always canonical after arithmetic, and
// canonicalized explicitly whenever it is built from a numerator/denominator
// pair.

#include <gmpxx.h>

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>

#include "dstgap/error.hpp"

namespace dstgap {

using BigInt = mpz_class;
using Rational = mpq_class;

inline Rational make_rational(const BigInt& num, const BigInt& den) {
  if (den == 0) throw InputError("rational with zero denominator");
  Rational q(num, den);
  q.canonicalize();
  return q;
}

inline Rational make_rational(long num, long den = 1) {
  return make_rational(BigInt(num), BigInt(den));
}

// Always "num/den", including integers ("3/1") and zero ("0/1").
inline std::string to_string(const Rational& q) {
  return q.get_num().get_str() + "/" + q.get_den().get_str();
}

inline std::string to_string(const BigInt& z) { return z.get_str(); }

// Accepts "num/den" or a bare integer. Whitespace is not allowed.
inline Rational parse_rational(std::string_view text) {
  auto parse_int = [&](std::string_view part) {
    if (part.empty()) throw InputError("malformed rational '" + std::string(text) + "'");
    std::size_t i = (part[0] == '-' || part[0] == '+') ? 1 : 0;
    if (i == part.size()) throw InputError("malformed rational '" + std::string(text) + "'");
    for (; i < part.size(); ++i) {
      if (part[i] < '0' || part[i] > '9') {
        throw InputError("malformed rational '" + std::string(text) + "'");
      }
    }
    std::string s(part);
    if (s[0] == '+') s.erase(0, 1);
    return BigInt(s, 10);
  };
  const auto slash = text.find('/');
  if (slash == std::string_view::npos) return Rational(parse_int(text));
  const BigInt den = parse_int(text.substr(slash + 1));
  if (den <= 0) throw InputError("rational denominator must be positive: '" + std::string(text) + "'");
  return make_rational(parse_int(text.substr(0, slash)), den);
}

inline BigInt binomial(unsigned long n, unsigned long r) {
  BigInt out;
  if (r > n) return BigInt(0);
  mpz_bin_uiui(out.get_mpz_t(), n, r);
  return out;
}

inline BigInt binomial(long n, long r) {
  if (n < 0 || r < 0 || r > n) return BigInt(0);
  return binomial(static_cast<unsigned long>(n), static_cast<unsigned long>(r));
}

inline BigInt binomial(int n, int r) { return binomial(static_cast<long>(n), static_cast<long>(r)); }

inline BigInt lcm(const BigInt& a, const BigInt& b) {
  BigInt out;
  mpz_lcm(out.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return out;
}

inline BigInt ceil_div(const BigInt& a, const BigInt& b) {
  BigInt out;
  mpz_cdiv_q(out.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return out;
}

inline double to_double(const Rational& q) { return q.get_d(); }

}  // namespace dstgap
