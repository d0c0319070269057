#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>
#include <vector>

#include "sftlab/error.hpp"

namespace sftlab {

using Integer = mpz_class;
using Rational = mpq_class;

inline Rational make_rational(const Integer& num, const Integer& den) {
  Rational q(num, den);
  q.canonicalize();
  return q;
}

/// Always "p/q", including "n/1" for integers.
inline std::string to_fraction_string(const Rational& q) {
  return q.get_num().get_str() + "/" + q.get_den().get_str();
}

inline Rational parse_rational(const std::string& text) {
  Rational q;
  if (text.empty() || q.set_str(text, 10) != 0 || q.get_den() == 0) {
    fail(ErrorCode::Parse, "not a rational number: '" + text + "'");
  }
  q.canonicalize();
  return q;
}

inline Integer floor_of(const Rational& q) {
  Integer r;
  mpz_fdiv_q(r.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
  return r;
}

inline Integer ceil_of(const Rational& q) {
  Integer r;
  mpz_cdiv_q(r.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
  return r;
}

inline Integer pow_integer(const Integer& base, unsigned long exp) {
  Integer r;
  mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), exp);
  return r;
}

inline Rational pow_rational(const Rational& base, unsigned long exp) {
  Rational r(pow_integer(base.get_num(), exp), pow_integer(base.get_den(), exp));
  r.canonicalize();
  return r;
}

inline Rational two_pow(long exp) {
  Integer p = pow_integer(Integer(2), static_cast<unsigned long>(exp < 0 ? -exp : exp));
  return exp < 0 ? make_rational(1, p) : Rational(p);
}

// Outward rounding onto the grid 2^-bits.
inline Rational round_down(const Rational& q, unsigned bits) {
  Integer scale = pow_integer(Integer(2), bits);
  return make_rational(floor_of(q * scale), scale);
}

inline Rational round_up(const Rational& q, unsigned bits) {
  Integer scale = pow_integer(Integer(2), bits);
  return make_rational(ceil_of(q * scale), scale);
}

inline Integer gcd_of(const Integer& a, const Integer& b) {
  Integer g;
  mpz_gcd(g.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return g;
}

inline Integer lcm_of(const Integer& a, const Integer& b) {
  Integer l;
  mpz_lcm(l.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return l;
}

/// Fixed-point decimal rendering, truncated toward zero.
inline std::string to_decimal_string(const Rational& q, int digits = 12) {
  Integer scale = pow_integer(Integer(10), static_cast<unsigned long>(digits));
  Rational scaled = abs(q) * scale;
  Integer n = floor_of(scaled);
  std::string s = n.get_str();
  if (static_cast<int>(s.size()) <= digits) s.insert(0, static_cast<size_t>(digits) + 1 - s.size(), '0');
  s.insert(s.size() - static_cast<size_t>(digits), ".");
  if (q < 0) s.insert(0, "-");
  return s;
}

/// Positive divisors of |n| by trial division; empty when |n| exceeds the cap.
inline std::vector<Integer> positive_divisors(const Integer& n, const Integer& cap = Integer("1000000000000")) {
  Integer m = abs(n);
  if (m == 0 || m > cap) return {};
  std::vector<std::pair<Integer, unsigned>> primes;
  for (Integer p = 2; p * p <= m; ++p) {
    unsigned e = 0;
    while (m % p == 0) {
      m /= p;
      ++e;
    }
    if (e > 0) primes.emplace_back(p, e);
  }
  if (m > 1) primes.emplace_back(m, 1);
  std::vector<Integer> divisors{1};
  for (const auto& [p, e] : primes) {
    size_t existing = divisors.size();
    Integer power = 1;
    for (unsigned k = 1; k <= e; ++k) {
      power *= p;
      for (size_t i = 0; i < existing; ++i) divisors.push_back(divisors[i] * power);
    }
  }
  return divisors;
}

}  // namespace sftlab
