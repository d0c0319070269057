#pragma once

#include <algorithm>
#include <string>

#include "sftlab/numeric.hpp"
#include "sftlab/polynomial.hpp"

namespace sftlab {

/// Closed interval [lo, hi] with exact rational endpoints.
struct RationalInterval {
  Rational lo;
  Rational hi;

  RationalInterval() = default;
  RationalInterval(Rational l, Rational h) : lo(std::move(l)), hi(std::move(h)) {
    if (hi < lo) fail(ErrorCode::CertificateFailure, "interval with lo > hi");
  }
  static RationalInterval point(const Rational& q) { return {q, q}; }

  Rational width() const { return hi - lo; }
  Rational midpoint() const { return (lo + hi) / 2; }
  bool contains(const Rational& q) const { return lo <= q && q <= hi; }
  bool contains(const RationalInterval& o) const { return lo <= o.lo && o.hi <= hi; }
  bool intersects(const RationalInterval& o) const { return !(hi < o.lo || o.hi < lo); }
  bool is_point() const { return lo == hi; }

  friend RationalInterval operator+(const RationalInterval& a, const RationalInterval& b) {
    return {a.lo + b.lo, a.hi + b.hi};
  }
  friend RationalInterval operator-(const RationalInterval& a, const RationalInterval& b) {
    return {a.lo - b.hi, a.hi - b.lo};
  }
  friend RationalInterval operator*(const RationalInterval& a, const RationalInterval& b) {
    Rational c[4] = {a.lo * b.lo, a.lo * b.hi, a.hi * b.lo, a.hi * b.hi};
    return {*std::min_element(c, c + 4), *std::max_element(c, c + 4)};
  }
  friend RationalInterval operator*(const Rational& s, const RationalInterval& a) {
    return s >= 0 ? RationalInterval{s * a.lo, s * a.hi} : RationalInterval{s * a.hi, s * a.lo};
  }
  friend bool operator==(const RationalInterval& a, const RationalInterval& b) { return a.lo == b.lo && a.hi == b.hi; }

  RationalInterval inflate(const Rational& eps) const { return {lo - eps, hi + eps}; }
  RationalInterval hull(const RationalInterval& o) const { return {std::min(lo, o.lo), std::max(hi, o.hi)}; }

  std::string to_string(int digits = 12) const {
    return "[" + to_decimal_string(lo, digits) + ", " + to_decimal_string(hi, digits) + "]";
  }
};

inline RationalInterval max_of(const RationalInterval& a, const RationalInterval& b) {
  return {std::max(a.lo, b.lo), std::max(a.hi, b.hi)};
}

/// Interval extension of p over [x.lo, x.hi] by Horner's rule.
template <typename T>
RationalInterval evaluate(const Polynomial<T>& p, const RationalInterval& x) {
  RationalInterval acc = RationalInterval::point(0);
  const auto& c = p.coefficients();
  for (auto it = c.rbegin(); it != c.rend(); ++it) acc = acc * x + RationalInterval::point(Rational(*it));
  return acc;
}

namespace detail {

// Enclosure of atanh(s) for |s| <= 1/3, rounded outward on the grid 2^-bits.
inline RationalInterval atanh_enclosure(const Rational& s, unsigned bits) {
  Rational lo = 0, hi = 0;
  Rational s2 = s * s;
  Rational power = s;
  Rational tol = two_pow(-static_cast<long>(bits) - 4);
  for (long k = 0;; ++k) {
    Rational term = power / (2 * k + 1);
    lo += round_down(term, bits + 8);
    hi += round_up(term, bits + 8);
    power *= s2;
    // remaining tail is bounded by |s|^(2k+3) / ((2k+3)(1 - s^2))
    Rational tail = abs(power) / ((2 * k + 3) * (1 - s2));
    if (tail < tol) {
      lo -= tail;
      hi += tail;
      break;
    }
  }
  return {round_down(lo, bits), round_up(hi, bits)};
}

inline RationalInterval ln2_enclosure(unsigned bits) {
  RationalInterval a = detail::atanh_enclosure(Rational(1, 3), bits + 4);
  return {round_down(2 * a.lo, bits), round_up(2 * a.hi, bits)};
}

// Enclosure of ln(q) for rational q > 0.
inline RationalInterval ln_enclosure(const Rational& q, unsigned bits) {
  if (q <= 0) fail(ErrorCode::CertificateFailure, "logarithm of a non-positive number");
  if (q == 1) return RationalInterval::point(0);
  long k = static_cast<long>(mpz_sizeinbase(q.get_num_mpz_t(), 2)) - static_cast<long>(mpz_sizeinbase(q.get_den_mpz_t(), 2));
  Rational r = q / two_pow(k);
  while (r >= 2) {
    r /= 2;
    ++k;
  }
  while (r < 1) {
    r *= 2;
    --k;
  }
  if (r > Rational(4, 3)) {
    r /= 2;
    ++k;
  }
  Rational s = (r - 1) / (r + 1);
  unsigned inner = bits + 8 + static_cast<unsigned>(mpz_sizeinbase(Integer(k < 0 ? -k : k).get_mpz_t(), 2));
  RationalInterval a = atanh_enclosure(s, inner);
  RationalInterval l2 = ln2_enclosure(inner);
  RationalInterval res = Rational(2) * a + Rational(k) * l2;
  return {round_down(res.lo, bits), round_up(res.hi, bits)};
}

}  // namespace detail

/// Certified enclosure of ln over a positive interval (ln is increasing).
inline RationalInterval log_interval(const RationalInterval& x, unsigned bits = 72) {
  if (x.lo <= 0) fail(ErrorCode::CertificateFailure, "logarithm of an interval touching zero");
  RationalInterval lo = detail::ln_enclosure(x.lo, bits);
  RationalInterval hi = x.is_point() ? lo : detail::ln_enclosure(x.hi, bits);
  return {lo.lo, hi.hi};
}

}  // namespace sftlab
