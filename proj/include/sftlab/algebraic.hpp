#pragma once

#include <string>
#include <vector>

#include "sftlab/interval.hpp"
#include "sftlab/polynomial.hpp"

namespace sftlab {

/// A real root of a squarefree integer polynomial, isolated in [lo, hi]: either lo == hi is
/// the root itself, or the polynomial changes sign strictly between lo and hi.
struct RealRoot {
  IntPolynomial poly;
  RationalInterval interval;

  void refine() {
    if (interval.is_point()) return;
    Rational mid = interval.midpoint();
    int sm = sign_of(poly.evaluate(mid));
    if (sm == 0) {
      interval = RationalInterval::point(mid);
      return;
    }
    int slo = sign_of(poly.evaluate(interval.lo));
    if (sm == slo)
      interval.lo = mid;
    else
      interval.hi = mid;
  }

  void refine_to(const Rational& width) {
    while (interval.width() > width) refine();
  }
};

/// Largest real root of a squarefree polynomial known to lie in (lo, hi].
inline RealRoot isolate_largest_root(const IntPolynomial& squarefree, Rational lo, Rational hi) {
  SturmSequence sturm(squarefree);
  if (sturm.count_above(hi) != 0) fail(ErrorCode::CertificateFailure, "root bound violated");
  if (sturm.count_in(lo, hi) < 1) fail(ErrorCode::CertificateFailure, "no real root in the bracketing interval");
  if (squarefree.evaluate(hi) == 0) return {squarefree, RationalInterval::point(hi)};
  // Invariant: the largest root lies in (lo, hi) and hi is not a root.
  while (sturm.count_in(lo, hi) > 1 || squarefree.evaluate(lo) == 0) {
    Rational mid = (lo + hi) / 2;
    int above = sturm.count_in(mid, hi);
    if (above == 0 && squarefree.evaluate(mid) == 0) return {squarefree, RationalInterval::point(mid)};
    if (above >= 1)
      lo = mid;
    else
      hi = mid;
  }
  return {squarefree, {lo, hi}};
}

/// Element of Q[x]/(modulus) evaluated at a chosen real root of the modulus.
struct AlgebraicNumber {
  RealRoot root;             // root.poly is the modulus
  RatPolynomial representative;  // degree < deg modulus

  const IntPolynomial& modulus() const { return root.poly; }
  bool is_zero() const { return representative.is_zero(); }

  /// Enclosure of the value using the current isolating interval.
  RationalInterval enclosure() const { return evaluate(representative, root.interval); }
};

/// Reduction and arithmetic in Q[x]/(m).
class NumberField {
 public:
  explicit NumberField(RealRoot root) : root_(std::move(root)), modulus_(to_rational(root_.poly)) {}

  const RealRoot& root() const { return root_; }
  const IntPolynomial& modulus() const { return root_.poly; }
  int degree() const { return root_.poly.degree(); }

  RatPolynomial reduce(const RatPolynomial& p) const { return remainder(p, modulus_); }
  RatPolynomial add(const RatPolynomial& a, const RatPolynomial& b) const { return reduce(a + b); }
  RatPolynomial sub(const RatPolynomial& a, const RatPolynomial& b) const { return reduce(a - b); }
  RatPolynomial mul(const RatPolynomial& a, const RatPolynomial& b) const { return reduce(a * b); }
  RatPolynomial generator() const { return reduce(RatPolynomial::x()); }

  RatPolynomial inverse(const RatPolynomial& a) const {
    auto [g, s, t] = extended_gcd(reduce(a), modulus_);
    if (g.degree() != 0) fail(ErrorCode::FactorizationIncomplete, "element is a zero divisor; modulus is reducible");
    return reduce(s);
  }

  AlgebraicNumber element(const RatPolynomial& p) const { return {root_, reduce(p)}; }

  /// Sign of p(root), refining a private copy of the isolating interval until decided.
  int sign(const RatPolynomial& p) const {
    RatPolynomial r = reduce(p);
    if (r.is_zero()) return 0;
    RealRoot work = root_;
    const Rational floor_width = two_pow(-256);
    while (true) {
      RationalInterval v = evaluate(r, work.interval);
      if (v.lo > 0) return 1;
      if (v.hi < 0) return -1;
      if (work.interval.is_point()) return sign_of(v.lo);
      if (work.interval.width() < floor_width) fail(ErrorCode::SignUndecided, "sign not decided at width 2^-256");
      work.refine();
    }
  }

 private:
  RealRoot root_;
  RatPolynomial modulus_;
};

}  // namespace sftlab
