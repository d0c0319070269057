#pragma once

#include <algorithm>
#include <initializer_list>
#include <optional>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "sftlab/numeric.hpp"

namespace sftlab {

/// Dense univariate polynomial, coefficients stored constant term first.
/// The zero polynomial has no coefficients and degree -1.
template <typename T>
class Polynomial {
 public:
  Polynomial() = default;
  explicit Polynomial(std::vector<T> coeffs) : coeffs_(std::move(coeffs)) { normalize(); }
  Polynomial(std::initializer_list<T> coeffs) : coeffs_(coeffs) { normalize(); }

  static Polynomial constant(const T& c) { return Polynomial(std::vector<T>{c}); }
  static Polynomial monomial(const T& c, size_t degree) {
    std::vector<T> v(degree + 1, T(0));
    v[degree] = c;
    return Polynomial(std::move(v));
  }
  static Polynomial x() { return monomial(T(1), 1); }

  int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
  bool is_zero() const { return coeffs_.empty(); }
  const std::vector<T>& coefficients() const { return coeffs_; }
  T coeff(size_t i) const { return i < coeffs_.size() ? coeffs_[i] : T(0); }
  const T& lead() const { return coeffs_.back(); }

  template <typename U>
  U evaluate(const U& at) const {
    U acc(0);
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * at + U(*it);
    return acc;
  }

  Polynomial derivative() const {
    if (coeffs_.size() <= 1) return {};
    std::vector<T> d(coeffs_.size() - 1);
    for (size_t i = 1; i < coeffs_.size(); ++i) d[i - 1] = coeffs_[i] * T(static_cast<long>(i));
    return Polynomial(std::move(d));
  }

  friend Polynomial operator+(const Polynomial& a, const Polynomial& b) {
    std::vector<T> r(std::max(a.coeffs_.size(), b.coeffs_.size()), T(0));
    for (size_t i = 0; i < a.coeffs_.size(); ++i) r[i] += a.coeffs_[i];
    for (size_t i = 0; i < b.coeffs_.size(); ++i) r[i] += b.coeffs_[i];
    return Polynomial(std::move(r));
  }
  friend Polynomial operator-(const Polynomial& a) {
    std::vector<T> r = a.coeffs_;
    for (auto& c : r) c = -c;
    return Polynomial(std::move(r));
  }
  friend Polynomial operator-(const Polynomial& a, const Polynomial& b) { return a + (-b); }
  friend Polynomial operator*(const Polynomial& a, const Polynomial& b) {
    if (a.is_zero() || b.is_zero()) return {};
    std::vector<T> r(a.coeffs_.size() + b.coeffs_.size() - 1, T(0));
    for (size_t i = 0; i < a.coeffs_.size(); ++i)
      for (size_t j = 0; j < b.coeffs_.size(); ++j) r[i + j] += a.coeffs_[i] * b.coeffs_[j];
    return Polynomial(std::move(r));
  }
  friend Polynomial operator*(const T& s, const Polynomial& a) {
    std::vector<T> r = a.coeffs_;
    for (auto& c : r) c *= s;
    return Polynomial(std::move(r));
  }
  friend bool operator==(const Polynomial& a, const Polynomial& b) { return a.coeffs_ == b.coeffs_; }

  /// Human-readable form, highest degree first, e.g. "x^2 - x - 1".
  std::string to_string() const {
    if (is_zero()) return "0";
    std::string out;
    for (int i = degree(); i >= 0; --i) {
      const T& c = coeffs_[static_cast<size_t>(i)];
      if (c == 0) continue;
      bool neg = c < 0;
      T mag = neg ? T(-c) : c;
      if (out.empty()) {
        if (neg) out += "-";
      } else {
        out += neg ? " - " : " + ";
      }
      bool unit = (mag == 1);
      if (!unit || i == 0) out += mag.get_str();
      if (i >= 1) out += "x";
      if (i >= 2) out += "^" + std::to_string(i);
    }
    return out;
  }

 private:
  void normalize() {
    while (!coeffs_.empty() && coeffs_.back() == 0) coeffs_.pop_back();
  }
  std::vector<T> coeffs_;
};

using IntPolynomial = Polynomial<Integer>;
using RatPolynomial = Polynomial<Rational>;

inline RatPolynomial to_rational(const IntPolynomial& p) {
  std::vector<Rational> c;
  c.reserve(p.coefficients().size());
  for (const auto& a : p.coefficients()) c.emplace_back(a);
  return RatPolynomial(std::move(c));
}

/// Positive rational multiple of p with coprime integer coefficients.
inline IntPolynomial primitive_part(const RatPolynomial& p) {
  if (p.is_zero()) return {};
  Integer den = 1;
  for (const auto& c : p.coefficients()) den = lcm_of(den, c.get_den());
  Integer g = 0;
  std::vector<Integer> ints;
  for (const auto& c : p.coefficients()) {
    Integer v = c.get_num() * (den / c.get_den());
    g = gcd_of(g, v);
    ints.push_back(v);
  }
  for (auto& v : ints) v /= g;
  return IntPolynomial(std::move(ints));
}

inline std::pair<RatPolynomial, RatPolynomial> divmod(const RatPolynomial& a, const RatPolynomial& b) {
  if (b.is_zero()) fail(ErrorCode::CertificateFailure, "polynomial division by zero");
  std::vector<Rational> rem = a.coefficients();
  int db = b.degree();
  if (a.degree() < db) return {RatPolynomial{}, a};
  std::vector<Rational> quo(static_cast<size_t>(a.degree() - db + 1), Rational(0));
  for (int i = a.degree(); i >= db; --i) {
    Rational f = rem[static_cast<size_t>(i)] / b.lead();
    quo[static_cast<size_t>(i - db)] = f;
    if (f == 0) continue;
    for (int j = 0; j <= db; ++j) rem[static_cast<size_t>(i - db + j)] -= f * b.coeff(static_cast<size_t>(j));
  }
  rem.resize(static_cast<size_t>(db));
  return {RatPolynomial(std::move(quo)), RatPolynomial(std::move(rem))};
}

inline RatPolynomial remainder(const RatPolynomial& a, const RatPolynomial& b) { return divmod(a, b).second; }

inline RatPolynomial make_monic(const RatPolynomial& p) {
  if (p.is_zero()) return p;
  return (Rational(1) / p.lead()) * p;
}

inline RatPolynomial gcd(RatPolynomial a, RatPolynomial b) {
  while (!b.is_zero()) {
    RatPolynomial r = remainder(a, b);
    a = std::move(b);
    b = std::move(r);
  }
  return make_monic(a);
}

/// Extended Euclid over Q: returns (g, s, t) with s*a + t*b = g, g monic.
inline std::tuple<RatPolynomial, RatPolynomial, RatPolynomial> extended_gcd(const RatPolynomial& a,
                                                                             const RatPolynomial& b) {
  RatPolynomial r0 = a, r1 = b;
  RatPolynomial s0 = RatPolynomial::constant(1), s1{};
  RatPolynomial t0{}, t1 = RatPolynomial::constant(1);
  while (!r1.is_zero()) {
    auto [q, r] = divmod(r0, r1);
    r0 = std::exchange(r1, r);
    s0 = std::exchange(s1, s0 - q * s1);
    t0 = std::exchange(t1, t0 - q * t1);
  }
  if (r0.is_zero()) return {r0, s0, t0};
  Rational inv = Rational(1) / r0.lead();
  return {inv * r0, inv * s0, inv * t0};
}

/// Exact quotient a / b when b divides a in Z[x] (monic b), otherwise nullopt.
inline std::optional<IntPolynomial> exact_quotient(const IntPolynomial& a, const IntPolynomial& b) {
  auto [q, r] = divmod(to_rational(a), to_rational(b));
  if (!r.is_zero()) return std::nullopt;
  std::vector<Integer> c;
  for (const auto& v : q.coefficients()) {
    if (v.get_den() != 1) return std::nullopt;
    c.push_back(v.get_num());
  }
  return IntPolynomial(std::move(c));
}

/// Squarefree part p / gcd(p, p') as a primitive integer polynomial (sign of p kept).
inline IntPolynomial squarefree_part(const IntPolynomial& p) {
  RatPolynomial rp = to_rational(p);
  RatPolynomial g = gcd(rp, rp.derivative());
  return primitive_part(divmod(rp, g).first);
}

inline int sign_of(const Rational& q) { return q > 0 ? 1 : (q < 0 ? -1 : 0); }
inline int sign_of(const Integer& q) { return q > 0 ? 1 : (q < 0 ? -1 : 0); }

/// Sturm chain of a squarefree polynomial; counts real roots in half-open intervals (a, b].
class SturmSequence {
 public:
  explicit SturmSequence(const IntPolynomial& squarefree) {
    RatPolynomial p0 = to_rational(squarefree);
    RatPolynomial p1 = p0.derivative();
    chain_.push_back(primitive_part(p0));
    if (p1.is_zero()) return;
    chain_.push_back(primitive_part(p1));
    while (true) {
      RatPolynomial r = remainder(to_rational(chain_[chain_.size() - 2]), to_rational(chain_.back()));
      if (r.is_zero()) break;
      chain_.push_back(primitive_part(-r));
    }
  }

  int variations_at(const Rational& x) const {
    int count = 0, last = 0;
    for (const auto& p : chain_) {
      int s = sign_of(p.evaluate(x));
      if (s == 0) continue;
      if (last != 0 && s != last) ++count;
      last = s;
    }
    return count;
  }

  int variations_at_infinity(bool positive) const {
    int count = 0, last = 0;
    for (const auto& p : chain_) {
      int s = sign_of(p.lead());
      if (!positive && p.degree() % 2 == 1) s = -s;
      if (s == 0) continue;
      if (last != 0 && s != last) ++count;
      last = s;
    }
    return count;
  }

  int count_in(const Rational& a, const Rational& b) const { return variations_at(a) - variations_at(b); }
  int count_above(const Rational& a) const { return variations_at(a) - variations_at_infinity(true); }
  int count_real() const { return variations_at_infinity(false) - variations_at_infinity(true); }

 private:
  std::vector<IntPolynomial> chain_;
};

/// Cauchy bound: every complex root has modulus below the returned value.
inline Rational cauchy_root_bound(const IntPolynomial& p) {
  Rational m = 0;
  for (int i = 0; i < p.degree(); ++i) {
    Rational r = abs(Rational(p.coeff(static_cast<size_t>(i)))) / abs(Rational(p.lead()));
    if (r > m) m = r;
  }
  return 1 + m;
}

/// Characteristic polynomial det(xI - A) by the Faddeev-LeVerrier recurrence; all
/// intermediate quantities are integers (each trace division is exact).
inline IntPolynomial characteristic_polynomial(const std::vector<std::vector<Integer>>& a) {
  size_t n = a.size();
  std::vector<Integer> c(n + 1, Integer(0));
  c[n] = 1;
  std::vector<std::vector<Integer>> m(n, std::vector<Integer>(n, Integer(0)));
  for (size_t k = 1; k <= n; ++k) {
    // M_k = A * M_{k-1} + c_{n-k+1} I
    std::vector<std::vector<Integer>> next(n, std::vector<Integer>(n, Integer(0)));
    for (size_t i = 0; i < n; ++i)
      for (size_t l = 0; l < n; ++l) {
        if (a[i][l] == 0) continue;
        for (size_t j = 0; j < n; ++j) next[i][j] += a[i][l] * m[l][j];
      }
    for (size_t i = 0; i < n; ++i) next[i][i] += c[n - k + 1];
    m = std::move(next);
    Integer trace = 0;
    for (size_t i = 0; i < n; ++i)
      for (size_t l = 0; l < n; ++l) trace += a[i][l] * m[l][i];
    Integer kk = static_cast<long>(k);
    if (trace % kk != 0) fail(ErrorCode::CertificateFailure, "non-integral Faddeev-LeVerrier step");
    c[n - k] = -trace / kk;
  }
  return IntPolynomial(std::move(c));
}

/// Result of partial factorization over Z of a monic squarefree polynomial.
struct Factorization {
  std::vector<IntPolynomial> factors;  // monic, pairwise distinct
  std::vector<bool> certified;         // irreducibility certified per factor
  bool complete() const { return std::all_of(certified.begin(), certified.end(), [](bool b) { return b; }); }
};

namespace detail {

// Monic degree-k factor search by Kronecker interpolation: for each choice of divisors
// d_i of g(t_i), the unique monic h of degree k with h(t_i) = d_i is tested.
inline std::optional<IntPolynomial> kronecker_factor(const IntPolynomial& g, int k, bool& exhaustive) {
  std::vector<std::pair<Integer, Integer>> pts;  // (t, g(t))
  for (long t = 0; t <= 12; ++t) {
    for (long s : {t, -t}) {
      if (s == 0 && t != 0) continue;
      Integer v = g.evaluate(Integer(s));
      if (v == 0) return IntPolynomial{Integer(-s), Integer(1)};
      pts.emplace_back(Integer(s), v);
      if (t == 0) break;
    }
  }
  std::stable_sort(pts.begin(), pts.end(), [](const auto& a, const auto& b) { return abs(a.second) < abs(b.second); });
  pts.resize(static_cast<size_t>(k));
  std::vector<std::vector<Integer>> choices;
  for (const auto& [t, v] : pts) {
    auto divs = positive_divisors(v);
    if (divs.empty()) {
      exhaustive = false;
      return std::nullopt;
    }
    std::vector<Integer> signed_divs;
    for (const auto& d : divs) {
      signed_divs.push_back(d);
      signed_divs.push_back(-d);
    }
    choices.push_back(std::move(signed_divs));
  }
  // prod (x - t_i)
  RatPolynomial base = RatPolynomial::constant(1);
  for (const auto& [t, v] : pts) base = base * RatPolynomial{Rational(-t), Rational(1)};
  // Lagrange basis polynomials
  std::vector<RatPolynomial> basis;
  for (size_t i = 0; i < pts.size(); ++i) {
    RatPolynomial li = RatPolynomial::constant(1);
    for (size_t j = 0; j < pts.size(); ++j) {
      if (i == j) continue;
      Rational denom = Rational(pts[i].first - pts[j].first);
      li = li * RatPolynomial{Rational(-pts[j].first) / denom, Rational(1) / denom};
    }
    basis.push_back(std::move(li));
  }
  std::vector<size_t> idx(choices.size(), 0);
  while (true) {
    RatPolynomial h = base;
    for (size_t i = 0; i < idx.size(); ++i) h = h + Rational(choices[i][idx[i]]) * basis[i];
    bool integral = true;
    std::vector<Integer> hc;
    for (const auto& c : h.coefficients()) {
      if (c.get_den() != 1) {
        integral = false;
        break;
      }
      hc.push_back(c.get_num());
    }
    if (integral) {
      IntPolynomial cand(std::move(hc));
      if (cand.degree() == k && g.coeff(0) % cand.coeff(0) == 0 && exact_quotient(g, cand)) return cand;
    }
    size_t pos = 0;
    while (pos < idx.size() && ++idx[pos] == choices[pos].size()) idx[pos++] = 0;
    if (pos == idx.size()) break;
  }
  return std::nullopt;
}

}  // namespace detail

/// Factors a monic squarefree integer polynomial: zero root, integer roots, then monic
/// factors of degree 2..max_search_degree. A factor that survives the search is certified
/// irreducible only when its degree is at most 2 * max_search_degree + 1.
inline Factorization factor_squarefree(const IntPolynomial& f, int max_search_degree = 4) {
  Factorization out;
  std::vector<IntPolynomial> work{f};
  auto emit = [&](const IntPolynomial& p, bool cert) {
    out.factors.push_back(p);
    out.certified.push_back(cert);
  };
  while (!work.empty()) {
    IntPolynomial g = std::move(work.back());
    work.pop_back();
    if (g.degree() <= 0) continue;
    if (g.degree() == 1) {
      emit(g, true);
      continue;
    }
    if (g.coeff(0) == 0) {
      emit(IntPolynomial::x(), true);
      work.push_back(*exact_quotient(g, IntPolynomial::x()));
      continue;
    }
    bool split = false;
    for (const auto& d : positive_divisors(g.coeff(0))) {
      for (const Integer& r : {Integer(d), Integer(-d)}) {
        if (g.evaluate(r) == 0) {
          IntPolynomial lin{Integer(-r), Integer(1)};
          emit(lin, true);
          work.push_back(*exact_quotient(g, lin));
          split = true;
          break;
        }
      }
      if (split) break;
    }
    if (split) continue;
    int half = g.degree() / 2;
    bool exhaustive = !positive_divisors(g.coeff(0)).empty();
    for (int k = 2; k <= std::min(half, max_search_degree); ++k) {
      if (auto h = detail::kronecker_factor(g, k, exhaustive)) {
        work.push_back(*h);
        work.push_back(*exact_quotient(g, *h));
        split = true;
        break;
      }
    }
    if (split) continue;
    emit(g, exhaustive && half <= max_search_degree);
  }
  return out;
}

}  // namespace sftlab
