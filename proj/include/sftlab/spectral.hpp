#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <vector>

#include "sftlab/algebraic.hpp"
#include "sftlab/interval.hpp"
#include "sftlab/polynomial.hpp"
#include "sftlab/sft.hpp"

namespace sftlab {

inline IntPolynomial char_poly(const Sft& x) { return characteristic_polynomial(to_integer_matrix(x.matrix())); }

/// Perron root enclosure of an irreducible nonnegative matrix from a positive integer test
/// vector x: min_i (Ax)_i / x_i <= lambda <= max_i (Ax)_i / x_i.
struct PerronEnclosure {
  RationalInterval lambda;
  std::vector<Integer> vector;
};

namespace detail {

inline RationalInterval collatz_wielandt_bounds(const BinaryMatrix& a, const std::vector<Integer>& x) {
  // compare s_i / x_i by cross-multiplication, then build the two extreme fractions
  std::size_t imin = 0, imax = 0;
  std::vector<Integer> sums(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (std::size_t j = 0; j < a.size(); ++j)
      if (a[i][j]) sums[i] += x[j];
    if (sums[i] * x[imin] < sums[imin] * x[i]) imin = i;
    if (sums[i] * x[imax] > sums[imax] * x[i]) imax = i;
  }
  return {make_rational(sums[imin], x[imin]), make_rational(sums[imax], x[imax])};
}

}  // namespace detail

/// Power iteration on A + I in floating point to find a good test vector, then exact
/// bounds; exact iterations continue while the relative width exceeds 2^-rel_bits.
inline PerronEnclosure collatz_wielandt(const BinaryMatrix& a, unsigned rel_bits = 40) {
  const std::size_t n = a.size();
  std::vector<std::vector<std::size_t>> rows(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (a[i][j]) rows[i].push_back(j);
  std::vector<double> x(n, 1.0), y(n);
  for (int it = 0; it < 100000; ++it) {
    double top = 0, lo = HUGE_VAL, hi = 0;
    for (std::size_t i = 0; i < n; ++i) {
      double s = 0;
      for (std::size_t j : rows[i]) s += x[j];
      lo = std::min(lo, s / x[i]);
      hi = std::max(hi, s / x[i]);
      y[i] = s + x[i];
      top = std::max(top, y[i]);
    }
    for (std::size_t i = 0; i < n; ++i) y[i] = std::max(y[i] / top, 1e-300);
    x.swap(y);
    if (hi - lo <= 1e-14 * hi) break;
  }
  PerronEnclosure out;
  out.vector.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    Integer v(std::ldexp(x[i], 52));
    out.vector[i] = v > 0 ? v : Integer(1);
  }
  out.lambda = detail::collatz_wielandt_bounds(a, out.vector);
  for (int it = 0; it < 4096 && out.lambda.width() > out.lambda.hi * two_pow(-static_cast<long>(rel_bits)); ++it) {
    std::vector<Integer> next(n);
    for (std::size_t i = 0; i < n; ++i) {
      next[i] = out.vector[i];
      for (std::size_t j : rows[i]) next[i] += out.vector[j];
    }
    out.vector = std::move(next);
    out.lambda = detail::collatz_wielandt_bounds(a, out.vector);
  }
  return out;
}

inline BinaryMatrix submatrix(const BinaryMatrix& m, const std::vector<Symbol>& keep) {
  BinaryMatrix s(keep.size(), std::vector<std::uint8_t>(keep.size()));
  for (std::size_t i = 0; i < keep.size(); ++i)
    for (std::size_t j = 0; j < keep.size(); ++j)
      s[i][j] = m[static_cast<std::size_t>(keep[i])][static_cast<std::size_t>(keep[j])];
  return s;
}

/// Spectral radius enclosure of any 0/1 matrix: maximum over the cyclic strongly
/// connected components, zero when the graph is acyclic.
inline RationalInterval spectral_radius(const BinaryMatrix& m) {
  auto comps = strongly_connected_components(m);
  RationalInterval rho = RationalInterval::point(0);
  for (std::size_t c = 0; c < comps.members.size(); ++c) {
    if (!comps.nontrivial[c]) continue;
    rho = max_of(rho, collatz_wielandt(submatrix(m, comps.members[c])).lambda);
  }
  return rho;
}

/// Enclosure of log(lambda) for any Sft (every Sft has a cycle, so lambda >= 1).
inline RationalInterval topological_entropy(const Sft& x) { return log_interval(spectral_radius(x.matrix())); }

/// Certified enclosure of the entropy of a mixing Sft, in nats.
inline RationalInterval entropy(const Sft& x) {
  require_mixing(x);
  return log_interval(collatz_wielandt(x.matrix()).lambda);
}

/// Perron eigenvalue as an isolated root of its (possibly uncertified) minimal polynomial,
/// with a positive left eigenvector whose entries have integer power-basis coordinates.
struct PerronData {
  IntPolynomial char_poly;
  IntPolynomial min_poly;
  bool min_poly_certified = false;
  RealRoot lambda;
  std::vector<IntPolynomial> left_eigenvector;

  NumberField field() const { return NumberField(lambda); }
  AlgebraicNumber entry(std::size_t i) const { return {lambda, to_rational(left_eigenvector.at(i))}; }
};

namespace detail {

// Kernel vector of an n x n matrix over a number field whose kernel is one-dimensional.
inline std::vector<RatPolynomial> kernel_vector(const NumberField& k, std::vector<std::vector<RatPolynomial>> m) {
  const std::size_t n = m.size();
  std::vector<int> pivot_col;
  std::size_t row = 0;
  std::vector<bool> is_pivot(n, false);
  for (std::size_t col = 0; col < n && row < n; ++col) {
    std::size_t p = row;
    while (p < n && m[p][col].is_zero()) ++p;
    if (p == n) continue;
    std::swap(m[p], m[row]);
    RatPolynomial inv = k.inverse(m[row][col]);
    for (std::size_t j = col; j < n; ++j) m[row][j] = k.mul(m[row][j], inv);
    for (std::size_t r = 0; r < n; ++r) {
      if (r == row || m[r][col].is_zero()) continue;
      RatPolynomial f = m[r][col];
      for (std::size_t j = col; j < n; ++j) m[r][j] = k.sub(m[r][j], k.mul(f, m[row][j]));
    }
    pivot_col.push_back(static_cast<int>(col));
    is_pivot[col] = true;
    ++row;
  }
  if (row + 1 != n) fail(ErrorCode::CertificateFailure, "Perron eigenspace is not one-dimensional");
  std::size_t free_col = static_cast<std::size_t>(std::find(is_pivot.begin(), is_pivot.end(), false) - is_pivot.begin());
  std::vector<RatPolynomial> v(n);
  v[free_col] = RatPolynomial::constant(1);
  for (std::size_t r = 0; r < pivot_col.size(); ++r) v[static_cast<std::size_t>(pivot_col[r])] = k.reduce(-m[r][free_col]);
  return v;
}

}  // namespace detail

inline PerronData perron_data(const Sft& x) {
  require_mixing(x);
  PerronData d;
  d.char_poly = char_poly(x);
  IntPolynomial sf = squarefree_part(d.char_poly);
  PerronEnclosure cw = collatz_wielandt(x.matrix(), 20);
  RealRoot root = isolate_largest_root(sf, cw.lambda.lo - 1, cw.lambda.hi);
  root.refine_to(Rational(1, 1'000'000'000'000));

  Factorization fac = factor_squarefree(sf);
  bool found = false;
  for (std::size_t i = 0; i < fac.factors.size() && !found; ++i) {
    const IntPolynomial& f = fac.factors[i];
    bool contains = root.interval.is_point() ? f.evaluate(root.interval.lo) == 0
                                             : SturmSequence(f).count_in(root.interval.lo, root.interval.hi) == 1;
    if (contains) {
      d.min_poly = f;
      d.min_poly_certified = fac.certified[i];
      found = true;
    }
  }
  if (!found) fail(ErrorCode::CertificateFailure, "no factor of the characteristic polynomial carries the Perron root");
  d.lambda = {d.min_poly, root.interval};

  NumberField k(d.lambda);
  const std::size_t n = x.size();
  const RatPolynomial lam = k.generator();
  // v (A - lambda I) = 0, i.e. (A - lambda I)^T v^T = 0
  std::vector<std::vector<RatPolynomial>> m(n, std::vector<RatPolynomial>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      RatPolynomial e = RatPolynomial::constant(Rational(x.matrix()[j][i]));
      m[i][j] = i == j ? k.sub(e, lam) : e;
    }
  std::vector<RatPolynomial> v = detail::kernel_vector(k, std::move(m));
  RatPolynomial last_inv = k.inverse(v.back());
  for (auto& e : v) e = k.mul(e, last_inv);

  Integer den = 1;
  for (const auto& e : v)
    for (const auto& c : e.coefficients()) den = lcm_of(den, c.get_den());
  Integer g = 0;
  for (const auto& e : v)
    for (const auto& c : e.coefficients()) g = gcd_of(g, c.get_num() * (den / c.get_den()));
  Rational scale = make_rational(den, g);
  for (const auto& e : v) {
    std::vector<Integer> coords;
    RatPolynomial scaled = scale * e;
    for (const auto& c : scaled.coefficients()) coords.push_back(c.get_num());
    d.left_eigenvector.emplace_back(std::move(coords));
  }
  for (std::size_t i = 0; i < n; ++i)
    if (k.sign(to_rational(d.left_eigenvector[i])) <= 0)
      fail(ErrorCode::CertificateFailure, "Perron eigenvector entry is not positive");
  for (std::size_t j = 0; j < n; ++j) {
    RatPolynomial s;
    for (std::size_t i = 0; i < n; ++i)
      if (x.matrix()[i][j]) s = s + to_rational(d.left_eigenvector[i]);
    if (!k.sub(s, k.mul(lam, to_rational(d.left_eigenvector[j]))).is_zero())
      fail(ErrorCode::CertificateFailure, "eigenvector identity fails");
  }
  return d;
}

struct WordCountRate {
  std::size_t n = 0;
  Integer count;
  RationalInterval rate;  // (1/n) log count
};

/// (1/n) log |W_n| for n = 1..n_max with certified logarithms.
inline std::vector<WordCountRate> wordcount_entropy_sequence(const std::function<Integer(std::size_t)>& count,
                                                             std::size_t n_max) {
  std::vector<WordCountRate> out;
  for (std::size_t n = 1; n <= n_max; ++n) {
    Integer c = count(n);
    if (c <= 0) fail(ErrorCode::EmptyShift, "no words of length " + std::to_string(n));
    RationalInterval l = log_interval(RationalInterval::point(Rational(c)));
    out.push_back({n, c, Rational(1, static_cast<long>(n)) * l});
  }
  return out;
}

/// count(n) <= constant * mu^n for every n >= 1, where count(n) is the number of paths
/// with n vertices in the matrix graph.
struct GrowthBound {
  Rational mu;
  Rational constant;

  Rational at(std::size_t n) const { return constant * pow_rational(mu, n); }
};

namespace detail {

// If x > 0 and A x <= mu x then 1^T A^(n-1) 1 <= mu^(n-1) sum(x) / min(x).
inline Rational growth_constant_from(const std::vector<Rational>& x, const Rational& mu) {
  Rational sum = 0, least = x.front();
  for (const auto& v : x) {
    sum += v;
    least = std::min(least, v);
  }
  return round_up(sum / (mu * least), 32);
}

// Solves (mu I - B) x = 1 exactly; nullopt when singular.
inline std::optional<std::vector<Rational>> resolvent_vector(const BinaryMatrix& b, const Rational& mu) {
  const std::size_t n = b.size();
  std::vector<std::vector<Rational>> m(n, std::vector<Rational>(n + 1));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) m[i][j] = (i == j ? mu : Rational(0)) - Rational(b[i][j]);
    m[i][n] = 1;
  }
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t p = col;
    while (p < n && m[p][col] == 0) ++p;
    if (p == n) return std::nullopt;
    std::swap(m[p], m[col]);
    for (std::size_t r = 0; r < n; ++r) {
      if (r == col || m[r][col] == 0) continue;
      Rational f = m[r][col] / m[col][col];
      for (std::size_t j = col; j <= n; ++j) m[r][j] -= f * m[col][j];
    }
  }
  std::vector<Rational> x(n);
  for (std::size_t i = 0; i < n; ++i) x[i] = m[i][n] / m[i][i];
  return x;
}

}  // namespace detail

/// Growth bound for a mixing Sft with mu the upper Perron enclosure, checked against exact
/// counts for n <= 30.
inline GrowthBound growth_constant(const Sft& x) {
  require_mixing(x);
  PerronEnclosure cw = collatz_wielandt(x.matrix());
  std::vector<Rational> v(cw.vector.begin(), cw.vector.end());
  GrowthBound g{cw.lambda.hi, detail::growth_constant_from(v, cw.lambda.hi)};
  for (std::size_t n = 1; n <= 30; ++n)
    if (Rational(count_words(x, n)) > g.at(n))
      fail(ErrorCode::CertificateFailure, "growth bound fails at n = " + std::to_string(n));
  return g;
}

/// Growth bound for path counts of an arbitrary 0/1 matrix with mu >= 1 and constant >= 1:
/// mu slightly above the spectral radius makes (mu I - B)^-1 1 a positive test vector.
inline GrowthBound growth_bound_of_matrix(const BinaryMatrix& b) {
  if (b.empty()) return {Rational(1), Rational(1)};
  Rational base = std::max(Rational(1), spectral_radius(b).hi);
  for (long k : {0L, 40L, 30L, 20L, 10L, 4L}) {
    Rational mu = k == 0 ? base : base * (1 + two_pow(-k));
    auto x = detail::resolvent_vector(b, mu);
    if (!x || std::any_of(x->begin(), x->end(), [](const Rational& v) { return v <= 0; })) continue;
    return {mu, std::max(Rational(1), detail::growth_constant_from(*x, mu))};
  }
  fail(ErrorCode::CertificateFailure, "no positive resolvent vector found");
}

}  // namespace sftlab
