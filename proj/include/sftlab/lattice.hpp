#pragma once

#include <algorithm>
#include <vector>

#include "sftlab/numeric.hpp"

namespace sftlab {

using IntMatrix = std::vector<std::vector<Integer>>;
using RatMatrix = std::vector<std::vector<Rational>>;

/// Row Hermite normal form: the nonzero rows of an upper echelon basis of the row lattice,
/// with positive pivots and entries above each pivot reduced into [0, pivot).
inline IntMatrix hermite_normal_form(IntMatrix rows) {
  if (rows.empty()) return rows;
  const std::size_t n = rows.front().size();
  std::size_t r = 0;
  for (std::size_t col = 0; col < n && r < rows.size(); ++col) {
    // gcd-combine every row below r into row r on this column
    for (std::size_t i = r + 1; i < rows.size(); ++i) {
      if (rows[i][col] == 0) continue;
      if (rows[r][col] == 0) {
        std::swap(rows[r], rows[i]);
        continue;
      }
      Integer a = rows[r][col], b = rows[i][col], g, s, t;
      mpz_gcdext(g.get_mpz_t(), s.get_mpz_t(), t.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
      Integer ag = a / g, bg = b / g;
      for (std::size_t k = col; k < n; ++k) {
        Integer x = rows[r][k], y = rows[i][k];
        rows[r][k] = s * x + t * y;
        rows[i][k] = ag * y - bg * x;
      }
    }
    if (rows[r][col] == 0) continue;
    if (rows[r][col] < 0)
      for (auto& v : rows[r]) v = -v;
    for (std::size_t i = 0; i < r; ++i) {
      Integer q;
      mpz_fdiv_q(q.get_mpz_t(), rows[i][col].get_mpz_t(), rows[r][col].get_mpz_t());
      if (q != 0)
        for (std::size_t k = col; k < n; ++k) rows[i][k] -= q * rows[r][k];
    }
    ++r;
  }
  rows.resize(r);
  return rows;
}

inline RatMatrix to_rational_matrix(const IntMatrix& m) {
  RatMatrix out(m.size());
  for (std::size_t i = 0; i < m.size(); ++i)
    for (const auto& v : m[i]) out[i].push_back(Rational(v));
  return out;
}

inline RatMatrix multiply(const RatMatrix& a, const RatMatrix& b) {
  RatMatrix c(a.size(), std::vector<Rational>(b.front().size(), Rational(0)));
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t k = 0; k < b.size(); ++k)
      if (a[i][k] != 0)
        for (std::size_t j = 0; j < b.front().size(); ++j) c[i][j] += a[i][k] * b[k][j];
  return c;
}

/// Inverse of a nonsingular square matrix by Gauss-Jordan elimination.
inline RatMatrix inverse(RatMatrix a) {
  const std::size_t n = a.size();
  RatMatrix inv(n, std::vector<Rational>(n, Rational(0)));
  for (std::size_t i = 0; i < n; ++i) inv[i][i] = 1;
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t p = col;
    while (p < n && a[p][col] == 0) ++p;
    if (p == n) fail(ErrorCode::CertificateFailure, "singular lattice basis");
    std::swap(a[p], a[col]);
    std::swap(inv[p], inv[col]);
    Rational piv = a[col][col];
    for (std::size_t k = 0; k < n; ++k) {
      a[col][k] /= piv;
      inv[col][k] /= piv;
    }
    for (std::size_t i = 0; i < n; ++i) {
      if (i == col || a[i][col] == 0) continue;
      Rational f = a[i][col];
      for (std::size_t k = 0; k < n; ++k) {
        a[i][k] -= f * a[col][k];
        inv[i][k] -= f * inv[col][k];
      }
    }
  }
  return inv;
}

inline Rational determinant(RatMatrix a) {
  const std::size_t n = a.size();
  Rational det = 1;
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t p = col;
    while (p < n && a[p][col] == 0) ++p;
    if (p == n) return 0;
    if (p != col) {
      std::swap(a[p], a[col]);
      det = -det;
    }
    det *= a[col][col];
    for (std::size_t i = col + 1; i < n; ++i) {
      if (a[i][col] == 0) continue;
      Rational f = a[i][col] / a[col][col];
      for (std::size_t k = col; k < n; ++k) a[i][k] -= f * a[col][k];
    }
  }
  return det;
}

/// HNF basis of {h in Z^d : h * P_j is integral for every j}, each P_j a d x d rational matrix.
inline IntMatrix integral_solutions(const std::vector<RatMatrix>& ps, std::size_t d) {
  Integer den = 1;
  for (const auto& p : ps)
    for (const auto& row : p)
      for (const auto& v : row) den = lcm_of(den, v.get_den());
  const std::size_t w = ps.size() * d;
  // rows (h P den | h) and (den e_k | 0); rows with a zero first block carry the solutions
  IntMatrix g;
  for (std::size_t i = 0; i < d; ++i) {
    std::vector<Integer> row;
    for (const auto& p : ps)
      for (std::size_t j = 0; j < d; ++j) row.push_back(Rational(p[i][j] * den).get_num());
    for (std::size_t j = 0; j < d; ++j) row.push_back(Integer(i == j ? 1 : 0));
    g.push_back(std::move(row));
  }
  for (std::size_t k = 0; k < w; ++k) {
    std::vector<Integer> row(w + d, Integer(0));
    row[k] = den;
    g.push_back(std::move(row));
  }
  IntMatrix h = hermite_normal_form(std::move(g));
  IntMatrix out;
  for (const auto& row : h) {
    bool zero_head = std::all_of(row.begin(), row.begin() + static_cast<long>(w), [](const Integer& v) { return v == 0; });
    if (zero_head) out.emplace_back(row.begin() + static_cast<long>(w), row.end());
  }
  return hermite_normal_form(std::move(out));
}

/// Basis of the sublattice of Z^d whose images under every map M_j land in the lattice B.
inline IntMatrix preimage(const std::vector<IntMatrix>& maps, const IntMatrix& basis) {
  RatMatrix binv = inverse(to_rational_matrix(basis));
  std::vector<RatMatrix> ps;
  for (const auto& m : maps) ps.push_back(multiply(to_rational_matrix(m), binv));
  return integral_solutions(ps, basis.size());
}

inline Integer lattice_index(const IntMatrix& hnf) {
  Integer p = 1;
  for (std::size_t i = 0; i < hnf.size(); ++i) p *= hnf[i][i];
  return p;
}

}  // namespace sftlab
