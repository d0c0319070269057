#pragma once

#include <optional>
#include <string>
#include <vector>

#include "sftlab/lattice.hpp"
#include "sftlab/polynomial.hpp"
#include "sftlab/spectral.hpp"

namespace sftlab {

/// Z[lambda] (inverted = false) or Z[lambda, 1/lambda], lambda a root of the monic
/// irreducible min_poly. Elements of Z[lambda] are integer polynomials of degree < deg.
struct RingSpec {
  IntPolynomial min_poly;
  bool inverted = true;

  int degree() const { return min_poly.degree(); }

  IntPolynomial reduce(IntPolynomial p) const {
    // integer long division by a monic modulus
    const int d = degree();
    std::vector<Integer> c = p.coefficients();
    for (int k = static_cast<int>(c.size()) - 1; k >= d; --k) {
      Integer q = c[static_cast<std::size_t>(k)];
      if (q == 0) continue;
      for (int i = 0; i <= d; ++i) c[static_cast<std::size_t>(k - d + i)] -= q * min_poly.coeff(static_cast<std::size_t>(i));
    }
    if (static_cast<int>(c.size()) > d) c.resize(static_cast<std::size_t>(d));
    return IntPolynomial(std::move(c));
  }
  IntPolynomial mul(const IntPolynomial& a, const IntPolynomial& b) const { return reduce(a * b); }

  std::vector<Integer> coordinates(const IntPolynomial& p) const {
    IntPolynomial r = reduce(p);
    std::vector<Integer> v;
    for (int i = 0; i < degree(); ++i) v.push_back(r.coeff(static_cast<std::size_t>(i)));
    return v;
  }

  /// Matrix of multiplication by a on row coordinate vectors.
  IntMatrix multiplication_matrix(const IntPolynomial& a) const {
    IntMatrix m;
    for (int i = 0; i < degree(); ++i) m.push_back(coordinates(a * IntPolynomial::monomial(Integer(1), static_cast<std::size_t>(i))));
    return m;
  }

  friend bool operator==(const RingSpec& a, const RingSpec& b) { return a.min_poly == b.min_poly && a.inverted == b.inverted; }
};

inline RingSpec make_ring(const IntPolynomial& min_poly, bool inverted = true) {
  if (min_poly.degree() < 1 || min_poly.lead() != 1) fail(ErrorCode::Parse, "ring modulus must be monic of positive degree");
  if (min_poly.coeff(0) == 0) fail(ErrorCode::Parse, "lambda must be nonzero");
  auto f = factor_squarefree(min_poly);
  if (!f.complete() || f.factors.size() != 1 || squarefree_part(min_poly).degree() != min_poly.degree())
    fail(ErrorCode::FactorizationIncomplete, "ring modulus is not certified irreducible");
  return {min_poly, inverted};
}

struct IdealRep {
  RingSpec ring;
  std::vector<IntPolynomial> generators;
};

inline IdealRep make_ideal(const RingSpec& ring, std::vector<IntPolynomial> gens) {
  IdealRep i{ring, {}};
  bool nonzero = false;
  for (auto& g : gens) {
    i.generators.push_back(ring.reduce(g));
    nonzero = nonzero || !i.generators.back().is_zero();
  }
  if (!nonzero) fail(ErrorCode::Parse, "an ideal needs a nonzero generator");
  return i;
}

inline IdealRep unit_ideal(const RingSpec& ring) { return make_ideal(ring, {IntPolynomial{Integer(1)}}); }

inline IdealRep scale(const IdealRep& i, const IntPolynomial& s) {
  IdealRep out{i.ring, {}};
  for (const auto& g : i.generators) out.generators.push_back(i.ring.mul(s, g));
  return out;
}

namespace detail {

inline void require_same_ring(const IdealRep& a, const IdealRep& b) {
  if (!(a.ring == b.ring)) fail(ErrorCode::RingMismatch, "ideals live in different rings");
}

}  // namespace detail

/// HNF basis of I ∩ Z[lambda]. The Z[lambda]-lattice of the generators is saturated under
/// h -> h/lambda until two consecutive windows coincide; this terminates because each strict
/// step at least doubles a subgroup of the finite quotient Z[lambda]/L.
inline IntMatrix integral_lattice(const IdealRep& ideal) {
  const RingSpec& ring = ideal.ring;
  IntMatrix rows;
  for (const auto& g : ideal.generators)
    for (int e = 0; e < ring.degree(); ++e)
      rows.push_back(ring.coordinates(g * IntPolynomial::monomial(Integer(1), static_cast<std::size_t>(e))));
  IntMatrix s = hermite_normal_form(rows);
  if (static_cast<int>(s.size()) != ring.degree()) fail(ErrorCode::Parse, "an ideal needs a nonzero generator");
  if (!ring.inverted) return s;
  const std::vector<IntMatrix> by_lambda{ring.multiplication_matrix(IntPolynomial::x())};
  while (true) {
    IntMatrix next = preimage(by_lambda, s);
    if (next == s) return s;
    s = std::move(next);
  }
}

inline bool module_equal(const IdealRep& a, const IdealRep& b) {
  detail::require_same_ring(a, b);
  return integral_lattice(a) == integral_lattice(b);
}

/// |disc(Z[lambda])| = |det Tr(lambda^(i+j))|. The integral closure of Z[lambda] lies in
/// (1/disc) Z[lambda].
inline Integer discriminant(const RingSpec& ring) {
  const int d = ring.degree();
  IntMatrix m = ring.multiplication_matrix(IntPolynomial::x());
  std::vector<Integer> traces;
  RatMatrix power = to_rational_matrix(ring.multiplication_matrix(IntPolynomial{Integer(1)}));
  RatMatrix step = to_rational_matrix(m);
  for (int k = 0; k <= 2 * d - 2; ++k) {
    Rational tr = 0;
    for (int i = 0; i < d; ++i) tr += power[static_cast<std::size_t>(i)][static_cast<std::size_t>(i)];
    traces.push_back(tr.get_num());
    power = multiply(power, step);
  }
  RatMatrix t(static_cast<std::size_t>(d), std::vector<Rational>(static_cast<std::size_t>(d)));
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) t[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = traces[static_cast<std::size_t>(i + j)];
  return abs(determinant(t).get_num());
}

/// Lattice of D·(I : I) ∩ Z[lambda] with D the discriminant: {h : h I ⊆ D I}. The
/// multiplier ring (I : I) is unchanged by scaling I, so this separates classes.
inline IntMatrix multiplier_lattice(const IdealRep& ideal) {
  std::vector<IntMatrix> maps;
  for (const auto& g : ideal.generators)
    if (!g.is_zero()) maps.push_back(ideal.ring.multiplication_matrix(g));
  const Integer d = discriminant(ideal.ring);
  return preimage(maps, integral_lattice(scale(ideal, IntPolynomial{d})));
}

struct ClassVerdict {
  enum class Kind { Equal, Different, Unknown };
  Kind kind = Kind::Unknown;
  IntPolynomial s, t;  // Equal: s·I = t·J
  std::string invariant;  // Different
  std::pair<IntMatrix, IntMatrix> invariant_lattices;
  long search_bound = 0;  // Unknown: heights searched exhaustively
  std::string method;
};

inline std::string verdict_name(ClassVerdict::Kind k) {
  switch (k) {
    case ClassVerdict::Kind::Equal: return "EqualClass";
    case ClassVerdict::Kind::Different: return "DifferentClass";
    case ClassVerdict::Kind::Unknown: return "Unknown";
  }
  return "Unknown";
}

inline bool verify_certificate(const IdealRep& a, const IdealRep& b, const IntPolynomial& s, const IntPolynomial& t) {
  if (a.ring.reduce(s).is_zero() || a.ring.reduce(t).is_zero()) return false;
  return module_equal(scale(a, s), scale(b, t));
}

struct ClassSearchOptions {
  long max_height = 50;
  long budget = 20000;  // certificate checks in the height search
};

namespace detail {

// Calls visit on every nonzero coefficient vector of length d with max |c_i| == h.
template <typename F>
bool for_each_of_height(int d, long h, F&& visit) {
  std::vector<long> c(static_cast<std::size_t>(d), -h);
  while (true) {
    bool top = std::any_of(c.begin(), c.end(), [h](long v) { return v == h || v == -h; });
    if (top) {
      std::vector<Integer> coeffs(c.begin(), c.end());
      if (!visit(IntPolynomial(std::move(coeffs)))) return false;
    }
    std::size_t k = 0;
    while (k < c.size() && ++c[k] > h) c[k++] = -h;
    if (k == c.size()) return true;
  }
}

}  // namespace detail

/// Decides s·I = t·J for nonzero s, t where it can. Order: module equality; rational lambda
/// (Z[1/n] is a PID, so s and t are the generator gcds); ratios of generators; the multiplier
/// lattice as a separating invariant; a budgeted height search ending in Unknown.
inline ClassVerdict class_equivalent(const IdealRep& a, const IdealRep& b, const ClassSearchOptions& opt = {}) {
  detail::require_same_ring(a, b);
  const RingSpec& ring = a.ring;
  ClassVerdict v;
  auto equal = [&](IntPolynomial s, IntPolynomial t, std::string method) {
    if (!verify_certificate(a, b, s, t)) fail(ErrorCode::CertificateFailure, "class certificate failed to verify");
    v.kind = ClassVerdict::Kind::Equal;
    v.s = std::move(s);
    v.t = std::move(t);
    v.method = std::move(method);
    return v;
  };
  const IntPolynomial one{Integer(1)};
  if (module_equal(a, b)) return equal(one, one, "module-equality");
  if (ring.degree() == 1) {
    Integer ga = 0, gb = 0;
    for (const auto& g : a.generators) ga = gcd_of(ga, g.coeff(0));
    for (const auto& g : b.generators) gb = gcd_of(gb, g.coeff(0));
    return equal(IntPolynomial{gb}, IntPolynomial{ga}, "principal-ideal-domain");
  }
  for (const auto& ga : a.generators)
    for (const auto& gb : b.generators)
      if (!ga.is_zero() && !gb.is_zero() && verify_certificate(a, b, gb, ga)) return equal(gb, ga, "generator-ratio");
  IntMatrix ma = multiplier_lattice(a), mb = multiplier_lattice(b);
  if (ma != mb) {
    v.kind = ClassVerdict::Kind::Different;
    v.method = "multiplier-ring";
    v.invariant = "multiplier rings (I:I) differ (lattices of disc·(I:I) ∩ Z[lambda])";
    v.invariant_lattices = {ma, mb};
    return v;
  }
  long budget = opt.budget;
  for (long h = 1; h <= opt.max_height; ++h) {
    std::optional<std::pair<IntPolynomial, IntPolynomial>> hit;
    bool finished = true;
    for (long hs = 1; hs <= h && finished && !hit; ++hs)
      for (long ht = 1; ht <= h && finished && !hit; ++ht) {
        if (std::max(hs, ht) != h) continue;
        finished = detail::for_each_of_height(ring.degree(), hs, [&](const IntPolynomial& s) {
          return detail::for_each_of_height(ring.degree(), ht, [&](const IntPolynomial& t) {
            if (--budget < 0) return false;
            if (verify_certificate(a, b, s, t)) {
              hit = {s, t};
              return false;
            }
            return true;
          });
        });
      }
    if (hit) return equal(hit->first, hit->second, "height-search");
    if (!finished) break;
    v.search_bound = h;
  }
  v.kind = ClassVerdict::Kind::Unknown;
  v.method = "height-search";
  return v;
}

/// Ideal of Z[lambda, 1/lambda] generated by the normalized left Perron eigenvector.
inline IdealRep left_ideal(const Sft& x) {
  require_mixing(x);
  PerronData p = perron_data(x);
  if (!p.min_poly_certified) fail(ErrorCode::FactorizationIncomplete, "minimal polynomial of lambda is not certified");
  RingSpec ring = make_ring(p.min_poly);
  return make_ideal(ring, p.left_eigenvector);
}

}  // namespace sftlab
