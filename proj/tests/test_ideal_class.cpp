#include <gtest/gtest.h>

#include <random>

#include "corpus.hpp"
#include "sftlab/ideal_class.hpp"
#include "sftlab/recoding.hpp"

using namespace sftlab;

namespace {

IntPolynomial poly(std::initializer_list<long> c) {
  std::vector<Integer> v;
  for (long x : c) v.push_back(Integer(x));
  return IntPolynomial(std::move(v));
}

// Oracle: index of the lattice spanned by the rows = gcd of all maximal minors (cofactor
// determinants), 0 when the rows do not have full rank.
Integer det_cofactor(const std::vector<std::vector<Integer>>& m) {
  const std::size_t n = m.size();
  if (n == 1) return m[0][0];
  Integer s = 0;
  for (std::size_t j = 0; j < n; ++j) {
    std::vector<std::vector<Integer>> minor;
    for (std::size_t i = 1; i < n; ++i) {
      std::vector<Integer> row;
      for (std::size_t k = 0; k < n; ++k)
        if (k != j) row.push_back(m[i][k]);
      minor.push_back(row);
    }
    Integer c = m[0][j] * det_cofactor(minor);
    s += (j % 2 == 0) ? c : Integer(-c);
  }
  return s;
}

Integer minors_gcd(const std::vector<std::vector<Integer>>& rows, std::size_t d) {
  Integer g = 0;
  std::vector<std::size_t> pick(d);
  std::function<void(std::size_t, std::size_t)> go = [&](std::size_t start, std::size_t depth) {
    if (depth == d) {
      std::vector<std::vector<Integer>> m;
      for (auto i : pick) m.push_back(rows[i]);
      g = gcd_of(g, det_cofactor(m));
      return;
    }
    for (std::size_t i = start; i < rows.size(); ++i) {
      pick[depth] = i;
      go(i + 1, depth + 1);
    }
  };
  go(0, 0);
  return g;
}

std::vector<std::vector<Integer>> module_rows(const IdealRep& ideal) {
  std::vector<std::vector<Integer>> rows;
  for (const auto& g : ideal.generators)
    for (int e = 0; e < ideal.ring.degree(); ++e)
      rows.push_back(ideal.ring.coordinates(g * IntPolynomial::monomial(Integer(1), static_cast<std::size_t>(e))));
  return rows;
}

// v ∈ lattice(rows) iff adding v keeps the index.
bool lattice_member(const std::vector<std::vector<Integer>>& rows, const std::vector<Integer>& v, std::size_t d) {
  auto more = rows;
  more.push_back(v);
  return minors_gcd(rows, d) == minors_gcd(more, d);
}

// g ∈ R·J iff lambda^k g ∈ Z[lambda]·J for some k; 40 exceeds every saturation length here.
bool oracle_contains(const IdealRep& j, const IntPolynomial& g) {
  auto rows = module_rows(j);
  const std::size_t d = static_cast<std::size_t>(j.ring.degree());
  IntPolynomial cur = j.ring.reduce(g);
  for (int k = 0; k <= (j.ring.inverted ? 40 : 0); ++k) {
    if (lattice_member(rows, j.ring.coordinates(cur), d)) return true;
    cur = j.ring.mul(cur, IntPolynomial::x());
  }
  return false;
}

bool oracle_module_equal(const IdealRep& a, const IdealRep& b) {
  for (const auto& g : a.generators)
    if (!oracle_contains(b, g)) return false;
  for (const auto& g : b.generators)
    if (!oracle_contains(a, g)) return false;
  return true;
}

IntPolynomial random_element(std::mt19937& gen, int degree, long height) {
  std::vector<Integer> c;
  while (true) {
    c.clear();
    for (int i = 0; i < degree; ++i) c.push_back(Integer(static_cast<long>(gen() % static_cast<unsigned>(2 * height + 1)) - height));
    IntPolynomial p(c);
    if (!p.is_zero()) return p;
  }
}

std::vector<RingSpec> test_rings() {
  return {make_ring(poly({-1, -1, 1})),          // golden mean
          make_ring(poly({-2, 1})),              // lambda = 2
          make_ring(poly({1, -3, 1})),           // [[2,1],[1,1]]
          make_ring(poly({-1, -4, 1})),          // 2 + sqrt 5: Z[lambda] is not maximal
          make_ring(poly({-1, -1, 1}), false),   // golden mean without 1/lambda
          make_ring(poly({-2, 0, -1, 1}))};      // cubic
}

std::vector<std::pair<std::string, IdealRep>> corpus_ideals() {
  std::vector<std::pair<std::string, IdealRep>> out;
  for (const auto& [name, x] : corpus::mixing()) out.emplace_back(name, left_ideal(x));
  return out;
}

}  // namespace

TEST(Ring, ReductionMatchesRationalRemainder) {
  auto ring = make_ring(poly({-2, 0, -1, 1}));
  std::mt19937 gen(7);
  for (int k = 0; k < 50; ++k) {
    IntPolynomial p = random_element(gen, 7, 9);
    EXPECT_EQ(to_rational(ring.reduce(p)), remainder(to_rational(p), to_rational(ring.min_poly)));
  }
  EXPECT_THROW(make_ring(poly({-1, 0, 1})), Error);  // x^2 - 1 is reducible
  EXPECT_THROW(make_ring(poly({0, 1})), Error);      // lambda = 0
}

TEST(Ring, DiscriminantsOfQuadratics) {
  EXPECT_EQ(discriminant(make_ring(poly({-1, -1, 1}))), 5);
  EXPECT_EQ(discriminant(make_ring(poly({-1, -4, 1}))), 20);
  EXPECT_EQ(discriminant(make_ring(poly({-2, 1}))), 1);
}

TEST(Lattice, HermiteFormIndexMatchesMinorGcd) {
  std::mt19937 gen(11);
  for (int trial = 0; trial < 40; ++trial) {
    const std::size_t d = 2 + trial % 3;
    IntMatrix rows;
    for (std::size_t r = 0; r < d + 2; ++r) {
      std::vector<Integer> row;
      for (std::size_t c = 0; c < d; ++c) row.push_back(Integer(static_cast<long>(gen() % 21) - 10));
      rows.push_back(row);
    }
    IntMatrix h = hermite_normal_form(rows);
    Integer g = minors_gcd(rows, d);
    if (g == 0) continue;
    ASSERT_EQ(h.size(), d);
    EXPECT_EQ(lattice_index(h), g);
    EXPECT_EQ(hermite_normal_form(h), h);
    for (const auto& row : rows) EXPECT_TRUE(lattice_member(h, row, d));
  }
}

TEST(ModuleEqual, Examples) {
  auto golden = make_ring(poly({-1, -1, 1}));
  auto two = make_ring(poly({-2, 1}));
  auto i = make_ideal(golden, {poly({0, 1}), poly({1})});
  EXPECT_TRUE(module_equal(i, i));
  EXPECT_TRUE(module_equal(i, unit_ideal(golden)));
  EXPECT_TRUE(module_equal(make_ideal(two, {poly({2})}), unit_ideal(two)));
  auto golden_plain = make_ring(poly({-1, -1, 1}), false);
  EXPECT_FALSE(module_equal(make_ideal(golden_plain, {poly({2})}), unit_ideal(golden_plain)));
  EXPECT_FALSE(module_equal(make_ideal(golden, {poly({2})}), unit_ideal(golden)));
  EXPECT_THROW(module_equal(unit_ideal(golden), unit_ideal(two)), Error);
}

TEST(ModuleEqual, MatchesMembershipOracle) {
  std::mt19937 gen(5);
  for (const auto& ring : test_rings()) {
    std::vector<IdealRep> ideals;
    for (int k = 0; k < 8; ++k) {
      std::vector<IntPolynomial> gens;
      for (int g = 0; g < 1 + k % 3; ++g) gens.push_back(random_element(gen, ring.degree(), 3));
      ideals.push_back(make_ideal(ring, gens));
    }
    ideals.push_back(unit_ideal(ring));
    ideals.push_back(scale(unit_ideal(ring), IntPolynomial::x()));
    for (const auto& a : ideals)
      for (const auto& b : ideals) EXPECT_EQ(module_equal(a, b), oracle_module_equal(a, b));
  }
}

TEST(ModuleEqual, InvariantUnderPermutingAndDuplicatingGenerators) {
  for (const auto& [name, i] : corpus_ideals()) {
    IdealRep j = i;
    std::reverse(j.generators.begin(), j.generators.end());
    j.generators.push_back(j.generators.front());
    EXPECT_TRUE(module_equal(i, j)) << name;
  }
}

TEST(ModuleEqual, IsAnEquivalenceRelation) {
  auto ring = make_ring(poly({1, -3, 1}));
  std::mt19937 gen(9);
  std::vector<IdealRep> ideals;
  for (int k = 0; k < 6; ++k) ideals.push_back(make_ideal(ring, {random_element(gen, 2, 2), random_element(gen, 2, 2)}));
  ideals.push_back(unit_ideal(ring));
  for (const auto& a : ideals)
    for (const auto& b : ideals) {
      EXPECT_EQ(module_equal(a, b), module_equal(b, a));
      for (const auto& c : ideals)
        if (module_equal(a, b) && module_equal(b, c)) {
          EXPECT_TRUE(module_equal(a, c));
        }
    }
}

TEST(LeftIdeal, Examples) {
  auto g = left_ideal(corpus::golden());
  EXPECT_EQ(g.generators, (std::vector<IntPolynomial>{poly({0, 1}), poly({1})}));
  EXPECT_TRUE(module_equal(g, unit_ideal(g.ring)));
  auto f = left_ideal(corpus::full2());
  EXPECT_EQ(f.ring.min_poly, poly({-2, 1}));
  EXPECT_EQ(f.generators, (std::vector<IntPolynomial>{poly({1}), poly({1})}));
  auto p = left_ideal(corpus::fixed_point());
  EXPECT_EQ(p.generators, (std::vector<IntPolynomial>{poly({1})}));
}

TEST(ClassEquivalent, EntropyLogTwoPresentationsAgree) {
  auto a = left_ideal(corpus::full2());
  auto b = left_ideal(higher_block(corpus::full2(), 2).sft);
  auto v = class_equivalent(a, b);
  ASSERT_EQ(v.kind, ClassVerdict::Kind::Equal);
  EXPECT_TRUE(verify_certificate(a, b, v.s, v.t));
}

TEST(ClassEquivalent, Examples) {
  auto g = left_ideal(corpus::golden());
  auto v = class_equivalent(g, unit_ideal(g.ring));
  EXPECT_EQ(v.kind, ClassVerdict::Kind::Equal);
  auto w = class_equivalent(g, scale(g, IntPolynomial::x()));
  EXPECT_EQ(w.kind, ClassVerdict::Kind::Equal);
  EXPECT_TRUE(verify_certificate(g, scale(g, IntPolynomial::x()), w.s, w.t));
}

TEST(ClassEquivalent, NonMaximalOrderIsSeparatedByMultiplierRing) {
  // lambda = 2 + sqrt 5; (2, 1 + sqrt 5) = (2, lambda - 1) is a module over the maximal order
  auto ring = make_ring(poly({-1, -4, 1}));
  auto i = make_ideal(ring, {poly({2}), poly({-1, 1})});
  auto v = class_equivalent(i, unit_ideal(ring));
  EXPECT_EQ(v.kind, ClassVerdict::Kind::Different);
  EXPECT_NE(v.invariant_lattices.first, v.invariant_lattices.second);
  EXPECT_EQ(class_equivalent(unit_ideal(ring), i).kind, ClassVerdict::Kind::Different);
}

TEST(ClassEquivalent, NonPrincipalIdealIsNeverClaimedEqual) {
  // Z[sqrt -5]: (2, 1 + sqrt -5) is not principal, and inverting sqrt -5 keeps it so
  auto ring = make_ring(poly({5, 0, 1}));
  auto i = make_ideal(ring, {poly({2}), poly({1, 1})});
  ClassSearchOptions opt;
  opt.budget = 3000;
  auto v = class_equivalent(i, unit_ideal(ring), opt);
  EXPECT_EQ(v.kind, ClassVerdict::Kind::Unknown);
  EXPECT_GE(v.search_bound, 1);
}

TEST(ClassEquivalent, ScalingInvariance) {
  std::mt19937 gen(2024);
  for (const auto& [name, i] : corpus_ideals()) {
    for (int k = 0; k < 20; ++k) {
      IntPolynomial s = random_element(gen, i.ring.degree(), 5);
      auto v = class_equivalent(i, scale(i, s));
      ASSERT_EQ(v.kind, ClassVerdict::Kind::Equal) << name;
      EXPECT_TRUE(verify_certificate(i, scale(i, s), v.s, v.t)) << name;
    }
  }
}

TEST(ClassEquivalent, SymmetricAndReflexiveOnCorpus) {
  auto ideals = corpus_ideals();
  for (const auto& [na, a] : ideals)
    for (const auto& [nb, b] : ideals) {
      if (!(a.ring == b.ring)) {
        EXPECT_THROW(class_equivalent(a, b), Error);
        continue;
      }
      EXPECT_EQ(class_equivalent(a, b).kind, class_equivalent(b, a).kind) << na << " " << nb;
    }
  for (const auto& [n, a] : ideals) EXPECT_EQ(class_equivalent(a, a).kind, ClassVerdict::Kind::Equal) << n;
}

TEST(ClassEquivalent, RationalLambdaHasOneClass) {
  auto ring = make_ring(poly({-6, 1}));
  std::mt19937 gen(3);
  for (int k = 0; k < 20; ++k) {
    auto i = make_ideal(ring, {random_element(gen, 1, 40), random_element(gen, 1, 40)});
    auto v = class_equivalent(i, unit_ideal(ring));
    ASSERT_EQ(v.kind, ClassVerdict::Kind::Equal);
    EXPECT_TRUE(verify_certificate(i, unit_ideal(ring), v.s, v.t));
  }
}

TEST(ClassEquivalent, InvariantUnderTwoBlockRecoding) {
  for (const auto& [name, x] : corpus::mixing()) {
    auto a = left_ideal(x);
    auto b = left_ideal(higher_block(x, 2).sft);
    auto v = class_equivalent(a, b);
    ASSERT_EQ(v.kind, ClassVerdict::Kind::Equal) << name;
    EXPECT_TRUE(verify_certificate(a, b, v.s, v.t)) << name;
  }
}
