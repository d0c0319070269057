#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "sftlab/block_codes.hpp"
#include "sftlab/spectral.hpp"

namespace sftlab {

/// Common extension (Z, pi1: Z -> X, pi2: Z -> Y) with magic symbols a (for pi1) and b (for
/// pi2). If pi1 had no magic symbol, X is replaced by a block presentation X~ (x_recoding
/// holds the translation) and Z by the recoded domain; pi2 is composed accordingly and still
/// lands in the original Y.
struct ConjugacySetup {
  Sft z;
  OneBlockCode pi1;
  OneBlockCode pi2;
  Symbol a = 0, b = 0;      // codomain symbols
  Symbol z_a = 0, z_b = 0;  // the single Z-symbols over a and b
  long k1 = 0, k2 = 0;
  std::optional<MagicRecoding> x_recoding;
  std::vector<std::string> notes;

  const Sft& x() const { return pi1.codomain(); }
  const Sft& y() const { return pi2.codomain(); }
  const Sft& x_original() const { return x_recoding ? x_recoding->original.codomain() : pi1.codomain(); }

  /// Point of the original X in the working presentation.
  EventuallyPeriodicPoint to_working(const EventuallyPeriodicPoint& x_point) const {
    validate_point(x_original(), x_point);
    return x_recoding ? x_recoding->encode_codomain(x_point) : x_point;
  }
};

namespace detail {

inline Symbol single_preimage(const OneBlockCode& c, Symbol s) {
  auto f = c.fibers()[static_cast<std::size_t>(s)];
  if (f.size() != 1) fail(ErrorCode::CertificateFailure, "magic symbol fiber is not a single symbol");
  return f.front();
}

inline void check_factor_map(const OneBlockCode& c, const std::string& name) {
  if (!is_factor_onto(c).onto) fail(ErrorCode::NotFactor, name + " is not onto");
  auto closing = is_left_closing(c);
  if (!closing.closing) fail(ErrorCode::NotLeftClosing, name + " is not left-closing");
  auto d = degree_star(c);
  if (d.d_star != 1) fail(ErrorCode::NotAlmostInvertible, name + " has d* = " + std::to_string(d.d_star));
}

}  // namespace detail

/// Validates the two factor maps and locates magic symbols, recoding pi1 when its magic words
/// are longer than one symbol. Since d* = 1, a magic symbol has exactly one Z-symbol above it,
/// so "z_n = a" and "pi1(z)_n = a" are the same condition.
/// Requested magic symbols (codomain symbols of X and Y); unset means the first available one.
struct MagicChoice {
  std::optional<Symbol> a, b;
};

inline ConjugacySetup validate_setup(const OneBlockCode& pi1, const OneBlockCode& pi2, const MagicChoice& choice = {},
                                     const Limits& limits = {}) {
  if (!(pi1.domain() == pi2.domain())) fail(ErrorCode::DomainMismatch, "pi1 and pi2 must share the domain Z");
  require_mixing(pi1.domain(), "Z");
  require_mixing(pi1.codomain(), "X");
  require_mixing(pi2.codomain(), "Y");
  detail::check_factor_map(pi1, "pi1");
  detail::check_factor_map(pi2, "pi2");
  ConjugacySetup s;
  s.pi1 = pi1;
  s.pi2 = pi2;
  auto d1 = degree_star(pi1, limits);
  auto is_magic = [](const OneBlockCode& c, Symbol m) {
    if (m < 0 || static_cast<std::size_t>(m) >= c.codomain().size()) fail(ErrorCode::UnknownSymbol, "magic symbol out of range");
    return c.fibers()[static_cast<std::size_t>(m)].size() == 1;
  };
  std::optional<Symbol> a;
  if (choice.a) {
    if (!is_magic(pi1, *choice.a))
      fail(ErrorCode::MagicSymbolUnavailable, pi1.codomain().name(*choice.a) + " is not a magic symbol of pi1");
    a = choice.a;
  } else {
    a = find_magic_symbol(pi1, d1);
  }
  if (!a) {
    auto r = recode_to_magic_symbol(pi1, d1.witness_word, d1.witness_index, limits);
    s.pi1 = r.code;
    s.pi2 = compose(pi2, r.domain_map);
    a = r.magic;
    s.notes.push_back("pi1 recoded to the " + std::to_string(r.block_length) + "-block presentation of X to obtain a magic symbol");
    s.x_recoding = std::move(r);
  }
  s.z = s.pi1.domain();
  s.a = *a;
  std::optional<Symbol> b;
  if (choice.b) {
    if (!is_magic(s.pi2, *choice.b))
      fail(ErrorCode::MagicSymbolUnavailable, s.y().name(*choice.b) + " is not a magic symbol of pi2");
    b = choice.b;
  } else {
    b = find_magic_symbol(s.pi2);
  }
  if (!b) fail(ErrorCode::MagicSymbolUnavailable, "pi2 has no magic symbol on the common extension");
  s.b = *b;
  s.z_a = detail::single_preimage(s.pi1, s.a);
  s.z_b = detail::single_preimage(s.pi2, s.b);
  s.k1 = *is_left_closing(s.pi1).delay;
  s.k2 = *is_left_closing(s.pi2).delay;
  s.notes.push_back("magic symbol a = " + s.x().name(s.a) + " is identified with the Z-symbol " + s.z.name(s.z_a));
  s.notes.push_back("magic symbol b = " + s.y().name(s.b) + " is identified with the Z-symbol " + s.z.name(s.z_b));
  return s;
}

struct EntropyGap {
  RationalInterval h_z;
  RationalInterval h_forbidden;
  RationalInterval gap;
  bool forbidden_empty = false;
};

/// h(Z) - h(Z minus the symbol), with h of the empty shift taken as 0.
inline EntropyGap entropy_gap(const Sft& z, Symbol a) {
  EntropyGap g;
  g.h_z = entropy(z);
  try {
    g.h_forbidden = topological_entropy(forbid_symbol(z, a));
  } catch (const Error& e) {
    if (e.code() != ErrorCode::EmptyShift) throw;
    g.h_forbidden = RationalInterval::point(0);
    g.forbidden_empty = true;
  }
  g.gap = g.h_z - g.h_forbidden;
  return g;
}

struct GapCertificate {
  RationalInterval h_z, h_za, h_zb, gap;
};

inline GapCertificate gap_certificate(const ConjugacySetup& s) {
  EntropyGap ga = entropy_gap(s.z, s.z_a), gb = entropy_gap(s.z, s.z_b);
  GapCertificate c{ga.h_z, ga.h_forbidden, gb.h_forbidden, ga.h_z - max_of(ga.h_forbidden, gb.h_forbidden)};
  if (c.gap.lo <= 0) fail(ErrorCode::GapNotCertified, "entropy enclosures do not separate h(Z) from h(Z(a)), h(Z(b))");
  return c;
}

struct WordCountRow {
  std::size_t n = 0;
  Integer count;
  Rational bound;
};

struct ExcludedCountReport {
  long n0 = 0;
  GrowthBound z_growth, excluded_growth;
  std::vector<WordCountRow> rows;
};

/// Counts Z-words z[0, n) with z_k != a for every k >= n0 and checks them against
/// C_Z mu_Z^max(0,n0) * C_a mu_a^n, where (mu_a, C_a) bound paths avoiding a. Splitting a word
/// at n0 proves the bound for every n because all four factors are at least 1.
inline ExcludedCountReport excluded_wordcount_check(const Sft& z, Symbol a, long n0, std::size_t n_max) {
  ExcludedCountReport r;
  r.n0 = n0;
  r.z_growth = growth_constant(z);
  r.z_growth.constant = std::max(Rational(1), r.z_growth.constant);
  std::vector<Symbol> keep;
  for (Symbol s = 0; s < static_cast<Symbol>(z.size()); ++s)
    if (s != a) keep.push_back(s);
  r.excluded_growth = growth_bound_of_matrix(submatrix(z.matrix(), keep));
  const Rational head = r.z_growth.at(static_cast<std::size_t>(std::max(0L, n0)));
  // counts by dynamic programming over the last symbol
  std::vector<Integer> ways(z.size(), Integer(0));
  for (std::size_t n = 1; n <= n_max; ++n) {
    const long pos = static_cast<long>(n) - 1;
    std::vector<Integer> next(z.size(), Integer(0));
    for (Symbol t = 0; t < static_cast<Symbol>(z.size()); ++t) {
      if (t == a && pos >= n0) continue;
      if (n == 1) {
        next[static_cast<std::size_t>(t)] = 1;
        continue;
      }
      for (Symbol s : z.predecessors(t)) next[static_cast<std::size_t>(t)] += ways[static_cast<std::size_t>(s)];
    }
    ways = std::move(next);
    Integer total = 0;
    for (const auto& w : ways) total += w;
    WordCountRow row{n, total, head * r.excluded_growth.at(n)};
    r.rows.push_back(row);
    if (Rational(total) > row.bound) fail(ErrorCode::CertificateFailure, "excluded-set word count exceeds its bound at n = " + std::to_string(n));
  }
  return r;
}

inline ExcludedCountReport excluded_wordcount_check(const ConjugacySetup& s, long n0, std::size_t n_max) {
  return excluded_wordcount_check(s.z, s.z_a, n0, n_max);
}

struct MembershipReport {
  bool member = false;
  std::string explanation;
};

namespace detail {

inline bool right_cycle_contains(const EventuallyPeriodicPoint& z, Symbol s) {
  return std::find(z.right_cycle.begin(), z.right_cycle.end(), s) != z.right_cycle.end();
}

inline std::string point_text(const Sft& x, const EventuallyPeriodicPoint& p) {
  auto word = [&](const Word& w) {
    std::string out;
    for (std::size_t i = 0; i < w.size(); ++i) out += (i ? " " : "") + x.name(w[i]);
    return out;
  };
  return "(" + word(p.left_cycle) + ")^inf [" + word(p.center) + "] (" + word(p.right_cycle) + ")^inf, phase " +
         std::to_string(p.phase);
}

inline MembershipReport lifts_avoid_excluded(const ConjugacySetup& s, const OneBlockCode& code,
                                             const EventuallyPeriodicPoint& x, const std::string& what) {
  for (const auto& z : fiber_of_point(code, x)) {
    for (Symbol m : {s.z_a, s.z_b}) {
      if (right_cycle_contains(z, m)) continue;
      return {false, "preimage " + point_text(s.z, z) + " avoids " + s.z.name(m) + " at all large positive coordinates, so " +
                         what + " lies in the image of the excluded set"};
    }
  }
  return {true, "every preimage visits " + s.z.name(s.z_a) + " and " + s.z.name(s.z_b) + " infinitely often to the right"};
}

}  // namespace detail

/// x (a point of the original X) lies in X' iff no preimage falls into E_a or E_b.
inline MembershipReport in_X_prime(const ConjugacySetup& s, const EventuallyPeriodicPoint& x) {
  return detail::lifts_avoid_excluded(s, s.pi1, s.to_working(x), "x");
}

namespace detail {

// Symbols that can occupy each position of a domain word labelled `label`, with optional pins.
inline std::vector<std::vector<Symbol>> candidates(const OneBlockCode& c, const Word& label,
                                                   const std::vector<std::optional<Symbol>>& pins) {
  const Sft& z = c.domain();
  const std::size_t len = label.size(), n = z.size();
  auto fits = [&](std::size_t i, Symbol t) { return c(t) == label[i] && (!pins[i] || *pins[i] == t); };
  std::vector<std::vector<char>> fwd(len, std::vector<char>(n, 0)), bwd = fwd;
  for (std::size_t i = 0; i < len; ++i)
    for (Symbol t = 0; t < static_cast<Symbol>(n); ++t) {
      if (!fits(i, t)) continue;
      bool ok = i == 0;
      for (Symbol p : z.predecessors(t)) ok = ok || fwd[i - 1][static_cast<std::size_t>(p)];
      fwd[i][static_cast<std::size_t>(t)] = ok;
    }
  for (std::size_t i = len; i-- > 0;)
    for (Symbol t = 0; t < static_cast<Symbol>(n); ++t) {
      if (!fits(i, t)) continue;
      bool ok = i + 1 == len;
      for (Symbol q : z.successors(t)) ok = ok || bwd[i + 1][static_cast<std::size_t>(q)];
      bwd[i][static_cast<std::size_t>(t)] = ok;
    }
  std::vector<std::vector<Symbol>> out(len);
  for (std::size_t i = 0; i < len; ++i)
    for (Symbol t = 0; t < static_cast<Symbol>(n); ++t)
      if (fwd[i][static_cast<std::size_t>(t)] && bwd[i][static_cast<std::size_t>(t)]) out[i].push_back(t);
  return out;
}

// Reconstruction from magic occurrences and the closing delay. Between two occurrences of the
// magic symbol the lift is a path with fixed endpoints and fixed label, hence unique (closing
// codes have no diamonds); to the left, z[m, m+K] and x[m-K-1, m+K] fix z_{m-1}.
inline EventuallyPeriodicPoint reconstruct_lift(const ConjugacySetup& s, const EventuallyPeriodicPoint& x) {
  const long q = static_cast<long>(x.right_cycle.size());
  const long lp = static_cast<long>(x.left_cycle.size());
  const long k = s.k1;
  long t = std::max(x.right_boundary(), x.left_boundary());
  while (x.at(t) != s.a) ++t;  // terminates: a occurs in the right cycle
  Word label = x.window(t, t + 3 * q + 1);
  std::vector<std::optional<Symbol>> pins(label.size());
  for (std::size_t i = 0; i < label.size(); ++i)
    if (label[i] == s.a) pins[i] = s.z_a;
  auto right = candidates(s.pi1, label, pins);
  std::map<long, Symbol> z;
  for (std::size_t i = 0; i < right.size(); ++i) {
    if (right[i].size() != 1) fail(ErrorCode::CertificateFailure, "lift between magic occurrences is not unique");
    z[t + static_cast<long>(i)] = right[i].front();
  }
  for (long i = 0; i < q; ++i)
    if (z[t + i] != z[t + q + i]) fail(ErrorCode::CertificateFailure, "lift is not periodic on the right cycle");
  // leftward propagation until the state (z[m, m+K], m mod |left cycle|) repeats
  const Sft& zs = s.z;
  std::map<std::pair<Word, long>, long> seen;
  long m = t;
  while (true) {
    if (m + k + 1 < x.left_boundary()) {
      Word state;
      for (long i = m; i <= m + k; ++i) state.push_back(z[i]);
      auto key = std::make_pair(state, ((m % lp) + lp) % lp);
      auto [it, fresh] = seen.emplace(key, m);
      if (!fresh) {
        const long period = it->second - m;
        const long lo = it->second;
        return point_from_sequence([&](long n) { return z.at(n); }, lo, t, period, q);
      }
    }
    Word back = x.window(m - k - 1, m);
    std::vector<std::optional<Symbol>> none(back.size());
    auto options = candidates(s.pi1, back, none).back();
    std::vector<Symbol> fit;
    for (Symbol c : options)
      if (zs.allows(c, z[m])) fit.push_back(c);
    if (fit.size() != 1) fail(ErrorCode::CertificateFailure, "delay propagation did not determine the lift");
    z[--m] = fit.front();
  }
}

}  // namespace detail

/// The unique preimage of x (given in the original X) in the common extension Z.
inline EventuallyPeriodicPoint invert_pi1(const ConjugacySetup& s, const EventuallyPeriodicPoint& x_original) {
  auto member = in_X_prime(s, x_original);
  if (!member.member) fail(ErrorCode::NotInXPrime, member.explanation);
  const auto x = s.to_working(x_original);
  auto fiber = fiber_of_point(s.pi1, x);
  if (fiber.size() != 1)
    fail(ErrorCode::UniquenessViolated, std::to_string(fiber.size()) + " preimages of a point of X'");
  auto rebuilt = detail::reconstruct_lift(s, x);
  if (!(rebuilt == fiber.front())) fail(ErrorCode::CertificateFailure, "magic/delay reconstruction disagrees with the fiber");
  return fiber.front();
}

/// pi2(pi1^{-1}(x)), a point of Y'.
inline EventuallyPeriodicPoint conjugacy_map(const ConjugacySetup& s, const EventuallyPeriodicPoint& x) {
  auto y = canonical(apply_code(s.pi2, invert_pi1(s, x)));
  auto member = detail::lifts_avoid_excluded(s, s.pi2, y, "the image");
  if (!member.member) fail(ErrorCode::NotInXPrime, "image is not in Y': " + member.explanation);
  return y;
}

struct WindowCertificate {
  EventuallyPeriodicPoint point;  // working presentation of x
  long n = 0;
  long n1 = 0, nk = 0;            // magic occurrences used
  long minimal_n = 0;             // smallest window radius that already determines z_0
  Word window;                    // x[-n, n]
  Symbol z0 = 0;
};

/// The Z-symbol at coordinate 0 forced by the bare window x[-n, n], if any.
inline std::optional<Symbol> verify_window(const ConjugacySetup& s, const Word& window, long n) {
  if (static_cast<long>(window.size()) != 2 * n + 1) fail(ErrorCode::InvalidWord, "window length must be 2N + 1");
  if (!s.x().admissible(window)) fail(ErrorCode::InvalidWord, "window is not a word of X");
  std::vector<std::optional<Symbol>> none(window.size());
  auto c = detail::candidates(s.pi1, window, none)[static_cast<std::size_t>(n)];
  if (c.size() != 1) return std::nullopt;
  return c.front();
}

inline WindowCertificate window_determination(const ConjugacySetup& s, const EventuallyPeriodicPoint& x_original) {
  auto z = invert_pi1(s, x_original);
  WindowCertificate w;
  w.point = s.to_working(x_original);
  long n1 = 0;
  while (w.point.at(n1) != s.a) ++n1;
  long nk = n1;
  while (nk - n1 < s.k1 || w.point.at(nk) != s.a) ++nk;
  w.n1 = n1;
  w.nk = nk;
  w.n = std::max(s.k1, nk);
  w.window = w.point.window(-w.n, w.n + 1);
  auto z0 = verify_window(s, w.window, w.n);
  if (!z0 || *z0 != z.at(0)) fail(ErrorCode::CertificateFailure, "window x[-N, N] does not determine the lift at 0");
  w.z0 = *z0;
  for (w.minimal_n = 0; w.minimal_n < w.n; ++w.minimal_n) {
    auto c = verify_window(s, w.point.window(-w.minimal_n, w.minimal_n + 1), w.minimal_n);
    if (c && *c == w.z0) break;
  }
  return w;
}

struct RoundtripFailure {
  EventuallyPeriodicPoint x;
  std::string reason;
};

struct RoundtripReport {
  std::size_t tested = 0, passed = 0, skipped = 0;
  std::vector<RoundtripFailure> failures;
};

/// For each sample x of X' checks that the reverse map sends conjugacy_map(x) back to x.
/// Samples outside X' are skipped.
inline RoundtripReport roundtrip_check(const ConjugacySetup& xy, const ConjugacySetup& yx,
                                       const std::vector<EventuallyPeriodicPoint>& samples) {
  RoundtripReport r;
  for (const auto& x : samples) {
    if (!in_X_prime(xy, x).member) {
      ++r.skipped;
      continue;
    }
    ++r.tested;
    try {
      auto back = conjugacy_map(yx, conjugacy_map(xy, x));
      if (back == x)
        ++r.passed;
      else
        r.failures.push_back({x, "returned a different point"});
    } catch (const Error& e) {
      r.failures.push_back({x, e.what()});
    }
  }
  return r;
}

namespace detail {

template <typename Gen>
std::optional<Word> random_cycle_from(const Sft& x, Gen& gen, Symbol start, std::size_t max_len) {
  for (int attempt = 0; attempt < 200; ++attempt) {
    const std::size_t len = 1 + static_cast<std::size_t>(gen() % max_len);
    Word w{start};
    while (w.size() < len) {
      const auto& next = x.successors(w.back());
      w.push_back(next[static_cast<std::size_t>(gen() % next.size())]);
    }
    if (x.allows(w.back(), w.front())) return w;
  }
  return std::nullopt;
}

}  // namespace detail

/// Random eventually periodic point with cycles of length <= max_cycle and center of length
/// <= max_center. Only gen() and modular reduction are used, so a seeded std::mt19937_64
/// reproduces the same points everywhere.
template <typename Gen>
EventuallyPeriodicPoint random_point(const Sft& x, Gen& gen, std::size_t max_cycle = 8, std::size_t max_center = 8) {
  if (x.size() == 0) fail(ErrorCode::EmptyShift, "no points");
  for (int attempt = 0; attempt < 1000; ++attempt) {
    auto left = detail::random_cycle_from(x, gen, static_cast<Symbol>(gen() % x.size()), max_cycle);
    if (!left) continue;
    EventuallyPeriodicPoint p;
    p.left_cycle = *left;
    const std::size_t center_len = static_cast<std::size_t>(gen() % (max_center + 1));
    Symbol last = p.left_cycle.back();
    for (std::size_t i = 0; i < center_len; ++i) {
      const auto& next = x.successors(last);
      last = next[static_cast<std::size_t>(gen() % next.size())];
      p.center.push_back(last);
    }
    const auto& next = x.successors(last);
    auto right = detail::random_cycle_from(x, gen, next[static_cast<std::size_t>(gen() % next.size())], max_cycle);
    if (!right) continue;
    p.right_cycle = *right;
    p.phase = static_cast<long>(gen() % (center_len + 1));
    validate_point(x, p);
    return p;
  }
  fail(ErrorCode::ResourceLimit, "could not sample a periodic point");
}

}  // namespace sftlab
