#pragma once

// Brute-force references for one-block codes. Only the Sft/OneBlockCode containers and the
// point presentation are shared with the library.

#include <algorithm>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "oracles.hpp"
#include "sftlab/code.hpp"
#include "sftlab/point.hpp"

namespace oracle {

using sftlab::EventuallyPeriodicPoint;
using sftlab::OneBlockCode;

inline Word image(const OneBlockCode& c, const Word& u) {
  Word v;
  for (Symbol s : u) v.push_back(c.phi()[static_cast<std::size_t>(s)]);
  return v;
}

/// min over codomain words w with |w| <= max_len and positions i of |{u_i : phi(u) = w}|.
inline long degree_star(const OneBlockCode& c, std::size_t max_len) {
  long best = 1 << 30;
  for (std::size_t len = 1; len <= max_len; ++len) {
    std::map<Word, std::vector<std::set<Symbol>>> seen;
    for (const Word& u : oracle::words(c.domain(), len)) {
      auto& sets = seen[image(c, u)];
      sets.resize(len);
      for (std::size_t i = 0; i < len; ++i) sets[i].insert(u[i]);
    }
    for (const auto& [w, sets] : seen)
      for (const auto& s : sets) best = std::min(best, static_cast<long>(s.size()));
  }
  return best;
}

/// Least d*(b, 0) over single codomain symbols.
inline long best_single_symbol(const OneBlockCode& c) {
  std::map<Symbol, long> count;
  for (Symbol b : c.phi()) ++count[b];
  long best = 1 << 30;
  for (const auto& [b, k] : count) best = std::min(best, k);
  return best;
}

/// Searches for distinct points that agree from coordinate 0 on and have equal images.
/// Left parts are cycle^inf . center with cycles and centers up to the given lengths. Two
/// such sequences are equal iff they agree on their last window symbols (Fine and Wilf).
inline bool has_left_collapse(const OneBlockCode& c, std::size_t max_cycle = 6, std::size_t max_center = 6) {
  const Sft& x = c.domain();
  const std::size_t window = max_center + 2 * max_cycle * 5;
  std::map<std::string, std::string> first;
  for (std::size_t p = 1; p <= max_cycle; ++p)
    for (const Word& cyc : oracle::words(x, p)) {
      if (!x.allows(cyc.back(), cyc.front())) continue;
      for (std::size_t m = 0; m <= max_center; ++m)
        for (const Word& center : (m == 0 ? std::set<Word>{Word{}} : oracle::words(x, m))) {
          if (!center.empty() && !x.allows(cyc.back(), center.front())) continue;
          // symbols at coordinates -window .. -1
          std::string dom, img;
          for (std::size_t k = 0; k < window; ++k) {
            long pos = static_cast<long>(k) - static_cast<long>(window);  // coordinate
            long from_end = -pos;                                           // 1-based from the right
            Symbol s;
            if (from_end <= static_cast<long>(center.size())) {
              s = center[center.size() - static_cast<std::size_t>(from_end)];
            } else {
              long back = from_end - static_cast<long>(center.size());
              long r = (static_cast<long>(p) - (back % static_cast<long>(p))) % static_cast<long>(p);
              s = cyc[static_cast<std::size_t>(r)];
            }
            dom.push_back(static_cast<char>('A' + s));
            img.push_back(static_cast<char>('A' + c.phi()[static_cast<std::size_t>(s)]));
          }
          Symbol last = static_cast<Symbol>(dom.back() - 'A');
          for (Symbol s0 : x.successors(last)) {
            std::string key = img + "|" + static_cast<char>('A' + s0);
            auto [it, inserted] = first.emplace(key, dom);
            if (!inserted && it->second != dom) return true;
          }
        }
    }
  return false;
}

inline Sft transpose(const Sft& x) {
  sftlab::BinaryMatrix m(x.size(), std::vector<std::uint8_t>(x.size()));
  for (std::size_t i = 0; i < x.size(); ++i)
    for (std::size_t j = 0; j < x.size(); ++j) m[i][j] = x.matrix()[j][i];
  return sftlab::make_sft(x.alphabet(), m);
}

inline bool has_right_collapse(const OneBlockCode& c) {
  return has_left_collapse(OneBlockCode::make(transpose(c.domain()), transpose(c.codomain()), c.phi()));
}

/// Delay-K window property: domain words on coordinates [-K-1, K] with equal images and equal
/// symbols on [0, K] have equal symbols at -1.
inline bool delay_holds(const OneBlockCode& c, long k) {
  const std::size_t len = static_cast<std::size_t>(2 * k + 2);
  std::map<std::pair<Word, Word>, Symbol> seen;
  for (const Word& u : oracle::words(c.domain(), len)) {
    Word tail(u.begin() + k + 1, u.end());
    auto [it, inserted] = seen.emplace(std::make_pair(image(c, u), tail), u[static_cast<std::size_t>(k)]);
    if (!inserted && it->second != u[static_cast<std::size_t>(k)]) return false;
  }
  return true;
}

// Domain words u with phi(u) = target and consecutive symbols allowed; cyclic adds last->first.
inline std::vector<Word> labeled_words(const OneBlockCode& c, const Word& target, bool cyclic) {
  std::vector<Word> out;
  Word u;
  std::function<void()> go = [&] {
    if (u.size() == target.size()) {
      if (!cyclic || c.domain().allows(u.back(), u.front())) out.push_back(u);
      return;
    }
    for (Symbol s = 0; s < static_cast<Symbol>(c.domain().size()); ++s) {
      if (c.phi()[static_cast<std::size_t>(s)] != target[u.size()]) continue;
      if (!u.empty() && !c.domain().allows(u.back(), s)) continue;
      u.push_back(s);
      go();
      u.pop_back();
    }
  };
  go();
  return out;
}

/// Preimages of y whose cycles have length a * |cycle of y| with a <= |domain alphabet| and
/// whose transient extends at most `reach` coordinates beyond the center of y on each side.
inline std::set<std::vector<Word>> fiber(const OneBlockCode& c, const EventuallyPeriodicPoint& point, long reach = 6) {
  EventuallyPeriodicPoint y = sftlab::canonical(point);
  const long p = static_cast<long>(y.left_cycle.size()), q = static_cast<long>(y.right_cycle.size());
  const long na = static_cast<long>(c.domain().size());
  std::set<std::vector<Word>> out;
  const Sft& x = c.domain();
  for (long el = 0; el <= reach; ++el)
    for (long er = 0; er <= reach; ++er) {
      const long lo = y.left_boundary() - el, hi = y.right_boundary() + er;
      for (const Word& mid : labeled_words(c, y.window(lo, hi), false))
        for (long a = 1; a <= na; ++a)
          for (const Word& left : labeled_words(c, y.window(lo - a * p, lo), true))
            for (long b = 1; b <= na; ++b)
              for (const Word& right : labeled_words(c, y.window(hi, hi + b * q), true)) {
                Word seam = left;
                seam.insert(seam.end(), mid.begin(), mid.end());
                seam.push_back(right.front());
                if (!x.admissible(seam)) continue;
                auto cz = sftlab::canonical(EventuallyPeriodicPoint{left, mid, right, -lo});
                out.insert({cz.left_cycle, cz.center, cz.right_cycle, Word{static_cast<Symbol>(cz.phase)}});
              }
    }
  return out;
}

}  // namespace oracle
