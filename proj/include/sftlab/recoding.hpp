#pragma once

#include <map>
#include <string>
#include <vector>

#include "sftlab/code.hpp"
#include "sftlab/point.hpp"
#include "sftlab/sft.hpp"

namespace sftlab {

/// Name of a block symbol: plain concatenation when every name is one character,
/// otherwise a parenthesized tuple.
inline std::string block_name(const Sft& x, const Word& w) {
  bool single = true;
  for (Symbol s : w) single = single && x.name(s).size() == 1;
  std::string out = single ? "" : "(";
  for (std::size_t k = 0; k < w.size(); ++k) {
    if (!single && k > 0) out += ",";
    out += x.name(w[k]);
  }
  if (!single) out += ")";
  return out;
}

/// m-block presentation X^[m] together with the conjugacy X^[m] -> X reading the first coordinate.
struct BlockPresentation {
  Sft sft;
  OneBlockCode decode;
  std::vector<Word> blocks;   // blocks[s] is the m-block named by symbol s
  std::map<Word, Symbol> index;
  std::size_t m = 1;

  Symbol symbol_of(const Word& block) const {
    auto it = index.find(block);
    if (it == index.end()) fail(ErrorCode::InvalidWord, "block is not admissible");
    return it->second;
  }
};

namespace detail {

inline std::vector<Word> block_alphabet(const Sft& x, std::size_t m, const Limits& limits) {
  Limits l = limits;
  l.max_words = limits.max_block_alphabet;
  return words(x, m, l);
}

}  // namespace detail

inline BlockPresentation higher_block(const Sft& x, std::size_t m, const Limits& limits = {}) {
  if (m == 0) fail(ErrorCode::InvalidWord, "block length must be positive");
  BlockPresentation out;
  out.m = m;
  if (m == 1) {
    out.sft = x;
    out.decode = identity_code(x);
    for (std::size_t s = 0; s < x.size(); ++s) {
      out.blocks.push_back({static_cast<Symbol>(s)});
      out.index[out.blocks.back()] = static_cast<Symbol>(s);
    }
    return out;
  }
  out.blocks = detail::block_alphabet(x, m, limits);
  const std::size_t n = out.blocks.size();
  std::vector<std::string> names;
  for (std::size_t s = 0; s < n; ++s) {
    out.index[out.blocks[s]] = static_cast<Symbol>(s);
    names.push_back(block_name(x, out.blocks[s]));
  }
  BinaryMatrix mat(n, std::vector<std::uint8_t>(n, 0));
  for (std::size_t s = 0; s < n; ++s) {
    const Word& w = out.blocks[s];
    Word tail(w.begin() + 1, w.end());
    for (Symbol next : x.successors(w.back())) {
      Word v = tail;
      v.push_back(next);
      mat[s][static_cast<std::size_t>(out.index.at(v))] = 1;
    }
  }
  out.sft = Sft::make(std::move(names), std::move(mat));
  std::vector<Symbol> first;
  for (const auto& w : out.blocks) first.push_back(w.front());
  out.decode = OneBlockCode::make(out.sft, x, std::move(first));
  return out;
}

/// Inverse of the decoding conjugacy: z_n = [x_n ... x_{n+m-1}].
inline EventuallyPeriodicPoint encode_higher_block(const BlockPresentation& b, const EventuallyPeriodicPoint& x) {
  const long m = static_cast<long>(b.m);
  auto f = [&](long n) { return b.symbol_of(x.window(n, n + m)); };
  return point_from_sequence(f, x.left_boundary() - (m - 1), x.right_boundary(),
                             static_cast<long>(x.left_cycle.size()), static_cast<long>(x.right_cycle.size()));
}

/// Presentation of (X, sigma^m): symbols are m-blocks, w -> w' iff ww' is admissible.
/// No decoding code is attached since sigma^m does not commute with a one-block map to X.
inline BlockPresentation power_shift(const Sft& x, std::size_t m, const Limits& limits = {}) {
  if (m <= 1) return higher_block(x, 1, limits);
  BlockPresentation out;
  out.m = m;
  out.blocks = detail::block_alphabet(x, m, limits);
  const std::size_t n = out.blocks.size();
  std::vector<std::string> names;
  for (std::size_t s = 0; s < n; ++s) {
    out.index[out.blocks[s]] = static_cast<Symbol>(s);
    names.push_back(block_name(x, out.blocks[s]));
  }
  BinaryMatrix mat(n, std::vector<std::uint8_t>(n, 0));
  for (std::size_t s = 0; s < n; ++s)
    for (std::size_t t = 0; t < n; ++t) mat[s][t] = x.allows(out.blocks[s].back(), out.blocks[t].front());
  out.sft = Sft::make(std::move(names), std::move(mat));
  return out;
}

}  // namespace sftlab
