#pragma once

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <optional>
#include <queue>
#include <set>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "sftlab/error.hpp"
#include "sftlab/numeric.hpp"

namespace sftlab {

/// Symbols are indices into an Sft's alphabet.
using Symbol = int;
using Word = std::vector<Symbol>;
using BinaryMatrix = std::vector<std::vector<std::uint8_t>>;

/// Resource caps shared by the enumerating and determinizing operations.
struct Limits {
  std::size_t max_alphabet = 12;         // subset constructions over 2^|A|
  std::size_t max_words = 1'000'000;     // explicit enumeration
  std::size_t max_block_alphabet = 4096; // higher block / power presentations
};

/// Vertex shift X_A: bi-infinite paths in the graph of a 0/1 matrix with no zero rows or columns.
class Sft {
 public:
  Sft() = default;

  static Sft make(std::vector<std::string> alphabet, BinaryMatrix matrix) {
    const std::size_t n = alphabet.size();
    if (n == 0) fail(ErrorCode::EmptyShift, "empty alphabet");
    if (matrix.size() != n) fail(ErrorCode::NotSquare, "matrix has " + std::to_string(matrix.size()) + " rows for " + std::to_string(n) + " symbols");
    Sft x;
    for (std::size_t i = 0; i < n; ++i) {
      if (matrix[i].size() != n) fail(ErrorCode::NotSquare, "row " + std::to_string(i) + " has wrong length");
      if (!x.index_.emplace(alphabet[i], static_cast<Symbol>(i)).second) {
        fail(ErrorCode::DuplicateSymbol, alphabet[i]);
      }
      for (auto v : matrix[i])
        if (v > 1) fail(ErrorCode::NonBinaryEntry, "entry " + std::to_string(int(v)) + " in row of " + alphabet[i]);
    }
    for (std::size_t i = 0; i < n; ++i) {
      bool row = false, col = false;
      for (std::size_t j = 0; j < n; ++j) {
        row = row || matrix[i][j];
        col = col || matrix[j][i];
      }
      if (!row || !col) fail(ErrorCode::ZeroRowOrColumn, alphabet[i]);
    }
    x.alphabet_ = std::move(alphabet);
    x.matrix_ = std::move(matrix);
    x.succ_.resize(n);
    x.pred_.resize(n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        if (x.matrix_[i][j]) {
          x.succ_[i].push_back(static_cast<Symbol>(j));
          x.pred_[j].push_back(static_cast<Symbol>(i));
        }
    return x;
  }

  std::size_t size() const { return alphabet_.size(); }
  const std::vector<std::string>& alphabet() const { return alphabet_; }
  const std::string& name(Symbol s) const { return alphabet_.at(static_cast<std::size_t>(s)); }
  const BinaryMatrix& matrix() const { return matrix_; }
  bool allows(Symbol i, Symbol j) const { return matrix_[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] != 0; }
  const std::vector<Symbol>& successors(Symbol s) const { return succ_[static_cast<std::size_t>(s)]; }
  const std::vector<Symbol>& predecessors(Symbol s) const { return pred_[static_cast<std::size_t>(s)]; }

  std::optional<Symbol> find(std::string_view name) const {
    auto it = index_.find(std::string(name));
    if (it == index_.end()) return std::nullopt;
    return it->second;
  }
  Symbol index_of(std::string_view name) const {
    if (auto s = find(name)) return *s;
    fail(ErrorCode::UnknownSymbol, std::string(name));
  }

  bool admissible(const Word& w) const {
    for (Symbol s : w)
      if (s < 0 || static_cast<std::size_t>(s) >= size()) return false;
    for (std::size_t i = 0; i + 1 < w.size(); ++i)
      if (!allows(w[i], w[i + 1])) return false;
    return true;
  }

  Word parse_word(const std::vector<std::string>& names) const {
    Word w;
    for (const auto& n : names) w.push_back(index_of(n));
    return w;
  }
  std::vector<std::string> names(const Word& w) const {
    std::vector<std::string> out;
    for (Symbol s : w) out.push_back(name(s));
    return out;
  }

  friend bool operator==(const Sft& a, const Sft& b) { return a.alphabet_ == b.alphabet_ && a.matrix_ == b.matrix_; }

 private:
  std::vector<std::string> alphabet_;
  BinaryMatrix matrix_;
  std::vector<std::vector<Symbol>> succ_, pred_;
  std::unordered_map<std::string, Symbol> index_;
};

inline Sft make_sft(std::vector<std::string> alphabet, BinaryMatrix matrix) {
  return Sft::make(std::move(alphabet), std::move(matrix));
}

using IntegerMatrix = std::vector<std::vector<Integer>>;

inline IntegerMatrix to_integer_matrix(const BinaryMatrix& m) {
  IntegerMatrix out(m.size(), std::vector<Integer>(m.size()));
  for (std::size_t i = 0; i < m.size(); ++i)
    for (std::size_t j = 0; j < m.size(); ++j) out[i][j] = m[i][j];
  return out;
}

/// Number of admissible n-blocks: the entry sum of A^(n-1).
inline Integer count_words(const Sft& x, std::size_t n) {
  if (n == 0) fail(ErrorCode::InvalidWord, "word length must be positive");
  std::vector<Integer> v(x.size(), Integer(1));
  for (std::size_t step = 1; step < n; ++step) {
    std::vector<Integer> next(x.size(), Integer(0));
    for (std::size_t i = 0; i < x.size(); ++i)
      for (Symbol j : x.successors(static_cast<Symbol>(i))) next[static_cast<std::size_t>(j)] += v[i];
    v = std::move(next);
  }
  return std::accumulate(v.begin(), v.end(), Integer(0));
}

/// Enumeration refused because the word count exceeds the cap; the count is still reported.
class ResourceLimitError : public Error {
 public:
  ResourceLimitError(Integer count, std::size_t cap)
      : Error(ErrorCode::ResourceLimit, count.get_str() + " words exceed the cap of " + std::to_string(cap)),
        count_(std::move(count)) {}
  const Integer& count() const { return count_; }

 private:
  Integer count_;
};

/// Visits every admissible n-block in lexicographic order of symbol indices without storing them.
template <typename F>
void for_each_word(const Sft& x, std::size_t n, F&& visit) {
  if (n == 0) fail(ErrorCode::InvalidWord, "word length must be positive");
  Word w;
  w.reserve(n);
  auto extend = [&](auto&& self) -> void {
    if (w.size() == n) {
      visit(static_cast<const Word&>(w));
      return;
    }
    auto step = [&](Symbol s) {
      w.push_back(s);
      self(self);
      w.pop_back();
    };
    if (w.empty()) {
      for (std::size_t s = 0; s < x.size(); ++s) step(static_cast<Symbol>(s));
    } else {
      for (Symbol s : x.successors(w.back())) step(s);
    }
  };
  extend(extend);
}

/// All admissible n-blocks in lexicographic order of symbol indices.
inline std::vector<Word> words(const Sft& x, std::size_t n, const Limits& limits = {}) {
  Integer total = count_words(x, n);
  if (total > Integer(static_cast<unsigned long>(limits.max_words))) throw ResourceLimitError(total, limits.max_words);
  std::vector<Word> out;
  out.reserve(total.get_ui());
  for_each_word(x, n, [&](const Word& w) { out.push_back(w); });
  return out;
}

namespace detail {

inline std::vector<bool> reachable_from(const Sft& x, Symbol start, bool forward) {
  std::vector<bool> seen(x.size(), false);
  std::vector<Symbol> stack{start};
  seen[static_cast<std::size_t>(start)] = true;
  while (!stack.empty()) {
    Symbol s = stack.back();
    stack.pop_back();
    for (Symbol t : forward ? x.successors(s) : x.predecessors(s))
      if (!seen[static_cast<std::size_t>(t)]) {
        seen[static_cast<std::size_t>(t)] = true;
        stack.push_back(t);
      }
  }
  return seen;
}

}  // namespace detail

inline bool is_irreducible(const Sft& x) {
  auto f = detail::reachable_from(x, 0, true);
  auto b = detail::reachable_from(x, 0, false);
  return std::all_of(f.begin(), f.end(), [](bool v) { return v; }) &&
         std::all_of(b.begin(), b.end(), [](bool v) { return v; });
}

/// gcd of cycle lengths, from BFS levels: gcd over edges (u, v) of level(u) + 1 - level(v).
inline long period(const Sft& x) {
  if (!is_irreducible(x)) fail(ErrorCode::NotIrreducible, "transition graph is not strongly connected");
  std::vector<long> level(x.size(), -1);
  std::queue<Symbol> q;
  level[0] = 0;
  q.push(0);
  long g = 0;
  while (!q.empty()) {
    Symbol u = q.front();
    q.pop();
    for (Symbol v : x.successors(u)) {
      auto vi = static_cast<std::size_t>(v);
      if (level[vi] < 0) {
        level[vi] = level[static_cast<std::size_t>(u)] + 1;
        q.push(v);
      } else {
        g = std::gcd(g, std::abs(level[static_cast<std::size_t>(u)] + 1 - level[vi]));
      }
    }
  }
  return g;
}

struct MixingReport {
  bool mixing = false;
  std::optional<long> primitivity_index;                 // least n with A^n > 0
  std::optional<std::pair<Symbol, Symbol>> zero_entry;   // vanishing entry of A^bound when not mixing
  long wielandt_bound = 0;                               // (|A| - 1)^2 + 1
};

inline MixingReport is_mixing(const Sft& x) {
  const std::size_t n = x.size();
  MixingReport report;
  report.wielandt_bound = static_cast<long>((n - 1) * (n - 1) + 1);
  BinaryMatrix power = x.matrix();
  for (long k = 1;; ++k) {
    std::optional<std::pair<Symbol, Symbol>> zero;
    for (std::size_t i = 0; i < n && !zero; ++i)
      for (std::size_t j = 0; j < n; ++j)
        if (!power[i][j]) {
          zero = std::make_pair(static_cast<Symbol>(i), static_cast<Symbol>(j));
          break;
        }
    if (!zero) {
      report.mixing = true;
      report.primitivity_index = k;
      return report;
    }
    if (k >= report.wielandt_bound) {
      report.zero_entry = zero;
      return report;
    }
    BinaryMatrix next(n, std::vector<std::uint8_t>(n, 0));
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t l = 0; l < n; ++l)
        if (power[i][l])
          for (Symbol j : x.successors(static_cast<Symbol>(l))) next[i][static_cast<std::size_t>(j)] = 1;
    power = std::move(next);
  }
}

inline void require_mixing(const Sft& x, std::string_view what = "shift") {
  if (!is_mixing(x).mixing) fail(ErrorCode::NotMixing, std::string(what) + " is not mixing");
}

/// Restriction of an alphabet/matrix pair to the symbols that lie on bi-infinite paths.
/// Returns nullopt when nothing survives.
inline std::optional<Sft> trimmed_sft(const std::vector<std::string>& alphabet, const BinaryMatrix& m,
                                      std::vector<bool> keep) {
  const std::size_t n = alphabet.size();
  bool changed = true;
  while (changed) {
    changed = false;
    for (std::size_t i = 0; i < n; ++i) {
      if (!keep[i]) continue;
      bool row = false, col = false;
      for (std::size_t j = 0; j < n; ++j) {
        if (!keep[j]) continue;
        row = row || m[i][j];
        col = col || m[j][i];
      }
      if (!row || !col) {
        keep[i] = false;
        changed = true;
      }
    }
  }
  std::vector<std::string> names;
  std::vector<std::size_t> kept;
  for (std::size_t i = 0; i < n; ++i)
    if (keep[i]) {
      names.push_back(alphabet[i]);
      kept.push_back(i);
    }
  if (kept.empty()) return std::nullopt;
  BinaryMatrix sub(kept.size(), std::vector<std::uint8_t>(kept.size()));
  for (std::size_t i = 0; i < kept.size(); ++i)
    for (std::size_t j = 0; j < kept.size(); ++j) sub[i][j] = m[kept[i]][kept[j]];
  return Sft::make(std::move(names), std::move(sub));
}

/// Z(S): the shift obtained by forbidding every symbol in S, with the zero row/column cascade.
inline Sft forbid_symbols(const Sft& x, const std::vector<Symbol>& forbidden) {
  std::vector<bool> keep(x.size(), true);
  for (Symbol s : forbidden) keep.at(static_cast<std::size_t>(s)) = false;
  auto result = trimmed_sft(x.alphabet(), x.matrix(), std::move(keep));
  if (!result) fail(ErrorCode::EmptyShift, "forbidding the symbol set leaves no bi-infinite point");
  return *result;
}

inline Sft forbid_symbol(const Sft& x, Symbol a) { return forbid_symbols(x, {a}); }

/// Transposed matrix: presents (X, sigma^-1).
inline Sft reverse(const Sft& x) {
  const std::size_t n = x.size();
  BinaryMatrix t(n, std::vector<std::uint8_t>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) t[i][j] = x.matrix()[j][i];
  return Sft::make(x.alphabet(), std::move(t));
}

/// Strongly connected components in topological order (sources first). comp[v] = component id.
struct Components {
  std::vector<int> comp;
  std::vector<std::vector<Symbol>> members;
  std::vector<bool> nontrivial;  // contains a cycle
};

inline Components strongly_connected_components(const BinaryMatrix& m) {
  const int n = static_cast<int>(m.size());
  std::vector<int> index(static_cast<std::size_t>(n), -1), low(static_cast<std::size_t>(n), 0), comp(static_cast<std::size_t>(n), -1);
  std::vector<bool> on_stack(static_cast<std::size_t>(n), false);
  std::vector<int> stack;
  std::vector<std::vector<Symbol>> found;
  int counter = 0;
  auto strong = [&](auto&& self, int v) -> void {
    auto vi = static_cast<std::size_t>(v);
    index[vi] = low[vi] = counter++;
    stack.push_back(v);
    on_stack[vi] = true;
    for (int w = 0; w < n; ++w) {
      if (!m[vi][static_cast<std::size_t>(w)]) continue;
      auto wi = static_cast<std::size_t>(w);
      if (index[wi] < 0) {
        self(self, w);
        low[vi] = std::min(low[vi], low[wi]);
      } else if (on_stack[wi]) {
        low[vi] = std::min(low[vi], index[wi]);
      }
    }
    if (low[vi] == index[vi]) {
      std::vector<Symbol> members;
      int w;
      do {
        w = stack.back();
        stack.pop_back();
        on_stack[static_cast<std::size_t>(w)] = false;
        members.push_back(w);
      } while (w != v);
      std::sort(members.begin(), members.end());
      found.push_back(std::move(members));
    }
  };
  for (int v = 0; v < n; ++v)
    if (index[static_cast<std::size_t>(v)] < 0) strong(strong, v);
  // Tarjan emits components in reverse topological order.
  std::reverse(found.begin(), found.end());
  Components out;
  out.comp.assign(static_cast<std::size_t>(n), -1);
  for (std::size_t c = 0; c < found.size(); ++c) {
    bool cyc = found[c].size() > 1 || m[static_cast<std::size_t>(found[c][0])][static_cast<std::size_t>(found[c][0])];
    for (Symbol v : found[c]) out.comp[static_cast<std::size_t>(v)] = static_cast<int>(c);
    out.nontrivial.push_back(cyc);
  }
  out.members = std::move(found);
  return out;
}

}  // namespace sftlab
