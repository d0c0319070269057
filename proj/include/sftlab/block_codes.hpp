#pragma once

#include <bit>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <queue>
#include <set>
#include <tuple>
#include <string>
#include <vector>

#include "sftlab/code.hpp"
#include "sftlab/point.hpp"
#include "sftlab/recoding.hpp"
#include "sftlab/sft.hpp"

namespace sftlab {

using SymbolSet = std::uint32_t;

namespace detail {

struct CodeMasks {
  std::vector<SymbolSet> succ, pred, fiber;  // fiber indexed by codomain symbol

  explicit CodeMasks(const OneBlockCode& c, const Limits& limits) {
    const Sft& x = c.domain();
    if (x.size() > limits.max_alphabet || x.size() > 32)
      fail(ErrorCode::ResourceLimit, "domain alphabet of " + std::to_string(x.size()) + " symbols exceeds the subset-construction cap");
    succ.assign(x.size(), 0);
    pred.assign(x.size(), 0);
    fiber.assign(c.codomain().size(), 0);
    for (std::size_t i = 0; i < x.size(); ++i) {
      for (Symbol j : x.successors(static_cast<Symbol>(i))) succ[i] |= SymbolSet(1) << j;
      for (Symbol j : x.predecessors(static_cast<Symbol>(i))) pred[i] |= SymbolSet(1) << j;
      fiber[static_cast<std::size_t>(c(static_cast<Symbol>(i)))] |= SymbolSet(1) << i;
    }
  }

  static SymbolSet step(const std::vector<SymbolSet>& adj, SymbolSet s) {
    SymbolSet out = 0;
    for (; s; s &= s - 1) out |= adj[static_cast<std::size_t>(std::countr_zero(s))];
    return out;
  }
};

// States (subset, last codomain symbol) reachable by reading codomain words in one direction.
struct SubsetSearch {
  struct State {
    SymbolSet set;
    Symbol last;
    int parent;  // -1 for the one-symbol words
  };
  std::vector<State> states;

  Word word(int id, bool backward) const {
    Word w;
    for (int k = id; k >= 0; k = states[static_cast<std::size_t>(k)].parent) w.push_back(states[static_cast<std::size_t>(k)].last);
    if (!backward) std::reverse(w.begin(), w.end());
    return w;
  }
};

inline SubsetSearch explore_subsets(const OneBlockCode& c, const CodeMasks& m, bool backward, bool keep_empty) {
  const Sft& y = c.codomain();
  SubsetSearch s;
  std::set<std::pair<SymbolSet, Symbol>> seen;
  std::queue<int> q;
  auto push = [&](SymbolSet set, Symbol last, int parent) {
    if (!keep_empty && set == 0) return;
    if (!seen.insert({set, last}).second) return;
    s.states.push_back({set, last, parent});
    q.push(static_cast<int>(s.states.size()) - 1);
  };
  for (std::size_t b = 0; b < y.size(); ++b) push(m.fiber[b], static_cast<Symbol>(b), -1);
  while (!q.empty()) {
    int id = q.front();
    q.pop();
    auto st = s.states[static_cast<std::size_t>(id)];
    if (st.set == 0) continue;
    const auto& next = backward ? y.predecessors(st.last) : y.successors(st.last);
    SymbolSet moved = CodeMasks::step(backward ? m.pred : m.succ, st.set);
    for (Symbol b : next) push(moved & m.fiber[static_cast<std::size_t>(b)], b, id);
  }
  return s;
}

}  // namespace detail

struct FactorReport {
  bool onto = false;
  std::optional<Word> missing_word;  // shortest codomain word outside the image
};

/// Surjectivity by the subset construction: a codomain word is in the image iff reading it
/// from the full fiber of its first symbol never empties the subset.
inline FactorReport is_factor_onto(const OneBlockCode& c, const Limits& limits = {}) {
  detail::CodeMasks m(c, limits);
  auto s = detail::explore_subsets(c, m, false, true);
  FactorReport r;
  for (std::size_t id = 0; id < s.states.size(); ++id)
    if (s.states[id].set == 0) {
      r.missing_word = s.word(static_cast<int>(id), false);
      return r;
    }
  r.onto = true;
  return r;
}

struct DegreeReport {
  long d_star = 0;
  Word witness_word;             // codomain word
  std::size_t witness_index = 0; // 0-based position attaining d_star
  std::vector<long> per_position_counts;
};

/// Number of distinct domain symbols at each position over all preimages of w.
inline std::vector<long> preimage_symbol_counts(const OneBlockCode& c, const Word& w, const Limits& limits = {}) {
  detail::CodeMasks m(c, limits);
  const std::size_t n = w.size();
  std::vector<SymbolSet> fwd(n), bwd(n);
  for (std::size_t i = 0; i < n; ++i)
    fwd[i] = m.fiber[static_cast<std::size_t>(w[i])] & (i == 0 ? ~SymbolSet(0) : detail::CodeMasks::step(m.succ, fwd[i - 1]));
  for (std::size_t k = n; k-- > 0;)
    bwd[k] = m.fiber[static_cast<std::size_t>(w[k])] & (k + 1 == n ? ~SymbolSet(0) : detail::CodeMasks::step(m.pred, bwd[k + 1]));
  std::vector<long> out;
  for (std::size_t i = 0; i < n; ++i) out.push_back(std::popcount(fwd[i] & bwd[i]));
  return out;
}

/// d*: the minimum over all codomain words w and positions i of the number of domain
/// symbols seen at i across preimages of w. A forward subset F (prefix ending in b) and a
/// backward subset B (suffix starting in b) glue along b, and d*(w, i) = |F & B|.
inline DegreeReport degree_star(const OneBlockCode& c, const Limits& limits = {}) {
  require_mixing(c.domain(), "domain");
  require_mixing(c.codomain(), "codomain");
  auto onto = is_factor_onto(c, limits);
  if (!onto.onto) fail(ErrorCode::NotFactor, "code is not onto the codomain");
  detail::CodeMasks m(c, limits);
  auto fwd = detail::explore_subsets(c, m, false, false);
  auto bwd = detail::explore_subsets(c, m, true, false);
  std::vector<std::vector<int>> by_last_b(c.codomain().size());
  for (std::size_t id = 0; id < bwd.states.size(); ++id) by_last_b[static_cast<std::size_t>(bwd.states[id].last)].push_back(static_cast<int>(id));
  int best = 1 << 30, best_f = -1, best_b = -1;
  for (std::size_t f = 0; f < fwd.states.size() && best > 1; ++f) {
    const auto& fs = fwd.states[f];
    for (int b : by_last_b[static_cast<std::size_t>(fs.last)]) {
      int k = std::popcount(fs.set & bwd.states[static_cast<std::size_t>(b)].set);
      if (k < best) {
        best = k;
        best_f = static_cast<int>(f);
        best_b = b;
      }
    }
  }
  DegreeReport r;
  r.d_star = best;
  Word prefix = fwd.word(best_f, false);
  Word suffix = bwd.word(best_b, true);
  r.witness_word = prefix;
  r.witness_word.insert(r.witness_word.end(), suffix.begin() + 1, suffix.end());
  r.witness_index = prefix.size() - 1;
  r.per_position_counts = preimage_symbol_counts(c, r.witness_word, limits);
  if (r.per_position_counts[r.witness_index] != r.d_star) fail(ErrorCode::CertificateFailure, "degree witness does not reproduce d*");
  return r;
}

/// A codomain symbol whose fiber has exactly d* symbols, if any.
inline std::optional<Symbol> find_magic_symbol(const OneBlockCode& c, const DegreeReport& degree) {
  auto fibers = c.fibers();
  for (std::size_t b = 0; b < fibers.size(); ++b)
    if (static_cast<long>(fibers[b].size()) == degree.d_star) return static_cast<Symbol>(b);
  return std::nullopt;
}

inline std::optional<Symbol> find_magic_symbol(const OneBlockCode& c, const Limits& limits = {}) {
  return find_magic_symbol(c, degree_star(c, limits));
}

/// Recoded code with a magic symbol, and the one-block conjugacies back to the original
/// domain and codomain (domain_map: recoded domain -> domain, codomain_map likewise).
struct MagicRecoding {
  OneBlockCode code;
  OneBlockCode domain_map;
  OneBlockCode codomain_map;
  Symbol magic = 0;
  std::size_t block_length = 1;
  std::size_t magic_index = 0;
  BlockPresentation codomain_blocks;
  // recoded domain symbol of each (domain symbol, codomain block) pair
  std::map<std::pair<Symbol, Symbol>, Symbol> domain_index;
  OneBlockCode original;

  /// Recoded domain point over x: z_n = (x_n, pi(x)[n - i, n - i + m - 1]).
  EventuallyPeriodicPoint encode_domain(const EventuallyPeriodicPoint& x) const {
    if (block_length == 1) return x;
    EventuallyPeriodicPoint y = apply_code(original, x);
    const long m = static_cast<long>(block_length), i = static_cast<long>(magic_index);
    auto f = [&](long n) {
      Symbol blk = codomain_blocks.symbol_of(y.window(n - i, n - i + m));
      return domain_index.at({x.at(n), blk});
    };
    return point_from_sequence(f, x.left_boundary() - m, x.right_boundary() + m,
                               static_cast<long>(x.left_cycle.size()), static_cast<long>(x.right_cycle.size()));
  }

  EventuallyPeriodicPoint encode_codomain(const EventuallyPeriodicPoint& y) const {
    if (block_length == 1) return y;
    const long m = static_cast<long>(block_length), i = static_cast<long>(magic_index);
    auto f = [&](long n) { return codomain_blocks.symbol_of(y.window(n - i, n - i + m)); };
    return point_from_sequence(f, y.left_boundary() - m, y.right_boundary() + m,
                               static_cast<long>(y.left_cycle.size()), static_cast<long>(y.right_cycle.size()));
  }
};

/// Makes the magic word w (magic coordinate i, 0-based) a magic symbol. The codomain becomes
/// Y^[m] read at coordinate i; the domain symbols are pairs (x_n, pi(x)[n-i, n-i+m-1]), so the
/// block symbol [w] has exactly d*(w, i) symbols over it.
inline MagicRecoding recode_to_magic_symbol(const OneBlockCode& c, const Word& w, std::size_t i, const Limits& limits = {}) {
  if (w.empty() || i >= w.size() || !c.codomain().admissible(w)) fail(ErrorCode::InvalidWord, "magic word must be an admissible codomain word");
  MagicRecoding r;
  r.original = c;
  r.block_length = w.size();
  r.magic_index = i;
  if (w.size() == 1) {
    r.code = c;
    r.domain_map = identity_code(c.domain());
    r.codomain_map = identity_code(c.codomain());
    r.magic = w[0];
    r.codomain_blocks = higher_block(c.codomain(), 1, limits);
    return r;
  }
  const Sft& x = c.domain();
  const Sft& y = c.codomain();
  const std::size_t m = w.size();
  r.codomain_blocks = higher_block(y, m, limits);
  const auto& yb = r.codomain_blocks;
  // candidate pairs (a, v): some domain m-block u with u_i = a and pi(u) = v
  std::set<std::pair<Symbol, Symbol>> pairs;
  for_each_word(x, m, [&](const Word& u) { pairs.insert({u[i], yb.symbol_of(c.image(u))}); });
  std::vector<std::pair<Symbol, Symbol>> list(pairs.begin(), pairs.end());
  if (list.size() > limits.max_block_alphabet) fail(ErrorCode::ResourceLimit, "recoded alphabet too large");
  std::vector<std::string> names;
  for (const auto& [a, v] : list) names.push_back(x.name(a) + ":" + yb.sft.name(v));
  BinaryMatrix mat(list.size(), std::vector<std::uint8_t>(list.size(), 0));
  for (std::size_t s = 0; s < list.size(); ++s)
    for (std::size_t t = 0; t < list.size(); ++t)
      mat[s][t] = x.allows(list[s].first, list[t].first) && yb.sft.allows(list[s].second, list[t].second);
  auto trimmed = trimmed_sft(names, mat, std::vector<bool>(list.size(), true));
  if (!trimmed) fail(ErrorCode::EmptyShift, "recoded domain is empty");
  Sft xr = *trimmed;
  std::vector<Symbol> phi, back;
  for (std::size_t s = 0; s < xr.size(); ++s) {
    auto pos = static_cast<std::size_t>(std::find(names.begin(), names.end(), xr.name(static_cast<Symbol>(s))) - names.begin());
    phi.push_back(list[pos].second);
    back.push_back(list[pos].first);
    r.domain_index[list[pos]] = static_cast<Symbol>(s);
  }
  r.code = OneBlockCode::make(xr, yb.sft, std::move(phi));
  r.domain_map = OneBlockCode::make(xr, x, std::move(back));
  std::vector<Symbol> at_i;
  for (const auto& blk : yb.blocks) at_i.push_back(blk[i]);
  r.codomain_map = OneBlockCode::make(yb.sft, y, std::move(at_i));
  r.magic = yb.symbol_of(w);
  return r;
}

inline bool is_almost_invertible(const OneBlockCode& c, const Limits& limits = {}) { return degree_star(c, limits).d_star == 1; }

/// Mirror image: x^R_n = x_{-n}.
inline EventuallyPeriodicPoint reverse_point(const EventuallyPeriodicPoint& x) {
  EventuallyPeriodicPoint r;
  r.left_cycle.assign(x.right_cycle.rbegin(), x.right_cycle.rend());
  r.center.assign(x.center.rbegin(), x.center.rend());
  r.right_cycle.assign(x.left_cycle.rbegin(), x.left_cycle.rend());
  r.phase = static_cast<long>(x.center.size()) - 1 - x.phase;
  return r;
}

inline OneBlockCode reverse_code(const OneBlockCode& c) {
  return OneBlockCode::make(reverse(c.domain()), reverse(c.codomain()), c.phi());
}

struct ClosingReport {
  bool closing = false;
  std::optional<long> delay;
  std::optional<std::pair<EventuallyPeriodicPoint, EventuallyPeriodicPoint>> counterexample;
};

namespace detail {

struct PairGraph {
  std::vector<std::pair<Symbol, Symbol>> vertex;
  std::vector<std::vector<int>> succ, pred;
  std::map<std::pair<Symbol, Symbol>, int> id;

  explicit PairGraph(const OneBlockCode& c) {
    const Sft& x = c.domain();
    for (Symbol u = 0; u < static_cast<Symbol>(x.size()); ++u)
      for (Symbol v = 0; v < static_cast<Symbol>(x.size()); ++v)
        if (c(u) == c(v)) {
          id[{u, v}] = static_cast<int>(vertex.size());
          vertex.push_back({u, v});
        }
    succ.resize(vertex.size());
    pred.resize(vertex.size());
    for (std::size_t k = 0; k < vertex.size(); ++k)
      for (Symbol a : x.successors(vertex[k].first))
        for (Symbol b : x.successors(vertex[k].second)) {
          auto it = id.find({a, b});
          if (it == id.end()) continue;
          succ[k].push_back(it->second);
          pred[static_cast<std::size_t>(it->second)].push_back(static_cast<int>(k));
        }
  }
  std::size_t size() const { return vertex.size(); }
  bool diagonal(int k) const { return vertex[static_cast<std::size_t>(k)].first == vertex[static_cast<std::size_t>(k)].second; }

  BinaryMatrix matrix() const {
    BinaryMatrix m(size(), std::vector<std::uint8_t>(size(), 0));
    for (std::size_t k = 0; k < size(); ++k)
      for (int t : succ[k]) m[k][static_cast<std::size_t>(t)] = 1;
    return m;
  }

  // Shortest path from any source satisfying `is_source` to target, following succ.
  std::vector<int> shortest_path(const std::function<bool(int)>& is_source, int target,
                                 const std::function<bool(int)>& allowed = [](int) { return true; }) const {
    std::vector<int> parent(size(), -2);
    std::queue<int> q;
    for (std::size_t k = 0; k < size(); ++k)
      if (is_source(static_cast<int>(k))) {
        parent[k] = -1;
        q.push(static_cast<int>(k));
      }
    while (!q.empty()) {
      int v = q.front();
      q.pop();
      if (v == target) break;
      for (int t : succ[static_cast<std::size_t>(v)])
        if (parent[static_cast<std::size_t>(t)] == -2 && allowed(t)) {
          parent[static_cast<std::size_t>(t)] = v;
          q.push(t);
        }
    }
    std::vector<int> path;
    if (parent[static_cast<std::size_t>(target)] == -2) return path;
    for (int v = target; v != -1; v = parent[static_cast<std::size_t>(v)]) path.push_back(v);
    std::reverse(path.begin(), path.end());
    return path;
  }
};

// Walk forward from s along first successors until a symbol repeats: (transient, cycle).
inline std::pair<Word, Word> lasso_from(const Sft& x, Symbol s) {
  Word walk;
  std::vector<int> pos(x.size(), -1);
  Symbol t = s;
  while (pos[static_cast<std::size_t>(t)] < 0) {
    pos[static_cast<std::size_t>(t)] = static_cast<int>(walk.size());
    walk.push_back(t);
    t = x.successors(t).front();
  }
  auto k = static_cast<std::size_t>(pos[static_cast<std::size_t>(t)]);
  return {Word(walk.begin(), walk.begin() + static_cast<long>(k)), Word(walk.begin() + static_cast<long>(k), walk.end())};
}

}  // namespace detail

/// Left-closing: no two distinct points with equal images agree on a right tail. This fails
/// iff some off-diagonal pair lies downstream of a cycle of the pair graph (diagonal cycles
/// included, which covers diamonds) and can reach the diagonal. When closing, delay K is the
/// least K such that equal images on [-K-1, K] and equal symbols on [0, K] force equal
/// symbols at -1; it is the vertex count of the longest off-diagonal path ending in a pair
/// with an edge into the diagonal.
inline ClosingReport is_left_closing(const OneBlockCode& c) {
  detail::PairGraph g(c);
  const std::size_t n = g.size();
  auto comps = strongly_connected_components(g.matrix());
  // downstream of a cycle
  std::vector<bool> from_cycle(n, false);
  std::queue<int> q;
  for (std::size_t k = 0; k < n; ++k)
    if (comps.nontrivial[static_cast<std::size_t>(comps.comp[k])]) {
      from_cycle[k] = true;
      q.push(static_cast<int>(k));
    }
  while (!q.empty()) {
    int v = q.front();
    q.pop();
    for (int t : g.succ[static_cast<std::size_t>(v)])
      if (!from_cycle[static_cast<std::size_t>(t)]) {
        from_cycle[static_cast<std::size_t>(t)] = true;
        q.push(t);
      }
  }
  std::vector<bool> to_diag(n, false);
  for (std::size_t k = 0; k < n; ++k)
    if (g.diagonal(static_cast<int>(k))) {
      to_diag[k] = true;
      q.push(static_cast<int>(k));
    }
  while (!q.empty()) {
    int v = q.front();
    q.pop();
    for (int t : g.pred[static_cast<std::size_t>(v)])
      if (!to_diag[static_cast<std::size_t>(t)]) {
        to_diag[static_cast<std::size_t>(t)] = true;
        q.push(t);
      }
  }
  ClosingReport r;
  for (std::size_t k = 0; k < n; ++k) {
    int v = static_cast<int>(k);
    if (g.diagonal(v) || !from_cycle[k] || !to_diag[k]) continue;
    // cycle vertex c upstream of v, a cycle through c, then v -> diagonal -> a cycle of X
    auto on_cycle = [&](int u) { return comps.nontrivial[static_cast<std::size_t>(comps.comp[static_cast<std::size_t>(u)])]; };
    std::vector<int> into = g.shortest_path(on_cycle, v);
    int cv = into.front();
    int comp = comps.comp[static_cast<std::size_t>(cv)];
    std::vector<int> loop;
    for (int t : g.succ[static_cast<std::size_t>(cv)]) {
      if (comps.comp[static_cast<std::size_t>(t)] != comp) continue;
      auto p = g.shortest_path([&](int u) { return u == t; }, cv, [&](int u) { return comps.comp[static_cast<std::size_t>(u)] == comp; });
      if (!p.empty()) {
        loop.assign(p.begin(), p.end() - 1);  // t ... (before cv)
        break;
      }
    }
    // left cycle ends at cv: [t, ..., pred(cv), cv]
    std::vector<int> left(loop.begin(), loop.end());
    left.push_back(cv);
    // path v -> first diagonal vertex
    std::vector<int> parent(n, -2);
    std::queue<int> bq;
    parent[k] = -1;
    bq.push(v);
    int d = -1;
    while (!bq.empty() && d < 0) {
      int u = bq.front();
      bq.pop();
      for (int t : g.succ[static_cast<std::size_t>(u)])
        if (parent[static_cast<std::size_t>(t)] == -2) {
          parent[static_cast<std::size_t>(t)] = u;
          if (g.diagonal(t)) {
            d = t;
            break;
          }
          bq.push(t);
        }
    }
    std::vector<int> vd;
    for (int u = d; u != -1; u = parent[static_cast<std::size_t>(u)]) vd.push_back(u);
    std::reverse(vd.begin(), vd.end());  // v ... d
    std::vector<int> center(into.begin() + 1, into.end());  // after cv up to v
    center.insert(center.end(), vd.begin() + 1, vd.end() - 1);  // after v, before d
    auto [transient, cycle] = detail::lasso_from(c.domain(), g.vertex[static_cast<std::size_t>(d)].first);
    EventuallyPeriodicPoint x, xp;
    for (int u : left) {
      x.left_cycle.push_back(g.vertex[static_cast<std::size_t>(u)].first);
      xp.left_cycle.push_back(g.vertex[static_cast<std::size_t>(u)].second);
    }
    for (int u : center) {
      x.center.push_back(g.vertex[static_cast<std::size_t>(u)].first);
      xp.center.push_back(g.vertex[static_cast<std::size_t>(u)].second);
    }
    for (Symbol s : transient) {
      x.center.push_back(s);
      xp.center.push_back(s);
    }
    x.right_cycle = xp.right_cycle = cycle;
    r.closing = false;
    r.counterexample = {canonical(x), canonical(xp)};
    return r;
  }
  // longest off-diagonal path ending in a merging vertex
  std::vector<long> longest(n, -1);
  std::function<long(int)> depth = [&](int v) -> long {
    auto& memo = longest[static_cast<std::size_t>(v)];
    if (memo >= 0) return memo;
    long best = 0;
    for (int p : g.pred[static_cast<std::size_t>(v)])
      if (!g.diagonal(p)) best = std::max(best, depth(p));
    return memo = best + 1;
  };
  long k_delay = 0;
  for (std::size_t k = 0; k < n; ++k) {
    int v = static_cast<int>(k);
    if (g.diagonal(v)) continue;
    bool merges = false;
    for (int t : g.succ[k]) merges = merges || g.diagonal(t);
    if (merges) k_delay = std::max(k_delay, depth(v));
  }
  r.closing = true;
  r.delay = k_delay;
  return r;
}

/// Right-closing is left-closing of the reversed code; counterexamples are mirrored back.
inline ClosingReport is_right_closing(const OneBlockCode& c) {
  ClosingReport r = is_left_closing(reverse_code(c));
  if (r.counterexample) r.counterexample = {canonical(reverse_point(r.counterexample->first)), canonical(reverse_point(r.counterexample->second))};
  return r;
}


/// All preimages of an eventually periodic point under a left- or right-closing code.
/// Preimages are bi-infinite paths in the product of the domain graph with the lasso
/// (left cycle, center, right cycle) of y; for closing codes every such path runs from a
/// simple cycle over the left cycle to a simple cycle over the right cycle.
inline std::vector<EventuallyPeriodicPoint> fiber_of_point(const OneBlockCode& c, const EventuallyPeriodicPoint& point,
                                                           const Limits& limits = {}) {
  validate_point(c.codomain(), point);
  if (!is_left_closing(c).closing && !is_right_closing(c).closing)
    fail(ErrorCode::NotClosing, "fibers are only enumerated for left- or right-closing codes");
  const EventuallyPeriodicPoint y = canonical(point);
  const Sft& x = c.domain();
  const long lo = y.left_boundary(), hi = y.right_boundary();
  const long p = static_cast<long>(y.left_cycle.size()), q = static_cast<long>(y.right_cycle.size());
  enum Region { Left, Center, Right };
  struct Vertex {
    Region region;
    long pos;
    Symbol s;
  };
  std::vector<Vertex> vs;
  std::map<std::tuple<int, long, Symbol>, int> id;
  auto add_region = [&](Region reg, long count, long first_coord) {
    for (long k = 0; k < count; ++k)
      for (Symbol s = 0; s < static_cast<Symbol>(x.size()); ++s)
        if (c(s) == y.at(first_coord + k)) {
          id[{reg, k, s}] = static_cast<int>(vs.size());
          vs.push_back({reg, k, s});
        }
  };
  add_region(Left, p, lo - p);
  add_region(Center, hi - lo, lo);
  add_region(Right, q, hi);
  const std::size_t n = vs.size();
  std::vector<std::vector<int>> succ(n);
  auto link = [&](std::size_t from, Region reg, long pos) {
    for (Symbol t : x.successors(vs[from].s)) {
      auto it = id.find({reg, pos, t});
      if (it != id.end()) succ[from].push_back(it->second);
    }
  };
  for (std::size_t k = 0; k < n; ++k) {
    const auto& v = vs[k];
    if (v.region == Left) {
      link(k, Left, (v.pos + 1) % p);
      if (v.pos == p - 1) hi > lo ? link(k, Center, 0) : link(k, Right, 0);
    } else if (v.region == Center) {
      v.pos + 1 < hi - lo ? link(k, Center, v.pos + 1) : link(k, Right, 0);
    } else {
      link(k, Right, (v.pos + 1) % q);
    }
  }
  BinaryMatrix mat(n, std::vector<std::uint8_t>(n, 0));
  for (std::size_t k = 0; k < n; ++k)
    for (int t : succ[k]) mat[k][static_cast<std::size_t>(t)] = 1;
  auto comps = strongly_connected_components(mat);
  auto comp_of = [&](int v) { return comps.comp[static_cast<std::size_t>(v)]; };
  auto cyclic = [&](int v) { return bool(comps.nontrivial[static_cast<std::size_t>(comp_of(v))]); };
  auto next_in_comp = [&](int v) {
    std::vector<int> out;
    for (int t : succ[static_cast<std::size_t>(v)])
      if (comp_of(t) == comp_of(v)) out.push_back(t);
    if (out.size() != 1) fail(ErrorCode::CertificateFailure, "preimage component is not a simple cycle");
    return out.front();
  };
  // vertices from which a cycle over the right cycle of y is reachable
  std::vector<bool> useful(n, false);
  for (std::size_t k = 0; k < n; ++k) useful[k] = vs[k].region == Right && cyclic(static_cast<int>(k));
  for (bool changed = true; changed;) {
    changed = false;
    for (std::size_t k = 0; k < n; ++k)
      for (int t : succ[k])
        if (!useful[k] && useful[static_cast<std::size_t>(t)]) useful[k] = changed = true;
  }
  std::vector<EventuallyPeriodicPoint> fiber;
  std::vector<int> path;
  std::function<void(int)> extend = [&](int u) {
    for (int t : succ[static_cast<std::size_t>(u)]) {
      if (comp_of(t) == comp_of(path.front()) || !useful[static_cast<std::size_t>(t)]) continue;
      path.push_back(t);
      if (!cyclic(t)) {
        extend(t);
      } else if (vs[static_cast<std::size_t>(t)].region == Right) {
        EventuallyPeriodicPoint pt;
        int v = path.front();
        for (int w = next_in_comp(v);; w = next_in_comp(w)) {
          pt.left_cycle.push_back(vs[static_cast<std::size_t>(w)].s);
          if (w == v) break;
        }
        for (std::size_t k = 1; k + 1 < path.size(); ++k) pt.center.push_back(vs[static_cast<std::size_t>(path[k])].s);
        int w = t;
        do {
          pt.right_cycle.push_back(vs[static_cast<std::size_t>(w)].s);
          w = next_in_comp(w);
        } while (w != t);
        long first_off = 1;
        while (vs[static_cast<std::size_t>(path[static_cast<std::size_t>(first_off)])].region == Left) ++first_off;
        pt.phase = -(lo - first_off + 1);
        fiber.push_back(canonical(pt));
        if (fiber.size() > limits.max_words) fail(ErrorCode::ResourceLimit, "fiber exceeds the enumeration cap");
      } else {
        fail(ErrorCode::CertificateFailure, "preimage path crosses a second cycle");
      }
      path.pop_back();
    }
  };
  for (std::size_t k = 0; k < n; ++k) {
    int v = static_cast<int>(k);
    if (vs[k].region != Left || !cyclic(v) || !useful[k]) continue;
    path.assign(1, v);
    extend(v);
  }
  auto key = [](const EventuallyPeriodicPoint& a) { return std::tie(a.phase, a.left_cycle, a.center, a.right_cycle); };
  std::sort(fiber.begin(), fiber.end(), [&](const auto& a, const auto& b) { return key(a) < key(b); });
  fiber.erase(std::unique(fiber.begin(), fiber.end(), [&](const auto& a, const auto& b) { return key(a) == key(b); }), fiber.end());
  return fiber;
}

}  // namespace sftlab
