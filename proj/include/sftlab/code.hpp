#pragma once

#include <map>
#include <string>
#include <vector>

#include "sftlab/point.hpp"
#include "sftlab/sft.hpp"

namespace sftlab {

/// One-block code pi(x)_n = phi(x_n) between two vertex shifts.
class OneBlockCode {
 public:
  OneBlockCode() = default;

  static OneBlockCode make(Sft domain, Sft codomain, std::vector<Symbol> phi) {
    if (phi.size() != domain.size()) fail(ErrorCode::UnknownSymbol, "symbol map is not total on the domain alphabet");
    for (Symbol b : phi)
      if (b < 0 || static_cast<std::size_t>(b) >= codomain.size()) fail(ErrorCode::UnknownSymbol, "image outside the codomain alphabet");
    for (std::size_t i = 0; i < domain.size(); ++i)
      for (Symbol j : domain.successors(static_cast<Symbol>(i)))
        if (!codomain.allows(phi[i], phi[static_cast<std::size_t>(j)]))
          fail(ErrorCode::TransitionNotRespected,
               "(" + domain.name(static_cast<Symbol>(i)) + ", " + domain.name(j) + ") maps to a forbidden transition");
    OneBlockCode c;
    c.domain_ = std::move(domain);
    c.codomain_ = std::move(codomain);
    c.phi_ = std::move(phi);
    return c;
  }

  const Sft& domain() const { return domain_; }
  const Sft& codomain() const { return codomain_; }
  const std::vector<Symbol>& phi() const { return phi_; }
  Symbol operator()(Symbol s) const { return phi_[static_cast<std::size_t>(s)]; }

  Word image(const Word& w) const {
    Word out;
    out.reserve(w.size());
    for (Symbol s : w) out.push_back((*this)(s));
    return out;
  }

  /// Domain symbols over each codomain symbol.
  std::vector<std::vector<Symbol>> fibers() const {
    std::vector<std::vector<Symbol>> f(codomain_.size());
    for (std::size_t i = 0; i < phi_.size(); ++i) f[static_cast<std::size_t>(phi_[i])].push_back(static_cast<Symbol>(i));
    return f;
  }

  friend bool operator==(const OneBlockCode& a, const OneBlockCode& b) {
    return a.domain_ == b.domain_ && a.codomain_ == b.codomain_ && a.phi_ == b.phi_;
  }

 private:
  Sft domain_, codomain_;
  std::vector<Symbol> phi_;
};

inline OneBlockCode make_code(const Sft& x, const Sft& y, const std::map<std::string, std::string>& phi) {
  std::vector<Symbol> map(x.size(), -1);
  for (const auto& [from, to] : phi) map[static_cast<std::size_t>(x.index_of(from))] = y.index_of(to);
  for (std::size_t i = 0; i < map.size(); ++i)
    if (map[i] < 0) fail(ErrorCode::UnknownSymbol, "no image given for " + x.name(static_cast<Symbol>(i)));
  return OneBlockCode::make(x, y, std::move(map));
}

inline OneBlockCode identity_code(const Sft& x) {
  std::vector<Symbol> phi(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) phi[i] = static_cast<Symbol>(i);
  return OneBlockCode::make(x, x, std::move(phi));
}

/// g after f.
inline OneBlockCode compose(const OneBlockCode& g, const OneBlockCode& f) {
  if (!(f.codomain() == g.domain())) fail(ErrorCode::TransitionNotRespected, "codes do not compose");
  std::vector<Symbol> phi;
  for (Symbol s : f.phi()) phi.push_back(g(s));
  return OneBlockCode::make(f.domain(), g.codomain(), std::move(phi));
}

inline EventuallyPeriodicPoint apply_code(const OneBlockCode& code, const EventuallyPeriodicPoint& x) {
  EventuallyPeriodicPoint y;
  y.left_cycle = code.image(x.left_cycle);
  y.center = code.image(x.center);
  y.right_cycle = code.image(x.right_cycle);
  y.phase = x.phase;
  return y;
}

}  // namespace sftlab
