#pragma once

#include <fstream>
#include <sstream>
#include <string>

#include "json.hpp"
#include "sftlab/entropy_conjugacy.hpp"
#include "sftlab/ideal_class.hpp"

namespace sftlab {

/// Insertion-ordered so that serialized reports are byte-stable.
using Json = nlohmann::ordered_json;

inline Json parse_json(const std::string& text) {
  try {
    return Json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    fail(ErrorCode::Parse, e.what());
  }
}

inline Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(ErrorCode::IO, "cannot open " + path);
  std::stringstream buffer;
  buffer << in.rdbuf();
  return parse_json(buffer.str());
}

namespace detail {

inline const Json& member(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) fail(ErrorCode::Parse, std::string("missing field '") + key + "'");
  return j.at(key);
}

inline std::string string_of(const Json& j, const char* what) {
  if (!j.is_string()) fail(ErrorCode::Parse, std::string(what) + " must be a string");
  return j.get<std::string>();
}

inline long integer_of(const Json& j, const char* what) {
  if (!j.is_number_integer()) fail(ErrorCode::Parse, std::string(what) + " must be an integer");
  return j.get<long>();
}

}  // namespace detail

// ---- values

inline Json to_json(const Rational& q) { return to_fraction_string(q); }
inline Json to_json(const Integer& n) { return n.get_str(); }

inline Json to_json(const RationalInterval& i) {
  return Json{{"lo", to_fraction_string(i.lo)}, {"hi", to_fraction_string(i.hi)}, {"decimal", i.to_string()}};
}

inline Json to_json(const IntPolynomial& p) {
  Json a = Json::array();
  for (const auto& c : p.coefficients()) a.push_back(c.get_str());
  return a;
}

inline IntPolynomial int_polynomial_from_json(const Json& j) {
  if (!j.is_array()) fail(ErrorCode::Parse, "polynomial must be a coefficient array, constant term first");
  std::vector<Integer> c;
  for (const auto& e : j) {
    if (e.is_number_integer()) {
      c.emplace_back(e.get<long>());
    } else if (e.is_string()) {
      Integer v;
      if (v.set_str(e.get<std::string>(), 10) != 0) fail(ErrorCode::Parse, "bad integer coefficient");
      c.push_back(v);
    } else {
      fail(ErrorCode::Parse, "coefficients must be integers or decimal strings");
    }
  }
  return IntPolynomial(std::move(c));
}

// ---- shifts, words, points, codes

inline Sft sft_from_json(const Json& j) {
  const Json& alphabet = detail::member(j, "alphabet");
  const Json& matrix = detail::member(j, "matrix");
  if (!alphabet.is_array() || !matrix.is_array()) fail(ErrorCode::Parse, "alphabet and matrix must be arrays");
  std::vector<std::string> names;
  for (const auto& s : alphabet) names.push_back(detail::string_of(s, "symbol"));
  BinaryMatrix m;
  for (const auto& row : matrix) {
    if (!row.is_array()) fail(ErrorCode::Parse, "matrix rows must be arrays");
    std::vector<std::uint8_t> r;
    for (const auto& e : row) {
      long v = detail::integer_of(e, "matrix entry");
      if (v != 0 && v != 1) fail(ErrorCode::NonBinaryEntry, "entry " + std::to_string(v));
      r.push_back(static_cast<std::uint8_t>(v));
    }
    m.push_back(std::move(r));
  }
  return make_sft(std::move(names), std::move(m));
}

inline Json to_json(const Sft& x) {
  Json m = Json::array();
  for (const auto& row : x.matrix()) {
    Json r = Json::array();
    for (auto v : row) r.push_back(static_cast<int>(v));
    m.push_back(r);
  }
  return Json{{"alphabet", x.alphabet()}, {"matrix", m}};
}

inline Word word_from_json(const Sft& x, const Json& j) {
  if (!j.is_array()) fail(ErrorCode::Parse, "word must be an array of symbols");
  Word w;
  for (const auto& s : j) w.push_back(x.index_of(detail::string_of(s, "symbol")));
  return w;
}

inline Json word_to_json(const Sft& x, const Word& w) {
  Json a = Json::array();
  for (Symbol s : w) a.push_back(x.name(s));
  return a;
}

inline EventuallyPeriodicPoint point_from_json(const Sft& x, const Json& j) {
  EventuallyPeriodicPoint p;
  p.left_cycle = word_from_json(x, detail::member(j, "left_cycle"));
  p.center = j.contains("center") ? word_from_json(x, j.at("center")) : Word{};
  p.right_cycle = word_from_json(x, detail::member(j, "right_cycle"));
  p.phase = j.contains("phase") ? detail::integer_of(j.at("phase"), "phase") : 0;
  validate_point(x, p);
  return p;
}

inline Json point_to_json(const Sft& x, const EventuallyPeriodicPoint& p) {
  return Json{{"left_cycle", word_to_json(x, p.left_cycle)},
              {"center", word_to_json(x, p.center)},
              {"right_cycle", word_to_json(x, p.right_cycle)},
              {"phase", p.phase}};
}

inline OneBlockCode code_from_json(const Json& j) {
  Sft dom = sft_from_json(detail::member(j, "domain"));
  Sft cod = sft_from_json(detail::member(j, "codomain"));
  const Json& phi = detail::member(j, "phi");
  if (!phi.is_object()) fail(ErrorCode::Parse, "phi must map domain symbols to codomain symbols");
  std::vector<Symbol> map(dom.size(), -1);
  for (auto it = phi.begin(); it != phi.end(); ++it)
    map[static_cast<std::size_t>(dom.index_of(it.key()))] = cod.index_of(detail::string_of(it.value(), "image"));
  for (std::size_t i = 0; i < map.size(); ++i)
    if (map[i] < 0) fail(ErrorCode::UnknownSymbol, "phi has no image for " + dom.name(static_cast<Symbol>(i)));
  return OneBlockCode::make(std::move(dom), std::move(cod), std::move(map));
}

inline Json to_json(const OneBlockCode& c) {
  Json phi = Json::object();
  for (Symbol s = 0; s < static_cast<Symbol>(c.domain().size()); ++s) phi[c.domain().name(s)] = c.codomain().name(c(s));
  return Json{{"domain", to_json(c.domain())}, {"codomain", to_json(c.codomain())}, {"phi", phi}};
}

struct SetupDocument {
  OneBlockCode pi1, pi2;
  MagicChoice choice;
};

/// {"pi1": code, "pi2": code, "magic_a"?: symbol of X, "magic_b"?: symbol of Y}
inline SetupDocument setup_from_json(const Json& j) {
  SetupDocument d{code_from_json(detail::member(j, "pi1")), code_from_json(detail::member(j, "pi2")), {}};
  if (j.contains("magic_a")) d.choice.a = d.pi1.codomain().index_of(detail::string_of(j.at("magic_a"), "magic_a"));
  if (j.contains("magic_b")) d.choice.b = d.pi2.codomain().index_of(detail::string_of(j.at("magic_b"), "magic_b"));
  return d;
}

// ---- reports

inline Json to_json(const MixingReport& r) {
  Json j{{"mixing", r.mixing}, {"wielandt_bound", r.wielandt_bound}};
  j["primitivity_index"] = r.primitivity_index ? Json(*r.primitivity_index) : Json(nullptr);
  return j;
}

inline Json perron_to_json(const PerronData& d) {
  Json eig = Json::array();
  for (const auto& e : d.left_eigenvector) eig.push_back(to_json(e));
  return Json{{"char_poly", to_json(d.char_poly)},
              {"min_poly", to_json(d.min_poly)},
              {"min_poly_certified", d.min_poly_certified},
              {"lambda", Json{{"modulus", to_json(d.lambda.poly)},
                              {"representative", to_json(IntPolynomial::x())},
                              {"isolating_interval", to_json(d.lambda.interval)}}},
              {"left_eigenvector", eig}};
}

inline Json to_json(const Sft& cod, const FactorReport& r) {
  Json j{{"onto", r.onto}};
  if (r.missing_word) j["missing_word"] = word_to_json(cod, *r.missing_word);
  return j;
}

inline Json to_json(const Sft& cod, const DegreeReport& r) {
  return Json{{"d_star", r.d_star},
              {"witness_word", word_to_json(cod, r.witness_word)},
              {"witness_index", r.witness_index},
              {"per_position_counts", r.per_position_counts}};
}

inline Json to_json(const Sft& dom, const ClosingReport& r) {
  Json j{{"closing", r.closing}};
  j["delay"] = r.delay ? Json(*r.delay) : Json(nullptr);
  if (r.counterexample)
    j["counterexample"] = Json::array({point_to_json(dom, r.counterexample->first), point_to_json(dom, r.counterexample->second)});
  return j;
}

inline Json to_json(const IdealRep& i) {
  Json g = Json::array();
  for (const auto& p : i.generators) g.push_back(to_json(p));
  return Json{{"ring", Json{{"min_poly", to_json(i.ring.min_poly)}, {"inverted", i.ring.inverted}}}, {"generators", g}};
}

inline Json to_json(const IntMatrix& m) {
  Json a = Json::array();
  for (const auto& row : m) {
    Json r = Json::array();
    for (const auto& e : row) r.push_back(e.get_str());
    a.push_back(r);
  }
  return a;
}

inline Json to_json(const ClassVerdict& v) {
  Json j{{"verdict", verdict_name(v.kind)}, {"method", v.method}};
  switch (v.kind) {
    case ClassVerdict::Kind::Equal:
      j["certificate"] = Json{{"s", to_json(v.s)}, {"t", to_json(v.t)}};
      break;
    case ClassVerdict::Kind::Different:
      j["invariant"] = v.invariant;
      j["invariant_lattices"] = Json::array({to_json(v.invariant_lattices.first), to_json(v.invariant_lattices.second)});
      break;
    case ClassVerdict::Kind::Unknown:
      j["search_bound"] = v.search_bound;
      break;
  }
  return j;
}

inline Json to_json(const ConjugacySetup& s) {
  Json j{{"z", to_json(s.z)},
         {"magic_a", s.x().name(s.a)},
         {"magic_b", s.y().name(s.b)},
         {"z_a", s.z.name(s.z_a)},
         {"z_b", s.z.name(s.z_b)},
         {"k1", s.k1},
         {"k2", s.k2},
         {"recoded_block_length", s.x_recoding ? Json(s.x_recoding->block_length) : Json(nullptr)},
         {"notes", s.notes}};
  return j;
}

inline Json to_json(const GapCertificate& g) {
  return Json{{"h_z", to_json(g.h_z)}, {"h_za", to_json(g.h_za)}, {"h_zb", to_json(g.h_zb)}, {"gap", to_json(g.gap)}};
}

inline Json to_json(const ExcludedCountReport& r) {
  Json rows = Json::array();
  for (const auto& row : r.rows)
    rows.push_back(Json{{"n", row.n}, {"count", to_json(row.count)}, {"bound", to_json(row.bound)}});
  return Json{{"n0", r.n0},
              {"z_growth", Json{{"mu", to_json(r.z_growth.mu)}, {"constant", to_json(r.z_growth.constant)}}},
              {"excluded_growth", Json{{"mu", to_json(r.excluded_growth.mu)}, {"constant", to_json(r.excluded_growth.constant)}}},
              {"rows", rows}};
}

inline Json to_json(const ConjugacySetup& s, const WindowCertificate& w) {
  return Json{{"point", point_to_json(s.x(), w.point)},
              {"N", w.n},
              {"magic_positions", Json::array({w.n1, w.nk})},
              {"minimal_N", w.minimal_n},
              {"window", word_to_json(s.x(), w.window)},
              {"z0", s.z.name(w.z0)}};
}

inline Json to_json(const ConjugacySetup& s, const RoundtripReport& r) {
  Json failures = Json::array();
  for (const auto& f : r.failures)
    failures.push_back(Json{{"point", point_to_json(s.x_original(), f.x)}, {"reason", f.reason}});
  return Json{{"tested", r.tested}, {"passed", r.passed}, {"skipped", r.skipped}, {"failures", failures}};
}

}  // namespace sftlab
