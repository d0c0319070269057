// sftlab command-line interface. Every command prints one JSON document (or a flattened text
// rendering of it) and exits with 0 on success, 1 on internal errors, 2 on invalid input and
// 3 when the input is valid but outside the domain of the requested operation.

#include <cstdlib>
#include <iostream>
#include <random>

#include "CLI11.hpp"
#include "sftlab/sftlab.hpp"

using namespace sftlab;

namespace {

enum class Format { Json, Text };

struct RunConfig {
  Limits limits;
  Format format = Format::Json;
  std::uint64_t seed = 0;
};

void flatten(const Json& j, const std::string& prefix, std::ostream& out) {
  if (j.is_object()) {
    for (auto it = j.begin(); it != j.end(); ++it) flatten(it.value(), prefix.empty() ? it.key() : prefix + "." + it.key(), out);
  } else if (j.is_array() && !j.empty() && (j.front().is_object() || j.front().is_array())) {
    for (std::size_t i = 0; i < j.size(); ++i) flatten(j[i], prefix + "[" + std::to_string(i) + "]", out);
  } else {
    out << prefix << ": " << (j.is_string() ? j.get<std::string>() : j.dump()) << "\n";
  }
}

void emit(const RunConfig& cfg, const Json& j) {
  if (cfg.format == Format::Json)
    std::cout << j.dump(2) << "\n";
  else
    flatten(j, "", std::cout);
}

int exit_code(ErrorClass c) {
  switch (c) {
    case ErrorClass::InvalidInput: return 2;
    case ErrorClass::DomainRefusal: return 3;
    case ErrorClass::Internal: return 1;
  }
  return 1;
}

Json load(const std::string& path_or_inline) {
  if (!path_or_inline.empty() && path_or_inline.front() == '{') return parse_json(path_or_inline);
  return read_json_file(path_or_inline);
}

Json cmd_sft_check(const std::string& path) {
  Sft x = sft_from_json(load(path));
  Json j{{"valid", true}, {"alphabet_size", x.size()}};
  const bool irreducible = is_irreducible(x);
  j["irreducible"] = irreducible;
  j["period"] = irreducible ? Json(period(x)) : Json(nullptr);
  auto m = is_mixing(x);
  j["mixing"] = m.mixing;
  j["primitivity_index"] = m.primitivity_index ? Json(*m.primitivity_index) : Json(nullptr);
  return j;
}

Json cmd_entropy(const std::string& path, std::size_t words, bool exact) {
  Sft x = sft_from_json(load(path));
  Json j{{"alphabet_size", x.size()}};
  if (exact || words == 0) {
    j["entropy"] = to_json(topological_entropy(x));
    if (is_mixing(x).mixing) j["perron"] = perron_to_json(perron_data(x));
  }
  if (words > 0) {
    Json rows = Json::array();
    for (const auto& r : wordcount_entropy_sequence([&](std::size_t n) { return count_words(x, n); }, words))
      rows.push_back(Json{{"n", r.n}, {"count", to_json(r.count)}, {"rate", to_json(r.rate)}});
    j["word_counts"] = rows;
  }
  return j;
}

Json cmd_code_analyze(const std::string& path, const RunConfig& cfg) {
  OneBlockCode c = code_from_json(load(path));
  const Sft &dom = c.domain(), &cod = c.codomain();
  Json j;
  auto onto = is_factor_onto(c, cfg.limits);
  j["factor"] = to_json(cod, onto);
  if (!onto.onto) {
    j["verdict"] = "not a factor";
    return j;
  }
  if (is_mixing(dom).mixing && is_mixing(cod).mixing) {
    auto d = degree_star(c, cfg.limits);
    j["degree"] = to_json(cod, d);
    auto magic = find_magic_symbol(c, d);
    j["magic_symbol"] = magic ? Json(cod.name(*magic)) : Json(nullptr);
    j["almost_invertible"] = d.d_star == 1;
  } else {
    j["degree"] = nullptr;
    j["magic_symbol"] = nullptr;
    j["almost_invertible"] = nullptr;
  }
  j["left_closing"] = to_json(dom, is_left_closing(c));
  j["right_closing"] = to_json(dom, is_right_closing(c));
  j["verdict"] = "factor";
  return j;
}

Json cmd_ideal(const std::string& path_a, const std::string& path_b) {
  Sft x = sft_from_json(load(path_a)), y = sft_from_json(load(path_b));
  require_mixing(x, "first shift");
  require_mixing(y, "second shift");
  auto side = [](const Sft& s, const PerronData& d) {
    return Json{{"entropy", to_json(entropy(s))}, {"min_poly", to_json(d.min_poly)}};
  };
  auto px = perron_data(x), py = perron_data(y);
  Json j{{"a", side(x, px)}, {"b", side(y, py)}};
  // both are Perron roots, i.e. the largest real root, so equal minimal polynomials mean equal roots
  const bool equal = px.min_poly == py.min_poly && px.min_poly_certified && py.min_poly_certified;
  j["entropy_equal"] = equal;
  if (!equal) {
    j["status"] = "entropy mismatch";
    j["class"] = nullptr;
    return j;
  }
  auto ia = left_ideal(x), ib = left_ideal(y);
  j["a"]["ideal"] = to_json(ia);
  j["b"]["ideal"] = to_json(ib);
  j["status"] = "compared";
  j["class"] = to_json(class_equivalent(ia, ib));
  return j;
}

struct ConjArgs {
  std::string setup, action, point;
  std::size_t samples = 100;
  long n0 = 0;
  std::size_t n_max = 12;
};

Json cmd_conj(const ConjArgs& a, const RunConfig& cfg) {
  auto doc = setup_from_json(load(a.setup));
  auto s = validate_setup(doc.pi1, doc.pi2, doc.choice, cfg.limits);
  if (a.action == "validate") return Json{{"valid", true}, {"setup", to_json(s)}};
  if (a.action == "gap")
    return Json{{"gap", to_json(gap_certificate(s))}, {"excluded_words", to_json(excluded_wordcount_check(s, a.n0, a.n_max))}};
  if (a.action == "eval" || a.action == "window") {
    if (a.point.empty()) fail(ErrorCode::Parse, a.action + " requires --point");
    auto x = point_from_json(s.x_original(), load(a.point));
    auto member = in_X_prime(s, x);
    if (!member.member) fail(ErrorCode::NotInXPrime, "not in X-prime: " + member.explanation);
    if (a.action == "eval") return point_to_json(s.y(), conjugacy_map(s, x));
    return to_json(s, window_determination(s, x));
  }
  if (a.action == "roundtrip") {
    auto back = validate_setup(doc.pi2, doc.pi1, MagicChoice{doc.choice.b, doc.choice.a}, cfg.limits);
    std::mt19937_64 gen(cfg.seed);
    std::vector<EventuallyPeriodicPoint> pts;
    for (std::size_t i = 0; i < a.samples; ++i) pts.push_back(random_point(s.x_original(), gen));
    Json j = to_json(s, roundtrip_check(s, back, pts));
    j["seed"] = cfg.seed;
    return j;
  }
  fail(ErrorCode::Parse, "unknown conj action '" + a.action + "'");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Shifts of finite type, block codes, ideal classes and entropy-conjugacies"};
  app.require_subcommand(1);
  RunConfig cfg;
  if (const char* env = std::getenv("SFTLAB_MAX_ALPHABET")) {
    try {
      cfg.limits.max_alphabet = std::stoul(env);
    } catch (const std::exception&) {
      std::cerr << "SFTLAB_MAX_ALPHABET must be a positive integer\n";
      return 2;
    }
  }
  std::string format = "json";
  app.add_option("--format", format, "Output format")->check(CLI::IsMember({"json", "text"}));
  app.add_option("--max-alphabet", cfg.limits.max_alphabet, "Cap for subset constructions")->check(CLI::PositiveNumber);
  app.add_option("--max-words", cfg.limits.max_words, "Cap for explicit enumeration")->check(CLI::PositiveNumber);

  std::string path, path_b;
  auto* sft_check = app.add_subcommand("sft-check", "Validate a shift and report irreducibility and mixing");
  sft_check->add_option("sft", path, "Shift document")->required();

  std::size_t words = 0;
  bool exact = false;
  auto* ent = app.add_subcommand("entropy", "Certified entropy enclosure and word-count rates");
  ent->add_option("sft", path, "Shift document")->required();
  ent->add_option("--words", words, "Report (1/n) log |W_n| for n = 1..N");
  ent->add_flag("--exact", exact, "Report the certified enclosure and Perron data");

  auto* code = app.add_subcommand("code-analyze", "Factor, degree and closing analysis of a one-block code");
  code->add_option("code", path, "Code document")->required();

  auto* ideal = app.add_subcommand("ideal", "Compare the left ideal classes of two mixing shifts");
  ideal->add_option("a", path, "First shift document")->required();
  ideal->add_option("b", path_b, "Second shift document")->required();

  ConjArgs conj_args;
  auto* conj = app.add_subcommand("conj", "Entropy-conjugacy from a common extension");
  conj->add_option("setup", conj_args.setup, "Setup document")->required();
  conj->add_option("action", conj_args.action, "validate | gap | eval | window | roundtrip")
      ->required()
      ->check(CLI::IsMember({"validate", "gap", "eval", "window", "roundtrip"}));
  conj->add_option("--point", conj_args.point, "Point document (file or inline JSON)");
  conj->add_option("--samples", conj_args.samples, "Random points for roundtrip");
  conj->add_option("--seed", cfg.seed, "Seed for roundtrip sampling");
  conj->add_option("--n0", conj_args.n0, "Threshold for the excluded-set word count");
  conj->add_option("--n-max", conj_args.n_max, "Longest word in the excluded-set word count")->check(CLI::PositiveNumber);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }
  cfg.format = format == "text" ? Format::Text : Format::Json;

  try {
    Json out;
    if (*sft_check) out = cmd_sft_check(path);
    else if (*ent) out = cmd_entropy(path, words, exact);
    else if (*code) out = cmd_code_analyze(path, cfg);
    else if (*ideal) out = cmd_ideal(path, path_b);
    else out = cmd_conj(conj_args, cfg);
    emit(cfg, out);
    return 0;
  } catch (const Error& e) {
    const ErrorClass c = classify(e.code());
    Json err{{"error", Json{{"code", error_name(e.code())},
                            {"class", c == ErrorClass::InvalidInput ? "InvalidInput"
                                      : c == ErrorClass::DomainRefusal ? "DomainRefusal" : "Internal"},
                            {"detail", e.detail()}}}};
    emit(cfg, err);
    std::cerr << e.what() << "\n";
    return exit_code(c);
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 1;
  }
}
