// Acceptance checks. Prints one PASS/FAIL line per criterion and exits nonzero if any fails.
// Usage: acceptance <sftlab executable> <repository root>

#include <array>
#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>

#include "code_oracles.hpp"
#include "corpus.hpp"
#include "oracles.hpp"
#include "sftlab/sftlab.hpp"

using namespace sftlab;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;
};

struct Context {
  std::string cli, root;
};

void require(Outcome& o, bool ok, const std::string& what) {
  if (!ok && o.pass) o.detail = what;
  o.pass = o.pass && ok;
}

std::pair<int, std::string> run_cli(const Context& ctx, const std::string& args) {
  const std::string cmd = "cd '" + ctx.root + "' && '" + ctx.cli + "' " + args + " 2>/dev/null";
  std::string out;
  FILE* pipe = popen(cmd.c_str(), "r");
  if (!pipe) return {-1, out};
  std::array<char, 4096> buf{};
  std::size_t n;
  while ((n = fread(buf.data(), 1, buf.size(), pipe)) > 0) out.append(buf.data(), n);
  const int status = pclose(pipe);
  return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, out};
}

Outcome criterion1(const Context&) {
  Outcome o;
  const auto start = std::chrono::steady_clock::now();
  std::ostringstream excess;
  for (const auto& [name, x] : corpus::mixing()) {
    const auto m = oracle::matrix_of(x);
    for (std::size_t n = 1; n <= 12; ++n) {
      Integer enumerated = 0;
      for_each_word(x, n, [&](const Word&) { ++enumerated; });
      require(o, enumerated == oracle::entry_sum(oracle::power(m, n - 1)), name + ": |W_" + std::to_string(n) + "| mismatch");
    }
    const RationalInterval h = entropy(x);
    const RationalInterval rate = Rational(1, 40) * log_interval(RationalInterval::point(Rational(count_words(x, 40))));
    const Rational above = rate.hi - h.lo;
    excess << " " << name << "=" << to_decimal_string(above, 4);
    require(o, rate.lo >= h.lo && above <= Rational(1, 100), name + ": (1/40) log|W_40| exceeds h by " + to_decimal_string(above, 4));
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  require(o, secs < 5.0, "runtime " + std::to_string(secs) + " s");
  o.detail += (o.detail.empty() ? "" : "; ") + std::string("excess at n=40:") + excess.str();
  return o;
}

Outcome criterion2(const Context&) {
  Outcome o;
  for (const auto& [name, x] : corpus::mixing()) {
    PerronData d = perron_data(x);
    NumberField k = d.field();
    for (std::size_t j = 0; j < x.size(); ++j) {
      RatPolynomial s;
      for (std::size_t i = 0; i < x.size(); ++i)
        if (x.matrix()[i][j]) s = s + to_rational(d.left_eigenvector[i]);
      require(o, k.sub(s, k.mul(k.generator(), to_rational(d.left_eigenvector[j]))).is_zero(), name + ": vA != lambda v");
    }
    for (const auto& e : d.left_eigenvector) require(o, k.sign(to_rational(e)) == 1, name + ": entry not positive");
  }
  PerronData g = perron_data(corpus::golden());
  require(o, g.left_eigenvector == std::vector<IntPolynomial>{IntPolynomial{0, 1}, IntPolynomial{1}}, "golden mean v != (lambda, 1)");
  return o;
}

Outcome criterion3(const Context&) {
  Outcome o;
  Rational least = 100;
  for (const auto& [name, x] : corpus::mixing())
    for (Symbol a = 0; a < static_cast<Symbol>(x.size()); ++a) {
      auto s = validate_setup(identity_code(x), identity_code(x), MagicChoice{a, a});
      auto g = gap_certificate(s);
      least = std::min(least, g.gap.lo);
      require(o, g.gap.lo > Rational(1, 1000000), name + ": gap too small for symbol " + x.name(a));
    }
  o.detail = "smallest gap.lo = " + to_decimal_string(least, 6);
  return o;
}

Outcome criterion4(const Context&) {
  Outcome o;
  const Rational tol(1, 100000000);
  for (const auto& [name, x] : corpus::mixing()) {
    const RationalInterval h = entropy(x);
    for (std::size_t m : {2u, 3u, 4u}) {
      const RationalInterval hm = entropy(power_shift(x, m).sft);
      const RationalInterval scaled = Rational(static_cast<long>(m)) * h;
      const Rational dist = std::max(hm.hi - scaled.lo, scaled.hi - hm.lo);
      require(o, dist <= tol, name + " m=" + std::to_string(m) + ": enclosures differ by " + to_decimal_string(dist, 12));
    }
  }
  return o;
}

Outcome criterion5(const Context&) {
  Outcome o;
  std::size_t compared = 0;
  bool saw_two = false;
  for (const auto& [name, c] : corpus::codes()) {
    const long lib = degree_star(c).d_star;
    const long brute = oracle::degree_star(c, 8);
    require(o, lib == brute, name + ": d* " + std::to_string(lib) + " vs brute force " + std::to_string(brute));
    saw_two = saw_two || lib == 2;
    ++compared;
  }
  require(o, compared >= 10 && saw_two, "corpus too small or lacks a d* = 2 code");
  if (o.pass) o.detail = std::to_string(compared) + " codes";
  return o;
}

Outcome criterion6(const Context&) {
  Outcome o;
  std::size_t closing = 0;
  for (const auto& [name, c] : corpus::codes()) {
    auto r = is_left_closing(c);
    require(o, r.closing == !oracle::has_left_collapse(c, 6, 6), name + ": verdict disagrees with pair search");
    if (r.closing) {
      ++closing;
      require(o, oracle::delay_holds(c, *r.delay), name + ": delay window property fails");
    }
  }
  if (o.pass) o.detail = std::to_string(closing) + " closing, " + std::to_string(corpus::codes().size() - closing) + " not";
  return o;
}

Outcome criterion7(const Context&) {
  Outcome o;
  const Sft x = corpus::golden();
  const Sft y = make_sft({"1", "2"}, {{0, 1}, {1, 1}});
  auto block = higher_block(x, 2);
  std::vector<Symbol> phi;
  for (Symbol t = 0; t < static_cast<Symbol>(block.sft.size()); ++t) phi.push_back(1 - block.decode(t));
  const OneBlockCode pi2 = OneBlockCode::make(block.sft, y, phi);
  auto xy = validate_setup(block.decode, pi2);
  auto yx = validate_setup(pi2, block.decode);
  std::mt19937_64 gen(2024);
  std::vector<EventuallyPeriodicPoint> pts;
  std::size_t skipped = 0;
  while (pts.size() < 100) {
    auto p = random_point(x, gen);
    if (in_X_prime(xy, p).member)
      pts.push_back(p);
    else
      ++skipped;
  }
  for (const auto& p : pts) {
    auto img = conjugacy_map(xy, p);
    bool same = true;
    for (long n = -40; n <= 40; ++n) same = same && img.at(n) == 1 - p.at(n);
    require(o, same, "image differs from the symbolwise swap");
    auto cert = window_determination(xy, p);
    require(o, verify_window(xy, cert.window, cert.n) == std::optional<Symbol>(cert.z0), "window certificate does not re-verify");
  }
  auto r = roundtrip_check(xy, yx, pts);
  require(o, r.tested == 100 && r.passed == 100, "roundtrip " + std::to_string(r.passed) + "/" + std::to_string(r.tested));
  if (o.pass) o.detail = "100/100 round trips, " + std::to_string(skipped) + " sampled points outside X' skipped";
  return o;
}

Outcome criterion8(const Context&) {
  Outcome o;
  auto s = validate_setup(identity_code(corpus::full2()), identity_code(corpus::full2()), MagicChoice{Symbol{0}, Symbol{0}});
  for (long n0 : {-2L, 0L, 3L}) {
    auto r = excluded_wordcount_check(s, n0, 20);
    for (const auto& row : r.rows) {
      const long free = std::min(static_cast<long>(row.n), std::max(0L, n0));
      require(o, row.count == pow_integer(2, static_cast<unsigned long>(free)),
              "n0=" + std::to_string(n0) + " n=" + std::to_string(row.n) + ": count " + row.count.get_str());
      require(o, Rational(row.count) <= row.bound, "bound violated");
    }
  }
  return o;
}

Outcome criterion9(const Context& ctx) {
  Outcome o;
  auto [rc, text] = run_cli(ctx, "ideal data/full2.json data/full2_block.json");
  require(o, rc == 0, "ideal command failed");
  if (rc == 0) {
    Json j = parse_json(text);
    require(o, j["class"]["verdict"] == "EqualClass", "log-2 presentations not EqualClass");
    auto a = left_ideal(sft_from_json(read_json_file(ctx.root + "/data/full2.json")));
    auto b = left_ideal(sft_from_json(read_json_file(ctx.root + "/data/full2_block.json")));
    const auto& cert = j["class"]["certificate"];
    require(o, verify_certificate(a, b, int_polynomial_from_json(cert["s"]), int_polynomial_from_json(cert["t"])),
            "certificate from the CLI does not verify");
  }
  std::mt19937 gen(9);
  for (const auto& [name, x] : corpus::mixing()) {
    auto ideal = left_ideal(x);
    for (int k = 0; k < 20; ++k) {
      std::vector<Integer> c;
      for (int i = 0; i < std::max(1, ideal.ring.degree()); ++i) c.emplace_back(static_cast<long>(gen() % 11) - 5);
      IntPolynomial s(c);
      if (s.is_zero()) s = IntPolynomial{3};
      auto v = class_equivalent(ideal, scale(ideal, s));
      require(o, v.kind == ClassVerdict::Kind::Equal, name + ": scaling not recognized");
    }
    auto w = class_equivalent(ideal, left_ideal(higher_block(x, 2).sft));
    require(o, w.kind == ClassVerdict::Kind::Equal, name + ": class changes under 2-block recoding");
  }
  return o;
}

Outcome criterion10(const Context& ctx) {
  Outcome o;
  const std::vector<std::string> commands = {
      "sft-check data/golden.json",
      "sft-check data/zero_row.json",
      "entropy data/golden.json --exact --words 12",
      "code-analyze data/golden_decode.json",
      "code-analyze data/embedding.json",
      "ideal data/full2.json data/full2_block.json",
      "ideal data/golden.json data/full2.json",
      "conj data/setup_swap.json validate",
      "conj data/setup_swap.json gap",
      "conj data/setup_swap.json eval --point data/point_golden.json",
      "conj data/setup_swap.json eval --point data/point_excluded.json",
      "conj data/setup_swap.json window --point data/point_golden.json",
      "conj data/setup_swap.json roundtrip --samples 30 --seed 5",
      "--format text conj data/setup_full2.json gap",
  };
  for (const auto& c : commands) {
    auto first = run_cli(ctx, c), second = run_cli(ctx, c);
    require(o, !first.second.empty() && first == second, "'" + c + "' differs between runs");
  }
  if (o.pass) o.detail = std::to_string(commands.size()) + " commands";
  return o;
}

}  // namespace

int main(int argc, char** argv) {
  if (argc != 3) {
    std::cerr << "usage: acceptance <sftlab executable> <repository root>\n";
    return 2;
  }
  const Context ctx{argv[1], argv[2]};
  const std::vector<std::function<Outcome(const Context&)>> criteria = {
      criterion1, criterion2, criterion3, criterion4, criterion5,
      criterion6, criterion7, criterion8, criterion9, criterion10};
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    try {
      o = criteria[i](ctx);
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    failed += !o.pass;
    std::cout << (o.pass ? "PASS" : "FAIL") << " criterion " << (i + 1) << (o.detail.empty() ? "" : ": " + o.detail) << std::endl;
  }
  return failed == 0 ? 0 : 1;
}
