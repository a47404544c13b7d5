#include "pilab/generators.hpp"

#include <charconv>
#include <limits>
#include <map>
#include <random>

#include "pilab/dimacs.hpp"
#include "pilab/errors.hpp"

namespace pilab {

std::vector<std::string> Generated::comment_lines() const {
  std::vector<std::string> lines;
  std::string params_line = "generator " + family;
  for (const auto& [key, value] : params) params_line += " " + key + "=" + std::to_string(value);
  lines.push_back(params_line);
  if (!blocks.empty()) {
    std::string layout = "blocks";
    for (const auto& [first, last] : blocks)
      layout += " " + std::to_string(first) + "-" + std::to_string(last);
    lines.push_back(layout);
  }
  return lines;
}

std::string Generated::to_dimacs() const { return pilab::to_dimacs(formula, comment_lines()); }

Generated gen_scheder_t(long long m) {
  if (m < 1) throw PreconditionError("scheder-t needs m >= 1");
  std::vector<Clause> clauses;
  std::vector<std::pair<Var, Var>> blocks;
  for (long long i = 1; i <= m; ++i) {
    const Var x = static_cast<Var>(3 * i - 2);
    const Var y = x + 1;
    const Var z = x + 2;
    clauses.push_back(Clause{Literal(x), Literal(y)});
    clauses.push_back(Clause{Literal(y), Literal(z)});
    clauses.push_back(Clause{Literal(x), Literal(z)});
    blocks.emplace_back(x, z);
  }
  return Generated{CnfFormula(static_cast<Var>(3 * m), std::move(clauses), 2), "scheder-t",
                   {{"m", m}}, std::move(blocks)};
}

namespace {

void check_cm_k(long long k) {
  if (k < 3 || k > 15 || k % 3 != 0)
    throw PreconditionError("cm block size k must be one of 3, 6, 9, 12, 15; got " + std::to_string(k));
}

// The block is clauses over variables offset+1 .. offset+k.
void append_cm_block(Var offset, Var k, std::vector<Clause>& clauses) {
  const Var third = k / 3;
  // A term with `third` positive and `third` negated variables is satisfiable
  // by an assignment exactly when it has at least `third` ones and at least
  // `third` zeros; the assignment then falsifies the block otherwise.
  for (std::uint32_t a = 0; a < (1U << k); ++a) {
    std::vector<bool> bits(k);
    Var ones = 0;
    for (Var i = 0; i < k; ++i) {
      bits[i] = ((a >> (k - 1 - i)) & 1U) != 0;  // variable 1 is the high bit
      ones += bits[i];
    }
    if (ones >= third && k - ones >= third) continue;
    std::vector<Literal> excluding;
    for (Var i = 0; i < k; ++i) excluding.emplace_back(offset + i + 1, bits[i]);
    clauses.emplace_back(std::move(excluding));
  }
}

}  // namespace

Generated gen_cm_block(long long k) {
  check_cm_k(k);
  std::vector<Clause> clauses;
  append_cm_block(0, static_cast<Var>(k), clauses);
  return Generated{CnfFormula(static_cast<Var>(k), std::move(clauses), static_cast<std::size_t>(k)),
                   "cm-block", {{"k", k}}, {{1, static_cast<Var>(k)}}};
}

Generated gen_cm_formula(long long n, long long k) {
  check_cm_k(k);
  if (n < k || n % k != 0)
    throw PreconditionError("cm formula needs n to be a positive multiple of k; got n=" +
                            std::to_string(n) + ", k=" + std::to_string(k));
  std::vector<Clause> clauses;
  std::vector<std::pair<Var, Var>> blocks;
  for (long long b = 0; b < n / k; ++b) {
    const Var offset = static_cast<Var>(b * k);
    append_cm_block(offset, static_cast<Var>(k), clauses);
    blocks.emplace_back(offset + 1, offset + static_cast<Var>(k));
  }
  return Generated{CnfFormula(static_cast<Var>(n), std::move(clauses), static_cast<std::size_t>(k)),
                   "cm", {{"n", n}, {"k", k}}, std::move(blocks)};
}

namespace {

// Unbiased draw from [0, bound) that only depends on the raw mt19937_64
// stream, so output is identical across standard libraries.
std::uint64_t draw(std::mt19937_64& rng, std::uint64_t bound) {
  const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() -
                              std::numeric_limits<std::uint64_t>::max() % bound;
  std::uint64_t x = 0;
  do {
    x = rng();
  } while (x >= limit);
  return x % bound;
}

}  // namespace

Generated gen_random_2cnf(long long n, long long m, std::uint64_t seed, RandomOptions options) {
  if (n < 2) throw PreconditionError("random 2-CNF needs n >= 2");
  if (m < 1) throw PreconditionError("random 2-CNF needs m >= 1");
  std::mt19937_64 rng(seed);
  const auto vars = static_cast<std::uint64_t>(n);
  std::vector<Clause> clauses;
  for (long long i = 0; i < m; ++i) {
    const Var a = static_cast<Var>(draw(rng, vars) + 1);
    Var b = 0;
    if (options.allow_degenerate) {
      b = static_cast<Var>(draw(rng, vars) + 1);
    } else {
      b = static_cast<Var>(draw(rng, vars - 1) + 1);
      if (b >= a) ++b;
    }
    const bool neg_a = draw(rng, 2) == 1;
    const bool neg_b = draw(rng, 2) == 1;
    clauses.push_back(Clause{Literal(a, neg_a), Literal(b, neg_b)});
  }
  std::vector<std::pair<std::string, long long>> params{
      {"n", n}, {"m", m}, {"seed", static_cast<long long>(seed)}};
  if (options.allow_degenerate) params.emplace_back("degenerate", 1);
  return Generated{CnfFormula(static_cast<Var>(n), std::move(clauses), 2), "random", std::move(params), {}};
}

Generated generate(std::string_view spec) {
  const auto colon = spec.find(':');
  const std::string name(spec.substr(0, colon));
  std::map<std::string, long long> params;
  if (colon != std::string_view::npos) {
    std::string_view rest = spec.substr(colon + 1);
    while (!rest.empty()) {
      const auto comma = rest.find(',');
      const std::string_view item = rest.substr(0, comma);
      const auto eq = item.find('=');
      if (eq == std::string_view::npos)
        throw PreconditionError("generator parameter '" + std::string(item) + "' is not key=value");
      long long value = 0;
      const std::string_view digits = item.substr(eq + 1);
      auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), value);
      if (ec != std::errc() || ptr != digits.data() + digits.size())
        throw PreconditionError("generator parameter '" + std::string(item) + "' needs an integer value");
      params[std::string(item.substr(0, eq))] = value;
      if (comma == std::string_view::npos) break;
      rest = rest.substr(comma + 1);
    }
  }
  auto need = [&](const std::string& key) {
    auto it = params.find(key);
    if (it == params.end()) throw PreconditionError("generator '" + name + "' needs parameter " + key);
    return it->second;
  };
  if (name == "scheder-t") return gen_scheder_t(need("m"));
  if (name == "cm-block") return gen_cm_block(need("k"));
  if (name == "cm") return gen_cm_formula(need("n"), need("k"));
  if (name == "random") {
    RandomOptions options;
    if (auto it = params.find("degenerate"); it != params.end()) options.allow_degenerate = it->second != 0;
    return gen_random_2cnf(need("n"), need("m"), static_cast<std::uint64_t>(need("seed")), options);
  }
  throw PreconditionError("unknown generator family '" + name + "'");
}

}  // namespace pilab
