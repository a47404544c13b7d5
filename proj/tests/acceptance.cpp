// Acceptance suite: one [PASS]/[FAIL] line per criterion, nonzero exit if any
// criterion fails. PILAB_CLI, PILAB_CORPUS_DIR and PILAB_WORK_DIR come from CMake.

#include <sys/wait.h>

#include <array>
#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "pilab/bounds.hpp"
#include "pilab/dimacs.hpp"
#include "pilab/generators.hpp"
#include "pilab/harness.hpp"
#include "pilab/implication_graph.hpp"
#include "pilab/oracle.hpp"
#include "pilab/structural.hpp"

namespace fs = std::filesystem;
using namespace pilab;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;
  std::vector<std::string> failures;

  void expect(bool ok, const std::string& what) {
    if (ok) return;
    pass = false;
    if (failures.size() < 8) failures.push_back(what);
  }
};

struct Named {
  std::string name;
  CnfFormula formula;
};

// Criterion 2's corpus: 240 formulas, n in 2..10, m in 1..20.
std::vector<Named> random_corpus() {
  std::vector<Named> out;
  for (unsigned s = 1; s <= 240; ++s) {
    const long long n = 2 + s % 9, m = 1 + (7 * s) % 20;
    const std::string spec = "random:n=" + std::to_string(n) + ",m=" + std::to_string(m) + ",seed=" + std::to_string(s);
    out.push_back({spec, generate(spec).formula});
  }
  return out;
}

std::vector<Named> family_corpus() {
  std::vector<Named> out;
  for (int m = 1; m <= 5; ++m) out.push_back({"scheder-t:m=" + std::to_string(m), gen_scheder_t(m).formula});
  for (int k : {3, 6, 9}) out.push_back({"cm-block:k=" + std::to_string(k), gen_cm_block(k).formula});
  for (auto [n, k] : std::vector<std::pair<int, int>>{{6, 3}, {9, 3}, {12, 6}})
    out.push_back({"cm:n=" + std::to_string(n) + ",k=" + std::to_string(k), gen_cm_formula(n, k).formula});
  return out;
}

std::vector<Named> file_corpus() {
  std::vector<fs::path> paths;
  for (const auto& e : fs::directory_iterator(PILAB_CORPUS_DIR))
    if (e.path().extension() == ".cnf") paths.push_back(e.path());
  std::sort(paths.begin(), paths.end());
  std::vector<Named> out;
  for (const auto& p : paths) {
    std::ifstream in(p);
    out.push_back({p.filename().string(), parse_dimacs(in)});
  }
  return out;
}

template <typename F>
void for_each_restriction(Var n, F&& f) {
  std::vector<int> d(n, 0);
  for (;;) {
    Restriction rho(n);
    for (Var v = 1; v <= n; ++v) rho.set(v, d[v - 1] == 0 ? Value::Free : d[v - 1] == 1 ? Value::Zero : Value::One);
    f(rho);
    Var i = n;
    while (i > 0 && d[i - 1] == 2) d[--i] = 0;
    if (i == 0) return;
    ++d[i - 1];
  }
}

Outcome lower_bound_family() {
  Outcome o;
  const auto start = std::chrono::steady_clock::now();
  for (long long m = 1; m <= 5; ++m) {
    const CnfFormula f = gen_scheder_t(m).formula;
    const auto r = enumerate_prime_implicants_detailed(f);
    const BigInt expected = big_pow(3, static_cast<unsigned>(m));
    o.expect(BigInt(r.prime_implicants.size()) == expected && r.stats.full == 0,
             "m=" + std::to_string(m) + ": " + std::to_string(r.prime_implicants.size()) + " prime implicants");
    if (m <= 3) o.expect(r.prime_implicants == oracle_prime_implicants(f), "m=" + std::to_string(m) + ": oracle differs");
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  o.expect(secs < 5.0, "took " + std::to_string(secs) + " s");
  o.detail = "counts 3, 9, 27, 81, 243 all partial; " + std::to_string(secs) + " s";
  return o;
}

Outcome oracle_equivalence(const std::vector<Named>& corpus) {
  Outcome o;
  const auto start = std::chrono::steady_clock::now();
  for (const auto& [name, f] : corpus) {
    const SetDiff d = set_difference(enumerate_prime_implicants(f), oracle_prime_implicants(f));
    o.expect(d.empty(), name + ": " + std::to_string(d.only_left.size() + d.only_right.size()) + " differ");
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  o.expect(secs < 120.0, "took " + std::to_string(secs) + " s");
  o.detail = std::to_string(corpus.size()) + " formulas; " + std::to_string(secs) + " s";
  return o;
}

Outcome upper_bound(const std::vector<Named>& corpus) {
  Outcome o;
  std::size_t checked = 0;
  for (const auto& [name, f] : corpus) {
    // The total bound is a statement about 2-CNFs; wider families are skipped.
    if (f.width() > 2) continue;
    ++checked;
    const std::size_t count = enumerate_prime_implicants(f).size();
    o.expect(within_total_bound(count, f.num_vars()), name + ": " + std::to_string(count));
  }
  o.detail = std::to_string(checked) + " 2-CNFs";
  return o;
}

Outcome isolated_bound(const std::vector<Named>& corpus) {
  Outcome o;
  for (const auto& [name, f] : corpus) {
    const std::size_t count = oracle_isolated(f).size();
    o.expect(within_isolated_bound(count, f.num_vars(), static_cast<unsigned>(f.width())),
             name + ": " + std::to_string(count) + " isolated");
  }
  const CnfFormula x = parse_dimacs("p cnf 2 2\n1 2 0\n-1 -2 0\n");
  const std::size_t count = oracle_isolated(x).size();
  o.expect(count == 2 && isolated_bound_ceil(2, 2) == 2, "xor: " + std::to_string(count) + " isolated");
  o.detail = std::to_string(corpus.size()) + " formulas; xor meets the bound with 2";
  return o;
}

Outcome moon_moser() {
  Outcome o;
  std::mt19937_64 rng(2024);
  for (int trial = 0; trial < 120; ++trial) {
    const Var n = 1 + trial % 12;
    VariableGraph g(n);
    std::bernoulli_distribution coin(0.05 + 0.075 * (trial % 12));
    for (Var a = 1; a <= n; ++a)
      for (Var b = a + 1; b <= n; ++b)
        if (coin(rng)) g.add_edge(a, b);
    std::size_t count = 0;
    enumerate_mis(g, [&](std::span<const Var>) { ++count; });
    o.expect(within_third_power_bound(count, n), "n=" + std::to_string(n) + ": " + std::to_string(count));
  }
  for (Var blocks = 1; blocks <= 3; ++blocks) {
    VariableGraph g(3 * blocks);
    for (Var i = 0; i < blocks; ++i) {
      g.add_edge(3 * i + 1, 3 * i + 2);
      g.add_edge(3 * i + 2, 3 * i + 3);
      g.add_edge(3 * i + 1, 3 * i + 3);
    }
    std::size_t count = 0;
    enumerate_mis(g, [&](std::span<const Var>) { ++count; });
    o.expect(BigInt(count) == big_pow(3, blocks), "triangles n=" + std::to_string(3 * blocks) + ": " + std::to_string(count));
  }
  o.detail = "120 random graphs; triangles give 3, 9, 27";
  return o;
}

Outcome characterisations() {
  Outcome o;
  int found = 0;
  std::size_t restrictions = 0;
  for (unsigned s = 1; found < 50 && s < 5000; ++s) {
    const auto pre = preprocess(gen_random_2cnf(2 + s % 6, 1 + s % 10, 7000 + s).formula);
    if (!pre) continue;
    const ImplicationDigraph d = ImplicationDigraph::build(pre->residual);
    if (!d.acyclic()) continue;
    ++found;
    const CnfFormula& f = pre->residual;
    const auto pis = oracle_prime_implicants(f);
    for_each_restriction(f.num_vars(), [&](const Restriction& rho) {
      ++restrictions;
      const LiteralPartition p(rho);
      o.expect(implicant_conditions_hold(d, p) == is_implicant(f, rho), "implicant conditions at " + rho.to_string());
      const bool ppi = rho.is_partial() && std::binary_search(pis.begin(), pis.end(), rho);
      o.expect(ppi_conditions_hold(d, p) == ppi, "partial-prime conditions at " + rho.to_string());
    });
  }
  o.expect(found == 50, "only " + std::to_string(found) + " acyclic formulas found");
  o.detail = std::to_string(found) + " acyclic formulas, " + std::to_string(restrictions) + " restrictions";
  return o;
}

Outcome digraph_satisfiability() {
  Outcome o;
  std::size_t assignments = 0;
  for (unsigned s = 1; s <= 50; ++s) {
    const Var n = 2 + s % 7;
    const CnfFormula f = gen_random_2cnf(n, 1 + s % 20, 9000 + s).formula;
    const ImplicationDigraph d = ImplicationDigraph::build(f);
    for (std::uint64_t a = 0; a < (std::uint64_t{1} << n); ++a) {
      Restriction rho(n);
      for (Var v = 1; v <= n; ++v) rho.set(v, (a >> (n - v)) & 1 ? Value::One : Value::Zero);
      ++assignments;
      o.expect(is_satisfying_via_digraph(d, rho) == evaluate(f, rho), "seed " + std::to_string(s) + " at " + rho.to_string());
    }
  }
  o.detail = "50 formulas, " + std::to_string(assignments) + " assignments";
  return o;
}

// Second half: the cycle-free projection claim, checked wherever every
// non-cycle variable occurs in the cycle-free clauses.
Outcome cycle_literals(const std::vector<Named>& corpus) {
  Outcome o;
  std::size_t cyclic = 0, implicants = 0, applicable = 0, projected = 0, counterexamples = 0, fixed_failures = 0;
  std::string first_counterexample;
  for (const auto& [name, f] : corpus) {
    const auto pre = preprocess(f);
    if (!pre || f.width() > 2) continue;
    const ImplicationDigraph d = ImplicationDigraph::build(pre->residual);
    if (d.acyclic()) continue;
    ++cyclic;
    for (const Restriction& rho : oracle_implicants(pre->residual)) {
      ++implicants;
      for (Literal u : d.cycle_literals())
        o.expect(rho.value_of(u) != Value::Free, name + ": implicant " + rho.to_string() + " leaves " +
                                                     u.to_string() + " free");
    }
    const AcyclicPartCheck c = check_acyclic_part(pre->residual);
    fixed_failures += c.fixed_failures.size();
    if (!c.applicable) continue;
    ++applicable;
    projected += c.checked;
    counterexamples += c.counterexamples.size();
    for (const auto& msg : c.counterexamples) {
      if (first_counterexample.empty()) first_counterexample = name + ": " + msg;
      o.expect(false, name + ": " + msg);
    }
  }
  o.expect(cyclic > 0, "no cyclic instances in the corpus");
  std::ostringstream detail;
  detail << cyclic << " cyclic formulas, " << implicants << " implicants keep every cycle literal fixed; projection on "
         << applicable << " formulas: " << counterexamples << "/" << projected
         << " partial prime implicants not prime in the cycle-free clauses; with the cycle values substituted instead: "
         << fixed_failures << " failures";
  o.detail = detail.str();
  return o;
}

Outcome chandra_counts() {
  Outcome o;
  const auto block = oracle_prime_implicants(gen_cm_block(3).formula);
  std::string got;
  for (const auto& r : block) got += r.to_string() + " ";
  o.expect(got == "*01 *10 0*1 01* 1*0 10* ", "cm-block k=3: " + got);
  const std::size_t pair = oracle_prime_implicants(gen_cm_formula(6, 3).formula).size();
  o.expect(pair == 36, "cm n=6 k=3: " + std::to_string(pair));
  o.detail = "cm-block k=3 gives " + std::to_string(block.size()) + ", cm n=6 k=3 gives " + std::to_string(pair);
  return o;
}

std::string run_cli(const std::string& args, int& status) {
  FILE* pipe = ::popen((std::string(PILAB_CLI) + " " + args + " 2>&1").c_str(), "r");
  std::string out;
  if (pipe == nullptr) {
    status = -1;
    return out;
  }
  std::array<char, 4096> buf{};
  std::size_t got;
  while ((got = std::fread(buf.data(), 1, buf.size(), pipe)) > 0) out.append(buf.data(), got);
  const int raw = ::pclose(pipe);
  status = WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
  return out;
}

Outcome determinism(const std::vector<Named>& corpus) {
  Outcome o;
  const fs::path dir = PILAB_WORK_DIR;
  fs::create_directories(dir);
  std::size_t runs = 0;
  for (std::size_t i = 0; i < corpus.size(); ++i) {
    const fs::path file = dir / ("input_" + std::to_string(i) + ".cnf");
    std::ofstream(file) << to_dimacs(corpus[i].formula);
    int s1 = 0, s2 = 0;
    const std::string a = run_cli("enumerate --input " + file.string(), s1);
    const std::string b = run_cli("enumerate --input " + file.string(), s2);
    runs += 2;
    o.expect(s1 == 0 && s2 == 0 && a == b, corpus[i].name + ": outputs differ or exit " + std::to_string(s1));
  }
  o.detail = std::to_string(corpus.size()) + " inputs, " + std::to_string(runs) + " runs";
  return o;
}

}  // namespace

int main() {
  const auto randoms = random_corpus();
  auto full = randoms;
  for (auto& f : family_corpus()) full.push_back(std::move(f));
  for (auto& f : file_corpus()) full.push_back(std::move(f));

  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
      {"1 lower-bound family exactness", lower_bound_family},
      {"2 structural equals oracle on random 2-CNFs", [&] { return oracle_equivalence(randoms); }},
      {"3 total bound never exceeded", [&] { return upper_bound(full); }},
      {"4 isolated-solution bound", [&] { return isolated_bound(full); }},
      {"5 maximal independent set bound", moon_moser},
      {"6 implicant and partial-prime characterisations", characterisations},
      {"7 digraph satisfiability", digraph_satisfiability},
      {"8 cycle literals and cycle-free projection", [&] { return cycle_literals(full); }},
      {"9 desk-scale Chandra-Markowsky counts", chandra_counts},
      {"10 enumerate is byte-deterministic", [&] { return determinism(full); }},
  };

  int failed = 0;
  for (const auto& [name, check] : criteria) {
    Outcome o;
    try {
      o = check();
    } catch (const std::exception& e) {
      o.pass = false;
      o.failures.push_back(std::string("exception: ") + e.what());
    }
    failed += !o.pass;
    std::cout << (o.pass ? "[PASS] " : "[FAIL] ") << name << " -- " << o.detail << '\n';
    for (const auto& f : o.failures) std::cout << "         " << f << '\n';
  }
  std::cout << criteria.size() - failed << "/" << criteria.size() << " criteria passed\n";
  return failed == 0 ? 0 : 1;
}
