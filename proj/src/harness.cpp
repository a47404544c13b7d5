#include "pilab/harness.hpp"

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <iomanip>
#include <json.hpp>
#include <set>
#include <sstream>

#include "pilab/errors.hpp"
#include "pilab/implication_graph.hpp"
#include "pilab/structural.hpp"

namespace pilab {

using nlohmann::json;

Method default_method(const CnfFormula& formula) {
  return formula.width() <= 2 ? Method::Structural : Method::Oracle;
}

std::string to_string(Method method) { return method == Method::Structural ? "structural" : "oracle"; }

std::vector<Restriction> enumerate_with(const CnfFormula& formula, Method method, const OracleLimits& limits) {
  return method == Method::Structural ? enumerate_prime_implicants(formula, limits)
                                      : oracle_prime_implicants(formula, limits);
}

std::string format_text(const std::vector<Restriction>& restrictions) {
  std::string out;
  for (const Restriction& rho : restrictions) {
    out += rho.to_string();
    out += '\n';
  }
  return out;
}

namespace {

json restriction_json(const Restriction& rho) {
  json fixed = json::object();
  json free = json::array();
  for (Var v = 1; v <= rho.num_vars(); ++v) {
    if (rho.is_free(v)) free.push_back(v);
    else fixed[std::to_string(v)] = rho[v] == Value::One ? 1 : 0;
  }
  return json{{"n", rho.num_vars()}, {"fixed", fixed}, {"free", free}};
}

}  // namespace

std::string format_json(const std::vector<Restriction>& restrictions) {
  json arr = json::array();
  for (const Restriction& rho : restrictions) arr.push_back(restriction_json(rho));
  return arr.dump(2) + "\n";
}

std::string restriction_to_json(const Restriction& rho) { return restriction_json(rho).dump(); }

Restriction restriction_from_json(const std::string& text) {
  const json j = json::parse(text);
  Restriction rho(j.at("n").get<Var>());
  for (const auto& [key, value] : j.at("fixed").items()) {
    const int bit = value.get<int>();
    if (bit != 0 && bit != 1) throw PreconditionError("fixed values must be 0 or 1");
    const unsigned long var = std::stoul(key);
    if (var < 1 || var > rho.num_vars()) throw PreconditionError("fixed variable " + key + " out of range");
    rho.set(static_cast<Var>(var), bit == 1 ? Value::One : Value::Zero);
  }
  for (const auto& v : j.at("free")) {
    if (v.get<Var>() < 1 || v.get<Var>() > rho.num_vars()) throw PreconditionError("free variable out of range");
    if (rho.is_fixed(v.get<Var>())) throw PreconditionError("variable listed as both fixed and free");
  }
  if (rho.fixed_count() + j.at("free").size() != rho.num_vars())
    throw PreconditionError("fixed and free do not cover every variable");
  return rho;
}

namespace {

class Stopwatch {
 public:
  double lap_ms() {
    const auto now = std::chrono::steady_clock::now();
    const double ms = std::chrono::duration<double, std::milli>(now - start_).count();
    start_ = now;
    return ms;
  }

 private:
  std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

}  // namespace

BoundReport make_bound_report(const CnfFormula& formula, Method method, const OracleLimits& limits) {
  BoundReport r;
  r.n = formula.num_vars();
  r.k = formula.width();
  r.method = to_string(method);
  const unsigned n = formula.num_vars();
  Stopwatch clock;

  const auto pis = enumerate_with(formula, method, limits);
  r.timings_ms.emplace_back("enumerate", clock.lap_ms());
  r.count_total = pis.size();
  r.count_full = static_cast<std::size_t>(
      std::count_if(pis.begin(), pis.end(), [](const Restriction& rho) { return rho.is_full(); }));
  r.count_partial = r.count_total - r.count_full;

  r.count_isolated = (formula.width() <= 2 ? isolated_via_digraph(formula, limits)
                                           : oracle_isolated(formula, limits))
                         .size();
  r.timings_ms.emplace_back("isolated", clock.lap_ms());

  if (formula.width() <= 2) {
    if (const auto pre = preprocess(formula)) {
      const ImplicationDigraph digraph = ImplicationDigraph::build(pre->residual);
      r.t = digraph.cycle_variable_count();
      std::size_t mis = 0;
      enumerate_mis(build_variable_graph(digraph), [&](std::span<const Var>) { ++mis; });
      r.count_mis = mis;
    }
    r.timings_ms.emplace_back("mis", clock.lap_ms());
  }

  r.bound_partial = third_power_bound_ceil(n);
  r.bound_full = half_power_bound_ceil(n);
  r.bound_total = total_bound_ceil(n);
  r.bound_isolated = isolated_bound_ceil(n, static_cast<unsigned>(r.k));
  r.bound_mis = third_power_bound_ceil(n);

  auto violation = [&](const std::string& what, std::size_t count) {
    r.violations.push_back(what + " (count " + std::to_string(count) + ")");
  };
  if (r.count_total != r.count_partial + r.count_full) violation("count_total != partial + full", r.count_total);
  if (!within_isolated_bound(r.count_isolated, n, static_cast<unsigned>(r.k)))
    violation("isolated solutions exceed 2^((1-1/k)n)", r.count_isolated);
  if (r.count_full != r.count_isolated) violation("full prime implicants differ from isolated solutions", r.count_full);
  if (r.count_mis && !within_third_power_bound(*r.count_mis, n))
    violation("maximal independent sets exceed 3^(n/3)", *r.count_mis);
  if (r.k <= 2) {
    if (!within_third_power_bound(r.count_partial, n))
      violation("partial prime implicants exceed 3^(n/3)", r.count_partial);
    if (!within_half_power_bound(r.count_full, n)) violation("full prime implicants exceed 2^(n/2)", r.count_full);
    if (!within_total_bound(r.count_total, n))
      violation("prime implicants exceed 3^(n/3) + 2^(n/2)", r.count_total);
  }
  return r;
}

std::string report_json(const BoundReport& r) {
  json timings = json::object();
  for (const auto& [phase, ms] : r.timings_ms) timings[phase] = ms;
  json j{{"n", r.n},
         {"k", r.k},
         {"t", r.t},
         {"method", r.method},
         {"count_total", r.count_total},
         {"count_partial", r.count_partial},
         {"count_full", r.count_full},
         {"count_isolated", r.count_isolated},
         {"count_mis", r.count_mis ? json(*r.count_mis) : json(nullptr)},
         {"bound_partial", r.bound_partial.str()},
         {"bound_full", r.bound_full.str()},
         {"bound_total", r.bound_total.str()},
         {"bound_isolated", r.bound_isolated.str()},
         {"bound_mis", r.bound_mis.str()},
         {"violations", r.violations},
         {"timings_ms", timings}};
  return j.dump(2) + "\n";
}

std::string report_text(const BoundReport& r) {
  std::ostringstream out;
  auto row = [&](const std::string& name, const std::string& count, const std::string& bound) {
    out << std::left << std::setw(12) << name << std::right << std::setw(14) << count << std::setw(22) << bound
        << '\n';
  };
  out << "n = " << r.n << ", k = " << r.k << ", t = " << r.t << ", method = " << r.method << "\n\n";
  row("quantity", "count", "bound (rounded up)");
  row("total", std::to_string(r.count_total), r.bound_total.str());
  row("partial", std::to_string(r.count_partial), r.bound_partial.str());
  row("full", std::to_string(r.count_full), r.bound_full.str());
  row("isolated", std::to_string(r.count_isolated), r.bound_isolated.str());
  row("mis", r.count_mis ? std::to_string(*r.count_mis) : "-", r.bound_mis.str());
  out << '\n';
  if (r.violations.empty()) out << "violations: none\n";
  for (const auto& v : r.violations) out << "violation: " << v << '\n';
  for (const auto& [phase, ms] : r.timings_ms) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.3f", ms);
    out << "time " << phase << ": " << buf << " ms\n";
  }
  return out.str();
}

SetDiff set_difference(const std::vector<Restriction>& left, const std::vector<Restriction>& right) {
  std::vector<Restriction> a = left;
  std::vector<Restriction> b = right;
  canonicalize(a);
  canonicalize(b);
  SetDiff diff;
  std::set_difference(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(diff.only_left));
  std::set_difference(b.begin(), b.end(), a.begin(), a.end(), std::back_inserter(diff.only_right));
  return diff;
}

// ---------------------------------------------------------------------------
// Invariant suite

namespace {

template <typename F>
void for_each_restriction(Var n, F&& f) {
  Restriction rho(n);
  const Value order[3] = {Value::Free, Value::Zero, Value::One};
  std::vector<int> digits(n, 0);
  for (;;) {
    f(static_cast<const Restriction&>(rho));
    Var v = n;
    while (v >= 1) {
      int& d = digits[v - 1];
      d = (d + 1) % 3;
      rho.set(v, order[d]);
      if (d != 0) break;
      --v;
    }
    if (v == 0) return;
  }
}

template <typename F>
void for_each_assignment(Var n, F&& f) {
  Restriction a(n);
  for (Var v = 1; v <= n; ++v) a.set(v, Value::Zero);
  for (;;) {
    f(static_cast<const Restriction&>(a));
    Var v = n;
    while (v >= 1 && a[v] == Value::One) {
      a.set(v, Value::Zero);
      --v;
    }
    if (v == 0) return;
    a.set(v, Value::One);
  }
}

class Checker {
 public:
  explicit Checker(VerifyResult& result) : result_(result) {}

  void expect(bool ok, const std::string& what) {
    ++result_.checks;
    if (!ok) result_.violations.push_back(what);
  }
  void skip(const std::string& what) { result_.skipped.push_back(what); }

 private:
  VerifyResult& result_;
};

bool contains(const std::vector<Restriction>& sorted, const Restriction& rho) {
  return std::binary_search(sorted.begin(), sorted.end(), rho);
}

// Clauses of `formula` whose variables are all in `keep`, renumbered to
// 1..|keep| in ascending order. Returns nullopt when some kept variable does
// not occur in those clauses.
struct SubFormula {
  CnfFormula formula;
  std::vector<Var> vars;
};

std::optional<SubFormula> restrict_to_vars(const CnfFormula& formula, const std::vector<bool>& keep) {
  std::vector<Var> vars;
  std::vector<Var> local(formula.num_vars() + 1, 0);
  for (Var v = 1; v <= formula.num_vars(); ++v) {
    if (keep[v]) {
      vars.push_back(v);
      local[v] = static_cast<Var>(vars.size());
    }
  }
  if (vars.empty()) return std::nullopt;
  std::vector<Clause> clauses;
  std::vector<bool> seen(vars.size() + 1, false);
  for (const Clause& clause : formula.clauses()) {
    bool inside = true;
    for (Literal lit : clause.literals()) inside = inside && keep[lit.var()];
    if (!inside) continue;
    std::vector<Literal> lits;
    for (Literal lit : clause.literals()) {
      lits.emplace_back(local[lit.var()], lit.negated());
      seen[local[lit.var()]] = true;
    }
    clauses.emplace_back(std::move(lits));
  }
  for (std::size_t i = 1; i <= vars.size(); ++i)
    if (!seen[i]) return std::nullopt;
  return SubFormula{CnfFormula(static_cast<Var>(vars.size()), std::move(clauses)), std::move(vars)};
}

std::string show(const Restriction& rho) { return rho.to_string(); }

}  // namespace

AcyclicPartCheck check_acyclic_part(const CnfFormula& residual, const OracleLimits& limits) {
  AcyclicPartCheck out;
  const Var n = residual.num_vars();
  const ImplicationDigraph digraph = ImplicationDigraph::build(residual);
  const auto pis = oracle_prime_implicants(residual, limits);

  std::vector<bool> keep(n + 1, false);
  for (Var v = 1; v <= n; ++v) keep[v] = !digraph.on_cycle(Literal(v));
  const auto sub = restrict_to_vars(residual, keep);
  out.applicable = !digraph.acyclic() && sub.has_value();

  for (const Restriction& rho : pis) {
    if (rho.is_full()) continue;
    Restriction cycle_part(n);
    Restriction rest(n);
    for (Var v = 1; v <= n; ++v) (keep[v] ? rest : cycle_part).set(v, rho[v]);
    ++out.checked;
    if (!is_prime_implicant(restrict(residual, cycle_part), rest))
      out.fixed_failures.push_back("partial prime implicant " + show(rho) +
                                   " minus its cycle variables is not prime under the cycle fixing");
    if (!out.applicable) continue;
    Restriction projected(sub->formula.num_vars());
    for (std::size_t i = 0; i < sub->vars.size(); ++i)
      projected.set(static_cast<Var>(i + 1), rho[sub->vars[i]]);
    if (!is_prime_implicant(sub->formula, projected))
      out.counterexamples.push_back("partial prime implicant " + show(rho) + " projects to " + show(projected) +
                                    ", not prime in the cycle-free clauses");
  }
  return out;
}

VerifyResult verify_formula(const CnfFormula& formula, const OracleLimits& limits) {
  VerifyResult result;
  Checker check(result);
  const Var n = formula.num_vars();
  const bool two_cnf = formula.width() <= 2;
  const bool small = n <= limits.max_vars;
  const bool sweepable = n <= limits.max_sweep_vars;

  // Oracle-side facts that do not depend on 2-CNF structure.
  std::vector<Restriction> oracle;
  if (small) {
    oracle = oracle_prime_implicants(formula, limits);
    for (const Restriction& rho : oracle)
      check.expect(is_implicant(formula, rho), "oracle prime implicant " + show(rho) + " is not an implicant");
    for (std::size_t i = 0; i < oracle.size(); ++i)
      for (std::size_t j = 0; j < oracle.size(); ++j)
        if (i != j)
          check.expect(!oracle[i].extends(oracle[j]),
                       "prime implicants " + show(oracle[i]) + " and " + show(oracle[j]) + " are comparable");
    std::vector<Restriction> full;
    for (const Restriction& rho : oracle)
      if (rho.is_full()) full.push_back(rho);
    check.expect(full == oracle_isolated(formula, limits),
                 "full prime implicants differ from isolated satisfying assignments");
  } else {
    check.skip("oracle prime implicants (n > " + std::to_string(limits.max_vars) + ")");
  }

  if (sweepable) {
    const auto isolated = oracle_isolated(formula, limits);
    check.expect(within_isolated_bound(isolated.size(), n, static_cast<unsigned>(formula.width())),
                 "isolated solutions exceed 2^((1-1/k)n): " + std::to_string(isolated.size()));
    for_each_assignment(n, [&](const Restriction& a) {
      check.expect(evaluate(formula, a) == is_implicant(formula, a),
                   "evaluate disagrees with is_implicant on " + show(a));
    });
  } else {
    check.skip("isolated-solution sweep (n > " + std::to_string(limits.max_sweep_vars) + ")");
  }

  if (!two_cnf) return result;

  // Structural enumerator and its agreement with the oracle.
  StructuralResult structural;
  try {
    structural = enumerate_prime_implicants_detailed(formula, limits);
  } catch (const SizeLimitError&) {
    check.skip("structural enumeration (isolated sweep above limit)");
    return result;
  }
  const auto& pis = structural.prime_implicants;
  if (small) {
    const SetDiff diff = set_difference(pis, oracle);
    std::string detail;
    for (const auto& rho : diff.only_left) detail += " +" + show(rho);
    for (const auto& rho : diff.only_right) detail += " -" + show(rho);
    check.expect(diff.empty(), "structural and oracle enumerations differ:" + detail);
  }
  check.expect(within_third_power_bound(structural.stats.partial, n),
               "partial prime implicants exceed 3^(n/3): " + std::to_string(structural.stats.partial));
  check.expect(within_half_power_bound(structural.stats.full, n),
               "full prime implicants exceed 2^(n/2): " + std::to_string(structural.stats.full));
  check.expect(within_total_bound(pis.size(), n),
               "prime implicants exceed 3^(n/3) + 2^(n/2): " + std::to_string(pis.size()));
  check.expect(structural.stats.final_rejected == 0,
               "assembled candidates failed the final prime check: " + std::to_string(structural.stats.final_rejected));

  const auto pre = preprocess(formula);
  if (!pre) {
    check.expect(pis.empty(), "formula refuted by unit propagation has prime implicants");
    return result;
  }
  const CnfFormula& residual = pre->residual;
  const ImplicationDigraph digraph = ImplicationDigraph::build(residual);
  const Var t = digraph.cycle_variable_count();

  // Skew symmetry of edges and of the cycle set.
  for (const auto& [u, v] : digraph.edges())
    check.expect(digraph.has_edge(~v, ~u), "missing skew edge for " + u.to_string() + " -> " + v.to_string());
  for (Literal u : digraph.cycle_literals())
    check.expect(digraph.on_cycle(~u), "cycle literal " + u.to_string() + " without its complement");

  // Cycle fixings never exceed 2^(t/2), compared as fixings^2 <= 2^t.
  check.expect(within_half_power_bound(structural.stats.cycle_fixings, t),
               "cycle fixings exceed 2^(t/2): " + std::to_string(structural.stats.cycle_fixings));

  const VariableGraph graph = build_variable_graph(digraph);
  std::size_t mis = 0;
  enumerate_mis(graph, [&](std::span<const Var>) { ++mis; });
  check.expect(within_third_power_bound(mis, n), "maximal independent sets exceed 3^(n/3): " + std::to_string(mis));

  if (sweepable) {
    for_each_assignment(n, [&](const Restriction& a) {
      check.expect(is_satisfying_via_digraph(digraph, a) == evaluate(residual, a),
                   "digraph satisfiability disagrees with evaluation on " + show(a));
    });
  }

  if (!small) {
    check.skip("exhaustive restriction checks (n > " + std::to_string(limits.max_vars) + ")");
    return result;
  }

  // Cycle literals are fixed by every implicant of the residual.
  const auto implicants = oracle_implicants(residual, limits);
  for (const Restriction& rho : implicants)
    for (Literal u : digraph.cycle_literals())
      check.expect(rho.value_of(u) != Value::Free,
                   "implicant " + show(rho) + " leaves cycle literal " + u.to_string() + " free");

  const auto residual_pis = oracle_prime_implicants(residual, limits);

  if (digraph.acyclic()) {
    for_each_restriction(n, [&](const Restriction& rho) {
      const LiteralPartition part(rho);
      check.expect(implicant_conditions_hold(digraph, part) == contains(implicants, rho),
                   "implicant conditions disagree with is_implicant on " + show(rho));
      const bool partial_prime = rho.is_partial() && contains(residual_pis, rho);
      check.expect(ppi_conditions_hold(digraph, part) == partial_prime,
                   "partial-prime conditions disagree with the oracle on " + show(rho));
    });
    // Free-variable sets of accepted candidates are pairwise distinct.
    const auto acyclic = enumerate_ppi_acyclic(residual);
    std::set<std::vector<bool>> free_sets;
    for (const Restriction& rho : acyclic) {
      std::vector<bool> free(n);
      for (Var v = 1; v <= n; ++v) free[v - 1] = rho.is_free(v);
      check.expect(free_sets.insert(free).second, "two partial prime implicants share free set at " + show(rho));
    }
  } else {
    const AcyclicPartCheck part = check_acyclic_part(residual, limits);
    result.checks += part.checked;
    for (const auto& f : part.fixed_failures) check.expect(false, f);
    for (const auto& c : part.counterexamples) result.notes.push_back(c);
  }
  return result;
}

}  // namespace pilab
