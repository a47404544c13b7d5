#include "pilab/structural.hpp"

#include <omp.h>

#include <algorithm>
#include <boost/dynamic_bitset.hpp>
#include <cstdint>
#include <string>

#include "pilab/errors.hpp"

namespace pilab {

// ---------------------------------------------------------------------------
// Maximal independent sets

namespace {

using VertexSet = boost::dynamic_bitset<>;

class MisEnumerator {
 public:
  MisEnumerator(const VariableGraph& graph, const std::function<void(std::span<const Var>)>& visit)
      : visit_(visit), closed_(graph.num_vertices(), VertexSet(graph.num_vertices())) {
    for (Var v = 1; v <= graph.num_vertices(); ++v) {
      closed_[v - 1].set(v - 1);
      for (Var w : graph.neighbors(v)) closed_[v - 1].set(w - 1);
    }
  }

  void run(Var n) {
    VertexSet all(n);
    all.set();
    expand(all, VertexSet(n));
  }

 private:
  void expand(VertexSet candidates, VertexSet excluded) {
    if (candidates.none()) {
      if (excluded.none()) {
        sorted_ = current_;
        std::sort(sorted_.begin(), sorted_.end());
        visit_(sorted_);
      }
      return;
    }
    // Pivot on the vertex whose closed neighbourhood leaves the fewest branches.
    std::size_t pivot = VertexSet::npos;
    std::size_t best = VertexSet::npos;
    const VertexSet pool = candidates | excluded;
    for (std::size_t u = pool.find_first(); u != VertexSet::npos; u = pool.find_next(u)) {
      const std::size_t branches = (candidates & closed_[u]).count();
      if (branches < best) {
        best = branches;
        pivot = u;
      }
    }
    const VertexSet branch = candidates & closed_[pivot];
    for (std::size_t v = branch.find_first(); v != VertexSet::npos; v = branch.find_next(v)) {
      current_.push_back(static_cast<Var>(v + 1));
      expand(candidates - closed_[v], excluded - closed_[v]);
      current_.pop_back();
      candidates.reset(v);
      excluded.set(v);
    }
  }

  const std::function<void(std::span<const Var>)>& visit_;
  std::vector<VertexSet> closed_;
  std::vector<Var> current_;
  std::vector<Var> sorted_;
};

}  // namespace

void enumerate_mis(const VariableGraph& graph, const std::function<void(std::span<const Var>)>& visit) {
  MisEnumerator(graph, visit).run(graph.num_vertices());
}

std::vector<std::vector<Var>> maximal_independent_sets(const VariableGraph& graph) {
  std::vector<std::vector<Var>> out;
  enumerate_mis(graph, [&](std::span<const Var> s) { out.emplace_back(s.begin(), s.end()); });
  return out;
}

// ---------------------------------------------------------------------------
// Characterisations

bool implicant_conditions_hold(const ImplicationDigraph& digraph, const LiteralPartition& partition) {
  for (const auto& [u, v] : digraph.edges()) {
    const Side from = partition.side(u);
    const Side to = partition.side(v);
    if (to == Side::False && from != Side::False) return false;
    if (from == Side::True && to != Side::True) return false;
    if (from == Side::Free && to == Side::Free) return false;
  }
  return true;
}

bool ppi_conditions_hold(const ImplicationDigraph& digraph, const LiteralPartition& partition) {
  if (!implicant_conditions_hold(digraph, partition)) return false;
  const auto c = partition.free_literals();
  if (c.empty()) return false;
  const auto n = neighborhoods(digraph, c);
  return n.minus == partition.false_literals() && n.plus == partition.true_literals();
}

PpiCandidate make_ppi_candidate(const ImplicationDigraph& digraph, std::span<const Var> free_vars) {
  PpiCandidate cand;
  cand.free_vars.assign(free_vars.begin(), free_vars.end());
  std::sort(cand.free_vars.begin(), cand.free_vars.end());
  for (Var v : cand.free_vars) {
    cand.free_literals.emplace_back(v, false);
    cand.free_literals.emplace_back(v, true);
  }
  if (cand.free_literals.empty()) return cand;
  cand.neighborhoods = neighborhoods(digraph, cand.free_literals);

  // Each fixed literal must sit in exactly one of N-, N+, with its
  // complement on the other side.
  std::vector<int> count(digraph.num_literals(), 0);
  std::vector<bool> in_plus(digraph.num_literals(), false);
  for (Literal u : cand.neighborhoods.minus) ++count[u.index()];
  for (Literal u : cand.neighborhoods.plus) {
    ++count[u.index()];
    in_plus[u.index()] = true;
  }
  for (Literal u : cand.free_literals) ++count[u.index()];
  if (std::any_of(count.begin(), count.end(), [](int c) { return c != 1; })) return cand;

  Restriction rho(digraph.num_vars());
  for (Var v = 1; v <= digraph.num_vars(); ++v) {
    const Literal pos(v);
    const Literal neg(v, true);
    if (rho.is_free(v) && std::binary_search(cand.free_vars.begin(), cand.free_vars.end(), v)) continue;
    if (in_plus[pos.index()] == in_plus[neg.index()]) return cand;
    rho.set(v, in_plus[pos.index()] ? Value::One : Value::Zero);
  }
  cand.restriction = rho;
  cand.valid = ppi_conditions_hold(digraph, LiteralPartition(rho));
  return cand;
}

std::optional<Restriction> ppi_from_mis_candidate(const ImplicationDigraph& digraph,
                                                  std::span<const Var> free_vars) {
  PpiCandidate cand = make_ppi_candidate(digraph, free_vars);
  if (!cand.valid) return std::nullopt;
  return cand.restriction;
}

std::vector<Restriction> enumerate_ppi_acyclic(const CnfFormula& formula, AcyclicStats* stats) {
  const ImplicationDigraph digraph = ImplicationDigraph::build(formula);
  if (!digraph.acyclic())
    throw PreconditionError("enumerate_ppi_acyclic needs an acyclic implication digraph");
  const VariableGraph graph = build_variable_graph(digraph);

  AcyclicStats local;
  std::vector<Restriction> out;
  enumerate_mis(graph, [&](std::span<const Var> s) {
    ++local.mis_visited;
    if (auto rho = ppi_from_mis_candidate(digraph, s)) out.push_back(std::move(*rho));
    else ++local.rejected;
  });
  if (stats != nullptr) *stats = local;
  canonicalize(out);
  return out;
}

// ---------------------------------------------------------------------------
// Cycle fixings

namespace {

class CycleFixer {
 public:
  explicit CycleFixer(const ImplicationDigraph& digraph) : digraph_(digraph) {
    for (std::size_t id = 0; id < digraph.num_sccs(); ++id) {
      const auto members = digraph.scc_members(id);
      if (members.size() < 2) continue;
      const Literal rep = Literal::from_index(members.front());
      if (id < digraph.scc_id(~rep)) pairs_.push_back(id);
    }
  }

  std::vector<Restriction> run() {
    if (digraph_.contradictory()) return {};
    std::vector<Side> sides(digraph_.num_literals(), Side::Free);
    descend(0, sides);
    return std::move(out_);
  }

 private:
  // Makes every member of `scc` true and closes forward. False on conflict.
  bool assert_true(std::size_t scc, std::vector<Side>& sides) const {
    std::vector<Literal> seeds;
    for (std::uint32_t u : digraph_.scc_members(scc)) seeds.push_back(Literal::from_index(u));
    const auto reached = digraph_.forward_closure(seeds);
    for (std::size_t u = 0; u < reached.size(); ++u) {
      if (!reached[u]) continue;
      if (sides[u] == Side::False) return false;
      sides[u] = Side::True;
      sides[u ^ 1U] = Side::False;
    }
    return true;
  }

  void descend(std::size_t next, std::vector<Side>& sides) {
    while (next < pairs_.size() &&
           sides[digraph_.scc_members(pairs_[next]).front()] != Side::Free)
      ++next;
    if (next == pairs_.size()) {
      emit(sides);
      return;
    }
    const std::size_t scc = pairs_[next];
    const std::size_t complement =
        digraph_.scc_id(~Literal::from_index(digraph_.scc_members(scc).front()));
    for (std::size_t pick : {scc, complement}) {
      std::vector<Side> trial = sides;
      if (assert_true(pick, trial)) descend(next + 1, trial);
    }
  }

  void emit(const std::vector<Side>& sides) {
    Restriction rho(digraph_.num_vars());
    for (Var v = 1; v <= digraph_.num_vars(); ++v) {
      const Side s = sides[Literal(v).index()];
      if (s != Side::Free) rho.set(v, s == Side::True ? Value::One : Value::Zero);
    }
    out_.push_back(std::move(rho));
  }

  const ImplicationDigraph& digraph_;
  std::vector<std::size_t> pairs_;
  std::vector<Restriction> out_;
};

}  // namespace

std::vector<Restriction> enumerate_cycle_fixings(const ImplicationDigraph& digraph) {
  auto out = CycleFixer(digraph).run();
  canonicalize(out);
  return out;
}

// ---------------------------------------------------------------------------
// Isolated solutions

std::vector<Restriction> isolated_via_digraph(const CnfFormula& formula, const OracleLimits& limits) {
  if (formula.width() > 2) throw PreconditionError("isolated_via_digraph needs a 2-CNF");
  const auto pre = preprocess(formula);
  if (!pre) return {};
  const Var n = formula.num_vars();

  std::vector<Var> unforced;
  for (Var v = 1; v <= n; ++v)
    if (pre->forced.is_free(v)) unforced.push_back(v);
  if (unforced.size() > limits.max_sweep_vars || unforced.size() > 62) {
    throw SizeLimitError("isolated-solution sweep refused: " + std::to_string(unforced.size()) +
                         " unforced variables exceed limit " + std::to_string(limits.max_sweep_vars));
  }
  // A variable the residual never mentions can always be flipped.
  if (pre->residual.occurring_variables().size() != unforced.size()) return {};
  if (unforced.empty()) return {pre->forced};

  // Edges over local bit positions: edge (u -> v) is violated when u is true
  // and v false.
  std::vector<std::size_t> local(n + 1, 0);
  for (std::size_t i = 0; i < unforced.size(); ++i) local[unforced[i]] = i;
  struct Edge {
    std::size_t from_bit, to_bit;
    bool from_neg, to_neg;
  };
  std::vector<Edge> edges;
  const ImplicationDigraph digraph = ImplicationDigraph::build(pre->residual);
  for (const auto& [u, v] : digraph.edges())
    edges.push_back({local[u.var()], local[v.var()], u.negated(), v.negated()});

  auto satisfied = [&](std::uint64_t a) {
    for (const Edge& e : edges) {
      const bool from_true = (((a >> e.from_bit) & 1U) != 0) != e.from_neg;
      const bool to_true = (((a >> e.to_bit) & 1U) != 0) != e.to_neg;
      if (from_true && !to_true) return false;
    }
    return true;
  };
  const std::size_t width = unforced.size();
  auto isolated = [&](std::uint64_t a) {
    if (!satisfied(a)) return false;
    for (std::size_t b = 0; b < width; ++b)
      if (satisfied(a ^ (std::uint64_t{1} << b))) return false;
    return true;
  };

  const std::int64_t total = std::int64_t{1} << width;
  std::vector<std::vector<std::uint64_t>> found(static_cast<std::size_t>(omp_get_max_threads()));
#pragma omp parallel for schedule(static)
  for (std::int64_t a = 0; a < total; ++a) {
    if (isolated(static_cast<std::uint64_t>(a)))
      found[static_cast<std::size_t>(omp_get_thread_num())].push_back(static_cast<std::uint64_t>(a));
  }

  std::vector<Restriction> out;
  for (const auto& bucket : found) {
    for (std::uint64_t a : bucket) {
      Restriction rho = pre->forced;
      for (std::size_t i = 0; i < width; ++i)
        rho.set(unforced[i], ((a >> i) & 1U) != 0 ? Value::One : Value::Zero);
      out.push_back(std::move(rho));
    }
  }
  canonicalize(out);
  return out;
}

// ---------------------------------------------------------------------------
// Full pipeline

StructuralResult enumerate_prime_implicants_detailed(const CnfFormula& formula, const OracleLimits& limits) {
  if (formula.width() > 2)
    throw PreconditionError("structural enumeration needs a 2-CNF; width is " +
                            std::to_string(formula.width()));
  StructuralResult result;
  StructuralStats& stats = result.stats;
  const auto pre = preprocess(formula);
  if (!pre) {
    stats.unsat = true;
    return result;
  }
  const Var n = formula.num_vars();
  stats.forced = static_cast<Var>(pre->forced.fixed_count());

  const ImplicationDigraph digraph = ImplicationDigraph::build(pre->residual);
  stats.cycle_vars = digraph.cycle_variable_count();
  const auto fixings = enumerate_cycle_fixings(digraph);
  stats.cycle_fixings = fixings.size();

  std::vector<Restriction> found;
  for (const Restriction& fixing : fixings) {
    // Remaining variables: neither forced nor set by the fixing.
    std::vector<Var> remaining;
    std::vector<Var> local(n + 1, 0);
    for (Var v = 1; v <= n; ++v) {
      if (pre->forced.is_free(v) && fixing.is_free(v)) {
        remaining.push_back(v);
        local[v] = static_cast<Var>(remaining.size());
      }
    }
    if (remaining.empty()) continue;  // full restriction; left to the isolated sweep

    // Every clause touching a fixed variable is already satisfied by the
    // fixing, so the residue is the clauses lying wholly in `remaining`.
    std::vector<Clause> residue;
    for (const Clause& clause : pre->residual.clauses()) {
      const Literal a = clause.literals()[0];
      const Literal b = clause.literals()[1];
      if (local[a.var()] == 0 || local[b.var()] == 0) continue;
      residue.push_back(Clause{Literal(local[a.var()], a.negated()), Literal(local[b.var()], b.negated())});
    }
    const CnfFormula sub(static_cast<Var>(remaining.size()), std::move(residue));

    AcyclicStats acyclic;
    for (const Restriction& part : enumerate_ppi_acyclic(sub, &acyclic)) {
      Restriction rho = pre->forced;
      for (Var v = 1; v <= n; ++v)
        if (fixing.is_fixed(v)) rho.set(v, fixing[v]);
      for (std::size_t i = 0; i < remaining.size(); ++i)
        rho.set(remaining[i], part[static_cast<Var>(i + 1)]);
      if (is_prime_implicant(formula, rho)) found.push_back(std::move(rho));
      else ++stats.final_rejected;
    }
    stats.mis_visited += acyclic.mis_visited;
    stats.candidates_rejected += acyclic.rejected;
  }

  for (Restriction& rho : isolated_via_digraph(formula, limits)) {
    if (is_prime_implicant(formula, rho)) found.push_back(std::move(rho));
    else ++stats.final_rejected;
  }

  canonicalize(found);
  for (const Restriction& rho : found) (rho.is_full() ? stats.full : stats.partial) += 1;
  result.prime_implicants = std::move(found);
  return result;
}

std::vector<Restriction> enumerate_prime_implicants(const CnfFormula& formula, const OracleLimits& limits) {
  return enumerate_prime_implicants_detailed(formula, limits).prime_implicants;
}

}  // namespace pilab
