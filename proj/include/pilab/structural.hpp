#pragma once

// Prime-implicant enumeration for 2-CNFs driven by the implication digraph.
//
// Partial prime implicants of a formula with an acyclic digraph are found by
// walking the maximal independent sets of the variable graph: the free
// variables of each one form such a set, so every set is turned into a
// candidate and kept only if it passes the neighbourhood conditions below.
// Formulas with cycles are first split by the consistent truth assignments
// of their cycle SCCs; what remains after each split is acyclic.

#include <cstddef>
#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "pilab/cnf.hpp"
#include "pilab/implication_graph.hpp"
#include "pilab/oracle.hpp"

namespace pilab {

/// Calls `visit` once per maximal independent set, vertices ascending.
/// Bron-Kerbosch on the complement graph with Tomita pivoting; the order is
/// fixed by the vertex numbering.
void enumerate_mis(const VariableGraph& graph,
                   const std::function<void(std::span<const Var>)>& visit);

std::vector<std::vector<Var>> maximal_independent_sets(const VariableGraph& graph);

/// (1) no edge enters A from outside A, (2) no edge leaves B, (3) no edge
/// joins two free literals. For a unit- and tautology-free 2-CNF these hold
/// exactly when the restriction is an implicant.
bool implicant_conditions_hold(const ImplicationDigraph& digraph, const LiteralPartition& partition);

/// The implicant conditions plus: C is non-empty, A = N-(C), B = N+(C).
/// On an acyclic digraph this characterises partial prime implicants.
bool ppi_conditions_hold(const ImplicationDigraph& digraph, const LiteralPartition& partition);

struct PpiCandidate {
  std::vector<Var> free_vars;
  std::vector<Literal> free_literals;
  Neighborhoods neighborhoods;
  /// Set when A = N-(C) and B = N+(C) split the literals consistently.
  std::optional<Restriction> restriction;
  bool valid = false;
};

PpiCandidate make_ppi_candidate(const ImplicationDigraph& digraph, std::span<const Var> free_vars);

/// The partial prime implicant whose free variables are exactly `free_vars`,
/// or nullopt when no such implicant exists.
std::optional<Restriction> ppi_from_mis_candidate(const ImplicationDigraph& digraph,
                                                  std::span<const Var> free_vars);

struct AcyclicStats {
  std::size_t mis_visited = 0;
  std::size_t rejected = 0;
};

/// All partial prime implicants of a unit- and tautology-free 2-CNF whose
/// digraph is acyclic. Throws PreconditionError if the digraph has a cycle.
std::vector<Restriction> enumerate_ppi_acyclic(const CnfFormula& formula, AcyclicStats* stats = nullptr);

/// Every consistent assignment of the cycle SCCs, each extended by the
/// literals it forces through the digraph. An acyclic digraph yields the
/// single all-free restriction; a contradictory one yields none.
std::vector<Restriction> enumerate_cycle_fixings(const ImplicationDigraph& digraph);

struct StructuralStats {
  bool unsat = false;
  Var forced = 0;
  Var cycle_vars = 0;  // t
  std::size_t cycle_fixings = 0;
  std::size_t mis_visited = 0;
  std::size_t candidates_rejected = 0;
  std::size_t final_rejected = 0;
  std::size_t partial = 0;
  std::size_t full = 0;
};

struct StructuralResult {
  std::vector<Restriction> prime_implicants;
  StructuralStats stats;
};

/// All prime implicants of any 2-CNF. Partial ones come from the cycle
/// fixings and the acyclic residue of each; full ones from a 2^n sweep for
/// isolated solutions (refused above limits.max_sweep_vars). Every result is
/// re-checked with is_prime_implicant against the input formula.
StructuralResult enumerate_prime_implicants_detailed(const CnfFormula& formula,
                                                     const OracleLimits& limits = {});

std::vector<Restriction> enumerate_prime_implicants(const CnfFormula& formula,
                                                    const OracleLimits& limits = {});

/// Isolated satisfying assignments of a 2-CNF, tested through the digraph of
/// its preprocessed form. Same limit as above.
std::vector<Restriction> isolated_via_digraph(const CnfFormula& formula, const OracleLimits& limits = {});

}  // namespace pilab
