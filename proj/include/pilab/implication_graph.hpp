#pragma once

// Implication digraph of a 2-CNF and the structures derived from it.
//
// Vertices are the 2n literals, indexed by Literal::index(). A clause
// (u | v) contributes the edges ~u -> v and ~v -> u.

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "pilab/cnf.hpp"

namespace pilab {

class ImplicationDigraph {
 public:
  /// Requires width <= 2 and no empty, unit or tautological clause (run
  /// preprocess first). Throws PreconditionError otherwise.
  static ImplicationDigraph build(const CnfFormula& formula);

  Var num_vars() const noexcept { return num_vars_; }
  std::size_t num_literals() const noexcept { return successors_.size(); }

  /// Distinct edges.
  std::size_t num_edges() const noexcept { return num_edges_; }
  std::vector<std::pair<Literal, Literal>> edges() const;

  std::span<const std::uint32_t> successors(Literal u) const { return successors_[u.index()]; }
  std::span<const std::uint32_t> predecessors(Literal u) const {
    return predecessors_[u.index()];
  }
  bool has_edge(Literal from, Literal to) const;

  std::size_t num_sccs() const noexcept { return scc_members_.size(); }
  std::size_t scc_id(Literal u) const { return scc_id_[u.index()]; }
  std::span<const std::uint32_t> scc_members(std::size_t id) const { return scc_members_[id]; }

  /// The graph has no self-loops, so a literal lies on a directed cycle
  /// exactly when its SCC has at least two members.
  bool on_cycle(Literal u) const { return scc_members_[scc_id(u)].size() >= 2; }

  /// Literals on some directed cycle, ascending.
  const std::vector<Literal>& cycle_literals() const noexcept { return cycle_literals_; }

  /// Number of distinct variables with a literal on a cycle.
  Var cycle_variable_count() const noexcept { return static_cast<Var>(cycle_literals_.size() / 2); }

  bool acyclic() const noexcept { return cycle_literals_.empty(); }

  /// Some literal shares an SCC with its complement, so no assignment satisfies F.
  bool contradictory() const;

  /// Literals reachable from any of `sources` (sources included), as a
  /// membership mask over literal indices.
  std::vector<bool> forward_closure(std::span<const Literal> sources) const;
  /// Literals with a path into any of `targets` (targets included).
  std::vector<bool> backward_closure(std::span<const Literal> targets) const;

 private:
  ImplicationDigraph() = default;
  void compute_sccs();

  Var num_vars_ = 0;
  std::size_t num_edges_ = 0;
  std::vector<std::vector<std::uint32_t>> successors_;
  std::vector<std::vector<std::uint32_t>> predecessors_;
  std::vector<std::size_t> scc_id_;
  std::vector<std::vector<std::uint32_t>> scc_members_;
  std::vector<Literal> cycle_literals_;
};

inline ImplicationDigraph build_digraph(const CnfFormula& formula) {
  return ImplicationDigraph::build(formula);
}

struct Neighborhoods {
  /// Literals outside C with a directed path into C.
  std::vector<Literal> minus;
  /// Literals outside C reachable from C.
  std::vector<Literal> plus;
};

/// The two sets may overlap; callers decide what overlap means.
Neighborhoods neighborhoods(const ImplicationDigraph& digraph, std::span<const Literal> c);

/// No edge leaves the set of literals `assignment` makes true.
bool is_satisfying_via_digraph(const ImplicationDigraph& digraph, const Restriction& assignment);

/// Undirected simple graph on vertices 1..n.
class VariableGraph {
 public:
  explicit VariableGraph(Var num_vertices);

  /// Self-loops and repeated edges are ignored.
  void add_edge(Var a, Var b);

  Var num_vertices() const noexcept { return static_cast<Var>(adjacency_.size()); }
  std::size_t num_edges() const noexcept { return num_edges_; }
  bool has_edge(Var a, Var b) const { return adjacency_.at(a - 1).at(b - 1); }
  std::vector<Var> neighbors(Var v) const;
  /// Pairs (a, b) with a < b, ascending.
  std::vector<std::pair<Var, Var>> edges() const;

 private:
  std::vector<std::vector<bool>> adjacency_;
  std::size_t num_edges_ = 0;
};

/// Variables x_i, x_j are adjacent when a literal on one reaches a literal
/// on the other. Built from one forward search per literal.
VariableGraph build_variable_graph(const ImplicationDigraph& digraph);

enum class Side : std::uint8_t { False, True, Free };

/// The (A, B, C) split of literals under a restriction: A false, B true, C free.
class LiteralPartition {
 public:
  explicit LiteralPartition(const Restriction& rho);

  Var num_vars() const noexcept { return static_cast<Var>(sides_.size() / 2); }
  Side side(Literal u) const { return sides_.at(u.index()); }

  std::vector<Literal> false_literals() const { return collect(Side::False); }
  std::vector<Literal> true_literals() const { return collect(Side::True); }
  std::vector<Literal> free_literals() const { return collect(Side::Free); }

 private:
  std::vector<Literal> collect(Side side) const;
  std::vector<Side> sides_;
};

/// Graphviz export. Literal vertices are labelled "x3" / "~x3".
std::string implication_dot(const ImplicationDigraph& digraph);
std::string variable_dot(const VariableGraph& graph);

}  // namespace pilab
