#include "pilab/implication_graph.hpp"

#include <algorithm>
#include <limits>
#include <sstream>

#include "pilab/errors.hpp"

namespace pilab {

ImplicationDigraph ImplicationDigraph::build(const CnfFormula& formula) {
  ImplicationDigraph d;
  d.num_vars_ = formula.num_vars();
  const std::size_t literals = 2 * static_cast<std::size_t>(formula.num_vars());
  d.successors_.assign(literals, {});
  d.predecessors_.assign(literals, {});

  auto add = [&](Literal from, Literal to) {
    d.successors_[from.index()].push_back(static_cast<std::uint32_t>(to.index()));
  };
  for (const Clause& clause : formula.clauses()) {
    if (clause.size() != 2) {
      throw PreconditionError("implication digraph needs clauses of exactly two literals; got size " +
                              std::to_string(clause.size()) + " (run preprocess first)");
    }
    if (clause.tautological())
      throw PreconditionError("tautological clause would create a self-loop (run preprocess first)");
    Literal u = clause.literals()[0];
    Literal v = clause.literals()[1];
    add(~u, v);
    add(~v, u);
  }
  for (std::size_t u = 0; u < literals; ++u) {
    auto& out = d.successors_[u];
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    d.num_edges_ += out.size();
    for (std::uint32_t v : out) d.predecessors_[v].push_back(static_cast<std::uint32_t>(u));
  }
  d.compute_sccs();
  return d;
}

// Iterative Tarjan.
void ImplicationDigraph::compute_sccs() {
  constexpr std::size_t kUnvisited = std::numeric_limits<std::size_t>::max();
  const std::size_t count = successors_.size();
  std::vector<std::size_t> order(count, kUnvisited);
  std::vector<std::size_t> low(count, 0);
  std::vector<bool> on_stack(count, false);
  std::vector<std::uint32_t> stack;
  std::vector<std::pair<std::uint32_t, std::size_t>> call;  // vertex, next successor slot
  scc_id_.assign(count, kUnvisited);
  scc_members_.clear();
  std::size_t counter = 0;

  for (std::uint32_t root = 0; root < count; ++root) {
    if (order[root] != kUnvisited) continue;
    call.emplace_back(root, 0);
    order[root] = low[root] = counter++;
    stack.push_back(root);
    on_stack[root] = true;

    while (!call.empty()) {
      auto& [v, slot] = call.back();
      if (slot < successors_[v].size()) {
        std::uint32_t w = successors_[v][slot++];
        if (order[w] == kUnvisited) {
          order[w] = low[w] = counter++;
          stack.push_back(w);
          on_stack[w] = true;
          call.emplace_back(w, 0);
        } else if (on_stack[w]) {
          low[v] = std::min(low[v], order[w]);
        }
        continue;
      }
      const std::uint32_t finished = v;
      call.pop_back();
      if (!call.empty()) {
        std::uint32_t parent = call.back().first;
        low[parent] = std::min(low[parent], low[finished]);
      }
      if (low[finished] == order[finished]) {
        std::vector<std::uint32_t> members;
        std::uint32_t w = 0;
        do {
          w = stack.back();
          stack.pop_back();
          on_stack[w] = false;
          scc_id_[w] = scc_members_.size();
          members.push_back(w);
        } while (w != finished);
        std::sort(members.begin(), members.end());
        scc_members_.push_back(std::move(members));
      }
    }
  }

  cycle_literals_.clear();
  for (std::size_t u = 0; u < count; ++u)
    if (scc_members_[scc_id_[u]].size() >= 2) cycle_literals_.push_back(Literal::from_index(u));
}

std::vector<std::pair<Literal, Literal>> ImplicationDigraph::edges() const {
  std::vector<std::pair<Literal, Literal>> out;
  out.reserve(num_edges_);
  for (std::size_t u = 0; u < successors_.size(); ++u)
    for (std::uint32_t v : successors_[u]) out.emplace_back(Literal::from_index(u), Literal::from_index(v));
  return out;
}

bool ImplicationDigraph::has_edge(Literal from, Literal to) const {
  const auto& out = successors_[from.index()];
  return std::binary_search(out.begin(), out.end(), static_cast<std::uint32_t>(to.index()));
}

bool ImplicationDigraph::contradictory() const {
  for (Var v = 1; v <= num_vars_; ++v) {
    Literal x(v);
    if (scc_id(x) == scc_id(~x)) return true;
  }
  return false;
}

namespace {

std::vector<bool> closure(const std::vector<std::vector<std::uint32_t>>& adjacency,
                          std::span<const Literal> seeds) {
  std::vector<bool> seen(adjacency.size(), false);
  std::vector<std::uint32_t> work;
  for (Literal s : seeds) {
    if (!seen[s.index()]) {
      seen[s.index()] = true;
      work.push_back(static_cast<std::uint32_t>(s.index()));
    }
  }
  while (!work.empty()) {
    std::uint32_t u = work.back();
    work.pop_back();
    for (std::uint32_t v : adjacency[u]) {
      if (!seen[v]) {
        seen[v] = true;
        work.push_back(v);
      }
    }
  }
  return seen;
}

}  // namespace

std::vector<bool> ImplicationDigraph::forward_closure(std::span<const Literal> sources) const {
  return closure(successors_, sources);
}

std::vector<bool> ImplicationDigraph::backward_closure(std::span<const Literal> targets) const {
  return closure(predecessors_, targets);
}

Neighborhoods neighborhoods(const ImplicationDigraph& digraph, std::span<const Literal> c) {
  std::vector<bool> in_c(digraph.num_literals(), false);
  for (Literal u : c) in_c[u.index()] = true;
  const auto reaching = digraph.backward_closure(c);
  const auto reached = digraph.forward_closure(c);
  Neighborhoods out;
  for (std::size_t u = 0; u < digraph.num_literals(); ++u) {
    if (in_c[u]) continue;
    if (reaching[u]) out.minus.push_back(Literal::from_index(u));
    if (reached[u]) out.plus.push_back(Literal::from_index(u));
  }
  return out;
}

bool is_satisfying_via_digraph(const ImplicationDigraph& digraph, const Restriction& assignment) {
  if (assignment.num_vars() != digraph.num_vars() || !assignment.is_full())
    throw PreconditionError("digraph satisfiability check needs a total assignment over all variables");
  for (std::size_t u = 0; u < digraph.num_literals(); ++u) {
    Literal lit = Literal::from_index(u);
    if (assignment.value_of(lit) != Value::One) continue;
    for (std::uint32_t v : digraph.successors(lit))
      if (assignment.value_of(Literal::from_index(v)) != Value::One) return false;
  }
  return true;
}

VariableGraph::VariableGraph(Var num_vertices)
    : adjacency_(num_vertices, std::vector<bool>(num_vertices, false)) {}

void VariableGraph::add_edge(Var a, Var b) {
  if (a == b || adjacency_.at(a - 1).at(b - 1)) return;
  adjacency_[a - 1][b - 1] = true;
  adjacency_[b - 1][a - 1] = true;
  ++num_edges_;
}

std::vector<Var> VariableGraph::neighbors(Var v) const {
  std::vector<Var> out;
  const auto& row = adjacency_.at(v - 1);
  for (Var w = 1; w <= row.size(); ++w)
    if (row[w - 1]) out.push_back(w);
  return out;
}

std::vector<std::pair<Var, Var>> VariableGraph::edges() const {
  std::vector<std::pair<Var, Var>> out;
  for (Var a = 1; a <= num_vertices(); ++a)
    for (Var b = a + 1; b <= num_vertices(); ++b)
      if (adjacency_[a - 1][b - 1]) out.emplace_back(a, b);
  return out;
}

VariableGraph build_variable_graph(const ImplicationDigraph& digraph) {
  VariableGraph graph(digraph.num_vars());
  // A path u ~> v in either direction is covered by the search from its source.
  for (std::size_t u = 0; u < digraph.num_literals(); ++u) {
    const Literal source = Literal::from_index(u);
    const auto reached = digraph.forward_closure(std::span<const Literal>(&source, 1));
    for (std::size_t v = 0; v < reached.size(); ++v) {
      if (reached[v]) graph.add_edge(source.var(), Literal::from_index(v).var());
    }
  }
  return graph;
}

LiteralPartition::LiteralPartition(const Restriction& rho)
    : sides_(2 * static_cast<std::size_t>(rho.num_vars()), Side::Free) {
  for (std::size_t u = 0; u < sides_.size(); ++u) {
    switch (rho.value_of(Literal::from_index(u))) {
      case Value::Zero: sides_[u] = Side::False; break;
      case Value::One: sides_[u] = Side::True; break;
      case Value::Free: sides_[u] = Side::Free; break;
    }
  }
}

std::vector<Literal> LiteralPartition::collect(Side side) const {
  std::vector<Literal> out;
  for (std::size_t u = 0; u < sides_.size(); ++u)
    if (sides_[u] == side) out.push_back(Literal::from_index(u));
  return out;
}

std::string implication_dot(const ImplicationDigraph& digraph) {
  std::ostringstream out;
  out << "digraph implication {\n";
  for (std::size_t u = 0; u < digraph.num_literals(); ++u)
    out << "  \"" << Literal::from_index(u).to_string() << "\";\n";
  for (const auto& [from, to] : digraph.edges())
    out << "  \"" << from.to_string() << "\" -> \"" << to.to_string() << "\";\n";
  out << "}\n";
  return out.str();
}

std::string variable_dot(const VariableGraph& graph) {
  std::ostringstream out;
  out << "graph variables {\n";
  for (Var v = 1; v <= graph.num_vertices(); ++v) out << "  \"x" << v << "\";\n";
  for (const auto& [a, b] : graph.edges()) out << "  \"x" << a << "\" -- \"x" << b << "\";\n";
  out << "}\n";
  return out.str();
}

}  // namespace pilab
