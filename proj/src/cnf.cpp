#include "pilab/cnf.hpp"

#include <algorithm>
#include <cstdlib>

#include "pilab/errors.hpp"

namespace pilab {

Literal::Literal(Var var, bool negated) : var_(var), negated_(negated) {
  if (var == 0) throw PreconditionError("literal variable index must be >= 1");
}

Literal Literal::from_dimacs(long long value) {
  if (value == 0) throw PreconditionError("0 is not a literal");
  return Literal(static_cast<Var>(std::llabs(value)), value < 0);
}

Literal Literal::from_index(std::size_t index) {
  return Literal(static_cast<Var>(index / 2 + 1), (index & 1U) != 0);
}

std::string Literal::to_string() const {
  return (negated_ ? "~x" : "x") + std::to_string(var_);
}

Clause::Clause(std::vector<Literal> literals) : literals_(std::move(literals)) {
  std::sort(literals_.begin(), literals_.end());
  literals_.erase(std::unique(literals_.begin(), literals_.end()), literals_.end());
  // Sorted by (var, negated), so u and ~u end up adjacent.
  for (std::size_t i = 1; i < literals_.size(); ++i) {
    if (literals_[i].var() == literals_[i - 1].var()) {
      tautological_ = true;
      break;
    }
  }
}

CnfFormula::CnfFormula(Var num_vars, std::vector<Clause> clauses,
                       std::optional<std::size_t> max_width)
    : num_vars_(num_vars), clauses_(std::move(clauses)) {
  if (num_vars_ == 0) throw PreconditionError("formula needs at least one variable");
  for (const Clause& clause : clauses_) {
    for (Literal lit : clause.literals()) {
      if (lit.var() > num_vars_) {
        throw PreconditionError("literal " + lit.to_string() + " exceeds num_vars " +
                                std::to_string(num_vars_));
      }
    }
    width_ = std::max(width_, clause.size());
  }
  if (max_width && width_ > *max_width) {
    throw PreconditionError("clause width " + std::to_string(width_) + " exceeds declared k = " +
                            std::to_string(*max_width));
  }
}

std::vector<Var> CnfFormula::occurring_variables() const {
  std::vector<bool> seen(num_vars_ + 1, false);
  for (const Clause& clause : clauses_)
    for (Literal lit : clause.literals()) seen[lit.var()] = true;
  std::vector<Var> out;
  for (Var v = 1; v <= num_vars_; ++v)
    if (seen[v]) out.push_back(v);
  return out;
}

namespace {

char value_char(Value v) {
  switch (v) {
    case Value::Zero: return '0';
    case Value::One: return '1';
    case Value::Free: return '*';
  }
  return '?';
}

// Position of a value in canonical string order ('*' < '0' < '1').
int value_rank(Value v) {
  switch (v) {
    case Value::Free: return 0;
    case Value::Zero: return 1;
    case Value::One: return 2;
  }
  return 3;
}

}  // namespace

Restriction::Restriction(Var num_vars) : values_(num_vars, Value::Free) {}

Restriction Restriction::from_string(std::string_view text) {
  Restriction rho(static_cast<Var>(text.size()));
  for (std::size_t i = 0; i < text.size(); ++i) {
    switch (text[i]) {
      case '0': rho.values_[i] = Value::Zero; break;
      case '1': rho.values_[i] = Value::One; break;
      case '*': rho.values_[i] = Value::Free; break;
      default:
        throw PreconditionError("restriction strings use only 0, 1 and *; got '" +
                                std::string(1, text[i]) + "'");
    }
  }
  return rho;
}

Restriction Restriction::from_bits(std::span<const bool> bits) {
  Restriction rho(static_cast<Var>(bits.size()));
  for (std::size_t i = 0; i < bits.size(); ++i) rho.values_[i] = bits[i] ? Value::One : Value::Zero;
  return rho;
}

std::size_t Restriction::fixed_count() const noexcept {
  return static_cast<std::size_t>(
      std::count_if(values_.begin(), values_.end(), [](Value v) { return v != Value::Free; }));
}

Value Restriction::value_of(Literal literal) const {
  Value v = (*this)[literal.var()];
  if (v == Value::Free || !literal.negated()) return v;
  return v == Value::One ? Value::Zero : Value::One;
}

bool Restriction::extends(const Restriction& other) const {
  if (other.values_.size() != values_.size()) return false;
  for (std::size_t i = 0; i < values_.size(); ++i) {
    if (other.values_[i] != Value::Free && other.values_[i] != values_[i]) return false;
  }
  return true;
}

std::string Restriction::to_string() const {
  std::string out(values_.size(), '*');
  for (std::size_t i = 0; i < values_.size(); ++i) out[i] = value_char(values_[i]);
  return out;
}

std::strong_ordering operator<=>(const Restriction& a, const Restriction& b) {
  const std::size_t common = std::min(a.values_.size(), b.values_.size());
  for (std::size_t i = 0; i < common; ++i) {
    if (auto c = value_rank(a.values_[i]) <=> value_rank(b.values_[i]); c != 0) return c;
  }
  return a.values_.size() <=> b.values_.size();
}

namespace {

void require_domain(const CnfFormula& formula, const Restriction& rho) {
  if (rho.num_vars() != formula.num_vars()) {
    throw PreconditionError("restriction over " + std::to_string(rho.num_vars()) +
                            " variables applied to a formula over " +
                            std::to_string(formula.num_vars()));
  }
}

// Tautological clauses hold under every completion, whatever is fixed.
bool clause_satisfied(const Clause& clause, const Restriction& rho) {
  if (clause.tautological()) return true;
  return std::any_of(clause.literals().begin(), clause.literals().end(),
                     [&](Literal lit) { return rho.value_of(lit) == Value::One; });
}

}  // namespace

bool evaluate(const CnfFormula& formula, const Restriction& assignment) {
  require_domain(formula, assignment);
  if (!assignment.is_full()) throw PreconditionError("evaluate needs a total assignment");
  return is_implicant(formula, assignment);
}

CnfFormula restrict(const CnfFormula& formula, const Restriction& rho) {
  require_domain(formula, rho);
  std::vector<Clause> out;
  for (const Clause& clause : formula.clauses()) {
    if (clause_satisfied(clause, rho)) continue;
    std::vector<Literal> rest;
    for (Literal lit : clause.literals())
      if (rho.value_of(lit) == Value::Free) rest.push_back(lit);
    out.emplace_back(std::move(rest));
  }
  return CnfFormula(formula.num_vars(), std::move(out));
}

bool is_implicant(const CnfFormula& formula, const Restriction& rho) {
  require_domain(formula, rho);
  return std::all_of(formula.clauses().begin(), formula.clauses().end(),
                     [&](const Clause& clause) { return clause_satisfied(clause, rho); });
}

bool is_prime_implicant(const CnfFormula& formula, const Restriction& rho) {
  if (!is_implicant(formula, rho)) return false;
  Restriction probe = rho;
  for (Var v = 1; v <= rho.num_vars(); ++v) {
    if (rho.is_free(v)) continue;
    probe.set(v, Value::Free);
    if (is_implicant(formula, probe)) return false;
    probe.set(v, rho[v]);
  }
  return true;
}

std::optional<Preprocessed> preprocess(const CnfFormula& formula) {
  Restriction forced(formula.num_vars());
  std::vector<Clause> current;
  for (const Clause& clause : formula.clauses())
    if (!clause.tautological()) current.push_back(clause);

  for (;;) {
    bool propagated = false;
    for (const Clause& clause : current) {
      if (clause.empty()) return std::nullopt;
      if (clause.is_unit()) {
        Literal lit = clause.literals().front();
        forced.set(lit.var(), lit.negated() ? Value::Zero : Value::One);
        propagated = true;
      }
    }
    if (!propagated) break;
    // Two contradictory units on the same variable leave one of them as the
    // empty clause in the next round.
    std::vector<Clause> next;
    for (const Clause& clause : current) {
      if (clause_satisfied(clause, forced)) continue;
      std::vector<Literal> rest;
      for (Literal lit : clause.literals())
        if (forced.value_of(lit) == Value::Free) rest.push_back(lit);
      next.emplace_back(std::move(rest));
    }
    current = std::move(next);
  }
  return Preprocessed{std::move(forced), CnfFormula(formula.num_vars(), std::move(current))};
}

void canonicalize(std::vector<Restriction>& restrictions) {
  std::sort(restrictions.begin(), restrictions.end());
  restrictions.erase(std::unique(restrictions.begin(), restrictions.end()), restrictions.end());
}

}  // namespace pilab
