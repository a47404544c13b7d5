#pragma once

// CNF data model, restrictions, and the implicant predicates every other
// module is checked against.

#include <compare>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace pilab {

/// 1-based variable index.
using Var = std::uint32_t;

class Literal {
 public:
  /// Throws PreconditionError when var == 0.
  Literal(Var var, bool negated = false);

  /// Signed DIMACS form: 3 is x3, -3 is ~x3.
  static Literal from_dimacs(long long value);

  /// Inverse of index().
  static Literal from_index(std::size_t index);

  Var var() const noexcept { return var_; }
  bool negated() const noexcept { return negated_; }

  Literal operator~() const noexcept { return Literal(var_, !negated_, Unchecked{}); }

  /// Dense vertex index in 0..2n-1: x_v -> 2(v-1), ~x_v -> 2(v-1)+1.
  std::size_t index() const noexcept { return 2 * static_cast<std::size_t>(var_ - 1) + negated_; }

  long long to_dimacs() const noexcept {
    return negated_ ? -static_cast<long long>(var_) : static_cast<long long>(var_);
  }

  /// "x3" or "~x3".
  std::string to_string() const;

  friend bool operator==(const Literal&, const Literal&) = default;
  friend auto operator<=>(const Literal&, const Literal&) = default;

 private:
  struct Unchecked {};
  Literal(Var var, bool negated, Unchecked) noexcept : var_(var), negated_(negated) {}

  Var var_;
  bool negated_;
};

/// A disjunction of literals. Literals are kept sorted with duplicates
/// collapsed. The empty clause is representable (it appears as the
/// constant-0 witness after restriction).
class Clause {
 public:
  Clause() = default;
  explicit Clause(std::vector<Literal> literals);
  Clause(std::initializer_list<Literal> literals) : Clause(std::vector<Literal>(literals)) {}

  std::span<const Literal> literals() const noexcept { return literals_; }
  std::size_t size() const noexcept { return literals_.size(); }
  bool empty() const noexcept { return literals_.empty(); }
  bool is_unit() const noexcept { return literals_.size() == 1; }

  /// Contains both u and ~u.
  bool tautological() const noexcept { return tautological_; }

  friend bool operator==(const Clause& a, const Clause& b) { return a.literals_ == b.literals_; }

 private:
  std::vector<Literal> literals_;
  bool tautological_ = false;
};

class CnfFormula {
 public:
  /// Throws PreconditionError when num_vars == 0, when a literal names a
  /// variable above num_vars, or when a clause is wider than max_width.
  CnfFormula(Var num_vars, std::vector<Clause> clauses,
             std::optional<std::size_t> max_width = std::nullopt);

  Var num_vars() const noexcept { return num_vars_; }
  std::span<const Clause> clauses() const noexcept { return clauses_; }
  std::size_t num_clauses() const noexcept { return clauses_.size(); }

  /// Largest clause size; 0 for a formula without clauses.
  std::size_t width() const noexcept { return width_; }

  /// Variables occurring in at least one clause, ascending.
  std::vector<Var> occurring_variables() const;

  friend bool operator==(const CnfFormula& a, const CnfFormula& b) {
    return a.num_vars_ == b.num_vars_ && a.clauses_ == b.clauses_;
  }

 private:
  Var num_vars_;
  std::vector<Clause> clauses_;
  std::size_t width_ = 0;
};

enum class Value : std::uint8_t { Zero, One, Free };

/// Total map from variables 1..n to {0, 1, *}.
///
/// The canonical text form is a length-n string over {0,1,*} where
/// position i-1 holds variable i. Ordering is lexicographic on that
/// string, so '*' sorts before '0' and '0' before '1'.
class Restriction {
 public:
  /// All variables free.
  explicit Restriction(Var num_vars);

  /// Parses the canonical {0,1,*}^n form.
  static Restriction from_string(std::string_view text);

  /// Full restriction from a list of truth values for variables 1..n.
  static Restriction from_bits(std::span<const bool> bits);

  Var num_vars() const noexcept { return static_cast<Var>(values_.size()); }

  /// 1-based access.
  Value operator[](Var var) const { return values_.at(var - 1); }
  void set(Var var, Value value) { values_.at(var - 1) = value; }

  bool is_free(Var var) const { return (*this)[var] == Value::Free; }
  bool is_fixed(Var var) const { return !is_free(var); }
  std::size_t fixed_count() const noexcept;
  std::size_t free_count() const noexcept { return values_.size() - fixed_count(); }
  bool is_full() const noexcept { return fixed_count() == values_.size(); }
  bool is_partial() const noexcept { return !is_full(); }

  /// Value the restriction gives to a literal: One if it makes the
  /// literal true, Zero if false, Free if the variable is free.
  Value value_of(Literal literal) const;

  /// True when this fixes every variable other fixes, with the same values.
  bool extends(const Restriction& other) const;

  std::string to_string() const;

  friend bool operator==(const Restriction&, const Restriction&) = default;
  friend std::strong_ordering operator<=>(const Restriction& a, const Restriction& b);

 private:
  std::vector<Value> values_;
};

/// Throws PreconditionError unless `assignment` is full and sized to F.
bool evaluate(const CnfFormula& formula, const Restriction& assignment);

/// The subformula left after applying the fixed part of `rho`: satisfied
/// and tautological clauses are dropped and false literals deleted. Variable numbering is
/// kept, so fixed variables simply no longer occur. An empty clause in the
/// result means the restriction falsifies the formula.
CnfFormula restrict(const CnfFormula& formula, const Restriction& rho);

/// Every completion of rho satisfies the formula: each non-tautological
/// clause contains a literal made true by the fixed part.
bool is_implicant(const CnfFormula& formula, const Restriction& rho);

/// An implicant from which no fixed variable can be released.
bool is_prime_implicant(const CnfFormula& formula, const Restriction& rho);

struct Preprocessed {
  /// Literals forced by unit propagation; all other variables free.
  Restriction forced;
  /// Fixpoint formula over the same variable numbering with no unit and no
  /// tautological clauses. Forced variables do not occur in it.
  CnfFormula residual;
};

/// Drops tautologies and propagates unit clauses to a fixpoint.
/// Returns nullopt when propagation derives the empty clause.
std::optional<Preprocessed> preprocess(const CnfFormula& formula);

/// Sorts and removes duplicates by canonical string.
void canonicalize(std::vector<Restriction>& restrictions);

}  // namespace pilab
