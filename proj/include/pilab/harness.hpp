#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "pilab/bounds.hpp"
#include "pilab/cnf.hpp"
#include "pilab/oracle.hpp"

namespace pilab {

enum class Method { Structural, Oracle };

/// Structural for width <= 2, oracle otherwise.
Method default_method(const CnfFormula& formula);
std::string to_string(Method method);

std::vector<Restriction> enumerate_with(const CnfFormula& formula, Method method,
                                        const OracleLimits& limits = {});

/// One canonical restriction per line.
std::string format_text(const std::vector<Restriction>& restrictions);
/// JSON array of {"n": n, "fixed": {"<var>": 0|1}, "free": [vars]}.
std::string format_json(const std::vector<Restriction>& restrictions);

std::string restriction_to_json(const Restriction& rho);
Restriction restriction_from_json(const std::string& text);

/// Measured counts against the bounds for a single formula.
struct BoundReport {
  Var n = 0;
  std::size_t k = 0;
  Var t = 0;
  std::string method;
  std::size_t count_total = 0;
  std::size_t count_partial = 0;
  std::size_t count_full = 0;
  std::size_t count_isolated = 0;
  /// Maximal independent sets of the variable graph; absent for width > 2
  /// and for formulas refuted by unit propagation.
  std::optional<std::size_t> count_mis;
  BigInt bound_partial;
  BigInt bound_full;
  BigInt bound_total;
  BigInt bound_isolated;
  BigInt bound_mis;
  std::vector<std::string> violations;
  std::vector<std::pair<std::string, double>> timings_ms;
};

BoundReport make_bound_report(const CnfFormula& formula, Method method, const OracleLimits& limits = {});

/// Field names are fixed; bounds are decimal strings (rounded up), counts
/// are integers, count_mis may be null.
std::string report_json(const BoundReport& report);
std::string report_text(const BoundReport& report);

struct VerifyResult {
  std::size_t checks = 0;
  std::vector<std::string> violations;
  /// Checks not run because the formula is above an exhaustive-sweep limit.
  std::vector<std::string> skipped;
  /// Counterexamples to the cycle-free projection claim (see
  /// check_acyclic_part). Reported, not counted as violations.
  std::vector<std::string> notes;

  bool ok() const { return violations.empty(); }
};

/// Runs every invariant that applies to the formula: oracle agreement, the
/// counting bounds, the digraph characterisations and the structural
/// properties of the enumerator. Exhaustive checks that would exceed
/// `limits` are listed in `skipped`.
VerifyResult verify_formula(const CnfFormula& formula, const OracleLimits& limits = {});

/// Projection of partial prime implicants onto the non-cycle variables of a
/// residual (preprocessed, cyclic) 2-CNF.
///
/// Two readings are checked for each partial prime implicant rho:
///  - fixed: with the cycle variables substituted by rho's values, the rest
///    of rho is a prime implicant of what remains. Always holds.
///  - projected: rho on the non-cycle variables is a prime implicant of the
///    clauses that mention no cycle literal. Only attempted when every
///    non-cycle variable occurs in those clauses (`applicable`). This can
///    fail: a clause joining a non-cycle literal to a cycle literal may be
///    the only reason a variable is fixed.
struct AcyclicPartCheck {
  bool applicable = false;
  std::size_t checked = 0;
  std::vector<std::string> fixed_failures;
  std::vector<std::string> counterexamples;
};
AcyclicPartCheck check_acyclic_part(const CnfFormula& residual, const OracleLimits& limits = {});

/// Symmetric difference of two canonical restriction lists.
struct SetDiff {
  std::vector<Restriction> only_left;
  std::vector<Restriction> only_right;
  bool empty() const { return only_left.empty() && only_right.empty(); }
};
SetDiff set_difference(const std::vector<Restriction>& left, const std::vector<Restriction>& right);

}  // namespace pilab
