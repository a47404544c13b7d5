#pragma once

// Exhaustive ground truth for small formulas of any width.
//
// Each sweep has a serial reference and an OpenMP version that splits the
// index space by prefix. Both return the same canonically sorted list.

#include <vector>

#include "pilab/cnf.hpp"

namespace pilab {

struct OracleLimits {
  /// Largest n for the 3^n restriction sweep.
  Var max_vars = 12;
  /// Largest n for the 2^n assignment sweep (isolated solutions).
  Var max_sweep_vars = 24;

  /// Defaults, with PI_LAB_NMAX (if set) raising or lowering max_vars.
  /// max_sweep_vars is never set below max_vars.
  static OracleLimits from_env();
};

/// All prime implicants, by checking every one of the 3^n restrictions
/// against the definition. Throws SizeLimitError when n > limits.max_vars.
std::vector<Restriction> oracle_prime_implicants(const CnfFormula& formula,
                                                 const OracleLimits& limits = {});
std::vector<Restriction> oracle_prime_implicants_serial(const CnfFormula& formula,
                                                        const OracleLimits& limits = {});

/// All implicants (not necessarily prime); same sweep and limit.
std::vector<Restriction> oracle_implicants(const CnfFormula& formula,
                                           const OracleLimits& limits = {});

/// Satisfying assignments whose every single-variable flip falsifies the
/// formula. Throws SizeLimitError when n > limits.max_sweep_vars.
std::vector<Restriction> oracle_isolated(const CnfFormula& formula,
                                         const OracleLimits& limits = {});
std::vector<Restriction> oracle_isolated_serial(const CnfFormula& formula,
                                                const OracleLimits& limits = {});

}  // namespace pilab
