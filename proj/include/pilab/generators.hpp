#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "pilab/cnf.hpp"

namespace pilab {

/// A generated formula with the metadata written into its DIMACS header.
struct Generated {
  CnfFormula formula;
  std::string family;
  std::vector<std::pair<std::string, long long>> params;
  /// Consecutive variable blocks [first, last], when the family has them.
  std::vector<std::pair<Var, Var>> blocks;

  std::vector<std::string> comment_lines() const;
  std::string to_dimacs() const;
};

/// m blocks (x_i | y_i) & (y_i | z_i) & (x_i | z_i) with block i on
/// variables 3i-2, 3i-1, 3i.
Generated gen_scheder_t(long long m);

/// The function on k variables that is 1 exactly when some conjunction of
/// 2k/3 distinct variables, k/3 of them negated, holds. Emitted as one
/// clause per falsifying assignment. Needs 3 <= k <= 15 and 3 | k.
Generated gen_cm_block(long long k);

/// n/k copies of gen_cm_block(k) on consecutive variable blocks.
Generated gen_cm_formula(long long n, long long k);

struct RandomOptions {
  /// Allow both literals of a clause on one variable (unit-equivalent or
  /// tautological clauses).
  bool allow_degenerate = false;
};

/// m clauses of two literals each, drawn from a seeded mt19937_64.
Generated gen_random_2cnf(long long n, long long m, std::uint64_t seed, RandomOptions options = {});

/// Parses "name:key=value,key=value", e.g. "scheder-t:m=3", "cm-block:k=3",
/// "cm:n=6,k=3", "random:n=8,m=12,seed=3". Throws PreconditionError.
Generated generate(std::string_view spec);

}  // namespace pilab
