#include "pilab/oracle.hpp"

#include <omp.h>

#include <algorithm>
#include <cstdint>
#include <cstdlib>
#include <string>
#include <utility>

#include "pilab/errors.hpp"

namespace pilab {

OracleLimits OracleLimits::from_env() {
  OracleLimits limits;
  if (const char* raw = std::getenv("PI_LAB_NMAX"); raw != nullptr && *raw != '\0') {
    char* end = nullptr;
    long value = std::strtol(raw, &end, 10);
    if (end == raw || *end != '\0' || value < 1)
      throw PreconditionError(std::string("PI_LAB_NMAX must be a positive integer, got '") + raw + "'");
    limits.max_vars = static_cast<Var>(value);
    limits.max_sweep_vars = std::max(limits.max_sweep_vars, limits.max_vars);
  }
  return limits;
}

namespace {

// 3^n must fit the 64-bit sweep index; 2^n likewise.
constexpr Var kRestrictionSweepCap = 40;
constexpr Var kAssignmentSweepCap = 62;

// Variable v lives at bit (n - v), so variable 1 is the most significant bit
// and an assignment's integer value orders like its canonical string.
class PackedCnf {
 public:
  explicit PackedCnf(const CnfFormula& formula) : n_(formula.num_vars()) {
    for (const Clause& clause : formula.clauses()) {
      // Constant-1 clauses never constrain a restriction.
      if (clause.tautological()) continue;
      std::uint64_t pos = 0;
      std::uint64_t neg = 0;
      for (Literal lit : clause.literals()) (lit.negated() ? neg : pos) |= bit(lit.var());
      clauses_.emplace_back(pos, neg);
    }
  }

  Var num_vars() const { return n_; }
  std::uint64_t bit(Var v) const { return std::uint64_t{1} << (n_ - v); }
  std::uint64_t all() const { return n_ == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << n_) - 1; }

  bool implicant(std::uint64_t ones, std::uint64_t zeros) const {
    for (const auto& [pos, neg] : clauses_)
      if (((pos & ones) | (neg & zeros)) == 0) return false;
    return true;
  }

  bool prime(std::uint64_t ones, std::uint64_t zeros) const {
    if (!implicant(ones, zeros)) return false;
    std::uint64_t fixed = ones | zeros;
    while (fixed != 0) {
      const std::uint64_t b = fixed & (~fixed + 1);
      fixed ^= b;
      if (implicant(ones & ~b, zeros & ~b)) return false;
    }
    return true;
  }

  bool satisfied(std::uint64_t assignment) const { return implicant(assignment, ~assignment & all()); }

  bool isolated(std::uint64_t assignment) const {
    if (!satisfied(assignment)) return false;
    for (Var v = 1; v <= n_; ++v)
      if (satisfied(assignment ^ bit(v))) return false;
    return true;
  }

  Restriction unpack(std::uint64_t ones, std::uint64_t zeros) const {
    Restriction rho(n_);
    for (Var v = 1; v <= n_; ++v) {
      if (ones & bit(v)) rho.set(v, Value::One);
      else if (zeros & bit(v)) rho.set(v, Value::Zero);
    }
    return rho;
  }

 private:
  Var n_;
  std::vector<std::pair<std::uint64_t, std::uint64_t>> clauses_;
};

using Packed = std::pair<std::uint64_t, std::uint64_t>;  // ones, zeros

// Base-3 digits over variables 1..n with variable 1 most significant.
// Digit 0 is '*', 1 is '0', 2 is '1', so counter order is canonical order.
class Odometer {
 public:
  Odometer(const PackedCnf& cnf, Var first) : cnf_(cnf), first_(first) {}

  void set_digit(Var v, int digit, std::uint64_t& ones, std::uint64_t& zeros) const {
    const std::uint64_t b = cnf_.bit(v);
    ones &= ~b;
    zeros &= ~b;
    if (digit == 1) zeros |= b;
    else if (digit == 2) ones |= b;
  }

  // Advances variables first_..n; returns false after wrapping around.
  bool next(std::vector<int>& digits, std::uint64_t& ones, std::uint64_t& zeros) const {
    for (Var v = cnf_.num_vars(); v >= first_; --v) {
      int& d = digits[v - 1];
      d = (d + 1) % 3;
      set_digit(v, d, ones, zeros);
      if (d != 0) return true;
      if (v == 1) break;
    }
    return false;
  }

 private:
  const PackedCnf& cnf_;
  Var first_;
};

void check_restriction_sweep(const CnfFormula& formula, const OracleLimits& limits) {
  const Var n = formula.num_vars();
  if (n > limits.max_vars || n > kRestrictionSweepCap) {
    throw SizeLimitError("exhaustive 3^n sweep refused: n = " + std::to_string(n) +
                         " exceeds limit " + std::to_string(std::min(limits.max_vars, kRestrictionSweepCap)) +
                         " (set PI_LAB_NMAX to raise it)");
  }
}

void check_assignment_sweep(const CnfFormula& formula, const OracleLimits& limits) {
  const Var n = formula.num_vars();
  if (n > limits.max_sweep_vars || n > kAssignmentSweepCap) {
    throw SizeLimitError("exhaustive 2^n sweep refused: n = " + std::to_string(n) +
                         " exceeds limit " +
                         std::to_string(std::min(limits.max_sweep_vars, kAssignmentSweepCap)));
  }
}

template <typename Keep>
std::vector<Restriction> sweep_restrictions_serial(const PackedCnf& cnf, Keep keep) {
  const Var n = cnf.num_vars();
  std::vector<int> digits(n, 0);
  std::uint64_t ones = 0;
  std::uint64_t zeros = 0;
  Odometer odo(cnf, 1);
  std::vector<Restriction> out;
  do {
    if (keep(ones, zeros)) out.push_back(cnf.unpack(ones, zeros));
  } while (odo.next(digits, ones, zeros));
  return out;
}

template <typename Keep>
std::vector<Restriction> sweep_restrictions_parallel(const PackedCnf& cnf, Keep keep) {
  const Var n = cnf.num_vars();
  const Var prefix_len = std::min<Var>(n, 7);
  std::uint64_t prefixes = 1;
  for (Var i = 0; i < prefix_len; ++i) prefixes *= 3;

  std::vector<std::vector<Packed>> found(prefixes);
  const Odometer odo(cnf, prefix_len + 1);

#pragma omp parallel for schedule(dynamic, 1)
  for (std::int64_t p = 0; p < static_cast<std::int64_t>(prefixes); ++p) {
    std::vector<int> digits(n, 0);
    std::uint64_t ones = 0;
    std::uint64_t zeros = 0;
    std::uint64_t rest = static_cast<std::uint64_t>(p);
    for (Var v = prefix_len; v >= 1; --v) {
      digits[v - 1] = static_cast<int>(rest % 3);
      rest /= 3;
      odo.set_digit(v, digits[v - 1], ones, zeros);
    }
    auto& bucket = found[static_cast<std::size_t>(p)];
    if (prefix_len == n) {
      if (keep(ones, zeros)) bucket.emplace_back(ones, zeros);
      continue;
    }
    do {
      if (keep(ones, zeros)) bucket.emplace_back(ones, zeros);
    } while (odo.next(digits, ones, zeros));
  }

  std::vector<Restriction> out;
  for (const auto& bucket : found)
    for (const auto& [ones, zeros] : bucket) out.push_back(cnf.unpack(ones, zeros));
  return out;
}

}  // namespace

std::vector<Restriction> oracle_prime_implicants_serial(const CnfFormula& formula,
                                                        const OracleLimits& limits) {
  check_restriction_sweep(formula, limits);
  const PackedCnf cnf(formula);
  return sweep_restrictions_serial(cnf, [&](auto ones, auto zeros) { return cnf.prime(ones, zeros); });
}

std::vector<Restriction> oracle_prime_implicants(const CnfFormula& formula, const OracleLimits& limits) {
  check_restriction_sweep(formula, limits);
  const PackedCnf cnf(formula);
  return sweep_restrictions_parallel(cnf, [&](auto ones, auto zeros) { return cnf.prime(ones, zeros); });
}

std::vector<Restriction> oracle_implicants(const CnfFormula& formula, const OracleLimits& limits) {
  check_restriction_sweep(formula, limits);
  const PackedCnf cnf(formula);
  return sweep_restrictions_parallel(cnf,
                                     [&](auto ones, auto zeros) { return cnf.implicant(ones, zeros); });
}

std::vector<Restriction> oracle_isolated_serial(const CnfFormula& formula, const OracleLimits& limits) {
  check_assignment_sweep(formula, limits);
  const PackedCnf cnf(formula);
  std::vector<Restriction> out;
  const std::uint64_t total = std::uint64_t{1} << formula.num_vars();
  for (std::uint64_t a = 0; a < total; ++a)
    if (cnf.isolated(a)) out.push_back(cnf.unpack(a, ~a & cnf.all()));
  return out;
}

std::vector<Restriction> oracle_isolated(const CnfFormula& formula, const OracleLimits& limits) {
  check_assignment_sweep(formula, limits);
  const PackedCnf cnf(formula);
  const Var n = formula.num_vars();
  const Var block_bits = std::min<Var>(n, 10);
  const std::uint64_t blocks = std::uint64_t{1} << (n - block_bits);
  const std::uint64_t block_size = std::uint64_t{1} << block_bits;

  std::vector<std::vector<std::uint64_t>> found(blocks);
#pragma omp parallel for schedule(dynamic, 1)
  for (std::int64_t b = 0; b < static_cast<std::int64_t>(blocks); ++b) {
    const std::uint64_t base = static_cast<std::uint64_t>(b) * block_size;
    for (std::uint64_t a = base; a < base + block_size; ++a)
      if (cnf.isolated(a)) found[static_cast<std::size_t>(b)].push_back(a);
  }

  std::vector<Restriction> out;
  for (const auto& bucket : found)
    for (std::uint64_t a : bucket) out.push_back(cnf.unpack(a, ~a & cnf.all()));
  return out;
}

}  // namespace pilab
