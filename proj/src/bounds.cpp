#include "pilab/bounds.hpp"

#include "pilab/errors.hpp"

namespace pilab {

BigInt big_pow(unsigned base, unsigned exponent) {
  return boost::multiprecision::pow(BigInt(base), exponent);
}

BigInt ceil_root(const BigInt& x, unsigned degree) {
  if (degree == 0) throw PreconditionError("root degree must be positive");
  if (x <= 1) return x < 0 ? BigInt(0) : x;
  const unsigned bits = static_cast<unsigned>(boost::multiprecision::msb(x)) + 1;
  BigInt lo = 0;
  BigInt hi = BigInt(1) << (bits / degree + 1);  // hi^degree >= x
  while (lo < hi) {
    BigInt mid = (lo + hi) / 2;
    if (boost::multiprecision::pow(mid, degree) >= x) hi = mid;
    else lo = mid + 1;
  }
  return lo;
}

namespace {

BigInt floor_root(const BigInt& x, unsigned degree) {
  BigInt c = ceil_root(x, degree);
  return boost::multiprecision::pow(c, degree) == x ? c : c - 1;
}

}  // namespace

bool within_third_power_bound(const BigInt& count, unsigned n) {
  return count <= 0 || count * count * count <= big_pow(3, n);
}

bool within_half_power_bound(const BigInt& count, unsigned n) {
  return count <= 0 || count * count <= big_pow(2, n);
}

bool within_total_bound(const BigInt& count, unsigned n) {
  // With a = 3^(n/3), b = 2^(n/2): either count <= b, or d = count - b > 0
  // and d^3 <= 3^n. Expanding d^3 using b^2 = 2^n leaves one factor of b:
  //   count^3 + 3 count 2^n - 3^n <= b (3 count^2 + 2^n),
  // and the right side is positive, so squaring is sound once the left is.
  if (within_half_power_bound(count, n)) return true;
  const BigInt two_n = big_pow(2, n);
  const BigInt lhs = count * count * count + 3 * count * two_n - big_pow(3, n);
  if (lhs <= 0) return true;
  const BigInt factor = 3 * count * count + two_n;
  return lhs * lhs <= factor * factor * two_n;
}

bool within_isolated_bound(const BigInt& count, unsigned n, unsigned k) {
  if (k == 0) k = 1;
  return count <= 0 || boost::multiprecision::pow(count, k) <= big_pow(2, (k - 1) * n);
}

BigInt third_power_bound_ceil(unsigned n) { return ceil_root(big_pow(3, n), 3); }

BigInt half_power_bound_ceil(unsigned n) { return ceil_root(big_pow(2, n), 2); }

BigInt total_bound_ceil(unsigned n) {
  BigInt floor_sum = floor_root(big_pow(3, n), 3) + floor_root(big_pow(2, n), 2);
  while (within_total_bound(floor_sum + 1, n)) ++floor_sum;
  // The sum is an integer only when both roots are.
  const bool exact = n % 3 == 0 && n % 2 == 0;
  return exact ? floor_sum : floor_sum + 1;
}

BigInt isolated_bound_ceil(unsigned n, unsigned k) {
  if (k == 0) k = 1;
  return ceil_root(big_pow(2, (k - 1) * n), k);
}

}  // namespace pilab
