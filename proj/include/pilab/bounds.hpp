#pragma once

// Exact comparisons against the irrational-looking bounds 3^(n/3), 2^(n/2),
// their sum, and 2^((1-1/k)n). Everything reduces to integer powers.

#include <boost/multiprecision/cpp_int.hpp>
#include <string>

namespace pilab {

using BigInt = boost::multiprecision::cpp_int;

BigInt big_pow(unsigned base, unsigned exponent);

/// Smallest y >= 0 with y^degree >= x.
BigInt ceil_root(const BigInt& x, unsigned degree);

/// count <= 3^(n/3), via count^3 <= 3^n.
bool within_third_power_bound(const BigInt& count, unsigned n);

/// count <= 2^(n/2), via count^2 <= 2^n.
bool within_half_power_bound(const BigInt& count, unsigned n);

/// count <= 3^(n/3) + 2^(n/2), decided exactly.
bool within_total_bound(const BigInt& count, unsigned n);

/// count <= 2^((1 - 1/k) n), via count^k <= 2^((k-1) n). k = 0 is treated as k = 1.
bool within_isolated_bound(const BigInt& count, unsigned n, unsigned k);

// Rounded-up values for reports.
BigInt third_power_bound_ceil(unsigned n);
BigInt half_power_bound_ceil(unsigned n);
BigInt total_bound_ceil(unsigned n);
BigInt isolated_bound_ceil(unsigned n, unsigned k);

inline std::string to_string(const BigInt& x) { return x.str(); }

}  // namespace pilab
