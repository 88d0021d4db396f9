#pragma once

#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "qnc/errors.hpp"

namespace qnc {

/// Exact nonnegative integer of unbounded width. Subspace dimensions and
/// q^M code-space sizes reach ~10^48 in the searched ranges, so every count
/// and every equality test stays in exact integer arithmetic.
using BigCount = boost::multiprecision::cpp_int;

inline std::string to_decimal(const BigCount& x) { return x.str(); }

inline double to_double(const BigCount& x) { return x.convert_to<double>(); }

/// Row n of Pascal's triangle, C(n, 0..n), built by the additive recurrence.
/// Computed fresh per call: pure and safe under concurrent use.
std::vector<BigCount> pascal_row(int n);

/// base^exp by repeated multiplication.
BigCount pow_count(const BigCount& base, int exp);

}  // namespace qnc
