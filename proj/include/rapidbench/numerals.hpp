#pragma once

#include <string>

namespace rapidbench {

/// Renders a numeral in the canonical spelling: no redundant sign or zeros,
/// integer values without a decimal point, and the 9E9 axis-unused sentinel
/// kept in exponent form.
std::string format_number(double value);

/// Rounds to at most `digits` significant decimal digits.
double round_significant(double value, int digits);

/// Tolerant numeric comparison: exact match, or within rel_tol of the larger
/// magnitude, with a 1e-9 absolute floor near zero. rel_tol = 0 degenerates
/// to exact equality.
bool numbers_close(double a, double b, double rel_tol);

}  // namespace rapidbench
