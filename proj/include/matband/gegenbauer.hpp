#pragma once

#include <vector>

namespace matband {

/// Gegenbauer (ultraspherical) polynomial C_w^lambda at x, by the standard
/// three-term recursion. Negative degrees evaluate to zero, matching the
/// convention used by the matrix polynomial entry formulas. Requires
/// lambda > 0; |x| may exceed 1 (used by asymptotic checks).
double gegenbauer(int w, double lambda, double x);

/// Monomial coefficients of C_w^lambda, ascending degree (size w+1, w >= 0).
std::vector<double> gegenbauer_coefficients(int w, double lambda);

/// Pochhammer symbol (a)_k.
double pochhammer(double a, int k);

}  // namespace matband
