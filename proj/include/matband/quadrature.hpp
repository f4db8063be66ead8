#pragma once

#include <vector>

#include "matband/matpoly.hpp"
#include "matband/weight.hpp"

namespace matband {

/// Gauss rule for the weight (x - a)^left_exp * (b - x)^right_exp on (a, b).
struct QuadRule {
    std::vector<double> nodes;    ///< strictly increasing, interior
    std::vector<double> weights;  ///< positive
    double a = -1.0, b = 1.0;
    double left_exp = 0.0, right_exp = 0.0;
};

/// Build an m-point rule by Golub-Welsch: the Jacobi recurrence matrix is
/// diagonalized with the symmetric eigensolver. Exponents must be > -1.
/// Rules are cached per (m, exponents, interval); the cache is mutex-guarded.
const QuadRule& gauss_rule(int m, double left_exp, double right_exp, double a, double b);

/// alpha == 1.0 selects the full interval [-1, 1].
inline constexpr double kFullInterval = 1.0;

/// <f, g> = integral of f W g^T over [-1, alpha].
///
/// Full interval: both endpoint factors of W are absorbed into a Gauss-Jacobi
/// rule, so the integrand is a polynomial and the result is exact for any n.
/// Truncated interval: the (1 + x) factor is absorbed on the left; the
/// (1 - x)^(n/2-1) factor stays in the integrand. For even integer n that is
/// again polynomial-exact; otherwise the rule order is doubled until two
/// successive values agree to 1e-12 relative (at most 6 doublings, then
/// std::runtime_error quoting the last two values).
///
/// rule_order = 0 picks max(deg f + deg g + 10, 40) as the base order, well
/// past the polynomial-exactness threshold.
Mat2 inner_product(const MatPoly& f, const MatPoly& g, const Params& pr,
                   double alpha = kFullInterval, int rule_order = 0);

/// The rule inner_product starts from, exposed so that callers that sample
/// functions (reconstruction, the spectrum export) can reuse its nodes.
const QuadRule& weight_rule(const Params& pr, double alpha, int order);

/// Base order used when rule_order = 0, given total polynomial degree.
int default_rule_order(int total_degree);

}  // namespace matband
