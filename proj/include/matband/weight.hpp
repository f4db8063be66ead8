#pragma once

#include "matband/matpoly.hpp"

namespace matband {

/// The 2x2 weight on (-1, 1):
///   W(x) = (1 - x^2)^(n/2 - 1) * V(x),
///   V(x) = [[p x^2 + n - p, -n x], [-n x, (n - p) x^2 + p]].
/// The scalar endpoint factor and the polynomial part are exposed separately
/// because quadrature absorbs the former into the rule and the symmetry
/// checks need derivatives of both.
class Weight {
  public:
    explicit Weight(const Params& pr) : pr_(pr) {}

    const Params& params() const { return pr_; }

    /// Full W(x); throws std::invalid_argument outside [-1, 1].
    Mat2 eval(double x) const;

    /// Polynomial part V(x) as a matrix polynomial.
    MatPoly matrix_part() const;

    /// (1 - x^2)^(n/2 - 1) and its first two derivatives.
    double scalar_factor(double x) const;
    double scalar_factor_d1(double x) const;
    double scalar_factor_d2(double x) const;

    /// det W(x) = p (n - p) (1 - x^2)^n.
    double det(double x) const;

  private:
    Params pr_;
};

}  // namespace matband
