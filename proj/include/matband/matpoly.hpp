#pragma once

#include <vector>

#include "matband/mat2.hpp"

namespace matband {

/// Weight family parameters. n and p are real with 0 < p < n.
struct Params {
    double n;
    double p;

    Params(double n_, double p_);
};

/// Matrix-valued polynomial sum_j coeff[j] x^j with 2x2 coefficients.
/// Canonical form: trailing exactly-zero blocks are trimmed, so degree() is
/// -1 for the zero polynomial.
class MatPoly {
  public:
    MatPoly() = default;
    explicit MatPoly(std::vector<Mat2> coeffs);

    static MatPoly constant(const Mat2& c);
    /// Scalar polynomial times the identity.
    static MatPoly scalar(std::vector<double> coeffs);

    int degree() const { return static_cast<int>(c_.size()) - 1; }
    /// Coefficient of x^j; zero block beyond the stored degree.
    Mat2 coeff(int j) const;

    Mat2 eval(double x) const;
    MatPoly deriv() const;

    MatPoly operator+(const MatPoly& o) const;
    MatPoly operator-(const MatPoly& o) const;
    MatPoly scale(double s) const;
    /// Multiply by a scalar polynomial (ascending coefficients).
    MatPoly mul_scalar_poly(const std::vector<double>& s) const;
    /// f(x) * c and c * f(x) for a constant matrix c.
    MatPoly mul_right_const(const Mat2& c) const;
    MatPoly mul_left_const(const Mat2& c) const;
    /// Polynomial product; coefficient blocks multiply in argument order.
    MatPoly mul(const MatPoly& o) const;

    MatPoly transpose() const;

    /// Largest coefficient Frobenius norm (0 for the zero polynomial).
    double coeff_scale() const;
    /// Degree after ignoring trailing blocks of norm <= eps (absolute).
    int degree_trimmed(double eps) const;

  private:
    void trim();
    std::vector<Mat2> c_;
};

/// Monic orthogonal family member R_w, built from the explicit per-degree
/// coefficient formulas.
MatPoly monic_rw(int w, const Params& pr);

/// Same polynomial assembled from scalar Gegenbauer coefficient arrays; kept
/// as an independent construction route for cross-checking.
MatPoly monic_rw_gegenbauer(int w, const Params& pr);

struct NormMatrix {
    Mat2 quadrature;   ///< <R_w, R_w> integrated numerically
    Mat2 closed_form;  ///< textbook closed-form evaluation, reported for comparison
};

/// Squared-norm matrix of R_w by two independent routes, kept for the anomaly
/// report and the small-degree consistency tests. The Family itself uses a
/// third route (the recursion chain) that stays accurate at high degree.
NormMatrix norm_matrix(int w, const Params& pr);

/// Recursion coefficients in x R_w = A_w R_{w-1} + B_w R_w + R_{w+1}.
Mat2 recursion_a(int w, const Params& pr);
Mat2 recursion_b(int w, const Params& pr);

/// Values of Q_0..Q_wmax at one point, with derivatives up to the requested
/// order (unrequested vectors stay empty).
struct FamilyPointValues {
    std::vector<Mat2> q, dq, ddq;
};

/// Precomputed family of monic and orthonormal polynomials for one parameter
/// set. prepare(wmax) extends the cache; accessors are read-only afterwards,
/// so a prepared Family is safe to share across threads.
///
/// Norms come from the exact chain ||R_w||^2 = A_w ||R_{w-1}||^2 anchored at
/// the Beta-function value of <R_0, R_0>. The quadrature Gram agrees for small
/// w (tests pin that down) but loses a bit per degree to cancellation, so the
/// chain is the working value.
class Family {
  public:
    explicit Family(const Params& pr);

    void prepare(int wmax);
    int prepared() const { return prepared_; }
    const Params& params() const { return pr_; }

    const MatPoly& monic(int w) const;        ///< R_w
    const MatPoly& orthonormal(int w) const;  ///< Q_w = ||R_w||^{-1} R_w
    Mat2 norm_squared(int w) const;           ///< <R_w, R_w> (diagonal)
    Mat2 norm_sqrt(int w) const;              ///< ||R_w||, diagonal positive
    Mat2 norm_sqrt_inv(int w) const;
    Mat2 closed_form_norm(int w) const;

    /// Recursion matrices of the orthonormal family,
    /// x Q_w = At_w Q_{w-1} + Bt_w Q_w + At_{w+1}^T Q_{w+1}.
    Mat2 recursion_a_on(int w) const;  ///< At_w = ||R_w|| ||R_{w-1}||^{-1}
    Mat2 recursion_b_on(int w) const;  ///< Bt_w = ||R_w||^{-1} B_w ||R_w||

    /// Q_w(x) for w = 0..wmax by the forward three-term recurrence, which is
    /// stable where monomial coefficients cancel catastrophically (the Q_w
    /// coefficients grow like 2^w while the values stay O(1), so MatPoly::eval
    /// loses a bit per degree). Every pointwise consumer of the family above
    /// small degrees goes through here. deriv_order 1 or 2 fills dq/ddq via
    /// the differentiated recurrence.
    FamilyPointValues eval_point(double x, int wmax, int deriv_order = 0) const;

  private:
    void check(int w) const;
    Params pr_;
    int prepared_ = -1;
    std::vector<MatPoly> monic_;
    std::vector<Mat2> norm_sq_, norm_sqrt_, norm_sqrt_inv_, closed_;
    std::vector<MatPoly> ortho_;
};

/// Frobenius norm of the Christoffel-Darboux defect
///   Q_{w-1}(y)^T At_w^T Q_w(x) - Q_w(y)^T At_w Q_{w-1}(x)
///   - (x - y) sum_{k<w} Q_k(y)^T Q_k(x)
/// for the prepared family (requires w >= 1, w <= fam.prepared()).
double christoffel_darboux_residual(const Family& fam, int w, double x, double y);

}  // namespace matband
