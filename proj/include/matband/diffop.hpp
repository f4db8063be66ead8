#pragma once

#include "matband/matpoly.hpp"
#include "matband/weight.hpp"

namespace matband {

/// Second-order differential operator acting from the right,
///   f D = f'' F2 + f' F1 + f F0,
/// with matrix polynomial coefficients multiplying row-valued f on the right.
struct RightDiffOp {
    MatPoly f2, f1, f0;
};

/// Coefficient-level evaluation of f D.
MatPoly apply_right(const RightDiffOp& op, const MatPoly& f);

/// The hypergeometric-type operator D with
///   F2 = (1 - x^2) I,
///   F1 = -((n + 2) x I + 2 antidiag(1, 1)),
///   F0 = -diag(p, n - p).
RightDiffOp op_d(const Params& pr);

/// Eigenvalue in R_w D = Lambda_w R_w: diag(-w(w+n+1) - p, -w(w+n+1) - n + p).
Mat2 eigenvalue_lambda(int w, const Params& pr);

/// The commuting operator for band limit big_n and time cutoff alpha.
RightDiffOp op_dtilde(const Params& pr, int big_n, double alpha);

/// Pieces of the identity
///   Dt = -D (x - alpha) + d/dx (x^2 - 1) + E1 x + alpha (n - p) I + E0,
/// used both by the decomposition check and by the main differentiation
/// identity: E1 = -big_n(big_n + n + 2) I - diag(p, n - p),
/// E0 = [[0, n - p + 1], [p + 1, 0]].
Mat2 dtilde_e1(const Params& pr, int big_n);
Mat2 dtilde_e0(const Params& pr);

/// Max coefficient-block deviation between op_dtilde and the composition on
/// the right-hand side above.
double dtilde_decomposition_residual(const Params& pr, int big_n, double alpha);

/// Symmetry-equation residuals for (op, W) on [a, b]:
///   eq[0]: F2 W - W F2^T
///   eq[1]: 2 (F2 W)' - F1 W - W F1^T
///   eq[2]: (F2 W)'' - (F1 W)' + F0 W - W F0^T
/// evaluated on an interior grid (max Frobenius norm), plus the boundary
/// quantities max(||F2 W||, ||F1 W - W F1^T||) sampled along a geometric
/// approach x = endpoint -+ 2^-k (b - a), k = 5..40. boundary_a/b hold the
/// closest sample; decay_monotone records whether the approach decreased.
struct SymmetryReport {
    double eq[3];
    double boundary_a, boundary_b;
    bool decay_monotone;
};

SymmetryReport symmetry_residuals(const RightDiffOp& op, const Weight& w, double a,
                                  double b, int grid = 64);

/// Free parameters of the first-derivative identity
///   (1-x^2) R_w' = -w x R_w + x (F_w R_w - R_w F_w) + G_w R_w + R_w Gt_w
///                  + H_w R_{w-1}.
struct DiffParams {
    double a21 = 0.0, c12 = 0.0, a11 = 0.0, a22 = 0.0;
};

struct DiffMatrices {
    Mat2 f, g, gt, h;
};

/// Coefficient matrices of the identity above for any parameter choice.
/// Throws std::invalid_argument when n = 2p with c12 != 0 (that term carries
/// a 1/(n - 2p) factor).
DiffMatrices diff_formula_matrices(int w, const Params& pr, const DiffParams& dp);

/// The parameter choice a21 = -1 - (n + 2w)/((p + w)(n - p + w)), rest zero,
/// which makes F_w = diag(p, n - p) and Gt_w = E0.
DiffParams main_diff_choice(int w, const Params& pr);

/// Residual of the identity for R_w (monic family): max coefficient-block
/// norm of LHS - RHS, relative to R_w's own coefficient scale.
double diff_formula_residual(const Family& fam, int w, const DiffParams& dp);

/// Conjugated matrices for the orthonormal version
///   (1-x^2) Q_w' = -w x Q_w + x (Fb_w Q_w - Q_w F_w) + Gb_w Q_w + Q_w Gt_w
///                  + Hb_w Q_{w-1},
/// with Fb = S F S^-1, Gb = S G S^-1, Hb = S_w H S_{w-1}^-1 for S_w = ||R_w||^{-1}.
DiffMatrices orthonormal_diff_matrices(const Family& fam, int w, const DiffParams& dp);

double orthonormal_diff_residual(const Family& fam, int w, const DiffParams& dp);

/// Residuals of the two parameter-difference corollaries:
///   (1) 0 = x (M_w R_w - R_w M_w) + N_w R_w + R_w Nt_w          (a21 family)
///   (2) 0 = x (M_w R_w - R_w M_w) + N_w R_w + R_w Nt_w + J_w R_{w-1}  (c12 family)
double corollary1_residual(const Family& fam, int w);
double corollary2_residual(const Family& fam, int w);

}  // namespace matband
