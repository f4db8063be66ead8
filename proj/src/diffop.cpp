#include "matband/diffop.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace matband {

MatPoly apply_right(const RightDiffOp& op, const MatPoly& f) {
    return f.deriv().deriv().mul(op.f2) + f.deriv().mul(op.f1) + f.mul(op.f0);
}

RightDiffOp op_d(const Params& pr) {
    RightDiffOp op;
    op.f2 = MatPoly::scalar({1.0, 0.0, -1.0});
    op.f1 = MatPoly({Mat2::antidiag(-2.0, -2.0), Mat2::diag(-(pr.n + 2.0), -(pr.n + 2.0))});
    op.f0 = MatPoly::constant(Mat2::diag(-pr.p, -(pr.n - pr.p)));
    return op;
}

Mat2 eigenvalue_lambda(int w, const Params& pr) {
    double base = -w * (w + pr.n + 1.0);
    return Mat2::diag(base - pr.p, base - (pr.n - pr.p));
}

Mat2 dtilde_e1(const Params& pr, int big_n) {
    double s = -static_cast<double>(big_n) * (big_n + pr.n + 2.0);
    return Mat2::diag(s - pr.p, s - (pr.n - pr.p));
}

Mat2 dtilde_e0(const Params& pr) {
    return Mat2::antidiag(pr.n - pr.p + 1.0, pr.p + 1.0);
}

RightDiffOp op_dtilde(const Params& pr, int big_n, double alpha) {
    double n = pr.n, p = pr.p;
    double nn = static_cast<double>(big_n) * (big_n + n + 2.0);
    RightDiffOp op;
    op.f2 = MatPoly::scalar({alpha, -1.0, -alpha, 1.0});  // (x^2 - 1)(x - alpha)
    op.f1 = MatPoly({Mat2::diag(-1.0, -1.0) + Mat2::antidiag(-2.0 * alpha, -2.0 * alpha),
                     Mat2::diag(-alpha * (n + 2.0), -alpha * (n + 2.0)) +
                         Mat2::antidiag(2.0, 2.0),
                     Mat2::diag(n + 3.0, n + 3.0)});
    Mat2 c0 = dtilde_e0(pr);
    c0.a11 += alpha * (n - 2.0 * p);
    op.f0 = MatPoly({c0, Mat2::diag(-nn, -nn)});
    return op;
}

double dtilde_decomposition_residual(const Params& pr, int big_n, double alpha) {
    RightDiffOp dt = op_dtilde(pr, big_n, alpha);
    RightDiffOp d = op_d(pr);

    std::vector<double> neg_x_minus_alpha{alpha, -1.0};
    MatPoly f2 = d.f2.mul_scalar_poly(neg_x_minus_alpha);
    MatPoly f1 = d.f1.mul_scalar_poly(neg_x_minus_alpha) + MatPoly::scalar({-1.0, 0.0, 1.0});
    MatPoly f0 = d.f0.mul_scalar_poly(neg_x_minus_alpha) +
                 MatPoly({Mat2::identity() * (alpha * (pr.n - pr.p)) + dtilde_e0(pr),
                          dtilde_e1(pr, big_n)});

    double r = 0.0;
    for (int j = 0; j <= 3; ++j) {
        r = std::max(r, (dt.f2.coeff(j) - f2.coeff(j)).frobenius());
        r = std::max(r, (dt.f1.coeff(j) - f1.coeff(j)).frobenius());
        r = std::max(r, (dt.f0.coeff(j) - f0.coeff(j)).frobenius());
    }
    return r;
}

SymmetryReport symmetry_residuals(const RightDiffOp& op, const Weight& wt, double a,
                                  double b, int grid) {
    MatPoly v = wt.matrix_part();
    MatPoly p2 = op.f2.mul(v);
    MatPoly p1 = op.f1.mul(v);
    MatPoly p0 = op.f0.mul(v);
    MatPoly vf1t = v.mul(op.f1.transpose());
    MatPoly eq1_poly = p2 - v.mul(op.f2.transpose());
    MatPoly p2d = p2.deriv();
    MatPoly p2dd = p2d.deriv();
    MatPoly p1d = p1.deriv();
    MatPoly eq3_core = p2dd - p1d + p0 - v.mul(op.f0.transpose());
    MatPoly eq2_core = p2d.scale(2.0) - p1 - vf1t;
    MatPoly f1_comm = p1 - vf1t;

    SymmetryReport rep{{0.0, 0.0, 0.0}, 0.0, 0.0, true};
    for (int i = 0; i < grid; ++i) {
        double x = a + (b - a) * (i + 0.5) / grid;
        double s = wt.scalar_factor(x);
        double s1 = wt.scalar_factor_d1(x);
        double s2 = wt.scalar_factor_d2(x);
        // W = s V, so each equation splits into s, s', s'' layers:
        //   eq2 = s (2(F2 V)' - F1 V - V F1^T) + s' (2 F2 V)
        //   eq3 = s ((F2 V)'' - (F1 V)' + F0 V - V F0^T)
        //         + s' (2 (F2 V)' - F1 V) + s'' (F2 V)
        double e1 = (eq1_poly.eval(x) * s).frobenius();
        double e2 = (eq2_core.eval(x) * s + p2.eval(x) * (2.0 * s1)).frobenius();
        double e3 = (eq3_core.eval(x) * s + (p2d.eval(x) * 2.0 - p1.eval(x)) * s1 +
                     p2.eval(x) * s2)
                        .frobenius();
        rep.eq[0] = std::max(rep.eq[0], e1);
        rep.eq[1] = std::max(rep.eq[1], e2);
        rep.eq[2] = std::max(rep.eq[2], e3);
    }

    auto boundary_value = [&](double x) {
        double s = wt.scalar_factor(x);
        double g1 = (p2.eval(x) * s).frobenius();
        double g2 = (f1_comm.eval(x) * s).frobenius();
        return std::max(g1, g2);
    };
    for (int side = 0; side < 2; ++side) {
        double prev = 0.0;
        double last = 0.0;
        for (int k = 5; k <= 40; ++k) {
            double x = side == 0 ? a + std::ldexp(b - a, -k) : b - std::ldexp(b - a, -k);
            last = boundary_value(x);
            if (k > 5 && last > prev * (1.0 + 1e-6)) rep.decay_monotone = false;
            prev = last;
        }
        (side == 0 ? rep.boundary_a : rep.boundary_b) = last;
    }
    return rep;
}

DiffParams main_diff_choice(int w, const Params& pr) {
    DiffParams dp;
    dp.a21 = -1.0 - (pr.n + 2.0 * w) / ((pr.p + w) * (pr.n - pr.p + w));
    return dp;
}

DiffMatrices diff_formula_matrices(int w, const Params& pr, const DiffParams& dp) {
    double n = pr.n, p = pr.p, q = n - p;
    if (dp.c12 != 0.0 && n == 2.0 * p)
        throw std::invalid_argument(
            "diff_formula_matrices: the c12 terms carry 1/(n - 2p); n = 2p needs c12 = 0");

    double pw = p + w, qw = q + w;
    DiffMatrices m;

    m.f = Mat2::diag(p, q) * (-(n + 2.0 * w) / (pw * qw) - dp.a21) +
          Mat2::diag(dp.a11, dp.a11);
    if (dp.c12 != 0.0)
        m.f += Mat2::antidiag(p, q) * (dp.c12 * pw * qw / (n - 2.0 * p));

    m.g = Mat2::antidiag(p * qw / (pw * pw), q * pw / (qw * qw)) +
          Mat2::antidiag(p * qw / pw, q * pw / qw) * dp.a21 +
          Mat2{dp.c12 * (w * (w + n) - p * q), 0.0, 0.0, 0.0} +
          Mat2::diag(dp.a22, dp.a22);

    m.gt = Mat2::antidiag(1.0, 1.0) -
           Mat2::antidiag(q, p) * ((n + 2.0 * w) / (pw * qw) + dp.a21) +
           Mat2::diag(dp.c12 * p * q, -dp.c12 * w * (w + n)) -
           Mat2::diag(dp.a22, dp.a22);

    double hf = w * (w + n) / (pw * (n - 1.0 + 2.0 * w) * qw);
    m.h = Mat2::diag(hf * (pw - 1.0) * (qw + 1.0), hf * (pw + 1.0) * (qw - 1.0));
    if (dp.c12 != 0.0) {
        double jf = dp.c12 * w * (n + w) / (n - 1.0 + 2.0 * w);
        m.h += Mat2::antidiag(jf * p * (qw - 1.0) / pw, -jf * (pw - 1.0) * q / qw);
    }
    return m;
}

namespace {

// (1-x^2) P' + w x P - x (F P - P F) - G P - P Gt - H Pm, normalized by the
// coefficient scale of P.
double first_order_residual(const MatPoly& poly, const MatPoly& pm, int w, const Mat2& f_left,
                            const Mat2& f_right, const Mat2& g, const Mat2& gt,
                            const Mat2& h) {
    MatPoly lhs = poly.deriv().mul_scalar_poly({1.0, 0.0, -1.0});
    MatPoly rhs = poly.mul_scalar_poly({0.0, -static_cast<double>(w)}) +
                  (poly.mul_left_const(f_left) - poly.mul_right_const(f_right))
                      .mul_scalar_poly({0.0, 1.0}) +
                  poly.mul_left_const(g) + poly.mul_right_const(gt) + pm.mul_left_const(h);
    return (lhs - rhs).coeff_scale() / (1.0 + poly.coeff_scale());
}

}  // namespace

double diff_formula_residual(const Family& fam, int w, const DiffParams& dp) {
    DiffMatrices m = diff_formula_matrices(w, fam.params(), dp);
    const MatPoly& rw = fam.monic(w);
    MatPoly rm = w > 0 ? fam.monic(w - 1) : MatPoly();
    return first_order_residual(rw, rm, w, m.f, m.f, m.g, m.gt, m.h);
}

DiffMatrices orthonormal_diff_matrices(const Family& fam, int w, const DiffParams& dp) {
    DiffMatrices m = diff_formula_matrices(w, fam.params(), dp);
    Mat2 s = fam.norm_sqrt(w);
    Mat2 si = fam.norm_sqrt_inv(w);
    DiffMatrices on;
    on.f = si * m.f * s;
    on.g = si * m.g * s;
    on.gt = m.gt;
    on.h = w > 0 ? Mat2(si * m.h * fam.norm_sqrt(w - 1)) : Mat2::zero();
    return on;
}

double orthonormal_diff_residual(const Family& fam, int w, const DiffParams& dp) {
    DiffMatrices bar = orthonormal_diff_matrices(fam, w, dp);
    // The right-side multiplier stays the unconjugated F_w.
    Mat2 f_right = diff_formula_matrices(w, fam.params(), dp).f;
    const MatPoly& qw = fam.orthonormal(w);
    MatPoly qm = w > 0 ? fam.orthonormal(w - 1) : MatPoly();
    return first_order_residual(qw, qm, w, bar.f, f_right, bar.g, bar.gt, bar.h);
}

double corollary1_residual(const Family& fam, int w) {
    double n = fam.params().n, p = fam.params().p, q = n - p;
    double pw = p + w, qw = q + w;
    Mat2 m = Mat2::diag(p, q);
    Mat2 nn = Mat2::antidiag(-p * qw / pw, -q * pw / qw);
    Mat2 nt = Mat2::antidiag(q, p);
    const MatPoly& rw = fam.monic(w);
    MatPoly res = (rw.mul_left_const(m) - rw.mul_right_const(m)).mul_scalar_poly({0.0, 1.0}) +
                  rw.mul_left_const(nn) + rw.mul_right_const(nt);
    return res.coeff_scale() / (1.0 + rw.coeff_scale());
}

double corollary2_residual(const Family& fam, int w) {
    double n = fam.params().n, p = fam.params().p, q = n - p;
    if (n == 2.0 * p)
        throw std::invalid_argument("corollary2_residual: undefined at n = 2p");
    double pw = p + w, qw = q + w;
    Mat2 m = Mat2::antidiag(p, q) * (pw * qw / (n - 2.0 * p));
    Mat2 nn{w * (w + n) - p * q, 0.0, 0.0, 0.0};
    Mat2 nt = Mat2::diag(p * q, -w * (w + n));
    double jf = w * (n + w) / (n - 1.0 + 2.0 * w);
    Mat2 j = Mat2::antidiag(jf * p * (qw - 1.0) / pw, -jf * (pw - 1.0) * q / qw);
    const MatPoly& rw = fam.monic(w);
    MatPoly rm = w > 0 ? fam.monic(w - 1) : MatPoly();
    MatPoly res = (rw.mul_left_const(m) - rw.mul_right_const(m)).mul_scalar_poly({0.0, 1.0}) +
                  rw.mul_left_const(nn) + rw.mul_right_const(nt) + rm.mul_left_const(j);
    return res.coeff_scale() / (1.0 + rw.coeff_scale());
}

}  // namespace matband
