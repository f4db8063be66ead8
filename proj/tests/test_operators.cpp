#include "doctest.h"

#include <cmath>

#include "matband/diffop.hpp"
#include "matband/matpoly.hpp"
#include "matband/rng.hpp"
#include "matband/weight.hpp"

using namespace matband;

TEST_SUITE("operators") {

TEST_CASE("right application on a hand-worked example") {
    // f = x^2 I, op: F2 = I, F1 = x I, F0 = diag(1, 2)
    // f op = 2 I + 2x (x I) + x^2 diag(1,2) = 2 I + x^2 (2 I + diag(1,2))
    RightDiffOp op{MatPoly::constant(Mat2::identity()), MatPoly::scalar({0.0, 1.0}),
                   MatPoly::constant(Mat2::diag(1.0, 2.0))};
    MatPoly f = MatPoly::scalar({0.0, 0.0, 1.0});
    MatPoly out = apply_right(op, f);
    CHECK((out.coeff(0) - Mat2::diag(2.0, 2.0)).frobenius() < 1e-15);
    CHECK(out.coeff(1).frobenius() < 1e-15);
    CHECK((out.coeff(2) - Mat2::diag(3.0, 4.0)).frobenius() < 1e-15);
    CHECK(out.degree() == 2);
}

TEST_CASE("second-order operator coefficients") {
    Params pr(4.0, 1.0);
    RightDiffOp d = op_d(pr);
    CHECK((d.f2.eval(0.5) - Mat2::diag(0.75, 0.75)).frobenius() < 1e-15);
    Mat2 f1 = d.f1.eval(0.2);
    CHECK(f1.a11 == doctest::Approx(-(4.0 + 2.0) * 0.2));
    CHECK(f1.a12 == doctest::Approx(-2.0));
    CHECK(f1.a21 == doctest::Approx(-2.0));
    CHECK((d.f0.eval(0.9) - Mat2::diag(-1.0, -3.0)).frobenius() < 1e-15);
}

TEST_CASE("eigenvalue matrices") {
    Params pr(4.0, 1.0);
    Mat2 l3 = eigenvalue_lambda(3, pr);
    CHECK(l3.a11 == doctest::Approx(-3.0 * 8.0 - 1.0));
    CHECK(l3.a22 == doctest::Approx(-3.0 * 8.0 - 3.0));
    CHECK(l3.a12 == 0.0);
}

TEST_CASE("polynomials are eigenfunctions of the second-order operator") {
    for (Params pr : {Params(4.0, 1.0), Params(3.0, 1.2)}) {
        Family fam(pr);
        fam.prepare(10);
        RightDiffOp d = op_d(pr);
        for (int w = 0; w <= 10; ++w) {
            const MatPoly& rw = fam.monic(w);
            MatPoly diff = apply_right(d, rw) - rw.mul_left_const(eigenvalue_lambda(w, pr));
            CHECK(diff.coeff_scale() < 1e-12 * (1.0 + rw.coeff_scale()));
        }
    }
}

TEST_CASE("band operator constant blocks") {
    Params pr(4.0, 1.0);
    Mat2 e0 = dtilde_e0(pr);
    CHECK(e0.a12 == doctest::Approx(4.0));  // n - p + 1
    CHECK(e0.a21 == doctest::Approx(2.0));  // p + 1
    CHECK(e0.a11 == 0.0);

    Mat2 e1 = dtilde_e1(pr, 6);
    double nn = -6.0 * (6.0 + 4.0 + 2.0);
    CHECK(e1.a11 == doctest::Approx(nn - 1.0));
    CHECK(e1.a22 == doctest::Approx(nn - 3.0));
}

TEST_CASE("band operator decomposes through the base operator") {
    for (Params pr : {Params(4.0, 1.0), Params(3.0, 1.2)})
        for (int big_n : {0, 4, 9})
            for (double alpha : {-0.5, 0.3, 1.0})
                CHECK(dtilde_decomposition_residual(pr, big_n, alpha) < 1e-13);
}

TEST_CASE("base operator is symmetric on the full interval") {
    for (Params pr : {Params(4.0, 1.0), Params(3.0, 1.2)}) {
        Weight wt(pr);
        SymmetryReport r = symmetry_residuals(op_d(pr), wt, -1.0, 1.0);
        CHECK(r.eq[0] < 1e-12);
        CHECK(r.eq[1] < 1e-12);
        CHECK(r.eq[2] < 1e-12);
        CHECK(r.boundary_a < 1e-9);
        CHECK(r.boundary_b < 1e-9);
        CHECK(r.decay_monotone);
    }
}

TEST_CASE("band operator is symmetric on the band interval") {
    for (Params pr : {Params(4.0, 1.0), Params(3.0, 1.2)}) {
        Weight wt(pr);
        for (double alpha : {-0.5, 0.0, 0.3, 0.9}) {
            SymmetryReport r = symmetry_residuals(op_dtilde(pr, 8, alpha), wt, -1.0, alpha);
            CHECK(r.eq[0] < 1e-10);
            CHECK(r.eq[1] < 1e-10);
            CHECK(r.eq[2] < 1e-10);
            CHECK(r.boundary_a < 1e-9);
            CHECK(r.boundary_b < 1e-9);
            CHECK(r.decay_monotone);
        }
    }
}

TEST_CASE("band operator is symmetric on the full interval as well") {
    // each summand of its decomposition is individually symmetric there, so
    // no interval mismatch shows up; the equation residuals vanish identically
    Params pr(4.0, 1.0);
    Weight wt(pr);
    SymmetryReport r = symmetry_residuals(op_dtilde(pr, 8, 0.5), wt, -1.0, 1.0);
    CHECK(r.eq[0] < 1e-12);
    CHECK(r.eq[1] < 1e-12);
    CHECK(r.eq[2] < 1e-12);
    CHECK(r.boundary_a < 1e-9);
    CHECK(r.boundary_b < 1e-9);
}

TEST_CASE("dropping the constant block breaks symmetry") {
    Params pr(4.0, 1.0);
    Weight wt(pr);
    RightDiffOp op = op_dtilde(pr, 8, 0.5);
    op.f0 = op.f0 - MatPoly::constant(dtilde_e0(pr));
    SymmetryReport r = symmetry_residuals(op, wt, -1.0, 0.5);
    CHECK(r.eq[2] > 0.1);
}

TEST_CASE("first-derivative identity for random parameter draws") {
    Rng rng(7);
    for (Params pr : {Params(4.0, 1.0), Params(3.0, 1.2)}) {
        Family fam(pr);
        fam.prepare(8);
        for (int w = 1; w <= 8; ++w)
            CHECK(diff_formula_residual(fam, w, main_diff_choice(w, pr)) < 1e-12);
        for (int draw = 0; draw < 12; ++draw) {
            DiffParams dp{rng.uniform(-2.0, 2.0), rng.uniform(-2.0, 2.0),
                          rng.uniform(-2.0, 2.0), rng.uniform(-2.0, 2.0)};
            for (int w = 1; w <= 8; ++w) CHECK(diff_formula_residual(fam, w, dp) < 1e-10);
        }
    }
}

TEST_CASE("derivative identity corollaries") {
    for (Params pr : {Params(4.0, 1.0), Params(3.0, 1.2)}) {
        Family fam(pr);
        fam.prepare(10);
        for (int w = 1; w <= 10; ++w) {
            CHECK(corollary1_residual(fam, w) < 1e-11);
            CHECK(corollary2_residual(fam, w) < 1e-11);
        }
    }
}

TEST_CASE("orthonormal conjugation of the derivative identity") {
    for (Params pr : {Params(4.0, 1.0), Params(3.0, 1.2)}) {
        Family fam(pr);
        fam.prepare(10);
        for (int w = 1; w <= 10; ++w)
            CHECK(orthonormal_diff_residual(fam, w, main_diff_choice(w, pr)) < 1e-12);
    }
}

TEST_CASE("conjugated cross-degree block is a multiple of the recursion matrix") {
    // ||R_w||^-1 H_w ||R_{w-1}|| = (n + 2w + 1) At_w; the competing published
    // prefactor with a duplicated n misses by an O(1) margin
    for (Params pr : {Params(4.0, 1.0), Params(3.0, 1.2)}) {
        Family fam(pr);
        fam.prepare(10);
        for (int w = 1; w <= 10; ++w) {
            DiffMatrices on = orthonormal_diff_matrices(fam, w, main_diff_choice(w, pr));
            Mat2 at = fam.recursion_a_on(w);
            double scale = 1.0 + on.h.frobenius();
            CHECK((on.h - at * (pr.n + 2.0 * w + 1.0)).frobenius() / scale < 1e-13);
            CHECK((on.h - at * (2.0 * pr.n + 2.0 * w + 1.0)).frobenius() / scale > 1e-2);
        }
    }
}

}  // TEST_SUITE
