#include "doctest.h"

#include <cmath>
#include <numbers>

#include "matband/matpoly.hpp"
#include "matband/quadrature.hpp"

using namespace matband;

namespace {

double apply(const QuadRule& r, double (*f)(double)) {
    double s = 0.0;
    for (size_t i = 0; i < r.nodes.size(); ++i) s += r.weights[i] * f(r.nodes[i]);
    return s;
}

}  // namespace

TEST_SUITE("quadrature") {

TEST_CASE("rule shape: interior ascending nodes, positive weights") {
    const QuadRule& r = gauss_rule(12, 1.0, 0.5, -1.0, 0.3);
    REQUIRE(r.nodes.size() == 12);
    for (size_t i = 0; i < 12; ++i) {
        CHECK(r.nodes[i] > -1.0);
        CHECK(r.nodes[i] < 0.3);
        CHECK(r.weights[i] > 0.0);
        if (i) CHECK(r.nodes[i] > r.nodes[i - 1]);
    }
}

TEST_CASE("total mass matches the beta integral") {
    // integral of (1-x^2) over [-1,1] = 4/3
    const QuadRule& r1 = gauss_rule(6, 1.0, 1.0, -1.0, 1.0);
    CHECK(apply(r1, [](double) { return 1.0; }) == doctest::Approx(4.0 / 3.0));

    // integral of sqrt(1-x^2) = pi/2
    const QuadRule& r2 = gauss_rule(8, 0.5, 0.5, -1.0, 1.0);
    CHECK(apply(r2, [](double) { return 1.0; }) == doctest::Approx(std::numbers::pi / 2.0));

    // shifted interval: integral of (x+1)^2 over [-1, 0.5] = 1.125
    const QuadRule& r3 = gauss_rule(5, 2.0, 0.0, -1.0, 0.5);
    CHECK(apply(r3, [](double) { return 1.0; }) == doctest::Approx(1.125));
}

TEST_CASE("m points integrate degree 2m-1 exactly") {
    const QuadRule& low = gauss_rule(5, 1.5, 0.0, -1.0, 1.0);
    const QuadRule& high = gauss_rule(40, 1.5, 0.0, -1.0, 1.0);
    for (int k = 0; k <= 9; ++k) {
        double a = 0.0, b = 0.0;
        for (size_t i = 0; i < low.nodes.size(); ++i)
            a += low.weights[i] * std::pow(low.nodes[i], k);
        for (size_t i = 0; i < high.nodes.size(); ++i)
            b += high.weights[i] * std::pow(high.nodes[i], k);
        CHECK(a == doctest::Approx(b).epsilon(1e-13));
    }
}

TEST_CASE("weight rule absorbs the endpoint factors") {
    Params pr(4.0, 1.0);
    const QuadRule& full = weight_rule(pr, 1.0, 20);
    CHECK(full.left_exp == doctest::Approx(1.0));   // n/2 - 1
    CHECK(full.right_exp == doctest::Approx(1.0));
    CHECK(full.b == 1.0);

    const QuadRule& trunc = weight_rule(pr, 0.5, 20);
    CHECK(trunc.left_exp == doctest::Approx(1.0));
    CHECK(trunc.right_exp == 0.0);  // the (1-x) factor stays in the integrand
    CHECK(trunc.b == 0.5);
}

TEST_CASE("inner product of the constant against itself") {
    // integral of W over [-1,1]; endpoint factor (1-x^2)^(n/2-1)
    MatPoly one = MatPoly::constant(Mat2::identity());

    Mat2 g4 = inner_product(one, one, Params(4.0, 1.0));
    CHECK(g4.a11 == doctest::Approx(64.0 / 15.0).epsilon(1e-14));
    CHECK(g4.a22 == doctest::Approx(32.0 / 15.0).epsilon(1e-14));
    CHECK(std::abs(g4.a12) < 1e-14);
    CHECK(std::abs(g4.a21) < 1e-14);

    // non-integer n: entries are p pi/8 + (n-p) pi/2 and (n-p) pi/8 + p pi/2
    double n = 3.0, p = 1.2;
    Mat2 g3 = inner_product(one, one, Params(n, p));
    CHECK(g3.a11 == doctest::Approx(p * std::numbers::pi / 8.0 +
                                    (n - p) * std::numbers::pi / 2.0));
    CHECK(g3.a22 == doctest::Approx((n - p) * std::numbers::pi / 8.0 +
                                    p * std::numbers::pi / 2.0));
}

TEST_CASE("truncated interval at alpha = 1 equals the full interval") {
    Params pr(4.0, 1.0);
    MatPoly f = monic_rw(2, pr);
    MatPoly g = monic_rw(2, pr);
    Mat2 a = inner_product(f, g, pr, kFullInterval);
    Mat2 b = inner_product(f, g, pr, 1.0);
    CHECK((a - b).frobenius() < 1e-14);
}

TEST_CASE("non-integer n truncated integral converges under doubling") {
    Params pr(3.0, 1.2);
    MatPoly f = monic_rw(3, pr);
    Mat2 a = inner_product(f, f, pr, 0.3);
    Mat2 b = inner_product(f, f, pr, 0.3, 400);  // brute-force high order
    CHECK((a - b).frobenius() < 1e-11 * (1.0 + b.frobenius()));
}

TEST_CASE("base order covers the requested degree") {
    CHECK(default_rule_order(0) >= 40);
    CHECK(default_rule_order(70) >= 40);
    CHECK(default_rule_order(70) * 2 - 1 >= 70);
}

}  // TEST_SUITE
