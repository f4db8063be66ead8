#include "matband/quadrature.hpp"

#include <cmath>
#include <map>
#include <memory>
#include <mutex>
#include <sstream>
#include <stdexcept>
#include <tuple>

#include "matband/linalg.hpp"

namespace matband {

namespace {

// Recurrence matrix of monic Jacobi polynomials for (1-t)^A (1+t)^B on [-1,1],
// diagonalized to get nodes and weights (Golub-Welsch). The first-row
// components of the eigenvectors square to the weights, scaled by the total
// mass mu0 = 2^(A+B+1) Gamma(A+1) Gamma(B+1) / Gamma(A+B+2).
QuadRule build_rule(int m, double left_exp, double right_exp, double a, double b) {
    if (m < 1) throw std::invalid_argument("gauss_rule: need at least one node");
    if (!(left_exp > -1.0) || !(right_exp > -1.0))
        throw std::invalid_argument("gauss_rule: exponents must exceed -1");
    if (!(a < b)) throw std::invalid_argument("gauss_rule: need a < b");

    const double A = right_exp;  // exponent at t = +1
    const double B = left_exp;   // exponent at t = -1
    const double ab = A + B;

    Matrix jac(m);
    jac.at(0, 0) = (B - A) / (ab + 2.0);
    for (int k = 1; k < m; ++k) {
        double i = k + 1.0;
        double abi = 2.0 * i + ab;
        jac.at(k, k) = (B * B - A * A) / ((abi - 2.0) * abi);
    }
    for (int k = 0; k + 1 < m; ++k) {
        double off;
        if (k == 0) {
            off = std::sqrt(4.0 * (1.0 + A) * (1.0 + B) /
                            ((ab + 2.0) * (ab + 2.0) * (ab + 3.0)));
        } else {
            double i = k + 1.0;
            double abi = 2.0 * i + ab;
            off = std::sqrt(4.0 * i * (i + A) * (i + B) * (i + ab) /
                            ((abi * abi - 1.0) * abi * abi));
        }
        jac.at(k, k + 1) = off;
        jac.at(k + 1, k) = off;
    }

    EigenResult eig = sym_eig(jac);

    double mu0 = std::pow(2.0, ab + 1.0) * std::tgamma(A + 1.0) * std::tgamma(B + 1.0) /
                 std::tgamma(ab + 2.0);
    double half = 0.5 * (b - a);
    double mid = 0.5 * (a + b);
    double wscale = mu0 * std::pow(half, ab + 1.0);

    QuadRule r;
    r.a = a;
    r.b = b;
    r.left_exp = left_exp;
    r.right_exp = right_exp;
    r.nodes.resize(m);
    r.weights.resize(m);
    for (int q = 0; q < m; ++q) {
        r.nodes[q] = mid + half * eig.values[q];
        double v0 = eig.vectors.at(0, q);
        r.weights[q] = wscale * v0 * v0;
    }
    return r;
}

std::map<std::tuple<int, double, double, double, double>, std::unique_ptr<QuadRule>>
    rule_cache;
std::mutex cache_mutex;

bool even_integer(double n) {
    double r = n / 2.0;
    return r == std::floor(r);
}

Mat2 integrate(const MatPoly& f, const MatPoly& g, const Params& pr, const QuadRule& rule,
               bool keep_right_factor) {
    MatPoly gt = g.transpose();
    double m = pr.n / 2.0 - 1.0;
    std::vector<Mat2> vc(3);
    vc[0] = Mat2::diag(pr.n - pr.p, pr.p);
    vc[1] = Mat2::antidiag(-pr.n, -pr.n);
    vc[2] = Mat2::diag(pr.p, pr.n - pr.p);
    MatPoly v{std::move(vc)};

    Mat2 acc = Mat2::zero();
    for (size_t q = 0; q < rule.nodes.size(); ++q) {
        double x = rule.nodes[q];
        Mat2 term = f.eval(x) * v.eval(x) * gt.eval(x);
        double w = rule.weights[q];
        if (keep_right_factor && m != 0.0) w *= std::pow(1.0 - x, m);
        acc += term * w;
    }
    return acc;
}

}  // namespace

const QuadRule& gauss_rule(int m, double left_exp, double right_exp, double a, double b) {
    std::lock_guard<std::mutex> lock(cache_mutex);
    auto key = std::make_tuple(m, left_exp, right_exp, a, b);
    auto it = rule_cache.find(key);
    if (it == rule_cache.end()) {
        auto rule = std::make_unique<QuadRule>(build_rule(m, left_exp, right_exp, a, b));
        it = rule_cache.emplace(key, std::move(rule)).first;
    }
    return *it->second;
}

int default_rule_order(int total_degree) { return std::max(total_degree + 8, 40); }

const QuadRule& weight_rule(const Params& pr, double alpha, int order) {
    double m = pr.n / 2.0 - 1.0;
    if (alpha == kFullInterval) return gauss_rule(order, m, m, -1.0, 1.0);
    return gauss_rule(order, m, 0.0, -1.0, alpha);
}

Mat2 inner_product(const MatPoly& f, const MatPoly& g, const Params& pr, double alpha,
                   int rule_order) {
    if (!(alpha > -1.0) || alpha > 1.0) {
        std::ostringstream os;
        os << "inner_product: alpha = " << alpha << " outside (-1, 1]";
        throw std::invalid_argument(os.str());
    }
    int deg_total = std::max(f.degree(), 0) + std::max(g.degree(), 0) + 2;
    int base = rule_order > 0 ? rule_order : default_rule_order(deg_total);

    if (alpha == kFullInterval) {
        // Both endpoint factors live in the rule; the integrand is polynomial
        // and the base order is already past the exactness threshold.
        return integrate(f, g, pr, weight_rule(pr, alpha, base), false);
    }

    if (even_integer(pr.n)) {
        // (1 - x)^(n/2 - 1) is itself a polynomial: one exact evaluation.
        int order = rule_order > 0
                        ? rule_order
                        : default_rule_order(deg_total + static_cast<int>(pr.n / 2 - 1));
        return integrate(f, g, pr, weight_rule(pr, alpha, order), true);
    }

    Mat2 prev = integrate(f, g, pr, weight_rule(pr, alpha, base), true);
    Mat2 cur = prev;
    int order = base;
    for (int d = 0; d < 6; ++d) {
        if (d > 0) prev = cur;
        order *= 2;
        cur = integrate(f, g, pr, weight_rule(pr, alpha, order), true);
        if ((cur - prev).frobenius() <= 1e-12 * (1.0 + cur.frobenius())) return cur;
    }
    std::ostringstream os;
    os << "inner_product: no convergence after 6 doublings (final order " << order
       << "); last two values differ by " << (cur - prev).frobenius()
       << " with frobenius " << cur.frobenius();
    throw std::runtime_error(os.str());
}

}  // namespace matband
