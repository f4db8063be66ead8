#include "matband/matpoly.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

#include "matband/gegenbauer.hpp"
#include "matband/quadrature.hpp"

namespace matband {

Params::Params(double n_, double p_) : n(n_), p(p_) {
    if (!(p > 0.0) || !(p < n)) {
        std::ostringstream os;
        os << "Params: need 0 < p < n, got n = " << n_ << ", p = " << p_;
        throw std::invalid_argument(os.str());
    }
}

MatPoly::MatPoly(std::vector<Mat2> coeffs) : c_(std::move(coeffs)) { trim(); }

MatPoly MatPoly::constant(const Mat2& c) { return MatPoly({c}); }

MatPoly MatPoly::scalar(std::vector<double> coeffs) {
    std::vector<Mat2> c;
    c.reserve(coeffs.size());
    for (double v : coeffs) c.push_back(Mat2::diag(v, v));
    return MatPoly(std::move(c));
}

void MatPoly::trim() {
    while (!c_.empty()) {
        const Mat2& b = c_.back();
        if (b.a11 == 0.0 && b.a12 == 0.0 && b.a21 == 0.0 && b.a22 == 0.0)
            c_.pop_back();
        else
            break;
    }
}

Mat2 MatPoly::coeff(int j) const {
    if (j < 0 || j >= static_cast<int>(c_.size())) return Mat2::zero();
    return c_[j];
}

Mat2 MatPoly::eval(double x) const {
    Mat2 r = Mat2::zero();
    for (int j = degree(); j >= 0; --j) r = r * x + c_[j];
    return r;
}

MatPoly MatPoly::deriv() const {
    if (c_.size() <= 1) return MatPoly();
    std::vector<Mat2> d(c_.size() - 1);
    for (size_t j = 1; j < c_.size(); ++j) d[j - 1] = c_[j] * static_cast<double>(j);
    return MatPoly(std::move(d));
}

MatPoly MatPoly::operator+(const MatPoly& o) const {
    std::vector<Mat2> r(std::max(c_.size(), o.c_.size()), Mat2::zero());
    for (size_t j = 0; j < r.size(); ++j) r[j] = coeff(j) + o.coeff(j);
    return MatPoly(std::move(r));
}

MatPoly MatPoly::operator-(const MatPoly& o) const {
    std::vector<Mat2> r(std::max(c_.size(), o.c_.size()), Mat2::zero());
    for (size_t j = 0; j < r.size(); ++j) r[j] = coeff(j) - o.coeff(j);
    return MatPoly(std::move(r));
}

MatPoly MatPoly::scale(double s) const {
    std::vector<Mat2> r(c_);
    for (Mat2& b : r) b = b * s;
    return MatPoly(std::move(r));
}

MatPoly MatPoly::mul_scalar_poly(const std::vector<double>& s) const {
    if (c_.empty() || s.empty()) return MatPoly();
    std::vector<Mat2> r(c_.size() + s.size() - 1, Mat2::zero());
    for (size_t i = 0; i < c_.size(); ++i)
        for (size_t j = 0; j < s.size(); ++j) r[i + j] += c_[i] * s[j];
    return MatPoly(std::move(r));
}

MatPoly MatPoly::mul_right_const(const Mat2& c) const {
    std::vector<Mat2> r(c_);
    for (Mat2& b : r) b = b * c;
    return MatPoly(std::move(r));
}

MatPoly MatPoly::mul_left_const(const Mat2& c) const {
    std::vector<Mat2> r(c_);
    for (Mat2& b : r) b = c * b;
    return MatPoly(std::move(r));
}

MatPoly MatPoly::mul(const MatPoly& o) const {
    if (c_.empty() || o.c_.empty()) return MatPoly();
    std::vector<Mat2> r(c_.size() + o.c_.size() - 1, Mat2::zero());
    for (size_t i = 0; i < c_.size(); ++i)
        for (size_t j = 0; j < o.c_.size(); ++j) r[i + j] += c_[i] * o.c_[j];
    return MatPoly(std::move(r));
}

MatPoly MatPoly::transpose() const {
    std::vector<Mat2> r(c_);
    for (Mat2& b : r) b = b.transpose();
    return MatPoly(std::move(r));
}

double MatPoly::coeff_scale() const {
    double s = 0.0;
    for (const Mat2& b : c_) s = std::max(s, b.frobenius());
    return s;
}

int MatPoly::degree_trimmed(double eps) const {
    int d = degree();
    while (d >= 0 && c_[d].frobenius() <= eps) --d;
    return d;
}

MatPoly monic_rw(int w, const Params& pr) {
    if (w < 0) throw std::invalid_argument("monic_rw: negative degree");
    double n = pr.n, p = pr.p;
    std::vector<Mat2> c(w + 1, Mat2::zero());
    // Walk k upward, maintaining the shared scalar factor
    //   t_k = w! (-1)^k / (4^k k! (w-2k)! ((n+1)/2 + w - k)_k)
    // incrementally; the degree w-2k block is diagonal, the degree w-2k-1
    // block antidiagonal with t_k (w-2k) in place of t_k.
    double t = 1.0;
    for (int k = 0; 2 * k <= w; ++k) {
        if (k > 0)
            t *= -(w - 2.0 * k + 2.0) * (w - 2.0 * k + 1.0) /
                 (4.0 * k * ((n + 1.0) / 2.0 + w - k));
        int j = w - 2 * k;
        c[j] = Mat2::diag(t * (p + j) / (p + w), t * (n - p + j) / (n - p + w));
        if (j - 1 >= 0)
            c[j - 1] = Mat2::antidiag(t * j / (p + w), t * j / (n - p + w));
    }
    return MatPoly(std::move(c));
}

MatPoly monic_rw_gegenbauer(int w, const Params& pr) {
    if (w < 0) throw std::invalid_argument("monic_rw_gegenbauer: negative degree");
    double n = pr.n, p = pr.p;
    // prefactor w! (n+1) / (2^w ((n+1)/2)_w), built incrementally
    double pf = n + 1.0;
    for (int k = 1; k <= w; ++k) pf *= k / (n + 2.0 * k - 1.0);

    std::vector<double> cw = gegenbauer_coefficients(w, (n + 1.0) / 2.0);
    std::vector<double> cw1 =
        w >= 1 ? gegenbauer_coefficients(w - 1, (n + 3.0) / 2.0) : std::vector<double>{};
    std::vector<double> cw2 =
        w >= 2 ? gegenbauer_coefficients(w - 2, (n + 3.0) / 2.0) : std::vector<double>{};

    std::vector<Mat2> c(w + 1, Mat2::zero());
    for (int j = 0; j <= w; ++j) {
        double dj = j < static_cast<int>(cw.size()) ? cw[j] / (n + 1.0) : 0.0;
        double ej = j < static_cast<int>(cw2.size()) ? cw2[j] : 0.0;
        double oj = j < static_cast<int>(cw1.size()) ? cw1[j] : 0.0;
        c[j] = Mat2{pf * (dj + ej / (p + w)), pf * oj / (p + w),
                    pf * oj / (n - p + w), pf * (dj + ej / (n - p + w))};
    }
    return MatPoly(std::move(c));
}

namespace {

Mat2 norm_matrix_closed_form(int w, const Params& pr) {
    double n = pr.n, p = pr.p;
    double pref = std::sqrt(M_PI) * std::tgamma(n / 2.0 + 1.0) * pochhammer(n + 1.0, w) /
                  (std::tgamma(w + 1.0) * (n + 1.0) * (n + 2.0 * w + 1.0) *
                   std::tgamma(n / 2.0 + 1.5));
    return Mat2::diag(pref * p * (n - p + w + 1.0) / (p + w),
                      pref * (n - p) * (p + w + 1.0) / (n - p + w));
}

}  // namespace

NormMatrix norm_matrix(int w, const Params& pr) {
    MatPoly rw = monic_rw(w, pr);
    NormMatrix nm;
    nm.quadrature = inner_product(rw, rw, pr);
    nm.closed_form = norm_matrix_closed_form(w, pr);
    return nm;
}

Mat2 recursion_a(int w, const Params& pr) {
    if (w == 0) return Mat2::zero();
    double n = pr.n, p = pr.p;
    double f = w * (n + w) /
               ((n + 2.0 * w - 1.0) * (p + w) * (n - p + w) * (2.0 * w + n + 1.0));
    return Mat2::diag(f * (p + w - 1.0) * (n - p + w + 1.0),
                      f * (p + w + 1.0) * (n - p + w - 1.0));
}

Mat2 recursion_b(int w, const Params& pr) {
    double n = pr.n, p = pr.p;
    return Mat2::antidiag(-p / ((p + w) * (p + w + 1.0)),
                          -(n - p) / ((n - p + w) * (n - p + w + 1.0)));
}

Family::Family(const Params& pr) : pr_(pr) {}

namespace {

// <R_0, R_0>: the only integral the norm chain needs, done with Beta-function
// values so the chain stays exact-rational apart from rounding.
//   i0 = int (1-x^2)^m dx,  i2 = int x^2 (1-x^2)^m dx,  m = n/2 - 1.
Mat2 norm0_exact(const Params& pr) {
    double m = pr.n / 2.0 - 1.0;
    double i0 = std::sqrt(M_PI) * std::tgamma(m + 1.0) / std::tgamma(m + 1.5);
    double i2 = 0.5 * std::sqrt(M_PI) * std::tgamma(m + 1.0) / std::tgamma(m + 2.5);
    double p = pr.p, q = pr.n - pr.p;
    return Mat2::diag(p * i2 + q * i0, q * i2 + p * i0);
}

}  // namespace

void Family::prepare(int wmax) {
    for (int w = prepared_ + 1; w <= wmax; ++w) {
        monic_.push_back(monic_rw(w, pr_));
        // Chain step ||R_w||^2 = A_w ||R_{w-1}||^2; both factors are diagonal.
        Mat2 d = w == 0 ? norm0_exact(pr_) : Mat2(recursion_a(w, pr_) * norm_sq_[w - 1]);
        if (!(d.a11 > 0.0) || !(d.a22 > 0.0)) {
            std::ostringstream os;
            os << "Family: norm chain for R_" << w << " is not positive definite (diag = "
               << d.a11 << ", " << d.a22 << ")";
            throw std::runtime_error(os.str());
        }
        norm_sq_.push_back(d);
        Mat2 s = Mat2::diag(std::sqrt(d.a11), std::sqrt(d.a22));
        Mat2 si = Mat2::diag(1.0 / s.a11, 1.0 / s.a22);
        norm_sqrt_.push_back(s);
        norm_sqrt_inv_.push_back(si);
        closed_.push_back(norm_matrix_closed_form(w, pr_));
        ortho_.push_back(monic_.back().mul_left_const(si));
        prepared_ = w;
    }
}

void Family::check(int w) const {
    if (w < 0 || w > prepared_) {
        std::ostringstream os;
        os << "Family: index " << w << " outside prepared range [0, " << prepared_ << "]";
        throw std::out_of_range(os.str());
    }
}

const MatPoly& Family::monic(int w) const {
    check(w);
    return monic_[w];
}

const MatPoly& Family::orthonormal(int w) const {
    check(w);
    return ortho_[w];
}

Mat2 Family::norm_squared(int w) const {
    check(w);
    return norm_sq_[w];
}

Mat2 Family::norm_sqrt(int w) const {
    check(w);
    return norm_sqrt_[w];
}

Mat2 Family::norm_sqrt_inv(int w) const {
    check(w);
    return norm_sqrt_inv_[w];
}

Mat2 Family::closed_form_norm(int w) const {
    check(w);
    return closed_[w];
}

Mat2 Family::recursion_a_on(int w) const {
    check(w);
    if (w == 0) return Mat2::zero();
    return norm_sqrt_[w] * norm_sqrt_inv_[w - 1];
}

Mat2 Family::recursion_b_on(int w) const {
    check(w);
    return norm_sqrt_inv_[w] * recursion_b(w, pr_) * norm_sqrt_[w];
}

FamilyPointValues Family::eval_point(double x, int wmax, int deriv_order) const {
    check(wmax);
    if (deriv_order < 0 || deriv_order > 2)
        throw std::invalid_argument("Family::eval_point: deriv_order must be 0, 1 or 2");
    FamilyPointValues out;
    out.q.resize(wmax + 1);
    if (deriv_order >= 1) out.dq.resize(wmax + 1);
    if (deriv_order >= 2) out.ddq.resize(wmax + 1);

    out.q[0] = norm_sqrt_inv_[0];
    for (int w = 0; w < wmax; ++w) {
        // x Q_w = At_w Q_{w-1} + Bt_w Q_w + At_{w+1}^T Q_{w+1}, solved for
        // Q_{w+1}; At is diagonal positive so the inverse is trivial.
        Mat2 at_next = recursion_a_on(w + 1);
        Mat2 inv = Mat2::diag(1.0 / at_next.a11, 1.0 / at_next.a22);
        Mat2 bt = recursion_b_on(w);
        Mat2 back = w > 0 ? Mat2(recursion_a_on(w) * out.q[w - 1]) : Mat2::zero();
        out.q[w + 1] = inv * (out.q[w] * x - bt * out.q[w] - back);
        if (deriv_order >= 1) {
            Mat2 dback = w > 0 ? Mat2(recursion_a_on(w) * out.dq[w - 1]) : Mat2::zero();
            out.dq[w + 1] = inv * (out.q[w] + out.dq[w] * x - bt * out.dq[w] - dback);
        }
        if (deriv_order >= 2) {
            Mat2 ddback = w > 0 ? Mat2(recursion_a_on(w) * out.ddq[w - 1]) : Mat2::zero();
            out.ddq[w + 1] =
                inv * (out.dq[w] * 2.0 + out.ddq[w] * x - bt * out.ddq[w] - ddback);
        }
    }
    return out;
}

double christoffel_darboux_residual(const Family& fam, int w, double x, double y) {
    if (w < 1) throw std::invalid_argument("christoffel_darboux_residual: need w >= 1");
    Mat2 at = fam.recursion_a_on(w);
    FamilyPointValues px = fam.eval_point(x, w);
    FamilyPointValues py = fam.eval_point(y, w);

    Mat2 lhs = py.q[w - 1].transpose() * at.transpose() * px.q[w] -
               py.q[w].transpose() * at * px.q[w - 1];
    Mat2 sum = Mat2::zero();
    for (int k = 0; k < w; ++k) sum += py.q[k].transpose() * px.q[k];
    return (lhs - sum * (x - y)).frobenius();
}

}  // namespace matband
