#include "matband/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace matband {

Mat2 inverse(const Mat2& m) {
    double d = m.det();
    double scale = m.frobenius();
    if (std::abs(d) <= 1e-14 * scale * scale) {
        std::ostringstream os;
        os << "Mat2 inverse: matrix is singular to working precision (det = " << d
           << ", frobenius = " << scale << ")";
        throw std::invalid_argument(os.str());
    }
    return {m.a22 / d, -m.a12 / d, -m.a21 / d, m.a11 / d};
}

Matrix Matrix::identity(int dim) {
    Matrix m(dim);
    for (int i = 0; i < dim; ++i) m.at(i, i) = 1.0;
    return m;
}

Mat2 Matrix::block(int br, int bc) const {
    return {at(2 * br, 2 * bc), at(2 * br, 2 * bc + 1), at(2 * br + 1, 2 * bc),
            at(2 * br + 1, 2 * bc + 1)};
}

void Matrix::set_block(int br, int bc, const Mat2& m) {
    at(2 * br, 2 * bc) = m.a11;
    at(2 * br, 2 * bc + 1) = m.a12;
    at(2 * br + 1, 2 * bc) = m.a21;
    at(2 * br + 1, 2 * bc + 1) = m.a22;
}

Matrix Matrix::transpose() const {
    Matrix t(dim_);
    for (int r = 0; r < dim_; ++r)
        for (int c = 0; c < dim_; ++c) t.at(c, r) = at(r, c);
    return t;
}

Matrix Matrix::operator*(const Matrix& o) const {
    Matrix r(dim_);
    for (int i = 0; i < dim_; ++i)
        for (int k = 0; k < dim_; ++k) {
            double aik = at(i, k);
            if (aik == 0.0) continue;
            for (int j = 0; j < dim_; ++j) r.at(i, j) += aik * o.at(k, j);
        }
    return r;
}

Matrix Matrix::operator-(const Matrix& o) const {
    Matrix r(dim_);
    for (size_t i = 0; i < a_.size(); ++i) r.a_[i] = a_[i] - o.a_[i];
    return r;
}

double Matrix::frobenius() const {
    double s = 0.0;
    for (double v : a_) s += v * v;
    return std::sqrt(s);
}

double Matrix::asymmetry() const {
    double m = 0.0;
    for (int r = 0; r < dim_; ++r)
        for (int c = r + 1; c < dim_; ++c) m = std::max(m, std::abs(at(r, c) - at(c, r)));
    return m;
}

namespace {

double offdiag_frobenius(const Matrix& a) {
    double s = 0.0;
    for (int r = 0; r < a.dim(); ++r)
        for (int c = 0; c < a.dim(); ++c)
            if (r != c) s += a.at(r, c) * a.at(r, c);
    return std::sqrt(s);
}

}  // namespace

EigenResult sym_eig(const Matrix& input, double tol) {
    int n = input.dim();
    if (n <= 0) throw std::invalid_argument("sym_eig: empty matrix");

    double scale = input.frobenius();
    double asym = input.asymmetry();
    if (asym > 1e-10 * std::max(scale, 1e-300)) {
        std::ostringstream os;
        os << "sym_eig: input is not symmetric (max |a_ij - a_ji| = " << asym
           << ", frobenius = " << scale << ")";
        throw std::invalid_argument(os.str());
    }

    Matrix a = input;
    // Work on the symmetrized matrix so tiny asymmetries cannot bias rotations.
    for (int r = 0; r < n; ++r)
        for (int c = r + 1; c < n; ++c) {
            double v = 0.5 * (a.at(r, c) + a.at(c, r));
            a.at(r, c) = v;
            a.at(c, r) = v;
        }

    Matrix v = Matrix::identity(n);
    const int max_sweeps = 100;
    int sweep = 0;
    for (; sweep < max_sweeps; ++sweep) {
        if (scale == 0.0 || offdiag_frobenius(a) <= tol * scale) break;
        for (int p = 0; p < n - 1; ++p) {
            for (int q = p + 1; q < n; ++q) {
                double apq = a.at(p, q);
                if (apq == 0.0) continue;
                double app = a.at(p, p), aqq = a.at(q, q);
                double tau = (aqq - app) / (2.0 * apq);
                double t = (tau >= 0.0 ? 1.0 : -1.0) /
                           (std::abs(tau) + std::sqrt(1.0 + tau * tau));
                double c = 1.0 / std::sqrt(1.0 + t * t);
                double s = t * c;

                for (int k = 0; k < n; ++k) {
                    double akp = a.at(k, p), akq = a.at(k, q);
                    a.at(k, p) = c * akp - s * akq;
                    a.at(k, q) = s * akp + c * akq;
                }
                for (int k = 0; k < n; ++k) {
                    double apk = a.at(p, k), aqk = a.at(q, k);
                    a.at(p, k) = c * apk - s * aqk;
                    a.at(q, k) = s * apk + c * aqk;
                }
                for (int k = 0; k < n; ++k) {
                    double vkp = v.at(k, p), vkq = v.at(k, q);
                    v.at(k, p) = c * vkp - s * vkq;
                    v.at(k, q) = s * vkp + c * vkq;
                }
            }
        }
    }
    if (sweep == max_sweeps) {
        std::ostringstream os;
        os << "sym_eig: no convergence after " << max_sweeps
           << " sweeps (off-diagonal frobenius = " << offdiag_frobenius(a)
           << ", target = " << tol * scale << ")";
        throw std::runtime_error(os.str());
    }

    std::vector<int> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::vector<double> diag(n);
    for (int i = 0; i < n; ++i) diag[i] = a.at(i, i);
    std::stable_sort(order.begin(), order.end(),
                     [&](int i, int j) { return diag[i] < diag[j]; });

    EigenResult res;
    res.values.resize(n);
    res.vectors = Matrix(n);
    for (int j = 0; j < n; ++j) {
        int src = order[j];
        res.values[j] = diag[src];
        double sign = 1.0;
        for (int i = 0; i < n; ++i) {
            double vi = v.at(i, src);
            if (vi != 0.0) {
                sign = vi > 0.0 ? 1.0 : -1.0;
                break;
            }
        }
        for (int i = 0; i < n; ++i) res.vectors.at(i, j) = sign * v.at(i, src);
    }
    return res;
}

EigenResult sym_eig(const Mat2& a, double tol) {
    Matrix m(2);
    m.at(0, 0) = a.a11;
    m.at(0, 1) = a.a12;
    m.at(1, 0) = a.a21;
    m.at(1, 1) = a.a22;
    return sym_eig(m, tol);
}

}  // namespace matband
