#include "matband/weight.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace matband {

Mat2 Weight::eval(double x) const {
    if (x < -1.0 || x > 1.0) {
        std::ostringstream os;
        os << "Weight::eval: x = " << x << " outside [-1, 1]";
        throw std::invalid_argument(os.str());
    }
    return matrix_part().eval(x) * scalar_factor(x);
}

MatPoly Weight::matrix_part() const {
    double n = pr_.n, p = pr_.p;
    std::vector<Mat2> c(3);
    c[0] = Mat2::diag(n - p, p);
    c[1] = Mat2::antidiag(-n, -n);
    c[2] = Mat2::diag(p, n - p);
    return MatPoly(std::move(c));
}

double Weight::scalar_factor(double x) const {
    double m = pr_.n / 2.0 - 1.0;
    double u = 1.0 - x * x;
    if (m == 0.0) return 1.0;
    return std::pow(u, m);
}

double Weight::scalar_factor_d1(double x) const {
    double m = pr_.n / 2.0 - 1.0;
    if (m == 0.0) return 0.0;
    double u = 1.0 - x * x;
    return -2.0 * m * x * std::pow(u, m - 1.0);
}

double Weight::scalar_factor_d2(double x) const {
    double m = pr_.n / 2.0 - 1.0;
    if (m == 0.0) return 0.0;
    double u = 1.0 - x * x;
    double r = -2.0 * m * std::pow(u, m - 1.0);
    if (m != 1.0) r += 4.0 * m * (m - 1.0) * x * x * std::pow(u, m - 2.0);
    return r;
}

double Weight::det(double x) const {
    return pr_.p * (pr_.n - pr_.p) * std::pow(1.0 - x * x, pr_.n);
}

}  // namespace matband
