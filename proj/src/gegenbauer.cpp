#include "matband/gegenbauer.hpp"

#include <sstream>
#include <stdexcept>

namespace matband {

namespace {

void check_lambda(double lambda) {
    if (!(lambda > 0.0)) {
        std::ostringstream os;
        os << "gegenbauer: lambda must be positive, got " << lambda;
        throw std::invalid_argument(os.str());
    }
}

}  // namespace

double gegenbauer(int w, double lambda, double x) {
    check_lambda(lambda);
    if (w < 0) return 0.0;
    if (w == 0) return 1.0;
    double prev = 1.0;            // C_0
    double cur = 2.0 * lambda * x;  // C_1
    for (int k = 2; k <= w; ++k) {
        double next = (2.0 * (k + lambda - 1.0) * x * cur - (k + 2.0 * lambda - 2.0) * prev) / k;
        prev = cur;
        cur = next;
    }
    return cur;
}

std::vector<double> gegenbauer_coefficients(int w, double lambda) {
    check_lambda(lambda);
    if (w < 0) throw std::invalid_argument("gegenbauer_coefficients: negative degree");
    std::vector<double> prev{1.0};
    if (w == 0) return prev;
    std::vector<double> cur{0.0, 2.0 * lambda};
    for (int k = 2; k <= w; ++k) {
        std::vector<double> next(k + 1, 0.0);
        double ax = 2.0 * (k + lambda - 1.0) / k;
        double b = (k + 2.0 * lambda - 2.0) / k;
        for (int j = 0; j < static_cast<int>(cur.size()); ++j) next[j + 1] += ax * cur[j];
        for (int j = 0; j < static_cast<int>(prev.size()); ++j) next[j] -= b * prev[j];
        prev = std::move(cur);
        cur = std::move(next);
    }
    return cur;
}

double pochhammer(double a, int k) {
    double r = 1.0;
    for (int i = 0; i < k; ++i) r *= a + i;
    return r;
}

}  // namespace matband
