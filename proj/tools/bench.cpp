// Timing comparison of the serial reference assembly against the OpenMP
// path, plus a bitwise equality check (the parallel path accumulates blocks
// in the same node order, so the results must match exactly).
//
// Usage: matband_bench [N ...]   (default band limits: 15 25 40)

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <string>
#include <vector>

#include "matband/linalg.hpp"
#include "matband/timeband.hpp"

using namespace matband;

namespace {

double ms_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0)
        .count();
}

bool identical(const Matrix& a, const Matrix& b) {
    if (a.dim() != b.dim()) return false;
    for (int i = 0; i < a.dim(); ++i)
        for (int j = 0; j < a.dim(); ++j)
            if (a.at(i, j) != b.at(i, j)) return false;
    return true;
}

template <typename F>
void bench_one(const char* label, int big_n, F build) {
    // Warm the quadrature-rule and family caches so the first timed pass
    // does not pay one-time setup the second pass would reuse.
    build(Exec::serial);

    auto t0 = std::chrono::steady_clock::now();
    Matrix serial = build(Exec::serial);
    double t_serial = ms_since(t0);

    t0 = std::chrono::steady_clock::now();
    Matrix parallel = build(Exec::parallel);
    double t_parallel = ms_since(t0);

    std::printf("%-6s N=%-3d  serial %9.3f ms   parallel %9.3f ms   speedup %5.2fx   %s\n",
                label, big_n, t_serial, t_parallel,
                t_parallel > 0.0 ? t_serial / t_parallel : 0.0,
                identical(serial, parallel) ? "bitwise identical" : "MISMATCH");
}

}  // namespace

int main(int argc, char** argv) {
    std::vector<int> sizes;
    for (int i = 1; i < argc; ++i) {
        int v = std::atoi(argv[i]);
        if (v < 0) {
            std::fprintf(stderr, "usage: %s [N ...]\n", argv[0]);
            return 2;
        }
        sizes.push_back(v);
    }
    if (sizes.empty()) sizes = {15, 25, 40};

    for (int big_n : sizes) {
        TBConfig cfg(Params(4.0, 1.0), big_n, 0.5);
        bench_one("gram", big_n, [&](Exec e) { return build_m(cfg, e); });
        bench_one("galerkin", big_n, [&](Exec e) { return build_b(cfg, e); });
    }
    return 0;
}
