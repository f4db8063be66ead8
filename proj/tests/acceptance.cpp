// Acceptance gate for the whole pipeline: one [PASS]/[FAIL] line per check,
// with every tolerance pinned here. Check 5 is split in two: 5a covers the
// positive symmetry cases, 5b is a negative control that expects the band
// operator to LOSE symmetry on the full interval. That pair is in fact
// genuinely symmetric (each summand of its decomposition is), so 5b fails by
// construction; it is marked expected-to-fail and the process exit code
// treats an unexpected flip, not the documented failure, as the error.

#include <array>
#include <cmath>
#include <cstdio>
#include <string>
#include <vector>

#include "json.hpp"

#include "matband/diffop.hpp"
#include "matband/linalg.hpp"
#include "matband/matpoly.hpp"
#include "matband/quadrature.hpp"
#include "matband/rng.hpp"
#include "matband/timeband.hpp"
#include "matband/weight.hpp"

using namespace matband;

namespace {

const Params kExact(4.0, 1.0);
const Params kFractional(3.0, 1.2);

struct Outcome {
    std::string label;
    bool pass;
    bool expect_fail = false;
    std::string detail;
};

std::string sci(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.2e", v);
    return buf;
}

// 1: full-interval expansions of the family are orthonormal, degree <= 20.
Outcome check_orthonormality() {
    double worst_exact = 0.0, worst_frac = 0.0;
    for (int set = 0; set < 2; ++set) {
        const Params& pr = set == 0 ? kExact : kFractional;
        TBConfig cfg(pr, 20, 1.0);
        Matrix gram = build_m(cfg);
        double worst = 0.0;
        for (int wb = 0; wb <= 20; ++wb)
            for (int jb = 0; jb <= 20; ++jb) {
                Mat2 blk = gram.block(wb, jb);
                if (wb == jb) blk -= Mat2::identity();
                worst = std::max(worst, blk.frobenius());
            }
        (set == 0 ? worst_exact : worst_frac) = worst;
    }
    bool pass = worst_exact <= 1e-10 && worst_frac <= 1e-9;
    return {"1  orthonormality of the family, degrees 0..20", pass,
            false, "worst " + sci(worst_exact) + " / " + sci(worst_frac)};
}

// 2: the family diagonalizes the second-order operator, degree <= 20.
Outcome check_eigen_relation() {
    double worst = 0.0;
    for (const Params& pr : {kExact, kFractional}) {
        Family fam(pr);
        fam.prepare(20);
        RightDiffOp d = op_d(pr);
        for (int w = 0; w <= 20; ++w) {
            const MatPoly& rw = fam.monic(w);
            MatPoly diff =
                apply_right(d, rw) - rw.mul_left_const(eigenvalue_lambda(w, pr));
            worst = std::max(worst, diff.coeff_scale());
        }
    }
    return {"2  operator eigenvalue relation, degrees 0..20", worst <= 1e-10,
            false, "worst coefficient " + sci(worst)};
}

// 3: three-term recursion and the telescoping kernel identity on a 32-point
// grid, degree <= 20.
Outcome check_recursion_and_cd() {
    double worst = 0.0;
    for (const Params& pr : {kExact, kFractional}) {
        Family fam(pr);
        fam.prepare(21);
        for (int i = 0; i < 32; ++i) {
            double x = -1.0 + 2.0 * i / 31.0;
            double y = -x;
            FamilyPointValues v = fam.eval_point(x, 21);
            for (int w = 0; w <= 20; ++w) {
                Mat2 rw = fam.norm_sqrt(w) * v.q[w];
                Mat2 prev =
                    w > 0 ? Mat2(fam.norm_sqrt(w - 1) * v.q[w - 1]) : Mat2::zero();
                Mat2 next = fam.norm_sqrt(w + 1) * v.q[w + 1];
                Mat2 res = rw * x - (recursion_a(w, pr) * prev +
                                     recursion_b(w, pr) * rw + next);
                worst = std::max(worst, res.frobenius());
                if (w >= 1)
                    worst = std::max(worst, christoffel_darboux_residual(fam, w, x, y));
            }
        }
    }
    return {"3  three-term recursion and christoffel-darboux on a 32-point grid",
            worst <= 1e-9, false, "worst " + sci(worst)};
}

// 4: first-derivative identity for 50 random parameter draws plus both
// corollaries, degree <= 12.
Outcome check_diff_formula() {
    double worst = 0.0;
    Rng rng(2024);
    for (const Params& pr : {kExact, kFractional}) {
        Family fam(pr);
        fam.prepare(12);
        for (int draw = 0; draw < 50; ++draw) {
            DiffParams dp{rng.uniform(-2.0, 2.0), rng.uniform(-2.0, 2.0),
                          rng.uniform(-2.0, 2.0), rng.uniform(-2.0, 2.0)};
            for (int w = 1; w <= 12; ++w)
                worst = std::max(worst, diff_formula_residual(fam, w, dp));
        }
        for (int w = 1; w <= 12; ++w) {
            worst = std::max(worst, corollary1_residual(fam, w));
            worst = std::max(worst, corollary2_residual(fam, w));
        }
    }
    return {"4  derivative identity, 50 random draws plus corollaries", worst <= 1e-9,
            false, "worst " + sci(worst)};
}

double symmetry_worst(const SymmetryReport& r) {
    return std::max({r.eq[0], r.eq[1], r.eq[2], r.boundary_a, r.boundary_b});
}

// 5a: symmetry of (base op, full interval) and (band op, band interval).
Outcome check_symmetry_positive() {
    double worst = 0.0;
    bool monotone = true;
    for (const Params& pr : {kExact, kFractional}) {
        Weight wt(pr);
        SymmetryReport base = symmetry_residuals(op_d(pr), wt, -1.0, 1.0);
        worst = std::max(worst, symmetry_worst(base));
        monotone = monotone && base.decay_monotone;
        for (double alpha : {-0.5, 0.0, 0.3, 0.9}) {
            SymmetryReport r =
                symmetry_residuals(op_dtilde(pr, 10, alpha), wt, -1.0, alpha);
            worst = std::max(worst, symmetry_worst(r));
            monotone = monotone && r.decay_monotone;
        }
    }
    return {"5a symmetry on the natural intervals", worst <= 1e-9 && monotone,
            false, "worst " + sci(worst)};
}

// 5b: negative control; the band operator on the full interval is supposed to
// break symmetry with an equation residual above 1e-3.
Outcome check_symmetry_negative_control() {
    Weight wt(kExact);
    SymmetryReport r = symmetry_residuals(op_dtilde(kExact, 10, 0.5), wt, -1.0, 1.0);
    double eq_worst = std::max({r.eq[0], r.eq[1], r.eq[2]});
    return {"5b negative control: band operator on the full interval", eq_worst > 1e-3,
            true,
            "equation residual " + sci(eq_worst) +
                ", expected > 1e-3; the pair is genuinely symmetric, so this "
                "control cannot trip"};
}

// 6: kernel symmetry under the band operator over a 12x12 grid, relative to
// the kernel scale at each point.
Outcome check_kernel_identity() {
    double worst = 0.0;
    for (int big_n : {0, 5, 10}) {
        TBConfig cfg(kExact, big_n, 0.3);
        for (int i = 0; i < 12; ++i)
            for (int j = 0; j < 12; ++j) {
                double x = -1.0 + 2.0 * i / 11.0;
                double y = -1.0 + 2.0 * j / 11.0;
                double scale = 1.0 + kernel_eval(cfg, x, y).frobenius();
                worst =
                    std::max(worst, kernel_identity_residual(cfg, x, y) / scale);
            }
    }
    return {"6  kernel symmetry grid, band limits 0/5/10", worst <= 1e-9, false,
            "worst " + sci(worst)};
}

// 7: the Gram and Galerkin matrices commute across the configuration grid,
// and the drop-e0 mutation is caught by the same residual.
Outcome check_commutation() {
    double worst = 0.0;
    for (const Params& pr : {kExact, kFractional})
        for (int big_n : {5, 10, 15})
            for (double alpha : {-0.5, 0.0, 0.3, 0.9}) {
                TBConfig cfg(pr, big_n, alpha);
                worst = std::max(worst, commutator_residual(cfg));
            }

    TBConfig cfg(kExact, 10, 0.3);
    RightDiffOp bad = op_dtilde(kExact, 10, 0.3);
    bad.f0 = bad.f0 - MatPoly::constant(dtilde_e0(kExact));
    double mutated = commutator_residual(
        build_m(cfg), build_b_with(cfg, bad, Exec::parallel, false));

    bool pass = worst <= 1e-9 && mutated > 1e-4;
    return {"7  commutation across the configuration grid, mutation caught", pass,
            false, "worst " + sci(worst) + ", mutated " + sci(mutated)};
}

// 8: structure of the Galerkin matrix for every band limit up to 15.
Outcome check_galerkin_structure() {
    double worst = 0.0;
    for (const Params& pr : {kExact, kFractional})
        for (int big_n : {0, 1, 2, 3, 5, 8, 12, 15}) {
            TBConfig cfg(pr, big_n, 0.3);
            Matrix b = build_b(cfg);
            double scale = 1.0 + b.frobenius();
            worst = std::max(worst, b.asymmetry() / scale);
            for (int wb = 0; wb <= big_n; ++wb)
                for (int jb = 0; jb <= big_n; ++jb)
                    if (std::abs(wb - jb) > 1)
                        worst = std::max(worst, b.block(wb, jb).frobenius() / scale);
            worst = std::max(worst,
                             span_invariance_residual(cfg, op_dtilde(pr, big_n, 0.3)));
        }
    return {"8  galerkin matrix: tridiagonal, symmetric, span-invariant", worst <= 1e-10,
            false, "worst " + sci(worst)};
}

// 9: the spectral route through the Galerkin matrix is stable: eigenvector
// cross-residuals, concentration range, and the frozen contrast bound.
Outcome check_spectral_route() {
    TBConfig cfg(kExact, 25, 0.5);
    SpectrumReport rep = prolate_spectrum(cfg);
    double worst_cross = 0.0, s_lo = 1.0, s_hi = 0.0;
    for (const ModeRecord& mr : rep.modes) {
        worst_cross = std::max(worst_cross, mr.cross_residual);
        s_lo = std::min(s_lo, mr.s_eigenvalue);
        s_hi = std::max(s_hi, mr.s_eigenvalue);
    }
    double contrast = rep.min_gap_b / rep.min_gap_m;
    // calibrated 2026-08: measured ~9.1e12; frozen two orders below
    bool pass = worst_cross <= 1e-8 && s_lo > -1e-10 && s_hi < 1.0 + 1e-10 &&
                contrast >= 1e10;
    return {"9  stable spectral route and frozen contrast bound", pass, false,
            "cross " + sci(worst_cross) + ", contrast " + sci(contrast)};
}

// 10: spectral-cutoff reconstruction beats plain least squares on noisy data,
// and the noiseless full-mode run is exact to rounding.
Outcome check_reconstruction() {
    TBConfig noisy_cfg(kExact, 10, 0.3);
    double noise = 1e-3;
    Rng rng(42);
    CoeffVec truth(10);
    for (double& v : truth.flat) v = rng.uniform(-1.0, 1.0);
    const QuadRule& rule = sample_rule(noisy_cfg);
    std::vector<Row2> samples(rule.nodes.size());
    for (size_t i = 0; i < rule.nodes.size(); ++i) {
        Row2 v = synthesis_value(truth, noisy_cfg, rule.nodes[i]);
        samples[i] = {v[0] + noise * rng.gaussian(), v[1] + noise * rng.gaussian()};
    }
    SpectrumReport rep = prolate_spectrum(noisy_cfg);
    int cutoff = 0;
    for (const ModeRecord& mr : rep.modes)
        if (mr.s_eigenvalue >= 1e-2) ++cutoff;
    ReconstructResult trunc = reconstruct(samples, noisy_cfg, cutoff, noise, truth);
    ReconstructResult full =
        reconstruct(samples, noisy_cfg, noisy_cfg.flat_dim(), noise, truth);

    TBConfig clean_cfg(kExact, 8, 0.9);
    Rng rng2(17);
    CoeffVec truth2(8);
    for (double& v : truth2.flat) v = rng2.uniform(-1.0, 1.0);
    const QuadRule& rule2 = sample_rule(clean_cfg);
    std::vector<Row2> clean(rule2.nodes.size());
    for (size_t i = 0; i < rule2.nodes.size(); ++i)
        clean[i] = synthesis_value(truth2, clean_cfg, rule2.nodes[i]);
    ReconstructResult exact =
        reconstruct(clean, clean_cfg, clean_cfg.flat_dim(), 0.0, truth2);

    bool pass = cutoff < noisy_cfg.flat_dim() &&
                *trunc.relative_error < *full.relative_error &&
                *exact.relative_error <= 1e-8;
    return {"10 spectral cutoff beats least squares; noiseless run exact", pass, false,
            "cutoff " + sci(*trunc.relative_error) + " < full " +
                sci(*full.relative_error) + ", noiseless " +
                sci(*exact.relative_error)};
}

// 11: the anomaly artifacts come out of the tool: the norm-ratio table
// through degree 20 and the cross-degree prefactor comparison.
Outcome check_anomaly_artifacts(const std::string& cli) {
    if (cli.empty())
        return {"11 anomaly artifacts from the tool", false, false,
                "tool path not supplied"};
    std::string cmd = cli + " verify --N 4 --report-anomalies 2>/dev/null";
    FILE* pipe = popen(cmd.c_str(), "r");
    if (!pipe)
        return {"11 anomaly artifacts from the tool", false, false, "popen failed"};
    std::string out;
    std::array<char, 4096> buf;
    size_t got;
    while ((got = fread(buf.data(), 1, buf.size(), pipe)) > 0)
        out.append(buf.data(), got);
    int status = pclose(pipe);

    bool pass = false;
    std::string detail = "tool exited nonzero";
    if (WIFEXITED(status) && WEXITSTATUS(status) == 0) {
        try {
            auto doc = nlohmann::json::parse(out);
            const auto& a = doc.at("anomalies");
            const auto& rows = a.at("norm_ratio").at("rows");
            std::string winner = a.at("h_prefactor").at("winner");
            bool w_indep = a.at("norm_ratio").at("w_independent");
            pass = rows.size() == 21 && rows.at(20).at("w") == 20 &&
                   winner == "n+2w+1" && !w_indep;
            detail = "rows " + std::to_string(rows.size()) + ", winner " + winner;
        } catch (const std::exception& e) {
            detail = std::string("report parse: ") + e.what();
        }
    }
    return {"11 anomaly artifacts from the tool", pass, false, detail};
}

}  // namespace

int main(int argc, char** argv) {
    std::string cli = argc > 1 ? argv[1] : "";

    std::vector<Outcome> results;
    results.push_back(check_orthonormality());
    results.push_back(check_eigen_relation());
    results.push_back(check_recursion_and_cd());
    results.push_back(check_diff_formula());
    results.push_back(check_symmetry_positive());
    results.push_back(check_symmetry_negative_control());
    results.push_back(check_kernel_identity());
    results.push_back(check_commutation());
    results.push_back(check_galerkin_structure());
    results.push_back(check_spectral_route());
    results.push_back(check_reconstruction());
    results.push_back(check_anomaly_artifacts(cli));

    int unexpected = 0;
    for (const Outcome& r : results) {
        std::printf("[%s] %s (%s)%s\n", r.pass ? "PASS" : "FAIL", r.label.c_str(),
                    r.detail.c_str(),
                    r.expect_fail ? (r.pass ? " [UNEXPECTED PASS]" : " [expected failure]")
                                  : "");
        if (r.pass == r.expect_fail) ++unexpected;
    }
    if (unexpected)
        std::printf("%d unexpected outcome(s)\n", unexpected);
    else
        std::printf("all outcomes as expected\n");
    return unexpected ? 1 : 0;
}
