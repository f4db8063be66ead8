#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "matband/diffop.hpp"
#include "matband/linalg.hpp"
#include "matband/matpoly.hpp"
#include "matband/quadrature.hpp"

namespace matband {

/// Whether block-assembly loops run serially or under OpenMP. Results are
/// combined in index order either way, so both paths produce bit-identical
/// output; the serial path is kept as the reference the tests compare against.
enum class Exec { serial, parallel };

/// Time-and-band-limiting configuration: band limit big_n (expansions stop at
/// Q_big_n) and time cutoff alpha. alpha must lie in (-1, 1]; 1 means no time
/// truncation and is accepted as a diagnostic value.
struct TBConfig {
    TBConfig(const Params& pr, int big_n, double alpha, int quad_order = 0);

    Params params;
    int big_n;
    double alpha;
    int quad_order;  ///< 0 = automatic (max(2 big_n + n + 8, 40))

    int flat_dim() const { return 2 * (big_n + 1); }
    int effective_order() const;

    /// Family prepared through big_n + 1, built lazily and then shared.
    const Family& family() const;

  private:
    mutable std::shared_ptr<Family> fam_;
};

/// Coefficient vector of a row-valued function f = sum C_w Q_w with
/// C_w in R^{1x2}; flat layout interleaves the two components per block,
/// flat[2w + e] = C_w[e]. Matrices act on the right: f |-> (flat row) * M.
struct CoeffVec {
    explicit CoeffVec(int big_n) : flat(2 * (big_n + 1), 0.0) {}

    std::vector<double> flat;

    int blocks() const { return static_cast<int>(flat.size()) / 2; }
    Row2 row(int w) const { return {flat[2 * w], flat[2 * w + 1]}; }
    void set_row(int w, const Row2& r) {
        flat[2 * w] = r[0];
        flat[2 * w + 1] = r[1];
    }
    double norm() const;
};

/// f(x) = sum_w C_w Q_w(x) as a matrix polynomial whose top row carries the
/// function (bottom row zero). The monomial form is only usable at small band
/// limits; evaluate through synthesis_value beyond that.
MatPoly synthesis(const CoeffVec& c, const TBConfig& cfg);

/// Pointwise f(x) by the stable recurrence; works at any band limit.
Row2 synthesis_value(const CoeffVec& c, const TBConfig& cfg, double x);

/// Projection C_w = top row of <f, Q_w> over the full interval. For a proper
/// row-valued f (bottom row zero) this inverts synthesis.
CoeffVec analysis(const MatPoly& f, const TBConfig& cfg);

/// Same projection from samples of a row-valued function at the nodes of a
/// full-interval rule (values[i] pairs with rule.nodes[i]).
CoeffVec analysis_from_samples(const std::vector<Row2>& values, const QuadRule& rule,
                               const TBConfig& cfg);

/// Band-limited reproducing kernel k(x, y) = sum_{w<=N} Q_w(x)^T Q_w(y).
Mat2 kernel_eval(const TBConfig& cfg, double x, double y);

/// Gram matrix M of the truncated inner product, blocks <Q_m, Q_n>_alpha.
/// Flat-symmetric; spectrum lies in [0, 1] up to rounding.
Matrix build_m(const TBConfig& cfg, Exec exec = Exec::parallel);

/// Galerkin matrix B of the commuting operator: blocks <Q_w Dt, Q_j> over the
/// full interval. Hard-errors (std::runtime_error) if the span-invariance
/// coupling <Q_N Dt, Q_{N+1}> exceeds 1e-10 relative to ||B||; tridiagonality
/// and symmetry are reported by verify checks rather than enforced here.
Matrix build_b(const TBConfig& cfg, Exec exec = Exec::parallel);

/// Same, for a caller-supplied operator (mutated controls use this).
Matrix build_b_with(const TBConfig& cfg, const RightDiffOp& op, Exec exec = Exec::parallel,
                    bool enforce_invariance = true);

/// Coupling block norm <Q_N op, Q_{N+1}> relative to the matrix scale.
double span_invariance_residual(const TBConfig& cfg, const RightDiffOp& op);

/// Time-then-band limiting in coefficient space: c |-> c M.
CoeffVec apply_s(const CoeffVec& c, const TBConfig& cfg);

/// ||M B - B M||_F / (||M||_F ||B||_F).
double commutator_residual(const TBConfig& cfg);
double commutator_residual(const Matrix& m, const Matrix& b);

/// Frobenius norm of k(x,.)Dt vs k(.,y)Dt mismatch at (x, y):
///   || (k(x, y)^T) Dt_x - ((k(x, y)) Dt_y)^T ||_F.
/// The contract tolerance scales with 1 + ||k(x, y)||_F.
double kernel_identity_residual(const TBConfig& cfg, double x, double y);

struct ModeRecord {
    int index;              ///< position after sorting by s descending
    double b_eigenvalue;    ///< eigenvalue of B this mode came from
    double s_eigenvalue;    ///< concentration v^T M v in [0, 1]
    double cross_residual;  ///< ||M v - s v||_2
    int cluster;            ///< B-eigenvalue cluster id (ascending order)
};

struct SpectrumReport {
    std::vector<ModeRecord> modes;
    Matrix vectors;  ///< column k = coefficient vector of mode k (s-descending)
    double commutator = 0.0;
    double min_gap_b = 0.0;  ///< min adjacent gap of B eigenvalues / spread
    double min_gap_m = 0.0;  ///< min adjacent gap of s-eigenvalues / spread
    int cluster_count = 0;
    int flagged_clusters = 0;  ///< clusters where M did not diagonalize to 1e-8
};

/// Prolate mode computation through B: eigenvectors of B, concentrations read
/// off via M. B-eigenvalues closer than cluster_tol * ||B||_F are treated as
/// one cluster and M is diagonalized inside the cluster subspace.
SpectrumReport prolate_spectrum(const TBConfig& cfg, double cluster_tol = 1e-8);

struct ReconstructResult {
    CoeffVec coeffs;      ///< recovered expansion of the band-limited function
    int modes_kept;
    int ill_conditioned;  ///< kept modes with s below noise_level^2
    bool warning;         ///< ill_conditioned > 0
    std::optional<double> relative_error;  ///< vs truth when supplied
};

/// Recover band-limited coefficients from noisy samples of the restriction to
/// [-1, alpha]. Samples must sit at the nodes of sample_rule(cfg) (checked):
/// the fit is the least-squares expansion in the top modes_kept prolate modes,
/// i.e. weighted projections divided by the mode concentrations s_k.
ReconstructResult reconstruct(const std::vector<Row2>& samples, const TBConfig& cfg,
                              int modes_kept, double noise_level,
                              const std::optional<CoeffVec>& truth = std::nullopt);

/// The truncated-interval rule whose nodes reconstruct() expects samples at.
const QuadRule& sample_rule(const TBConfig& cfg);

}  // namespace matband
