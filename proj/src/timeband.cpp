#include "matband/timeband.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include "matband/weight.hpp"

namespace matband {

TBConfig::TBConfig(const Params& pr, int big_n_, double alpha_, int quad_order_)
    : params(pr), big_n(big_n_), alpha(alpha_), quad_order(quad_order_) {
    if (big_n < 0) {
        std::ostringstream os;
        os << "TBConfig: band limit " << big_n << " is negative";
        throw std::invalid_argument(os.str());
    }
    if (!(alpha > -1.0) || alpha > 1.0) {
        std::ostringstream os;
        os << "TBConfig: alpha = " << alpha << " outside (-1, 1]";
        throw std::invalid_argument(os.str());
    }
    if (quad_order < 0) throw std::invalid_argument("TBConfig: negative quad_order");
}

int TBConfig::effective_order() const {
    if (quad_order > 0) return quad_order;
    return std::max(2 * big_n + static_cast<int>(std::ceil(params.n)) + 8, 40);
}

const Family& TBConfig::family() const {
    // Lazy but not locked: every parallel entry point touches this once on the
    // calling thread before workers start.
    if (!fam_) {
        fam_ = std::make_shared<Family>(params);
        fam_->prepare(big_n + 1);
    }
    return *fam_;
}

double CoeffVec::norm() const {
    double s = 0.0;
    for (double v : flat) s += v * v;
    return std::sqrt(s);
}

MatPoly synthesis(const CoeffVec& c, const TBConfig& cfg) {
    if (c.blocks() != cfg.big_n + 1)
        throw std::invalid_argument("synthesis: coefficient block count != big_n + 1");
    const Family& fam = cfg.family();
    MatPoly f;
    for (int w = 0; w <= cfg.big_n; ++w) {
        Row2 r = c.row(w);
        f = f + fam.orthonormal(w).mul_left_const(Mat2{r[0], r[1], 0.0, 0.0});
    }
    return f;
}

Row2 synthesis_value(const CoeffVec& c, const TBConfig& cfg, double x) {
    if (c.blocks() != cfg.big_n + 1)
        throw std::invalid_argument("synthesis_value: coefficient block count != big_n + 1");
    FamilyPointValues pv = cfg.family().eval_point(x, cfg.big_n);
    Row2 out{0.0, 0.0};
    for (int w = 0; w <= cfg.big_n; ++w) out = out + c.row(w) * pv.q[w];
    return out;
}

CoeffVec analysis(const MatPoly& f, const TBConfig& cfg) {
    const Family& fam = cfg.family();
    CoeffVec c(cfg.big_n);
    for (int w = 0; w <= cfg.big_n; ++w) {
        Mat2 ip = inner_product(f, fam.orthonormal(w), cfg.params);
        c.set_row(w, Row2{ip.a11, ip.a12});
    }
    return c;
}

CoeffVec analysis_from_samples(const std::vector<Row2>& values, const QuadRule& rule,
                               const TBConfig& cfg) {
    if (values.size() != rule.nodes.size())
        throw std::invalid_argument("analysis_from_samples: sample/node count mismatch");
    if (rule.a != -1.0 || rule.b != 1.0)
        throw std::invalid_argument("analysis_from_samples: rule is not full-interval");
    const Family& fam = cfg.family();
    Weight wt(cfg.params);
    MatPoly v = wt.matrix_part();
    double m_exp = cfg.params.n / 2.0 - 1.0;
    CoeffVec c(cfg.big_n);
    std::vector<double> acc(cfg.flat_dim(), 0.0);
    for (std::size_t i = 0; i < values.size(); ++i) {
        double x = rule.nodes[i];
        // Whatever endpoint weight the rule did not absorb stays in the sum.
        double kept = m_exp == rule.right_exp
                          ? 1.0
                          : std::pow(1.0 - x, m_exp - rule.right_exp);
        kept = m_exp == rule.left_exp ? kept : kept * std::pow(1.0 + x, m_exp - rule.left_exp);
        Mat2 wv = v.eval(x) * kept;
        FamilyPointValues pv = fam.eval_point(x, cfg.big_n);
        for (int w = 0; w <= cfg.big_n; ++w) {
            Row2 t = values[i] * wv * pv.q[w].transpose();
            acc[2 * w] += rule.weights[i] * t[0];
            acc[2 * w + 1] += rule.weights[i] * t[1];
        }
    }
    c.flat = std::move(acc);
    return c;
}

Mat2 kernel_eval(const TBConfig& cfg, double x, double y) {
    FamilyPointValues px = cfg.family().eval_point(x, cfg.big_n);
    FamilyPointValues py = cfg.family().eval_point(y, cfg.big_n);
    Mat2 k = Mat2::zero();
    for (int w = 0; w <= cfg.big_n; ++w) k += px.q[w].transpose() * py.q[w];
    return k;
}

namespace {

// Endpoint weight left in the integrand by a rule that absorbed the rest as
// Jacobi exponents.
double kept_endpoint_factor(const Params& pr, const QuadRule& rule, double x) {
    double m = pr.n / 2.0 - 1.0;
    double kept = 1.0;
    if (m != rule.right_exp) kept *= std::pow(1.0 - x, m - rule.right_exp);
    if (m != rule.left_exp) kept *= std::pow(1.0 + x, m - rule.left_exp);
    return kept;
}

// Values tabulated at the nodes of one rule: lhs[i][w] is Q_w(x_i) or
// (Q_w op)(x_i); wqt[i][j] is W(x_i) Q_j(x_i)^T including the kept endpoint
// factor. Both run one block past big_n for the span-coupling check.
struct NodeTable {
    int nv = 0;
    std::vector<Mat2> lhs, wqt;
};

NodeTable tabulate(const TBConfig& cfg, const QuadRule& rule, const RightDiffOp* op,
                   Exec exec) {
    const Family& fam = cfg.family();
    Weight wt(cfg.params);
    MatPoly v = wt.matrix_part();
    NodeTable t;
    t.nv = cfg.big_n + 2;
    int nn = static_cast<int>(rule.nodes.size());
    t.lhs.resize(static_cast<std::size_t>(nn) * t.nv);
    t.wqt.resize(static_cast<std::size_t>(nn) * t.nv);
    (void)exec;
#ifdef _OPENMP
#pragma omp parallel for schedule(static) if (exec == Exec::parallel)
#endif
    for (int i = 0; i < nn; ++i) {
        double x = rule.nodes[i];
        FamilyPointValues pv = fam.eval_point(x, t.nv - 1, op ? 2 : 0);
        Mat2 wq = v.eval(x) * kept_endpoint_factor(cfg.params, rule, x);
        Mat2 f2, f1, f0;
        if (op) {
            f2 = op->f2.eval(x);
            f1 = op->f1.eval(x);
            f0 = op->f0.eval(x);
        }
        for (int w = 0; w < t.nv; ++w) {
            t.lhs[static_cast<std::size_t>(i) * t.nv + w] =
                op ? Mat2(pv.ddq[w] * f2 + pv.dq[w] * f1 + pv.q[w] * f0) : pv.q[w];
            t.wqt[static_cast<std::size_t>(i) * t.nv + w] = wq * pv.q[w].transpose();
        }
    }
    return t;
}

Matrix blocks_from_table(const NodeTable& t, const QuadRule& rule, int nb, Exec exec) {
    Matrix out(2 * nb);
    int nn = static_cast<int>(rule.nodes.size());
    (void)exec;
#ifdef _OPENMP
#pragma omp parallel for collapse(2) schedule(static) if (exec == Exec::parallel)
#endif
    for (int w = 0; w < nb; ++w) {
        for (int j = 0; j < nb; ++j) {
            Mat2 acc = Mat2::zero();
            for (int i = 0; i < nn; ++i)
                acc += rule.weights[i] * (t.lhs[static_cast<std::size_t>(i) * t.nv + w] *
                                          t.wqt[static_cast<std::size_t>(i) * t.nv + j]);
            out.set_block(w, j, acc);
        }
    }
    return out;
}

Mat2 coupling_from_table(const NodeTable& t, const QuadRule& rule, int big_n) {
    Mat2 acc = Mat2::zero();
    int nn = static_cast<int>(rule.nodes.size());
    for (int i = 0; i < nn; ++i)
        acc += rule.weights[i] * (t.lhs[static_cast<std::size_t>(i) * t.nv + big_n] *
                                  t.wqt[static_cast<std::size_t>(i) * t.nv + big_n + 1]);
    return acc;
}

struct Assembled {
    Matrix mat;
    Mat2 coupling;  // <Q_N op, Q_{N+1}>; zero for plain Gram builds
};

// Regime handling mirrors inner_product: full interval and even n are a
// single exact rule; otherwise the order doubles until two whole matrices
// agree to 1e-12 relative.
Assembled assemble(const TBConfig& cfg, const RightDiffOp* op, double clip, Exec exec) {
    cfg.family();  // materialize before any worker threads exist
    int nb = cfg.big_n + 1;
    int base = cfg.effective_order();

    auto pass = [&](int order) {
        const QuadRule& rule = weight_rule(cfg.params, clip, order);
        NodeTable t = tabulate(cfg, rule, op, exec);
        Assembled a;
        a.mat = blocks_from_table(t, rule, nb, exec);
        a.coupling = op ? coupling_from_table(t, rule, cfg.big_n) : Mat2::zero();
        return a;
    };

    bool exact = clip == kFullInterval ||
                 cfg.params.n / 2.0 == std::floor(cfg.params.n / 2.0);
    if (exact) return pass(base);

    Assembled prev = pass(base);
    Assembled cur = prev;
    int order = base;
    for (int d = 0; d < 6; ++d) {
        if (d > 0) prev = cur;
        order *= 2;
        cur = pass(order);
        double diff = (cur.mat - prev.mat).frobenius() +
                      (cur.coupling - prev.coupling).frobenius();
        if (diff <= 1e-12 * (1.0 + cur.mat.frobenius())) return cur;
    }
    std::ostringstream os;
    os << "assemble: no convergence after 6 order doublings (final order " << order << ")";
    throw std::runtime_error(os.str());
}

}  // namespace

Matrix build_m(const TBConfig& cfg, Exec exec) {
    return assemble(cfg, nullptr, cfg.alpha, exec).mat;
}

Matrix build_b_with(const TBConfig& cfg, const RightDiffOp& op, Exec exec,
                    bool enforce_invariance) {
    Assembled a = assemble(cfg, &op, kFullInterval, exec);
    if (enforce_invariance) {
        double rel = a.coupling.frobenius() / (1.0 + a.mat.frobenius());
        if (rel > 1e-10) {
            std::ostringstream os;
            os << "build_b: operator leaks out of the band-limited span, coupling "
               << rel << " relative to the matrix scale (allowed 1e-10)";
            throw std::runtime_error(os.str());
        }
    }
    return a.mat;
}

Matrix build_b(const TBConfig& cfg, Exec exec) {
    return build_b_with(cfg, op_dtilde(cfg.params, cfg.big_n, cfg.alpha), exec, true);
}

double span_invariance_residual(const TBConfig& cfg, const RightDiffOp& op) {
    Assembled a = assemble(cfg, &op, kFullInterval, Exec::serial);
    return a.coupling.frobenius() / (1.0 + a.mat.frobenius());
}

CoeffVec apply_s(const CoeffVec& c, const TBConfig& cfg) {
    if (c.blocks() != cfg.big_n + 1)
        throw std::invalid_argument("apply_s: coefficient block count != big_n + 1");
    Matrix m = build_m(cfg);
    int dim = cfg.flat_dim();
    CoeffVec out(cfg.big_n);
    for (int j = 0; j < dim; ++j) {
        double s = 0.0;
        for (int i = 0; i < dim; ++i) s += c.flat[i] * m.at(i, j);
        out.flat[j] = s;
    }
    return out;
}

double commutator_residual(const Matrix& m, const Matrix& b) {
    double denom = m.frobenius() * b.frobenius();
    if (denom == 0.0) return 0.0;
    return (m * b - b * m).frobenius() / denom;
}

double commutator_residual(const TBConfig& cfg) {
    return commutator_residual(build_m(cfg), build_b(cfg));
}

double kernel_identity_residual(const TBConfig& cfg, double x, double y) {
    const Family& fam = cfg.family();
    RightDiffOp op = op_dtilde(cfg.params, cfg.big_n, cfg.alpha);
    FamilyPointValues px = fam.eval_point(x, cfg.big_n, 2);
    FamilyPointValues py = fam.eval_point(y, cfg.big_n, 2);
    Mat2 f2x = op.f2.eval(x), f1x = op.f1.eval(x), f0x = op.f0.eval(x);
    Mat2 f2y = op.f2.eval(y), f1y = op.f1.eval(y), f0y = op.f0.eval(y);
    // Apply the operator in either slot of k and compare after a transpose;
    // constants pass through a right-acting operator, so each term is
    // Q_w(other)^T (Q_w op)(slot).
    Mat2 at_x = Mat2::zero(), at_y = Mat2::zero();
    for (int w = 0; w <= cfg.big_n; ++w) {
        Mat2 opx = px.ddq[w] * f2x + px.dq[w] * f1x + px.q[w] * f0x;
        Mat2 opy = py.ddq[w] * f2y + py.dq[w] * f1y + py.q[w] * f0y;
        at_x += py.q[w].transpose() * opx;
        at_y += px.q[w].transpose() * opy;
    }
    return (at_x - at_y.transpose()).frobenius();
}

namespace {

// Deterministic sign: flip each column so its first component of magnitude
// above a relative floor is positive.
void fix_column_sign(Matrix& vecs, int col) {
    int dim = vecs.dim();
    double scale = 0.0;
    for (int i = 0; i < dim; ++i) scale = std::max(scale, std::abs(vecs.at(i, col)));
    if (scale == 0.0) return;
    for (int i = 0; i < dim; ++i) {
        double v = vecs.at(i, col);
        if (std::abs(v) > 1e-12 * scale) {
            if (v < 0.0)
                for (int r = 0; r < dim; ++r) vecs.at(r, col) = -vecs.at(r, col);
            return;
        }
    }
}

}  // namespace

SpectrumReport prolate_spectrum(const TBConfig& cfg, double cluster_tol) {
    Matrix m = build_m(cfg);
    Matrix b = build_b(cfg);
    int dim = cfg.flat_dim();

    EigenResult eb = sym_eig(b);
    double bscale = b.frobenius();

    // Cluster ascending B-eigenvalues by absolute gap.
    std::vector<int> cluster_of(dim, 0);
    int clusters = 1;
    for (int i = 1; i < dim; ++i) {
        if (eb.values[i] - eb.values[i - 1] > cluster_tol * bscale) ++clusters;
        cluster_of[i] = clusters - 1;
    }

    // Concentrations: v^T M v per vector, diagonalizing M inside each cluster
    // subspace so degenerate B-eigenspaces still yield S-eigenvectors.
    std::vector<double> s_of(dim, 0.0);
    double mscale = m.frobenius();
    int flagged = 0;
    Matrix vecs = eb.vectors;
    int start = 0;
    while (start < dim) {
        int stop = start;
        while (stop + 1 < dim && cluster_of[stop + 1] == cluster_of[start]) ++stop;
        int sz = stop - start + 1;
        if (sz == 1) {
            double s = 0.0;
            for (int r = 0; r < dim; ++r) {
                double mv = 0.0;
                for (int c = 0; c < dim; ++c) mv += m.at(r, c) * vecs.at(c, start);
                s += vecs.at(r, start) * mv;
            }
            s_of[start] = s;
        } else {
            Matrix msub(sz);
            std::vector<double> mv(dim);
            for (int a = 0; a < sz; ++a) {
                for (int r = 0; r < dim; ++r) {
                    double acc = 0.0;
                    for (int c = 0; c < dim; ++c) acc += m.at(r, c) * vecs.at(c, start + a);
                    mv[r] = acc;
                }
                for (int bcol = 0; bcol < sz; ++bcol) {
                    double acc = 0.0;
                    for (int r = 0; r < dim; ++r) acc += vecs.at(r, start + bcol) * mv[r];
                    msub.at(a, bcol) = acc;
                }
            }
            EigenResult es = sym_eig(msub);
            Matrix rotated(dim);
            for (int r = 0; r < dim; ++r)
                for (int a = 0; a < sz; ++a) {
                    double acc = 0.0;
                    for (int k = 0; k < sz; ++k)
                        acc += vecs.at(r, start + k) * es.vectors.at(k, a);
                    rotated.at(r, a) = acc;
                }
            for (int a = 0; a < sz; ++a) {
                for (int r = 0; r < dim; ++r) vecs.at(r, start + a) = rotated.at(r, a);
                s_of[start + a] = es.values[a];
            }
        }
        start = stop + 1;
    }

    // Cross residuals against M; a cluster whose rotation still leaves a large
    // residual means M and B failed to commute there.
    std::vector<double> cross(dim, 0.0);
    std::vector<bool> cluster_bad(static_cast<std::size_t>(clusters), false);
    for (int k = 0; k < dim; ++k) {
        fix_column_sign(vecs, k);
        double acc = 0.0;
        for (int r = 0; r < dim; ++r) {
            double mv = 0.0;
            for (int c = 0; c < dim; ++c) mv += m.at(r, c) * vecs.at(c, k);
            double d = mv - s_of[k] * vecs.at(r, k);
            acc += d * d;
        }
        cross[k] = std::sqrt(acc);
        if (cross[k] > 1e-8 * (1.0 + mscale)) cluster_bad[cluster_of[k]] = true;
    }
    for (bool bad : cluster_bad) flagged += bad ? 1 : 0;

    // Sort by concentration, most concentrated first; ties break on the B
    // eigenvalue so the order is reproducible.
    std::vector<int> perm(dim);
    std::iota(perm.begin(), perm.end(), 0);
    std::stable_sort(perm.begin(), perm.end(), [&](int a, int bb) {
        if (s_of[a] != s_of[bb]) return s_of[a] > s_of[bb];
        return eb.values[a] < eb.values[bb];
    });

    SpectrumReport rep;
    rep.vectors = Matrix(dim);
    for (int k = 0; k < dim; ++k) {
        int src = perm[k];
        rep.modes.push_back(
            ModeRecord{k, eb.values[src], s_of[src], cross[src], cluster_of[src]});
        for (int r = 0; r < dim; ++r) rep.vectors.at(r, k) = vecs.at(r, src);
    }
    rep.commutator = commutator_residual(m, b);
    rep.cluster_count = clusters;
    rep.flagged_clusters = flagged;

    auto min_rel_gap = [](const std::vector<double>& v) {
        if (v.size() < 2) return 0.0;
        double lo = *std::min_element(v.begin(), v.end());
        double hi = *std::max_element(v.begin(), v.end());
        double spread = hi - lo;
        if (spread == 0.0) return 0.0;
        std::vector<double> s(v);
        std::sort(s.begin(), s.end());
        double g = spread;
        for (std::size_t i = 1; i < s.size(); ++i) g = std::min(g, s[i] - s[i - 1]);
        return g / spread;
    };
    rep.min_gap_b = min_rel_gap(eb.values);
    rep.min_gap_m = min_rel_gap(s_of);
    return rep;
}

const QuadRule& sample_rule(const TBConfig& cfg) {
    return weight_rule(cfg.params, cfg.alpha, cfg.effective_order());
}

ReconstructResult reconstruct(const std::vector<Row2>& samples, const TBConfig& cfg,
                              int modes_kept, double noise_level,
                              const std::optional<CoeffVec>& truth) {
    if (modes_kept < 1) throw std::invalid_argument("reconstruct: modes_kept < 1");
    const QuadRule& rule = sample_rule(cfg);
    if (samples.size() != rule.nodes.size()) {
        std::ostringstream os;
        os << "reconstruct: got " << samples.size() << " samples but the sampling rule has "
           << rule.nodes.size() << " nodes";
        throw std::invalid_argument(os.str());
    }

    int dim = cfg.flat_dim();
    int kept = std::min(modes_kept, dim);
    SpectrumReport rep = prolate_spectrum(cfg);
    const Family& fam = cfg.family();
    Weight wt(cfg.params);
    MatPoly v = wt.matrix_part();

    // Weighted samples and mode values at the nodes, shared by every mode
    // projection below.
    int nn = static_cast<int>(rule.nodes.size());
    std::vector<Row2> yw(nn);
    std::vector<Mat2> qv(static_cast<std::size_t>(nn) * (cfg.big_n + 1));
    for (int i = 0; i < nn; ++i) {
        double x = rule.nodes[i];
        yw[i] = samples[i] * Mat2(v.eval(x) * kept_endpoint_factor(cfg.params, rule, x));
        FamilyPointValues pv = fam.eval_point(x, cfg.big_n);
        for (int w = 0; w <= cfg.big_n; ++w)
            qv[static_cast<std::size_t>(i) * (cfg.big_n + 1) + w] = pv.q[w];
    }

    ReconstructResult res{CoeffVec(cfg.big_n), kept, 0, false, std::nullopt};
    for (int k = 0; k < kept; ++k) {
        // phi_k(x) = sum_w c_w Q_w(x) with c_w the k-th column blocks; the
        // recovered amplitude is <y, phi_k>_alpha / s_k.
        double d = 0.0;
        for (int i = 0; i < nn; ++i) {
            Row2 phi{0.0, 0.0};
            for (int w = 0; w <= cfg.big_n; ++w) {
                const Mat2& q = qv[static_cast<std::size_t>(i) * (cfg.big_n + 1) + w];
                double c0 = rep.vectors.at(2 * w, k);
                double c1 = rep.vectors.at(2 * w + 1, k);
                phi[0] += c0 * q.a11 + c1 * q.a21;
                phi[1] += c0 * q.a12 + c1 * q.a22;
            }
            d += rule.weights[i] * (yw[i][0] * phi[0] + yw[i][1] * phi[1]);
        }
        double s = rep.modes[k].s_eigenvalue;
        if (s < noise_level * noise_level) ++res.ill_conditioned;
        double a = d / s;
        for (int r = 0; r < dim; ++r) res.coeffs.flat[r] += a * rep.vectors.at(r, k);
    }
    res.warning = res.ill_conditioned > 0;

    if (truth) {
        if (truth->blocks() != cfg.big_n + 1)
            throw std::invalid_argument("reconstruct: truth block count != big_n + 1");
        double num = 0.0;
        for (int r = 0; r < dim; ++r) {
            double dlt = res.coeffs.flat[r] - truth->flat[r];
            num += dlt * dlt;
        }
        double den = truth->norm();
        res.relative_error = den == 0.0 ? std::sqrt(num) : std::sqrt(num) / den;
    }
    return res;
}

}  // namespace matband
