#pragma once

// Truncated real Jacobi operators from the orthonormalized recurrence, their
// joint eigenvalues (the m(m+1)/2 common zeros), Gaussian weights, and the
// degree-(2m−1) exactness verification.

#include <Eigen/Dense>

#include <algorithm>
#include <array>
#include <cmath>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "cubature2d/families.hpp"
#include "cubature2d/moments.hpp"

namespace c2d {

// Invalid parameter regime or a failed numerical certificate: CLI exit 1.
struct RegimeRefusal : std::runtime_error {
    int degree;
    RegimeRefusal(std::string msg, int n) : std::runtime_error(std::move(msg)), degree(n) {}
};

// Malformed request (degenerate parameters, bad literals): CLI exit 2.
struct UsageError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

inline Eigen::MatrixXcd to_eigen(const CMatrix<CD>& m) {
    Eigen::MatrixXcd e(m.rows(), m.cols());
    for (int i = 0; i < m.rows(); ++i)
        for (int j = 0; j < m.cols(); ++j) e(i, j) = m(i, j);
    return e;
}

inline CMatrix<CD> from_eigen(const Eigen::MatrixXcd& e) {
    CMatrix<CD> m(int(e.rows()), int(e.cols()));
    for (int i = 0; i < e.rows(); ++i)
        for (int j = 0; j < e.cols(); ++j) m(i, j) = e(i, j);
    return m;
}

// Principal Hermitian square root and its inverse via eigendecomposition.
// force_semidefinite substitutes |λ| for negative eigenvalues (only used when
// the caller explicitly asked to push past a failed positivity probe).
inline std::pair<CMatrix<CD>, CMatrix<CD>> hermitian_sqrt_pair(const CMatrix<CD>& h,
                                                               bool force_semidefinite,
                                                               int degree) {
    Eigen::MatrixXcd e = to_eigen(h);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(e);
    if (es.info() != Eigen::Success)
        throw RegimeRefusal("eigendecomposition of Gram matrix failed", degree);
    Eigen::VectorXd ev = es.eigenvalues();
    double top = ev.cwiseAbs().maxCoeff();
    Eigen::VectorXd rt(ev.size()), irt(ev.size());
    for (int i = 0; i < ev.size(); ++i) {
        double v = ev(i);
        if (v <= 1e-14 * std::max(1.0, top)) {
            if (!force_semidefinite)
                throw RegimeRefusal("Gram matrix not positive definite", degree);
            v = std::abs(v);
            if (v <= 1e-14 * std::max(1.0, top)) v = 1e-14 * std::max(1.0, top);
        }
        rt(i) = std::sqrt(v);
        irt(i) = 1.0 / rt(i);
    }
    Eigen::MatrixXcd u = es.eigenvectors();
    return {from_eigen(u * rt.asDiagonal() * u.adjoint()),
            from_eigen(u * irt.asDiagonal() * u.adjoint())};
}

// Orthonormalized recurrence coefficients through degree m_used:
//   alpha_t[n] = H_n^{-1/2} alpha_n H_{n+1}^{1/2}   (n = 0 … m_used-1)
//   beta_t[n]  = H_n^{-1/2} beta_n  H_n^{1/2}       (n = 0 … m_used-1)
//   gamma_t[n] = H_n^{-1/2} gamma_n H_{n-1}^{1/2}   (n = 1 … m_used-1)
// and the Hermitian roots themselves (needed later for evaluation).
struct OrthonormalCoeffs {
    int m_used = 0;
    std::vector<CMatrix<CD>> alpha_t, beta_t, gamma_t, hsqrt, hisqrt;
    double adjoint_residual = 0.0;  // max ||gamma_t[n] − (alpha_t[n-1]^*)^∨||
};

inline OrthonormalCoeffs orthonormalize(const std::vector<ThreeTermCoeffs<CD>>& coeffs,
                                        const GramSequence<CD>& grams, int m_used,
                                        bool force_semidefinite = false) {
    if (m_used < 1) throw std::invalid_argument("orthonormalize needs m >= 1");
    if (int(coeffs.size()) < m_used || grams.n_max() < m_used)
        throw std::invalid_argument("insufficient depth for orthonormalize");
    OrthonormalCoeffs o;
    o.m_used = m_used;
    o.hsqrt.resize(m_used + 1);
    o.hisqrt.resize(m_used + 1);
    for (int n = 0; n <= m_used; ++n) {
        auto [rt, irt] = hermitian_sqrt_pair(grams.H[n], force_semidefinite, n);
        o.hsqrt[n] = std::move(rt);
        o.hisqrt[n] = std::move(irt);
    }
    o.alpha_t.resize(m_used);
    o.beta_t.resize(m_used);
    o.gamma_t.resize(m_used);
    for (int n = 0; n < m_used; ++n) {
        o.alpha_t[n] = o.hisqrt[n] * coeffs[n].alpha * o.hsqrt[n + 1];
        o.beta_t[n] = o.hisqrt[n] * coeffs[n].beta * o.hsqrt[n];
        if (n >= 1) o.gamma_t[n] = o.hisqrt[n] * coeffs[n].gamma * o.hsqrt[n - 1];
    }
    for (int n = 1; n < m_used; ++n) {
        CMatrix<CD> want = o.alpha_t[n - 1].conj_transpose().vee();
        o.adjoint_residual = std::max(o.adjoint_residual, (o.gamma_t[n] - want).max_abs());
    }
    return o;
}

// Truncated multiplication operators by x and y in the rotated real
// orthonormal basis: block-tridiagonal real symmetric N×N, N = m(m+1)/2.
struct JacobiPair {
    int m = 0, N = 0;
    Eigen::MatrixXd T1, T2;
    double build_residual = 0.0;  // realness + symmetry defect before symmetrizing

    double scaled_commutator() const {
        double n1 = T1.norm(), n2 = T2.norm();
        Eigen::MatrixXd c = T1 * T2 - T2 * T1;
        return c.cwiseAbs().maxCoeff() / std::max(1e-300, n1 * n2);
    }
};

inline JacobiPair build_jacobi(int m, const OrthonormalCoeffs& o) {
    if (m < 1 || o.m_used < m) throw std::invalid_argument("build_jacobi needs depth >= m");
    JacobiPair jp;
    jp.m = m;
    jp.N = m * (m + 1) / 2;
    jp.T1 = Eigen::MatrixXd::Zero(jp.N, jp.N);
    jp.T2 = Eigen::MatrixXd::Zero(jp.N, jp.N);
    std::vector<CMatrix<CD>> s(m + 1);
    for (int n = 0; n <= m; ++n) s[n] = s_matrix(n);
    std::vector<int> off(m + 1, 0);
    for (int n = 0; n < m; ++n) off[n + 1] = off[n] + (n + 1);

    const CD half(0.5, 0.0), ihalf(0.0, -0.5);  // 1/(2i) = -i/2
    double defect = 0.0;
    auto place = [&](Eigen::MatrixXd& t, const CMatrix<CD>& blk, int r0, int c0) {
        for (int i = 0; i < blk.rows(); ++i)
            for (int j = 0; j < blk.cols(); ++j) {
                defect = std::max(defect, std::abs(blk(i, j).imag()));
                t(r0 + i, c0 + j) = blk(i, j).real();
            }
    };
    for (int n = 0; n < m; ++n) {
        CMatrix<CD> bx = s[n] * (o.beta_t[n] + o.beta_t[n].vee()).scaled(half) *
                         s[n].conj_transpose();
        CMatrix<CD> by = s[n] * (o.beta_t[n] - o.beta_t[n].vee()).scaled(ihalf) *
                         s[n].conj_transpose();
        place(jp.T1, bx, off[n], off[n]);
        place(jp.T2, by, off[n], off[n]);
    }
    for (int n = 0; n + 1 < m; ++n) {
        CMatrix<CD> ax = s[n] * (o.alpha_t[n] + o.alpha_t[n].vee()).scaled(half) *
                         s[n + 1].conj_transpose();
        CMatrix<CD> ay = s[n] * (o.alpha_t[n] - o.alpha_t[n].vee()).scaled(ihalf) *
                         s[n + 1].conj_transpose();
        place(jp.T1, ax, off[n], off[n + 1]);
        place(jp.T2, ay, off[n], off[n + 1]);
        // lower blocks from the gamma route must agree with the transposes
        CMatrix<CD> cx = s[n + 1] * (o.gamma_t[n + 1] + o.gamma_t[n + 1].vee()).scaled(half) *
                         s[n].conj_transpose();
        CMatrix<CD> cy = s[n + 1] * (o.gamma_t[n + 1] - o.gamma_t[n + 1].vee()).scaled(ihalf) *
                         s[n].conj_transpose();
        place(jp.T1, cx, off[n + 1], off[n]);
        place(jp.T2, cy, off[n + 1], off[n]);
    }
    Eigen::MatrixXd s1 = jp.T1 - jp.T1.transpose(), s2 = jp.T2 - jp.T2.transpose();
    defect = std::max({defect, s1.cwiseAbs().maxCoeff(), s2.cwiseAbs().maxCoeff()});
    jp.build_residual = defect;
    jp.T1 = ((jp.T1 + jp.T1.transpose()) * 0.5).eval();
    jp.T2 = ((jp.T2 + jp.T2.transpose()) * 0.5).eval();
    return jp;
}

struct ZeroSet {
    std::vector<std::array<double, 2>> nodes;
    std::vector<double> first_components;  // of the orthonormal eigenvectors
    double max_residual = 0.0;             // joint-eigenvector certificate
    double t_scale = 0.0;
};

// Joint eigenvalues via the fixed mixing T = T1 + √2·T2: for each unit
// eigenvector v the node is (vᵗT1v, vᵗT2v) and the residual certifies that v
// is a joint eigenvector of the commuting pair.
inline ZeroSet common_zeros(const JacobiPair& jp) {
    Eigen::MatrixXd t = jp.T1 + std::sqrt(2.0) * jp.T2;
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(t);
    if (es.info() != Eigen::Success)
        throw RegimeRefusal("joint eigendecomposition failed", jp.m);
    ZeroSet z;
    z.t_scale = std::max({1e-300, jp.T1.norm(), jp.T2.norm()});
    const Eigen::MatrixXd& u = es.eigenvectors();
    for (int k = 0; k < jp.N; ++k) {
        Eigen::VectorXd v = u.col(k);
        double x = v.dot(jp.T1 * v), y = v.dot(jp.T2 * v);
        double r1 = (jp.T1 * v - x * v).norm(), r2 = (jp.T2 * v - y * v).norm();
        z.max_residual = std::max(z.max_residual, std::max(r1, r2));
        z.nodes.push_back({x, y});
        z.first_components.push_back(v(0));
    }
    return z;
}

// Gaussian weights: squared first eigenvector component times L(1) = 1.
inline std::vector<double> weights_from_zeroset(const ZeroSet& z) {
    std::vector<double> w(z.first_components.size());
    for (size_t k = 0; k < w.size(); ++k)
        w[k] = z.first_components[k] * z.first_components[k];
    return w;
}

// Christoffel cross-check: 1 / Σ_{n<m} ||Q̃_n(node)||² recomputed from the
// orthonormalized family evaluated at each node; returns the max relative
// disagreement against the supplied weights.
inline double christoffel_check(const PolyFamily<CD>& fam, const OrthonormalCoeffs& o,
                                int m, const std::vector<std::array<double, 2>>& nodes,
                                const std::vector<double>& w) {
    double worst = 0.0;
    for (size_t t = 0; t < nodes.size(); ++t) {
        CD zval(nodes[t][0], nodes[t][1]);
        double sum = 0.0;
        for (int n = 0; n < m; ++n) {
            std::vector<CD> q(n + 1);
            for (int k = 0; k <= n; ++k) q[k] = fam.at(n, k).eval(zval);
            std::vector<CD> qt = o.hisqrt[n].mul_vec(q);
            for (const CD& v : qt) sum += std::norm(v);
        }
        double lam = 1.0 / sum;
        worst = std::max(worst, std::abs(lam - w[t]) / std::max(1e-300, std::abs(w[t])));
    }
    return worst;
}

struct RuleDiagnostics {
    std::string regime;
    bool forced = false;
    std::optional<int> posdef_fail_degree;
    double adjoint_residual = 0.0;
    double jacobi_build_residual = 0.0;
    double commutator_scaled = 0.0;
    double max_joint_residual = 0.0;  // already scaled by ||T||
    double sum_weights = 0.0;
    double min_weight = 0.0;
    double min_node_separation = 0.0;
    double node_diameter = 0.0;
    double christoffel_max_rel = 0.0;
    double max_qm_at_nodes_scaled = 0.0;  // common-zero certificate
};

struct CubatureRule {
    int m = 0;
    GQ a, c;
    std::vector<std::array<double, 2>> nodes;
    std::vector<double> weights;
    RuleDiagnostics diag;
};

struct RuleOptions {
    bool exact_structure = true;  // grams/moments over GQ, converted once
    bool force = false;
    int probe_depth = -1;  // default: m
};

template <class K>
PolyFamily<CD> family_to_cd(const PolyFamily<K>& f) {
    PolyFamily<CD> r;
    r.kind = f.kind;
    r.a = to_cd(f.a);
    r.c = to_cd(f.c);
    r.table.resize(f.table.size());
    for (size_t m = 0; m < f.table.size(); ++m)
        for (const auto& p : f.table[m]) r.table[m].push_back(poly_to_cd(p));
    return r;
}

inline GramSequence<CD> grams_to_cd(const GramSequence<GQ>& g) {
    GramSequence<CD> r;
    r.a = g.a.to_cd();
    r.c = g.c.to_cd();
    r.alpha_param = g.alpha_param.to_cd();
    r.beta_param = g.beta_param.to_cd();
    for (const auto& h : g.H) r.H.push_back(matrix_to_cd(h));
    return r;
}

// End-to-end construction. Structure (family, moments, Grams, the positivity
// probe) runs exactly over GQ by default; the eigenvalue stage is numeric.
inline CubatureRule make_rule(int m, const GQ& a, const GQ& c,
                              const RuleOptions& opt = {}) {
    if (m < 1) throw UsageError("rule degree parameter m must be >= 1");
    ParamRegime regime = param_classify(a, c);
    if (regime == ParamRegime::Degenerate)
        throw UsageError("degenerate parameters: a and c must both be nonzero");

    CubatureRule rule;
    rule.m = m;
    rule.a = a;
    rule.c = c;
    rule.diag.regime = regime_name(regime);
    rule.diag.forced = opt.force;

    const int depth = opt.probe_depth >= 0 ? opt.probe_depth : m;

    // structure
    std::vector<ThreeTermCoeffs<CD>> coeffs_cd;
    GramSequence<CD> grams_cd;
    PolyFamily<CD> fam_cd;
    std::optional<int> fail;
    if (opt.exact_structure) {
        auto [fam, coeffs] = gen_Q<GQ>(m, a, c);
        auto mu = build_moments<GQ>(2 * m, a, c);
        auto grams = gram_sequence_from_moments(m, fam, mu);
        for (int n = 0; n <= depth && n <= m; ++n)
            if (!is_positive_definite(grams.H[n])) {
                fail = n;
                break;
            }
        fam_cd = family_to_cd(fam);
        grams_cd = grams_to_cd(grams);
        for (const auto& t : coeffs) {
            ThreeTermCoeffs<CD> tc;
            tc.m = t.m;
            tc.alpha = matrix_to_cd(t.alpha);
            tc.beta = matrix_to_cd(t.beta);
            tc.gamma = matrix_to_cd(t.gamma);
            coeffs_cd.push_back(std::move(tc));
        }
    } else {
        CD acd = a.to_cd(), ccd = c.to_cd();
        auto [fam, coeffs] = gen_Q<CD>(m, acd, ccd);
        auto mu = build_moments<CD>(2 * m, acd, ccd);
        grams_cd = gram_sequence_from_moments(m, fam, mu);
        for (int n = 0; n <= depth && n <= m; ++n)
            if (!is_positive_definite(grams_cd.H[n])) {
                fail = n;
                break;
            }
        fam_cd = fam;
        coeffs_cd = coeffs;
    }
    rule.diag.posdef_fail_degree = fail;
    if (fail && !opt.force)
        throw RegimeRefusal("Gram matrix H_" + std::to_string(*fail) +
                                " is not positive definite (regime: " +
                                rule.diag.regime + ")",
                            *fail);

    // numeric stage
    OrthonormalCoeffs onc = orthonormalize(coeffs_cd, grams_cd, m, opt.force);
    rule.diag.adjoint_residual = onc.adjoint_residual;
    JacobiPair jp = build_jacobi(m, onc);
    rule.diag.jacobi_build_residual = jp.build_residual;
    rule.diag.commutator_scaled = jp.scaled_commutator();
    ZeroSet zs = common_zeros(jp);
    rule.diag.max_joint_residual = zs.max_residual / zs.t_scale;
    std::vector<double> w = weights_from_zeroset(zs);

    // deterministic ordering: lexicographic by x, ties by y
    std::vector<int> order(zs.nodes.size());
    for (size_t i = 0; i < order.size(); ++i) order[i] = int(i);
    std::sort(order.begin(), order.end(), [&](int i, int j) {
        if (zs.nodes[i][0] != zs.nodes[j][0]) return zs.nodes[i][0] < zs.nodes[j][0];
        return zs.nodes[i][1] < zs.nodes[j][1];
    });
    for (int i : order) {
        rule.nodes.push_back(zs.nodes[i]);
        rule.weights.push_back(w[i]);
    }

    rule.diag.sum_weights = 0.0;
    rule.diag.min_weight = rule.weights.empty() ? 0.0 : rule.weights[0];
    for (double v : rule.weights) {
        rule.diag.sum_weights += v;
        rule.diag.min_weight = std::min(rule.diag.min_weight, v);
    }
    double mind = -1.0, maxd = 0.0;
    for (size_t i = 0; i < rule.nodes.size(); ++i)
        for (size_t j = i + 1; j < rule.nodes.size(); ++j) {
            double dx = rule.nodes[i][0] - rule.nodes[j][0];
            double dy = rule.nodes[i][1] - rule.nodes[j][1];
            double d = std::hypot(dx, dy);
            if (mind < 0 || d < mind) mind = d;
            maxd = std::max(maxd, d);
        }
    rule.diag.min_node_separation = mind < 0 ? 0.0 : mind;
    rule.diag.node_diameter = maxd;
    rule.diag.christoffel_max_rel = christoffel_check(fam_cd, onc, m, rule.nodes, rule.weights);

    // common-zero certificate: every Q_k^m vanishes at every node
    double worst = 0.0;
    for (int k = 0; k <= m; ++k) {
        const BivarPoly<CD>& q = fam_cd.at(m, k);
        double scale = std::max(1e-300, q.max_coeff_abs());
        for (const auto& nd : rule.nodes)
            worst = std::max(worst, std::abs(q.eval(CD(nd[0], nd[1]))) / scale);
    }
    rule.diag.max_qm_at_nodes_scaled = worst;
    return rule;
}

// Max relative exactness error over all monomials z^j z̄^k, j+k <= 2m−1
// (absolute error where the reference moment is below 1e−12).
template <class K>
double verify_exactness(const CubatureRule& rule, const MomentTable<K>& mu) {
    const int cap = 2 * rule.m - 1;
    if (mu.degree_cap < cap) throw std::invalid_argument("insufficient moment depth");
    double worst = 0.0;
    for (int j = 0; j <= cap; ++j)
        for (int k = 0; j + k <= cap; ++k) {
            CD s(0.0, 0.0);
            for (size_t t = 0; t < rule.nodes.size(); ++t) {
                CD zv(rule.nodes[t][0], rule.nodes[t][1]);
                s += rule.weights[t] * pow_of(zv, j) * pow_of(std::conj(zv), k);
            }
            CD ref = to_cd(mu.at(j, k));
            double err = std::abs(s - ref);
            if (std::abs(ref) >= 1e-12) err /= std::abs(ref);
            worst = std::max(worst, err);
        }
    return worst;
}

// Deltoid membership bracket: g(x, y) = −3(x²+y²+1)² + 8(x³−3xy²) + 4; the
// (closed) region is g >= 0, and the a = c nodes scaled by 1/3 must satisfy it.
inline double deltoid_g(double x, double y) {
    double r2 = x * x + y * y;
    return -3.0 * (r2 + 1.0) * (r2 + 1.0) + 8.0 * (x * x * x - 3.0 * x * y * y) + 4.0;
}

}  // namespace c2d
