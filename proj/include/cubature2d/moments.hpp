#pragma once

// The moment functional L, its Gram matrices H_n (closed form and the
// independent moment route), parameter-regime classification, and the
// positive-definiteness probe.

#include <optional>
#include <stdexcept>
#include <vector>

#include "cubature2d/cmatrix.hpp"
#include "cubature2d/families.hpp"
#include "cubature2d/poly.hpp"

namespace c2d {

// Expansion of a polynomial over the Q-basis: lev[n][k] is the coefficient of
// Q_k^n. Multiplication by z and z̄ acts through the recurrence coefficients,
// which is how moments are generated without ever integrating anything.
template <class K>
struct QExpansion {
    std::vector<std::vector<K>> lev;

    static QExpansion unit() {
        QExpansion e;
        e.lev = {{scalar_from_int<K>(1)}};
        return e;
    }
    int top() const { return int(lev.size()) - 1; }
};

namespace detail {

// expansion of z*f (or z̄*f for vee = true) from the expansion of f:
// the level-n slice contributes alpha_n^t v to level n+1, beta_n^t v to level
// n, gamma_n^t v to level n-1 (vee-transformed matrices for z̄).
template <class K>
QExpansion<K> shift_expansion(const QExpansion<K>& f,
                              const std::vector<ThreeTermCoeffs<K>>& coeffs, bool vee) {
    const int t = f.top();
    if (int(coeffs.size()) <= t)
        throw std::invalid_argument("insufficient recurrence depth");
    QExpansion<K> g;
    g.lev.assign(t + 2, {});
    for (int n = 0; n <= t + 1; ++n) g.lev[n].assign(n + 1, K{});
    for (int n = 0; n <= t; ++n) {
        const auto& v = f.lev[n];
        if (int(v.size()) != n + 1) throw std::logic_error("ragged expansion");
        const auto& tt = coeffs[n];
        // alpha = [I | 0]; alpha-vee = [0 | I]
        for (int k = 0; k <= n; ++k) {
            if (exactly_zero(v[k])) continue;
            g.lev[n + 1][vee ? k + 1 : k] += v[k];
        }
        CMatrix<K> beta = vee ? tt.beta.vee() : tt.beta;
        for (int i = 0; i <= n; ++i) {
            if (exactly_zero(v[i])) continue;
            for (int j = 0; j <= n; ++j)
                if (!exactly_zero(beta(i, j))) g.lev[n][j] += beta(i, j) * v[i];
        }
        if (n >= 1) {
            CMatrix<K> gamma = vee ? tt.gamma.vee() : tt.gamma;
            for (int i = 0; i <= n; ++i) {
                if (exactly_zero(v[i])) continue;
                for (int j = 0; j < n; ++j)
                    if (!exactly_zero(gamma(i, j))) g.lev[n - 1][j] += gamma(i, j) * v[i];
            }
        }
    }
    return g;
}

}  // namespace detail

// mu[j][k] = L(z^j z̄^k) for j+k <= degree_cap, with L normalized by L(1) = 1.
template <class K>
struct MomentTable {
    int degree_cap = 0;
    std::vector<std::vector<K>> mu;  // mu[j][k], j + k <= degree_cap

    const K& at(int j, int k) const {
        if (j < 0 || k < 0 || j + k > degree_cap)
            throw std::out_of_range("moment outside table");
        return mu[j][k];
    }
};

template <class K>
MomentTable<K> build_moments(int degree_cap, const K& a, const K& c) {
    if (degree_cap < 0) throw std::invalid_argument("build_moments needs degree_cap >= 0");
    std::vector<ThreeTermCoeffs<K>> coeffs;
    for (int n = 0; n <= degree_cap; ++n) coeffs.push_back(three_term_coeffs<K>(n, a, c));
    MomentTable<K> t;
    t.degree_cap = degree_cap;
    t.mu.assign(degree_cap + 1, {});
    for (int j = 0; j <= degree_cap; ++j) t.mu[j].assign(degree_cap + 1 - j, K{});
    QExpansion<K> row = QExpansion<K>::unit();  // expansion of z^j
    for (int j = 0; j <= degree_cap; ++j) {
        QExpansion<K> cell = row;  // expansion of z^j z̄^k
        for (int k = 0; j + k <= degree_cap; ++k) {
            t.mu[j][k] = cell.lev[0][0];
            if (j + k < degree_cap) cell = detail::shift_expansion(cell, coeffs, true);
        }
        if (j < degree_cap) row = detail::shift_expansion(row, coeffs, false);
    }
    return t;
}

// L(z^j z̄^k) from a caller-supplied coefficient list (depth >= j+k).
template <class K>
K monomial_moment(int j, int k, const std::vector<ThreeTermCoeffs<K>>& coeffs) {
    if (j < 0 || k < 0) throw std::invalid_argument("monomial_moment needs j, k >= 0");
    if (int(coeffs.size()) < j + k) throw std::invalid_argument("insufficient recurrence depth");
    QExpansion<K> e = QExpansion<K>::unit();
    for (int s = 0; s < j; ++s) e = detail::shift_expansion(e, coeffs, false);
    for (int s = 0; s < k; ++s) e = detail::shift_expansion(e, coeffs, true);
    return e.lev[0][0];
}

// L applied to an arbitrary polynomial, term by term.
template <class K>
K functional_value(const BivarPoly<K>& p, const MomentTable<K>& mu) {
    K acc{};
    for (const auto& [e, coef] : p.terms()) acc += coef * mu.at(e.first, e.second);
    return acc;
}

// Closed-form Gram matrices. H_0 = [1] and H_1 = |a|² I; from degree 2 on the
// matrix is Toeplitz along multiples-of-3 off-diagonals with geometrically
// decaying weights:
//
//   (H_n)_{i,i+3t} = |a|² α · β^t · |c|^{2(n−2−t)},   α = |c|²−|a−c|², β = c(c−a),
//
// with the conjugate below the diagonal. The t = 0 band gives the familiar
// diagonal |a|² α |c|^{2(n−2)}; the t ≥ 2 bands first appear at degree 6 and
// are forced by the band recursion between H_{n−1} and H_n.
template <class K>
CMatrix<K> gram_closed(int n, const K& a, const K& c) {
    if (n < 0) throw std::invalid_argument("gram_closed needs n >= 0");
    const K one = scalar_from_int<K>(1);
    const K aa = a * conj_of(a);
    const K alpha = c * conj_of(c) - (a - c) * conj_of(a - c);
    const K beta = c * (c - a);
    CMatrix<K> h(n + 1, n + 1);
    if (n == 0) {
        h(0, 0) = one;
        return h;
    }
    if (n == 1) {
        h(0, 0) = aa;
        h(1, 1) = aa;
        return h;
    }
    const K cc = c * conj_of(c);
    for (int t = 0; 3 * t <= n; ++t) {
        K band = aa * alpha * pow_of(beta, t) * pow_of(cc, n - 2 - t);
        K band_conj = conj_of(band);
        for (int i = 0; i + 3 * t <= n; ++i) {
            h(i, i + 3 * t) = band;
            if (t > 0) h(i + 3 * t, i) = band_conj;
        }
    }
    return h;
}

// Independent Gram route: (H_n)_{jk} = L(Q_j^n · conj_reflect(Q_k^n)).
template <class K>
CMatrix<K> gram_from_moments(int n, const PolyFamily<K>& qfam, const MomentTable<K>& mu) {
    if (n < 0 || n > qfam.m_max()) throw std::invalid_argument("gram degree out of range");
    if (mu.degree_cap < 2 * n) throw std::invalid_argument("insufficient moment depth");
    CMatrix<K> h(n + 1, n + 1);
    for (int j = 0; j <= n; ++j)
        for (int k = 0; k <= n; ++k)
            h(j, k) = functional_value(qfam.at(n, j) * qfam.at(n, k).conj_reflect(), mu);
    return h;
}

template <class K>
struct GramSequence {
    K a{}, c{};
    K alpha_param{};  // |c|² − |a−c|², real
    K beta_param{};   // c(c−a)
    std::vector<CMatrix<K>> H;

    int n_max() const { return int(H.size()) - 1; }
};

template <class K>
GramSequence<K> gram_sequence_closed(int n_max, const K& a, const K& c) {
    GramSequence<K> g;
    g.a = a;
    g.c = c;
    g.alpha_param = c * conj_of(c) - (a - c) * conj_of(a - c);
    g.beta_param = c * (c - a);
    for (int n = 0; n <= n_max; ++n) g.H.push_back(gram_closed(n, a, c));
    return g;
}

template <class K>
GramSequence<K> gram_sequence_from_moments(int n_max, const PolyFamily<K>& qfam,
                                           const MomentTable<K>& mu) {
    GramSequence<K> g;
    g.a = qfam.a;
    g.c = qfam.c;
    g.alpha_param =
        qfam.c * conj_of(qfam.c) - (qfam.a - qfam.c) * conj_of(qfam.a - qfam.c);
    g.beta_param = qfam.c * (qfam.c - qfam.a);
    for (int n = 0; n <= n_max; ++n) g.H.push_back(gram_from_moments(n, qfam, mu));
    return g;
}

// gamma_n H_{n-1} − J_{n+1} (alpha_{n-1} H_n)^t J_n  (zero iff consistent; the
// gamma here is the coefficient of the lower level in the degree-n relation).
template <class K>
CMatrix<K> gamma_consistency_matrix(int n, const std::vector<ThreeTermCoeffs<K>>& coeffs,
                                    const GramSequence<K>& grams) {
    if (n < 1) throw std::invalid_argument("gamma_consistency needs n >= 1");
    if (n >= int(coeffs.size()) || n > grams.n_max())
        throw std::invalid_argument("insufficient depth for gamma_consistency");
    const CMatrix<K> lhs = coeffs[n].gamma * grams.H[n - 1];
    const CMatrix<K> jn1 = CMatrix<K>::exchange(n + 1);
    const CMatrix<K> jn = CMatrix<K>::exchange(n);
    const CMatrix<K> rhs = jn1 * (coeffs[n - 1].alpha * grams.H[n]).transpose() * jn;
    return lhs - rhs;
}

template <class K>
double gamma_consistency(int n, const std::vector<ThreeTermCoeffs<K>>& coeffs,
                         const GramSequence<K>& grams) {
    return gamma_consistency_matrix(n, coeffs, grams).max_abs();
}

// The transposed pair of identities:
//   [I_n 0] H_n = J_n H_{n-1}^t gamma_n^t J_{n+1}        (z-route)
//   [0 I_n] H_n = J_n H_{n-1}^t (gamma_n^vee)^t J_{n+1}  (z̄-route)
// Returns both residual matrices.
template <class K>
std::pair<CMatrix<K>, CMatrix<K>> band_identity_residuals(int n,
                                                 const std::vector<ThreeTermCoeffs<K>>& coeffs,
                                                 const GramSequence<K>& grams) {
    if (n < 1) throw std::invalid_argument("band_identity_residuals needs n >= 1");
    if (n >= int(coeffs.size()) || n > grams.n_max())
        throw std::invalid_argument("insufficient depth for band_identity_residuals");
    const CMatrix<K> jn = CMatrix<K>::exchange(n);
    const CMatrix<K> jn1 = CMatrix<K>::exchange(n + 1);
    const CMatrix<K> ht = grams.H[n - 1].transpose();
    const CMatrix<K> alpha = coeffs[n - 1].alpha;
    const CMatrix<K> lhs1 = alpha * grams.H[n];
    const CMatrix<K> rhs1 = jn * ht * coeffs[n].gamma.transpose() * jn1;
    const CMatrix<K> lhs2 = alpha.vee() * grams.H[n];
    const CMatrix<K> rhs2 = jn * ht * coeffs[n].gamma.vee().transpose() * jn1;
    return {lhs1 - rhs1, lhs2 - rhs2};
}

enum class ParamRegime { GaussianValid, QuasiDefiniteOnly, Degenerate };

inline const char* regime_name(ParamRegime r) {
    switch (r) {
        case ParamRegime::GaussianValid: return "gaussian-valid";
        case ParamRegime::QuasiDefiniteOnly: return "quasi-definite-only";
        default: return "degenerate";
    }
}

// gaussian-valid iff a ≠ 0, c ≠ 0, c(c−a) real (exact over GQ, relative tol
// over CD), and |c| ≥ 2|c−a|.
template <class K>
ParamRegime param_classify(const K& a, const K& c, double tol = 1e-10) {
    if (exactly_zero(a) || exactly_zero(c)) return ParamRegime::Degenerate;
    const K beta = c * (c - a);
    bool real_ok;
    if constexpr (std::is_same_v<K, GQ>) {
        real_ok = beta.is_real();
    } else {
        real_ok = std::abs(beta.imag()) <= tol * std::abs(beta);
    }
    bool size_ok;
    if constexpr (std::is_same_v<K, GQ>) {
        size_ok = c.norm() >= 4 * (c - a).norm();
    } else {
        size_ok = std::norm(c) >= 4.0 * std::norm(c - a);
    }
    return (real_ok && size_ok) ? ParamRegime::GaussianValid
                                : ParamRegime::QuasiDefiniteOnly;
}

// Hermitian LDL* positivity check. Over GQ the pivots are exact rationals;
// over CD a pivot below 1e−12 times the largest diagonal counts as failure.
template <class K>
bool is_positive_definite(const CMatrix<K>& h, double float_tol = 1e-12) {
    const int n = h.rows();
    if (h.cols() != n) throw std::invalid_argument("positivity needs a square matrix");
    if (n == 0) return true;
    // Hermitian gate first: a non-Hermitian matrix cannot be positive definite.
    if constexpr (std::is_same_v<K, GQ>) {
        if (!(h == h.conj_transpose())) return false;
    } else {
        if ((h - h.conj_transpose()).max_abs() > 1e-10 * (1.0 + h.max_abs())) return false;
    }
    double maxdiag = 0.0;
    for (int i = 0; i < n; ++i) maxdiag = std::max(maxdiag, abs_of(h(i, i)));
    std::vector<std::vector<K>> l(n, std::vector<K>(n, K{}));
    std::vector<K> d(n, K{});
    for (int j = 0; j < n; ++j) {
        K dj = h(j, j);
        for (int k = 0; k < j; ++k) dj -= l[j][k] * conj_of(l[j][k]) * d[k];
        if constexpr (std::is_same_v<K, GQ>) {
            if (!dj.is_real() || !(dj.re > 0)) return false;
        } else {
            if (dj.real() <= float_tol * std::max(1.0, maxdiag)) return false;
        }
        d[j] = dj;
        for (int i = j + 1; i < n; ++i) {
            K v = h(i, j);
            for (int k = 0; k < j; ++k) v -= l[i][k] * conj_of(l[j][k]) * d[k];
            l[i][j] = v / dj;
        }
    }
    return true;
}

// First degree at which H_n fails positive definiteness, or nullopt. Grams are
// taken from the moment route (the authoritative one) and tested one level at
// a time; positivity of every level is exactly positivity of the functional,
// since cross-level Gram blocks vanish.
template <class K>
std::optional<int> posdef_probe(int n_max, const K& a, const K& c) {
    if (n_max < 0) throw std::invalid_argument("posdef_probe needs n_max >= 0");
    auto fam = gen_Q<K>(n_max, a, c).first;
    auto mu = build_moments<K>(2 * n_max, a, c);
    for (int n = 0; n <= n_max; ++n)
        if (!is_positive_definite(gram_from_moments(n, fam, mu))) return n;
    return std::nullopt;
}

}  // namespace c2d
