#pragma once

// Polynomial families generated by their three-term recurrences (the fast
// path), the cross-expansion of the Q-family over the P-family, the Chebyshev
// rescaling, and the complex-to-real basis map.

#include <cmath>
#include <stdexcept>
#include <type_traits>
#include <utility>
#include <vector>

#include "cubature2d/cmatrix.hpp"
#include "cubature2d/poly.hpp"

namespace c2d {

enum class FamilyKind { ChebyshevU, P, Q };

template <class K>
struct PolyFamily {
    FamilyKind kind = FamilyKind::Q;
    K a{}, c{};
    // table[m][k] for 0 <= k <= m <= m_max
    std::vector<std::vector<BivarPoly<K>>> table;

    int m_max() const { return int(table.size()) - 1; }
    const BivarPoly<K>& at(int m, int k) const {
        if (m < 0 || m >= int(table.size()) || k < 0 || k > m)
            throw std::out_of_range("family index out of range");
        return table[m][k];
    }
};

// Coefficients of the degree-m step  z·Q_m = alpha_m Q_{m+1} + beta_m Q_m + gamma_m Q_{m-1}.
// (gamma_m multiplies the lower level; it is the (m+1)×m matrix written with
// index m-1 in the general theory's numbering.)
template <class K>
struct ThreeTermCoeffs {
    int m = 0;
    CMatrix<K> alpha;  // (m+1)×(m+2) = [I | 0]
    CMatrix<K> beta;   // (m+1)×(m+1)
    CMatrix<K> gamma;  // (m+1)×m; empty (m+1)×0 for m = 0
};

template <class K>
ThreeTermCoeffs<K> three_term_coeffs(int m, const K& a, const K& c) {
    if (m < 0) throw std::invalid_argument("three_term_coeffs needs m >= 0");
    ThreeTermCoeffs<K> t;
    t.m = m;
    t.alpha = CMatrix<K>(m + 1, m + 2);
    for (int i = 0; i <= m; ++i) t.alpha(i, i) = scalar_from_int<K>(1);
    t.beta = CMatrix<K>(m + 1, m + 1);
    t.gamma = CMatrix<K>(m + 1, m);
    if (m == 1) {
        // The lowest steps carry a-dependent corrections that the generic
        // band pattern only acquires from degree 2 (degree 3 for gamma) on.
        t.beta(0, 1) = a;
        t.gamma(1, 0) = a * conj_of(a);
    } else if (m >= 2) {
        for (int i = 0; i < m; ++i) t.beta(i, i + 1) = c;
        t.beta(m, m - 2) = conj_of(c) - conj_of(a);
        if (m == 2) {
            K alpha_p = c * conj_of(c) - (a - c) * conj_of(a - c);
            t.gamma(1, 0) = alpha_p;
            t.gamma(2, 1) = alpha_p;
        } else {
            t.gamma(0, 2) = c * (c - a);
            K cc = c * conj_of(c);
            for (int i = 1; i <= m; ++i) t.gamma(i, i - 1) = cc;
        }
    }
    return t;
}

namespace detail {
template <class K>
std::vector<BivarPoly<K>> mat_times_polys(const CMatrix<K>& m,
                                          const std::vector<BivarPoly<K>>& v) {
    if (int(v.size()) != m.cols()) throw std::invalid_argument("shape mismatch");
    std::vector<BivarPoly<K>> r(m.rows());
    for (int i = 0; i < m.rows(); ++i)
        for (int j = 0; j < m.cols(); ++j)
            if (!exactly_zero(m(i, j))) r[i] += v[j].scaled(m(i, j));
    return r;
}
}  // namespace detail

// Generate {Q_k^m} to degree m_max by solving the three-term relation level by
// level: the first m+1 components of Q_{m+1} come directly from the relation
// (alpha = [I | 0]); the last one is closed by the conjugation symmetry
// Q_{m+1}^{m+1} = conj_reflect(Q_0^{m+1}).
template <class K>
std::pair<PolyFamily<K>, std::vector<ThreeTermCoeffs<K>>> gen_Q(int m_max, const K& a,
                                                                const K& c) {
    if (m_max < 0) throw std::invalid_argument("gen_Q needs m_max >= 0");
    PolyFamily<K> fam;
    fam.kind = FamilyKind::Q;
    fam.a = a;
    fam.c = c;
    fam.table.push_back({BivarPoly<K>::one()});
    std::vector<ThreeTermCoeffs<K>> coeffs;
    for (int m = 0; m <= m_max; ++m) coeffs.push_back(three_term_coeffs<K>(m, a, c));
    for (int m = 0; m < m_max; ++m) {
        const auto& tt = coeffs[m];
        std::vector<BivarPoly<K>> next(m + 2);
        auto bq = detail::mat_times_polys(tt.beta, fam.table[m]);
        std::vector<BivarPoly<K>> gq(m + 1);
        if (m >= 1) gq = detail::mat_times_polys(tt.gamma, fam.table[m - 1]);
        for (int k = 0; k <= m; ++k)
            next[k] = fam.table[m][k].shifted(1, 0) - bq[k] - gq[k];
        next[m + 1] = next[0].conj_reflect();
        fam.table.push_back(std::move(next));
    }
    return {std::move(fam), std::move(coeffs)};
}

// The one-parameter family {P_k^m}: the a = c case of the Q-family.
template <class K>
PolyFamily<K> gen_P(int m_max, const K& c) {
    auto fam = gen_Q<K>(m_max, c, c).first;
    fam.kind = FamilyKind::P;
    return fam;
}

// Chebyshev family of the second kind on the deltoid:
// U_k^{n+1} = 3z U_k^n − U_{k+1}^n − U_{k-1}^{n-1}, with U_{-1}^n = 0 and
// U_n^{n-1} = 0, closed at the top index by conjugation symmetry.
template <class K>
PolyFamily<K> gen_chebyshev_U(int n_max) {
    if (n_max < 0) throw std::invalid_argument("gen_chebyshev_U needs n_max >= 0");
    PolyFamily<K> fam;
    fam.kind = FamilyKind::ChebyshevU;
    fam.table.push_back({BivarPoly<K>::one()});
    const K three = scalar_from_int<K>(3);
    for (int n = 0; n < n_max; ++n) {
        std::vector<BivarPoly<K>> next(n + 2);
        for (int k = 0; k <= n; ++k) {
            BivarPoly<K> p = fam.table[n][k].shifted(1, 0).scaled(three);
            if (k + 1 <= n) p -= fam.table[n][k + 1];
            if (k - 1 >= 0 && n >= 1) p -= fam.table[n - 1][k - 1];
            next[k] = std::move(p);
        }
        next[n + 1] = next[0].conj_reflect();
        fam.table.push_back(std::move(next));
    }
    return fam;
}

// Expansion of Q_k^m in the P-family at the same parameter c. Out-of-range P's
// (negative degree, or index outside 0..degree) are zero. The low- and
// high-index boundary formulas carry small-degree coefficient corrections that
// the determinant oracle forces; see the unit suite, which pins every case.
template <class K>
BivarPoly<K> q_over_p_expand(int m, int k, const K& a, const K& c,
                            const PolyFamily<K>& pfam) {
    if (k < 0 || k > m) throw std::invalid_argument("q_over_p_expand needs 0 <= k <= m");
    if (pfam.m_max() < m) throw std::invalid_argument("P-family too shallow");
    auto P = [&](int n, int j) -> BivarPoly<K> {
        if (n < 0 || j < 0 || j > n) return BivarPoly<K>::zero();
        return pfam.at(n, j);
    };
    const K A = a - c, Ab = conj_of(a) - conj_of(c);
    const K cb = conj_of(c);
    if (m == 0) return P(0, 0);
    if (k == 0) {
        K c0 = (m == 3 ? a * c * Ab : c * c * Ab);
        return P(m, 0) - P(m - 1, 1).scaled(A) + P(m - 3, 0).scaled(c0) -
               P(m - 4, 1).scaled(c * c * A * Ab);
    }
    if (k == m) {
        K c0 = (m == 3 ? conj_of(a) * cb * A : cb * cb * A);
        return P(m, m) - P(m - 1, m - 2).scaled(Ab) + P(m - 3, m - 3).scaled(c0) -
               P(m - 4, m - 5).scaled(cb * cb * A * Ab);
    }
    if (m == 2 && k == 1)
        return P(2, 1) - P(0, 0).scaled(a * conj_of(a) - c * cb);
    if (k == 1)
        return P(m, 1) - P(m - 2, 0).scaled(cb * A) + P(m - 3, 1).scaled(c * c * Ab) -
               P(m - 5, 0).scaled(c * c * cb * A * Ab);
    if (k == m - 1)
        return P(m, m - 1) - P(m - 2, m - 2).scaled(c * Ab) +
               P(m - 3, m - 4).scaled(cb * cb * A) -
               P(m - 5, m - 5).scaled(c * cb * cb * A * Ab);
    return P(m, k) + P(m - 3, k).scaled(c * c * Ab) + P(m - 3, k - 3).scaled(cb * cb * A) +
           P(m - 6, k - 3).scaled(c * c * cb * cb * A * Ab);
}

// Rescale the P-family at c = ā³/|a|² to the Chebyshev table:
// U_k^m = ā^{k−m} a^{−k} P_k^m(3 ā z, 3 a z̄). The a/ā orientation matters
// only for complex a (the two choices coincide for real a); this is the one
// that reproduces the Chebyshev table — pinned exactly in the unit suite.
template <class K>
PolyFamily<K> chebyshev_rescale(const PolyFamily<K>& pfam, const K& a) {
    if (exactly_zero(a)) throw std::invalid_argument("chebyshev_rescale needs a != 0");
    const K ab = conj_of(a);
    // precondition c = ā³/|a|², i.e. c·a = ā²
    const K want = ab * ab, got = pfam.c * a;
    if constexpr (std::is_same_v<K, GQ>) {
        if (!(want == got)) throw std::invalid_argument("chebyshev_rescale: c != conj(a)^3/|a|^2");
    } else {
        if (abs_of(want - got) > 1e-12 * (1.0 + abs_of(want)))
            throw std::invalid_argument("chebyshev_rescale: c != conj(a)^3/|a|^2");
    }
    const K three = scalar_from_int<K>(3);
    PolyFamily<K> out;
    out.kind = FamilyKind::ChebyshevU;
    out.table.resize(pfam.table.size());
    for (int m = 0; m <= pfam.m_max(); ++m) {
        out.table[m].resize(m + 1);
        for (int k = 0; k <= m; ++k) {
            K factor = inv_of(pow_of(ab, m - k) * pow_of(a, k));
            out.table[m][k] =
                pfam.at(m, k).var_scaled(three * ab, three * a).scaled(factor);
        }
    }
    return out;
}

// Unitary change of basis from the conjugate-symmetric complex components of
// degree n to n+1 real components: rows pair index k with n−k, with the
// middle row (even n) left alone so the map stays unitary.
inline CMatrix<CD> s_matrix(int n) {
    const double s = 1.0 / std::sqrt(2.0);
    CMatrix<CD> m(n + 1, n + 1);
    for (int k = 0; k <= n; ++k) {
        if (2 * k < n) {
            m(k, k) = CD(s, 0);
            m(k, n - k) = CD(s, 0);
        } else if (2 * k == n) {
            m(k, k) = CD(1, 0);
        } else {
            m(k, k) = CD(0, s);
            m(k, n - k) = CD(0, -s);
        }
    }
    return m;
}

// Apply the basis map to a vector of values satisfying v[k] = conj(v[n-k]).
inline std::vector<double> to_real_basis(const std::vector<CD>& values, int n,
                                         double tol = 1e-10) {
    if (int(values.size()) != n + 1)
        throw std::invalid_argument("to_real_basis needs n+1 values");
    double scale = 0.0;
    for (const CD& v : values) scale = std::max(scale, std::abs(v));
    for (int k = 0; k <= n; ++k)
        if (std::abs(values[k] - std::conj(values[n - k])) > tol * std::max(1.0, scale))
            throw std::invalid_argument("to_real_basis: conjugation symmetry violated");
    CMatrix<CD> s = s_matrix(n);
    std::vector<CD> w = s.mul_vec(values);
    std::vector<double> r(n + 1);
    for (int k = 0; k <= n; ++k) r[k] = w[k].real();
    return r;
}

}  // namespace c2d
