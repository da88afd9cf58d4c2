#pragma once

// Generalized characteristic pencils A(z_0,…,z_n) = A + Σ_s z_s I_s and their
// column-submatrix determinants P_I. The determinant route is the independent
// oracle against which the recurrence-generated families are checked, so it
// deliberately shares no code with the families module.

#include <cstdint>
#include <map>
#include <stdexcept>
#include <type_traits>
#include <vector>

#include "cubature2d/cmatrix.hpp"
#include "cubature2d/poly.hpp"

namespace c2d {

// s-unit matrix I_s of shape m×(m+n): ones where column = row + s.
template <class K>
CMatrix<K> unit_shift(int s, int m, int n) {
    if (s < 0 || s > n) throw std::invalid_argument("unit shift index out of range");
    CMatrix<K> r(m, m + n);
    for (int i = 0; i < m; ++i)
        if (i + s < m + n) r(i, i + s) = scalar_from_int<K>(1);
    return r;
}

// Exact division of multivariate polynomials: returns q with p = q*d.
// Leading terms are taken in the lexicographic order on (deg_z, deg_z̄); since
// the quotient exists wherever this is called (Bareiss guarantees it), the
// leading term of d divides the leading term of every intermediate remainder.
template <class K>
BivarPoly<K> poly_divide_exact(BivarPoly<K> p, const BivarPoly<K>& d) {
    if (d.is_zero()) throw std::domain_error("polynomial division by zero");
    BivarPoly<K> q;
    const auto& dterms = d.terms();
    const auto dlead = std::prev(dterms.end());
    const Expo de = dlead->first;
    const K& dc = dlead->second;
    while (!p.is_zero()) {
        const auto plead = std::prev(p.terms().end());
        const Expo pe = plead->first;
        int ez = pe.first - de.first, ezb = pe.second - de.second;
        if (ez < 0 || ezb < 0) throw std::domain_error("inexact polynomial division");
        K fc = plead->second / dc;
        BivarPoly<K> t = BivarPoly<K>::monomial(ez, ezb, fc);
        q += t;
        p -= t * d;
    }
    return q;
}

// Fraction-free (Bareiss) determinant over the polynomial ring. All divisions
// are exact, so over GQ no rational-function intermediates ever appear.
template <class K>
BivarPoly<K> det_poly_bareiss(std::vector<std::vector<BivarPoly<K>>> m) {
    const int n = int(m.size());
    if (n == 0) return BivarPoly<K>::one();
    for (const auto& row : m)
        if (int(row.size()) != n) throw std::invalid_argument("determinant needs square matrix");
    BivarPoly<K> prev = BivarPoly<K>::one();
    int sign = 1;
    for (int k = 0; k + 1 < n; ++k) {
        if (m[k][k].is_zero()) {
            int r = -1;
            for (int i = k + 1; i < n; ++i)
                if (!m[i][k].is_zero()) {
                    r = i;
                    break;
                }
            if (r < 0) return BivarPoly<K>::zero();
            std::swap(m[k], m[r]);
            sign = -sign;
        }
        for (int i = k + 1; i < n; ++i)
            for (int j = k + 1; j < n; ++j)
                m[i][j] = poly_divide_exact(m[i][j] * m[k][k] - m[i][k] * m[k][j], prev);
        prev = m[k][k];
    }
    BivarPoly<K> det = m[n - 1][n - 1];
    return sign < 0 ? -det : det;
}

// Cofactor expansion memoized over column subsets; numerically benign, used
// for the float mode (and as a small-m cross-check of Bareiss in tests).
template <class K>
BivarPoly<K> det_poly_laplace(const std::vector<std::vector<BivarPoly<K>>>& m) {
    const int n = int(m.size());
    if (n == 0) return BivarPoly<K>::one();
    if (n > 30) throw std::invalid_argument("laplace determinant limited to n <= 30");
    std::map<std::uint32_t, BivarPoly<K>> memo;
    // det of rows (n - popcount(mask))..n-1 restricted to the columns in mask
    auto rec = [&](auto&& self, std::uint32_t mask) -> BivarPoly<K> {
        if (mask == 0) return BivarPoly<K>::one();
        auto it = memo.find(mask);
        if (it != memo.end()) return it->second;
        int size = __builtin_popcount(mask);
        int row = n - size;
        BivarPoly<K> acc;
        int pos = 0;
        for (int j = 0; j < n; ++j) {
            if (!(mask >> j & 1)) continue;
            if (!m[row][j].is_zero()) {
                BivarPoly<K> sub = self(self, mask & ~(std::uint32_t(1) << j));
                BivarPoly<K> term = m[row][j] * sub;
                if (pos % 2 == 0)
                    acc += term;
                else
                    acc -= term;
            }
            ++pos;
        }
        memo.emplace(mask, acc);
        return acc;
    };
    return rec(rec, (std::uint32_t(1) << n) - 1);
}

template <class K>
BivarPoly<K> det_poly(const std::vector<std::vector<BivarPoly<K>>>& m) {
    if constexpr (std::is_same_v<K, GQ>) {
        if (m.size() <= 4) return det_poly_laplace(m);  // cofactor route for small m
        return det_poly_bareiss(m);
    } else {
        return det_poly_laplace(m);
    }
}

// Numeric determinant over a field (exact for GQ, partial pivoting for CD).
template <class K>
K det_numeric(std::vector<std::vector<K>> m) {
    const int n = int(m.size());
    if (n == 0) return scalar_from_int<K>(1);
    K det = scalar_from_int<K>(1);
    int sign = 1;
    for (int k = 0; k < n; ++k) {
        int piv = -1;
        if constexpr (std::is_same_v<K, CD>) {
            double best = 0.0;
            for (int i = k; i < n; ++i)
                if (abs_of(m[i][k]) > best) {
                    best = abs_of(m[i][k]);
                    piv = i;
                }
        } else {
            for (int i = k; i < n; ++i)
                if (!exactly_zero(m[i][k])) {
                    piv = i;
                    break;
                }
        }
        if (piv < 0 || exactly_zero(m[piv][k])) return scalar_from_int<K>(0);
        if (piv != k) {
            std::swap(m[piv], m[k]);
            sign = -sign;
        }
        det *= m[k][k];
        for (int i = k + 1; i < n; ++i) {
            K f = m[i][k] / m[k][k];
            if (exactly_zero(f)) continue;
            for (int j = k; j < n; ++j) m[i][j] -= f * m[k][j];
        }
    }
    return sign < 0 ? -det : det;
}

// Strictly increasing 1-based column indices in [1, m+n].
struct IndexSet {
    std::vector<int> cols;

    void validate(int m, int ncols) const {
        if (int(cols.size()) != m) throw std::invalid_argument("index set must have m columns");
        int prev = 0;
        for (int c : cols) {
            if (c <= prev || c > ncols) throw std::invalid_argument("index set out of range");
            prev = c;
        }
    }
};

// The pencil A(z_0,…,z_n) = A + Σ_s z_s I_s, shape m×(m+n).
template <class K>
struct CharPencil {
    int m = 0;
    int nvars = 1;      // n: number of shift variables is nvars+1 (z_0..z_nvars)
    CMatrix<K> base;    // the constant matrix A

    int ncols() const { return m + nvars; }

    // Entry (i,j) as a polynomial in (z, z̄); only meaningful for nvars == 1.
    BivarPoly<K> entry_poly(int i, int j) const {
        BivarPoly<K> p;
        if (!exactly_zero(base(i, j))) p.add_term(0, 0, base(i, j));
        if (j == i) p.add_term(1, 0, scalar_from_int<K>(1));
        if (j == i + 1) p.add_term(0, 1, scalar_from_int<K>(1));
        return p;
    }

    // Entry (i,j) evaluated at the point (z_0,…,z_n).
    K entry_at(int i, int j, const std::vector<K>& pt) const {
        K v = base(i, j);
        int s = j - i;
        if (s >= 0 && s <= nvars) v += pt[s];
        return v;
    }
};

// The §4 pencil A^{a,c}_{m,m+1}(z, z̄).
template <class K>
CharPencil<K> build_pencil_aac(int m, const K& a, const K& c) {
    if (m < 1) throw std::invalid_argument("pencil needs m >= 1");
    CharPencil<K> p;
    p.m = m;
    p.nvars = 1;
    p.base = CMatrix<K>(m, m + 1);
    if (m >= 2) {
        p.base(0, 2) = conj_of(a);
        p.base(m - 1, m - 2) += a;
    }
    for (int i = 1; i + 1 < m; ++i) {
        p.base(i, i - 1) += c;
        p.base(i, i + 2) = conj_of(c);
    }
    return p;
}

// Toeplitz base: entry (i,j) = diag[j-i]; missing offsets are zero.
template <class K>
CharPencil<K> toeplitz_pencil(int m, int nvars, const std::map<int, K>& diag) {
    if (m < 1 || nvars < 1) throw std::invalid_argument("toeplitz pencil needs m, n >= 1");
    CharPencil<K> p;
    p.m = m;
    p.nvars = nvars;
    p.base = CMatrix<K>(m, m + nvars);
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < m + nvars; ++j) {
            auto it = diag.find(j - i);
            if (it != diag.end()) p.base(i, j) = it->second;
        }
    return p;
}

// P_I = det A_I as a polynomial in (z, z̄); requires nvars == 1.
template <class K>
BivarPoly<K> charpoly_I(const CharPencil<K>& p, const IndexSet& I) {
    if (p.nvars != 1)
        throw std::invalid_argument("closed-form charpoly supports one conjugate pair only");
    I.validate(p.m, p.ncols());
    std::vector<std::vector<BivarPoly<K>>> m(p.m, std::vector<BivarPoly<K>>(p.m));
    for (int i = 0; i < p.m; ++i)
        for (int j = 0; j < p.m; ++j) m[i][j] = p.entry_poly(i, I.cols[j] - 1);
    return det_poly(m);
}

// P_I evaluated at a point (z_0,…,z_n); works for any nvars.
template <class K>
K charpoly_eval(const CharPencil<K>& p, const IndexSet& I, const std::vector<K>& pt) {
    if (int(pt.size()) != p.nvars + 1)
        throw std::invalid_argument("point must supply z_0..z_n");
    I.validate(p.m, p.ncols());
    std::vector<std::vector<K>> m(p.m, std::vector<K>(p.m));
    for (int i = 0; i < p.m; ++i)
        for (int j = 0; j < p.m; ++j) m[i][j] = p.entry_at(i, I.cols[j] - 1, pt);
    return det_numeric(std::move(m));
}

// Q_k^m: determinant of the §4 pencil minus its 0-based column m-k (the unique
// reading that leaves the stated monic leading term z^{m-k} z̄^k).
template <class K>
BivarPoly<K> q_via_determinant(int m, int k, const K& a, const K& c) {
    if (k < 0 || k > m) throw std::invalid_argument("Q_k^m needs 0 <= k <= m");
    if (m == 0) return BivarPoly<K>::one();
    CharPencil<K> p = build_pencil_aac(m, a, c);
    IndexSet I;
    for (int j = 0; j <= m; ++j)
        if (j != m - k) I.cols.push_back(j + 1);
    return charpoly_I(p, I);
}

template <class K>
CharPencil<CD> pencil_to_cd(const CharPencil<K>& p) {
    CharPencil<CD> r;
    r.m = p.m;
    r.nvars = p.nvars;
    r.base = matrix_to_cd(p.base);
    return r;
}

// Reflection symmetry residual: max over samples of
// |P_Ī(z_0,…,z_n) − conj(P_I(z̄_n,…,z̄_0))| with Ī = m+n+1−I.
inline double check_reflection(const CharPencil<CD>& p, const IndexSet& I,
                               const std::vector<std::vector<CD>>& samples) {
    I.validate(p.m, p.ncols());
    IndexSet Ibar;
    for (auto it = I.cols.rbegin(); it != I.cols.rend(); ++it)
        Ibar.cols.push_back(p.m + p.nvars + 1 - *it);
    double worst = 0.0;
    for (const auto& pt : samples) {
        if (int(pt.size()) != p.nvars + 1)
            throw std::invalid_argument("sample must supply z_0..z_n");
        std::vector<CD> rev(pt.size());
        for (size_t s = 0; s < pt.size(); ++s) rev[s] = std::conj(pt[pt.size() - 1 - s]);
        CD lhs = charpoly_eval(p, Ibar, pt);
        CD rhs = std::conj(charpoly_eval(p, I, rev));
        worst = std::max(worst, std::abs(lhs - rhs));
    }
    return worst;
}

}  // namespace c2d
