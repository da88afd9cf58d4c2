#pragma once

// Bivariate polynomials in the formal conjugate pair (z, z̄). The two
// variables are independent indeterminates; they are identified only at
// evaluation time via z̄ := conj(z).

#include <algorithm>
#include <map>
#include <stdexcept>
#include <utility>
#include <vector>

#include "cubature2d/scalar.hpp"

namespace c2d {

// Exponent pair: monomial z^jz * z̄^jzb.
using Expo = std::pair<int, int>;

template <class K>
class BivarPoly {
  public:
    // Ordered map keeps iteration (and thus all emitted output) deterministic.
    using Terms = std::map<Expo, K>;

    BivarPoly() = default;

    static BivarPoly zero() { return BivarPoly(); }
    static BivarPoly constant(K v) {
        BivarPoly p;
        p.add_term(0, 0, std::move(v));
        return p;
    }
    static BivarPoly one() { return constant(scalar_from_int<K>(1)); }
    static BivarPoly var_z() {
        BivarPoly p;
        p.add_term(1, 0, scalar_from_int<K>(1));
        return p;
    }
    static BivarPoly var_zb() {
        BivarPoly p;
        p.add_term(0, 1, scalar_from_int<K>(1));
        return p;
    }
    static BivarPoly monomial(int jz, int jzb, K v) {
        BivarPoly p;
        p.add_term(jz, jzb, std::move(v));
        return p;
    }

    const Terms& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }

    int degree() const {
        int d = -1;  // degree of the zero polynomial reported as -1
        for (const auto& [e, c] : terms_) d = std::max(d, e.first + e.second);
        return d;
    }

    K coeff(int jz, int jzb) const {
        auto it = terms_.find({jz, jzb});
        return it == terms_.end() ? scalar_from_int<K>(0) : it->second;
    }

    void add_term(int jz, int jzb, K v) {
        if (jz < 0 || jzb < 0) throw std::invalid_argument("negative exponent");
        if (exactly_zero(v)) return;
        auto [it, inserted] = terms_.try_emplace({jz, jzb}, v);
        if (!inserted) {
            it->second += v;
            if (exactly_zero(it->second)) terms_.erase(it);
        }
    }

    BivarPoly operator-() const {
        BivarPoly r;
        for (const auto& [e, c] : terms_) r.terms_[e] = -c;
        return r;
    }
    BivarPoly& operator+=(const BivarPoly& o) {
        for (const auto& [e, c] : o.terms_) add_term(e.first, e.second, c);
        return *this;
    }
    BivarPoly& operator-=(const BivarPoly& o) {
        for (const auto& [e, c] : o.terms_) add_term(e.first, e.second, -c);
        return *this;
    }
    friend BivarPoly operator+(BivarPoly a, const BivarPoly& b) { return a += b; }
    friend BivarPoly operator-(BivarPoly a, const BivarPoly& b) { return a -= b; }

    friend BivarPoly operator*(const BivarPoly& a, const BivarPoly& b) {
        BivarPoly r;
        for (const auto& [ea, ca] : a.terms_)
            for (const auto& [eb, cb] : b.terms_)
                r.add_term(ea.first + eb.first, ea.second + eb.second, ca * cb);
        return r;
    }

    BivarPoly scaled(const K& s) const {
        BivarPoly r;
        if (exactly_zero(s)) return r;
        for (const auto& [e, c] : terms_) {
            K v = c * s;
            if (!exactly_zero(v)) r.terms_[e] = std::move(v);
        }
        return r;
    }

    // Multiply by the monomial z^dz * z̄^dzb.
    BivarPoly shifted(int dz, int dzb) const {
        BivarPoly r;
        for (const auto& [e, c] : terms_) r.terms_[{e.first + dz, e.second + dzb}] = c;
        return r;
    }

    // q(z, z̄) with conjugated coefficients and swapped exponents, so that
    // q(z, conj z) = conj(p(z, conj z)) pointwise.
    BivarPoly conj_reflect() const {
        BivarPoly r;
        for (const auto& [e, c] : terms_) r.terms_[{e.second, e.first}] = conj_of(c);
        return r;
    }

    // Substitute z -> sz*z, z̄ -> szb*z̄ (still formal variables afterwards).
    BivarPoly var_scaled(const K& sz, const K& szb) const {
        BivarPoly r;
        for (const auto& [e, c] : terms_) {
            K f = c;
            for (int i = 0; i < e.first; ++i) f *= sz;
            for (int i = 0; i < e.second; ++i) f *= szb;
            r.add_term(e.first, e.second, std::move(f));
        }
        return r;
    }

    // Evaluate on the surface z̄ := conj(z).
    K eval(const K& z) const {
        K zb = conj_of(z);
        // power cache up to degree
        int d = std::max(0, degree());
        std::vector<K> pz(d + 1), pzb(d + 1);
        pz[0] = scalar_from_int<K>(1);
        pzb[0] = scalar_from_int<K>(1);
        for (int i = 1; i <= d; ++i) {
            pz[i] = pz[i - 1] * z;
            pzb[i] = pzb[i - 1] * zb;
        }
        K acc = scalar_from_int<K>(0);
        for (const auto& [e, c] : terms_) acc += c * pz[e.first] * pzb[e.second];
        return acc;
    }

    double max_coeff_abs() const {
        double m = 0.0;
        for (const auto& [e, c] : terms_) m = std::max(m, abs_of(c));
        return m;
    }

    // Float-mode support cleanup: drop terms below a relative threshold.
    void prune(double rel = 1e-14) {
        double m = max_coeff_abs();
        if (m == 0.0) return;
        for (auto it = terms_.begin(); it != terms_.end();) {
            if (abs_of(it->second) < rel * m)
                it = terms_.erase(it);
            else
                ++it;
        }
    }

    friend bool operator==(const BivarPoly& a, const BivarPoly& b) { return a.terms_ == b.terms_; }
    friend bool operator!=(const BivarPoly& a, const BivarPoly& b) { return !(a == b); }

  private:
    Terms terms_;
};

template <class K>
double max_term_diff(const BivarPoly<K>& a, const BivarPoly<K>& b) {
    double m = 0.0;
    BivarPoly<K> d = a - b;
    for (const auto& [e, c] : d.terms()) m = std::max(m, abs_of(c));
    return m;
}

template <class K>
BivarPoly<CD> poly_to_cd(const BivarPoly<K>& p) {
    BivarPoly<CD> r;
    for (const auto& [e, c] : p.terms()) r.add_term(e.first, e.second, to_cd(c));
    return r;
}

}  // namespace c2d
