#pragma once

// Dual-mode scalars: exact Gaussian rationals (GQ) over GMP rationals, and
// complex<double> (CD) for floating-point work. Identity suites run over GQ
// so equalities are decided with no rounding; eigenvalue work runs over CD.

#include <gmpxx.h>

#include <complex>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace c2d {

using CD = std::complex<double>;

// Gaussian rational: re + i*im with re, im in Q.
struct GQ {
    mpq_class re, im;

    GQ() : re(0), im(0) {}
    GQ(long r) : re(r), im(0) {}
    GQ(long r, long i) : re(r), im(i) {}
    GQ(mpq_class r) : re(std::move(r)), im(0) {}
    GQ(mpq_class r, mpq_class i) : re(std::move(r)), im(std::move(i)) {}

    static GQ from_rationals(long rnum, long rden, long inum = 0, long iden = 1) {
        mpq_class r(rnum, rden), i(inum, iden);
        r.canonicalize();
        i.canonicalize();
        return GQ(r, i);
    }

    bool is_zero() const { return re == 0 && im == 0; }
    bool is_real() const { return im == 0; }

    GQ conj() const { return GQ(re, -im); }

    // |x|^2 as an exact rational.
    mpq_class norm() const { return re * re + im * im; }

    GQ operator-() const { return GQ(-re, -im); }
    GQ& operator+=(const GQ& o) {
        re += o.re;
        im += o.im;
        return *this;
    }
    GQ& operator-=(const GQ& o) {
        re -= o.re;
        im -= o.im;
        return *this;
    }
    GQ& operator*=(const GQ& o) {
        mpq_class r = re * o.re - im * o.im;
        mpq_class i = re * o.im + im * o.re;
        re = std::move(r);
        im = std::move(i);
        return *this;
    }
    GQ& operator/=(const GQ& o) {
        mpq_class n = o.norm();
        if (n == 0) throw std::domain_error("GQ division by zero");
        mpq_class r = (re * o.re + im * o.im) / n;
        mpq_class i = (im * o.re - re * o.im) / n;
        re = std::move(r);
        im = std::move(i);
        return *this;
    }

    friend GQ operator+(GQ a, const GQ& b) { return a += b; }
    friend GQ operator-(GQ a, const GQ& b) { return a -= b; }
    friend GQ operator*(GQ a, const GQ& b) { return a *= b; }
    friend GQ operator/(GQ a, const GQ& b) { return a /= b; }
    friend bool operator==(const GQ& a, const GQ& b) { return a.re == b.re && a.im == b.im; }
    friend bool operator!=(const GQ& a, const GQ& b) { return !(a == b); }

    GQ inv() const {
        GQ one(1);
        return one / *this;
    }

    GQ pow(long e) const {
        if (e < 0) return inv().pow(-e);
        GQ acc(1), base = *this;
        while (e > 0) {
            if (e & 1) acc *= base;
            base *= base;
            e >>= 1;
        }
        return acc;
    }

    CD to_cd() const { return CD(re.get_d(), im.get_d()); }
};

// ---- uniform scalar helpers used by the templated containers ----

inline GQ conj_of(const GQ& x) { return x.conj(); }
inline CD conj_of(const CD& x) { return std::conj(x); }

inline bool exactly_zero(const GQ& x) { return x.is_zero(); }
inline bool exactly_zero(const CD& x) { return x == CD(0.0, 0.0); }

inline CD to_cd(const GQ& x) { return x.to_cd(); }
inline CD to_cd(const CD& x) { return x; }

inline double abs_of(const GQ& x) { return std::abs(x.to_cd()); }
inline double abs_of(const CD& x) { return std::abs(x); }

inline GQ inv_of(const GQ& x) { return x.inv(); }
inline CD inv_of(const CD& x) { return CD(1.0, 0.0) / x; }

inline GQ pow_of(const GQ& x, long e) { return x.pow(e); }
inline CD pow_of(const CD& x, long e) {
    if (e < 0) return std::pow(inv_of(x), -e);
    CD acc(1.0, 0.0), base = x;
    while (e > 0) {
        if (e & 1) acc *= base;
        base *= base;
        e >>= 1;
    }
    return acc;
}

template <class K>
K scalar_from_int(long v);
template <>
inline GQ scalar_from_int<GQ>(long v) { return GQ(v); }
template <>
inline CD scalar_from_int<CD>(long v) { return CD(double(v), 0.0); }

// Exact conversion: every binary64 value is a rational, so CD -> GQ is lossless.
inline GQ gq_from_cd(const CD& z) {
    return GQ(mpq_class(z.real()), mpq_class(z.imag()));
}

template <class K>
K scalar_cast(const GQ& x);
template <>
inline GQ scalar_cast<GQ>(const GQ& x) { return x; }
template <>
inline CD scalar_cast<CD>(const GQ& x) { return x.to_cd(); }

}  // namespace c2d
