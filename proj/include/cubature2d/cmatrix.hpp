#pragma once

// Dense complex matrices over either scalar mode, plus the exchange-matrix
// algebra: J (anti-diagonal flip), the ∨-transform M^∨ = J conj(M) J, and the
// centrohermitian test A = J conj(A) J.

#include <algorithm>
#include <stdexcept>
#include <vector>

#include "cubature2d/scalar.hpp"

namespace c2d {

template <class K>
class CMatrix {
  public:
    CMatrix() : rows_(0), cols_(0) {}
    CMatrix(int rows, int cols)
        : rows_(rows), cols_(cols), a_(size_t(rows) * size_t(cols), scalar_from_int<K>(0)) {
        if (rows < 0 || cols < 0) throw std::invalid_argument("negative dimension");
    }

    static CMatrix identity(int n) {
        CMatrix m(n, n);
        for (int i = 0; i < n; ++i) m(i, i) = scalar_from_int<K>(1);
        return m;
    }

    // Exchange matrix J_n: ones on the anti-diagonal.
    static CMatrix exchange(int n) {
        CMatrix m(n, n);
        for (int i = 0; i < n; ++i) m(i, n - 1 - i) = scalar_from_int<K>(1);
        return m;
    }

    int rows() const { return rows_; }
    int cols() const { return cols_; }

    K& operator()(int i, int j) { return a_[size_t(i) * cols_ + j]; }
    const K& operator()(int i, int j) const { return a_[size_t(i) * cols_ + j]; }

    CMatrix transpose() const {
        CMatrix r(cols_, rows_);
        for (int i = 0; i < rows_; ++i)
            for (int j = 0; j < cols_; ++j) r(j, i) = (*this)(i, j);
        return r;
    }

    CMatrix conj() const {
        CMatrix r(rows_, cols_);
        for (int i = 0; i < rows_; ++i)
            for (int j = 0; j < cols_; ++j) r(i, j) = conj_of((*this)(i, j));
        return r;
    }

    CMatrix conj_transpose() const { return conj().transpose(); }

    // M^∨ = J_rows conj(M) J_cols: conjugate and rotate 180 degrees.
    CMatrix vee() const {
        CMatrix r(rows_, cols_);
        for (int i = 0; i < rows_; ++i)
            for (int j = 0; j < cols_; ++j)
                r(i, j) = conj_of((*this)(rows_ - 1 - i, cols_ - 1 - j));
        return r;
    }

    CMatrix operator-() const {
        CMatrix r(rows_, cols_);
        for (size_t i = 0; i < a_.size(); ++i) r.a_[i] = -a_[i];
        return r;
    }
    CMatrix& operator+=(const CMatrix& o) {
        check_same_shape(o);
        for (size_t i = 0; i < a_.size(); ++i) a_[i] += o.a_[i];
        return *this;
    }
    CMatrix& operator-=(const CMatrix& o) {
        check_same_shape(o);
        for (size_t i = 0; i < a_.size(); ++i) a_[i] -= o.a_[i];
        return *this;
    }
    friend CMatrix operator+(CMatrix x, const CMatrix& y) { return x += y; }
    friend CMatrix operator-(CMatrix x, const CMatrix& y) { return x -= y; }

    friend CMatrix operator*(const CMatrix& x, const CMatrix& y) {
        if (x.cols_ != y.rows_) throw std::invalid_argument("matmul shape mismatch");
        CMatrix r(x.rows_, y.cols_);
        for (int i = 0; i < x.rows_; ++i)
            for (int k = 0; k < x.cols_; ++k) {
                const K& v = x(i, k);
                if (exactly_zero(v)) continue;
                for (int j = 0; j < y.cols_; ++j) r(i, j) += v * y(k, j);
            }
        return r;
    }

    CMatrix scaled(const K& s) const {
        CMatrix r(rows_, cols_);
        for (size_t i = 0; i < a_.size(); ++i) r.a_[i] = a_[i] * s;
        return r;
    }

    std::vector<K> mul_vec(const std::vector<K>& v) const {
        if (int(v.size()) != cols_) throw std::invalid_argument("matvec shape mismatch");
        std::vector<K> r(rows_, scalar_from_int<K>(0));
        for (int i = 0; i < rows_; ++i)
            for (int j = 0; j < cols_; ++j) r[i] += (*this)(i, j) * v[j];
        return r;
    }

    // v^t M (row vector times matrix), returned as a vector of length cols.
    std::vector<K> tmul_vec(const std::vector<K>& v) const {
        if (int(v.size()) != rows_) throw std::invalid_argument("matvec shape mismatch");
        std::vector<K> r(cols_, scalar_from_int<K>(0));
        for (int i = 0; i < rows_; ++i) {
            if (exactly_zero(v[i])) continue;
            for (int j = 0; j < cols_; ++j) r[j] += v[i] * (*this)(i, j);
        }
        return r;
    }

    bool is_zero() const {
        for (const auto& v : a_)
            if (!exactly_zero(v)) return false;
        return true;
    }

    double max_abs() const {
        double m = 0.0;
        for (const auto& v : a_) m = std::max(m, abs_of(v));
        return m;
    }

    friend bool operator==(const CMatrix& x, const CMatrix& y) {
        return x.rows_ == y.rows_ && x.cols_ == y.cols_ && x.a_ == y.a_;
    }
    friend bool operator!=(const CMatrix& x, const CMatrix& y) { return !(x == y); }

  private:
    void check_same_shape(const CMatrix& o) const {
        if (rows_ != o.rows_ || cols_ != o.cols_)
            throw std::invalid_argument("matrix shape mismatch");
    }

    int rows_, cols_;
    std::vector<K> a_;
};

template <class K>
CMatrix<K> vee(const CMatrix<K>& m) {
    return m.vee();
}

// ||M - J conj(M) J||_max <= tol. Exact scalars use tol = 0.
template <class K>
bool is_centrohermitian(const CMatrix<K>& m, double tol = 0.0) {
    double worst = (m - m.vee()).max_abs();
    return worst <= tol;
}

template <class K>
CMatrix<CD> matrix_to_cd(const CMatrix<K>& m) {
    CMatrix<CD> r(m.rows(), m.cols());
    for (int i = 0; i < m.rows(); ++i)
        for (int j = 0; j < m.cols(); ++j) r(i, j) = to_cd(m(i, j));
    return r;
}

}  // namespace c2d
