#pragma once

#include <cassert>
#include <map>
#include <stdexcept>
#include <vector>

#include "matlang/numeric.hpp"

namespace matlang {

/// Dense row-major matrix; dimensions are always >= 1.
template <typename T>
struct Mat {
    long rows = 0;
    long cols = 0;
    std::vector<T> e;

    Mat() = default;
    Mat(long r, long c) : rows(r), cols(c), e(static_cast<size_t>(r) * c) {
        if (r < 1 || c < 1) throw std::invalid_argument("matrix dimensions must be >= 1");
    }
    Mat(long r, long c, std::vector<T> entries) : rows(r), cols(c), e(std::move(entries)) {
        if (r < 1 || c < 1 || e.size() != static_cast<size_t>(r) * c)
            throw std::invalid_argument("bad matrix shape");
    }

    T& at(long i, long j) { return e[static_cast<size_t>(i) * cols + j]; }
    const T& at(long i, long j) const { return e[static_cast<size_t>(i) * cols + j]; }

    static Mat zeros(long r, long c) { return Mat(r, c); }

    static Mat identity(long n) {
        Mat m(n, n);
        for (long i = 0; i < n; ++i) m.at(i, i) = T(1);
        return m;
    }

    friend bool operator==(const Mat& a, const Mat& b) {
        return a.rows == b.rows && a.cols == b.cols && a.e == b.e;
    }
};

using QMat = Mat<RatComplex>;
using FMat = Mat<FloatComplex>;

template <typename T>
using InstanceT = std::map<std::string, Mat<T>>;

using QInstance = InstanceT<RatComplex>;
using FInstance = InstanceT<FloatComplex>;

inline RatComplex conj_of(const RatComplex& z) { return z.conj(); }
inline FloatComplex conj_of(const FloatComplex& z) { return std::conj(z); }

template <typename T>
Mat<T> conj_transpose(const Mat<T>& a) {
    Mat<T> r(a.cols, a.rows);
    for (long i = 0; i < a.rows; ++i)
        for (long j = 0; j < a.cols; ++j) r.at(j, i) = conj_of(a.at(i, j));
    return r;
}

/// The m x 1 all-ones column vector for an m x n input.
template <typename T>
Mat<T> ones_vector(const Mat<T>& a) {
    Mat<T> r(a.rows, 1);
    for (long i = 0; i < a.rows; ++i) r.at(i, 0) = T(1);
    return r;
}

/// Diagonal square matrix from an m x 1 column vector.
template <typename T>
Mat<T> diag_of(const Mat<T>& v) {
    assert(v.cols == 1);
    Mat<T> r(v.rows, v.rows);
    for (long i = 0; i < v.rows; ++i) r.at(i, i) = v.at(i, 0);
    return r;
}

template <typename T>
Mat<T> matmul(const Mat<T>& a, const Mat<T>& b) {
    assert(a.cols == b.rows);
    Mat<T> r(a.rows, b.cols);
    for (long i = 0; i < a.rows; ++i)
        for (long k = 0; k < a.cols; ++k) {
            const T& aik = a.at(i, k);
            for (long j = 0; j < b.cols; ++j) r.at(i, j) += aik * b.at(k, j);
        }
    return r;
}

inline QMat to_exact(const FMat& a) {
    QMat r(a.rows, a.cols);
    for (size_t k = 0; k < a.e.size(); ++k) r.e[k] = rat_from_float(a.e[k]);
    return r;
}

inline FMat to_float(const QMat& a) {
    FMat r(a.rows, a.cols);
    for (size_t k = 0; k < a.e.size(); ++k) r.e[k] = a.e[k].to_float();
    return r;
}

inline double inf_norm(const FMat& a) {
    double m = 0;
    for (auto& z : a.e) m = std::max(m, std::abs(z));
    return m;
}

inline double max_abs_diff(const FMat& a, const FMat& b) {
    assert(a.rows == b.rows && a.cols == b.cols);
    double m = 0;
    for (size_t k = 0; k < a.e.size(); ++k) m = std::max(m, std::abs(a.e[k] - b.e[k]));
    return m;
}

}  // namespace matlang
