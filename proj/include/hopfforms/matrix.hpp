#pragma once

#include <optional>
#include <stdexcept>
#include <vector>

#include "hopfforms/rational.hpp"

namespace hopfforms {

/*
 * Dense matrices over an exact field type T (Rat, Cyclo, FFElt).  Scalar
 * plumbing is reached through unqualified scalar_zero / scalar_one /
 * scalar_is_zero overloads found by ADL; element types that need a context
 * (finite fields) recover it from the sample element.
 */
template <class T>
struct Mat {
    long rows = 0, cols = 0;
    std::vector<T> a;

    Mat() = default;
    Mat(long r, long c, const T& fill) : rows(r), cols(c), a((size_t)(r * c), fill) {}

    T& at(long i, long j) { return a[(size_t)(i * cols + j)]; }
    const T& at(long i, long j) const { return a[(size_t)(i * cols + j)]; }

    bool operator==(const Mat& o) const {
        return rows == o.rows && cols == o.cols && a == o.a;
    }
    bool operator!=(const Mat& o) const { return !(*this == o); }
};

template <class T>
Mat<T> mat_identity(long n, const T& sample) {
    Mat<T> m(n, n, scalar_zero(sample));
    for (long i = 0; i < n; ++i) m.at(i, i) = scalar_one(sample);
    return m;
}

template <class T>
Mat<T> mat_from_rows(const std::vector<std::vector<T>>& rows) {
    if (rows.empty()) throw std::invalid_argument("mat_from_rows: no rows");
    Mat<T> m((long)rows.size(), (long)rows[0].size(), rows[0][0]);
    for (size_t i = 0; i < rows.size(); ++i) {
        if (rows[i].size() != rows[0].size())
            throw std::invalid_argument("mat_from_rows: ragged rows");
        for (size_t j = 0; j < rows[i].size(); ++j) m.at((long)i, (long)j) = rows[i][j];
    }
    return m;
}

template <class T>
Mat<T> mat_add(const Mat<T>& x, const Mat<T>& y) {
    if (x.rows != y.rows || x.cols != y.cols)
        throw std::invalid_argument("mat_add: shape mismatch");
    Mat<T> r = x;
    for (size_t i = 0; i < r.a.size(); ++i) r.a[i] += y.a[i];
    return r;
}

template <class T>
Mat<T> mat_sub(const Mat<T>& x, const Mat<T>& y) {
    if (x.rows != y.rows || x.cols != y.cols)
        throw std::invalid_argument("mat_sub: shape mismatch");
    Mat<T> r = x;
    for (size_t i = 0; i < r.a.size(); ++i) r.a[i] -= y.a[i];
    return r;
}

template <class T>
Mat<T> mat_scale(const T& c, Mat<T> x) {
    for (auto& v : x.a) v *= c;
    return x;
}

template <class T>
Mat<T> mat_mul(const Mat<T>& x, const Mat<T>& y) {
    if (x.cols != y.rows) throw std::invalid_argument("mat_mul: shape mismatch");
    if (x.a.empty() || y.a.empty()) throw std::invalid_argument("mat_mul: empty operand");
    Mat<T> r(x.rows, y.cols, scalar_zero(x.a[0]));
    for (long i = 0; i < x.rows; ++i)
        for (long k = 0; k < x.cols; ++k) {
            const T& v = x.at(i, k);
            if (scalar_is_zero(v)) continue;
            for (long j = 0; j < y.cols; ++j) r.at(i, j) += v * y.at(k, j);
        }
    return r;
}

template <class T>
Mat<T> mat_transpose(const Mat<T>& x) {
    if (x.a.empty()) return x;
    Mat<T> r(x.cols, x.rows, x.a[0]);
    for (long i = 0; i < x.rows; ++i)
        for (long j = 0; j < x.cols; ++j) r.at(j, i) = x.at(i, j);
    return r;
}

template <class T>
std::vector<T> mat_apply(const Mat<T>& x, const std::vector<T>& v) {
    if ((long)v.size() != x.cols) throw std::invalid_argument("mat_apply: shape mismatch");
    std::vector<T> r((size_t)x.rows, scalar_zero(x.a[0]));
    for (long i = 0; i < x.rows; ++i)
        for (long j = 0; j < x.cols; ++j)
            if (!scalar_is_zero(x.at(i, j))) r[(size_t)i] += x.at(i, j) * v[(size_t)j];
    return r;
}

template <class T>
Mat<T> mat_kron(const Mat<T>& x, const Mat<T>& y) {
    Mat<T> r(x.rows * y.rows, x.cols * y.cols, scalar_zero(x.a[0]));
    for (long i = 0; i < x.rows; ++i)
        for (long j = 0; j < x.cols; ++j) {
            if (scalar_is_zero(x.at(i, j))) continue;
            for (long k = 0; k < y.rows; ++k)
                for (long l = 0; l < y.cols; ++l)
                    r.at(i * y.rows + k, j * y.cols + l) = x.at(i, j) * y.at(k, l);
        }
    return r;
}

template <class T>
T mat_trace(const Mat<T>& x) {
    if (x.rows != x.cols) throw std::invalid_argument("mat_trace: square matrix required");
    T t = scalar_zero(x.a[0]);
    for (long i = 0; i < x.rows; ++i) t += x.at(i, i);
    return t;
}

// In-place row echelon reduction (Gauss-Jordan).  Returns pivot columns.
template <class T>
std::vector<long> mat_rref(Mat<T>& m) {
    std::vector<long> pivots;
    long row = 0;
    for (long col = 0; col < m.cols && row < m.rows; ++col) {
        long sel = -1;
        for (long i = row; i < m.rows; ++i)
            if (!scalar_is_zero(m.at(i, col))) {
                sel = i;
                break;
            }
        if (sel < 0) continue;
        if (sel != row)
            for (long j = 0; j < m.cols; ++j) std::swap(m.at(sel, j), m.at(row, j));
        T inv = scalar_one(m.a[0]) / m.at(row, col);
        for (long j = col; j < m.cols; ++j) m.at(row, j) = m.at(row, j) * inv;
        for (long i = 0; i < m.rows; ++i) {
            if (i == row || scalar_is_zero(m.at(i, col))) continue;
            T f = m.at(i, col);
            for (long j = col; j < m.cols; ++j) m.at(i, j) -= f * m.at(row, j);
        }
        pivots.push_back(col);
        ++row;
    }
    return pivots;
}

template <class T>
long mat_rank(Mat<T> m) {
    return (long)mat_rref(m).size();
}

// Basis of the right kernel {v : m v = 0}.
template <class T>
std::vector<std::vector<T>> mat_kernel(Mat<T> m) {
    if (m.a.empty()) throw std::invalid_argument("mat_kernel: empty matrix");
    T zero = scalar_zero(m.a[0]), one = scalar_one(m.a[0]);
    std::vector<long> pivots = mat_rref(m);
    std::vector<bool> is_pivot((size_t)m.cols, false);
    for (long c : pivots) is_pivot[(size_t)c] = true;
    std::vector<std::vector<T>> basis;
    for (long free = 0; free < m.cols; ++free) {
        if (is_pivot[(size_t)free]) continue;
        std::vector<T> v((size_t)m.cols, zero);
        v[(size_t)free] = one;
        for (size_t r = 0; r < pivots.size(); ++r)
            v[(size_t)pivots[r]] = zero - m.at((long)r, free);
        basis.push_back(std::move(v));
    }
    return basis;
}

// One solution of m x = b, if any.
template <class T>
std::optional<std::vector<T>> mat_solve(const Mat<T>& m, const std::vector<T>& b) {
    if ((long)b.size() != m.rows) throw std::invalid_argument("mat_solve: shape mismatch");
    T zero = scalar_zero(m.a[0]);
    Mat<T> aug(m.rows, m.cols + 1, zero);
    for (long i = 0; i < m.rows; ++i) {
        for (long j = 0; j < m.cols; ++j) aug.at(i, j) = m.at(i, j);
        aug.at(i, m.cols) = b[(size_t)i];
    }
    std::vector<long> pivots = mat_rref(aug);
    if (!pivots.empty() && pivots.back() == m.cols) return std::nullopt;  // inconsistent
    std::vector<T> x((size_t)m.cols, zero);
    for (size_t r = 0; r < pivots.size(); ++r) x[(size_t)pivots[r]] = aug.at((long)r, m.cols);
    return x;
}

template <class T>
std::optional<Mat<T>> mat_inverse(const Mat<T>& m) {
    if (m.rows != m.cols) throw std::invalid_argument("mat_inverse: square matrix required");
    T zero = scalar_zero(m.a[0]);
    Mat<T> aug(m.rows, 2 * m.cols, zero);
    for (long i = 0; i < m.rows; ++i) {
        for (long j = 0; j < m.cols; ++j) aug.at(i, j) = m.at(i, j);
        aug.at(i, m.cols + i) = scalar_one(zero);
    }
    std::vector<long> pivots = mat_rref(aug);
    if ((long)pivots.size() != m.rows || (!pivots.empty() && pivots.back() >= m.cols))
        return std::nullopt;
    Mat<T> inv(m.rows, m.cols, zero);
    for (long i = 0; i < m.rows; ++i)
        for (long j = 0; j < m.cols; ++j) inv.at(i, j) = aug.at(i, m.cols + j);
    return inv;
}

template <class T>
T mat_det(Mat<T> m) {
    if (m.rows != m.cols) throw std::invalid_argument("mat_det: square matrix required");
    T det = scalar_one(m.a[0]);
    for (long col = 0; col < m.cols; ++col) {
        long sel = -1;
        for (long i = col; i < m.rows; ++i)
            if (!scalar_is_zero(m.at(i, col))) {
                sel = i;
                break;
            }
        if (sel < 0) return scalar_zero(m.a[0]);
        if (sel != col) {
            for (long j = 0; j < m.cols; ++j) std::swap(m.at(sel, j), m.at(col, j));
            det = scalar_zero(m.a[0]) - det;
        }
        det *= m.at(col, col);
        T inv = scalar_one(m.a[0]) / m.at(col, col);
        for (long i = col + 1; i < m.rows; ++i) {
            if (scalar_is_zero(m.at(i, col))) continue;
            T f = m.at(i, col) * inv;
            for (long j = col; j < m.cols; ++j) m.at(i, j) -= f * m.at(col, j);
        }
    }
    return det;
}

}  // namespace hopfforms
