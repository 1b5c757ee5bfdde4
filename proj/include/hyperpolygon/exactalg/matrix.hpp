/**
 * @file matrix.hpp
 * @brief Small dense row-major matrices over any ring (scalars or polynomials),
 *        exact Gaussian elimination over a field, and the Faddeev-LeVerrier
 *        characteristic polynomial.
 */
#pragma once

#include "hyperpolygon/exactalg/poly.hpp"

#include <cstddef>
#include <ostream>
#include <stdexcept>
#include <utility>
#include <vector>

namespace hyperpolygon {

template <class T>
class Matrix {
public:
    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols, const T& fill = T{}) : rows_(rows), cols_(cols), a_(rows * cols, fill) {}

    Matrix(std::initializer_list<std::initializer_list<T>> init)
    {
        rows_ = init.size();
        cols_ = rows_ ? init.begin()->size() : 0;
        a_.reserve(rows_ * cols_);
        for (const auto& row : init) {
            if (row.size() != cols_)
                throw std::invalid_argument("ragged matrix initializer");
            a_.insert(a_.end(), row.begin(), row.end());
        }
    }

    static Matrix identity(std::size_t n, const T& one = T(1))
    {
        Matrix m(n, n);
        for (std::size_t i = 0; i < n; ++i)
            m(i, i) = one;
        return m;
    }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    bool is_square() const { return rows_ == cols_; }

    T& operator()(std::size_t i, std::size_t j) { return a_[i * cols_ + j]; }
    const T& operator()(std::size_t i, std::size_t j) const { return a_[i * cols_ + j]; }

    const std::vector<T>& data() const { return a_; }

    Matrix col(std::size_t j) const
    {
        Matrix c(rows_, 1);
        for (std::size_t i = 0; i < rows_; ++i)
            c(i, 0) = (*this)(i, j);
        return c;
    }

    Matrix row(std::size_t i) const
    {
        Matrix r(1, cols_);
        for (std::size_t j = 0; j < cols_; ++j)
            r(0, j) = (*this)(i, j);
        return r;
    }

    Matrix transpose() const
    {
        Matrix t(cols_, rows_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j)
                t(j, i) = (*this)(i, j);
        return t;
    }

    Matrix& operator+=(const Matrix& o)
    {
        check_same_shape(o);
        for (std::size_t k = 0; k < a_.size(); ++k)
            a_[k] += o.a_[k];
        return *this;
    }
    Matrix& operator-=(const Matrix& o)
    {
        check_same_shape(o);
        for (std::size_t k = 0; k < a_.size(); ++k)
            a_[k] -= o.a_[k];
        return *this;
    }

    template <class U>
    Matrix& scale(const U& s)
    {
        for (auto& v : a_)
            v = v * s;
        return *this;
    }

    friend Matrix operator+(Matrix a, const Matrix& b) { return a += b; }
    friend Matrix operator-(Matrix a, const Matrix& b) { return a -= b; }
    friend Matrix operator-(Matrix a)
    {
        for (auto& v : a.a_)
            v = -v;
        return a;
    }

    friend Matrix operator*(const Matrix& a, const Matrix& b)
    {
        if (a.cols_ != b.rows_)
            throw std::invalid_argument("matrix product shape mismatch");
        Matrix c(a.rows_, b.cols_);
        for (std::size_t i = 0; i < a.rows_; ++i)
            for (std::size_t k = 0; k < a.cols_; ++k) {
                const T& aik = a(i, k);
                if (aik == T{})
                    continue;
                for (std::size_t j = 0; j < b.cols_; ++j)
                    c(i, j) += aik * b(k, j);
            }
        return c;
    }

    friend bool operator==(const Matrix& a, const Matrix& b)
    {
        return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.a_ == b.a_;
    }
    friend bool operator!=(const Matrix& a, const Matrix& b) { return !(a == b); }

    friend std::ostream& operator<<(std::ostream& os, const Matrix& m)
    {
        os << "[";
        for (std::size_t i = 0; i < m.rows_; ++i) {
            os << (i ? "; " : "");
            for (std::size_t j = 0; j < m.cols_; ++j)
                os << (j ? ", " : "") << m(i, j);
        }
        return os << "]";
    }

private:
    void check_same_shape(const Matrix& o) const
    {
        if (rows_ != o.rows_ || cols_ != o.cols_)
            throw std::invalid_argument("matrix shape mismatch");
    }

    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<T> a_;
};

template <class T>
Matrix<T> scaled(Matrix<T> m, const T& s)
{
    return m.scale(s);
}

template <class T>
T trace(const Matrix<T>& m)
{
    T t{};
    for (std::size_t i = 0; i < std::min(m.rows(), m.cols()); ++i)
        t += m(i, i);
    return t;
}

template <class S>
Matrix<S> adjoint(const Matrix<S>& m)
{
    Matrix<S> t(m.cols(), m.rows());
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j)
            t(j, i) = scalar_traits<S>::conj(m(i, j));
    return t;
}

template <class S>
real_t<S> frobenius_norm2(const Matrix<S>& m)
{
    real_t<S> acc{};
    for (const auto& v : m.data())
        acc += scalar_traits<S>::abs2(v);
    return acc;
}

template <class S>
bool is_zero_matrix(const Matrix<S>& m)
{
    for (const auto& v : m.data())
        if (!(v == S{}))
            return false;
    return true;
}

// ============================================================================
// Exact elimination over a field
// ============================================================================

/// Reduced row echelon form; returns the pivot columns.
template <class T>
std::vector<std::size_t> rref_in_place(Matrix<T>& m)
{
    std::vector<std::size_t> pivots;
    std::size_t row = 0;
    for (std::size_t col = 0; col < m.cols() && row < m.rows(); ++col) {
        std::size_t p = row;
        while (p < m.rows() && m(p, col) == T{})
            ++p;
        if (p == m.rows())
            continue;
        if (p != row)
            for (std::size_t j = 0; j < m.cols(); ++j)
                std::swap(m(p, j), m(row, j));
        const T inv = T(T(1) / m(row, col));
        for (std::size_t j = col; j < m.cols(); ++j)
            m(row, j) = T(m(row, j) * inv);
        for (std::size_t i = 0; i < m.rows(); ++i) {
            if (i == row || m(i, col) == T{})
                continue;
            const T f = m(i, col);
            for (std::size_t j = col; j < m.cols(); ++j)
                m(i, j) -= f * m(row, j);
        }
        pivots.push_back(col);
        ++row;
    }
    return pivots;
}

template <class T>
std::size_t exact_rank(Matrix<T> m)
{
    return rref_in_place(m).size();
}

/// Basis of {v : m v = 0}, one column vector per basis element. Each basis
/// vector has a single free coordinate equal to 1.
template <class T>
std::vector<std::vector<T>> nullspace(Matrix<T> m)
{
    const auto pivots = rref_in_place(m);
    std::vector<bool> is_pivot(m.cols(), false);
    for (auto p : pivots)
        is_pivot[p] = true;
    std::vector<std::vector<T>> basis;
    for (std::size_t f = 0; f < m.cols(); ++f) {
        if (is_pivot[f])
            continue;
        std::vector<T> v(m.cols());
        v[f] = T(1);
        for (std::size_t r = 0; r < pivots.size(); ++r)
            v[pivots[r]] = T(-m(r, f));
        basis.push_back(std::move(v));
    }
    return basis;
}

template <class T>
T determinant(Matrix<T> m)
{
    if (!m.is_square())
        throw std::invalid_argument("determinant of non-square matrix");
    const std::size_t n = m.rows();
    T det = T(1);
    for (std::size_t c = 0; c < n; ++c) {
        std::size_t p = c;
        while (p < n && m(p, c) == T{})
            ++p;
        if (p == n)
            return T{};
        if (p != c) {
            for (std::size_t j = 0; j < n; ++j)
                std::swap(m(p, j), m(c, j));
            det = T(-det);
        }
        det = T(det * m(c, c));
        const T inv = T(T(1) / m(c, c));
        for (std::size_t i = c + 1; i < n; ++i) {
            if (m(i, c) == T{})
                continue;
            const T f = T(m(i, c) * inv);
            for (std::size_t j = c; j < n; ++j)
                m(i, j) -= f * m(c, j);
        }
    }
    return det;
}

// ============================================================================
// Characteristic polynomial
// ============================================================================

/// det(lambda*Id - A) = lambda^r + c_1 lambda^{r-1} + ... + c_r, returned as
/// (c_1, ..., c_r). Faddeev-LeVerrier: M_k = A M_{k-1} + c_{k-1} Id,
/// c_k = -tr(A M_k) / k. `one` is the ring unit; `inv_int(k)` returns the
/// scalar 1/k acting on the ring.
template <class T, class InvInt>
std::vector<T> faddeev_leverrier(const Matrix<T>& a, const T& one, InvInt inv_int)
{
    if (!a.is_square())
        throw std::invalid_argument("characteristic polynomial of non-square matrix");
    const std::size_t r = a.rows();
    std::vector<T> c(r + 1);
    c[0] = one;
    Matrix<T> m(r, r);
    const Matrix<T> id = Matrix<T>::identity(r, one);
    for (std::size_t k = 1; k <= r; ++k) {
        m = a * m + scaled(id, c[k - 1]);
        c[k] = -(trace(a * m) * inv_int(k));
    }
    c.erase(c.begin());
    return c;
}

/// Characteristic coefficients of a scalar matrix.
template <class S>
std::vector<S> matrix_charpoly(const Matrix<S>& a)
{
    return faddeev_leverrier(a, S(1), [](std::size_t k) { return S(S(1) / S(static_cast<long>(k))); });
}

template <class S>
using PolyMatrix = Matrix<DensePoly<S>>;

/// Characteristic coefficients c_1..c_r of a polynomial matrix, exact.
template <class S>
std::vector<DensePoly<S>> poly_matrix_charpoly(const PolyMatrix<S>& psi)
{
    const auto one = DensePoly<S>::constant(S(1), Var::z);
    return faddeev_leverrier(psi, one, [](std::size_t k) { return S(S(1) / S(static_cast<long>(k))); });
}

/// Entrywise evaluation of a polynomial matrix.
template <class S>
Matrix<S> evaluate(const PolyMatrix<S>& m, const S& z)
{
    Matrix<S> out(m.rows(), m.cols());
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j)
            out(i, j) = m(i, j)(z);
    return out;
}

template <class S>
int max_degree(const PolyMatrix<S>& m)
{
    int d = kZeroDegree;
    for (const auto& p : m.data())
        d = std::max(d, p.degree());
    return d;
}

}  // namespace hyperpolygon
