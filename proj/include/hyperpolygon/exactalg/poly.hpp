/**
 * @file poly.hpp
 * @brief Dense univariate polynomials over a coefficient field, stored
 *        lowest degree first with trailing zeros stripped.
 */
#pragma once

#include "hyperpolygon/exactalg/scalar.hpp"

#include <cstddef>
#include <limits>
#include <ostream>
#include <stdexcept>
#include <utility>
#include <vector>

namespace hyperpolygon {

/// Variable name carried by a polynomial: u = t^2 for Poincare data, z on the
/// projective line for spectral data.
enum class Var { u, z };

inline const char* var_name(Var v) { return v == Var::u ? "u" : "z"; }

/// Degree reported for the zero polynomial (compares below every real degree).
inline constexpr int kZeroDegree = std::numeric_limits<int>::min();

/// Order reported by vanishing_order for the zero polynomial.
inline constexpr int kInfiniteOrder = std::numeric_limits<int>::max();

template <class T>
class DensePoly {
public:
    using coeff_type = T;

    DensePoly() = default;
    explicit DensePoly(Var v) : var_(v) {}
    explicit DensePoly(std::vector<T> coeffs, Var v = Var::z) : c_(std::move(coeffs)), var_(v) { trim(); }

    static DensePoly constant(T c, Var v = Var::z) { return DensePoly(std::vector<T>{std::move(c)}, v); }

    static DensePoly monomial(T c, std::size_t k, Var v = Var::z)
    {
        std::vector<T> cs(k + 1);
        cs[k] = std::move(c);
        return DensePoly(std::move(cs), v);
    }

    /// (var - a)
    static DensePoly linear_root(const T& a, Var v = Var::z) { return DensePoly({T(-a), T(1)}, v); }

    Var var() const { return var_; }
    bool is_zero() const { return c_.empty(); }
    int degree() const { return c_.empty() ? kZeroDegree : static_cast<int>(c_.size()) - 1; }
    const std::vector<T>& coeffs() const { return c_; }

    /// Coefficient of var^k, zero beyond the degree.
    T coeff(std::size_t k) const { return k < c_.size() ? c_[k] : T{}; }

    T leading() const { return c_.empty() ? T{} : c_.back(); }

    T operator()(const T& x) const
    {
        T acc{};
        for (auto it = c_.rbegin(); it != c_.rend(); ++it)
            acc = T(acc * x + *it);
        return acc;
    }

    DensePoly derivative() const
    {
        std::vector<T> d;
        for (std::size_t k = 1; k < c_.size(); ++k)
            d.push_back(T(c_[k] * T(static_cast<long>(k))));
        return DensePoly(std::move(d), var_);
    }

    DensePoly& operator+=(const DensePoly& o)
    {
        var_ = merged_var(o);
        if (o.c_.size() > c_.size())
            c_.resize(o.c_.size());
        for (std::size_t k = 0; k < o.c_.size(); ++k)
            c_[k] += o.c_[k];
        trim();
        return *this;
    }

    DensePoly& operator-=(const DensePoly& o)
    {
        var_ = merged_var(o);
        if (o.c_.size() > c_.size())
            c_.resize(o.c_.size());
        for (std::size_t k = 0; k < o.c_.size(); ++k)
            c_[k] -= o.c_[k];
        trim();
        return *this;
    }

    DensePoly& operator*=(const T& s)
    {
        for (auto& c : c_)
            c *= s;
        trim();
        return *this;
    }

    friend DensePoly operator+(DensePoly a, const DensePoly& b) { return a += b; }
    friend DensePoly operator-(DensePoly a, const DensePoly& b) { return a -= b; }
    friend DensePoly operator-(DensePoly a)
    {
        for (auto& c : a.c_)
            c = T(-c);
        return a;
    }
    friend DensePoly operator*(DensePoly a, const T& s) { return a *= s; }
    friend DensePoly operator*(const T& s, DensePoly a) { return a *= s; }

    friend DensePoly operator*(const DensePoly& a, const DensePoly& b)
    {
        const Var v = a.merged_var(b);
        if (a.is_zero() || b.is_zero())
            return DensePoly(v);
        std::vector<T> out(a.c_.size() + b.c_.size() - 1);
        for (std::size_t i = 0; i < a.c_.size(); ++i) {
            if (a.c_[i] == T{})
                continue;
            for (std::size_t j = 0; j < b.c_.size(); ++j)
                out[i + j] += a.c_[i] * b.c_[j];
        }
        return DensePoly(std::move(out), v);
    }
    DensePoly& operator*=(const DensePoly& o) { return *this = *this * o; }

    /// Multiply by var^k.
    DensePoly shifted(std::size_t k) const
    {
        if (is_zero())
            return *this;
        std::vector<T> out(k, T{});
        out.insert(out.end(), c_.begin(), c_.end());
        return DensePoly(std::move(out), var_);
    }

    /// Keep only the terms of degree <= n.
    DensePoly truncated(std::size_t n) const
    {
        if (c_.size() <= n + 1)
            return *this;
        return DensePoly(std::vector<T>(c_.begin(), c_.begin() + static_cast<std::ptrdiff_t>(n + 1)), var_);
    }

    friend bool operator==(const DensePoly& a, const DensePoly& b)
    {
        if (a.is_zero() && b.is_zero())
            return true;
        return a.var_ == b.var_ && a.c_ == b.c_;
    }
    friend bool operator!=(const DensePoly& a, const DensePoly& b) { return !(a == b); }

    friend std::ostream& operator<<(std::ostream& os, const DensePoly& p)
    {
        if (p.is_zero())
            return os << "0";
        bool first = true;
        for (std::size_t k = 0; k < p.c_.size(); ++k) {
            if (p.c_[k] == T{})
                continue;
            if (!first)
                os << " + ";
            first = false;
            os << "(" << p.c_[k] << ")";
            if (k > 0)
                os << "*" << var_name(p.var_) << "^" << k;
        }
        return os;
    }

private:
    void trim()
    {
        while (!c_.empty() && c_.back() == T{})
            c_.pop_back();
    }

    Var merged_var(const DensePoly& o) const
    {
        if (is_zero())
            return o.var_;
        if (o.is_zero())
            return var_;
        if (var_ != o.var_)
            throw std::invalid_argument("polynomial variable mismatch");
        return var_;
    }

    std::vector<T> c_;
    Var var_ = Var::z;
};

/// Euclidean division a = q*b + r with deg r < deg b. Requires a field.
template <class T>
std::pair<DensePoly<T>, DensePoly<T>> divmod(const DensePoly<T>& a, const DensePoly<T>& b)
{
    if (b.is_zero())
        throw std::domain_error("polynomial division by zero");
    std::vector<T> rem = a.coeffs();
    const auto& bc = b.coeffs();
    const std::size_t db = bc.size() - 1;
    if (rem.size() < bc.size())
        return {DensePoly<T>(a.var()), a};
    std::vector<T> quo(rem.size() - db);
    const T lead = bc.back();
    for (std::size_t k = rem.size(); k-- > db;) {
        if (rem[k] == T{})
            continue;
        T f = T(rem[k] / lead);
        for (std::size_t j = 0; j <= db; ++j)
            rem[k - db + j] -= f * bc[j];
        quo[k - db] = std::move(f);
    }
    rem.resize(db);
    return {DensePoly<T>(std::move(quo), a.var()), DensePoly<T>(std::move(rem), a.var())};
}

/// Exact quotient a / b; throws std::domain_error if b
/// does not divide a.
template <class T>
DensePoly<T> exact_quotient(const DensePoly<T>& a, const DensePoly<T>& b)
{
    auto [q, r] = divmod(a, b);
    if (!r.is_zero())
        throw std::domain_error("polynomial division is not exact");
    return q;
}

/// Monic greatest common divisor (zero if both are zero).
template <class T>
DensePoly<T> gcd(DensePoly<T> a, DensePoly<T> b)
{
    while (!b.is_zero()) {
        auto r = divmod(a, b).second;
        a = std::move(b);
        b = std::move(r);
    }
    if (a.is_zero())
        return a;
    return a * T(T(1) / a.leading());
}

/// Largest k with (var - a)^k dividing p, by repeated synthetic division;
/// kInfiniteOrder for p = 0.
template <class T>
int vanishing_order(const DensePoly<T>& p, const T& a)
{
    if (p.is_zero())
        return kInfiniteOrder;
    std::vector<T> c = p.coeffs();
    int order = 0;
    while (c.size() > 1) {
        // Horner: c(x) = (x - a) q(x) + c(a)
        std::vector<T> q(c.size() - 1);
        T acc = c.back();
        for (std::size_t k = c.size() - 1; k-- > 0;) {
            q[k] = acc;
            acc = T(acc * a + c[k]);
        }
        if (!(acc == T{}))
            break;
        c = std::move(q);
        ++order;
    }
    return order;
}

/// Newton-form interpolation through (xs[k], ys[k]); xs pairwise distinct.
template <class T>
DensePoly<T> interpolate(const std::vector<T>& xs, const std::vector<T>& ys, Var v = Var::z)
{
    if (xs.size() != ys.size())
        throw std::invalid_argument("interpolate: size mismatch");
    const std::size_t m = xs.size();
    std::vector<T> dd = ys;
    for (std::size_t level = 1; level < m; ++level)
        for (std::size_t k = m - 1; k >= level; --k) {
            dd[k] = T((dd[k] - dd[k - 1]) / (xs[k] - xs[k - level]));
            if (k == level)
                break;
        }
    DensePoly<T> result(v);
    for (std::size_t k = m; k-- > 0;) {
        result = result * DensePoly<T>::linear_root(xs[k], v);
        result += DensePoly<T>::constant(dd[k], v);
    }
    return result;
}

/// prod_k (var - roots[k])
template <class T>
DensePoly<T> from_roots(const std::vector<T>& roots, Var v = Var::z)
{
    DensePoly<T> p = DensePoly<T>::constant(T(1), v);
    for (const auto& r : roots)
        p = p * DensePoly<T>::linear_root(r, v);
    return p;
}

template <class T>
DensePoly<T> power(const DensePoly<T>& p, unsigned k)
{
    DensePoly<T> acc = DensePoly<T>::constant(T(1), p.var());
    for (unsigned i = 0; i < k; ++i)
        acc = acc * p;
    return acc;
}

}  // namespace hyperpolygon
