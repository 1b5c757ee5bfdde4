/**
 * @file series.hpp
 * @brief Power series in u with rational coefficients, exact modulo u^{N+1}.
 */
#pragma once

#include "hyperpolygon/exactalg/poly.hpp"

#include <algorithm>
#include <cstddef>
#include <ostream>
#include <vector>

namespace hyperpolygon {

class TruncatedSeries {
public:
    /// The zero series modulo u^{order+1}.
    explicit TruncatedSeries(std::size_t order = 0) : c_(order + 1) {}

    TruncatedSeries(std::vector<BigRational> coeffs)  // NOLINT
        : c_(std::move(coeffs))
    {
        if (c_.empty())
            c_.resize(1);
    }

    static TruncatedSeries from_poly(const DensePoly<BigRational>& p, std::size_t order)
    {
        TruncatedSeries s(order);
        for (std::size_t k = 0; k <= order && k < p.coeffs().size(); ++k)
            s.c_[k] = p.coeffs()[k];
        return s;
    }

    std::size_t order() const { return c_.size() - 1; }
    const std::vector<BigRational>& coeffs() const { return c_; }
    const BigRational& operator[](std::size_t k) const { return c_[k]; }
    BigRational& operator[](std::size_t k) { return c_[k]; }

    bool is_zero() const
    {
        return std::all_of(c_.begin(), c_.end(), [](const BigRational& q) { return sgn(q) == 0; });
    }

    DensePoly<BigRational> to_poly() const { return DensePoly<BigRational>(c_, Var::u); }

    TruncatedSeries truncated(std::size_t order) const
    {
        TruncatedSeries s(order);
        for (std::size_t k = 0; k <= std::min(order, this->order()); ++k)
            s.c_[k] = c_[k];
        return s;
    }

    /// Multiply by u^k, discarding what falls beyond the order.
    TruncatedSeries shifted(std::size_t k) const
    {
        TruncatedSeries s(order());
        for (std::size_t i = 0; i + k <= order(); ++i)
            s.c_[i + k] = c_[i];
        return s;
    }

    /// Multiply by (1 - u)^{-1}: running prefix sums.
    TruncatedSeries div_one_minus_u() const
    {
        TruncatedSeries s(*this);
        for (std::size_t k = 1; k < s.c_.size(); ++k)
            s.c_[k] += s.c_[k - 1];
        return s;
    }

    TruncatedSeries& operator*=(const BigRational& q)
    {
        for (auto& c : c_)
            c *= q;
        return *this;
    }

    friend TruncatedSeries operator+(const TruncatedSeries& a, const TruncatedSeries& b)
    {
        TruncatedSeries s(std::min(a.order(), b.order()));
        for (std::size_t k = 0; k < s.c_.size(); ++k)
            s.c_[k] = a.c_[k] + b.c_[k];
        return s;
    }

    friend TruncatedSeries operator-(const TruncatedSeries& a, const TruncatedSeries& b)
    {
        TruncatedSeries s(std::min(a.order(), b.order()));
        for (std::size_t k = 0; k < s.c_.size(); ++k)
            s.c_[k] = a.c_[k] - b.c_[k];
        return s;
    }

    friend TruncatedSeries operator*(const TruncatedSeries& a, const TruncatedSeries& b)
    {
        TruncatedSeries s(std::min(a.order(), b.order()));
        const std::size_t n = s.order();
        for (std::size_t i = 0; i <= n; ++i) {
            if (sgn(a.c_[i]) == 0)
                continue;
            for (std::size_t j = 0; i + j <= n; ++j)
                s.c_[i + j] += a.c_[i] * b.c_[j];
        }
        return s;
    }

    friend TruncatedSeries operator*(TruncatedSeries a, const BigRational& q) { return a *= q; }

    friend bool operator==(const TruncatedSeries& a, const TruncatedSeries& b) { return a.c_ == b.c_; }

    friend std::ostream& operator<<(std::ostream& os, const TruncatedSeries& s)
    {
        return os << s.to_poly() << " + O(u^" << s.order() + 1 << ")";
    }

private:
    std::vector<BigRational> c_;
};

enum class SeriesOp { add, sub, mul };

inline TruncatedSeries series_arith(const TruncatedSeries& a, const TruncatedSeries& b, SeriesOp op)
{
    switch (op) {
    case SeriesOp::add:
        return a + b;
    case SeriesOp::sub:
        return a - b;
    case SeriesOp::mul:
        return a * b;
    }
    return a;
}

/// (1 - u)^{-s} modulo u^{N+1}: coefficients C(s-1+k, k).
inline TruncatedSeries geom_power(unsigned s, std::size_t order)
{
    TruncatedSeries g(order);
    if (s == 0) {
        g[0] = 1;
        return g;
    }
    for (std::size_t k = 0; k <= order; ++k)
        g[k] = BigRational(binomial(static_cast<long>(s - 1 + k), static_cast<long>(k)));
    return g;
}

}  // namespace hyperpolygon
