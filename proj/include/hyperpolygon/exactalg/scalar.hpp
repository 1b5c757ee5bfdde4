/**
 * @file scalar.hpp
 * @brief Uniform access to the three coefficient fields used throughout:
 *        BigRational, GaussianRational (exact flavor) and std::complex<double>
 *        (float flavor).
 */
#pragma once

#include "hyperpolygon/exactalg/gaussian.hpp"

#include <algorithm>
#include <cmath>
#include <complex>

namespace hyperpolygon {

using Complex = std::complex<double>;

template <class S>
struct scalar_traits;

template <>
struct scalar_traits<BigRational> {
    using real_type = BigRational;
    static constexpr bool is_exact = true;

    static BigRational conj(const BigRational& s) { return s; }
    static BigRational abs2(const BigRational& s) { return BigRational(s * s); }
    static BigRational magnitude(const BigRational& s) { return abs(s); }
    static bool is_zero(const BigRational& s, double = 0.0) { return sgn(s) == 0; }
    static BigRational from_rational(const BigRational& q) { return q; }
    static double to_double(const BigRational& s) { return s.get_d(); }
};

template <>
struct scalar_traits<GaussianRational> {
    using real_type = BigRational;
    static constexpr bool is_exact = true;

    static GaussianRational conj(const GaussianRational& s) { return s.conj(); }
    static BigRational abs2(const GaussianRational& s) { return s.abs2(); }
    /// max(|re|, |im|): exact, and zero iff s is zero.
    static BigRational magnitude(const GaussianRational& s)
    {
        BigRational a = abs(s.re());
        BigRational b = abs(s.im());
        return a < b ? b : a;
    }
    static bool is_zero(const GaussianRational& s, double = 0.0) { return s.is_zero(); }
    static GaussianRational from_rational(const BigRational& q) { return GaussianRational(q); }
    static Complex to_complex(const GaussianRational& s) { return {s.re().get_d(), s.im().get_d()}; }
};

template <>
struct scalar_traits<Complex> {
    using real_type = double;
    static constexpr bool is_exact = false;

    static Complex conj(const Complex& s) { return std::conj(s); }
    static double abs2(const Complex& s) { return std::norm(s); }
    static double magnitude(const Complex& s) { return std::abs(s); }
    static bool is_zero(const Complex& s, double tol) { return std::abs(s) <= tol; }
    static Complex from_rational(const BigRational& q) { return {q.get_d(), 0.0}; }
    static Complex to_complex(const Complex& s) { return s; }
};

template <class S>
inline constexpr bool is_exact_v = scalar_traits<S>::is_exact;

template <class S>
using real_t = typename scalar_traits<S>::real_type;

}  // namespace hyperpolygon
