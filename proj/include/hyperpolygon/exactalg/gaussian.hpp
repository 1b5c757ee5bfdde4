#pragma once

#include "hyperpolygon/exactalg/rational.hpp"

#include <ostream>
#include <stdexcept>

namespace hyperpolygon {

/// Exact complex number re + i*im over the rationals.
class GaussianRational {
public:
    GaussianRational() = default;
    GaussianRational(long v) : re_(v) {}  // NOLINT: implicit from integers is intended
    GaussianRational(BigRational re) : re_(std::move(re)) {}  // NOLINT
    GaussianRational(BigRational re, BigRational im) : re_(std::move(re)), im_(std::move(im)) {}

    const BigRational& re() const { return re_; }
    const BigRational& im() const { return im_; }

    bool is_zero() const { return sgn(re_) == 0 && sgn(im_) == 0; }
    bool is_real() const { return sgn(im_) == 0; }

    GaussianRational conj() const { return {re_, -im_}; }
    BigRational abs2() const { return BigRational(re_ * re_ + im_ * im_); }

    GaussianRational& operator+=(const GaussianRational& o)
    {
        re_ += o.re_;
        im_ += o.im_;
        return *this;
    }
    GaussianRational& operator-=(const GaussianRational& o)
    {
        re_ -= o.re_;
        im_ -= o.im_;
        return *this;
    }
    GaussianRational& operator*=(const GaussianRational& o)
    {
        BigRational re = re_ * o.re_ - im_ * o.im_;
        BigRational im = re_ * o.im_ + im_ * o.re_;
        re_ = std::move(re);
        im_ = std::move(im);
        return *this;
    }
    GaussianRational& operator/=(const GaussianRational& o)
    {
        if (o.is_zero())
            throw std::domain_error("division by zero Gaussian rational");
        const BigRational d = o.abs2();
        BigRational re = (re_ * o.re_ + im_ * o.im_) / d;
        BigRational im = (im_ * o.re_ - re_ * o.im_) / d;
        re_ = std::move(re);
        im_ = std::move(im);
        return *this;
    }

    friend GaussianRational operator+(GaussianRational a, const GaussianRational& b) { return a += b; }
    friend GaussianRational operator-(GaussianRational a, const GaussianRational& b) { return a -= b; }
    friend GaussianRational operator*(GaussianRational a, const GaussianRational& b) { return a *= b; }
    friend GaussianRational operator/(GaussianRational a, const GaussianRational& b) { return a /= b; }
    friend GaussianRational operator-(const GaussianRational& a) { return {-a.re_, -a.im_}; }

    friend bool operator==(const GaussianRational& a, const GaussianRational& b)
    {
        return a.re_ == b.re_ && a.im_ == b.im_;
    }
    friend bool operator!=(const GaussianRational& a, const GaussianRational& b) { return !(a == b); }

    friend std::ostream& operator<<(std::ostream& os, const GaussianRational& g)
    {
        os << g.re_;
        if (!g.is_real())
            os << (sgn(g.im_) < 0 ? "-" : "+") << abs(g.im_) << "i";
        return os;
    }

private:
    BigRational re_;
    BigRational im_;
};

}  // namespace hyperpolygon
