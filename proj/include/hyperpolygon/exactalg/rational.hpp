/**
 * @file rational.hpp
 * @brief Arbitrary-precision integers and rationals (GMP-backed) and their
 *        "p/q" string form.
 */
#pragma once

#include <gmpxx.h>

#include <stdexcept>
#include <string>
#include <string_view>

namespace hyperpolygon {

using BigInteger = mpz_class;
using BigRational = mpq_class;

/// Canonical "p/q" form; the denominator is always written, even when it is 1.
inline std::string to_string(const BigRational& q)
{
    return q.get_num().get_str() + "/" + q.get_den().get_str();
}

inline std::string to_string(const BigInteger& z) { return z.get_str(); }

/// Parses "p/q" or a bare integer "p". Throws std::invalid_argument otherwise.
inline BigRational parse_rational(std::string_view text)
{
    std::string s(text);
    auto trim = [](std::string& t) {
        const auto b = t.find_first_not_of(" \t");
        const auto e = t.find_last_not_of(" \t");
        t = b == std::string::npos ? std::string{} : t.substr(b, e - b + 1);
    };
    trim(s);
    if (s.empty())
        throw std::invalid_argument("empty rational");

    const auto slash = s.find('/');
    auto parse_int = [&](const std::string& part) {
        if (part.empty())
            throw std::invalid_argument("malformed rational '" + s + "'");
        std::size_t start = (part[0] == '-' || part[0] == '+') ? 1 : 0;
        if (start == part.size())
            throw std::invalid_argument("malformed rational '" + s + "'");
        for (std::size_t i = start; i < part.size(); ++i)
            if (part[i] < '0' || part[i] > '9')
                throw std::invalid_argument("malformed rational '" + s + "'");
        return BigInteger(part[0] == '+' ? part.substr(1) : part, 10);
    };

    BigInteger num = parse_int(s.substr(0, slash));
    BigInteger den = 1;
    if (slash != std::string::npos) {
        den = parse_int(s.substr(slash + 1));
        if (den == 0)
            throw std::invalid_argument("zero denominator in '" + s + "'");
    }
    BigRational q(num, den);
    q.canonicalize();
    return q;
}

inline BigInteger factorial(unsigned long n)
{
    BigInteger f;
    mpz_fac_ui(f.get_mpz_t(), n);
    return f;
}

inline BigInteger binomial(long n, long k)
{
    if (k < 0 || n < 0 || k > n)
        return 0;
    BigInteger b;
    mpz_bin_uiui(b.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
    return b;
}

/// n (n-1) ... (n-k+1)
inline BigInteger falling_factorial(long n, long k)
{
    BigInteger f = 1;
    for (long i = 0; i < k; ++i)
        f *= n - i;
    return f;
}

}  // namespace hyperpolygon
