/**
 * @file betti.hpp
 * @brief Poincare polynomials of hyperpolygon spaces X^r_n from the Morse
 *        recursion, the closed rank-2 formula, genericity of length vectors
 *        and the dimension count.
 *
 * Everything is a polynomial or truncated power series in u = t^2.
 */
#pragma once

#include "hyperpolygon/combinat.hpp"
#include "hyperpolygon/errors.hpp"
#include "hyperpolygon/exactalg/series.hpp"

#include <cstdint>
#include <map>
#include <mutex>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace hyperpolygon {

inline constexpr int kDefaultMargin = 5;

struct PoincarePoly {
    int r = 0;
    int n = 0;
    DensePoly<BigRational> poly{Var::u};

    /// Coefficient of u^k (the Betti number b_{2k}).
    BigRational coeff(std::size_t k) const { return poly.coeff(k); }
};

/// Strictly positive rational edge lengths alpha_1..alpha_n.
class LengthVector {
public:
    LengthVector() = default;
    explicit LengthVector(std::vector<BigRational> alpha) : alpha_(std::move(alpha))
    {
        for (std::size_t i = 0; i < alpha_.size(); ++i)
            if (sgn(alpha_[i]) <= 0)
                throw ValidationError("length vector entries must be positive", static_cast<int>(i) + 1);
    }

    /// (1, ..., 1, 2), the default solver target. Not generic for every
    /// (r, n): at r = 2 and odd n the subset of (n+1)/2 unit edges balances.
    static LengthVector standard(int n)
    {
        std::vector<BigRational> a(static_cast<std::size_t>(n), BigRational(1));
        if (n > 0)
            a.back() = 2;
        return LengthVector(std::move(a));
    }

    std::size_t size() const { return alpha_.size(); }
    const BigRational& operator[](std::size_t i) const { return alpha_[i]; }
    const std::vector<BigRational>& values() const { return alpha_; }

    BigRational total() const
    {
        BigRational s = 0;
        for (const auto& a : alpha_)
            s += a;
        return s;
    }

private:
    std::vector<BigRational> alpha_;
};

struct GenericityWitness {
    int r_prime = 0;
    std::vector<int> subset;  ///< 1-based indices, increasing
};

struct GenericityReport {
    bool generic = true;
    std::optional<GenericityWitness> witness;
};

/// Largest n for which genericity_check enumerates subsets.
inline constexpr int kMaxGenericityPoints = 22;

/// Exhaustive test of r' alpha_[n] != r alpha_S over 0 <= r' <= r and proper
/// subsets S with (r'-1)(#S - r' - 1) >= 0, skipping (r' = 0, S = {}).
/// Subsets are visited by increasing bitmask inside increasing r'.
inline GenericityReport genericity_check(int r, const LengthVector& alpha)
{
    if (r < 1)
        throw ValidationError("genericity_check: rank must be >= 1");
    const int n = static_cast<int>(alpha.size());
    if (n < 1)
        throw ValidationError("genericity_check: empty length vector");
    if (n > kMaxGenericityPoints)
        throw ValidationError("genericity_check: too many points for exhaustive check");

    // Clear denominators so subset sums are integers.
    BigInteger den = 1;
    for (const auto& a : alpha.values())
        mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), a.get_den_mpz_t());
    std::vector<BigInteger> w(n);
    for (int i = 0; i < n; ++i)
        w[i] = alpha[i].get_num() * (den / alpha[i].get_den());

    const std::uint32_t full = (std::uint32_t{1} << n) - 1;
    std::vector<BigInteger> sum(std::size_t{full} + 1);
    for (std::uint32_t mask = 1; mask <= full; ++mask) {
        const int low = __builtin_ctz(mask);
        sum[mask] = sum[mask & (mask - 1)] + w[low];
    }
    const BigInteger& total = sum[full];

    for (int rp = 0; rp <= r; ++rp) {
        const BigInteger lhs = rp * total;
        for (std::uint32_t mask = 0; mask < full; ++mask) {
            if (rp == 0 && mask == 0)
                continue;
            const int size = __builtin_popcount(mask);
            if ((rp - 1) * (size - rp - 1) < 0)
                continue;
            if (lhs == r * sum[mask]) {
                GenericityWitness wit{rp, {}};
                for (int i = 0; i < n; ++i)
                    if (mask >> i & 1U)
                        wit.subset.push_back(i + 1);
                return {false, std::move(wit)};
            }
        }
    }
    return {true, std::nullopt};
}

struct Dimensions {
    long dim_X;  ///< complex dimension 2(r-1)(n-r-1)
    long dim_B;  ///< sum_{i=2}^r (n - 2i + 1), the Hitchin base
};

inline Dimensions dimensions(int r, int n)
{
    if (r < 2)
        throw ValidationError("dimensions: rank must be >= 2");
    if (n <= r)
        throw ValidationError("dimensions: need n > r");
    long base = 0;
    for (int i = 2; i <= r; ++i)
        base += n - 2 * i + 1;
    return {2L * (r - 1) * (n - r - 1), base};
}

/// Working truncation order (r-1)(n-r-1) + margin, clamped below at margin.
inline std::size_t truncation_order(int r, int n, int margin)
{
    const long d = static_cast<long>(r - 1) * (n - r - 1);
    return static_cast<std::size_t>(std::max(0L, d) + std::max(0, margin));
}

/// Memoized solver of the recursion for P(r, n).
///
/// Terms are regrouped so that each P(r, n) costs one pass over (lambda, K)
/// with K = sum(rho): the rho-sum for fixed lambda and K is an n-independent
/// Laurent polynomial B_lambda[K], built once by convolution, and the
/// (1-u)^{-s} factors are applied by a Horner pass over s.
class BettiEngine {
public:
    explicit BettiEngine(int margin = kDefaultMargin) : margin_(margin)
    {
        if (margin < 0)
            throw ValidationError("margin must be nonnegative");
    }

    int margin() const { return margin_; }

    PoincarePoly poincare(int r, int n)
    {
        check_args(r, n);
        std::lock_guard lock(mutex_);
        ensure_row(r, n);
        return {r, n, memo_.at({r, n}).poly};
    }

    /// The series before truncation to a polynomial, modulo u^{N+1}.
    TruncatedSeries poincare_series(int r, int n)
    {
        check_args(r, n);
        std::lock_guard lock(mutex_);
        ensure_row(r, n);
        return memo_.at({r, n}).series;
    }

private:
    /// sum_k c[k] u^{low + k}
    struct Laurent {
        long low = 0;
        std::vector<BigRational> c;
        bool is_zero() const { return c.empty(); }
    };

    struct Entry {
        TruncatedSeries series;
        DensePoly<BigRational> poly{Var::u};
    };

    static void check_args(int r, int n)
    {
        if (r < 1)
            throw ValidationError("poincare: rank must be >= 1");
        if (n < 1)
            throw ValidationError("poincare: n must be >= 1");
    }

    static Laurent laurent_product(const Laurent& a, const Laurent& b)
    {
        if (a.is_zero() || b.is_zero())
            return {};
        Laurent out{a.low + b.low, std::vector<BigRational>(a.c.size() + b.c.size() - 1)};
        for (std::size_t i = 0; i < a.c.size(); ++i) {
            if (sgn(a.c[i]) == 0)
                continue;
            for (std::size_t j = 0; j < b.c.size(); ++j)
                if (sgn(b.c[j]) != 0)
                    out.c[i + j] += a.c[i] * b.c[j];
        }
        return out;
    }

    static void laurent_add(Laurent& acc, const Laurent& x, const BigRational& scale)
    {
        if (x.is_zero())
            return;
        if (acc.is_zero()) {
            acc.low = x.low;
            acc.c.clear();
        }
        const long lo = std::min(acc.low, x.low);
        const long hi = std::max(acc.low + static_cast<long>(acc.c.size()), x.low + static_cast<long>(x.c.size()));
        if (lo < acc.low || hi > acc.low + static_cast<long>(acc.c.size())) {
            std::vector<BigRational> grown(static_cast<std::size_t>(hi - lo));
            for (std::size_t k = 0; k < acc.c.size(); ++k)
                grown[static_cast<std::size_t>(acc.low - lo) + k] = acc.c[k];
            acc.c = std::move(grown);
            acc.low = lo;
        }
        for (std::size_t k = 0; k < x.c.size(); ++k)
            acc.c[static_cast<std::size_t>(x.low - acc.low) + k] += scale * x.c[k];
    }

    /// F_a[rho] = P(a, rho) u^{-a(rho-a)}.
    const Laurent& factor(int a, int rho) const { return factors_.at(a).at(static_cast<std::size_t>(rho)); }

    void store(int r, int n, TruncatedSeries series)
    {
        Entry e{series, series.to_poly()};
        auto& row = factors_[r];
        if (row.size() <= static_cast<std::size_t>(n))
            row.resize(static_cast<std::size_t>(n) + 1);
        row[n] = Laurent{-static_cast<long>(r) * (n - r), e.poly.coeffs()};
        memo_.emplace(std::make_pair(r, n), std::move(e));
    }

    /// Compute P(r, m) for all 1 <= m <= nmax that are not cached yet.
    void ensure_row(int r, int nmax)
    {
        const auto it = rows_done_.find(r);
        int done = it == rows_done_.end() ? 0 : it->second;
        if (done >= nmax)
            return;
        for (int a = 1; a < r; ++a)
            ensure_row(a, nmax);

        const auto parts = partitions(r);
        std::vector<const std::vector<Laurent>*> tables;
        for (const auto& lam : parts)
            tables.push_back(lam.length() > 1 ? &ensure_block(lam, nmax) : nullptr);

        for (int m = done + 1; m <= nmax; ++m) {
            const std::size_t order = truncation_order(r, m, margin_);
            if (r == 1 || m <= r) {
                TruncatedSeries s(order);
                s[0] = r == 1 ? 1 : 0;
                store(r, m, std::move(s));
                continue;
            }
            store(r, m, solve(r, m, order, parts, tables));
        }
        rows_done_[r] = nmax;
    }

    /// B_lambda[K] = sum over rho >= lambda with sum(rho) = K of
    /// multinomial(K; rho) prod_j F_{lambda_j}[rho_j], for K <= nmax.
    const std::vector<Laurent>& ensure_block(const Partition& lam, int nmax)
    {
        auto& cached = blocks_[lam];
        if (cached.size() > static_cast<std::size_t>(nmax))
            return cached;
        const auto& parts = lam.parts();
        std::vector<Laurent> acc(static_cast<std::size_t>(nmax) + 1);
        int acc_min = parts.back();
        for (int k = acc_min; k <= nmax; ++k)
            acc[k] = factor(parts.back(), k);
        for (std::size_t j = parts.size() - 1; j-- > 0;) {
            const int a = parts[j];
            std::vector<Laurent> next(static_cast<std::size_t>(nmax) + 1);
            for (int k = a + acc_min; k <= nmax; ++k)
                for (int rho = a; rho <= k - acc_min; ++rho) {
                    const Laurent prod = laurent_product(factor(a, rho), acc[k - rho]);
                    laurent_add(next[k], prod, BigRational(binomial(k, rho)));
                }
            acc = std::move(next);
            acc_min += a;
        }
        cached = std::move(acc);
        return cached;
    }

    TruncatedSeries solve(int r, int m, std::size_t order, const std::vector<Partition>& parts,
                          const std::vector<const std::vector<Laurent>*>& tables)
    {
        // Q[s] collects everything multiplied by (1-u)^{-s}.
        std::vector<TruncatedSeries> q(static_cast<std::size_t>(m), TruncatedSeries(order));
        q[m - 1] = TruncatedSeries::from_poly(gaussian_binomial(r, m), order);

        const long shift = static_cast<long>(r) * (m - r);
        for (std::size_t p = 0; p < parts.size(); ++p) {
            const Partition& lam = parts[p];
            const BigRational inv_mult = BigRational(1) / BigRational(mult_factorial(lam));
            const long len = static_cast<long>(lam.length());
            for (int k = r; k <= m; ++k) {
                const bool single = tables[p] == nullptr;
                if (single && k == m)
                    continue;  // the unknown P(r, m) itself
                const Laurent& b = single ? factor(r, k) : (*tables[p])[k];
                if (b.is_zero())
                    continue;
                const BigRational weight = BigRational(binomial(m, k)) * inv_mult;
                const long s = len + m - 1 - k;
                for (std::size_t i = 0; i < b.c.size(); ++i) {
                    if (sgn(b.c[i]) == 0)
                        continue;
                    const long e = shift + b.low + static_cast<long>(i);
                    if (e < 0)
                        throw std::logic_error("recursion term with negative u-exponent");
                    if (static_cast<std::size_t>(e) <= order)
                        q[s][e] -= weight * b.c[i];
                }
            }
        }

        TruncatedSeries acc = q.back();
        for (std::size_t s = q.size() - 1; s-- > 0;)
            acc = q[s] + acc.div_one_minus_u();
        return acc;
    }

    int margin_;
    std::recursive_mutex mutex_;
    std::map<std::pair<int, int>, Entry> memo_;
    std::map<int, int> rows_done_;
    std::map<int, std::vector<Laurent>> factors_;
    std::map<Partition, std::vector<Laurent>> blocks_;
};

/// Process-wide engine with the default margin.
inline BettiEngine& default_engine()
{
    static BettiEngine engine;
    return engine;
}

inline PoincarePoly poincare(int r, int n) { return default_engine().poincare(r, n); }

/// The closed rank-2 formula, evaluated term by term with its own memo.
inline PoincarePoly poincare_rank2(int n, int margin = kDefaultMargin)
{
    if (n < 3)
        throw ValidationError("poincare_rank2: n must be >= 3");
    std::vector<DensePoly<BigRational>> p(static_cast<std::size_t>(n) + 1, DensePoly<BigRational>(Var::u));
    for (int m = 3; m <= n; ++m) {
        const std::size_t order = static_cast<std::size_t>(m - 3 + margin);
        TruncatedSeries acc = TruncatedSeries::from_poly(gaussian_binomial(2, m), order) * geom_power(m - 1, order);
        for (int k = 3; k <= m - 1; ++k) {
            const TruncatedSeries term = TruncatedSeries::from_poly(p[k], order).shifted(2 * (m - k)) *
                                         geom_power(m - k, order) * BigRational(binomial(m, k));
            acc = acc - term;
        }
        TruncatedSeries pairs(order);
        for (int k1 = 1; k1 <= m - 1; ++k1)
            for (int k2 = 1; k2 <= m - k1; ++k2) {
                const long e = 2L * m - 2 - k1 - k2;
                if (e > static_cast<long>(order))
                    continue;
                TruncatedSeries one(order);
                one[0] = 1;
                pairs = pairs + one.shifted(static_cast<std::size_t>(e)) * geom_power(m + 1 - k1 - k2, order) *
                                    BigRational(binomial(m, k1) * binomial(m - k1, k2));
            }
        acc = acc - pairs * BigRational(1, 2);
        p[m] = acc.to_poly();
    }
    return {2, n, p[n]};
}

/// Left side minus right side of the recursion at (r, n), with every P on the
/// right (including P(r, n) itself) taken from the engine, summed over the
/// full (lambda, rho) index set term by term.
inline TruncatedSeries recursion_residual(int r, int n, int margin, BettiEngine& engine = default_engine())
{
    if (r < 1 || n < 1)
        throw ValidationError("recursion_residual: need r >= 1 and n >= 1");
    const std::size_t order = truncation_order(r, n, margin);
    TruncatedSeries residual = TruncatedSeries::from_poly(gaussian_binomial(r, n), order) * geom_power(n - 1, order);
    for (const auto& lam : partitions(r)) {
        const BigRational inv_mult = BigRational(1) / BigRational(mult_factorial(lam));
        for (const auto& rho : admissible_rho(lam, n)) {
            const auto d = critical_datum(lam, rho, n);
            if (static_cast<std::size_t>(d.beta) > order)
                continue;
            TruncatedSeries term = geom_power(static_cast<unsigned>(d.s), order).shifted(static_cast<std::size_t>(d.beta));
            for (std::size_t j = 0; j < rho.size(); ++j)
                term = term * TruncatedSeries::from_poly(engine.poincare(lam[j], rho[j]).poly, order);
            residual = residual - term * (BigRational(d.weight) * inv_mult);
        }
    }
    return residual;
}

}  // namespace hyperpolygon
