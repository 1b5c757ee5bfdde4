/**
 * @file combinat.hpp
 * @brief Index set of the Betti recursion: partitions of the rank, admissible
 *        size tuples, and the weights attached to each critical datum.
 */
#pragma once

#include "hyperpolygon/exactalg/poly.hpp"

#include <compare>
#include <cstddef>
#include <iterator>
#include <map>
#include <numeric>
#include <ostream>
#include <stdexcept>
#include <vector>

namespace hyperpolygon {

/// Weakly decreasing list of positive parts.
class Partition {
public:
    Partition() = default;
    explicit Partition(std::vector<int> parts) : parts_(std::move(parts))
    {
        for (std::size_t i = 0; i < parts_.size(); ++i) {
            if (parts_[i] < 1)
                throw std::invalid_argument("partition parts must be positive");
            if (i > 0 && parts_[i] > parts_[i - 1])
                throw std::invalid_argument("partition parts must be weakly decreasing");
        }
    }

    const std::vector<int>& parts() const { return parts_; }
    std::size_t length() const { return parts_.size(); }
    int operator[](std::size_t j) const { return parts_[j]; }
    int sum() const { return std::accumulate(parts_.begin(), parts_.end(), 0); }

    auto operator<=>(const Partition&) const = default;

    friend std::ostream& operator<<(std::ostream& os, const Partition& p)
    {
        os << "(";
        for (std::size_t j = 0; j < p.parts_.size(); ++j)
            os << (j ? "," : "") << p.parts_[j];
        return os << ")";
    }

private:
    std::vector<int> parts_;
};

using SizeTuple = std::vector<int>;

/// All partitions of r, largest first part first: (r), (r-1,1), ..., (1,...,1).
inline std::vector<Partition> partitions(int r)
{
    if (r < 1)
        throw std::invalid_argument("partitions: r must be >= 1");
    std::vector<Partition> out;
    std::vector<int> cur;
    auto rec = [&](auto&& self, int remaining, int max_part) -> void {
        if (remaining == 0) {
            out.emplace_back(cur);
            return;
        }
        for (int p = std::min(remaining, max_part); p >= 1; --p) {
            cur.push_back(p);
            self(self, remaining - p, p);
            cur.pop_back();
        }
    };
    rec(rec, r, r);
    return out;
}

/// Restartable range over ordered tuples rho with rho_j >= lambda_j and
/// sum(rho) <= n, in lexicographic order.
class AdmissibleRho {
public:
    class iterator {
    public:
        using iterator_category = std::input_iterator_tag;
        using value_type = SizeTuple;
        using difference_type = std::ptrdiff_t;
        using pointer = const SizeTuple*;
        using reference = const SizeTuple&;

        iterator() = default;
        iterator(const AdmissibleRho* owner, bool end) : owner_(owner), done_(end)
        {
            if (!done_) {
                cur_ = owner_->lambda_.parts();
                sum_ = owner_->lambda_.sum();
                done_ = sum_ > owner_->n_;
            }
        }

        reference operator*() const { return cur_; }
        pointer operator->() const { return &cur_; }

        iterator& operator++()
        {
            advance();
            return *this;
        }
        iterator operator++(int)
        {
            iterator tmp = *this;
            advance();
            return tmp;
        }

        friend bool operator==(const iterator& a, const iterator& b)
        {
            if (a.done_ || b.done_)
                return a.done_ == b.done_;
            return a.cur_ == b.cur_;
        }

    private:
        void advance()
        {
            const auto& lam = owner_->lambda_.parts();
            // Increment the rightmost coordinate that still fits, reset the tail.
            for (std::size_t j = cur_.size(); j-- > 0;) {
                int tail = 0;
                for (std::size_t k = j + 1; k < cur_.size(); ++k)
                    tail += cur_[k] - lam[k];
                if (sum_ - tail + 1 <= owner_->n_) {
                    ++cur_[j];
                    for (std::size_t k = j + 1; k < cur_.size(); ++k)
                        cur_[k] = lam[k];
                    sum_ = sum_ - tail + 1;
                    return;
                }
            }
            done_ = true;
        }

        const AdmissibleRho* owner_ = nullptr;
        SizeTuple cur_;
        int sum_ = 0;
        bool done_ = true;
    };

    AdmissibleRho(Partition lambda, int n) : lambda_(std::move(lambda)), n_(n)
    {
        if (n < 1)
            throw std::invalid_argument("admissible_rho: n must be >= 1");
    }

    iterator begin() const { return iterator(this, false); }
    iterator end() const { return iterator(this, true); }

private:
    Partition lambda_;
    int n_;
};

inline AdmissibleRho admissible_rho(const Partition& lambda, int n) { return AdmissibleRho(lambda, n); }

/// C(n, rho_1) C(n - rho_1, rho_2) ...; zero when sum(rho) > n.
inline BigInteger multinomial(int n, const SizeTuple& rho)
{
    BigInteger m = 1;
    int left = n;
    for (int part : rho) {
        if (part < 0)
            throw std::invalid_argument("multinomial: negative entry");
        if (part > left)
            return 0;
        m *= binomial(left, part);
        left -= part;
    }
    return m;
}

/// Product over distinct part values of (multiplicity)!.
inline BigInteger mult_factorial(const Partition& lambda)
{
    std::map<int, unsigned long> mult;
    for (int p : lambda.parts())
        ++mult[p];
    BigInteger f = 1;
    for (const auto& [value, count] : mult)
        f *= factorial(count);
    return f;
}

struct MorseData {
    long beta;  ///< complex Morse index
    long s;     ///< rank of the residual torus: exponent of (1-u)^{-1}
};

/// beta = r(n-r) + sum_j lambda_j (lambda_j - rho_j),
/// s    = l(lambda) + n - 1 - sum_j rho_j.
inline MorseData morse_data(const Partition& lambda, const SizeTuple& rho, int n)
{
    if (rho.size() != lambda.length())
        throw std::invalid_argument("morse_data: rho and lambda lengths differ");
    const long r = lambda.sum();
    long beta = r * (n - r);
    long rho_sum = 0;
    for (std::size_t j = 0; j < rho.size(); ++j) {
        beta += static_cast<long>(lambda[j]) * (lambda[j] - rho[j]);
        rho_sum += rho[j];
    }
    return {beta, static_cast<long>(lambda.length()) + n - 1 - rho_sum};
}

/// Everything the recursion needs about one (lambda, rho) term.
struct CriticalDatum {
    Partition lambda;
    SizeTuple rho;
    int n = 0;
    long beta = 0;
    long s = 0;
    BigInteger weight;    ///< multinomial(n, rho)
    BigInteger multfact;  ///< m(lambda)!
};

inline CriticalDatum critical_datum(const Partition& lambda, const SizeTuple& rho, int n)
{
    const auto md = morse_data(lambda, rho, n);
    return {lambda, rho, n, md.beta, md.s, multinomial(n, rho), mult_factorial(lambda)};
}

/// Gaussian binomial [n choose r] in u = t^2, the Poincare polynomial of Gr(r, n).
inline DensePoly<BigRational> gaussian_binomial(int r, int n)
{
    if (r < 0 || n < 0 || r > n)
        throw std::invalid_argument("gaussian_binomial: need 0 <= r <= n");
    // Pascal rule [m, k] = [m-1, k-1] + u^k [m-1, k], row by row over m.
    std::vector<DensePoly<BigRational>> row(r + 1, DensePoly<BigRational>(Var::u));
    row[0] = DensePoly<BigRational>::constant(1, Var::u);
    for (int m = 1; m <= n; ++m)
        for (int k = std::min(m, r); k >= 1; --k)
            row[k] = row[k - 1] + row[k].shifted(static_cast<std::size_t>(k));
    return row[r];
}

}  // namespace hyperpolygon
