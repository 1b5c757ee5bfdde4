#include "hyperpolygon/combinat.hpp"

#include <gtest/gtest.h>

#include <random>
#include <set>

using namespace hyperpolygon;

namespace {

using QPoly = DensePoly<BigRational>;

QPoly upoly(std::vector<long> c)
{
    return QPoly(std::vector<BigRational>(c.begin(), c.end()), Var::u);
}

std::vector<SizeTuple> collect(const Partition& lam, int n)
{
    std::vector<SizeTuple> out;
    for (const auto& rho : admissible_rho(lam, n))
        out.push_back(rho);
    return out;
}

// Euler's pentagonal recurrence, independent of the enumerator.
long partition_count(int r)
{
    std::vector<long> p(r + 1, 0);
    p[0] = 1;
    for (int m = 1; m <= r; ++m)
        for (int k = 1;; ++k) {
            const int g1 = k * (3 * k - 1) / 2, g2 = k * (3 * k + 1) / 2;
            if (g1 > m)
                break;
            const long sign = (k % 2) ? 1 : -1;
            p[m] += sign * p[m - g1];
            if (g2 <= m)
                p[m] += sign * p[m - g2];
        }
    return p[r];
}

}  // namespace

TEST(Partitions, Examples)
{
    const auto p3 = partitions(3);
    ASSERT_EQ(p3.size(), 3u);
    EXPECT_EQ(p3[0], Partition({3}));
    EXPECT_EQ(p3[1], Partition({2, 1}));
    EXPECT_EQ(p3[2], Partition({1, 1, 1}));
    EXPECT_EQ(partitions(1), std::vector<Partition>{Partition({1})});
    EXPECT_EQ(partitions(5).size(), 7u);
    EXPECT_THROW(partitions(0), std::invalid_argument);
    EXPECT_THROW(Partition({1, 2}), std::invalid_argument);
    EXPECT_THROW(Partition({2, 0}), std::invalid_argument);
}

TEST(Partitions, CountsMatchPentagonalRecurrence)
{
    for (int r = 1; r <= 20; ++r) {
        const auto ps = partitions(r);
        EXPECT_EQ(static_cast<long>(ps.size()), partition_count(r)) << "r=" << r;
        std::set<Partition> unique(ps.begin(), ps.end());
        EXPECT_EQ(unique.size(), ps.size());
        for (const auto& p : ps)
            EXPECT_EQ(p.sum(), r);
    }
}

TEST(AdmissibleRho, Examples)
{
    EXPECT_EQ(collect(Partition({2}), 4), (std::vector<SizeTuple>{{2}, {3}, {4}}));
    EXPECT_EQ(collect(Partition({1, 1}), 3), (std::vector<SizeTuple>{{1, 1}, {1, 2}, {2, 1}}));
    EXPECT_EQ(collect(Partition({3}), 3), (std::vector<SizeTuple>{{3}}));
    EXPECT_TRUE(collect(Partition({3}), 2).empty());
}

TEST(AdmissibleRho, MatchesBruteForceFilterAndRestarts)
{
    for (int r = 1; r <= 4; ++r)
        for (const auto& lam : partitions(r))
            for (int n = 1; n <= 8; ++n) {
                // Every tuple in the box [lam_j, n]^l passing the filter, lexicographic.
                std::vector<SizeTuple> expected;
                SizeTuple t(lam.length());
                auto rec = [&](auto&& self, std::size_t j) -> void {
                    if (j == t.size()) {
                        int s = 0;
                        for (int v : t)
                            s += v;
                        if (s <= n)
                            expected.push_back(t);
                        return;
                    }
                    for (int v = lam[j]; v <= n; ++v) {
                        t[j] = v;
                        self(self, j + 1);
                    }
                };
                rec(rec, 0);
                const AdmissibleRho range(lam, n);
                std::vector<SizeTuple> first(range.begin(), range.end());
                std::vector<SizeTuple> second(range.begin(), range.end());
                EXPECT_EQ(first, expected) << lam << " n=" << n;
                EXPECT_EQ(second, expected);
            }
}

TEST(Multinomial, Examples)
{
    EXPECT_EQ(multinomial(4, {1, 2}), 12);
    EXPECT_EQ(multinomial(7, {7}), 1);
    EXPECT_EQ(multinomial(4, {3, 2}), 0);
    EXPECT_THROW(multinomial(4, {-1}), std::invalid_argument);
}

TEST(Multinomial, CountsOrderedDisjointSubsets)
{
    std::mt19937_64 rng(7);
    for (int trial = 0; trial < 40; ++trial) {
        const int n = std::uniform_int_distribution<int>(1, 7)(rng);
        const int len = std::uniform_int_distribution<int>(1, 3)(rng);
        SizeTuple rho(len);
        for (auto& v : rho)
            v = std::uniform_int_distribution<int>(0, 3)(rng);
        // Assign each of the n points a label in {0 (unused), 1..len}; count
        // labellings with block sizes rho.
        long count = 0;
        long total = 1;
        for (int i = 0; i < n; ++i)
            total *= len + 1;
        for (long code = 0; code < total; ++code) {
            SizeTuple sizes(len, 0);
            long c = code;
            for (int i = 0; i < n; ++i, c /= len + 1)
                if (c % (len + 1))
                    ++sizes[c % (len + 1) - 1];
            count += sizes == rho;
        }
        EXPECT_EQ(multinomial(n, rho), count) << "n=" << n;
    }
}

TEST(MultFactorial, Examples)
{
    EXPECT_EQ(mult_factorial(Partition({1, 1})), 2);
    EXPECT_EQ(mult_factorial(Partition({3})), 1);
    EXPECT_EQ(mult_factorial(Partition({2, 2, 1})), 2);
    EXPECT_EQ(mult_factorial(Partition({1, 1, 1})), 6);
    EXPECT_EQ(mult_factorial(Partition({2, 2, 1, 1, 1})), 12);
}

TEST(MorseData, Examples)
{
    auto md = morse_data(Partition({2}), {3}, 5);
    EXPECT_EQ(md.beta, 4);
    EXPECT_EQ(md.s, 2);
    md = morse_data(Partition({1, 1}), {1, 1}, 4);
    EXPECT_EQ(md.beta, 4);
    EXPECT_EQ(md.s, 3);
    for (int r = 1; r <= 5; ++r)
        for (int n = r; n <= 9; ++n) {
            md = morse_data(Partition({r}), {n}, n);
            EXPECT_EQ(md.beta, 0);
            EXPECT_EQ(md.s, 0);
        }
    EXPECT_THROW(morse_data(Partition({1, 1}), {2}, 4), std::invalid_argument);
}

TEST(MorseData, NonNegativeOnAdmissibleTuples)
{
    for (int r = 1; r <= 5; ++r)
        for (const auto& lam : partitions(r))
            for (int n = r; n <= 10; ++n)
                for (const auto& rho : admissible_rho(lam, n)) {
                    const auto d = critical_datum(lam, rho, n);
                    EXPECT_GE(d.beta, 0);
                    EXPECT_GE(d.s, 0);
                    EXPECT_GT(d.weight, 0);
                    EXPECT_GT(d.multfact, 0);
                }
}

TEST(GaussianBinomial, Examples)
{
    EXPECT_EQ(gaussian_binomial(2, 4), upoly({1, 1, 2, 1, 1}));
    EXPECT_EQ(gaussian_binomial(1, 5), upoly({1, 1, 1, 1, 1}));
    EXPECT_EQ(gaussian_binomial(0, 3), upoly({1}));
    EXPECT_EQ(gaussian_binomial(3, 3), upoly({1}));
    EXPECT_EQ(gaussian_binomial(2, 4).var(), Var::u);
    EXPECT_THROW(gaussian_binomial(5, 4), std::invalid_argument);
}

TEST(GaussianBinomial, DualityAndClassicalLimit)
{
    for (int n = 0; n <= 14; ++n)
        for (int r = 0; r <= n; ++r) {
            const auto g = gaussian_binomial(r, n);
            EXPECT_EQ(g, gaussian_binomial(n - r, n));
            EXPECT_EQ(g(BigRational(1)), BigRational(binomial(n, r)));
            EXPECT_EQ(g.degree(), r * (n - r));
        }
}
