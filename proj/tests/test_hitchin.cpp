#include "hyperpolygon/hitchin.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace hyperpolygon;

namespace {

using G = GaussianRational;
using GM = Matrix<G>;
using CM = Matrix<Complex>;
using Q = BigRational;

ExactPoint fixture() { return make_point(GM{{1, 0, 1, 1}, {0, 1, 1, 2}}, GM{{0, -1}, {-2, 0}, {-2, 2}, {2, -1}}); }

FloatPoint random_float_point(int r, int n, std::mt19937_64& rng)
{
    std::normal_distribution<double> g;
    CM x(r, n), y(n, r);
    for (int a = 0; a < r; ++a)
        for (int i = 0; i < n; ++i) {
            const double re = g(rng);
            x(a, i) = {re, g(rng)};
            const double re2 = g(rng);
            y(i, a) = {re2, g(rng)};
        }
    return make_point(std::move(x), std::move(y));
}

/// Central differences of a holomorphic function along the real direction of
/// each coordinate.
template <class F>
Gradient<Complex> finite_difference(const FloatPoint& p, F f, double h = 1e-6)
{
    Gradient<Complex> g{CM(p.r, p.n), CM(p.n, p.r)};
    for (int a = 0; a < p.r; ++a)
        for (int i = 0; i < p.n; ++i) {
            FloatPoint plus = p, minus = p;
            plus.x(a, i) += h;
            minus.x(a, i) -= h;
            g.dx(a, i) = (f(plus) - f(minus)) / (2 * h);
        }
    for (int i = 0; i < p.n; ++i)
        for (int a = 0; a < p.r; ++a) {
            FloatPoint plus = p, minus = p;
            plus.y(i, a) += h;
            minus.y(i, a) -= h;
            g.dy(i, a) = (f(plus) - f(minus)) / (2 * h);
        }
    return g;
}

double grad_distance(const Gradient<Complex>& a, const Gradient<Complex>& b)
{
    return std::sqrt(frobenius_norm2(CM(a.dx - b.dx)) + frobenius_norm2(CM(a.dy - b.dy)));
}

double grad_norm(const Gradient<Complex>& a) { return std::sqrt(frobenius_norm2(a.dx) + frobenius_norm2(a.dy)); }

Complex trace_power_at(const FloatPoint& p, int m, Complex z)
{
    CM phi(p.r, p.r);
    for (int i = 0; i < p.n; ++i)
        phi += scaled(CM(p.x.col(i) * p.y.row(i)), Complex(1.0) / (z - p.marked_points[i]));
    return trace(matrix_power(phi, m));
}

}  // namespace

TEST(Residues, Fixture)
{
    const auto h = residues(fixture());
    ASSERT_EQ(h.residues.size(), 4u);
    EXPECT_EQ(h.residues[0], (GM{{0, -1}, {0, 0}}));
    EXPECT_EQ(h.residues[1], (GM{{0, 0}, {-2, 0}}));
    EXPECT_EQ(h.residues[2], (GM{{-2, 2}, {-2, 2}}));
    EXPECT_EQ(h.residues[3], (GM{{2, -1}, {4, -2}}));
    for (const auto& phi : h.residues)
        EXPECT_TRUE(min_orbit_check(phi));
}

TEST(Residues, ZeroAndViolations)
{
    const auto h = residues(make_point(GM{{1, 0, 1}, {0, 1, 1}}, GM(3, 2)));
    for (const auto& phi : h.residues)
        EXPECT_TRUE(is_zero_matrix(phi));

    GM y(4, 2);
    y(0, 0) = 1;  // y_1 x_1 = 1
    try {
        residues(make_point(GM{{1, 0, 1, 1}, {0, 1, 1, 2}}, y));
        FAIL();
    } catch (const ValidationError& e) {
        EXPECT_STREQ(e.what(), "complex moment map violated");
        EXPECT_EQ(e.index(), 1);
    }
    // Every y_i x_i vanishes but x y does not.
    GM y2(4, 2);
    y2(0, 1) = 1;
    EXPECT_THROW(residues(make_point(GM{{1, 0, 1, 1}, {0, 1, 1, 2}}, y2)), ValidationError);
    EXPECT_THROW(residues(to_float(make_point(GM{{1, 0, 1, 1}, {0, 1, 1, 2}}, y))), ValidationError);
    EXPECT_NO_THROW(residues(to_float(fixture())));
}

TEST(HiggsEval, FixtureAtZero)
{
    const auto h = residues(fixture());
    const GM expected = -h.residues[0] - scaled(h.residues[1], G(Q(1, 2))) - scaled(h.residues[2], G(Q(1, 3))) -
                        scaled(h.residues[3], G(Q(1, 4)));
    EXPECT_EQ(higgs_eval(h, G(0)), expected);
    EXPECT_THROW(higgs_eval(h, G(1)), ValidationError);
    const HiggsField<G> zero{2, 3, {GM(2, 2), GM(2, 2), GM(2, 2)}, {1, 2, 3}};
    EXPECT_TRUE(is_zero_matrix(higgs_eval(zero, G(Q(7, 2)))));
}

TEST(HiggsEval, DecaysLikeInverseSquare)
{
    const auto h = residues(sample_exact(3, 6, 2));
    // z^2 phi(z) tends to sum_i p_i phi_i.
    GM limit(3, 3);
    for (int i = 0; i < 6; ++i)
        limit += scaled(h.residues[i], h.marked_points[i]);
    const G big(1000000);
    const GM scaled_phi = scaled(higgs_eval(h, big), G(big * big));
    const GM diff = scaled_phi - limit;
    for (const auto& v : diff.data())
        EXPECT_LT(abs(v.re()) + abs(v.im()), Q(1, 1000));
}

TEST(HitchinMap, Fixture)
{
    const auto h = residues(fixture());
    const auto b = hitchin_map(h);
    ASSERT_EQ(b.g.size(), 1u);
    EXPECT_EQ(b.g.at(2), std::vector<G>{G(20)});
    EXPECT_EQ(b.coordinate_count(), static_cast<std::size_t>(dimensions(2, 4).dim_B));
    const auto c = hitchin_map(h, HitchinBasis::char_coefficients);
    EXPECT_EQ(c.g.at(2), std::vector<G>{G(-10)});
    const HiggsField<G> zero{2, 4, {GM(2, 2), GM(2, 2), GM(2, 2), GM(2, 2)}, {1, 2, 3, 4}};
    EXPECT_EQ(hitchin_map(zero).g.at(2), std::vector<G>{G(0)});
}

TEST(HitchinMap, FirstTraceVanishesAndDegreesAreBounded)
{
    for (auto [r, n] : {std::pair{2, 5}, {3, 6}, {3, 7}, {4, 8}})
        for (std::uint64_t seed = 0; seed < 3; ++seed) {
            const auto h = residues(sample_exact(r, n, seed));
            EXPECT_TRUE(base_polynomial(h, 1, HitchinBasis::trace_powers).is_zero());
            for (int i = 2; i <= r; ++i) {
                const auto g = base_polynomial(h, i, HitchinBasis::char_coefficients);
                EXPECT_LE(g.degree(), n - 2 * i);
            }
            const auto b = hitchin_map(h, default_basis(r));
            EXPECT_EQ(b.coordinate_count(), static_cast<std::size_t>(dimensions(r, n).dim_B));
        }
}

TEST(HitchinMap, BasesAgreeBelowRankFour)
{
    for (auto [r, n] : {std::pair{2, 6}, {3, 6}, {3, 8}}) {
        const auto h = residues(sample_exact(r, n, 4));
        const auto tr = hitchin_map(h, HitchinBasis::trace_powers);
        const auto ch = hitchin_map(h, HitchinBasis::char_coefficients);
        for (int i = 2; i <= r; ++i)
            for (std::size_t j = 0; j < tr.g.at(i).size(); ++j)
                EXPECT_EQ(ch.g.at(i)[j], tr.g.at(i)[j] * G(Q(-1, i)));
    }
}

TEST(HitchinMap, TraceOfFourthPowerHasDoublePoles)
{
    // At rank 4 the fourth trace power is not a section of K^4(D): its
    // double-pole coefficient at p_j is 2 (y_j R_j x_j)^2 with
    // R_j = sum_{k != j} phi_k / (p_j - p_k).
    int double_poles = 0;
    for (std::uint64_t seed = 0; seed < 3; ++seed) {
        const auto p = sample_exact(4, 8, seed);
        const auto h = residues(p);
        EXPECT_NO_THROW(base_polynomial(h, 3, HitchinBasis::trace_powers));
        EXPECT_NO_THROW(base_polynomial(h, 4, HitchinBasis::char_coefficients));
        GM rj(4, 4);
        for (int k = 1; k < 8; ++k)
            rj += scaled(h.residues[k], G(G(1) / G(h.marked_points[0] - h.marked_points[k])));
        const G yrx = (p.y.row(0) * rj * p.x.col(0))(0, 0);
        if (yrx.is_zero())
            continue;
        ++double_poles;
        EXPECT_THROW(base_polynomial(h, 4, HitchinBasis::trace_powers), ValidationError);
        EXPECT_THROW(hitchin_map(h, HitchinBasis::trace_powers), ValidationError);
    }
    EXPECT_GT(double_poles, 0);
}

TEST(HitchinMap, FloatMatchesExact)
{
    for (auto [r, n] : {std::pair{2, 5}, {3, 7}, {4, 8}}) {
        const auto p = sample_exact(r, n, 8);
        const auto basis = default_basis(r);
        const auto e = hitchin_map(residues(p), basis);
        const auto f = hitchin_map(residues(to_float(p)), basis);
        for (int i = 2; i <= r; ++i)
            for (std::size_t j = 0; j < e.g.at(i).size(); ++j) {
                const Complex ev = scalar_traits<G>::to_complex(e.g.at(i)[j]);
                EXPECT_LT(std::abs(f.g.at(i)[j] - ev), 1e-7 * (1 + std::abs(ev))) << r << " " << i << " " << j;
            }
    }
}

TEST(ObservableGrad, MatchesFiniteDifferences)
{
    std::mt19937_64 rng(5);
    for (int trial = 0; trial < 20; ++trial) {
        const int r = 2 + trial % 3, n = r + 2 + trial % 2;
        const auto p = random_float_point(r, n, rng);
        const Complex z0(n + 1.5, 0.25);
        for (int m = 2; m <= r; ++m) {
            const auto g = observable_grad(p, BracketObservable<Complex>{m, z0});
            const auto fd = finite_difference(p, [&](const FloatPoint& q) { return trace_power_at(q, m, z0); });
            EXPECT_LT(grad_distance(g, fd), 1e-7 * grad_norm(fd)) << "trial " << trial << " m " << m;
        }
        const auto ge = observable_grad(p, EntryObservable<Complex>{0, r - 1, z0});
        const auto fde = finite_difference(p, [&](const FloatPoint& q) {
            Complex v = 0.0;
            for (int i = 0; i < q.n; ++i)
                v += q.x(0, i) * q.y(i, r - 1) / (z0 - q.marked_points[i]);
            return v;
        });
        EXPECT_LT(grad_distance(ge, fde), 1e-7 * grad_norm(fde));
    }
}

TEST(ObservableGrad, ZeroAtZeroFieldAndHomogeneous)
{
    const auto zero = make_point(GM{{1, 0, 1, 1}, {0, 1, 1, 2}}, GM(4, 2));
    for (int m = 2; m <= 3; ++m) {
        const auto g = observable_grad(zero, BracketObservable<G>{m, G(5)});
        EXPECT_TRUE(is_zero_matrix(g.dx));
        EXPECT_TRUE(is_zero_matrix(g.dy));
    }
    // I_m has degree 2m in (x, y), so its gradient has degree 2m - 1.
    const auto p = sample_exact(3, 6, 1);
    const G c(Q(3, 2));
    auto q = p;
    q.x = scaled(p.x, c);
    q.y = scaled(p.y, c);
    for (int m = 2; m <= 3; ++m) {
        const auto g = observable_grad(p, BracketObservable<G>{m, G(9)});
        const auto gq = observable_grad(q, BracketObservable<G>{m, G(9)});
        G factor(1);
        for (int k = 0; k < 2 * m - 1; ++k)
            factor *= c;
        EXPECT_EQ(gq.dx, scaled(g.dx, factor));
        EXPECT_EQ(gq.dy, scaled(g.dy, factor));
    }
    EXPECT_THROW(observable_grad(p, BracketObservable<G>{2, G(3)}), ValidationError);
}

TEST(PoissonBracket, FixtureCommutes)
{
    const auto p = fixture();
    EXPECT_EQ(poisson_bracket(p, BracketObservable<G>{2, G(5)}, BracketObservable<G>{2, G(6)}), G(0));
}

TEST(PoissonBracket, ExactCommutationAtSamples)
{
    for (auto [r, n] : {std::pair{2, 5}, {3, 6}, {4, 8}})
        for (std::uint64_t seed = 0; seed < 3; ++seed) {
            const auto p = sample_exact(r, n, seed);
            std::vector<BracketObservable<G>> obs;
            for (int m = 2; m <= r; ++m)
                for (int z = n + 1; z <= n + 2; ++z)
                    obs.push_back({m, G(z)});
            for (const auto& f : obs)
                for (const auto& g : obs)
                    EXPECT_EQ(poisson_bracket(p, f, g), G(0));
        }
}

TEST(PoissonBracket, AntisymmetricOnRandomPoints)
{
    std::mt19937_64 rng(8);
    for (int trial = 0; trial < 10; ++trial) {
        const auto p = random_float_point(3, 6, rng);
        const BracketObservable<Complex> f{2, {7.5, 0.5}}, g{3, {8.0, -1.0}};
        const Complex fg = poisson_bracket(p, f, g), gf = poisson_bracket(p, g, f);
        EXPECT_LT(std::abs(fg + gf), 1e-10 * (1 + std::abs(fg)));
        EXPECT_LT(std::abs(poisson_bracket(p, f, f)), 1e-12);
        // Off the level set the Hamiltonians need not commute; the bracket is
        // only antisymmetric.
    }
}

TEST(PoissonBracket, ResidueBracketSign)
{
    // Residue observables: phi_m(ij) = x_{im} y_{mj}. Build their gradients
    // directly and compare with the Lie-Poisson rule.
    const auto p = sample_exact(3, 6, 3);
    const int m = 2;
    auto residue_grad = [&](int i, int j) {
        Gradient<G> g{GM(3, 6), GM(6, 3)};
        g.dx(i, m) = p.y(m, j);
        g.dy(m, j) = p.x(i, m);
        return g;
    };
    const GM phi = p.x.col(m) * p.y.row(m);
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
            for (int k = 0; k < 3; ++k)
                for (int l = 0; l < 3; ++l) {
                    G rhs;
                    if (j == k)
                        rhs += phi(i, l);
                    if (i == l)
                        rhs -= phi(k, j);
                    EXPECT_EQ(bracket(residue_grad(i, j), residue_grad(k, l)), rhs);
                }
}

TEST(DeltaCheck, ExactZero)
{
    EXPECT_EQ(delta_check(fixture(), G(5), G(6)), 0);
    std::mt19937_64 rng(12);
    std::uniform_int_distribution<int> num(-30, 30), den(1, 4);
    for (auto [r, n] : {std::pair{2, 5}, {3, 6}})
        for (std::uint64_t seed = 0; seed < 3; ++seed) {
            const auto p = sample_exact(r, n, seed);
            for (int k = 0; k < 4; ++k) {
                const int a = num(rng), b = den(rng), c = num(rng), d = den(rng);
                const G z(Q(a, b) + Q(1, 7)), w(Q(c, d), Q(1, 3));
                if (is_pole(p.marked_points, z) || is_pole(p.marked_points, w))
                    continue;
                EXPECT_EQ(delta_check(p, z, w), 0);
            }
        }
    const auto zero = make_point(GM{{1, 0, 1, 1}, {0, 1, 1, 2}}, GM(4, 2));
    EXPECT_EQ(delta_check(zero, G(5), G(6)), 0);
    EXPECT_THROW(delta_check(fixture(), G(5), G(5)), ValidationError);
    EXPECT_THROW(delta_check(fixture(), G(2), G(5)), ValidationError);
}

TEST(DeltaCheck, PartialFractionForm)
{
    const auto h = residues(sample_exact(3, 7, 6));
    const G z(Q(17, 2)), w(Q(-5, 3), Q(1));
    const GM lhs = delta_matrix(h, z, w);
    const GM rhs = scaled(GM(higgs_eval(h, z) - higgs_eval(h, w)), G(G(1) / G(w - z)));
    EXPECT_EQ(lhs, rhs);
}

TEST(JacobianRank, SolverPoints)
{
    for (auto [r, n] : {std::pair{2, 5}, {3, 6}, {3, 7}})
        for (std::uint64_t seed = 0; seed < 2; ++seed) {
            const auto p = solve_real(r, n, LengthVector::standard(n), seed);
            const auto rep = jacobian_rank(p);
            const auto dim_b = static_cast<std::size_t>(dimensions(r, n).dim_B);
            EXPECT_EQ(rep.rows, dim_b);
            EXPECT_EQ(rep.rank, dim_b) << r << " " << n;
            EXPECT_EQ(jacobian_rank(p, kRankThreshold, HitchinBasis::char_coefficients).rank, dim_b);
        }
}

TEST(JacobianRank, ZeroFieldAndRankFour)
{
    const auto zero = to_float(make_point(GM{{1, 0, 1, 1, 0}, {0, 1, 1, 2, 1}}, GM(5, 2)));
    EXPECT_EQ(jacobian_rank(zero).rank, 0u);
    const auto p4 = to_float(sample_exact(4, 9, 1));
    const auto rep = jacobian_rank(p4);
    EXPECT_EQ(rep.basis, HitchinBasis::char_coefficients);
    EXPECT_EQ(rep.rows, static_cast<std::size_t>(dimensions(4, 9).dim_B));
    EXPECT_LE(rep.rank, rep.rows);
}

TEST(JacobianRank, MatchesFiniteDifferenceOfHitchinMap)
{
    // Rank from closed-form gradients against the rank of a finite-difference
    // Jacobian of the same circle-sampled coefficients. Perturbations leave
    // the level set, so the coefficients are extracted without degree checks.
    const auto p = solve_real(3, 6, LengthVector::standard(6), 3);
    const auto base = [](const FloatPoint& q) {
        double radius = 1.0;
        const auto pts = detail::circle_points(q.marked_points, static_cast<std::size_t>(q.n + 1), radius);
        const auto d = divisor_poly(q.marked_points);
        std::vector<Complex> v;
        for (int i = 2; i <= q.r; ++i) {
            std::vector<Complex> vals;
            for (const auto& z : pts) {
                CM phi(q.r, q.r);
                for (int k = 0; k < q.n; ++k)
                    phi += scaled(CM(q.x.col(k) * q.y.row(k)), Complex(1.0) / (z - q.marked_points[k]));
                vals.push_back(trace(matrix_power(phi, i)) * d(z));
            }
            const auto c = detail::scaled_dft(vals);
            v.insert(v.end(), c.begin(), c.begin() + (q.n - 2 * i + 1));
        }
        return v;
    };
    const auto b0 = base(p);
    Eigen::MatrixXcd jac(static_cast<Eigen::Index>(b0.size()), 2 * p.n * p.r);
    const double h = 1e-6;
    Eigen::Index col = 0;
    auto add_column = [&](FloatPoint plus, FloatPoint minus) {
        const auto bp = base(plus), bm = base(minus);
        for (std::size_t k = 0; k < b0.size(); ++k)
            jac(static_cast<Eigen::Index>(k), col) = (bp[k] - bm[k]) / (2 * h);
        ++col;
    };
    for (int a = 0; a < p.r; ++a)
        for (int i = 0; i < p.n; ++i) {
            FloatPoint plus = p, minus = p;
            plus.x(a, i) += h;
            minus.x(a, i) -= h;
            add_column(plus, minus);
        }
    for (int i = 0; i < p.n; ++i)
        for (int a = 0; a < p.r; ++a) {
            FloatPoint plus = p, minus = p;
            plus.y(i, a) += h;
            minus.y(i, a) -= h;
            add_column(plus, minus);
        }
    EXPECT_EQ(numeric_rank(singular_values(jac), 1e-6), jacobian_rank(p).rank);
}
