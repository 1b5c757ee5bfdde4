#include "hyperpolygon/spectral.hpp"

#include <gtest/gtest.h>

using namespace hyperpolygon;

namespace {

using G = GaussianRational;
using GM = Matrix<G>;
using Q = BigRational;
using QP = DensePoly<Q>;
using GP = DensePoly<G>;

ExactPoint fixture() { return make_point(GM{{1, 0, 1, 1}, {0, 1, 1, 2}}, GM{{0, -1}, {-2, 0}, {-2, 2}, {2, -1}}); }

QP zpoly(std::vector<Q> c) { return QP(std::move(c), Var::z); }

/// Characteristic coefficients from determinants of t - M(z) at sample values
/// of t and z, interpolated first in t and then in z. Independent of
/// Faddeev-LeVerrier.
std::vector<GP> charpoly_by_determinants(const PolyMatrix<G>& m, int zdeg)
{
    const std::size_t r = m.rows();
    std::vector<G> zs;
    std::vector<std::vector<G>> by_lambda(r + 1);
    for (int zi = 0; zi <= zdeg; ++zi) {
        const G z(static_cast<long>(zi) + 100);
        zs.push_back(z);
        const GM mz = evaluate(m, z);
        std::vector<G> ts, ds;
        for (std::size_t t = 0; t <= r; ++t) {
            GM a = scaled(GM::identity(r), G(static_cast<long>(t)));
            a -= mz;
            ts.push_back(G(static_cast<long>(t)));
            ds.push_back(determinant(a));
        }
        const GP in_lambda = interpolate(ts, ds, Var::z);
        for (std::size_t k = 0; k <= r; ++k)
            by_lambda[k].push_back(in_lambda.coeff(k));
    }
    std::vector<GP> c;
    for (std::size_t i = 1; i <= r; ++i)
        c.push_back(interpolate(zs, by_lambda[r - i], Var::z));
    return c;
}

}  // namespace

TEST(Twist, Fixture)
{
    const auto t = twist(residues(fixture()));
    EXPECT_EQ(t.r, 2);
    EXPECT_LE(max_degree(t.psi), 2);
    EXPECT_TRUE(trace(t.psi).is_zero());
    // psi(p_i) = phi_i prod_{j != i} (p_i - p_j).
    const auto h = residues(fixture());
    for (int i = 0; i < 4; ++i) {
        G w(1);
        for (int j = 0; j < 4; ++j)
            if (j != i)
                w *= G(static_cast<long>(i - j));
        EXPECT_EQ(evaluate(t.psi, G(static_cast<long>(i + 1))), scaled(h.residues[i], w));
    }
}

TEST(Twist, ZeroAndOverflow)
{
    const HiggsField<G> zero{2, 4, {GM(2, 2), GM(2, 2), GM(2, 2), GM(2, 2)}, {1, 2, 3, 4}};
    const auto t = twist(zero);
    for (const auto& e : t.psi.data())
        EXPECT_TRUE(e.is_zero());
    HiggsField<G> bad = zero;
    bad.residues[0] = GM{{0, 1}, {0, 0}};
    EXPECT_THROW(twist(bad), ValidationError);
}

TEST(SpectralCharpoly, Fixture)
{
    const auto cp = spectral_charpoly(twist(residues(fixture())));
    EXPECT_TRUE(cp.coeff(1).is_zero());
    const GP expected = from_roots(std::vector<G>{1, 2, 3, 4}, Var::z) * G(-10);
    EXPECT_EQ(cp.coeff(2), expected);
    const auto rep = order_check(cp, std::vector<G>{1, 2, 3, 4});
    EXPECT_TRUE(rep.passed);
    ASSERT_EQ(rep.entries.size(), 4u);
    for (const auto& e : rep.entries) {
        EXPECT_EQ(e.order, 1);
        EXPECT_EQ(e.bound, 1);
    }
}

TEST(SpectralCharpoly, MatchesDeterminantOracle)
{
    for (auto [r, n] : {std::pair{3, 6}, {4, 8}}) {
        const auto t = twist(residues(sample_exact(r, n, 2)));
        const auto cp = spectral_charpoly(t);
        const auto oracle = charpoly_by_determinants(t.psi, r * (n - 2));
        for (int i = 1; i <= r; ++i)
            EXPECT_EQ(cp.coeff(i), oracle[static_cast<std::size_t>(i - 1)]) << r << " " << i;
    }
}

TEST(SpectralCharpoly, ZeroField)
{
    const HiggsField<G> zero{3, 5, std::vector<GM>(5, GM(3, 3)), {1, 2, 3, 4, 5}};
    const auto cp = spectral_charpoly(twist(zero));
    for (int i = 1; i <= 3; ++i)
        EXPECT_TRUE(cp.coeff(i).is_zero());
    const auto rep = order_check(cp, zero.marked_points);
    EXPECT_TRUE(rep.passed);
    EXPECT_EQ(rep.entries.front().order, kInfiniteOrder);
}

TEST(OrderCheck, SampledPoints)
{
    for (auto [r, n] : {std::pair{2, 5}, {3, 7}, {4, 8}, {5, 9}})
        for (std::uint64_t seed = 0; seed < 2; ++seed) {
            const auto h = residues(sample_exact(r, n, seed));
            const auto cp = spectral_charpoly(twist(h));
            for (int i = 2; i <= r; ++i)
                EXPECT_LE(cp.coeff(i).degree(), i * (n - 2));
            const auto rep = order_check(cp, h.marked_points);
            EXPECT_TRUE(rep.passed) << r << " " << n;
            EXPECT_EQ(rep.entries.size(), static_cast<std::size_t>((r - 1) * n));
        }
}

TEST(OrderCheck, ReportsFailure)
{
    // c_3 = z, order 1 at 0, below the bound 2.
    CharPoly<Q> cp{3, -1, {zpoly({}), zpoly({0, 1}), zpoly({0, 1})}};
    const auto rep = order_check(cp, std::vector<Q>{0});
    EXPECT_FALSE(rep.passed);
    EXPECT_TRUE(rep.entries[0].pass);
    EXPECT_FALSE(rep.entries[1].pass);
    EXPECT_EQ(rep.entries[1].bound, 2);
}

TEST(TraceConsistency, FixtureAndSamples)
{
    EXPECT_TRUE(trace_consistency(residues(fixture())).ok);
    const HiggsField<G> zero{2, 4, {GM(2, 2), GM(2, 2), GM(2, 2), GM(2, 2)}, {1, 2, 3, 4}};
    EXPECT_TRUE(trace_consistency(zero).ok);
    for (auto [r, n] : {std::pair{2, 5}, {3, 6}, {3, 7}, {4, 8}})
        EXPECT_TRUE(trace_consistency(residues(sample_exact(r, n, 5))).ok) << r << " " << n;
}

TEST(TraceConsistency, FailsForNonNilpotentResidues)
{
    // Residues still sum to zero, so the twist exists, but Tr phi^2 picks up
    // double poles and g_2 is no polynomial.
    auto h = residues(fixture());
    h.residues[0] += GM{{1, 0}, {0, -1}};
    h.residues[1] -= GM{{1, 0}, {0, -1}};
    const auto res = trace_consistency(h);
    EXPECT_FALSE(res.ok);
    EXPECT_EQ(res.failed_k, 2);
}

TEST(LocalModels, RankThree)
{
    const auto m = rank3_local_model();
    const auto cp = charpoly_of(m.M);
    EXPECT_TRUE(cp.coeff(1).is_zero());
    EXPECT_EQ(cp.coeff(2), zpoly({0, -1}));
    EXPECT_EQ(cp.coeff(3), zpoly({0, 0, -1}));
    const auto m0 = evaluate(m.M, Q(0));
    EXPECT_EQ(exact_rank(m0), 1u);
    EXPECT_TRUE(min_orbit_check(m0));
    const auto rep = order_check(cp, std::vector<Q>{0});
    EXPECT_TRUE(rep.passed);
    EXPECT_EQ(rep.entries[0].order, 1);
    EXPECT_EQ(rep.entries[1].order, 2);
}

TEST(LocalModels, RankFour)
{
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        const auto m = rank4_local_model(seed);
        ASSERT_EQ(m.parameters.size(), 3u);
        for (const auto& p : m.parameters) {
            EXPECT_LE(p.degree(), 1);
            EXPECT_NE(p.coeff(0), 0);
        }
        const auto cp = charpoly_of(m.M);
        const auto& a = m.parameters[0];
        const auto& b = m.parameters[1];
        const auto& c = m.parameters[2];
        EXPECT_TRUE(cp.coeff(1).is_zero());
        EXPECT_EQ(cp.coeff(2), -(a.shifted(1)));
        EXPECT_EQ(cp.coeff(3), -(b.shifted(2)));
        EXPECT_EQ(cp.coeff(4), -(c.shifted(2)));
        const auto m0 = evaluate(m.M, Q(0));
        EXPECT_EQ(exact_rank(m0), 2u);
        EXPECT_TRUE(is_zero_matrix(Matrix<Q>(m0 * m0)));
        EXPECT_FALSE(min_orbit_check(m0));
        const auto rep = order_check(cp, std::vector<Q>{0});
        EXPECT_TRUE(rep.passed);
        EXPECT_EQ(rep.entries[0].order, 1);
        EXPECT_EQ(rep.entries[1].order, 2);
        EXPECT_EQ(rep.entries[2].order, 2);
    }
    EXPECT_EQ(local_models(3).size(), 2u);
}

TEST(Discriminant, KnownValues)
{
    // lambda^2 + c: resultant with 2 lambda is 4c.
    BivariatePoly<Q> f{{zpoly({-25, 10, -1}), zpoly({}), zpoly({1})}};  // lambda^2 - (z - 5)^2
    EXPECT_EQ(discriminant_resultant(f), zpoly({-100, 40, -4}));
    // Cubic lambda^3 + p lambda + q has Res(f, f') = 4 p^3 + 27 q^2.
    const auto m = rank3_local_model();
    EXPECT_EQ(discriminant_resultant(m.f), zpoly({0, 0, 0, -4, 27}));
    BivariatePoly<Q> square{{zpoly({0, 0, 1}), zpoly({0, 2}), zpoly({1})}};  // (lambda + z)^2
    EXPECT_TRUE(discriminant_resultant(square).is_zero());
    EXPECT_THROW(smoothness_probe(square, std::vector<Q>{0}), ValidationError);
}

TEST(SmoothnessProbe, RankThreeModel)
{
    const auto m = rank3_local_model();
    const auto rep = smoothness_probe(m.f, std::vector<Q>{0});
    EXPECT_TRUE(rep.smooth_away_from_divisor);
    EXPECT_EQ(rep.verdict, "no singularities detected away from D");
    ASSERT_EQ(rep.points.size(), 2u);
    EXPECT_EQ(rep.points[0].cls, ProbeClass::on_divisor);
    EXPECT_EQ(rep.points[1].cls, ProbeClass::smooth_candidate);
    EXPECT_NEAR(rep.points[1].z.real(), 4.0 / 27.0, 1e-12);
    ASSERT_TRUE(rep.points[1].lambda_fiber);
    EXPECT_NEAR(rep.points[1].lambda_fiber->real(), -2.0 / 9.0, 1e-10);
    EXPECT_NEAR(rep.points[1].abs_fz, 2.0 / 27.0, 1e-10);
}

TEST(SmoothnessProbe, Nodes)
{
    BivariatePoly<Q> on{{zpoly({0, 0, -1}), zpoly({}), zpoly({1})}};
    const auto r1 = smoothness_probe(on, std::vector<Q>{0});
    EXPECT_TRUE(r1.smooth_away_from_divisor);
    ASSERT_EQ(r1.points.size(), 1u);
    EXPECT_EQ(r1.points[0].cls, ProbeClass::on_divisor);

    BivariatePoly<Q> off{{zpoly({-25, 10, -1}), zpoly({}), zpoly({1})}};
    const auto r2 = smoothness_probe(off, std::vector<Q>{0});
    EXPECT_FALSE(r2.smooth_away_from_divisor);
    ASSERT_EQ(r2.points.size(), 1u);
    EXPECT_EQ(r2.points[0].cls, ProbeClass::singular_candidate);
    EXPECT_NEAR(r2.points[0].z.real(), 5.0, 1e-10);
    EXPECT_EQ(r2.verdict, "singular candidates away from D");
}

TEST(SmoothnessProbe, SampledSpectralCurve)
{
    const auto h = residues(sample_exact(2, 5, 1));
    const auto f = spectral_polynomial(spectral_charpoly(twist(h)));
    const auto rep = smoothness_probe(f, h.marked_points);
    // Rank 2: lambda^2 + c_2, branch points are simple roots of c_2, and
    // those away from D are smooth.
    EXPECT_TRUE(rep.smooth_away_from_divisor);
    std::size_t on = 0;
    for (const auto& p : rep.points)
        on += p.cls == ProbeClass::on_divisor;
    EXPECT_EQ(on, h.marked_points.size());
}
