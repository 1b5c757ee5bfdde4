/**
 * @file spectral.hpp
 * @brief Spectral curves det(lambda - psi(z)) = 0 of the twisted Higgs field
 *        psi(z) = phi(z) prod_j (z - p_j): exact characteristic coefficients,
 *        vanishing orders at the marked points, a resultant-based smoothness
 *        probe, and the rank-3 and rank-4 local models.
 */
#pragma once

#include "hyperpolygon/hitchin.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <vector>

namespace hyperpolygon {

template <class S>
struct TwistedHiggs {
    int r = 0;
    int n = 0;
    PolyMatrix<S> psi;
    std::vector<S> marked_points;
};

template <class S>
PolyMatrix<S> poly_matrix_power(const PolyMatrix<S>& a, int k)
{
    PolyMatrix<S> out = PolyMatrix<S>::identity(a.rows(), DensePoly<S>::constant(S(1), Var::z));
    for (int i = 0; i < k; ++i)
        out = out * a;
    return out;
}

/// psi(z) = sum_i phi_i prod_{j != i} (z - p_j). The z^{n-1} coefficient is
/// sum_i phi_i, so entries have degree <= n - 2 exactly when the residues sum
/// to zero.
template <class S>
TwistedHiggs<S> twist(const HiggsField<S>& h)
{
    static_assert(is_exact_v<S>, "twist needs exact arithmetic");
    const std::size_t r = static_cast<std::size_t>(h.r);
    const DensePoly<S> d = divisor_poly(h.marked_points);
    PolyMatrix<S> psi(r, r, DensePoly<S>(Var::z));
    for (int i = 0; i < h.n; ++i) {
        const DensePoly<S> others = exact_quotient(d, DensePoly<S>::linear_root(h.marked_points[i]));
        for (std::size_t a = 0; a < r; ++a)
            for (std::size_t b = 0; b < r; ++b)
                if (!scalar_traits<S>::is_zero(h.residues[i](a, b)))
                    psi(a, b) += others * h.residues[i](a, b);
    }
    if (max_degree(psi) > h.n - 2)
        throw ValidationError("degree overflow");
    return {h.r, h.n, std::move(psi), h.marked_points};
}

/// det(lambda - M) = lambda^r + c_1 lambda^{r-1} + ... + c_r, with c[i-1] = c_i.
/// n is the twist when the polynomial comes from a twisted Higgs field and -1
/// for the local models.
template <class S>
struct CharPoly {
    int r = 0;
    int n = -1;
    std::vector<DensePoly<S>> c;

    const DensePoly<S>& coeff(int i) const { return c.at(static_cast<std::size_t>(i - 1)); }
};

template <class S>
CharPoly<S> charpoly_of(const PolyMatrix<S>& m, int n = -1)
{
    return {static_cast<int>(m.rows()), n, poly_matrix_charpoly(m)};
}

template <class S>
CharPoly<S> spectral_charpoly(const TwistedHiggs<S>& t)
{
    CharPoly<S> cp = charpoly_of(t.psi, t.n);
    if (!cp.coeff(1).is_zero())
        throw ValidationError("nonzero trace", 1);
    for (int i = 2; i <= t.r; ++i)
        if (cp.coeff(i).degree() > i * (t.n - 2))
            throw ValidationError("degree overflow", i);
    return cp;
}

// ============================================================================
// Vanishing orders at the marked points
// ============================================================================

template <class S>
struct OrderEntry {
    int i = 0;
    S point;
    int order = 0;  ///< kInfiniteOrder when c_i vanishes identically
    int bound = 0;  ///< floor((i + 1) / 2)
    bool pass = false;
};

template <class S>
struct OrderReport {
    std::vector<OrderEntry<S>> entries;
    bool passed = true;
};

template <class S>
OrderReport<S> order_check(const CharPoly<S>& cp, const std::vector<S>& points)
{
    OrderReport<S> rep;
    for (int i = 2; i <= cp.r; ++i)
        for (const auto& p : points) {
            OrderEntry<S> e{i, p, vanishing_order(cp.coeff(i), p), (i + 1) / 2, false};
            e.pass = e.order >= e.bound;
            rep.passed = rep.passed && e.pass;
            rep.entries.push_back(std::move(e));
        }
    return rep;
}

// ============================================================================
// Consistency between the twisted and untwisted fields
// ============================================================================

struct TraceConsistency {
    bool ok = true;
    int failed_k = -1;
};

/// Checks Tr psi = 0 and, for k = 2..r,
///   Tr(psi^k) = g_k prod^{k-1}  whenever g_k is a polynomial (always for
///                                k <= 3; from k = 4 on Tr phi^k may have
///                                double poles and the identity is skipped),
///   c_k(psi)  = b_k prod^{k-1}  for every k,
/// with g_k, b_k the base polynomials of the two Hitchin bases.
template <class S>
TraceConsistency trace_consistency(const HiggsField<S>& h)
{
    const TwistedHiggs<S> t = twist(h);
    if (!trace(t.psi).is_zero())
        return {false, 1};
    const DensePoly<S> d = divisor_poly(h.marked_points);
    const std::vector<DensePoly<S>> c = poly_matrix_charpoly(t.psi);
    for (int k = 2; k <= h.r; ++k) {
        const DensePoly<S> dk = power(d, static_cast<unsigned>(k - 1));
        std::optional<DensePoly<S>> g;
        try {
            g = base_polynomial(h, k, HitchinBasis::trace_powers);
        } catch (const ValidationError&) {
            if (k <= 3)
                return {false, k};
        }
        if (g && trace(poly_matrix_power(t.psi, k)) != *g * dk)
            return {false, k};
        if (c[static_cast<std::size_t>(k - 1)] != base_polynomial(h, k, HitchinBasis::char_coefficients) * dk)
            return {false, k};
    }
    return {};
}

// ============================================================================
// Bivariate polynomials f(z, lambda)
// ============================================================================

/// f = sum_k coeffs[k](z) lambda^k.
template <class S>
struct BivariatePoly {
    std::vector<DensePoly<S>> coeffs;

    int lambda_degree() const
    {
        int d = kZeroDegree;
        for (std::size_t k = 0; k < coeffs.size(); ++k)
            if (!coeffs[k].is_zero())
                d = static_cast<int>(k);
        return d;
    }

    int z_degree() const
    {
        int d = kZeroDegree;
        for (const auto& p : coeffs)
            d = std::max(d, p.degree());
        return d;
    }

    /// Coefficients in lambda of f(z, .), lowest first.
    std::vector<S> at(const S& z) const
    {
        std::vector<S> out;
        for (const auto& p : coeffs)
            out.push_back(p(z));
        return out;
    }

    BivariatePoly d_lambda() const
    {
        BivariatePoly out;
        for (std::size_t k = 1; k < coeffs.size(); ++k)
            out.coeffs.push_back(coeffs[k] * S(static_cast<long>(k)));
        return out;
    }

    BivariatePoly d_z() const
    {
        BivariatePoly out;
        for (const auto& p : coeffs)
            out.coeffs.push_back(p.derivative());
        return out;
    }

    friend bool operator==(const BivariatePoly& a, const BivariatePoly& b)
    {
        const std::size_t len = std::max(a.coeffs.size(), b.coeffs.size());
        for (std::size_t k = 0; k < len; ++k) {
            const DensePoly<S> pa = k < a.coeffs.size() ? a.coeffs[k] : DensePoly<S>(Var::z);
            const DensePoly<S> pb = k < b.coeffs.size() ? b.coeffs[k] : DensePoly<S>(Var::z);
            if (pa != pb)
                return false;
        }
        return true;
    }
};

/// lambda^r + c_1 lambda^{r-1} + ... + c_r.
template <class S>
BivariatePoly<S> spectral_polynomial(const CharPoly<S>& cp)
{
    BivariatePoly<S> f;
    f.coeffs.assign(static_cast<std::size_t>(cp.r + 1), DensePoly<S>(Var::z));
    f.coeffs[static_cast<std::size_t>(cp.r)] = DensePoly<S>::constant(S(1), Var::z);
    for (int i = 1; i <= cp.r; ++i)
        f.coeffs[static_cast<std::size_t>(cp.r - i)] = cp.coeff(i);
    return f;
}

namespace detail {

template <class S>
Complex as_complex(const S& s)
{
    if constexpr (std::is_same_v<S, BigRational>)
        return {s.get_d(), 0.0};
    else
        return scalar_traits<S>::to_complex(s);
}

/// Roots of sum_k a[k] x^k (a.back() != 0) as companion-matrix eigenvalues.
inline std::vector<Complex> poly_roots(const std::vector<Complex>& a)
{
    const Eigen::Index d = static_cast<Eigen::Index>(a.size()) - 1;
    if (d < 1)
        return {};
    Eigen::MatrixXcd comp = Eigen::MatrixXcd::Zero(d, d);
    for (Eigen::Index i = 1; i < d; ++i)
        comp(i, i - 1) = 1.0;
    for (Eigen::Index i = 0; i < d; ++i)
        comp(i, d - 1) = -a[static_cast<std::size_t>(i)] / a.back();
    Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(comp, false);
    std::vector<Complex> roots(es.eigenvalues().begin(), es.eigenvalues().end());
    return roots;
}

inline Complex horner(const std::vector<Complex>& a, Complex x)
{
    Complex acc = 0.0;
    for (auto it = a.rbegin(); it != a.rend(); ++it)
        acc = acc * x + *it;
    return acc;
}

/// Sum of |a_k x^k|, the natural scale for judging horner(a, x) against zero.
inline double horner_scale(const std::vector<Complex>& a, Complex x)
{
    double acc = 0.0, xp = 1.0;
    for (const auto& c : a) {
        acc += std::abs(c) * xp;
        xp *= std::abs(x);
    }
    return acc;
}

/// Resultant of two univariate polynomials with nonzero leading coefficients,
/// as the Sylvester determinant.
template <class S>
S sylvester_resultant(const std::vector<S>& f, const std::vector<S>& g)
{
    const std::size_t df = f.size() - 1, dg = g.size() - 1;
    const std::size_t m = df + dg;
    if (m == 0)
        return S(1);
    Matrix<S> syl(m, m);
    for (std::size_t row = 0; row < dg; ++row)
        for (std::size_t k = 0; k <= df; ++k)
            syl(row, row + k) = f[df - k];
    for (std::size_t row = 0; row < df; ++row)
        for (std::size_t k = 0; k <= dg; ++k)
            syl(dg + row, row + k) = g[dg - k];
    return determinant(std::move(syl));
}

}  // namespace detail

/// Res_lambda(f, df/dlambda) as a polynomial in z, by evaluation at integer
/// points and interpolation. f must have constant leading coefficient in
/// lambda so that specialization commutes with the resultant.
template <class S>
DensePoly<S> discriminant_resultant(const BivariatePoly<S>& f)
{
    const int r = f.lambda_degree();
    if (r < 1)
        throw ValidationError("degenerate discriminant");
    if (f.coeffs[static_cast<std::size_t>(r)].degree() > 0)
        throw std::invalid_argument("discriminant_resultant: leading coefficient must be constant");
    const BivariatePoly<S> fl = f.d_lambda();
    const int bound = (2 * r - 1) * std::max(0, f.z_degree());
    std::vector<S> xs, ys;
    for (int k = 0; k <= bound; ++k) {
        const S z(static_cast<long>(k));
        auto fv = f.at(z);
        auto gv = fl.at(z);
        fv.resize(static_cast<std::size_t>(r + 1));
        gv.resize(static_cast<std::size_t>(r));
        xs.push_back(z);
        ys.push_back(detail::sylvester_resultant(fv, gv));
    }
    return interpolate(xs, ys, Var::z);
}

// ============================================================================
// Smoothness probe
// ============================================================================

enum class ProbeClass { on_divisor, smooth_candidate, singular_candidate };

inline const char* probe_class_name(ProbeClass c)
{
    switch (c) {
    case ProbeClass::on_divisor:
        return "on_divisor";
    case ProbeClass::smooth_candidate:
        return "smooth_candidate";
    case ProbeClass::singular_candidate:
        return "singular_candidate";
    }
    return "?";
}

struct ProbePoint {
    Complex z;
    std::optional<Complex> lambda_fiber;  ///< repeated root of f(z, .)
    double abs_f = 0.0;
    double abs_fz = 0.0;
    ProbeClass cls = ProbeClass::on_divisor;
};

inline constexpr double kProbePrecision = 1e-8;

template <class S>
struct SmoothnessReport {
    DensePoly<S> resultant;
    std::vector<ProbePoint> points;
    bool smooth_away_from_divisor = true;
    std::string verdict;
};

/// Candidate singular points of f = 0 away from the divisor. The exact
/// resultant is reduced to its square-free part and stripped of the marked
/// points exactly; the remaining roots are found numerically. At each root the
/// repeated lambda is taken among the roots of df/dlambda, and the point is a
/// singular candidate when df/dz also vanishes there. Magnitudes are judged
/// relative to the sum of absolute values of the terms.
template <class S>
SmoothnessReport<S> smoothness_probe(const BivariatePoly<S>& f, const std::vector<S>& divisor,
                                     double precision = kProbePrecision)
{
    SmoothnessReport<S> rep;
    rep.resultant = discriminant_resultant(f);
    if (rep.resultant.is_zero())
        throw ValidationError("degenerate discriminant");

    DensePoly<S> sf = rep.resultant;
    if (sf.degree() > 0)
        sf = exact_quotient(sf, gcd(sf, sf.derivative()));
    for (const auto& p : divisor)
        if (sf.degree() > 0 && scalar_traits<S>::is_zero(sf(p))) {
            sf = exact_quotient(sf, DensePoly<S>::linear_root(p));
            rep.points.push_back({detail::as_complex(p), std::nullopt, 0.0, 0.0, ProbeClass::on_divisor});
        }

    std::vector<Complex> sfc;
    for (const auto& c : sf.coeffs())
        sfc.push_back(detail::as_complex(c));
    const auto to_complex_coeffs = [](const std::vector<DensePoly<S>>& ps, Complex z) {
        std::vector<Complex> out;
        for (const auto& p : ps) {
            std::vector<Complex> pc;
            for (const auto& c : p.coeffs())
                pc.push_back(detail::as_complex(c));
            out.push_back(detail::horner(pc, z));
        }
        return out;
    };
    const BivariatePoly<S> fl = f.d_lambda(), fz = f.d_z();
    const std::vector<Complex> sfd = [&] {
        std::vector<Complex> d;
        for (std::size_t k = 1; k < sfc.size(); ++k)
            d.push_back(sfc[k] * static_cast<double>(k));
        return d;
    }();

    for (Complex z : detail::poly_roots(sfc)) {
        for (int it = 0; it < 3; ++it) {
            const Complex dv = detail::horner(sfd, z);
            if (std::abs(dv) == 0.0)
                break;
            z -= detail::horner(sfc, z) / dv;
        }
        ProbePoint pt{z, std::nullopt, 0.0, 0.0, ProbeClass::smooth_candidate};
        bool near_divisor = false;
        for (const auto& p : divisor) {
            const Complex pc = detail::as_complex(p);
            near_divisor = near_divisor || std::abs(z - pc) <= precision * (1.0 + std::abs(pc));
        }
        if (near_divisor) {
            pt.cls = ProbeClass::on_divisor;
            rep.points.push_back(pt);
            continue;
        }
        const auto fc = to_complex_coeffs(f.coeffs, z);
        const auto flc = to_complex_coeffs(fl.coeffs, z);
        const auto fzc = to_complex_coeffs(fz.coeffs, z);
        double best = std::numeric_limits<double>::infinity();
        bool singular = false;
        for (const Complex lam : detail::poly_roots(flc)) {
            const double rel_f = std::abs(detail::horner(fc, lam)) / std::max(detail::horner_scale(fc, lam), 1e-300);
            const double abs_fz = std::abs(detail::horner(fzc, lam));
            const double rel_fz = abs_fz / std::max(detail::horner_scale(fzc, lam), 1e-300);
            const bool on_curve = rel_f <= precision;
            const bool sing_here = on_curve && rel_fz <= precision;
            if (rel_f < best || (sing_here && !singular)) {
                best = std::min(best, rel_f);
                pt.lambda_fiber = lam;
                pt.abs_f = std::abs(detail::horner(fc, lam));
                pt.abs_fz = abs_fz;
            }
            singular = singular || sing_here;
        }
        if (singular) {
            pt.cls = ProbeClass::singular_candidate;
            rep.smooth_away_from_divisor = false;
        }
        rep.points.push_back(pt);
    }
    rep.verdict = rep.smooth_away_from_divisor ? "no singularities detected away from D"
                                               : "singular candidates away from D";
    return rep;
}

// ============================================================================
// Local models
// ============================================================================

struct LocalModel {
    std::string name;
    BivariatePoly<BigRational> f;
    PolyMatrix<BigRational> M;
    std::size_t residue_rank = 0;
    /// a, b, c of the rank-4 model, empty for rank 3.
    std::vector<DensePoly<BigRational>> parameters;
};

namespace detail {

inline DensePoly<BigRational> zpoly(std::vector<BigRational> c) { return DensePoly<BigRational>(std::move(c), Var::z); }

inline void validate_local_model(const LocalModel& m)
{
    if (spectral_polynomial(charpoly_of(m.M)) != m.f)
        throw ValidationError("local model " + m.name + ": characteristic polynomial mismatch");
    const Matrix<BigRational> m0 = evaluate(m.M, BigRational(0));
    if (!is_zero_matrix(Matrix<BigRational>(m0 * m0)))
        throw ValidationError("local model " + m.name + ": residue is not square-zero");
    if (exact_rank(m0) != m.residue_rank)
        throw ValidationError("local model " + m.name + ": unexpected residue rank");
}

}  // namespace detail

/// lambda^3 - z lambda - z^2 with its normal-form matrix, residue rank 1.
inline LocalModel rank3_local_model()
{
    using detail::zpoly;
    const auto zero = zpoly({});
    const auto one = zpoly({1});
    const auto z = zpoly({0, 1});
    LocalModel m;
    m.name = "rank3";
    m.f.coeffs = {zpoly({0, 0, -1}), zpoly({0, -1}), zero, one};
    m.M = PolyMatrix<BigRational>{{zero, z, zero}, {one, zero, z}, {one, zero, zero}};
    m.residue_rank = 1;
    detail::validate_local_model(m);
    return m;
}

/// lambda^4 - z a lambda^2 - z^2 b lambda - z^2 c with a, b, c of degree <= 1
/// and nonzero constant terms drawn from the seed. Residue rank 2.
inline LocalModel rank4_local_model(std::uint64_t seed = 0)
{
    using detail::zpoly;
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<int> num(-3, 3), den(1, 3);
    auto coefficient = [&](bool nonzero) {
        while (true) {
            const int p = num(rng);
            const int q = den(rng);
            if (!nonzero || p != 0)
                return BigRational(p, q);
        }
    };
    auto draw = [&] {
        BigRational c0 = coefficient(true);
        c0.canonicalize();
        BigRational c1 = coefficient(false);
        c1.canonicalize();
        return zpoly({c0, c1});
    };
    const auto a = draw();
    const auto b = draw();
    const auto c = draw();
    const auto zero = zpoly({});
    const auto one = zpoly({1});
    const auto z = zpoly({0, 1});
    const auto z2 = zpoly({0, 0, 1});
    LocalModel m;
    m.name = "rank4";
    m.f.coeffs = {-(z2 * c), -(z2 * b), -(z * a), zero, one};
    m.M = PolyMatrix<BigRational>{
        {zero, zero, zero, z * c}, {one, zero, zero, z * b}, {zero, z, zero, z * a}, {zero, zero, one, zero}};
    m.residue_rank = 2;
    m.parameters = {a, b, c};
    detail::validate_local_model(m);
    return m;
}

inline std::vector<LocalModel> local_models(std::uint64_t seed = 0) { return {rank3_local_model(), rank4_local_model(seed)}; }

}  // namespace hyperpolygon
