/**
 * @file hitchin.hpp
 * @brief The Higgs field phi(z) = sum_i phi_i / (z - p_i) with residues
 *        phi_i = x_i y_i, its Hitchin map, closed-form gradients of the
 *        Hamiltonians Tr phi(z0)^m, the canonical bracket and the rank of the
 *        Hitchin map.
 */
#pragma once

#include "hyperpolygon/quiver.hpp"

#include <cmath>
#include <map>
#include <numbers>
#include <vector>

namespace hyperpolygon {

template <class S>
struct HiggsField {
    int r = 0;
    int n = 0;
    std::vector<Matrix<S>> residues;
    std::vector<S> marked_points;
};

/// Tolerance of float-flavor residue and degree checks, relative to the data.
inline constexpr double kFloatCheckTol = 1e-8;

/// phi_i = x_i y_i, after checking y_i x_i = 0 for every i and x y = 0.
template <class S>
HiggsField<S> residues(const QuiverPoint<S>& p, double tol = kFloatCheckTol)
{
    validate_point(p);
    HiggsField<S> h{p.r, p.n, {}, p.marked_points};
    Matrix<S> sum(p.r, p.r);
    double scale = 0.0;
    for (int i = 0; i < p.n; ++i) {
        const Matrix<S> xi = p.x.col(i), yi = p.y.row(i);
        const S yx = (yi * xi)(0, 0);
        if constexpr (is_exact_v<S>) {
            if (!yx.is_zero())
                throw ValidationError("complex moment map violated", i + 1);
        } else {
            const double bound = tol * std::sqrt(frobenius_norm2(xi) * frobenius_norm2(yi));
            if (std::abs(yx) > bound)
                throw ValidationError("complex moment map violated", i + 1);
        }
        Matrix<S> phi = xi * yi;
        if constexpr (!is_exact_v<S>)
            scale += std::sqrt(frobenius_norm2(phi));
        sum += phi;
        h.residues.push_back(std::move(phi));
    }
    if constexpr (is_exact_v<S>) {
        if (!is_zero_matrix(sum))
            throw ValidationError("complex moment map violated");
    } else if (std::sqrt(frobenius_norm2(sum)) > tol * scale) {
        throw ValidationError("complex moment map violated");
    }
    return h;
}

template <class S>
bool is_pole(const std::vector<S>& marked, const S& z)
{
    for (const auto& p : marked) {
        if constexpr (is_exact_v<S>) {
            if (p == z)
                return true;
        } else if (std::abs(z - p) <= 1e-14 * (1.0 + std::abs(p))) {
            return true;
        }
    }
    return false;
}

template <class S>
void require_off_poles(const std::vector<S>& marked, const S& z)
{
    if (is_pole(marked, z))
        throw ValidationError("evaluation at pole");
}

/// sum_i phi_i / (z - p_i)
template <class S>
Matrix<S> higgs_eval(const HiggsField<S>& h, const S& z)
{
    require_off_poles(h.marked_points, z);
    Matrix<S> out(h.r, h.r);
    for (int i = 0; i < h.n; ++i)
        out += scaled(h.residues[i], S(S(1) / S(z - h.marked_points[i])));
    return out;
}

/// prod_j (z - p_j)
template <class S>
DensePoly<S> divisor_poly(const std::vector<S>& marked)
{
    return from_roots(marked, Var::z);
}

template <class S>
Matrix<S> matrix_power(const Matrix<S>& a, int k)
{
    Matrix<S> out = Matrix<S>::identity(a.rows());
    for (int i = 0; i < k; ++i)
        out = out * a;
    return out;
}

// ============================================================================
// Hitchin map
// ============================================================================

/// Coordinates on the Hitchin base.
///  - trace_powers:      g_i = Tr(phi^i) prod_j (z - p_j)
///  - char_coefficients: b_i = c_i(phi) prod_j (z - p_j), where
///    det(lambda - phi) = lambda^r + c_1 lambda^{r-1} + ... + c_r.
/// For r <= 3 the two agree up to the constants b_2 = -g_2/2, b_3 = -g_3/3.
/// From i = 4 on, Tr(phi^i) has double poles at the marked points (the
/// lambda^2-coefficient pairing phi_j R phi_j R survives), so only the
/// characteristic coefficients give polynomials for r >= 4.
enum class HitchinBasis { trace_powers, char_coefficients };

inline const char* basis_name(HitchinBasis b)
{
    return b == HitchinBasis::trace_powers ? "trace_powers" : "char_coefficients";
}

/// The basis used when the caller does not choose: trace powers while they
/// are polynomial (r <= 3), characteristic coefficients beyond.
inline HitchinBasis default_basis(int r) { return r <= 3 ? HitchinBasis::trace_powers : HitchinBasis::char_coefficients; }

template <class S>
struct BasePoint {
    HitchinBasis basis = HitchinBasis::trace_powers;
    /// g[i] for i = 2..r: coefficients of z^0..z^{n-2i}, zero-padded.
    std::map<int, std::vector<S>> g;

    std::size_t coordinate_count() const
    {
        std::size_t c = 0;
        for (const auto& [i, v] : g)
            c += v.size();
        return c;
    }
};

/// Value at z of the i-th base function before multiplying by prod(z - p_j):
/// Tr(phi(z)^i) or c_i(phi(z)).
template <class S>
S base_function_at(const Matrix<S>& phi, int i, HitchinBasis basis)
{
    if (basis == HitchinBasis::trace_powers)
        return trace(matrix_power(phi, i));
    return matrix_charpoly(phi)[static_cast<std::size_t>(i - 1)];
}

/// Integers 0, 1, 2, ... that are not poles, `count` of them.
template <class S>
std::vector<S> sample_points(const std::vector<S>& marked, std::size_t count)
{
    std::vector<S> pts;
    for (long t = 0; pts.size() < count; ++t) {
        const S z = scalar_traits<S>::from_rational(BigRational(t));
        if (!is_pole(marked, z))
            pts.push_back(z);
    }
    return pts;
}

namespace detail {

/// Sample circle for the float flavor: radius 1 + max |p_j|, so every pole is
/// strictly inside.
inline std::vector<Complex> circle_points(const std::vector<Complex>& marked, std::size_t k, double& radius)
{
    radius = 1.0;
    for (const auto& p : marked)
        radius = std::max(radius, 1.0 + std::abs(p));
    std::vector<Complex> pts;
    for (std::size_t j = 0; j < k; ++j)
        pts.push_back(std::polar(radius, 2.0 * std::numbers::pi * static_cast<double>(j) / static_cast<double>(k)));
    return pts;
}

/// Coefficients c_j (j < K) of a degree < K polynomial from its values on the
/// circle, scaled so that c_j = a_j radius^j.
inline std::vector<Complex> scaled_dft(const std::vector<Complex>& values)
{
    const std::size_t k = values.size();
    std::vector<Complex> c(k);
    for (std::size_t j = 0; j < k; ++j) {
        Complex acc = 0.0;
        for (std::size_t t = 0; t < k; ++t)
            acc += values[t] * std::polar(1.0, -2.0 * std::numbers::pi * static_cast<double>(j * t) / static_cast<double>(k));
        c[j] = acc / static_cast<double>(k);
    }
    return c;
}

}  // namespace detail

/// Exact flavor: the i-th base polynomial. Interpolates F(z) prod(z)^i,
/// which is a polynomial in z (it is a trace or principal-minor sum of the
/// polynomial matrix phi(z) prod(z)), then divides by prod(z)^{i-1}.
template <class S>
DensePoly<S> base_polynomial(const HiggsField<S>& h, int i, HitchinBasis basis)
{
    static_assert(is_exact_v<S>, "base_polynomial needs exact arithmetic");
    const DensePoly<S> d = divisor_poly(h.marked_points);
    const auto pts = sample_points(h.marked_points, static_cast<std::size_t>(i * (h.n - 1) + 1));
    std::vector<S> vals;
    for (const auto& z : pts) {
        const S dz = d(z);
        S dz_pow = S(1);
        for (int k = 0; k < i; ++k)
            dz_pow = dz_pow * dz;
        vals.push_back(base_function_at(higgs_eval(h, z), i, basis) * dz_pow);
    }
    const DensePoly<S> numerator = interpolate(pts, vals, Var::z);
    auto [g, rem] = divmod(numerator, power(d, static_cast<unsigned>(i - 1)));
    if (!rem.is_zero())
        throw ValidationError("degree overflow: higher-order pole", i);
    if (g.degree() > h.n - 2 * i)
        throw ValidationError("degree overflow", i);
    return g;
}

template <class S>
BasePoint<S> hitchin_map(const HiggsField<S>& h, HitchinBasis basis = HitchinBasis::trace_powers)
{
    BasePoint<S> out{basis, {}};
    for (int i = 2; i <= h.r; ++i) {
        const std::size_t len = static_cast<std::size_t>(std::max(0, h.n - 2 * i + 1));
        std::vector<S> coeffs(len);
        if constexpr (is_exact_v<S>) {
            const DensePoly<S> g = base_polynomial(h, i, basis);
            for (std::size_t j = 0; j < len; ++j)
                coeffs[j] = g.coeff(j);
        } else {
            double radius = 1.0;
            const auto pts = detail::circle_points(h.marked_points, static_cast<std::size_t>(h.n + 1), radius);
            const DensePoly<S> d = divisor_poly(h.marked_points);
            std::vector<Complex> vals;
            double scale = 0.0;
            for (const auto& z : pts) {
                vals.push_back(base_function_at(higgs_eval(h, z), i, basis) * d(z));
                scale = std::max(scale, std::abs(vals.back()));
            }
            const auto c = detail::scaled_dft(vals);
            for (std::size_t j = len; j < c.size(); ++j)
                if (std::abs(c[j]) > kFloatCheckTol * std::max(scale, 1e-300))
                    throw ValidationError("degree overflow", i);
            for (std::size_t j = 0; j < len; ++j)
                coeffs[j] = c[j] / std::pow(radius, static_cast<double>(j));
        }
        out.g.emplace(i, std::move(coeffs));
    }
    return out;
}

// ============================================================================
// Gradients and brackets
// ============================================================================

/// Partial derivatives with respect to every x_{ai} (r x n) and y_{ia} (n x r).
template <class S>
struct Gradient {
    Matrix<S> dx;
    Matrix<S> dy;

    Gradient& operator+=(const Gradient& o)
    {
        dx += o.dx;
        dy += o.dy;
        return *this;
    }
    Gradient& scale(const S& s)
    {
        dx.scale(s);
        dy.scale(s);
        return *this;
    }
};

/// I_m(z0) = Tr(phi(z0)^m)
template <class S>
struct BracketObservable {
    int m = 2;
    S z0{};
};

/// The (i, j) entry of phi(z), 0-based.
template <class S>
struct EntryObservable {
    int i = 0;
    int j = 0;
    S z{};
};

/// dI_m/dx_{ai} = m (y_i phi^{m-1})_a / (z0 - p_i),
/// dI_m/dy_{ia} = m (phi^{m-1} x_i)_a / (z0 - p_i).
template <class S>
Gradient<S> observable_grad(const QuiverPoint<S>& p, const BracketObservable<S>& obs)
{
    if (obs.m < 1)
        throw ValidationError("observable power must be >= 1");
    require_off_poles(p.marked_points, obs.z0);
    Matrix<S> phi(p.r, p.r);
    std::vector<S> w(p.n);
    for (int i = 0; i < p.n; ++i) {
        w[i] = S(S(1) / S(obs.z0 - p.marked_points[i]));
        phi += scaled(Matrix<S>(p.x.col(i) * p.y.row(i)), w[i]);
    }
    const Matrix<S> pw = matrix_power(phi, obs.m - 1);
    const Matrix<S> ypw = p.y * pw;  // row i: y_i phi^{m-1}
    const Matrix<S> pwx = pw * p.x;  // column i: phi^{m-1} x_i
    Gradient<S> g{Matrix<S>(p.r, p.n), Matrix<S>(p.n, p.r)};
    const S m(static_cast<long>(obs.m));
    for (int i = 0; i < p.n; ++i) {
        const S c = m * w[i];
        for (int a = 0; a < p.r; ++a) {
            g.dx(a, i) = c * ypw(i, a);
            g.dy(i, a) = c * pwx(a, i);
        }
    }
    return g;
}

/// d phi_ij(z)/dx_{a m} = delta_{ai} y_{mj} / (z - p_m),
/// d phi_ij(z)/dy_{m a} = delta_{aj} x_{im} / (z - p_m).
template <class S>
Gradient<S> observable_grad(const QuiverPoint<S>& p, const EntryObservable<S>& obs)
{
    require_off_poles(p.marked_points, obs.z);
    Gradient<S> g{Matrix<S>(p.r, p.n), Matrix<S>(p.n, p.r)};
    for (int m = 0; m < p.n; ++m) {
        const S w = S(S(1) / S(obs.z - p.marked_points[m]));
        g.dx(obs.i, m) = p.y(m, obs.j) * w;
        g.dy(m, obs.j) = p.x(obs.i, m) * w;
    }
    return g;
}

/// {f, g} = sum_{a,i} (df/dy_{ia} dg/dx_{ai} - df/dx_{ai} dg/dy_{ia}); with
/// this sign the residues satisfy {phi_ij, phi_kl} = d_jk phi_il - d_il phi_kj.
template <class S>
S bracket(const Gradient<S>& f, const Gradient<S>& g)
{
    S acc{};
    for (std::size_t a = 0; a < f.dx.rows(); ++a)
        for (std::size_t i = 0; i < f.dx.cols(); ++i)
            acc += f.dy(i, a) * g.dx(a, i) - f.dx(a, i) * g.dy(i, a);
    return acc;
}

/// Sum of the magnitudes of the terms in bracket(f, g): the natural size
/// against which a float bracket is judged.
template <class S>
double bracket_scale(const Gradient<S>& f, const Gradient<S>& g)
{
    using T = scalar_traits<S>;
    double acc = 0.0;
    for (std::size_t a = 0; a < f.dx.rows(); ++a)
        for (std::size_t i = 0; i < f.dx.cols(); ++i)
            acc += as_double(T::magnitude(f.dy(i, a))) * as_double(T::magnitude(g.dx(a, i))) +
                   as_double(T::magnitude(f.dx(a, i))) * as_double(T::magnitude(g.dy(i, a)));
    return acc;
}

template <class S, class F, class G>
S poisson_bracket(const QuiverPoint<S>& p, const F& f, const G& g)
{
    return bracket(observable_grad(p, f), observable_grad(p, g));
}

/// Delta(z, w) = sum_m phi_m / ((z - p_m)(w - p_m)) = (phi(z) - phi(w)) / (w - z).
template <class S>
Matrix<S> delta_matrix(const HiggsField<S>& h, const S& z, const S& w)
{
    require_off_poles(h.marked_points, z);
    require_off_poles(h.marked_points, w);
    Matrix<S> out(h.r, h.r);
    for (int m = 0; m < h.n; ++m)
        out += scaled(h.residues[m], S(S(1) / S((z - h.marked_points[m]) * (w - h.marked_points[m]))));
    return out;
}

/// max over (i, j, k, l) of |{phi_ij(z), phi_kl(w)} - (d_jk Delta_il - d_il Delta_kj)|.
/// Magnitudes are max(|re|, |im|) in the exact flavor.
template <class S>
real_t<S> delta_check(const QuiverPoint<S>& p, const S& z, const S& w)
{
    using T = scalar_traits<S>;
    if (T::is_zero(S(z - w), 0.0))
        throw ValidationError("coincident evaluation points");
    const HiggsField<S> h = residues(p);
    // The right side from the evaluated Higgs field, independent of Delta's
    // partial-fraction form.
    const Matrix<S> delta = scaled(Matrix<S>(higgs_eval(h, z) - higgs_eval(h, w)), S(S(1) / S(w - z)));
    std::vector<Gradient<S>> gz, gw;
    for (int i = 0; i < p.r; ++i)
        for (int j = 0; j < p.r; ++j) {
            gz.push_back(observable_grad(p, EntryObservable<S>{i, j, z}));
            gw.push_back(observable_grad(p, EntryObservable<S>{i, j, w}));
        }
    real_t<S> worst{};
    for (int i = 0; i < p.r; ++i)
        for (int j = 0; j < p.r; ++j)
            for (int k = 0; k < p.r; ++k)
                for (int l = 0; l < p.r; ++l) {
                    S rhs{};
                    if (j == k)
                        rhs += delta(i, l);
                    if (i == l)
                        rhs -= delta(k, j);
                    const S lhs = bracket(gz[i * p.r + j], gw[k * p.r + l]);
                    const real_t<S> dev = T::magnitude(S(lhs - rhs));
                    if (worst < dev)
                        worst = dev;
                }
    return worst;
}

// ============================================================================
// Rank of the Hitchin map
// ============================================================================

struct JacobianReport {
    std::size_t rank = 0;
    std::size_t rows = 0;  ///< number of base coordinates
    std::size_t cols = 0;  ///< 2 n r holomorphic coordinates
    HitchinBasis basis = HitchinBasis::trace_powers;
    std::vector<double> singular_values;
};

/// Gradient of c_i(phi(z)) for i = 1..r from Newton's identities
/// k e_k = sum_{j=1}^k (-1)^{j-1} e_{k-j} p_j and c_i = (-1)^i e_i.
inline std::vector<Gradient<Complex>> char_coefficient_grads(const FloatPoint& p, const Complex& z)
{
    const int r = p.r;
    std::vector<Complex> pw(r + 1);
    std::vector<Gradient<Complex>> dp(r + 1);
    Matrix<Complex> phi(r, r);
    for (int i = 0; i < p.n; ++i)
        phi += scaled(Matrix<Complex>(p.x.col(i) * p.y.row(i)), Complex(1.0) / (z - p.marked_points[i]));
    for (int j = 1; j <= r; ++j) {
        pw[j] = trace(matrix_power(phi, j));
        dp[j] = observable_grad(p, BracketObservable<Complex>{j, z});
    }
    const Gradient<Complex> zero{Matrix<Complex>(p.r, p.n), Matrix<Complex>(p.n, p.r)};
    std::vector<Complex> e(r + 1);
    std::vector<Gradient<Complex>> de(r + 1, zero);
    e[0] = 1.0;
    for (int k = 1; k <= r; ++k) {
        Complex acc = 0.0;
        Gradient<Complex> dacc = zero;
        for (int j = 1; j <= k; ++j) {
            const double sign = (j % 2) ? 1.0 : -1.0;
            acc += sign * e[k - j] * pw[j];
            Gradient<Complex> t1 = de[k - j];
            t1.scale(sign * pw[j]);
            Gradient<Complex> t2 = dp[j];
            t2.scale(sign * e[k - j]);
            dacc += t1;
            dacc += t2;
        }
        e[k] = acc / static_cast<double>(k);
        de[k] = dacc.scale(1.0 / static_cast<double>(k));
    }
    std::vector<Gradient<Complex>> dc;
    for (int i = 1; i <= r; ++i) {
        Gradient<Complex> g = de[i];
        dc.push_back(g.scale(i % 2 ? -1.0 : 1.0));
    }
    return dc;
}

/// Numerical rank of d(base coordinates)/d(x, y) at a float point. Rows are
/// the circle-scaled coefficients of each base polynomial, which differ from
/// the monomial coefficients by a diagonal rescaling.
inline JacobianReport jacobian_rank(const FloatPoint& p, double threshold = kRankThreshold,
                                    std::optional<HitchinBasis> basis = std::nullopt)
{
    validate_point(p);
    JacobianReport rep;
    rep.basis = basis.value_or(default_basis(p.r));
    const int n = p.n, r = p.r;
    const std::size_t k = static_cast<std::size_t>(n + 1);
    double radius = 1.0;
    const auto pts = detail::circle_points(p.marked_points, k, radius);
    const DensePoly<Complex> d = divisor_poly(p.marked_points);

    // Gradients of each base function at each sample point, times prod(z - p_j).
    std::map<int, std::vector<Gradient<Complex>>> samples;
    for (const auto& z : pts) {
        std::vector<Gradient<Complex>> per_i;
        if (rep.basis == HitchinBasis::char_coefficients) {
            per_i = char_coefficient_grads(p, z);
        } else {
            for (int i = 1; i <= r; ++i)
                per_i.push_back(observable_grad(p, BracketObservable<Complex>{i, z}));
        }
        for (int i = 2; i <= r; ++i)
            samples[i].push_back(per_i[i - 1].scale(d(z)));
    }

    const std::size_t cols = static_cast<std::size_t>(2 * n * r);
    std::vector<Eigen::VectorXcd> rows;
    for (int i = 2; i <= r; ++i)
        for (int j = 0; j <= n - 2 * i; ++j) {
            Eigen::VectorXcd row = Eigen::VectorXcd::Zero(static_cast<Eigen::Index>(cols));
            for (std::size_t t = 0; t < k; ++t) {
                const Complex w = std::polar(1.0, -2.0 * std::numbers::pi * static_cast<double>(j * static_cast<int>(t)) /
                                                      static_cast<double>(k)) /
                                  static_cast<double>(k);
                const auto& g = samples[i][t];
                Eigen::Index c = 0;
                for (int a = 0; a < r; ++a)
                    for (int m = 0; m < n; ++m)
                        row(c++) += w * g.dx(a, m);
                for (int m = 0; m < n; ++m)
                    for (int a = 0; a < r; ++a)
                        row(c++) += w * g.dy(m, a);
            }
            rows.push_back(std::move(row));
        }
    rep.rows = rows.size();
    rep.cols = cols;
    if (rows.empty())
        return rep;
    Eigen::MatrixXcd jac(static_cast<Eigen::Index>(rows.size()), static_cast<Eigen::Index>(cols));
    for (std::size_t i = 0; i < rows.size(); ++i)
        jac.row(static_cast<Eigen::Index>(i)) = rows[i].transpose();
    const Eigen::VectorXd sigma = singular_values(jac);
    rep.singular_values.assign(sigma.data(), sigma.data() + sigma.size());
    rep.rank = numeric_rank(sigma, threshold);
    return rep;
}

/// Worked example at r = 2, n = 4 with marked points 1, 2, 3, 4: every
/// residue is nonzero and g_2 = [20].
inline ExactPoint fixture_point()
{
    using G = GaussianRational;
    return make_point(Matrix<G>{{1, 0, 1, 1}, {0, 1, 1, 2}}, Matrix<G>{{0, -1}, {-2, 0}, {-2, 2}, {2, -1}});
}

}  // namespace hyperpolygon
