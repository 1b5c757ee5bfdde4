/**
 * @file quiver.hpp
 * @brief Points (x, y) of the cotangent space of star-quiver representations:
 *        x is r x n (columns x_i), y is n x r (rows y_i). Exact sampling of
 *        the complex moment-map zero level, residuals of the full
 *        hyperkahler equations, the polygon edge map and minimal-orbit
 *        utilities.
 */
#pragma once

#include "hyperpolygon/betti.hpp"
#include "hyperpolygon/numeric.hpp"

#include <cmath>
#include <cstdint>
#include <optional>
#include <random>
#include <utility>
#include <vector>

namespace hyperpolygon {

enum class Flavor { exact, floating };

inline const char* flavor_name(Flavor f) { return f == Flavor::exact ? "exact" : "float"; }

template <class S>
struct QuiverPoint {
    static constexpr Flavor flavor = is_exact_v<S> ? Flavor::exact : Flavor::floating;

    int r = 0;
    int n = 0;
    Matrix<S> x;  ///< r x n
    Matrix<S> y;  ///< n x r
    std::optional<LengthVector> alpha;
    std::vector<S> marked_points;
};

using ExactPoint = QuiverPoint<GaussianRational>;
using FloatPoint = QuiverPoint<Complex>;

template <class S>
std::vector<S> default_marked_points(int n)
{
    std::vector<S> p;
    for (int i = 1; i <= n; ++i)
        p.push_back(scalar_traits<S>::from_rational(BigRational(i)));
    return p;
}

template <class S>
real_t<S> real_from_rational(const BigRational& q)
{
    if constexpr (is_exact_v<S>)
        return q;
    else
        return q.get_d();
}

inline double as_double(const BigRational& q) { return q.get_d(); }
inline double as_double(double d) { return d; }

/// Shape and marked-point checks shared by every consumer of a point.
template <class S>
void validate_point(const QuiverPoint<S>& p)
{
    if (p.r < 1 || p.n < 1)
        throw ValidationError("point: r and n must be positive");
    if (p.x.rows() != static_cast<std::size_t>(p.r) || p.x.cols() != static_cast<std::size_t>(p.n))
        throw ValidationError("point: x must be r x n");
    if (p.y.rows() != static_cast<std::size_t>(p.n) || p.y.cols() != static_cast<std::size_t>(p.r))
        throw ValidationError("point: y must be n x r");
    if (p.marked_points.size() != static_cast<std::size_t>(p.n))
        throw ValidationError("point: need n marked points");
    for (int i = 0; i < p.n; ++i)
        for (int j = 0; j < i; ++j)
            if (scalar_traits<S>::is_zero(p.marked_points[i] - p.marked_points[j], 0.0))
                throw ValidationError("point: marked points must be distinct", i + 1);
    if (p.alpha && p.alpha->size() != static_cast<std::size_t>(p.n))
        throw ValidationError("point: alpha must have n entries");
}

template <class S>
QuiverPoint<S> make_point(Matrix<S> x, Matrix<S> y, std::optional<LengthVector> alpha = std::nullopt,
                          std::vector<S> marked = {})
{
    QuiverPoint<S> p;
    p.r = static_cast<int>(x.rows());
    p.n = static_cast<int>(x.cols());
    p.x = std::move(x);
    p.y = std::move(y);
    p.alpha = std::move(alpha);
    p.marked_points = marked.empty() ? default_marked_points<S>(p.n) : std::move(marked);
    validate_point(p);
    return p;
}

inline FloatPoint to_float(const ExactPoint& p)
{
    FloatPoint f;
    f.r = p.r;
    f.n = p.n;
    f.x = to_complex_matrix(p.x);
    f.y = to_complex_matrix(p.y);
    f.alpha = p.alpha;
    for (const auto& m : p.marked_points)
        f.marked_points.push_back(scalar_traits<GaussianRational>::to_complex(m));
    return f;
}

// ============================================================================
// Moment maps
// ============================================================================

template <class S>
struct MomentResidual {
    using R = real_t<S>;
    R real_norm2{};     ///< |xx* - y*y - (alpha_[n]/r) Id|^2 + sum_i edge_i^2
    R complex_norm2{};  ///< |xy|^2 + sum_i |y_i x_i|^2
    std::vector<std::pair<R, S>> per_edge;  ///< (|x_i|^2 - |y_i|^2 - alpha_i, y_i x_i)

    double real_norm() const { return std::sqrt(as_double(real_norm2)); }
    double complex_norm() const { return std::sqrt(as_double(complex_norm2)); }
    double total() const { return std::sqrt(as_double(real_norm2) + as_double(complex_norm2)); }
};

template <class S>
MomentResidual<S> moment_residual(const QuiverPoint<S>& p, const LengthVector& alpha)
{
    using T = scalar_traits<S>;
    using R = real_t<S>;
    if (alpha.size() != static_cast<std::size_t>(p.n))
        throw ValidationError("moment_residual: alpha must have n entries");
    MomentResidual<S> res;
    const S level = T::from_rational(BigRational(alpha.total() / p.r));
    Matrix<S> h = p.x * adjoint(p.x) - adjoint(p.y) * p.y - Matrix<S>::identity(p.r, level);
    res.real_norm2 = frobenius_norm2(h);
    res.complex_norm2 = frobenius_norm2(Matrix<S>(p.x * p.y));
    for (int i = 0; i < p.n; ++i) {
        R edge = -real_from_rational<S>(alpha[i]);
        S yx{};
        for (int a = 0; a < p.r; ++a) {
            edge += T::abs2(p.x(a, i)) - T::abs2(p.y(i, a));
            yx += p.y(i, a) * p.x(a, i);
        }
        res.real_norm2 += edge * edge;
        res.complex_norm2 += T::abs2(yx);
        res.per_edge.emplace_back(std::move(edge), std::move(yx));
    }
    return res;
}

// ============================================================================
// Exact sampling of the complex level set
// ============================================================================

/// Basis of {y : y_i x_i = 0 for all i, x y = 0} for fixed x, as n x r matrices.
inline std::vector<Matrix<GaussianRational>> exact_fiber(const Matrix<GaussianRational>& x)
{
    const std::size_t r = x.rows(), n = x.cols();
    auto var = [r](std::size_t i, std::size_t a) { return i * r + a; };
    Matrix<GaussianRational> eq(n + r * r, n * r);
    std::size_t row = 0;
    for (std::size_t i = 0; i < n; ++i, ++row)
        for (std::size_t a = 0; a < r; ++a)
            eq(row, var(i, a)) = x(a, i);
    for (std::size_t b = 0; b < r; ++b)
        for (std::size_t c = 0; c < r; ++c, ++row)
            for (std::size_t i = 0; i < n; ++i)
                eq(row, var(i, c)) = x(b, i);
    std::vector<Matrix<GaussianRational>> basis;
    for (const auto& v : nullspace(eq)) {
        Matrix<GaussianRational> y(n, r);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t a = 0; a < r; ++a)
                y(i, a) = v[var(i, a)];
        basis.push_back(std::move(y));
    }
    return basis;
}

inline constexpr int kSampleRetries = 16;

/// Seeded exact point with x of full rank and y a nonzero element of the
/// fiber over x. Only the complex equations are imposed.
inline ExactPoint sample_exact(int r, int n, std::uint64_t seed, std::vector<GaussianRational> marked = {})
{
    if (r < 1 || n < 1)
        throw ValidationError("sample_exact: r and n must be positive");
    if (static_cast<long>(n) * r - n - static_cast<long>(r) * r + 1 < 1)
        throw ValidationError("trivial fiber");
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<int> num(-3, 3), den(1, 2), coef(-3, 3);

    for (int attempt = 0; attempt < kSampleRetries; ++attempt) {
        Matrix<GaussianRational> x(r, n);
        for (int a = 0; a < r; ++a)
            for (int i = 0; i < n; ++i) {
                const int top = num(rng);
                const int bottom = den(rng);
                BigRational q(top, bottom);
                q.canonicalize();
                x(a, i) = GaussianRational(q);
            }
        bool columns_ok = true;
        for (int i = 0; i < n; ++i)
            columns_ok = columns_ok && !is_zero_matrix(x.col(i));
        if (!columns_ok || exact_rank(x) != static_cast<std::size_t>(r))
            continue;

        const auto basis = exact_fiber(x);
        if (basis.empty())
            throw ValidationError("trivial fiber");
        Matrix<GaussianRational> y(n, r);
        while (is_zero_matrix(y)) {
            y = Matrix<GaussianRational>(n, r);
            for (const auto& b : basis)
                y += scaled(b, GaussianRational(coef(rng)));
        }
        return make_point(std::move(x), std::move(y), std::nullopt, std::move(marked));
    }
    throw ValidationError("degenerate x");
}

// ============================================================================
// Numerical solution of the full equations
// ============================================================================

struct SolveOptions {
    double tol = 1e-10;
    int max_iter = 5000;  ///< per restart
    int restarts = 10;
};

namespace detail {

/// Residual vector of all moment-map equations, stacked as
/// [Re H, Im H, edges, Re xy, Im xy, Re y_i x_i, Im y_i x_i].
struct MomentSystem {
    int r, n;
    std::vector<double> alpha;
    double level;

    std::size_t size() const { return static_cast<std::size_t>(4 * r * r + 3 * n); }
    std::size_t vars() const { return static_cast<std::size_t>(4 * r * n); }

    void unpack(const Eigen::VectorXd& v, Eigen::MatrixXcd& x, Eigen::MatrixXcd& y) const
    {
        x.resize(r, n);
        y.resize(n, r);
        Eigen::Index k = 0;
        for (int a = 0; a < r; ++a)
            for (int i = 0; i < n; ++i, k += 2)
                x(a, i) = {v(k), v(k + 1)};
        for (int i = 0; i < n; ++i)
            for (int a = 0; a < r; ++a, k += 2)
                y(i, a) = {v(k), v(k + 1)};
    }

    Eigen::VectorXd pack(const Eigen::MatrixXcd& x, const Eigen::MatrixXcd& y) const
    {
        Eigen::VectorXd v(vars());
        Eigen::Index k = 0;
        for (int a = 0; a < r; ++a)
            for (int i = 0; i < n; ++i, k += 2) {
                v(k) = x(a, i).real();
                v(k + 1) = x(a, i).imag();
            }
        for (int i = 0; i < n; ++i)
            for (int a = 0; a < r; ++a, k += 2) {
                v(k) = y(i, a).real();
                v(k + 1) = y(i, a).imag();
            }
        return v;
    }

    Eigen::VectorXd stack(const Eigen::MatrixXcd& h, const Eigen::VectorXd& edges, const Eigen::MatrixXcd& xy,
                          const Eigen::VectorXcd& yx) const
    {
        Eigen::VectorXd f(size());
        Eigen::Index k = 0;
        for (int a = 0; a < r; ++a)
            for (int b = 0; b < r; ++b) {
                f(k++) = h(a, b).real();
                f(k++) = h(a, b).imag();
            }
        for (int i = 0; i < n; ++i)
            f(k++) = edges(i);
        for (int a = 0; a < r; ++a)
            for (int b = 0; b < r; ++b) {
                f(k++) = xy(a, b).real();
                f(k++) = xy(a, b).imag();
            }
        for (int i = 0; i < n; ++i) {
            f(k++) = yx(i).real();
            f(k++) = yx(i).imag();
        }
        return f;
    }

    Eigen::VectorXd residual(const Eigen::MatrixXcd& x, const Eigen::MatrixXcd& y) const
    {
        Eigen::MatrixXcd h = x * x.adjoint() - y.adjoint() * y - level * Eigen::MatrixXcd::Identity(r, r);
        Eigen::VectorXd edges(n);
        Eigen::VectorXcd yx(n);
        for (int i = 0; i < n; ++i) {
            edges(i) = x.col(i).squaredNorm() - y.row(i).squaredNorm() - alpha[i];
            yx(i) = (y.row(i) * x.col(i))(0, 0);
        }
        return stack(h, edges, x * y, yx);
    }

    /// Derivative of the residual at (x, y) in the direction (dx, dy).
    Eigen::VectorXd linearized(const Eigen::MatrixXcd& x, const Eigen::MatrixXcd& y, const Eigen::MatrixXcd& dx,
                               const Eigen::MatrixXcd& dy) const
    {
        Eigen::MatrixXcd h = dx * x.adjoint() + x * dx.adjoint() - dy.adjoint() * y - y.adjoint() * dy;
        Eigen::VectorXd edges(n);
        Eigen::VectorXcd yx(n);
        for (int i = 0; i < n; ++i) {
            edges(i) = 2.0 * (x.col(i).adjoint() * dx.col(i))(0, 0).real() -
                       2.0 * (dy.row(i) * y.row(i).adjoint())(0, 0).real();
            yx(i) = (dy.row(i) * x.col(i))(0, 0) + (y.row(i) * dx.col(i))(0, 0);
        }
        return stack(h, edges, dx * y + x * dy, yx);
    }

    Eigen::MatrixXd jacobian(const Eigen::MatrixXcd& x, const Eigen::MatrixXcd& y) const
    {
        Eigen::MatrixXd j(size(), vars());
        Eigen::VectorXd e = Eigen::VectorXd::Zero(vars());
        Eigen::MatrixXcd dx, dy;
        for (std::size_t k = 0; k < vars(); ++k) {
            e(k) = 1.0;
            unpack(e, dx, dy);
            j.col(k) = linearized(x, y, dx, dy);
            e(k) = 0.0;
        }
        return j;
    }
};

}  // namespace detail

/// Levenberg-Marquardt on the stacked real and complex equations. Each
/// restart draws x_i with |x_i|^2 = alpha_i and y of size 1/2, then takes only
/// steps that lower the residual; a restart ends on success, after max_iter
/// Jacobian evaluations, or when the damping blows up.
inline FloatPoint solve_real(int r, int n, const LengthVector& alpha, std::uint64_t seed,
                             const SolveOptions& opt = {})
{
    if (r < 1 || n < r + 1)
        throw ValidationError("solve_real: need r >= 1 and n >= r + 1");
    if (alpha.size() != static_cast<std::size_t>(n))
        throw ValidationError("solve_real: alpha must have n entries");
    if (opt.max_iter < 0 || opt.restarts < 1 || !(opt.tol > 0))
        throw ValidationError("solve_real: bad solver options");

    detail::MomentSystem sys{r, n, {}, as_double(BigRational(alpha.total() / r))};
    for (const auto& a : alpha.values())
        sys.alpha.push_back(a.get_d());

    double best = std::numeric_limits<double>::infinity();
    for (int restart = 0; restart < opt.restarts; ++restart) {
        std::seed_seq sq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                         static_cast<std::uint32_t>(restart)};
        std::mt19937_64 rng(sq);
        std::normal_distribution<double> gauss;
        Eigen::MatrixXcd x(r, n), y(n, r);
        for (int i = 0; i < n; ++i) {
            for (int a = 0; a < r; ++a) {
                const double re = gauss(rng);
                x(a, i) = {re, gauss(rng)};
            }
            x.col(i) *= std::sqrt(sys.alpha[i]) / x.col(i).norm();
            for (int a = 0; a < r; ++a) {
                const double re = gauss(rng);
                y(i, a) = 0.5 * Complex(re, gauss(rng));
            }
        }

        Eigen::VectorXd v = sys.pack(x, y);
        Eigen::VectorXd f = sys.residual(x, y);
        double cost = f.squaredNorm();
        double mu = -1.0;
        for (int it = 0; it < opt.max_iter; ++it) {
            const Eigen::MatrixXd jac = sys.jacobian(x, y);
            const Eigen::MatrixXd a = jac.transpose() * jac;
            const Eigen::VectorXd g = jac.transpose() * f;
            if (mu < 0)
                mu = 1e-3 * std::max(1.0, a.diagonal().maxCoeff());
            bool stepped = false;
            while (mu < 1e14) {
                Eigen::MatrixXd damped = a;
                damped.diagonal().array() += mu;
                const Eigen::VectorXd step = damped.ldlt().solve(-g);
                const Eigen::VectorXd trial = v + step;
                Eigen::MatrixXcd tx, ty;
                sys.unpack(trial, tx, ty);
                const Eigen::VectorXd tf = sys.residual(tx, ty);
                const double tcost = tf.squaredNorm();
                if (tcost < cost) {
                    v = trial;
                    x = std::move(tx);
                    y = std::move(ty);
                    f = tf;
                    cost = tcost;
                    mu = std::max(mu / 3.0, 1e-15);
                    stepped = true;
                    break;
                }
                mu *= 4.0;
            }
            best = std::min(best, std::sqrt(cost));
            if (std::sqrt(cost) < opt.tol) {
                FloatPoint p;
                p.r = r;
                p.n = n;
                p.x = from_eigen(x);
                p.y = from_eigen(y);
                p.alpha = alpha;
                p.marked_points = default_marked_points<Complex>(n);
                return p;
            }
            if (!stepped)
                break;
        }
        best = std::min(best, std::sqrt(cost));
    }
    throw NonConvergence("non-convergence", best);
}

// ============================================================================
// Polygon edges
// ============================================================================

template <class S>
struct PolygonEdges {
    std::vector<Matrix<S>> v;
    real_t<S> closure_norm2{};         ///< |sum_i v_i|^2
    std::vector<real_t<S>> norms2;     ///< |v_i|^2, expected (1 - 1/r) alpha_i^2
};

/// v_i = x_i x_i* - (alpha_i / r) Id for x on the polygon level set
/// (xx* scalar, |x_i|^2 = alpha_i). `tol` applies to the float flavor.
template <class S>
PolygonEdges<S> polygon_edges(const Matrix<S>& x, const LengthVector& alpha, double tol = 1e-9)
{
    using T = scalar_traits<S>;
    using R = real_t<S>;
    const std::size_t r = x.rows(), n = x.cols();
    if (alpha.size() != n)
        throw ValidationError("polygon_edges: alpha must have n entries");
    auto off = [tol](const R& v, double scale) {
        if constexpr (is_exact_v<S>)
            return sgn(v) != 0;
        else
            return std::abs(v) > tol * std::max(1.0, scale);
    };

    for (std::size_t i = 0; i < n; ++i) {
        R len{};
        for (std::size_t a = 0; a < r; ++a)
            len += T::abs2(x(a, i));
        const R alpha_i = real_from_rational<S>(alpha[i]);
        if (off(R(len - alpha_i), as_double(alpha_i)))
            throw ValidationError("not on polygon level set", static_cast<int>(i) + 1);
    }
    const Matrix<S> xx = x * adjoint(x);
    const S mean = S(trace(xx) * T::from_rational(BigRational(1, static_cast<long>(r))));
    const R traceless = frobenius_norm2(Matrix<S>(xx - Matrix<S>::identity(r, mean)));
    if (off(traceless, as_double(frobenius_norm2(xx))))
        throw ValidationError("not on polygon level set");

    PolygonEdges<S> out;
    Matrix<S> total(r, r);
    for (std::size_t i = 0; i < n; ++i) {
        const Matrix<S> xi = x.col(i);
        const S shift = T::from_rational(BigRational(alpha[i] / static_cast<long>(r)));
        Matrix<S> vi = xi * adjoint(xi) - Matrix<S>::identity(r, shift);
        out.norms2.push_back(frobenius_norm2(vi));
        total += vi;
        out.v.push_back(std::move(vi));
    }
    out.closure_norm2 = frobenius_norm2(total);
    return out;
}

// ============================================================================
// Minimal nilpotent orbit
// ============================================================================

inline constexpr double kRankThreshold = 1e-8;

/// Traceless, square-zero and rank <= 1. The float flavor measures each
/// condition relative to |M|.
template <class S>
bool min_orbit_check(const Matrix<S>& m, double tol = kRankThreshold)
{
    if (!m.is_square())
        return false;
    if constexpr (is_exact_v<S>) {
        return trace(m) == S{} && is_zero_matrix(Matrix<S>(m * m)) && exact_rank(m) <= 1;
    } else {
        const double scale = std::sqrt(frobenius_norm2(m));
        if (scale == 0.0)
            return true;
        if (std::abs(trace(m)) > tol * scale)
            return false;
        if (std::sqrt(frobenius_norm2(Matrix<S>(m * m))) > tol * scale * scale)
            return false;
        return numeric_rank(m, tol) <= 1;
    }
}

template <class S>
struct OrbitFactor {
    Matrix<S> x;  ///< r x 1
    Matrix<S> y;  ///< 1 x r
};

/// M = x y with y x = 0, normalized so that y has a 1 in the pivot column.
template <class S>
OrbitFactor<S> min_orbit_factor(const Matrix<S>& m, double tol = kRankThreshold)
{
    using T = scalar_traits<S>;
    if (!m.is_square())
        throw ValidationError("min_orbit_factor: matrix must be square");
    std::size_t pi = 0, pj = 0;
    real_t<S> best{};
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) {
            const real_t<S> mag = T::magnitude(m(i, j));
            // Exact flavor takes the first nonzero entry, float the largest.
            if (is_exact_v<S> ? (best == real_t<S>{} && mag != real_t<S>{}) : mag > best) {
                best = mag;
                pi = i;
                pj = j;
            }
        }
    if (best == real_t<S>{})
        throw ValidationError("zero matrix");
    if (!min_orbit_check(m, tol))
        throw ValidationError("not in minimal orbit");
    OrbitFactor<S> f{m.col(pj), m.row(pi)};
    const S inv = S(S(1) / m(pi, pj));
    f.y = scaled(f.y, inv);
    if constexpr (is_exact_v<S>) {
        if (f.x * f.y != m)
            throw ValidationError("not in minimal orbit");
    }
    return f;
}

}  // namespace hyperpolygon
