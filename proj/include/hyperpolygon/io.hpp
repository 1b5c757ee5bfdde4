/**
 * @file io.hpp
 * @brief JSON and CSV forms of the library's data. Exact rationals are
 *        "p/q" strings, complex entries are {"re", "im"} objects, float
 *        entries are plain doubles.
 */
#pragma once

#include "hyperpolygon/betti.hpp"
#include "hyperpolygon/spectral.hpp"

#include <json.hpp>

#include <fstream>
#include <limits>
#include <sstream>
#include <string>
#include <variant>

namespace hyperpolygon::io {

using json = nlohmann::ordered_json;

// ============================================================================
// Scalars
// ============================================================================

inline json to_json(const BigRational& q) { return to_string(q); }

inline json to_json(const GaussianRational& g) { return {{"re", to_string(g.re())}, {"im", to_string(g.im())}}; }

inline json to_json(const Complex& c) { return {{"re", c.real()}, {"im", c.imag()}}; }

inline BigRational rational_from_json(const json& j)
{
    try {
        if (j.is_string())
            return parse_rational(j.get<std::string>());
        if (j.is_number_integer())
            return BigRational(j.get<long>());
    } catch (const std::invalid_argument& e) {
        throw InputError(std::string("bad rational: ") + e.what());
    }
    throw InputError("expected a rational as a \"p/q\" string");
}

inline double double_from_json(const json& j)
{
    if (!j.is_number())
        throw InputError("expected a number");
    return j.get<double>();
}

template <class S>
S scalar_from_json(const json& j);

template <>
inline GaussianRational scalar_from_json<GaussianRational>(const json& j)
{
    if (j.is_object()) {
        if (!j.contains("re") || !j.contains("im"))
            throw InputError("complex entry needs \"re\" and \"im\"");
        return {rational_from_json(j.at("re")), rational_from_json(j.at("im"))};
    }
    return GaussianRational(rational_from_json(j));
}

template <>
inline Complex scalar_from_json<Complex>(const json& j)
{
    if (j.is_object()) {
        if (!j.contains("re") || !j.contains("im"))
            throw InputError("complex entry needs \"re\" and \"im\"");
        return {double_from_json(j.at("re")), double_from_json(j.at("im"))};
    }
    return {double_from_json(j), 0.0};
}

/// Human-readable scalar for CSV cells: "p/q" when real, "re+im*i" otherwise.
inline std::string scalar_string(const BigRational& q) { return to_string(q); }

inline std::string scalar_string(const GaussianRational& g)
{
    if (g.is_real())
        return to_string(g.re());
    return to_string(g.re()) + (sgn(g.im()) < 0 ? "" : "+") + to_string(g.im()) + "*i";
}

inline std::string scalar_string(const Complex& c)
{
    std::ostringstream os;
    os.precision(17);
    os << c.real();
    if (c.imag() != 0.0)
        os << (c.imag() < 0 ? "" : "+") << c.imag() << "*i";
    return os.str();
}

template <class S>
json to_json(const Matrix<S>& m)
{
    json rows = json::array();
    for (std::size_t i = 0; i < m.rows(); ++i) {
        json row = json::array();
        for (std::size_t j = 0; j < m.cols(); ++j)
            row.push_back(to_json(m(i, j)));
        rows.push_back(std::move(row));
    }
    return rows;
}

template <class S>
Matrix<S> matrix_from_json(const json& j, std::size_t rows, std::size_t cols, const char* name)
{
    if (!j.is_array() || j.size() != rows)
        throw InputError(std::string(name) + ": wrong number of rows");
    Matrix<S> m(rows, cols);
    for (std::size_t i = 0; i < rows; ++i) {
        if (!j[i].is_array() || j[i].size() != cols)
            throw InputError(std::string(name) + ": wrong number of columns");
        for (std::size_t k = 0; k < cols; ++k)
            m(i, k) = scalar_from_json<S>(j[i][k]);
    }
    return m;
}

template <class S>
json to_json(const DensePoly<S>& p)
{
    json a = json::array();
    for (const auto& c : p.coeffs())
        a.push_back(to_json(c));
    return a;
}

// ============================================================================
// Betti numbers
// ============================================================================

inline json to_json(const PoincarePoly& p)
{
    json coeffs = json::array();
    for (const auto& c : p.poly.coeffs())
        coeffs.push_back(c.get_num().get_str());
    return {{"r", p.r}, {"n", p.n}, {"coeffs_u", std::move(coeffs)}};
}

/// Rows (t-degree, b_{2k}) for k = 0 .. top.
inline std::string betti_csv(const PoincarePoly& p, int top)
{
    std::ostringstream os;
    os << "t_degree,betti\n";
    for (int k = 0; k <= top; ++k)
        os << 2 * k << ',' << p.coeff(static_cast<std::size_t>(k)).get_num().get_str() << '\n';
    return os.str();
}

/// Rows (r, n, t-degree, coefficient) for a list of Poincare polynomials.
inline std::string betti_table_csv(const std::vector<std::pair<PoincarePoly, int>>& rows)
{
    std::ostringstream os;
    os << "r,n,t_degree,coefficient\n";
    for (const auto& [p, top] : rows)
        for (int k = 0; k <= top; ++k)
            os << p.r << ',' << p.n << ',' << 2 * k << ',' << p.coeff(static_cast<std::size_t>(k)).get_num().get_str()
               << '\n';
    return os.str();
}

inline json to_json(const GenericityReport& g)
{
    json w = nullptr;
    if (g.witness)
        w = {{"rprime", g.witness->r_prime}, {"S", g.witness->subset}};
    return {{"generic", g.generic}, {"witness", std::move(w)}};
}

// ============================================================================
// Quiver points
// ============================================================================

template <class S>
json to_json(const QuiverPoint<S>& p)
{
    json alpha = nullptr;
    if (p.alpha) {
        alpha = json::array();
        for (const auto& a : p.alpha->values())
            alpha.push_back(to_string(a));
    }
    json marked = json::array();
    for (const auto& m : p.marked_points)
        marked.push_back(to_json(m));
    return {{"r", p.r},
            {"n", p.n},
            {"flavor", flavor_name(QuiverPoint<S>::flavor)},
            {"alpha", std::move(alpha)},
            {"marked_points", std::move(marked)},
            {"x", to_json(p.x)},
            {"y", to_json(p.y)}};
}

using AnyPoint = std::variant<ExactPoint, FloatPoint>;

namespace detail {

inline int int_field(const json& j, const char* key)
{
    if (!j.contains(key) || !j.at(key).is_number_integer())
        throw InputError(std::string("point: missing integer field \"") + key + "\"");
    return j.at(key).get<int>();
}

template <class S>
QuiverPoint<S> point_from_json_as(const json& j)
{
    QuiverPoint<S> p;
    p.r = int_field(j, "r");
    p.n = int_field(j, "n");
    if (p.r < 1 || p.n < 1)
        throw InputError("point: r and n must be positive");
    if (!j.contains("x") || !j.contains("y"))
        throw InputError("point: missing x or y");
    p.x = matrix_from_json<S>(j.at("x"), static_cast<std::size_t>(p.r), static_cast<std::size_t>(p.n), "x");
    p.y = matrix_from_json<S>(j.at("y"), static_cast<std::size_t>(p.n), static_cast<std::size_t>(p.r), "y");
    if (j.contains("alpha") && !j.at("alpha").is_null()) {
        std::vector<BigRational> a;
        if (!j.at("alpha").is_array())
            throw InputError("point: alpha must be an array");
        for (const auto& v : j.at("alpha"))
            a.push_back(rational_from_json(v));
        try {
            p.alpha = LengthVector(std::move(a));
        } catch (const ValidationError& e) {
            throw InputError(std::string("point: ") + e.what());
        }
    }
    if (j.contains("marked_points") && !j.at("marked_points").is_null()) {
        if (!j.at("marked_points").is_array())
            throw InputError("point: marked_points must be an array");
        for (const auto& v : j.at("marked_points"))
            p.marked_points.push_back(scalar_from_json<S>(v));
    } else {
        p.marked_points = default_marked_points<S>(p.n);
    }
    try {
        validate_point(p);
    } catch (const ValidationError& e) {
        throw InputError(e.what());
    }
    return p;
}

}  // namespace detail

inline AnyPoint point_from_json(const json& j)
{
    if (!j.is_object())
        throw InputError("point: expected a JSON object");
    const std::string flavor = j.value("flavor", std::string("exact"));
    if (flavor == "exact")
        return detail::point_from_json_as<GaussianRational>(j);
    if (flavor == "float")
        return detail::point_from_json_as<Complex>(j);
    throw InputError("point: flavor must be \"exact\" or \"float\"");
}

inline json parse_json_text(const std::string& text)
{
    try {
        return json::parse(text);
    } catch (const json::exception& e) {
        throw InputError(std::string("malformed JSON: ") + e.what());
    }
}

inline AnyPoint read_point_file(const std::string& path)
{
    std::ifstream in(path);
    if (!in)
        throw InputError("cannot open " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return point_from_json(parse_json_text(ss.str()));
}

// ============================================================================
// Hitchin and spectral data
// ============================================================================

template <class S>
json to_json(const BasePoint<S>& b)
{
    json g = json::object();
    for (const auto& [i, coeffs] : b.g) {
        json a = json::array();
        for (const auto& c : coeffs)
            a.push_back(to_json(c));
        g[std::to_string(i)] = std::move(a);
    }
    return {{"basis", basis_name(b.basis)}, {"g", std::move(g)}};
}

inline json to_json(const JacobianReport& r)
{
    return {{"rank", r.rank},
            {"rows", r.rows},
            {"cols", r.cols},
            {"basis", basis_name(r.basis)},
            {"singular_values", r.singular_values}};
}

template <class S>
json to_json(const CharPoly<S>& cp)
{
    json c = json::object();
    for (int i = 1; i <= cp.r; ++i)
        c[std::to_string(i)] = to_json(cp.coeff(i));
    return {{"n", cp.n}, {"r", cp.r}, {"variable", "z"}, {"fiber_variable", "lambda_fiber"}, {"c", std::move(c)}};
}

template <class S>
json to_json(const BivariatePoly<S>& f)
{
    json terms = json::array();
    for (std::size_t k = 0; k < f.coeffs.size(); ++k)
        if (!f.coeffs[k].is_zero())
            terms.push_back({{"lambda_fiber_power", k}, {"z_coeffs", to_json(f.coeffs[k])}});
    return terms;
}

inline std::string order_string(int order) { return order == kInfiniteOrder ? "inf" : std::to_string(order); }

template <class S>
std::string order_csv(const OrderReport<S>& rep)
{
    std::ostringstream os;
    os << "i,p_j,order,bound,pass\n";
    for (const auto& e : rep.entries)
        os << e.i << ',' << scalar_string(e.point) << ',' << order_string(e.order) << ',' << e.bound << ','
           << (e.pass ? "true" : "false") << '\n';
    return os.str();
}

template <class S>
json to_json(const OrderReport<S>& rep)
{
    json entries = json::array();
    for (const auto& e : rep.entries)
        entries.push_back({{"i", e.i},
                           {"p", to_json(e.point)},
                           {"order", e.order == kInfiniteOrder ? json("inf") : json(e.order)},
                           {"bound", e.bound},
                           {"pass", e.pass}});
    return {{"passed", rep.passed}, {"entries", std::move(entries)}};
}

template <class S>
json to_json(const SmoothnessReport<S>& rep)
{
    json pts = json::array();
    for (const auto& p : rep.points) {
        json pt = {{"z", to_json(p.z)}, {"class", probe_class_name(p.cls)}};
        if (p.lambda_fiber) {
            pt["lambda_fiber"] = to_json(*p.lambda_fiber);
            pt["abs_f"] = p.abs_f;
            pt["abs_fz"] = p.abs_fz;
        }
        pts.push_back(std::move(pt));
    }
    return {{"resultant", to_json(rep.resultant)},
            {"points", std::move(pts)},
            {"smooth_away_from_divisor", rep.smooth_away_from_divisor},
            {"verdict", rep.verdict}};
}

}  // namespace hyperpolygon::io
