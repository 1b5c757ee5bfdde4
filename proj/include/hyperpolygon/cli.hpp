/**
 * @file cli.hpp
 * @brief The hyperpolygon command-line front end. run() returns the process
 *        exit code: 0 success, 1 failed mathematical validation, 2 numerical
 *        non-convergence, 3 malformed input.
 */
#pragma once

#include "hyperpolygon/io.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <functional>
#include <ostream>
#include <string>
#include <vector>

namespace hyperpolygon::cli {

enum ExitCode : int { kOk = 0, kValidationFailed = 1, kNonConvergence = 2, kBadInput = 3 };

namespace detail {

using io::json;

inline void write_output(const std::string& path, const std::string& text, std::ostream& out)
{
    if (path.empty() || path == "-") {
        out << text;
        return;
    }
    std::ofstream f(path, std::ios::binary);
    if (!f)
        throw InputError("cannot write " + path);
    f << text;
}

inline std::string dump(const json& j) { return j.dump(2) + "\n"; }

inline LengthVector parse_alpha(const std::vector<std::string>& items)
{
    std::vector<BigRational> a;
    for (const auto& s : items) {
        try {
            a.push_back(parse_rational(s));
        } catch (const std::invalid_argument& e) {
            throw InputError("--alpha: " + std::string(e.what()));
        }
    }
    try {
        return LengthVector(std::move(a));
    } catch (const ValidationError& e) {
        throw InputError(std::string("--alpha: ") + e.what());
    }
}

inline HitchinBasis parse_basis(const std::string& name, int r)
{
    if (name.empty())
        return default_basis(r);
    if (name == "trace")
        return HitchinBasis::trace_powers;
    if (name == "char")
        return HitchinBasis::char_coefficients;
    throw InputError("--basis must be trace or char");
}

inline void require_rank_and_twist(int r, int n)
{
    if (r < 1)
        throw InputError("rank must be >= 1");
    if (n < r + 1)
        throw InputError("need n >= r + 1");
}

inline int top_degree(int r, int n) { return (r - 1) * (n - r - 1); }

template <class S>
std::vector<BracketObservable<S>> commute_observables(int r, const std::vector<S>& zs)
{
    std::vector<BracketObservable<S>> obs;
    for (int m = 2; m <= r; ++m)
        for (const auto& z : zs)
            obs.push_back({m, z});
    return obs;
}

/// All pairs of Hamiltonians Tr phi(z)^m at the given evaluation points.
template <class S>
json commute_report(const QuiverPoint<S>& p, const std::vector<S>& zs, double tol, bool& ok)
{
    const auto obs = commute_observables(p.r, zs);
    std::vector<Gradient<S>> grads;
    for (const auto& o : obs)
        grads.push_back(observable_grad(p, o));
    json pairs = json::array();
    double worst = 0.0;
    ok = true;
    for (std::size_t a = 0; a < obs.size(); ++a)
        for (std::size_t b = a + 1; b < obs.size(); ++b) {
            const S v = bracket(grads[a], grads[b]);
            double dev = 0.0;
            bool pass = true;
            if constexpr (is_exact_v<S>) {
                pass = scalar_traits<S>::is_zero(v);
                dev = as_double(scalar_traits<S>::magnitude(v));
            } else {
                dev = std::abs(v) / std::max(bracket_scale(grads[a], grads[b]), 1e-300);
                pass = dev <= tol;
            }
            worst = std::max(worst, dev);
            ok = ok && pass;
            pairs.push_back({{"f", {{"m", obs[a].m}, {"z", io::to_json(obs[a].z0)}}},
                             {"g", {{"m", obs[b].m}, {"z", io::to_json(obs[b].z0)}}},
                             {"bracket", io::to_json(v)},
                             {"pass", pass}});
        }
    return {{"flavor", flavor_name(QuiverPoint<S>::flavor)},
            {"tol", tol},
            {"max_deviation", worst},
            {"commute", ok},
            {"pairs", std::move(pairs)}};
}

inline json fixtures_report(std::ostream& err, bool& ok)
{
    using G = GaussianRational;
    json checks = json::object();
    ok = true;
    auto record = [&](const std::string& name, bool pass) {
        checks[name] = pass;
        if (!pass)
            err << "fixture check failed: " << name << "\n";
        ok = ok && pass;
    };

    const auto h = residues(fixture_point());
    const auto base = hitchin_map(h);
    record("hitchin_g2", base.g.at(2) == std::vector<G>{G(20)});
    const auto cp = spectral_charpoly(twist(h));
    record("charpoly_c2", cp.coeff(2) == from_roots(h.marked_points, Var::z) * G(-10));
    record("trace_consistency", trace_consistency(h).ok);
    record("order_bounds", order_check(cp, h.marked_points).passed);

    json models = json::array();
    for (const auto& m : local_models()) {
        const auto m0 = evaluate(m.M, BigRational(0));
        const bool square_zero = is_zero_matrix(Matrix<BigRational>(m0 * m0));
        const auto rank = exact_rank(m0);
        const bool in_min_orbit = min_orbit_check(m0);
        record(m.name + "_charpoly", spectral_polynomial(charpoly_of(m.M)) == m.f);
        record(m.name + "_square_zero", square_zero);
        record(m.name + "_residue_rank", rank == m.residue_rank);
        record(m.name + "_min_orbit", in_min_orbit == (m.name == "rank3"));
        models.push_back({{"name", m.name},
                          {"f", io::to_json(m.f)},
                          {"residue_rank", rank},
                          {"min_orbit", in_min_orbit}});
    }
    return {{"checks", std::move(checks)}, {"local_models", std::move(models)}, {"all_passed", ok}};
}

}  // namespace detail

/// Parses argv and runs one subcommand, writing results to out and
/// diagnostics to err.
inline int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err)
{
    using detail::json;
    CLI::App app{"Hyperpolygon spaces: Betti numbers, quiver points, Hitchin map, spectral curves"};
    app.require_subcommand(1);
    app.set_help_all_flag("--help-all");

    std::string format = "json";
    auto add_format = [&](CLI::App* sub) {
        sub->add_option("--format", format, "Output format")->check(CLI::IsMember({"json", "csv"}));
    };

    int r = 0, n = 0, n_max = 0;
    std::uint64_t seed = 0;
    std::vector<std::string> alpha_items;
    std::string point_path, output_path, basis_name_opt;
    double tol = 1e-8;
    double threshold = kRankThreshold;
    bool exact_flag = false, solve_flag = false, check_orders = false, probe = false, check = false;
    int max_iter = SolveOptions{}.max_iter;

    auto* betti_cmd = app.add_subcommand("betti", "Poincare polynomial of X(r, n) in u = t^2");
    betti_cmd->add_option("-r", r, "Rank")->required();
    betti_cmd->add_option("-n", n, "Number of marked points")->required();
    add_format(betti_cmd);

    auto* table_cmd = app.add_subcommand("betti-table", "Poincare polynomials for n = r + 1 .. n-max");
    table_cmd->add_option("-r", r, "Rank")->required();
    table_cmd->add_option("--n-max", n_max, "Largest n")->required();
    add_format(table_cmd);

    auto* gen_cmd = app.add_subcommand("genericity", "Genericity of a length vector");
    gen_cmd->add_option("-r", r, "Rank")->required();
    gen_cmd->add_option("--alpha", alpha_items, "Edge lengths a1,...,an (p/q allowed)")->required()->delimiter(',');

    auto* sample_cmd = app.add_subcommand("sample", "Sample a point on the complex level set");
    sample_cmd->add_option("-r", r, "Rank")->required();
    sample_cmd->add_option("-n", n, "Number of marked points")->required();
    sample_cmd->add_option("--seed", seed, "Random seed");
    auto* exact_opt = sample_cmd->add_flag("--exact", exact_flag, "Exact sample of the complex equations (default)");
    auto* solve_opt = sample_cmd->add_flag("--solve", solve_flag, "Float solve of the full hyperkaehler equations");
    exact_opt->excludes(solve_opt);
    sample_cmd->add_option("--alpha", alpha_items, "Edge lengths for --solve (default 1,...,1,2)")->delimiter(',');
    sample_cmd->add_option("--max-iter", max_iter, "Solver iterations per restart");
    sample_cmd->add_option("-o,--output", output_path, "Output file (default stdout)");

    auto* hitchin_cmd = app.add_subcommand("hitchin", "Hitchin map of a point");
    hitchin_cmd->add_option("--point", point_path, "Point JSON file")->required();
    hitchin_cmd->add_option("--basis", basis_name_opt, "trace or char (default by rank)");

    auto* commute_cmd = app.add_subcommand("commute", "Pairwise Poisson brackets of the Hamiltonians");
    commute_cmd->add_option("--point", point_path, "Point JSON file")->required();
    commute_cmd->add_option("--tol", tol, "Relative tolerance for float points");

    auto* jac_cmd = app.add_subcommand("jacobian", "Rank of the derivative of the Hitchin map");
    jac_cmd->add_option("--point", point_path, "Point JSON file")->required();
    jac_cmd->add_option("--threshold", threshold, "Relative singular-value threshold");
    jac_cmd->add_option("--basis", basis_name_opt, "trace or char (default by rank)");

    auto* spec_cmd = app.add_subcommand("spectral", "Spectral curve of an exact point");
    spec_cmd->add_option("--point", point_path, "Point JSON file")->required();
    spec_cmd->add_flag("--check-orders", check_orders, "Check vanishing orders at the marked points");
    spec_cmd->add_flag("--probe", probe, "Run the smoothness probe away from the marked points");
    add_format(spec_cmd);

    auto* fix_cmd = app.add_subcommand("fixtures", "Worked examples and local models");
    fix_cmd->add_flag("--check", check, "Exit 1 unless every fixture validates");

    auto* plot_cmd = app.add_subcommand("plot-data", "Betti numbers as CSV for plotting");
    plot_cmd->add_option("-r", r, "Rank")->required();
    plot_cmd->add_option("-n", n, "Number of marked points")->required();
    plot_cmd->add_option("-o,--output", output_path, "Output file (default stdout)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kOk;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return kOk;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n";
        return kBadInput;
    }

    try {
        if (betti_cmd->parsed()) {
            detail::require_rank_and_twist(r, n);
            const auto p = poincare(r, n);
            if (format == "csv")
                out << io::betti_csv(p, detail::top_degree(r, n));
            else
                out << detail::dump(io::to_json(p));
        } else if (table_cmd->parsed()) {
            detail::require_rank_and_twist(r, n_max);
            std::vector<std::pair<PoincarePoly, int>> rows;
            for (int k = r + 1; k <= n_max; ++k)
                rows.emplace_back(poincare(r, k), detail::top_degree(r, k));
            if (format == "csv") {
                out << io::betti_table_csv(rows);
            } else {
                json a = json::array();
                for (const auto& [p, top] : rows)
                    a.push_back(io::to_json(p));
                out << detail::dump(a);
            }
        } else if (gen_cmd->parsed()) {
            if (r < 1)
                throw InputError("rank must be >= 1");
            const auto alpha = detail::parse_alpha(alpha_items);
            if (alpha.size() > static_cast<std::size_t>(kMaxGenericityPoints))
                throw InputError("genericity: at most " + std::to_string(kMaxGenericityPoints) + " entries");
            out << detail::dump(io::to_json(genericity_check(r, alpha)));
        } else if (sample_cmd->parsed()) {
            detail::require_rank_and_twist(r, n);
            std::string text;
            if (solve_flag) {
                const auto alpha = alpha_items.empty() ? LengthVector::standard(n) : detail::parse_alpha(alpha_items);
                if (alpha.size() != static_cast<std::size_t>(n))
                    throw InputError("--alpha must have n entries");
                if (max_iter < 0)
                    throw InputError("--max-iter must be >= 0");
                SolveOptions opt;
                opt.max_iter = max_iter;
                text = detail::dump(io::to_json(solve_real(r, n, alpha, seed, opt)));
            } else {
                if (!alpha_items.empty())
                    throw InputError("--alpha needs --solve");
                text = detail::dump(io::to_json(sample_exact(r, n, seed)));
            }
            detail::write_output(output_path, text, out);
        } else if (hitchin_cmd->parsed()) {
            const auto any = io::read_point_file(point_path);
            std::visit(
                [&](const auto& p) {
                    const auto basis = detail::parse_basis(basis_name_opt, p.r);
                    out << detail::dump(io::to_json(hitchin_map(residues(p), basis)));
                },
                any);
        } else if (commute_cmd->parsed()) {
            if (!(tol > 0))
                throw InputError("--tol must be positive");
            const auto any = io::read_point_file(point_path);
            bool ok = true;
            std::visit(
                [&](const auto& p) {
                    using S = std::decay_t<decltype(p.marked_points[0])>;
                    residues(p);
                    std::vector<S> zs;
                    for (int k = 1; k <= 3; ++k)
                        zs.push_back(S(static_cast<long>(p.n + k)));
                    out << detail::dump(detail::commute_report(p, zs, tol, ok));
                },
                any);
            if (!ok) {
                err << "brackets do not vanish\n";
                return kValidationFailed;
            }
        } else if (jac_cmd->parsed()) {
            if (!(threshold > 0))
                throw InputError("--threshold must be positive");
            const auto any = io::read_point_file(point_path);
            const FloatPoint p = std::holds_alternative<ExactPoint>(any) ? to_float(std::get<ExactPoint>(any))
                                                                         : std::get<FloatPoint>(any);
            residues(p);
            const auto basis = detail::parse_basis(basis_name_opt, p.r);
            out << detail::dump(io::to_json(jacobian_rank(p, threshold, basis)));
        } else if (spec_cmd->parsed()) {
            const auto any = io::read_point_file(point_path);
            if (!std::holds_alternative<ExactPoint>(any))
                throw InputError("spectral needs an exact point");
            const auto h = residues(std::get<ExactPoint>(any));
            const auto cp = spectral_charpoly(twist(h));
            std::optional<OrderReport<GaussianRational>> orders;
            if (check_orders)
                orders = order_check(cp, h.marked_points);
            if (format == "csv") {
                if (!orders)
                    throw InputError("--format csv needs --check-orders");
                out << io::order_csv(*orders);
            } else {
                json j = {{"charpoly", io::to_json(cp)}};
                const auto tc = trace_consistency(h);
                j["trace_consistency"] = {{"ok", tc.ok}, {"failed_k", tc.failed_k}};
                if (orders)
                    j["orders"] = io::to_json(*orders);
                if (probe) {
                    try {
                        j["smoothness"] = io::to_json(smoothness_probe(spectral_polynomial(cp), h.marked_points));
                    } catch (const ValidationError& e) {
                        // A non-reduced spectral curve is a finding about the point.
                        j["smoothness"] = {{"error", e.what()}};
                    }
                }
                out << detail::dump(j);
                if (!tc.ok) {
                    err << "trace consistency failed at k = " << tc.failed_k << "\n";
                    return kValidationFailed;
                }
            }
            if (orders && !orders->passed) {
                err << "vanishing-order bound violated\n";
                return kValidationFailed;
            }
        } else if (fix_cmd->parsed()) {
            bool ok = true;
            out << detail::dump(detail::fixtures_report(err, ok));
            if (check && !ok)
                return kValidationFailed;
        } else if (plot_cmd->parsed()) {
            detail::require_rank_and_twist(r, n);
            detail::write_output(output_path, io::betti_csv(poincare(r, n), detail::top_degree(r, n)), out);
        }
    } catch (const InputError& e) {
        err << "error: " << e.what() << "\n";
        return kBadInput;
    } catch (const NonConvergence& e) {
        err << "error: " << e.what() << " (best residual " << e.best_residual() << ")\n";
        return kNonConvergence;
    } catch (const ValidationError& e) {
        err << "validation failed: " << e.what();
        if (e.index() >= 0)
            err << " (index " << e.index() << ")";
        err << "\n";
        return kValidationFailed;
    }
    return kOk;
}

}  // namespace hyperpolygon::cli
