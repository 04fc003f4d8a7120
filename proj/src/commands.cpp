#include "hfgap/commands.hpp"

#include "hfgap/errors.hpp"
#include "hfgap/gap.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <ostream>
#include <sstream>

namespace hfgap::cli {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

std::string format_cell(double v)
{
    if (std::isnan(v)) return {};
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

std::vector<double> grid(double lo, double hi, int points, bool log_spacing)
{
    require_domain(points >= 1, "number of grid points must be positive");
    require_domain(lo <= hi, "grid minimum must not exceed maximum");
    std::vector<double> out;
    for (int i = 0; i < points; ++i) {
        const double f = points == 1 ? 0.0 : static_cast<double>(i) / (points - 1);
        out.push_back(log_spacing ? std::exp(std::log(lo) + f * (std::log(hi) - std::log(lo))) : lo + f * (hi - lo));
    }
    if (points > 1) out.back() = hi;
    return out;
}

} // namespace

std::string to_csv(const Table& table)
{
    std::string out;
    for (std::size_t i = 0; i < table.header.size(); ++i) out += (i ? "," : "") + table.header[i];
    out += '\n';
    for (const auto& row : table.rows) {
        for (std::size_t i = 0; i < row.size(); ++i) out += (i ? "," : "") + format_cell(row[i]);
        out += '\n';
    }
    return out;
}

nlohmann::json to_json(const Table& table)
{
    auto rows = nlohmann::json::array();
    for (const auto& row : table.rows) {
        nlohmann::json obj = nlohmann::json::object();
        for (std::size_t i = 0; i < row.size(); ++i) {
            if (std::isnan(row[i]))
                obj[table.header[i]] = nullptr;
            else
                obj[table.header[i]] = row[i];
        }
        rows.push_back(std::move(obj));
    }
    return rows;
}

nlohmann::json fit_to_json(const renorm::LaurentFit& fit)
{
    return {{"c_m2", fit.c_m2},
            {"c_m1", fit.c_m1},
            {"c_0", fit.c_0},
            {"c_1", fit.c_1},
            {"fit_residual", fit.fit_residual},
            {"extrapolated", fit.extrapolated}};
}

Table cmd_solve(double u, double t, const QuadratureConfig& cfg, std::optional<std::uint64_t> oracle_seed)
{
    const gap::GapParams params{u, t};
    params.validate();
    const auto sol = gap::gap_solve(params, cfg);
    const double asym = t * gap::delta_asymptotic(u / t);
    Table table{{"u", "t", "delta", "residual", "delta_asymptotic", "rel_dev", "bound_scale", "evaluations",
                 "bracket_lo", "bracket_hi"},
                {}};
    table.rows.push_back({u, t, sol.delta, sol.residual, asym, std::abs(sol.delta / asym - 1.0),
                          gap::asymptotic_bound_scale(u / t), static_cast<double>(sol.evaluations), sol.bracket.first,
                          sol.bracket.second});
    if (oracle_seed) {
        // rhs(delta/t) should equal t/u at the root
        const auto bz = gap::gap_rhs_pushforward(sol.delta / t, cfg, *oracle_seed);
        table.header.insert(table.header.end(), {"target", "rhs_oracle", "rhs_mc", "rhs_mc_stderr"});
        table.rows[0].insert(table.rows[0].end(), {t / u, bz.value, bz.mc_mean, bz.mc_stderr});
    }
    return table;
}

Table cmd_sweep(double u_min, double u_max, int points, bool log_spacing, const QuadratureConfig& cfg)
{
    require_domain(u_min > 0.0, "coupling must be positive");
    Table table{{"u", "delta_numeric", "delta_asymptotic", "rel_dev", "bound_scale"}, {}};
    for (double u : grid(u_min, u_max, points, log_spacing)) {
        const auto c = gap::compare_asymptotic(u, cfg);
        table.rows.push_back({c.u, c.delta_numeric, c.delta_asymptotic, c.rel_dev, c.bound_scale});
    }
    return table;
}

Table cmd_constants(const QuadratureConfig& cfg)
{
    const auto r = renorm::constants_report(cfg);
    Table table{{"a0_numeric", "a0_exact", "b1", "a1", "sech_integral", "gap_ratio_leading", "gap_ratio_slope"},
                {{r.a0_numeric, r.a0_exact, r.b1, r.a1, r.sech_integral, r.gap_ratio_leading, r.gap_ratio_slope}}};
    for (const auto& [name, value] : r.deviations) {
        table.header.push_back("dev_" + name);
        table.rows[0].push_back(value);
    }
    return table;
}

Table cmd_dos(int points, double eps_min, double eps_max, bool log_spacing, const QuadratureConfig& cfg)
{
    require_domain(eps_min > 0.0, "energy grid must be positive (N0 diverges at 0)");
    Table table{{"epsilon", "n0", "n0_asymptotic", "abs_diff", "scaled_remainder"}, {}};
    for (double e : grid(eps_min, eps_max, points, log_spacing)) {
        const double n0 = dos::dos_value(e, cfg);
        double asym = kNaN, diff = kNaN, scaled = kNaN;
        if (e < 4.0) {
            asym = dos::dos_asymptotic(e);
            diff = std::abs(n0 - asym);
            const double denom = std::pow(e, 4) * std::log(1.0 / e);
            if (denom != 0.0) scaled = diff / denom;
        }
        table.rows.push_back({e, n0, asym, diff, scaled});
    }
    return table;
}

RegularizeOutput cmd_regularize(const std::vector<double>& s_values, const QuadratureConfig& cfg)
{
    for (double s : s_values) require_domain(s > 0.0, "s values must be positive");
    const auto reg = renorm::regularized_limit(s_values, cfg);
    RegularizeOutput out;
    out.table.header = {"s", "j1_numeric", "j1_exact", "j2_closed", "difference"};
    for (const auto& p : reg.pairs) out.table.rows.push_back({p.s, p.j1, dos::dos_moment_exact(p.s), p.j2, p.difference()});
    out.j1 = reg.j1;
    out.difference = reg.difference;
    return out;
}

Table cmd_ratio(const std::vector<double>& u_values, const QuadratureConfig& cfg)
{
    require_domain(!u_values.empty(), "u list must not be empty");
    for (double u : u_values) require_domain(u > 0.0, "coupling must be positive");
    const double a0 = renorm::a0_numeric(cfg);
    const double b1 = renorm::b1_constant(a0);
    const double a1 = renorm::a1_constant(a0, renorm::sech_log2_integral(cfg));
    Table table{{"u", "ratio_two_term", "ratio_from_asymptotics", "leading"}, {}};
    for (double u : u_values) {
        table.rows.push_back({u, renorm::gap_ratio_expansion(u, a1, b1),
                              gap::delta_asymptotic(u, b1) / renorm::neel_asymptotic(u, a1),
                              renorm::gap_ratio_leading()});
    }
    return table;
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err)
{
    CLI::App app{"Hartree-Fock antiferromagnetic gap of the half-filled 2D Hubbard model"};
    app.require_subcommand(1);
    app.fallthrough();

    RunConfig rc;
    std::string format = "csv";
    std::string output;
    app.add_option("--rel-tol", rc.quadrature.rel_tol, "relative quadrature tolerance")->capture_default_str();
    app.add_option("--abs-tol", rc.quadrature.abs_tol, "absolute quadrature tolerance")->capture_default_str();
    app.add_option("--max-depth", rc.quadrature.max_depth, "maximal bisection depth")->capture_default_str();
    app.add_option("--mc-samples", rc.quadrature.mc_samples, "Monte Carlo oracle samples")->capture_default_str();
    app.add_option("--seed", rc.seed, "Monte Carlo seed")->capture_default_str();
    app.add_option("--format", format, "csv or json")->check(CLI::IsMember({"csv", "json"}))->capture_default_str();
    app.add_option("--output", output, "output file (default: stdout)");

    double u = 1.0, t = 1.0;
    auto* solve = app.add_subcommand("solve", "solve the gap equation for one coupling");
    solve->add_option("--u", u, "coupling U / t")->required();
    solve->add_option("--t", t, "hopping t")->capture_default_str();
    bool oracle = false;
    solve->add_flag("--oracle", oracle, "re-evaluate the gap equation on the Brillouin zone (uses --seed)");

    double u_min = 0.3, u_max = 2.0;
    int points = 8;
    bool log_spacing = false;
    auto* sweep = app.add_subcommand("sweep", "compare the numeric gap with 32 exp(-2 pi/sqrt(u))");
    sweep->add_option("--u-min", u_min)->capture_default_str();
    sweep->add_option("--u-max", u_max)->capture_default_str();
    sweep->add_option("--points", points)->capture_default_str();
    sweep->add_flag("--log", log_spacing, "logarithmic spacing");

    double eps_min = 1e-3, eps_max = 4.0;
    int dos_points = 41;
    auto* dos_cmd = app.add_subcommand("dos", "tabulate N0 against its small-energy expansion");
    dos_cmd->add_option("--points", dos_points)->capture_default_str();
    dos_cmd->add_option("--eps-min", eps_min)->capture_default_str();
    dos_cmd->add_option("--eps-max", eps_max)->capture_default_str();
    dos_cmd->add_flag("--log", log_spacing, "logarithmic spacing");

    auto* constants = app.add_subcommand("constants", "a0, b1, a1 and the gap-ratio coefficients");

    std::vector<double> s_values = renorm::kDefaultSGrid;
    auto* regularize = app.add_subcommand("regularize", "Mellin pair J1, J2 and its Laurent fits");
    regularize->add_option("--s", s_values, "decreasing list of s > 0")->delimiter(',');

    std::vector<double> u_values = {0.1, 0.04, 0.01};
    auto* ratio = app.add_subcommand("ratio", "gap ratio Delta/T_N");
    ratio->add_option("--u", u_values, "list of couplings")->delimiter(',');

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        out << app.help();
        return 0;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << '\n';
        return 2;
    }
    rc.output_format = format == "json" ? Format::json : Format::csv;
    if (!output.empty()) rc.output_path = output;

    std::string text;
    try {
        rc.quadrature.validate();
        nlohmann::json doc;
        Table table;
        bool is_json_doc = false;
        if (solve->parsed()) {
            table = cmd_solve(u, t, rc.quadrature, oracle ? std::optional(rc.seed) : std::nullopt);
        } else if (sweep->parsed()) {
            table = cmd_sweep(u_min, u_max, points, log_spacing, rc.quadrature);
        } else if (dos_cmd->parsed()) {
            table = cmd_dos(dos_points, eps_min, eps_max, log_spacing, rc.quadrature);
        } else if (constants->parsed()) {
            table = cmd_constants(rc.quadrature);
            if (rc.output_format == Format::json) {
                doc = to_json(table)[0];
                is_json_doc = true;
            }
        } else if (regularize->parsed()) {
            const auto reg = cmd_regularize(s_values, rc.quadrature);
            table = reg.table;
            doc = {{"rows", to_json(reg.table)}, {"j1_fit", fit_to_json(reg.j1)},
                   {"difference_fit", fit_to_json(reg.difference)}};
            is_json_doc = true;
        } else if (ratio->parsed()) {
            table = cmd_ratio(u_values, rc.quadrature);
        }
        if (rc.output_format == Format::json)
            text = (is_json_doc ? doc : to_json(table)).dump(2) + "\n";
        else
            text = to_csv(table);
    } catch (const DomainError& e) {
        err << "error: " << e.what() << '\n';
        return 2;
    } catch (const ConvergenceError& e) {
        err << "error: " << e.what() << '\n';
        return 3;
    }

    if (rc.output_path) {
        std::ofstream file(*rc.output_path, std::ios::binary);
        if (!file) {
            err << "error: cannot open " << *rc.output_path << '\n';
            return 2;
        }
        file << text;
    } else {
        out << text;
    }
    return 0;
}

} // namespace hfgap::cli
