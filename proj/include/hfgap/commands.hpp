#pragma once

#include "hfgap/dos.hpp"
#include "hfgap/quadrature.hpp"
#include "hfgap/renorm.hpp"

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

namespace hfgap::cli {

enum class Command { solve, sweep, dos, constants, regularize, ratio };
enum class Format { csv, json };

struct RunConfig {
    Command command = Command::solve;
    QuadratureConfig quadrature;
    Format output_format = Format::csv;
    std::optional<std::string> output_path;
    std::uint64_t seed = dos::kDefaultSeed;
};

/// Rectangular numeric table. NaN cells are written as empty CSV fields / JSON null.
struct Table {
    std::vector<std::string> header;
    std::vector<std::vector<double>> rows;
};

/// RFC-4180 style: header row, LF endings, 12 significant digits.
std::string to_csv(const Table& table);

/// Array of flat objects keyed by the header.
nlohmann::json to_json(const Table& table);

/// With `oracle_seed` set, appends the Brillouin-zone evaluation of the gap
/// equation right-hand side at the solution (quadrature and Monte Carlo).
Table cmd_solve(double u, double t, const QuadratureConfig& cfg, std::optional<std::uint64_t> oracle_seed = {});
Table cmd_sweep(double u_min, double u_max, int points, bool log_spacing, const QuadratureConfig& cfg);
Table cmd_constants(const QuadratureConfig& cfg);
Table cmd_dos(int points, double eps_min, double eps_max, bool log_spacing, const QuadratureConfig& cfg);

struct RegularizeOutput {
    Table table;
    renorm::LaurentFit j1;
    renorm::LaurentFit difference;
};
RegularizeOutput cmd_regularize(const std::vector<double>& s_values, const QuadratureConfig& cfg);

Table cmd_ratio(const std::vector<double>& u_values, const QuadratureConfig& cfg);

nlohmann::json fit_to_json(const renorm::LaurentFit& fit);

/// Parses argv, runs one subcommand and writes its output. Returns the exit
/// code: 0 success, 2 invalid input, 3 numerical non-convergence.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

} // namespace hfgap::cli
