#include "hfgap/commands.hpp"
#include "hfgap/gap.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

namespace cli = hfgap::cli;

namespace {

struct Outcome {
    int code;
    std::string out;
    std::string err;
};

Outcome run(std::vector<std::string> args)
{
    args.insert(args.begin(), "hfgap");
    std::vector<const char*> argv;
    for (const auto& a : args) argv.push_back(a.c_str());
    std::ostringstream out, err;
    const int code = cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
    return {code, out.str(), err.str()};
}

std::string slurp(const std::filesystem::path& p)
{
    std::ifstream in(p, std::ios::binary);
    return {std::istreambuf_iterator<char>(in), {}};
}

std::vector<std::string> lines(const std::string& text)
{
    std::vector<std::string> out;
    std::istringstream in(text);
    for (std::string line; std::getline(in, line);) out.push_back(line);
    return out;
}

} // namespace

TEST(Csv, Formatting)
{
    const cli::Table t{{"a", "b", "c"}, {{1.0, 0.1, NAN}, {1e-20, 123456789012345.0, -2.5}}};
    EXPECT_EQ(cli::to_csv(t), "a,b,c\n1,0.1,\n1e-20,1.23456789012e+14,-2.5\n");
}

TEST(Json, NanBecomesNull)
{
    const cli::Table t{{"x", "y"}, {{2.0, NAN}}};
    const auto j = cli::to_json(t);
    ASSERT_EQ(j.size(), 1u);
    EXPECT_DOUBLE_EQ(j[0]["x"].get<double>(), 2.0);
    EXPECT_TRUE(j[0]["y"].is_null());
}

TEST(Run, SolveCsv)
{
    const auto r = run({"solve", "--u", "1"});
    ASSERT_EQ(r.code, 0) << r.err;
    const auto l = lines(r.out);
    ASSERT_EQ(l.size(), 2u);
    EXPECT_EQ(l[0], "u,t,delta,residual,delta_asymptotic,rel_dev,bound_scale,evaluations,bracket_lo,bracket_hi");
    EXPECT_EQ(l[1].rfind("1,1,0.0597554310", 0), 0u) << l[1];
}

TEST(Run, SolveJson)
{
    const auto r = run({"--format", "json", "solve", "--u", "2", "--t", "2"});
    ASSERT_EQ(r.code, 0) << r.err;
    const auto j = nlohmann::json::parse(r.out);
    ASSERT_TRUE(j.is_array());
    EXPECT_NEAR(j[0]["delta"].get<double>(), 2 * 0.059755431080165812572, 1e-12);
    for (const char* key : {"u", "t", "delta", "residual", "delta_asymptotic", "rel_dev", "bound_scale"})
        EXPECT_TRUE(j[0].contains(key)) << key;
}

TEST(Run, SolveWithOracle)
{
    const auto a = run({"--format", "json", "--seed", "11", "solve", "--u", "1", "--oracle"});
    ASSERT_EQ(a.code, 0) << a.err;
    const auto j = nlohmann::json::parse(a.out)[0];
    EXPECT_NEAR(j["rhs_oracle"].get<double>(), j["target"].get<double>(), 1e-9);
    EXPECT_LT(std::abs(j["rhs_mc"].get<double>() - 1.0), 5 * j["rhs_mc_stderr"].get<double>());
    EXPECT_EQ(a.out, run({"--format", "json", "--seed", "11", "solve", "--u", "1", "--oracle"}).out);
    EXPECT_NE(a.out, run({"--format", "json", "--seed", "12", "solve", "--u", "1", "--oracle"}).out);
}

TEST(Run, InvalidInputExitsWithTwo)
{
    const auto neg = run({"solve", "--u", "-1"});
    EXPECT_EQ(neg.code, 2);
    EXPECT_NE(neg.err.find("coupling must be positive"), std::string::npos) << neg.err;
    EXPECT_EQ(run({"solve"}).code, 2);
    EXPECT_EQ(run({}).code, 2);
    EXPECT_EQ(run({"sweep", "--points", "0"}).code, 2);
    EXPECT_EQ(run({"dos", "--eps-min", "0"}).code, 2);
    EXPECT_EQ(run({"regularize", "--s", "0.2,0.1,-0.05,0.025"}).code, 2);
    EXPECT_EQ(run({"regularize", "--s", "0.2,0.1,0.05"}).code, 2);
    EXPECT_EQ(run({"--format", "xml", "constants"}).code, 2);
    EXPECT_EQ(run({"--mc-samples", "10", "constants"}).code, 2);
    EXPECT_EQ(run({"ratio", "--u", "0.1,0"}).code, 2);
}

TEST(Run, NonConvergenceExitsWithThree)
{
    const auto r = run({"--max-depth", "1", "--rel-tol", "1e-15", "--abs-tol", "1e-300", "solve", "--u", "1"});
    EXPECT_EQ(r.code, 3);
    EXPECT_NE(r.err.find("did not converge"), std::string::npos) << r.err;
}

TEST(Run, OutputFileIsDeterministic)
{
    const auto dir = std::filesystem::temp_directory_path();
    const auto a = dir / "hfgap_cli_test_a.csv";
    const auto b = dir / "hfgap_cli_test_b.csv";
    ASSERT_EQ(run({"--output", a.string(), "sweep", "--points", "4", "--log"}).code, 0);
    ASSERT_EQ(run({"--output", b.string(), "sweep", "--points", "4", "--log"}).code, 0);
    const auto text = slurp(a);
    EXPECT_FALSE(text.empty());
    EXPECT_EQ(text, slurp(b));
    EXPECT_EQ(text, run({"sweep", "--points", "4", "--log"}).out);
    std::filesystem::remove(a);
    std::filesystem::remove(b);
}

TEST(Run, UnwritableOutput)
{
    EXPECT_EQ(run({"--output", "/nonexistent-dir/x.csv", "constants"}).code, 2);
}

TEST(Commands, SinglePointSweepEqualsSolve)
{
    const auto sweep = cli::cmd_sweep(0.7, 0.7, 1, false, {});
    const auto solve = cli::cmd_solve(0.7, 1.0, {});
    ASSERT_EQ(sweep.rows.size(), 1u);
    EXPECT_DOUBLE_EQ(sweep.rows[0][1], solve.rows[0][2]);
    EXPECT_DOUBLE_EQ(sweep.rows[0][2], solve.rows[0][4]);
}

TEST(Commands, DosTable)
{
    const auto t = cli::cmd_dos(401, 1e-3, 4.0, false, {});
    ASSERT_EQ(t.rows.size(), 401u);
    EXPECT_DOUBLE_EQ(t.rows.back()[0], 4.0);
    EXPECT_EQ(t.rows.back()[1], 0.0);
    EXPECT_TRUE(std::isnan(t.rows.back()[2]));
    EXPECT_GT(cli::cmd_dos(1, 3.9, 3.9, false, {}).rows[0][1], 0.0);
    // trapezoid on the tabulated values; the log singularity at 0 contributes ~1e-3 ln(1e-3)
    double area = 0.0;
    for (std::size_t i = 1; i < t.rows.size(); ++i)
        area += 0.5 * (t.rows[i][1] + t.rows[i - 1][1]) * (t.rows[i][0] - t.rows[i - 1][0]);
    EXPECT_NEAR(area, 0.5, 5e-3);
}

TEST(Commands, DosLogGridScaledRemainderBounded)
{
    const auto t = cli::cmd_dos(9, 1e-3, 0.1, true, {});
    double lo = INFINITY, hi = 0.0;
    for (const auto& row : t.rows) {
        lo = std::min(lo, row[4]);
        hi = std::max(hi, row[4]);
    }
    EXPECT_LT(hi, 1e-2);
    EXPECT_GT(lo, 0.0);
}

TEST(Run, ConstantsJson)
{
    const auto r = run({"--format", "json", "constants"});
    ASSERT_EQ(r.code, 0) << r.err;
    const auto j = nlohmann::json::parse(r.out);
    ASSERT_TRUE(j.is_object());
    for (const char* key : {"a0_numeric", "a0_exact", "b1", "a1", "sech_integral", "gap_ratio_leading",
                            "gap_ratio_slope", "dev_a0_numeric_vs_exact"})
        EXPECT_TRUE(j.contains(key)) << key;
    EXPECT_NEAR(j["a1"].get<double>(), 0.3260, 5e-4);
}

TEST(Run, RegularizeJson)
{
    const auto r = run({"--format", "json", "regularize"});
    ASSERT_EQ(r.code, 0) << r.err;
    const auto j = nlohmann::json::parse(r.out);
    ASSERT_EQ(j["rows"].size(), hfgap::renorm::kDefaultSGrid.size());
    EXPECT_NEAR(j["difference_fit"]["extrapolated"].get<double>(), hfgap::renorm::a0_exact(), 1e-5);
    EXPECT_TRUE(j["j1_fit"].contains("c_m2"));
}

TEST(Run, RatioDefaults)
{
    const auto r = run({"ratio"});
    ASSERT_EQ(r.code, 0) << r.err;
    EXPECT_EQ(lines(r.out).size(), 4u);
    EXPECT_EQ(lines(r.out)[0], "u,ratio_two_term,ratio_from_asymptotics,leading");
}

TEST(Binary, HelpAndExitCode)
{
    const std::string cmd = std::string(HFGAP_CLI_PATH) + " solve --u -1 >/dev/null 2>&1";
    const int status = std::system(cmd.c_str());
    ASSERT_NE(status, -1);
    EXPECT_EQ(WEXITSTATUS(status), 2);
    EXPECT_EQ(std::system((std::string(HFGAP_CLI_PATH) + " --help >/dev/null").c_str()), 0);
}
