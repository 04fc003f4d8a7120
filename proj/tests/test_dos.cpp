#include "hfgap/dos.hpp"

#include "oracles.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

namespace dos = hfgap::dos;
using hfgap::QuadratureConfig;
constexpr double kPi = std::numbers::pi;

namespace {

// mpmath: pi / (2 agm(1, e/4)) / (2 pi^2), 30 digits
const std::pair<double, double> kReference[] = {
    {0.001, 0.49041196300551970286}, {0.01, 0.37376213745182954721}, {0.1, 0.25714357788112379312},
    {0.5, 0.17606822504016557314},   {1.0, 0.14191075806219855335},  {2.0, 0.1092503589739431499},
    {3.0, 0.09141509366651010764},   {3.9, 0.080588009642956531738}, {3.999, 0.079587420284410446002}};

} // namespace

TEST(DosValue, LevelSetMatchesReference)
{
    for (const auto& [e, want] : kReference) {
        EXPECT_NEAR(dos::dos_value(e), want, 1e-10 * want) << "e = " << e;
        EXPECT_NEAR(dos::dos_elliptic(e), want, 1e-14 * want) << "e = " << e;
    }
}

TEST(DosValue, ExpansionOracleAtPointOne)
{
    // two-term expansion; remainder O(e^4 ln(1/e)) ~ 1e-8 at e = 0.1
    EXPECT_NEAR(dos::dos_value(0.1), dos::dos_asymptotic(0.1), 1e-7);
    EXPECT_NEAR(dos::dos_value(0.1), 0.257143577881123796, 1e-15);
}

TEST(DosValue, EvenAndSupported)
{
    for (double e : {0.5, 1.0, 2.0, 3.5}) EXPECT_EQ(dos::dos_value(-e), dos::dos_value(e));
    EXPECT_EQ(dos::dos_value(5.0), 0.0);
    EXPECT_EQ(dos::dos_value(4.0), 0.0);
    EXPECT_EQ(dos::dos_value(-4.0), 0.0);
    EXPECT_EQ(dos::dos_elliptic(4.5), 0.0);
    EXPECT_GT(dos::dos_value(3.9999), 0.0);
    for (int i = 1; i < 40; ++i) EXPECT_GT(dos::dos_value(0.1 * i), 0.0);
    EXPECT_THROW(dos::dos_value(0.0), hfgap::DomainError);
    EXPECT_THROW(dos::dos_elliptic(0.0), hfgap::DomainError);
}

TEST(DosValue, BandEdgeValue)
{
    // K(0) = pi/2, so N0(4-) = 1/(4 pi)
    EXPECT_NEAR(dos::dos_value(4.0 - 1e-12), 1.0 / (4.0 * kPi), 1e-9);
}

TEST(DosValue, NormalizedToOneHalf)
{
    const auto r = dos::integrate_against_dos([](double) { return 0.5; }, QuadratureConfig{});
    EXPECT_NEAR(r, 0.5, 1e-10);
}

TEST(DosValue, DivergesMonotonically)
{
    EXPECT_LT(dos::dos_value(1.0), dos::dos_value(0.1));
    EXPECT_LT(dos::dos_value(0.1), dos::dos_value(0.01));
}

TEST(DosAsymptotic, Values)
{
    const double l = std::log(160.0);
    EXPECT_NEAR(dos::dos_asymptotic(0.1), l / (2 * kPi * kPi) + 0.01 * (l - 1.0) / (128 * kPi * kPi), 1e-15);
    EXPECT_NEAR(dos::dos_asymptotic(0.1), 0.257143567, 1e-9);
    EXPECT_THROW(dos::dos_asymptotic(16.0), hfgap::DomainError);
    EXPECT_THROW(dos::dos_asymptotic(0.0), hfgap::DomainError);
    EXPECT_THROW(dos::dos_asymptotic(4.0), hfgap::DomainError);
}

TEST(DosAsymptotic, RemainderIsFourthOrder)
{
    QuadratureConfig tight;
    tight.rel_tol = 1e-13;
    double c_max = 0.0;
    std::vector<double> eps, rem;
    for (int i = 0; i <= 20; ++i) {
        const double e = std::pow(10.0, -3.0 + 0.1 * i);
        const double r = std::abs(dos::dos_value(e, tight) - dos::dos_asymptotic(e));
        c_max = std::max(c_max, r / (std::pow(e, 4) * std::log(1.0 / e)));
        if (e >= 0.02) {
            eps.push_back(e);
            rem.push_back(r);
        }
    }
    EXPECT_LT(c_max, 1e-3);
    // above roundoff the remainder follows e^4 (times a log)
    EXPECT_NEAR(oracle::loglog_slope(eps, rem), 4.0, 0.3);
}

TEST(DosValue, LevelSetUsesTolerance)
{
    QuadratureConfig loose;
    loose.rel_tol = 1e-4;
    EXPECT_NEAR(dos::dos_value(0.3, loose), dos::dos_elliptic(0.3), 1e-4 * dos::dos_elliptic(0.3));
}

TEST(Pushforward, ElementaryTestFunctions)
{
    const QuadratureConfig cfg;
    const auto one = dos::dos_pushforward_oracle([](double) { return 1.0; }, cfg);
    EXPECT_NEAR(one.value, 1.0, 1e-12);
    EXPECT_NEAR(one.mc_mean, 1.0, 1e-12);

    QuadratureConfig zero_mean = cfg;
    zero_mean.abs_tol = 1e-10;
    const auto odd = dos::dos_pushforward_oracle([](double e) { return e; }, zero_mean);
    EXPECT_NEAR(odd.value, 0.0, 1e-12);

    const auto ramp = dos::dos_pushforward_oracle([](double e) { return e > 0 ? e : 0.0; }, cfg);
    EXPECT_NEAR(ramp.value, 8.0 / (kPi * kPi), 1e-10);
    EXPECT_LT(std::abs(ramp.mc_mean - ramp.value), 5.0 * ramp.mc_stderr);
    EXPECT_EQ(ramp.seed, dos::kDefaultSeed);
    EXPECT_EQ(ramp.mc_samples, cfg.mc_samples);
}

TEST(Pushforward, SecondMomentOfBand)
{
    // <(2cos k1 + 2cos k2)^2> = 4 (1/2 + 1/2) = 4
    const auto r = dos::dos_pushforward_oracle([](double e) { return e * e; }, QuadratureConfig{});
    EXPECT_NEAR(r.value, 4.0, 1e-10);
}

TEST(Pushforward, MonteCarloIsReproducible)
{
    const auto g = [](double e) { return std::cos(e); };
    const auto a = dos::dos_pushforward_oracle(g, QuadratureConfig{}, 7);
    const auto b = dos::dos_pushforward_oracle(g, QuadratureConfig{}, 7);
    const auto c = dos::dos_pushforward_oracle(g, QuadratureConfig{}, 8);
    EXPECT_EQ(a.mc_mean, b.mc_mean);
    EXPECT_NE(a.mc_mean, c.mc_mean);
    EXPECT_EQ(a.value, c.value);
}

TEST(Pushforward, MonteCarloDisagreementIsReported)
{
    // the integrand changes after the quadrature phase, so the two estimates disagree
    long calls = 0;
    const auto drifting = [&calls](double) { return ++calls < 20000 ? 1.0 : 2.0; };
    EXPECT_THROW(dos::dos_pushforward_oracle(drifting, QuadratureConfig{}), hfgap::ConvergenceError);
}

TEST(Pushforward, DepthLimitIsReported)
{
    // a discontinuous integrand that the nested quadrature cannot resolve with depth 1
    QuadratureConfig cfg;
    cfg.max_depth = 1;
    cfg.rel_tol = 1e-14;
    EXPECT_THROW(dos::dos_pushforward_oracle([](double e) { return e > 1.0 ? 1.0 : 0.0; }, cfg),
                 hfgap::ConvergenceError);
}

TEST(Pushforward, LevelSetDensityAgreesOnFiveTestFunctions)
{
    const QuadratureConfig cfg;
    const std::vector<std::function<double(double)>> tests = {
        [](double) { return 1.0; },
        [](double e) { return e * e; },
        [](double e) { return std::abs(e); },
        [](double e) { return e > 0 ? e : 0.0; },
        [](double e) { return std::cos(e); }};
    for (std::size_t i = 0; i < tests.size(); ++i) {
        const double via_density = dos::integrate_against_dos(tests[i], cfg);
        const auto oracle = dos::dos_pushforward_oracle(tests[i], cfg);
        EXPECT_NEAR(via_density, oracle.value, 1e-6 * std::abs(oracle.value)) << "test function " << i;
    }
}

TEST(DosMoment, ExactValues)
{
    EXPECT_NEAR(dos::dos_moment_exact(1.0), 0.5, 1e-15);
    EXPECT_NEAR(dos::dos_moment_exact(2.0), 8.0 / (kPi * kPi), 1e-15);
    EXPECT_NEAR(dos::dos_moment_exact(3.0), 2.0, 1e-14);
    EXPECT_NEAR(dos::dos_moment_exact(0.5), 0.696601964842838430, 1e-15);
    EXPECT_THROW(dos::dos_moment_exact(0.0), hfgap::DomainError);
}

TEST(DosMoment, SecondMomentFromBrillouinZone)
{
    const auto r = dos::dos_pushforward_oracle([](double e) { return e > 0 ? e * e : 0.0; }, QuadratureConfig{});
    EXPECT_NEAR(r.value, dos::dos_moment_exact(3.0), 1e-10);
}

TEST(DosMoment, NumericMatchesClosedForm)
{
    for (double s : {0.25, 0.5, 1.0, 1.5, 2.0, 3.0, 5.0}) {
        const double exact = dos::dos_moment_exact(s);
        EXPECT_LT(std::abs(dos::dos_moment(s) - exact) / exact, 1e-8) << "s = " << s;
        EXPECT_LT(std::abs(dos::dos_moment(s, QuadratureConfig{}, dos::Method::level_set) - exact) / exact, 1e-8)
            << "s = " << s;
    }
    EXPECT_NEAR(dos::dos_moment(1.0), 0.5, 1e-10);
    EXPECT_THROW(dos::dos_moment(0.0), hfgap::DomainError);
}

TEST(DosMoment, SplitPointIsImmaterial)
{
    for (double split : {1e-4, 1e-3, 1e-2}) EXPECT_NEAR(dos::dos_moment(0.5, {}, dos::Method::elliptic, split), dos::dos_moment_exact(0.5), 1e-10);
}

TEST(SingularRemainder, SwitchesToExpansionContinuously)
{
    const QuadratureConfig cfg;
    const double below = dos::singular_remainder(1e-3 * (1 - 1e-9), cfg, dos::Method::elliptic);
    const double above = dos::singular_remainder(1e-3, cfg, dos::Method::elliptic);
    EXPECT_NEAR(below, above, 1e-15);
}
