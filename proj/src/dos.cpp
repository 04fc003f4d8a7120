#include "hfgap/dos.hpp"

#include "hfgap/errors.hpp"
#include "hfgap/specfun.hpp"

#include <cmath>
#include <numbers>
#include <random>

namespace hfgap::dos {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kLeading = 1.0 / (2.0 * kPi * kPi);      // coefficient of ln(16/e)
constexpr double kSubleading = 1.0 / (128.0 * kPi * kPi); // coefficient of e^2 (ln(16/e) - 1)

double agm(double a, double b)
{
    for (int i = 0; i < 64 && std::abs(a - b) > 1e-16 * a; ++i) {
        const double next = 0.5 * (a + b);
        b = std::sqrt(a * b);
        a = next;
    }
    return 0.5 * (a + b);
}

// int_0^delta e^(p-1) ln(16/e) de
double log_power_head(double p, double delta)
{
    return std::pow(delta, p) * (std::log(16.0 / delta) / p + 1.0 / (p * p));
}

} // namespace

double dos_value(double epsilon, const QuadratureConfig& cfg)
{
    require_domain(epsilon != 0.0, "dos_value: N0 diverges logarithmically at epsilon = 0");
    require_domain(std::isfinite(epsilon), "dos_value: epsilon must be finite");
    const double e = std::abs(epsilon);
    if (e >= 4.0) return 0.0;

    // Level set 2(cos k1 + cos k2) = e: for each k1 there are two k2 with
    // |d/dk2| = 2 sqrt(1 - c^2), c = e/2 - cos k1. With k1 = 2 theta,
    // sin theta = sqrt(1-a) sin phi, t = tan phi, t = sqrt(a) sinh w (a = e/4)
    // the k1-integral becomes int_0^inf dw / sqrt(1 + a^2 sinh^2 w).
    const double a = 0.25 * e;
    const double knee = std::asinh(1.0 / a);
    const double upper = knee + 40.0; // tail below e^-40
    const auto integrand = [a](double w) { return 1.0 / std::hypot(1.0, a * std::sinh(w)); };
    const auto pts = breakpoints(0.0, upper, {knee});
    return kLeading * integrate_checked("density of states level-set integral", integrand, pts, cfg);
}

double dos_elliptic(double epsilon)
{
    require_domain(epsilon != 0.0, "dos_elliptic: N0 diverges logarithmically at epsilon = 0");
    require_domain(std::isfinite(epsilon), "dos_elliptic: epsilon must be finite");
    const double e = std::abs(epsilon);
    if (e >= 4.0) return 0.0;
    // K(k) = pi / (2 AGM(1, k')) with complementary modulus k' = e/4
    const double complete_k = kPi / (2.0 * agm(1.0, 0.25 * e));
    return kLeading * complete_k;
}

double density(double epsilon, const QuadratureConfig& cfg, Method method)
{
    return method == Method::elliptic ? dos_elliptic(epsilon) : dos_value(epsilon, cfg);
}

double dos_asymptotic(double epsilon)
{
    require_domain(epsilon > 0.0 && epsilon < 4.0, "dos_asymptotic: epsilon must lie in (0, 4)");
    const double l = std::log(16.0 / epsilon);
    return kLeading * l + kSubleading * epsilon * epsilon * (l - 1.0);
}

double log_singularity(double epsilon)
{
    require_domain(epsilon > 0.0, "log_singularity: epsilon must be positive");
    return kLeading * std::log(16.0 / epsilon);
}

double singular_remainder(double epsilon, const QuadratureConfig& cfg, Method method, double expansion_cutoff)
{
    require_domain(epsilon > 0.0 && epsilon <= 4.0, "singular_remainder: epsilon must lie in (0, 4]");
    if (epsilon < expansion_cutoff) return kSubleading * epsilon * epsilon * (std::log(16.0 / epsilon) - 1.0);
    if (epsilon == 4.0) return density(std::nextafter(4.0, 0.0), cfg, method);
    return density(epsilon, cfg, method) - log_singularity(epsilon);
}

PushforwardEstimate dos_pushforward_oracle(const std::function<double(double)>& g, const QuadratureConfig& cfg,
                                           std::uint64_t seed)
{
    cfg.validate();
    const auto energy = [](double k1, double k2) { return -2.0 * (std::cos(k1) + std::cos(k2)); };

    // Reduce [-pi,pi]^2 to [0,pi]^2 (evenness in k1, k2); e = 0 on k2 = pi - k1.
    const auto inner = [&](double k1) {
        const auto row = [&](double k2) { return g(energy(k1, k2)); };
        const auto pts = breakpoints(0.0, kPi, {kPi - k1});
        return integrate_checked("pushforward inner integral", row, pts, cfg);
    };
    const auto outer_pts = breakpoints(0.0, kPi, {0.5 * kPi});
    const QuadResult outer = integrate(inner, std::span<const double>(outer_pts), cfg);
    if (!outer.converged) throw ConvergenceError("quadrature did not converge for pushforward outer integral");

    PushforwardEstimate est;
    est.value = outer.value / (kPi * kPi);
    est.quad_error = outer.error / (kPi * kPi);
    est.seed = seed;
    est.mc_samples = cfg.mc_samples;

    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> angle(-kPi, kPi);
    double mean = 0.0, m2 = 0.0;
    for (long n = 1; n <= cfg.mc_samples; ++n) {
        const double k1 = angle(rng);
        const double k2 = angle(rng);
        const double x = g(energy(k1, k2));
        const double d = x - mean;
        mean += d / static_cast<double>(n);
        m2 += d * (x - mean);
    }
    const auto n = static_cast<double>(cfg.mc_samples);
    est.mc_mean = mean;
    est.mc_stderr = std::sqrt(m2 / (n - 1.0) / n);

    const double allowed = 5.0 * est.mc_stderr + est.quad_error + 1e-12 * (1.0 + std::abs(est.value));
    if (!(std::abs(est.value - est.mc_mean) <= allowed)) {
        throw ConvergenceError("pushforward oracle: quadrature " + std::to_string(est.value) +
                               " and Monte Carlo " + std::to_string(est.mc_mean) + " disagree");
    }
    return est;
}

double integrate_against_dos(const std::function<double(double)>& g, const QuadratureConfig& cfg, Method method)
{
    const auto integrand = [&](double e) { return (g(e) + g(-e)) * density(e, cfg, method); };
    const auto pts = breakpoints(0.0, 4.0, {1e-3, 0.1, 1.0});
    return integrate_checked("integral against the density of states", integrand, pts, cfg);
}

double dos_moment(double s, const QuadratureConfig& cfg, Method method, double split)
{
    require_domain(s > 0.0 && std::isfinite(s), "dos_moment: s must be positive");
    require_domain(split > 0.0 && split < 0.1, "dos_moment: split point must lie in (0, 0.1)");
    const double p = s + 2.0;
    const double head = kLeading * log_power_head(s, split) +
                        kSubleading * (log_power_head(p, split) - std::pow(split, p) / p);
    const auto integrand = [&](double e) { return std::pow(e, s - 1.0) * density(e, cfg, method); };
    const auto pts = breakpoints(split, 4.0, {1e-2, 0.1, 1.0});
    return head + integrate_checked("Mellin moment of the density of states", integrand, pts, cfg);
}

double dos_moment_exact(double s)
{
    require_domain(s > 0.0, "dos_moment_exact: s must be positive");
    const double r = specfun::gamma_ratio(s);
    return std::pow(4.0, s) / (8.0 * kPi) * r * r;
}

} // namespace hfgap::dos
