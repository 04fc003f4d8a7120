#include "hfgap/specfun.hpp"

#include "hfgap/errors.hpp"

#include <cmath>
#include <numbers>

namespace hfgap::specfun {

namespace {

constexpr double kPi2Over6 = std::numbers::pi * std::numbers::pi / 6.0;

// sum x^k / k^2 for |x| <= 1/2
double dilog_series(double x)
{
    double term = x;
    double sum = 0.0;
    for (int k = 1; k < 200; ++k) {
        const double add = term / (static_cast<double>(k) * k);
        sum += add;
        if (std::abs(add) <= 1e-18 * std::abs(sum)) break;
        term *= x;
    }
    return sum;
}

// Li2(y) for y in (1/2, 1) given c = 1 - y exactly; Euler reflection.
double dilog_reflected(double c)
{
    return kPi2Over6 - std::log1p(-c) * std::log(c) - dilog_series(c);
}

} // namespace

double dilog(double x)
{
    require_domain(!std::isnan(x), "dilog: argument is NaN");
    require_domain(x <= 1.0, "dilog: argument must be <= 1 (branch cut on (1, inf))");
    if (x == 1.0) return kPi2Over6;
    if (std::abs(x) <= 0.5) return dilog_series(x);
    if (x > 0.5) return dilog_reflected(1.0 - x);

    // x < -1/2: Landen, Li2(x) = -Li2(y) - ln(1-x)^2 / 2 with y = x/(x-1) in (1/3, 1)
    const double one_minus_x = 1.0 - x;
    const double l = std::log(one_minus_x);
    const double y = -x / one_minus_x;
    const double li_y = (y <= 0.5) ? dilog_series(y) : dilog_reflected(1.0 / one_minus_x);
    return -li_y - 0.5 * l * l;
}

double dilog_inversion_residual(double x)
{
    require_domain(x > 0.0, "dilog_inversion_residual: argument must be positive");
    const double l = std::log(x);
    return dilog(-1.0 / x) + dilog(-x) + 0.5 * l * l + kPi2Over6;
}

double gamma_ratio(double s)
{
    require_domain(s > 0.0 && std::isfinite(s), "gamma_ratio: s must be positive");
    return std::exp(std::lgamma(0.5 * s) - std::lgamma(0.5 + 0.5 * s));
}

double cosine_power_integral(double s)
{
    require_domain(s > 0.0, "cosine_power_integral: s must be positive");
    return 0.5 * std::sqrt(std::numbers::pi) * gamma_ratio(s);
}

double cosine_power_integral_quadrature(double s, const QuadratureConfig& cfg)
{
    require_domain(s > 0.0, "cosine_power_integral_quadrature: s must be positive");
    constexpr double half_pi = 0.5 * std::numbers::pi;
    if (s >= 1.0) {
        return integrate_checked(
            "cosine power integral", [s](double k) { return std::pow(std::cos(k), s - 1.0); }, 0.0, half_pi, cfg);
    }
    // u = pi/2 - k = w^(1/s):  cos(k)^(s-1) dk = (1/s) (sin u / u)^(s-1) dw
    const auto integrand = [s](double w) {
        const double u = std::pow(w, 1.0 / s);
        const double sinc = (u < 1e-8) ? 1.0 - u * u / 6.0 : std::sin(u) / u;
        return std::pow(sinc, s - 1.0) / s;
    };
    return integrate_checked("cosine power integral", integrand, 0.0, std::pow(half_pi, s), cfg);
}

double artanh_from_complement(double one_minus_x)
{
    require_domain(one_minus_x > 0.0 && one_minus_x <= 2.0, "artanh: argument must lie in (-1, 1)");
    return 0.5 * std::log((2.0 - one_minus_x) / one_minus_x);
}

} // namespace hfgap::specfun
