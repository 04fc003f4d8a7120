#include "hfgap/gap.hpp"

#include "hfgap/errors.hpp"
#include "hfgap/specfun.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

namespace hfgap::gap {

namespace {

constexpr double kPi = std::numbers::pi;
const double kLn2 = std::log(2.0);

void require_gap(double delta, const char* who)
{
    require_domain(delta > 0.0 && std::isfinite(delta), std::string(who) + ": gap must be positive");
}

} // namespace

void GapParams::validate() const
{
    require_domain(u > 0.0 && std::isfinite(u), "coupling must be positive");
    require_domain(t > 0.0 && std::isfinite(t), "hopping must be positive");
}

double gap_rhs(double delta, const QuadratureConfig& cfg, dos::Method method)
{
    require_gap(delta, "gap_rhs");
    // e = delta sinh(v) turns de / sqrt(delta^2 + e^2) into dv
    const double upper = std::asinh(4.0 / delta);
    const auto integrand = [&](double v) {
        const double e = std::min(delta * std::sinh(v), std::nextafter(4.0, 0.0));
        return dos::density(e, cfg, method);
    };
    const auto at = [&](double e) { return std::asinh(e / delta); };
    const auto pts = breakpoints(0.0, upper, {at(1e-3), at(0.1), at(1.0), 1.0});
    // logarithmic endpoint at v = 0: v = v1 x^2 on the first panel
    const double v1 = pts[1];
    const auto head = [&](double x) { return 2.0 * v1 * x * integrand(v1 * x * x); };
    const double near_zero = integrate_checked("gap equation right-hand side", head, 0.0, 1.0, cfg);
    return near_zero + integrate_checked("gap equation right-hand side", integrand,
                                         std::span<const double>(pts).subspan(1), cfg);
}

double gap_rhs_decomposed(double delta, double a0, const QuadratureConfig& cfg, dos::Method method)
{
    return a0 + i1_closed(delta) + i2_numeric(delta, cfg, method);
}

dos::PushforwardEstimate gap_rhs_pushforward(double delta, const QuadratureConfig& cfg, std::uint64_t seed)
{
    require_gap(delta, "gap_rhs_pushforward");
    // the pushforward covers [-4, 4]; the kernel 1/(2 sqrt) folds it onto [0, 4]
    const auto g = [delta](double e) { return 0.5 / std::hypot(delta, e); };
    return dos::dos_pushforward_oracle(g, cfg, seed);
}

GapSolution gap_solve(const GapParams& params, const QuadratureConfig& cfg, const SolverOptions& options)
{
    params.validate();
    cfg.validate();
    const double u = params.u / params.t;
    const double target = 1.0 / u;

    int evaluations = 0;
    const auto f = [&](double delta) {
        ++evaluations;
        return gap_rhs(delta, cfg) - target;
    };

    // rhs is strictly decreasing in delta, so f > 0 left of the root
    const double guess = delta_asymptotic(u);
    double lo = 0.25 * guess, hi = 4.0 * guess;
    double flo = f(lo), fhi = f(hi);
    for (int i = 0; flo <= 0.0; ++i) {
        if (i == 60 || lo < 1e-300) {
            std::ostringstream msg;
            msg << "gap equation: no sign change in bracket [" << lo << ", " << hi << "]";
            throw ConvergenceError(msg.str());
        }
        hi = lo;
        fhi = flo;
        lo *= 0.25;
        flo = f(lo);
    }
    for (int i = 0; fhi >= 0.0; ++i) {
        if (i == 60 || hi > 1e300) {
            std::ostringstream msg;
            msg << "gap equation: no sign change in bracket [" << lo << ", " << hi << "]";
            throw ConvergenceError(msg.str());
        }
        lo = hi;
        flo = fhi;
        hi *= 4.0;
        fhi = f(hi);
    }

    // Illinois regula falsi in x = ln(delta), with a bisection step whenever
    // the bracket fails to halve over two iterations.
    double xlo = std::log(lo), xhi = std::log(hi);
    double best = std::abs(flo) < std::abs(fhi) ? lo : hi;
    double fbest = std::min(std::abs(flo), std::abs(fhi));
    int side = 0;
    double width_prev = xhi - xlo, width_prev2 = xhi - xlo;
    for (int iter = 0; iter < options.max_iterations; ++iter) {
        if (fbest <= 0.1 * options.residual_tol) break;
        if (xhi - xlo <= 4.0 * std::numeric_limits<double>::epsilon() * std::max(std::abs(xlo), 1.0)) break;

        const bool stalled = iter >= 2 && (xhi - xlo) > 0.5 * width_prev2;
        double x = stalled ? 0.5 * (xlo + xhi) : (xlo * fhi - xhi * flo) / (fhi - flo);
        if (!(x > xlo && x < xhi)) x = 0.5 * (xlo + xhi);
        width_prev2 = width_prev;
        width_prev = xhi - xlo;

        const double fx = f(std::exp(x));
        if (std::abs(fx) < fbest) {
            fbest = std::abs(fx);
            best = std::exp(x);
        }
        if (fx > 0.0) {
            xlo = x;
            flo = fx;
            if (side == -1) fhi *= 0.5;
            side = -1;
        } else if (fx < 0.0) {
            xhi = x;
            fhi = fx;
            if (side == 1) flo *= 0.5;
            side = 1;
        } else {
            break;
        }
    }

    if (!(fbest < options.residual_tol)) {
        std::ostringstream msg;
        msg << "gap equation: residual " << fbest << " above tolerance " << options.residual_tol << " at u = " << u;
        throw ConvergenceError(msg.str());
    }
    GapSolution sol;
    sol.delta = params.t * best;
    sol.residual = fbest;
    sol.bracket = {params.t * std::exp(xlo), params.t * std::exp(xhi)};
    sol.evaluations = evaluations;
    return sol;
}

double i1_closed(double delta)
{
    require_gap(delta, "i1_closed");
    const double d2 = delta * delta;
    const double r = std::sqrt(d2 + 16.0);
    const double ln_delta = std::log(delta);
    // 1 - 4/r and 1/2 - r/8 without cancellation
    const double one_minus_x = d2 / (r * (r + 4.0));
    const double li_arg = -d2 / (8.0 * (r + 4.0));
    const double ln_r4 = std::log(r + 4.0);

    const double sum = 12.0 * std::log(16.0 / delta) * specfun::artanh_from_complement(one_minus_x)
                       - 3.0 * ln_r4 * (std::log(4.0) + ln_r4 - 4.0 * ln_delta)
                       - 6.0 * ln_delta * std::log(4.0 * delta)
                       + 6.0 * specfun::dilog(li_arg)
                       + kPi * kPi + 27.0 * kLn2 * kLn2;
    return sum / (24.0 * kPi * kPi);
}

double i1_quadrature(double delta, const QuadratureConfig& cfg)
{
    require_gap(delta, "i1_quadrature");
    // e = 4 x^2 softens the logarithmic endpoint to x ln x
    const auto integrand = [delta](double x) {
        const double e = 4.0 * x * x;
        return 8.0 * x * dos::log_singularity(e) / std::hypot(delta, e);
    };
    const double knee = std::sqrt(std::min(delta, 4.0) / 4.0);
    const auto pts = breakpoints(0.0, 1.0, {0.1 * knee, knee, std::min(1.0, 3.0 * knee)});
    return integrate_checked("I1 quadrature", integrand, pts, cfg);
}

double i1_small_delta(double delta)
{
    require_gap(delta, "i1_small_delta");
    const double l = std::log(delta);
    return (6.0 * l * l - 60.0 * kLn2 * l + kPi * kPi + 126.0 * kLn2 * kLn2) / (24.0 * kPi * kPi);
}

double i2_numeric(double delta, const QuadratureConfig& cfg, dos::Method method)
{
    require_gap(delta, "i2_numeric");
    require_domain(delta <= 4.0, "i2_numeric: gap must not exceed the band half-width 4");
    const auto integrand = [&](double e) {
        const double r = std::hypot(delta, e);
        // 1/r - 1/e written without cancellation
        const double kernel = -delta * delta / (e * r * (e + r));
        return dos::singular_remainder(e, cfg, method) * kernel;
    };
    const auto pts = breakpoints(0.0, 4.0, {1e-3, delta, 0.1, 1.0});
    return integrate_checked("I2 quadrature", integrand, pts, cfg);
}

double delta_asymptotic(double u, double b1)
{
    require_domain(u > 0.0, "coupling must be positive");
    const double radicand = 4.0 * kPi * kPi / u + b1;
    require_domain(radicand >= 0.0, "delta_asymptotic: 4 pi^2/u + b1 must be non-negative");
    return 32.0 * std::exp(-std::sqrt(radicand));
}

double asymptotic_bound_scale(double u)
{
    require_domain(u > 0.0, "coupling must be positive");
    return std::exp(-4.0 * kPi / std::sqrt(u)) / std::sqrt(u);
}

AsymptoticComparison compare_asymptotic(double u, const QuadratureConfig& cfg)
{
    AsymptoticComparison c;
    c.u = u;
    c.delta_numeric = gap_solve({u, 1.0}, cfg).delta;
    c.delta_asymptotic = delta_asymptotic(u);
    c.rel_dev = std::abs(c.delta_numeric / c.delta_asymptotic - 1.0);
    c.bound_scale = asymptotic_bound_scale(u);
    return c;
}

} // namespace hfgap::gap
