#pragma once

#include "hfgap/errors.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <queue>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace hfgap {

/// Tolerances and subdivision limits shared by every integral in the library.
struct QuadratureConfig {
    double rel_tol = 1e-10;
    double abs_tol = 1e-13;
    int max_depth = 60;           ///< maximal number of bisections of one initial interval
    long mc_samples = 100000;     ///< sample count of the Monte Carlo oracle

    void validate() const
    {
        require_domain(rel_tol > 0.0 && abs_tol > 0.0, "quadrature tolerances must be positive");
        require_domain(max_depth >= 1, "max_depth must be at least 1");
        require_domain(mc_samples >= 10000, "mc_samples must be at least 10^4");
    }
};

struct QuadResult {
    double value = 0.0;
    double error = 0.0;
    long evaluations = 0;
    bool converged = false;
};

namespace detail {

// 21-point Kronrod extension of the 10-point Gauss rule (QUADPACK qk21).
inline constexpr std::array<double, 11> kXgk = {
    0.995657163025808080735527280689003, 0.973906528517171720077964012084452,
    0.930157491355708226001207180059508, 0.865063366688984510732096688423493,
    0.780817726586416897063717578345042, 0.679409568299024406234327365114874,
    0.562757134668604683339000099272694, 0.433395394129247190799265943165784,
    0.294392862701460198131126603103866, 0.148874338981631210884826001129720,
    0.000000000000000000000000000000000};
inline constexpr std::array<double, 11> kWgk = {
    0.011694638867371874278064396062192, 0.032558162307964727478818972459390,
    0.054755896574351996031381300244580, 0.075039674810919952767043140916190,
    0.093125454583697605535065465083366, 0.109387158802297641899210590325805,
    0.123491976262065851077208048534830, 0.134709217311473325928054001771707,
    0.142775938577060080797094273138717, 0.147739104901338491374841515972068,
    0.149445554002916905664936468389821};
inline constexpr std::array<double, 5> kWg = {
    0.066671344308688137593568809893332, 0.149451349150580593145776339657697,
    0.219086362515982043995534934228163, 0.269266719309996355091226921569469,
    0.295524224714752870173892994651338};

struct Segment {
    double a, b, value, error;
    int depth;
    bool operator<(const Segment& other) const { return error < other.error; }
};

template <class F>
Segment kronrod21(const F& f, double a, double b, int depth)
{
    const double center = 0.5 * (a + b);
    const double half = 0.5 * (b - a);
    const double fc = f(center);
    double resk = kWgk[10] * fc;
    double resg = 0.0;
    double resabs = std::abs(resk);
    std::array<double, 10> f1{}, f2{};
    for (int j = 0; j < 10; ++j) {
        const double dx = half * kXgk[j];
        f1[j] = f(center - dx);
        f2[j] = f(center + dx);
        const double sum = f1[j] + f2[j];
        resk += kWgk[j] * sum;
        resabs += kWgk[j] * (std::abs(f1[j]) + std::abs(f2[j]));
        if (j % 2 == 1) resg += kWg[j / 2] * sum;
    }
    const double mean = 0.5 * resk;
    double resasc = kWgk[10] * std::abs(fc - mean);
    for (int j = 0; j < 10; ++j) resasc += kWgk[j] * (std::abs(f1[j] - mean) + std::abs(f2[j] - mean));

    const double ahalf = std::abs(half);
    resk *= half;
    resabs *= ahalf;
    resasc *= ahalf;
    double err = std::abs((resk - resg * half));
    if (resasc != 0.0 && err != 0.0) err = resasc * std::min(1.0, std::pow(200.0 * err / resasc, 1.5));
    constexpr double eps = std::numeric_limits<double>::epsilon();
    if (resabs > std::numeric_limits<double>::min() / (50.0 * eps)) err = std::max(50.0 * eps * resabs, err);
    if (!std::isfinite(resk)) err = std::numeric_limits<double>::infinity();
    return {a, b, resk, err, depth};
}

} // namespace detail

/// Globally adaptive Gauss-Kronrod (21 point) integration over consecutive
/// intervals [p0,p1], [p1,p2], ...  The segment with the largest error estimate
/// is bisected until the summed estimate meets max(abs_tol, rel_tol*|I|).
/// Integrable endpoint singularities (log, mild x^-a) are handled by
/// repeated bisection, which is why max_depth is large by default.
template <class F>
QuadResult integrate(const F& f, std::span<const double> points, const QuadratureConfig& cfg)
{
    QuadResult result;
    if (points.size() < 2) return result;
    std::priority_queue<detail::Segment> open;
    std::vector<detail::Segment> frozen;
    double value = 0.0, error = 0.0;
    for (std::size_t i = 0; i + 1 < points.size(); ++i) {
        if (points[i] == points[i + 1]) continue;
        const auto seg = detail::kronrod21(f, points[i], points[i + 1], 0);
        value += seg.value;
        error += seg.error;
        open.push(seg);
        result.evaluations += 21;
    }
    constexpr std::size_t max_segments = 100000;

    auto resum = [&](double& sum, double& err) {
        sum = 0.0;
        err = 0.0;
        auto copy = open;
        while (!copy.empty()) {
            sum += copy.top().value;
            err += copy.top().error;
            copy.pop();
        }
        for (const auto& s : frozen) {
            sum += s.value;
            err += s.error;
        }
    };

    while (true) {
        const double tol = std::max(cfg.abs_tol, cfg.rel_tol * std::abs(value));
        if (error <= tol) {
            result.converged = std::isfinite(value);
            break;
        }
        if (open.empty() || open.size() + frozen.size() >= max_segments) break;
        const detail::Segment worst = open.top();
        open.pop();
        if (worst.depth >= cfg.max_depth) {
            frozen.push_back(worst);
            continue;
        }
        const double mid = 0.5 * (worst.a + worst.b);
        const auto left = detail::kronrod21(f, worst.a, mid, worst.depth + 1);
        const auto right = detail::kronrod21(f, mid, worst.b, worst.depth + 1);
        result.evaluations += 42;
        value += left.value + right.value - worst.value;
        error += left.error + right.error - worst.error;
        open.push(left);
        open.push(right);
    }
    // resum to remove drift from the incremental updates
    resum(result.value, result.error);
    if (!result.converged) {
        const double tol = std::max(cfg.abs_tol, cfg.rel_tol * std::abs(result.value));
        result.converged = std::isfinite(result.value) && result.error <= tol;
    }
    return result;
}

template <class F>
QuadResult integrate(const F& f, double a, double b, const QuadratureConfig& cfg)
{
    const std::array<double, 2> pts{a, b};
    return integrate(f, std::span<const double>(pts), cfg);
}

/// Like integrate(), but throws ConvergenceError naming `what` on failure.
template <class F>
double integrate_checked(std::string_view what, const F& f, std::span<const double> points,
                         const QuadratureConfig& cfg)
{
    const QuadResult r = integrate(f, points, cfg);
    if (!r.converged) {
        throw ConvergenceError("quadrature did not converge for " + std::string(what) + " (estimate " +
                               std::to_string(r.value) + ", error " + std::to_string(r.error) + ")");
    }
    return r.value;
}

template <class F>
double integrate_checked(std::string_view what, const F& f, double a, double b, const QuadratureConfig& cfg)
{
    const std::array<double, 2> pts{a, b};
    return integrate_checked(what, f, std::span<const double>(pts), cfg);
}

/// Sorted, de-duplicated breakpoints restricted to [a, b], endpoints included.
inline std::vector<double> breakpoints(double a, double b, std::initializer_list<double> interior)
{
    std::vector<double> pts{a};
    for (double p : interior)
        if (p > a && p < b) pts.push_back(p);
    pts.push_back(b);
    std::sort(pts.begin(), pts.end());
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
    return pts;
}

} // namespace hfgap
