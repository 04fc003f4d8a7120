#pragma once

#include "hfgap/dos.hpp"
#include "hfgap/quadrature.hpp"

#include <map>
#include <span>
#include <string>
#include <vector>

namespace hfgap::renorm {

/// Euler-Mascheroni constant.
inline constexpr double kEulerGamma = 0.57721566490153286060651209008240243;

/// One sample of the Mellin-regularized pair J1(s) (density moment) and
/// J2(s) (moment of the subtracted logarithm).
struct MellinPair {
    double s = 0.0;
    double j1 = 0.0;
    double j2 = 0.0;

    double difference() const { return j1 - j2; }
};

/// Least-squares fit of f(s) ~ c_m2/s^2 + c_m1/s + c_0 + c_1 s.
struct LaurentFit {
    double c_m2 = 0.0;
    double c_m1 = 0.0;
    double c_0 = 0.0;
    double c_1 = 0.0;
    double fit_residual = 0.0; ///< RMS of the least-squares residual
    double extrapolated = 0.0; ///< polynomial (Neville) extrapolation to s = 0 of the regular part
};

struct Regularization {
    std::vector<MellinPair> pairs;
    LaurentFit j1;
    LaurentFit difference;
};

struct ConstantsReport {
    double a0_numeric = 0.0;
    double a0_exact = 0.0;
    double b1 = 0.0;
    double a1 = 0.0;
    double gap_ratio_leading = 0.0;
    double gap_ratio_slope = 0.0;
    double sech_integral = 0.0;
    std::map<std::string, double> deviations;
};

/// int_0^4 (N0(e) - ln(16/e)/(2 pi^2)) / e de, expansion integrated exactly on [0, split].
double a0_numeric(const QuadratureConfig& cfg = {}, dos::Method method = dos::Method::elliptic, double split = 1e-3);

/// (ln 2)^2 / pi^2 - 1/24.
double a0_exact();

/// 4 pi^2 ((ln 2)^2/pi^2 - 1/24 - a0).
double b1_constant(double a0);

/// 4^s (1 + 2 s ln 2) / (2 pi^2 s^2).
double j2_closed(double s);

/// int_0^4 ln(16/e)/(2 pi^2) e^(s-1) de by quadrature (e = 4 w^(1/s)).
double j2_quadrature(double s, const QuadratureConfig& cfg = {});

MellinPair mellin_pair(double s, const QuadratureConfig& cfg = {}, dos::Method method = dos::Method::elliptic);

/// Laurent fit of arbitrary samples. `regular_part_only` selects whether the
/// Neville extrapolation acts on f - c_m2/s^2 - c_m1/s (true) or on f itself.
LaurentFit fit_laurent(std::span<const double> s, std::span<const double> values, bool regular_part_only = true);

/// Evaluates J1, J2 on a strictly decreasing grid (>= 4 points) and fits both
/// J1 and J1 - J2. Throws DomainError on a bad grid and ConvergenceError when
/// the fit is degenerate.
Regularization regularized_limit(std::span<const double> s_grid, const QuadratureConfig& cfg = {},
                                 dos::Method method = dos::Method::elliptic);

inline const std::vector<double> kDefaultSGrid = {0.2, 0.1, 0.05, 0.025, 0.0125};

/// int_0^inf (ln x)^2 / cosh^2 x dx; [0,1] with x = e^-v, [1,20] directly.
double sech_log2_integral(const QuadratureConfig& cfg = {});

/// Independent parameterization of the same integral: x = y^2 on [0,1] and x = e^w beyond.
double sech_log2_integral_alt(const QuadratureConfig& cfg = {});

/// -4 pi^2 a0 - sech_int + (2 ln 2)^2 + (gamma + 2 ln 2 - ln pi)^2.
double a1_constant(double a0, double sech_int);

/// (gamma + 2 ln 2 - ln pi)^2 + pi^2/6 - sech_int.
double a1_minus_b1(double sech_int);

/// (32 / (pi e^-gamma)) exp(-sqrt(4 pi^2/u + a1)).
double neel_asymptotic(double u, double a1);

/// pi e^-gamma.
double gap_ratio_leading();

/// pi e^-gamma + (e^-gamma / 4)(a1 - b1) sqrt(u).
double gap_ratio_expansion(double u, double a1, double b1);

ConstantsReport constants_report(const QuadratureConfig& cfg = {});

} // namespace hfgap::renorm
