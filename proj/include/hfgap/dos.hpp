#pragma once

#include "hfgap/quadrature.hpp"

#include <cstdint>
#include <functional>
#include <vector>

namespace hfgap::dos {

/// How a pointwise value of N0 is produced.
///  - level_set: adaptive quadrature of the one-dimensional level-set reduction
///  - elliptic:  N0(e) = K(k)/(2 pi^2), k' = e/4, with K from the AGM (machine precision)
enum class Method { level_set, elliptic };

inline constexpr std::uint64_t kDefaultSeed = 20250130;

/// Density of states N0(e) of -2(cos k1 + cos k2) by the level-set reduction
///   N0(e) = 1/(2 pi^2) * int_0^inf dw / sqrt(1 + (e/4)^2 sinh^2 w),   0 < |e| < 4.
/// Returns 0 for |e| >= 4; throws DomainError at e = 0.
double dos_value(double epsilon, const QuadratureConfig& cfg = {});

/// Closed form through the complete elliptic integral of the first kind.
double dos_elliptic(double epsilon);

double density(double epsilon, const QuadratureConfig& cfg, Method method);

/// Two-term small-e expansion ln(16/e)/(2 pi^2) + e^2 (ln(16/e) - 1)/(128 pi^2), 0 < e < 4.
double dos_asymptotic(double epsilon);

/// ln(16/e)/(2 pi^2), the subtracted logarithmic singularity.
double log_singularity(double epsilon);

/// N0(e) - ln(16/e)/(2 pi^2) for 0 < e <= 4. Below `expansion_cutoff` the
/// subleading expansion term is returned instead of the cancelling difference.
double singular_remainder(double epsilon, const QuadratureConfig& cfg, Method method,
                          double expansion_cutoff = 1e-3);

struct PushforwardEstimate {
    double value = 0.0;       ///< tensor-product (nested adaptive) quadrature
    double quad_error = 0.0;
    double mc_mean = 0.0;     ///< independent Monte Carlo estimate
    double mc_stderr = 0.0;
    std::uint64_t seed = kDefaultSeed;
    long mc_samples = 0;
};

/// (2 pi)^-2 * int over [-pi,pi]^2 of g(-2(cos k1 + cos k2)), i.e. the integral
/// of g against N0(e) de, by nested adaptive quadrature (split on the e = 0 line)
/// and by Monte Carlo. Throws ConvergenceError when the two disagree beyond
/// 5 standard errors plus the quadrature error.
PushforwardEstimate dos_pushforward_oracle(const std::function<double(double)>& g, const QuadratureConfig& cfg = {},
                                           std::uint64_t seed = kDefaultSeed);

/// int_{-4}^{4} g(e) N0(e) de computed from pointwise N0 and evenness.
double integrate_against_dos(const std::function<double(double)>& g, const QuadratureConfig& cfg = {},
                             Method method = Method::level_set);

/// J1(s) = int_0^4 e^(s-1) N0(e) de. On [0, delta] the expansion is integrated
/// in closed form, on [delta, 4] numerically.
double dos_moment(double s, const QuadratureConfig& cfg = {}, Method method = Method::elliptic,
                  double split = 1e-3);

/// (4^s / 8 pi) * (Gamma(s/2)/Gamma(1/2 + s/2))^2.
double dos_moment_exact(double s);

} // namespace hfgap::dos
