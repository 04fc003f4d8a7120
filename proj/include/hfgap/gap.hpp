#pragma once

#include "hfgap/dos.hpp"
#include "hfgap/quadrature.hpp"

#include <cstdint>
#include <utility>

namespace hfgap::gap {

/// Hubbard coupling u and hopping t, both in the same energy unit.
struct GapParams {
    double u = 1.0;
    double t = 1.0;

    void validate() const;
};

struct GapSolution {
    double delta = 0.0;                 ///< gap, same unit as t
    double residual = 0.0;              ///< |t/u - rhs(delta/t)|
    std::pair<double, double> bracket;  ///< final bracket, scaled by t
    int evaluations = 0;                ///< right-hand-side evaluations
};

struct AsymptoticComparison {
    double u = 0.0;
    double delta_numeric = 0.0;
    double delta_asymptotic = 0.0; ///< 32 exp(-2 pi / sqrt(u))
    double rel_dev = 0.0;          ///< |delta_numeric / delta_asymptotic - 1|
    double bound_scale = 0.0;      ///< exp(-4 pi / sqrt(u)) / sqrt(u)
};

struct SolverOptions {
    double residual_tol = 1e-12;
    int max_iterations = 200;
};

/// int_0^4 N0(e) / sqrt(delta^2 + e^2) de  (t = 1), evaluated with e = delta sinh(v).
double gap_rhs(double delta, const QuadratureConfig& cfg = {}, dos::Method method = dos::Method::elliptic);

/// Same quantity as a0 + I1(delta) + I2(delta) for a caller-supplied a0.
double gap_rhs_decomposed(double delta, double a0, const QuadratureConfig& cfg = {},
                          dos::Method method = dos::Method::elliptic);

/// Same quantity from the Brillouin-zone integral (pushforward oracle).
dos::PushforwardEstimate gap_rhs_pushforward(double delta, const QuadratureConfig& cfg = {},
                                             std::uint64_t seed = dos::kDefaultSeed);

/// Positive root of 1/u = rhs(delta) with hopping scaled out: delta(u, t) = t * delta(u/t, 1).
/// Throws ConvergenceError on bracket failure or if the residual stays above options.residual_tol.
GapSolution gap_solve(const GapParams& params, const QuadratureConfig& cfg = {}, const SolverOptions& options = {});

double i1_closed(double delta);
double i1_quadrature(double delta, const QuadratureConfig& cfg = {});
double i1_small_delta(double delta);
double i2_numeric(double delta, const QuadratureConfig& cfg = {}, dos::Method method = dos::Method::elliptic);

/// 32 exp(-sqrt(4 pi^2 / u + b1)).
double delta_asymptotic(double u, double b1 = 0.0);

double asymptotic_bound_scale(double u);

AsymptoticComparison compare_asymptotic(double u, const QuadratureConfig& cfg = {});

} // namespace hfgap::gap
