#pragma once

#include "hfgap/quadrature.hpp"

namespace hfgap::specfun {

/// Real dilogarithm Li2(x) on the principal branch, x <= 1.
/// Throws DomainError for x > 1 or NaN.
double dilog(double x);

/// Li2(-1/x) + Li2(-x) + (ln x)^2/2 + pi^2/6, which vanishes identically for x > 0.
double dilog_inversion_residual(double x);

/// Gamma(s/2) / Gamma(1/2 + s/2) for s > 0, evaluated through log-Gamma.
double gamma_ratio(double s);

/// Integral of cos(k)^(s-1) over [0, pi/2] from the Beta-function closed form.
double cosine_power_integral(double s);

/// Same integral by adaptive quadrature. For s < 1 the endpoint singularity at
/// pi/2 is removed with k = pi/2 - w^(1/s).
double cosine_power_integral_quadrature(double s, const QuadratureConfig& cfg = {});

/// artanh(x) given 1 - x, accurate when x is close to 1.
double artanh_from_complement(double one_minus_x);

} // namespace hfgap::specfun
