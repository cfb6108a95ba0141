#pragma once

#include <cmath>

namespace ggp {

/// Value of a special-function evaluation together with a conservative
/// absolute error bound.
struct EvalResult {
    double value = 0.0;
    double abs_err_bound = 0.0;
};

/// ln Gamma(s) for s > 0. Throws std::domain_error otherwise.
double log_gamma(double s);

/// Lower incomplete gamma function gamma(s, x) = int_0^x t^{s-1} e^{-t} dt,
/// s > 0, x >= 0. Power series for x < s+1, continued fraction for the
/// complement otherwise, both run to 1e-14 term ratios.
EvalResult lower_incomplete_gamma(double s, double x);

/// Regularized P(s, x) = gamma(s, x) / Gamma(s) in [0, 1].
double regularized_gamma_p(double s, double x);

/// s*gamma(s,x) - gamma(s+1,x) - x^s e^{-x}; identically zero in exact
/// arithmetic, exposed for accuracy monitoring.
double gamma_recurrence_residual(double s, double x);

/// Regularized incomplete beta I_x(a, b), a, b > 0, x in [0, 1].
double regularized_beta(double a, double b, double x);

} // namespace ggp
