#pragma once

// Internal adaptive-quadrature helpers, private to the library sources.

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/quadrature/tanh_sinh.hpp>

#include <stdexcept>

namespace ggp::detail {

/// Adaptive Gauss-Kronrod on a finite interval, relative tolerance `tol`.
template <typename F>
double integrate(F&& f, double a, double b, double tol = 1e-12) {
    double error = 0.0;
    const double v = boost::math::quadrature::gauss_kronrod<double, 15>::integrate(
        std::forward<F>(f), a, b, 15, tol, &error);
    if (!(error <= tol * std::max(1.0, std::fabs(v)) * 100.0)) {
        throw std::runtime_error("quadrature did not reach requested tolerance");
    }
    return v;
}

/// tanh-sinh on a finite interval; tolerates integrable endpoint
/// singularities (x^{p} with p > -1).
template <typename F>
double integrate_singular(F&& f, double a, double b, double tol = 1e-12) {
    boost::math::quadrature::tanh_sinh<double> q;
    return q.integrate(std::forward<F>(f), a, b, tol);
}

} // namespace ggp::detail
