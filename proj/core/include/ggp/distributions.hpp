#pragma once

#include "ggp/rng.hpp"

#include <cstdint>

namespace ggp {

/// Parameters of the exponentially tilted positive stable law drawn by
/// TiltedStableSampler. A draw Y satisfies
///   E[exp(-theta Y)] = exp(-(mass/sigma) * ((theta + tilt)^sigma - tilt^sigma)),
/// i.e. Y follows the generalised gamma law GG(mass, sigma, tilt).
struct TiltedStableParams {
    double mass;  ///< total shape mass (eta*t/c^sigma in the mixture form)
    double sigma; ///< stability index, strictly inside (0, 1)
    double tilt;  ///< exponential tilt, strictly positive here

    TiltedStableParams(double mass_, double sigma_, double tilt_);
};

/// Devroye's double-rejection sampler for the exponentially tilted stable
/// law. Setup work (all the tilt-dependent constants) happens once in the
/// constructor so repeated draws with fixed parameters are cheap.
class TiltedStableSampler {
public:
    explicit TiltedStableSampler(const TiltedStableParams& p);

    double operator()(RngStream& rng) const;

    /// Laplace exponent of a draw: -log E[exp(-theta Y)].
    double laplace_exponent(double theta) const;

private:
    double alpha_;
    double scale_;        // V0^{1/alpha}
    double b_;            // (1-alpha)/alpha
    double lambda_;       // tilt * V0^{1/alpha}
    double log_lambda_;
    double lambda_alpha_; // lambda^alpha = tilt^alpha * V0
    double gamma_;
    double sqrt_gamma_;
    double xi_, psi_;
    double w1_, w2_, w3_;
    double mass_, tilt_;
};

/// Gamma(shape, rate) sampler, mean shape/rate. Marsaglia-Tsang squeeze
/// with the shape+1 boost for shape < 1; exact for every shape > 0.
class GammaSampler {
public:
    GammaSampler(double shape, double rate);
    double operator()(RngStream& rng) const;

private:
    double shape_, rate_, d_, c_, boost_exp_;
};

double sample_gamma(RngStream& rng, double shape, double rate);
double sample_beta(RngStream& rng, double a, double b);

/// Pareto(tail, scale) supported on [scale, inf); inverse CDF scale*U^{-1/tail}.
double sample_pareto(RngStream& rng, double tail, double scale);
double pareto_icdf(double u, double tail, double scale);

/// Exact Poisson(rate) draw; Knuth multiplication below rate 10, Hormann's
/// PTRS transformed rejection above.
std::uint64_t sample_poisson(RngStream& rng, double rate);

double sample_tilted_stable(RngStream& rng, const TiltedStableParams& p);

/// One draw from the generalised gamma law GG(eta_t, sigma, c):
/// Gamma(eta_t, c) at sigma = 0, compound Poisson-gamma for sigma < 0
/// (an atom at zero of mass exp(-eta_t c^sigma / -sigma)), exponentially
/// tilted stable for sigma in (0, 1).
double sample_gg_increment(RngStream& rng, double eta_t, double sigma, double c);

} // namespace ggp
