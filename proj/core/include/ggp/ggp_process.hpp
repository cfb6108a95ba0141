#pragma once

#include "ggp/distributions.hpp"
#include "ggp/rng.hpp"

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

namespace ggp {

/// Parameter vector of the GGP subordinator / NGGP process.
///
/// eta is a time scale, c an inverse scale, tau > 0 the power-law tail
/// exponent, and sigma < 1 the jump-activity parameter: the subordinator is
/// finite-activity for sigma < 0 and infinite-activity otherwise.
struct GgpParams {
    double eta;
    double sigma;
    double tau;
    double c;

    GgpParams(double eta_, double sigma_, double tau_, double c_);

    bool finite_activity() const { return sigma < 0.0; }
    /// Blumenthal-Getoor index of the subordinator, max(0, sigma).
    double bg_index() const { return sigma > 0.0 ? sigma : 0.0; }
};

/// One increment draw with its jump decomposition: value = gg_part + cp_part,
/// where cp_part sums jump_count compound-Poisson jumps. In the
/// finite-activity regime (sigma < 0) gg_part is identically zero.
struct IncrementSample {
    double value = 0.0;
    double gg_part = 0.0;
    double cp_part = 0.0;
    std::uint64_t jump_count = 0;
};

/// Levy intensity rho(w), w > 0; the general closed form valid for every
/// tau > 0, sigma < 1 (including tau <= sigma).
double levy_intensity(const GgpParams& p, double w);

/// Tail Levy intensity rho_bar(x) = int_x^inf rho(w) dw, by adaptive
/// quadrature up to the crossover max(100/c, 100x) plus the analytic
/// power-law remainder (whose relative error is below 1e-30 there).
double tail_intensity(const GgpParams& p, double x);

/// Laplace exponent psi(theta) with E[exp(-theta Z_t)] = exp(-t psi(theta)).
double laplace_exponent(const GgpParams& p, double theta);

/// m-th cumulant of Z_t, t*eta*(tau-sigma)/(c^m (tau-m)); requires m < tau.
double cumulant(const GgpParams& p, double t, int m);

/// Limit of rho_bar(x) * x^tau as x -> inf.
double tail_levy_constant(const GgpParams& p);
/// Limit of rho_bar(x) * x^sigma as x -> 0, defined for sigma > 0.
double small_jump_constant(const GgpParams& p);
/// Limit of nu_bar(x) * x^{2 tau} as x -> inf for the subordinated process.
double nggp_tail_constant(const GgpParams& p);

/// Exact increment sampler with all parameter-dependent setup precomputed;
/// construct once per parameter value, then draw in a tight loop.
class GgpIncrementSampler {
public:
    GgpIncrementSampler(const GgpParams& p, double t);

    IncrementSample operator()(RngStream& rng) const;

private:
    enum class Regime { CompoundPoisson, GammaMixture, TiltedMixture };
    Regime regime_;
    double tau_, c_;
    double cp_rate_;                           // Poisson rate of the CP component
    double jump_shape_;                        // gamma shape of one CP jump
    std::optional<GammaSampler> gg_gamma_;     // sigma == 0 diffuse part
    std::optional<TiltedStableSampler> gg_ts_; // sigma in (0,1) diffuse part
    std::optional<GammaSampler> cp_jump_;      // CP jump gamma factor
};

/// One draw of the subordinator increment Z_{t+s} - Z_s ~ GGP(t eta, sigma, tau, c).
IncrementSample sample_ggp_increment(RngStream& rng, const GgpParams& p, double t);

/// One draw of the subordinated-Brownian increment sqrt(Z_t) * N(0,1).
double sample_nggp_increment(RngStream& rng, const GgpParams& p, double t);

/// m-th cumulant of the NGGP increment: zero for odd m, closed form for
/// even m < 2 tau.
double nggp_cumulant(const GgpParams& p, double t, int m);

/// Intensity of the background driving Levy process of the
/// self-decomposable increment law; requires sigma >= 0.
double background_intensity(const GgpParams& p, double w);

/// Generalised BFRY law: the jump-size distribution of the finite-activity
/// regimes and the OU drivers.
struct GbfryParams {
    double kappa;
    double tau;
    double c;

    GbfryParams(double kappa_, double tau_, double c_);
};

double gbfry_pdf(const GbfryParams& g, double x);
/// E[X^m] = tau Gamma(m+kappa) / (c^m (tau-m) Gamma(kappa)); requires m < tau.
double gbfry_moment(const GbfryParams& g, int m);
/// Exact draw via Gamma(kappa, c) * Pareto(tau, 1).
double sample_gbfry(RngStream& rng, const GbfryParams& g);

/// Expected number of jumps of the subordinated process with absolute value
/// above x, per unit time: nu_bar(x) evaluated by quadrature of the
/// subordinated tail integral at each grid point.
std::vector<std::pair<double, double>> tauberian_check(const GgpParams& p,
                                                       const std::vector<double>& x_grid);

} // namespace ggp
