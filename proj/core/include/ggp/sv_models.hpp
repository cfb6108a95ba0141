#pragma once

#include "ggp/ggp_process.hpp"
#include "ggp/rng.hpp"

#include <cstddef>
#include <vector>

namespace ggp {

enum class SvModelKind { ExpLevy, OuGamma, OuGgp };

/// Stochastic-volatility model description.
///
/// ExpLevy: the integrated volatility over (t_{k-1}, t_k] is an independent
/// GGP increment. OuGamma / OuGgp: instantaneous volatility follows a
/// Levy-driven Ornstein-Uhlenbeck recursion with rate lambda whose
/// stationary marginal is Gamma(eta, c) resp. GGP(eta, 0, tau, c).
/// Returns are conditionally normal,
///   Y_k | Vbar_k ~ N(mu0 * Delta_k + mu1 * Vbar_k, Vbar_k).
struct SvModelSpec {
    SvModelKind kind;
    GgpParams marginal; // OuGamma reads only eta and c; OuGgp forces sigma = 0
    double mu0 = 0.0;
    double mu1 = 0.0;
    double lambda = 0.0; // OU mean-reversion rate; unused for ExpLevy

    static SvModelSpec exp_levy(const GgpParams& marginal, double mu0 = 0.0, double mu1 = 0.0);
    static SvModelSpec ou_gamma(double eta, double c, double lambda, double mu0 = 0.0,
                                double mu1 = 0.0);
    static SvModelSpec ou_ggp(double eta, double tau, double c, double lambda, double mu0 = 0.0,
                              double mu1 = 0.0);
};

/// Observed log-returns with their inter-arrival times; lengths match and
/// every delta is positive.
struct ReturnSeries {
    std::vector<double> y;
    std::vector<double> delta;

    std::size_t size() const { return y.size(); }
    void validate() const;
};

/// OU chain state after interval k: instantaneous volatility v, cumulated
/// driver z, and the integrated volatility vbar over the last interval.
struct OuState {
    double v = 0.0;
    double z = 0.0;
    double vbar = 0.0;
};

struct OuNoise {
    double eps_v = 0.0;
    double eps_z = 0.0;
};

/// Independent integrated volatilities Vbar_k ~ GGP(delta_k * eta, sigma, tau, c).
std::vector<double> sample_exp_levy_volatilities(RngStream& rng, const SvModelSpec& spec,
                                                 const std::vector<double>& delta);

/// Exact joint draw of the OU state noise over one interval: a Poisson
/// number of driver jumps with uniform arrival phases,
///   eps_v = e^{-lambda delta} sum_j e^{lambda theta_j} W_j,  eps_z = sum_j W_j,
/// with W_j ~ Exp(c) (gamma marginal) or Exp(c)*Pareto(tau,1) (GGP marginal).
/// eps_v <= eps_z always.
OuNoise sample_ou_noise(RngStream& rng, const SvModelSpec& spec, double delta_k);

/// Deterministic OU recursion step given the noise; vbar is clamped at zero
/// after an exact-arithmetic sanity check.
OuState ou_step(const OuState& prev, const OuNoise& eps, double lambda, double delta_k);

/// Draw V_0 from the stationary marginal F of the OU model.
double sample_ou_initial(RngStream& rng, const SvModelSpec& spec);

/// Simulate the OU chain over the given intervals, starting from V_0 ~ F.
std::vector<OuState> simulate_ou_path(RngStream& rng, const SvModelSpec& spec,
                                      const std::vector<double>& delta);

/// log N(y_k; mu0 delta_k + mu1 vbar_k, vbar_k). A zero vbar is a point
/// mass: returns 0.0 when y_k hits the mean exactly and -infinity
/// otherwise (a weight flag for the inference layer, never a throw).
double observation_logdensity(const SvModelSpec& spec, double y_k, double delta_k, double vbar_k);

/// Emit one return given its integrated volatility.
double emit_return(RngStream& rng, const SvModelSpec& spec, double delta_k, double vbar_k);

/// Full generative pass: latent volatilities plus conditionally normal
/// returns. Returns the series and the latent vbar path used.
std::pair<ReturnSeries, std::vector<double>> simulate_returns(RngStream& rng,
                                                              const SvModelSpec& spec,
                                                              const std::vector<double>& delta);

} // namespace ggp
