#include "ggp/sv_models.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace ggp {

namespace {
constexpr double kLog2Pi = 1.83787706640934548356;
constexpr double kNegInf = -std::numeric_limits<double>::infinity();

void require_ou(const SvModelSpec& spec, const char* who) {
    if (spec.kind == SvModelKind::ExpLevy)
        throw std::domain_error(std::string(who) + ": OU model required");
}
} // namespace

SvModelSpec SvModelSpec::exp_levy(const GgpParams& marginal, double mu0, double mu1) {
    return SvModelSpec{SvModelKind::ExpLevy, marginal, mu0, mu1, 0.0};
}

SvModelSpec SvModelSpec::ou_gamma(double eta, double c, double lambda, double mu0, double mu1) {
    if (!(lambda > 0.0) || !std::isfinite(lambda))
        throw std::domain_error("SvModelSpec: require lambda > 0 for OU models");
    // tau is unused by the gamma marginal; the placeholder keeps GgpParams valid
    return SvModelSpec{SvModelKind::OuGamma, GgpParams(eta, 0.0, 1.0, c), mu0, mu1, lambda};
}

SvModelSpec SvModelSpec::ou_ggp(double eta, double tau, double c, double lambda, double mu0,
                                double mu1) {
    if (!(lambda > 0.0) || !std::isfinite(lambda))
        throw std::domain_error("SvModelSpec: require lambda > 0 for OU models");
    return SvModelSpec{SvModelKind::OuGgp, GgpParams(eta, 0.0, tau, c), mu0, mu1, lambda};
}

void ReturnSeries::validate() const {
    if (y.size() != delta.size())
        throw std::invalid_argument("ReturnSeries: y and delta lengths differ");
    for (double d : delta) {
        if (!(d > 0.0) || !std::isfinite(d))
            throw std::invalid_argument("ReturnSeries: every delta must be positive and finite");
    }
}

std::vector<double> sample_exp_levy_volatilities(RngStream& rng, const SvModelSpec& spec,
                                                 const std::vector<double>& delta) {
    if (spec.kind != SvModelKind::ExpLevy)
        throw std::domain_error("sample_exp_levy_volatilities: ExpLevy spec required");
    std::vector<double> vbar;
    vbar.reserve(delta.size());
    for (double d : delta) {
        vbar.push_back(GgpIncrementSampler(spec.marginal, d)(rng).value);
    }
    return vbar;
}

OuNoise sample_ou_noise(RngStream& rng, const SvModelSpec& spec, double delta_k) {
    require_ou(spec, "sample_ou_noise");
    if (!(delta_k > 0.0)) throw std::domain_error("sample_ou_noise: require delta_k > 0");
    const double eta = spec.marginal.eta;
    const double c = spec.marginal.c;
    const double lam = spec.lambda;
    const std::uint64_t n = sample_poisson(rng, eta * lam * delta_k);
    OuNoise eps;
    for (std::uint64_t j = 0; j < n; ++j) {
        double w = rng.exponential() / c;
        if (spec.kind == SvModelKind::OuGgp) w *= sample_pareto(rng, spec.marginal.tau, 1.0);
        const double theta = rng.uniform(0.0, delta_k);
        eps.eps_z += w;
        eps.eps_v += std::exp(lam * (theta - delta_k)) * w;
    }
    return eps;
}

OuState ou_step(const OuState& prev, const OuNoise& eps, double lambda, double delta_k) {
    OuState next;
    const double decay = std::exp(-lambda * delta_k);
    next.v = decay * prev.v + eps.eps_v;
    next.z = prev.z + eps.eps_z;
    // lambda * vbar = (z_k - v_k) - (z_{k-1} - v_{k-1}); nonnegative up to roundoff
    const double raw = (eps.eps_z - eps.eps_v + prev.v * (1.0 - decay)) / lambda;
    if (raw < -1e-12 * std::max(1.0, next.z))
        throw std::logic_error("ou_step: integrated volatility went negative");
    next.vbar = raw > 0.0 ? raw : 0.0;
    return next;
}

double sample_ou_initial(RngStream& rng, const SvModelSpec& spec) {
    require_ou(spec, "sample_ou_initial");
    if (spec.kind == SvModelKind::OuGamma) {
        return sample_gamma(rng, spec.marginal.eta, spec.marginal.c);
    }
    // stationary law GGP(eta, 0, tau, c): the unit-time increment draw
    return GgpIncrementSampler(spec.marginal, 1.0)(rng).value;
}

std::vector<OuState> simulate_ou_path(RngStream& rng, const SvModelSpec& spec,
                                      const std::vector<double>& delta) {
    require_ou(spec, "simulate_ou_path");
    std::vector<OuState> path;
    path.reserve(delta.size());
    OuState state;
    state.v = sample_ou_initial(rng, spec);
    for (double d : delta) {
        state = ou_step(state, sample_ou_noise(rng, spec, d), spec.lambda, d);
        path.push_back(state);
    }
    return path;
}

double observation_logdensity(const SvModelSpec& spec, double y_k, double delta_k, double vbar_k) {
    if (vbar_k < 0.0 || !std::isfinite(vbar_k))
        throw std::domain_error("observation_logdensity: require vbar_k >= 0");
    const double mean = spec.mu0 * delta_k + spec.mu1 * vbar_k;
    if (vbar_k == 0.0) return (y_k == mean) ? 0.0 : kNegInf;
    const double r = y_k - mean;
    return -0.5 * (kLog2Pi + std::log(vbar_k) + r * r / vbar_k);
}

double emit_return(RngStream& rng, const SvModelSpec& spec, double delta_k, double vbar_k) {
    return spec.mu0 * delta_k + spec.mu1 * vbar_k + std::sqrt(vbar_k) * rng.normal();
}

std::pair<ReturnSeries, std::vector<double>> simulate_returns(RngStream& rng,
                                                              const SvModelSpec& spec,
                                                              const std::vector<double>& delta) {
    std::vector<double> vbar;
    if (spec.kind == SvModelKind::ExpLevy) {
        vbar = sample_exp_levy_volatilities(rng, spec, delta);
    } else {
        const auto path = simulate_ou_path(rng, spec, delta);
        vbar.reserve(path.size());
        for (const auto& s : path) vbar.push_back(s.vbar);
    }
    ReturnSeries series;
    series.delta = delta;
    series.y.reserve(delta.size());
    for (std::size_t k = 0; k < delta.size(); ++k) {
        series.y.push_back(emit_return(rng, spec, delta[k], vbar[k]));
    }
    return {std::move(series), std::move(vbar)};
}

} // namespace ggp
