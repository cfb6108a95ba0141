#include "ggp/ggp_process.hpp"

#include "ggp/special_functions.hpp"
#include "quadrature.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace ggp {

namespace {

constexpr double kSqrtPi = 1.77245385090551602730;
constexpr double kSigmaZeroSnap = 1e-10; // |sigma| below this is treated as exactly 0

void validate_positive(double v, const char* name) {
    if (!(v > 0.0) || !std::isfinite(v))
        throw std::domain_error(std::string("GgpParams: require ") + name + " > 0");
}

} // namespace

GgpParams::GgpParams(double eta_, double sigma_, double tau_, double c_)
    : eta(eta_), sigma(sigma_), tau(tau_), c(c_) {
    validate_positive(eta, "eta");
    validate_positive(tau, "tau");
    validate_positive(c, "c");
    if (!(sigma < 1.0) || !std::isfinite(sigma))
        throw std::domain_error("GgpParams: require sigma < 1");
    if (std::fabs(sigma) < kSigmaZeroSnap) sigma = 0.0;
}

double levy_intensity(const GgpParams& p, double w) {
    if (!(w > 0.0)) throw std::domain_error("levy_intensity: require w > 0");
    const double s = p.tau - p.sigma + 1.0;
    const double cw = p.c * w;
    const double bracket = lower_incomplete_gamma(s, cw).value +
                           std::exp((p.tau - p.sigma) * std::log(cw) - cw);
    const double log_front = std::log(p.eta) - p.tau * std::log(p.c) - log_gamma(1.0 - p.sigma) -
                             (1.0 + p.tau) * std::log(w);
    return std::exp(log_front) * bracket;
}

double tail_levy_constant(const GgpParams& p) {
    return std::exp(std::log(p.eta) + log_gamma(p.tau - p.sigma + 1.0) - std::log(p.tau) -
                    p.tau * std::log(p.c) - log_gamma(1.0 - p.sigma));
}

double small_jump_constant(const GgpParams& p) {
    if (!(p.sigma > 0.0)) throw std::domain_error("small_jump_constant: require sigma > 0");
    return p.eta / (std::pow(p.c, p.sigma) * p.sigma * std::exp(log_gamma(1.0 - p.sigma)));
}

double nggp_tail_constant(const GgpParams& p) {
    return std::exp((p.tau + 1.0) * std::log(2.0) + log_gamma(p.tau + 0.5)) / kSqrtPi *
           tail_levy_constant(p);
}

double tail_intensity(const GgpParams& p, double x) {
    if (!(x > 0.0)) throw std::domain_error("tail_intensity: require x > 0");
    const double crossover = std::max(100.0 / p.c, 100.0 * x);
    // log substitution keeps the power-law integrand well conditioned over
    // many decades
    const double numeric = detail::integrate(
        [&](double v) {
            const double w = std::exp(v);
            return levy_intensity(p, w) * w;
        },
        std::log(x), std::log(crossover), 1e-10);
    const double tail = tail_levy_constant(p) * std::pow(crossover, -p.tau);
    return numeric + tail;
}

double laplace_exponent(const GgpParams& p, double theta) {
    if (!(theta >= 0.0) || !std::isfinite(theta))
        throw std::domain_error("laplace_exponent: require finite theta >= 0");
    if (theta == 0.0) return 0.0;
    // int_0^c (u+theta)^{sigma-1} u^{tau-sigma} du; the endpoint u=0 carries
    // an integrable singularity when tau < sigma
    const double inner = detail::integrate_singular(
        [&](double u) {
            return std::pow(u + theta, p.sigma - 1.0) * std::pow(u, p.tau - p.sigma);
        },
        0.0, p.c, 1e-12);
    double last;
    if (p.sigma == 0.0) {
        last = std::pow(p.c, p.tau) * std::log1p(theta / p.c); // removable singularity
    } else {
        last = std::pow(p.c, p.tau - p.sigma) / p.sigma *
               (std::pow(theta + p.c, p.sigma) - std::pow(p.c, p.sigma));
    }
    const double ctau = std::pow(p.c, p.tau);
    return p.eta / ctau * (ctau / p.tau - inner + last);
}

double cumulant(const GgpParams& p, double t, int m) {
    if (!(t > 0.0)) throw std::domain_error("cumulant: require t > 0");
    if (m < 1) throw std::domain_error("cumulant: require m >= 1");
    if (!(static_cast<double>(m) < p.tau))
        throw std::domain_error("cumulant: moment of order m >= tau diverges");
    return t * p.eta * (p.tau - p.sigma) / (std::pow(p.c, m) * (p.tau - static_cast<double>(m)));
}

GgpIncrementSampler::GgpIncrementSampler(const GgpParams& p, double t) : tau_(p.tau), c_(p.c) {
    if (!(t > 0.0) || !std::isfinite(t))
        throw std::domain_error("GgpIncrementSampler: require t > 0");
    const double eta_t = p.eta * t;
    if (p.sigma < 0.0) {
        regime_ = Regime::CompoundPoisson;
        cp_rate_ = eta_t * (p.tau - p.sigma) / (-p.sigma * p.tau);
        jump_shape_ = -p.sigma;
        cp_jump_.emplace(jump_shape_, p.c);
        return;
    }
    // infinite-activity mixture: diffuse GG(eta_t / c^sigma, sigma, c) part
    // plus a compound Poisson part with rate eta_t / tau
    cp_rate_ = eta_t / p.tau;
    jump_shape_ = 1.0 - p.sigma;
    cp_jump_.emplace(jump_shape_, p.c);
    if (p.sigma == 0.0) {
        regime_ = Regime::GammaMixture;
        gg_gamma_.emplace(eta_t, p.c);
    } else {
        regime_ = Regime::TiltedMixture;
        gg_ts_.emplace(TiltedStableParams(eta_t / std::pow(p.c, p.sigma), p.sigma, p.c));
    }
}

IncrementSample GgpIncrementSampler::operator()(RngStream& rng) const {
    IncrementSample out;
    out.jump_count = sample_poisson(rng, cp_rate_);
    for (std::uint64_t j = 0; j < out.jump_count; ++j) {
        out.cp_part += (*cp_jump_)(rng) * sample_pareto(rng, tau_, 1.0);
    }
    if (regime_ == Regime::GammaMixture) {
        out.gg_part = (*gg_gamma_)(rng);
    } else if (regime_ == Regime::TiltedMixture) {
        out.gg_part = (*gg_ts_)(rng);
    }
    out.value = out.gg_part + out.cp_part;
    return out;
}

IncrementSample sample_ggp_increment(RngStream& rng, const GgpParams& p, double t) {
    return GgpIncrementSampler(p, t)(rng);
}

double sample_nggp_increment(RngStream& rng, const GgpParams& p, double t) {
    const double z = GgpIncrementSampler(p, t)(rng).value;
    return std::sqrt(z) * rng.normal();
}

double nggp_cumulant(const GgpParams& p, double t, int m) {
    if (!(t > 0.0)) throw std::domain_error("nggp_cumulant: require t > 0");
    if (m < 1) throw std::domain_error("nggp_cumulant: require m >= 1");
    if (!(static_cast<double>(m) < 2.0 * p.tau))
        throw std::domain_error("nggp_cumulant: moment of order m >= 2 tau diverges");
    if (m % 2 == 1) return 0.0;
    const double half = static_cast<double>(m) / 2.0;
    return t * p.eta * (p.tau - p.sigma) * std::pow(2.0, half) *
           std::exp(log_gamma(half + 0.5)) /
           (std::pow(p.c, half) * (p.tau - half) * kSqrtPi);
}

double background_intensity(const GgpParams& p, double w) {
    if (p.sigma < 0.0)
        throw std::domain_error(
            "background_intensity: defined only for the self-decomposable regime sigma >= 0");
    if (!(w > 0.0)) throw std::domain_error("background_intensity: require w > 0");
    const double lg1ms = log_gamma(1.0 - p.sigma);
    const double cw = p.c * w;
    double first = 0.0;
    if (p.sigma > 0.0) {
        first = p.eta * p.sigma *
                std::exp(-p.sigma * std::log(p.c) - lg1ms - (1.0 + p.sigma) * std::log(w) - cw);
    }
    const double second =
        p.eta * p.tau *
        std::exp(-p.tau * std::log(p.c) - lg1ms - (1.0 + p.tau) * std::log(w)) *
        lower_incomplete_gamma(p.tau - p.sigma + 1.0, cw).value;
    return first + second;
}

GbfryParams::GbfryParams(double kappa_, double tau_, double c_)
    : kappa(kappa_), tau(tau_), c(c_) {
    validate_positive(kappa, "kappa");
    validate_positive(tau, "tau");
    validate_positive(c, "c");
}

double gbfry_pdf(const GbfryParams& g, double x) {
    if (!(x > 0.0)) throw std::domain_error("gbfry_pdf: require x > 0");
    const double cx = g.c * x;
    const double log_front = std::log(g.tau) - g.tau * std::log(g.c) - log_gamma(g.kappa) -
                             (1.0 + g.tau) * std::log(x);
    return std::exp(log_front) * lower_incomplete_gamma(g.kappa + g.tau, cx).value;
}

double gbfry_moment(const GbfryParams& g, int m) {
    if (!(static_cast<double>(m) < g.tau))
        throw std::domain_error("gbfry_moment: moment of order m >= tau diverges");
    return g.tau * std::exp(log_gamma(m + g.kappa) - log_gamma(g.kappa)) /
           (std::pow(g.c, m) * (g.tau - static_cast<double>(m)));
}

double sample_gbfry(RngStream& rng, const GbfryParams& g) {
    return sample_gamma(rng, g.kappa, g.c) * sample_pareto(rng, g.tau, 1.0);
}

std::vector<std::pair<double, double>> tauberian_check(const GgpParams& p,
                                                       const std::vector<double>& x_grid) {
    if (x_grid.empty()) throw std::domain_error("tauberian_check: empty grid");
    std::vector<std::pair<double, double>> out;
    out.reserve(x_grid.size());
    for (double x : x_grid) {
        if (!(x > 0.0)) throw std::domain_error("tauberian_check: require x > 0");
        // nu_bar(x) = (2x/sqrt(pi)) int_0^inf u^{-1/2} e^{-u x^2} rho_bar(1/(2u)) du,
        // after u = (s/x)^2:  (4/sqrt(pi)) int_0^inf e^{-s^2} rho_bar(x^2/(2 s^2)) ds
        const double nu = 4.0 / kSqrtPi *
                          detail::integrate(
                              [&](double s) {
                                  return std::exp(-s * s) * tail_intensity(p, x * x / (2.0 * s * s));
                              },
                              1e-8, 8.5, 1e-8);
        out.emplace_back(x, nu);
    }
    return out;
}

} // namespace ggp
