#include "ggp/distributions.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace ggp {

namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr double kSqrtPi = 1.77245385090551602730;
constexpr double kSqrtHalfPi = 1.25331413731550025121; // sqrt(pi/2)
constexpr std::uint64_t kRejectionCap = 1'000'000;

[[noreturn]] void rejection_overrun(const char* who) {
    throw std::runtime_error(std::string(who) +
                             ": rejection loop exceeded its iteration cap; "
                             "parameters are far outside the supported regime");
}

// B(x)/B(0) with B(x) = sin(x) / (sin(ax)^a sin((1-a)x)^(1-a)); decreasing
// from 1 at x=0 to 0 at x=pi.
double zolotarev_bdb0(double x, double alpha) {
    const double sx = std::sin(x);
    const double sax = std::sin(alpha * x);
    const double s1ax = std::sin((1.0 - alpha) * x);
    return std::pow(alpha * sx / sax, alpha) * std::pow((1.0 - alpha) * sx / s1ax, 1.0 - alpha);
}

// Zolotarev/Kanter function A(x) = [sin(ax)^a sin((1-a)x)^(1-a) / sin(x)]^{1/(1-a)}.
double zolotarev_a(double x, double alpha) {
    const double log_a = (alpha * std::log(std::sin(alpha * x)) +
                          (1.0 - alpha) * std::log(std::sin((1.0 - alpha) * x)) -
                          std::log(std::sin(x))) /
                         (1.0 - alpha);
    return std::exp(log_a);
}

} // namespace

TiltedStableParams::TiltedStableParams(double mass_, double sigma_, double tilt_)
    : mass(mass_), sigma(sigma_), tilt(tilt_) {
    if (!(mass > 0.0) || !std::isfinite(mass))
        throw std::domain_error("TiltedStableParams: require mass > 0");
    if (!(sigma > 0.0 && sigma < 1.0))
        throw std::domain_error("TiltedStableParams: require sigma in (0,1)");
    if (!(tilt > 0.0) || !std::isfinite(tilt))
        throw std::domain_error("TiltedStableParams: require tilt > 0");
}

TiltedStableSampler::TiltedStableSampler(const TiltedStableParams& p)
    : alpha_(p.sigma), mass_(p.mass), tilt_(p.tilt) {
    // Draws follow GG(mass, sigma, tilt): with V0 = mass/sigma the target
    // Laplace transform is exp(-V0((tilt+theta)^sigma - tilt^sigma)), which
    // is V0^{1/sigma} times a standard stable tilted by lambda.
    const double v0 = mass_ / alpha_;
    const double log_v0 = std::log(v0);
    scale_ = std::exp(log_v0 / alpha_);
    b_ = (1.0 - alpha_) / alpha_;
    log_lambda_ = std::log(tilt_) + log_v0 / alpha_;
    lambda_ = std::exp(log_lambda_);
    lambda_alpha_ = std::pow(tilt_, alpha_) * v0;

    gamma_ = lambda_alpha_ * alpha_ * (1.0 - alpha_);
    sqrt_gamma_ = std::sqrt(gamma_);
    const double c3 = (2.0 + kSqrtHalfPi) * sqrt_gamma_;
    xi_ = (1.0 + std::sqrt(2.0) * c3) / kPi;
    psi_ = c3 * std::exp(-gamma_ * kPi * kPi / 8.0) / kSqrtPi;
    w1_ = kSqrtHalfPi * xi_ / sqrt_gamma_;
    w2_ = 2.0 * kSqrtPi * psi_;
    w3_ = xi_ * kPi;
}

double TiltedStableSampler::laplace_exponent(double theta) const {
    return (mass_ / alpha_) * (std::pow(theta + tilt_, alpha_) - std::pow(tilt_, alpha_));
}

// Devroye (2009): double-rejection sampling of the exponentially tilted
// stable law, uniformly fast over the whole tilt range. Stage one draws the
// Zolotarev angle U from a three-piece hat; stage two draws the radial part
// around the conditional mode m with a normal/uniform/exponential hat and
// recycles the stage-one acceptance residual as the exponential budget E.
double TiltedStableSampler::operator()(RngStream& rng) const {
    for (std::uint64_t iter = 0; iter < kRejectionCap; ++iter) {
        // --- stage 1: angle U and leftover exponential E
        double u_angle, zeta, z, log_accept;
        {
            const double v = rng.uniform();
            if (gamma_ >= 1.0) {
                if (v < w1_ / (w1_ + w2_)) {
                    u_angle = std::fabs(rng.normal()) / sqrt_gamma_;
                } else {
                    const double w = rng.uniform();
                    u_angle = kPi * (1.0 - w * w);
                }
            } else {
                const double w = rng.uniform();
                u_angle = (v < w3_ / (w3_ + w2_)) ? kPi * w : kPi * (1.0 - w * w);
            }
            if (!(u_angle > 0.0 && u_angle < kPi)) continue;

            zeta = std::sqrt(zolotarev_bdb0(u_angle, alpha_));
            z = 1.0 / (1.0 - std::pow(1.0 + alpha_ * zeta / sqrt_gamma_, -1.0 / alpha_));

            double hat = 0.0;
            if (gamma_ >= 1.0) hat += xi_ * std::exp(-gamma_ * u_angle * u_angle / 2.0);
            hat += psi_ / std::sqrt(kPi - u_angle);
            if (gamma_ < 1.0) hat += xi_;

            // log of W*rho, kept in logs so the near-pi blowup cannot overflow
            const double log_rho = std::log(kPi) + lambda_alpha_ * (1.0 / (zeta * zeta) - 1.0) +
                                   std::log(hat) -
                                   std::log((1.0 + kSqrtHalfPi) * sqrt_gamma_ / zeta + z);
            log_accept = std::log(rng.uniform()) + log_rho;
            if (!(log_accept <= 0.0)) continue;
        }

        // --- stage 2: radial draw X (in inverse-power space) given the angle
        const double a = zolotarev_a(u_angle, alpha_);
        const double m = std::pow(b_ / a, alpha_) * lambda_alpha_;
        const double delta = std::sqrt(m * alpha_ / a);
        const double a1 = delta * kSqrtHalfPi;
        const double a3 = z / a;
        const double total = a1 + delta + a3;

        double x, n_draw = 0.0, e_draw = 0.0;
        const double pick = rng.uniform() * total;
        if (pick < a1) {
            n_draw = rng.normal();
            x = m - delta * std::fabs(n_draw);
        } else if (pick < a1 + delta) {
            x = m + delta * rng.uniform();
        } else {
            e_draw = rng.exponential();
            x = m + delta + e_draw * a3;
        }
        if (!(x > 0.0)) continue;

        const double budget = -log_accept; // Exp(1) leftover from stage 1
        // drop of the log target from its mode; the lambda*x^{-b} terms are
        // evaluated in logs because lambda overflows for small alpha
        double drop = a * (x - m) + std::exp(log_lambda_ - b_ * std::log(x)) -
                      std::exp(log_lambda_ - b_ * std::log(m));
        if (x < m) {
            drop -= n_draw * n_draw / 2.0;
        } else if (x > m + delta) {
            drop -= e_draw;
        }
        if (drop <= budget) {
            return scale_ * std::exp(-b_ * std::log(x));
        }
    }
    rejection_overrun("TiltedStableSampler");
}

double sample_tilted_stable(RngStream& rng, const TiltedStableParams& p) {
    return TiltedStableSampler(p)(rng);
}

GammaSampler::GammaSampler(double shape, double rate) : shape_(shape), rate_(rate) {
    if (!(shape > 0.0) || !std::isfinite(shape))
        throw std::domain_error("GammaSampler: require shape > 0");
    if (!(rate > 0.0) || !std::isfinite(rate))
        throw std::domain_error("GammaSampler: require rate > 0");
    const double d_shape = (shape < 1.0) ? shape + 1.0 : shape;
    d_ = d_shape - 1.0 / 3.0;
    c_ = 1.0 / std::sqrt(9.0 * d_);
    boost_exp_ = (shape < 1.0) ? 1.0 / shape : 0.0;
}

// Marsaglia and Tsang (2000) squeeze; shapes below one use the shape+1 draw
// scaled by U^{1/shape}.
double GammaSampler::operator()(RngStream& rng) const {
    for (std::uint64_t iter = 0; iter < kRejectionCap; ++iter) {
        const double n = rng.normal();
        const double t = 1.0 + c_ * n;
        if (t <= 0.0) continue;
        const double v = t * t * t;
        const double u = rng.uniform();
        const double n2 = n * n;
        if (u < 1.0 - 0.0331 * n2 * n2 ||
            std::log(u) < 0.5 * n2 + d_ * (1.0 - v + std::log(v))) {
            double g = d_ * v / rate_;
            if (boost_exp_ > 0.0) g *= std::pow(rng.uniform(), boost_exp_);
            return g;
        }
    }
    rejection_overrun("GammaSampler");
}

double sample_gamma(RngStream& rng, double shape, double rate) {
    return GammaSampler(shape, rate)(rng);
}

double sample_beta(RngStream& rng, double a, double b) {
    const double x = sample_gamma(rng, a, 1.0);
    const double y = sample_gamma(rng, b, 1.0);
    return x / (x + y);
}

double pareto_icdf(double u, double tail, double scale) {
    return scale * std::pow(u, -1.0 / tail);
}

double sample_pareto(RngStream& rng, double tail, double scale) {
    if (!(tail > 0.0) || !std::isfinite(tail))
        throw std::domain_error("sample_pareto: require tail > 0");
    if (!(scale > 0.0) || !std::isfinite(scale))
        throw std::domain_error("sample_pareto: require scale > 0");
    return pareto_icdf(rng.uniform(), tail, scale);
}

namespace {

// Hormann (1993) PTRS transformed rejection, exact for rate >= 10.
std::uint64_t poisson_ptrs(RngStream& rng, double rate) {
    const double slam = std::sqrt(rate);
    const double loglam = std::log(rate);
    const double b = 0.931 + 2.53 * slam;
    const double a = -0.059 + 0.02483 * b;
    const double inv_alpha = 1.1239 + 1.1328 / (b - 3.4);
    const double vr = 0.9277 - 3.6224 / (b - 2.0);
    for (std::uint64_t iter = 0; iter < kRejectionCap; ++iter) {
        const double u = rng.uniform() - 0.5;
        const double v = rng.uniform();
        const double us = 0.5 - std::fabs(u);
        const double kf = std::floor((2.0 * a / us + b) * u + rate + 0.43);
        if (us >= 0.07 && v <= vr) return static_cast<std::uint64_t>(kf);
        if (kf < 0.0 || (us < 0.013 && v > us)) continue;
        if (std::log(v) + std::log(inv_alpha) - std::log(a / (us * us) + b) <=
            kf * loglam - rate - std::lgamma(kf + 1.0)) {
            return static_cast<std::uint64_t>(kf);
        }
    }
    rejection_overrun("poisson_ptrs");
}

} // namespace

std::uint64_t sample_poisson(RngStream& rng, double rate) {
    if (!(rate >= 0.0) || !std::isfinite(rate))
        throw std::domain_error("sample_poisson: require finite rate >= 0");
    if (rate == 0.0) return 0;
    if (rate >= 10.0) return poisson_ptrs(rng, rate);
    // Knuth multiplication for small rates
    const double limit = std::exp(-rate);
    std::uint64_t k = 0;
    double prod = rng.uniform();
    while (prod > limit) {
        ++k;
        prod *= rng.uniform();
    }
    return k;
}

double sample_gg_increment(RngStream& rng, double eta_t, double sigma, double c) {
    if (!(eta_t > 0.0) || !std::isfinite(eta_t))
        throw std::domain_error("sample_gg_increment: require eta_t > 0");
    if (!(c > 0.0) || !std::isfinite(c))
        throw std::domain_error("sample_gg_increment: require c > 0");
    if (!(sigma < 1.0))
        throw std::domain_error("sample_gg_increment: require sigma < 1");
    if (std::fabs(sigma) < 1e-10) {
        return sample_gamma(rng, eta_t, c);
    }
    if (sigma < 0.0) {
        // compound Poisson-gamma: the summed jumps collapse to one gamma draw
        const std::uint64_t k = sample_poisson(rng, eta_t * std::pow(c, sigma) / (-sigma));
        if (k == 0) return 0.0;
        return sample_gamma(rng, -sigma * static_cast<double>(k), c);
    }
    return sample_tilted_stable(rng, TiltedStableParams(eta_t, sigma, c));
}

} // namespace ggp
