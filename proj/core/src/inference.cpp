#include "ggp/inference.hpp"

#include "ggp/special_functions.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <thread>

namespace ggp {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();
constexpr std::uint64_t kEstimateStreamTag = 0x6573746d74ULL; // substream namespace

double logsumexp(const std::vector<double>& v) {
    double mx = kNegInf;
    for (double x : v) mx = std::max(mx, x);
    if (mx == kNegInf) return kNegInf;
    double s = 0.0;
    for (double x : v) s += std::exp(x - mx);
    return mx + std::log(s);
}

double gamma_logpdf(double x, double shape, double rate) {
    if (!(x > 0.0)) return kNegInf;
    return shape * std::log(rate) - log_gamma(shape) + (shape - 1.0) * std::log(x) - rate * x;
}

unsigned resolve_threads(unsigned requested) {
    if (requested != 0) return requested;
    const unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1 : hw;
}

} // namespace

void McmcConfig::validate() const {
    if (n_iters == 0) throw std::invalid_argument("McmcConfig: n_iters must be positive");
    if (n_burnin >= n_iters)
        throw std::invalid_argument("McmcConfig: n_burnin must be below n_iters");
    if (n_particles == 0) throw std::invalid_argument("McmcConfig: n_particles must be positive");
    if (n_chains == 0) throw std::invalid_argument("McmcConfig: n_chains must be positive");
    if (latent_thin == 0) throw std::invalid_argument("McmcConfig: latent_thin must be positive");
    for (double s : proposal_step) {
        if (!(s > 0.0)) throw std::invalid_argument("McmcConfig: proposal steps must be positive");
    }
}

ParamLayout ParamLayout::for_model(SvModelKind kind, bool sigma_unconstrained) {
    ParamLayout layout;
    layout.sigma_unconstrained = sigma_unconstrained;
    switch (kind) {
        case SvModelKind::ExpLevy:
            layout.ids = {ParamId::Eta, ParamId::Sigma, ParamId::Tau, ParamId::C};
            break;
        case SvModelKind::OuGamma:
            layout.ids = {ParamId::Eta, ParamId::C, ParamId::Lambda};
            break;
        case SvModelKind::OuGgp:
            layout.ids = {ParamId::Eta, ParamId::Tau, ParamId::C, ParamId::Lambda};
            break;
    }
    return layout;
}

std::vector<std::string> ParamLayout::names() const {
    std::vector<std::string> out;
    out.reserve(ids.size());
    for (ParamId id : ids) {
        switch (id) {
            case ParamId::Eta: out.emplace_back("eta"); break;
            case ParamId::Sigma: out.emplace_back("sigma"); break;
            case ParamId::Tau: out.emplace_back("tau"); break;
            case ParamId::C: out.emplace_back("c"); break;
            case ParamId::Lambda: out.emplace_back("lambda"); break;
        }
    }
    return out;
}

namespace {

double to_transformed(ParamId id, bool sigma_unconstrained, double x) {
    switch (id) {
        case ParamId::Sigma:
            if (sigma_unconstrained) {
                if (!(x < 1.0)) throw std::domain_error("transform: require sigma < 1");
                return -std::log1p(-x);
            }
            if (!(x > 0.0 && x < 1.0))
                throw std::domain_error("transform: require sigma in (0,1)");
            return std::log(x) - std::log1p(-x);
        case ParamId::Tau:
            if (!(x > 1.0)) throw std::domain_error("transform: require tau > 1");
            return std::log(x - 1.0);
        default:
            if (!(x > 0.0)) throw std::domain_error("transform: require a positive parameter");
            return std::log(x);
    }
}

double to_natural(ParamId id, bool sigma_unconstrained, double t) {
    switch (id) {
        case ParamId::Sigma:
            if (sigma_unconstrained) return 1.0 - std::exp(-t);
            return 1.0 / (1.0 + std::exp(-t));
        case ParamId::Tau: return 1.0 + std::exp(t);
        default: return std::exp(t);
    }
}

double log_jacobian_term(ParamId id, bool sigma_unconstrained, double t) {
    switch (id) {
        case ParamId::Sigma:
            if (sigma_unconstrained) return -t; // d sigma / dt = exp(-t)
            // d sigma / dt = sigma (1 - sigma)
            return -t - 2.0 * std::log1p(std::exp(-t));
        default: return t; // log / shifted-log transforms
    }
}

} // namespace

std::vector<double> transform_params(const ParamLayout& layout,
                                     const std::vector<double>& natural) {
    if (natural.size() != layout.size())
        throw std::invalid_argument("transform_params: dimension mismatch");
    std::vector<double> t(natural.size());
    for (std::size_t i = 0; i < natural.size(); ++i)
        t[i] = to_transformed(layout.ids[i], layout.sigma_unconstrained, natural[i]);
    return t;
}

std::vector<double> inverse_transform_params(const ParamLayout& layout,
                                             const std::vector<double>& transformed) {
    if (transformed.size() != layout.size())
        throw std::invalid_argument("inverse_transform_params: dimension mismatch");
    std::vector<double> x(transformed.size());
    for (std::size_t i = 0; i < transformed.size(); ++i)
        x[i] = to_natural(layout.ids[i], layout.sigma_unconstrained, transformed[i]);
    return x;
}

double transform_log_jacobian(const ParamLayout& layout, const std::vector<double>& transformed) {
    double lj = 0.0;
    for (std::size_t i = 0; i < transformed.size(); ++i)
        lj += log_jacobian_term(layout.ids[i], layout.sigma_unconstrained, transformed[i]);
    return lj;
}

double log_prior(const PriorSpec& prior, const ParamLayout& layout,
                 const std::vector<double>& natural) {
    if (natural.size() != layout.size())
        throw std::invalid_argument("log_prior: dimension mismatch");
    double lp = 0.0;
    for (std::size_t i = 0; i < natural.size(); ++i) {
        const double x = natural[i];
        switch (layout.ids[i]) {
            case ParamId::Eta: lp += gamma_logpdf(x, prior.eta_shape, prior.eta_rate); break;
            case ParamId::C: lp += gamma_logpdf(x, prior.c_shape, prior.c_rate); break;
            case ParamId::Lambda:
                lp += gamma_logpdf(x, prior.lambda_shape, prior.lambda_rate);
                break;
            case ParamId::Tau: lp += gamma_logpdf(x - 1.0, prior.tau_shape, prior.tau_rate); break;
            case ParamId::Sigma:
                if (layout.sigma_unconstrained) {
                    if (!(x < 1.0)) return kNegInf;
                    // standard normal on t = -log(1-sigma), expressed in natural space
                    const double t = -std::log1p(-x);
                    lp += -0.5 * std::log(2.0 * 3.14159265358979323846) - 0.5 * t * t + t;
                } else {
                    if (!(x > 0.0 && x < 1.0)) return kNegInf;
                }
                break;
        }
        if (lp == kNegInf) return kNegInf;
    }
    return lp;
}

SvModelSpec spec_with_params(const SvModelSpec& spec_template, const ParamLayout& layout,
                             const std::vector<double>& natural) {
    double eta = spec_template.marginal.eta;
    double sigma = spec_template.marginal.sigma;
    double tau = spec_template.marginal.tau;
    double c = spec_template.marginal.c;
    double lambda = spec_template.lambda;
    for (std::size_t i = 0; i < layout.size(); ++i) {
        switch (layout.ids[i]) {
            case ParamId::Eta: eta = natural[i]; break;
            case ParamId::Sigma: sigma = natural[i]; break;
            case ParamId::Tau: tau = natural[i]; break;
            case ParamId::C: c = natural[i]; break;
            case ParamId::Lambda: lambda = natural[i]; break;
        }
    }
    SvModelSpec out = spec_template;
    out.marginal = GgpParams(eta, sigma, tau, c);
    out.lambda = lambda;
    return out;
}

std::vector<double> default_init(const ParamLayout& layout, const SvModelSpec& spec_template) {
    std::vector<double> init;
    init.reserve(layout.size());
    for (ParamId id : layout.ids) {
        switch (id) {
            case ParamId::Eta: init.push_back(spec_template.marginal.eta); break;
            case ParamId::Sigma: init.push_back(0.3); break;
            case ParamId::Tau: init.push_back(2.0); break;
            case ParamId::C: init.push_back(spec_template.marginal.c); break;
            case ParamId::Lambda:
                init.push_back(spec_template.lambda > 0.0 ? spec_template.lambda : 0.05);
                break;
        }
    }
    return init;
}

double estimate_loglik_exp_levy(RngStream& rng, const SvModelSpec& spec, const ReturnSeries& data,
                                std::uint64_t n_particles, unsigned n_threads) {
    if (spec.kind != SvModelKind::ExpLevy)
        throw std::domain_error("estimate_loglik_exp_levy: ExpLevy spec required");
    if (n_particles == 0)
        throw std::invalid_argument("estimate_loglik_exp_levy: n_particles must be positive");
    const std::size_t n = data.size();
    if (n == 0) return 0.0;

    // one substream per observation: the estimate is identical for any
    // thread count
    std::vector<double> per_obs(n, 0.0);
    const auto worker = [&](std::size_t lo, std::size_t hi) {
        std::vector<double> logw(n_particles);
        for (std::size_t k = lo; k < hi; ++k) {
            RngStream krng = rng.substream(k);
            const GgpIncrementSampler draw(spec.marginal, data.delta[k]);
            for (std::uint64_t j = 0; j < n_particles; ++j) {
                logw[j] = observation_logdensity(spec, data.y[k], data.delta[k], draw(krng).value);
            }
            per_obs[k] = logsumexp(logw) - std::log(static_cast<double>(n_particles));
        }
    };

    const unsigned workers =
        std::min<unsigned>(resolve_threads(n_threads), static_cast<unsigned>(n));
    if (workers <= 1) {
        worker(0, n);
    } else {
        std::vector<std::thread> pool;
        pool.reserve(workers);
        const std::size_t chunk = (n + workers - 1) / workers;
        for (unsigned w = 0; w < workers; ++w) {
            const std::size_t lo = w * chunk;
            const std::size_t hi = std::min(n, lo + chunk);
            if (lo < hi) pool.emplace_back(worker, lo, hi);
        }
        for (auto& th : pool) th.join();
    }

    double total = 0.0;
    for (double v : per_obs) {
        if (v == kNegInf) return kNegInf;
        total += v;
    }
    return total;
}

SmcResult estimate_loglik_ou_smc(RngStream& rng, const SvModelSpec& spec, const ReturnSeries& data,
                                 std::uint64_t n_particles, bool keep_filtered) {
    if (spec.kind == SvModelKind::ExpLevy)
        throw std::domain_error("estimate_loglik_ou_smc: OU spec required");
    if (n_particles < 2)
        throw std::invalid_argument("estimate_loglik_ou_smc: need at least two particles");
    const std::size_t n = data.size();
    const std::size_t np = static_cast<std::size_t>(n_particles);

    SmcResult result;
    if (n == 0) return result;

    std::vector<double> v(np);
    for (std::size_t j = 0; j < np; ++j) v[j] = sample_ou_initial(rng, spec);

    std::vector<double> v_next(np), vbar(np), logw(np), weights(np);
    std::vector<std::vector<double>> vbar_hist(n, std::vector<double>(np));
    std::vector<std::vector<std::uint32_t>> ancestry(n, std::vector<std::uint32_t>(np));

    for (std::size_t k = 0; k < n; ++k) {
        const double dk = data.delta[k];
        const double decay = std::exp(-spec.lambda * dk);
        for (std::size_t j = 0; j < np; ++j) {
            const OuNoise eps = sample_ou_noise(rng, spec, dk);
            v_next[j] = decay * v[j] + eps.eps_v;
            const double raw = (eps.eps_z - eps.eps_v + v[j] * (1.0 - decay)) / spec.lambda;
            vbar[j] = raw > 0.0 ? raw : 0.0;
            logw[j] = observation_logdensity(spec, data.y[k], dk, vbar[j]);
        }
        const double lse = logsumexp(logw);
        if (lse == kNegInf) {
            // every particle lost the observation: report an impossible
            // dataset rather than throwing
            result.loglik = kNegInf;
            result.sampled_vbar.clear();
            result.filtered_vbar.clear();
            return result;
        }
        result.loglik += lse - std::log(static_cast<double>(np));

        double cum = 0.0;
        for (std::size_t j = 0; j < np; ++j) {
            cum += std::exp(logw[j] - lse);
            weights[j] = cum;
        }
        weights[np - 1] = 1.0;

        // systematic resampling with a single uniform offset
        const double u0 = rng.uniform() / static_cast<double>(np);
        std::size_t idx = 0;
        for (std::size_t j = 0; j < np; ++j) {
            const double target = u0 + static_cast<double>(j) / static_cast<double>(np);
            while (weights[idx] < target) ++idx;
            ancestry[k][j] = static_cast<std::uint32_t>(idx);
            v[j] = v_next[idx];
        }
        vbar_hist[k] = vbar;
    }

    // one trajectory drawn from the filter: slots are exchangeable after the
    // final resampling, so pick one uniformly and walk the ancestry back
    std::size_t slot = static_cast<std::size_t>(
        std::min<double>(static_cast<double>(np) - 1.0,
                         std::floor(rng.uniform() * static_cast<double>(np))));
    result.sampled_vbar.resize(n);
    for (std::size_t k = n; k-- > 0;) {
        slot = ancestry[k][slot];
        result.sampled_vbar[k] = vbar_hist[k][slot];
    }

    if (keep_filtered) {
        result.filtered_vbar.resize(n, std::vector<double>(np));
        for (std::size_t k = 0; k < n; ++k) {
            for (std::size_t j = 0; j < np; ++j) {
                result.filtered_vbar[k][j] = vbar_hist[k][ancestry[k][j]];
            }
        }
    }
    return result;
}

PosteriorTrace run_pmmh_chain(RngStream rng, const ParamLayout& layout, const PriorSpec& prior,
                              const McmcConfig& cfg, const LoglikEstimator& estimator,
                              const std::vector<double>& init_natural) {
    cfg.validate();
    const std::size_t d = layout.size();
    std::vector<double> step = cfg.proposal_step;
    if (step.empty()) step.assign(d, 0.5);
    if (step.size() != d)
        throw std::invalid_argument("run_pmmh_chain: proposal_step dimension mismatch");
    std::vector<double> log_step(d);
    for (std::size_t i = 0; i < d; ++i) log_step[i] = std::log(step[i]);

    std::vector<double> t_cur = transform_params(layout, init_natural);
    std::vector<double> nat_cur = init_natural;
    double post_cur = log_prior(prior, layout, nat_cur) + transform_log_jacobian(layout, t_cur);
    if (post_cur == kNegInf)
        throw std::invalid_argument("run_pmmh_chain: initial point outside the prior support");

    LoglikDraw cur;
    if (cfg.prior_only) {
        cur.loglik = 0.0;
    } else {
        RngStream est_rng = rng.substream(kEstimateStreamTag);
        cur = estimator(est_rng, nat_cur);
    }

    const double target = cfg.componentwise ? 0.44 : 0.25;
    const std::uint64_t n_keep = cfg.n_iters - cfg.n_burnin;
    PosteriorTrace trace;
    trace.param_names = layout.names();
    trace.natural.reserve(n_keep);
    trace.transformed.reserve(n_keep);
    trace.loglik_hat.reserve(n_keep);
    trace.accepted.reserve(n_keep);

    std::uint64_t n_accept_post = 0;
    std::vector<double> t_prop(d), nat_prop(d);

    for (std::uint64_t iter = 1; iter <= cfg.n_iters; ++iter) {
        const bool burnin = iter <= cfg.n_burnin;
        bool any_accept = false;
        const std::size_t n_moves = cfg.componentwise ? d : 1;

        for (std::size_t move = 0; move < n_moves; ++move) {
            t_prop = t_cur;
            if (cfg.componentwise) {
                t_prop[move] += std::exp(log_step[move]) * rng.normal();
            } else {
                for (std::size_t i = 0; i < d; ++i)
                    t_prop[i] += std::exp(log_step[i]) * rng.normal();
            }
            double accept_prob = 0.0;
            nat_prop = inverse_transform_params(layout, t_prop);
            const double post_prop =
                log_prior(prior, layout, nat_prop) + transform_log_jacobian(layout, t_prop);
            if (post_prop > kNegInf) {
                LoglikDraw prop;
                if (cfg.prior_only) {
                    prop.loglik = 0.0;
                } else {
                    RngStream est_rng =
                        rng.substream(kEstimateStreamTag + 1 + iter * n_moves + move);
                    prop = estimator(est_rng, nat_prop);
                }
                if (prop.loglik > kNegInf) {
                    const double log_alpha =
                        (prop.loglik + post_prop) - (cur.loglik + post_cur);
                    accept_prob = std::min(1.0, std::exp(std::min(0.0, log_alpha)));
                    if (std::log(rng.uniform()) < log_alpha) {
                        t_cur = t_prop;
                        nat_cur = nat_prop;
                        post_cur = post_prop;
                        cur = std::move(prop); // recycled until the next acceptance
                        any_accept = true;
                    }
                }
            }
            if (burnin && cfg.adapt) {
                const double gain =
                    1.0 / std::pow(static_cast<double>(iter), 0.6); // Robbins-Monro decay
                if (cfg.componentwise) {
                    log_step[move] += gain * (accept_prob - target);
                } else {
                    for (std::size_t i = 0; i < d; ++i)
                        log_step[i] += gain * (accept_prob - target);
                }
            }
        }

        if (!burnin) {
            if (cur.loglik == kNegInf)
                throw std::runtime_error(
                    "run_pmmh_chain: retained state carries a zero likelihood estimate");
            trace.natural.push_back(nat_cur);
            trace.transformed.push_back(t_cur);
            trace.loglik_hat.push_back(cur.loglik);
            trace.accepted.push_back(any_accept ? 1 : 0);
            if (any_accept) ++n_accept_post;
            const std::uint64_t kept = iter - cfg.n_burnin;
            if (!cur.latent.empty() && (kept - 1) % cfg.latent_thin == 0) {
                trace.latent_vbar.push_back(cur.latent);
                trace.latent_iters.push_back(kept - 1);
            }
        }
    }

    trace.acceptance_rate =
        n_keep > 0 ? static_cast<double>(n_accept_post) / static_cast<double>(n_keep) : 0.0;
    trace.acceptance_warning = trace.acceptance_rate < 0.05 || trace.acceptance_rate > 0.6;
    trace.final_step.resize(d);
    for (std::size_t i = 0; i < d; ++i) trace.final_step[i] = std::exp(log_step[i]);
    return trace;
}

std::vector<PosteriorTrace> run_pmmh(const SvModelSpec& spec_template, const PriorSpec& prior,
                                     const ReturnSeries& data, const McmcConfig& cfg) {
    cfg.validate();
    data.validate();
    const ParamLayout layout = ParamLayout::for_model(spec_template.kind, cfg.sigma_unconstrained);
    const std::vector<double> init = default_init(layout, spec_template);
    const unsigned threads = resolve_threads(cfg.n_threads);

    LoglikEstimator estimator;
    bool parallel_chains = false;
    if (spec_template.kind == SvModelKind::ExpLevy) {
        // heavy per-estimate work: parallelise inside the estimate instead
        // of across chains
        estimator = [&, threads](RngStream& rng, const std::vector<double>& nat) {
            const SvModelSpec spec = spec_with_params(spec_template, layout, nat);
            LoglikDraw out;
            out.loglik = estimate_loglik_exp_levy(rng, spec, data, cfg.n_particles, threads);
            return out;
        };
    } else {
        parallel_chains = threads > 1 && cfg.n_chains > 1;
        estimator = [&](RngStream& rng, const std::vector<double>& nat) {
            const SvModelSpec spec = spec_with_params(spec_template, layout, nat);
            const SmcResult smc = estimate_loglik_ou_smc(rng, spec, data, cfg.n_particles);
            return LoglikDraw{smc.loglik, smc.sampled_vbar};
        };
    }

    std::vector<PosteriorTrace> traces(cfg.n_chains);
    const auto run_chain = [&](std::uint64_t chain) {
        traces[chain] = run_pmmh_chain(RngStream(cfg.seed, chain), layout, prior, cfg, estimator,
                                       init);
    };
    if (parallel_chains) {
        std::vector<std::thread> pool;
        pool.reserve(cfg.n_chains);
        for (std::uint64_t chain = 0; chain < cfg.n_chains; ++chain)
            pool.emplace_back(run_chain, chain);
        for (auto& th : pool) th.join();
    } else {
        for (std::uint64_t chain = 0; chain < cfg.n_chains; ++chain) run_chain(chain);
    }
    return traces;
}

} // namespace ggp
