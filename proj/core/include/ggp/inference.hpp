#pragma once

#include "ggp/rng.hpp"
#include "ggp/sv_models.hpp"

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

namespace ggp {

/// Sampled parameters, in a fixed model-dependent order.
enum class ParamId { Eta, Sigma, Tau, C, Lambda };

/// Which parameters a model samples, and how sigma is transformed.
struct ParamLayout {
    std::vector<ParamId> ids;
    bool sigma_unconstrained = false; // widen sigma support from [0,1) to (-inf,1)

    static ParamLayout for_model(SvModelKind kind, bool sigma_unconstrained = false);
    std::vector<std::string> names() const;
    std::size_t size() const { return ids.size(); }
};

/// Prior hyperparameters. eta, c and lambda carry Gamma(shape, rate)
/// priors, tau-1 a Gamma prior, sigma a Uniform(0,1) prior unless the
/// unconstrained-sigma transform is active (then standard normal on the
/// transformed coordinate).
struct PriorSpec {
    double eta_shape = 0.1, eta_rate = 0.1;
    double c_shape = 0.1, c_rate = 0.1;
    double tau_shape = 1.0, tau_rate = 1.0; // on tau - 1
    double lambda_shape = 0.1, lambda_rate = 0.1;
};

struct McmcConfig {
    std::uint64_t n_iters = 10000;
    std::uint64_t n_burnin = 5000;
    std::uint64_t n_particles = 1000;
    std::uint64_t n_chains = 3;
    std::vector<double> proposal_step; // transformed-space steps; empty -> 0.5 each
    std::uint64_t seed = 1;
    bool adapt = true;         // Robbins-Monro step adaptation during burn-in
    bool componentwise = false; // one-coordinate-at-a-time proposals
    bool prior_only = false;   // force the likelihood estimate to a constant
    bool sigma_unconstrained = false;
    std::uint64_t latent_thin = 10; // keep an OU latent draw every latent_thin retained iters
    unsigned n_threads = 0;         // 0 -> hardware concurrency

    void validate() const;
};

/// MCMC output for one chain.
struct PosteriorTrace {
    std::vector<std::string> param_names;
    std::vector<std::vector<double>> natural;     // retained iteration -> natural params
    std::vector<std::vector<double>> transformed; // retained iteration -> transformed params
    std::vector<double> loglik_hat;
    std::vector<char> accepted;
    std::vector<std::vector<double>> latent_vbar; // thinned latent draws (OU models)
    std::vector<std::uint64_t> latent_iters;      // retained-iteration index of each latent row
    double acceptance_rate = 0.0;
    std::vector<double> final_step; // proposal steps after adaptation
    bool acceptance_warning = false; // post-burn-in acceptance outside (0.05, 0.6)
};

/// Bijections between natural and transformed space:
/// log eta, logit sigma (or -log(1-sigma) when unconstrained), log(tau-1),
/// log c, log lambda.
std::vector<double> transform_params(const ParamLayout& layout, const std::vector<double>& natural);
std::vector<double> inverse_transform_params(const ParamLayout& layout,
                                             const std::vector<double>& transformed);
/// log |d natural / d transformed| at the given transformed point.
double transform_log_jacobian(const ParamLayout& layout, const std::vector<double>& transformed);

/// Sum of natural-space log prior densities; -infinity outside the support.
double log_prior(const PriorSpec& prior, const ParamLayout& layout,
                 const std::vector<double>& natural);

/// Monte-Carlo likelihood estimate for the exponential-Levy model:
/// log of prod_k (1/n_p) sum_j p(y_k | vbar_k^(j)). Unbiased on the
/// likelihood scale; -infinity if some observation gets no support.
/// Derives one RNG substream per observation, so results are identical for
/// any thread count.
double estimate_loglik_exp_levy(RngStream& rng, const SvModelSpec& spec, const ReturnSeries& data,
                                std::uint64_t n_particles, unsigned n_threads = 1);

struct SmcResult {
    double loglik = 0.0;
    std::vector<double> sampled_vbar;              // one trajectory drawn from the filter
    std::vector<std::vector<double>> filtered_vbar; // per-step particle matrix (optional)
};

/// Bootstrap particle filter for the OU models with systematic resampling
/// at every step; the likelihood estimate is unbiased. Set keep_filtered to
/// also return the per-step particle vbar matrix.
SmcResult estimate_loglik_ou_smc(RngStream& rng, const SvModelSpec& spec, const ReturnSeries& data,
                                 std::uint64_t n_particles, bool keep_filtered = false);

/// Likelihood estimator interface used by the PMMH core; natural-space
/// parameters in, log-likelihood estimate and optional latent draw out.
struct LoglikDraw {
    double loglik = 0.0;
    std::vector<double> latent;
};
using LoglikEstimator = std::function<LoglikDraw(RngStream&, const std::vector<double>&)>;

/// Pseudo-marginal Metropolis-Hastings over one chain with a Gaussian
/// random walk in transformed space. The stored likelihood estimate of the
/// current state is recycled, never recomputed.
PosteriorTrace run_pmmh_chain(RngStream rng, const ParamLayout& layout, const PriorSpec& prior,
                              const McmcConfig& cfg, const LoglikEstimator& estimator,
                              const std::vector<double>& init_natural);

/// Run cfg.n_chains chains of PMMH for the given model against the data.
/// Chains use decorrelated substreams of the seed; the OU models run chains
/// in parallel, the ExpLevy model parallelises inside each estimate.
std::vector<PosteriorTrace> run_pmmh(const SvModelSpec& spec_template, const PriorSpec& prior,
                                     const ReturnSeries& data, const McmcConfig& cfg);

/// Default starting point for a model's parameter vector.
std::vector<double> default_init(const ParamLayout& layout, const SvModelSpec& spec_template);

/// Rebuild a model spec with the sampled parameters substituted in.
SvModelSpec spec_with_params(const SvModelSpec& spec_template, const ParamLayout& layout,
                             const std::vector<double>& natural);

} // namespace ggp
