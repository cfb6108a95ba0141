#pragma once

#include <functional>
#include <vector>

namespace ggp {

/// Posterior-predictive draws: one row per posterior iteration, one column
/// per horizon step.
struct PredictiveSample {
    std::vector<std::vector<double>> draws;

    std::size_t rows() const { return draws.size(); }
    void validate(std::size_t min_rows = 100) const;
};

struct LossSpec {
    enum class Kind { L2, L1Alpha };
    Kind kind = Kind::L2;
    double alpha = 0.5; // L1Alpha only, in (0,1)

    static LossSpec l2() { return {Kind::L2, 0.5}; }
    static LossSpec l1(double alpha);
};

/// Two-sample Kolmogorov-Smirnov statistic, sup |F_a - F_b|.
double ks_statistic(std::vector<double> sample_a, std::vector<double> sample_b);

/// One-sample Kolmogorov-Smirnov statistic against an analytic CDF.
double ks_statistic(std::vector<double> sample, const std::function<double(double)>& cdf);

struct ZetaResult {
    std::vector<double> zeta;  // posterior survival probability at each true value
    double ks_vs_uniform = 0.0;
};

/// zeta_k = (1/n_s) sum_i 1{draws[i][k] >= vbar_true[k]} plus the KS
/// distance of (zeta_k) from Uniform(0,1); uniform zetas mean calibrated
/// posterior coverage. Needs at least 100 draw rows.
ZetaResult zeta_coverage(const std::vector<double>& vbar_true,
                         const std::vector<std::vector<double>>& vbar_draws);

/// Bayes point estimate under the loss: posterior mean for L2, lower
/// empirical alpha-quantile for L1Alpha.
double bayes_estimate(std::vector<double> draws, const LossSpec& loss);

/// Average of per-index losses; l_{1,alpha}(x,y) = x-y when x >= y and
/// ((1-alpha)/alpha)|x-y| otherwise.
double average_loss(const std::vector<double>& true_vals, const std::vector<double>& estimates,
                    const LossSpec& loss);

/// Per-rank 95% credible band of the ranked squared returns across the
/// predictive rows (rank 1 = largest), plus the observed ranked series.
struct RankBandSummary {
    std::vector<double> lower;    // 2.5% quantile per rank
    std::vector<double> upper;    // 97.5% quantile per rank
    std::vector<double> observed; // ranked squared test returns
};

RankBandSummary ranked_squared_return_bands(const PredictiveSample& posterior_predictive,
                                            const std::vector<double>& test_y);

/// Lower empirical quantile (inverse-CDF convention) used everywhere in
/// this module.
double lower_quantile(std::vector<double> values, double p);

} // namespace ggp
