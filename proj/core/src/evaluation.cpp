#include "ggp/evaluation.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace ggp {

void PredictiveSample::validate(std::size_t min_rows) const {
    if (draws.size() < min_rows)
        throw std::invalid_argument("PredictiveSample: need at least " + std::to_string(min_rows) +
                                    " posterior rows");
    for (const auto& row : draws) {
        if (row.size() != draws.front().size())
            throw std::invalid_argument("PredictiveSample: ragged draw matrix");
        for (double v : row) {
            if (!std::isfinite(v))
                throw std::invalid_argument("PredictiveSample: non-finite entry");
        }
    }
}

LossSpec LossSpec::l1(double alpha) {
    if (!(alpha > 0.0 && alpha < 1.0))
        throw std::invalid_argument("LossSpec: alpha must lie in (0,1)");
    return {Kind::L1Alpha, alpha};
}

double ks_statistic(std::vector<double> a, std::vector<double> b) {
    if (a.empty() || b.empty()) throw std::invalid_argument("ks_statistic: empty sample");
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    const double na = static_cast<double>(a.size());
    const double nb = static_cast<double>(b.size());
    std::size_t i = 0, j = 0;
    double d = 0.0;
    while (i < a.size() && j < b.size()) {
        const double x = std::min(a[i], b[j]);
        while (i < a.size() && a[i] <= x) ++i;
        while (j < b.size() && b[j] <= x) ++j;
        d = std::max(d, std::fabs(static_cast<double>(i) / na - static_cast<double>(j) / nb));
    }
    return d;
}

double ks_statistic(std::vector<double> sample, const std::function<double(double)>& cdf) {
    if (sample.empty()) throw std::invalid_argument("ks_statistic: empty sample");
    std::sort(sample.begin(), sample.end());
    const double n = static_cast<double>(sample.size());
    double d = 0.0;
    for (std::size_t i = 0; i < sample.size(); ++i) {
        const double f = cdf(sample[i]);
        d = std::max(d, std::max((static_cast<double>(i) + 1.0) / n - f,
                                 f - static_cast<double>(i) / n));
    }
    return d;
}

ZetaResult zeta_coverage(const std::vector<double>& vbar_true,
                         const std::vector<std::vector<double>>& vbar_draws) {
    if (vbar_draws.size() < 100)
        throw std::invalid_argument("zeta_coverage: need at least 100 posterior rows");
    for (const auto& row : vbar_draws) {
        if (row.size() != vbar_true.size())
            throw std::invalid_argument("zeta_coverage: draw row length != true series length");
    }
    ZetaResult out;
    out.zeta.resize(vbar_true.size());
    const double ns = static_cast<double>(vbar_draws.size());
    for (std::size_t k = 0; k < vbar_true.size(); ++k) {
        std::size_t count = 0;
        for (const auto& row : vbar_draws) {
            if (row[k] >= vbar_true[k]) ++count;
        }
        out.zeta[k] = static_cast<double>(count) / ns;
    }
    out.ks_vs_uniform = ks_statistic(out.zeta, [](double x) {
        return std::clamp(x, 0.0, 1.0);
    });
    return out;
}

double lower_quantile(std::vector<double> values, double p) {
    if (values.empty()) throw std::invalid_argument("lower_quantile: empty sample");
    if (!(p > 0.0 && p < 1.0)) throw std::invalid_argument("lower_quantile: p must lie in (0,1)");
    std::sort(values.begin(), values.end());
    const double n = static_cast<double>(values.size());
    // inf{x : F_hat(x) >= p} is the ceil(n p)-th order statistic
    std::size_t rank = static_cast<std::size_t>(std::ceil(n * p - 1e-12));
    rank = std::clamp<std::size_t>(rank, 1, values.size());
    return values[rank - 1];
}

double bayes_estimate(std::vector<double> draws, const LossSpec& loss) {
    if (draws.empty()) throw std::invalid_argument("bayes_estimate: empty sample");
    if (loss.kind == LossSpec::Kind::L2) {
        double s = 0.0;
        for (double v : draws) s += v;
        return s / static_cast<double>(draws.size());
    }
    return lower_quantile(std::move(draws), loss.alpha);
}

double average_loss(const std::vector<double>& true_vals, const std::vector<double>& estimates,
                    const LossSpec& loss) {
    if (true_vals.size() != estimates.size())
        throw std::invalid_argument("average_loss: length mismatch");
    if (true_vals.empty()) throw std::invalid_argument("average_loss: empty input");
    double total = 0.0;
    for (std::size_t k = 0; k < true_vals.size(); ++k) {
        const double x = true_vals[k], y = estimates[k];
        if (loss.kind == LossSpec::Kind::L2) {
            total += (x - y) * (x - y);
        } else {
            total += (x >= y) ? (x - y) : (1.0 - loss.alpha) / loss.alpha * (y - x);
        }
    }
    return total / static_cast<double>(true_vals.size());
}

RankBandSummary ranked_squared_return_bands(const PredictiveSample& posterior_predictive,
                                            const std::vector<double>& test_y) {
    posterior_predictive.validate(100);
    if (test_y.empty())
        throw std::invalid_argument("ranked_squared_return_bands: empty test series");
    if (posterior_predictive.draws.front().size() != test_y.size())
        throw std::invalid_argument(
            "ranked_squared_return_bands: predictive horizon != test length");

    const std::size_t n = test_y.size();
    const std::size_t rows = posterior_predictive.rows();
    // ranked[r] holds, across predictive rows, the (r+1)-th largest squared return
    std::vector<std::vector<double>> ranked(n, std::vector<double>(rows));
    std::vector<double> sq(n);
    for (std::size_t i = 0; i < rows; ++i) {
        for (std::size_t k = 0; k < n; ++k) {
            const double y = posterior_predictive.draws[i][k];
            sq[k] = y * y;
        }
        std::sort(sq.begin(), sq.end(), std::greater<>());
        for (std::size_t r = 0; r < n; ++r) ranked[r][i] = sq[r];
    }

    RankBandSummary out;
    out.lower.resize(n);
    out.upper.resize(n);
    out.observed.resize(n);
    for (std::size_t r = 0; r < n; ++r) {
        out.lower[r] = lower_quantile(ranked[r], 0.025);
        out.upper[r] = lower_quantile(ranked[r], 0.975);
    }
    for (std::size_t k = 0; k < n; ++k) out.observed[k] = test_y[k] * test_y[k];
    std::sort(out.observed.begin(), out.observed.end(), std::greater<>());
    return out;
}

} // namespace ggp
