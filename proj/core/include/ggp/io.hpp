#pragma once

#include "ggp/inference.hpp"
#include "ggp/sv_models.hpp"

#include <map>
#include <stdexcept>
#include <string>
#include <vector>

namespace ggp {

/// Bad configuration (exit code 2).
struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
/// Bad input data (exit code 3).
struct DataError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Parse a returns CSV. Two accepted layouts, chosen by header:
///   timestamp,price   -> log-returns of consecutive prices, deltas from
///                        timestamp differences (strictly increasing)
///   delta,log_return  -> taken as-is
/// Throws DataError with the offending line number.
ReturnSeries load_return_series(const std::string& path);

/// Flat key-value run configuration; every field is validated at parse
/// time. CLI overrides win over file values.
struct RunConfig {
    // model and simulation truth
    std::string model = "exp_levy"; // exp_levy | ou_gamma | ou_ggp
    double eta = 1.0;
    double sigma = 0.5;
    double tau = 2.0;
    double c = 1.0;
    double lambda = 0.05;
    double mu0 = 0.0;
    double mu1 = 0.0;
    std::uint64_t n = 1000; // simulated series length
    double delta = 1.0;     // simulated inter-arrival time

    // mcmc
    std::uint64_t n_iters = 10000;
    std::uint64_t n_burnin = 5000;
    std::uint64_t n_particles = 1000;
    std::uint64_t n_chains = 3;
    std::uint64_t latent_thin = 10;
    std::uint64_t seed = 1;
    bool adapt = true;
    bool componentwise = false;
    bool prior_only = false;
    bool sigma_unconstrained = false;
    unsigned n_threads = 0;
    std::string proposal_step; // comma-separated transformed-space steps

    PriorSpec prior;

    // io
    std::string input;      // returns CSV (fit, predict)
    std::string trace_dir;  // directory with trace files (predict, evaluate)
    std::string test_data;  // held-out returns CSV (evaluate)
    std::string predictive; // predictive.csv (evaluate)
    std::string true_vbar;  // true latent-volatility CSV (evaluate)
    std::uint64_t horizon = 0; // predict horizon; 0 -> length of input
    std::string output_dir = ".";

    SvModelSpec to_model_spec() const;
    McmcConfig to_mcmc_config() const;
    std::map<std::string, std::string> to_map() const;
};

/// Parse a flat `key = value` config file, or the "config" object of a
/// previously written manifest.json (detected by extension).
RunConfig parse_config_file(const std::string& path);

/// Apply one `key=value` override; unknown keys and malformed values throw
/// ConfigError naming the field.
void apply_override(RunConfig& cfg, const std::string& key, const std::string& value);

/// Shortest decimal representation that round-trips the double exactly.
std::string format_double(double v);

/// Posterior draws loaded back from the trace files of one run directory.
struct LoadedTraces {
    std::vector<std::string> param_names;
    std::vector<std::vector<double>> natural; // merged across chains, chain-major
    std::vector<std::vector<double>> latent_vbar;
};
LoadedTraces load_traces(const std::string& trace_dir);

int cmd_simulate(const RunConfig& cfg);
int cmd_fit(const RunConfig& cfg);
int cmd_predict(const RunConfig& cfg);
int cmd_evaluate(const RunConfig& cfg);
int cmd_selftest(const RunConfig& cfg);

/// Dispatch a CLI command by name; returns the process exit code.
int run_command(const std::string& command, const RunConfig& cfg);

} // namespace ggp
