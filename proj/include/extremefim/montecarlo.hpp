#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "extremefim/distributions.hpp"
#include "extremefim/fim.hpp"

namespace extremefim {

struct VariantSpec {
    Variant kind;
    int L = 0;  // partial only

    friend bool operator==(const VariantSpec&, const VariantSpec&) = default;
};

/// "opt", "min", "max", "mix", "partial3" (partial with L = 3).
std::string variant_label(const VariantSpec& v);
/// Inverse of variant_label; throws Error(parse) on unknown labels.
VariantSpec parse_variant_label(const std::string& label);

std::vector<int> default_k_list();

struct StudyConfig {
    double theta = 1.0;
    int N = 100;
    std::vector<int> K_list = default_k_list();
    int trials = 10000;
    std::uint64_t base_seed = 0;
    std::shared_ptr<const DistributionModel> model = std::make_shared<Exponential>();
    std::vector<VariantSpec> variants = {
        {Variant::opt}, {Variant::min}, {Variant::max}, {Variant::mix}};
    // Worker threads; 0 picks std::thread::hardware_concurrency().
    unsigned threads = 0;

    /// Throws Error(parameter_domain) when the config is unusable.
    void validate() const;
};

/// Deterministic 64-bit mix of (base_seed, K, trial_index).
std::uint64_t trial_seed(std::uint64_t base_seed, int K, std::int64_t trial_index);

struct TrialEstimate {
    VariantSpec variant;
    double theta_hat;
};

struct TrialRecord {
    int K;
    std::int64_t trial_index;
    std::vector<TrialEstimate> estimates;  // in config.variants order
};

/// One synthetic N x K dataset, reduced to extremes and estimated with every
/// requested variant.
TrialRecord run_trial(const StudyConfig& config, int K, std::int64_t trial_index);

struct VariantSummary {
    VariantSpec variant;
    double mean_theta_hat;
    double mean_bias;
    double var_theta_hat;       // unbiased sample variance over trials
    double inv_var_normalized;  // theta^2 / (N var)
    std::optional<double> crlb_closed;
    std::optional<double> crlb_plugin;
    std::optional<double> crlb_quadrature;
};

struct KSummary {
    int K;
    std::vector<VariantSummary> variants;
};

struct StudyReport {
    double theta;
    int N;
    int trials;
    std::uint64_t base_seed;
    std::string model;
    std::vector<KSummary> rows;

    const VariantSummary* find(int K, const VariantSpec& v) const;
};

/// Runs config.trials trials per K and aggregates them in trial-index order,
/// so the report is independent of the thread count.
StudyReport run_study(const StudyConfig& config);

struct ProbeRow {
    int K;
    double var_ymax;
    double mean_ratio;  // mean(Y_max) / E[Y_max]; E taken from an independent batch
    double mean_ymax;
};

/// Empirical spread of simulated group maxima for each K.
std::vector<ProbeRow> convergence_probe(const DistributionModel& model, double theta,
                                        const std::vector<int>& K_list, int replicates,
                                        std::uint64_t seed, unsigned threads = 0);

}  // namespace extremefim
