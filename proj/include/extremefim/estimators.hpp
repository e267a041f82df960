#pragma once

#include <optional>
#include <span>

#include "extremefim/extremes.hpp"
#include "extremefim/fim.hpp"

namespace extremefim {

struct OptimizerDiagnostics {
    int iterations = 0;
    double bracket_lo = 0.0;
    double bracket_hi = 0.0;
    bool converged = false;
    double loglik_at_opt = 0.0;
    int expansions = 0;  // bracket widenings before the optimum was interior
};

/// Maximum-likelihood estimate of the exponential mean.
struct Estimate {
    Variant variant;
    int L = 0;  // partial variant only
    double theta_hat;
    std::optional<OptimizerDiagnostics> optimizer;  // max and mix only
    // For the min variant: sum(y_min)/N, the form that drops the factor K.
    std::optional<double> min_without_k_factor;
};

Estimate estimate_opt(const SampleMatrix& samples);

/// Mean over the first L entries of every row.
Estimate estimate_partial(const SampleMatrix& samples, int L);

/// K * mean(y_min): minima of K exponentials are exponential with mean theta/K.
Estimate estimate_min(const ExtremeDataset& data);

/// Maximizer of the log-likelihood of the interval maxima.
Estimate estimate_max(const ExtremeDataset& data);
/// Same, from bare maxima; accepts K >= 1.
Estimate estimate_max(std::span<const double> maxima, int K);

/// Maximizer of the joint (min, max) log-likelihood. Ties y_min == y_max with
/// K >= 3 make the likelihood vanish and raise Error(degenerate_data).
Estimate estimate_mix(const ExtremeDataset& data);

/// Log-likelihood of the maxima up to the additive constant N log K.
double loglik_max(std::span<const double> maxima, int K, double theta);
/// Joint log-likelihood up to the additive constant N log(K(K-1)).
double loglik_mix(const ExtremeDataset& data, double theta);

/// Initial search interval [mean(y_max)/(10 ln K), 10 mean(y_max)]; ln K is
/// floored at ln 2 so K = 1 still gets a usable bracket.
std::pair<double, double> initial_bracket(std::span<const double> maxima, int K);

inline constexpr int kOptimizerIterationCap = 500;
inline constexpr int kMaxBracketExpansions = 3;

}  // namespace extremefim
