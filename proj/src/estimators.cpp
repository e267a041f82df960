#include "extremefim/estimators.hpp"

#include <boost/math/tools/minima.hpp>
#include <cmath>
#include <cstdint>
#include <limits>
#include <numeric>
#include <string>

#include "extremefim/error.hpp"

namespace extremefim {

namespace {

double mean_of(std::span<const double> values) {
    return std::accumulate(values.begin(), values.end(), 0.0) / static_cast<double>(values.size());
}

void require_nonnegative(std::span<const double> values, const char* what) {
    for (double v : values) {
        if (!(v >= 0.0) || !std::isfinite(v)) {
            throw Error(ErrorCode::domain,
                        std::string(what) + ": exponential data must be finite and >= 0");
        }
    }
}

// log(exp(-a/theta) - exp(-b/theta)) for 0 <= a <= b without cancellation.
double log_exp_gap(double a, double b, double theta) {
    return -a / theta + std::log(-std::expm1(-(b - a) / theta));
}

// Maximizes loglik over theta with Brent's golden-section/parabolic search,
// widening the bracket when the optimum sits on an edge.
template <class LogLik>
OptimizerDiagnostics maximize(LogLik&& loglik, std::pair<double, double> bracket,
                              double& theta_hat, const char* what) {
    constexpr int bits = std::numeric_limits<double>::digits / 2;
    OptimizerDiagnostics diag{};
    auto [lo, hi] = bracket;
    for (int attempt = 0; attempt <= kMaxBracketExpansions; ++attempt) {
        std::uintmax_t iterations = kOptimizerIterationCap;
        const auto [x, neg] = boost::math::tools::brent_find_minima(
            [&](double t) { return -loglik(t); }, lo, hi, bits, iterations);
        diag.iterations += static_cast<int>(iterations);
        diag.bracket_lo = lo;
        diag.bracket_hi = hi;
        diag.loglik_at_opt = -neg;
        if (iterations >= static_cast<std::uintmax_t>(kOptimizerIterationCap)) {
            throw Error(ErrorCode::optimizer,
                        std::string(what) + ": no convergence within " +
                            std::to_string(kOptimizerIterationCap) + " iterations on [" +
                            std::to_string(lo) + ", " + std::to_string(hi) +
                            "], last theta=" + std::to_string(x));
        }
        const double edge = 1e-5 * (hi - lo);
        const bool at_lo = x - lo < edge;
        const bool at_hi = hi - x < edge;
        if (!at_lo && !at_hi) {
            diag.converged = true;
            theta_hat = x;
            return diag;
        }
        if (attempt == kMaxBracketExpansions) break;
        ++diag.expansions;
        if (at_lo) lo /= 10.0;
        if (at_hi) hi *= 10.0;
    }
    throw Error(ErrorCode::optimizer,
                std::string(what) + ": likelihood maximum stays on the bracket edge after " +
                    std::to_string(kMaxBracketExpansions) + " widenings (final bracket [" +
                    std::to_string(lo) + ", " + std::to_string(hi) + "])");
}

}  // namespace

Estimate estimate_opt(const SampleMatrix& samples) {
    if (samples.rows() == 0 || samples.cols() == 0) {
        throw Error(ErrorCode::shape, "estimate_opt: empty sample matrix");
    }
    require_nonnegative(samples.values(), "estimate_opt");
    const double m = mean_of(samples.values());
    if (!(m > 0.0)) {
        throw Error(ErrorCode::degenerate_data, "estimate_opt: all samples are zero");
    }
    return {Variant::opt, 0, m, std::nullopt, std::nullopt};
}

Estimate estimate_partial(const SampleMatrix& samples, int L) {
    if (samples.rows() == 0 || samples.cols() == 0) {
        throw Error(ErrorCode::shape, "estimate_partial: empty sample matrix");
    }
    if (L < 1 || static_cast<std::size_t>(L) > samples.cols()) {
        throw Error(ErrorCode::parameter_domain,
                    "estimate_partial: L must lie in [1, K], got " + std::to_string(L));
    }
    double sum = 0.0;
    for (std::size_t i = 0; i < samples.rows(); ++i) {
        const auto kept = samples.row(i).first(static_cast<std::size_t>(L));
        require_nonnegative(kept, "estimate_partial");
        sum += std::accumulate(kept.begin(), kept.end(), 0.0);
    }
    const double m = sum / (static_cast<double>(samples.rows()) * L);
    if (!(m > 0.0)) {
        throw Error(ErrorCode::degenerate_data, "estimate_partial: retained samples are all zero");
    }
    return {Variant::partial, L, m, std::nullopt, std::nullopt};
}

Estimate estimate_min(const ExtremeDataset& data) {
    const auto minima = data.minima();
    require_nonnegative(minima, "estimate_min");
    const double m = mean_of(minima);
    if (!(m > 0.0)) throw Error(ErrorCode::degenerate_data, "estimate_min: all minima are zero");
    return {Variant::min, 0, data.K() * m, std::nullopt, m};
}

double loglik_max(std::span<const double> maxima, int K, double theta) {
    double ll = 0.0;
    const double log_theta = std::log(theta);
    for (double y : maxima) {
        ll += -log_theta - y / theta;
        if (K > 1) ll += (K - 1) * std::log(-std::expm1(-y / theta));
    }
    return ll;
}

double loglik_mix(const ExtremeDataset& data, double theta) {
    const int K = data.K();
    double ll = 0.0;
    const double log_theta = std::log(theta);
    for (const auto& r : data.intervals()) {
        ll += -2.0 * log_theta - (r.y_min + r.y_max) / theta;
        if (K > 2) ll += (K - 2) * log_exp_gap(r.y_min, r.y_max, theta);
    }
    return ll;
}

std::pair<double, double> initial_bracket(std::span<const double> maxima, int K) {
    const double m = mean_of(maxima);
    const double log_k = std::max(std::log(static_cast<double>(K)), std::log(2.0));
    return {m / (10.0 * log_k), 10.0 * m};
}

Estimate estimate_max(std::span<const double> maxima, int K) {
    if (maxima.empty()) throw Error(ErrorCode::shape, "estimate_max: no maxima");
    if (K < 1) throw Error(ErrorCode::parameter_domain, "estimate_max: K must be >= 1");
    require_nonnegative(maxima, "estimate_max");
    for (double y : maxima) {
        if (!(y > 0.0)) {
            throw Error(ErrorCode::degenerate_data, "estimate_max: maxima must be positive");
        }
    }
    double theta_hat = 0.0;
    auto diag = maximize([&](double t) { return loglik_max(maxima, K, t); },
                         initial_bracket(maxima, K), theta_hat, "estimate_max");
    return {Variant::max, 0, theta_hat, diag, std::nullopt};
}

Estimate estimate_max(const ExtremeDataset& data) {
    // The minima are unused, but a negative one means the data is not exponential.
    require_nonnegative(data.minima(), "estimate_max");
    const auto maxima = data.maxima();
    return estimate_max(maxima, data.K());
}

Estimate estimate_mix(const ExtremeDataset& data) {
    const auto minima = data.minima();
    const auto maxima = data.maxima();
    require_nonnegative(minima, "estimate_mix");
    if (data.K() >= 3) {
        for (std::size_t i = 0; i < data.N(); ++i) {
            if (!(minima[i] < maxima[i])) {
                throw Error(ErrorCode::degenerate_data,
                            "estimate_mix: interval " + std::to_string(i) +
                                " has y_min == y_max, the joint likelihood vanishes for K >= 3");
            }
        }
    }
    if (!(mean_of(maxima) > 0.0)) {
        throw Error(ErrorCode::degenerate_data, "estimate_mix: all maxima are zero");
    }
    double theta_hat = 0.0;
    auto diag = maximize([&](double t) { return loglik_mix(data, t); },
                         initial_bracket(maxima, data.K()), theta_hat, "estimate_mix");
    return {Variant::mix, 0, theta_hat, diag, std::nullopt};
}

}  // namespace extremefim
