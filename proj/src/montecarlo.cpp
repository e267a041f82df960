#include "extremefim/montecarlo.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <mutex>
#include <random>
#include <thread>

#include "extremefim/error.hpp"
#include "extremefim/estimators.hpp"
#include "extremefim/extremes.hpp"

namespace extremefim {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

unsigned resolve_threads(unsigned requested) {
    if (requested != 0) return requested;
    return std::max(1u, std::thread::hardware_concurrency());
}

// Runs body(i) for i in [0, count) on `threads` workers. The first exception
// stops the remaining work and is rethrown on the calling thread.
template <class Body>
void parallel_for(std::int64_t count, unsigned threads, Body&& body) {
    std::atomic<std::int64_t> next{0};
    std::atomic<bool> failed{false};
    std::exception_ptr error;
    std::mutex error_mutex;
    auto worker = [&] {
        constexpr std::int64_t chunk = 16;
        while (!failed.load(std::memory_order_relaxed)) {
            const std::int64_t begin = next.fetch_add(chunk);
            if (begin >= count) return;
            const std::int64_t end = std::min(count, begin + chunk);
            try {
                for (std::int64_t i = begin; i < end; ++i) body(i);
            } catch (...) {
                std::lock_guard lock(error_mutex);
                if (!error) error = std::current_exception();
                failed = true;
                return;
            }
        }
    };
    const unsigned n = std::min<std::int64_t>(threads, std::max<std::int64_t>(count, 1));
    if (n <= 1) {
        worker();
    } else {
        std::vector<std::jthread> pool;
        pool.reserve(n);
        for (unsigned t = 0; t < n; ++t) pool.emplace_back(worker);
    }
    if (error) std::rethrow_exception(error);
}

std::optional<double> safe_crlb(auto&& make_fim) {
    try {
        const FimValue fim = make_fim();
        if (fim.value > 0.0) return crlb(fim);
    } catch (const Error&) {
    }
    return std::nullopt;
}

void attach_overlays(const StudyConfig& c, int K, VariantSummary& s) {
    const auto& m = *c.model;
    switch (s.variant.kind) {
        case Variant::opt:
            s.crlb_closed = safe_crlb([&] { return fim_opt(m, c.theta, c.N, K); });
            break;
        case Variant::partial:
            s.crlb_closed = safe_crlb([&] { return fim_partial(m, c.theta, c.N, K, s.variant.L); });
            break;
        case Variant::min:
            s.crlb_closed = safe_crlb([&] { return fim_min_exact(m, c.theta, c.N, K); });
            [[fallthrough]];
        case Variant::max:
        case Variant::mix:
            s.crlb_plugin = safe_crlb([&] { return fim_plugin(m, s.variant.kind, c.theta, c.N, K); });
            s.crlb_quadrature =
                safe_crlb([&] { return fim_quadrature(m, s.variant.kind, c.theta, c.N, K); });
            break;
    }
}

}  // namespace

std::string variant_label(const VariantSpec& v) {
    if (v.kind == Variant::partial) return "partial" + std::to_string(v.L);
    return std::string(to_string(v.kind));
}

VariantSpec parse_variant_label(const std::string& label) {
    if (label == "opt") return {Variant::opt};
    if (label == "min") return {Variant::min};
    if (label == "max") return {Variant::max};
    if (label == "mix") return {Variant::mix};
    if (label.starts_with("partial") && label.size() > 7) {
        const std::string digits = label.substr(7);
        if (std::all_of(digits.begin(), digits.end(), [](char ch) { return ch >= '0' && ch <= '9'; })) {
            return {Variant::partial, std::stoi(digits)};
        }
    }
    throw Error(ErrorCode::parse, "unknown variant label '" + label + "'");
}

std::vector<int> default_k_list() { return {5, 10, 15, 20, 25, 30, 40, 50, 75, 100}; }

void StudyConfig::validate() const {
    require_positive_theta(theta);
    if (N < 1) throw Error(ErrorCode::parameter_domain, "study needs N >= 1");
    if (trials < 2) throw Error(ErrorCode::parameter_domain, "study needs at least 2 trials");
    if (K_list.empty()) throw Error(ErrorCode::parameter_domain, "study needs a nonempty K list");
    if (variants.empty()) throw Error(ErrorCode::parameter_domain, "study needs at least one variant");
    if (!model) throw Error(ErrorCode::parameter_domain, "study has no model");
    if (model->family() != Family::exponential) {
        throw Error(ErrorCode::unsupported, "estimators are available for the exponential model only");
    }
    for (int K : K_list) {
        if (K < 2) throw Error(ErrorCode::parameter_domain, "every K must be >= 2");
        for (const auto& v : variants) {
            if (v.kind == Variant::partial && (v.L < 1 || v.L > K)) {
                throw Error(ErrorCode::parameter_domain,
                            "partial variant L=" + std::to_string(v.L) + " outside [1, " +
                                std::to_string(K) + "]");
            }
        }
    }
}

std::uint64_t trial_seed(std::uint64_t base_seed, int K, std::int64_t trial_index) {
    std::uint64_t h = splitmix64(base_seed);
    h = splitmix64(h ^ static_cast<std::uint64_t>(static_cast<std::uint32_t>(K)));
    return splitmix64(h ^ static_cast<std::uint64_t>(trial_index));
}

TrialRecord run_trial(const StudyConfig& config, int K, std::int64_t trial_index) {
    const auto n = static_cast<std::size_t>(config.N);
    const auto k = static_cast<std::size_t>(K);
    SampleMatrix samples(n, k,
                         config.model->sample(config.theta, n * k,
                                              trial_seed(config.base_seed, K, trial_index)));
    const ExtremeDataset extremes = reduce_intervals(samples);

    TrialRecord record{K, trial_index, {}};
    record.estimates.reserve(config.variants.size());
    for (const auto& v : config.variants) {
        try {
            double theta_hat = 0.0;
            switch (v.kind) {
                case Variant::opt: theta_hat = estimate_opt(samples).theta_hat; break;
                case Variant::partial: theta_hat = estimate_partial(samples, v.L).theta_hat; break;
                case Variant::min: theta_hat = estimate_min(extremes).theta_hat; break;
                case Variant::max: theta_hat = estimate_max(extremes).theta_hat; break;
                case Variant::mix: theta_hat = estimate_mix(extremes).theta_hat; break;
            }
            record.estimates.push_back({v, theta_hat});
        } catch (const Error& e) {
            throw Error(e.code(), "trial K=" + std::to_string(K) + " index=" +
                                      std::to_string(trial_index) + " variant=" +
                                      variant_label(v) + ": " + e.what());
        }
    }
    return record;
}

const VariantSummary* StudyReport::find(int K, const VariantSpec& v) const {
    for (const auto& row : rows) {
        if (row.K != K) continue;
        for (const auto& s : row.variants) {
            if (s.variant == v) return &s;
        }
    }
    return nullptr;
}

StudyReport run_study(const StudyConfig& config) {
    config.validate();
    StudyReport report{config.theta, config.N, config.trials, config.base_seed,
                       std::string(config.model->name()), {}};
    const std::size_t n_var = config.variants.size();
    const unsigned threads = resolve_threads(config.threads);

    for (int K : config.K_list) {
        // estimates[trial * n_var + variant]
        std::vector<double> estimates(static_cast<std::size_t>(config.trials) * n_var);
        try {
            parallel_for(config.trials, threads, [&](std::int64_t t) {
                const auto rec = run_trial(config, K, t);
                for (std::size_t j = 0; j < n_var; ++j) {
                    estimates[static_cast<std::size_t>(t) * n_var + j] = rec.estimates[j].theta_hat;
                }
            });
        } catch (const Error& e) {
            throw Error(e.code(), std::string(e.what()) + " (study aborted after " +
                                      std::to_string(report.rows.size()) +
                                      " completed K values)");
        }

        KSummary row{K, {}};
        for (std::size_t j = 0; j < n_var; ++j) {
            double sum = 0.0;
            for (int t = 0; t < config.trials; ++t) sum += estimates[t * n_var + j];
            const double mean = sum / config.trials;
            double ss = 0.0;
            for (int t = 0; t < config.trials; ++t) {
                const double d = estimates[t * n_var + j] - mean;
                ss += d * d;
            }
            VariantSummary s{};
            s.variant = config.variants[j];
            s.mean_theta_hat = mean;
            s.mean_bias = mean - config.theta;
            s.var_theta_hat = ss / (config.trials - 1);
            s.inv_var_normalized =
                s.var_theta_hat > 0.0
                    ? config.theta * config.theta / (config.N * s.var_theta_hat)
                    : std::numeric_limits<double>::infinity();
            attach_overlays(config, K, s);
            row.variants.push_back(s);
        }
        report.rows.push_back(std::move(row));
    }
    return report;
}

std::vector<ProbeRow> convergence_probe(const DistributionModel& model, double theta,
                                        const std::vector<int>& K_list, int replicates,
                                        std::uint64_t seed, unsigned threads) {
    require_positive_theta(theta);
    if (replicates < 1000) {
        throw Error(ErrorCode::parameter_domain, "convergence_probe needs >= 1000 replicates");
    }
    const unsigned n_threads = resolve_threads(threads);
    std::vector<ProbeRow> out;
    for (int K : K_list) {
        if (K < 1) throw Error(ErrorCode::parameter_domain, "convergence_probe needs K >= 1");
        // Two independent batches: the first is summarized, the second supplies
        // the reference estimate of E[Y_max].
        const std::int64_t total = 2LL * replicates;
        std::vector<double> maxima(static_cast<std::size_t>(total));
        parallel_for(total, n_threads, [&](std::int64_t r) {
            std::mt19937_64 engine(trial_seed(seed, K, r));
            // The quantile is increasing, so the maximum of the draws is the
            // quantile of the maximum uniform.
            std::uint64_t best = 0;
            for (int i = 0; i < K; ++i) best = std::max(best, engine());
            maxima[static_cast<std::size_t>(r)] = model.quantile(unit_open(best), theta);
        });
        auto mean_of = [](auto first, auto last) {
            double s = 0.0;
            for (auto it = first; it != last; ++it) s += *it;
            return s / static_cast<double>(last - first);
        };
        const auto mid = maxima.begin() + replicates;
        const double mean_a = mean_of(maxima.begin(), mid);
        const double mean_b = mean_of(mid, maxima.end());
        double ss = 0.0;
        for (auto it = maxima.begin(); it != mid; ++it) ss += (*it - mean_a) * (*it - mean_a);
        ProbeRow row{};
        row.K = K;
        row.mean_ymax = mean_a;
        row.var_ymax = ss / (replicates - 1);
        row.mean_ratio = mean_a / mean_b;
        out.push_back(row);
    }
    return out;
}

}  // namespace extremefim
