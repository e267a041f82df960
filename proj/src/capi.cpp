#include "extremefim/extremefim.h"

#include <fstream>
#include <memory>
#include <new>
#include <optional>
#include <string>

#include "extremefim/distributions.hpp"
#include "extremefim/error.hpp"
#include "extremefim/estimators.hpp"
#include "extremefim/extreme_log.hpp"
#include "extremefim/extremes.hpp"
#include "extremefim/fim.hpp"
#include "extremefim/montecarlo.hpp"
#include "extremefim/report_io.hpp"

namespace ef = extremefim;

struct efim_model {
    std::shared_ptr<const ef::DistributionModel> impl;
};

struct efim_dataset {
    ef::ExtremeDataset impl;
};

struct efim_study {
    ef::StudyConfig config;
    bool seed_set = false;
    std::optional<ef::StudyReport> report;
};

namespace {

thread_local std::string g_last_error;

efim_status fail(efim_status status, std::string message) {
    g_last_error = std::move(message);
    return status;
}

template <class Body>
efim_status guarded(Body&& body) {
    try {
        body();
        g_last_error.clear();
        return EFIM_OK;
    } catch (const ef::Error& e) {
        return fail(static_cast<efim_status>(e.code()), e.what());
    } catch (const std::bad_alloc&) {
        return fail(EFIM_E_INTERNAL, "out of memory");
    } catch (const std::exception& e) {
        return fail(EFIM_E_INTERNAL, e.what());
    } catch (...) {
        return fail(EFIM_E_INTERNAL, "unknown exception");
    }
}

#define EFIM_REQUIRE(ptr)                                                      \
    do {                                                                       \
        if ((ptr) == nullptr) return fail(EFIM_E_NULL_ARGUMENT, #ptr " is NULL"); \
    } while (0)

ef::Variant to_variant(efim_variant v) {
    switch (v) {
        case EFIM_VARIANT_OPT: return ef::Variant::opt;
        case EFIM_VARIANT_PARTIAL: return ef::Variant::partial;
        case EFIM_VARIANT_MIN: return ef::Variant::min;
        case EFIM_VARIANT_MAX: return ef::Variant::max;
        case EFIM_VARIANT_MIX: return ef::Variant::mix;
    }
    throw ef::Error(ef::ErrorCode::parameter_domain, "unknown variant " + std::to_string(v));
}

efim_variant from_variant(ef::Variant v) {
    switch (v) {
        case ef::Variant::opt: return EFIM_VARIANT_OPT;
        case ef::Variant::partial: return EFIM_VARIANT_PARTIAL;
        case ef::Variant::min: return EFIM_VARIANT_MIN;
        case ef::Variant::max: return EFIM_VARIANT_MAX;
        case ef::Variant::mix: return EFIM_VARIANT_MIX;
    }
    return EFIM_VARIANT_OPT;
}

efim_fim to_c(const ef::FimValue& f) {
    efim_fim out{};
    out.variant = from_variant(f.variant);
    out.L = f.L;
    out.method = static_cast<efim_method>(f.method);
    out.value = f.value;
    out.N = f.N;
    out.K = f.K;
    out.theta = f.theta;
    out.low_accuracy = f.low_accuracy ? 1 : 0;
    out.breakdown = f.breakdown ? 1 : 0;
    out.error_estimate = f.error_estimate;
    return out;
}

ef::FimValue from_c(const efim_fim& f) {
    ef::FimValue out{};
    out.variant = to_variant(f.variant);
    out.L = f.L;
    out.method = static_cast<ef::FimMethod>(f.method);
    out.value = f.value;
    out.N = f.N;
    out.K = f.K;
    out.theta = f.theta;
    out.low_accuracy = f.low_accuracy != 0;
    out.breakdown = f.breakdown != 0;
    out.error_estimate = f.error_estimate;
    return out;
}

efim_estimate to_c(const ef::Estimate& e) {
    efim_estimate out{};
    out.variant = from_variant(e.variant);
    out.L = e.L;
    out.theta_hat = e.theta_hat;
    if (e.optimizer) {
        out.has_optimizer = 1;
        out.iterations = e.optimizer->iterations;
        out.bracket_lo = e.optimizer->bracket_lo;
        out.bracket_hi = e.optimizer->bracket_hi;
        out.converged = e.optimizer->converged ? 1 : 0;
        out.loglik_at_opt = e.optimizer->loglik_at_opt;
        out.expansions = e.optimizer->expansions;
    }
    if (e.min_without_k_factor) {
        out.has_min_without_k_factor = 1;
        out.min_without_k_factor = *e.min_without_k_factor;
    }
    return out;
}

void write_text_file(const char* path, auto&& writer) {
    std::ofstream out(path);
    if (!out) throw ef::Error(ef::ErrorCode::io, std::string("cannot open '") + path + "' for writing");
    writer(out);
    out.flush();
    if (!out) throw ef::Error(ef::ErrorCode::io, std::string("write to '") + path + "' failed");
}

}  // namespace

extern "C" {

const char* efim_last_error(void) { return g_last_error.c_str(); }

const char* efim_status_string(efim_status status) {
    switch (status) {
        case EFIM_OK: return "ok";
        case EFIM_E_NULL_ARGUMENT: return "null argument";
        case EFIM_E_INTERNAL: return "internal error";
        default: break;
    }
    if (status >= EFIM_E_PARAMETER && status <= EFIM_E_PARSE) {
        return ef::to_string(static_cast<ef::ErrorCode>(status));
    }
    return "unknown status";
}

const char* efim_supported_models(void) { return "exponential,uniform,uniform-centered"; }

efim_status efim_model_create(const char* name, efim_model** out) {
    EFIM_REQUIRE(name);
    EFIM_REQUIRE(out);
    return guarded([&] {
        auto impl = ef::model_by_name(name);
        if (!impl) {
            throw ef::Error(ef::ErrorCode::unsupported,
                            std::string("unknown distribution '") + name +
                                "'; supported: " + efim_supported_models());
        }
        *out = new efim_model{std::move(impl)};
    });
}

void efim_model_destroy(efim_model* model) { delete model; }

const char* efim_model_name(const efim_model* model) {
    return model ? model->impl->name().data() : "";
}

efim_status efim_pdf(const efim_model* model, double x, double theta, double* out) {
    EFIM_REQUIRE(model);
    EFIM_REQUIRE(out);
    return guarded([&] { *out = model->impl->pdf(x, theta); });
}

efim_status efim_cdf(const efim_model* model, double x, double theta, double* out) {
    EFIM_REQUIRE(model);
    EFIM_REQUIRE(out);
    return guarded([&] { *out = model->impl->cdf(x, theta); });
}

efim_status efim_characteristic_values(const efim_model* model, double theta, int K, double* mu1,
                                       double* muK) {
    EFIM_REQUIRE(model);
    EFIM_REQUIRE(mu1);
    EFIM_REQUIRE(muK);
    return guarded([&] {
        const auto cv = ef::characteristic_values(*model->impl, theta, K);
        *mu1 = cv.mu1;
        *muK = cv.muK;
    });
}

efim_status efim_fim_opt(const efim_model* model, double theta, int N, int K, efim_fim* out) {
    EFIM_REQUIRE(model);
    EFIM_REQUIRE(out);
    return guarded([&] { *out = to_c(ef::fim_opt(*model->impl, theta, N, K)); });
}

efim_status efim_fim_partial(const efim_model* model, double theta, int N, int K, int L,
                             efim_fim* out) {
    EFIM_REQUIRE(model);
    EFIM_REQUIRE(out);
    return guarded([&] { *out = to_c(ef::fim_partial(*model->impl, theta, N, K, L)); });
}

efim_status efim_fim_min_exact(const efim_model* model, double theta, int N, int K,
                               efim_fim* out) {
    EFIM_REQUIRE(model);
    EFIM_REQUIRE(out);
    return guarded([&] { *out = to_c(ef::fim_min_exact(*model->impl, theta, N, K)); });
}

efim_status efim_fim_plugin(const efim_model* model, efim_variant kind, double theta, int N,
                            int K, efim_fim* out) {
    EFIM_REQUIRE(model);
    EFIM_REQUIRE(out);
    return guarded(
        [&] { *out = to_c(ef::fim_plugin(*model->impl, to_variant(kind), theta, N, K)); });
}

efim_status efim_fim_quadrature(const efim_model* model, efim_variant kind, double theta, int N,
                                int K, efim_fim* out) {
    EFIM_REQUIRE(model);
    EFIM_REQUIRE(out);
    return guarded(
        [&] { *out = to_c(ef::fim_quadrature(*model->impl, to_variant(kind), theta, N, K)); });
}

efim_status efim_crlb(const efim_fim* fim, double* out) {
    EFIM_REQUIRE(fim);
    EFIM_REQUIRE(out);
    return guarded([&] { *out = ef::crlb(from_c(*fim)); });
}

efim_status efim_l_equivalent(const efim_fim* fim, double* out) {
    EFIM_REQUIRE(fim);
    EFIM_REQUIRE(out);
    return guarded([&] { *out = ef::l_equivalent(from_c(*fim)); });
}

efim_status efim_a_statistic(const efim_model* model, double theta, int K, efim_astat* out) {
    EFIM_REQUIRE(model);
    EFIM_REQUIRE(out);
    return guarded([&] {
        const auto a = ef::a_statistic(*model->impl, theta, K);
        out->value = a.value;
        out->sign_class = static_cast<efim_sign_class>(a.sign_class);
        out->K = a.K;
        out->theta = a.theta;
        out->j_plugin_min = a.j_plugin_min;
        out->j_plugin_max = a.j_plugin_max;
    });
}

efim_status efim_dataset_create(int K, const double* y_min, const double* y_max, size_t n,
                                efim_dataset** out) {
    EFIM_REQUIRE(out);
    if (n > 0) {
        EFIM_REQUIRE(y_min);
        EFIM_REQUIRE(y_max);
    }
    return guarded([&] {
        std::vector<ef::IntervalExtremes> rows(n);
        for (size_t i = 0; i < n; ++i) rows[i] = {y_min[i], y_max[i]};
        *out = new efim_dataset{ef::ExtremeDataset(K, std::move(rows))};
    });
}

efim_status efim_dataset_read_csv(const char* path, int K, efim_dataset** out) {
    EFIM_REQUIRE(path);
    EFIM_REQUIRE(out);
    return guarded([&] {
        const auto rows = ef::read_extreme_log_file(path);
        *out = new efim_dataset{ef::to_dataset(rows, K)};
    });
}

void efim_dataset_destroy(efim_dataset* dataset) { delete dataset; }

size_t efim_dataset_size(const efim_dataset* dataset) {
    return dataset ? dataset->impl.N() : 0;
}

int efim_dataset_group_size(const efim_dataset* dataset) {
    return dataset ? dataset->impl.K() : 0;
}

efim_status efim_estimate_extremes(const efim_dataset* dataset, efim_variant variant,
                                   efim_estimate* out) {
    EFIM_REQUIRE(dataset);
    EFIM_REQUIRE(out);
    return guarded([&] {
        switch (variant) {
            case EFIM_VARIANT_MIN: *out = to_c(ef::estimate_min(dataset->impl)); return;
            case EFIM_VARIANT_MAX: *out = to_c(ef::estimate_max(dataset->impl)); return;
            case EFIM_VARIANT_MIX: *out = to_c(ef::estimate_mix(dataset->impl)); return;
            default: break;
        }
        throw ef::Error(ef::ErrorCode::parameter_domain,
                        "extreme-based estimation supports min, max and mix");
    });
}

efim_status efim_estimate_samples(const double* values, size_t rows, size_t cols,
                                  efim_variant variant, int L, efim_estimate* out) {
    EFIM_REQUIRE(out);
    if (rows * cols > 0) EFIM_REQUIRE(values);
    return guarded([&] {
        ef::SampleMatrix m(rows, cols, std::vector<double>(values, values + rows * cols));
        switch (variant) {
            case EFIM_VARIANT_OPT: *out = to_c(ef::estimate_opt(m)); return;
            case EFIM_VARIANT_PARTIAL: *out = to_c(ef::estimate_partial(m, L)); return;
            default: break;
        }
        throw ef::Error(ef::ErrorCode::parameter_domain,
                        "raw-sample estimation supports opt and partial");
    });
}

efim_status efim_study_create(efim_study** out) {
    EFIM_REQUIRE(out);
    return guarded([&] { *out = new efim_study{}; });
}

void efim_study_destroy(efim_study* study) { delete study; }

efim_status efim_study_set_theta(efim_study* study, double theta) {
    EFIM_REQUIRE(study);
    return guarded([&] {
        ef::require_positive_theta(theta);
        study->config.theta = theta;
        study->report.reset();
    });
}

efim_status efim_study_set_n(efim_study* study, int N) {
    EFIM_REQUIRE(study);
    return guarded([&] {
        if (N < 1) throw ef::Error(ef::ErrorCode::parameter_domain, "N must be >= 1");
        study->config.N = N;
        study->report.reset();
    });
}

efim_status efim_study_set_trials(efim_study* study, int trials) {
    EFIM_REQUIRE(study);
    return guarded([&] {
        if (trials < 2) throw ef::Error(ef::ErrorCode::parameter_domain, "trials must be >= 2");
        study->config.trials = trials;
        study->report.reset();
    });
}

efim_status efim_study_set_seed(efim_study* study, uint64_t seed) {
    EFIM_REQUIRE(study);
    study->config.base_seed = seed;
    study->seed_set = true;
    study->report.reset();
    return EFIM_OK;
}

efim_status efim_study_set_threads(efim_study* study, unsigned threads) {
    EFIM_REQUIRE(study);
    study->config.threads = threads;
    return EFIM_OK;
}

efim_status efim_study_set_k_list(efim_study* study, const int* K, size_t n) {
    EFIM_REQUIRE(study);
    EFIM_REQUIRE(K);
    return guarded([&] {
        study->config.K_list.assign(K, K + n);
        study->report.reset();
    });
}

efim_status efim_study_set_variants(efim_study* study, const efim_variant* variants,
                                    const int* Ls, size_t n) {
    EFIM_REQUIRE(study);
    EFIM_REQUIRE(variants);
    return guarded([&] {
        std::vector<ef::VariantSpec> specs;
        for (size_t i = 0; i < n; ++i) {
            ef::VariantSpec v{to_variant(variants[i]), 0};
            if (v.kind == ef::Variant::partial) {
                if (Ls == nullptr) {
                    throw ef::Error(ef::ErrorCode::parameter_domain, "partial variant needs L");
                }
                v.L = Ls[i];
            }
            specs.push_back(v);
        }
        study->config.variants = std::move(specs);
        study->report.reset();
    });
}

efim_status efim_study_set_model(efim_study* study, const efim_model* model) {
    EFIM_REQUIRE(study);
    EFIM_REQUIRE(model);
    study->config.model = model->impl;
    study->report.reset();
    return EFIM_OK;
}

efim_status efim_study_run(efim_study* study) {
    EFIM_REQUIRE(study);
    if (!study->seed_set) {
        return fail(EFIM_E_PARAMETER, "study seed must be set explicitly before running");
    }
    return guarded([&] { study->report = ef::run_study(study->config); });
}

size_t efim_study_row_count(const efim_study* study) {
    if (!study || !study->report) return 0;
    size_t n = 0;
    for (const auto& k : study->report->rows) n += k.variants.size();
    return n;
}

efim_status efim_study_get_row(const efim_study* study, size_t index, efim_study_row* out) {
    EFIM_REQUIRE(study);
    EFIM_REQUIRE(out);
    if (!study->report) return fail(EFIM_E_PARAMETER, "study has not been run");
    for (const auto& k : study->report->rows) {
        if (index >= k.variants.size()) {
            index -= k.variants.size();
            continue;
        }
        const auto& s = k.variants[index];
        *out = efim_study_row{};
        out->K = k.K;
        out->variant = from_variant(s.variant.kind);
        out->L = s.variant.L;
        out->mean_theta_hat = s.mean_theta_hat;
        out->mean_bias = s.mean_bias;
        out->var_theta_hat = s.var_theta_hat;
        out->inv_var_normalized = s.inv_var_normalized;
        out->has_crlb_closed = s.crlb_closed.has_value();
        out->crlb_closed = s.crlb_closed.value_or(0.0);
        out->has_crlb_plugin = s.crlb_plugin.has_value();
        out->crlb_plugin = s.crlb_plugin.value_or(0.0);
        out->has_crlb_quadrature = s.crlb_quadrature.has_value();
        out->crlb_quadrature = s.crlb_quadrature.value_or(0.0);
        g_last_error.clear();
        return EFIM_OK;
    }
    return fail(EFIM_E_PARAMETER, "study row index out of range");
}

efim_status efim_study_write_csv(const efim_study* study, const char* path) {
    EFIM_REQUIRE(study);
    EFIM_REQUIRE(path);
    if (!study->report) return fail(EFIM_E_PARAMETER, "study has not been run");
    return guarded([&] {
        write_text_file(path,
                        [&](std::ostream& out) { ef::write_tidy_csv(out, ef::tidy_rows(*study->report)); });
    });
}

efim_status efim_study_write_json(const efim_study* study, const char* path) {
    EFIM_REQUIRE(study);
    EFIM_REQUIRE(path);
    if (!study->report) return fail(EFIM_E_PARAMETER, "study has not been run");
    return guarded([&] {
        write_text_file(path, [&](std::ostream& out) { out << ef::study_json(*study->report) << '\n'; });
    });
}

efim_status efim_convergence_probe(const efim_model* model, double theta, const int* K,
                                   size_t n_K, int replicates, uint64_t seed,
                                   efim_probe_row* out) {
    EFIM_REQUIRE(model);
    EFIM_REQUIRE(K);
    EFIM_REQUIRE(out);
    return guarded([&] {
        const auto rows = ef::convergence_probe(*model->impl, theta, std::vector<int>(K, K + n_K),
                                                replicates, seed);
        for (size_t i = 0; i < rows.size(); ++i) {
            out[i] = {rows[i].K, rows[i].var_ymax, rows[i].mean_ratio, rows[i].mean_ymax};
        }
    });
}

}  // extern "C"
