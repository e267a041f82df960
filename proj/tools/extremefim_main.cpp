// extremefim command-line front end. Talks to the library through the C API only.

#include <cstdio>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <limits>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "extremefim/extremefim.h"
#include "json.hpp"

namespace {

constexpr int kExitFailure = 1;
constexpr int kExitIo = 2;

struct ModelDeleter {
    void operator()(efim_model* m) const { efim_model_destroy(m); }
};
struct DatasetDeleter {
    void operator()(efim_dataset* d) const { efim_dataset_destroy(d); }
};
struct StudyDeleter {
    void operator()(efim_study* s) const { efim_study_destroy(s); }
};
using ModelPtr = std::unique_ptr<efim_model, ModelDeleter>;
using DatasetPtr = std::unique_ptr<efim_dataset, DatasetDeleter>;
using StudyPtr = std::unique_ptr<efim_study, StudyDeleter>;

// Thrown by the command bodies; carries the process exit code.
struct CommandError {
    int exit_code;
    std::string message;
};

void check(efim_status status, const std::string& context) {
    if (status == EFIM_OK) return;
    const int code = status == EFIM_E_IO ? kExitIo : kExitFailure;
    throw CommandError{code, context + ": " + efim_last_error()};
}

ModelPtr make_model(const std::string& name) {
    efim_model* raw = nullptr;
    check(efim_model_create(name.c_str(), &raw), "model");
    return ModelPtr(raw);
}

std::vector<std::string> split_names(const std::string& csv) {
    std::vector<std::string> out;
    std::string item;
    for (char c : csv) {
        if (c == ',') {
            out.push_back(item);
            item.clear();
        } else {
            item.push_back(c);
        }
    }
    out.push_back(item);
    return out;
}

std::string fmt6(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.6g", v);
    return buf;
}

// --- table1 ----------------------------------------------------------------

struct Table1Options {
    std::vector<int> K_list{5, 10, 25, 50, 100, 1000};
    double theta = 1.0;
    int N = 1;
};

// One L-equivalent cell; "error" (with the reason on stderr) if undefined.
// The computation runs here so efim_last_error() still refers to it.
template <class Compute>
std::string l_cell(int K, const char* column, Compute&& compute, efim_fim& fim, bool& ok) {
    double l = 0.0;
    efim_status status = compute(&fim);
    if (status == EFIM_OK) status = efim_l_equivalent(&fim, &l);
    ok = status == EFIM_OK;
    if (!ok) {
        std::fprintf(stderr, "K=%d %s: %s\n", K, column, efim_last_error());
        return "error";
    }
    if (fim.breakdown) std::fprintf(stderr, "K=%d %s: non-positive plug-in information\n", K, column);
    return fmt6(l);
}

int cmd_table1(const Table1Options& o) {
    auto model = make_model("exponential");
    const efim_model* m = model.get();
    std::printf("%-8s %-10s %-10s %-10s %-10s %-10s\n", "K", "opt", "min", "max", "mix", "delta");
    for (int K : o.K_list) {
        efim_fim opt{}, mn{}, mx{}, mix{};
        bool ok_opt, ok_min, ok_max, ok_mix;
        const std::string c_opt = l_cell(
            K, "opt", [&](efim_fim* f) { return efim_fim_opt(m, o.theta, o.N, K, f); }, opt, ok_opt);
        const std::string c_min = l_cell(
            K, "min", [&](efim_fim* f) { return efim_fim_min_exact(m, o.theta, o.N, K, f); }, mn,
            ok_min);
        const std::string c_max = l_cell(
            K, "max",
            [&](efim_fim* f) { return efim_fim_plugin(m, EFIM_VARIANT_MAX, o.theta, o.N, K, f); },
            mx, ok_max);
        const std::string c_mix = l_cell(
            K, "mix",
            [&](efim_fim* f) { return efim_fim_plugin(m, EFIM_VARIANT_MIX, o.theta, o.N, K, f); },
            mix, ok_mix);
        const std::string c_delta =
            ok_max && ok_mix ? fmt6((mix.value - mx.value) * o.theta * o.theta / o.N) : "error";
        std::printf("%-8d %-10s %-10s %-10s %-10s %-10s\n", K, c_opt.c_str(), c_min.c_str(),
                    c_max.c_str(), c_mix.c_str(), c_delta.c_str());
    }
    return 0;
}

// --- compare ---------------------------------------------------------------

struct CompareOptions {
    std::vector<int> K_list{5, 10, 20, 30, 40, 50, 100, 200};
    double theta = 1.0;
    bool simulate = false;
    int N = 100;
    int trials = 10000;
    std::optional<std::uint64_t> seed;
};

StudyPtr run_max_study(const std::vector<int>& K_list, double theta, int N, int trials,
                       std::uint64_t seed, const std::vector<efim_variant>& variants,
                       const std::vector<int>& Ls) {
    efim_study* raw = nullptr;
    check(efim_study_create(&raw), "study");
    StudyPtr study(raw);
    check(efim_study_set_theta(study.get(), theta), "--theta");
    check(efim_study_set_n(study.get(), N), "--N");
    check(efim_study_set_trials(study.get(), trials), "--trials");
    check(efim_study_set_seed(study.get(), seed), "--seed");
    check(efim_study_set_k_list(study.get(), K_list.data(), K_list.size()), "--K-list");
    check(efim_study_set_variants(study.get(), variants.data(), Ls.data(), variants.size()),
          "--variant");
    check(efim_study_run(study.get()), "simulate");
    return study;
}

int cmd_compare(const CompareOptions& o) {
    auto model = make_model("exponential");
    std::optional<StudyPtr> study;
    if (o.simulate) {
        if (!o.seed) throw CommandError{kExitFailure, "--simulate requires --seed"};
        study = run_max_study(o.K_list, o.theta, o.N, o.trials, *o.seed, {EFIM_VARIANT_MAX}, {0});
    }
    std::printf("%-8s %-12s %-16s%s\n", "K", "plug_in", "quadrature_exact",
                o.simulate ? " empirical" : "");
    for (std::size_t i = 0; i < o.K_list.size(); ++i) {
        const int K = o.K_list[i];
        efim_fim plug{}, quad{};
        double l_plug = 0, l_quad = 0;
        std::string plug_s = "error", quad_s = "error";
        if (efim_fim_plugin(model.get(), EFIM_VARIANT_MAX, o.theta, 1, K, &plug) == EFIM_OK &&
            efim_l_equivalent(&plug, &l_plug) == EFIM_OK) {
            plug_s = fmt6(l_plug);
        } else {
            std::fprintf(stderr, "K=%d plug-in: %s\n", K, efim_last_error());
        }
        if (efim_fim_quadrature(model.get(), EFIM_VARIANT_MAX, o.theta, 1, K, &quad) == EFIM_OK &&
            efim_l_equivalent(&quad, &l_quad) == EFIM_OK) {
            quad_s = fmt6(l_quad);
        } else {
            std::fprintf(stderr, "K=%d quadrature: %s\n", K, efim_last_error());
        }
        std::string emp_s;
        if (study) {
            efim_study_row row{};
            check(efim_study_get_row(study->get(), i, &row), "study row");
            emp_s = " " + fmt6(row.inv_var_normalized);
        }
        std::printf("%-8d %-12s %-16s%s\n", K, plug_s.c_str(), quad_s.c_str(), emp_s.c_str());
    }
    return 0;
}

// --- simulate --------------------------------------------------------------

struct SimulateOptions {
    std::vector<int> K_list{5, 10, 15, 20, 25, 30, 40, 50, 75, 100};
    double theta = 1.0;
    int N = 100;
    int trials = 10000;
    std::optional<std::uint64_t> seed;
    std::vector<std::string> variants{"min", "max", "mix", "opt"};
    int L = 1;
    std::string out = "study.csv";
    unsigned threads = 0;
};

std::string json_path_for(const std::string& csv_path) {
    const auto slash = csv_path.find_last_of('/');
    const auto dot = csv_path.find_last_of('.');
    if (dot != std::string::npos && (slash == std::string::npos || dot > slash)) {
        return csv_path.substr(0, dot) + ".json";
    }
    return csv_path + ".json";
}

void require_writable(const std::string& path) {
    std::ofstream probe(path, std::ios::app);
    if (!probe) throw CommandError{kExitIo, "cannot write '" + path + "'"};
}

int cmd_simulate(const SimulateOptions& o) {
    if (!o.seed) throw CommandError{kExitFailure, "simulate requires --seed"};
    std::vector<efim_variant> variants;
    std::vector<int> Ls;
    for (const auto& v : o.variants) {
        if (v == "opt") variants.push_back(EFIM_VARIANT_OPT);
        else if (v == "min") variants.push_back(EFIM_VARIANT_MIN);
        else if (v == "max") variants.push_back(EFIM_VARIANT_MAX);
        else if (v == "mix") variants.push_back(EFIM_VARIANT_MIX);
        else if (v == "partial") variants.push_back(EFIM_VARIANT_PARTIAL);
        else throw CommandError{kExitFailure, "unknown variant '" + v + "'"};
        Ls.push_back(variants.back() == EFIM_VARIANT_PARTIAL ? o.L : 0);
    }
    const std::string json_path = json_path_for(o.out);
    require_writable(o.out);
    require_writable(json_path);

    efim_study* raw = nullptr;
    check(efim_study_create(&raw), "study");
    StudyPtr study(raw);
    check(efim_study_set_theta(study.get(), o.theta), "--theta");
    check(efim_study_set_n(study.get(), o.N), "--N");
    check(efim_study_set_trials(study.get(), o.trials), "--trials");
    check(efim_study_set_seed(study.get(), *o.seed), "--seed");
    check(efim_study_set_threads(study.get(), o.threads), "--threads");
    check(efim_study_set_k_list(study.get(), o.K_list.data(), o.K_list.size()), "--K-list");
    check(efim_study_set_variants(study.get(), variants.data(), Ls.data(), variants.size()),
          "--variant");
    check(efim_study_run(study.get()), "simulate");
    check(efim_study_write_csv(study.get(), o.out.c_str()), "--out");
    check(efim_study_write_json(study.get(), json_path.c_str()), "--out");
    std::printf("wrote %s and %s\n", o.out.c_str(), json_path.c_str());
    return 0;
}

// --- estimate --------------------------------------------------------------

struct EstimateOptions {
    std::string input;
    int K = 0;
    std::string variant = "max";
};

int cmd_estimate(const EstimateOptions& o) {
    efim_dataset* raw = nullptr;
    check(efim_dataset_read_csv(o.input.c_str(), o.K, &raw), o.input);
    DatasetPtr data(raw);

    efim_variant variant = EFIM_VARIANT_MAX;
    if (o.variant == "min") variant = EFIM_VARIANT_MIN;
    else if (o.variant == "mix") variant = EFIM_VARIANT_MIX;

    efim_estimate est{};
    check(efim_estimate_extremes(data.get(), variant, &est), "estimate");

    const int N = static_cast<int>(efim_dataset_size(data.get()));
    nlohmann::json j;
    j["variant"] = o.variant;
    j["theta_hat"] = est.theta_hat;
    j["n"] = N;
    j["k"] = o.K;

    auto model = make_model("exponential");
    efim_fim fim{};
    double bound = 0.0;
    if (efim_fim_plugin(model.get(), variant, est.theta_hat, N, o.K, &fim) == EFIM_OK &&
        efim_crlb(&fim, &bound) == EFIM_OK) {
        j["crlb_plugin"] = bound;
    } else {
        j["crlb_plugin"] = nullptr;
    }
    if (est.has_optimizer) {
        j["optimizer"] = {{"iterations", est.iterations},
                          {"bracket", {est.bracket_lo, est.bracket_hi}},
                          {"converged", est.converged != 0},
                          {"loglik_at_opt", est.loglik_at_opt},
                          {"expansions", est.expansions}};
    } else {
        j["optimizer"] = nullptr;
    }
    if (est.has_min_without_k_factor) j["min_without_k_factor"] = est.min_without_k_factor;
    std::cout << j.dump(2) << '\n';
    return 0;
}

// --- astat -----------------------------------------------------------------

struct AstatOptions {
    std::string dist = "exponential";
    double theta = 1.0;
    int K = 10;
};

int cmd_astat(const AstatOptions& o) {
    auto model = make_model(o.dist);
    efim_astat a{};
    check(efim_a_statistic(model.get(), o.theta, o.K, &a), "astat");
    const char* cls = a.sign_class == EFIM_SIGN_MAX_FAVORED   ? "max_favored"
                      : a.sign_class == EFIM_SIGN_MIN_FAVORED ? "min_favored"
                                                              : "balanced";
    nlohmann::json j{{"dist", o.dist},
                     {"theta", o.theta},
                     {"k", o.K},
                     {"a_statistic", a.value},
                     {"sign_class", cls},
                     {"j_plugin_min", a.j_plugin_min},
                     {"j_plugin_max", a.j_plugin_max}};
    std::cout << j.dump(2) << '\n';
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Fisher information and estimators for per-interval extreme measurements"};
    app.require_subcommand(1);

    Table1Options t1;
    auto* table1 = app.add_subcommand("table1", "L-equivalent informations for a list of K");
    table1->add_option("--K-list", t1.K_list, "group sizes")->delimiter(',');
    table1->add_option("--theta", t1.theta, "exponential mean")->check(CLI::PositiveNumber);
    table1->add_option("--N", t1.N, "number of intervals")->check(CLI::PositiveNumber);

    CompareOptions cmp;
    auto* compare = app.add_subcommand("compare", "plug-in vs quadrature maxima information");
    compare->add_option("--K-list", cmp.K_list, "group sizes")->delimiter(',');
    compare->add_option("--theta", cmp.theta, "exponential mean")->check(CLI::PositiveNumber);
    compare->add_flag("--simulate", cmp.simulate, "add an empirical column from a simulation");
    compare->add_option("--N", cmp.N, "intervals per simulated dataset")->check(CLI::PositiveNumber);
    compare->add_option("--trials", cmp.trials, "simulation trials per K")->check(CLI::PositiveNumber);
    compare->add_option("--seed", cmp.seed, "simulation seed");

    SimulateOptions sim;
    auto* simulate = app.add_subcommand("simulate", "Monte-Carlo study, tidy CSV + JSON output");
    simulate->add_option("--K-list", sim.K_list, "group sizes")->delimiter(',');
    simulate->add_option("--theta", sim.theta, "exponential mean")->check(CLI::PositiveNumber);
    simulate->add_option("--N", sim.N, "intervals per dataset")->check(CLI::PositiveNumber);
    simulate->add_option("--trials", sim.trials, "trials per K")->check(CLI::PositiveNumber);
    simulate->add_option("--seed", sim.seed, "base seed (required)")->required();
    simulate->add_option("--variant", sim.variants, "opt, min, max, mix, partial")
        ->delimiter(',')
        ->check(CLI::IsMember({"opt", "min", "max", "mix", "partial"}));
    simulate->add_option("--L", sim.L, "retained samples for the partial variant")
        ->check(CLI::PositiveNumber);
    simulate->add_option("--out", sim.out, "tidy CSV path; the JSON summary goes next to it");
    simulate->add_option("--threads", sim.threads, "worker threads (0 = all cores)");

    EstimateOptions est;
    auto* estimate = app.add_subcommand("estimate", "estimate theta from an extremes log");
    estimate->add_option("input", est.input, "CSV with header interval_id,y_min,y_max")->required();
    estimate->add_option("--K", est.K, "group size behind every interval")
        ->required()
        ->check(CLI::Range(2, std::numeric_limits<int>::max()));
    estimate->add_option("--variant", est.variant, "min, max or mix")
        ->check(CLI::IsMember({"min", "max", "mix"}));

    AstatOptions ast;
    auto* astat = app.add_subcommand("astat", "sign test: do maxima or minima carry more information");
    astat->add_option("--dist", ast.dist, "distribution")
        ->check(CLI::IsMember(split_names(efim_supported_models())));
    astat->add_option("--theta", ast.theta, "parameter")->check(CLI::PositiveNumber);
    astat->add_option("--K", ast.K, "group size")->check(CLI::Range(2, std::numeric_limits<int>::max()));

    CLI11_PARSE(app, argc, argv);

    try {
        if (*table1) return cmd_table1(t1);
        if (*compare) return cmd_compare(cmp);
        if (*simulate) return cmd_simulate(sim);
        if (*estimate) return cmd_estimate(est);
        if (*astat) return cmd_astat(ast);
    } catch (const CommandError& e) {
        std::cerr << "error: " << e.message << '\n';
        return e.exit_code;
    }
    return kExitFailure;
}
