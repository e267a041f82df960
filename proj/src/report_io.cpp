#include "extremefim/report_io.hpp"

#include <charconv>
#include <iomanip>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>

#include "extremefim/error.hpp"
#include "json.hpp"

namespace extremefim {

namespace {

constexpr const char* kTidyHeader = "K,variant,source,value";

std::vector<std::string> split_fields(const std::string& line) {
    std::vector<std::string> fields;
    std::string field;
    std::istringstream ss(line);
    while (std::getline(ss, field, ',')) fields.push_back(field);
    if (!line.empty() && line.back() == ',') fields.emplace_back();
    return fields;
}

void strip_cr(std::string& line) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
}

nlohmann::json optional_number(const std::optional<double>& v) {
    return v ? nlohmann::json(*v) : nlohmann::json(nullptr);
}

}  // namespace

std::vector<TidyRow> tidy_rows(const StudyReport& report) {
    std::vector<TidyRow> rows;
    for (const auto& k : report.rows) {
        for (const auto& s : k.variants) {
            const std::string label = variant_label(s.variant);
            rows.push_back({k.K, label, "empirical", s.var_theta_hat});
            if (s.crlb_closed) rows.push_back({k.K, label, "crlb_closed", *s.crlb_closed});
            if (s.crlb_plugin) rows.push_back({k.K, label, "crlb_plugin", *s.crlb_plugin});
            if (s.crlb_quadrature) {
                rows.push_back({k.K, label, "crlb_quadrature", *s.crlb_quadrature});
            }
        }
    }
    return rows;
}

void write_tidy_csv(std::ostream& out, const std::vector<TidyRow>& rows) {
    out << kTidyHeader << '\n';
    const auto old_precision = out.precision(std::numeric_limits<double>::max_digits10);
    for (const auto& r : rows) {
        out << r.K << ',' << r.variant << ',' << r.source << ',' << r.value << '\n';
    }
    out.precision(old_precision);
}

std::vector<TidyRow> read_tidy_csv(std::istream& in) {
    std::string line;
    if (!std::getline(in, line)) throw Error(ErrorCode::parse, "tidy CSV is empty");
    strip_cr(line);
    if (line != kTidyHeader) {
        throw Error(ErrorCode::parse, "line 1: expected header '" + std::string(kTidyHeader) + "'");
    }
    std::vector<TidyRow> rows;
    int line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        strip_cr(line);
        if (line.empty()) continue;
        const auto f = split_fields(line);
        if (f.size() != 4) {
            throw Error(ErrorCode::parse, "line " + std::to_string(line_no) + ": expected 4 fields");
        }
        TidyRow r{};
        r.variant = f[1];
        r.source = f[2];
        const auto k_res = std::from_chars(f[0].data(), f[0].data() + f[0].size(), r.K);
        const auto v_res = std::from_chars(f[3].data(), f[3].data() + f[3].size(), r.value);
        if (k_res.ec != std::errc{} || k_res.ptr != f[0].data() + f[0].size() ||
            v_res.ec != std::errc{} || v_res.ptr != f[3].data() + f[3].size()) {
            throw Error(ErrorCode::parse, "line " + std::to_string(line_no) + ": malformed number");
        }
        rows.push_back(std::move(r));
    }
    return rows;
}

std::string study_json(const StudyReport& report) {
    nlohmann::json j;
    j["theta"] = report.theta;
    j["n"] = report.N;
    j["trials"] = report.trials;
    j["seed"] = report.base_seed;
    j["model"] = report.model;
    auto& rows = j["rows"] = nlohmann::json::array();
    for (const auto& k : report.rows) {
        for (const auto& s : k.variants) {
            rows.push_back({
                {"k", k.K},
                {"variant", variant_label(s.variant)},
                {"mean_theta_hat", s.mean_theta_hat},
                {"mean_bias", s.mean_bias},
                {"var_theta_hat", s.var_theta_hat},
                {"inv_var_normalized", s.inv_var_normalized},
                {"crlb_closed", optional_number(s.crlb_closed)},
                {"crlb_plugin", optional_number(s.crlb_plugin)},
                {"crlb_quadrature", optional_number(s.crlb_quadrature)},
            });
        }
    }
    return j.dump(2);
}

}  // namespace extremefim
