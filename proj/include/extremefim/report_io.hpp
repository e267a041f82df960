#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "extremefim/montecarlo.hpp"

namespace extremefim {

/// One line of the tidy study table: K,variant,source,value.
/// source is one of empirical, crlb_closed, crlb_plugin, crlb_quadrature;
/// empirical rows carry var(theta_hat).
struct TidyRow {
    int K;
    std::string variant;
    std::string source;
    double value;

    friend bool operator==(const TidyRow&, const TidyRow&) = default;
};

std::vector<TidyRow> tidy_rows(const StudyReport& report);

/// Header plus rows; values printed with max_digits10 so they parse back exactly.
void write_tidy_csv(std::ostream& out, const std::vector<TidyRow>& rows);
std::vector<TidyRow> read_tidy_csv(std::istream& in);

/// JSON summary (snake_case keys, full precision).
std::string study_json(const StudyReport& report);

}  // namespace extremefim
