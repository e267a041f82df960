#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "extremefim/extremes.hpp"

namespace extremefim {

/// One row of a per-interval extremes log (header interval_id,y_min,y_max).
struct ExtremeLogRow {
    std::int64_t interval_id;
    double y_min;
    double y_max;
};

/// Parses a log. Malformed rows raise Error(parse), y_min > y_max and
/// duplicate ids raise Error(domain); both messages name the line number.
std::vector<ExtremeLogRow> read_extreme_log(std::istream& in);
std::vector<ExtremeLogRow> read_extreme_log_file(const std::string& path);

/// Rows in file order, with the group size the log itself cannot carry.
ExtremeDataset to_dataset(const std::vector<ExtremeLogRow>& rows, int K);

}  // namespace extremefim
