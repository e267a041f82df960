#include "extremefim/extreme_log.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <string_view>
#include <unordered_set>

#include "extremefim/error.hpp"

namespace extremefim {

namespace {

std::string_view trim(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) {
        s.remove_suffix(1);
    }
    return s;
}

template <class T>
bool parse_number(std::string_view field, T& out) {
    field = trim(field);
    if (field.empty()) return false;
    const auto res = std::from_chars(field.data(), field.data() + field.size(), out);
    return res.ec == std::errc{} && res.ptr == field.data() + field.size();
}

[[noreturn]] void fail(ErrorCode code, int line, const std::string& what) {
    throw Error(code, "line " + std::to_string(line) + ": " + what);
}

}  // namespace

std::vector<ExtremeLogRow> read_extreme_log(std::istream& in) {
    std::string line;
    if (!std::getline(in, line)) throw Error(ErrorCode::parse, "line 1: empty input");
    std::string_view header = line;
    if (header.starts_with("\xEF\xBB\xBF")) header.remove_prefix(3);  // UTF-8 BOM
    if (trim(header) != "interval_id,y_min,y_max") {
        fail(ErrorCode::parse, 1, "expected header 'interval_id,y_min,y_max'");
    }

    std::vector<ExtremeLogRow> rows;
    std::unordered_set<std::int64_t> seen;
    int line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        std::string_view rest = trim(line);
        if (rest.empty()) continue;
        std::string_view fields[3];
        int count = 0;
        while (count < 3) {
            const auto comma = rest.find(',');
            fields[count++] = rest.substr(0, comma);
            if (comma == std::string_view::npos) {
                rest = {};
                break;
            }
            rest.remove_prefix(comma + 1);
            if (count == 3) fail(ErrorCode::parse, line_no, "too many fields");
        }
        if (count != 3) fail(ErrorCode::parse, line_no, "expected 3 fields");

        ExtremeLogRow row{};
        if (!parse_number(fields[0], row.interval_id)) {
            fail(ErrorCode::parse, line_no, "interval_id is not an integer");
        }
        if (!parse_number(fields[1], row.y_min) || !std::isfinite(row.y_min)) {
            fail(ErrorCode::parse, line_no, "y_min is not a finite number");
        }
        if (!parse_number(fields[2], row.y_max) || !std::isfinite(row.y_max)) {
            fail(ErrorCode::parse, line_no, "y_max is not a finite number");
        }
        if (row.y_min > row.y_max) fail(ErrorCode::domain, line_no, "y_min > y_max");
        if (!seen.insert(row.interval_id).second) {
            fail(ErrorCode::domain, line_no,
                 "duplicate interval_id " + std::to_string(row.interval_id));
        }
        rows.push_back(row);
    }
    if (rows.empty()) throw Error(ErrorCode::shape, "log contains no intervals");
    return rows;
}

std::vector<ExtremeLogRow> read_extreme_log_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error(ErrorCode::io, "cannot open '" + path + "'");
    return read_extreme_log(in);
}

ExtremeDataset to_dataset(const std::vector<ExtremeLogRow>& rows, int K) {
    std::vector<IntervalExtremes> intervals;
    intervals.reserve(rows.size());
    for (const auto& r : rows) intervals.push_back({r.y_min, r.y_max});
    return ExtremeDataset(K, std::move(intervals));
}

}  // namespace extremefim
