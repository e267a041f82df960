#include <gtest/gtest.h>

#include <sstream>

#include "extremefim/error.hpp"
#include "extremefim/extreme_log.hpp"
#include "extremefim/report_io.hpp"
#include "json.hpp"

using namespace extremefim;

namespace {

ErrorCode parse_error(const std::string& text, std::string* message = nullptr) {
    std::istringstream in(text);
    try {
        read_extreme_log(in);
    } catch (const Error& e) {
        if (message) *message = e.what();
        return e.code();
    }
    ADD_FAILURE() << "log parsed without error";
    return ErrorCode::io;
}

StudyReport tiny_report() {
    StudyConfig c;
    c.N = 10;
    c.trials = 50;
    c.K_list = {5};
    c.base_seed = 3;
    return run_study(c);
}

}  // namespace

TEST(ExtremeLog, ParsesRowsInOrder) {
    std::istringstream in("\xEF\xBB\xBFinterval_id,y_min,y_max\r\n7,0.5,2.5\r\n3,0.25,1e1\r\n\n");
    const auto rows = read_extreme_log(in);
    ASSERT_EQ(rows.size(), 2u);
    EXPECT_EQ(rows[0].interval_id, 7);
    EXPECT_DOUBLE_EQ(rows[1].y_max, 10.0);
    const auto d = to_dataset(rows, 4);
    EXPECT_EQ(d.K(), 4);
    EXPECT_EQ(d.N(), 2u);
}

TEST(ExtremeLog, ReportsLineNumbers) {
    std::string msg;
    EXPECT_EQ(parse_error("interval_id,y_min,y_max\n0,1,2\n1,abc,3\n", &msg), ErrorCode::parse);
    EXPECT_NE(msg.find("line 3"), std::string::npos) << msg;
    EXPECT_EQ(parse_error("interval_id,y_min,y_max\n0,3,2\n", &msg), ErrorCode::domain);
    EXPECT_NE(msg.find("line 2"), std::string::npos) << msg;
    EXPECT_EQ(parse_error("interval_id,y_min,y_max\n0,1,2\n0,1,2\n"), ErrorCode::domain);
    EXPECT_EQ(parse_error("id,lo,hi\n0,1,2\n"), ErrorCode::parse);
    EXPECT_EQ(parse_error("interval_id,y_min,y_max\n0,1\n"), ErrorCode::parse);
    EXPECT_EQ(parse_error("interval_id,y_min,y_max\n0,1,2,3\n"), ErrorCode::parse);
    EXPECT_EQ(parse_error("interval_id,y_min,y_max\n0,1,inf\n"), ErrorCode::parse);
    EXPECT_EQ(parse_error("interval_id,y_min,y_max\n"), ErrorCode::shape);
    EXPECT_EQ(parse_error(""), ErrorCode::parse);
}

TEST(ExtremeLog, MissingFile) {
    try {
        read_extreme_log_file("/nonexistent/extremes.csv");
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::io);
    }
}

TEST(ExtremeLog, BundledSample) {
    const auto rows = read_extreme_log_file(std::string(EXTREMEFIM_TEST_DATA_DIR) +
                                            "/extremes_k10.csv");
    EXPECT_EQ(rows.size(), 200u);
}

TEST(TidyCsv, RoundTripIsExact) {
    const auto rows = tidy_rows(tiny_report());
    ASSERT_FALSE(rows.empty());
    std::stringstream buf;
    write_tidy_csv(buf, rows);
    EXPECT_EQ(buf.str().rfind("K,variant,source,value\n", 0), 0u);
    EXPECT_EQ(read_tidy_csv(buf), rows);
}

TEST(TidyCsv, EmpiricalRowsCarryVariance) {
    const auto report = tiny_report();
    const auto rows = tidy_rows(report);
    const auto* mx = report.find(5, {Variant::max});
    ASSERT_NE(mx, nullptr);
    bool found = false;
    for (const auto& r : rows) {
        if (r.variant == "max" && r.source == "empirical") {
            EXPECT_EQ(r.value, mx->var_theta_hat);
            found = true;
        }
    }
    EXPECT_TRUE(found);
}

TEST(TidyCsv, MalformedInput) {
    std::istringstream bad("K,variant,source,value\n5,max,empirical\n");
    EXPECT_THROW(read_tidy_csv(bad), Error);
    std::istringstream bad_num("K,variant,source,value\n5,max,empirical,x\n");
    EXPECT_THROW(read_tidy_csv(bad_num), Error);
}

TEST(StudyJson, SnakeCaseKeys) {
    const auto j = nlohmann::json::parse(study_json(tiny_report()));
    EXPECT_EQ(j.at("seed"), 3);
    EXPECT_EQ(j.at("model"), "exponential");
    const auto& row = j.at("rows").at(0);
    EXPECT_EQ(row.at("k"), 5);
    EXPECT_EQ(row.at("variant"), "opt");
    EXPECT_TRUE(row.contains("inv_var_normalized"));
    EXPECT_TRUE(row.at("crlb_quadrature").is_null());
}
