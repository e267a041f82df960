#include "extremefim/extremes.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "extremefim/error.hpp"

namespace extremefim {

namespace {

void require_group_size(int K, int minimum) {
    if (K < minimum) {
        throw Error(ErrorCode::parameter_domain,
                    "group size K must be >= " + std::to_string(minimum) + ", got " +
                        std::to_string(K));
    }
}

constexpr double kCdfTolerance = 1e-12;

}  // namespace

SampleMatrix::SampleMatrix(std::size_t rows, std::size_t cols, std::vector<double> values)
    : rows_(rows), cols_(cols), values_(std::move(values)) {
    if (rows_ * cols_ != values_.size()) {
        throw Error(ErrorCode::shape, "matrix storage does not match rows x cols");
    }
}

SampleMatrix SampleMatrix::from_rows(const std::vector<std::vector<double>>& rows) {
    if (rows.empty() || rows.front().empty()) {
        throw Error(ErrorCode::shape, "sample matrix is empty");
    }
    const std::size_t cols = rows.front().size();
    std::vector<double> values;
    values.reserve(rows.size() * cols);
    for (std::size_t i = 0; i < rows.size(); ++i) {
        if (rows[i].size() != cols) {
            throw Error(ErrorCode::shape, "ragged sample matrix: row " + std::to_string(i) +
                                              " has " + std::to_string(rows[i].size()) +
                                              " entries, expected " + std::to_string(cols));
        }
        values.insert(values.end(), rows[i].begin(), rows[i].end());
    }
    return SampleMatrix(rows.size(), cols, std::move(values));
}

ExtremeDataset::ExtremeDataset(int K, std::vector<IntervalExtremes> intervals)
    : K_(K), intervals_(std::move(intervals)) {
    require_group_size(K_, 2);
    if (intervals_.empty()) throw Error(ErrorCode::shape, "dataset has no intervals");
    for (std::size_t i = 0; i < intervals_.size(); ++i) {
        const auto& r = intervals_[i];
        if (!std::isfinite(r.y_min) || !std::isfinite(r.y_max)) {
            throw Error(ErrorCode::domain, "interval " + std::to_string(i) + " is not finite");
        }
        if (r.y_min > r.y_max) {
            throw Error(ErrorCode::domain,
                        "interval " + std::to_string(i) + " has y_min > y_max");
        }
    }
}

std::vector<double> ExtremeDataset::minima() const {
    std::vector<double> out;
    out.reserve(intervals_.size());
    for (const auto& r : intervals_) out.push_back(r.y_min);
    return out;
}

std::vector<double> ExtremeDataset::maxima() const {
    std::vector<double> out;
    out.reserve(intervals_.size());
    for (const auto& r : intervals_) out.push_back(r.y_max);
    return out;
}

void ExtremeDataset::check_support(const DistributionModel& model, double theta) const {
    const Support s = model.support(theta);
    for (std::size_t i = 0; i < intervals_.size(); ++i) {
        const auto& r = intervals_[i];
        if (r.y_min < s.lower || r.y_max > s.upper) {
            throw Error(ErrorCode::domain, "interval " + std::to_string(i) +
                                               " lies outside the support of " +
                                               std::string(model.name()));
        }
    }
}

double extreme_pdf(const DistributionModel& model, ExtremeKind kind, double y, double theta,
                   int K) {
    require_positive_theta(theta);
    require_group_size(K, 1);
    const double f = model.pdf(y, theta);
    if (f == 0.0) return 0.0;
    switch (kind) {
        case ExtremeKind::min:
            return K * std::pow(model.survival(y, theta), K - 1) * f;
        case ExtremeKind::max:
            return K * std::pow(model.cdf(y, theta), K - 1) * f;
        case ExtremeKind::joint:
            break;
    }
    throw Error(ErrorCode::domain, "joint density needs a (y_min, y_max) pair");
}

double joint_extreme_pdf(const DistributionModel& model, IntervalExtremes point, double theta,
                         int K) {
    require_positive_theta(theta);
    require_group_size(K, 2);
    if (point.y_min > point.y_max) {
        throw Error(ErrorCode::domain, "joint density requires y_min <= y_max");
    }
    const double fa = model.pdf(point.y_min, theta);
    const double fb = model.pdf(point.y_max, theta);
    if (fa == 0.0 || fb == 0.0) return 0.0;
    const double gap = model.cdf_gap(point.y_min, point.y_max, theta);
    const double middle = K == 2 ? 1.0 : std::pow(gap, K - 2);
    return static_cast<double>(K) * (K - 1) * middle * fa * fb;
}

double extreme_cdf(const DistributionModel& model, ExtremeKind kind, double y, double theta,
                   int K) {
    require_positive_theta(theta);
    require_group_size(K, 1);
    switch (kind) {
        case ExtremeKind::min: {
            const double s = model.survival(y, theta);
            if (s == 0.0) return 1.0;
            return -std::expm1(K * std::log(s));
        }
        case ExtremeKind::max:
            return std::pow(model.cdf(y, theta), K);
        case ExtremeKind::joint:
            break;
    }
    throw Error(ErrorCode::unsupported, "extreme_cdf is defined for min and max only");
}

double extreme_quantile(const DistributionModel& model, ExtremeKind kind, double u, double theta,
                        int K) {
    require_group_size(K, 1);
    if (!(u >= 0.0 && u <= 1.0)) throw Error(ErrorCode::domain, "quantile level outside [0, 1]");
    switch (kind) {
        case ExtremeKind::min:
            // P(min <= y) = 1 - S(y)^K
            return model.quantile(-std::expm1(std::log1p(-u) / K), theta);
        case ExtremeKind::max:
            return model.quantile(std::exp(std::log(u) / K), theta);
        case ExtremeKind::joint:
            break;
    }
    throw Error(ErrorCode::unsupported, "extreme_quantile is defined for min and max only");
}

double solve_cdf_level(const DistributionModel& model, double level, double theta) {
    require_positive_theta(theta);
    if (!(level > 0.0 && level < 1.0)) {
        throw Error(ErrorCode::solver, "CDF level must lie strictly inside (0, 1)");
    }
    const Support s = model.support(theta);
    auto residual = [&](double x) { return model.cdf(x, theta) - level; };

    // Initial bracket just inside the support, expanded geometrically where
    // the support is unbounded.
    double lo, hi;
    if (std::isfinite(s.lower) && std::isfinite(s.upper)) {
        const double eps = 1e-15 * std::max(1.0, s.upper - s.lower);
        lo = s.lower + eps;
        hi = s.upper - eps;
    } else if (std::isfinite(s.lower)) {
        lo = s.lower;
        hi = s.lower + std::max(1.0, theta);
    } else if (std::isfinite(s.upper)) {
        hi = s.upper;
        lo = s.upper - std::max(1.0, theta);
    } else {
        lo = -std::max(1.0, theta);
        hi = std::max(1.0, theta);
    }

    constexpr int kMaxExpansions = 200;
    int expansions = 0;
    while (residual(hi) < 0.0) {
        if (std::isfinite(s.upper) || ++expansions > kMaxExpansions) {
            throw Error(ErrorCode::solver, "cannot bracket CDF level " + std::to_string(level) +
                                               " from above (hi=" + std::to_string(hi) +
                                               ", F(hi)=" + std::to_string(model.cdf(hi, theta)) +
                                               ")");
        }
        const double width = hi - lo;
        lo = hi;
        hi += 2.0 * width;
    }
    expansions = 0;
    while (residual(lo) > 0.0) {
        if (std::isfinite(s.lower) || ++expansions > kMaxExpansions) {
            throw Error(ErrorCode::solver, "cannot bracket CDF level " + std::to_string(level) +
                                               " from below (lo=" + std::to_string(lo) +
                                               ", F(lo)=" + std::to_string(model.cdf(lo, theta)) +
                                               ")");
        }
        const double width = hi - lo;
        hi = lo;
        lo -= 2.0 * width;
    }

    double r_lo = residual(lo);
    double r_hi = residual(hi);
    for (int it = 0; it < 2000; ++it) {
        if (std::abs(r_lo) <= kCdfTolerance && std::abs(r_hi) <= kCdfTolerance) break;
        const double mid = 0.5 * (lo + hi);
        if (mid <= lo || mid >= hi) break;
        const double r_mid = residual(mid);
        if (r_mid < 0.0) {
            lo = mid;
            r_lo = r_mid;
        } else {
            hi = mid;
            r_hi = r_mid;
        }
    }

    double best = std::abs(r_lo) <= std::abs(r_hi) ? lo : hi;
    double best_r = std::min(std::abs(r_lo), std::abs(r_hi));
    if (r_hi != r_lo) {
        const double secant = lo - r_lo * (hi - lo) / (r_hi - r_lo);
        if (secant >= lo && secant <= hi) {
            const double r_sec = std::abs(residual(secant));
            if (r_sec <= best_r) {
                best = secant;
                best_r = r_sec;
            }
        }
    }
    if (best_r > kCdfTolerance) {
        throw Error(ErrorCode::solver, "CDF root search stalled with residual " +
                                           std::to_string(best_r));
    }
    return best;
}

CharacteristicValues characteristic_values_by_root_search(const DistributionModel& model,
                                                          double theta, int K) {
    require_positive_theta(theta);
    require_group_size(K, 2);
    const double inv_k = 1.0 / K;
    return {solve_cdf_level(model, inv_k, theta), solve_cdf_level(model, 1.0 - inv_k, theta), K,
            theta};
}

CharacteristicValues characteristic_values(const DistributionModel& model, double theta, int K) {
    require_positive_theta(theta);
    require_group_size(K, 2);
    if (auto closed = model.characteristic_closed_form(theta, K)) {
        return {closed->first, closed->second, K, theta};
    }
    return characteristic_values_by_root_search(model, theta, K);
}

ExtremeDataset reduce_intervals(const SampleMatrix& samples) {
    if (samples.rows() == 0) throw Error(ErrorCode::shape, "no intervals to reduce");
    if (samples.cols() < 2) throw Error(ErrorCode::shape, "each interval needs K >= 2 samples");
    std::vector<IntervalExtremes> out;
    out.reserve(samples.rows());
    for (std::size_t i = 0; i < samples.rows(); ++i) {
        const auto [lo, hi] = std::ranges::minmax_element(samples.row(i));
        out.push_back({*lo, *hi});
    }
    return ExtremeDataset(static_cast<int>(samples.cols()), std::move(out));
}

}  // namespace extremefim
