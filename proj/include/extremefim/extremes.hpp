#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "extremefim/distributions.hpp"

namespace extremefim {

enum class ExtremeKind { min, max, joint };

struct IntervalExtremes {
    double y_min;
    double y_max;
};

/// Row-major N x K matrix of raw measurements.
class SampleMatrix {
public:
    SampleMatrix() = default;
    SampleMatrix(std::size_t rows, std::size_t cols, std::vector<double> values);

    /// Throws Error(shape) on an empty or ragged input.
    static SampleMatrix from_rows(const std::vector<std::vector<double>>& rows);

    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }
    std::span<const double> row(std::size_t i) const {
        return {values_.data() + i * cols_, cols_};
    }
    std::span<const double> values() const noexcept { return values_; }

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<double> values_;
};

/// N intervals of (y_min, y_max), all compressed from groups of K.
class ExtremeDataset {
public:
    /// Validates K >= 2, a nonempty interval list and y_min <= y_max.
    ExtremeDataset(int K, std::vector<IntervalExtremes> intervals);

    int K() const noexcept { return K_; }
    std::size_t N() const noexcept { return intervals_.size(); }
    const std::vector<IntervalExtremes>& intervals() const noexcept { return intervals_; }

    std::vector<double> minima() const;
    std::vector<double> maxima() const;

    /// Throws Error(domain) if any value lies outside the model's support.
    void check_support(const DistributionModel& model, double theta) const;

private:
    int K_;
    std::vector<IntervalExtremes> intervals_;
};

struct CharacteristicValues {
    double mu1;  // F(mu1) = 1/K
    double muK;  // F(muK) = 1 - 1/K
    int K;
    double theta;
};

/// Density of the minimum (kind == min) or maximum (kind == max) of K iid draws.
double extreme_pdf(const DistributionModel& model, ExtremeKind kind, double y, double theta,
                   int K);

/// Joint density of (minimum, maximum) of K >= 2 iid draws. Ties y_min == y_max
/// give 0 for K >= 3 and the formula's literal value for K == 2.
double joint_extreme_pdf(const DistributionModel& model, IntervalExtremes point, double theta,
                         int K);

/// CDF of the minimum or maximum of K iid draws.
double extreme_cdf(const DistributionModel& model, ExtremeKind kind, double y, double theta,
                   int K);

/// Quantile of the minimum or maximum of K iid draws.
double extreme_quantile(const DistributionModel& model, ExtremeKind kind, double u, double theta,
                        int K);

/// Closed form when the family has one, otherwise root search.
CharacteristicValues characteristic_values(const DistributionModel& model, double theta, int K);

/// Root search for F(mu) = 1/K and F(mu) = 1 - 1/K, ignoring any closed form.
CharacteristicValues characteristic_values_by_root_search(const DistributionModel& model,
                                                          double theta, int K);

/// Solves F(x) = level by bracketing bisection (CDF tolerance 1e-12) plus one
/// secant polish. Throws Error(solver) when no bracket can be found.
double solve_cdf_level(const DistributionModel& model, double level, double theta);

/// Per-row minimum and maximum.
ExtremeDataset reduce_intervals(const SampleMatrix& samples);

}  // namespace extremefim
