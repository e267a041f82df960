#pragma once

#include <string_view>

#include "extremefim/distributions.hpp"
#include "extremefim/extremes.hpp"

namespace extremefim {

/// Which data an estimator (or its information) is based on.
enum class Variant { opt, partial, min, max, mix };

std::string_view to_string(Variant v) noexcept;

enum class FimMethod { closed_form, plug_in_approx, quadrature };

std::string_view to_string(FimMethod m) noexcept;

/// Scalar Fisher information of N intervals of size K at theta.
struct FimValue {
    Variant variant;
    int L = 0;  // retained samples per interval, partial variant only
    FimMethod method;
    double value;
    int N;
    int K;
    double theta;
    // Plug-in values at K < 15 are known to be rough.
    bool low_accuracy = false;
    // Evaluated information came out non-positive (approximation breakdown or
    // a non-regular family).
    bool breakdown = false;
    // Absolute error estimate of quadrature results, 0 otherwise.
    double error_estimate = 0.0;
};

enum class SignClass { max_favored, min_favored, balanced };

std::string_view to_string(SignClass c) noexcept;

/// Plug-in difference between max- and min-based information per interval.
struct AStatistic {
    double value;
    SignClass sign_class;
    int K;
    double theta;
    double j_plugin_min;  // per-interval (N = 1) plug-in informations
    double j_plugin_max;
};

// Per-observation curvature -d^2/dtheta^2 log(density) of one extreme value
// (or one (min, max) pair). These are the integrands of the exact informations
// and, evaluated at the characteristic values, the plug-in approximations.
double curvature_min(const DistributionModel& model, double y, double theta, int K);
double curvature_max(const DistributionModel& model, double y, double theta, int K);
double curvature_joint(const DistributionModel& model, IntervalExtremes point, double theta,
                       int K);
double curvature_base(const DistributionModel& model, double x, double theta);

/// Information of the full N x K sample: closed form N K / theta^2 for the
/// exponential, quadrature otherwise.
FimValue fim_opt(const DistributionModel& model, double theta, int N, int K);

/// Information of L retained samples per interval, 1 <= L <= K.
FimValue fim_partial(const DistributionModel& model, double theta, int N, int K, int L);

/// Exact minima information N / theta^2. Exponential model only.
FimValue fim_min_exact(const DistributionModel& model, double theta, int N, int K);

/// Characteristic-value plug-in approximation. kind is min, max or mix.
/// Uses the exponential closed forms where they exist.
FimValue fim_plugin(const DistributionModel& model, Variant kind, double theta, int N, int K);

/// Plug-in approximation evaluated from theta-derivatives for any model.
FimValue fim_plugin_generic(const DistributionModel& model, Variant kind, double theta, int N,
                            int K);

/// Exact information by adaptive quadrature of the curvature against the
/// extreme density (iterated 2-D for mix). Throws NumericError when the
/// relative tolerance (1e-8 for min/max, 1e-6 for mix) is not met.
FimValue fim_quadrature(const DistributionModel& model, Variant kind, double theta, int N, int K);

/// Sign of A decides whether maxima (A > 0) or minima (A < 0) carry more
/// plug-in information.
AStatistic a_statistic(const DistributionModel& model, double theta, int K);

/// 1 / information. Throws Error(undefined_bound) when value <= 0.
double crlb(const FimValue& fim);

/// value * theta^2 / N: raw samples per interval carrying the same information.
double l_equivalent(const FimValue& fim);

/// Tail mass dropped when truncating quadrature domains.
inline constexpr double kTailTruncation = 1e-14;
/// Plug-in results below this K are tagged low_accuracy.
inline constexpr int kPlugInAccurateFromK = 15;

}  // namespace extremefim
