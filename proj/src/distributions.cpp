#include "extremefim/distributions.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

#include "extremefim/error.hpp"

namespace extremefim {

const char* to_string(ErrorCode code) noexcept {
    switch (code) {
        case ErrorCode::parameter_domain: return "parameter-domain error";
        case ErrorCode::shape: return "shape error";
        case ErrorCode::domain: return "domain error";
        case ErrorCode::solver: return "solver error";
        case ErrorCode::numeric: return "numeric error";
        case ErrorCode::unsupported: return "unsupported";
        case ErrorCode::degenerate_data: return "degenerate data";
        case ErrorCode::optimizer: return "optimizer error";
        case ErrorCode::io: return "I/O error";
        case ErrorCode::undefined_bound: return "undefined bound";
        case ErrorCode::parse: return "parse error";
    }
    return "unknown error";
}

void require_positive_theta(double theta) {
    if (!(theta > 0.0) || !std::isfinite(theta)) {
        throw Error(ErrorCode::parameter_domain,
                    "theta must be finite and positive, got " + std::to_string(theta));
    }
}

double DistributionModel::pdf(double x, double theta) const {
    require_positive_theta(theta);
    const Support s = support(theta);
    if (x < s.lower || x > s.upper) return 0.0;
    return pdf_inside(x, theta);
}

double DistributionModel::cdf(double x, double theta) const {
    require_positive_theta(theta);
    const Support s = support(theta);
    if (x <= s.lower) return 0.0;
    if (x >= s.upper) return 1.0;
    return std::clamp(cdf_inside(x, theta), 0.0, 1.0);
}

double DistributionModel::survival(double x, double theta) const {
    require_positive_theta(theta);
    const Support s = support(theta);
    if (x <= s.lower) return 1.0;
    if (x >= s.upper) return 0.0;
    return std::clamp(survival_inside(x, theta), 0.0, 1.0);
}

double DistributionModel::cdf_gap(double a, double b, double theta) const {
    require_positive_theta(theta);
    if (b < a) throw Error(ErrorCode::domain, "cdf_gap requires a <= b");
    const Support s = support(theta);
    a = std::clamp(a, s.lower, s.upper);
    b = std::clamp(b, s.lower, s.upper);
    if (a == b) return 0.0;
    return std::max(0.0, cdf_gap_inside(a, b, theta));
}

double DistributionModel::quantile(double u, double theta) const {
    require_positive_theta(theta);
    if (!(u >= 0.0 && u <= 1.0)) {
        throw Error(ErrorCode::domain, "quantile level must lie in [0, 1]");
    }
    const Support s = support(theta);
    if (u == 0.0) return s.lower;
    if (u == 1.0) return s.upper;
    return quantile_unchecked(u, theta);
}

double DistributionModel::survival_inside(double x, double theta) const {
    return 1.0 - cdf_inside(x, theta);
}

double DistributionModel::cdf_gap_inside(double a, double b, double theta) const {
    return cdf_inside(b, theta) - cdf_inside(a, theta);
}

std::optional<ThetaDerivatives> DistributionModel::analytic_derivatives(double, double) const {
    return std::nullopt;
}

std::optional<std::pair<double, double>> DistributionModel::characteristic_closed_form(double,
                                                                                       int) const {
    return std::nullopt;
}

ThetaDerivatives DistributionModel::theta_derivatives(double x, double theta) const {
    require_positive_theta(theta);
    if (auto d = analytic_derivatives(x, theta)) return *d;
    return finite_difference_derivatives(*this, x, theta);
}

ThetaDerivatives finite_difference_derivatives(const DistributionModel& model, double x,
                                               double theta) {
    require_positive_theta(theta);
    const double h = std::cbrt(std::numeric_limits<double>::epsilon()) * std::max(1.0, std::abs(theta));
    const double lo = theta - h;
    const double hi = theta + h;
    if (!(lo > 0.0)) {
        throw Error(ErrorCode::parameter_domain, "theta too small for finite differences");
    }
    const double F0 = model.cdf(x, theta);
    const double Fm = model.cdf(x, lo);
    const double Fp = model.cdf(x, hi);
    const double f0 = model.pdf(x, theta);
    const double fm = model.pdf(x, lo);
    const double fp = model.pdf(x, hi);
    ThetaDerivatives d{};
    d.dF = (Fp - Fm) / (2.0 * h);
    d.d2F = (Fp - 2.0 * F0 + Fm) / (h * h);
    d.df = (fp - fm) / (2.0 * h);
    d.d2f = (fp - 2.0 * f0 + fm) / (h * h);
    d.approximate = true;
    return d;
}

std::vector<double> DistributionModel::sample(double theta, std::size_t n,
                                              std::uint64_t seed) const {
    require_positive_theta(theta);
    std::vector<double> out(n);
    std::mt19937_64 engine(seed);
    for (auto& v : out) v = quantile_unchecked(unit_open(engine()), theta);
    return out;
}

// ---------------------------------------------------------------------------
// Exponential (mean theta)

Support Exponential::support(double) const {
    return {0.0, std::numeric_limits<double>::infinity()};
}

double Exponential::pdf_inside(double x, double theta) const {
    return std::exp(-x / theta) / theta;
}

double Exponential::cdf_inside(double x, double theta) const {
    return -std::expm1(-x / theta);
}

double Exponential::survival_inside(double x, double theta) const {
    return std::exp(-x / theta);
}

double Exponential::cdf_gap_inside(double a, double b, double theta) const {
    return std::exp(-a / theta) * -std::expm1(-(b - a) / theta);
}

double Exponential::quantile_unchecked(double u, double theta) const {
    return -theta * std::log1p(-u);
}

std::optional<ThetaDerivatives> Exponential::analytic_derivatives(double x, double theta) const {
    const double e = std::exp(-x / theta);
    const double t2 = theta * theta;
    const double t3 = t2 * theta;
    ThetaDerivatives d{};
    d.dF = -x / t2 * e;
    d.d2F = e * (2.0 * x / t3 - x * x / (t2 * t2));
    d.df = e * (x - theta) / t3;
    d.d2f = e * (x * x - 4.0 * x * theta + 2.0 * t2) / (t3 * t2);
    return d;
}

std::optional<std::pair<double, double>> Exponential::characteristic_closed_form(double theta,
                                                                                  int K) const {
    // mu1 = theta ln(K/(K-1)) = -theta log1p(-1/K); muK = theta ln K
    return std::pair{-theta * std::log1p(-1.0 / K), theta * std::log(static_cast<double>(K))};
}

// ---------------------------------------------------------------------------
// Uniform on [0, theta]

Support Uniform::support(double theta) const { return {0.0, theta}; }

double Uniform::pdf_inside(double, double theta) const { return 1.0 / theta; }

double Uniform::cdf_inside(double x, double theta) const { return x / theta; }

double Uniform::quantile_unchecked(double u, double theta) const { return u * theta; }

std::optional<ThetaDerivatives> Uniform::analytic_derivatives(double x, double theta) const {
    const double t2 = theta * theta;
    ThetaDerivatives d{};
    d.dF = -x / t2;
    d.d2F = 2.0 * x / (t2 * theta);
    d.df = -1.0 / t2;
    d.d2f = 2.0 / (t2 * theta);
    return d;
}

std::optional<std::pair<double, double>> Uniform::characteristic_closed_form(double theta,
                                                                              int K) const {
    return std::pair{theta / K, theta * (1.0 - 1.0 / K)};
}

// ---------------------------------------------------------------------------
// Uniform on [-theta/2, theta/2]

Support CenteredUniform::support(double theta) const { return {-0.5 * theta, 0.5 * theta}; }

double CenteredUniform::pdf_inside(double, double theta) const { return 1.0 / theta; }

double CenteredUniform::cdf_inside(double x, double theta) const { return x / theta + 0.5; }

double CenteredUniform::quantile_unchecked(double u, double theta) const {
    return (u - 0.5) * theta;
}

std::optional<ThetaDerivatives> CenteredUniform::analytic_derivatives(double x,
                                                                      double theta) const {
    const double t2 = theta * theta;
    ThetaDerivatives d{};
    d.dF = -x / t2;
    d.d2F = 2.0 * x / (t2 * theta);
    d.df = -1.0 / t2;
    d.d2f = 2.0 / (t2 * theta);
    return d;
}

std::optional<std::pair<double, double>> CenteredUniform::characteristic_closed_form(
    double theta, int K) const {
    // Mirror images about 0, so the pair is exactly antisymmetric.
    const double half_gap = (0.5 - 1.0 / K) * theta;
    return std::pair{-half_gap, half_gap};
}

// ---------------------------------------------------------------------------

std::shared_ptr<const DistributionModel> model_by_name(std::string_view name) {
    if (name == "exponential") return std::make_shared<Exponential>();
    if (name == "uniform") return std::make_shared<Uniform>();
    if (name == "uniform-centered") return std::make_shared<CenteredUniform>();
    return nullptr;
}

std::vector<std::string> supported_model_names() {
    return {"exponential", "uniform", "uniform-centered"};
}

}  // namespace extremefim
