#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace extremefim {

enum class Family { exponential, uniform, centered_uniform };

struct Support {
    double lower;
    double upper;
};

/// First and second partial derivatives with respect to theta of the CDF and
/// the density, evaluated at a fixed x.
struct ThetaDerivatives {
    double dF;
    double d2F;
    double df;
    double d2f;
    bool approximate = false;  // true when produced by finite differences
};

/// A one-parameter family of continuous distributions. All members are pure
/// functions of (x, theta); implementations hold no mutable state.
class DistributionModel {
public:
    virtual ~DistributionModel() = default;

    virtual std::string_view name() const = 0;
    virtual Family family() const = 0;
    virtual Support support(double theta) const = 0;
    /// True when the maximum domain of attraction has GEV shape below 1/2.
    virtual bool mda_shape_ok() const = 0;

    double pdf(double x, double theta) const;
    double cdf(double x, double theta) const;
    /// 1 - F(x), computed without cancellation where the family allows it.
    double survival(double x, double theta) const;
    /// F(b) - F(a) for a <= b.
    double cdf_gap(double a, double b, double theta) const;
    /// Inverse CDF for u in [0, 1].
    double quantile(double u, double theta) const;

    /// Analytic theta-derivatives when the family provides them, otherwise
    /// central finite differences (tagged approximate).
    ThetaDerivatives theta_derivatives(double x, double theta) const;

    /// Closed-form characteristic smallest/largest values (F(mu1)=1/K,
    /// F(muK)=1-1/K), if the family has them.
    virtual std::optional<std::pair<double, double>> characteristic_closed_form(double theta,
                                                                                 int K) const;

    /// n iid draws by inverse-CDF transform of a seeded uniform stream.
    std::vector<double> sample(double theta, std::size_t n, std::uint64_t seed) const;

protected:
    // Implementations may assume theta > 0 and x inside the support.
    virtual double pdf_inside(double x, double theta) const = 0;
    virtual double cdf_inside(double x, double theta) const = 0;
    virtual double survival_inside(double x, double theta) const;
    virtual double cdf_gap_inside(double a, double b, double theta) const;
    virtual double quantile_unchecked(double u, double theta) const = 0;
    virtual std::optional<ThetaDerivatives> analytic_derivatives(double x, double theta) const;
};

/// Finite-difference theta-derivatives of cdf/pdf; step h = cbrt(eps) * max(1, |theta|).
ThetaDerivatives finite_difference_derivatives(const DistributionModel& model, double x,
                                               double theta);

/// Exponential with MEAN theta: f(x) = exp(-x/theta)/theta on x >= 0.
/// The rate is 1/theta.
class Exponential final : public DistributionModel {
public:
    std::string_view name() const override { return "exponential"; }
    Family family() const override { return Family::exponential; }
    Support support(double theta) const override;
    bool mda_shape_ok() const override { return true; }
    std::optional<std::pair<double, double>> characteristic_closed_form(double theta,
                                                                         int K) const override;

protected:
    double pdf_inside(double x, double theta) const override;
    double cdf_inside(double x, double theta) const override;
    double survival_inside(double x, double theta) const override;
    double cdf_gap_inside(double a, double b, double theta) const override;
    double quantile_unchecked(double u, double theta) const override;
    std::optional<ThetaDerivatives> analytic_derivatives(double x, double theta) const override;
};

/// Uniform on [0, theta].
class Uniform final : public DistributionModel {
public:
    std::string_view name() const override { return "uniform"; }
    Family family() const override { return Family::uniform; }
    Support support(double theta) const override;
    bool mda_shape_ok() const override { return true; }
    std::optional<std::pair<double, double>> characteristic_closed_form(double theta,
                                                                         int K) const override;

protected:
    double pdf_inside(double x, double theta) const override;
    double cdf_inside(double x, double theta) const override;
    double quantile_unchecked(double u, double theta) const override;
    std::optional<ThetaDerivatives> analytic_derivatives(double x, double theta) const override;
};

/// Uniform on [-theta/2, theta/2]: width theta, centre of symmetry fixed at 0.
class CenteredUniform final : public DistributionModel {
public:
    std::string_view name() const override { return "uniform-centered"; }
    Family family() const override { return Family::centered_uniform; }
    Support support(double theta) const override;
    bool mda_shape_ok() const override { return true; }
    std::optional<std::pair<double, double>> characteristic_closed_form(double theta,
                                                                         int K) const override;

protected:
    double pdf_inside(double x, double theta) const override;
    double cdf_inside(double x, double theta) const override;
    double quantile_unchecked(double u, double theta) const override;
    std::optional<ThetaDerivatives> analytic_derivatives(double x, double theta) const override;
};

/// Lookup by name ("exponential", "uniform", "uniform-centered"). Returns
/// nullptr for unknown names.
std::shared_ptr<const DistributionModel> model_by_name(std::string_view name);
std::vector<std::string> supported_model_names();

/// Throws Error(parameter_domain) unless theta is finite and positive.
void require_positive_theta(double theta);

/// Maps a 64-bit word to a double in the open interval (0, 1). Platform
/// independent, unlike std::uniform_real_distribution.
inline double unit_open(std::uint64_t bits) noexcept {
    // 52 bits so that the top value, 1 - 2^-53, stays representable below 1.
    return (static_cast<double>(bits >> 12) + 0.5) * 0x1.0p-52;
}

}  // namespace extremefim
