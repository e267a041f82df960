#include "extremefim/fim.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <cmath>
#include <string>

#include "extremefim/error.hpp"

namespace extremefim {

std::string_view to_string(Variant v) noexcept {
    switch (v) {
        case Variant::opt: return "opt";
        case Variant::partial: return "partial";
        case Variant::min: return "min";
        case Variant::max: return "max";
        case Variant::mix: return "mix";
    }
    return "?";
}

std::string_view to_string(FimMethod m) noexcept {
    switch (m) {
        case FimMethod::closed_form: return "closed_form";
        case FimMethod::plug_in_approx: return "plug_in_approx";
        case FimMethod::quadrature: return "quadrature";
    }
    return "?";
}

std::string_view to_string(SignClass c) noexcept {
    switch (c) {
        case SignClass::max_favored: return "max_favored";
        case SignClass::min_favored: return "min_favored";
        case SignClass::balanced: return "balanced";
    }
    return "?";
}

namespace {

using Kronrod = boost::math::quadrature::gauss_kronrod<double, 31>;
constexpr unsigned kMaxDepth = 30;

struct Quadrature {
    double value;
    double error;
};

template <class F>
Quadrature integrate(F&& f, double a, double b, double rel_tol) {
    double error = 0.0;
    double l1 = 0.0;
    const double value = Kronrod::integrate(f, a, b, kMaxDepth, rel_tol, &error, &l1);
    return {value, error};
}

void require_counts(int N, int K, int min_K) {
    if (N < 1) throw Error(ErrorCode::parameter_domain, "N must be >= 1");
    if (K < min_K) {
        throw Error(ErrorCode::parameter_domain,
                    "K must be >= " + std::to_string(min_K) + ", got " + std::to_string(K));
    }
}

bool is_exponential(const DistributionModel& model) {
    return model.family() == Family::exponential;
}

// d2/dtheta2 log f for the base density.
double log_density_curvature(const ThetaDerivatives& d, double f) {
    const double r = d.df / f;
    return d.d2f / f - r * r;
}

FimValue make_fim(Variant variant, FimMethod method, double value, double theta, int N, int K) {
    FimValue out{};
    out.variant = variant;
    out.method = method;
    out.value = value;
    out.N = N;
    out.K = K;
    out.theta = theta;
    out.breakdown = !(value > 0.0);
    return out;
}

// Truncation points holding all but kTailTruncation of the mass on each side.
std::pair<double, double> truncated_range(const DistributionModel& model, ExtremeKind kind,
                                          double theta, int K) {
    return {extreme_quantile(model, kind, kTailTruncation, theta, K),
            extreme_quantile(model, kind, 1.0 - kTailTruncation, theta, K)};
}

void check_tolerance(const Quadrature& q, double rel_tol, const char* what) {
    if (!std::isfinite(q.value) || q.error > rel_tol * std::max(std::abs(q.value), 1e-300)) {
        throw NumericError(std::string(what) + ": quadrature tolerance not achieved (estimate " +
                               std::to_string(q.value) + ", error bound " +
                               std::to_string(q.error) + ")",
                           q.value, q.error);
    }
}

// Per-sample information -E[d2 log f / dtheta2] of the base density.
Quadrature base_information(const DistributionModel& model, double theta) {
    const double lo = model.quantile(kTailTruncation, theta);
    const double hi = model.quantile(1.0 - kTailTruncation, theta);
    auto integrand = [&](double x) {
        const double f = model.pdf(x, theta);
        if (f == 0.0) return 0.0;
        return curvature_base(model, x, theta) * f;
    };
    return integrate(integrand, lo, hi, 1e-10);
}

}  // namespace

// ---------------------------------------------------------------------------
// Curvatures

double curvature_base(const DistributionModel& model, double x, double theta) {
    const auto d = model.theta_derivatives(x, theta);
    return -log_density_curvature(d, model.pdf(x, theta));
}

double curvature_min(const DistributionModel& model, double y, double theta, int K) {
    const auto d = model.theta_derivatives(y, theta);
    const double s = model.survival(y, theta);
    const double f = model.pdf(y, theta);
    // log S with S = 1 - F: d2 = -F''/S - (F'/S)^2
    const double r = d.dF / s;
    const double log_survival = -d.d2F / s - r * r;
    return -((K - 1) * log_survival + log_density_curvature(d, f));
}

double curvature_max(const DistributionModel& model, double y, double theta, int K) {
    const auto d = model.theta_derivatives(y, theta);
    const double F = model.cdf(y, theta);
    const double f = model.pdf(y, theta);
    const double r = d.dF / F;
    const double log_cdf = d.d2F / F - r * r;
    return -((K - 1) * log_cdf + log_density_curvature(d, f));
}

double curvature_joint(const DistributionModel& model, IntervalExtremes point, double theta,
                       int K) {
    const auto da = model.theta_derivatives(point.y_min, theta);
    const auto db = model.theta_derivatives(point.y_max, theta);
    const double fa = model.pdf(point.y_min, theta);
    const double fb = model.pdf(point.y_max, theta);
    double gap_term = 0.0;
    if (K > 2) {
        const double gap = model.cdf_gap(point.y_min, point.y_max, theta);
        const double r = (db.dF - da.dF) / gap;
        gap_term = (K - 2) * ((db.d2F - da.d2F) / gap - r * r);
    }
    return -(gap_term + log_density_curvature(da, fa) + log_density_curvature(db, fb));
}

// ---------------------------------------------------------------------------
// Informations

FimValue fim_opt(const DistributionModel& model, double theta, int N, int K) {
    require_positive_theta(theta);
    require_counts(N, K, 1);
    if (is_exponential(model)) {
        return make_fim(Variant::opt, FimMethod::closed_form,
                        static_cast<double>(N) * K / (theta * theta), theta, N, K);
    }
    const auto q = base_information(model, theta);
    check_tolerance(q, 1e-8, "fim_opt");
    auto out = make_fim(Variant::opt, FimMethod::quadrature, static_cast<double>(N) * K * q.value,
                        theta, N, K);
    out.error_estimate = static_cast<double>(N) * K * q.error;
    return out;
}

FimValue fim_partial(const DistributionModel& model, double theta, int N, int K, int L) {
    require_positive_theta(theta);
    require_counts(N, K, 1);
    if (L < 1 || L > K) {
        throw Error(ErrorCode::parameter_domain,
                    "L must lie in [1, K], got L=" + std::to_string(L) + ", K=" + std::to_string(K));
    }
    FimValue out = fim_opt(model, theta, N, L);
    out.variant = Variant::partial;
    out.L = L;
    out.K = K;
    return out;
}

FimValue fim_min_exact(const DistributionModel& model, double theta, int N, int K) {
    require_positive_theta(theta);
    require_counts(N, K, 1);
    if (!is_exponential(model)) {
        throw Error(ErrorCode::unsupported,
                    "exact minima information is closed-form for the exponential only; use the "
                    "plug-in or quadrature paths for " + std::string(model.name()));
    }
    return make_fim(Variant::min, FimMethod::closed_form, N / (theta * theta), theta, N, K);
}

FimValue fim_plugin_generic(const DistributionModel& model, Variant kind, double theta, int N,
                            int K) {
    require_positive_theta(theta);
    double per_interval = 0.0;
    switch (kind) {
        case Variant::min: {
            require_counts(N, K, 2);
            const auto cv = characteristic_values(model, theta, K);
            per_interval = curvature_min(model, cv.mu1, theta, K);
            break;
        }
        case Variant::max: {
            require_counts(N, K, 2);
            const auto cv = characteristic_values(model, theta, K);
            per_interval = curvature_max(model, cv.muK, theta, K);
            break;
        }
        case Variant::mix: {
            require_counts(N, K, 3);
            const auto cv = characteristic_values(model, theta, K);
            per_interval = curvature_joint(model, {cv.mu1, cv.muK}, theta, K);
            break;
        }
        default:
            throw Error(ErrorCode::unsupported, "plug-in approximation exists for min, max, mix");
    }
    auto out = make_fim(kind, FimMethod::plug_in_approx, N * per_interval, theta, N, K);
    out.low_accuracy = K < kPlugInAccurateFromK;
    return out;
}

FimValue fim_plugin(const DistributionModel& model, Variant kind, double theta, int N, int K) {
    if (!is_exponential(model)) return fim_plugin_generic(model, kind, theta, N, K);
    require_positive_theta(theta);
    const double k = K;
    const double scale = N / (theta * theta);
    const double log_k = std::log(k);
    const double log_ratio = -std::log1p(-1.0 / k);  // ln(K/(K-1))
    double value = 0.0;
    switch (kind) {
        case Variant::min:
            require_counts(N, K, 2);
            value = scale * (2.0 * k * log_ratio - 1.0);
            break;
        case Variant::max:
            require_counts(N, K, 2);
            value = scale * (k * log_k * log_k / (k - 1.0) - 1.0);
            break;
        case Variant::mix: {
            require_counts(N, K, 3);
            const double spread = log_k - log_ratio;
            value = 2.0 * scale *
                    ((k - 1.0) * spread * spread / (2.0 * (k - 2.0)) + k * log_ratio - 1.0);
            break;
        }
        default:
            throw Error(ErrorCode::unsupported, "plug-in approximation exists for min, max, mix");
    }
    auto out = make_fim(kind, FimMethod::plug_in_approx, value, theta, N, K);
    out.low_accuracy = K < kPlugInAccurateFromK;
    return out;
}

FimValue fim_quadrature(const DistributionModel& model, Variant kind, double theta, int N, int K) {
    require_positive_theta(theta);
    require_counts(N, K, 2);
    Quadrature q{};
    double rel_tol = 1e-8;
    switch (kind) {
        case Variant::min:
        case Variant::max: {
            const ExtremeKind ek = kind == Variant::min ? ExtremeKind::min : ExtremeKind::max;
            const auto [lo, hi] = truncated_range(model, ek, theta, K);
            auto integrand = [&](double y) {
                const double w = extreme_pdf(model, ek, y, theta, K);
                if (w == 0.0) return 0.0;
                const double c = ek == ExtremeKind::min ? curvature_min(model, y, theta, K)
                                                        : curvature_max(model, y, theta, K);
                return c * w;
            };
            q = integrate(integrand, lo, hi, 1e-10);
            break;
        }
        case Variant::mix: {
            rel_tol = 1e-6;
            const auto [a_lo, a_hi] = truncated_range(model, ExtremeKind::min, theta, K);
            const double b_hi = truncated_range(model, ExtremeKind::max, theta, K).second;
            double inner_error = 0.0;
            auto outer = [&](double a) {
                if (a >= b_hi) return 0.0;
                auto inner = [&](double b) {
                    const IntervalExtremes p{a, b};
                    const double w = joint_extreme_pdf(model, p, theta, K);
                    if (w == 0.0) return 0.0;
                    return curvature_joint(model, p, theta, K) * w;
                };
                const auto r = integrate(inner, a, b_hi, 1e-10);
                inner_error = std::max(inner_error, r.error);
                return r.value;
            };
            q = integrate(outer, a_lo, a_hi, 1e-8);
            // Inner errors accumulate over an outer range of unit mass.
            q.error += inner_error;
            break;
        }
        default:
            throw Error(ErrorCode::unsupported, "quadrature information exists for min, max, mix");
    }
    check_tolerance(q, rel_tol, "fim_quadrature");
    auto out = make_fim(kind, FimMethod::quadrature, N * q.value, theta, N, K);
    out.error_estimate = N * q.error;
    return out;
}

// ---------------------------------------------------------------------------

AStatistic a_statistic(const DistributionModel& model, double theta, int K) {
    require_positive_theta(theta);
    if (K < 2) throw Error(ErrorCode::parameter_domain, "A-statistic needs K >= 2");
    const auto cv = characteristic_values(model, theta, K);

    // Lower-case m: evaluated at mu1; upper-case M: evaluated at muK.
    const auto dm = model.theta_derivatives(cv.mu1, theta);
    const auto dM = model.theta_derivatives(cv.muK, theta);
    const double Sm = model.survival(cv.mu1, theta);  // 1 - F_m
    const double FM = model.cdf(cv.muK, theta);
    const double fm = model.pdf(cv.mu1, theta);
    const double fM = model.pdf(cv.muK, theta);

    const double group = -dm.dF * dm.dF / (Sm * Sm) - dm.d2F / Sm + dM.dF * dM.dF / (FM * FM) -
                         dM.d2F / FM;
    const double value = (K - 1) * group + dm.d2f / fm - dM.d2f / fM + dM.df * dM.df / (fM * fM) -
                         dm.df * dm.df / (fm * fm);

    AStatistic out{};
    out.value = value;
    out.K = K;
    out.theta = theta;
    out.j_plugin_min = fim_plugin(model, Variant::min, theta, 1, K).value;
    out.j_plugin_max = fim_plugin(model, Variant::max, theta, 1, K).value;
    const double tolerance = 1e-9 * (1.0 + std::abs(out.j_plugin_max - out.j_plugin_min));
    if (std::abs(value) < tolerance) {
        out.sign_class = SignClass::balanced;
    } else {
        out.sign_class = value > 0.0 ? SignClass::max_favored : SignClass::min_favored;
    }
    return out;
}

double crlb(const FimValue& fim) {
    if (!(fim.value > 0.0)) {
        throw Error(ErrorCode::undefined_bound,
                    "CRLB undefined for non-positive information " + std::to_string(fim.value));
    }
    return 1.0 / fim.value;
}

double l_equivalent(const FimValue& fim) {
    if (fim.N < 1) throw Error(ErrorCode::parameter_domain, "FimValue has N < 1");
    require_positive_theta(fim.theta);
    return fim.value * fim.theta * fim.theta / fim.N;
}

}  // namespace extremefim
