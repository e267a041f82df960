#include <gtest/gtest.h>

#include <cmath>
#include <numeric>

#include "extremefim/distributions.hpp"
#include "extremefim/error.hpp"

using namespace extremefim;

namespace {

ErrorCode code_of(auto&& fn) {
    try {
        fn();
    } catch (const Error& e) {
        return e.code();
    }
    ADD_FAILURE() << "expected an extremefim::Error";
    return ErrorCode::io;
}

}  // namespace

TEST(Exponential, MeanParameterization) {
    Exponential e;
    // theta is the mean, not the rate
    EXPECT_NEAR(e.pdf(0.0, 2.0), 0.5, 1e-15);
    EXPECT_NEAR(e.cdf(2.0, 2.0), 1.0 - std::exp(-1.0), 1e-15);
    EXPECT_DOUBLE_EQ(e.pdf(-1.0, 2.0), 0.0);
    EXPECT_DOUBLE_EQ(e.cdf(-1.0, 2.0), 0.0);
    EXPECT_DOUBLE_EQ(e.survival(-1.0, 2.0), 1.0);
}

TEST(Exponential, SmallXIsStable) {
    Exponential e;
    // 1 - exp(-x) loses everything at x = 1e-17 unless computed with expm1
    EXPECT_NEAR(e.cdf(1e-17, 1.0), 1e-17, 1e-32);
    EXPECT_GT(e.cdf_gap(1e-17, 2e-17, 1.0), 0.0);
}

TEST(Exponential, AnalyticDerivativesMatchOracle) {
    Exponential e;
    const auto d = e.theta_derivatives(2.0, 1.0);
    EXPECT_FALSE(d.approximate);
    EXPECT_NEAR(d.d2F, 0.0, 1e-15);
    EXPECT_NEAR(d.d2f, -0.27067056647322538, 1e-15);
    EXPECT_NEAR(d.dF, -2.0 * std::exp(-2.0), 1e-15);
    EXPECT_NEAR(d.df, std::exp(-2.0), 1e-15);
}

TEST(Derivatives, FiniteDifferencesAgreeWithAnalytic) {
    const Exponential e;
    const Uniform u;
    const CenteredUniform c;
    const DistributionModel* models[] = {&e, &u, &c};
    for (const auto* m : models) {
        for (double theta : {0.5, 1.0, 3.0}) {
            const auto s = m->support(theta);
            for (double frac : {0.1, 0.35, 0.6, 0.85}) {
                const double x = std::isfinite(s.upper)
                                     ? s.lower + frac * (s.upper - s.lower)
                                     : frac * 4.0 * theta;
                const auto a = m->theta_derivatives(x, theta);
                const auto fd = finite_difference_derivatives(*m, x, theta);
                EXPECT_TRUE(fd.approximate);
                const double tol1 = 1e-6 * (1.0 + std::abs(a.dF));
                const double tol2 = 1e-3 * (1.0 + std::abs(a.d2F));
                EXPECT_NEAR(fd.dF, a.dF, tol1) << m->name() << " x=" << x;
                EXPECT_NEAR(fd.d2F, a.d2F, tol2) << m->name() << " x=" << x;
                EXPECT_NEAR(fd.df, a.df, 1e-6 * (1.0 + std::abs(a.df))) << m->name();
                EXPECT_NEAR(fd.d2f, a.d2f, 1e-3 * (1.0 + std::abs(a.d2f))) << m->name();
            }
        }
    }
}

TEST(Quantile, RoundTrip) {
    for (const auto& name : supported_model_names()) {
        const auto m = model_by_name(name);
        ASSERT_TRUE(m);
        for (double theta : {0.25, 1.0, 7.5}) {
            for (double u : {1e-12, 1e-6, 0.01, 0.3, 0.5, 0.77, 0.999, 1.0 - 1e-9}) {
                const double x = m->quantile(u, theta);
                EXPECT_NEAR(m->cdf(x, theta), u, 1e-12 * std::max(1.0, 1.0 / (1.0 - u)))
                    << name << " u=" << u;
            }
        }
    }
}

TEST(Quantile, Endpoints) {
    Exponential e;
    EXPECT_DOUBLE_EQ(e.quantile(0.0, 1.0), 0.0);
    EXPECT_TRUE(std::isinf(e.quantile(1.0, 1.0)));
    Uniform u;
    EXPECT_DOUBLE_EQ(u.quantile(1.0, 3.0), 3.0);
    EXPECT_EQ(code_of([&] { u.quantile(1.5, 1.0); }), ErrorCode::domain);
}

TEST(Model, RejectsBadTheta) {
    Exponential e;
    EXPECT_EQ(code_of([&] { e.pdf(1.0, 0.0); }), ErrorCode::parameter_domain);
    EXPECT_EQ(code_of([&] { e.cdf(1.0, -1.0); }), ErrorCode::parameter_domain);
    EXPECT_EQ(code_of([&] { e.pdf(1.0, std::nan("")); }), ErrorCode::parameter_domain);
}

TEST(Model, LookupByName) {
    EXPECT_EQ(model_by_name("exponential")->family(), Family::exponential);
    EXPECT_EQ(model_by_name("uniform")->family(), Family::uniform);
    EXPECT_EQ(model_by_name("uniform-centered")->family(), Family::centered_uniform);
    EXPECT_EQ(model_by_name("gumbel"), nullptr);
    EXPECT_EQ(supported_model_names().size(), 3u);
}

TEST(Sampling, DeterministicAndUnitMean) {
    Exponential e;
    const auto a = e.sample(2.0, 200000, 42);
    const auto b = e.sample(2.0, 200000, 42);
    EXPECT_EQ(a, b);
    const double mean = std::accumulate(a.begin(), a.end(), 0.0) / a.size();
    EXPECT_NEAR(mean, 2.0, 0.02);
    EXPECT_NE(a, e.sample(2.0, 200000, 43));
}

TEST(Sampling, UnitOpenNeverHitsEndpoints) {
    EXPECT_GT(unit_open(0), 0.0);
    EXPECT_LT(unit_open(~std::uint64_t{0}), 1.0);
}

TEST(CenteredUniform, SupportAndCdf) {
    CenteredUniform c;
    const auto s = c.support(2.0);
    EXPECT_DOUBLE_EQ(s.lower, -1.0);
    EXPECT_DOUBLE_EQ(s.upper, 1.0);
    EXPECT_DOUBLE_EQ(c.cdf(0.0, 2.0), 0.5);
    EXPECT_DOUBLE_EQ(c.pdf(0.5, 2.0), 0.5);
    EXPECT_DOUBLE_EQ(c.pdf(1.5, 2.0), 0.0);
}
