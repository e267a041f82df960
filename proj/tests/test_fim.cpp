#include <gtest/gtest.h>

#include <cmath>

#include "extremefim/error.hpp"
#include "extremefim/fim.hpp"

using namespace extremefim;

namespace {

const Exponential kExp;

struct PlugInCase {
    int K;
    double min, max;
};

// Closed-form plug-in informations at theta = 1, N = 1 (sympy, 30 digits).
const PlugInCase kPlugIn[] = {
    {5, 1.23143551314210, 2.23786299247529},
    {10, 1.10721031315653, 4.89099790053155},
    {25, 1.04109972601276, 9.79287664158431},
    {100, 1.01006717070029, 20.4218105473875},
};

}  // namespace

TEST(FimPlugin, ExponentialClosedForms) {
    for (const auto& c : kPlugIn) {
        EXPECT_NEAR(fim_plugin(kExp, Variant::min, 1.0, 1, c.K).value, c.min, 1e-12) << c.K;
        EXPECT_NEAR(fim_plugin(kExp, Variant::max, 1.0, 1, c.K).value, c.max, 1e-12) << c.K;
    }
    EXPECT_NEAR(fim_plugin(kExp, Variant::mix, 1.0, 1, 5).value, 2.79385158737251, 1e-12);
    EXPECT_NEAR(fim_plugin(kExp, Variant::mix, 1.0, 1, 1000).value, 47.7520610988427, 1e-11);
}

TEST(FimPlugin, GenericAgreesWithClosedForm) {
    for (int K : {3, 5, 17, 100, 1000}) {
        for (auto v : {Variant::min, Variant::max, Variant::mix}) {
            const double closed = fim_plugin(kExp, v, 1.3, 4, K).value;
            const double generic = fim_plugin_generic(kExp, v, 1.3, 4, K).value;
            EXPECT_NEAR(generic, closed, 1e-9 * std::abs(closed)) << to_string(v) << " K=" << K;
        }
    }
}

TEST(FimPlugin, LowAccuracyFlag) {
    EXPECT_TRUE(fim_plugin(kExp, Variant::max, 1.0, 1, 14).low_accuracy);
    EXPECT_FALSE(fim_plugin(kExp, Variant::max, 1.0, 1, 15).low_accuracy);
    EXPECT_EQ(fim_plugin(kExp, Variant::max, 1.0, 1, 15).method, FimMethod::plug_in_approx);
}

TEST(FimPlugin, ScaleLaw) {
    for (auto v : {Variant::min, Variant::max, Variant::mix}) {
        const double base = fim_plugin(kExp, v, 1.0, 1, 40).value;
        for (double theta : {0.1, 2.5, 40.0}) {
            for (int N : {1, 7, 1000}) {
                const double scaled = fim_plugin(kExp, v, theta, N, 40).value;
                EXPECT_NEAR(scaled, base * N / (theta * theta), 1e-12 * scaled);
            }
        }
    }
}

TEST(FimPlugin, OrderingOverK) {
    for (int K = 5; K <= 1000; K += (K < 50 ? 1 : 25)) {
        const double jmin = fim_min_exact(kExp, 1.0, 1, K).value;
        const double jmax = fim_plugin(kExp, Variant::max, 1.0, 1, K).value;
        const double jmix = fim_plugin(kExp, Variant::mix, 1.0, 1, K).value;
        const double jopt = fim_opt(kExp, 1.0, 1, K).value;
        EXPECT_LE(jmin, jmax) << K;
        EXPECT_LE(jmax, jmix) << K;
        EXPECT_LE(jmix, jopt) << K;
    }
}

TEST(FimPlugin, MixGainBoundedByOne) {
    double prev = -1.0;
    for (int K : {5, 10, 25, 50, 100, 1000, 100000}) {
        const double delta = fim_plugin(kExp, Variant::mix, 1.0, 1, K).value -
                             fim_plugin(kExp, Variant::max, 1.0, 1, K).value;
        EXPECT_LE(delta, 1.0);
        EXPECT_GE(delta, prev);
        prev = delta;
    }
}

TEST(FimExact, OptPartialMin) {
    EXPECT_DOUBLE_EQ(fim_opt(kExp, 2.0, 10, 7).value, 10.0 * 7 / 4.0);
    EXPECT_EQ(fim_opt(kExp, 2.0, 10, 7).method, FimMethod::closed_form);
    EXPECT_DOUBLE_EQ(fim_partial(kExp, 2.0, 10, 7, 3).value, 10.0 * 3 / 4.0);
    EXPECT_DOUBLE_EQ(fim_min_exact(kExp, 2.0, 10, 7).value, 10.0 / 4.0);
    EXPECT_THROW(fim_partial(kExp, 1.0, 1, 5, 6), Error);
    EXPECT_THROW(fim_partial(kExp, 1.0, 1, 5, 0), Error);
    try {
        fim_min_exact(Uniform{}, 1.0, 1, 5);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::unsupported);
    }
}

TEST(FimQuadrature, MaxMatchesOracle) {
    // Per-interval exact information of the maximum, theta = 1.
    const std::pair<int, double> cases[] = {
        {5, 3.66203703703704},  {10, 5.85611575648778}, {20, 8.87182289388403},
        {30, 11.0526059534846}, {50, 14.2600026248766}, {100, 19.4544559439447},
        {200, 25.6326789569337},
    };
    for (auto [K, expected] : cases) {
        const auto f = fim_quadrature(kExp, Variant::max, 1.0, 1, K);
        EXPECT_NEAR(f.value, expected, 1e-8 * expected) << K;
        EXPECT_EQ(f.method, FimMethod::quadrature);
        EXPECT_LT(f.error_estimate, 1e-8 * expected);
    }
}

TEST(FimQuadrature, MinIsExact) {
    for (int K : {2, 10, 300}) {
        EXPECT_NEAR(fim_quadrature(kExp, Variant::min, 1.0, 1, K).value, 1.0, 1e-8);
    }
}

TEST(FimQuadrature, MixMatchesOracle) {
    // scipy dblquad of the joint curvature against the joint density.
    const std::pair<int, double> cases[] = {
        {2, 2.0}, {3, 2.808227612638377}, {5, 4.111111111111112}, {10, 6.472299562682214},
        {25, 10.81316802917976}, {50, 15.123236442500732}, {100, 20.372129491198343},
    };
    for (auto [K, expected] : cases) {
        EXPECT_NEAR(fim_quadrature(kExp, Variant::mix, 1.0, 1, K).value, expected,
                    1e-6 * expected)
            << K;
    }
}

TEST(FimQuadrature, ScaleLaw) {
    const double base = fim_quadrature(kExp, Variant::max, 1.0, 1, 20).value;
    const double scaled = fim_quadrature(kExp, Variant::max, 3.0, 50, 20).value;
    EXPECT_NEAR(scaled, base * 50 / 9.0, 1e-8 * scaled);
}

TEST(AStatistic, ExponentialOracle) {
    const std::pair<int, double> cases[] = {
        {2, -1.8116826944033784},
        {3, -0.62236720743011332},
        {10, 3.7837875873750273},
        {100, 19.411743376687178},
    };
    for (auto [K, expected] : cases) {
        const auto a = a_statistic(kExp, 1.0, K);
        EXPECT_NEAR(a.value, expected, 1e-10 * std::max(1.0, std::abs(expected))) << K;
        EXPECT_NEAR(a.value, a.j_plugin_max - a.j_plugin_min, 1e-10 * (1 + std::abs(a.value)));
    }
    EXPECT_EQ(a_statistic(kExp, 1.0, 3).sign_class, SignClass::min_favored);
    EXPECT_EQ(a_statistic(kExp, 1.0, 10).sign_class, SignClass::max_favored);
}

TEST(AStatistic, SignMatchesPluginDifference) {
    for (int K = 2; K <= 200; ++K) {
        const auto a = a_statistic(kExp, 1.0, K);
        const double diff = fim_plugin(kExp, Variant::max, 1.0, 1, K).value -
                            fim_plugin(kExp, Variant::min, 1.0, 1, K).value;
        EXPECT_EQ(a.value > 0, diff > 0) << K;
    }
}

TEST(AStatistic, Uniforms) {
    // Support [0, theta]: the centre of symmetry moves with theta, so the
    // maximum carries the scale information differently from the minimum.
    const auto u = a_statistic(Uniform{}, 1.0, 4);
    EXPECT_NEAR(u.value, -16.0 / 3.0, 1e-9);
    EXPECT_NEAR(u.j_plugin_max, -4.0, 1e-9);
    EXPECT_NEAR(u.j_plugin_min, 4.0 / 3.0, 1e-9);
    // Symmetric about a fixed centre: min and max are mirror images.
    for (int K : {2, 4, 10, 100}) {
        const auto c = a_statistic(CenteredUniform{}, 1.7, K);
        EXPECT_EQ(c.sign_class, SignClass::balanced) << K;
        EXPECT_NEAR(c.value, 0.0, 1e-9 * (1 + std::abs(c.j_plugin_max)));
    }
}

TEST(Crlb, InverseAndUndefinedBound) {
    const auto f = fim_plugin(kExp, Variant::max, 1.0, 100, 20);
    EXPECT_DOUBLE_EQ(crlb(f), 1.0 / f.value);
    EXPECT_NEAR(l_equivalent(f), f.value / 100.0, 1e-15);

    const auto broken = fim_plugin(Uniform{}, Variant::max, 1.0, 1, 4);
    EXPECT_TRUE(broken.breakdown);
    try {
        crlb(broken);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::undefined_bound);
    }
}

TEST(Fim, ParameterValidation) {
    EXPECT_THROW(fim_plugin(kExp, Variant::max, 0.0, 1, 5), Error);
    EXPECT_THROW(fim_plugin(kExp, Variant::max, 1.0, 0, 5), Error);
    EXPECT_THROW(fim_plugin(kExp, Variant::max, 1.0, 1, 1), Error);
    EXPECT_THROW(fim_plugin(kExp, Variant::opt, 1.0, 1, 5), Error);
}
