#include <gtest/gtest.h>

#include <boost/math/quadrature/exp_sinh.hpp>
#include <boost/math/quadrature/tanh_sinh.hpp>
#include <cmath>

#include "extremefim/error.hpp"
#include "extremefim/extremes.hpp"

using namespace extremefim;

TEST(ExtremePdf, MaxMatchesOracle) {
    Exponential e;
    EXPECT_NEAR(extreme_pdf(e, ExtremeKind::max, 1.0, 1.0, 5), 0.29368054938161979, 1e-15);
}

TEST(ExtremePdf, KOneIsBaseDensity) {
    Exponential e;
    for (double y : {0.1, 1.0, 4.0}) {
        EXPECT_DOUBLE_EQ(extreme_pdf(e, ExtremeKind::max, y, 2.0, 1), e.pdf(y, 2.0));
        EXPECT_DOUBLE_EQ(extreme_pdf(e, ExtremeKind::min, y, 2.0, 1), e.pdf(y, 2.0));
    }
}

TEST(ExtremePdf, MinOfExponentialsIsExponential) {
    Exponential e;
    for (int K : {2, 7, 50}) {
        for (double y : {0.01, 0.2, 1.5}) {
            EXPECT_NEAR(extreme_pdf(e, ExtremeKind::min, y, 3.0, K), e.pdf(y, 3.0 / K),
                        1e-13 * e.pdf(y, 3.0 / K));
        }
    }
}

TEST(ExtremePdf, IntegratesToOne) {
    boost::math::quadrature::exp_sinh<double> half_line;
    boost::math::quadrature::tanh_sinh<double> finite;
    Exponential e;
    Uniform u;
    for (int K : {2, 5, 30, 1000}) {
        for (auto kind : {ExtremeKind::min, ExtremeKind::max}) {
            const double ie = half_line.integrate(
                [&](double y) { return extreme_pdf(e, kind, y, 1.5, K); }, 1e-12);
            EXPECT_NEAR(ie, 1.0, 1e-8) << "exponential K=" << K;
            const double iu = finite.integrate(
                [&](double y) { return extreme_pdf(u, kind, y, 2.0, K); }, 0.0, 2.0, 1e-12);
            EXPECT_NEAR(iu, 1.0, 1e-8) << "uniform K=" << K;
        }
    }
}

TEST(JointPdf, MarginalizesToMinDensity) {
    boost::math::quadrature::exp_sinh<double> half_line;
    Exponential e;
    for (int K : {2, 3, 10}) {
        for (double a : {0.05, 0.4, 1.2}) {
            const double marg = half_line.integrate(
                [&](double t) { return joint_extreme_pdf(e, {a, a + t}, 1.0, K); }, 1e-12);
            EXPECT_NEAR(marg, extreme_pdf(e, ExtremeKind::min, a, 1.0, K),
                        1e-8 * extreme_pdf(e, ExtremeKind::min, a, 1.0, K))
                << "K=" << K << " a=" << a;
        }
    }
}

TEST(JointPdf, TiesAndOrdering) {
    Exponential e;
    EXPECT_DOUBLE_EQ(joint_extreme_pdf(e, {1.0, 1.0}, 1.0, 3), 0.0);
    EXPECT_GT(joint_extreme_pdf(e, {1.0, 1.0}, 1.0, 2), 0.0);
    EXPECT_THROW(joint_extreme_pdf(e, {2.0, 1.0}, 1.0, 3), Error);
    EXPECT_THROW(joint_extreme_pdf(e, {0.0, 1.0}, 1.0, 1), Error);
}

TEST(ExtremeCdf, QuantileRoundTrip) {
    Exponential e;
    for (int K : {2, 10, 500}) {
        for (auto kind : {ExtremeKind::min, ExtremeKind::max}) {
            for (double u : {1e-8, 0.1, 0.5, 0.9, 1.0 - 1e-8}) {
                const double y = extreme_quantile(e, kind, u, 1.0, K);
                EXPECT_NEAR(extreme_cdf(e, kind, y, 1.0, K), u, 1e-10);
            }
        }
    }
}

TEST(CharacteristicValues, ExponentialClosedForm) {
    Exponential e;
    const auto cv = characteristic_values(e, 2.0, 10);
    EXPECT_NEAR(cv.mu1, -2.0 * std::log1p(-0.1), 1e-15);
    EXPECT_NEAR(cv.muK, 2.0 * std::log(10.0), 1e-14);
}

TEST(CharacteristicValues, RootSearchMatchesClosedForm) {
    Exponential e;
    Uniform u;
    CenteredUniform c;
    for (int K : {2, 3, 7, 25, 100, 999, 10000}) {
        for (const DistributionModel* m : {static_cast<const DistributionModel*>(&e),
                                           static_cast<const DistributionModel*>(&u),
                                           static_cast<const DistributionModel*>(&c)}) {
            const auto closed = characteristic_values(*m, 1.0, K);
            const auto root = characteristic_values_by_root_search(*m, 1.0, K);
            EXPECT_NEAR(root.mu1, closed.mu1, 1e-9) << m->name() << " K=" << K;
            EXPECT_NEAR(root.muK, closed.muK, 1e-9) << m->name() << " K=" << K;
        }
    }
}

TEST(CharacteristicValues, UniformValues) {
    Uniform u;
    const auto cv = characteristic_values(u, 4.0, 8);
    EXPECT_DOUBLE_EQ(cv.mu1, 0.5);
    EXPECT_DOUBLE_EQ(cv.muK, 3.5);
}

TEST(SolveCdfLevel, RejectsLevelsOutsideUnitInterval) {
    Exponential e;
    try {
        solve_cdf_level(e, 1.0, 1.0);
        FAIL();
    } catch (const Error& err) {
        EXPECT_EQ(err.code(), ErrorCode::solver);
    }
}

TEST(SampleMatrix, RaggedRowsRejected) {
    try {
        SampleMatrix::from_rows({{1.0, 2.0}, {3.0}});
        FAIL();
    } catch (const Error& err) {
        EXPECT_EQ(err.code(), ErrorCode::shape);
    }
    EXPECT_THROW(SampleMatrix::from_rows({}), Error);
}

TEST(ReduceIntervals, PerRowExtremes) {
    const auto m = SampleMatrix::from_rows({{3.0, 1.0, 2.0}, {0.5, 0.7, 0.1}});
    const auto d = reduce_intervals(m);
    ASSERT_EQ(d.N(), 2u);
    EXPECT_EQ(d.K(), 3);
    EXPECT_DOUBLE_EQ(d.intervals()[0].y_min, 1.0);
    EXPECT_DOUBLE_EQ(d.intervals()[0].y_max, 3.0);
    EXPECT_DOUBLE_EQ(d.intervals()[1].y_min, 0.1);
    EXPECT_DOUBLE_EQ(d.intervals()[1].y_max, 0.7);
}

TEST(ExtremeDataset, Validation) {
    EXPECT_THROW(ExtremeDataset(1, {{0.1, 0.2}}), Error);
    EXPECT_THROW(ExtremeDataset(3, {}), Error);
    EXPECT_THROW(ExtremeDataset(3, {{0.3, 0.2}}), Error);
    ExtremeDataset d(3, {{-0.1, 0.2}});
    Exponential e;
    try {
        d.check_support(e, 1.0);
        FAIL();
    } catch (const Error& err) {
        EXPECT_EQ(err.code(), ErrorCode::domain);
    }
}
