#include <gtest/gtest.h>

#include <cmath>
#include <limits>
#include <random>
#include <utility>
#include <vector>

#include "covadj/normal_math.hpp"

using namespace covadj;

namespace {

// Reference values computed with 40-digit arithmetic (mpmath).
const std::vector<std::pair<double, double>> kErfcReference = {
    {-5.5, 1.9999999999999926422},   {-3.0, 1.9999779095030014146},
    {-1.2, 1.9103139782296353802},   {-0.3, 1.3286267594591274276},
    {0.1, 0.8875370839817151078},    {0.46875, 0.50738652678206200841},
    {0.5, 0.47950012218695346232},   {1.0, 0.15729920705028513066},
    {2.5, 0.00040695201744495893956}, {4.0, 1.5417257900280018852e-8},
    {4.5, 1.9661604415428874763e-10}, {6.0, 2.1519736712498913117e-17},
};

const std::vector<std::pair<double, double>> kCdfReference = {
    {-8.0, 6.2209605742717841235e-16}, {-6.0, 9.865876450376981407e-10},
    {-3.5, 0.00023262907903552503635}, {-1.0, 0.15865525393145705141},
    {0.7, 0.75803634777692698525},     {2.0, 0.9772498680518207928},
    {5.0, 0.99999971334842812081},
};

// Independent oracle: bisection on std_normal_cdf only.
double quantile_by_bisection(double p) {
    double lo = -40.0;
    double hi = 40.0;
    for (int i = 0; i < 200; ++i) {
        const double mid = 0.5 * (lo + hi);
        (std_normal_cdf(mid) < p ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi);
}

std::vector<double> log_spaced_probabilities() {
    std::vector<double> ps;
    for (int k = 0; k <= 200; ++k) {
        const double p = std::pow(10.0, -10.0 + 10.0 * k / 200.0) * 0.5;  // 5e-11 .. 0.5
        if (p >= 1e-10) {
            ps.push_back(p);
            ps.push_back(1.0 - p);
        }
    }
    return ps;
}

}  // namespace

TEST(Probability, RejectsOutOfRange) {
    EXPECT_THROW(Probability{-0.1}, std::domain_error);
    EXPECT_THROW(Probability{1.0000001}, std::domain_error);
    EXPECT_THROW(Probability{std::nan("")}, std::domain_error);
    EXPECT_DOUBLE_EQ(Probability{0.25}.value(), 0.25);
}

TEST(StdNormalPdf, KnownValues) {
    EXPECT_DOUBLE_EQ(std_normal_pdf(0.0), 0.3989422804014327);
    EXPECT_EQ(std_normal_pdf(1.0), std_normal_pdf(-1.0));
    EXPECT_NEAR(std_normal_pdf(0.84162), 0.27996, 1e-5);
    EXPECT_GT(std_normal_pdf(30.0), 0.0);
}

TEST(StdNormalPdf, RejectsNonFinite) {
    EXPECT_THROW(std_normal_pdf(std::numeric_limits<double>::infinity()), std::domain_error);
    EXPECT_THROW(std_normal_pdf(std::nan("")), std::domain_error);
}

TEST(StdNormalPdf, MatchesCentralDifferenceOfCdf) {
    const double h = 1e-5;
    for (int i = 0; i < 100; ++i) {
        const double x = -6.0 + 12.0 * i / 99.0;
        const double fd = (std_normal_cdf(x + h) - std_normal_cdf(x - h)) / (2.0 * h);
        EXPECT_NEAR(fd, std_normal_pdf(x), 1e-9) << "x=" << x;
    }
}

TEST(Erfc, MatchesHighPrecisionReference) {
    for (const auto& [x, expected] : kErfcReference) {
        EXPECT_NEAR(covadj::erfc(x) / expected, 1.0, 1e-12) << "x=" << x;
    }
}

TEST(Erfc, SpecialValuesAndReflection) {
    EXPECT_EQ(covadj::erfc(0.0), 1.0);
    EXPECT_NEAR(covadj::erfc(-0.841621233572914 / kSqrt2), 1.6, 1e-6);
    EXPECT_EQ(covadj::erfc(30.0), 0.0);
    EXPECT_EQ(covadj::erfc(-30.0), 2.0);
    EXPECT_THROW(covadj::erfc(std::nan("")), std::domain_error);
    for (int i = 0; i <= 60; ++i) {
        const double x = -6.0 + 0.2 * i;
        EXPECT_NEAR(covadj::erfc(x) + covadj::erfc(-x), 2.0, 1e-15) << "x=" << x;
    }
}

TEST(Erfc, StdLibraryAgreement) {
    for (int i = 0; i <= 1200; ++i) {
        const double x = -6.0 + 0.01 * i;
        const double ref = std::erfc(x);
        EXPECT_NEAR(covadj::erfc(x) / ref, 1.0, 1e-12) << "x=" << x;
    }
}

TEST(StdNormalCdf, KnownValuesAndLimits) {
    EXPECT_EQ(std_normal_cdf(0.0).value(), 0.5);
    EXPECT_NEAR(std_normal_cdf(1.959963985), 0.975, 1e-9);
    EXPECT_EQ(std_normal_cdf(-std::numeric_limits<double>::infinity()).value(), 0.0);
    EXPECT_EQ(std_normal_cdf(std::numeric_limits<double>::infinity()).value(), 1.0);
    EXPECT_EQ(std_normal_cdf(-38.5).value(), 0.0);
    EXPECT_EQ(std_normal_cdf(38.5).value(), 1.0);
    EXPECT_THROW(std_normal_cdf(std::nan("")), std::domain_error);
    for (const auto& [x, expected] : kCdfReference) {
        EXPECT_NEAR(std_normal_cdf(x), expected, 1e-15) << "x=" << x;
        EXPECT_NEAR(std_normal_cdf(x) / expected, 1.0, 1e-12) << "x=" << x;
    }
}

TEST(StdNormalCdf, ReflectionOnRandomPoints) {
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> unif(-8.0, 8.0);
    for (int i = 0; i < 1000; ++i) {
        const double x = unif(rng);
        EXPECT_NEAR(std_normal_cdf(x) + std_normal_cdf(-x), 1.0, 1e-14);
    }
}

TEST(StdNormalCdf, MonotoneOnFineGrid) {
    double prev = 0.0;
    for (int i = 0; i <= 16000; ++i) {
        const double v = std_normal_cdf(-8.0 + 0.001 * i);
        EXPECT_GE(v, prev);
        prev = v;
    }
}

TEST(StdNormalCdf, ErfcConsistency) {
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> unif(-8.0, 8.0);
    for (int i = 0; i < 1000; ++i) {
        const double x = unif(rng);
        EXPECT_NEAR(covadj::erfc(-x / kSqrt2), 2.0 * std_normal_cdf(x), 1e-12);
    }
}

TEST(StdNormalQuantile, KnownValues) {
    EXPECT_EQ(std_normal_quantile(Probability{0.5}), 0.0);
    EXPECT_NEAR(std_normal_quantile(Probability{0.025}), -1.959964, 1e-5);
    EXPECT_NEAR(std_normal_quantile(Probability{0.80}), 0.841621, 1e-5);
    EXPECT_NEAR(std_normal_quantile(Probability{0.025}), quantile_by_bisection(0.025), 1e-12);
    EXPECT_NEAR(std_normal_quantile(Probability{0.80}), quantile_by_bisection(0.80), 1e-12);
}

TEST(StdNormalQuantile, RejectsBoundary) {
    EXPECT_THROW(std_normal_quantile(Probability{0.0}), std::domain_error);
    EXPECT_THROW(std_normal_quantile(Probability{1.0}), std::domain_error);
}

TEST(StdNormalQuantile, RoundTripOverLogGrid) {
    for (double p : log_spaced_probabilities()) {
        const double x = std_normal_quantile(Probability{p});
        EXPECT_LE(std::fabs(std_normal_cdf(x) - p), 1e-12) << "p=" << p;
        // relative accuracy in the lower tail
        if (p < 0.5) EXPECT_NEAR(std_normal_cdf(x) / p, 1.0, 1e-13) << "p=" << p;
    }
}

TEST(StdNormalQuantile, StrictlyIncreasing) {
    double prev = -std::numeric_limits<double>::infinity();
    for (int k = 1; k < 20000; ++k) {
        const double x = std_normal_quantile(Probability{k / 20000.0});
        EXPECT_GT(x, prev);
        prev = x;
    }
}

TEST(StdNormalQuantile, AgreesWithBisectionOracle) {
    for (double p : {1e-10, 1e-6, 0.001, 0.1, 0.3, 0.6, 0.9, 0.999, 1.0 - 1e-8}) {
        EXPECT_NEAR(std_normal_quantile(Probability{p}), quantile_by_bisection(p), 1e-8)
            << "p=" << p;
    }
}
