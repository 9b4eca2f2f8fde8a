#include <gtest/gtest.h>

#include <random>

#include "oracles.hpp"
#include "riskindexlab/engines/djrri.hpp"

using namespace riskindexlab;
namespace ts = testing_support;

namespace {

using Windows = std::array<std::vector<double>, 3>;

std::array<std::span<const double>, 3> spans(const Windows& w) {
    return {std::span<const double>(w[0]), std::span<const double>(w[1]), std::span<const double>(w[2])};
}

Windows synthetic(std::uint64_t seed, std::size_t months, double s_stock, double s_bond, double s_cash) {
    std::mt19937_64 gen(seed);
    std::normal_distribution<double> z;
    Windows w;
    for (std::size_t k = 0; k < months; ++k) {
        const double common = z(gen);
        w[0].push_back(0.008 + s_stock * z(gen));
        w[1].push_back(0.004 + s_bond * (0.3 * common + z(gen)));
        w[2].push_back(0.002 + s_cash * z(gen));
    }
    return w;
}

}  // namespace

TEST(Djrri, FullRiskStocksBestGivesFloorCorner) {
    const auto w = synthetic(1, 36, 0.04, 0.01, 0.0005);
    DjrriOptions o;
    const auto a = allocate_cmac(spans(w), {0.01, 0.004, 0.002}, o);
    EXPECT_TRUE(a.target_attainable);
    EXPECT_EQ(a.grid_weights[kStocks], 900);
    EXPECT_EQ(a.grid_weights[kBonds], 50);
    EXPECT_EQ(a.grid_weights[kCash], 50);
    EXPECT_DOUBLE_EQ(a.weights[kStocks], 0.9);
}

TEST(Djrri, UnattainableTargetFallsBackToMinimumRisk) {
    Windows w = synthetic(2, 36, 0.04, 0.012, 0.0);
    for (double& x : w[kCash]) x = 0.001;  // riskless
    DjrriOptions o;
    o.risk_fraction = 0.0;
    const auto a = allocate_cmac(spans(w), {0.01, 0.005, 0.001}, o);
    EXPECT_FALSE(a.target_attainable);
    EXPECT_EQ(a.grid_weights[kCash], 900);
    EXPECT_EQ(a.grid_weights[kStocks], 50);
    EXPECT_EQ(a.grid_weights[kBonds], 50);
    EXPECT_GT(a.achieved_risk, 0.0);
}

TEST(Djrri, MatchesCoarseGridOracle) {
    // Bond semivariance a quarter of the stock semivariance.
    Windows w = synthetic(3, 36, 0.05, 0.0, 0.0005);
    for (std::size_t k = 0; k < 36; ++k) w[kBonds][k] = 0.004 + 0.5 * (w[kStocks][k] - 0.008);
    ASSERT_NEAR(static_cast<double>(ts::ref_semivariance(w[kBonds])),
                static_cast<double>(ts::ref_semivariance(w[kStocks])) / 4.0, 1e-15);
    for (double fraction : kRiskFractions) {
        DjrriOptions o;
        o.grid = 100;
        o.risk_fraction = fraction;
        const auto a = allocate_cmac(spans(w), {0.01, 0.006, 0.002}, o);
        const double target = fraction * static_cast<double>(ts::ref_semivariance(w[kStocks]));
        const auto ref = ts::ref_grid_search(w, kStocks, target, 100, 0.05);
        SCOPED_TRACE(fraction);
        ASSERT_EQ(a.target_attainable, ref.feasible);
        EXPECT_DOUBLE_EQ(a.weights[kStocks], ref.best_weight);
        EXPECT_LE(a.achieved_risk, target * (1 + 1e-12));
    }
}

TEST(Djrri, SemideviationMeasure) {
    const auto w = synthetic(4, 36, 0.04, 0.015, 0.0005);
    DjrriOptions o;
    o.measure = RiskMeasure::semideviation;
    o.risk_fraction = 0.5;
    const auto a = allocate_cmac(spans(w), {0.01, 0.005, 0.002}, o);
    EXPECT_NEAR(a.stock_risk, std::sqrt(static_cast<double>(ts::ref_semivariance(w[kStocks]))), 1e-15);
    EXPECT_LE(a.achieved_risk, a.target_risk * (1 + 1e-12));
}

TEST(Djrri, MonthlyRunInvariants) {
    std::mt19937_64 gen(5);
    std::normal_distribution<double> z;
    const auto dates = month_starts(Date(2005, 1, 1), 50);
    std::vector<double> s{100}, b{100}, c{100};
    for (std::size_t k = 1; k < dates.size(); ++k) {
        s.push_back(s.back() * (1.007 + 0.045 * z(gen)));
        b.push_back(b.back() * (1.003 + 0.015 * z(gen)));
        c.push_back(c.back() * 1.0015);
    }
    DjrriOptions o;
    o.risk_fraction = 0.6;
    const auto res = run_djrri(LevelSeries(dates, s), LevelSeries(dates, b), LevelSeries(dates, c), o);
    ASSERT_EQ(res.allocations.size(), 50u - 36u);
    for (const auto& a : res.allocations) {
        EXPECT_EQ(a.grid_weights[0] + a.grid_weights[1] + a.grid_weights[2], 1000);
        for (double x : a.weights) EXPECT_GE(x, 0.05);
        EXPECT_NEAR(a.weights[0] + a.weights[1] + a.weights[2], 1.0, 1e-15);
    }
    // Composite chains on the previous month's weights.
    for (std::size_t k = 1; k < res.composite.size(); ++k) {
        const auto& w = res.allocations[k - 1].weights;
        const std::size_t m = 36 + k;
        const double r = w[0] * (s[m] / s[m - 1] - 1) + w[1] * (b[m] / b[m - 1] - 1) + w[2] * (c[m] / c[m - 1] - 1);
        EXPECT_NEAR(res.composite.level(k) / res.composite.level(k - 1), 1.0 + r, 1e-14);
    }
    EXPECT_THROW(run_djrri(LevelSeries(std::vector<Date>(dates.begin(), dates.begin() + 20),
                                       std::vector<double>(s.begin(), s.begin() + 20)),
                           LevelSeries(std::vector<Date>(dates.begin(), dates.begin() + 20),
                                       std::vector<double>(b.begin(), b.begin() + 20)),
                           LevelSeries(std::vector<Date>(dates.begin(), dates.begin() + 20),
                                       std::vector<double>(c.begin(), c.begin() + 20)),
                           o),
                 PreconditionError);
}

TEST(Djrri, OptionValidation) {
    DjrriOptions o;
    o.risk_fraction = 1.2;
    EXPECT_THROW(o.validate(), InputError);
    EXPECT_THROW(parse_risk_measure("variance"), InputError);
}
