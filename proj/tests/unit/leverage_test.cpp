#include <gtest/gtest.h>

#include <array>

#include "rational.hpp"
#include "riskindexlab/diagnostics/sensitivity.hpp"
#include "riskindexlab/engines/leverage.hpp"

using namespace riskindexlab;
using testing_support::Rational;

namespace {

// RV (%), LF (%), ΔLF (pp) as published for TV = 20%, rounded to the printed digits.
struct PublishedRow {
    double rv, lf, dlf;
};

constexpr std::array<PublishedRow, 41> kPublished{{
    {8, 250.0, 0},       {9, 222.2, -27.778}, {10, 200.0, -22.222}, {11, 181.8, -18.182},
    {12, 166.7, -15.152}, {13, 153.8, -12.821}, {14, 142.9, -10.989}, {15, 133.3, -9.524},
    {16, 125.0, -8.333}, {17, 117.6, -7.353}, {18, 111.1, -6.536},  {19, 105.3, -5.848},
    {20, 100.0, -5.263}, {21, 95.2, -4.762},  {22, 90.9, -4.329},   {23, 87.0, -3.953},
    {24, 83.3, -3.623},  {25, 80.0, -3.333},  {26, 76.9, -3.077},   {27, 74.1, -2.849},
    {28, 71.4, -2.646},  {29, 69.0, -2.463},  {30, 66.7, -2.299},   {31, 64.5, -2.151},
    {32, 62.5, -2.016},  {33, 60.6, -1.894},  {34, 58.8, -1.783},   {35, 57.1, -1.681},
    {36, 55.6, -1.587},  {37, 54.1, -1.502},  {38, 52.6, -1.422},   {39, 51.3, -1.350},
    {40, 50.0, -1.282},  {41, 48.8, -1.220},  {42, 47.6, -1.161},   {43, 46.5, -1.107},
    {44, 45.5, -1.057},  {45, 44.4, -1.010},  {46, 43.5, -0.966},   {47, 42.6, -0.925},
    {48, 41.7, -0.887},
}};

}  // namespace

TEST(LeverageHsrai, Examples) {
    EXPECT_DOUBLE_EQ(leverage_hsrai({0.20, 3.0, 0.0, 2}, 0.25), 0.80);
    EXPECT_DOUBLE_EQ(leverage_hsrai({0.20, 10.0, 0.0, 2}, 0.08), 2.50);
    EXPECT_DOUBLE_EQ(leverage_hsrai({0.20, 1.0, 0.5, 2}, 0.10), 1.0);
    EXPECT_DOUBLE_EQ(leverage_hsrai({0.20, 1.5, 0.5, 2}, 1.0), 0.5);
    EXPECT_THROW(leverage_hsrai({0.20, 1.5, 0.0, 2}, 0.0), InputError);
    EXPECT_THROW(leverage_hsrai({0.20, 0.5, 1.0, 2}, 0.2), InputError);
}

TEST(LeverageHsrai, WorkedDecline) {
    const double a = leverage_hsrai({0.20, 3.0, 0.0, 2}, 0.25);
    const double b = leverage_hsrai({0.20, 3.0, 0.0, 2}, 0.30);
    EXPECT_NEAR(b, 0.6667, 5e-5);
    EXPECT_NEAR(100.0 * (a - b), 13.33, 0.01);
}

TEST(LeverageHsrai, AlwaysWithinBounds) {
    for (double rv = 0.01; rv < 1.0; rv += 0.007) {
        const double lf = leverage_hsrai({0.15, 1.3, 0.2, 2}, rv);
        EXPECT_GE(lf, 0.2);
        EXPECT_LE(lf, 1.3);
    }
}

TEST(LeverageSprci, Examples) {
    EXPECT_DOUBLE_EQ(leverage_sprci(0.20, 1.5, 0.40), 0.50);
    EXPECT_DOUBLE_EQ(leverage_sprci(0.20, 1.5, 0.20), 1.0);
    EXPECT_DOUBLE_EQ(leverage_sprci(0.20, 1.5, 0.05), 1.5);
    for (double rv = 0.01; rv < 3.0; rv += 0.013) {
        const double lf = leverage_sprci(0.1, 2.0, rv);
        EXPECT_GT(lf, 0.0);
        EXPECT_LE(lf, 2.0);
    }
}

TEST(SensitivityTable, ReproducesPublishedTable) {
    const auto t = lf_sensitivity_table(0.20, 0.08, 0.48, 0.01);
    ASSERT_EQ(t.size(), kPublished.size());
    for (std::size_t i = 0; i < t.size(); ++i) {
        SCOPED_TRACE(kPublished[i].rv);
        EXPECT_NEAR(100.0 * t[i].rv, kPublished[i].rv, 1e-9);
        EXPECT_NEAR(100.0 * t[i].lf, kPublished[i].lf, 0.1);
        EXPECT_NEAR(100.0 * t[i].delta_lf, kPublished[i].dlf, 0.1);
        // Published ΔLF carries three decimals.
        EXPECT_NEAR(100.0 * t[i].delta_lf, kPublished[i].dlf, 0.0005 + 1e-9);
    }
}

TEST(SensitivityTable, SingleRowDegenerate) {
    const auto t = lf_sensitivity_table(0.2, 0.2, 0.2, 0.01);
    ASSERT_EQ(t.size(), 1u);
    EXPECT_EQ(t[0].lf, 1.0);
    EXPECT_EQ(t[0].delta_lf, 0.0);
}

TEST(SensitivityTable, DeltaIsExactDifference) {
    const auto t = lf_sensitivity_table(0.1, 0.05, 0.9, 0.005, 1.5, 0.1);
    for (std::size_t i = 1; i < t.size(); ++i) EXPECT_EQ(t[i].delta_lf, t[i].lf - t[i - 1].lf);
}

TEST(SensitivityTable, ExactRationalProperties) {
    const auto t = lf_sensitivity_table<Rational>(Rational::of(1, 5), Rational::of(8, 100),
                                                  Rational::of(1, 100), 41, std::nullopt, Rational(0));
    ASSERT_EQ(t.size(), 41u);
    EXPECT_EQ(t[1].lf, Rational::of(20, 9));
    for (std::size_t i = 1; i < t.size(); ++i) {
        EXPECT_LT(t[i].lf, t[i - 1].lf);
        EXPECT_EQ(t[i].delta_lf, t[i].lf - t[i - 1].lf);
        if (i >= 2) {
            EXPECT_GT(t[i].delta_lf - t[i - 1].delta_lf, Rational(0));
            EXPECT_LT(abs(t[i].delta_lf), abs(t[i - 1].delta_lf));
        }
    }
}
