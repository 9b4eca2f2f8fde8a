// Acceptance run: one PASS/FAIL line per criterion, nonzero exit on any FAIL.
#include <sys/wait.h>

#include <array>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "oracles.hpp"
#include "rational.hpp"
#include "riskindexlab/diagnostics/bias.hpp"
#include "riskindexlab/diagnostics/compound.hpp"
#include "riskindexlab/diagnostics/leakage.hpp"
#include "riskindexlab/diagnostics/sensitivity.hpp"
#include "riskindexlab/engines/djrri.hpp"
#include "riskindexlab/engines/hsrai.hpp"
#include "riskindexlab/engines/sprci.hpp"
#include "riskindexlab/engines/stablerisk.hpp"

using namespace riskindexlab;
namespace fs = std::filesystem;
namespace ts = testing_support;
using Clock = std::chrono::steady_clock;

namespace {

struct Verdict {
    bool ok = true;
    std::string detail;

    void require(bool cond, const std::string& what) {
        if (!cond && ok) {
            ok = false;
            detail = what;
        }
    }
};

int failures = 0;

void criterion(int id, const char* name, const std::function<Verdict()>& body) {
    Verdict v;
    try {
        v = body();
    } catch (const std::exception& e) {
        v.ok = false;
        v.detail = std::string("exception: ") + e.what();
    }
    if (!v.ok) ++failures;
    std::printf("%s %2d %s%s%s\n", v.ok ? "PASS" : "FAIL", id, name, v.detail.empty() ? "" : " : ",
                v.detail.c_str());
    std::fflush(stdout);
}

double seconds_since(Clock::time_point t0) {
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

std::string fmt(const char* f, double a, double b = 0.0) {
    char buf[160];
    std::snprintf(buf, sizeof buf, f, a, b);
    return buf;
}

// rv (%), lf (%), delta lf (pp) at tv = 20%
constexpr std::array<std::array<double, 3>, 41> kTable1{{
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

Verdict table1() {
    Verdict v;
    const fs::path dir = fs::temp_directory_path() / "riskindexlab_acceptance_table1";
    fs::remove_all(dir);
    const std::string cmd = std::string("\"") + RISKINDEXLAB_CLI +
                            "\" diagnose table1 --tv 0.20 --rv-min 0.08 --rv-max 0.48 --step 0.01 "
                            "--cap none --floor 0 --out \"" + dir.string() + "\" >/dev/null";
    const auto t0 = Clock::now();
    const int status = std::system(cmd.c_str());
    const double secs = seconds_since(t0);
    v.require(WIFEXITED(status) && WEXITSTATUS(status) == 0, "cli exited with an error");
    if (!v.ok) return v;

    std::ifstream in(dir / "table1.csv");
    std::string line;
    std::vector<std::array<double, 3>> rows;
    bool header = false;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#') continue;
        if (!header) {
            header = true;
            continue;
        }
        std::array<double, 5> f{};
        std::istringstream ls(line);
        std::string cell;
        for (double& x : f) {
            std::getline(ls, cell, ',');
            x = std::stod(cell);
        }
        rows.push_back({f[1], f[3], f[4]});
    }
    fs::remove_all(dir);
    v.require(rows.size() == kTable1.size(), "row count " + std::to_string(rows.size()));
    double worst = 0.0;
    for (std::size_t i = 0; v.ok && i < rows.size(); ++i) {
        for (std::size_t j = 0; j < 3; ++j) worst = std::max(worst, std::abs(rows[i][j] - kTable1[i][j]));
    }
    v.require(worst <= 0.1, fmt("max deviation %.4f pp", worst));
    v.require(secs < 1.0, fmt("runtime %.3f s", secs));
    if (v.ok) v.detail = fmt("41 rows, max deviation %.4f pp, %.3f s", worst, secs);
    return v;
}

Verdict worked_example() {
    Verdict v;
    const double a = leverage_hsrai({0.20, 10.0, 0.0, 2}, 0.25);
    const double b = leverage_hsrai({0.20, 10.0, 0.0, 2}, 0.30);
    v.require(std::abs(a - 0.80) < 1e-15, fmt("LF(0.25) = %.6f", a));
    v.require(std::abs(b - 0.6667) < 5e-5, fmt("LF(0.30) = %.6f", b));
    v.require(std::abs(100.0 * (a - b) - 13.33) <= 0.01, fmt("decline %.4f pp", 100.0 * (a - b)));
    if (v.ok) v.detail = fmt("0.80 -> %.4f, decline %.2f pp", b, 100.0 * (a - b));
    return v;
}

Verdict compounding() {
    Verdict v;
    const auto t = compound_table({std::vector<double>(12, 0.05), std::vector<double>(12, 0.10),
                                   std::vector<double>(12, -0.05)});
    const std::array<double, 3> want{79.59, 213.84, -45.96};
    for (std::size_t r = 0; r < 3; ++r) {
        v.require(std::abs(100.0 * t.compounded[r] - want[r]) <= 0.01,
                  fmt("row %.0f gives %.4f%%", static_cast<double>(r), 100.0 * t.compounded[r]));
    }
    if (v.ok) v.detail = fmt("%.4f%%, %.4f%%", 100.0 * t.compounded[0], 100.0 * t.compounded[1]) +
                         fmt(", %.4f%%", 100.0 * t.compounded[2]);
    return v;
}

Verdict rational_property() {
    Verdict v;
    using ts::Rational;
    const auto t = lf_sensitivity_table<Rational>(Rational::of(1, 5), Rational::of(8, 100), Rational::of(1, 100),
                                                  41, std::nullopt, Rational(0));
    v.require(t.size() == 41, "row count");
    for (std::size_t i = 1; v.ok && i < t.size(); ++i) {
        v.require(t[i].lf < t[i - 1].lf, "LF not strictly decreasing at row " + std::to_string(i));
        v.require(t[i].delta_lf == t[i].lf - t[i - 1].lf, "delta mismatch at row " + std::to_string(i));
        if (i >= 2) {
            v.require(t[i].delta_lf - t[i - 1].delta_lf > Rational(0),
                      "second difference not positive at row " + std::to_string(i));
            v.require(abs(t[i].delta_lf) < abs(t[i - 1].delta_lf),
                      "|delta| not decreasing at row " + std::to_string(i));
        }
    }
    if (v.ok) v.detail = "exact over 41 rows";
    return v;
}

LevelSeries walk(std::uint64_t seed, std::size_t n, double vol) {
    std::mt19937_64 gen(seed);
    std::normal_distribution<double> z(0.0, vol);
    std::vector<double> lv{100.0};
    while (lv.size() < n) lv.push_back(lv.back() * std::exp(z(gen)));
    return LevelSeries(business_days(Date(2012, 1, 2), n), lv, "walk");
}

Verdict engine_identities() {
    Verdict v;
    double worst = 0.0;
    VolRecipe rec;
    rec.window = 40;
    for (std::uint64_t seed = 1; seed <= 5; ++seed) {
        const auto b = walk(seed, 400, 0.02);
        const auto rates = DatedSeries::flat(b.dates(), 0.04);
        for (std::size_t every : {1u, 5u}) {
            RiskControlOptions o;
            o.rebalance_every = every;
            const auto one = run_hsrai(b, rates, {0.10, 1.0, 1.0, 2}, rec, o);
            const auto zero = run_hsrai(b, rates, {0.10, 0.0, 0.0, 2}, rec, o);
            const auto first = *b.index_of(one.dates.front());
            for (std::size_t k = 0; k + 1 < one.size(); ++k) {
                const double und = b.level(first + k + 1) / b.level(first + k);
                const double acc = 1.0 + 0.04 * static_cast<double>(days_between(b.date(first + k), b.date(first + k + 1))) / 365.0;
                const double e1 = std::abs(one.levels[k + 1] / one.levels[k] - und);
                const double e0 = std::abs(zero.levels[k + 1] / zero.levels[k] - acc);
                worst = std::max({worst, e1, e0});
            }
        }
        CashRates cr;
        cr.rate = DatedSeries::flat(b.dates(), 0.0);
        RiskControlOptions o;
        o.rebalance_every = 10;
        const auto s = run_sprci(b, cr, {0.10, 1.5, 0.0, 2}, rec, o);
        const auto first = *b.index_of(s.dates.front());
        for (std::size_t rb = 0; rb + 10 < s.size(); rb += 10) {
            const double x0 = b.level(first + rb), y0 = s.levels[rb];
            for (std::size_t j = 1; j + 1 <= 10; ++j) {
                const double x1 = b.level(first + rb + j) - x0, y1 = s.levels[rb + j] - y0;
                const double x2 = b.level(first + rb + j + 1) - x0, y2 = s.levels[rb + j + 1] - y0;
                worst = std::max(worst, std::abs(x1 * y2 - x2 * y1) / (x0 * y0));
            }
        }
    }
    v.require(worst <= 1e-12, fmt("max residual %.3e", worst));
    if (v.ok) v.detail = fmt("max residual %.3e", worst);
    return v;
}

Verdict estimator_oracles() {
    Verdict v;
    std::mt19937_64 gen(20240101);
    std::uniform_int_distribution<std::size_t> len(2, 1000);
    double worst = 0.0;
    auto track = [&](long double ref, double got) {
        worst = std::max(worst, static_cast<double>(std::abs(ref - got) / std::max(1.0L, std::abs(ref))));
    };
    for (int k = 0; k < 1000; ++k) {
        const std::size_t n = len(gen);
        const auto x = ts::random_series(gen, n, 1.0);
        const auto y = ts::random_series(gen, n, 2.0);
        track(ts::ref_variance(x), sample_variance(x));
        track(ts::ref_semivariance(x), semivariance(x));
        track(ts::ref_covariance(x, y), covariance(x, y));
        track(ts::ref_correlation(x, y), correlation(x, y));
        for (double lambda : {0.94, 0.97}) {
            const std::size_t window = std::min<std::size_t>(n, 252);
            track(ts::ref_ewma_init(x, window, lambda), ewma_variance_init(x, {lambda, 1, window, 252}));
        }
    }
    v.require(worst <= 1e-12, fmt("max relative error %.3e", worst));
    for (double r : {0.0, 0.01, -0.02, 0.05, 1e-4}) {
        for (double lambda : {0.94, 0.97}) {
            v.require(ewma_variance_update(r * r, r, lambda) == r * r, fmt("fixed point broken at r = %g", r));
        }
    }
    if (v.ok) v.detail = fmt("1000 series, max relative error %.3e", worst);
    return v;
}

Verdict stablerisk_band() {
    Verdict v;
    RegimeSwitchScenario sc;
    sc.assets = 4;
    sc.days = 504;
    sc.switch_day = 252;
    sc.vol_before = 0.15;
    sc.vol_after = 0.30;
    sc.correlation = 0.3;
    Rng rng(derive_seed(42, 0));
    const auto contracts = simulate_regime_switch(sc, rng);
    std::string summary;
    for (double threshold : {0.0, 0.10, 0.25}) {
        StableRiskParams p;
        p.cost_rate = 0.0005;
        p.threshold = threshold;
        const auto res = simulate_stablerisk(contracts, p);
        v.require(res.band_exits >= 1, fmt("no band exit at threshold %.2f", threshold));
        const auto t0 = Clock::now();
        const auto mc = run_stablerisk_monte_carlo(sc, p, 1000, 42);
        const double secs = seconds_since(t0);
        v.require(secs < 10.0, fmt("1000 paths took %.2f s at threshold %.2f", secs, threshold));
        summary += fmt("%.0f%%: ", 100.0 * threshold) + std::to_string(res.band_exits) + " exits, " +
                   std::to_string(mc.paths_with_exit()) + "/1000 paths" + fmt(" in %.2f s; ", secs);
    }
    if (v.ok) v.detail = summary.substr(0, summary.size() - 2);
    return v;
}

Verdict leakage() {
    Verdict v;
    const auto rep = leakage_experiment(LeakageConfig{});
    const std::array<double, 4> golden{0.10982771969897069, 0.11272442756445653, 0.11630748054124727,
                                       0.12470673032487962};
    v.require(rep.points.size() == 4, "lag count");
    for (std::size_t k = 0; v.ok && k < 4; ++k) {
        v.require(std::abs(rep.points[k].realized_vol - golden[k]) <= 1e-12,
                  fmt("lag %.0f gives %.17g", static_cast<double>(rep.points[k].lag), rep.points[k].realized_vol));
        if (k > 0) v.require(rep.points[k].realized_vol >= rep.points[k - 1].realized_vol, "not non-decreasing");
    }
    if (v.ok) v.detail = fmt("%.4f -> %.4f", rep.points.front().realized_vol, rep.points.back().realized_vol);
    return v;
}

Verdict telescoping() {
    Verdict v;
    std::mt19937_64 gen(99);
    std::uniform_int_distribution<std::size_t> len(2, 1000);
    std::normal_distribution<double> z(0.0, 0.02);
    double worst = 0.0;
    for (int k = 0; k < 1000; ++k) {
        const std::size_t n = len(gen);
        std::vector<double> a{100.0}, b{100.0};
        while (a.size() < n) {
            a.push_back(a.back() * std::exp(z(gen)));
            b.push_back(b.back() * std::exp(z(gen)));
        }
        const auto dates = business_days(Date(2000, 1, 3), n);
        const auto bs = bias_series(LevelSeries(dates, a), LevelSeries(dates, b));
        worst = std::max(worst, bs.telescoping_residual());
    }
    v.require(worst <= 1e-12, fmt("max residual %.3e", worst));
    if (v.ok) v.detail = fmt("1000 pairs, max residual %.3e", worst);
    return v;
}

Verdict djrri_constraints() {
    Verdict v;
    std::size_t allocations = 0;
    double worst_gap = 0.0;
    for (std::uint64_t s = 0; s < 50 && v.ok; ++s) {
        std::mt19937_64 gen(1000 + s);
        std::normal_distribution<double> z;
        std::uniform_real_distribution<double> u(0.0, 1.0);
        const double sv = 0.02 + 0.05 * u(gen), bv = 0.005 + 0.02 * u(gen);
        const double sm = 0.002 + 0.01 * u(gen), bm = 0.001 + 0.006 * u(gen);
        const auto dates = month_starts(Date(2001, 1, 1), 28);
        std::vector<double> st{100}, bo{100}, ca{100};
        for (std::size_t k = 1; k < dates.size(); ++k) {
            const double common = z(gen);
            st.push_back(st.back() * (1.0 + sm + sv * common));
            bo.push_back(bo.back() * (1.0 + bm + bv * (0.4 * common + z(gen))));
            ca.push_back(ca.back() * (1.0015 + 0.0002 * z(gen)));
        }
        DjrriOptions o;
        o.lookback = 24;
        o.risk_fraction = kRiskFractions[s % kRiskFractions.size()];
        const LevelSeries S(dates, st), B(dates, bo), C(dates, ca);
        const auto res = run_djrri(S, B, C, o);
        for (const auto& a : res.allocations) {
            ++allocations;
            double sum = 0.0;
            for (double w : a.weights) {
                v.require(w >= 0.05 - 1e-15, "weight below 5%");
                sum += w;
            }
            v.require(std::abs(sum - 1.0) <= 1e-12, "weights do not sum to 1");

            const std::size_t end = *S.index_of(a.date);
            std::array<std::vector<double>, 3> win;
            const std::array<const LevelSeries*, 3> src{&S, &B, &C};
            for (std::size_t j = 0; j < 3; ++j) {
                for (std::size_t k = end - o.lookback + 1; k <= end; ++k) {
                    win[j].push_back(src[j]->level(k) / src[j]->level(k - 1) - 1.0);
                }
            }
            std::size_t best = 0;
            for (std::size_t j = 1; j < 3; ++j) {
                if (a.expected_returns[j] > a.expected_returns[best]) best = j;
            }
            const double target = a.risk_fraction * static_cast<double>(ts::ref_semivariance(win[0]));
            const auto ref = ts::ref_grid_search(win, best, target, o.grid, o.min_weight);
            if (ref.feasible) {
                v.require(a.target_attainable, "solver missed a feasible mix");
                v.require(std::abs(a.weights[best] - ref.best_weight) <= 1.0 / o.grid + 1e-12,
                          fmt("best-asset weight %.4f vs oracle %.4f", a.weights[best], ref.best_weight));
                v.require(a.achieved_risk <= target * (1 + 1e-9) + 1e-18, "risk above target");
                const double gap = std::abs(a.achieved_risk - static_cast<double>(ts::ref_mix_semivariance(win, ref.weights)));
                worst_gap = std::max(worst_gap, gap / std::max(target, 1e-18));
            } else {
                v.require(!a.target_attainable, "solver claims an infeasible target");
            }
        }
    }
    if (v.ok) v.detail = std::to_string(allocations) + " allocations over 50 scenarios" +
                         fmt(", max relative risk gap %.2e", worst_gap);
    return v;
}

}  // namespace

int main() {
    criterion(1, "table1 reproduction", table1);
    criterion(2, "worked leverage example", worked_example);
    criterion(3, "compounding anchors", compounding);
    criterion(4, "exact sensitivity property", rational_property);
    criterion(5, "engine identities", engine_identities);
    criterion(6, "estimator oracle equivalence", estimator_oracles);
    criterion(7, "stablerisk band exits", stablerisk_band);
    criterion(8, "leakage monotonicity", leakage);
    criterion(9, "bias telescoping", telescoping);
    criterion(10, "djrri constraints", djrri_constraints);
    std::printf("%d of 10 criteria failed\n", failures);
    return failures == 0 ? 0 : 1;
}
