// Minimal library use: simulate an underlying, build a cap/floor index on it,
// print the last few levels and the exposure schedule tail.
#include <cstdio>

#include "riskindexlab/riskindexlab.hpp"

using namespace riskindexlab;

int main() {
    RegimeSwitchScenario sc;
    sc.days = 504;
    sc.switch_day = 252;
    Rng rng(derive_seed(42, 0));
    const auto underlying = simulate_regime_switch(sc, rng).front();

    VolRecipe rec;
    rec.window = 20;
    RiskControlOptions opts;
    opts.rebalance_every = 5;
    const auto idx = run_hsrai(underlying, DatedSeries::flat(underlying.dates(), 0.02),
                               {0.10, 1.5, 0.0, 2}, rec, opts);

    for (std::size_t k = idx.size() - 5; k < idx.size(); ++k) {
        std::printf("%s  index %9.4f  exposure %.4f\n", idx.dates[k].iso().c_str(), idx.levels[k],
                    idx.exposure[std::min(k, idx.exposure.size() - 1)]);
    }
    return 0;
}
