#pragma once

#include <cmath>
#include <span>
#include <vector>

#include "riskindexlab/errors.hpp"
#include "riskindexlab/moments.hpp"
#include "riskindexlab/series.hpp"

namespace riskindexlab {

// Mean excess return over its population standard deviation.
inline double sharpe(std::span<const double> returns, double risk_free) {
    if (returns.empty()) throw InputError("sharpe: empty return series");
    std::vector<double> excess(returns.begin(), returns.end());
    for (double& x : excess) x -= risk_free;
    const double sd = std::sqrt(sample_variance(excess));
    if (!(sd > 0.0)) throw NumericError("sharpe: excess returns have zero standard deviation");
    return mean(excess) / sd;
}

inline double sharpe(const ReturnSeries& returns, double risk_free) {
    return sharpe(returns.view(), risk_free);
}

}  // namespace riskindexlab
