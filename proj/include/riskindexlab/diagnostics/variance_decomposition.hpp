#pragma once

#include <array>
#include <cmath>
#include <cstddef>
#include <string>
#include <string_view>

#include "riskindexlab/errors.hpp"

namespace riskindexlab {

/// Attribution of a security's visible variance to eight sources.
struct VarianceDecomposition {
    static constexpr std::array<std::string_view, 8> kNames{
        "fundamental",   // operating performance and operational risk
        "market_noise",
        "expectations",  // market expectations about the company
        "industry",
        "liquidity",     // order volume and liquidity of the shares
        "shareholders",  // investor types holding / trading the shares
        "order_types",   // order types placed and the trading range
        "cash_supply",   // availability of investable cash, margin cost
    };

    std::array<double, 8> components{};
    double total = 0.0;
};

inline VarianceDecomposition decompose_variance(const std::array<double, 8>& components) {
    VarianceDecomposition d;
    for (std::size_t i = 0; i < components.size(); ++i) {
        if (!std::isfinite(components[i]) || components[i] < 0.0) {
            throw InputError("decompose_variance: component '" +
                             std::string(VarianceDecomposition::kNames[i]) + "' must be >= 0");
        }
        d.components[i] = components[i];
        d.total += components[i];
    }
    return d;
}

}  // namespace riskindexlab
