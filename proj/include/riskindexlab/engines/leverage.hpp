#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "riskindexlab/date.hpp"
#include "riskindexlab/errors.hpp"

namespace riskindexlab {

/// Exposure bounds shared by the two-asset risk-control engines.
struct LeverageParams {
    double target_vol = 0.10;  // TV, annualized
    double cap = 1.5;          // 0 pins the exposure to cash
    double floor = 0.0;        // HSRAI only
    std::size_t lag = 2;       // d

    void validate() const {
        if (!(target_vol > 0.0)) throw InputError("target volatility must be > 0");
        if (!(floor >= 0.0)) throw InputError("leverage floor must be >= 0");
        if (!(cap >= floor)) throw InputError("leverage cap must be >= floor");
    }
};

/// Max{Min[cap, tv/rv], floor}; an absent cap means unbounded above.
///
/// Generic over the scalar so the sensitivity property checks can run on
/// exact rationals.
template <class Real>
Real clip_exposure(const Real& ratio, const std::optional<Real>& cap, const Real& floor) {
    Real lf = ratio;
    if (cap && *cap < lf) lf = *cap;
    if (lf < floor) lf = floor;
    return lf;
}

template <class Real>
Real leverage_hsrai(const Real& tv, const Real& rv, const std::optional<Real>& cap,
                    const Real& floor) {
    if (!(rv > Real(0))) throw InputError("leverage_hsrai: realized volatility must be > 0");
    return clip_exposure<Real>(tv / rv, cap, floor);
}

inline double leverage_hsrai(const LeverageParams& p, double rv) {
    p.validate();
    if (!(rv > 0.0)) throw InputError("leverage_hsrai: realized volatility must be > 0");
    return std::max(std::min(p.cap, p.target_vol / rv), p.floor);
}

/// Min[cap, tv/rv], no floor.
inline double leverage_sprci(double tv, double cap, double rv) {
    if (!(rv > 0.0)) throw InputError("leverage_sprci: realized volatility must be > 0");
    return std::min(cap, tv / rv);
}

/// Exposures fixed at each rebalance date and the RV reading behind each.
struct LeverageSchedule {
    std::vector<Date> rebalance_dates;
    std::vector<Date> rv_dates;
    std::vector<double> rv;
    std::vector<double> lf;

    std::size_t size() const { return lf.size(); }
};

}  // namespace riskindexlab
