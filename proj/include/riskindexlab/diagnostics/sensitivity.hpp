#pragma once

#include <cmath>
#include <cstddef>
#include <limits>
#include <optional>
#include <vector>

#include "riskindexlab/engines/leverage.hpp"
#include "riskindexlab/errors.hpp"

namespace riskindexlab {

template <class Real>
struct SensitivityRow {
    Real tv;
    Real rv;
    Real delta_rv;  // zero on the first row
    Real lf;
    Real delta_lf;  // lf − previous lf; zero on the first row
};

template <class Real>
using SensitivityTable = std::vector<SensitivityRow<Real>>;

/// Leverage factor across an RV grid rv_min, rv_min + step, ... (`rows` rows).
/// An absent cap leaves the exposure unbounded above.
template <class Real>
SensitivityTable<Real> lf_sensitivity_table(const Real& tv, const Real& rv_min, const Real& step,
                                            std::size_t rows, const std::optional<Real>& cap,
                                            const Real& floor) {
    if (rows == 0) throw InputError("lf_sensitivity_table: empty RV range");
    if (!(step > Real(0))) throw InputError("lf_sensitivity_table: step must be > 0");
    if (!(rv_min > Real(0))) throw InputError("lf_sensitivity_table: RV range must be positive");
    SensitivityTable<Real> table;
    table.reserve(rows);
    for (std::size_t k = 0; k < rows; ++k) {
        const Real rv = rv_min + step * Real(static_cast<long>(k));
        const Real lf = leverage_hsrai<Real>(tv, rv, cap, floor);
        if (k == 0) {
            table.push_back({tv, rv, Real(0), lf, Real(0)});
        } else {
            table.push_back({tv, rv, step, lf, lf - table.back().lf});
        }
    }
    return table;
}

/// Double-precision table over [rv_min, rv_max] inclusive; the row count is
/// round((rv_max − rv_min)/step) + 1 so 0.08..0.48 by 0.01 gives 41 rows.
inline SensitivityTable<double> lf_sensitivity_table(double tv, double rv_min, double rv_max,
                                                     double step, std::optional<double> cap = {},
                                                     double floor = 0.0) {
    if (!(rv_max >= rv_min)) throw InputError("lf_sensitivity_table: empty RV range");
    if (!(step > 0.0)) throw InputError("lf_sensitivity_table: step must be > 0");
    const auto rows = static_cast<std::size_t>(std::llround((rv_max - rv_min) / step)) + 1;
    return lf_sensitivity_table<double>(tv, rv_min, step, rows, cap, floor);
}

}  // namespace riskindexlab
