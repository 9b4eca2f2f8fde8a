#pragma once

#include "riskindexlab/config.hpp"
#include "riskindexlab/csv.hpp"
#include "riskindexlab/date.hpp"
#include "riskindexlab/diagnostics/bias.hpp"
#include "riskindexlab/diagnostics/compound.hpp"
#include "riskindexlab/diagnostics/leakage.hpp"
#include "riskindexlab/diagnostics/sensitivity.hpp"
#include "riskindexlab/diagnostics/sharpe.hpp"
#include "riskindexlab/diagnostics/variance_decomposition.hpp"
#include "riskindexlab/engines/djrri.hpp"
#include "riskindexlab/engines/hsrai.hpp"
#include "riskindexlab/engines/leverage.hpp"
#include "riskindexlab/engines/portfolio.hpp"
#include "riskindexlab/engines/sprci.hpp"
#include "riskindexlab/engines/stablerisk.hpp"
#include "riskindexlab/errors.hpp"
#include "riskindexlab/moments.hpp"
#include "riskindexlab/random.hpp"
#include "riskindexlab/series.hpp"
