#pragma once

// JSON views of solver results. Non-finite numbers are written as the
// strings "inf", "-inf" and "nan"; maps keyed by exponents use the shortest
// round-trip decimal of the key.

#include <map>
#include <vector>

#include <json.hpp>

#include "hjlab/estimate.hpp"
#include "hjlab/fp_solver.hpp"
#include "hjlab/hj_solver.hpp"
#include "hjlab/mfg_solver.hpp"
#include "hjlab/thresholds.hpp"

namespace hjlab {

using Json = nlohmann::ordered_json;

Json number_json(double v);
Json map_json(const std::map<double, double>& m);

Json to_json(const HJSolution& sol);
Json to_json(const EstimateReport& report);
Json to_json(const SearchResult& result);
Json to_json(const FPSolution& sol);
Json to_json(const BootstrapReport& report);
Json to_json(const MFGSolution& sol);
Json to_json(const AlphaSweepRow& row);
Json to_json(const ThresholdVerdict& verdict);

}  // namespace hjlab
