#pragma once

#include <string_view>
#include <vector>

#include "subpot/cli/json.hpp"
#include "subpot/subordinators.hpp"

namespace subpot::cli {

/// Where u_exact / u_asym settles inside the calibration band: for every
/// scanned x <= x_lo the NearZero ratio is in band, and for every scanned
/// x >= x_hi the NearInfinity ratio is.
struct AsymptoticThreshold {
    SubordinatorModel model;
    double x_lo;
    double x_hi;
};

struct ThresholdTable {
    double band_lo = 0.995;
    double band_hi = 1.005;
    double scan_min = 1e-14;
    double scan_max = 1e4;
    int points_per_decade = 20;
    std::vector<AsymptoticThreshold> entries;
};

/// Scans a log grid of [table.scan_min, table.scan_max] for one model.
AsymptoticThreshold calibrate_threshold(const SubordinatorModel& model, const ThresholdTable& table);

/// The parameter sets that are calibrated: TSS alpha in {0.3, 0.5, 0.7} x
/// theta in {0.5, 1, 2}; IG (delta, lam) in {0.5, 1, 2}^2.
std::vector<SubordinatorModel> calibration_models();

Json model_to_json(const SubordinatorModel& model);
/// Throws ParameterError on a malformed descriptor.
SubordinatorModel model_from_json(const Json& j);

Json thresholds_to_json(const ThresholdTable& table);
ThresholdTable thresholds_from_json(const Json& j);

/// The table recorded in data/asymptotic_thresholds.json at build time.
const ThresholdTable& calibrated_thresholds();

}  // namespace subpot::cli
