#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "subpot/cli/json.hpp"
#include "subpot/montecarlo.hpp"

namespace subpot::cli {

enum class Estimator { PotentialMeasure, GreenFunction, EndpointLaplace };

std::optional<Estimator> parse_estimator(const std::string& name);
std::string estimator_name(Estimator e);

struct SimulationRequest {
    Estimator estimator = Estimator::PotentialMeasure;
    SubordinatorModel model{InverseGaussianParams(1.0, 1.0)};
    std::optional<int> dimension;
    double a = 1.0;            // potential-measure interval
    double b = 2.0;
    double r = 1.0;            // green-function point distance
    double ball_radius = 0.1;
    double s = 1.0;            // endpoint-laplace argument
    montecarlo::PathConfig paths{1e-3, 50.0, 1000};
    std::uint64_t seed = 0;
};

struct SimulationOutcome {
    Json report;
    double z_score = 0.0;
    bool pass = false;   // |z| <= 3
};

/// Runs the estimator and compares it with its quadrature target.
/// EfficiencyError and other library errors propagate.
SimulationOutcome run_simulation(const SimulationRequest& request);

}  // namespace subpot::cli
