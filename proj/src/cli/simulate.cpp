#include "subpot/cli/simulate.hpp"

#include <cmath>
#include <limits>

#include "subpot/cli/table.hpp"
#include "subpot/cli/thresholds.hpp"
#include "subpot/errors.hpp"

namespace subpot::cli {

namespace {

Json estimate_json(const montecarlo::Estimate& e)
{
    return {{"value", e.value}, {"std_error", e.std_error}, {"n_samples", e.n_samples}};
}

double z_score(const montecarlo::Estimate& e, double target)
{
    const double gap = e.value - target;
    if (e.std_error > 0.0) {
        return gap / e.std_error;
    }
    return gap == 0.0 ? 0.0 : std::copysign(std::numeric_limits<double>::infinity(), gap);
}

}  // namespace

std::optional<Estimator> parse_estimator(const std::string& name)
{
    if (name == "potential-measure") {
        return Estimator::PotentialMeasure;
    }
    if (name == "green-function") {
        return Estimator::GreenFunction;
    }
    if (name == "endpoint-laplace") {
        return Estimator::EndpointLaplace;
    }
    return std::nullopt;
}

std::string estimator_name(Estimator e)
{
    switch (e) {
    case Estimator::PotentialMeasure:
        return "potential-measure";
    case Estimator::GreenFunction:
        return "green-function";
    case Estimator::EndpointLaplace:
        return "endpoint-laplace";
    }
    return "unknown";
}

SimulationOutcome run_simulation(const SimulationRequest& req)
{
    const montecarlo::RngState rng{req.seed, 0};
    Json report;
    report["tool_version"] = kToolVersion;
    report["estimator"] = estimator_name(req.estimator);
    report["model"] = model_to_json(req.model);
    report["paths"] = {{"dt", req.paths.dt()},
                       {"horizon", req.paths.horizon()},
                       {"n_paths", req.paths.n_paths()},
                       {"n_steps", req.paths.n_steps()},
                       {"seed", req.seed}};

    montecarlo::Estimate estimate;
    double target = 0.0;
    double censored = 0.0;
    switch (req.estimator) {
    case Estimator::PotentialMeasure: {
        report["inputs"] = {{"a", req.a}, {"b", req.b}};
        const auto res = montecarlo::estimate_potential_measure_censored(req.model, req.a, req.b,
                                                                          req.paths, rng);
        estimate = res.estimate;
        censored = res.censored_fraction;
        target = potential_measure(req.model, req.a, req.b);
        break;
    }
    case Estimator::GreenFunction: {
        if (!req.dimension) {
            throw ParameterError("simulate", "green-function needs a dimension");
        }
        const SubordinatedProcessSpec spec{req.model, *req.dimension};
        report["model"]["dimension"] = *req.dimension;
        report["inputs"] = {{"r", req.r}, {"ball_radius", req.ball_radius}};
        const auto res = montecarlo::estimate_green_function(spec, req.r, req.ball_radius, req.paths, rng);
        estimate = res.estimate;
        const double ball_average = green_function_ball_average(spec, req.r, req.ball_radius);
        target = ball_average - res.truncation_bias;
        report["ball_average"] = ball_average;
        report["truncation_bias"] = res.truncation_bias;
        break;
    }
    case Estimator::EndpointLaplace: {
        report["inputs"] = {{"s", req.s}};
        if (!(req.s >= 0.0)) {
            throw ParameterError("simulate", "s must be non-negative");
        }
        const auto steps = req.paths.n_steps();
        const double dt = req.paths.dt();
        estimate = montecarlo::estimate_mean(req.paths.n_paths(), rng, [&](montecarlo::RandomStream& rs) {
            double level = 0.0;
            for (std::uint64_t k = 0; k < steps; ++k) {
                level += montecarlo::sample_increment(req.model, dt, rs);
            }
            return std::exp(-req.s * level);
        });
        target = std::exp(-static_cast<double>(steps) * dt * laplace_exponent(req.model, req.s));
        break;
    }
    }

    SimulationOutcome out;
    out.z_score = z_score(estimate, target);
    out.pass = std::abs(out.z_score) <= 3.0;
    report["estimate"] = estimate_json(estimate);
    report["target"] = target;
    report["z_score"] = out.z_score;
    report["censored_fraction"] = censored;
    report["biased_low"] = censored > 0.0;
    report["pass"] = out.pass;
    out.report = std::move(report);
    return out;
}

}  // namespace subpot::cli
