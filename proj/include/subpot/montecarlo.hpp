#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "subpot/heatkernel.hpp"
#include "subpot/random.hpp"
#include "subpot/subordinators.hpp"

namespace subpot::montecarlo {

/// Time grid and sample size of a path simulation.
class PathConfig {
public:
    /// Throws ParameterError unless 0 < dt <= horizon and n_paths >= 1.
    PathConfig(double dt, double horizon, std::uint64_t n_paths);

    double dt() const noexcept { return dt_; }
    double horizon() const noexcept { return horizon_; }
    std::uint64_t n_paths() const noexcept { return n_paths_; }
    /// round(horizon / dt).
    std::uint64_t n_steps() const noexcept { return n_steps_; }

private:
    double dt_;
    double horizon_;
    std::uint64_t n_paths_;
    std::uint64_t n_steps_;
};

struct Estimate {
    double value = 0.0;
    double std_error = 0.0;
    std::uint64_t n_samples = 0;
};

struct PathPoint {
    double time;
    double level;
};

struct BmPoint {
    double time;
    std::vector<double> position;
};

/// One-sided alpha-stable variate with E[e^{-sX}] = e^{-t s^alpha}
/// (Kanter's representation).
double sample_stable_increment(double alpha, double t, RandomStream& rng);

/// Tempered stable increment over time t, by rejection from the stable
/// proposal with acceptance e^{-theta X}. Throws EfficiencyError when
/// theta^alpha t > 20.
double sample_tss_increment(const TemperedStableParams& params, double t, RandomStream& rng);

/// IG(delta t, lam) variate (Michael, Schucany and Haas 1976).
double sample_ig_increment(const InverseGaussianParams& params, double t, RandomStream& rng);

/// Increment of `model` over a step of length t.
double sample_increment(const SubordinatorModel& model, double t, RandomStream& rng);

/// Levels at t = 0, dt, ..., n_steps dt.
std::vector<PathPoint> simulate_path(const SubordinatorModel& model, const PathConfig& config,
                                     RandomStream& rng);

/// X(t_k) = B(S(t_k)): each step adds a Gaussian displacement with variance
/// 2 dS per coordinate.
std::vector<BmPoint> sample_subordinated_bm(const SubordinatedProcessSpec& spec,
                                            const PathConfig& config, RandomStream& rng);

// Estimators below use one stream per path, stream_id = rng.stream_id + path
// index, and reduce per-path values in index order. Results are therefore
// bit-identical for a given (seed, stream_id, config) whatever the number of
// worker threads.

struct CensoredEstimate {
    Estimate estimate;
    /// Fraction of paths that had not passed b by the horizon. Such paths
    /// contribute horizon - T_a, so the estimate is biased low when > 0.
    double censored_fraction = 0.0;
};

/// U([a, b]) as the mean of T_b - T_a, T_c the first grid time with S >= c.
/// Throws TruncationError (carrying the censored fraction) if any path is
/// still below b at the horizon.
Estimate estimate_potential_measure(const SubordinatorModel& model, double a, double b,
                                    const PathConfig& config, RngState rng);

/// As estimate_potential_measure but reports censoring instead of throwing.
CensoredEstimate estimate_potential_measure_censored(const SubordinatorModel& model, double a,
                                                     double b, const PathConfig& config,
                                                     RngState rng);

struct GreenEstimate {
    /// Occupation time of the ball up to the horizon, divided by its volume.
    Estimate estimate;
    /// Expected occupation density beyond the horizon,
    /// (4 pi m)^{-d/2} H^{1-d/2} / (d/2 - 1) with m the mean rate; the
    /// estimate is low by about this amount.
    double truncation_bias = 0.0;
};

/// Ball-average of G around (r, 0, ..., 0). Throws DimensionError for d < 3
/// and GeometryError unless 0 < ball_radius < r.
GreenEstimate estimate_green_function(const SubordinatedProcessSpec& spec, double r,
                                      double ball_radius, const PathConfig& config, RngState rng);

/// Mean of n_samples draws of f. Draws are taken in blocks of 4096, block k on
/// stream rng.stream_id + k.
Estimate estimate_mean(std::uint64_t n_samples, RngState rng,
                       const std::function<double(RandomStream&)>& f);

}  // namespace subpot::montecarlo
