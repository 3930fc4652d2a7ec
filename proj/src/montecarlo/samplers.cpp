#include <cmath>
#include <numbers>

#include "subpot/errors.hpp"
#include "subpot/montecarlo.hpp"

namespace subpot::montecarlo {

namespace {

constexpr double kAcceptanceGuard = 20.0;

void require_time(const char* op, double t)
{
    if (!(t > 0.0) || !std::isfinite(t)) {
        throw DomainError(op, "t must be positive and finite");
    }
}

}  // namespace

PathConfig::PathConfig(double dt, double horizon, std::uint64_t n_paths)
    : dt_(dt), horizon_(horizon), n_paths_(n_paths), n_steps_(0)
{
    if (!(dt > 0.0) || !std::isfinite(horizon) || !(dt <= horizon)) {
        throw ParameterError("PathConfig", "require 0 < dt <= horizon < inf");
    }
    if (n_paths < 1) {
        throw ParameterError("PathConfig", "n_paths must be at least 1");
    }
    n_steps_ = static_cast<std::uint64_t>(std::llround(horizon / dt));
}

double sample_stable_increment(double alpha, double t, RandomStream& rng)
{
    constexpr const char* op = "sample_stable_increment";
    if (!(alpha > 0.0 && alpha < 1.0)) {
        throw ParameterError(op, "alpha must lie in (0, 1)");
    }
    require_time(op, t);
    const double u = std::numbers::pi * rng.uniform();
    const double e = rng.exponential();
    const double inv = 1.0 / alpha;
    const double log_x = inv * std::log(t) + std::log(std::sin(alpha * u)) -
                         inv * std::log(std::sin(u)) +
                         (1.0 - alpha) * inv * (std::log(std::sin((1.0 - alpha) * u)) - std::log(e));
    return std::exp(log_x);
}

double sample_tss_increment(const TemperedStableParams& params, double t, RandomStream& rng)
{
    constexpr const char* op = "sample_tss_increment";
    require_time(op, t);
    const double alpha = params.alpha();
    const double theta = params.theta();
    if (std::pow(theta, alpha) * t > kAcceptanceGuard) {
        throw EfficiencyError(op, "theta^alpha * t exceeds 20; reduce the time step");
    }
    for (;;) {
        const double x = sample_stable_increment(alpha, t, rng);
        if (rng.uniform() <= std::exp(-theta * x)) {
            return x;
        }
    }
}

double sample_ig_increment(const InverseGaussianParams& params, double t, RandomStream& rng)
{
    require_time("sample_ig_increment", t);
    const double mu = params.delta() * t / params.lam();
    const double shape = params.delta() * t * params.delta() * t;
    const double n = rng.normal();
    const double q = mu * n * n / (2.0 * shape);
    // Smaller root of the quadratic, written without cancellation.
    const double x = mu / (1.0 + q + std::sqrt(q * (q + 2.0)));
    if (rng.uniform() <= mu / (mu + x)) {
        return x;
    }
    return mu * mu / x;
}

double sample_increment(const SubordinatorModel& model, double t, RandomStream& rng)
{
    if (model.is_tempered_stable()) {
        return sample_tss_increment(model.tempered_stable(), t, rng);
    }
    return sample_ig_increment(model.inverse_gaussian(), t, rng);
}

std::vector<PathPoint> simulate_path(const SubordinatorModel& model, const PathConfig& config,
                                     RandomStream& rng)
{
    std::vector<PathPoint> path;
    path.reserve(config.n_steps() + 1);
    path.push_back({0.0, 0.0});
    double level = 0.0;
    for (std::uint64_t k = 1; k <= config.n_steps(); ++k) {
        level += sample_increment(model, config.dt(), rng);
        path.push_back({static_cast<double>(k) * config.dt(), level});
    }
    return path;
}

std::vector<BmPoint> sample_subordinated_bm(const SubordinatedProcessSpec& spec,
                                            const PathConfig& config, RandomStream& rng)
{
    const auto d = static_cast<std::size_t>(spec.dimension());
    std::vector<BmPoint> path;
    path.reserve(config.n_steps() + 1);
    std::vector<double> x(d, 0.0);
    path.push_back({0.0, x});
    for (std::uint64_t k = 1; k <= config.n_steps(); ++k) {
        const double ds = sample_increment(spec.model(), config.dt(), rng);
        const double sd = std::sqrt(2.0 * ds);
        for (auto& c : x) {
            c += sd * rng.normal();
        }
        path.push_back({static_cast<double>(k) * config.dt(), x});
    }
    return path;
}

}  // namespace subpot::montecarlo
