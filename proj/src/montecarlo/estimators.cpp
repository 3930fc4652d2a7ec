#include <algorithm>
#include <cmath>
#include <exception>
#include <numbers>
#include <thread>

#include "subpot/errors.hpp"
#include "subpot/montecarlo.hpp"

namespace subpot::montecarlo {

namespace {

constexpr std::uint64_t kBlockSize = 4096;

// Running mean and sum of squared deviations; merge() is Chan's update.
struct Accumulator {
    std::uint64_t n = 0;
    double mean = 0.0;
    double m2 = 0.0;

    void add(double x)
    {
        ++n;
        const double delta = x - mean;
        mean += delta / static_cast<double>(n);
        m2 += delta * (x - mean);
    }

    void merge(const Accumulator& o)
    {
        if (o.n == 0) {
            return;
        }
        const double total = static_cast<double>(n + o.n);
        const double delta = o.mean - mean;
        mean += delta * static_cast<double>(o.n) / total;
        m2 += o.m2 + delta * delta * static_cast<double>(n) * static_cast<double>(o.n) / total;
        n += o.n;
    }

    Estimate estimate() const
    {
        const double var = n > 1 ? m2 / static_cast<double>(n - 1) : 0.0;
        return {mean, std::sqrt(var / static_cast<double>(n)), n};
    }
};

// Runs body(i) for i in [0, n) on contiguous chunks, one per hardware
// thread. The first exception thrown by any worker is rethrown.
template <class Body>
void parallel_for(std::uint64_t n, const Body& body)
{
    const std::uint64_t workers =
        std::clamp<std::uint64_t>(std::thread::hardware_concurrency(), 1, std::max<std::uint64_t>(n, 1));
    if (workers == 1) {
        for (std::uint64_t i = 0; i < n; ++i) {
            body(i);
        }
        return;
    }
    std::vector<std::exception_ptr> errors(workers);
    std::vector<std::thread> threads;
    threads.reserve(workers);
    for (std::uint64_t w = 0; w < workers; ++w) {
        threads.emplace_back([&, w] {
            const std::uint64_t lo = n * w / workers;
            const std::uint64_t hi = n * (w + 1) / workers;
            try {
                for (std::uint64_t i = lo; i < hi; ++i) {
                    body(i);
                }
            } catch (...) {
                errors[w] = std::current_exception();
            }
        });
    }
    for (auto& t : threads) {
        t.join();
    }
    for (auto& e : errors) {
        if (e) {
            std::rethrow_exception(e);
        }
    }
}

RngState stream(RngState base, std::uint64_t index)
{
    return {base.seed, base.stream_id + index};
}

Estimate reduce_in_order(const std::vector<double>& values)
{
    Accumulator acc;
    for (double v : values) {
        acc.add(v);
    }
    return acc.estimate();
}

}  // namespace

Estimate estimate_mean(std::uint64_t n_samples, RngState rng,
                       const std::function<double(RandomStream&)>& f)
{
    if (n_samples < 1) {
        throw ParameterError("estimate_mean", "n_samples must be at least 1");
    }
    const std::uint64_t n_blocks = (n_samples + kBlockSize - 1) / kBlockSize;
    std::vector<Accumulator> blocks(n_blocks);
    parallel_for(n_blocks, [&](std::uint64_t b) {
        RandomStream rs(stream(rng, b));
        const std::uint64_t count = std::min(kBlockSize, n_samples - b * kBlockSize);
        for (std::uint64_t i = 0; i < count; ++i) {
            blocks[b].add(f(rs));
        }
    });
    Accumulator total;
    for (const auto& b : blocks) {
        total.merge(b);
    }
    return total.estimate();
}

CensoredEstimate estimate_potential_measure_censored(const SubordinatorModel& model, double a,
                                                     double b, const PathConfig& config,
                                                     RngState rng)
{
    if (!(a >= 0.0) || !(b > a) || !std::isfinite(b)) {
        throw DomainError("estimate_potential_measure", "require 0 <= a < b < inf");
    }
    const std::uint64_t n = config.n_paths();
    const double dt = config.dt();
    std::vector<double> occupation(n);
    std::vector<char> censored(n, 0);
    parallel_for(n, [&](std::uint64_t p) {
        RandomStream rs(stream(rng, p));
        double level = 0.0;
        double t_a = a == 0.0 ? 0.0 : -1.0;
        double t_b = -1.0;
        for (std::uint64_t k = 1; k <= config.n_steps(); ++k) {
            level += sample_increment(model, dt, rs);
            const double t = static_cast<double>(k) * dt;
            if (t_a < 0.0 && level >= a) {
                t_a = t;
            }
            if (level >= b) {
                t_b = t;
                break;
            }
        }
        if (t_b < 0.0) {
            censored[p] = 1;
            t_b = config.horizon();
            if (t_a < 0.0) {
                t_a = t_b;
            }
        }
        occupation[p] = t_b - t_a;
    });
    const auto n_censored = std::count(censored.begin(), censored.end(), 1);
    return {reduce_in_order(occupation), static_cast<double>(n_censored) / static_cast<double>(n)};
}

Estimate estimate_potential_measure(const SubordinatorModel& model, double a, double b,
                                    const PathConfig& config, RngState rng)
{
    const auto result = estimate_potential_measure_censored(model, a, b, config, rng);
    if (result.censored_fraction > 0.0) {
        throw TruncationError("estimate_potential_measure",
                              "paths still below b at the horizon; increase it",
                              result.censored_fraction);
    }
    return result.estimate;
}

GreenEstimate estimate_green_function(const SubordinatedProcessSpec& spec, double r,
                                      double ball_radius, const PathConfig& config, RngState rng)
{
    constexpr const char* op = "estimate_green_function";
    const int d = spec.dimension();
    if (d < 3) {
        throw DimensionError(op, "the Green function is finite only for d >= 3");
    }
    if (!(r > 0.0) || !std::isfinite(r)) {
        throw DomainError(op, "r must be positive and finite");
    }
    if (!(ball_radius > 0.0) || !(ball_radius < r)) {
        throw GeometryError(op, "need 0 < ball_radius < r");
    }
    const double dd = d;
    const double volume =
        std::pow(std::numbers::pi, 0.5 * dd) * std::pow(ball_radius, dd) / std::tgamma(0.5 * dd + 1.0);
    const double eps2 = ball_radius * ball_radius;
    const double dt = config.dt();

    std::vector<double> density(config.n_paths());
    parallel_for(config.n_paths(), [&](std::uint64_t p) {
        RandomStream rs(stream(rng, p));
        std::vector<double> x(static_cast<std::size_t>(d), 0.0);
        double time_inside = 0.0;
        for (std::uint64_t k = 1; k <= config.n_steps(); ++k) {
            const double sd = std::sqrt(2.0 * sample_increment(spec.model(), dt, rs));
            double dist2 = 0.0;
            for (std::size_t i = 0; i < x.size(); ++i) {
                x[i] += sd * rs.normal();
                const double off = i == 0 ? x[i] - r : x[i];
                dist2 += off * off;
            }
            if (dist2 <= eps2) {
                time_inside += dt;
            }
        }
        density[p] = time_inside / volume;
    });

    const double m = mean_rate(spec.model());
    const double bias = std::pow(4.0 * std::numbers::pi * m, -0.5 * dd) *
                        std::pow(config.horizon(), 1.0 - 0.5 * dd) / (0.5 * dd - 1.0);
    return {reduce_in_order(density), bias};
}

}  // namespace subpot::montecarlo
