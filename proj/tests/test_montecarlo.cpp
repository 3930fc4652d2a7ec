#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <vector>

#include "subpot/errors.hpp"
#include "subpot/montecarlo.hpp"

using namespace subpot;
using namespace subpot::montecarlo;

namespace {

const TemperedStableParams kTssParams(0.5, 1.0);
const InverseGaussianParams kIgParams(1.0, 1.0);
const SubordinatorModel kTss{kTssParams};
const SubordinatorModel kIg{kIgParams};

bool within(const Estimate& e, double target, double k = 3.0)
{
    return std::abs(e.value - target) <= k * e.std_error;
}

// Two-sample Kolmogorov-Smirnov statistic.
double ks_statistic(std::vector<double> a, std::vector<double> b)
{
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    std::size_t i = 0, j = 0;
    double d = 0.0;
    while (i < a.size() && j < b.size()) {
        const double x = std::min(a[i], b[j]);
        while (i < a.size() && a[i] <= x) {
            ++i;
        }
        while (j < b.size() && b[j] <= x) {
            ++j;
        }
        d = std::max(d, std::abs(static_cast<double>(i) / a.size() - static_cast<double>(j) / b.size()));
    }
    return d;
}

// 1% critical value of the two-sample KS statistic for equal sizes n.
double ks_critical(std::size_t n)
{
    return 1.628 * std::sqrt(2.0 / static_cast<double>(n));
}

template <class Draw>
std::vector<double> draws(std::size_t n, RngState state, Draw draw)
{
    RandomStream rs(state);
    std::vector<double> out(n);
    for (auto& x : out) {
        x = draw(rs);
    }
    return out;
}

}  // namespace

TEST_CASE("Philox4x32-10 known-answer vectors")
{
    using C = Philox4x32::Counter;
    CHECK(Philox4x32::block({0, 0, 0, 0}, {0, 0}) == C{0x6627e8d5, 0xe169c58d, 0xbc57ac4c, 0x9b00dbd8});
    CHECK(Philox4x32::block({0xffffffff, 0xffffffff, 0xffffffff, 0xffffffff}, {0xffffffff, 0xffffffff}) ==
          C{0x408f276d, 0x41c83b0e, 0xa20bc7c6, 0x6d5451fd});
    CHECK(Philox4x32::block({0x243f6a88, 0x85a308d3, 0x13198a2e, 0x03707344}, {0xa4093822, 0x299f31d0}) ==
          C{0xd16cfe09, 0x94fdcceb, 0x5001e420, 0x24126ea1});
}

TEST_CASE("streams are reproducible and distinct")
{
    Philox4x32 a({7, 3}), b({7, 3}), c({7, 4}), d({8, 3});
    int same_c = 0, same_d = 0;
    for (int i = 0; i < 1000; ++i) {
        const auto x = a();
        CHECK(x == b());
        same_c += x == c();
        same_d += x == d();
    }
    CHECK(same_c < 3);
    CHECK(same_d < 3);
    RandomStream rs({1, 0});
    double sum = 0.0;
    for (int i = 0; i < 100000; ++i) {
        const double u = rs.uniform();
        REQUIRE(u > 0.0);
        REQUIRE(u < 1.0);
        sum += u;
    }
    CHECK(std::abs(sum / 100000 - 0.5) < 3.0 * std::sqrt(1.0 / 12.0 / 100000));
}

TEST_CASE("PathConfig validation")
{
    CHECK_THROWS_AS(PathConfig(0.0, 1.0, 1), ParameterError);
    CHECK_THROWS_AS(PathConfig(2.0, 1.0, 1), ParameterError);
    CHECK_THROWS_AS(PathConfig(0.1, 1.0, 0), ParameterError);
    CHECK(PathConfig(0.1, 1.0, 1).n_steps() == 10);
    CHECK(PathConfig(1e-3, 50.0, 1).n_steps() == 50000);
}

TEST_CASE("stable sampler Laplace transform")
{
    const auto e1 = estimate_mean(1000000, {11, 0}, [](RandomStream& rs) {
        return std::exp(-sample_stable_increment(0.5, 1.0, rs));
    });
    CHECK(within(e1, std::exp(-1.0)));
    const auto e2 = estimate_mean(1000000, {12, 0}, [](RandomStream& rs) {
        return std::exp(-4.0 * sample_stable_increment(0.5, 2.0, rs));
    });
    CHECK(within(e2, std::exp(-4.0)));
    const auto e3 = estimate_mean(200000, {13, 0}, [](RandomStream& rs) {
        return std::exp(-2.0 * sample_stable_increment(0.8, 0.5, rs));
    });
    CHECK(within(e3, std::exp(-0.5 * std::pow(2.0, 0.8))));
    RandomStream rs({1, 1});
    CHECK_THROWS_AS(sample_stable_increment(1.0, 1.0, rs), ParameterError);
    CHECK_THROWS_AS(sample_stable_increment(0.5, 0.0, rs), DomainError);
}

TEST_CASE("stable sampler self-similarity")
{
    const std::size_t n = 100000;
    const auto at_t = draws(n, {21, 0}, [](RandomStream& rs) { return sample_stable_increment(0.6, 3.0, rs); });
    const double scale = std::pow(3.0, 1.0 / 0.6);
    const auto scaled = draws(n, {21, 1}, [&](RandomStream& rs) { return scale * sample_stable_increment(0.6, 1.0, rs); });
    CHECK(ks_statistic(at_t, scaled) < ks_critical(n));
}

TEST_CASE("tempered stable sampler")
{
    const auto lt = estimate_mean(1000000, {31, 0}, [](RandomStream& rs) {
        return std::exp(-sample_tss_increment(kTssParams, 0.1, rs));
    });
    CHECK(within(lt, std::exp(-0.1 * (std::numbers::sqrt2 - 1.0))));
    const auto mean = estimate_mean(200000, {32, 0}, [](RandomStream& rs) {
        return sample_tss_increment(kTssParams, 1.0, rs);
    });
    CHECK(within(mean, 0.5));

    const std::size_t n = 100000;
    const TemperedStableParams untempered(0.5, 1e-12);
    const auto a = draws(n, {33, 0}, [&](RandomStream& rs) { return sample_tss_increment(untempered, 1.0, rs); });
    const auto b = draws(n, {33, 1}, [](RandomStream& rs) { return sample_stable_increment(0.5, 1.0, rs); });
    CHECK(ks_statistic(a, b) < ks_critical(n));

    RandomStream rs({1, 1});
    CHECK_THROWS_AS(sample_tss_increment(TemperedStableParams(0.5, 1000.0), 1.0, rs), EfficiencyError);
    CHECK_NOTHROW(sample_tss_increment(TemperedStableParams(0.5, 400.0), 1.0, rs));
}

TEST_CASE("inverse Gaussian sampler")
{
    const auto mean = estimate_mean(1000000, {41, 0}, [](RandomStream& rs) {
        return sample_ig_increment(kIgParams, 1.0, rs);
    });
    CHECK(within(mean, 1.0));
    const auto lt = estimate_mean(1000000, {42, 0}, [](RandomStream& rs) {
        return std::exp(-sample_ig_increment(kIgParams, 1.0, rs));
    });
    CHECK(within(lt, std::exp(-(std::sqrt(3.0) - 1.0))));
    const auto small = estimate_mean(200000, {43, 0}, [](RandomStream& rs) {
        return sample_ig_increment(InverseGaussianParams(2.0, 0.5), 1e-3, rs);
    });
    CHECK(within(small, 4e-3));
}

TEST_CASE("inverse Gaussian histogram against ig_pdf")
{
    const std::size_t n = 100000;
    const auto x = draws(n, {44, 0}, [](RandomStream& rs) { return sample_ig_increment(kIgParams, 1.0, rs); });
    // 49 bins of width 0.1 on [0, 4.9] plus one tail bin: 49 degrees of freedom.
    std::vector<double> counts(50, 0.0);
    for (double v : x) {
        counts[std::min<std::size_t>(static_cast<std::size_t>(v / 0.1), 49)] += 1.0;
    }
    const numerics::Integrand pdf = [](double v) { return ig_pdf(kIgParams, v, 1.0); };
    double chi2 = 0.0;
    double mass = 0.0;
    for (int k = 0; k < 49; ++k) {
        const double p = numerics::integrate(pdf, 0.1 * k + (k == 0 ? 1e-300 : 0.0), 0.1 * (k + 1), {}).value;
        mass += p;
        chi2 += std::pow(counts[k] - n * p, 2.0) / (n * p);
    }
    const double tail = 1.0 - mass;
    chi2 += std::pow(counts[49] - n * tail, 2.0) / (n * tail);
    // scipy.stats.chi2.ppf(0.99, 49)
    CHECK(chi2 < 74.91947430847816);
}

TEST_CASE("simulate_path")
{
    const PathConfig cfg(0.01, 5.0, 1);
    for (const auto& m : {kTss, kIg}) {
        RandomStream rs({51, 0});
        const auto path = simulate_path(m, cfg, rs);
        REQUIRE(path.size() == 501);
        CHECK(path.front().level == 0.0);
        CHECK(path.back().time == doctest::Approx(5.0));
        for (std::size_t k = 1; k < path.size(); ++k) {
            REQUIRE(path[k].level >= path[k - 1].level);
        }
    }
    // Endpoint law and lag-1 increment correlation.
    const PathConfig short_cfg(0.1, 1.0, 1);
    const auto endpoint = estimate_mean(100000, {52, 0}, [&](RandomStream& rs) {
        return std::exp(-simulate_path(kIg, short_cfg, rs).back().level);
    });
    CHECK(within(endpoint, std::exp(-(std::sqrt(3.0) - 1.0))));

    RandomStream rs({53, 0});
    const auto path = simulate_path(kTss, PathConfig(0.1, 2000.0, 1), rs);
    std::vector<double> inc;
    for (std::size_t k = 1; k < path.size(); ++k) {
        inc.push_back(path[k].level - path[k - 1].level);
    }
    double mean = 0.0;
    for (double v : inc) {
        mean += v;
    }
    mean /= inc.size();
    double num = 0.0, den = 0.0;
    for (std::size_t k = 0; k < inc.size(); ++k) {
        den += (inc[k] - mean) * (inc[k] - mean);
        if (k + 1 < inc.size()) {
            num += (inc[k] - mean) * (inc[k + 1] - mean);
        }
    }
    CHECK(std::abs(num / den) < 3.0 / std::sqrt(static_cast<double>(inc.size())));
}

TEST_CASE("estimate_potential_measure")
{
    const PathConfig cfg(1e-3, 50.0, 10000);
    const auto e = estimate_potential_measure(kIg, 1.0, 2.0, cfg, {61, 0});
    CHECK(within(e, potential_measure(kIg, 1.0, 2.0)));
    CHECK(e.n_samples == 10000);

    // Shared streams make the passage-time split exact path by path.
    const PathConfig small(1e-2, 50.0, 2000);
    const auto a = estimate_potential_measure(kIg, 0.0, 1.0, small, {62, 0});
    const auto b = estimate_potential_measure(kIg, 1.0, 2.0, small, {62, 0});
    const auto ab = estimate_potential_measure(kIg, 0.0, 2.0, small, {62, 0});
    CHECK(a.value + b.value == doctest::Approx(ab.value).epsilon(1e-12));

    const auto again = estimate_potential_measure(kIg, 1.0, 2.0, small, {62, 0});
    CHECK(again.value == b.value);
    CHECK(again.std_error == b.std_error);
}

TEST_CASE("estimate_potential_measure far from the origin")
{
    const PathConfig cfg(1e-2, 100.0, 2000);
    const auto e = estimate_potential_measure(kTss, 10.0, 12.0, cfg, {63, 0});
    const double per_unit = e.value / 2.0;
    CHECK(std::abs(per_unit - 2.0) <= 3.0 * e.std_error / 2.0 + 0.04);
}

TEST_CASE("estimate_potential_measure censoring")
{
    const PathConfig cfg(1e-2, 1.0, 500);
    try {
        estimate_potential_measure(kIg, 1.0, 2.0, cfg, {64, 0});
        FAIL("expected TruncationError");
    } catch (const TruncationError& e) {
        CHECK(e.censored_fraction() > 0.5);
        CHECK(e.censored_fraction() <= 1.0);
    }
    const auto res = estimate_potential_measure_censored(kIg, 1.0, 2.0, cfg, {64, 0});
    CHECK(res.censored_fraction > 0.5);
    CHECK(res.estimate.value < potential_measure(kIg, 1.0, 2.0));
    CHECK_THROWS_AS(estimate_potential_measure(kIg, 2.0, 1.0, cfg, {64, 0}), DomainError);
}

TEST_CASE("discretisation consistency")
{
    const auto coarse = estimate_potential_measure(kIg, 1.0, 2.0, PathConfig(2e-3, 50.0, 4000), {65, 0});
    const auto fine = estimate_potential_measure(kIg, 1.0, 2.0, PathConfig(1e-3, 50.0, 4000), {66, 0});
    CHECK(std::abs(coarse.value - fine.value) <= 3.0 * std::hypot(coarse.std_error, fine.std_error));
}

TEST_CASE("std_error shrinks as 1/sqrt(n)")
{
    double ratio = 0.0;
    for (std::uint64_t rep = 0; rep < 5; ++rep) {
        auto f = [](RandomStream& rs) { return std::exp(-sample_ig_increment(kIgParams, 1.0, rs)); };
        const auto e1 = estimate_mean(20000, {70 + rep, 0}, f);
        const auto e2 = estimate_mean(40000, {80 + rep, 0}, f);
        ratio += e2.std_error / e1.std_error;
    }
    CHECK(std::abs(ratio / 5.0 - 1.0 / std::numbers::sqrt2) < 0.1 / std::numbers::sqrt2);
}

TEST_CASE("subordinated Brownian motion moments")
{
    const SubordinatedProcessSpec spec1{kTss, 1};
    const PathConfig one_step(0.1, 0.1, 1);
    const auto var = estimate_mean(1000000, {91, 0}, [&](RandomStream& rs) {
        const auto path = sample_subordinated_bm(spec1, one_step, rs);
        return path.back().position[0] * path.back().position[0];
    });
    CHECK(within(var, 2.0 * 0.1 * 0.5));

    const PathConfig cfg(0.1, 1.0, 1);
    const auto cf = estimate_mean(1000000, {92, 0}, [&](RandomStream& rs) {
        return std::cos(sample_subordinated_bm(spec1, cfg, rs).back().position[0]);
    });
    CHECK(within(cf, std::exp(-laplace_exponent(kTss, 1.0))));

    const SubordinatedProcessSpec spec3{kIg, 3};
    for (auto [i, j] : {std::pair{0, 1}, std::pair{0, 2}, std::pair{1, 2}}) {
        const auto cov = estimate_mean(200000, {93, static_cast<std::uint64_t>(10 * i + j)}, [&](RandomStream& rs) {
            const auto x = sample_subordinated_bm(spec3, cfg, rs).back().position;
            return x[i] * x[j];
        });
        CHECK(within(cov, 0.0));
    }
}

TEST_CASE("estimate_green_function")
{
    const PathConfig cfg(1e-2, 50.0, 4000);
    const SubordinatedProcessSpec spec{kTss, 3};
    const auto g = estimate_green_function(spec, 1.0, 0.1, cfg, {101, 0});
    const double target = green_function_ball_average(spec, 1.0, 0.1) - g.truncation_bias;
    CHECK(std::abs(g.estimate.value - target) <= std::max(3.0 * g.estimate.std_error, 0.1 * target));
    CHECK(g.truncation_bias == doctest::Approx(2.0 * std::pow(4.0 * std::numbers::pi * 0.5, -1.5) / std::sqrt(50.0)));

    const auto wide = estimate_green_function(spec, 1.0, 0.2, cfg, {102, 0});
    CHECK(std::abs(wide.estimate.value - g.estimate.value) <=
          3.0 * std::hypot(wide.estimate.std_error, g.estimate.std_error) + 0.05 * g.estimate.value);

    // NIG(1, 1) is NTS(1/2, 1/2) under the equivalence map.
    const SubordinatedProcessSpec nig{kIg, 3};
    const SubordinatedProcessSpec twin{SubordinatorModel{TemperedStableParams(0.5, 0.5)}, 3};
    const auto a = estimate_green_function(nig, 1.0, 0.2, cfg, {103, 0});
    const auto b = estimate_green_function(twin, 1.0, 0.2, cfg, {104, 0});
    CHECK(std::abs(a.estimate.value - b.estimate.value) <= 3.0 * std::hypot(a.estimate.std_error, b.estimate.std_error));

    CHECK_THROWS_AS(estimate_green_function({kTss, 2}, 1.0, 0.1, cfg, {1, 0}), DimensionError);
    CHECK_THROWS_AS(estimate_green_function(spec, 1.0, 1.5, cfg, {1, 0}), GeometryError);
}

TEST_CASE("estimates are bit-identical across runs")
{
    const PathConfig cfg(1e-2, 20.0, 300);
    const SubordinatedProcessSpec spec{kIg, 3};
    const auto a = estimate_green_function(spec, 1.0, 0.2, cfg, {5, 9});
    const auto b = estimate_green_function(spec, 1.0, 0.2, cfg, {5, 9});
    CHECK(a.estimate.value == b.estimate.value);
    CHECK(a.estimate.std_error == b.estimate.std_error);
    const auto c = estimate_green_function(spec, 1.0, 0.2, cfg, {6, 9});
    CHECK(c.estimate.value != a.estimate.value);
}
