#include <doctest.h>

#include <array>
#include <cmath>
#include <numbers>

#include "subpot/errors.hpp"
#include "subpot/heatkernel.hpp"

using namespace subpot;
using doctest::Approx;

namespace {

constexpr double kPi = std::numbers::pi;

double rel(double a, double b)
{
    return std::abs(a / b - 1.0);
}

SubordinatedProcessSpec nts(double alpha, double theta, int d)
{
    return {SubordinatorModel{TemperedStableParams(alpha, theta)}, d};
}

SubordinatedProcessSpec nig(double delta, double lam, int d)
{
    return {SubordinatorModel{InverseGaussianParams(delta, lam)}, d};
}

}  // namespace

TEST_CASE("heat_kernel values")
{
    const std::array<double, 1> origin{0.0};
    CHECK(heat_kernel(1, 1.0, origin) == Approx(1.0 / std::sqrt(4.0 * kPi)));
    const std::array<double, 3> x{0.0, 0.6, 0.8};
    CHECK(heat_kernel(3, 0.5, x) == Approx(std::pow(2.0 * kPi, -1.5) * std::exp(-0.5)));
    const std::array<double, 3> y{1.0, 0.0, 0.0};
    CHECK(heat_kernel(3, 0.5, x) == heat_kernel(3, 0.5, y));
    CHECK_THROWS_AS(heat_kernel(1, 0.0, origin), DomainError);
    CHECK_THROWS_AS(heat_kernel(2, 1.0, origin), DimensionError);
    CHECK_THROWS_AS(SubordinatedProcessSpec(SubordinatorModel{InverseGaussianParams(1, 1)}, 0), ParameterError);
}

TEST_CASE("heat_kernel integrates to one")
{
    for (int d : {1, 2, 3}) {
        for (double t : {0.1, 1.0, 10.0}) {
            const double area = 2.0 * std::pow(kPi, 0.5 * d) / std::tgamma(0.5 * d);
            const numerics::Integrand f = [&](double r) {
                return area * std::pow(r, d - 1.0) * heat_kernel_radial(d, t, r);
            };
            const double mass =
                numerics::integrate_semi_infinite(f, numerics::QuadratureConfig{}.with_tail_knot(2.0 * std::sqrt(t)))
                    .value;
            CHECK(std::abs(mass - 1.0) < 1e-10);
        }
    }
}

TEST_CASE("green_function against scipy quadrature of the IG closed form")
{
    // NTS(1/2, 1) coincides with NIG(1/sqrt 2, sqrt 2).
    const auto spec = nts(0.5, 1.0, 3);
    CHECK(rel(green_function(spec, 0.1), 5.961133330797279) < 1e-10);
    CHECK(rel(green_function(spec, 1.0), 0.1730167323240833) < 1e-10);
    CHECK(rel(green_function(spec, 10.0), 0.015915502585067732) < 1e-10);
    CHECK(rel(green_function(nig(1.0, 1.0, 3), 1.0), 0.09357379768435194) < 1e-10);
    CHECK(rel(green_function(nig(1.0, 1.0, 4), 2.0), 0.006876888763959214) < 1e-10);
}

TEST_CASE("green_function equivalence and monotonicity")
{
    for (double theta : {0.5, 1.0, 2.0}) {
        const SubordinatedProcessSpec a = nts(0.5, theta, 3);
        const SubordinatedProcessSpec b{SubordinatorModel{tss_ig_equivalent(theta)}, 3};
        for (double r : {0.1, 1.0, 10.0}) {
            CHECK(rel(green_function(a, r), green_function(b, r)) < 1e-6);
            CHECK(rel(jump_density(a, r), jump_density(b, r)) < 1e-6);
        }
    }
    const auto spec = nts(0.3, 2.0, 3);
    double prev = INFINITY;
    for (int i = 0; i <= 20; ++i) {
        const double g = green_function(spec, std::pow(10.0, -3.0 + 0.25 * i));
        CHECK(g < prev);
        prev = g;
    }
}

TEST_CASE("green_function errors")
{
    CHECK_THROWS_AS(green_function(nts(0.5, 1.0, 2), 1.0), DimensionError);
    CHECK_THROWS_AS(green_function(nts(0.5, 1.0, 3), 0.0), DomainError);
}

TEST_CASE("green_asymptotic closed forms")
{
    CHECK(green_asymptotic(nts(0.5, 1.0, 3), 10.0, AsymptoticRegime::NearInfinity) ==
          Approx(std::sqrt(kPi) / (2.0 * std::pow(kPi, 1.5) * 10.0)));
    CHECK(green_asymptotic(nig(1.0, 1.0, 3), 0.1, AsymptoticRegime::NearZero) ==
          Approx(1.0 / (std::pow(2.0, 1.5) * std::pow(kPi, 1.5)) / std::sqrt(kPi) * 100.0));
    for (double theta : {0.5, 2.0}) {
        const SubordinatedProcessSpec a = nts(0.5, theta, 3);
        const SubordinatedProcessSpec b{SubordinatorModel{tss_ig_equivalent(theta)}, 3};
        for (auto regime : {AsymptoticRegime::NearZero, AsymptoticRegime::NearInfinity}) {
            for (double r : {0.01, 3.0}) {
                CHECK(rel(green_asymptotic(a, r, regime), green_asymptotic(b, r, regime)) < 1e-13);
            }
        }
    }
    CHECK_THROWS_AS(green_asymptotic(nts(0.5, 1.0, 2), 1.0, AsymptoticRegime::NearInfinity), DimensionError);
    CHECK_THROWS_AS(green_asymptotic(nts(0.7, 1.0, 1), 1.0, AsymptoticRegime::NearZero), DimensionError);
    CHECK_NOTHROW(green_asymptotic(nts(0.3, 1.0, 1), 1.0, AsymptoticRegime::NearZero));
    CHECK_THROWS_AS(green_asymptotic(nig(1.0, 1.0, 1), 1.0, AsymptoticRegime::NearZero), DimensionError);
    CHECK_NOTHROW(green_asymptotic(nig(1.0, 1.0, 2), 1.0, AsymptoticRegime::NearZero));
}

TEST_CASE("green_function approaches its asymptotes")
{
    const auto spec = nts(0.5, 1.0, 3);
    const double far = green_function(spec, 50.0) * 50.0;
    CHECK(rel(far, std::tgamma(0.5) / (4.0 * std::pow(kPi, 1.5) * 0.5)) < 0.05);
    const double near = green_function(spec, 1e-3) * std::pow(1e-3, 2.0);
    CHECK(rel(near, std::tgamma(1.0) / (std::pow(kPi, 1.5) * 2.0 * std::tgamma(0.5))) < 0.05);
}

TEST_CASE("green_function_ball_average")
{
    // Cylindrical-coordinate scipy dblquad over the ball.
    CHECK(rel(green_function_ball_average(nts(0.5, 1.0, 3), 1.0, 0.1), 0.17309946486011601) < 1e-8);
    // Mean-value property: for large r, G ~ const r^{2-d} is harmonic.
    for (int d : {3, 4, 5}) {
        const auto spec = nig(1.0, 1.0, d);
        CHECK(rel(green_function_ball_average(spec, 300.0, 30.0), green_function(spec, 300.0)) < 1e-4);
    }
    CHECK_THROWS_AS(green_function_ball_average(nts(0.5, 1.0, 3), 1.0, 1.0), GeometryError);
    CHECK_THROWS_AS(green_function_ball_average(nts(0.5, 1.0, 2), 1.0, 0.1), DimensionError);
}

TEST_CASE("jump_density against scipy quadrature")
{
    CHECK(rel(jump_density(nts(0.5, 1.0, 1), 1.0), 0.1915930219372824) < 1e-10);
    CHECK(rel(jump_density(nig(1.0, 1.0, 1), 1.0), 0.3294772725949206) < 1e-10);
    CHECK(rel(jump_density(nts(0.3, 1.0, 2), 0.5), 0.5375069627112133) < 1e-10);
    CHECK_THROWS_AS(jump_density(nts(0.5, 1.0, 1), -1.0), DomainError);
}

TEST_CASE("jump_density_bessel matches the defining integral")
{
    const SubordinatedProcessSpec specs[] = {nts(0.3, 1.0, 1), nts(0.5, 2.0, 1), nts(0.7, 0.5, 1),
                                             nig(1.0, 1.0, 1), nig(2.0, 0.5, 1)};
    for (int d : {1, 2, 3}) {
        for (const auto& s : specs) {
            const SubordinatedProcessSpec spec{s.model(), d};
            for (double r : {0.01, 0.1, 1.0, 10.0}) {
                CAPTURE(d);
                CAPTURE(r);
                CHECK(rel(jump_density_bessel(spec, r), jump_density(spec, r)) < 1e-8);
            }
        }
    }
    // NIG d = 1 has the textbook form (delta lam / pi) K_1(lam r) / r once the
    // kernel variance 2t is mapped to unit variance (r -> r / sqrt 2).
    const double r = 0.7;
    const double textbook =
        1.0 / kPi * numerics::bessel_k(1.0, r / std::numbers::sqrt2) / (r / std::numbers::sqrt2) / std::numbers::sqrt2;
    CHECK(rel(jump_density_bessel(nig(1.0, 1.0, 1), r), textbook) < 1e-13);
}

TEST_CASE("jump_density deep in the tail")
{
    const SubordinatedProcessSpec nig{SubordinatorModel{InverseGaussianParams(1.0, 1.0)}, 3};
    for (double r : {500.0, 800.0, 1000.0}) {
        CAPTURE(r);
        const double bessel = jump_density_bessel(nig, r);
        REQUIRE(bessel > 0.0);
        CHECK(jump_density(nig, r) == Approx(bessel).epsilon(1e-6));
    }
    const SubordinatedProcessSpec nts{SubordinatorModel{TemperedStableParams(0.5, 1.0)}, 1};
    CHECK(jump_density(nts, 800.0) == 0.0);
    CHECK(jump_density_bessel(nts, 800.0) == 0.0);
}

TEST_CASE("jump_density asymptotes")
{
    const auto spec = nts(0.5, 1.0, 1);
    const double r_small = 1e-4;
    CHECK(rel(jump_density(spec, r_small),
              jump_density_asymptotic(spec, r_small, AsymptoticRegime::NearZero)) < 5e-3);
    CHECK(rel(jump_density(spec, 50.0), jump_density_asymptotic(spec, 50.0, AsymptoticRegime::NearInfinity)) <
          0.02);
    // Published variants, reproduced on request.
    const double c = 0.5 / std::sqrt(kPi);
    CHECK(jump_density_asymptotic(spec, 0.01, AsymptoticRegime::NearZero, ConstantSource::Paper) ==
          Approx(std::pow(4.0, 1.5) / std::sqrt(kPi) * 1.0 * c * std::pow(0.01, -2.0)));
    CHECK(jump_density_asymptotic(spec, 10.0, AsymptoticRegime::NearInfinity, ConstantSource::Paper) ==
          Approx(std::numbers::sqrt2 * c * std::pow(10.0, -0.5) * std::exp(-10.0)));
    const auto ig = nig(1.0, 1.0, 3);
    CHECK(jump_density_asymptotic(ig, 0.5, AsymptoticRegime::NearZero, ConstantSource::Paper) ==
          Approx(16.0 / std::sqrt(2.0 * std::pow(kPi, 4.0)) * std::pow(0.5, -4.0)));
    CHECK(jump_density_asymptotic(ig, 2.0, AsymptoticRegime::NearInfinity, ConstantSource::Paper) ==
          Approx(4.0 * std::pow(0.5, 6.0) / std::sqrt(2.0 * std::pow(kPi, 3.0)) * std::pow(2.0, -1.5) *
                 std::exp(-2.0 / std::numbers::sqrt2)));
}

TEST_CASE("log-log slopes")
{
    auto slope = [](auto f, double a, double b) { return std::log(f(b) / f(a)) / std::log(b / a); };
    for (int d : {1, 2, 3}) {
        for (double alpha : {0.3, 0.7}) {
            const auto spec = nts(alpha, 1.0, d);
            CHECK(slope([&](double r) { return jump_density(spec, r); }, 1e-4, 1e-2) ==
                  Approx(-(2.0 * alpha + d)).epsilon(0.02 / (2.0 * alpha + d)));
        }
    }
    const auto spec = nts(0.5, 1.0, 3);
    CHECK(std::abs(slope([&](double r) { return green_function(spec, r); }, 1e-4, 1e-2) + 2.0) < 0.02);
    CHECK(std::abs(slope([&](double r) { return green_function(spec, r); }, 50.0, 200.0) + 1.0) < 0.02);
}
