#pragma once

#include <span>

#include "subpot/numerics.hpp"
#include "subpot/subordinators.hpp"

namespace subpot {

/// Brownian motion in R^d time-changed by a subordinator.
class SubordinatedProcessSpec {
public:
    /// Throws ParameterError for dimension < 1.
    SubordinatedProcessSpec(SubordinatorModel model, int dimension);

    const SubordinatorModel& model() const noexcept { return model_; }
    int dimension() const noexcept { return dimension_; }

    friend bool operator==(const SubordinatedProcessSpec&, const SubordinatedProcessSpec&) = default;

private:
    SubordinatorModel model_;
    int dimension_;
};

/// Where the constants of an asymptote come from.
///   Paper:   the formula exactly as published.
///   Derived: leading terms of K_nu(w) ~ Gamma(nu) 2^{nu-1} w^{-nu} (w -> 0) and
///            K_nu(w) ~ sqrt(pi/(2w)) e^{-w} (w -> inf) applied to the Bessel
///            closed form.
enum class ConstantSource { Paper, Derived };

/// p(t, 0, x) = (4 pi t)^{-d/2} exp(-|x|^2 / (4t)); d = x.size().
double heat_kernel(int d, double t, std::span<const double> x);

/// Radial form of heat_kernel.
double heat_kernel_radial(int d, double t, double r);

// Green functions and jump densities below integrate over t in logarithmic
// coordinates around the peak of the integrand and normalise by the peak
// value, so the QuadratureConfig tolerances act on an O(1) integral.

/// G(r) = int_0^inf p(t, 0, r) u(t) dt. Requires d >= 3.
double green_function(const SubordinatedProcessSpec& spec, double r,
                      const numerics::QuadratureConfig& config = {});

/// Closed-form asymptote of G at r -> 0+ or r -> inf.
/// NearZero needs d > 2 alpha (TSS) or d >= 2 (IG); NearInfinity needs d >= 3.
double green_asymptotic(const SubordinatedProcessSpec& spec, double r, AsymptoticRegime regime);

/// Average of G over the ball of radius `ball_radius` centred at distance r
/// from the origin. Requires d >= 3 and ball_radius < r.
double green_function_ball_average(const SubordinatedProcessSpec& spec, double r,
                                   double ball_radius,
                                   const numerics::QuadratureConfig& config = {});

/// J(r) = int_0^inf p(t, 0, r) mu(t) dt by direct quadrature.
double jump_density(const SubordinatedProcessSpec& spec, double r,
                    const numerics::QuadratureConfig& config = {});

/// J(r) via int_0^inf t^{nu-1} e^{-a/t - bt} dt = 2 (a/b)^{nu/2} K_nu(2 sqrt(ab)):
///   TSS: nu = alpha + d/2, K argument sqrt(theta) r;
///   IG:  nu = (d + 1)/2,   K argument lam r / sqrt(2).
double jump_density_bessel(const SubordinatedProcessSpec& spec, double r);

/// Asymptote of J at r -> 0 or r -> inf, with constants from `source`.
double jump_density_asymptotic(const SubordinatedProcessSpec& spec, double r,
                               AsymptoticRegime regime,
                               ConstantSource source = ConstantSource::Derived);

}  // namespace subpot
