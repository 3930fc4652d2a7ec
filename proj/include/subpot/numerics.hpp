#pragma once

#include <functional>

namespace subpot::numerics {

/// Tolerances and limits for the adaptive integrators.
///
/// An integral is accepted once its summed error estimate is below
/// max(abs_tol, rel_tol * |value|). Semi-infinite integrals are split at
/// `tail_knot`; the tail [tail_knot, inf) is mapped onto [0, 1).
class QuadratureConfig {
public:
    QuadratureConfig() = default;
    QuadratureConfig(double abs_tol, double rel_tol, int max_subdivisions, double tail_knot);

    double abs_tol() const noexcept { return abs_tol_; }
    double rel_tol() const noexcept { return rel_tol_; }
    int max_subdivisions() const noexcept { return max_subdivisions_; }
    double tail_knot() const noexcept { return tail_knot_; }

    QuadratureConfig with_abs_tol(double v) const;
    QuadratureConfig with_rel_tol(double v) const;
    QuadratureConfig with_max_subdivisions(int v) const;
    QuadratureConfig with_tail_knot(double v) const;

    /// Both tolerances multiplied by `factor` (> 0).
    QuadratureConfig scaled(double factor) const;

    friend bool operator==(const QuadratureConfig&, const QuadratureConfig&) = default;

private:
    double abs_tol_ = 1e-12;
    double rel_tol_ = 1e-10;
    int max_subdivisions_ = 200;
    double tail_knot_ = 1.0;
};

/// Configuration for an integral nested inside another: tolerances two
/// orders tighter than `outer`, floored near the Gauss-Kronrod noise level.
QuadratureConfig inner_config(const QuadratureConfig& outer);

struct QuadratureResult {
    double value = 0.0;
    double error_estimate = 0.0;
    int subdivisions_used = 0;
};

using Integrand = std::function<double(double)>;

/// Gamma function for 0 < x <= 171.
double gamma_fn(double x);

/// Complementary error function. Total on finite reals.
double erfc_fn(double x);

/// Truncated large-x expansion
///   e^{-x^2}/(x sqrt(pi)) [1 + sum_{n=1}^{n_terms} (-1)^n (2n-1)!! / (2x^2)^n].
double erfc_asymptotic(double x, int n_terms);

/// Modified Bessel function of the second kind K_nu(omega), nu >= 0, omega > 0.
/// Throws OverflowError when the value is not representable.
double bessel_k(double nu, double omega);

/// e^{omega} K_nu(omega); finite for large omega where K_nu underflows.
double bessel_k_scaled(double nu, double omega);

/// Adaptive Gauss-Kronrod (10/21 point) integral of f over [a, b].
///
/// `endpoint_exponent` e in [0, 1) declares that f behaves like (t - a)^{-e}
/// near a; the integrator then substitutes t = a + w^{1/(1-e)}, which makes
/// the transformed integrand bounded. With e = 0 a singular endpoint is still
/// handled, by repeated bisection toward it.
QuadratureResult integrate(const Integrand& f, double a, double b, const QuadratureConfig& config,
                           double endpoint_exponent = 0.0);

/// Integral of f over (0, inf). The domain is split at config.tail_knot and
/// the tail is mapped by t = tail_knot / (1 - v), v in [0, 1).
QuadratureResult integrate_semi_infinite(const Integrand& f, const QuadratureConfig& config,
                                         double endpoint_exponent = 0.0);

/// int_0^inf e^{-s t} f(t) dt, s > 0.
double laplace_transform_numeric(const Integrand& f, double s, const QuadratureConfig& config,
                                 double endpoint_exponent = 0.0);

}  // namespace subpot::numerics
