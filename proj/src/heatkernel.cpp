#include "subpot/heatkernel.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <numbers>

#include "subpot/errors.hpp"

namespace subpot {

using numerics::QuadratureConfig;

namespace {

constexpr double kPi = std::numbers::pi;

void require_radius(const char* op, double r)
{
    if (!(r > 0.0) || !std::isfinite(r)) {
        throw DomainError(op, "r must be positive and finite");
    }
}

// int_0^inf e^{g(t)} dt as t0 * int_R e^{g(t0 e^y) - g(t0)} e^y dy, split at
// y = 0. Working with g = log f keeps the integrand smooth when f(t0) is
// subnormal. Both halves decay at least exponentially in y for every
// integrand used here.
double integrate_log_time(const std::function<double(double)>& log_f, double t0,
                          const QuadratureConfig& config)
{
    const double g0 = log_f(t0);
    if (g0 == -std::numeric_limits<double>::infinity()) {
        return 0.0;
    }
    auto half = [&](double sign) {
        const numerics::Integrand h = [&, sign](double y) {
            const double t = t0 * std::exp(sign * y);
            if (!(t > 0.0) || !std::isfinite(t)) {
                return 0.0;
            }
            return std::exp(log_f(t) - g0 + sign * y);
        };
        return numerics::integrate_semi_infinite(h, config).value;
    };
    return std::exp(g0 + std::log(t0 * (half(1.0) + half(-1.0))));
}

double log_heat_kernel(int d, double t, double r)
{
    return -0.5 * d * std::log(4.0 * kPi * t) - r * r / (4.0 * t);
}

double log_levy_density(const SubordinatorModel& model, double x)
{
    if (model.is_tempered_stable()) {
        const auto& p = model.tempered_stable();
        return std::log(p.levy_constant()) - p.theta() * x - (p.alpha() + 1.0) * std::log(x);
    }
    const auto& p = model.inverse_gaussian();
    return std::log(p.delta()) - 0.5 * std::log(2.0 * kPi) - 1.5 * std::log(x) -
           0.5 * p.lam() * p.lam() * x;
}

// J(r) = prefactor * K_nu(omega) for the model's Levy density.
struct BesselForm {
    double log_prefactor;
    double nu;
    double omega;
};

BesselForm bessel_form(const SubordinatedProcessSpec& spec, double r)
{
    const double d = spec.dimension();
    const double log_heat = -0.5 * d * std::log(4.0 * kPi);
    if (spec.model().is_tempered_stable()) {
        const auto& p = spec.model().tempered_stable();
        const double nu = p.alpha() + 0.5 * d;
        // c (4 pi)^{-d/2} * 2 (4 theta / r^2)^{nu/2}
        const double log_pref = std::log(p.levy_constant()) + log_heat + std::log(2.0) +
                                0.5 * nu * std::log(4.0 * p.theta() / (r * r));
        return {log_pref, nu, std::sqrt(p.theta()) * r};
    }
    const auto& p = spec.model().inverse_gaussian();
    const double nu = 0.5 * (d + 1.0);
    // delta / sqrt(2 pi) (4 pi)^{-d/2} * 2 (2 lam^2 / r^2)^{nu/2}
    const double log_pref = std::log(p.delta()) - 0.5 * std::log(2.0 * kPi) + log_heat +
                            std::log(2.0) + 0.5 * nu * std::log(2.0 * p.lam() * p.lam() / (r * r));
    return {log_pref, nu, p.lam() * r / std::numbers::sqrt2};
}

}  // namespace

SubordinatedProcessSpec::SubordinatedProcessSpec(SubordinatorModel model, int dimension)
    : model_(model), dimension_(dimension)
{
    if (dimension < 1) {
        throw ParameterError("SubordinatedProcessSpec", "dimension must be at least 1");
    }
}

double heat_kernel(int d, double t, std::span<const double> x)
{
    if (d < 1 || static_cast<std::size_t>(d) != x.size()) {
        throw DimensionError("heat_kernel", "point must have d >= 1 coordinates");
    }
    double r2 = 0.0;
    for (double c : x) {
        r2 += c * c;
    }
    return heat_kernel_radial(d, t, std::sqrt(r2));
}

double heat_kernel_radial(int d, double t, double r)
{
    if (!(t > 0.0)) {
        throw DomainError("heat_kernel", "t must be positive");
    }
    if (d < 1) {
        throw DimensionError("heat_kernel", "d must be at least 1");
    }
    return std::exp(log_heat_kernel(d, t, r));
}

double green_function(const SubordinatedProcessSpec& spec, double r, const QuadratureConfig& config)
{
    constexpr const char* op = "green_function";
    require_radius(op, r);
    const int d = spec.dimension();
    if (d < 3) {
        throw DimensionError(op, "the Green function is finite only for d >= 3");
    }
    const QuadratureConfig inner = numerics::inner_config(config);
    const auto& model = spec.model();
    const auto log_f = [&](double t) {
        return log_heat_kernel(d, t, r) + std::log(potential_density_exact(model, t, inner));
    };
    // Peak of t p(t, 0, r) for d >= 3.
    const double t0 = r * r / (2.0 * (d - 2));
    return integrate_log_time(log_f, t0, config);
}

double green_asymptotic(const SubordinatedProcessSpec& spec, double r, AsymptoticRegime regime)
{
    constexpr const char* op = "green_asymptotic";
    require_radius(op, r);
    const double d = spec.dimension();
    const double pi_d2 = std::pow(kPi, 0.5 * d);
    if (regime == AsymptoticRegime::NearInfinity) {
        if (d < 3) {
            throw DimensionError(op, "the large-r asymptote needs d >= 3");
        }
        // u(inf) Gamma((d-2)/2) / (4 pi^{d/2}) r^{2-d}
        const double u_inf = 1.0 / mean_rate(spec.model());
        return u_inf * std::tgamma(0.5 * (d - 2.0)) / (4.0 * pi_d2) * std::pow(r, 2.0 - d);
    }
    if (spec.model().is_tempered_stable()) {
        const double a = spec.model().tempered_stable().alpha();
        if (!(d > 2.0 * a)) {
            throw DimensionError(op, "the small-r asymptote needs d > 2 alpha");
        }
        return std::tgamma(0.5 * (d - 2.0 * a)) / (pi_d2 * std::pow(4.0, a) * std::tgamma(a)) *
               std::pow(r, 2.0 * a - d);
    }
    if (d < 2) {
        throw DimensionError(op, "the small-r asymptote needs d >= 2");
    }
    const double delta = spec.model().inverse_gaussian().delta();
    return 1.0 / (std::pow(2.0, 1.5) * pi_d2 * delta) * std::tgamma(0.5 * (d - 1.0)) /
           std::sqrt(kPi) * std::pow(r, 1.0 - d);
}

double green_function_ball_average(const SubordinatedProcessSpec& spec, double r,
                                   double ball_radius, const QuadratureConfig& config)
{
    constexpr const char* op = "green_function_ball_average";
    require_radius(op, r);
    const int d = spec.dimension();
    if (d < 3) {
        throw DimensionError(op, "the Green function is finite only for d >= 3");
    }
    if (!(ball_radius > 0.0) || !(ball_radius < r)) {
        throw GeometryError(op, "need 0 < ball_radius < r");
    }
    const double eps = ball_radius;
    const double dd = d;

    // Fraction of the sphere |x| = rho lying inside the ball: the polar cap of
    // half-angle gamma, measured by int_0^gamma sin^{d-2}.
    const QuadratureConfig cap_config = numerics::inner_config(config);
    auto cap_fraction = [&](double cos_gamma) {
        if (d == 3) {
            return 0.5 * (1.0 - cos_gamma);
        }
        const double gamma = std::acos(std::clamp(cos_gamma, -1.0, 1.0));
        if (gamma <= 0.0) {
            return 0.0;
        }
        const numerics::Integrand w = [&](double phi) { return std::pow(std::sin(phi), dd - 2.0); };
        const double full = std::sqrt(kPi) * std::tgamma(0.5 * (dd - 1.0)) / std::tgamma(0.5 * dd);
        return numerics::integrate(w, 0.0, gamma, cap_config).value / full;
    };
    const double sphere_area = 2.0 * std::pow(kPi, 0.5 * dd) / std::tgamma(0.5 * dd);
    const double ball_volume = std::pow(kPi, 0.5 * dd) * std::pow(eps, dd) / std::tgamma(0.5 * dd + 1.0);

    const QuadratureConfig green_config = numerics::inner_config(config);
    const numerics::Integrand shell = [&](double rho) {
        const double cos_gamma = (rho * rho + r * r - eps * eps) / (2.0 * rho * r);
        const double area = sphere_area * std::pow(rho, dd - 1.0) * cap_fraction(cos_gamma);
        return area == 0.0 ? 0.0 : area * green_function(spec, rho, green_config);
    };
    return numerics::integrate(shell, r - eps, r + eps, config).value / ball_volume;
}

double jump_density(const SubordinatedProcessSpec& spec, double r, const QuadratureConfig& config)
{
    constexpr const char* op = "jump_density";
    require_radius(op, r);
    const int d = spec.dimension();
    const auto& model = spec.model();
    const auto log_f = [&](double t) { return log_heat_kernel(d, t, r) + log_levy_density(model, t); };
    // t e^{-a/t - bt} t^{-kappa} peaks where b t^2 + (kappa - 1) t - a = 0.
    const double a = 0.25 * r * r;
    double b = 0.0;
    double kappa = 0.0;
    if (model.is_tempered_stable()) {
        b = model.tempered_stable().theta();
        kappa = model.tempered_stable().alpha() + 1.0 + 0.5 * d;
    } else {
        const double lam = model.inverse_gaussian().lam();
        b = 0.5 * lam * lam;
        kappa = 0.5 * (d + 3.0);
    }
    const double k1 = kappa - 1.0;
    const double t0 = 2.0 * a / (k1 + std::sqrt(k1 * k1 + 4.0 * a * b));
    return integrate_log_time(log_f, t0, config);
}

double jump_density_bessel(const SubordinatedProcessSpec& spec, double r)
{
    require_radius("jump_density_bessel", r);
    const auto form = bessel_form(spec, r);
    const double k_scaled = numerics::bessel_k_scaled(form.nu, form.omega);
    const double value = std::exp(form.log_prefactor + std::log(k_scaled) - form.omega);
    if (!std::isfinite(value)) {
        throw OverflowError("jump_density_bessel", "value exceeds the double range");
    }
    return value;
}

double jump_density_asymptotic(const SubordinatedProcessSpec& spec, double r,
                               AsymptoticRegime regime, ConstantSource source)
{
    require_radius("jump_density_asymptotic", r);
    const double d = spec.dimension();
    const bool near_zero = regime == AsymptoticRegime::NearZero;

    if (source == ConstantSource::Derived) {
        const auto form = bessel_form(spec, r);
        if (near_zero) {
            // K_nu(w) ~ Gamma(nu) 2^{nu-1} w^{-nu}
            return std::exp(form.log_prefactor + std::lgamma(form.nu) +
                            (form.nu - 1.0) * std::log(2.0) - form.nu * std::log(form.omega));
        }
        // K_nu(w) ~ sqrt(pi / (2w)) e^{-w}
        return std::exp(form.log_prefactor + 0.5 * std::log(kPi / (2.0 * form.omega)) - form.omega);
    }

    if (spec.model().is_tempered_stable()) {
        const auto& p = spec.model().tempered_stable();
        const double a = p.alpha();
        const double c = p.levy_constant();
        if (near_zero) {
            return std::pow(4.0, a + 1.0) / std::pow(kPi, 0.5 * d) * (a + 0.5 * d) * c *
                   std::pow(r, -(2.0 * a + d));
        }
        const double log_value = 0.5 * (2.0 * a - d + 1.0) * std::log(2.0) +
                                 0.25 * (2.0 * a + d - 1.0) * std::log(p.theta()) -
                                 0.5 * (d - 1.0) * std::log(kPi) + std::log(c) -
                                 0.5 * (2.0 * a + d - 1.0) * std::log(r) - std::sqrt(p.theta()) * r;
        return std::exp(log_value);
    }
    const auto& p = spec.model().inverse_gaussian();
    if (near_zero) {
        return 4.0 * p.delta() * (d + 1.0) / std::sqrt(2.0 * std::pow(kPi, d + 1.0)) *
               std::pow(r, -(d + 1.0));
    }
    const double log_value = std::log(4.0 * p.delta()) + 2.0 * d * std::log(0.5 * p.lam()) -
                             0.5 * std::log(2.0 * std::pow(kPi, d)) - 0.5 * d * std::log(r) -
                             p.lam() / std::numbers::sqrt2 * r;
    return std::exp(log_value);
}

}  // namespace subpot
