#include "subpot/subordinators.hpp"

#include <charconv>
#include <cmath>
#include <numbers>

#include "subpot/errors.hpp"

namespace subpot {

using numerics::QuadratureConfig;

namespace {

template <class... Ts>
struct overloaded : Ts... {
    using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

constexpr double kAlphaDegeneracyGap = 1e-6;

void require_positive(const char* op, double x, const char* what)
{
    if (!(x > 0.0) || !std::isfinite(x)) {
        throw DomainError(op, std::string(what) + " must be positive and finite");
    }
}

}  // namespace

TemperedStableParams::TemperedStableParams(double alpha, double theta) : alpha_(alpha), theta_(theta)
{
    if (!(alpha > 0.0 && alpha < 1.0)) {
        throw ParameterError("TemperedStableParams", "alpha must lie in (0, 1)");
    }
    if (!(theta > 0.0) || !std::isfinite(theta)) {
        throw ParameterError("TemperedStableParams", "theta must be positive and finite");
    }
}

double TemperedStableParams::levy_constant() const
{
    return alpha_ / std::tgamma(1.0 - alpha_);
}

InverseGaussianParams::InverseGaussianParams(double delta, double lam) : delta_(delta), lam_(lam)
{
    if (!(delta > 0.0) || !std::isfinite(delta)) {
        throw ParameterError("InverseGaussianParams", "delta must be positive and finite");
    }
    if (!(lam > 0.0) || !std::isfinite(lam)) {
        throw ParameterError("InverseGaussianParams", "lambda must be positive and finite");
    }
}

std::string SubordinatorModel::describe() const
{
    // Shortest representation that round-trips.
    auto str = [](double v) {
        char buf[32];
        return std::string(buf, std::to_chars(buf, buf + sizeof buf, v).ptr);
    };
    return visit(overloaded{
        [&](const TemperedStableParams& p) {
            return "tss(alpha=" + str(p.alpha()) + ",theta=" + str(p.theta()) + ")";
        },
        [&](const InverseGaussianParams& p) {
            return "ig(delta=" + str(p.delta()) + ",lambda=" + str(p.lam()) + ")";
        },
    });
}

double laplace_exponent(const SubordinatorModel& model, double s)
{
    if (!(s >= 0.0)) {
        throw DomainError("laplace_exponent", "s must be non-negative");
    }
    return model.visit(overloaded{
        [&](const TemperedStableParams& p) {
            // theta^alpha ((1 + s/theta)^alpha - 1) without cancellation at small s.
            return std::pow(p.theta(), p.alpha()) *
                   std::expm1(p.alpha() * std::log1p(s / p.theta()));
        },
        [&](const InverseGaussianParams& p) {
            const double root = std::sqrt(2.0 * s + p.lam() * p.lam());
            return p.delta() * 2.0 * s / (root + p.lam());
        },
    });
}

double mean_rate(const SubordinatorModel& model)
{
    return model.visit(overloaded{
        [](const TemperedStableParams& p) {
            return p.alpha() * std::pow(p.theta(), p.alpha() - 1.0);
        },
        [](const InverseGaussianParams& p) { return p.delta() / p.lam(); },
    });
}

double levy_density(const SubordinatorModel& model, double x)
{
    require_positive("levy_density", x, "x");
    return model.visit(overloaded{
        [&](const TemperedStableParams& p) {
            return p.levy_constant() * std::exp(-p.theta() * x - (p.alpha() + 1.0) * std::log(x));
        },
        [&](const InverseGaussianParams& p) {
            return p.delta() / std::sqrt(2.0 * std::numbers::pi * x * x * x) *
                   std::exp(-0.5 * p.lam() * p.lam() * x);
        },
    });
}

double potential_singularity_exponent(const SubordinatorModel& model)
{
    return model.visit(overloaded{
        [](const TemperedStableParams& p) { return 1.0 - p.alpha(); },
        [](const InverseGaussianParams&) { return 0.5; },
    });
}

double levy_singularity_exponent(const SubordinatorModel& model)
{
    return model.visit(overloaded{
        [](const TemperedStableParams& p) { return p.alpha(); },
        [](const InverseGaussianParams&) { return 0.5; },
    });
}

double tss_branch_cut_term(const TemperedStableParams& params, double x,
                           const QuadratureConfig& config)
{
    constexpr const char* op = "potential_density_exact";
    require_positive(op, x, "x");
    const double alpha = params.alpha();
    const double theta = params.theta();
    if (alpha > 1.0 - kAlphaDegeneracyGap) {
        throw DegeneracyError(op, "alpha within 1e-6 of 1: sin(pi alpha) vanishes");
    }
    const double sin_pa = std::sin(std::numbers::pi * alpha);
    const double cos_pa = std::cos(std::numbers::pi * alpha);
    const double theta_a = std::pow(theta, alpha);

    const double damp = std::exp(-theta * x);
    // Upper bound from D(v) >= theta^{2 alpha} sin^2(pi alpha).
    const double bound = damp / (std::numbers::pi * sin_pa) * std::tgamma(1.0 + alpha) *
                         std::pow(x, -1.0 - alpha) / (theta_a * theta_a);
    if (bound == 0.0) {
        return 0.0;
    }

    auto kernel = [&](double v) {
        const double va = std::pow(v, alpha);
        const double shifted = va - theta_a * cos_pa;
        return va / (shifted * shifted + theta_a * theta_a * sin_pa * sin_pa);
    };
    // v = w/x puts the e^{-xv} cutoff at w ~ 1; normalising by the kernel
    // there makes the integral O(1) so that abs_tol acts at unit scale.
    const double scale = kernel(1.0 / x);
    const numerics::Integrand g = [&](double w) {
        const double e = std::exp(-w);
        return e == 0.0 ? 0.0 : e * kernel(w / x) / scale;
    };
    const auto res = numerics::integrate_semi_infinite(g, config);
    return damp * sin_pa / (std::numbers::pi * x) * scale * res.value;
}

double potential_density_exact(const SubordinatorModel& model, double x,
                               const QuadratureConfig& config)
{
    constexpr const char* op = "potential_density_exact";
    require_positive(op, x, "x");
    return model.visit(overloaded{
        [&](const TemperedStableParams& p) {
            const double residue = 1.0 / mean_rate(model);
            return residue + tss_branch_cut_term(p, x, config);
        },
        [&](const InverseGaussianParams& p) {
            const double lam = p.lam();
            const double head = std::exp(-0.5 * lam * lam * x) / std::sqrt(std::numbers::pi * x);
            const double tail = lam / std::numbers::sqrt2 *
                                numerics::erfc_fn(-lam * std::sqrt(0.5 * x));
            return (head + tail) / (std::numbers::sqrt2 * p.delta());
        },
    });
}

double potential_density_asymptotic(const SubordinatorModel& model, double x,
                                    AsymptoticRegime regime)
{
    require_positive("potential_density_asymptotic", x, "x");
    const bool near_zero = regime == AsymptoticRegime::NearZero;
    return model.visit(overloaded{
        [&](const TemperedStableParams& p) {
            const double a = p.alpha();
            if (near_zero) {
                return a * std::pow(x, a - 1.0) / std::tgamma(1.0 + a);
            }
            return 1.0 / (a * std::pow(p.theta(), a - 1.0));
        },
        [&](const InverseGaussianParams& p) {
            if (near_zero) {
                return 1.0 / (p.delta() * std::sqrt(2.0 * std::numbers::pi * x));
            }
            return p.lam() / p.delta();
        },
    });
}

double potential_measure(const SubordinatorModel& model, double a, double b,
                         const QuadratureConfig& config)
{
    constexpr const char* op = "potential_measure";
    if (!(a >= 0.0) || !(b > a) || !std::isfinite(b)) {
        throw DomainError(op, "require 0 <= a < b < inf");
    }
    const QuadratureConfig inner = numerics::inner_config(config);
    const numerics::Integrand u = [&](double x) { return potential_density_exact(model, x, inner); };
    const double exponent = a == 0.0 ? potential_singularity_exponent(model) : 0.0;
    return numerics::integrate(u, a, b, config, exponent).value;
}

double ig_pdf(const InverseGaussianParams& params, double x, double t)
{
    require_positive("ig_pdf", x, "x");
    require_positive("ig_pdf", t, "t");
    const double delta = params.delta() * t;
    const double lam = params.lam();
    // delta e^{delta lam} e^{-(delta^2/x + lam^2 x)/2} == delta e^{-(delta - lam x)^2 / (2x)}.
    const double gap = delta - lam * x;
    return delta / std::sqrt(2.0 * std::numbers::pi * x * x * x) * std::exp(-gap * gap / (2.0 * x));
}

InverseGaussianParams tss_ig_equivalent(double theta)
{
    if (!(theta > 0.0) || !std::isfinite(theta)) {
        throw DomainError("tss_ig_equivalent", "theta must be positive and finite");
    }
    return {1.0 / std::numbers::sqrt2, std::sqrt(2.0 * theta)};
}

}  // namespace subpot
