#pragma once

#include <string>
#include <variant>

#include "subpot/numerics.hpp"

namespace subpot {

/// Tempered stable subordinator: Laplace exponent (s + theta)^alpha - theta^alpha,
/// Levy density c e^{-theta x} x^{-alpha-1} with c = alpha / Gamma(1 - alpha).
class TemperedStableParams {
public:
    /// Throws ParameterError unless 0 < alpha < 1 and theta > 0.
    TemperedStableParams(double alpha, double theta);

    double alpha() const noexcept { return alpha_; }
    double theta() const noexcept { return theta_; }
    /// alpha / Gamma(1 - alpha).
    double levy_constant() const;

    friend bool operator==(const TemperedStableParams&, const TemperedStableParams&) = default;

private:
    double alpha_;
    double theta_;
};

/// Inverse Gaussian subordinator: Laplace exponent delta (sqrt(2s + lam^2) - lam).
class InverseGaussianParams {
public:
    /// Throws ParameterError unless delta > 0 and lam > 0.
    InverseGaussianParams(double delta, double lam);

    double delta() const noexcept { return delta_; }
    double lam() const noexcept { return lam_; }

    friend bool operator==(const InverseGaussianParams&, const InverseGaussianParams&) = default;

private:
    double delta_;
    double lam_;
};

class SubordinatorModel {
public:
    SubordinatorModel(TemperedStableParams p) : params_(p) {}
    SubordinatorModel(InverseGaussianParams p) : params_(p) {}

    bool is_tempered_stable() const noexcept
    {
        return std::holds_alternative<TemperedStableParams>(params_);
    }
    bool is_inverse_gaussian() const noexcept
    {
        return std::holds_alternative<InverseGaussianParams>(params_);
    }
    /// Throw std::bad_variant_access on the wrong alternative.
    const TemperedStableParams& tempered_stable() const
    {
        return std::get<TemperedStableParams>(params_);
    }
    const InverseGaussianParams& inverse_gaussian() const
    {
        return std::get<InverseGaussianParams>(params_);
    }

    template <class Visitor>
    decltype(auto) visit(Visitor&& v) const
    {
        return std::visit(std::forward<Visitor>(v), params_);
    }

    /// "tss(alpha=0.5,theta=1)" style label for diagnostics.
    std::string describe() const;

    friend bool operator==(const SubordinatorModel&, const SubordinatorModel&) = default;

private:
    std::variant<TemperedStableParams, InverseGaussianParams> params_;
};

enum class AsymptoticRegime { NearZero, NearInfinity };

/// phi(s) for s >= 0.
double laplace_exponent(const SubordinatorModel& model, double s);

/// phi'(0): the mean of S(1).
double mean_rate(const SubordinatorModel& model);

/// Levy density mu(x), x > 0.
double levy_density(const SubordinatorModel& model, double x);

/// Exponent a with u(x) ~ const * x^{-a} as x -> 0 (1 - alpha for TSS, 1/2 for IG).
double potential_singularity_exponent(const SubordinatorModel& model);

/// Exponent a with (1 - e^{-sx}) mu(x) ~ const * x^{-a} as x -> 0 (alpha for TSS, 1/2 for IG).
double levy_singularity_exponent(const SubordinatorModel& model);

/// Potential density u(x).
///
/// IG: closed form through erfc. TSS: for 0 < alpha < 1 - 1e-6,
///   u(x) = 1/(alpha theta^{alpha-1})
///        + e^{-theta x} (sin(pi alpha)/pi) int_0^inf e^{-xv} v^alpha / D(v) dv,
///   D(v) = (v^alpha - theta^alpha cos(pi alpha))^2 + theta^{2 alpha} sin^2(pi alpha).
/// The constant is the residue of 1/phi at the pole s = 0 of the tempered
/// exponent; the integral is the branch-cut contribution, evaluated with
/// `config` after the substitution v = w/x.
double potential_density_exact(const SubordinatorModel& model, double x,
                               const numerics::QuadratureConfig& config = {});

/// The branch-cut term alone, e^{-theta x}(sin(pi alpha)/pi) int ... dv, for a TSS.
double tss_branch_cut_term(const TemperedStableParams& params, double x,
                           const numerics::QuadratureConfig& config = {});

/// Leading-order asymptote of u at 0+ or infinity.
double potential_density_asymptotic(const SubordinatorModel& model, double x,
                                    AsymptoticRegime regime);

/// U([a, b]) = int_a^b u(x) dx, 0 <= a < b.
double potential_measure(const SubordinatorModel& model, double a, double b,
                         const numerics::QuadratureConfig& config = {});

/// Density at x of the IG increment over time t (delta replaced by delta t).
double ig_pdf(const InverseGaussianParams& params, double x, double t);

/// IG parameters whose Laplace exponent equals that of TSS(alpha = 1/2, theta):
/// (delta, lam) = (1/sqrt(2), sqrt(2 theta)).
InverseGaussianParams tss_ig_equivalent(double theta);

}  // namespace subpot
