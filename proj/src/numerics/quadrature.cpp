#include "subpot/numerics.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <vector>

#include "subpot/errors.hpp"

namespace subpot::numerics {

QuadratureConfig::QuadratureConfig(double abs_tol, double rel_tol, int max_subdivisions,
                                   double tail_knot)
    : abs_tol_(abs_tol), rel_tol_(rel_tol), max_subdivisions_(max_subdivisions), tail_knot_(tail_knot)
{
    if (!(abs_tol > 0.0) || !(rel_tol > 0.0)) {
        throw ParameterError("QuadratureConfig", "tolerances must be positive");
    }
    if (max_subdivisions < 1) {
        throw ParameterError("QuadratureConfig", "max_subdivisions must be at least 1");
    }
    if (!(tail_knot > 0.0) || !std::isfinite(tail_knot)) {
        throw ParameterError("QuadratureConfig", "tail_knot must be positive and finite");
    }
}

QuadratureConfig QuadratureConfig::with_abs_tol(double v) const
{
    return {v, rel_tol_, max_subdivisions_, tail_knot_};
}

QuadratureConfig QuadratureConfig::with_rel_tol(double v) const
{
    return {abs_tol_, v, max_subdivisions_, tail_knot_};
}

QuadratureConfig QuadratureConfig::with_max_subdivisions(int v) const
{
    return {abs_tol_, rel_tol_, v, tail_knot_};
}

QuadratureConfig QuadratureConfig::with_tail_knot(double v) const
{
    return {abs_tol_, rel_tol_, max_subdivisions_, v};
}

QuadratureConfig QuadratureConfig::scaled(double factor) const
{
    return {abs_tol_ * factor, rel_tol_ * factor, max_subdivisions_, tail_knot_};
}

QuadratureConfig inner_config(const QuadratureConfig& outer)
{
    return {std::max(outer.abs_tol() * 1e-2, 1e-15), std::max(outer.rel_tol() * 1e-2, 5e-14),
            outer.max_subdivisions(), outer.tail_knot()};
}

namespace {

// QUADPACK qk21 abscissae and weights.
constexpr std::array<double, 11> kXgk = {
    0.995657163025808080735527280689003, 0.973906528517171720077964012084452,
    0.930157491355708226001207180059508, 0.865063366688984510732096688423493,
    0.780817726586416897063717578345042, 0.679409568299024406234327365114874,
    0.562757134668604683339000099272694, 0.433395394129247190799265943165784,
    0.294392862701460198131126603103866, 0.148874338981631210884826001129720,
    0.000000000000000000000000000000000,
};
constexpr std::array<double, 11> kWgk = {
    0.011694638867371874278064396062192, 0.032558162307964727478818972459390,
    0.054755896574351996031381300244580, 0.075039674810919952767043140916190,
    0.093125454583697605535065465083366, 0.109387158802297641899210590325805,
    0.123491976262065851077208626368630, 0.134709217311473325928054001771707,
    0.142775938577060080797094273138717, 0.147739104901338491374841515972068,
    0.149445554002916905664936468389821,
};
// 10-point Gauss weights on kXgk[1], kXgk[3], ..., kXgk[9].
constexpr std::array<double, 5> kWg = {
    0.066671344308688137593568809893332, 0.149451349150580593145776339657697,
    0.219086362515982043995534934228163, 0.269266719309996355091226921569469,
    0.295524224714752870173892994651338,
};

struct Segment {
    double lo;
    double hi;
    double value;
    double error;
};

double checked(const char* op, double v)
{
    if (!std::isfinite(v)) {
        throw NanError(op, std::isnan(v) ? "integrand returned NaN" : "integrand returned infinity");
    }
    return v;
}

Segment gauss_kronrod_21(const char* op, const Integrand& g, double lo, double hi)
{
    constexpr double epmach = std::numeric_limits<double>::epsilon();
    constexpr double uflow = std::numeric_limits<double>::min();

    const double center = 0.5 * (lo + hi);
    const double half = 0.5 * (hi - lo);
    std::array<double, 10> f1{};
    std::array<double, 10> f2{};

    const double fc = checked(op, g(center));
    double res_k = kWgk[10] * fc;
    double res_g = 0.0;
    double res_abs = std::abs(res_k);
    for (int j = 0; j < 10; ++j) {
        const double dx = half * kXgk[j];
        f1[j] = checked(op, g(center - dx));
        f2[j] = checked(op, g(center + dx));
        const double pair = f1[j] + f2[j];
        res_k += kWgk[j] * pair;
        res_abs += kWgk[j] * (std::abs(f1[j]) + std::abs(f2[j]));
        if (j % 2 == 1) {
            res_g += kWg[j / 2] * pair;
        }
    }
    const double mean = 0.5 * res_k;
    double res_asc = kWgk[10] * std::abs(fc - mean);
    for (int j = 0; j < 10; ++j) {
        res_asc += kWgk[j] * (std::abs(f1[j] - mean) + std::abs(f2[j] - mean));
    }

    const double habs = std::abs(half);
    res_k *= half;
    res_abs *= habs;
    res_asc *= habs;
    double err = std::abs(res_k - res_g * half);
    if (res_asc != 0.0 && err != 0.0) {
        err = res_asc * std::min(1.0, std::pow(200.0 * err / res_asc, 1.5));
    }
    if (res_abs > uflow / (50.0 * epmach)) {
        err = std::max(epmach * 50.0 * res_abs, err);
    }
    return {lo, hi, res_k, err};
}

// Global adaptive bisection: the segment with the largest error estimate is
// split until the summed error meets the target.
QuadratureResult adaptive(const char* op, const Integrand& g, double lo, double hi,
                          const QuadratureConfig& config)
{
    std::vector<Segment> segments;
    segments.reserve(static_cast<std::size_t>(config.max_subdivisions()) + 1);
    segments.push_back(gauss_kronrod_21(op, g, lo, hi));

    auto by_error = [](const Segment& a, const Segment& b) { return a.error < b.error; };
    for (;;) {
        double value = 0.0;
        double error = 0.0;
        for (const auto& s : segments) {
            value += s.value;
            error += s.error;
        }
        const double target = std::max(config.abs_tol(), config.rel_tol() * std::abs(value));
        const int used = static_cast<int>(segments.size());
        if (error <= target) {
            return {value, error, used};
        }
        if (used >= config.max_subdivisions()) {
            throw ConvergenceError(op, "subdivision limit reached before the error target", value,
                                   error);
        }
        auto worst = std::max_element(segments.begin(), segments.end(), by_error);
        const Segment s = *worst;
        const double mid = 0.5 * (s.lo + s.hi);
        if (!(mid > s.lo && mid < s.hi)) {
            throw ConvergenceError(op, "interval shrank to machine precision", value, error);
        }
        *worst = gauss_kronrod_21(op, g, s.lo, mid);
        segments.push_back(gauss_kronrod_21(op, g, mid, s.hi));
    }
}

double power_map_exponent(const char* op, double endpoint_exponent)
{
    if (!(endpoint_exponent >= 0.0 && endpoint_exponent < 1.0)) {
        throw DomainError(op, "endpoint_exponent must lie in [0, 1)");
    }
    return 1.0 / (1.0 - endpoint_exponent);
}

}  // namespace

QuadratureResult integrate(const Integrand& f, double a, double b, const QuadratureConfig& config,
                           double endpoint_exponent)
{
    constexpr const char* op = "integrate";
    if (!(std::isfinite(a) && std::isfinite(b) && a < b)) {
        throw DomainError(op, "require finite a < b");
    }
    const double p = power_map_exponent(op, endpoint_exponent);
    if (p == 1.0) {
        return adaptive(op, f, a, b, config);
    }
    // t = a + w^p turns (t - a)^{-e} into a bounded integrand in w.
    const Integrand g = [&](double w) {
        const double wp = std::pow(w, p - 1.0);
        return p * wp * f(a + wp * w);
    };
    return adaptive(op, g, 0.0, std::pow(b - a, 1.0 / p), config);
}

QuadratureResult integrate_semi_infinite(const Integrand& f, const QuadratureConfig& config,
                                         double endpoint_exponent)
{
    constexpr const char* op = "integrate_semi_infinite";
    const double p = power_map_exponent(op, endpoint_exponent);
    const double knot = p == 1.0 ? config.tail_knot() : std::pow(config.tail_knot(), 1.0 / p);

    // Integrand in w, where t = w^p (identity when p == 1).
    auto in_w = [&](double w) {
        if (p == 1.0) {
            return f(w);
        }
        const double wp = std::pow(w, p - 1.0);
        const double t = wp * w;
        if (!(t > 0.0)) {
            return 0.0;
        }
        return p * wp * f(t);
    };
    // One mapped variable on [0, 2]: [0, 1] -> (0, knot], (1, 2) -> [knot, inf).
    // The first bisection lands exactly on the knot.
    const Integrand g = [&](double u) {
        if (u <= 1.0) {
            return knot * in_w(knot * u);
        }
        const double gap = 2.0 - u;  // 1 - v
        const double w = knot / gap;
        if (!std::isfinite(w)) {
            return 0.0;
        }
        const double jac = knot / (gap * gap);
        const double fw = in_w(w);
        return fw == 0.0 ? 0.0 : jac * fw;
    };
    return adaptive(op, g, 0.0, 2.0, config);
}

double laplace_transform_numeric(const Integrand& f, double s, const QuadratureConfig& config,
                                 double endpoint_exponent)
{
    if (!(s > 0.0)) {
        throw DomainError("laplace_transform_numeric", "s must be positive");
    }
    const Integrand g = [&](double t) {
        const double damp = std::exp(-s * t);
        return damp == 0.0 ? 0.0 : damp * f(t);
    };
    return integrate_semi_infinite(g, config, endpoint_exponent).value;
}

}  // namespace subpot::numerics
