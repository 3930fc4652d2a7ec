#include "subpot/cli/verify.hpp"

#include <cmath>
#include <functional>
#include <limits>
#include <numbers>

#include "subpot/cli/table.hpp"
#include "subpot/cli/thresholds.hpp"
#include "subpot/errors.hpp"
#include "subpot/heatkernel.hpp"

namespace subpot::cli {

namespace {

using numerics::QuadratureConfig;

constexpr double kNan = std::numeric_limits<double>::quiet_NaN();
const std::vector<double> kSValues = {0.25, 0.5, 1.0, 2.0, 4.0, 8.0};

class SuiteBuilder {
public:
    SuiteBuilder(std::string suite, double scale) : scale_(scale) { report_.suite = std::move(suite); }

    void check(std::string id, Json inputs, double expected, const std::function<double()>& actual,
               double tolerance, const std::string& metric = "abs")
    {
        VerifyCase c;
        c.case_id = std::move(id);
        c.inputs = std::move(inputs);
        c.expected = expected;
        c.tolerance = tolerance * scale_;
        c.metric = metric;
        try {
            c.actual = actual();
            const double gap = std::abs(c.actual - expected);
            const double limit = metric == "rel" ? c.tolerance * std::abs(expected) : c.tolerance;
            c.pass = gap <= limit;
        } catch (const Error& e) {
            c.actual = kNan;
            c.error = e.what();
            c.pass = false;
        }
        report_.cases.push_back(std::move(c));
    }

    void adjudicate(std::string clause, Json inputs, const std::function<double()>& oracle,
                    const std::function<double()>& paper, const std::function<double()>& derived)
    {
        Adjudication a;
        a.clause = std::move(clause);
        a.inputs = std::move(inputs);
        a.tolerance = 5e-3 * scale_;
        a.oracle = oracle();
        a.paper = paper();
        a.derived = derived();
        report_.adjudications.push_back(std::move(a));
    }

    VerifyReport take() { return std::move(report_); }

private:
    double scale_;
    VerifyReport report_;
};

std::vector<SubordinatorModel> tss_grid()
{
    std::vector<SubordinatorModel> out;
    for (const auto& m : calibration_models()) {
        if (m.is_tempered_stable()) {
            out.push_back(m);
        }
    }
    return out;
}

std::vector<SubordinatorModel> ig_grid()
{
    std::vector<SubordinatorModel> out;
    for (const auto& m : calibration_models()) {
        if (m.is_inverse_gaussian()) {
            out.push_back(m);
        }
    }
    return out;
}

std::string label(const SubordinatorModel& m)
{
    return m.describe();
}

Json spec_json(const SubordinatedProcessSpec& spec)
{
    Json j = model_to_json(spec.model());
    j["dimension"] = spec.dimension();
    return j;
}

std::vector<SubordinatedProcessSpec> bessel_specs(int d)
{
    return {
        {SubordinatorModel{TemperedStableParams(0.3, 1.0)}, d},
        {SubordinatorModel{TemperedStableParams(0.5, 2.0)}, d},
        {SubordinatorModel{TemperedStableParams(0.7, 0.5)}, d},
        {SubordinatorModel{InverseGaussianParams(1.0, 1.0)}, d},
        {SubordinatorModel{InverseGaussianParams(2.0, 0.5)}, d},
    };
}

// Least-squares slope of log f against log r on n log-spaced points.
double loglog_slope(const std::function<double(double)>& f, double r_lo, double r_hi, int n = 5)
{
    double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
    for (int i = 0; i < n; ++i) {
        const double lx = std::log(r_lo) + (std::log(r_hi) - std::log(r_lo)) * i / (n - 1);
        const double ly = std::log(f(std::exp(lx)));
        sx += lx;
        sy += ly;
        sxx += lx * lx;
        sxy += lx * ly;
    }
    return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

void laplace_identity(SuiteBuilder& b)
{
    const QuadratureConfig outer;
    const QuadratureConfig inner = numerics::inner_config(outer);
    auto models = tss_grid();
    for (const auto& m : ig_grid()) {
        models.push_back(m);
    }
    for (const auto& m : models) {
        for (double s : kSValues) {
            b.check("laplace:" + label(m) + ":s=" + format_double(s),
                    {{"model", model_to_json(m)}, {"s", s}}, 1.0,
                    [&] {
                        const numerics::Integrand u = [&](double t) {
                            return potential_density_exact(m, t, inner);
                        };
                        const double lt = numerics::laplace_transform_numeric(
                            u, s, outer, potential_singularity_exponent(m));
                        return lt * laplace_exponent(m, s);
                    },
                    1e-6);
        }
    }
}

void levy_khintchine(SuiteBuilder& b)
{
    auto models = tss_grid();
    for (const auto& m : ig_grid()) {
        models.push_back(m);
    }
    for (const auto& m : models) {
        for (double s : kSValues) {
            const double phi = laplace_exponent(m, s);
            b.check("levy-khintchine:" + label(m) + ":s=" + format_double(s),
                    {{"model", model_to_json(m)}, {"s", s}}, phi,
                    [&] {
                        const numerics::Integrand g = [&](double x) {
                            return -std::expm1(-s * x) * levy_density(m, x);
                        };
                        return numerics::integrate_semi_infinite(g, QuadratureConfig{},
                                                                 levy_singularity_exponent(m))
                            .value;
                    },
                    1e-8 * (1.0 + phi));
        }
    }
}

void bernstein_shape(SuiteBuilder& b)
{
    for (const auto& m : calibration_models()) {
        b.check("bernstein:" + label(m), {{"model", model_to_json(m)}}, 0.0,
                [&] {
                    int violations = 0;
                    for (int k = 0; k <= 14; ++k) {
                        const double s = 0.01 * std::ldexp(1.0, k);
                        const double h = 1e-3 * s;
                        const double lo = laplace_exponent(m, s - h);
                        const double mid = laplace_exponent(m, s);
                        const double hi = laplace_exponent(m, s + h);
                        violations += !(mid > 0.0) + !(hi - lo > 0.0) + !(hi - 2.0 * mid + lo < 0.0);
                    }
                    return static_cast<double>(violations);
                },
                0.0);
    }
}

void complete_monotonicity(SuiteBuilder& b)
{
    const auto xs = make_grid(1e-3, 30.0, 41, GridSpacing::Log);
    for (const auto& m : calibration_models()) {
        b.check("monotone:" + label(m), {{"model", model_to_json(m)}}, 0.0,
                [&] {
                    std::vector<double> u;
                    for (double x : xs) {
                        u.push_back(potential_density_exact(m, x));
                    }
                    int violations = 0;
                    double prev_slope = -std::numeric_limits<double>::infinity();
                    for (std::size_t i = 0; i + 1 < xs.size(); ++i) {
                        const double dx = xs[i + 1] - xs[i];
                        const double slope = (u[i + 1] - u[i]) / dx;
                        const double slack = 8.0 * std::numeric_limits<double>::epsilon() * u[i] / dx;
                        violations += !(u[i] >= 0.0) + !(slope <= 0.0) + !(slope >= prev_slope - slack);
                        prev_slope = slope;
                    }
                    return static_cast<double>(violations);
                },
                0.0);
    }
}

void heat_kernel_normalization(SuiteBuilder& b)
{
    for (int d : {1, 2, 3}) {
        for (double t : {0.1, 1.0, 10.0}) {
            b.check("heat-kernel-mass:d=" + std::to_string(d) + ":t=" + format_double(t),
                    {{"dimension", d}, {"t", t}}, 1.0,
                    [&] {
                        const double dd = d;
                        const double area = 2.0 * std::pow(std::numbers::pi, 0.5 * dd) / std::tgamma(0.5 * dd);
                        const numerics::Integrand f = [&](double r) {
                            return area * std::pow(r, dd - 1.0) * heat_kernel_radial(d, t, r);
                        };
                        return numerics::integrate_semi_infinite(
                                   f, QuadratureConfig{}.with_tail_knot(2.0 * std::sqrt(t)))
                            .value;
                    },
                    1e-10);
        }
    }
}

void equivalence(SuiteBuilder& b)
{
    for (double theta : {0.5, 1.0, 2.0}) {
        const SubordinatorModel tss{TemperedStableParams(0.5, theta)};
        const SubordinatorModel ig{tss_ig_equivalent(theta)};
        for (double x : {0.01, 0.1, 1.0, 10.0, 100.0}) {
            const double expected = potential_density_exact(ig, x);
            b.check("equivalence:u:theta=" + format_double(theta) + ":x=" + format_double(x),
                    {{"theta", theta}, {"x", x}}, expected,
                    [&] { return potential_density_exact(tss, x); }, 1e-6, "rel");
        }
        const SubordinatedProcessSpec nts{tss, 3};
        const SubordinatedProcessSpec nig{ig, 3};
        for (double r : {0.1, 1.0, 10.0}) {
            const Json in = {{"theta", theta}, {"dimension", 3}, {"r", r}};
            b.check("equivalence:G:theta=" + format_double(theta) + ":r=" + format_double(r), in,
                    green_function(nig, r), [&] { return green_function(nts, r); }, 1e-6, "rel");
            b.check("equivalence:J:theta=" + format_double(theta) + ":r=" + format_double(r), in,
                    jump_density(nig, r), [&] { return jump_density(nts, r); }, 1e-6, "rel");
        }
    }
}

void bessel_vs_quadrature(SuiteBuilder& b)
{
    for (int d : {1, 2, 3}) {
        for (const auto& spec : bessel_specs(d)) {
            for (double r : {0.01, 0.1, 1.0, 10.0}) {
                Json in = spec_json(spec);
                in["r"] = r;
                b.check("bessel:" + label(spec.model()) + ":d=" + std::to_string(d) +
                            ":r=" + format_double(r),
                        in, jump_density(spec, r), [&] { return jump_density_bessel(spec, r); },
                        1e-8, "rel");
            }
        }
    }
}

void asymptotic_ratio(SuiteBuilder& b)
{
    for (const auto& e : calibrated_thresholds().entries) {
        const auto& m = e.model;
        for (double x : {e.x_lo, 0.1 * e.x_lo}) {
            b.check("u-ratio:zero:" + label(m) + ":x=" + format_double(x),
                    {{"model", model_to_json(m)}, {"regime", "zero"}, {"x", x}}, 1.0,
                    [&] {
                        return potential_density_exact(m, x) /
                               potential_density_asymptotic(m, x, AsymptoticRegime::NearZero);
                    },
                    0.01);
        }
        for (double x : {e.x_hi, 10.0 * e.x_hi}) {
            b.check("u-ratio:infinity:" + label(m) + ":x=" + format_double(x),
                    {{"model", model_to_json(m)}, {"regime", "infinity"}, {"x", x}}, 1.0,
                    [&] {
                        return potential_density_exact(m, x) /
                               potential_density_asymptotic(m, x, AsymptoticRegime::NearInfinity);
                    },
                    0.01);
        }
    }

    const SubordinatedProcessSpec nts1{SubordinatorModel{TemperedStableParams(0.5, 1.0)}, 1};
    b.check("J-ratio:infinity:nts-d1:r=50", spec_json(nts1), 1.0,
            [&] {
                return jump_density(nts1, 50.0) /
                       jump_density_asymptotic(nts1, 50.0, AsymptoticRegime::NearInfinity);
            },
            0.02);

    for (const auto& spec : {SubordinatedProcessSpec{SubordinatorModel{TemperedStableParams(0.5, 1.0)}, 3},
                             SubordinatedProcessSpec{SubordinatorModel{InverseGaussianParams(1.0, 1.0)}, 3}}) {
        for (auto [regime, r] : {std::pair{AsymptoticRegime::NearZero, 1e-3},
                                 std::pair{AsymptoticRegime::NearInfinity, 50.0}}) {
            Json in = spec_json(spec);
            in["regime"] = regime_name(regime);
            in["r"] = r;
            b.check("G-ratio:" + regime_name(regime) + ":" + label(spec.model()), in, 1.0,
                    [&] { return green_function(spec, r) / green_asymptotic(spec, r, regime); }, 0.05);
        }
    }
}

void power_laws(SuiteBuilder& b)
{
    for (int d : {1, 2, 3}) {
        for (const auto& spec : bessel_specs(d)) {
            const auto& m = spec.model();
            const double expected = m.is_tempered_stable()
                                        ? -(2.0 * m.tempered_stable().alpha() + d)
                                        : -(d + 1.0);
            b.check("slope:J:zero:" + label(m) + ":d=" + std::to_string(d), spec_json(spec), expected,
                    [&] {
                        return loglog_slope([&](double r) { return jump_density(spec, r); }, 1e-4, 1e-2);
                    },
                    0.02);
        }
    }
    for (const auto& m : {SubordinatorModel{TemperedStableParams(0.5, 1.0)},
                          SubordinatorModel{InverseGaussianParams(1.0, 1.0)}}) {
        const SubordinatedProcessSpec spec{m, 3};
        const double small = m.is_tempered_stable() ? 2.0 * m.tempered_stable().alpha() - 3.0 : -2.0;
        b.check("slope:G:zero:" + label(m) + ":d=3", spec_json(spec), small,
                [&] { return loglog_slope([&](double r) { return green_function(spec, r); }, 1e-4, 1e-2); },
                0.02);
        b.check("slope:G:infinity:" + label(m) + ":d=3", spec_json(spec), -1.0,
                [&] { return loglog_slope([&](double r) { return green_function(spec, r); }, 50.0, 200.0); },
                0.02);
    }
}

void adjudicate_constants(SuiteBuilder& b)
{
    const SubordinatorModel tss{TemperedStableParams(0.5, 1.0)};
    const SubordinatorModel ig{InverseGaussianParams(1.0, 1.0)};

    for (double x : {0.1, 1.0, 10.0}) {
        const SubordinatorModel twin{tss_ig_equivalent(1.0)};
        b.adjudicate("tss_potential_density_branch_only", {{"model", model_to_json(tss)}, {"x", x}},
                     [&] { return potential_density_exact(twin, x); },
                     [&] { return tss_branch_cut_term(tss.tempered_stable(), x); },
                     [&] { return potential_density_exact(tss, x); });
    }

    struct Clause {
        const char* name;
        SubordinatorModel model;
        AsymptoticRegime regime;
        double r;
    };
    // Large-r clauses are compared at K argument 500, where the next term of
    // the K expansion is below the 5e-3 band and J is still representable.
    const std::vector<Clause> clauses = {
        {"nts_jump_density_near_zero", tss, AsymptoticRegime::NearZero, 1e-4},
        {"nts_jump_density_near_infinity", tss, AsymptoticRegime::NearInfinity, 500.0},
        {"nig_jump_density_near_zero", ig, AsymptoticRegime::NearZero, 1e-4},
        {"nig_jump_density_near_infinity", ig, AsymptoticRegime::NearInfinity, 500.0 * std::numbers::sqrt2},
    };
    for (const auto& c : clauses) {
        for (int d : {1, 3}) {
            const SubordinatedProcessSpec spec{c.model, d};
            Json in = spec_json(spec);
            in["regime"] = regime_name(c.regime);
            in["r"] = c.r;
            b.adjudicate(c.name, in, [&] { return jump_density(spec, c.r); },
                         [&] { return jump_density_asymptotic(spec, c.r, c.regime, ConstantSource::Paper); },
                         [&] { return jump_density_asymptotic(spec, c.r, c.regime, ConstantSource::Derived); });
        }
    }
}

using SuiteFn = void (*)(SuiteBuilder&);

const std::vector<std::pair<std::string, SuiteFn>>& suites()
{
    static const std::vector<std::pair<std::string, SuiteFn>> table = {
        {"laplace-identity", laplace_identity},
        {"levy-khintchine", levy_khintchine},
        {"bernstein-shape", bernstein_shape},
        {"complete-monotonicity", complete_monotonicity},
        {"heat-kernel-normalization", heat_kernel_normalization},
        {"equivalence", equivalence},
        {"bessel-vs-quadrature", bessel_vs_quadrature},
        {"asymptotic-ratio", asymptotic_ratio},
        {"power-laws", power_laws},
        {"adjudicate-constants", adjudicate_constants},
    };
    return table;
}

double rel_error(double value, double oracle)
{
    return std::abs(value - oracle) / std::abs(oracle);
}

}  // namespace

double Adjudication::paper_rel_error() const
{
    return rel_error(paper, oracle);
}

double Adjudication::derived_rel_error() const
{
    return rel_error(derived, oracle);
}

std::string Adjudication::verdict() const
{
    const bool p = paper_rel_error() <= tolerance;
    const bool d = derived_rel_error() <= tolerance;
    if (p && d) {
        return "both";
    }
    if (p) {
        return "paper";
    }
    return d ? "derived" : "neither";
}

int VerifyReport::passed() const
{
    int n = 0;
    for (const auto& c : cases) {
        n += c.pass;
    }
    return n;
}

int VerifyReport::failed() const
{
    return static_cast<int>(cases.size()) - passed();
}

const std::vector<std::string>& suite_names()
{
    static const std::vector<std::string> names = [] {
        std::vector<std::string> out;
        for (const auto& [name, fn] : suites()) {
            out.push_back(name);
        }
        return out;
    }();
    return names;
}

VerifyReport run_suite(const std::string& name, double tolerance_scale)
{
    if (!(tolerance_scale > 0.0) || !std::isfinite(tolerance_scale)) {
        throw ParameterError("run_suite", "tolerance scale must be positive and finite");
    }
    for (const auto& [suite, fn] : suites()) {
        if (suite == name) {
            SuiteBuilder b(suite, tolerance_scale);
            fn(b);
            return b.take();
        }
    }
    throw ParameterError("run_suite", "unknown suite " + name);
}

Json report_to_json(const VerifyReport& r)
{
    Json j;
    j["suite"] = r.suite;
    j["cases"] = Json::array();
    for (const auto& c : r.cases) {
        Json cj;
        cj["case_id"] = c.case_id;
        cj["inputs"] = c.inputs;
        cj["expected"] = c.expected;
        cj["actual"] = c.actual;
        cj["tolerance"] = c.tolerance;
        cj["metric"] = c.metric;
        cj["pass"] = c.pass;
        if (!c.error.empty()) {
            cj["error"] = c.error;
        }
        j["cases"].push_back(cj);
    }
    Json adj = Json::array();
    for (const auto& a : r.adjudications) {
        Json aj;
        aj["clause"] = a.clause;
        aj["inputs"] = a.inputs;
        aj["oracle"] = a.oracle;
        aj["paper"] = a.paper;
        aj["derived"] = a.derived;
        aj["paper_rel_error"] = a.paper_rel_error();
        aj["derived_rel_error"] = a.derived_rel_error();
        aj["tolerance"] = a.tolerance;
        aj["verdict"] = a.verdict();
        adj.push_back(aj);
    }
    j["summary"] = {{"passed", r.passed()}, {"failed", r.failed()}, {"adjudications", adj}};
    return j;
}

}  // namespace subpot::cli
