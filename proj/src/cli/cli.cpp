#include "subpot/cli.hpp"

#include <algorithm>
#include <fstream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>

#include "subpot/cli/json.hpp"
#include "subpot/cli/simulate.hpp"
#include "subpot/cli/table.hpp"
#include "subpot/cli/thresholds.hpp"
#include "subpot/cli/verify.hpp"
#include "subpot/errors.hpp"

namespace subpot::cli {

namespace {

struct ModelArgs {
    std::string kind;
    std::optional<double> alpha;
    std::optional<double> theta;
    std::optional<double> delta;
    std::optional<double> lambda;

    void add_to(CLI::App& app)
    {
        app.add_option("--model", kind, "Subordinator")
            ->required()
            ->check(CLI::IsMember({"tss", "ig"}));
        app.add_option("--alpha", alpha, "TSS index in (0, 1)");
        app.add_option("--theta", theta, "TSS tempering, > 0");
        app.add_option("--delta", delta, "IG scale, > 0");
        app.add_option("--lambda", lambda, "IG drift, > 0");
    }

    SubordinatorModel build() const
    {
        if (kind == "tss") {
            if (!alpha || !theta) {
                throw ParameterError("arguments", "--model tss needs --alpha and --theta");
            }
            return SubordinatorModel{TemperedStableParams(*alpha, *theta)};
        }
        if (!delta || !lambda) {
            throw ParameterError("arguments", "--model ig needs --delta and --lambda");
        }
        return SubordinatorModel{InverseGaussianParams(*delta, *lambda)};
    }
};

struct QuantityArgs {
    std::string quantity;
    std::optional<int> dim;
    std::optional<std::string> regime;
    std::string constant_source = "derived";
    double tolerance_scale = 1.0;

    void add_to(CLI::App& app)
    {
        std::vector<std::string> names;
        for (auto q : {Quantity::PotentialDensity, Quantity::PotentialDensityAsym, Quantity::LevyDensity,
                       Quantity::GreenFunction, Quantity::GreenAsym, Quantity::JumpDensity,
                       Quantity::JumpDensityBessel, Quantity::JumpDensityAsym}) {
            auto n = quantity_name(q);
            names.push_back(n);
            std::replace(n.begin(), n.end(), '_', '-');
            names.push_back(n);
        }
        app.add_option("--quantity", quantity, "Quantity to evaluate")->required()->check(CLI::IsMember(names));
        app.add_option("--dim", dim, "Spatial dimension d >= 1");
        app.add_option("--regime", regime, "Asymptotic regime")->check(CLI::IsMember({"zero", "infinity"}));
        app.add_option("--constant-source", constant_source, "Asymptote constants")
            ->check(CLI::IsMember({"paper", "derived"}));
        app.add_option("--tolerance-scale", tolerance_scale, "Multiplier on quadrature tolerances")
            ->check(CLI::PositiveNumber);
    }

    QuantityRequest build(const ModelArgs& m) const
    {
        QuantityRequest req{*parse_quantity(quantity), m.build(), dim, std::nullopt,
                            constant_source == "paper" ? ConstantSource::Paper : ConstantSource::Derived,
                            numerics::QuadratureConfig{}.scaled(tolerance_scale)};
        if (regime) {
            req.regime = *regime == "zero" ? AsymptoticRegime::NearZero : AsymptoticRegime::NearInfinity;
        }
        if (needs_dimension(req.quantity) && !dim) {
            throw ParameterError("arguments", "--quantity " + quantity + " needs --dim");
        }
        if (needs_regime(req.quantity) && !regime) {
            throw ParameterError("arguments", "--quantity " + quantity + " needs --regime");
        }
        if (dim) {
            SubordinatedProcessSpec(req.model, *dim);
        }
        return req;
    }

    Json meta(const QuantityRequest& req) const
    {
        Json j;
        j["tool_version"] = kToolVersion;
        if (req.regime) {
            j["regime"] = regime_name(*req.regime);
        }
        if (req.quantity == Quantity::JumpDensityAsym) {
            j["constant_source"] = constant_source_name(req.constant_source);
        }
        j["tolerance_scale"] = tolerance_scale;
        j["tolerances"] = config_to_json(req.config);
        return j;
    }
};

void emit(const std::string& text, const std::string& path, std::ostream& out)
{
    if (path.empty()) {
        out << text;
        return;
    }
    std::ofstream file(path, std::ios::binary);
    if (!(file << text)) {
        throw Error("output", "cannot write " + path);
    }
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err)
{
    CLI::App app{"Potential densities, Green functions and jump densities of subordinators"};
    app.require_subcommand(1);

    ModelArgs model;
    QuantityArgs quantity;
    std::string out_path;

    auto* eval = app.add_subcommand("eval", "Evaluate one quantity at one point");
    model.add_to(*eval);
    quantity.add_to(*eval);
    double x = 0.0;
    eval->add_option("--x", x, "Evaluation point (> 0)")->required();

    auto* table = app.add_subcommand("table", "Evaluate a quantity on a grid");
    ModelArgs table_model;
    QuantityArgs table_quantity;
    table_model.add_to(*table);
    table_quantity.add_to(*table);
    double grid_min = 0.0, grid_max = 0.0;
    int grid_count = 0;
    std::string grid_spacing = "log";
    std::string format = "csv";
    table->add_option("--grid-min", grid_min, "Smallest abscissa")->required();
    table->add_option("--grid-max", grid_max, "Largest abscissa")->required();
    table->add_option("--grid-count", grid_count, "Number of points")->required();
    table->add_option("--grid-spacing", grid_spacing, "lin or log")->check(CLI::IsMember({"lin", "log"}));
    table->add_option("--format", format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
    table->add_option("--out", out_path, "Write to FILE instead of stdout");

    auto* verify = app.add_subcommand("verify", "Run verification suites");
    std::vector<std::string> suites;
    double verify_scale = 1.0;
    verify->add_option("--suite", suites, "Suite name (repeatable; default all)")
        ->check(CLI::IsMember(suite_names()));
    verify->add_option("--tolerance-scale", verify_scale, "Multiplier on case tolerances")
        ->check(CLI::PositiveNumber);
    verify->add_option("--out", out_path, "Write to FILE instead of stdout");

    auto* simulate = app.add_subcommand("simulate", "Monte Carlo estimate against its quadrature target");
    ModelArgs sim_model;
    sim_model.add_to(*simulate);
    std::string estimator;
    std::optional<int> sim_dim;
    SimulationRequest sim;
    double dt = 1e-3, horizon = 50.0;
    std::uint64_t n_paths = 10000;
    simulate->add_option("--estimator", estimator, "Estimator")
        ->required()
        ->check(CLI::IsMember({"potential-measure", "green-function", "endpoint-laplace"}));
    simulate->add_option("--dim", sim_dim, "Spatial dimension (green-function)");
    simulate->add_option("--a", sim.a, "Interval start (potential-measure)");
    simulate->add_option("--b", sim.b, "Interval end (potential-measure)");
    simulate->add_option("--x", sim.r, "Distance of the ball centre (green-function)");
    simulate->add_option("--ball-radius", sim.ball_radius, "Ball radius (green-function)");
    simulate->add_option("--s", sim.s, "Laplace argument (endpoint-laplace)");
    simulate->add_option("--seed", sim.seed, "RNG seed");
    simulate->add_option("--n-paths", n_paths, "Number of paths");
    simulate->add_option("--dt", dt, "Time step");
    simulate->add_option("--horizon", horizon, "Simulated time per path");
    simulate->add_option("--out", out_path, "Write to FILE instead of stdout");

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? 0 : 2;
    }

    try {
        if (eval->parsed()) {
            const auto req = quantity.build(model);
            out << format_double(evaluate(req, x)) << "\n";
            return 0;
        }
        if (table->parsed()) {
            const auto req = table_quantity.build(table_model);
            const auto spacing = grid_spacing == "lin" ? GridSpacing::Linear : GridSpacing::Log;
            const auto grid = make_grid(grid_min, grid_max, grid_count, spacing);
            Json meta = table_quantity.meta(req);
            meta["grid"] = {{"min", grid_min}, {"max", grid_max}, {"count", grid_count}, {"spacing", grid_spacing}};
            const auto t = build_table(req, grid, std::move(meta));
            std::ostringstream os;
            if (format == "json") {
                os << dump_canonical(table_to_json(t));
            } else {
                write_csv(t, os);
            }
            emit(os.str(), out_path, out);
            return 0;
        }
        if (verify->parsed()) {
            if (suites.empty()) {
                suites = suite_names();
            }
            Json doc;
            doc["tool_version"] = kToolVersion;
            doc["tolerance_scale"] = verify_scale;
            doc["reports"] = Json::array();
            int failed = 0;
            for (const auto& name : suites) {
                const auto report = run_suite(name, verify_scale);
                failed += report.failed();
                doc["reports"].push_back(report_to_json(report));
            }
            emit(dump_canonical(doc), out_path, out);
            return failed == 0 ? 0 : 1;
        }
        sim.estimator = *parse_estimator(estimator);
        sim.model = sim_model.build();
        sim.dimension = sim_dim;
        sim.paths = montecarlo::PathConfig(dt, horizon, n_paths);
        const auto outcome = run_simulation(sim);
        emit(dump_canonical(outcome.report), out_path, out);
        return outcome.pass ? 0 : 1;
    } catch (const ParameterError& e) {
        err << "usage error: " << e.what() << "\n";
        return 2;
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return 3;
    }
}

}  // namespace subpot::cli
