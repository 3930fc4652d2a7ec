#include "subpot/cli/table.hpp"

#include <algorithm>
#include <cmath>

#include "subpot/cli/thresholds.hpp"
#include "subpot/errors.hpp"

namespace subpot::cli {

namespace {

struct QuantityInfo {
    Quantity q;
    const char* name;
    bool dimension;
    bool regime;
};

constexpr QuantityInfo kQuantities[] = {
    {Quantity::PotentialDensity, "potential_density", false, false},
    {Quantity::PotentialDensityAsym, "potential_density_asym", false, true},
    {Quantity::LevyDensity, "levy_density", false, false},
    {Quantity::GreenFunction, "green_function", true, false},
    {Quantity::GreenAsym, "green_asym", true, true},
    {Quantity::JumpDensity, "jump_density", true, false},
    {Quantity::JumpDensityBessel, "jump_density_bessel", true, false},
    {Quantity::JumpDensityAsym, "jump_density_asym", true, true},
};

const QuantityInfo& info(Quantity q)
{
    return *std::find_if(std::begin(kQuantities), std::end(kQuantities),
                         [q](const QuantityInfo& i) { return i.q == q; });
}

void flatten(const Json& j, const std::string& prefix, std::ostream& out)
{
    if (j.is_object()) {
        for (auto it = j.begin(); it != j.end(); ++it) {
            flatten(it.value(), prefix.empty() ? it.key() : prefix + "." + it.key(), out);
        }
        return;
    }
    out << "# " << prefix << "=";
    if (j.is_number_float()) {
        out << format_double(j.get<double>());
    } else if (j.is_string()) {
        out << j.get<std::string>();
    } else {
        out << j.dump();
    }
    out << "\n";
}

}  // namespace

std::optional<Quantity> parse_quantity(const std::string& name)
{
    std::string key = name;
    std::replace(key.begin(), key.end(), '-', '_');
    for (const auto& i : kQuantities) {
        if (key == i.name) {
            return i.q;
        }
    }
    return std::nullopt;
}

std::string quantity_name(Quantity q)
{
    return info(q).name;
}

bool needs_dimension(Quantity q)
{
    return info(q).dimension;
}

bool needs_regime(Quantity q)
{
    return info(q).regime;
}

std::string regime_name(AsymptoticRegime regime)
{
    return regime == AsymptoticRegime::NearZero ? "zero" : "infinity";
}

std::string constant_source_name(ConstantSource source)
{
    return source == ConstantSource::Paper ? "paper" : "derived";
}

Json config_to_json(const numerics::QuadratureConfig& config)
{
    return {{"abs_tol", config.abs_tol()},
            {"rel_tol", config.rel_tol()},
            {"max_subdivisions", config.max_subdivisions()},
            {"tail_knot", config.tail_knot()}};
}

double evaluate(const QuantityRequest& req, double x)
{
    constexpr const char* op = "evaluate";
    if (needs_dimension(req.quantity) && !req.dimension) {
        throw ParameterError(op, quantity_name(req.quantity) + " needs a dimension");
    }
    if (needs_regime(req.quantity) && !req.regime) {
        throw ParameterError(op, quantity_name(req.quantity) + " needs a regime");
    }
    const auto spec = [&] { return SubordinatedProcessSpec(req.model, *req.dimension); };
    switch (req.quantity) {
    case Quantity::PotentialDensity:
        return potential_density_exact(req.model, x, req.config);
    case Quantity::PotentialDensityAsym:
        return potential_density_asymptotic(req.model, x, *req.regime);
    case Quantity::LevyDensity:
        return levy_density(req.model, x);
    case Quantity::GreenFunction:
        return green_function(spec(), x, req.config);
    case Quantity::GreenAsym:
        return green_asymptotic(spec(), x, *req.regime);
    case Quantity::JumpDensity:
        return jump_density(spec(), x, req.config);
    case Quantity::JumpDensityBessel:
        return jump_density_bessel(spec(), x);
    case Quantity::JumpDensityAsym:
        return jump_density_asymptotic(spec(), x, *req.regime, req.constant_source);
    }
    throw ParameterError(op, "unknown quantity");
}

std::vector<double> make_grid(double min, double max, int count, GridSpacing spacing)
{
    if (!(min > 0.0) || !(max > min) || !std::isfinite(max)) {
        throw ParameterError("make_grid", "require 0 < grid-min < grid-max < inf");
    }
    if (count < 2) {
        throw ParameterError("make_grid", "grid-count must be at least 2");
    }
    std::vector<double> grid(static_cast<std::size_t>(count));
    const double n = count - 1;
    for (int i = 0; i < count; ++i) {
        if (spacing == GridSpacing::Linear) {
            grid[i] = min + (max - min) * (i / n);
        } else {
            grid[i] = std::exp(std::log(min) + (std::log(max) - std::log(min)) * (i / n));
        }
    }
    grid.front() = min;
    grid.back() = max;
    for (int i = 1; i < count; ++i) {
        if (!(grid[i] > grid[i - 1])) {
            throw ParameterError("make_grid", "grid is not strictly increasing at this resolution");
        }
    }
    return grid;
}

DensityTable build_table(const QuantityRequest& req, const std::vector<double>& grid, Json meta)
{
    DensityTable table;
    table.quantity = quantity_name(req.quantity);
    table.model_descriptor = model_to_json(req.model);
    if (needs_dimension(req.quantity) && req.dimension) {
        table.model_descriptor["dimension"] = *req.dimension;
    }
    table.grid = grid;
    table.values.reserve(grid.size());
    for (double x : grid) {
        try {
            table.values.push_back(evaluate(req, x));
        } catch (const ParameterError&) {
            throw;
        } catch (const Error& e) {
            throw Error(e.operation(), "at x=" + format_double(x) + ": " + e.what());
        }
    }
    table.meta = std::move(meta);
    return table;
}

Json table_to_json(const DensityTable& t)
{
    Json j;
    j["quantity"] = t.quantity;
    j["model_descriptor"] = t.model_descriptor;
    j["grid"] = t.grid;
    j["values"] = t.values;
    j["meta"] = t.meta;
    return j;
}

DensityTable table_from_json(const Json& j)
{
    DensityTable t;
    try {
        t.quantity = j.at("quantity").get<std::string>();
        t.model_descriptor = j.at("model_descriptor");
        t.grid = j.at("grid").get<std::vector<double>>();
        t.values = j.at("values").get<std::vector<double>>();
        t.meta = j.at("meta");
    } catch (const Json::exception& e) {
        throw ParameterError("table_from_json", e.what());
    }
    if (!parse_quantity(t.quantity)) {
        throw ParameterError("table_from_json", "unknown quantity " + t.quantity);
    }
    if (t.grid.size() != t.values.size()) {
        throw ParameterError("table_from_json", "grid and values differ in length");
    }
    for (std::size_t i = 0; i < t.grid.size(); ++i) {
        if (!(t.grid[i] > 0.0) || (i > 0 && !(t.grid[i] > t.grid[i - 1]))) {
            throw ParameterError("table_from_json", "grid must be positive and strictly increasing");
        }
    }
    return t;
}

void write_csv(const DensityTable& t, std::ostream& out)
{
    out << "# quantity=" << t.quantity << "\n";
    flatten(t.model_descriptor, "", out);
    flatten(t.meta, "", out);
    out << "x,value\n";
    for (std::size_t i = 0; i < t.grid.size(); ++i) {
        out << format_double(t.grid[i]) << "," << format_double(t.values[i]) << "\n";
    }
}

}  // namespace subpot::cli
