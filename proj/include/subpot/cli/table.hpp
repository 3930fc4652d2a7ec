#pragma once

#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "subpot/cli/json.hpp"
#include "subpot/heatkernel.hpp"

namespace subpot::cli {

inline constexpr const char* kToolVersion = "0.1.0";

enum class Quantity {
    PotentialDensity,
    PotentialDensityAsym,
    LevyDensity,
    GreenFunction,
    GreenAsym,
    JumpDensity,
    JumpDensityBessel,
    JumpDensityAsym,
};

/// Accepts "potential-density" or "potential_density" spellings.
std::optional<Quantity> parse_quantity(const std::string& name);
/// Underscore spelling, as stored in tables.
std::string quantity_name(Quantity q);
bool needs_dimension(Quantity q);
bool needs_regime(Quantity q);

/// Everything needed to evaluate one quantity at a point.
struct QuantityRequest {
    Quantity quantity;
    SubordinatorModel model;
    std::optional<int> dimension;
    std::optional<AsymptoticRegime> regime;
    ConstantSource constant_source = ConstantSource::Derived;
    numerics::QuadratureConfig config;
};

/// Throws ParameterError when the dimension or regime the quantity needs is
/// missing.
double evaluate(const QuantityRequest& request, double x);

enum class GridSpacing { Linear, Log };

/// Throws ParameterError unless 0 < min < max, count >= 2.
std::vector<double> make_grid(double min, double max, int count, GridSpacing spacing);

struct DensityTable {
    std::string quantity;
    Json model_descriptor;
    std::vector<double> grid;
    std::vector<double> values;
    Json meta;
};

/// Evaluates `request` on `grid`. A numerical failure at one abscissa is
/// rethrown as subpot::Error naming the original operation and the abscissa.
DensityTable build_table(const QuantityRequest& request, const std::vector<double>& grid,
                         Json meta);

Json table_to_json(const DensityTable& table);
/// Throws ParameterError if the document is not a valid DensityTable.
DensityTable table_from_json(const Json& j);

/// "x,value" rows preceded by "# key=value" lines flattened from the
/// descriptor and meta.
void write_csv(const DensityTable& table, std::ostream& out);

std::string regime_name(AsymptoticRegime regime);
std::string constant_source_name(ConstantSource source);
Json config_to_json(const numerics::QuadratureConfig& config);

}  // namespace subpot::cli
