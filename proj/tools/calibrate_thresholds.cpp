// Regenerates data/asymptotic_thresholds.json:
//   calibrate_thresholds > data/asymptotic_thresholds.json
#include <iostream>

#include "subpot/cli/json.hpp"
#include "subpot/cli/thresholds.hpp"
#include "subpot/errors.hpp"

int main()
{
    using namespace subpot::cli;
    ThresholdTable table;
    try {
        for (const auto& model : calibration_models()) {
            table.entries.push_back(calibrate_threshold(model, table));
            std::cerr << model.describe() << ": x_lo=" << format_double(table.entries.back().x_lo)
                      << " x_hi=" << format_double(table.entries.back().x_hi) << "\n";
        }
    } catch (const subpot::Error& e) {
        std::cerr << e.what() << "\n";
        return 3;
    }
    std::cout << dump_canonical(thresholds_to_json(table));
    return 0;
}
