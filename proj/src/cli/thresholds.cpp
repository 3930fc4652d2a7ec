#include "subpot/cli/thresholds.hpp"

#include <cmath>
#include <string>

#include "subpot/errors.hpp"

namespace subpot::cli {

namespace detail {
extern const std::string_view kThresholdsJson;
}

namespace {

std::vector<double> scan_grid(const ThresholdTable& table)
{
    const double lo = std::log10(table.scan_min);
    const double hi = std::log10(table.scan_max);
    const int n = static_cast<int>(std::lround((hi - lo) * table.points_per_decade));
    std::vector<double> xs;
    for (int i = 0; i <= n; ++i) {
        xs.push_back(std::pow(10.0, lo + (hi - lo) * i / n));
    }
    return xs;
}

}  // namespace

AsymptoticThreshold calibrate_threshold(const SubordinatorModel& model, const ThresholdTable& table)
{
    const auto xs = scan_grid(table);
    auto in_band = [&](double x, AsymptoticRegime regime) {
        const double ratio =
            potential_density_exact(model, x) / potential_density_asymptotic(model, x, regime);
        return ratio >= table.band_lo && ratio <= table.band_hi;
    };
    double x_lo = 0.0;
    for (double x : xs) {
        if (!in_band(x, AsymptoticRegime::NearZero)) {
            break;
        }
        x_lo = x;
    }
    double x_hi = 0.0;
    for (auto it = xs.rbegin(); it != xs.rend(); ++it) {
        if (!in_band(*it, AsymptoticRegime::NearInfinity)) {
            break;
        }
        x_hi = *it;
    }
    if (x_lo == 0.0 || x_hi == 0.0) {
        throw ConvergenceError("calibrate_threshold",
                               "ratio never settles in band on the scan grid for " + model.describe(),
                               x_lo, x_hi);
    }
    return {model, x_lo, x_hi};
}

std::vector<SubordinatorModel> calibration_models()
{
    std::vector<SubordinatorModel> models;
    for (double alpha : {0.3, 0.5, 0.7}) {
        for (double theta : {0.5, 1.0, 2.0}) {
            models.emplace_back(TemperedStableParams(alpha, theta));
        }
    }
    for (double delta : {0.5, 1.0, 2.0}) {
        for (double lam : {0.5, 1.0, 2.0}) {
            models.emplace_back(InverseGaussianParams(delta, lam));
        }
    }
    return models;
}

Json model_to_json(const SubordinatorModel& model)
{
    Json j;
    if (model.is_tempered_stable()) {
        j["model"] = "tss";
        j["alpha"] = model.tempered_stable().alpha();
        j["theta"] = model.tempered_stable().theta();
    } else {
        j["model"] = "ig";
        j["delta"] = model.inverse_gaussian().delta();
        j["lambda"] = model.inverse_gaussian().lam();
    }
    return j;
}

SubordinatorModel model_from_json(const Json& j)
{
    try {
        const auto kind = j.at("model").get<std::string>();
        if (kind == "tss") {
            return SubordinatorModel{
                TemperedStableParams(j.at("alpha").get<double>(), j.at("theta").get<double>())};
        }
        if (kind == "ig") {
            return SubordinatorModel{
                InverseGaussianParams(j.at("delta").get<double>(), j.at("lambda").get<double>())};
        }
    } catch (const Json::exception& e) {
        throw ParameterError("model_from_json", e.what());
    }
    throw ParameterError("model_from_json", "unknown model kind");
}

Json thresholds_to_json(const ThresholdTable& table)
{
    Json j;
    j["band"] = Json::array({table.band_lo, table.band_hi});
    j["scan"] = {{"min", table.scan_min},
                 {"max", table.scan_max},
                 {"points_per_decade", table.points_per_decade}};
    j["entries"] = Json::array();
    for (const auto& e : table.entries) {
        Json entry = model_to_json(e.model);
        entry["x_lo"] = e.x_lo;
        entry["x_hi"] = e.x_hi;
        j["entries"].push_back(entry);
    }
    return j;
}

ThresholdTable thresholds_from_json(const Json& j)
{
    ThresholdTable table;
    try {
        table.band_lo = j.at("band").at(0).get<double>();
        table.band_hi = j.at("band").at(1).get<double>();
        table.scan_min = j.at("scan").at("min").get<double>();
        table.scan_max = j.at("scan").at("max").get<double>();
        table.points_per_decade = j.at("scan").at("points_per_decade").get<int>();
        for (const auto& e : j.at("entries")) {
            table.entries.push_back(
                {model_from_json(e), e.at("x_lo").get<double>(), e.at("x_hi").get<double>()});
        }
    } catch (const Json::exception& e) {
        throw ParameterError("thresholds_from_json", e.what());
    }
    return table;
}

const ThresholdTable& calibrated_thresholds()
{
    static const ThresholdTable table =
        thresholds_from_json(parse_json(std::string(detail::kThresholdsJson)));
    return table;
}

}  // namespace subpot::cli
