#pragma once

#include <string>
#include <vector>

#include "subpot/cli/json.hpp"

namespace subpot::cli {

struct VerifyCase {
    std::string case_id;
    Json inputs;
    double expected = 0.0;
    double actual = 0.0;
    double tolerance = 0.0;
    /// "abs": |actual - expected| <= tolerance; "rel": relative to |expected|.
    std::string metric = "abs";
    bool pass = false;
    /// Set when the computation itself failed; the case then fails.
    std::string error;
};

/// A published constant checked against the quadrature oracle alongside the
/// re-derived one. Never counted as a failure.
struct Adjudication {
    std::string clause;
    Json inputs;
    double oracle = 0.0;
    double paper = 0.0;
    double derived = 0.0;
    double tolerance = 0.0;

    double paper_rel_error() const;
    double derived_rel_error() const;
    /// "derived", "paper", "both" or "neither": the variants within tolerance.
    std::string verdict() const;
};

struct VerifyReport {
    std::string suite;
    std::vector<VerifyCase> cases;
    std::vector<Adjudication> adjudications;

    int passed() const;
    int failed() const;
};

const std::vector<std::string>& suite_names();

/// Runs one suite with every tolerance multiplied by `tolerance_scale`.
/// Throws ParameterError for an unknown suite name.
VerifyReport run_suite(const std::string& name, double tolerance_scale = 1.0);

Json report_to_json(const VerifyReport& report);

}  // namespace subpot::cli
