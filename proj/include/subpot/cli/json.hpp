#pragma once

#include <string>

#include <json.hpp>

namespace subpot::cli {

using Json = nlohmann::ordered_json;

/// 17 significant digits, '.' separator,
/// independent of the C locale. Non-finite values become "nan", "inf", "-inf".
std::string format_double(double v);

/// Canonical serialization: members in insertion order, two-space indent,
/// floats through format_double, trailing newline. Parsing the output with
/// parse_json and dumping again reproduces it byte for byte.
std::string dump_canonical(const Json& value);

Json parse_json(const std::string& text);

}  // namespace subpot::cli
