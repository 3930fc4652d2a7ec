#include <charconv>
#include <cmath>

#include "subpot/cli/json.hpp"

namespace subpot::cli {

namespace {

void write(const Json& v, int depth, std::string& out)
{
    const std::string pad(static_cast<std::size_t>(2 * (depth + 1)), ' ');
    const std::string close_pad(static_cast<std::size_t>(2 * depth), ' ');
    switch (v.type()) {
    case Json::value_t::object: {
        if (v.empty()) {
            out += "{}";
            return;
        }
        out += "{\n";
        bool first = true;
        for (auto it = v.begin(); it != v.end(); ++it) {
            if (!first) {
                out += ",\n";
            }
            first = false;
            out += pad;
            out += Json(it.key()).dump();
            out += ": ";
            write(it.value(), depth + 1, out);
        }
        out += "\n" + close_pad + "}";
        return;
    }
    case Json::value_t::array: {
        if (v.empty()) {
            out += "[]";
            return;
        }
        out += "[\n";
        for (std::size_t i = 0; i < v.size(); ++i) {
            if (i > 0) {
                out += ",\n";
            }
            out += pad;
            write(v[i], depth + 1, out);
        }
        out += "\n" + close_pad + "]";
        return;
    }
    case Json::value_t::number_float: {
        const double d = v.get<double>();
        if (std::isfinite(d)) {
            out += format_double(d);
        } else {
            out += Json(format_double(d)).dump();
        }
        return;
    }
    default:
        out += v.dump(-1, ' ', false, Json::error_handler_t::strict);
    }
}

}  // namespace

std::string format_double(double v)
{
    if (std::isnan(v)) {
        return "nan";
    }
    if (std::isinf(v)) {
        return v > 0 ? "inf" : "-inf";
    }
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::general, 17);
    std::string s(buf, res.ptr);
    // Keep floats recognisable as floats after a parse round trip.
    if (s.find_first_of(".en") == std::string::npos) {
        s += ".0";
    }
    return s;
}

std::string dump_canonical(const Json& value)
{
    std::string out;
    write(value, 0, out);
    out += "\n";
    return out;
}

Json parse_json(const std::string& text)
{
    return Json::parse(text);
}

}  // namespace subpot::cli
