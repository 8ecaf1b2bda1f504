#pragma once

#include "divalg/numeric.hpp"

#include "json.hpp"

#include <string>

namespace divalg {

using Json = nlohmann::json;  // object keys stay sorted, so output is stable

/// Exact integers: plain JSON numbers while they fit, decimal strings past
/// 64 bits so nothing is ever rounded.
inline Json int_json(const Int& v) {
    if (v >= std::numeric_limits<std::int64_t>::min() &&
        v <= std::numeric_limits<std::int64_t>::max())
        return Json(static_cast<std::int64_t>(v));
    return Json(v.str());
}

inline Json vec_json(const Vec& v) {
    Json a = Json::array();
    for (const Int& x : v) a.push_back(int_json(x));
    return a;
}

inline Json qvec_json(const QVec& v) {
    Json a = Json::array();
    for (const Rat& x : v) a.push_back(rat_to_string(x));
    return a;
}

inline Json vec_list_json(const std::vector<Vec>& vs) {
    Json a = Json::array();
    for (const Vec& v : vs) a.push_back(vec_json(v));
    return a;
}

namespace detail {

inline bool scalar_array(const Json& j) {
    if (!j.is_array()) return false;
    for (const auto& e : j)
        if (e.is_structured()) return false;
    return true;
}

inline std::string scalar_to_string(const Json& j) {
    return j.is_string() ? j.get<std::string>() : j.dump();
}

inline void render_table(const Json& j, std::string& out, const std::string& indent) {
    if (j.is_object()) {
        for (const auto& [key, value] : j.items()) {
            if (value.is_structured() && !scalar_array(value)) {
                out += indent + key + ":\n";
                render_table(value, out, indent + "  ");
            } else if (scalar_array(value)) {
                out += indent + key + ":";
                for (const auto& e : value) out += " " + scalar_to_string(e);
                out += "\n";
            } else {
                out += indent + key + ": " + scalar_to_string(value) + "\n";
            }
        }
    } else if (j.is_array()) {
        for (const auto& e : j) {
            if (scalar_array(e)) {
                out += indent + "-";
                for (const auto& x : e) out += " " + scalar_to_string(x);
                out += "\n";
            } else if (e.is_structured()) {
                out += indent + "-\n";
                render_table(e, out, indent + "  ");
            } else {
                out += indent + "- " + scalar_to_string(e) + "\n";
            }
        }
    } else {
        out += indent + scalar_to_string(j) + "\n";
    }
}

}  // namespace detail

/// Renders a report either as an aligned human-readable listing or as the
/// canonical machine form (stable serialization, rationals as "p/q").
inline std::string render_report(const Json& report, const std::string& format) {
    if (format == "machine") return report.dump(2) + "\n";
    if (format != "table") throw InputError("unknown format: " + format);
    std::string out;
    detail::render_table(report, out, "");
    return out;
}

}  // namespace divalg
