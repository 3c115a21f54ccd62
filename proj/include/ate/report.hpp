#pragma once

#include <json.hpp>

#include <string>
#include <vector>

#include "ate/rational.hpp"
#include "ate/residue_set.hpp"

// Report serialization. Exact rationals travel as "num/den" strings in lowest
// terms so nothing is lost in transit; reports carry no timestamps, which keeps
// identical configurations byte-identical.

namespace ate {

using Json = nlohmann::ordered_json;

inline Json json_frac(const Rational& r) { return to_frac_string(r); }

inline Json json_elements(const ResidueSet& s) {
    Json arr = Json::array();
    for (u64 x : s.elements()) arr.push_back(x);
    return arr;
}

namespace detail {

inline void flatten_into(const Json& node, const std::string& prefix,
                         std::vector<std::pair<std::string, std::string>>& rows) {
    auto scalar = [](const Json& v) {
        return v.is_string() ? v.get<std::string>() : v.dump();
    };
    if (node.is_object()) {
        for (const auto& [key, value] : node.items())
            flatten_into(value, prefix.empty() ? key : prefix + "." + key, rows);
    } else if (node.is_array()) {
        bool scalars_only = true;
        for (const auto& v : node)
            if (v.is_object() || v.is_array()) scalars_only = false;
        if (scalars_only) {
            std::string joined;
            for (const auto& v : node) {
                if (!joined.empty()) joined += ";";
                joined += scalar(v);
            }
            rows.emplace_back(prefix, joined);
        } else {
            std::size_t i = 0;
            for (const auto& v : node) flatten_into(v, prefix + "[" + std::to_string(i++) + "]", rows);
        }
    } else {
        rows.emplace_back(prefix, scalar(node));
    }
}

inline std::string csv_quote(const std::string& s) {
    bool needs = s.find_first_of(",\"\n") != std::string::npos;
    if (!needs) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    return out + "\"";
}

} // namespace detail

/// Render a report document as json, csv ("key,value" rows) or plain text.
inline std::string render_report(const Json& doc, const std::string& format) {
    if (format == "json") return doc.dump(2) + "\n";
    std::vector<std::pair<std::string, std::string>> rows;
    detail::flatten_into(doc, "", rows);
    std::string out;
    if (format == "csv") {
        out = "key,value\n";
        for (const auto& [k, v] : rows) out += detail::csv_quote(k) + "," + detail::csv_quote(v) + "\n";
    } else {
        for (const auto& [k, v] : rows) out += k + ": " + v + "\n";
    }
    return out;
}

} // namespace ate
