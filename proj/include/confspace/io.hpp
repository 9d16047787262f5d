#pragma once

#include <fstream>
#include <stdexcept>
#include <string>

#include <json.hpp>

#include "confspace/complex.hpp"

namespace confspace {

/// Raised for malformed input files; the CLI maps it to exit code 2.
struct InputError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/**
 * Parse a complex from the interchange format:
 *
 *   { "name": string, "vertices": [string, ...], "facets": [[int, ...], ...] }
 *
 * Facet entries index the vertex array, whose order is the vertex order of
 * the complex. The closure under faces is computed here.
 */
inline SimplicialComplex complex_from_json(const nlohmann::json& j) {
    if (!j.is_object()) throw InputError("complex JSON must be an object");
    if (!j.contains("vertices") || !j["vertices"].is_array())
        throw InputError("complex JSON needs a \"vertices\" array");
    if (!j.contains("facets") || !j["facets"].is_array())
        throw InputError("complex JSON needs a \"facets\" array");
    std::vector<std::string> labels;
    for (const auto& v : j["vertices"]) {
        if (!v.is_string()) throw InputError("vertex labels must be strings");
        labels.push_back(v.get<std::string>());
    }
    std::vector<Simplex> facets;
    for (const auto& f : j["facets"]) {
        if (!f.is_array()) throw InputError("each facet must be an array of vertex indices");
        Simplex s;
        for (const auto& e : f) {
            if (!e.is_number_integer()) throw InputError("facet entries must be integers");
            const std::int64_t v = e.get<std::int64_t>();
            if (v < 0 || v >= static_cast<std::int64_t>(labels.size()))
                throw InputError("facet vertex index " + std::to_string(v) + " out of range");
            s.push_back(static_cast<Vertex>(v));
        }
        std::sort(s.begin(), s.end());
        if (std::adjacent_find(s.begin(), s.end()) != s.end())
            throw InputError("facet repeats a vertex");
        facets.push_back(std::move(s));
    }
    std::string name = j.value("name", std::string{});
    try {
        return SimplicialComplex::from_facets(std::move(labels), facets, std::move(name));
    } catch (const std::invalid_argument& e) {
        throw InputError(e.what());
    }
}

inline nlohmann::json complex_to_json(const SimplicialComplex& K) {
    nlohmann::json j;
    j["name"] = K.name();
    j["vertices"] = K.labels();
    nlohmann::json facets = nlohmann::json::array();
    for (const Simplex& f : K.facets()) facets.push_back(f);
    j["facets"] = std::move(facets);
    return j;
}

inline SimplicialComplex load_complex(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InputError("cannot open " + path);
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& e) {
        throw InputError(std::string("JSON parse error in ") + path + ": " + e.what());
    }
    return complex_from_json(j);
}

inline void save_complex(const SimplicialComplex& K, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw InputError("cannot write " + path);
    out << complex_to_json(K).dump(2) << "\n";
}

}  // namespace confspace
