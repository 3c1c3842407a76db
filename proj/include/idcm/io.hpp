#pragma once

#include <charconv>
#include <fstream>
#include <memory>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "idcm/bodies.hpp"
#include "idcm/grid.hpp"
#include "idcm/measures.hpp"

namespace idcm {

using json = nlohmann::json;

struct FileMissingError : std::runtime_error {
    explicit FileMissingError(const std::string& path)
        : std::runtime_error("file not found: " + path) {}
};
struct FileFormatError : std::runtime_error {
    explicit FileFormatError(const std::string& what) : std::runtime_error(what) {}
};

// shortest decimal form that round-trips to the same double
inline std::string format_double(double x) {
    char buf[32];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), x);
    return std::string(buf, ptr);
}

inline json read_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw FileMissingError(path);
    try {
        json j;
        in >> j;
        return j;
    } catch (const json::parse_error& e) {
        throw FileFormatError("malformed JSON in " + path + ": " + e.what());
    }
}

inline void write_text_file(const std::string& path, const std::string& text) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open for writing: " + path);
    out << text;
    if (!out) throw std::runtime_error("write failed: " + path);
}

// ---------------------------------------------------------------------------
// grid descriptor {"dim": n, "resolution": N, "rule": ...}

inline json grid_to_json(const SphericalGrid& g) {
    return {{"dim", g.dim}, {"resolution", g.resolution}, {"rule", g.rule}};
}

inline SphericalGrid grid_from_json(const json& j) {
    if (!j.is_object() || !j.contains("dim") || !j.contains("resolution"))
        throw FileFormatError("grid descriptor needs dim and resolution");
    SphericalGrid g = build_grid(j.at("dim").get<int>(), j.at("resolution").get<int>());
    if (j.contains("rule") && j.at("rule").get<std::string>() != g.rule)
        throw FileFormatError("grid rule does not match the dimension's rule");
    return g;
}

// ---------------------------------------------------------------------------
// bodies: {"dim", "kind": "polytope", "normals", "support"} or
//         {"kind": "radial", "grid": {...}, "values": [...]}

struct LoadedBody {
    int dim = 2;
    std::shared_ptr<SphericalGrid> grid;  // set for radial bodies
    std::optional<SymmetricPolytope> polytope;
    std::optional<StarBody> star;
};

inline json vec_to_json(const Vec& v, int dim) {
    json a = json::array();
    a.push_back(v.x);
    a.push_back(v.y);
    if (dim == 3) a.push_back(v.z);
    return a;
}

inline Vec vec_from_json(const json& a, int dim) {
    if (!a.is_array() || static_cast<int>(a.size()) != dim)
        throw FileFormatError("vector entry has wrong length");
    return {a.at(0).get<double>(), a.at(1).get<double>(),
            dim == 3 ? a.at(2).get<double>() : 0.0};
}

inline json polytope_to_json(const SymmetricPolytope& p) {
    json normals = json::array(), support = json::array();
    for (int i = 0; i < p.facet_count(); ++i) {
        normals.push_back(vec_to_json(p.normals[i], p.dim));
        support.push_back(p.support[i]);
    }
    return {{"dim", p.dim}, {"kind", "polytope"}, {"normals", normals}, {"support", support}};
}

inline json star_to_json(const StarBody& s) {
    json values = json::array();
    for (double lr : s.log_radial) values.push_back(std::exp(lr));
    return {{"dim", s.grid->dim},
            {"kind", "radial"},
            {"grid", grid_to_json(*s.grid)},
            {"values", values}};
}

inline LoadedBody body_from_json(const json& j, std::vector<std::string>* warnings = nullptr) {
    if (!j.is_object() || !j.contains("kind")) throw FileFormatError("body needs a kind field");
    LoadedBody body;
    std::string kind = j.at("kind").get<std::string>();
    if (kind == "polytope") {
        body.dim = j.at("dim").get<int>();
        std::vector<Vec> normals;
        std::vector<double> support;
        for (const auto& n : j.at("normals")) normals.push_back(vec_from_json(n, body.dim));
        for (const auto& h : j.at("support")) support.push_back(h.get<double>());
        if (normals.size() != support.size())
            throw FileFormatError("normals and support have different lengths");
        // auto-symmetrize unpaired normals
        std::size_t given = normals.size();
        for (std::size_t i = 0; i < given; ++i) {
            bool paired = false;
            for (std::size_t k = 0; k < normals.size() && !paired; ++k)
                paired = k != i && norm(normals[i] + normals[k]) < 1e-9;
            if (!paired) {
                normals.push_back(-normals[i]);
                support.push_back(support[i]);
                if (warnings)
                    warnings->push_back("normal " + std::to_string(i) +
                                        " had no antipode; added its negation");
            }
        }
        try {
            body.polytope = wulff_shape(body.dim, std::move(normals), std::move(support));
        } catch (const std::invalid_argument& e) {
            throw FileFormatError(std::string("invalid polytope: ") + e.what());
        }
    } else if (kind == "radial") {
        body.grid = std::make_shared<SphericalGrid>(grid_from_json(j.at("grid")));
        body.dim = body.grid->dim;
        std::vector<double> values;
        for (const auto& v : j.at("values")) values.push_back(v.get<double>());
        try {
            body.star = star_from_radial(*body.grid, values);
        } catch (const std::invalid_argument& e) {
            throw FileFormatError(std::string("invalid radial body: ") + e.what());
        }
    } else {
        throw FileFormatError("unknown body kind: " + kind);
    }
    return body;
}

// ---------------------------------------------------------------------------
// measures: {"dim", "even": true, "atoms": [{"u": [...], "w": r}, ...]}

inline json measure_to_json(const DiscreteSphericalMeasure& mu) {
    json atoms = json::array();
    for (int i = 0; i < mu.size(); ++i) {
        if (mu.weights[i] <= 0.0) continue;  // inactive facets carry no mass
        atoms.push_back({{"u", vec_to_json(mu.positions[i], mu.dim)}, {"w", mu.weights[i]}});
    }
    return {{"dim", mu.dim}, {"even", mu.even}, {"atoms", atoms}};
}

inline DiscreteSphericalMeasure measure_from_json(const json& j) {
    if (!j.is_object() || !j.contains("atoms")) throw FileFormatError("measure needs atoms");
    int dim = j.at("dim").get<int>();
    std::vector<Vec> positions;
    std::vector<double> weights;
    for (const auto& a : j.at("atoms")) {
        positions.push_back(vec_from_json(a.at("u"), dim));
        weights.push_back(a.at("w").get<double>());
    }
    try {
        return make_even_measure(dim, std::move(positions), std::move(weights));
    } catch (const std::invalid_argument& e) {
        throw FileFormatError(std::string("invalid measure: ") + e.what());
    }
}

// ---------------------------------------------------------------------------
// CSV with an embedded config line, so every output names its provenance

class CsvWriter {
public:
    explicit CsvWriter(json config) { out_ << "# config " << config.dump() << "\n"; }

    void header(const std::vector<std::string>& cols) {
        for (std::size_t i = 0; i < cols.size(); ++i) out_ << (i ? "," : "") << cols[i];
        out_ << "\n";
    }
    void row(const std::vector<std::string>& cells) {
        for (std::size_t i = 0; i < cells.size(); ++i) out_ << (i ? "," : "") << cells[i];
        out_ << "\n";
    }
    std::string str() const { return out_.str(); }
    void save(const std::string& path) const { write_text_file(path, str()); }

private:
    std::ostringstream out_;
};

inline json with_config(json payload, const json& config) {
    payload["config"] = config;
    return payload;
}

// pretty but stable dump (2-space indent, keys in insertion order is not
// guaranteed by nlohmann, so rely on its sorted object dump for determinism)
inline std::string dump_json(const json& j) { return j.dump(2) + "\n"; }

}  // namespace idcm
