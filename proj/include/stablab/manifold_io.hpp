#ifndef STABLAB_MANIFOLD_IO_HPP
#define STABLAB_MANIFOLD_IO_HPP

#include <stablab/geometry.hpp>
#include <stablab/version.hpp>

#include <json.hpp>

#include <fstream>
#include <string>
#include <vector>

namespace stablab {

using json = nlohmann::ordered_json;

namespace io_detail {

inline const json& field(const json& j, const char* key) {
    auto it = j.find(key);
    if (it == j.end()) throw schema_error(std::string("missing field '") + key + "'");
    return *it;
}

inline Rational rational_field(const json& j) {
    if (j.is_number_integer()) return Rational(static_cast<long long>(j.get<long long>()));
    if (!j.is_string()) throw schema_error("rational values must be \"p/q\" strings");
    return parse_rational(j.get<std::string>());
}

inline SymTensor tensor_from_json(const json& entries, int arity, std::size_t basis_size) {
    SymTensor t(arity, basis_size);
    if (!entries.is_array()) throw schema_error("tensor must be an array of monomial entries");
    for (const auto& e : entries) {
        const json& mono = field(e, "monomial");
        if (!mono.is_array() || mono.size() != basis_size)
            throw schema_error("tensor monomial must list one exponent per basis element");
        std::vector<int> exps;
        for (const auto& x : mono) {
            if (!x.is_number_integer()) throw schema_error("tensor exponents must be integers");
            exps.push_back(x.get<int>());
        }
        t.set(std::move(exps), rational_field(field(e, "value")));
    }
    return t;
}

inline json tensor_to_json(const SymTensor& t) {
    json arr = json::array();
    for (const auto& [mono, value] : t.entries()) {
        json e;
        e["monomial"] = mono;
        e["value"] = format_rational(value);
        arr.push_back(std::move(e));
    }
    return arr;
}

inline ConeKind cone_kind_from_name(const std::string& s) {
    if (s == "kahler") return ConeKind::Kahler;
    if (s == "nef") return ConeKind::Nef;
    if (s == "pseff") return ConeKind::Pseff;
    if (s == "big") return ConeKind::Big;
    if (s == "modified") return ConeKind::Modified;
    throw schema_error("unknown cone kind '" + s + "'");
}

inline json cone_to_json(const ConeDescription& c) {
    json j;
    j["kind"] = cone_kind_name(c.kind);
    if (c.kind == ConeKind::Modified) j["p"] = c.p;
    json ineqs = json::array();
    for (const auto& q : c.inequalities) {
        json e;
        json coeffs = json::array();
        for (const auto& x : q.coeffs) coeffs.push_back(format_rational(x));
        e["coeffs"] = std::move(coeffs);
        e["strict"] = q.strict;
        ineqs.push_back(std::move(e));
    }
    j["ineqs"] = std::move(ineqs);
    return j;
}

inline ConeDescription cone_from_json(const json& j, std::size_t basis_size) {
    ConeDescription c;
    c.kind = cone_kind_from_name(field(j, "kind").get<std::string>());
    if (c.kind == ConeKind::Modified) c.p = field(j, "p").get<int>();
    for (const auto& e : field(j, "ineqs")) {
        LinearInequality q;
        for (const auto& x : field(e, "coeffs")) q.coeffs.push_back(rational_field(x));
        if (q.coeffs.size() != basis_size)
            throw schema_error("cone inequality must have one coefficient per basis element");
        q.strict = field(e, "strict").get<bool>();
        c.inequalities.push_back(std::move(q));
    }
    return c;
}

}  // namespace io_detail

inline json save_manifold(const ManifoldPresentation& m) {
    json j;
    j["name"] = m.name;
    j["dim"] = m.dim;
    j["basis"] = m.basis;
    j["tensor"] = io_detail::tensor_to_json(m.tensor);
    json cones = json::array();
    for (const auto& c : m.cones) cones.push_back(io_detail::cone_to_json(c));
    j["cones"] = std::move(cones);
    json candidates = json::array();
    for (const auto& v : m.candidates) {
        json e;
        e["name"] = v.name;
        e["dim"] = v.dim;
        e["tensor"] = io_detail::tensor_to_json(v.restricted);
        e["tags"] = v.tags;
        candidates.push_back(std::move(e));
    }
    j["candidates"] = std::move(candidates);
    json regions = json::array();
    for (const auto& r : m.complete_regions) {
        json e;
        e["statement"] = r.statement;
        e["lambda"] = format_rational(r.lambda);
        regions.push_back(std::move(e));
    }
    j["complete_regions"] = std::move(regions);
    return j;
}

inline ManifoldPresentation load_manifold(const json& j) {
    using io_detail::field;
    ManifoldPresentation m;
    m.name = field(j, "name").get<std::string>();
    if (!field(j, "dim").is_number_integer()) throw schema_error("dim must be an integer");
    m.dim = field(j, "dim").get<int>();
    if (m.dim < 1) throw schema_error("dim must be positive");
    for (const auto& b : field(j, "basis")) {
        if (!b.is_string()) throw schema_error("basis names must be strings");
        m.basis.push_back(b.get<std::string>());
    }
    if (m.basis.empty()) throw schema_error("basis must not be empty");
    m.tensor = io_detail::tensor_from_json(field(j, "tensor"), m.dim, m.basis.size());
    if (j.contains("cones"))
        for (const auto& c : j["cones"]) m.cones.push_back(io_detail::cone_from_json(c, m.basis.size()));
    if (j.contains("candidates")) {
        for (const auto& e : j["candidates"]) {
            SubvarietyCandidate v;
            v.name = field(e, "name").get<std::string>();
            v.dim = field(e, "dim").get<int>();
            if (v.dim < 1 || v.dim >= m.dim)
                throw schema_error("candidate '" + v.name + "' dimension must be in 1..n-1");
            v.restricted = io_detail::tensor_from_json(field(e, "tensor"), v.dim, m.basis.size());
            if (e.contains("tags"))
                for (const auto& t : e["tags"]) v.tags.push_back(t.get<std::string>());
            m.candidates.push_back(std::move(v));
        }
    }
    if (j.contains("complete_regions")) {
        for (const auto& e : j["complete_regions"]) {
            CompleteRegion r;
            r.statement = field(e, "statement").get<std::string>();
            if (e.contains("lambda")) r.lambda = io_detail::rational_field(e["lambda"]);
            m.complete_regions.push_back(std::move(r));
        }
    }
    validate_candidates(m);
    return m;
}

inline ManifoldPresentation load_manifold_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw schema_error("cannot open manifold file '" + path + "'");
    json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& e) {
        throw schema_error(std::string("manifold file is not valid JSON: ") + e.what());
    }
    return load_manifold(j);
}

inline std::string manifold_hash(const ManifoldPresentation& m) {
    return fnv1a_hex(save_manifold(m).dump());
}

}  // namespace stablab

#endif
