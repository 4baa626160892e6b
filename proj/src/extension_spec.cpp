#include "galindex/extension_spec.hpp"

#include <fstream>

namespace galindex {

using nlohmann::json;

namespace {

CoeffTree parse_coeff(const json& j, unsigned level) {
    if (j.is_number_integer()) {
        CoeffTree t;
        t.mantissa = j.get<long>();
        return t;
    }
    if (level == 0) {
        if (j.is_array() && j.size() == 2 && j[0].is_number_integer() &&
            j[1].is_number_integer()) {
            const long d = j[1].get<long>();
            if (d < 0)
                throw InputError("denominator exponent must be non-negative");
            CoeffTree t;
            t.mantissa = j[0].get<long>();
            t.denom_exp = (unsigned)d;
            return t;
        }
        throw InputError("base coefficients must be integers or [mantissa, denom] pairs");
    }
    if (!j.is_array())
        throw InputError("coefficients over an extension layer must be lists");
    CoeffTree t;
    t.leaf = false;
    for (const auto& c : j)
        t.children.push_back(parse_coeff(c, level - 1));
    return t;
}

json coeff_to_json(const CoeffTree& t) {
    if (t.leaf) {
        if (t.denom_exp == 0)
            return json(t.mantissa.get_si());
        return json::array({t.mantissa.get_si(), (long)t.denom_exp});
    }
    json arr = json::array();
    for (const auto& c : t.children)
        arr.push_back(coeff_to_json(c));
    return arr;
}

} // namespace

ExtensionSpec parse_extension_spec(const json& doc) {
    if (!doc.is_object())
        throw InputError("extension spec must be a JSON object");
    ExtensionSpec spec;
    if (!doc.contains("p") || !doc["p"].is_number_integer())
        throw InputError("extension spec needs an integer \"p\"");
    const long p = doc["p"].get<long>();
    if (p < 2)
        throw InputError("p must be at least 2");
    spec.p = (unsigned long)p;
    if (doc.contains("precision")) {
        const long n = doc["precision"].get<long>();
        if (n < 2 || n > 1000000)
            throw InputError("precision out of range");
        spec.precision = (unsigned)n;
    }
    if (!doc.contains("layers") || !doc["layers"].is_array() || doc["layers"].empty())
        throw InputError("extension spec needs a non-empty \"layers\" list");
    unsigned level = 0;
    for (const auto& jl : doc["layers"]) {
        if (!jl.is_object() || !jl.contains("kind") || !jl.contains("poly"))
            throw InputError("each layer needs \"kind\" and \"poly\"");
        LayerDesc ld;
        const std::string kind = jl["kind"].get<std::string>();
        if (kind == "unramified")
            ld.kind = LayerKind::unramified;
        else if (kind == "eisenstein")
            ld.kind = LayerKind::eisenstein;
        else
            throw InputError("layer kind must be \"unramified\" or \"eisenstein\"");
        if (!jl["poly"].is_array() || jl["poly"].size() < 2)
            throw InputError("layer polynomial needs degree >= 1");
        for (const auto& c : jl["poly"])
            ld.poly.push_back(parse_coeff(c, level));
        spec.layers.push_back(std::move(ld));
        ++level;
    }
    if (doc.contains("base_cut")) {
        const long b = doc["base_cut"].get<long>();
        if (b < 0)
            throw InputError("base_cut out of range");
        spec.base_cut = (unsigned)b;
    }
    if (spec.base_cut >= spec.layers.size())
        throw InputError("base_cut must leave at least one extension step");
    return spec;
}

json extension_spec_to_json(const ExtensionSpec& spec) {
    json doc;
    doc["p"] = (long)spec.p;
    if (spec.precision)
        doc["precision"] = (long)spec.precision;
    doc["base_cut"] = (long)spec.base_cut;
    json layers = json::array();
    for (const auto& l : spec.layers) {
        json jl;
        jl["kind"] = l.kind == LayerKind::unramified ? "unramified" : "eisenstein";
        json poly = json::array();
        for (const auto& c : l.poly)
            poly.push_back(coeff_to_json(c));
        jl["poly"] = poly;
        layers.push_back(jl);
    }
    doc["layers"] = layers;
    return doc;
}

ExtensionSpec load_extension_spec(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw InputError("cannot open spec file: " + path);
    json doc;
    try {
        in >> doc;
    } catch (const json::exception& e) {
        throw InputError(std::string("spec file is not valid JSON: ") + e.what());
    }
    return parse_extension_spec(doc);
}

TowerPtr tower_of(const ExtensionSpec& spec, unsigned precision) {
    return make_tower(spec.p, spec.layers, precision);
}

} // namespace galindex
