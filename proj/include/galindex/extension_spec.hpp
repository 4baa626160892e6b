#ifndef GALINDEX_EXTENSION_SPEC_HPP
#define GALINDEX_EXTENSION_SPEC_HPP

#include <string>
#include <vector>

#include <json.hpp>

#include "galindex/tower.hpp"

namespace galindex {

/* Extension description loaded from a JSON document:
 *   {
 *     "p": 2,
 *     "precision": 32,                       // optional
 *     "layers": [ {"kind": "eisenstein", "poly": [-2, 0, 1]} ],
 *     "base_cut": 0                          // K = first base_cut layers
 *   }
 * Polynomial coefficients are little-endian over the layer below: at the
 * bottom either an integer or an [integer, denominator-exponent] pair, at
 * higher layers a list of coefficients over the previous layer (a bare
 * integer abbreviates a constant). */
struct ExtensionSpec {
    unsigned long p = 2;
    unsigned precision = 0; // 0: use the driver default
    std::vector<LayerDesc> layers;
    unsigned base_cut = 0;
};

ExtensionSpec parse_extension_spec(const nlohmann::json& doc);
nlohmann::json extension_spec_to_json(const ExtensionSpec& spec);
ExtensionSpec load_extension_spec(const std::string& path);

// build the tower of an extension spec at the given working precision
TowerPtr tower_of(const ExtensionSpec& spec, unsigned precision);

} // namespace galindex

#endif
