#ifndef GALINDEX_CATALOG_HPP
#define GALINDEX_CATALOG_HPP

#include <optional>
#include <string>
#include <vector>

#include "galindex/extension_spec.hpp"

namespace galindex {

/* Built-in extensions with pinned expectations, used by catalog-verify and
 * by the acceptance suite. Every expectation records where its value comes
 * from: a closed formula, a classical statement, or a hand computation. */
struct CatalogEntry {
    std::string name;
    ExtensionSpec spec;
    long expected_t = 0;
    long expected_v_p_m = 0;
    bool expected_free = true;
    std::optional<long> expected_assoc_v_K;
    std::optional<long> expected_max_order_v_p;
    std::string provenance; // "closed-form" | "classical" | "hand-derived"
    std::string source;
};

const std::vector<CatalogEntry>& builtin_catalog();

} // namespace galindex

#endif
