#include "galindex/catalog.hpp"

namespace galindex {

namespace {

ExtensionSpec spec_from_json(const char* text) {
    return parse_extension_spec(nlohmann::json::parse(text));
}

std::vector<CatalogEntry> build() {
    std::vector<CatalogEntry> v;

    // ramified quadratic extensions of Q_2 given by x^2 - d; for d = -1 and
    // d = 3 the tower uses the minimal polynomial of the uniformizer 1 + sqrt(d)
    v.push_back(CatalogEntry{
        "q2-sqrt-minus1",
        spec_from_json(R"({"p":2,"layers":[{"kind":"eisenstein","poly":[2,-2,1]}],"base_cut":0})"),
        1, 1, true, 1, 1, "closed-form",
        "jump 1, wildly and weakly ramified quadratic: m = 2^{f_L}"});
    v.push_back(CatalogEntry{
        "q2-sqrt2",
        spec_from_json(R"({"p":2,"layers":[{"kind":"eisenstein","poly":[-2,0,1]}],"base_cut":0})"),
        2, 1, true, 1, 1, "closed-form",
        "maximally ramified quadratic (a = 0): m = 2^{[L:Q_2]/2}"});
    v.push_back(CatalogEntry{
        "q2-sqrt-minus2",
        spec_from_json(R"({"p":2,"layers":[{"kind":"eisenstein","poly":[2,0,1]}],"base_cut":0})"),
        2, 1, true, 1, 1, "closed-form",
        "maximally ramified quadratic (a = 0): m = 2^{[L:Q_2]/2}"});
    v.push_back(CatalogEntry{
        "q2-sqrt3",
        spec_from_json(R"({"p":2,"layers":[{"kind":"eisenstein","poly":[-2,-2,1]}],"base_cut":0})"),
        1, 1, true, 1, 1, "closed-form",
        "jump 1, wildly and weakly ramified quadratic: m = 2^{f_L}"});

    // L = Q_2(zeta_8) over K = Q_2(zeta_8 + zeta_8^{-1}) = Q_2(sqrt 2);
    // pi_L = zeta_8 - 1 has minimal polynomial y^2 + (2 - sqrt2) y + (2 - sqrt2)
    v.push_back(CatalogEntry{
        "q2-zeta8-over-real-subfield",
        spec_from_json(
            R"({"p":2,"layers":[{"kind":"eisenstein","poly":[-2,0,1]},)"
            R"({"kind":"eisenstein","poly":[[2,-1],[2,-1],[1]]}],"base_cut":1})"),
        1, 1, true, 1, 2, "hand-derived",
        "cyclotomic quadratic with t = 1, nu_1 = 1: m = 2 while [M:O_K[G]] = 4"});

    // cyclic cubic subfield of Q_3(zeta_9): x^3 - 3x^2 + 3 (root zeta_9 + 1/zeta_9 + 1)
    v.push_back(CatalogEntry{
        "q3-cyclic-cubic",
        spec_from_json(R"({"p":3,"layers":[{"kind":"eisenstein","poly":[3,0,-3,1]}],"base_cut":0})"),
        1, 1, true, 1, 1, "closed-form",
        "absolutely abelian, e = 3, f = 1: m = 3^{d(p^n-1)/(p-1)} = 3"});

    // Kummer layer x^3 - (zeta_3 - 1) over K = Q_3(zeta_3); maximally ramified
    v.push_back(CatalogEntry{
        "q3-kummer-zeta3",
        spec_from_json(
            R"({"p":3,"layers":[{"kind":"eisenstein","poly":[3,3,1]},)"
            R"({"kind":"eisenstein","poly":[[0,-1],[0],[0],[1]]}],"base_cut":1})"),
        3, 3, true, 3, 3, "closed-form",
        "maximally ramified Kummer cubic: m = 3^{[L:Q_3]/2} = 27, associated order maximal"});

    // unramified quadratic: tame, so the group ring itself works
    v.push_back(CatalogEntry{
        "q2-unramified-quadratic",
        spec_from_json(R"({"p":2,"layers":[{"kind":"unramified","poly":[1,1,1]}],"base_cut":0})"),
        -1, 0, true, 0, std::nullopt, "classical",
        "tame (unramified) extension: O_L is free over O_K[G], m = 1"});

    return v;
}

} // namespace

const std::vector<CatalogEntry>& builtin_catalog() {
    static const std::vector<CatalogEntry> entries = build();
    return entries;
}

} // namespace galindex
