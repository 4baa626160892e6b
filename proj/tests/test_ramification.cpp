#include <doctest.h>

#include "galindex/extension_spec.hpp"
#include "galindex/ramification.hpp"

using namespace galindex;

namespace {

RamificationProfile profile_from(const char* text) {
    const ExtensionSpec spec = parse_extension_spec(nlohmann::json::parse(text));
    return profile(build_lattice_model(tower_of(spec, 32), spec.base_cut));
}

const char* kSqrt2 = R"({"p":2,"layers":[{"kind":"eisenstein","poly":[-2,0,1]}],"base_cut":0})";
const char* kGauss = R"({"p":2,"layers":[{"kind":"eisenstein","poly":[2,-2,1]}],"base_cut":0})";
const char* kCubic = R"({"p":3,"layers":[{"kind":"eisenstein","poly":[3,0,-3,1]}],"base_cut":0})";
const char* kUnram2 = R"({"p":2,"layers":[{"kind":"unramified","poly":[1,1,1]}],"base_cut":0})";
const char* kZeta8 =
    R"({"p":2,"layers":[{"kind":"eisenstein","poly":[-2,0,1]},)"
    R"({"kind":"eisenstein","poly":[[2,-1],[2,-1],[1]]}],"base_cut":1})";

} // namespace

TEST_CASE("filtration of Q_2(sqrt 2)") {
    const ExtensionSpec spec = parse_extension_spec(nlohmann::json::parse(kSqrt2));
    const auto m = build_lattice_model(tower_of(spec, 32), 0);
    const Filtration f = filtration(m);
    // G_0 = G_1 = G_2 = <sigma>, G_3 = 1
    REQUIRE(f.groups.size() == 4);
    CHECK(f.groups[0].size() == 2);
    CHECK(f.groups[2].size() == 2);
    CHECK(f.groups[3].size() == 1);
    CHECK(f.displacement[1] == 3); // v_L(sigma pi - pi) = v_L(-2 sqrt2)
}

TEST_CASE("profile of Q_2(sqrt 2): maximally ramified") {
    const RamificationProfile pr = profile_from(kSqrt2);
    CHECK(pr.t == 2);
    CHECK(pr.a == 0);
    CHECK(pr.t0 == 1);
    CHECK(pr.maximal);
    CHECK(pr.almost_maximal);
    CHECK(!pr.weakly_ramified);
    CHECK(!pr.tame);
}

TEST_CASE("profile of Q_2(i): weakly ramified") {
    const RamificationProfile pr = profile_from(kGauss);
    CHECK(pr.t == 1);
    CHECK(pr.a == 1);
    CHECK(pr.t0 == 0);
    CHECK(pr.weakly_ramified);
    CHECK(pr.almost_maximal); // 2 - 1 <= 1
    CHECK(!pr.maximal);
}

TEST_CASE("profile of the cyclic cubic") {
    const RamificationProfile pr = profile_from(kCubic);
    CHECK(pr.t == 1);
    CHECK(pr.a == 1);
    CHECK(pr.t0 == 0);
    CHECK(pr.e_K == 1);
    CHECK(pr.n == 3);
}

TEST_CASE("profile of the zeta_8 step") {
    const RamificationProfile pr = profile_from(kZeta8);
    CHECK(pr.t == 1);
    CHECK(pr.e_K == 2);
    CHECK(pr.f_K == 1);
    CHECK(!pr.almost_maximal); // 2*2/1 - 1 = 3 > 1
}

TEST_CASE("unramified profile") {
    const RamificationProfile pr = profile_from(kUnram2);
    CHECK(pr.unramified);
    CHECK(pr.tame);
    CHECK(pr.t == -1);
}

TEST_CASE("profiles from invariants") {
    const RamificationProfile a = profile_from_invariants(5, 4, 1, 3);
    CHECK(a.a == 3);
    CHECK(a.t0 == 0);
    CHECK(!a.almost_maximal); // 5 - 3 = 2 > 1
    const RamificationProfile b = profile_from_invariants(3, 2, 1, 3);
    CHECK(b.a == 0);
    CHECK(b.maximal);
    CHECK_THROWS_AS(profile_from_invariants(3, 1, 1, 2), InvalidJump);
    CHECK_THROWS_AS(profile_from_invariants(5, 4, 1, 10), InvalidJump);
}

TEST_CASE("round trip: model profile equals the invariant profile") {
    for (const char* text : {kSqrt2, kGauss, kCubic, kZeta8}) {
        const RamificationProfile pr = profile_from(text);
        const RamificationProfile back =
            profile_from_invariants(pr.p, pr.e_K, pr.f_K, pr.t);
        CHECK(back.t == pr.t);
        CHECK(back.a == pr.a);
        CHECK(back.t0 == pr.t0);
        CHECK(back.maximal == pr.maximal);
        CHECK(back.almost_maximal == pr.almost_maximal);
        CHECK(back.weakly_ramified == pr.weakly_ramified);
    }
}
