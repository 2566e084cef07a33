#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <numeric>

#include "uegs/error.hpp"
#include "uegs/store.hpp"

using namespace uegs;

namespace {

struct TempPath {
    std::string path;
    explicit TempPath(const std::string& name) : path("/tmp/uegs_test_" + name) {}
    ~TempPath() { std::remove(path.c_str()); }
};

}  // namespace

TEST_CASE("cmp round trip is byte-identical and validated") {
    ModularPolynomial m5 = build_canonical_modpoly(5, modpoly_min_prec(5));
    std::string first = cmp_to_json(m5);
    ModularPolynomial back = cmp_from_json(first);
    CHECK(cmp_to_json(back) == first);
    CHECK(back.ell == 5);
    CHECK(back.v == 1);
    CHECK(modpoly_content_hash(back) == modpoly_content_hash(m5));

    TempPath tp("m5.cmp");
    save_cmp(m5, tp.path);
    ModularPolynomial loaded = load_cmp(tp.path);
    CHECK(cmp_to_json(loaded) == first);

    CHECK_THROWS_AS(load_cmp("/tmp/uegs_no_such_file.cmp"), Error);
    try {
        load_cmp("/tmp/uegs_no_such_file.cmp");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::missing_artifact);
    }
}

TEST_CASE("cmp loader rejects corruption") {
    ModularPolynomial m5 = build_canonical_modpoly(5, modpoly_min_prec(5));
    std::string good = cmp_to_json(m5);

    // version mismatch
    std::string bad1 = good;
    bad1.replace(bad1.find("cmp/1"), 5, "cmp/9");
    CHECK_THROWS_AS(cmp_from_json(bad1), Error);

    // break monicity: change the leading coefficient
    std::string bad2 = good;
    bad2.replace(bad2.find("[6,0,\"1\"]"), 9, "[6,0,\"2\"]");
    CHECK_THROWS_AS(cmp_from_json(bad2), Error);

    CHECK_THROWS_AS(cmp_from_json("not json at all"), Error);
}

TEST_CASE("uegs round trip, hash validation, index bounds") {
    ModularPolynomial m5 = build_canonical_modpoly(5, modpoly_min_prec(5));
    RationalRepresentation rep = assemble_and_verify(RepresentationPlan::make(5, 4), +1, m5);

    std::string first = uegs_to_json(rep);
    RationalRepresentation back = uegs_from_json(first, &m5);
    CHECK(uegs_to_json(back) == first);
    CHECK(back.ell == rep.ell);
    CHECK(back.n == rep.n);
    CHECK(back.tensor.size() == rep.tensor.size());
    for (const auto& [key, c] : rep.tensor) {
        // stored as (5,4) must satisfy i1 < 5, i2 <= 30, i3 = 0
        CHECK(key[0] < 5);
        CHECK(key[1] <= 30);
        CHECK(key[2] == 0);
        auto it = back.tensor.find(key);
        REQUIRE(it != back.tensor.end());
        CHECK(it->second == c.embedded(std::lcm(c.conductor(), 4u)).to_subfield(4).value());
    }

    TempPath tp("r54.uegs");
    save_uegs(rep, tp.path);
    RationalRepresentation loaded = load_uegs(tp.path, &m5);
    CHECK(uegs_to_json(loaded) == first);

    // hash mismatch against a different modular polynomial
    ModularPolynomial m7 = build_canonical_modpoly(7, modpoly_min_prec(7));
    CHECK_THROWS_AS(uegs_from_json(first, &m7), Error);
    try {
        uegs_from_json(first, &m7);
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::missing_artifact);
    }
}

TEST_CASE("uegs loader rejects invariant violations") {
    ModularPolynomial m5 = build_canonical_modpoly(5, modpoly_min_prec(5));
    RationalRepresentation rep = assemble_and_verify(RepresentationPlan::make(5, 4), +1, m5);
    std::string good = uegs_to_json(rep);

    std::string bad1 = good;
    bad1.replace(bad1.find("uegs/1"), 6, "uegs/2");
    CHECK_THROWS_AS(uegs_from_json(bad1), Error);

    // wrong prec
    std::string bad2 = good;
    bad2.replace(bad2.find("\"prec\":30"), 9, "\"prec\":29");
    REQUIRE(bad2 != good);
    CHECK_THROWS_AS(uegs_from_json(bad2), Error);

    // wrong generator
    std::string bad3 = good;
    bad3.replace(bad3.find("\"g\":2"), 5, "\"g\":3");
    CHECK_THROWS_AS(uegs_from_json(bad3), Error);
}
