#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <random>

#include "toric/fan.hpp"

using namespace toric;

namespace {

IntVec v2(std::int64_t a, std::int64_t b) { return {Int(a), Int(b)}; }
IntVec v3(std::int64_t a, std::int64_t b, std::int64_t c) { return {Int(a), Int(b), Int(c)}; }

Fan weighted_p112() {
    return Fan(2, {v2(1, 0), v2(0, 1), v2(-1, -2)}, {{0, 1}, {1, 2}, {2, 0}});
}

// multiset order on descending multiplicity vectors
bool multiset_less(const IntVec& a, const IntVec& b) {
    return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
}

}  // namespace

TEST_CASE("projective space fans") {
    for (std::size_t n = 1; n <= 4; ++n) {
        Fan f = projective_space_fan(n);
        CAPTURE(n);
        CHECK(f.ray_count() == n + 1);
        CHECK(f.max_cones().size() == n + 1);
        CHECK(validate_fan(f).valid());
        CHECK(is_smooth(f));
        CHECK(is_simplicial(f));
        CHECK(is_complete(f));
    }
    CHECK_THROWS_AS(projective_space_fan(0), std::invalid_argument);
}

TEST_CASE("hirzebruch fans") {
    for (std::int64_t a = 0; a <= 3; ++a) {
        Fan f = hirzebruch_fan(Int(a));
        CAPTURE(a);
        CHECK(f.rays() == std::vector<IntVec>{v2(1, 0), v2(0, 1), v2(-1, a), v2(0, -1)});
        CHECK(validate_fan(f).valid());
        CHECK(is_smooth(f));
        CHECK(is_complete(f));
    }
}

TEST_CASE("weighted projective plane P(1,1,2)") {
    Fan f = weighted_p112();
    CHECK(validate_fan(f).valid());
    CHECK(is_simplicial(f));
    CHECK(!is_smooth(f));
    CHECK(is_complete(f));
    CHECK(cone_multiplicity(f.cone(0)) == 1);
    CHECK(cone_multiplicity(f.cone(1)) == 1);
    CHECK(cone_multiplicity(f.cone(2)) == 2);
}

TEST_CASE("validation flags broken fans") {
    SUBCASE("non-primitive ray") {
        Fan f(2, {v2(2, 0), v2(0, 1)}, {{0, 1}});
        auto rep = validate_fan(f);
        REQUIRE(!rep.valid());
        CHECK(rep.issues[0].code == "non-primitive-ray");
    }
    SUBCASE("duplicate ray") {
        Fan f(2, {v2(1, 0), v2(1, 0)}, {{0}, {1}});
        auto rep = validate_fan(f);
        bool found = false;
        for (const auto& i : rep.issues) found |= i.code == "duplicate-ray";
        CHECK(found);
    }
    SUBCASE("overlapping cones") {
        // second cone pokes through the interior of the first
        Fan f(2, {v2(1, 0), v2(0, 1), v2(1, 2), v2(-1, 0)}, {{0, 1}, {2, 3}});
        auto rep = validate_fan(f);
        bool improper = false;
        for (const auto& i : rep.issues) improper |= i.code == "improper-intersection";
        CHECK(improper);
    }
    SUBCASE("stray ray inside a cone") {
        Fan f(2, {v2(1, 0), v2(0, 1), v2(1, 1)}, {{0, 1}, {1, 2}});
        auto rep = validate_fan(f);
        bool stray = false;
        for (const auto& i : rep.issues) stray |= i.code == "stray-ray";
        CHECK(stray);
    }
    SUBCASE("nested maximal cones") {
        Fan f(2, {v2(1, 0), v2(0, 1)}, {{0, 1}, {0}});
        auto rep = validate_fan(f);
        bool nested = false;
        for (const auto& i : rep.issues) nested |= i.code == "nested-maximal-cones";
        CHECK(nested);
    }
    SUBCASE("cone with a line") {
        Fan f(1, {IntVec{Int(1)}, IntVec{Int(-1)}}, {{0, 1}});
        auto rep = validate_fan(f);
        bool line = false;
        for (const auto& i : rep.issues) line |= i.code == "not-pointed";
        CHECK(line);
    }
    SUBCASE("index out of range") {
        Fan f(2, {v2(1, 0)}, {{0, 5}});
        auto rep = validate_fan(f);
        bool idx = false;
        for (const auto& i : rep.issues) idx |= i.code == "cone-index";
        CHECK(idx);
    }
}

TEST_CASE("completeness edge cases") {
    SUBCASE("half line is not complete") {
        Fan f(1, {IntVec{Int(1)}}, {{0}});
        CHECK(validate_fan(f).valid());
        CHECK(!is_complete(f));
    }
    SUBCASE("full line is complete") {
        Fan f(1, {IntVec{Int(1)}, IntVec{Int(-1)}}, {{0}, {1}});
        CHECK(is_complete(f));
    }
    SUBCASE("plane minus a cone") {
        Fan p2 = projective_space_fan(2);
        Fan f(2, p2.rays(), {p2.max_cones()[0], p2.max_cones()[1]});
        CHECK(validate_fan(f).valid());
        CHECK(!is_complete(f));
    }
    SUBCASE("lower dimensional cone blocks completeness") {
        Fan f(2, {v2(1, 0), v2(-1, 0)}, {{0}, {1}});
        CHECK(validate_fan(f).valid());
        CHECK(!is_complete(f));
    }
}

TEST_CASE("products") {
    Fan f = product_fan(projective_space_fan(1), projective_space_fan(2));
    CHECK(f.dim() == 3);
    CHECK(f.ray_count() == 5);
    CHECK(f.max_cones().size() == 6);
    CHECK(validate_fan(f).valid());
    CHECK(is_smooth(f));
    CHECK(is_complete(f));

    Fan q = product_fan(projective_space_fan(1), projective_space_fan(1));
    Fan h0 = hirzebruch_fan(Int(0));
    CHECK(q.ray_count() == h0.ray_count());
    CHECK(is_smooth(q));
    CHECK(is_complete(q));
}

TEST_CASE("star subdivision") {
    Fan p2 = projective_space_fan(2);
    SUBCASE("interior point of a cone") {
        Fan f = star_subdivision(p2, v2(1, 1));
        CHECK(f.ray_count() == 4);
        CHECK(f.max_cones().size() == 4);
        CHECK(validate_fan(f).valid());
        CHECK(is_smooth(f));
        CHECK(is_complete(f));
    }
    SUBCASE("existing ray is the identity") {
        CHECK(star_subdivision(p2, v2(1, 0)) == p2);
        CHECK(star_subdivision(p2, v2(-1, -1)) == p2);
    }
    SUBCASE("rejects bad points") {
        CHECK_THROWS_AS(star_subdivision(p2, v2(2, 2)), std::invalid_argument);
        CHECK_THROWS_AS(star_subdivision(p2, v2(0, 0)), std::invalid_argument);
        CHECK_THROWS_AS(star_subdivision(p2, v3(1, 0, 0)), std::invalid_argument);
        Fan half(2, {v2(1, 0), v2(0, 1)}, {{0, 1}});
        CHECK_THROWS_AS(star_subdivision(half, v2(-1, 0)), std::invalid_argument);
    }
    SUBCASE("iterated subdivision stays smooth and valid") {
        Fan f = star_subdivision(p2, v2(1, 1));
        Fan g = star_subdivision(f, v2(2, 1));  // interior of <e1,(1,1)>
        CHECK(validate_fan(g).valid());
        CHECK(is_smooth(g));
        CHECK(g.ray_count() == 5);
        CHECK(g.max_cones().size() == 5);
    }
}

TEST_CASE("split bundle fan over the line matches hirzebruch data") {
    Fan base = projective_space_fan(1);
    for (std::int64_t a = 0; a <= 2; ++a) {
        Fan f = projectivized_split_bundle_fan(base, {{Int(0), Int(a)}});
        CAPTURE(a);
        CHECK(f.dim() == 2);
        CHECK(f.ray_count() == 4);
        CHECK(f.max_cones().size() == 4);
        CHECK(validate_fan(f).valid());
        CHECK(is_smooth(f));
        CHECK(is_complete(f));
        // same ray set as the hirzebruch fan, possibly reordered
        std::vector<IntVec> expect = {v2(1, 0), v2(-1, a), v2(0, 1), v2(0, -1)};
        CHECK(f.rays() == expect);
    }
    CHECK_THROWS_AS(projectivized_split_bundle_fan(base, {}), std::invalid_argument);
    CHECK_THROWS_AS(projectivized_split_bundle_fan(base, {{Int(0)}}), std::invalid_argument);
}

TEST_CASE("split bundle fan with two summands over P2") {
    Fan base = projective_space_fan(2);
    std::vector<IntVec> twists = {{Int(0), Int(0), Int(1)}, {Int(1), Int(0), Int(0)}};
    Fan f = projectivized_split_bundle_fan(base, twists);
    CHECK(f.dim() == 4);
    CHECK(f.ray_count() == 3 + 2 + 1);
    CHECK(f.max_cones().size() == 3 * 3);
    CHECK(validate_fan(f).valid());
    CHECK(is_smooth(f));
    CHECK(is_complete(f));
}

TEST_CASE("triangulation of a cone over a square") {
    Fan f(3, {v3(1, 0, 1), v3(0, 1, 1), v3(-1, 0, 1), v3(0, -1, 1)}, {{0, 1, 2, 3}});
    CHECK(validate_fan(f).valid());
    CHECK(!is_simplicial(f));
    Fan t = triangulate_fan(f);
    CHECK(t.rays() == f.rays());
    CHECK(t.max_cones().size() == 2);
    CHECK(is_simplicial(t));
    CHECK(validate_fan(t).valid());
    // same support: sampled directions agree
    std::mt19937_64 rng(5);
    for (int trial = 0; trial < 200; ++trial) {
        IntVec x(3);
        for (auto& e : x) e = Int(static_cast<std::int64_t>(rng() % 9) - 4);
        CHECK(fan_contains(f, x) == fan_contains(t, x));
    }
}

TEST_CASE("non-simplicial validation catches overlap") {
    // two cones over squares sharing a face improperly
    Fan good(3, {v3(1, 0, 1), v3(0, 1, 1), v3(-1, 0, 1), v3(0, -1, 1), v3(0, 0, -1)},
             {{0, 1, 2, 3}, {0, 1, 4}});
    CHECK(validate_fan(good).valid());
    Fan bad(3, {v3(1, 0, 1), v3(0, 1, 1), v3(-1, 0, 1), v3(0, -1, 1), v3(1, 1, 2)},
            {{0, 1, 2, 3}, {0, 1, 4}});
    // (1,1,2) = (1,0,1)+(0,1,1) lies inside the square cone
    auto rep = validate_fan(bad);
    CHECK(!rep.valid());
}

TEST_CASE("resolve the weighted plane") {
    ResolveTrace tr = resolve_with_trace(weighted_p112());
    CHECK(is_smooth(tr.fan));
    CHECK(validate_fan(tr.fan).valid());
    CHECK(is_complete(tr.fan));
    REQUIRE(tr.fan.ray_count() == 4);
    CHECK(tr.fan.rays()[3] == v2(0, -1));
    REQUIRE(tr.multiplicity_history.size() == 2);
    CHECK(tr.multiplicity_history[0] == IntVec{Int(2), Int(1), Int(1)});
    CHECK(tr.multiplicity_history[1] == IntVec{Int(1), Int(1), Int(1), Int(1)});
}

TEST_CASE("resolve a singular 3d cone") {
    Fan f(3, {v3(1, 0, 0), v3(0, 1, 0), v3(1, 1, 2)}, {{0, 1, 2}});
    CHECK(validate_fan(f).valid());
    CHECK(!is_smooth(f));
    ResolveTrace tr = resolve_with_trace(f);
    CHECK(is_smooth(tr.fan));
    CHECK(validate_fan(tr.fan).valid());
    for (std::size_t i = 0; i + 1 < tr.multiplicity_history.size(); ++i)
        CHECK(multiset_less(tr.multiplicity_history[i + 1], tr.multiplicity_history[i]));
    // refinement: every new ray lies in the original support
    for (const IntVec& r : tr.fan.rays()) CHECK(fan_contains(f, r));
    std::mt19937_64 rng(3);
    for (int trial = 0; trial < 100; ++trial) {
        IntVec x(3);
        for (auto& e : x) e = Int(static_cast<std::int64_t>(rng() % 9) - 4);
        CHECK(fan_contains(f, x) == fan_contains(tr.fan, x));
    }
}

TEST_CASE("cone membership helpers") {
    std::vector<IntVec> quad = {v2(1, 0), v2(0, 1)};
    CHECK(cone_contains(quad, v2(3, 5)));
    CHECK(cone_contains(quad, v2(0, 0)));
    CHECK(!cone_contains(quad, v2(-1, 2)));
    CHECK(cone_is_pointed(quad));
    CHECK(!cone_is_pointed({v2(1, 0), v2(-1, 0)}));
    CHECK(minimal_face(quad, v2(2, 0)) == std::vector<std::size_t>{0});
    CHECK(minimal_face(quad, v2(1, 1)) == std::vector<std::size_t>{0, 1});
    CHECK(minimal_face(quad, v2(0, 0)).empty());

    std::vector<IntVec> square = {v3(1, 0, 1), v3(0, 1, 1), v3(-1, 0, 1), v3(0, -1, 1)};
    CHECK(cone_contains(square, v3(0, 0, 1)));
    CHECK(cone_contains(square, v3(0, 0, 7)));
    CHECK(!cone_contains(square, v3(0, 0, -1)));
    CHECK(cone_facets(square).size() == 4);
    CHECK(minimal_face(square, v3(0, 0, 2)).size() == 4);
    CHECK(minimal_face(square, v3(1, 0, 1)) == std::vector<std::size_t>{0});
    // wall between generators 0 and 1
    CHECK(minimal_face(square, v3(1, 1, 2)) == std::vector<std::size_t>{0, 1});
}

TEST_CASE("fan equality and accessors") {
    Fan f = projective_space_fan(2);
    Cone c = f.cone(0);
    CHECK(c.ray_indices == std::vector<std::size_t>{0, 1});
    CHECK(c.generators == std::vector<IntVec>{v2(1, 0), v2(0, 1)});
    CHECK(f == projective_space_fan(2));
    CHECK(!(f == projective_space_fan(3)));
}
