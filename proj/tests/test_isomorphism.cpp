#include <catch2/catch_amalgamated.hpp>

#include "pmh/graph.hpp"
#include "pmh/isomorphism.hpp"

using namespace pmh;

TEST_CASE("C4xC4 is the 4-dimensional hypercube") {
    Graph t = build_torus(4, 4);
    Graph q4 = build_hypercube(4);
    auto map = find_isomorphism(t, q4);
    REQUIRE(map.has_value());
    REQUIRE(is_isomorphism(t, q4, *map));
    // and in the other direction
    auto back = find_isomorphism(q4, t);
    REQUIRE(back.has_value());
    REQUIRE(is_isomorphism(q4, t, *back));
}

TEST_CASE("no other small torus is a hypercube") {
    REQUIRE_FALSE(find_isomorphism(build_torus(4, 3), build_hypercube(3)).has_value());
    // same order and regularity, different structure
    Graph two_triangles(6, {{0, 1}, {1, 2}, {0, 2}, {3, 4}, {4, 5}, {3, 5}});
    REQUIRE_FALSE(find_isomorphism(build_cycle(6), two_triangles).has_value());
    Graph prism = cartesian_product(build_cycle(3), build_path(2));
    REQUIRE_FALSE(find_isomorphism(build_complete_bipartite(3, 3), prism).has_value());
}

TEST_CASE("K3,3 is C3xP2-free but matches itself relabeled") {
    // swap the two parts: still K3,3
    Graph relabeled(6, {{3, 0}, {3, 1}, {3, 2}, {4, 0}, {4, 1}, {4, 2}, {5, 0}, {5, 1}, {5, 2}});
    auto map = find_isomorphism(build_complete_bipartite(3, 3), relabeled);
    REQUIRE(map.has_value());
    REQUIRE(is_isomorphism(build_complete_bipartite(3, 3), relabeled, *map));
}

TEST_CASE("quick rejects") {
    REQUIRE_FALSE(find_isomorphism(build_cycle(4), build_cycle(5)).has_value());
    REQUIRE_FALSE(find_isomorphism(build_cycle(4), build_complete(4)).has_value());
    Graph star = build_complete_bipartite(1, 3);
    REQUIRE_FALSE(find_isomorphism(build_path(4), star).has_value());  // same n, m
}

TEST_CASE("is_isomorphism validates maps strictly") {
    Graph c4 = build_cycle(4);
    REQUIRE(is_isomorphism(c4, c4, {0, 1, 2, 3}));
    REQUIRE(is_isomorphism(c4, c4, {1, 2, 3, 0}));
    REQUIRE_FALSE(is_isomorphism(c4, c4, {0, 1, 3, 2}));  // breaks adjacency
    REQUIRE_FALSE(is_isomorphism(c4, c4, {0, 0, 1, 2}));  // not a bijection
    REQUIRE_FALSE(is_isomorphism(c4, c4, {0, 1, 2}));     // wrong size
    REQUIRE_FALSE(is_isomorphism(c4, build_cycle(5), {0, 1, 2, 3}));
}

TEST_CASE("automorphism group sizes of known graphs") {
    REQUIRE(enumerate_automorphisms(build_cycle(4)).size() == 8);
    REQUIRE(enumerate_automorphisms(build_cycle(6)).size() == 12);
    REQUIRE(enumerate_automorphisms(build_complete(4)).size() == 24);
    REQUIRE(enumerate_automorphisms(build_complete_bipartite(3, 3)).size() == 72);
    REQUIRE(enumerate_automorphisms(build_hypercube(3)).size() == 48);
    REQUIRE(enumerate_automorphisms(build_torus(4, 4)).size() == 384);  // = |Aut(Q4)|
    Graph prism = cartesian_product(build_cycle(3), build_path(2));
    REQUIRE(enumerate_automorphisms(prism).size() == 12);
}

TEST_CASE("every enumerated automorphism is one") {
    Graph g = build_hypercube(3);
    auto auts = enumerate_automorphisms(g);
    for (const auto& a : auts) REQUIRE(is_isomorphism(g, g, a));
}

TEST_CASE("automorphism enumeration refuses to explode") {
    REQUIRE_THROWS_AS(enumerate_automorphisms(build_complete(9)), std::runtime_error);
    REQUIRE_NOTHROW(enumerate_automorphisms(build_complete(8)));  // 8! = 40320
}

TEST_CASE("orbits and vertex transitivity") {
    REQUIRE(automorphism_orbit(build_cycle(6), 0) == std::vector<int>{0, 1, 2, 3, 4, 5});
    REQUIRE(automorphism_orbit(build_path(4), 0) == std::vector<int>{0, 3});
    REQUIRE(automorphism_orbit(build_path(4), 1) == std::vector<int>{1, 2});
    REQUIRE(is_vertex_transitive(build_cycle(6)));
    REQUIRE(is_vertex_transitive(build_hypercube(3)));
    REQUIRE(is_vertex_transitive(build_torus(4, 4)));
    REQUIRE_FALSE(is_vertex_transitive(build_path(4)));
    REQUIRE_FALSE(is_vertex_transitive(build_complete_bipartite(2, 3)));
}

TEST_CASE("stabilizer orbit representatives") {
    // Q3 from vertex 0: neighbors, distance-2 layer, antipode
    REQUIRE(stabilizer_orbit_reps(build_hypercube(3)) == std::vector<int>{1, 3, 7});
    // C4xC4 (= Q4) in torus labeling: layers at distance 1, 2, 3, 4
    REQUIRE(stabilizer_orbit_reps(build_torus(4, 4)) == std::vector<int>{1, 2, 6, 10});
    // C6 fixing 0: {1,5}, {2,4}, {3}
    REQUIRE(stabilizer_orbit_reps(build_cycle(6)) == std::vector<int>{1, 2, 3});
    REQUIRE(stabilizer_orbit_reps(build_complete(4)) == std::vector<int>{1});
}
