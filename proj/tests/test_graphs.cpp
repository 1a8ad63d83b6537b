#include <doctest.h>

#include <algorithm>
#include <cstdlib>
#include <numeric>
#include <random>

#include "weyl/graph.hpp"

using namespace weyl;

namespace
{

LabeledGraph relabel(const LabeledGraph &g, const std::vector<int> &perm, std::mt19937_64 &rng)
{
    std::vector<std::pair<int, int>> edges;
    for (const auto &[u, v] : g.edge_map())
        edges.emplace_back(perm[static_cast<std::size_t>(u)], perm[static_cast<std::size_t>(v)]);
    std::shuffle(edges.begin(), edges.end(), rng);
    return LabeledGraph(g.vertices(), edges);
}

std::uint64_t fact(int n) { return n <= 1 ? 1 : static_cast<std::uint64_t>(n) * fact(n - 1); }

} // namespace

TEST_CASE("enumeration counts")
{
    CHECK(enumerate_reduced(2).size() == 2);
    CHECK(enumerate_reduced(2, {.connected_only = true}).size() == 2);
    CHECK(enumerate_reduced(4, {.connected_only = true}).size() == 12);
    CHECK(enumerate_reduced(4).size() == 15);
    CHECK(enumerate_reduced(4, {.include_odd_components = true}).size() == 23);
    // Regression pins.
    CHECK(enumerate_reduced(6, {.connected_only = true}).size() == 103);
    CHECK(enumerate_reduced(6).size() == 131);
    CHECK(enumerate_reduced(6, {.include_odd_components = true}).size() == 212);
    CHECK(enumerate_reduced(0).size() == 1);
    CHECK(enumerate_reduced(1, {.include_odd_components = true}).size() == 1);
    CHECK(enumerate_reduced(1).empty());
}

TEST_CASE("enumeration is sorted, reduced and duplicate free")
{
    for (int e = 1; e <= 5; ++e) {
        const auto list = enumerate_reduced(e, {.include_odd_components = true});
        CHECK(std::is_sorted(list.begin(), list.end(), [](const UnlabeledGraph &a, const UnlabeledGraph &b) {
            return a.vertices() != b.vertices() ? a.vertices() < b.vertices() : a.upper_triangle() < b.upper_triangle();
        }));
        CHECK(std::adjacent_find(list.begin(), list.end()) == list.end());
        for (const auto &g : list) {
            CHECK(g.edges() == e);
            CHECK(g.is_reduced());
            CHECK(canonicalize(g.representative()) == g);
        }
    }
}

TEST_CASE("enumeration error paths")
{
    CHECK_THROWS_AS(enumerate_reduced(-1), std::invalid_argument);
    CHECK_THROWS_AS(enumerate_reduced(kMaxEnumerationEdges + 1), capacity_error);
    CHECK_THROWS_AS(LabeledGraph(2, {{0, 0}}), std::invalid_argument);
    CHECK_THROWS_AS(LabeledGraph(2, {{0, 2}}), std::invalid_argument);
    CHECK_THROWS_AS(LabeledGraph(-1, {}), std::invalid_argument);
    CHECK_THROWS_AS(UnlabeledGraph().multiplicity(0, 1), std::out_of_range);
    const std::vector<Arrow> long_path{{0, 1}, {1, 2}, {2, 3}, {3, 4}, {4, 5}, {5, 6}, {6, 7}, {7, 8}, {8, 9}, {9, 10}};
    CHECK_THROWS_AS(signed_relabeling_sum(11, long_path), capacity_error);
    // The fact-based route has no such limit.
    CHECK_NOTHROW(c_via_facts(11, long_path));
}

TEST_CASE("canonical form is invariant under relabeling")
{
    std::mt19937_64 rng(11);
    for (int e = 2; e <= 6; e += 2) {
        for (const auto &g : enumerate_reduced(e, {.include_odd_components = true})) {
            const LabeledGraph rep = g.representative();
            std::vector<int> perm(static_cast<std::size_t>(rep.vertices()));
            std::iota(perm.begin(), perm.end(), 0);
            for (int t = 0; t < 3; ++t) {
                std::shuffle(perm.begin(), perm.end(), rng);
                CHECK(canonicalize(relabel(rep, perm, rng)) == g);
            }
        }
    }
}

TEST_CASE("symmetry order agrees with the brute-force stabilizer")
{
    for (int e = 1; e <= 4; ++e)
        for (const auto &g : enumerate_reduced(e, {.include_odd_components = true}))
            CHECK(symmetry_order(g) == stabilizer_order_brute_force(g.representative()));
}

TEST_CASE("c by facts agrees with the relabeling sum")
{
    for (int e = 1; e <= 6; ++e) {
        for (const auto &g : enumerate_reduced(e, {.include_odd_components = true})) {
            if (g.vertices() > 8)
                continue;
            const auto arrows = g.representative().arrows();
            CHECK(c_via_facts(g) == signed_relabeling_sum(g.vertices(), arrows));
            CHECK(c_coefficient(g) == signed_relabeling_sum(g.vertices(), arrows));
        }
    }
}

TEST_CASE("graphs with an odd-edge component have c = 0")
{
    for (const auto &g : enumerate_reduced(4, {.include_odd_components = true})) {
        bool odd = false;
        for (const auto &comp : connected_components(g))
            odd = odd || comp.edges() % 2 == 1;
        if (odd)
            CHECK(c_coefficient(g) == 0);
    }
}

TEST_CASE("reversing one arrow negates c")
{
    const std::vector<Arrow> path{{0, 1}, {1, 2}};
    const std::vector<Arrow> cherry{{0, 1}, {2, 1}};
    CHECK(signed_relabeling_sum(3, path) == -2);
    CHECK(signed_relabeling_sum(3, cherry) == 2);
    CHECK(c_via_facts(3, cherry) == 2);
}

TEST_CASE("invariants and components")
{
    const UnlabeledGraph triangle = canonicalize(LabeledGraph(3, {{0, 1}, {0, 1}, {0, 2}, {1, 2}}));
    const auto inv = invariants(triangle);
    CHECK(inv.S == 4);
    CHECK(std::abs(inv.c) == 2);
    CHECK(inv.connected);
    CHECK(inv.reduced);

    const LabeledGraph two(4, {{0, 1}, {0, 1}, {2, 3}, {2, 3}});
    CHECK_FALSE(two.is_connected());
    CHECK(connected_components(two).size() == 2);
    const UnlabeledGraph g = canonicalize(two);
    // Two identical components can be swapped.
    CHECK(symmetry_order(g) == 32);
    CHECK(symmetry_order(g) == stabilizer_order_brute_force(two));
    // Double edges flip in pairs, so every relabeling counts +1.
    CHECK(c_coefficient(g) == 24);
    CHECK_FALSE(LabeledGraph(3, {{0, 1}}).is_reduced());
}

TEST_CASE("orbit size is V! E! / S")
{
    for (const auto &g : enumerate_reduced(4, {.connected_only = true})) {
        const auto orb = orbit(g);
        CHECK(orb.size() == fact(g.vertices()) * fact(g.edges()) / symmetry_order(g));
    }
}

TEST_CASE("edge-multiset grouping covers every edge map")
{
    for (int v = 2; v <= 4; ++v) {
        for (int e = 0; e <= 3; ++e) {
            std::uint64_t grouped = 0;
            for_each_edge_multiset(v, e, false, [&](const LabeledGraph &, std::uint64_t m) { grouped += m; });
            std::uint64_t literal = 0;
            for_each_edge_map(v, e, [&](const LabeledGraph &) { ++literal; });
            const std::uint64_t pairs = static_cast<std::uint64_t>(v * (v - 1) / 2);
            std::uint64_t expected = 1;
            for (int k = 0; k < e; ++k)
                expected *= pairs;
            CHECK(grouped == expected);
            CHECK(literal == expected);
        }
    }
    int reduced = 0;
    for_each_edge_multiset(3, 1, true, [&](const LabeledGraph &, std::uint64_t) { ++reduced; });
    CHECK(reduced == 0);
}
