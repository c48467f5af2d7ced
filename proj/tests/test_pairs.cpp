#include <doctest.h>

#include <algorithm>
#include <map>

#include "onering/errors.hpp"
#include "onering/pairs.hpp"
#include "support/corpus.hpp"

using namespace onering;
using onering::testing::make_mesh;

namespace {

const Backend workers_under_test[] = {Backend::serial(), Backend::parallel(1), Backend::parallel(2),
                                      Backend::parallel(4), Backend::parallel(8)};

std::size_t brute_edge_slots(const Mesh& mesh)
{
    std::size_t slots = 0;
    for (std::size_t e = 0; e < mesh.element_count(); ++e) {
        const std::size_t k = mesh.element(e).size();
        slots += mesh.kind == ElementKind::Tetrahedron ? k * (k - 1) / 2 : k;
    }
    return slots;
}

} // namespace

TEST_CASE("single triangle expands to six directed pairs")
{
    const auto mesh = validate_mesh(testing::single_triangle());
    const PairList pairs = expand_node_pairs(mesh);
    CHECK(pairs.mode == AdjacencyMode::NodeNeighbors);
    CHECK(pairs.keys == std::vector<index_t>{0, 1, 1, 2, 2, 0});
    CHECK(pairs.values == std::vector<index_t>{1, 0, 2, 1, 0, 2});
}

TEST_CASE("a shared edge produces duplicate directed pairs")
{
    const auto mesh = validate_mesh(testing::two_triangles());
    const PairList pairs = expand_node_pairs(mesh);
    REQUIRE(pairs.size() == 12);
    std::map<std::pair<index_t, index_t>, int> multiplicity;
    for (std::size_t i = 0; i < pairs.size(); ++i)
        ++multiplicity[{pairs.keys[i], pairs.values[i]}];
    CHECK(multiplicity[{0, 2}] == 2);
    CHECK(multiplicity[{2, 0}] == 2);
}

TEST_CASE("element pairs follow element-major order")
{
    const PairList one = expand_element_pairs(validate_mesh(testing::single_triangle()));
    CHECK(one.mode == AdjacencyMode::ElementNeighbors);
    CHECK(one.keys == std::vector<index_t>{0, 1, 2});
    CHECK(one.values == std::vector<index_t>{0, 0, 0});

    const PairList two = expand_element_pairs(validate_mesh(testing::two_triangles()));
    CHECK(two.keys == std::vector<index_t>{0, 1, 2, 0, 2, 3});
    CHECK(two.values == std::vector<index_t>{0, 0, 0, 1, 1, 1});
}

TEST_CASE("grid 10x10 pair counts match brute-force enumeration")
{
    const Mesh grid = generate_grid(10, 10);
    const auto mesh = validate_mesh(grid);
    const std::size_t slots = brute_edge_slots(grid);
    CHECK(2 * slots == 1200);
    CHECK(expand_node_pairs(mesh).size() == 2 * slots);
    CHECK(grid.connectivity.size() == 600);
    CHECK(expand_element_pairs(mesh).size() == grid.connectivity.size());
}

TEST_CASE("tetrahedron expands all six edges in both directions")
{
    const auto mesh = validate_mesh(make_mesh(4, ElementKind::Tetrahedron, {{0, 1, 2, 3}}));
    const PairList pairs = expand_node_pairs(mesh);
    REQUIRE(pairs.size() == 12);
    std::set<std::pair<index_t, index_t>> directed;
    for (std::size_t i = 0; i < pairs.size(); ++i)
        directed.emplace(pairs.keys[i], pairs.values[i]);
    CHECK(directed.size() == 12);
}

TEST_CASE("pair-list invariants across the corpus")
{
    for (const auto& named : testing::corpus()) {
        CAPTURE(named.name);
        const auto mesh = validate_mesh(named.mesh);
        const PairList nodes = expand_node_pairs(mesh);
        const PairList elems = expand_element_pairs(mesh);

        const std::size_t slots = brute_edge_slots(named.mesh);
        REQUIRE(nodes.size() == 2 * slots);
        REQUIRE(nodes.size() == node_pair_count(named.mesh));
        REQUIRE(elems.size() == named.mesh.connectivity.size());
        REQUIRE(nodes.values.size() == nodes.size());
        REQUIRE(elems.values.size() == elems.size());

        // Swapping keys and values gives the same multiset.
        std::vector<std::pair<index_t, index_t>> forward, swapped;
        for (std::size_t i = 0; i < nodes.size(); ++i) {
            REQUIRE(nodes.keys[i] != nodes.values[i]);
            REQUIRE(nodes.keys[i] < mesh.vertex_count());
            REQUIRE(nodes.values[i] < mesh.vertex_count());
            forward.emplace_back(nodes.keys[i], nodes.values[i]);
            swapped.emplace_back(nodes.values[i], nodes.keys[i]);
        }
        std::sort(forward.begin(), forward.end());
        std::sort(swapped.begin(), swapped.end());
        REQUIRE(forward == swapped);

        for (std::size_t i = 0; i < elems.size(); ++i) {
            REQUIRE(elems.keys[i] < mesh.vertex_count());
            REQUIRE(elems.values[i] < mesh.element_count());
        }
    }
}

TEST_CASE("expansion output does not depend on the worker count")
{
    const auto mesh = validate_mesh(testing::random_triangulation(7, 40, 37, 5));
    const auto tets = validate_mesh(testing::tet_grid(3));
    const auto polys = validate_mesh(testing::mixed_polygon_grid(5, 9));
    for (const ValidatedMesh* m : {&mesh, &tets, &polys}) {
        const PairList nodes = expand_node_pairs(*m);
        const PairList elems = expand_element_pairs(*m);
        for (const Backend& b : workers_under_test) {
            CHECK(expand_node_pairs(*m, b) == nodes);
            CHECK(expand_element_pairs(*m, b) == elems);
        }
    }
}

TEST_CASE("capacity guard")
{
    CHECK_NOTHROW(require_index_capacity(max_index, "test"));
    CHECK_THROWS_AS(require_index_capacity(max_index + 1, "test"), CapacityOverflow);

}
