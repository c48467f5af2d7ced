#include <doctest.h>

#include "onering/errors.hpp"
#include "onering/mesh.hpp"
#include "support/corpus.hpp"

using namespace onering;
using onering::testing::make_mesh;

TEST_CASE("validate_mesh accepts the smallest triangle mesh")
{
    const auto mesh = validate_mesh(make_mesh(3, ElementKind::Triangle, {{0, 1, 2}}));
    CHECK(mesh.vertex_count() == 3);
    CHECK(mesh.element_count() == 1);
}

TEST_CASE("validate_mesh reports out-of-range indices with element and position")
{
    try {
        validate_mesh(make_mesh(3, ElementKind::Triangle, {{0, 1, 3}}));
        FAIL("expected IndexOutOfRange");
    } catch (const IndexOutOfRange& e) {
        CHECK(e.element() == 0);
        CHECK(e.position() == 2);
        CHECK(e.value() == 3);
    }
}

TEST_CASE("validate_mesh rejects degenerate elements")
{
    try {
        validate_mesh(make_mesh(3, ElementKind::Triangle, {{0, 1, 1}}));
        FAIL("expected DegenerateElement");
    } catch (const DegenerateElement& e) {
        CHECK(e.element() == 0);
    }
    std::vector<index_t> big(40);
    for (index_t i = 0; i < 40; ++i)
        big[i] = i;
    big[39] = 3;
    CHECK_THROWS_AS(validate_mesh(make_mesh(40, ElementKind::Polygon, {big})), DegenerateElement);
}

TEST_CASE("validate_mesh checks arity per kind")
{
    CHECK_THROWS_AS(validate_mesh(make_mesh(4, ElementKind::Triangle, {{0, 1, 2, 3}})), ArityMismatch);
    CHECK_THROWS_AS(validate_mesh(make_mesh(4, ElementKind::Quad, {{0, 1, 2}})), ArityMismatch);
    CHECK_THROWS_AS(validate_mesh(make_mesh(5, ElementKind::Tetrahedron, {{0, 1, 2, 3, 4}})), ArityMismatch);
    CHECK_THROWS_AS(validate_mesh(make_mesh(2, ElementKind::Polygon, {{0, 1}})), ArityMismatch);
    CHECK_NOTHROW(validate_mesh(make_mesh(5, ElementKind::Polygon, {{0, 1, 2, 3, 4}, {0, 1, 2}})));
    try {
        validate_mesh(make_mesh(4, ElementKind::Triangle, {{0, 1, 2}, {0, 1, 2, 3}}));
        FAIL("expected ArityMismatch");
    } catch (const ArityMismatch& e) {
        CHECK(e.element() == 1);
        CHECK(e.arity() == 4);
    }
}

TEST_CASE("validate_mesh rejects malformed storage")
{
    Mesh broken = testing::single_triangle();
    broken.element_offsets.back() = 2;
    CHECK_THROWS_AS(validate_mesh(broken), MalformedMesh);

    Mesh no_offsets = testing::single_triangle();
    no_offsets.element_offsets.clear();
    CHECK_THROWS_AS(validate_mesh(no_offsets), MalformedMesh);

    Mesh bad_coords = testing::single_triangle();
    bad_coords.coordinates = {0.0, 1.0};
    CHECK_THROWS_AS(validate_mesh(bad_coords), MalformedMesh);
}

TEST_CASE("validate_mesh is idempotent")
{
    for (const auto& named : testing::corpus()) {
        CAPTURE(named.name);
        const ValidatedMesh once = validate_mesh(named.mesh);
        const ValidatedMesh twice = validate_mesh(once.mesh());
        CHECK(once.mesh() == named.mesh);
        CHECK(twice.mesh() == once.mesh());
    }
}

TEST_CASE("generate_grid sizes")
{
    const Mesh one = generate_grid(1, 1);
    CHECK(one.vertex_count == 4);
    CHECK(one.element_count() == 2);

    const Mesh two = generate_grid(2, 2);
    CHECK(two.vertex_count == 9);
    CHECK(two.element_count() == 8);

    CHECK_THROWS_AS(generate_grid(0, 3), PreconditionError);
    CHECK_THROWS_AS(generate_grid(70000, 70000), CapacityOverflow);
    CHECK(generate_grid(3, 5) == generate_grid(3, 5));
}

TEST_CASE("generate_grid at benchmark scale")
{
    // Roughly 882k vertices and 1765k triangles, the size of a large scanned model.
    const Mesh grid = generate_grid(940, 940);
    CHECK(grid.vertex_count == 885481);
    CHECK(grid.element_count() == 1767200);
    CHECK_NOTHROW(validate_mesh(grid));
}

TEST_CASE("generate_grid triangles are counter-clockwise")
{
    const Mesh grid = generate_grid(4, 3);
    for (std::size_t e = 0; e < grid.element_count(); ++e) {
        const auto n = grid.element(e);
        const double* a = &grid.coordinates[3 * n[0]];
        const double* b = &grid.coordinates[3 * n[1]];
        const double* c = &grid.coordinates[3 * n[2]];
        CHECK((b[0] - a[0]) * (c[1] - a[1]) - (b[1] - a[1]) * (c[0] - a[0]) > 0.0);
    }
}

TEST_CASE("mesh_stats examples")
{
    CHECK(mesh_stats(validate_mesh(testing::single_triangle())) == MeshStats{3, 1, 3, 0});
    CHECK(mesh_stats(validate_mesh(testing::two_triangles())) == MeshStats{4, 2, 5, 0});
    CHECK(mesh_stats(validate_mesh(make_mesh(6, ElementKind::Triangle, {{0, 1, 2}}))) == MeshStats{6, 1, 3, 3});
    CHECK(mesh_stats(validate_mesh(Mesh{})) == MeshStats{0, 0, 0, 0});
}

TEST_CASE("mesh_stats on a 10x10 grid matches the brute-force edge set")
{
    const Mesh grid = generate_grid(10, 10);
    const std::size_t brute = testing::brute_force_edges(grid).size();
    CHECK(brute == 320);
    CHECK(mesh_stats(validate_mesh(grid)).undirected_edge_count == brute);
}

TEST_CASE("grid counting formulas hold up to 20x20")
{
    for (std::size_t r = 1; r <= 20; ++r) {
        for (std::size_t c = 1; c <= 20; ++c) {
            const Mesh grid = generate_grid(r, c);
            const MeshStats stats = mesh_stats(validate_mesh(grid));
            REQUIRE(stats.vertex_count == (r + 1) * (c + 1));
            REQUIRE(stats.element_count == 2 * r * c);
            REQUIRE(stats.undirected_edge_count == r * (c + 1) + c * (r + 1) + r * c);
            REQUIRE(stats.undirected_edge_count == testing::brute_force_edges(grid).size());
            REQUIRE(stats.isolated_vertex_count == 0);
        }
    }
}

TEST_CASE("mesh_stats edge count agrees with brute force across the corpus")
{
    for (const auto& named : testing::corpus()) {
        CAPTURE(named.name);
        CHECK(mesh_stats(validate_mesh(named.mesh)).undirected_edge_count ==
              testing::brute_force_edges(named.mesh).size());
    }
}

TEST_CASE("element edges per kind")
{
    std::vector<std::pair<index_t, index_t>> seen;
    auto collect = [&](index_t a, index_t b) { seen.emplace_back(a, b); };

    const index_t tri[] = {4, 7, 9};
    for_each_element_edge(ElementKind::Triangle, tri, collect);
    CHECK(seen == std::vector<std::pair<index_t, index_t>>{{4, 7}, {7, 9}, {9, 4}});

    seen.clear();
    const index_t quad[] = {0, 1, 2, 3};
    for_each_element_edge(ElementKind::Quad, quad, collect);
    CHECK(seen.size() == 4);
    CHECK(seen.back() == std::pair<index_t, index_t>{3, 0});

    seen.clear();
    for_each_element_edge(ElementKind::Tetrahedron, quad, collect);
    CHECK(seen == std::vector<std::pair<index_t, index_t>>{{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}});

    CHECK(edges_per_element(ElementKind::Polygon, 7) == 7);
    CHECK(edges_per_element(ElementKind::Tetrahedron, 4) == 6);
}
