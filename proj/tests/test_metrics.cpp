#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "ssig/metrics.hpp"

using namespace ssig;

namespace {

// A hand-built multigraph: a path 0-1-2 plus an isolated vertex 3.
IsogenyMultigraph synthetic() {
    const auto& F = field_context(29);
    IsogenyMultigraph g;
    g.F = &F;
    g.ell = 2;
    for (std::uint64_t i = 0; i < 4; ++i) g.labels.emplace_back(F, i, 0);
    g.adj = {{{1, 1}}, {{0, 1}, {2, 1}}, {{1, 1}}, {}};
    return g;
}

}  // namespace

TEST_CASE("bfs distances") {
    auto g = synthetic();
    CHECK(bfs_distances(g, 0) == std::vector<int>{0, 1, 2, -1});
    CHECK(bfs_distances(g, 1) == std::vector<int>{1, 0, 1, -1});
    CHECK(bfs_distances(g, 3) == std::vector<int>{-1, -1, -1, 0});
    CHECK_THROWS_AS(bfs_distances(g, 7), std::out_of_range);
}

TEST_CASE("eccentricity profile and component means") {
    auto g = synthetic();
    auto prof = eccentricity_profile(g);
    CHECK(prof.component == std::vector<int>{0, 0, 0, 1});
    CHECK(prof.eccentricity == std::vector<int>{2, 1, 2, 0});
    CHECK(prof.diameter == 2);
    // An isolated vertex has eccentricity zero, so it attains the radius.
    CHECK(prof.radius == 0);
    CHECK(prof.center == std::vector<int>{3});
    CHECK(mean_component_diameter(g) == doctest::Approx(1.0));
}

TEST_CASE("p = 29 spine metrics") {
    const auto& F = field_context(29);
    auto s = spine_graph(build_full_graph(F, 2));
    auto prof = eccentricity_profile(s);
    CHECK(prof.radius == 1);
    CHECK(prof.diameter == 2);
    CHECK(prof.center == std::vector<int>{1});  // j = 2
    CHECK(mean_component_diameter(s) == doctest::Approx(2.0));
}

TEST_CASE("p = 59 spine: six vertices joined into one component of diameter 4") {
    const auto& F = field_context(59);
    auto s = spine_graph(build_full_graph(F, 2));
    REQUIRE(s.n() == 6);
    auto prof = eccentricity_profile(s);
    for (int c : prof.component) CHECK(c == 0);
    CHECK(prof.diameter == 4);
}

TEST_CASE("center survey rows") {
    auto r7 = center_survey_row(field_context(7), 2);
    CHECK(r7.p == 7);
    CHECK(r7.ell == 2);
    CHECK(r7.n_vertices == 1);
    CHECK(r7.n_fp_vertices == 1);
    CHECK(r7.radius == 0);
    CHECK(r7.diameter == 0);
    CHECK(r7.center_size == 1);
    CHECK(r7.center_fp_count == 1);

    auto r29 = center_survey_row(field_context(29), 2);
    CHECK(r29.n_vertices == 3);
    CHECK(r29.n_fp_vertices == 3);
    CHECK(r29.radius == 1);
    CHECK(r29.diameter == 2);
    CHECK(r29.center_size == 1);
    CHECK(r29.center_fp_count == 1);

    // p = 37: one rational supersingular j plus a conjugate pair.
    auto r37 = center_survey_row(field_context(37), 2);
    CHECK(r37.n_vertices == 3);
    CHECK(r37.n_fp_vertices == 1);
    CHECK(r37.diameter <= 2);
}
