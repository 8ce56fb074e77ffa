#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <ssig/nullmodel.hpp>
#include <stdexcept>

using namespace ssig;

TEST_CASE("tree margin matches the 3-regular tree bound") {
    CHECK(tree_margin(94, 5) == 0);
    CHECK(tree_margin(1, 0) == 0);
    CHECK(tree_margin(3, 2) == 7);
    CHECK(tree_margin(22, 3) == 0);  // 1 + 3*7 vertices at radius 3
    CHECK_THROWS_AS(tree_margin(5, -1), std::domain_error);
    CHECK_THROWS_AS(tree_margin(5, 63), std::domain_error);

    // Strictly increasing in r, strictly decreasing in n.
    for (int r = 0; r < 20; ++r)
        CHECK(tree_margin(50, r + 1) > tree_margin(50, r));
    for (std::int64_t n = 1; n < 50; ++n)
        CHECK(tree_margin(n + 1, 7) < tree_margin(n, 7));
}

TEST_CASE("model vertex counts") {
    CHECK(model_vertex_count(13) == 1);
    CHECK(model_vertex_count(37) == 3);
    CHECK(model_vertex_count(5) == 1);
    CHECK(model_vertex_count(7) == 1);
    CHECK(model_vertex_count(11) == 2);
    CHECK(model_vertex_count(23) == 3);
    CHECK(model_vertex_count(29) == 3);
    CHECK(model_vertex_count(2003) == 168);
    CHECK_THROWS_AS(model_vertex_count(4), std::domain_error);
    CHECK_THROWS_AS(model_vertex_count(3), std::domain_error);
}

TEST_CASE("sampling is deterministic and respects the single-vertex case") {
    ModelParams params;
    params.seed = 20260814;

    // One vertex: the center is that vertex, whatever was drawn.
    CHECK(sample_center_size(13, params) == 1);

    auto a = sample_model(101, params);
    auto b = sample_model(101, params);
    CHECK(a.vertex_count == b.vertex_count);
    CHECK(a.radius == b.radius);
    CHECK(a.center_size == b.center_size);
    CHECK(a.vertex_count == 9);
    CHECK(a.center_size >= 1);
    CHECK(a.center_size <= a.vertex_count);
    CHECK(sample_center_size(101, params) == a.center_size);

    ModelParams other = params;
    other.seed = 7;
    auto c = sample_model(101, other);
    CHECK(c.center_size >= 1);
    CHECK(c.center_size <= c.vertex_count);

    ModelParams bad = params;
    bad.sigma = 0.0;
    CHECK_THROWS_AS(sample_model(101, bad), std::domain_error);
    bad.sigma = -1.0;
    CHECK_THROWS_AS(sample_model(101, bad), std::domain_error);
}

TEST_CASE("modeled radius tracks the configured mean") {
    // sigma is small next to the mean, so the minimum of a few hundred draws
    // floors to within a couple of units of mu.
    ModelParams params;
    params.seed = 5;
    auto d = sample_model(4801, params);  // 4801 = 1 (mod 12): 400 vertices
    CHECK(d.vertex_count == 400);
    const double mu = params.mu_coeff * std::log(4801.0);
    CHECK(d.radius >= static_cast<int>(mu) - 2);
    CHECK(d.radius <= static_cast<int>(mu) + 1);
    CHECK(d.center_size >= 1);
    CHECK(d.center_size < d.vertex_count);
}
