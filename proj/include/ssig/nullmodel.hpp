#pragma once
// Null model for center sizes: per-vertex eccentricities drawn from a
// discrete Gaussian, used to compare the measured center-size wave against
// a distributional baseline with no graph structure behind it.

#include <cstdint>

namespace ssig {

struct ModelParams {
    double mu_coeff = 1.8;  // mean eccentricity is mu_coeff * ln p
    double sigma = 0.38;
    std::uint64_t seed = 0;  // the per-prime generator is seeded with seed ^ p
};

// Vertices the model assigns to p: floor(p/12) + eps_p, which specializes to
// (p - 1)/12 in the modeled case p = 1 (mod 12); other residues are admitted
// as an extension using the same count as the actual graph.  Requires p
// prime, p >= 5.
int model_vertex_count(std::uint64_t p);

struct ModelDraw {
    int vertex_count = 0;
    int radius = 0;       // minimum floored eccentricity drawn
    int center_size = 0;  // draws attaining that minimum
};

// Draws one eccentricity per vertex from Normal(mu_coeff * ln p, sigma),
// floors each draw, and reports how many attain the minimum.  Deterministic
// in (params.seed, p): each prime gets its own generator, so a sweep may be
// evaluated in any order.  Requires sigma > 0.
ModelDraw sample_model(std::uint64_t p, const ModelParams& params);
int sample_center_size(std::uint64_t p, const ModelParams& params);

// Slack of the radius-r tree bound over the vertex count:
// (1 + 3(2^r - 1)) - n_vertices.  Requires 0 <= r <= 62.
std::int64_t tree_margin(std::int64_t n_vertices, int r);

}  // namespace ssig
