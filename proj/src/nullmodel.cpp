#include "ssig/nullmodel.hpp"

#include <cmath>
#include <numbers>
#include <random>
#include <stdexcept>

#include "ssig/arith.hpp"

namespace ssig {

namespace {

// One standard normal via Box-Muller from two generator words.  Spelled out
// rather than using std::normal_distribution: the standard fixes
// mt19937_64's output stream but not the distribution adaptors, and model
// output must be reproducible for a fixed seed.
double standard_normal(std::mt19937_64& gen) {
    double u1 = (static_cast<double>(gen() >> 11) + 1.0) * 0x1.0p-53;  // (0,1]
    double u2 = static_cast<double>(gen() >> 11) * 0x1.0p-53;          // [0,1)
    return std::sqrt(-2.0 * std::log(u1)) *
           std::cos(2.0 * std::numbers::pi * u2);
}

}  // namespace

int model_vertex_count(std::uint64_t p) {
    if (p < 5 || !is_prime_u64(p))
        throw std::domain_error("model_vertex_count: p must be prime >= 5");
    int eps = 0;
    switch (p % 12) {
        case 1: eps = 0; break;
        case 5:
        case 7: eps = 1; break;
        default: eps = 2; break;  // p = 11 (mod 12)
    }
    return static_cast<int>(p / 12) + eps;
}

ModelDraw sample_model(std::uint64_t p, const ModelParams& params) {
    if (!(params.sigma > 0))
        throw std::domain_error("sample_model: sigma must be positive");
    ModelDraw d;
    d.vertex_count = model_vertex_count(p);
    std::mt19937_64 gen(params.seed ^ p);
    const double mu = params.mu_coeff * std::log(static_cast<double>(p));
    long long best = 0;
    for (int i = 0; i < d.vertex_count; ++i) {
        long long e = static_cast<long long>(
            std::floor(mu + params.sigma * standard_normal(gen)));
        if (i == 0 || e < best) {
            best = e;
            d.center_size = 1;
        } else if (e == best) {
            ++d.center_size;
        }
    }
    d.radius = static_cast<int>(best);
    return d;
}

int sample_center_size(std::uint64_t p, const ModelParams& params) {
    return sample_model(p, params).center_size;
}

std::int64_t tree_margin(std::int64_t n_vertices, int r) {
    if (r < 0 || r > 62)
        throw std::domain_error("tree_margin: r must be in [0, 62]");
    return 1 + 3 * ((std::int64_t{1} << r) - 1) - n_vertices;
}

}  // namespace ssig
