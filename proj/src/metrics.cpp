#include "ssig/metrics.hpp"

#include <deque>
#include <stdexcept>

namespace ssig {

std::vector<int> bfs_distances(const IsogenyMultigraph& g, int src) {
    const int n = g.n();
    if (src < 0 || src >= n) throw std::out_of_range("bfs source out of range");
    std::vector<std::vector<int>> support(n);
    for (int v = 0; v < n; ++v)
        for (const auto& [w, m] : g.adj[v]) {
            (void)m;
            support[v].push_back(w);
            support[w].push_back(v);
        }
    std::vector<int> dist(n, -1);
    dist[src] = 0;
    std::deque<int> queue{src};
    while (!queue.empty()) {
        int u = queue.front();
        queue.pop_front();
        for (int w : support[u])
            if (dist[w] == -1) {
                dist[w] = dist[u] + 1;
                queue.push_back(w);
            }
    }
    return dist;
}

EccentricityProfile eccentricity_profile(const IsogenyMultigraph& g) {
    EccentricityProfile prof;
    const int n = g.n();
    prof.component = g.component_ids();
    prof.eccentricity.assign(n, 0);
    if (n == 0) return prof;
    for (int v = 0; v < n; ++v) {
        auto dist = bfs_distances(g, v);
        int ecc = 0;
        for (int w = 0; w < n; ++w)
            if (dist[w] > ecc) ecc = dist[w];
        prof.eccentricity[v] = ecc;
    }
    prof.radius = prof.eccentricity[0];
    prof.diameter = prof.eccentricity[0];
    for (int v = 1; v < n; ++v) {
        prof.radius = std::min(prof.radius, prof.eccentricity[v]);
        prof.diameter = std::max(prof.diameter, prof.eccentricity[v]);
    }
    for (int v = 0; v < n; ++v)
        if (prof.eccentricity[v] == prof.radius) prof.center.push_back(v);
    return prof;
}

double mean_component_diameter(const IsogenyMultigraph& g) {
    if (g.n() == 0) return 0.0;
    auto prof = eccentricity_profile(g);
    int ncomp = 0;
    for (int c : prof.component) ncomp = std::max(ncomp, c + 1);
    std::vector<int> comp_diam(ncomp, 0);
    for (int v = 0; v < g.n(); ++v)
        comp_diam[prof.component[v]] =
            std::max(comp_diam[prof.component[v]], prof.eccentricity[v]);
    long total = 0;
    for (int d : comp_diam) total += d;
    return static_cast<double>(total) / static_cast<double>(ncomp);
}

CenterSurveyRow center_survey_row(const IsogenyMultigraph& full) {
    CenterSurveyRow row;
    row.p = full.F->p();
    row.ell = full.ell;
    row.n_vertices = full.n();
    for (const auto& l : full.labels) row.n_fp_vertices += l.in_base() ? 1 : 0;
    auto prof = eccentricity_profile(full);
    row.radius = prof.radius;
    row.diameter = prof.diameter;
    row.center_size = static_cast<int>(prof.center.size());
    for (int v : prof.center)
        row.center_fp_count += full.labels[v].in_base() ? 1 : 0;
    return row;
}

CenterSurveyRow center_survey_row(const FieldContext& F, int ell) {
    return center_survey_row(build_full_graph(F, ell));
}

}  // namespace ssig
