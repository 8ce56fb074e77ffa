#pragma once
// Distance-based graph metrics (eccentricities, radius, diameter, center)
// over the undirected support of an isogeny multigraph, plus the row format
// used by the center survey.

#include <cstdint>
#include <vector>

#include "ssig/graphs.hpp"

namespace ssig {

// Breadth-first distances over the undirected support; -1 when unreachable.
std::vector<int> bfs_distances(const IsogenyMultigraph& g, int src);

struct EccentricityProfile {
    std::vector<int> component;     // component id per vertex
    std::vector<int> eccentricity;  // within the vertex's own component
    int radius = 0;                 // min eccentricity over all vertices
    int diameter = 0;               // max eccentricity over all vertices
    std::vector<int> center;        // vertices attaining the radius
};

EccentricityProfile eccentricity_profile(const IsogenyMultigraph& g);

// Mean over components of the component diameter.
double mean_component_diameter(const IsogenyMultigraph& g);

struct CenterSurveyRow {
    std::uint64_t p = 0;
    int ell = 0;
    int n_vertices = 0;     // full graph
    int n_fp_vertices = 0;  // vertices with a base-field label (spine size)
    int radius = 0;         // of the full graph
    int diameter = 0;
    int center_size = 0;
    int center_fp_count = 0;  // center vertices with a base-field label
};

CenterSurveyRow center_survey_row(const FieldContext& F, int ell);
CenterSurveyRow center_survey_row(const IsogenyMultigraph& full);

}  // namespace ssig
