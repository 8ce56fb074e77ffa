#pragma once
// The three graphs of interest for a prime p and degree ell in {2, 3}:
//   - the full ell-isogeny multigraph on supersingular j-invariants over
//     the algebraic closure (labels in F_{p^2}),
//   - the F_p-rational kernel graph on F_p-isomorphism classes,
//   - the spine: the full graph's induced subgraph on base-field labels,
// plus the analysis of how the F_p graph maps onto the spine (folds,
// stacked twist pairs, vertex attachments, new edges and loops).

#include <cstdint>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "ssig/arith.hpp"
#include "ssig/curves.hpp"

namespace ssig {

// Directed multigraph with canonical F_{p^2} labels (ascending), adjacency
// rows sorted by target index.
struct IsogenyMultigraph {
    const FieldContext* F = nullptr;
    int ell = 0;
    std::vector<Fp2> labels;
    std::vector<std::vector<std::pair<int, int>>> adj;  // (target, multiplicity)

    int n() const { return static_cast<int>(labels.size()); }
    int multiplicity(int u, int v) const;
    int out_degree_total(int v) const;
    int index_of(const Fp2& label) const;  // -1 when absent
    // Connected components of the undirected support, ids assigned in
    // ascending order of their smallest vertex.
    std::vector<int> component_ids() const;
};

// Vertex count formula floor(p/12) + eps(p mod 12); construction fails
// loudly if the breadth-first enumeration disagrees.
std::uint64_t expected_full_vertex_count(std::uint64_t p);

IsogenyMultigraph build_full_graph(const FieldContext& F, int ell);

// Induced subgraph of the full graph on labels lying in F_p.
IsogenyMultigraph spine_graph(const IsogenyMultigraph& full);

struct FpVertex {
    Curve model;
    InvariantTriple inv;
    // End-ring level for p = 3 mod 4 (surface = full rational 2-torsion);
    // meaningless for p = 1 mod 4 where a single level exists.
    bool has_level = false;
    bool surface = false;
};

struct FpIsogenyGraph {
    const FieldContext* F = nullptr;
    int ell = 0;
    std::vector<FpVertex> verts;  // sorted by (j, a4, a6)
    std::vector<std::vector<std::pair<int, int>>> adj;  // directed kernel counts
    std::vector<std::tuple<int, int, int>> und_edges;   // (u, v, mult), u <= v
    std::vector<int> comp;    // component id per vertex
    std::vector<int> twist;   // index of the quadratic twist class

    int n() const { return static_cast<int>(verts.size()); }
    int multiplicity(int u, int v) const;
    int component_count() const;
};

FpIsogenyGraph build_fp_graph(const FieldContext& F, int ell);

// One undirected new-edge event: a spine edge (mod-p coincidence of class
// polynomial roots) not covered by the image of the F_p graph in both
// directions.
struct NewEdgeEvent {
    int u = 0, v = 0;  // spine vertex indices, u < v
    int mult = 0;      // min of the two directed excesses
    bool attaching = false;  // endpoints lie in disjoint image components
};

struct SpineAnalysis {
    IsogenyMultigraph spine;

    int fp_component_count = 0;
    // Components C with T(C) = C that fold onto their j-image.
    std::vector<int> folded_components;
    // Pairs {a, b} exchanged by the twist involution (or twist-stable twins
    // with identical labeled image), which stack.
    std::vector<std::pair<int, int>> stacked_pairs;

    // Image components: F_p components merged along stacked pairs.
    int image_component_count = 0;
    std::vector<int> image_comp_of_fp_comp;
    std::vector<std::vector<int>> image_members;  // spine vertex ids, sorted

    // Directed multiset Gamma: image of the F_p kernel edges under j.
    std::vector<std::vector<int>> gamma;  // dense spine-index matrix

    // Spine vertices shared by two or more image components (j, comp a, b).
    std::vector<std::tuple<int, int, int>> vertex_attachments;
    std::vector<NewEdgeEvent> new_edges;
    std::vector<std::pair<int, int>> new_loops;       // (spine vertex, mult)
    std::vector<std::tuple<int, int, int>> one_sided; // (u, v, excess): directed
                                                      // excess without a partner
};

SpineAnalysis omega_analysis(const FpIsogenyGraph& fp,
                             const IsogenyMultigraph& full);

// Serialization: a line-oriented text format and Graphviz DOT.
std::string to_text(const IsogenyMultigraph& g, const std::string& kind);
std::string to_dot(const IsogenyMultigraph& g, const std::string& kind);
std::string to_text(const FpIsogenyGraph& g);
std::string to_dot(const FpIsogenyGraph& g);

}  // namespace ssig
