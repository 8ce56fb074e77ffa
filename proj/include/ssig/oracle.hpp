#pragma once
// Congruence-class predictions for the spine of the supersingular
// ell-isogeny graph (ell = 2, 3) and a conformance checker that rebuilds
// the graphs from scratch and diffs them against those predictions.
//
// Every prediction is a function of residues of p modulo small numbers
// (3, 4, 7, 8, 11, 12, 15, 120, 840) together with the root labels of a
// few class polynomials. Where a tabulated count or closed form is
// internally inconsistent (the vertex remainder for p = 11, 59 mod 120,
// and the cycle-diameter formula when a single folded component exhausts
// the class number), the checker verifies the arithmetically consistent
// value and records the divergence as a Resolution rather than failing or
// silently hard-coding either side.

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "ssig/arith.hpp"
#include "ssig/graphs.hpp"

namespace ssig {

// ---------------------------------------------------------------------
// F_p kernel graph anomalies.

struct FpAnomalyPrediction {
    // Loops require p = 3 mod 4 and 4*ell - p a perfect square; directed
    // multi-edges require p = 1 mod 4, at least two vertices and
    // 2*ell - p a perfect square, with the single extra case (ell, p) =
    // (2, 3). For ell in {2, 3} and p >= 17 both are false.
    bool loops = false;
    bool directed_multi = false;
};
FpAnomalyPrediction predict_fp_anomalies(int ell, std::uint64_t p);

// Primes excluded from the congruence tables: below 17 for both degrees,
// plus (for ell = 3) the primes where distinct special labels coincide
// mod p. Conformance routes these to a descriptive computed report.
const std::vector<std::uint64_t>& exceptional_primes(int ell);
bool congruence_tables_apply(int ell, std::uint64_t p);

// ---------------------------------------------------------------------
// Edge and loop predictions (valid whenever the tables apply). Labels are
// integer constants; reduce mod p and accumulate by residue to compare.

// Spine loops as (label, multiplicity) pairs.
std::vector<std::pair<std::int64_t, int>> predict_spine_loop_labels(
    int ell, std::uint64_t p);

// Target label of the directed triple edge out of j = 0 (present exactly
// when 0 is supersingular, i.e. p = 2 mod 3).
std::optional<std::int64_t> predict_triple_target(int ell, std::uint64_t p);

// Discriminants whose class polynomial root pairs carry the double edges
// of the spine; these same pairs are the new edges of the completion
// step. Empty means no double edges and no new edges.
std::vector<std::int64_t> predict_new_edge_discs(int ell, std::uint64_t p);

// Spine loops that the F_p image cannot cover, so the completion step
// must add them. Asserted for ell = 2 only; for ell = 3 the checker
// reports computed new loops without judging them.
std::vector<std::pair<std::int64_t, int>> predict_new_loop_labels(
    int ell, std::uint64_t p);
bool new_loops_asserted(int ell);

// Directed one-sided multiplicity excess: the completion step sees three
// kernels leaving j = 0 but only two arriving from its twist pair, so a
// single uncovered directed surplus (0 -> target, 1) appears exactly when
// 0 is supersingular.
std::vector<std::tuple<std::int64_t, std::int64_t, int>> predict_one_sided(
    int ell, std::uint64_t p);

// ---------------------------------------------------------------------
// Component structure.

struct SpineShape {
    int vertices = 0;
    int diameter = 0;
    int count = 0;

    friend bool operator==(const SpineShape& a, const SpineShape& b) {
        return a.vertices == b.vertices && a.diameter == b.diameter &&
               a.count == b.count;
    }
};

enum class AttachForecast {
    kNone,          // no new edge, hence nothing to attach
    kAll,           // every new edge joins two distinct image components
    kIndeterminate, // new edge exists; attachment decided by computation
    kUnasserted,    // ell = 3 with 0 supersingular: reported, not judged
};

struct StructurePrediction {
    bool applies = false;
    std::string route_reason;  // set when !applies

    int folds = 0;
    // Labels the folded image components must contain. With joint_fold all
    // labels sit in the single folded component; otherwise every folded
    // component contains every listed label.
    std::vector<std::int64_t> fold_labels;
    bool joint_fold = false;
    int vertex_attachments = 0;  // ell = 3, p = 11 mod 12: one, at 1728

    int new_edges = 0;
    std::vector<std::int64_t> edge_discs;
    AttachForecast attach = AttachForecast::kNone;
    // p = 29 and p = 59 only: the new edge touches the folded image. For
    // the other attaching classes of ell = 2 it must avoid it.
    bool attach_touches_fold = false;
    bool disjoint_edges = false;  // >= 2 new edges share no vertices

    bool shapes_known = false;
    std::vector<SpineShape> shapes;  // sorted by (vertices, diameter)

    // ell = 2, p = 7 mod 8: r is the order of the degree-2 prime form of
    // discriminant -p; the surface of every F_p component is a cycle of
    // length r. The closed-form spine diameter (r+3)/2 for the
    // determinate classes presumes a non-folded cycle component; when
    // h(-p) = r only the folded component (diameter (r+1)/2) exists, and
    // the checker records the divergence instead of asserting the larger
    // value.
    bool has_rim = false;
    int rim_order = 0;
    bool single_cycle_divergence = false;
};

StructurePrediction predict_spine_structure(int ell, std::uint64_t p);

// Verbatim structure table for ell = 3 keyed by p mod 840 (residue must be
// coprime to 840): (fold count, new edge count). predict_spine_structure
// derives the same data from compact residue conditions and cross-checks
// itself against this table; it is exposed so tests can do the same
// exhaustively.
std::pair<int, int> tabulated_structure_mod840(int residue);

// ---------------------------------------------------------------------
// Conformance.

struct Resolution {
    std::string topic;
    std::string detail;
};

struct ConformanceReport {
    std::uint64_t p = 0;
    int ell = 0;

    enum class Status { kPass, kFail, kComputed };
    Status status = Status::kComputed;
    std::string route_reason;  // for kComputed

    std::vector<std::string> passed;
    std::vector<std::string> failures;
    std::vector<Resolution> resolutions;

    // Computed inventory, filled in every mode.
    int full_vertices = 0;
    int spine_vertices = 0;
    int fp_vertices = 0;
    int fp_components = 0;
    int folds = 0;
    int stacks = 0;
    int image_components = 0;
    int vertex_attach_events = 0;
    int new_edge_events = 0;
    int new_loop_total = 0;
    int spine_components = 0;
    int spine_diameter = 0;  // max over components (0 for a single vertex)
    std::vector<SpineShape> computed_shapes;

    // PASS, FAIL, INDETERMINATE-RESOLVED or COMPUTED.
    std::string verdict() const;
};

ConformanceReport verify_spine(const FieldContext& F, int ell);
ConformanceReport verify_spine(std::uint64_t p, int ell);

std::string to_text(const ConformanceReport& r);

}  // namespace ssig
