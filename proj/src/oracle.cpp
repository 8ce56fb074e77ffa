#include "ssig/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <initializer_list>
#include <map>
#include <numeric>
#include <set>
#include <sstream>
#include <stdexcept>
#include <tuple>

#include "ssig/classgroup.hpp"
#include "ssig/metrics.hpp"
#include "ssig/modpoly.hpp"
#include "ssig/zpoly.hpp"

namespace ssig {

namespace {

bool is_perfect_square(std::int64_t v) {
    if (v < 0) return false;
    std::int64_t r = static_cast<std::int64_t>(std::sqrt(static_cast<double>(v)));
    for (std::int64_t s = std::max<std::int64_t>(0, r - 2); s <= r + 2; ++s)
        if (s * s == v) return true;
    return false;
}

bool in(int r, std::initializer_list<int> set) {
    return std::find(set.begin(), set.end(), r) != set.end();
}

// New-edge counts for ell = 3 keyed by p mod 840, grouped by fold count.
// Residues coprime to 840 and = 1 mod 3 (nothing folds):
constexpr int kNoFold0[] = {1,   13,  37,  43,  67,  73,  97,  109, 121, 157,
                            163, 169, 187, 193, 253, 277, 283, 289, 307, 313,
                            337, 361, 373, 397, 403, 421, 433, 457, 493, 517,
                            523, 529, 541, 547, 577, 589, 613, 643, 667, 673,
                            697, 709, 733, 757, 781, 787, 793, 817};
constexpr int kNoFold1[] = {61,  103, 127, 181, 211, 223, 229, 241, 247, 331,
                            349, 367, 379, 409, 463, 481, 487, 499, 571, 583,
                            601, 607, 649, 661, 703, 727, 739, 769, 823, 829};
constexpr int kNoFold2[] = {19, 79, 139, 151, 319, 451, 619, 631, 691, 751,
                            799, 811};
constexpr int kNoFold3[] = {31, 199, 271, 391, 439, 559};
// Residues = 5 mod 12 (the component holding j = 0 folds):
constexpr int kOneFold0[] = {17,  29,  53,  113, 137, 149, 173, 197, 221,
                             233, 257, 281, 293, 317, 353, 377, 389, 401,
                             437, 449, 473, 533, 557, 569, 593, 617, 641,
                             653, 677, 701, 713, 737, 773, 797, 809, 821};
constexpr int kOneFold1[] = {41, 89, 101, 209, 269, 341, 461, 509, 521, 629,
                             689, 761};
// Residues = 11 mod 12 (both components holding 1728 fold and attach):
constexpr int kTwoFold0[] = {83, 107, 227, 323, 347, 443, 467, 563, 587, 683,
                             803, 827};
constexpr int kTwoFold1[] = {11,  23,  47,  143, 167, 179, 263, 383, 407,
                             491, 503, 527, 611, 647, 659, 743, 767, 779};
constexpr int kTwoFold2[] = {59, 71, 131, 191, 239, 251, 299, 359, 419, 431,
                             599, 731};
constexpr int kTwoFold3[] = {311, 479, 551, 671, 719, 839};

template <std::size_t N>
bool contains(const int (&list)[N], int r) {
    return std::find(list, list + N, r) != list + N;
}

}  // namespace

std::pair<int, int> tabulated_structure_mod840(int residue) {
    if (residue < 0 || residue >= 840 || std::gcd(residue, 840) != 1)
        throw std::domain_error("residue must be coprime to 840");
    if (contains(kNoFold0, residue)) return {0, 0};
    if (contains(kNoFold1, residue)) return {0, 1};
    if (contains(kNoFold2, residue)) return {0, 2};
    if (contains(kNoFold3, residue)) return {0, 3};
    if (contains(kOneFold0, residue)) return {1, 0};
    if (contains(kOneFold1, residue)) return {1, 1};
    if (contains(kTwoFold0, residue)) return {2, 0};
    if (contains(kTwoFold1, residue)) return {2, 1};
    if (contains(kTwoFold2, residue)) return {2, 2};
    if (contains(kTwoFold3, residue)) return {2, 3};
    throw std::logic_error("mod-840 table does not cover residue " +
                           std::to_string(residue));
}

FpAnomalyPrediction predict_fp_anomalies(int ell, std::uint64_t p) {
    if (ell != 2 && ell != 3) throw std::domain_error("ell must be 2 or 3");
    if (p <= static_cast<std::uint64_t>(ell))
        throw std::domain_error("p must exceed ell");
    FpAnomalyPrediction out;
    const std::int64_t sp = static_cast<std::int64_t>(p);
    out.loops = (p % 4 == 3) && is_perfect_square(4 * ell - sp);
    out.directed_multi = (ell == 2 && p == 3) ||
                         (p % 4 == 1 && is_perfect_square(2 * ell - sp));
    return out;
}

const std::vector<std::uint64_t>& exceptional_primes(int ell) {
    static const std::vector<std::uint64_t> two = {2, 3, 5, 7, 13};
    static const std::vector<std::uint64_t> three = {
        2,  3,  5,  7,  11, 13, 17, 19,  23,  29,  31, 41,
        47, 59, 61, 71, 79, 89, 101, 139, 151, 199, 271};
    if (ell == 2) return two;
    if (ell == 3) return three;
    throw std::domain_error("ell must be 2 or 3");
}

bool congruence_tables_apply(int ell, std::uint64_t p) {
    if (p < 17) return false;
    const auto& ex = exceptional_primes(ell);
    return std::find(ex.begin(), ex.end(), p) == ex.end();
}

std::vector<std::pair<std::int64_t, int>> predict_spine_loop_labels(
    int ell, std::uint64_t p) {
    std::vector<std::pair<std::int64_t, int>> out;
    if (ell == 2) {
        if (p % 4 == 3) out.emplace_back(1728, 1);
        if (p % 8 == 5 || p % 8 == 7) out.emplace_back(8000, 1);
        if (in(static_cast<int>(p % 7), {3, 5, 6})) out.emplace_back(-3375, 2);
    } else if (ell == 3) {
        if (p % 3 == 2) {
            out.emplace_back(0, 1);
            out.emplace_back(54000, 1);
        }
        if (p % 8 == 5 || p % 8 == 7) out.emplace_back(8000, 2);
        if (in(static_cast<int>(p % 11), {2, 6, 7, 8, 10}))
            out.emplace_back(-32768, 2);
    } else {
        throw std::domain_error("ell must be 2 or 3");
    }
    return out;
}

std::optional<std::int64_t> predict_triple_target(int ell, std::uint64_t p) {
    if (p % 3 != 2) return std::nullopt;
    return ell == 2 ? std::optional<std::int64_t>(54000)
                    : std::optional<std::int64_t>(-12288000);
}

std::vector<std::int64_t> predict_new_edge_discs(int ell, std::uint64_t p) {
    std::vector<std::int64_t> out;
    const bool five = (p % 5 == 1 || p % 5 == 4);
    if (ell == 2) {
        if (five && p % 3 == 2) out.push_back(-15);
        return out;
    }
    if (five && p % 4 == 3) out.push_back(-20);
    if (p % 8 == 7) out.push_back(-32);
    if (five && in(static_cast<int>(p % 7), {3, 5, 6})) out.push_back(-35);
    return out;
}

std::vector<std::pair<std::int64_t, int>> predict_new_loop_labels(
    int ell, std::uint64_t p) {
    std::vector<std::pair<std::int64_t, int>> out;
    if (ell == 2 && in(static_cast<int>(p % 7), {3, 5, 6}))
        out.emplace_back(-3375, 2);
    return out;
}

bool new_loops_asserted(int ell) { return ell == 2; }

std::vector<std::tuple<std::int64_t, std::int64_t, int>> predict_one_sided(
    int ell, std::uint64_t p) {
    std::vector<std::tuple<std::int64_t, std::int64_t, int>> out;
    if (p % 3 == 2)
        out.emplace_back(0, ell == 2 ? 54000 : -12288000, 1);
    return out;
}

StructurePrediction predict_spine_structure(int ell, std::uint64_t p) {
    StructurePrediction st;
    if (!congruence_tables_apply(ell, p)) {
        st.route_reason = p < 17 ? "small prime handled by direct computation"
                                 : "special-label collision mod p";
        return st;
    }
    st.applies = true;
    st.edge_discs = predict_new_edge_discs(ell, p);
    st.new_edges = static_cast<int>(st.edge_discs.size());

    if (ell == 3) {
        // Cross-check the compact residue conditions against the verbatim
        // mod-840 table before reporting anything.
        const int folds = p % 3 == 1 ? 0 : (p % 12 == 5 ? 1 : 2);
        const auto tab = tabulated_structure_mod840(static_cast<int>(p % 840));
        if (tab.first != folds || tab.second != st.new_edges)
            throw std::logic_error("mod-840 table disagrees with residue "
                                   "conditions at p = " + std::to_string(p));
        st.folds = folds;
        if (folds == 1) st.fold_labels = {0};
        if (folds == 2) {
            st.fold_labels = {1728};
            st.vertex_attachments = 1;
        }
        st.disjoint_edges = st.new_edges >= 2;
        if (p % 3 == 1)
            st.attach = st.new_edges > 0 ? AttachForecast::kAll
                                         : AttachForecast::kNone;
        else
            st.attach = st.new_edges > 0 ? AttachForecast::kUnasserted
                                         : AttachForecast::kNone;
        return st;
    }

    // ell = 2. Shapes are (vertices, diameter, count) per component.
    const std::int64_t sp = static_cast<std::int64_t>(p);
    auto shape = [&](int v, int d, int c) { return SpineShape{v, d, c}; };
    const bool h15 = st.new_edges == 1;
    if (p % 4 == 1) {
        const int n = class_number(-4 * sp) / 2;
        st.attach = h15 ? AttachForecast::kAll : AttachForecast::kNone;
        if (p % 8 == 5) {
            st.folds = 1;
            st.fold_labels = {8000};
            st.joint_fold = true;
        }
        st.shapes_known = true;
        if (p == 29) {
            st.attach_touches_fold = true;
            st.shapes = {shape(3, 2, 1)};
        } else if (p % 8 == 1 && !h15) {
            st.shapes = {shape(2, 1, n / 2)};
        } else if (p % 8 == 1) {
            if (n > 4) st.shapes = {shape(2, 1, (n - 4) / 2)};
            st.shapes.push_back(shape(4, 3, 1));
        } else if (h15) {
            st.shapes = {shape(1, 0, 1), shape(4, 3, 1)};
            if (n > 5) st.shapes.push_back(shape(2, 1, (n - 5) / 2));
        } else {
            st.shapes = {shape(1, 0, 1)};
            if (n > 1) st.shapes.push_back(shape(2, 1, (n - 1) / 2));
        }
    } else if (p % 8 == 3) {
        const int n = 2 * class_number(-sp);
        st.folds = 1;
        st.fold_labels = {1728, 287496};
        st.joint_fold = true;
        st.attach = h15 ? AttachForecast::kAll : AttachForecast::kNone;
        st.shapes_known = true;
        if (p == 59) {
            st.attach_touches_fold = true;
            st.shapes = {shape(6, 4, 1)};
        } else if (h15) {
            st.shapes = {shape(2, 1, 1), shape(8, 5, 1)};
            if (n > 10) st.shapes.push_back(shape(4, 2, (n - 10) / 4));
        } else {
            st.shapes = {shape(2, 1, 1)};
            if (n > 2) st.shapes.push_back(shape(4, 2, (n - 2) / 4));
        }
    } else {
        const int h = class_number(-sp);
        st.folds = 1;
        st.fold_labels = {1728, 8000};
        st.joint_fold = true;
        st.has_rim = true;
        st.rim_order = prime_form_order(2, -sp);
        const int r = st.rim_order;
        if (h % r != 0)
            throw std::logic_error("class number not divisible by rim order");
        if (h15) {
            st.attach = AttachForecast::kIndeterminate;
        } else {
            st.attach = AttachForecast::kNone;
            st.shapes_known = true;
            st.shapes = {shape(r, (r + 1) / 2, 1)};
            if (h > r) st.shapes.push_back(shape(2 * r, (r + 3) / 2, (h - r) / (2 * r)));
            st.single_cycle_divergence = (h == r);
        }
    }
    std::sort(st.shapes.begin(), st.shapes.end(),
              [](const SpineShape& a, const SpineShape& b) {
                  return std::tie(a.vertices, a.diameter) <
                         std::tie(b.vertices, b.diameter);
              });
    return st;
}

namespace {

std::uint64_t reduce_label(const FieldContext& F, std::int64_t v) {
    return Fp::from_int(F, v).value();
}

// Roots in F_p of the class polynomial of the given discriminant.
std::vector<std::pair<std::uint64_t, int>> class_poly_roots(
    const FieldContext& F, std::int64_t disc) {
    auto f = hilbert_poly(static_cast<int>(disc)).reduce(F);
    std::vector<std::pair<std::uint64_t, int>> out;
    for (const auto& [x, m] : roots_with_multiplicity(f))
        out.emplace_back(x.value(), m);
    std::sort(out.begin(), out.end());
    return out;
}

std::uint64_t spine_label(const IsogenyMultigraph& spine, int v) {
    return spine.labels[v].base_value().value();
}

struct ShapeSummary {
    std::vector<SpineShape> shapes;     // aggregated, sorted
    std::vector<int> comp_size;
    std::vector<int> comp_diameter;
    std::vector<int> comp_of_vertex;
    int max_diameter = 0;
};

ShapeSummary summarize_shapes(const IsogenyMultigraph& spine) {
    ShapeSummary out;
    if (spine.n() == 0) return out;
    auto prof = eccentricity_profile(spine);
    out.comp_of_vertex = prof.component;
    int nc = 0;
    for (int c : prof.component) nc = std::max(nc, c + 1);
    out.comp_size.assign(nc, 0);
    out.comp_diameter.assign(nc, 0);
    for (int v = 0; v < spine.n(); ++v) {
        int c = prof.component[v];
        out.comp_size[c] += 1;
        out.comp_diameter[c] = std::max(out.comp_diameter[c],
                                        prof.eccentricity[v]);
    }
    std::map<std::pair<int, int>, int> counts;
    for (int c = 0; c < nc; ++c) {
        counts[{out.comp_size[c], out.comp_diameter[c]}] += 1;
        out.max_diameter = std::max(out.max_diameter, out.comp_diameter[c]);
    }
    for (const auto& [key, cnt] : counts)
        out.shapes.push_back(SpineShape{key.first, key.second, cnt});
    return out;
}

std::string shapes_str(const std::vector<SpineShape>& shapes) {
    std::ostringstream os;
    bool first = true;
    for (const auto& s : shapes) {
        if (!first) os << ", ";
        first = false;
        os << s.count << " x (" << s.vertices << "v, diam " << s.diameter
           << ")";
    }
    return first ? std::string("none") : os.str();
}

}  // namespace

std::string ConformanceReport::verdict() const {
    switch (status) {
        case Status::kComputed: return "COMPUTED";
        case Status::kFail: return "FAIL";
        case Status::kPass:
            return resolutions.empty() ? "PASS" : "INDETERMINATE-RESOLVED";
    }
    throw std::logic_error("unreachable");
}

ConformanceReport verify_spine(std::uint64_t p, int ell) {
    return verify_spine(field_context(p), ell);
}

ConformanceReport verify_spine(const FieldContext& F, int ell) {
    ConformanceReport rep;
    rep.p = F.p();
    rep.ell = ell;
    const std::uint64_t p = F.p();
    const std::int64_t sp = static_cast<std::int64_t>(p);

    auto full = build_full_graph(F, ell);
    auto fp = build_fp_graph(F, ell);
    auto omega = omega_analysis(fp, full);
    const IsogenyMultigraph& spine = omega.spine;
    auto sum = summarize_shapes(spine);

    rep.full_vertices = full.n();
    rep.spine_vertices = spine.n();
    rep.fp_vertices = fp.n();
    rep.fp_components = fp.component_count();
    rep.folds = static_cast<int>(omega.folded_components.size());
    rep.stacks = static_cast<int>(omega.stacked_pairs.size());
    rep.image_components = omega.image_component_count;
    rep.vertex_attach_events = static_cast<int>(omega.vertex_attachments.size());
    rep.new_edge_events = static_cast<int>(omega.new_edges.size());
    for (const auto& [v, m] : omega.new_loops) rep.new_loop_total += m;
    rep.spine_components = static_cast<int>(sum.comp_size.size());
    rep.spine_diameter = sum.max_diameter;
    rep.computed_shapes = sum.shapes;

    auto st = predict_spine_structure(ell, p);
    if (!st.applies) {
        rep.status = ConformanceReport::Status::kComputed;
        rep.route_reason = st.route_reason;
        return rep;
    }

    auto check = [&](bool ok, const std::string& what,
                     const std::string& detail = "") {
        if (ok)
            rep.passed.push_back(what);
        else
            rep.failures.push_back(what +
                                   (detail.empty() ? "" : " [" + detail + "]"));
    };

    // --- Vertex counts against class numbers. ---------------------------
    const std::int64_t h4 = class_number(-4 * sp);
    const std::int64_t h1 = (p % 4 == 3) ? class_number(-sp) : 0;
    check(static_cast<std::uint64_t>(full.n()) == expected_full_vertex_count(p),
          "full graph vertex count");
    std::int64_t want_spine = p % 4 == 1 ? h4 / 2 : (p % 8 == 3 ? 2 * h1 : h1);
    check(spine.n() == want_spine, "spine vertex count",
          std::to_string(spine.n()) + " vs " + std::to_string(want_spine));
    check(fp.n() == 2 * want_spine, "kernel graph vertex count");
    if (p % 4 == 3) {
        check(h1 % 2 == 1, "h(-p) odd");
        if (p % 8 == 3) check(h4 == 3 * h1, "h(-4p) = 3 h(-p)");
        if (p % 8 == 7) check(h4 == h1, "h(-4p) = h(-p)");
        int surf = 0;
        for (const auto& v : fp.verts) surf += v.has_level && v.surface;
        check(surf == h1, "surface class count");
        check(fp.n() - surf == h4, "floor class count");
    }

    // --- Kernel graph anomalies. ----------------------------------------
    auto an = predict_fp_anomalies(ell, p);
    bool fp_loop = false, fp_multi = false;
    for (int u = 0; u < fp.n(); ++u)
        for (const auto& [v, m] : fp.adj[u]) {
            if (v == u && m > 0) fp_loop = true;
            if (v != u && m >= 2) fp_multi = true;
        }
    check(fp_loop == an.loops, "kernel graph loop prediction");
    check(fp_multi == an.directed_multi, "kernel graph multi-edge prediction");

    // --- Kernel graph component regularity. ------------------------------
    auto row_sum = [&](int v) {
        int s = 0;
        for (const auto& [w, m] : fp.adj[v]) s += m;
        return s;
    };
    if (ell == 2) {
        if (p % 4 == 1) {
            bool deg1 = true;
            for (int v = 0; v < fp.n(); ++v) deg1 = deg1 && row_sum(v) == 1;
            check(deg1, "kernel graph is a perfect matching");
            check(fp.component_count() == h4 / 2, "kernel component count");
        } else {
            bool degs = true;
            for (int v = 0; v < fp.n(); ++v)
                degs = degs && row_sum(v) == (fp.verts[v].surface ? 3 : 1);
            check(degs, "kernel graph degrees (3 on surface, 1 on floor)");
            if (p % 8 == 3) {
                check(fp.component_count() == h1,
                      "kernel component count (one claw per surface class)");
                std::map<int, std::pair<int, int>> per;  // comp -> (surf, floor)
                for (int v = 0; v < fp.n(); ++v)
                    (fp.verts[v].surface ? per[fp.comp[v]].first
                                         : per[fp.comp[v]].second) += 1;
                bool claws = true;
                for (const auto& [c, sf] : per)
                    claws = claws && sf.first == 1 && sf.second == 3;
                check(claws, "each component is a claw (1 surface, 3 floor)");
            } else {
                const int r = st.rim_order;
                check(fp.component_count() * r == h1,
                      "kernel component count h(-p)/r");
                std::map<int, std::pair<int, int>> per;  // comp -> (surf, floor)
                for (int v = 0; v < fp.n(); ++v)
                    (fp.verts[v].surface ? per[fp.comp[v]].first
                                         : per[fp.comp[v]].second) += 1;
                bool ok = true;
                for (const auto& [c, sf] : per)
                    ok = ok && sf.first == r && sf.second == r;
                check(ok, "each component has r surface and r floor classes");
                bool cyc = true;
                for (int v = 0; v < fp.n(); ++v) {
                    if (!fp.verts[v].surface) continue;
                    int horiz = 0;
                    for (const auto& [w, m] : fp.adj[v])
                        if (fp.verts[w].surface) horiz += m;
                    cyc = cyc && horiz == 2;
                }
                check(cyc, "surface classes form cycles");
            }
        }
    } else {
        if (p % 3 == 1) {
            check(fp.und_edges.empty(), "kernel graph is edgeless");
            check(fp.component_count() == fp.n(),
                  "every class is an isolated vertex");
        } else {
            bool deg2 = true;
            for (int v = 0; v < fp.n(); ++v) deg2 = deg2 && row_sum(v) == 2;
            check(deg2, "kernel graph is 2-regular");
            if (p % 4 == 1) {
                const int o = prime_form_order(3, -4 * sp);
                check(fp.component_count() * o == h4,
                      "kernel component count h(-4p)/ord");
            } else {
                bool homog = true;
                std::set<int> surf_comps, floor_comps;
                for (int v = 0; v < fp.n(); ++v)
                    (fp.verts[v].surface ? surf_comps : floor_comps)
                        .insert(fp.comp[v]);
                for (int c : surf_comps) homog = homog && !floor_comps.count(c);
                check(homog, "no component mixes surface and floor");
                const int os = prime_form_order(3, -sp);
                const int of = prime_form_order(3, -4 * sp);
                check(static_cast<int>(surf_comps.size()) * os == h1,
                      "surface cycle count h(-p)/ord");
                check(static_cast<int>(floor_comps.size()) * of == h4,
                      "floor cycle count h(-4p)/ord");
            }
        }
    }

    // --- Loop multiset of the spine. -------------------------------------
    std::map<std::uint64_t, int> want_loops, got_loops;
    for (const auto& [lab, m] : predict_spine_loop_labels(ell, p))
        want_loops[reduce_label(F, lab)] += m;
    for (int v = 0; v < spine.n(); ++v)
        if (int m = spine.multiplicity(v, v); m > 0)
            got_loops[spine_label(spine, v)] = m;
    check(want_loops == got_loops, "spine loop multiset");

    // --- Triple edges. ----------------------------------------------------
    std::vector<std::tuple<std::uint64_t, std::uint64_t, int>> got_triples;
    for (int u = 0; u < spine.n(); ++u)
        for (const auto& [v, m] : spine.adj[u])
            if (v != u && m >= 3)
                got_triples.emplace_back(spine_label(spine, u),
                                         spine_label(spine, v), m);
    decltype(got_triples) want_triples;
    if (auto t = predict_triple_target(ell, p))
        want_triples.emplace_back(reduce_label(F, 0), reduce_label(F, *t), 3);
    check(got_triples == want_triples, "directed triple edge out of j = 0");

    // --- Double edges (same pairs as the new edges). ----------------------
    std::set<std::pair<std::uint64_t, std::uint64_t>> want_pairs;
    bool roots_ok = true;
    for (std::int64_t d : st.edge_discs) {
        auto roots = class_poly_roots(F, d);
        if (roots.size() != 2 || roots[0].second != 1 || roots[1].second != 1) {
            roots_ok = false;
            continue;
        }
        bool present = spine.index_of(Fp2(Fp(F, roots[0].first))) >= 0 &&
                       spine.index_of(Fp2(Fp(F, roots[1].first))) >= 0;
        roots_ok = roots_ok && present;
        want_pairs.insert({roots[0].first, roots[1].first});
    }
    check(roots_ok, "class polynomial root pairs are rational supersingular");
    std::set<std::pair<std::uint64_t, std::uint64_t>> got_pairs;
    bool doubles_exact = true;
    for (int u = 0; u < spine.n(); ++u)
        for (const auto& [v, m] : spine.adj[u]) {
            if (v <= u) continue;
            int mm = std::min(m, spine.multiplicity(v, u));
            if (mm >= 2) {
                got_pairs.insert({std::min(spine_label(spine, u),
                                           spine_label(spine, v)),
                                  std::max(spine_label(spine, u),
                                           spine_label(spine, v))});
                doubles_exact = doubles_exact && mm == 2;
            }
        }
    check(got_pairs == want_pairs, "double edge pairs");
    check(doubles_exact, "double edges have multiplicity exactly 2");

    // --- Folding, stacking, vertex attachment. ----------------------------
    check(rep.folds == st.folds, "fold count",
          std::to_string(rep.folds) + " vs " + std::to_string(st.folds));
    check(2 * rep.stacks == rep.fp_components - st.folds, "stacked pair count");
    std::set<int> folded_images;
    for (int c : omega.folded_components)
        folded_images.insert(omega.image_comp_of_fp_comp[c]);
    auto image_has_label = [&](int ic, std::int64_t lab) {
        const std::uint64_t want = reduce_label(F, lab);
        for (int v : omega.image_members[ic])
            if (spine_label(spine, v) == want) return true;
        return false;
    };
    bool fold_labels_ok = true;
    for (int ic : folded_images)
        for (std::int64_t lab : st.fold_labels)
            if (!st.joint_fold || folded_images.size() == 1)
                fold_labels_ok = fold_labels_ok && image_has_label(ic, lab);
    check(fold_labels_ok, "folded components contain their labels");
    if (ell == 2 && st.folds == 1 && !folded_images.empty()) {
        int ic = *folded_images.begin();
        const std::size_t want_size =
            p % 4 == 1 ? 1 : (p % 8 == 3 ? 2 : static_cast<std::size_t>(st.rim_order));
        check(omega.image_members[ic].size() == want_size,
              "folded image size");
    }
    check(rep.vertex_attach_events == st.vertex_attachments,
          "vertex attachment count");
    if (st.vertex_attachments == 1 && rep.vertex_attach_events == 1) {
        auto [v, ca, cb] = omega.vertex_attachments[0];
        check(spine_label(spine, v) == reduce_label(F, 1728),
              "vertex attachment sits at 1728");
        check(folded_images.count(ca) && folded_images.count(cb),
              "vertex attachment joins the two folded components");
    }

    // --- New edges. --------------------------------------------------------
    check(rep.new_edge_events == st.new_edges, "new edge count",
          std::to_string(rep.new_edge_events) + " vs " +
              std::to_string(st.new_edges));
    std::set<std::pair<std::uint64_t, std::uint64_t>> got_new;
    for (const auto& e : omega.new_edges)
        got_new.insert({std::min(spine_label(spine, e.u),
                                 spine_label(spine, e.v)),
                        std::max(spine_label(spine, e.u),
                                 spine_label(spine, e.v))});
    check(got_new == want_pairs, "new edges join the class polynomial roots");
    if (st.disjoint_edges) {
        std::set<std::uint64_t> seen;
        bool disjoint = true;
        for (const auto& [a, b] : got_new) {
            disjoint = disjoint && !seen.count(a) && !seen.count(b);
            seen.insert(a);
            seen.insert(b);
        }
        check(disjoint, "new edges share no vertices");
    }
    int attaching = 0;
    for (const auto& e : omega.new_edges) attaching += e.attaching;
    if (st.attach == AttachForecast::kAll) {
        check(attaching == st.new_edges, "every new edge attaches");
        bool mult2 = true;
        for (const auto& e : omega.new_edges) mult2 = mult2 && e.mult == 2;
        check(mult2, "attaching new edges are double");
    } else if (st.attach == AttachForecast::kIndeterminate) {
        std::ostringstream os;
        os << (attaching == 0
                   ? "not attaching"
                   : attaching == rep.new_edge_events ? "attaching" : "mixed")
           << " (congruence class leaves attachment open; " << attaching
           << " of " << rep.new_edge_events
           << " new edges attach); spine shapes " << shapes_str(sum.shapes);
        rep.resolutions.push_back({"new-edge attachment", os.str()});
    } else if (st.attach == AttachForecast::kUnasserted && st.new_edges > 0) {
        rep.passed.push_back("info: " + std::to_string(attaching) + " of " +
                             std::to_string(st.new_edges) +
                             " new edges attach (not asserted)");
    }
    if (st.new_edges > 0 && st.attach == AttachForecast::kAll &&
        st.folds > 0 && !folded_images.empty()) {
        bool touches = false;
        for (const auto& e : omega.new_edges)
            for (int w : {e.u, e.v})
                for (int ic : folded_images)
                    for (int member : omega.image_members[ic])
                        touches = touches || member == w;
        check(touches == st.attach_touches_fold,
              st.attach_touches_fold
                  ? "new edge touches the folded component"
                  : "new edge avoids the folded component");
    }

    // --- New loops and one-sided surplus. -----------------------------------
    if (new_loops_asserted(ell)) {
        std::map<std::uint64_t, int> want_nl, got_nl;
        for (const auto& [lab, m] : predict_new_loop_labels(ell, p))
            want_nl[reduce_label(F, lab)] += m;
        for (const auto& [v, m] : omega.new_loops)
            got_nl[spine_label(spine, v)] += m;
        check(want_nl == got_nl, "new loop multiset");
    } else if (!omega.new_loops.empty()) {
        rep.passed.push_back("info: " +
                             std::to_string(omega.new_loops.size()) +
                             " new loop vertices (not asserted)");
    }
    std::vector<std::tuple<std::uint64_t, std::uint64_t, int>> got_os, want_os;
    for (const auto& [u, v, m] : omega.one_sided)
        got_os.emplace_back(spine_label(spine, u), spine_label(spine, v), m);
    for (const auto& [a, b, m] : predict_one_sided(ell, p))
        want_os.emplace_back(reduce_label(F, a), reduce_label(F, b), m);
    std::sort(got_os.begin(), got_os.end());
    std::sort(want_os.begin(), want_os.end());
    check(got_os == want_os, "one-sided multiplicity surplus at j = 0");

    // --- Component shapes and diameters. ------------------------------------
    if (st.shapes_known) {
        check(sum.shapes == st.shapes, "spine component shapes",
              "computed " + shapes_str(sum.shapes) + "; predicted " +
                  shapes_str(st.shapes));
    }
    if (ell == 2 && p % 8 == 3 && st.new_edges == 1 && p != 59) {
        std::ostringstream os;
        os << "the two-vertex and eight-vertex components account for 10 "
              "vertices, so the four-vertex components hold 2h(-p)-10 = "
           << 2 * h1 - 10 << " vertices (a remainder of 2h(-p)-9 would not "
              "be divisible by 4); computed shapes "
           << shapes_str(sum.shapes);
        rep.resolutions.push_back({"vertex remainder", os.str()});
    }
    if (st.has_rim && st.attach != AttachForecast::kIndeterminate) {
        const int r = st.rim_order;
        if (st.single_cycle_divergence) {
            check(rep.spine_diameter == (r + 1) / 2,
                  "spine diameter (r+1)/2 for the single folded cycle");
            std::ostringstream os;
            os << "closed form (r+3)/2 = " << (r + 3) / 2
               << " presumes a stacked cycle component, but h(-p) = r = " << r
               << " leaves only the folded one; computed diameter "
               << rep.spine_diameter << " = (r+1)/2";
            rep.resolutions.push_back({"cycle diameter", os.str()});
        } else {
            check(rep.spine_diameter == (r + 3) / 2, "spine diameter (r+3)/2");
        }
    }

    rep.status = rep.failures.empty() ? ConformanceReport::Status::kPass
                                      : ConformanceReport::Status::kFail;
    return rep;
}

std::string to_text(const ConformanceReport& r) {
    std::ostringstream os;
    os << "p=" << r.p << " ell=" << r.ell << " verdict=" << r.verdict() << "\n";
    os << "  vertices: full=" << r.full_vertices << " spine="
       << r.spine_vertices << " kernel=" << r.fp_vertices << "\n";
    os << "  components: kernel=" << r.fp_components << " folds=" << r.folds
       << " stacks=" << r.stacks << " image=" << r.image_components
       << " spine=" << r.spine_components << "\n";
    os << "  events: vertex-attach=" << r.vertex_attach_events
       << " new-edges=" << r.new_edge_events << " new-loops="
       << r.new_loop_total << "\n";
    os << "  spine diameter " << r.spine_diameter << "; shapes "
       << shapes_str(r.computed_shapes) << "\n";
    if (!r.route_reason.empty())
        os << "  routed to computation: " << r.route_reason << "\n";
    for (const auto& res : r.resolutions)
        os << "  resolved [" << res.topic << "]: " << res.detail << "\n";
    for (const auto& f : r.failures) os << "  FAIL: " << f << "\n";
    os << "  checks passed: " << r.passed.size() << "\n";
    return os.str();
}

}  // namespace ssig
