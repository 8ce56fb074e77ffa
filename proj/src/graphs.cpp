#include "ssig/graphs.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <numeric>
#include <set>
#include <sstream>
#include <stdexcept>

#include "ssig/modpoly.hpp"

namespace ssig {

namespace {

// Component ids for an undirected support relation, assigned in ascending
// order of the component's smallest vertex.
std::vector<int> support_components(
    int n, const std::vector<std::vector<std::pair<int, int>>>& adj) {
    std::vector<std::vector<int>> support(n);
    for (int v = 0; v < n; ++v)
        for (const auto& [w, m] : adj[v]) {
            (void)m;
            support[v].push_back(w);
            support[w].push_back(v);
        }
    std::vector<int> comp(n, -1);
    int next = 0;
    for (int v = 0; v < n; ++v) {
        if (comp[v] != -1) continue;
        comp[v] = next;
        std::deque<int> queue{v};
        while (!queue.empty()) {
            int u = queue.front();
            queue.pop_front();
            for (int w : support[u])
                if (comp[w] == -1) {
                    comp[w] = next;
                    queue.push_back(w);
                }
        }
        ++next;
    }
    return comp;
}

}  // namespace

int IsogenyMultigraph::multiplicity(int u, int v) const {
    for (const auto& [w, m] : adj.at(u))
        if (w == v) return m;
    return 0;
}

int IsogenyMultigraph::out_degree_total(int v) const {
    int total = 0;
    for (const auto& [w, m] : adj.at(v)) {
        (void)w;
        total += m;
    }
    return total;
}

int IsogenyMultigraph::index_of(const Fp2& label) const {
    auto it = std::lower_bound(labels.begin(), labels.end(), label);
    if (it == labels.end() || !(*it == label)) return -1;
    return static_cast<int>(it - labels.begin());
}

std::vector<int> IsogenyMultigraph::component_ids() const {
    return support_components(n(), adj);
}

std::uint64_t expected_full_vertex_count(std::uint64_t p) {
    std::uint64_t eps = 0;
    switch (p % 12) {
        case 1: eps = 0; break;
        case 5: eps = 1; break;
        case 7: eps = 1; break;
        case 11: eps = 2; break;
        default:
            throw std::domain_error("vertex count formula needs p coprime to 12");
    }
    return p / 12 + eps;
}

IsogenyMultigraph build_full_graph(const FieldContext& F, int ell) {
    if (ell != 2 && ell != 3)
        throw std::domain_error("isogeny degree must be 2 or 3");
    const auto& ss = supersingular_j_list(F);
    if (ss.empty())
        throw std::logic_error("no rational supersingular j-invariant found");

    // Breadth-first closure from one rational supersingular j-invariant.
    std::map<Fp2, int> index;
    std::vector<Fp2> found;
    std::vector<std::vector<std::pair<int, int>>> rows;
    std::deque<int> queue;
    auto intern = [&](const Fp2& j) {
        auto it = index.find(j);
        if (it != index.end()) return it->second;
        int id = static_cast<int>(found.size());
        index.emplace(j, id);
        found.push_back(j);
        rows.emplace_back();
        queue.push_back(id);
        return id;
    };
    intern(Fp2(ss.front()));
    while (!queue.empty()) {
        int v = queue.front();
        queue.pop_front();
        const Fp2 jv = found[v];
        for (const auto& [jn, m] : isogeny_neighbors(F, ell, jv)) {
            int w = intern(jn);
            rows[v].emplace_back(w, m);
        }
    }

    const int n = static_cast<int>(found.size());
    if (static_cast<std::uint64_t>(n) != expected_full_vertex_count(F.p()))
        throw std::logic_error("supersingular vertex count disagrees with "
                               "floor(p/12) + eps");

    // Canonical vertex order: ascending labels.
    std::vector<int> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(),
              [&](int a, int b) { return found[a] < found[b]; });
    std::vector<int> rank(n);
    for (int i = 0; i < n; ++i) rank[order[i]] = i;

    IsogenyMultigraph g;
    g.F = &F;
    g.ell = ell;
    g.labels.resize(n);
    g.adj.resize(n);
    for (int i = 0; i < n; ++i) {
        g.labels[i] = found[order[i]];
        auto row = rows[order[i]];
        for (auto& [w, m] : row) {
            (void)m;
            w = rank[w];
        }
        std::sort(row.begin(), row.end());
        g.adj[i] = std::move(row);
    }

    for (int v = 0; v < n; ++v) {
        if (g.out_degree_total(v) != ell + 1)
            throw std::logic_error("vertex out-degree is not ell + 1");
        for (const auto& [w, m] : g.adj[v]) {
            (void)m;
            if (g.multiplicity(w, v) == 0)
                throw std::logic_error("edge support is not symmetric");
        }
    }
    for (const Fp& j : ss)
        if (g.index_of(Fp2(j)) < 0)
            throw std::logic_error("rational supersingular j missing from graph");
    return g;
}

IsogenyMultigraph spine_graph(const IsogenyMultigraph& full) {
    IsogenyMultigraph s;
    s.F = full.F;
    s.ell = full.ell;
    std::vector<int> remap(full.n(), -1);
    for (int v = 0; v < full.n(); ++v)
        if (full.labels[v].in_base()) {
            remap[v] = s.n();
            s.labels.push_back(full.labels[v]);
        }
    s.adj.resize(s.n());
    for (int v = 0; v < full.n(); ++v) {
        if (remap[v] < 0) continue;
        for (const auto& [w, m] : full.adj[v])
            if (remap[w] >= 0) s.adj[remap[v]].emplace_back(remap[w], m);
    }
    return s;
}

int FpIsogenyGraph::multiplicity(int u, int v) const {
    for (const auto& [w, m] : adj.at(u))
        if (w == v) return m;
    return 0;
}

int FpIsogenyGraph::component_count() const {
    int c = 0;
    for (int id : comp) c = std::max(c, id + 1);
    return c;
}

FpIsogenyGraph build_fp_graph(const FieldContext& F, int ell) {
    if (ell != 2 && ell != 3)
        throw std::domain_error("isogeny degree must be 2 or 3");
    const auto& ss = supersingular_j_list(F);

    FpIsogenyGraph g;
    g.F = &F;
    g.ell = ell;
    for (const Fp& j : ss) {
        auto [e1, e2] = twists_from_j(F, j);
        if (fp_isomorphic(e1, e2))
            throw std::logic_error("twist companions are isomorphic");
        g.verts.push_back({e1, invariants(e1), false, false});
        g.verts.push_back({e2, invariants(e2), false, false});
    }
    std::sort(g.verts.begin(), g.verts.end(),
              [](const FpVertex& a, const FpVertex& b) {
                  return std::tuple(a.inv.j.value(), a.model.a4.value(),
                                    a.model.a6.value()) <
                         std::tuple(b.inv.j.value(), b.model.a4.value(),
                                    b.model.a6.value());
              });
    const int n = g.n();

    std::map<std::uint64_t, std::vector<int>> by_j;
    for (int v = 0; v < n; ++v) by_j[g.verts[v].inv.j.value()].push_back(v);

    auto match_class = [&](const Curve& E) {
        const auto it = by_j.find(j_invariant(E).value());
        if (it == by_j.end())
            throw std::logic_error("isogeny codomain has unknown j-invariant");
        int found = -1;
        for (int w : it->second)
            if (fp_isomorphic(E, g.verts[w].model)) {
                if (found != -1)
                    throw std::logic_error("curve matches two twist classes");
                found = w;
            }
        if (found == -1)
            throw std::logic_error("curve matches no twist class");
        return found;
    };

    g.adj.resize(n);
    for (int v = 0; v < n; ++v) {
        for (const auto& K : rational_ell_kernels(g.verts[v].model, ell)) {
            const Curve C = isogeny_codomain(g.verts[v].model, K);
            int w = match_class(C);
            bool bumped = false;
            for (auto& [t, m] : g.adj[v])
                if (t == w) {
                    ++m;
                    bumped = true;
                    break;
                }
            if (!bumped) g.adj[v].emplace_back(w, 1);
        }
        std::sort(g.adj[v].begin(), g.adj[v].end());
    }

    for (int v = 0; v < n; ++v) {
        for (const auto& [w, m] : g.adj[v]) {
            if (w == v) {
                if (m % 2 != 0)
                    throw std::logic_error("odd self-kernel count");
            } else if (g.multiplicity(w, v) != m) {
                throw std::logic_error("kernel counts are not symmetric");
            }
        }
    }
    for (int v = 0; v < n; ++v)
        for (const auto& [w, m] : g.adj[v]) {
            if (w < v) continue;
            g.und_edges.emplace_back(v, w, w == v ? m / 2 : m);
        }

    g.comp = support_components(n, g.adj);

    g.twist.assign(n, -1);
    for (int v = 0; v < n; ++v) {
        g.twist[v] = match_class(quadratic_twist(g.verts[v].model));
    }
    for (int v = 0; v < n; ++v)
        if (g.twist[g.twist[v]] != v)
            throw std::logic_error("twist map is not an involution");

    // End-ring level for p = 3 mod 4: the top level is marked by full
    // rational 2-torsion, i.e. a split division cubic.
    if (F.p() % 4 == 3) {
        for (int v = 0; v < n; ++v) {
            const Curve& E = g.verts[v].model;
            Poly<Fp> cubic(F, {E.a6, E.a4, Fp(F, 0), Fp(F, 1)});
            int count = 0;
            for (const auto& [r, m] : roots_with_multiplicity(cubic)) {
                (void)r;
                count += m;
            }
            if (count != 1 && count != 3)
                throw std::logic_error("division cubic root count is not 1 or 3");
            g.verts[v].has_level = true;
            g.verts[v].surface = (count == 3);
        }
    }
    return g;
}

SpineAnalysis omega_analysis(const FpIsogenyGraph& fp,
                             const IsogenyMultigraph& full) {
    SpineAnalysis a;
    a.spine = spine_graph(full);
    const int ns = a.spine.n();
    if (fp.n() != 2 * ns)
        throw std::logic_error("F_p class count is not twice the spine size");

    std::map<std::uint64_t, int> spine_index;
    for (int s = 0; s < ns; ++s)
        spine_index.emplace(a.spine.labels[s].a_value(), s);
    std::vector<int> sv(fp.n());
    for (int v = 0; v < fp.n(); ++v)
        sv[v] = spine_index.at(fp.verts[v].inv.j.value());

    const int nc = fp.component_count();
    a.fp_component_count = nc;

    // The twist involution acts on components.
    std::vector<int> tcomp(nc, -1);
    for (int v = 0; v < fp.n(); ++v) {
        int c = fp.comp[v], tc = fp.comp[fp.twist[v]];
        if (tcomp[c] == -1)
            tcomp[c] = tc;
        else if (tcomp[c] != tc)
            throw std::logic_error("twist does not act on components");
    }

    // Canonical labeled form: vertex j multiset plus directed edge multiset
    // over j labels.
    using Form = std::pair<std::vector<std::uint64_t>,
                           std::vector<std::tuple<std::uint64_t, std::uint64_t, int>>>;
    std::vector<std::vector<int>> members(nc);
    for (int v = 0; v < fp.n(); ++v) members[fp.comp[v]].push_back(v);
    auto form_of = [&](int c) {
        Form f;
        for (int v : members[c]) {
            f.first.push_back(fp.verts[v].inv.j.value());
            for (const auto& [w, m] : fp.adj[v])
                f.second.emplace_back(fp.verts[v].inv.j.value(),
                                      fp.verts[w].inv.j.value(), m);
        }
        std::sort(f.first.begin(), f.first.end());
        std::sort(f.second.begin(), f.second.end());
        return f;
    };

    std::vector<char> handled(nc, 0);
    for (int c = 0; c < nc; ++c) {
        if (handled[c] || tcomp[c] == c) continue;
        int d = tcomp[c];
        if (tcomp[d] != c)
            throw std::logic_error("twist component map is not an involution");
        if (!(form_of(c) == form_of(d)))
            throw std::logic_error("twist-exchanged components differ");
        a.stacked_pairs.emplace_back(std::min(c, d), std::max(c, d));
        handled[c] = handled[d] = 1;
    }
    // Twist-stable components fold, except identical twins (two stable
    // components with the same labeled image), which stack.
    std::map<Form, std::vector<int>> stable_by_form;
    for (int c = 0; c < nc; ++c)
        if (!handled[c]) stable_by_form[form_of(c)].push_back(c);
    for (const auto& [f, group] : stable_by_form) {
        (void)f;
        if (group.size() == 1) {
            a.folded_components.push_back(group[0]);
        } else if (group.size() == 2) {
            a.stacked_pairs.emplace_back(group[0], group[1]);
        } else {
            throw std::logic_error("more than two identical twist-stable "
                                   "components");
        }
    }
    std::sort(a.stacked_pairs.begin(), a.stacked_pairs.end());
    std::sort(a.folded_components.begin(), a.folded_components.end());

    // Image components: merge each stacked pair.
    a.image_comp_of_fp_comp.assign(nc, -1);
    std::vector<int> partner(nc, -1);
    for (const auto& [x, y] : a.stacked_pairs) partner[x] = y, partner[y] = x;
    int next_ic = 0;
    for (int c = 0; c < nc; ++c) {
        if (a.image_comp_of_fp_comp[c] != -1) continue;
        a.image_comp_of_fp_comp[c] = next_ic;
        if (partner[c] != -1) a.image_comp_of_fp_comp[partner[c]] = next_ic;
        ++next_ic;
    }
    a.image_component_count = next_ic;
    a.image_members.assign(next_ic, {});
    for (int v = 0; v < fp.n(); ++v)
        a.image_members[a.image_comp_of_fp_comp[fp.comp[v]]].push_back(sv[v]);
    for (auto& mem : a.image_members) {
        std::sort(mem.begin(), mem.end());
        mem.erase(std::unique(mem.begin(), mem.end()), mem.end());
    }

    a.gamma.assign(ns, std::vector<int>(ns, 0));
    for (int v = 0; v < fp.n(); ++v)
        for (const auto& [w, m] : fp.adj[v]) a.gamma[sv[v]][sv[w]] += m;

    // Spine vertices lying in two or more image components.
    for (int s = 0; s < ns; ++s) {
        std::vector<int> owners;
        for (int ic = 0; ic < next_ic; ++ic)
            if (std::binary_search(a.image_members[ic].begin(),
                                   a.image_members[ic].end(), s))
                owners.push_back(ic);
        for (std::size_t i = 0; i < owners.size(); ++i)
            for (std::size_t k = i + 1; k < owners.size(); ++k)
                a.vertex_attachments.emplace_back(s, owners[i], owners[k]);
    }

    // Spine adjacency not covered by the kernel-edge image.
    auto owners_of = [&](int s) {
        std::set<int> o;
        for (int ic = 0; ic < next_ic; ++ic)
            if (std::binary_search(a.image_members[ic].begin(),
                                   a.image_members[ic].end(), s))
                o.insert(ic);
        return o;
    };
    for (int u = 0; u < ns; ++u) {
        for (int v = u + 1; v < ns; ++v) {
            int e1 = std::max(0, a.spine.multiplicity(u, v) - a.gamma[u][v]);
            int e2 = std::max(0, a.spine.multiplicity(v, u) - a.gamma[v][u]);
            if (e1 > 0 && e2 > 0) {
                NewEdgeEvent ev;
                ev.u = u;
                ev.v = v;
                ev.mult = std::min(e1, e2);
                auto ou = owners_of(u), ov = owners_of(v);
                ev.attaching = true;
                for (int ic : ou)
                    if (ov.count(ic)) ev.attaching = false;
                a.new_edges.push_back(ev);
                if (e1 > e2) a.one_sided.emplace_back(u, v, e1 - e2);
                if (e2 > e1) a.one_sided.emplace_back(v, u, e2 - e1);
            } else if (e1 > 0) {
                a.one_sided.emplace_back(u, v, e1);
            } else if (e2 > 0) {
                a.one_sided.emplace_back(v, u, e2);
            }
        }
        int le = std::max(0, a.spine.multiplicity(u, u) - a.gamma[u][u]);
        if (le > 0) a.new_loops.emplace_back(u, le);
    }
    return a;
}

std::string to_text(const IsogenyMultigraph& g, const std::string& kind) {
    std::ostringstream os;
    os << "# p=" << g.F->p() << " ell=" << g.ell << " kind=" << kind
       << " field=Fp2 nonresidue=" << g.F->nonresidue() << "\n";
    for (int v = 0; v < g.n(); ++v)
        os << "v " << v << " " << g.labels[v].to_string() << "\n";
    for (int v = 0; v < g.n(); ++v)
        for (const auto& [w, m] : g.adj[v])
            os << "e " << v << " " << w << " " << m << "\n";
    return os.str();
}

std::string to_dot(const IsogenyMultigraph& g, const std::string& kind) {
    std::ostringstream os;
    os << "digraph " << kind << " {\n";
    for (int v = 0; v < g.n(); ++v)
        os << "  " << v << " [label=\"j=" << g.labels[v].to_string() << "\"];\n";
    for (int v = 0; v < g.n(); ++v)
        for (const auto& [w, m] : g.adj[v])
            os << "  " << v << " -> " << w << " [label=\"" << m << "\"];\n";
    os << "}\n";
    return os.str();
}

std::string to_text(const FpIsogenyGraph& g) {
    std::ostringstream os;
    os << "# p=" << g.F->p() << " ell=" << g.ell
       << " kind=fp field=Fp nonresidue=" << g.F->nonresidue() << "\n";
    for (int v = 0; v < g.n(); ++v) {
        const FpVertex& x = g.verts[v];
        os << "v " << v << " " << x.inv.j.value() << " " << x.inv.c4.value()
           << " " << x.inv.c6.value();
        if (x.has_level) os << (x.surface ? " surface" : " floor");
        os << "\n";
    }
    for (int v = 0; v < g.n(); ++v)
        for (const auto& [w, m] : g.adj[v])
            os << "e " << v << " " << w << " " << m << "\n";
    return os.str();
}

std::string to_dot(const FpIsogenyGraph& g) {
    std::ostringstream os;
    os << "graph fp {\n";
    for (int v = 0; v < g.n(); ++v) {
        const FpVertex& x = g.verts[v];
        os << "  " << v << " [label=\"j=" << x.inv.j.value();
        if (x.has_level) os << (x.surface ? " S" : " F");
        os << "\"];\n";
    }
    for (const auto& [u, v, m] : g.und_edges)
        os << "  " << u << " -- " << v << " [label=\"" << m << "\"];\n";
    os << "}\n";
    return os.str();
}

}  // namespace ssig
