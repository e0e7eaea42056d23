#pragma once

#include <algorithm>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "constructions.hpp"
#include "errors.hpp"
#include "labeled_graph.hpp"
#include "vine_ops.hpp"
#include "vine_poset.hpp"

namespace matvine {

using NodeMap = std::map<std::string, std::string>;

/// Vertex map between labeled graphs.
struct GraphMorphism {
    LabeledGraph source, target;
    NodeMap map;
};

/// Node map between posets; the flags are computed, never taken on trust.
struct PosetMorphism {
    VinePoset source, target;
    NodeMap map;
    bool rank_preserving = false;
    bool join_preserving = false;
};

namespace detail {

inline std::string vertex_set_name(const LabeledGraph& g, const std::vector<std::size_t>& vs) {
    std::vector<std::string> ids;
    for (auto v : vs) ids.push_back(g.vertex(v));
    return set_name(ids);
}

inline std::string vertex_set_name(const LabeledGraph& g, const std::vector<std::string>& vs) {
    std::vector<std::size_t> idx;
    for (const auto& v : vs) idx.push_back(g.index_of(v));
    std::sort(idx.begin(), idx.end());
    idx.erase(std::unique(idx.begin(), idx.end()), idx.end());
    return vertex_set_name(g, idx);
}

}  // namespace detail

/// Poset of singletons and principal cliques ordered by inclusion, ranked by size.
/// A node is named by its vertex set, e.g. "{v1,v3,v4}".
inline VinePoset psi(const LabeledGraph& g) {
    auto cliques = principal_cliques(g);
    std::vector<std::string> ids;
    std::vector<int> ranks;
    std::vector<NodeSet> sets;
    for (std::size_t v = 0; v < g.size(); ++v) {
        ids.push_back(detail::vertex_set_name(g, std::vector<std::size_t>{v}));
        ranks.push_back(1);
        sets.emplace_back(g.size());
        sets.back().set(v);
    }
    for (const auto& pc : cliques) {
        ids.push_back(detail::vertex_set_name(g, pc.members));
        ranks.push_back(static_cast<int>(pc.members.size()));
        sets.emplace_back(g.size());
        for (auto m : pc.members) sets.back().set(m);
    }
    std::set<std::string> distinct(ids.begin(), ids.end());
    if (distinct.size() != ids.size()) throw defect_error("two edges share a principal clique");
    return poset_from_order(ids, ranks,
                            [&](std::size_t a, std::size_t b) { return sets[a].is_subset_of(sets[b]); });
}

/// Graph on the minimal nodes; i, j adjacent when they have a join, labeled
/// rank(i ∨ j) - 1. Joins come from the joining-path towers.
inline LabeledGraph omega(const VinePoset& p) {
    require_class(p, VineClass::LRVine, "omega");
    auto mins = p.minimal();
    std::vector<std::string> vs;
    for (auto m : mins) vs.push_back(p.id(m));
    auto adj = detail::forest_adjacency(p);
    std::vector<LabeledEdge> edges;
    for (std::size_t a = 0; a < mins.size(); ++a)
        for (std::size_t b = a + 1; b < mins.size(); ++b)
            if (auto tower = detail::checked_join(p, adj, mins[a], mins[b]))
                edges.push_back({vs[a], vs[b], p.rank(tower->back()[0]) - 1});
    if (edges.size() != p.size() - mins.size())
        throw defect_error("edge count differs from the number of non-minimal nodes");
    return LabeledGraph(vs, edges);
}

/// Label-preserving homomorphism check.
inline Verdict check_graph_morphism(const GraphMorphism& s) {
    for (const auto& v : s.source.vertices()) {
        auto it = s.map.find(v);
        if (it == s.map.end())
            return Verdict::fail("NotTotal", "vertex " + v + " has no image", {v});
        if (!s.target.find(it->second))
            return Verdict::fail("NotTotal", "image of " + v + " is not a target vertex", {v});
    }
    for (const auto& e : s.source.labeled_edges()) {
        const auto& a = s.map.at(e.u);
        const auto& b = s.map.at(e.v);
        if (a == b || s.target.label(a, b) != e.label)
            return Verdict::fail("NotLabelPreserving",
                                 "edge {" + e.u + "," + e.v + "} labeled " + std::to_string(e.label) +
                                     " maps to {" + a + "," + b + "}",
                                 {e.u, e.v}, {{e.u, e.v}});
    }
    return Verdict::pass();
}

/// Order preservation, with rank and join preservation computed into the flags.
inline Verdict analyze_poset_morphism(PosetMorphism& m) {
    const auto& p = m.source;
    const auto& q = m.target;
    std::vector<std::size_t> img(p.size());
    for (std::size_t v = 0; v < p.size(); ++v) {
        auto it = m.map.find(p.id(v));
        if (it == m.map.end() || !q.find(it->second))
            return Verdict::fail("NotTotal", "node " + p.id(v) + " has no image", {p.id(v)});
        img[v] = q.index_of(it->second);
    }
    for (std::size_t v = 0; v < p.size(); ++v)
        for (auto c : p.covers(v))
            if (!q.leq(img[c], img[v]))
                return Verdict::fail("NotOrderPreserving",
                                     p.id(c) + " < " + p.id(v) + " is not preserved",
                                     {p.id(c), p.id(v)});
    m.rank_preserving = true;
    for (std::size_t v = 0; v < p.size(); ++v)
        m.rank_preserving = m.rank_preserving && q.rank(img[v]) == p.rank(v);
    m.join_preserving = true;
    for (std::size_t a = 0; a < p.size() && m.join_preserving; ++a)
        for (std::size_t b = a + 1; b < p.size() && m.join_preserving; ++b)
            if (auto j = join(p, a, b)) {
                auto k = join(q, img[a], img[b]);
                m.join_preserving = k && *k == img[*j];
            }
    return Verdict::pass();
}

/// The induced map Ψ(σ): v ↦ {σ(a) | a ∈ v}.
inline PosetMorphism lift_graph_morphism(const GraphMorphism& s) {
    auto ok = check_graph_morphism(s);
    if (!ok.ok()) throw precondition_error(ok.tag(), ok.violation()->message);
    PosetMorphism m{psi(s.source), psi(s.target), {}, false, false};
    auto pcs = principal_cliques(s.source);
    for (std::size_t v = 0; v < s.source.size(); ++v)
        m.map[detail::vertex_set_name(s.source, std::vector<std::size_t>{v})] =
            detail::vertex_set_name(s.target, std::vector<std::string>{s.map.at(s.source.vertex(v))});
    for (const auto& pc : pcs) {
        std::vector<std::string> image;
        for (auto x : pc.members) image.push_back(s.map.at(s.source.vertex(x)));
        m.map[detail::vertex_set_name(s.source, pc.members)] =
            detail::vertex_set_name(s.target, image);
    }
    auto v = analyze_poset_morphism(m);
    if (!v.ok() || !m.rank_preserving || !m.join_preserving)
        throw defect_error("lifted poset map is not a rank- and join-preserving homomorphism");
    return m;
}

/// The induced map Ω(φ): minimal node i ↦ φ(i).
inline GraphMorphism lift_poset_morphism(const PosetMorphism& phi) {
    require_class(phi.source, VineClass::LRVine, "lift_poset_morphism");
    require_class(phi.target, VineClass::LRVine, "lift_poset_morphism");
    PosetMorphism m = phi;
    auto v = analyze_poset_morphism(m);
    if (!v.ok()) throw precondition_error(v.tag(), v.violation()->message);
    if (!m.rank_preserving) throw precondition_error("NotRankPreserving", "map does not preserve rank");
    if (!m.join_preserving) throw precondition_error("NotJoinPreserving", "map does not preserve joins");
    GraphMorphism g{omega(phi.source), omega(phi.target), {}};
    for (const auto& x : g.source.vertices()) g.map[x] = phi.map.at(x);
    if (!check_graph_morphism(g).ok())
        throw defect_error("lifted vertex map is not label-preserving");
    return g;
}

struct RoundTrip {
    Verdict verdict;
    NodeMap map;
};

/// Ω(Ψ(g)) against g through ε: i ↦ {i}.
inline RoundTrip roundtrip_check(const LabeledGraph& g) {
    RoundTrip r{Verdict::pass(), {}};
    auto back = omega(psi(g));
    if (back.size() != g.size())
        return {Verdict::fail("RoundTrip", "vertex count changed"), {}};
    for (std::size_t v = 0; v < g.size(); ++v)
        r.map[g.vertex(v)] = detail::vertex_set_name(g, std::vector<std::size_t>{v});
    GraphMorphism there{g, back, r.map};
    NodeMap inverse;
    for (const auto& [a, b] : r.map) inverse[b] = a;
    GraphMorphism home{back, g, inverse};
    if (auto v = check_graph_morphism(there); !v.ok()) return {v, r.map};
    if (auto v = check_graph_morphism(home); !v.ok()) return {v, r.map};
    return r;
}

/// Ψ(Ω(p)) against hat(p), and η: v ↦ U_v as an isomorphism p → hat(p).
inline RoundTrip roundtrip_check(const VinePoset& p) {
    RoundTrip r{Verdict::pass(), eta(p)};
    auto h = hat(p);
    auto back = psi(omega(p));
    if (!(back == h)) return {Verdict::fail("RoundTrip", "Ψ(Ω(p)) differs from hat(p)"), r.map};
    std::set<std::string> images;
    for (const auto& [a, b] : r.map) images.insert(b);
    if (images.size() != p.size() || h.size() != p.size())
        return {Verdict::fail("RoundTrip", "η is not a bijection"), r.map};
    for (std::size_t v = 0; v < p.size(); ++v) {
        std::size_t hv = h.index_of(r.map.at(p.id(v)));
        if (h.rank(hv) != p.rank(v))
            return {Verdict::fail("RoundTrip", "η changes the rank of " + p.id(v), {p.id(v)}), r.map};
        std::vector<std::string> a, b;
        for (auto c : p.covers(v)) a.push_back(r.map.at(p.id(c)));
        for (auto c : h.covers(hv)) b.push_back(h.id(c));
        std::sort(a.begin(), a.end());
        std::sort(b.begin(), b.end());
        if (a != b)
            return {Verdict::fail("RoundTrip", "η does not preserve covers at " + p.id(v), {p.id(v)}),
                    r.map};
    }
    return r;
}

/// Ψ(extend_to_complete(Ω(p))) with the image of p renamed back to p's node ids.
inline std::pair<VinePoset, PosetMorphism> embed_in_r_vine(const VinePoset& p) {
    require_class(p, VineClass::LRVine, "embed_in_r_vine");
    auto full = psi(extend_to_complete(omega(p)));
    auto e = eta(p);
    NodeMap back;
    for (const auto& [a, b] : e) back[b] = a;
    std::set<std::string> taken;
    for (std::size_t v = 0; v < p.size(); ++v) taken.insert(p.id(v));
    NodeMap rename;
    for (std::size_t v = 0; v < full.size(); ++v) {
        auto it = back.find(full.id(v));
        if (it != back.end()) {
            rename[full.id(v)] = it->second;
            continue;
        }
        std::string name = full.id(v);
        while (taken.count(name)) name += "'";
        taken.insert(name);
        rename[full.id(v)] = name;
    }
    std::vector<NodeSpec> specs;
    for (const auto& s : full.specs()) {
        NodeSpec t{rename.at(s.id), s.rank, {}, {}};
        for (const auto& c : s.covers) t.covers.push_back(rename.at(c));
        specs.push_back(std::move(t));
    }
    VinePoset r(std::move(specs));
    PosetMorphism m{p, r, {}, false, false};
    for (std::size_t v = 0; v < p.size(); ++v) m.map[p.id(v)] = p.id(v);
    if (back.size() != p.size()) throw defect_error("η is not injective");
    for (const auto& [hid, pid] : back)
        if (!full.find(hid)) throw defect_error("embedding image is missing node " + hid);
    auto v = analyze_poset_morphism(m);
    if (!v.ok() || !m.rank_preserving || classify(r).kind != VineClass::RVine)
        throw defect_error("embedding fails validation");
    std::vector<std::string> image;
    for (std::size_t x = 0; x < p.size(); ++x) image.push_back(p.id(x));
    if (!is_ideal(r, image)) throw defect_error("embedding image is not an ideal");
    for (std::size_t a = 0; a < p.size(); ++a)
        for (std::size_t b = 0; b < p.size(); ++b)
            if (p.leq(a, b) != r.leq(r.index_of(p.id(a)), r.index_of(p.id(b))))
                throw defect_error("embedding does not reflect the order");
    return {std::move(r), std::move(m)};
}

/// Sampling order from an MAT-PEO of Ω(p).
inline std::optional<Ordering> find_sampling_order(const VinePoset& p) {
    require_class(p, VineClass::LRVine, "find_sampling_order");
    auto order = find_mat_peo(omega(p));
    if (!order) throw defect_error("Ω(p) has no MAT-PEO");
    if (!is_sampling_order(p, *order).ok()) throw defect_error("MAT-PEO is not a sampling order");
    return order;
}

/// Calls `fn` on every label-preserving homomorphism g → h; stops when `fn` returns false.
inline void for_each_homomorphism(const LabeledGraph& g, const LabeledGraph& h,
                                  const std::function<bool(const std::vector<std::size_t>&)>& fn) {
    std::vector<std::size_t> img(g.size());
    bool stop = false;
    std::function<void(std::size_t)> rec = [&](std::size_t v) {
        if (stop) return;
        if (v == g.size()) {
            stop = !fn(img);
            return;
        }
        for (std::size_t w = 0; w < h.size() && !stop; ++w) {
            bool ok = true;
            for (std::size_t u = 0; u < v && ok; ++u)
                if (g.adjacent(u, v)) ok = h.label(img[u], w) == g.label(u, v);
            if (!ok) continue;
            img[v] = w;
            rec(v + 1);
        }
    };
    rec(0);
}

/// Verifies that `glued` with the inclusions of g1 and g2 is a pushout of the
/// inclusions of `overlap`, tested against every cocone into each target.
inline Verdict check_pushout(const LabeledGraph& g1, const LabeledGraph& g2,
                             const LabeledGraph& overlap, const LabeledGraph& glued,
                             const std::vector<LabeledGraph>& targets) {
    auto inclusion = [](const LabeledGraph& a, const LabeledGraph& b) {
        GraphMorphism m{a, b, {}};
        for (const auto& v : a.vertices()) m.map[v] = v;
        return check_graph_morphism(m);
    };
    for (auto [a, b, what] : {std::tuple{&overlap, &g1, "overlap into g1"},
                              std::tuple{&overlap, &g2, "overlap into g2"},
                              std::tuple{&g1, &glued, "g1 into glued"},
                              std::tuple{&g2, &glued, "g2 into glued"}}) {
        auto v = inclusion(*a, *b);
        if (!v.ok())
            return Verdict::fail("Commutation", std::string(what) + ": " + v.violation()->message,
                                 v.violation()->vertices, v.violation()->edges);
    }
    for (const auto& t : targets) {
        std::optional<Verdict> failure;
        for_each_homomorphism(g1, t, [&](const std::vector<std::size_t>& f1) {
            for_each_homomorphism(g2, t, [&](const std::vector<std::size_t>& f2) {
                for (const auto& x : overlap.vertices())
                    if (f1[g1.index_of(x)] != f2[g2.index_of(x)]) return true;
                std::vector<std::size_t> theta(glued.size(), t.size());
                for (std::size_t v = 0; v < glued.size(); ++v) {
                    const auto& id = glued.vertex(v);
                    if (auto a = g1.find(id)) theta[v] = f1[*a];
                    else if (auto b = g2.find(id)) theta[v] = f2[*b];
                }
                std::string cocone;
                for (std::size_t v = 0; v < glued.size(); ++v)
                    cocone += glued.vertex(v) + "->" +
                              (theta[v] < t.size() ? t.vertex(theta[v]) : std::string("?")) + " ";
                bool theta_ok = std::find(theta.begin(), theta.end(), t.size()) == theta.end();
                for (const auto& e : glued.edges())
                    theta_ok = theta_ok && t.label(theta[e.u], theta[e.v]) == e.label;
                if (!theta_ok) {
                    failure = Verdict::fail("NoMediator", "vertex-wise mediator fails for cocone " + cocone);
                    return false;
                }
                std::size_t mediators = 0;
                for_each_homomorphism(glued, t, [&](const std::vector<std::size_t>& h) {
                    bool match = true;
                    for (std::size_t v = 0; v < glued.size() && match; ++v) {
                        const auto& id = glued.vertex(v);
                        if (auto a = g1.find(id)) match = h[v] == f1[*a];
                        if (auto b = g2.find(id); match && b) match = h[v] == f2[*b];
                    }
                    if (match) ++mediators;
                    return mediators < 2;
                });
                if (mediators != 1) {
                    failure = Verdict::fail(mediators ? "NotUnique" : "NoMediator",
                                            std::to_string(mediators) + " mediators for cocone " + cocone);
                    return false;
                }
                return true;
            });
            return !failure;
        });
        if (failure) return *failure;
    }
    return Verdict::pass();
}

}  // namespace matvine
