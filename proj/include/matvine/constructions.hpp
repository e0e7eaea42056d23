#pragma once

#include <algorithm>
#include <functional>
#include <string>
#include <vector>

#include "chordal.hpp"
#include "errors.hpp"
#include "labeled_graph.hpp"

namespace matvine {

/// Every edge of `small` appears in `big` with the same label.
inline bool agrees_on_edges(const LabeledGraph& big, const LabeledGraph& small) {
    for (const auto& e : small.labeled_edges()) {
        auto u = big.find(e.u), v = big.find(e.v);
        if (!u || !v || big.label(*u, *v) != e.label) return false;
    }
    return true;
}

/// The subgraph of `big` induced on the vertices of `small` equals `small`.
inline bool restriction_equals(const LabeledGraph& big, const LabeledGraph& small) {
    for (const auto& v : small.vertices())
        if (!big.find(v)) return false;
    return big.induced_ids(small.vertices()) == small;
}

namespace detail {

inline void require_mat(const LabeledGraph& g, const std::string& which) {
    auto v = check_mat_labeling(g);
    if (!v.ok())
        throw precondition_error("NotMatLabeled",
                                 which + " input is not MAT-labeled: " + v.violation()->message);
}

inline std::vector<std::string> shared_vertices(const LabeledGraph& g1, const LabeledGraph& g2) {
    std::vector<std::string> s;
    for (const auto& v : g1.vertices())
        if (g2.find(v)) s.push_back(v);
    return s;
}

/// Checks that g1 and g2 agree on the shared vertex set S and that S spans
/// an MAT-labeled complete graph in both.
inline void require_overlap(const LabeledGraph& g1, const LabeledGraph& g2,
                            const std::vector<std::string>& s) {
    for (std::size_t a = 0; a < s.size(); ++a)
        for (std::size_t b = a + 1; b < s.size(); ++b) {
            int x = g1.label(s[a], s[b]), y = g2.label(s[a], s[b]);
            if (x != y)
                throw precondition_error("LabelConflict", "shared pair {" + s[a] + "," + s[b] +
                                                              "} has labels " + std::to_string(x) +
                                                              " and " + std::to_string(y));
            if (x == 0)
                throw precondition_error("OverlapNotComplete", "shared vertices " + s[a] + " and " +
                                                                   s[b] + " are not adjacent");
        }
    auto r = check_mat_labeling(g1.induced_ids(s));
    if (!r.ok())
        throw precondition_error("OverlapNotMat",
                                 "restriction to the shared vertices is not MAT-labeled: " +
                                     r.violation()->message);
}

inline std::vector<std::string> union_vertices(const LabeledGraph& g1, const LabeledGraph& g2) {
    auto all = g1.vertices();
    for (const auto& v : g2.vertices())
        if (!g1.find(v)) all.push_back(v);
    return all;
}

}  // namespace detail

/// Union of two MAT-labeled graphs that agree on a complete MAT-labeled overlap.
inline LabeledGraph glue(const LabeledGraph& g1, const LabeledGraph& g2) {
    detail::require_mat(g1, "first");
    detail::require_mat(g2, "second");
    auto s = detail::shared_vertices(g1, g2);
    // one input contained in the other: the union is the larger graph
    if (s.size() == g1.size() && restriction_equals(g2, g1)) return g2;
    if (s.size() == g2.size() && restriction_equals(g1, g2)) return g1;
    detail::require_overlap(g1, g2, s);
    auto all = detail::union_vertices(g1, g2);
    std::vector<LabeledEdge> edges = g1.labeled_edges();
    for (const auto& e : g2.labeled_edges())
        if (!g1.find(e.u) || !g1.find(e.v)) edges.push_back(e);
    LabeledGraph r(all, edges);
    if (!check_mat_labeling(r).ok()) throw defect_error("glued graph is not MAT-labeled");
    return r;
}

/// MAT-labeled complete graph on the union of two MAT-labeled complete graphs
/// that restricts to both. The vertices of g1 outside the overlap are added to
/// g2 one at a time along an MAT-PEO of g1 that starts with the overlap; each
/// added vertex receives the labels that make it MAT-simplicial.
inline LabeledGraph merge_complete(const LabeledGraph& g1, const LabeledGraph& g2) {
    detail::require_mat(g1, "first");
    detail::require_mat(g2, "second");
    if (!g1.is_complete() || !g2.is_complete())
        throw precondition_error("NotComplete", "merge needs complete graphs");
    auto s = detail::shared_vertices(g1, g2);
    detail::require_overlap(g1, g2, s);

    auto all = detail::union_vertices(g1, g2);
    std::size_t n = all.size();
    LabeledGraph shell(all, {});
    std::vector<int> m(n * n, 0);
    auto put = [&](const LabeledGraph& g) {
        for (const auto& e : g.labeled_edges()) {
            std::size_t u = shell.index_of(e.u), v = shell.index_of(e.v);
            m[u * n + v] = m[v * n + u] = e.label;
        }
    };
    put(g1);
    put(g2);

    std::vector<char> alive(g1.size(), 1);
    std::vector<std::size_t> elim;
    for (;;) {
        bool any = false, found = false;
        for (std::size_t v = 0; v < g1.size() && !found; ++v) {
            if (!alive[v] || g2.find(g1.vertex(v))) continue;
            any = true;
            if (!detail::simplicial_in(g1, v, alive).ok()) continue;
            alive[v] = 0;
            elim.push_back(shell.index_of(g1.vertex(v)));
            found = true;
        }
        if (!any) break;
        if (!found) throw defect_error("no MAT-simplicial vertex outside the overlap");
    }
    std::vector<std::size_t> adds(elim.rbegin(), elim.rend());
    std::vector<std::size_t> others;
    for (const auto& v : g2.vertices())
        if (!g1.find(v)) others.push_back(shell.index_of(v));

    std::vector<char> placed(n, 0);
    for (const auto& v : g2.vertices()) placed[shell.index_of(v)] = 1;

    std::function<bool(std::size_t)> add = [&](std::size_t i) -> bool {
        if (i == adds.size()) return true;
        std::size_t a = adds[i];
        int base = 0;
        for (std::size_t y = 0; y < n; ++y)
            if (placed[y] && m[a * n + y] != 0) ++base;
        std::vector<std::size_t> order;
        std::vector<char> used(others.size(), 0);
        std::function<bool()> assign = [&]() -> bool {
            if (order.size() == others.size()) {
                placed[a] = 1;
                if (add(i + 1)) return true;
                placed[a] = 0;
                return false;
            }
            int q = base + static_cast<int>(order.size()) + 1;
            for (std::size_t t = 0; t < others.size(); ++t) {
                if (used[t]) continue;
                std::size_t b = others[t];
                bool fits = true;
                for (std::size_t y = 0; y < n && fits; ++y)
                    if (placed[y] && y != b && m[a * n + y] != 0) fits = m[b * n + y] < q;
                if (!fits) continue;
                used[t] = 1;
                order.push_back(b);
                m[a * n + b] = m[b * n + a] = q;
                if (assign()) return true;
                m[a * n + b] = m[b * n + a] = 0;
                order.pop_back();
                used[t] = 0;
            }
            return false;
        };
        return assign();
    };
    if (!add(0)) throw defect_error("merge search found no completion");

    auto r = LabeledGraph::from_matrix(all, std::move(m));
    if (!check_mat_labeling(r).ok() || !restriction_equals(r, g1) || !restriction_equals(r, g2))
        throw defect_error("merged graph fails validation");
    return r;
}

/// MAT-labeled complete graph on the vertices of g that agrees with g on its edges.
/// Recursion over maximal cliques: pick X0, Y0 with X0 ∩ Y0 containing every
/// other X0 ∩ Y, complete the union of the remaining cliques, merge with X0.
inline LabeledGraph extend_to_complete(const LabeledGraph& g) {
    detail::require_mat(g, "the");
    if (g.is_complete()) return g;
    auto cliques = maximal_cliques(g.graph());

    auto meet = [](const std::vector<std::size_t>& a, const std::vector<std::size_t>& b) {
        std::vector<std::size_t> r;
        std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(r));
        return r;
    };
    std::size_t x0 = cliques.size();
    for (std::size_t x = 0; x < cliques.size() && x0 == cliques.size(); ++x)
        for (std::size_t y = 0; y < cliques.size() && x0 == cliques.size(); ++y) {
            if (x == y) continue;
            auto top = meet(cliques[x], cliques[y]);
            bool ok = true;
            for (std::size_t z = 0; z < cliques.size() && ok; ++z) {
                if (z == x) continue;
                auto part = meet(cliques[x], cliques[z]);
                ok = std::includes(top.begin(), top.end(), part.begin(), part.end());
            }
            if (ok) x0 = x;
        }
    if (x0 == cliques.size()) throw defect_error("no clique pair with maximal intersection");

    std::vector<char> in_rest(g.size(), 0);
    for (std::size_t z = 0; z < cliques.size(); ++z)
        if (z != x0)
            for (auto v : cliques[z]) in_rest[v] = 1;
    std::vector<std::string> rest_ids;
    for (std::size_t v = 0; v < g.size(); ++v)
        if (in_rest[v]) rest_ids.push_back(g.vertex(v));
    std::vector<LabeledEdge> rest_edges;
    for (const auto& e : g.edges()) {
        bool inside = false;
        for (std::size_t z = 0; z < cliques.size() && !inside; ++z)
            inside = z != x0 && std::binary_search(cliques[z].begin(), cliques[z].end(), e.u) &&
                     std::binary_search(cliques[z].begin(), cliques[z].end(), e.v);
        if (inside) rest_edges.push_back({g.vertex(e.u), g.vertex(e.v), e.label});
    }
    LabeledGraph rest(rest_ids, rest_edges);
    auto merged = merge_complete(g.induced(cliques[x0]), extend_to_complete(rest));
    auto r = merged.induced_ids(g.vertices());
    if (!agrees_on_edges(r, g) || !check_mat_labeling(r).ok() || !r.is_complete())
        throw defect_error("extension fails validation");
    return r;
}

}  // namespace matvine
