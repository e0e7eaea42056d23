#pragma once

#include <algorithm>
#include <cstddef>
#include <functional>
#include <map>
#include <numeric>
#include <optional>
#include <queue>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "errors.hpp"
#include "verdict.hpp"

namespace matvine {

/// A sequence of distinct vertex identifiers.
using Ordering = std::vector<std::string>;

namespace detail {

class VertexIndex {
public:
    VertexIndex() = default;
    explicit VertexIndex(std::vector<std::string> ids) : ids_(std::move(ids)) {
        for (std::size_t i = 0; i < ids_.size(); ++i) {
            if (ids_[i].empty()) throw input_error("empty vertex identifier");
            if (!map_.emplace(ids_[i], i).second)
                throw input_error("duplicate vertex '" + ids_[i] + "'");
        }
    }
    std::size_t size() const { return ids_.size(); }
    const std::vector<std::string>& ids() const { return ids_; }
    const std::string& id(std::size_t i) const { return ids_.at(i); }
    std::optional<std::size_t> find(const std::string& id) const {
        auto it = map_.find(id);
        if (it == map_.end()) return std::nullopt;
        return it->second;
    }
    std::size_t at(const std::string& id) const {
        auto it = map_.find(id);
        if (it == map_.end()) throw input_error("unknown vertex '" + id + "'");
        return it->second;
    }

private:
    std::vector<std::string> ids_;
    std::unordered_map<std::string, std::size_t> map_;
};

}  // namespace detail

/// Finite simple graph on opaque string vertices.
class Graph {
public:
    Graph() = default;
    Graph(std::vector<std::string> vertices,
          const std::vector<std::pair<std::string, std::string>>& edges)
        : index_(std::move(vertices)), adj_(index_.size() * index_.size(), 0) {
        for (const auto& [a, b] : edges) {
            std::size_t i = index_.at(a), j = index_.at(b);
            if (i == j) throw input_error("loop at vertex '" + a + "'");
            if (adj_[i * size() + j]) throw input_error("duplicate edge {" + a + "," + b + "}");
            adj_[i * size() + j] = adj_[j * size() + i] = 1;
        }
    }

    /// `adj` is a row-major n*n 0/1 matrix; it must be symmetric with zero diagonal.
    static Graph from_adjacency(std::vector<std::string> vertices, std::vector<char> adj) {
        Graph g;
        g.index_ = detail::VertexIndex(std::move(vertices));
        std::size_t n = g.size();
        if (adj.size() != n * n) throw input_error("adjacency matrix has wrong size");
        for (std::size_t i = 0; i < n; ++i) {
            if (adj[i * n + i]) throw input_error("loop at vertex '" + g.vertex(i) + "'");
            for (std::size_t j = 0; j < n; ++j)
                if ((adj[i * n + j] != 0) != (adj[j * n + i] != 0))
                    throw input_error("adjacency matrix is not symmetric");
        }
        for (auto& c : adj) c = c ? 1 : 0;
        g.adj_ = std::move(adj);
        return g;
    }

    std::size_t size() const { return index_.size(); }
    const std::vector<std::string>& vertices() const { return index_.ids(); }
    const std::string& vertex(std::size_t i) const { return index_.id(i); }
    std::optional<std::size_t> find(const std::string& id) const { return index_.find(id); }
    std::size_t index_of(const std::string& id) const { return index_.at(id); }

    bool adjacent(std::size_t i, std::size_t j) const { return adj_[i * size() + j] != 0; }
    std::vector<std::size_t> neighbors(std::size_t i) const {
        std::vector<std::size_t> r;
        for (std::size_t j = 0; j < size(); ++j)
            if (adjacent(i, j)) r.push_back(j);
        return r;
    }
    std::size_t degree(std::size_t i) const { return neighbors(i).size(); }
    std::vector<std::pair<std::size_t, std::size_t>> edges() const {
        std::vector<std::pair<std::size_t, std::size_t>> r;
        for (std::size_t i = 0; i < size(); ++i)
            for (std::size_t j = i + 1; j < size(); ++j)
                if (adjacent(i, j)) r.emplace_back(i, j);
        return r;
    }
    std::size_t edge_count() const { return edges().size(); }

    Graph induced(const std::vector<std::size_t>& keep) const {
        std::vector<std::string> ids;
        std::vector<char> adj(keep.size() * keep.size(), 0);
        for (std::size_t a = 0; a < keep.size(); ++a) {
            ids.push_back(vertex(keep[a]));
            for (std::size_t b = 0; b < keep.size(); ++b)
                adj[a * keep.size() + b] = adjacent(keep[a], keep[b]) ? 1 : 0;
        }
        return from_adjacency(std::move(ids), std::move(adj));
    }

private:
    detail::VertexIndex index_;
    std::vector<char> adj_;
};

/// Edge given by vertex identifiers.
struct LabeledEdge {
    std::string u, v;
    int label = 0;
};

/// Edge given by vertex indices, u < v.
struct Edge {
    std::size_t u = 0, v = 0;
    int label = 0;
};

/// Finite simple graph with a positive integer label on every edge
/// (a candidate MAT-labeling). Label 0 in the matrix means "no edge".
class LabeledGraph {
public:
    LabeledGraph() = default;
    LabeledGraph(std::vector<std::string> vertices, const std::vector<LabeledEdge>& edges)
        : index_(std::move(vertices)), lab_(index_.size() * index_.size(), 0) {
        for (const auto& e : edges) {
            std::size_t i = index_.at(e.u), j = index_.at(e.v);
            if (i == j) throw input_error("loop at vertex '" + e.u + "'");
            if (e.label < 1)
                throw input_error("edge {" + e.u + "," + e.v + "} has non-positive label " +
                                  std::to_string(e.label));
            if (lab_[i * size() + j] != 0)
                throw input_error("duplicate edge {" + e.u + "," + e.v + "}");
            lab_[i * size() + j] = lab_[j * size() + i] = e.label;
        }
    }

    /// `labels` is a row-major n*n symmetric matrix, 0 meaning no edge.
    static LabeledGraph from_matrix(std::vector<std::string> vertices, std::vector<int> labels) {
        LabeledGraph g;
        g.index_ = detail::VertexIndex(std::move(vertices));
        std::size_t n = g.size();
        if (labels.size() != n * n) throw input_error("label matrix has wrong size");
        for (std::size_t i = 0; i < n; ++i) {
            if (labels[i * n + i] != 0) throw input_error("loop at vertex '" + g.vertex(i) + "'");
            for (std::size_t j = 0; j < n; ++j) {
                if (labels[i * n + j] != labels[j * n + i])
                    throw input_error("label matrix is not symmetric");
                if (labels[i * n + j] < 0) throw input_error("negative label");
            }
        }
        g.lab_ = std::move(labels);
        return g;
    }

    std::size_t size() const { return index_.size(); }
    bool empty() const { return size() == 0; }
    const std::vector<std::string>& vertices() const { return index_.ids(); }
    const std::string& vertex(std::size_t i) const { return index_.id(i); }
    std::optional<std::size_t> find(const std::string& id) const { return index_.find(id); }
    std::size_t index_of(const std::string& id) const { return index_.at(id); }

    int label(std::size_t i, std::size_t j) const { return lab_[i * size() + j]; }
    int label(const std::string& a, const std::string& b) const {
        return label(index_of(a), index_of(b));
    }
    bool adjacent(std::size_t i, std::size_t j) const { return label(i, j) != 0; }

    std::vector<std::size_t> neighbors(std::size_t i) const {
        std::vector<std::size_t> r;
        for (std::size_t j = 0; j < size(); ++j)
            if (adjacent(i, j)) r.push_back(j);
        return r;
    }
    std::size_t degree(std::size_t i) const { return neighbors(i).size(); }

    /// Edges in lexicographic order of (u, v) with u < v.
    std::vector<Edge> edges() const {
        std::vector<Edge> r;
        for (std::size_t i = 0; i < size(); ++i)
            for (std::size_t j = i + 1; j < size(); ++j)
                if (adjacent(i, j)) r.push_back({i, j, label(i, j)});
        return r;
    }
    std::vector<LabeledEdge> labeled_edges() const {
        std::vector<LabeledEdge> r;
        for (const auto& e : edges()) r.push_back({vertex(e.u), vertex(e.v), e.label});
        return r;
    }
    std::size_t edge_count() const { return edges().size(); }
    int max_label() const {
        int m = 0;
        for (int x : lab_) m = std::max(m, x);
        return m;
    }
    bool is_complete() const {
        for (std::size_t i = 0; i < size(); ++i)
            for (std::size_t j = i + 1; j < size(); ++j)
                if (!adjacent(i, j)) return false;
        return true;
    }
    const std::vector<int>& matrix() const { return lab_; }

    LabeledGraph induced(const std::vector<std::size_t>& keep) const {
        std::vector<std::string> ids;
        std::vector<int> m(keep.size() * keep.size(), 0);
        for (std::size_t a = 0; a < keep.size(); ++a) {
            ids.push_back(vertex(keep[a]));
            for (std::size_t b = 0; b < keep.size(); ++b) m[a * keep.size() + b] = label(keep[a], keep[b]);
        }
        return from_matrix(std::move(ids), std::move(m));
    }
    LabeledGraph induced_ids(const std::vector<std::string>& keep) const {
        std::vector<std::size_t> idx;
        for (const auto& k : keep) idx.push_back(index_of(k));
        return induced(idx);
    }
    LabeledGraph without(std::size_t v) const {
        std::vector<std::size_t> keep;
        for (std::size_t i = 0; i < size(); ++i)
            if (i != v) keep.push_back(i);
        return induced(keep);
    }

    Graph graph() const {
        std::vector<char> adj(lab_.size());
        for (std::size_t i = 0; i < lab_.size(); ++i) adj[i] = lab_[i] ? 1 : 0;
        return Graph::from_adjacency(vertices(), std::move(adj));
    }

    /// Same vertex set and same labels; vertex order is ignored.
    friend bool operator==(const LabeledGraph& a, const LabeledGraph& b) {
        if (a.size() != b.size()) return false;
        for (std::size_t i = 0; i < a.size(); ++i) {
            auto bi = b.find(a.vertex(i));
            if (!bi) return false;
            for (std::size_t j = i + 1; j < a.size(); ++j)
                if (a.label(i, j) != b.label(*bi, b.index_of(a.vertex(j)))) return false;
        }
        return true;
    }
    friend bool operator!=(const LabeledGraph& a, const LabeledGraph& b) { return !(a == b); }

private:
    detail::VertexIndex index_;
    std::vector<int> lab_;
};

/// Edges with label exactly k (the label class written π_k).
inline std::vector<Edge> label_class(const LabeledGraph& g, int k) {
    std::vector<Edge> r;
    for (const auto& e : g.edges())
        if (e.label == k) r.push_back(e);
    return r;
}

/// Vertices w with both {u,w} and {v,w} labeled below `below`.
inline std::vector<std::size_t> conditioning_vertices(const LabeledGraph& g, std::size_t u,
                                                      std::size_t v, int below) {
    std::vector<std::size_t> r;
    for (std::size_t w = 0; w < g.size(); ++w) {
        if (w == u || w == v) continue;
        int a = g.label(u, w), b = g.label(v, w);
        if (a > 0 && a < below && b > 0 && b < below) r.push_back(w);
    }
    return r;
}

inline bool is_clique(const LabeledGraph& g, const std::vector<std::size_t>& vs) {
    for (std::size_t a = 0; a < vs.size(); ++a)
        for (std::size_t b = a + 1; b < vs.size(); ++b)
            if (!g.adjacent(vs[a], vs[b])) return false;
    return true;
}

namespace detail {

/// Path from s to t using only edges of label k other than {s,t} itself; empty if none.
inline std::vector<std::size_t> label_path(const LabeledGraph& g, int k, std::size_t s,
                                           std::size_t t) {
    std::vector<std::size_t> prev(g.size(), g.size());
    std::queue<std::size_t> q;
    prev[s] = s;
    q.push(s);
    while (!q.empty()) {
        std::size_t x = q.front();
        q.pop();
        if (x == t) break;
        for (std::size_t y = 0; y < g.size(); ++y)
            if (prev[y] == g.size() && g.label(x, y) == k && !(x == s && y == t)) {
                prev[y] = x;
                q.push(y);
            }
    }
    if (prev[t] == g.size()) return {};
    std::vector<std::size_t> path{t};
    while (path.back() != s) path.push_back(prev[path.back()]);
    std::reverse(path.begin(), path.end());
    return path;
}

struct Dsu {
    std::vector<std::size_t> p;
    explicit Dsu(std::size_t n) : p(n) { std::iota(p.begin(), p.end(), 0); }
    std::size_t find(std::size_t x) {
        while (p[x] != x) x = p[x] = p[p[x]];
        return x;
    }
    bool unite(std::size_t a, std::size_t b) {
        a = find(a);
        b = find(b);
        if (a == b) return false;
        p[b] = a;
        return true;
    }
};

inline std::vector<std::string> ids_of(const LabeledGraph& g, const std::vector<std::size_t>& vs) {
    std::vector<std::string> r;
    for (auto v : vs) r.push_back(g.vertex(v));
    return r;
}

}  // namespace detail

/// Checks both MAT axioms label by label, in increasing label order.
inline Verdict check_mat_labeling(const LabeledGraph& g) {
    auto edges = g.edges();
    std::vector<int> labels;
    for (const auto& e : edges) labels.push_back(e.label);
    std::sort(labels.begin(), labels.end());
    labels.erase(std::unique(labels.begin(), labels.end()), labels.end());

    auto cycle_witness = [&](int k, const Edge& e, const std::string& msg) {
        auto path = detail::label_path(g, k, e.u, e.v);
        return Verdict::fail("ML1", msg, detail::ids_of(g, path),
                             {{g.vertex(e.u), g.vertex(e.v)}});
    };

    for (int k : labels) {
        detail::Dsu dsu(g.size());
        for (const auto& e : edges) {
            if (e.label != k) continue;
            if (dsu.find(e.u) == dsu.find(e.v))
                return cycle_witness(k, e,
                                     "edges labeled " + std::to_string(k) + " contain a cycle");
            dsu.unite(e.u, e.v);
        }
        for (const auto& e : edges)
            if (e.label < k && dsu.find(e.u) == dsu.find(e.v))
                return cycle_witness(k, e,
                                     "edge labeled " + std::to_string(e.label) +
                                         " joins vertices connected by label " +
                                         std::to_string(k));
        for (const auto& e : edges) {
            if (e.label != k) continue;
            auto w = conditioning_vertices(g, e.u, e.v, k);
            if (static_cast<int>(w.size()) != k - 1)
                return Verdict::fail("ML2",
                                     "edge labeled " + std::to_string(k) + " has " +
                                         std::to_string(w.size()) + " conditioning vertices, needs " +
                                         std::to_string(k - 1),
                                     detail::ids_of(g, w), {{g.vertex(e.u), g.vertex(e.v)}});
        }
    }
    return Verdict::pass();
}

namespace detail {

/// MAT-simplicial test of v inside the induced subgraph on `alive`.
inline Verdict simplicial_in(const LabeledGraph& g, std::size_t v, const std::vector<char>& alive) {
    std::vector<std::size_t> nb;
    for (std::size_t j = 0; j < g.size(); ++j)
        if (alive[j] && g.adjacent(v, j)) nb.push_back(j);
    for (std::size_t a = 0; a < nb.size(); ++a)
        for (std::size_t b = a + 1; b < nb.size(); ++b)
            if (!g.adjacent(nb[a], nb[b]))
                return Verdict::fail("MS1", "neighbors of " + g.vertex(v) + " are not adjacent",
                                     {g.vertex(v), g.vertex(nb[a]), g.vertex(nb[b])});
    std::vector<int> ls;
    for (auto u : nb) ls.push_back(g.label(v, u));
    std::sort(ls.begin(), ls.end());
    for (std::size_t i = 0; i < ls.size(); ++i)
        if (ls[i] != static_cast<int>(i) + 1)
            return Verdict::fail("MS2",
                                 "labels at " + g.vertex(v) + " are not 1.." +
                                     std::to_string(ls.size()),
                                 {g.vertex(v)});
    for (std::size_t a = 0; a < nb.size(); ++a)
        for (std::size_t b = a + 1; b < nb.size(); ++b)
            if (g.label(nb[a], nb[b]) >= std::max(g.label(nb[a], v), g.label(nb[b], v)))
                return Verdict::fail("MS3",
                                     "label of {" + g.vertex(nb[a]) + "," + g.vertex(nb[b]) +
                                         "} is not below both labels at " + g.vertex(v),
                                     {g.vertex(v), g.vertex(nb[a]), g.vertex(nb[b])},
                                     {{g.vertex(nb[a]), g.vertex(nb[b])}});
    return Verdict::pass();
}

}  // namespace detail

inline Verdict is_mat_simplicial(const LabeledGraph& g, std::size_t v) {
    if (v >= g.size()) throw input_error("vertex index out of range");
    return detail::simplicial_in(g, v, std::vector<char>(g.size(), 1));
}

inline Verdict is_mat_simplicial(const LabeledGraph& g, const std::string& v) {
    return is_mat_simplicial(g, g.index_of(v));
}

/// Greedy elimination: repeatedly remove the first MAT-simplicial vertex.
inline std::optional<Ordering> find_mat_peo(const LabeledGraph& g) {
    std::vector<char> alive(g.size(), 1);
    Ordering rev;
    for (std::size_t step = 0; step < g.size(); ++step) {
        bool found = false;
        for (std::size_t v = 0; v < g.size() && !found; ++v) {
            if (!alive[v] || !detail::simplicial_in(g, v, alive).ok()) continue;
            alive[v] = 0;
            rev.push_back(g.vertex(v));
            found = true;
        }
        if (!found) return std::nullopt;
    }
    return Ordering(rev.rbegin(), rev.rend());
}

/// Calls `fn` on every MAT-PEO of g; stops early when `fn` returns false.
inline void for_each_mat_peo(const LabeledGraph& g, const std::function<bool(const Ordering&)>& fn) {
    std::vector<char> alive(g.size(), 1);
    std::vector<std::size_t> rev;
    bool stop = false;
    std::function<void()> rec = [&] {
        if (stop) return;
        if (rev.size() == g.size()) {
            Ordering o;
            for (auto it = rev.rbegin(); it != rev.rend(); ++it) o.push_back(g.vertex(*it));
            if (!fn(o)) stop = true;
            return;
        }
        for (std::size_t v = 0; v < g.size() && !stop; ++v) {
            if (!alive[v] || !detail::simplicial_in(g, v, alive).ok()) continue;
            alive[v] = 0;
            rev.push_back(v);
            rec();
            rev.pop_back();
            alive[v] = 1;
        }
    };
    rec();
}

/// Checks that every v_i is MAT-simplicial in the graph induced by v_1..v_i.
inline Verdict is_mat_peo(const LabeledGraph& g, const Ordering& order) {
    if (order.size() != g.size()) throw input_error("ordering does not cover all vertices");
    std::vector<char> alive(g.size(), 0);
    std::vector<std::size_t> idx;
    for (const auto& id : order) {
        std::size_t i = g.index_of(id);
        if (alive[i]) throw input_error("vertex '" + id + "' repeated in ordering");
        alive[i] = 1;
        idx.push_back(i);
    }
    for (std::size_t p = idx.size(); p-- > 0;) {
        auto v = detail::simplicial_in(g, idx[p], alive);
        if (!v.ok()) return v;
        alive[idx[p]] = 0;
    }
    return Verdict::pass();
}

/// Principal clique of an edge: endpoints plus conditioning vertices.
struct PrincipalClique {
    Edge edge;
    std::vector<std::size_t> members;  // sorted vertex indices
};

inline std::vector<PrincipalClique> principal_cliques(const LabeledGraph& g) {
    auto v = check_mat_labeling(g);
    if (!v.ok())
        throw precondition_error("NotMatLabeled", "principal cliques need an MAT-labeling: " +
                                                      v.violation()->message);
    std::vector<PrincipalClique> r;
    for (const auto& e : g.edges()) {
        auto m = conditioning_vertices(g, e.u, e.v, e.label);
        m.push_back(e.u);
        m.push_back(e.v);
        std::sort(m.begin(), m.end());
        r.push_back({e, std::move(m)});
    }
    return r;
}

}  // namespace matvine
