#pragma once

#include <algorithm>
#include <bit>
#include <cstdint>
#include <functional>
#include <optional>
#include <queue>
#include <string>
#include <unordered_set>
#include <vector>

#include "errors.hpp"
#include "labeled_graph.hpp"
#include "verdict.hpp"

namespace matvine {

namespace detail {

using Mask = std::uint64_t;

inline Mask bit(int i) { return Mask{1} << i; }

/// Adjacency bitmasks; the search routines below are limited to 64 vertices.
struct BitGraph {
    int n = 0;
    std::vector<Mask> adj;

    explicit BitGraph(const Graph& g) : n(static_cast<int>(g.size())), adj(g.size(), 0) {
        if (g.size() > 64) throw resource_error("graph search is limited to 64 vertices");
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                if (g.adjacent(i, j)) adj[i] |= bit(j);
    }
    Mask all() const { return n == 64 ? ~Mask{0} : bit(n) - 1; }
};

template <class F>
void for_bits(Mask m, F&& f) {
    while (m) {
        int i = std::countr_zero(m);
        m &= m - 1;
        f(i);
    }
}

/// Maximum cardinality search. Position 0 is eliminated first; for a chordal
/// graph the result is a perfect elimination ordering.
inline std::vector<int> mcs_elimination(const BitGraph& g) {
    std::vector<int> weight(g.n, 0), order(g.n, -1);
    Mask numbered = 0;
    for (int pos = g.n - 1; pos >= 0; --pos) {
        int best = -1;
        for (int v = 0; v < g.n; ++v)
            if (!(numbered & bit(v)) && (best < 0 || weight[v] > weight[best])) best = v;
        order[pos] = best;
        numbered |= bit(best);
        for_bits(g.adj[best] & ~numbered, [&](int u) { ++weight[u]; });
    }
    return order;
}

/// Returns a vertex whose later neighbors do not form a clique, or -1.
inline int peo_failure(const BitGraph& g, const std::vector<int>& order) {
    std::vector<int> pos(g.n);
    for (int i = 0; i < g.n; ++i) pos[order[i]] = i;
    for (int i = 0; i < g.n; ++i) {
        int v = order[i];
        Mask later = 0;
        for_bits(g.adj[v], [&](int u) {
            if (pos[u] > i) later |= bit(u);
        });
        if (!later) continue;
        int first = -1;
        for_bits(later, [&](int u) {
            if (first < 0 || pos[u] < pos[first]) first = u;
        });
        Mask rest = later & ~bit(first);
        if ((rest & g.adj[first]) != rest) return v;
    }
    return -1;
}

inline bool is_chordal(const BitGraph& g) { return peo_failure(g, mcs_elimination(g)) < 0; }

/// Induced cycle of length >= 4, or empty if the graph is chordal.
inline std::vector<int> chordless_cycle(const BitGraph& g) {
    for (int v = 0; v < g.n; ++v) {
        for (int x = 0; x < g.n; ++x) {
            if (!(g.adj[v] & bit(x))) continue;
            for (int y = x + 1; y < g.n; ++y) {
                if (!(g.adj[v] & bit(y)) || (g.adj[x] & bit(y))) continue;
                Mask blocked = (g.adj[v] | bit(v)) & ~(bit(x) | bit(y));
                std::vector<int> prev(g.n, -1);
                std::queue<int> q;
                prev[x] = x;
                q.push(x);
                while (!q.empty()) {
                    int a = q.front();
                    q.pop();
                    for_bits(g.adj[a] & ~blocked, [&](int b) {
                        if (prev[b] < 0) {
                            prev[b] = a;
                            q.push(b);
                        }
                    });
                }
                if (prev[y] < 0) continue;
                std::vector<int> cyc{v};
                std::vector<int> path{y};
                while (path.back() != x) path.push_back(prev[path.back()]);
                cyc.insert(cyc.end(), path.rbegin(), path.rend());
                return cyc;
            }
        }
    }
    return {};
}

/// Simple elimination: repeatedly remove a vertex whose neighbors' closed
/// neighborhoods form a chain under inclusion. Succeeds iff strongly chordal.
inline bool has_simple_elimination(const BitGraph& g) {
    Mask alive = g.all();
    while (alive) {
        bool removed = false;
        for (int v = 0; v < g.n && !removed; ++v) {
            if (!(alive & bit(v))) continue;
            std::vector<Mask> closed;
            for_bits((g.adj[v] | bit(v)) & alive,
                     [&](int u) { closed.push_back((g.adj[u] | bit(u)) & alive); });
            std::sort(closed.begin(), closed.end(), [](Mask a, Mask b) {
                return std::popcount(a) < std::popcount(b);
            });
            bool chain = true;
            for (std::size_t i = 1; i < closed.size() && chain; ++i)
                chain = (closed[i - 1] & closed[i]) == closed[i - 1];
            if (chain) {
                alive &= ~bit(v);
                removed = true;
            }
        }
        if (!removed) return false;
    }
    return true;
}

struct Sun {
    std::vector<int> clique;  // u_1..u_n
    std::vector<int> rays;    // v_i adjacent to u_i and u_{i+1}
};

/// Exhaustive search for an induced n-sun with 3 <= n <= max_n.
inline std::optional<Sun> find_sun(const BitGraph& g, int max_n) {
    for (int n = 3; n <= max_n && 2 * n <= g.n; ++n) {
        std::vector<int> us, ws;
        Mask used = 0;
        std::optional<Sun> found;
        auto w_ok = [&](int w, int a, int b) {
            if (used & bit(w)) return false;
            if (!(g.adj[w] & bit(us[a])) || !(g.adj[w] & bit(us[b]))) return false;
            for (int i = 0; i < static_cast<int>(us.size()); ++i)
                if (i != a && i != b && (g.adj[w] & bit(us[i]))) return false;
            for (int x : ws)
                if (g.adj[w] & bit(x)) return false;
            return true;
        };
        std::function<void()> grow = [&] {
            if (found) return;
            int j = static_cast<int>(us.size());
            if (j == n) {
                for (int w = 0; w < g.n && !found; ++w)
                    if (w_ok(w, n - 1, 0)) {
                        auto rays = ws;
                        rays.push_back(w);
                        found = Sun{us, rays};
                    }
                return;
            }
            for (int u = 0; u < g.n && !found; ++u) {
                if (used & bit(u)) continue;
                if (j > 0 && u < us[0]) continue;
                bool ok = true;
                for (int x : us) ok = ok && (g.adj[u] & bit(x));
                for (int x : ws) ok = ok && !(g.adj[u] & bit(x));
                if (!ok) continue;
                us.push_back(u);
                used |= bit(u);
                if (j == 0) {
                    grow();
                } else {
                    for (int w = 0; w < g.n && !found; ++w) {
                        if (!w_ok(w, j - 1, j)) continue;
                        ws.push_back(w);
                        used |= bit(w);
                        grow();
                        used &= ~bit(w);
                        ws.pop_back();
                    }
                }
                used &= ~bit(u);
                us.pop_back();
            }
        };
        grow();
        if (found) return found;
    }
    return std::nullopt;
}

inline std::vector<Mask> components(const BitGraph& g) {
    std::vector<Mask> r;
    Mask seen = 0;
    for (int s = 0; s < g.n; ++s) {
        if (seen & bit(s)) continue;
        Mask comp = bit(s), frontier = bit(s);
        while (frontier) {
            Mask next = 0;
            for_bits(frontier, [&](int v) { next |= g.adj[v]; });
            frontier = next & ~comp;
            comp |= next;
        }
        seen |= comp;
        r.push_back(comp);
    }
    return r;
}

/// Builds an MAT-labeling of one connected component by adding vertices one
/// at a time, each MAT-simplicial in the graph built so far. Failed states
/// (vertex set plus labels) are memoized.
class LabelSearch {
public:
    LabelSearch(const BitGraph& g, Mask comp, std::vector<int>& lab)
        : g_(g), comp_(comp), lab_(lab) {}

    bool run() { return dfs(0); }

private:
    int& at(int a, int b) { return lab_[a * g_.n + b]; }

    std::string key(Mask added) {
        std::string k(reinterpret_cast<const char*>(&added), sizeof added);
        for_bits(added, [&](int a) {
            for_bits(added & g_.adj[a] & ~(bit(a + 1) - 1),
                     [&](int b) { k.push_back(static_cast<char>(at(a, b))); });
        });
        return k;
    }

    bool clique(Mask m) const {
        bool ok = true;
        for_bits(m, [&](int x) { ok = ok && ((g_.adj[x] | bit(x)) & m) == m; });
        return ok;
    }

    bool dfs(Mask added) {
        if (added == comp_) return true;
        Mask rest = comp_ & ~added;
        bool dead = false;
        for_bits(rest, [&](int w) { dead = dead || !clique(g_.adj[w] & added); });
        if (dead) return false;
        std::string k = key(added);
        if (failed_.count(k)) return false;
        bool ok = false;
        for_bits(rest, [&](int w) {
            if (ok) return;
            std::vector<int> nb;
            for_bits(g_.adj[w] & added, [&](int x) { nb.push_back(x); });
            std::vector<int> chosen;
            std::vector<char> taken(nb.size(), 0);
            std::function<void()> assign = [&] {
                if (ok) return;
                if (chosen.size() == nb.size()) {
                    for (std::size_t q = 0; q < chosen.size(); ++q)
                        at(w, chosen[q]) = at(chosen[q], w) = static_cast<int>(q) + 1;
                    ok = dfs(added | bit(w));
                    if (!ok)
                        for (int c : chosen) at(w, c) = at(c, w) = 0;
                    return;
                }
                int q = static_cast<int>(chosen.size()) + 1;
                for (std::size_t i = 0; i < nb.size() && !ok; ++i) {
                    if (taken[i]) continue;
                    bool fits = true;
                    for (int c : chosen) fits = fits && at(c, nb[i]) < q;
                    if (!fits) continue;
                    taken[i] = 1;
                    chosen.push_back(nb[i]);
                    assign();
                    chosen.pop_back();
                    taken[i] = 0;
                }
            };
            assign();
        });
        if (!ok) failed_.insert(std::move(k));
        return ok;
    }

    const BitGraph& g_;
    Mask comp_;
    std::vector<int>& lab_;
    std::unordered_set<std::string> failed_;
};

}  // namespace detail

inline bool is_chordal(const Graph& g) { return detail::is_chordal(detail::BitGraph(g)); }

/// Chordality by maximum cardinality search, then a simple elimination
/// ordering. Witness: an induced cycle (NotChordal) or an induced sun (SunFound).
inline Verdict is_strongly_chordal(const Graph& g) {
    detail::BitGraph bg(g);
    auto ids = [&](const std::vector<int>& vs) {
        std::vector<std::string> r;
        for (int v : vs) r.push_back(g.vertex(v));
        return r;
    };
    if (!detail::is_chordal(bg)) {
        auto cyc = detail::chordless_cycle(bg);
        if (cyc.empty()) throw defect_error("non-chordal graph without an induced long cycle");
        return Verdict::fail("NotChordal",
                             "induced cycle of length " + std::to_string(cyc.size()), ids(cyc));
    }
    if (detail::has_simple_elimination(bg)) return Verdict::pass();
    auto sun = detail::find_sun(bg, bg.n / 2);
    if (!sun) throw defect_error("chordal graph without simple elimination ordering has no sun");
    auto vs = ids(sun->clique);
    auto rays = ids(sun->rays);
    vs.insert(vs.end(), rays.begin(), rays.end());
    return Verdict::fail("SunFound", "induced " + std::to_string(sun->clique.size()) + "-sun", vs);
}

/// Maximal cliques of a chordal graph, each sorted, listed by smallest member.
inline std::vector<std::vector<std::size_t>> maximal_cliques(const Graph& g) {
    detail::BitGraph bg(g);
    auto order = detail::mcs_elimination(bg);
    if (detail::peo_failure(bg, order) >= 0)
        throw precondition_error("NotChordal", "maximal cliques need a chordal graph");
    std::vector<detail::Mask> cand;
    detail::Mask seen = 0;
    for (int i = bg.n - 1; i >= 0; --i) {
        int v = order[i];
        cand.push_back((bg.adj[v] & seen) | detail::bit(v));
        seen |= detail::bit(v);
    }
    std::vector<detail::Mask> maximal;
    for (auto c : cand) {
        bool sub = false;
        for (auto d : cand) sub = sub || (c != d && (c & d) == c);
        if (!sub && std::find(maximal.begin(), maximal.end(), c) == maximal.end())
            maximal.push_back(c);
    }
    std::vector<std::vector<std::size_t>> r;
    for (auto m : maximal) {
        std::vector<std::size_t> cl;
        detail::for_bits(m, [&](int v) { cl.push_back(static_cast<std::size_t>(v)); });
        r.push_back(cl);
    }
    std::sort(r.begin(), r.end());
    return r;
}

/// Some MAT-labeling of g, or none when g admits none.
inline std::optional<LabeledGraph> find_mat_labeling(const Graph& g) {
    detail::BitGraph bg(g);
    if (!detail::is_chordal(bg)) return std::nullopt;
    std::vector<int> lab(g.size() * g.size(), 0);
    for (auto comp : detail::components(bg)) {
        detail::LabelSearch search(bg, comp, lab);
        if (!search.run()) return std::nullopt;
    }
    return LabeledGraph::from_matrix(g.vertices(), std::move(lab));
}

}  // namespace matvine
