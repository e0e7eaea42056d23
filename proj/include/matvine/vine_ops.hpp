#pragma once

#include <algorithm>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <queue>
#include <string>
#include <utility>
#include <vector>

#include "errors.hpp"
#include "vine_poset.hpp"

namespace matvine {

namespace detail {

inline std::vector<std::string> ids_of(const VinePoset& p, const NodeSet& s) {
    std::vector<std::string> r;
    for (auto i = s.find_first(); i != NodeSet::npos; i = s.find_next(i)) r.push_back(p.id(i));
    return r;
}

inline std::vector<std::size_t> members(const NodeSet& s) {
    std::vector<std::size_t> r;
    for (auto i = s.find_first(); i != NodeSet::npos; i = s.find_next(i)) r.push_back(i);
    return r;
}

inline std::size_t require_minimal(const VinePoset& p, const std::string& id) {
    std::size_t v = p.index_of(id);
    if (!p.is_minimal(v)) throw input_error("node '" + id + "' is not minimal");
    return v;
}

}  // namespace detail

/// Minimal nodes below v (the complete union U_v), as a node set.
inline NodeSet complete_union_set(const VinePoset& p, std::size_t v) {
    return p.down(v) & p.minimal_set();
}

/// Nodes of rank rank(v)-k below v.
inline std::vector<std::string> union_of(const VinePoset& p, const std::string& v, int k) {
    require_class(p, VineClass::Vine, "union_of");
    std::size_t x = p.index_of(v);
    if (k < 0 || k > p.rank(x) - 1)
        throw input_error("k = " + std::to_string(k) + " out of range 0.." +
                          std::to_string(p.rank(x) - 1));
    std::vector<std::string> r;
    int target = p.rank(x) - k;
    for (auto u : detail::members(p.down(x)))
        if (p.rank(u) == target) r.push_back(p.id(u));
    return r;
}

inline std::vector<std::string> complete_union(const VinePoset& p, const std::string& v) {
    return union_of(p, v, p.rank(p.index_of(v)) - 1);
}

struct CondSets {
    std::vector<std::string> conditioned;   // always two nodes
    std::vector<std::string> conditioning;
};

namespace detail {

inline std::pair<NodeSet, NodeSet> cond_set_bits(const VinePoset& p, std::size_t v) {
    const auto& c = p.covers(v);
    NodeSet a = complete_union_set(p, c[0]), b = complete_union_set(p, c[1]);
    return {a ^ b, a & b};
}

}  // namespace detail

/// Conditioned set U_a △ U_b and conditioning set U_a ∩ U_b of a node covering a, b.
inline CondSets cond_sets(const VinePoset& p, const std::string& v) {
    require_class(p, VineClass::LRVine, "cond_sets");
    std::size_t x = p.index_of(v);
    if (p.is_minimal(x)) throw input_error("node '" + v + "' is minimal");
    auto [c, d] = detail::cond_set_bits(p, x);
    if (c.count() != 2 || static_cast<int>(d.count()) != p.rank(x) - 2)
        throw defect_error("conditioned set of '" + v + "' has wrong size");
    return {detail::ids_of(p, c), detail::ids_of(p, d)};
}

/// Display names such as "14|23" for every node of a vine (minimal nodes keep
/// their identifier). Names are derived, never parsed.
inline std::vector<std::string> display_names(const VinePoset& p) {
    bool short_ids = true;
    for (auto m : p.minimal()) short_ids = short_ids && p.id(m).size() == 1;
    std::string sep = short_ids ? "" : ",";
    auto join = [&](const NodeSet& s) {
        std::string r;
        for (auto i = s.find_first(); i != NodeSet::npos; i = s.find_next(i)) {
            if (!r.empty()) r += sep;
            r += p.id(i);
        }
        return r;
    };
    std::vector<std::string> names;
    for (std::size_t v = 0; v < p.size(); ++v) {
        if (p.is_minimal(v) || p.covers(v).size() != 2) {
            names.push_back(p.id(v));
            continue;
        }
        auto [c, d] = detail::cond_set_bits(p, v);
        std::string name = join(c);
        if (d.any()) name += "|" + join(d);
        names.push_back(name);
    }
    return names;
}

/// Least upper bound of a and b, if it exists.
inline std::optional<std::size_t> join(const VinePoset& p, std::size_t a, std::size_t b) {
    NodeSet ub = p.up(a) & p.up(b);
    for (auto c = ub.find_first(); c != NodeSet::npos; c = ub.find_next(c))
        if (ub.is_subset_of(p.up(c))) return c;
    return std::nullopt;
}

struct JoinPaths {
    std::string join;
    std::vector<std::vector<std::string>> paths;  // P_1, ..., P_r with P_r = (join)
};

namespace detail {

/// Level-forest adjacency: for each node, its neighbors in its level forest
/// together with the node of the next rank that covers the pair.
inline std::vector<std::vector<std::pair<std::size_t, std::size_t>>> forest_adjacency(
    const VinePoset& p) {
    std::vector<std::vector<std::pair<std::size_t, std::size_t>>> adj(p.size());
    for (std::size_t e = 0; e < p.size(); ++e) {
        if (p.covers(e).size() != 2) continue;
        auto a = p.covers(e)[0], b = p.covers(e)[1];
        adj[a].push_back({b, e});
        adj[b].push_back({a, e});
    }
    return adj;
}

inline std::vector<std::size_t> forest_path(
    const std::vector<std::vector<std::pair<std::size_t, std::size_t>>>& adj, std::size_t s,
    std::size_t t) {
    std::vector<std::size_t> prev(adj.size(), adj.size());
    std::queue<std::size_t> q;
    prev[s] = s;
    q.push(s);
    while (!q.empty()) {
        auto x = q.front();
        q.pop();
        for (auto [y, e] : adj[x])
            if (prev[y] == adj.size()) {
                prev[y] = x;
                q.push(y);
            }
    }
    if (prev[t] == adj.size()) return {};
    std::vector<std::size_t> path{t};
    while (path.back() != s) path.push_back(prev[path.back()]);
    std::reverse(path.begin(), path.end());
    return path;
}

inline std::size_t edge_node(const std::vector<std::vector<std::pair<std::size_t, std::size_t>>>& adj,
                             std::size_t a, std::size_t b) {
    for (auto [y, e] : adj[a])
        if (y == b) return e;
    throw defect_error("consecutive path nodes are not adjacent");
}

inline std::optional<std::vector<std::vector<std::size_t>>> joining_paths(
    const std::vector<std::vector<std::pair<std::size_t, std::size_t>>>& adj,
    std::size_t i, std::size_t j) {
    std::vector<std::vector<std::size_t>> tower;
    auto path = forest_path(adj, i, j);
    if (path.empty()) return std::nullopt;
    tower.push_back(path);
    while (tower.back().size() > 1) {
        const auto& cur = tower.back();
        std::size_t s = edge_node(adj, cur[0], cur[1]);
        std::size_t t = edge_node(adj, cur[cur.size() - 2], cur[cur.size() - 1]);
        auto next = forest_path(adj, s, t);
        if (next.empty()) return std::nullopt;
        tower.push_back(next);
    }
    return tower;
}

}  // namespace detail

namespace detail {

/// Joining-path tower of minimal nodes a, b, validated against the order-theoretic
/// join and against the conditioned set of the top node.
inline std::optional<std::vector<std::vector<std::size_t>>> checked_join(
    const VinePoset& p, const std::vector<std::vector<std::pair<std::size_t, std::size_t>>>& adj,
    std::size_t a, std::size_t b) {
    auto tower = joining_paths(adj, a, b);
    auto lub = join(p, a, b);
    if (!tower) {
        if (lub) throw defect_error("join exists without a joining-path tower");
        return std::nullopt;
    }
    std::size_t top = tower->back()[0];
    if (!lub || *lub != top) throw defect_error("joining-path tower disagrees with the join");
    NodeSet expect(p.size());
    expect.set(a).set(b);
    if (cond_set_bits(p, top).first != expect)
        throw defect_error("join has the wrong conditioned set");
    return tower;
}

}  // namespace detail

/// Join of two minimal nodes together with the tower of joining paths, or none
/// when the pair has no upper bound.
inline std::optional<JoinPaths> join_and_paths(const VinePoset& p, const std::string& i,
                                               const std::string& j) {
    require_class(p, VineClass::LRVine, "join_and_paths");
    std::size_t a = detail::require_minimal(p, i), b = detail::require_minimal(p, j);
    if (a == b) throw input_error("join_and_paths needs two distinct nodes");
    auto tower = detail::checked_join(p, detail::forest_adjacency(p), a, b);
    if (!tower) return std::nullopt;
    JoinPaths r{p.id(tower->back()[0]), {}};
    for (const auto& level : *tower) {
        std::vector<std::string> ids;
        for (auto x : level) ids.push_back(p.id(x));
        r.paths.push_back(std::move(ids));
    }
    return r;
}

enum class Direction { lower, upper };

/// Lower: ranks <= k. Upper: ranks >= k, ranks shifted down by k-1.
inline VinePoset truncate(const VinePoset& p, int k, Direction dir) {
    if (k < 1 || k > p.max_rank())
        throw input_error("k = " + std::to_string(k) + " out of range 1.." +
                          std::to_string(p.max_rank()));
    std::vector<std::size_t> keep;
    for (std::size_t v = 0; v < p.size(); ++v)
        if (dir == Direction::lower ? p.rank(v) <= k : p.rank(v) >= k) keep.push_back(v);
    return p.induced(keep, dir == Direction::lower ? 0 : -(k - 1));
}

struct Marginal {
    VinePoset poset;
    bool graded = true;  // graded by the original rank function
};

/// Removes minimal node v and every node whose conditioned set contains v.
inline Marginal marginalize(const VinePoset& p, const std::string& v) {
    require_class(p, VineClass::LRVine, "marginalize");
    std::size_t x = detail::require_minimal(p, v);
    std::vector<std::size_t> keep;
    for (std::size_t u = 0; u < p.size(); ++u) {
        if (u == x) continue;
        if (!p.is_minimal(u) && detail::cond_set_bits(p, u).first.test(x)) continue;
        keep.push_back(u);
    }
    Marginal m{p.induced(keep), true};
    m.graded = !detail::graded_violation(m.poset).has_value();
    return m;
}

/// Checks that each successive marginalization (last node first) is an
/// LR-vine, or an R-vine when p is one, graded by the original ranks.
inline Verdict is_sampling_order(const VinePoset& p, const Ordering& order) {
    auto cls = classify(p);
    if (!cls.at_least(VineClass::LRVine))
        throw precondition_error("NotLRVine", "sampling orders need an LR-vine");
    auto mins = p.minimal();
    std::vector<std::string> want, got = order;
    for (auto m : mins) want.push_back(p.id(m));
    std::sort(want.begin(), want.end());
    std::sort(got.begin(), got.end());
    if (want != got) throw input_error("ordering is not a permutation of the minimal nodes");
    VineClass need = cls.kind == VineClass::RVine ? VineClass::RVine : VineClass::LRVine;
    VinePoset cur = p;
    for (std::size_t i = order.size(); i-- > 1;) {
        auto m = marginalize(cur, order[i]);
        if (!m.graded)
            return Verdict::fail("NotGraded",
                                 "removing " + order[i] + " leaves a poset not graded by rank",
                                 {order[i]});
        auto c = classify(m.poset);
        if (!c.at_least(need))
            return Verdict::fail("Not" + to_string(need),
                                 "removing " + order[i] + " leaves a " + to_string(c.kind),
                                 {order[i]});
        cur = std::move(m.poset);
    }
    return Verdict::pass();
}

enum class IdealMode { all, full_support };

/// Counts order ideals by depth-first extension over a fixed linear extension
/// (nodes by height, then by position). When `emit` is given, each ideal is
/// passed as a list of node identifiers in that order; ideals come out in
/// lexicographic order of their membership vectors (absent before present).
inline std::uint64_t enumerate_ideals(
    const VinePoset& p, IdealMode mode,
    const std::function<void(const std::vector<std::string>&)>& emit = {}) {
    std::size_t n = p.size();
    std::vector<int> height(n, 0);
    for (auto v : p.topological())
        for (auto c : p.covers(v)) height[v] = std::max(height[v], height[c] + 1);
    std::vector<std::size_t> order(n);
    for (std::size_t i = 0; i < n; ++i) order[i] = i;
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return height[a] < height[b]; });
    std::vector<char> in(n, 0);
    std::uint64_t count = 0;
    std::function<void(std::size_t)> rec = [&](std::size_t t) {
        if (t == n) {
            ++count;
            if (emit) {
                std::vector<std::string> ids;
                for (auto v : order)
                    if (in[v]) ids.push_back(p.id(v));
                emit(ids);
            }
            return;
        }
        std::size_t v = order[t];
        if (!(mode == IdealMode::full_support && p.is_minimal(v))) rec(t + 1);
        bool allowed = true;
        for (auto c : p.covers(v)) allowed = allowed && in[c];
        if (allowed) {
            in[v] = 1;
            rec(t + 1);
            in[v] = 0;
        }
    };
    rec(0);
    return count;
}

namespace detail {

/// Incremental construction of a vine over minimal nodes "1".."l"; node
/// identifiers are display names derived from conditioned/conditioning sets.
class VineBuilder {
public:
    explicit VineBuilder(int l) : l_(l) {
        for (int i = 1; i <= l; ++i) {
            specs_.push_back({std::to_string(i), 1, {}, {}});
            unions_.push_back({i});
        }
    }
    std::size_t pair(std::size_t a, std::size_t b) {
        std::vector<int> u, c, d;
        std::set_union(unions_[a].begin(), unions_[a].end(), unions_[b].begin(), unions_[b].end(),
                       std::back_inserter(u));
        std::set_symmetric_difference(unions_[a].begin(), unions_[a].end(), unions_[b].begin(),
                                      unions_[b].end(), std::back_inserter(c));
        std::set_intersection(unions_[a].begin(), unions_[a].end(), unions_[b].begin(),
                              unions_[b].end(), std::back_inserter(d));
        std::string name = names(c);
        if (!d.empty()) name += "|" + names(d);
        specs_.push_back({name, specs_[a].rank + 1, {specs_[a].id, specs_[b].id}, {}});
        unions_.push_back(u);
        return specs_.size() - 1;
    }
    VinePoset build() const { return VinePoset(specs_); }

private:
    std::string names(const std::vector<int>& xs) const {
        std::string r;
        for (int x : xs) {
            if (!r.empty() && l_ > 9) r += ",";
            r += std::to_string(x);
        }
        return r;
    }
    int l_;
    std::vector<NodeSpec> specs_;
    std::vector<std::vector<int>> unions_;
};

}  // namespace detail

/// R-vine whose first tree is the path 1-2-...-l (every tree is a path).
inline VinePoset d_vine(int l) {
    if (l < 1) throw input_error("dimension must be at least 1");
    detail::VineBuilder b(l);
    std::vector<std::size_t> level;
    for (int i = 0; i < l; ++i) level.push_back(static_cast<std::size_t>(i));
    while (level.size() > 1) {
        std::vector<std::size_t> next;
        for (std::size_t i = 0; i + 1 < level.size(); ++i) next.push_back(b.pair(level[i], level[i + 1]));
        level = next;
    }
    return b.build();
}

/// R-vine whose every tree is a star centered at the first node of its level.
inline VinePoset c_vine(int l) {
    if (l < 1) throw input_error("dimension must be at least 1");
    detail::VineBuilder b(l);
    std::vector<std::size_t> level;
    for (int i = 0; i < l; ++i) level.push_back(static_cast<std::size_t>(i));
    while (level.size() > 1) {
        std::vector<std::size_t> next;
        for (std::size_t i = 1; i < level.size(); ++i) next.push_back(b.pair(level[0], level[i]));
        level = next;
    }
    return b.build();
}

/// Positive roots a_i + ... + a_j of type A_l, ordered by the simple-root
/// difference order and graded by height.
inline VinePoset root_poset_a(int l) {
    if (l < 1) throw input_error("dimension must be at least 1");
    std::vector<std::vector<int>> coeff;
    std::vector<std::string> ids;
    std::vector<int> ranks;
    for (int h = 1; h <= l; ++h)
        for (int i = 1; i + h - 1 <= l; ++i) {
            std::vector<int> c(l, 0);
            std::string name;
            for (int k = i; k < i + h; ++k) {
                c[k - 1] = 1;
                name += (name.empty() ? "a" : "+a") + std::to_string(k);
            }
            coeff.push_back(c);
            ids.push_back(name);
            ranks.push_back(h);
        }
    return poset_from_order(ids, ranks, [&](std::size_t x, std::size_t y) {
        for (int k = 0; k < l; ++k)
            if (coeff[y][k] < coeff[x][k]) return false;
        return true;
    });
}

enum class StandardKind { d_vine, c_vine, root_poset_a };

inline VinePoset build_standard(StandardKind kind, int l) {
    switch (kind) {
        case StandardKind::d_vine: return d_vine(l);
        case StandardKind::c_vine: return c_vine(l);
        case StandardKind::root_poset_a: return root_poset_a(l);
    }
    throw input_error("unknown standard kind");
}

namespace detail {

inline std::string set_name(const std::vector<std::string>& xs) {
    std::string r = "{";
    for (std::size_t i = 0; i < xs.size(); ++i) r += (i ? "," : "") + xs[i];
    return r + "}";
}

}  // namespace detail

/// Poset of complete unions ordered by inclusion, node "{1,2,3}" for U_v = {1,2,3}.
inline VinePoset hat(const VinePoset& p) {
    require_class(p, VineClass::LRVine, "hat");
    std::vector<std::string> ids;
    std::vector<int> ranks;
    std::vector<NodeSet> sets;
    for (std::size_t v = 0; v < p.size(); ++v) {
        auto u = complete_union_set(p, v);
        sets.push_back(u);
        ids.push_back(detail::set_name(detail::ids_of(p, u)));
        ranks.push_back(static_cast<int>(u.count()));
    }
    return poset_from_order(ids, ranks,
                            [&](std::size_t a, std::size_t b) { return sets[a].is_subset_of(sets[b]); });
}

/// The map v ↦ U_v from p onto hat(p), by node identifiers.
inline std::map<std::string, std::string> eta(const VinePoset& p) {
    std::map<std::string, std::string> m;
    for (std::size_t v = 0; v < p.size(); ++v)
        m[p.id(v)] = detail::set_name(detail::ids_of(p, complete_union_set(p, v)));
    return m;
}

/// Order isomorphism between two posets preserving rank, or none.
inline std::optional<std::map<std::string, std::string>> find_poset_isomorphism(const VinePoset& p,
                                                                                const VinePoset& q) {
    std::size_t n = p.size();
    if (q.size() != n) return std::nullopt;
    std::vector<std::size_t> order;
    std::vector<char> seen(n, 0);
    for (std::size_t s = 0; s < n; ++s) {
        if (seen[s]) continue;
        std::queue<std::size_t> bfs;
        bfs.push(s);
        seen[s] = 1;
        while (!bfs.empty()) {
            auto v = bfs.front();
            bfs.pop();
            order.push_back(v);
            for (const auto* nb : {&p.covers(v), &p.covered_by(v)})
                for (auto u : *nb)
                    if (!seen[u]) {
                        seen[u] = 1;
                        bfs.push(u);
                    }
        }
    }
    std::vector<std::size_t> img(n, n);
    std::vector<char> used(n, 0);
    auto covers = [](const VinePoset& x, std::size_t a, std::size_t b) {
        return std::binary_search(x.covers(a).begin(), x.covers(a).end(), b);
    };
    std::function<bool(std::size_t)> rec = [&](std::size_t t) -> bool {
        if (t == n) return true;
        std::size_t v = order[t];
        for (std::size_t w = 0; w < n; ++w) {
            if (used[w] || q.rank(w) != p.rank(v) || q.covers(w).size() != p.covers(v).size() ||
                q.covered_by(w).size() != p.covered_by(v).size())
                continue;
            bool ok = true;
            for (std::size_t s = 0; s < t && ok; ++s) {
                std::size_t u = order[s];
                ok = covers(p, v, u) == covers(q, w, img[u]) && covers(p, u, v) == covers(q, img[u], w);
            }
            if (!ok) continue;
            img[v] = w;
            used[w] = 1;
            if (rec(t + 1)) return true;
            used[w] = 0;
            img[v] = n;
        }
        return false;
    };
    if (!rec(0)) return std::nullopt;
    std::map<std::string, std::string> m;
    for (std::size_t v = 0; v < n; ++v) m[p.id(v)] = q.id(img[v]);
    return m;
}

inline bool are_isomorphic(const VinePoset& p, const VinePoset& q) {
    return find_poset_isomorphism(p, q).has_value();
}

/// Downward closed subset test.
inline bool is_ideal(const VinePoset& p, const std::vector<std::string>& nodes) {
    NodeSet s(p.size());
    for (const auto& id : nodes) s.set(p.index_of(id));
    for (auto v = s.find_first(); v != NodeSet::npos; v = s.find_next(v))
        if (!p.down(v).is_subset_of(s)) return false;
    return true;
}

}  // namespace matvine
