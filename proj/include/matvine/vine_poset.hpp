#pragma once

#include <algorithm>
#include <array>
#include <cstddef>
#include <optional>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include <boost/dynamic_bitset.hpp>

#include "errors.hpp"
#include "labeled_graph.hpp"
#include "verdict.hpp"

namespace matvine {

using NodeSet = boost::dynamic_bitset<>;

/// One node as given on input: identifier, rank and the nodes it covers.
struct NodeSpec {
    std::string id;
    int rank = 1;
    std::vector<std::string> covers;
    std::string label;  // optional display name
};

/// Finite poset given by its cover relation and a rank assignment
/// (a candidate vine). Construction rejects malformed input; whether the
/// ranks form a valid rank function is decided by classify().
class VinePoset {
public:
    VinePoset() = default;

    explicit VinePoset(std::vector<NodeSpec> nodes) : specs_(std::move(nodes)) {
        std::size_t n = specs_.size();
        for (std::size_t i = 0; i < n; ++i) {
            if (specs_[i].id.empty()) throw input_error("empty node identifier");
            if (!index_.emplace(specs_[i].id, i).second)
                throw input_error("duplicate node '" + specs_[i].id + "'");
            if (specs_[i].rank < 1)
                throw input_error("node '" + specs_[i].id + "' has non-positive rank");
        }
        covers_.assign(n, {});
        covered_by_.assign(n, {});
        for (std::size_t i = 0; i < n; ++i) {
            for (const auto& c : specs_[i].covers) {
                std::size_t j = index_of(c);
                if (j == i) throw input_error("node '" + c + "' covers itself");
                if (std::find(covers_[i].begin(), covers_[i].end(), j) != covers_[i].end())
                    throw input_error("node '" + specs_[i].id + "' lists '" + c + "' twice");
                covers_[i].push_back(j);
                covered_by_[j].push_back(i);
            }
        }
        for (auto& c : covers_) std::sort(c.begin(), c.end());
        for (auto& c : covered_by_) std::sort(c.begin(), c.end());

        std::vector<std::size_t> pending(n);
        std::vector<std::size_t> ready;
        for (std::size_t i = 0; i < n; ++i) {
            pending[i] = covers_[i].size();
            if (pending[i] == 0) ready.push_back(i);
        }
        while (!ready.empty()) {
            std::size_t v = ready.back();
            ready.pop_back();
            topo_.push_back(v);
            for (auto u : covered_by_[v])
                if (--pending[u] == 0) ready.push_back(u);
        }
        if (topo_.size() != n) throw input_error("cover relation contains a cycle");

        down_.assign(n, NodeSet(n));
        for (auto v : topo_) {
            down_[v].set(v);
            for (auto c : covers_[v]) down_[v] |= down_[c];
        }
        up_.assign(n, NodeSet(n));
        for (auto it = topo_.rbegin(); it != topo_.rend(); ++it) {
            up_[*it].set(*it);
            for (auto u : covered_by_[*it]) up_[*it] |= up_[u];
        }
    }

    std::size_t size() const { return specs_.size(); }
    bool empty() const { return specs_.empty(); }
    const std::string& id(std::size_t i) const { return specs_.at(i).id; }
    int rank(std::size_t i) const { return specs_.at(i).rank; }
    const std::string& label(std::size_t i) const { return specs_.at(i).label; }
    const std::vector<std::size_t>& covers(std::size_t i) const { return covers_.at(i); }
    const std::vector<std::size_t>& covered_by(std::size_t i) const { return covered_by_.at(i); }
    const std::vector<NodeSpec>& specs() const { return specs_; }

    std::optional<std::size_t> find(const std::string& id) const {
        auto it = index_.find(id);
        if (it == index_.end()) return std::nullopt;
        return it->second;
    }
    std::size_t index_of(const std::string& id) const {
        auto it = index_.find(id);
        if (it == index_.end()) throw input_error("unknown node '" + id + "'");
        return it->second;
    }

    /// Nodes below v, v included.
    const NodeSet& down(std::size_t v) const { return down_.at(v); }
    /// Nodes above v, v included.
    const NodeSet& up(std::size_t v) const { return up_.at(v); }
    bool leq(std::size_t a, std::size_t b) const { return down_[b].test(a); }
    /// A linear extension: every node after all nodes it covers.
    const std::vector<std::size_t>& topological() const { return topo_; }

    bool is_minimal(std::size_t v) const { return covers_[v].empty(); }
    std::vector<std::size_t> minimal() const {
        std::vector<std::size_t> r;
        for (std::size_t i = 0; i < size(); ++i)
            if (is_minimal(i)) r.push_back(i);
        return r;
    }
    NodeSet minimal_set() const {
        NodeSet s(size());
        for (auto m : minimal()) s.set(m);
        return s;
    }
    /// Number of minimal nodes.
    std::size_t dimension() const { return minimal().size(); }
    int max_rank() const {
        int r = 0;
        for (const auto& s : specs_) r = std::max(r, s.rank);
        return r;
    }
    std::vector<std::size_t> level(int r) const {
        std::vector<std::size_t> out;
        for (std::size_t i = 0; i < size(); ++i)
            if (rank(i) == r) out.push_back(i);
        return out;
    }

    /// Subposet on `keep` (in that order) with the restricted order; covers are
    /// recomputed, ranks are copied and shifted by `rank_shift`.
    VinePoset induced(const std::vector<std::size_t>& keep, int rank_shift = 0) const {
        NodeSet kept(size());
        for (auto k : keep) kept.set(k);
        std::vector<NodeSpec> out;
        for (auto v : keep) {
            NodeSet below = down_[v] & kept;
            below.reset(v);
            NodeSet shadow(size());
            for (auto u = below.find_first(); u != NodeSet::npos; u = below.find_next(u)) {
                NodeSet strict = down_[u];
                strict.reset(u);
                shadow |= strict;
            }
            NodeSet cov = below - shadow;
            NodeSpec s{id(v), rank(v) + rank_shift, {}, label(v)};
            for (auto u = cov.find_first(); u != NodeSet::npos; u = cov.find_next(u))
                s.covers.push_back(id(u));
            out.push_back(std::move(s));
        }
        return VinePoset(std::move(out));
    }

    /// Same node identifiers, ranks and covers; node order is ignored.
    friend bool operator==(const VinePoset& a, const VinePoset& b) {
        if (a.size() != b.size()) return false;
        for (std::size_t i = 0; i < a.size(); ++i) {
            auto j = b.find(a.id(i));
            if (!j || a.rank(i) != b.rank(*j) || a.covers(i).size() != b.covers(*j).size())
                return false;
            for (auto c : a.covers(i)) {
                auto cj = b.find(a.id(c));
                if (!cj || !std::binary_search(b.covers(*j).begin(), b.covers(*j).end(), *cj))
                    return false;
            }
        }
        return true;
    }
    friend bool operator!=(const VinePoset& a, const VinePoset& b) { return !(a == b); }

private:
    std::vector<NodeSpec> specs_;
    std::unordered_map<std::string, std::size_t> index_;
    std::vector<std::vector<std::size_t>> covers_, covered_by_;
    std::vector<std::size_t> topo_;
    std::vector<NodeSet> down_, up_;
};

/// Builds the Hasse diagram of the order `leq` on the given nodes.
template <class Leq>
VinePoset poset_from_order(const std::vector<std::string>& ids, const std::vector<int>& ranks,
                           Leq&& leq) {
    std::size_t n = ids.size();
    std::vector<NodeSpec> specs;
    for (std::size_t v = 0; v < n; ++v) {
        std::vector<std::size_t> below;
        for (std::size_t u = 0; u < n; ++u)
            if (u != v && leq(u, v)) below.push_back(u);
        NodeSpec s{ids[v], ranks[v], {}, {}};
        for (auto u : below) {
            bool cover = true;
            for (auto w : below) cover = cover && (w == u || !leq(u, w));
            if (cover) s.covers.push_back(ids[u]);
        }
        specs.push_back(std::move(s));
    }
    return VinePoset(std::move(specs));
}

enum class VineClass { NotGraded = 0, NotVine = 1, Vine = 2, LRVine = 3, RVine = 4 };

inline std::string to_string(VineClass c) {
    switch (c) {
        case VineClass::NotGraded: return "NotGraded";
        case VineClass::NotVine: return "NotVine";
        case VineClass::Vine: return "Vine";
        case VineClass::LRVine: return "LRVine";
        case VineClass::RVine: return "RVine";
    }
    return "?";
}

/// Result of classify(). `reason` explains why the next class up fails;
/// its tag is empty for R-vines.
struct Classification {
    VineClass kind = VineClass::NotGraded;
    Violation reason;
    bool at_least(VineClass c) const { return kind >= c; }
};

namespace detail {

inline std::optional<Violation> graded_violation(const VinePoset& p) {
    for (std::size_t v = 0; v < p.size(); ++v) {
        if (p.is_minimal(v) && p.rank(v) != 1)
            return Violation{"NotGraded", "minimal node has rank " + std::to_string(p.rank(v)),
                             {p.id(v)}, {}};
        for (auto c : p.covers(v))
            if (p.rank(v) != p.rank(c) + 1)
                return Violation{"NotGraded", "cover with rank difference " +
                                                  std::to_string(p.rank(v) - p.rank(c)),
                                 {p.id(v), p.id(c)}, {}};
    }
    return std::nullopt;
}

/// Cover-pair forest on level r: nodes of rank r, one edge per node of rank r+1.
inline std::optional<Violation> level_forest_violation(const VinePoset& p, int r, bool need_tree) {
    auto nodes = p.level(r);
    std::unordered_map<std::size_t, std::size_t> local;
    for (std::size_t i = 0; i < nodes.size(); ++i) local[nodes[i]] = i;
    Dsu dsu(nodes.size());
    std::size_t merges = 0;
    for (auto e : p.level(r + 1)) {
        const auto& c = p.covers(e);
        if (!dsu.unite(local.at(c[0]), local.at(c[1])))
            return Violation{"ForestCycle",
                             "level " + std::to_string(r) + " cover pairs contain a cycle",
                             {p.id(e), p.id(c[0]), p.id(c[1])}, {}};
        ++merges;
    }
    if (need_tree && merges + 1 != nodes.size())
        return Violation{"NotTree", "level " + std::to_string(r) + " forest is not a tree",
                         nodes.empty() ? std::vector<std::string>{}
                                       : std::vector<std::string>{p.id(nodes[0])},
                         {}};
    return std::nullopt;
}

inline std::optional<Violation> vine_violation(const VinePoset& p) {
    for (std::size_t v = 0; v < p.size(); ++v)
        if (!p.is_minimal(v) && p.covers(v).size() != 2)
            return Violation{"CoverCount",
                             "node covers " + std::to_string(p.covers(v).size()) + " nodes",
                             {p.id(v)}, {}};
    for (std::size_t v = 0; v < p.size(); ++v)
        for (std::size_t w = v + 1; w < p.size(); ++w)
            if (!p.is_minimal(v) && p.covers(v) == p.covers(w))
                return Violation{"SharedCover", "two nodes cover the same pair",
                                 {p.id(v), p.id(w)}, {}};
    for (int r = 1; r <= p.max_rank(); ++r)
        if (auto f = level_forest_violation(p, r, false)) return f;
    return std::nullopt;
}

inline std::optional<Violation> proximity_violation(const VinePoset& p) {
    for (std::size_t v = 0; v < p.size(); ++v) {
        if (p.rank(v) < 3 || p.covers(v).size() != 2) continue;
        const auto& a = p.covers(p.covers(v)[0]);
        const auto& b = p.covers(p.covers(v)[1]);
        bool common = false;
        for (auto x : a) common = common || std::find(b.begin(), b.end(), x) != b.end();
        if (!common)
            return Violation{"Proximity", "children of a node share no covered node",
                             {p.id(v), p.id(p.covers(v)[0]), p.id(p.covers(v)[1])}, {}};
    }
    return std::nullopt;
}

inline std::optional<Violation> regularity_violation(const VinePoset& p) {
    if (static_cast<std::size_t>(p.max_rank()) != p.dimension() || p.empty())
        return Violation{"RankNotDimension",
                         "rank " + std::to_string(p.max_rank()) + " differs from dimension " +
                             std::to_string(p.dimension()),
                         {}, {}};
    for (int r = 1; r <= p.max_rank(); ++r)
        if (auto f = level_forest_violation(p, r, true)) return f;
    return std::nullopt;
}

}  // namespace detail

/// Vine / LR-vine / R-vine classification through the proximity condition.
/// The empty poset is an LR-vine (all conditions vacuous) but not an R-vine.
inline Classification classify(const VinePoset& p) {
    if (auto v = detail::graded_violation(p)) return {VineClass::NotGraded, *v};
    if (auto v = detail::vine_violation(p)) return {VineClass::NotVine, *v};
    if (auto v = detail::proximity_violation(p)) return {VineClass::Vine, *v};
    if (auto v = detail::regularity_violation(p)) return {VineClass::LRVine, *v};
    return {VineClass::RVine, {}};
}

/// Independent classification: an LR-vine is a vine whose principal ideals are all R-vines.
inline Classification classify_by_principal_ideals(const VinePoset& p) {
    if (auto v = detail::graded_violation(p)) return {VineClass::NotGraded, *v};
    if (auto v = detail::vine_violation(p)) return {VineClass::NotVine, *v};
    for (std::size_t v = 0; v < p.size(); ++v) {
        if (p.is_minimal(v)) continue;
        std::vector<std::size_t> keep;
        for (auto u = p.down(v).find_first(); u != NodeSet::npos; u = p.down(v).find_next(u))
            keep.push_back(u);
        auto ideal = p.induced(keep);
        auto bad = detail::regularity_violation(ideal);
        if (!bad) bad = detail::proximity_violation(ideal);
        if (bad)
            return {VineClass::Vine,
                    Violation{"PrincipalIdeal", "principal ideal is not an R-vine: " + bad->message,
                              {p.id(v)}, {}}};
    }
    if (auto v = detail::regularity_violation(p)) return {VineClass::LRVine, *v};
    return {VineClass::RVine, {}};
}

inline void require_class(const VinePoset& p, VineClass need, const std::string& what) {
    auto c = classify(p);
    if (!c.at_least(need))
        throw precondition_error("Not" + to_string(need),
                                 what + " needs a " + to_string(need) + ", got " +
                                     to_string(c.kind) + " (" + c.reason.message + ")");
}

/// One forest of a graphical vine. Edge identifiers name the nodes of the next forest.
struct ForestEdge {
    std::string id, a, b;
};
struct Forest {
    std::vector<std::string> nodes;
    std::vector<ForestEdge> edges;
};
using ForestSequence = std::vector<Forest>;

/// Node poset of a forest sequence. Edges of the last forest become top nodes,
/// so a sequence ending in an edgeless forest round-trips exactly.
inline VinePoset from_forest_sequence(const ForestSequence& f) {
    std::vector<NodeSpec> specs;
    std::unordered_map<std::string, std::size_t> at;
    auto add = [&](const std::string& id, int rank) {
        if (!at.emplace(id, specs.size()).second)
            throw input_error("node '" + id + "' appears twice in the forest sequence");
        specs.push_back({id, rank, {}, {}});
    };
    if (!f.empty())
        for (const auto& v : f[0].nodes) add(v, 1);
    for (std::size_t i = 0; i < f.size(); ++i) {
        const auto& fi = f[i];
        std::vector<std::string> names = fi.nodes;
        std::sort(names.begin(), names.end());
        if (std::adjacent_find(names.begin(), names.end()) != names.end())
            throw input_error("forest " + std::to_string(i + 1) + " repeats a node");
        if (i > 0) {
            std::vector<std::string> prev;
            for (const auto& e : f[i - 1].edges) prev.push_back(e.id);
            std::sort(prev.begin(), prev.end());
            if (prev != names)
                throw input_error("nodes of forest " + std::to_string(i + 1) +
                                  " are not the edges of forest " + std::to_string(i));
        }
        std::unordered_map<std::string, std::size_t> local;
        for (std::size_t k = 0; k < fi.nodes.size(); ++k) local[fi.nodes[k]] = k;
        detail::Dsu dsu(fi.nodes.size());
        for (const auto& e : fi.edges) {
            auto a = local.find(e.a), b = local.find(e.b);
            if (a == local.end() || b == local.end())
                throw input_error("edge '" + e.id + "' has an endpoint outside forest " +
                                  std::to_string(i + 1));
            if (a->second == b->second) throw input_error("edge '" + e.id + "' is a loop");
            if (!dsu.unite(a->second, b->second))
                throw input_error("forest " + std::to_string(i + 1) + " contains a cycle");
            add(e.id, static_cast<int>(i) + 2);
            specs.back().covers = {e.a, e.b};
        }
    }
    return VinePoset(std::move(specs));
}

/// Equal as forest sequences: same node sets and same edges, endpoint order ignored.
inline bool same_forests(const ForestSequence& f, const ForestSequence& g) {
    if (f.size() != g.size()) return false;
    for (std::size_t i = 0; i < f.size(); ++i) {
        auto a = f[i].nodes, b = g[i].nodes;
        std::sort(a.begin(), a.end());
        std::sort(b.begin(), b.end());
        if (a != b) return false;
        auto norm = [](const std::vector<ForestEdge>& es) {
            std::vector<std::array<std::string, 3>> r;
            for (const auto& e : es) r.push_back({e.id, std::min(e.a, e.b), std::max(e.a, e.b)});
            std::sort(r.begin(), r.end());
            return r;
        };
        if (norm(f[i].edges) != norm(g[i].edges)) return false;
    }
    return true;
}

inline ForestSequence to_forest_sequence(const VinePoset& p) {
    require_class(p, VineClass::Vine, "to_forest_sequence");
    ForestSequence f;
    for (int r = 1; r <= p.max_rank(); ++r) {
        Forest fr;
        for (auto v : p.level(r)) fr.nodes.push_back(p.id(v));
        for (auto e : p.level(r + 1))
            fr.edges.push_back({p.id(e), p.id(p.covers(e)[0]), p.id(p.covers(e)[1])});
        f.push_back(std::move(fr));
    }
    return f;
}

}  // namespace matvine
