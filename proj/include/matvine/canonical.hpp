#pragma once

#include <algorithm>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "functors.hpp"
#include "labeled_graph.hpp"
#include "vine_poset.hpp"

namespace matvine {

/// Byte string identifying a labeled graph up to vertex renaming.
/// Layout: 4-byte big-endian vertex count, entry width (1 or 4), then the
/// lower triangle of the label matrix in canonical vertex order, row by row.
struct CanonicalForm {
    std::vector<std::uint8_t> bytes;

    std::string hex() const {
        static const char* digits = "0123456789abcdef";
        std::string s;
        for (auto b : bytes) {
            s += digits[b >> 4];
            s += digits[b & 15];
        }
        return s;
    }
    friend bool operator==(const CanonicalForm& a, const CanonicalForm& b) { return a.bytes == b.bytes; }
    friend bool operator!=(const CanonicalForm& a, const CanonicalForm& b) { return !(a == b); }
    friend bool operator<(const CanonicalForm& a, const CanonicalForm& b) { return a.bytes < b.bytes; }
};

namespace detail {

/// Ordered partition of the vertices; cell order is renaming-invariant.
using Partition = std::vector<std::vector<std::size_t>>;

/// Splits cells by the multiset of (label, cell) over each vertex's neighbors
/// until stable. Split cells are ordered by their signature.
inline Partition refine(const LabeledGraph& g, Partition p) {
    std::size_t n = g.size();
    std::vector<std::size_t> cell(n);
    for (;;) {
        for (std::size_t c = 0; c < p.size(); ++c)
            for (auto v : p[c]) cell[v] = c;
        Partition next;
        for (const auto& members : p) {
            if (members.size() == 1) {
                next.push_back(members);
                continue;
            }
            std::map<std::vector<std::pair<int, std::size_t>>, std::vector<std::size_t>> split;
            for (auto v : members) {
                std::vector<std::pair<int, std::size_t>> sig;
                for (std::size_t u = 0; u < n; ++u)
                    if (u != v && g.label(v, u)) sig.emplace_back(g.label(v, u), cell[u]);
                std::sort(sig.begin(), sig.end());
                split[sig].push_back(v);
            }
            for (auto& [sig, vs] : split) next.push_back(std::move(vs));
        }
        if (next.size() == p.size()) return next;
        p = std::move(next);
    }
}

/// u and w see every other vertex with the same labels.
inline bool twins(const LabeledGraph& g, std::size_t u, std::size_t w) {
    for (std::size_t x = 0; x < g.size(); ++x)
        if (x != u && x != w && g.label(u, x) != g.label(w, x)) return false;
    return true;
}

inline std::vector<std::uint32_t> encode(const LabeledGraph& g, const std::vector<std::size_t>& order) {
    std::vector<std::uint32_t> e;
    for (std::size_t i = 1; i < order.size(); ++i)
        for (std::size_t j = 0; j < i; ++j) e.push_back(static_cast<std::uint32_t>(g.label(order[i], order[j])));
    return e;
}

/// Canonical vertex order: individualize a vertex of the first non-singleton
/// cell, refine, recurse; keep the least encoding. Twins are interchangeable,
/// so only one vertex per twin class is individualized.
inline std::pair<std::vector<std::size_t>, std::vector<std::uint32_t>> canonical_order(const LabeledGraph& g) {
    std::size_t n = g.size();
    Partition start(1);
    for (std::size_t v = 0; v < n; ++v) start[0].push_back(v);
    if (n == 0) return {{}, {}};
    std::optional<std::vector<std::uint32_t>> best;
    std::vector<std::size_t> best_order;
    std::function<void(const Partition&)> search = [&](const Partition& p) {
        auto it = std::find_if(p.begin(), p.end(), [](const auto& c) { return c.size() > 1; });
        if (it == p.end()) {
            std::vector<std::size_t> order;
            for (const auto& c : p) order.push_back(c[0]);
            auto e = encode(g, order);
            if (!best || e < *best) {
                best = std::move(e);
                best_order = std::move(order);
            }
            return;
        }
        std::size_t at = static_cast<std::size_t>(it - p.begin());
        std::vector<std::size_t> tried;
        for (auto v : *it) {
            if (std::any_of(tried.begin(), tried.end(), [&](std::size_t t) { return twins(g, t, v); }))
                continue;
            tried.push_back(v);
            Partition q(p.begin(), p.begin() + static_cast<std::ptrdiff_t>(at));
            q.push_back({v});
            std::vector<std::size_t> rest;
            for (auto u : *it)
                if (u != v) rest.push_back(u);
            q.push_back(std::move(rest));
            q.insert(q.end(), p.begin() + static_cast<std::ptrdiff_t>(at) + 1, p.end());
            search(refine(g, std::move(q)));
        }
    };
    search(refine(g, std::move(start)));
    return {best_order, *best};
}

}  // namespace detail

inline CanonicalForm canonical_form(const LabeledGraph& g) {
    auto [order, entries] = detail::canonical_order(g);
    CanonicalForm f;
    auto n = static_cast<std::uint32_t>(g.size());
    for (int s = 24; s >= 0; s -= 8) f.bytes.push_back(static_cast<std::uint8_t>(n >> s));
    bool wide = g.max_label() > 255;
    f.bytes.push_back(wide ? 4 : 1);
    for (auto x : entries) {
        if (wide)
            for (int s = 24; s >= 0; s -= 8) f.bytes.push_back(static_cast<std::uint8_t>(x >> s));
        else
            f.bytes.push_back(static_cast<std::uint8_t>(x));
    }
    return f;
}

/// Vine canonical form through the associated graph.
inline CanonicalForm canonical_form(const VinePoset& p) { return canonical_form(omega(p)); }

/// Label-preserving vertex bijection g1 → g2, or none.
inline std::optional<std::map<std::string, std::string>> find_graph_isomorphism(const LabeledGraph& g1,
                                                                                const LabeledGraph& g2) {
    if (g1.size() != g2.size()) return std::nullopt;
    auto [o1, e1] = detail::canonical_order(g1);
    auto [o2, e2] = detail::canonical_order(g2);
    if (e1 != e2 || g1.max_label() != g2.max_label()) return std::nullopt;
    std::map<std::string, std::string> m;
    for (std::size_t i = 0; i < o1.size(); ++i) m[g1.vertex(o1[i])] = g2.vertex(o2[i]);
    for (const auto& e : g1.labeled_edges())
        if (g2.label(m.at(e.u), m.at(e.v)) != e.label) throw defect_error("canonical orders disagree");
    return m;
}

inline bool are_isomorphic(const LabeledGraph& g1, const LabeledGraph& g2) {
    return find_graph_isomorphism(g1, g2).has_value();
}

}  // namespace matvine
