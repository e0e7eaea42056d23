#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <algorithm>
#include <chrono>
#include <exception>
#include <cstdint>
#include <functional>
#include <mutex>
#include <set>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include "canonical.hpp"
#include "errors.hpp"
#include "labeled_graph.hpp"

namespace matvine {

using BigInt = boost::multiprecision::cpp_int;

namespace detail {

inline BigInt pow_big(long base, long exp) {
    BigInt r = 1;
    for (long i = 0; i < exp; ++i) r *= base;
    return r;
}

/// A_ℓ c_k 2^e as an exact integer; throws if the value is not integral.
inline BigInt scaled_power(int l, int k, long e) {
    int c = (k == l / 2 - 1) ? 2 : 1;
    long total = static_cast<long>(l - 2) * (l - 3) / 2 + e;
    if (total >= 0) return c * pow_big(2, total);
    BigInt den = pow_big(2, -total);
    if (c % den != 0) throw defect_error("non-integral term in the E formula");
    return c / den;
}

inline BigInt e_formula_with(int l, int sign) {
    if (l < 1) throw input_error("dimension must be at least 1");
    if (l <= 3) return 1;
    BigInt a = pow_big(2, static_cast<long>(l - 2) * (l - 3) / 2);
    BigInt b = 0;
    for (int k = 1; k <= l / 2 - 1; ++k) {
        long inner = 0;
        for (int i = 0; i < k; ++i) inner += l - 4 - 2 * i;
        b += scaled_power(l, k, -k + sign * inner);
    }
    return (a + b) / 2;
}

}  // namespace detail

/// Number of non-isomorphic MAT-labelings of K_ℓ in closed form. The inner
/// exponent sum enters with a minus sign; see e_formula_as_printed.
inline BigInt e_formula(int l) { return detail::e_formula_with(l, -1); }

/// The closed form with the inner exponent sum added, as typeset in the source.
/// Disagrees with enumeration from ℓ = 5 on; kept for reporting.
inline BigInt e_formula_as_printed(int l) { return detail::e_formula_with(l, +1); }

/// Σ_{i=0}^{ℓ} ((i+1)^{ℓ-i} - i^{ℓ-i}), with 0^0 = 1.
inline BigInt a047970(int l) {
    if (l < 1) throw input_error("dimension must be at least 1");
    BigInt s = 0;
    for (int i = 0; i <= l; ++i) s += detail::pow_big(i + 1, l - i) - detail::pow_big(i, l - i);
    return s;
}

inline BigInt catalan(int n) {
    if (n < 0) throw input_error("Catalan index must be non-negative");
    BigInt c = 1;
    for (int i = 0; i < n; ++i) c = c * 2 * (2 * i + 1) / (i + 2);
    return c;
}

struct EnumerationOptions {
    /// Largest ℓ accepted unless `unbounded` is set.
    int max_dim = 7;
    bool unbounded = false;
    unsigned jobs = 1;
    /// Start from every labeled spanning tree instead of one per isomorphism class.
    bool labeled = false;
    bool keep_representatives = false;
    /// Upper bound on stored canonical forms.
    std::size_t max_classes = 50'000'000;
    /// Called on every labeling produced; calls are serialized across workers.
    std::function<void(const LabeledGraph&)> visit;
};

struct EnumerationReport {
    int l = 0;
    std::uint64_t class_count = 0;
    BigInt formula_count = 0;
    std::uint64_t labelings = 0;
    std::uint64_t stored_bytes = 0;
    double elapsed_ms = 0;
    std::vector<CanonicalForm> forms;
    std::vector<LabeledGraph> representatives;
};

inline std::vector<std::string> numbered_vertices(std::size_t n) {
    std::vector<std::string> v;
    for (std::size_t i = 1; i <= n; ++i) v.push_back(std::to_string(i));
    return v;
}

/// Graph encoded by a canonical form, on vertices "1".."n" in canonical order.
inline LabeledGraph from_canonical(const CanonicalForm& f) {
    const auto& b = f.bytes;
    if (b.size() < 5) throw input_error("canonical form too short");
    std::size_t n = (std::size_t(b[0]) << 24) | (std::size_t(b[1]) << 16) | (std::size_t(b[2]) << 8) | b[3];
    std::size_t w = b[4];
    if ((w != 1 && w != 4) || b.size() != 5 + w * (n * (n - (n ? 1 : 0)) / 2))
        throw input_error("malformed canonical form");
    std::vector<int> m(n * n, 0);
    std::size_t at = 5;
    for (std::size_t i = 1; i < n; ++i)
        for (std::size_t j = 0; j < i; ++j) {
            std::uint32_t x = 0;
            for (std::size_t t = 0; t < w; ++t) x = (x << 8) | b[at++];
            m[i * n + j] = m[j * n + i] = static_cast<int>(x);
        }
    return LabeledGraph::from_matrix(numbered_vertices(n), std::move(m));
}

namespace detail {

using TreeEdges = std::vector<std::pair<std::size_t, std::size_t>>;

inline LabeledGraph tree_graph(std::size_t n, const TreeEdges& t) {
    std::vector<int> m(n * n, 0);
    for (auto [a, b] : t) m[a * n + b] = m[b * n + a] = 1;
    return LabeledGraph::from_matrix(numbered_vertices(n), std::move(m));
}

/// One tree per isomorphism class, grown leaf by leaf.
inline std::vector<TreeEdges> tree_classes(std::size_t n) {
    std::vector<TreeEdges> layer{{}};
    for (std::size_t size = 2; size <= n; ++size) {
        std::set<CanonicalForm> seen;
        std::vector<TreeEdges> next;
        for (const auto& t : layer)
            for (std::size_t v = 0; v + 1 < size; ++v) {
                auto u = t;
                u.emplace_back(v, size - 1);
                if (seen.insert(canonical_form(tree_graph(size, u))).second) next.push_back(std::move(u));
            }
        layer = std::move(next);
    }
    return layer;
}

/// Every labeled tree on n vertices, from Prüfer sequences.
inline std::vector<TreeEdges> labeled_trees(std::size_t n) {
    if (n <= 1) return {{}};
    if (n == 2) return {{{0, 1}}};
    std::vector<TreeEdges> out;
    std::vector<std::size_t> seq(n - 2, 0);
    for (;;) {
        std::vector<std::size_t> deg(n, 1);
        for (auto s : seq) ++deg[s];
        TreeEdges t;
        for (auto s : seq) {
            std::size_t leaf = 0;
            while (deg[leaf] != 1) ++leaf;
            t.emplace_back(leaf, s);
            --deg[leaf];
            --deg[s];
        }
        std::size_t a = n, b = n;
        for (std::size_t v = 0; v < n; ++v)
            if (deg[v] == 1) (a == n ? a : b) = v;
        t.emplace_back(a, b);
        out.push_back(std::move(t));
        std::size_t i = 0;
        while (i < seq.size() && ++seq[i] == n) seq[i++] = 0;
        if (i == seq.size()) break;
    }
    return out;
}

/// Extends a labeled spanning tree of K_n to every MAT-labeling, one label
/// class at a time. Level k takes a non-empty forest of the unlabeled pairs
/// with exactly k-1 conditioning vertices, with no lower edge inside one of
/// its components.
class LevelSearch {
public:
    LevelSearch(std::size_t n, const std::function<void(const std::vector<int>&)>& emit)
        : n_(n), lab_(n * n, 0), emit_(emit) {}

    void run(const TreeEdges& tree) {
        std::fill(lab_.begin(), lab_.end(), 0);
        for (auto [a, b] : tree) set(a, b, 1);
        level(2, n_ * (n_ - 1) / 2 - tree.size());
    }

private:
    int& at(std::size_t a, std::size_t b) { return lab_[a * n_ + b]; }
    void set(std::size_t a, std::size_t b, int k) { at(a, b) = at(b, a) = k; }

    void level(int k, std::size_t remaining) {
        if (remaining == 0) {
            emit_(lab_);
            return;
        }
        std::vector<std::pair<std::size_t, std::size_t>> cand;
        for (std::size_t a = 0; a < n_; ++a)
            for (std::size_t b = a + 1; b < n_; ++b) {
                if (at(a, b)) continue;
                int shared = 0;
                for (std::size_t w = 0; w < n_; ++w) shared += at(a, w) && at(b, w);
                if (shared == k - 1) cand.emplace_back(a, b);
            }
        if (cand.empty()) return;
        std::vector<std::size_t> comp(n_);
        for (std::size_t v = 0; v < n_; ++v) comp[v] = v;
        choose(k, remaining, cand, 0, 0, comp);
    }

    void choose(int k, std::size_t remaining, const std::vector<std::pair<std::size_t, std::size_t>>& cand,
                std::size_t i, std::size_t taken, const std::vector<std::size_t>& comp) {
        if (i == cand.size()) {
            if (taken) level(k + 1, remaining - taken);
            return;
        }
        choose(k, remaining, cand, i + 1, taken, comp);
        auto [a, b] = cand[i];
        std::size_t ca = comp[a], cb = comp[b];
        if (ca == cb) return;
        for (std::size_t x = 0; x < n_; ++x)
            if (comp[x] == ca)
                for (std::size_t y = 0; y < n_; ++y)
                    if (comp[y] == cb && at(x, y)) return;
        auto merged = comp;
        for (auto& c : merged)
            if (c == cb) c = ca;
        set(a, b, k);
        choose(k, remaining, cand, i + 1, taken + 1, merged);
        set(a, b, 0);
    }

    std::size_t n_;
    std::vector<int> lab_;
    const std::function<void(const std::vector<int>&)>& emit_;
};

}  // namespace detail

/// All MAT-labelings of K_ℓ up to isomorphism.
inline EnumerationReport enumerate_mat_labelings_complete(int l, const EnumerationOptions& opt = {}) {
    if (l < 1) throw input_error("dimension must be at least 1");
    if (l > 64) throw resource_error("dimension " + std::to_string(l) + " exceeds the 64-vertex limit");
    if (l > opt.max_dim && !opt.unbounded)
        throw resource_error("dimension " + std::to_string(l) + " exceeds the configured bound " +
                             std::to_string(opt.max_dim));
    auto start = std::chrono::steady_clock::now();
    std::size_t n = static_cast<std::size_t>(l);
    auto trees = opt.labeled ? detail::labeled_trees(n) : detail::tree_classes(n);
    auto vertices = numbered_vertices(n);

    unsigned jobs = std::max(1u, std::min<unsigned>(opt.jobs, static_cast<unsigned>(trees.size())));
    std::vector<std::set<CanonicalForm>> found(jobs);
    std::vector<std::uint64_t> produced(jobs, 0);
    std::mutex visit_lock, error_lock;
    std::exception_ptr failure;
    auto work = [&](unsigned w) {
        try {
            std::function<void(const std::vector<int>&)> emit = [&](const std::vector<int>& m) {
                ++produced[w];
                auto g = LabeledGraph::from_matrix(vertices, m);
                if (opt.visit) {
                    std::lock_guard<std::mutex> hold(visit_lock);
                    opt.visit(g);
                }
                found[w].insert(canonical_form(g));
                if (found[w].size() > opt.max_classes)
                    throw resource_error("more than " + std::to_string(opt.max_classes) +
                                         " canonical forms stored");
            };
            detail::LevelSearch search(n, emit);
            for (std::size_t t = w; t < trees.size(); t += jobs) search.run(trees[t]);
        } catch (...) {
            std::lock_guard<std::mutex> hold(error_lock);
            if (!failure) failure = std::current_exception();
        }
    };
    if (jobs == 1) {
        work(0);
    } else {
        std::vector<std::thread> pool;
        for (unsigned w = 0; w < jobs; ++w) pool.emplace_back(work, w);
        for (auto& t : pool) t.join();
    }
    if (failure) std::rethrow_exception(failure);

    std::set<CanonicalForm> all;
    EnumerationReport r;
    for (unsigned w = 0; w < jobs; ++w) {
        all.insert(found[w].begin(), found[w].end());
        r.labelings += produced[w];
    }
    r.l = l;
    r.class_count = all.size();
    r.formula_count = e_formula(l);
    r.forms.assign(all.begin(), all.end());
    for (const auto& f : r.forms) r.stored_bytes += f.bytes.size();
    if (opt.keep_representatives)
        for (const auto& f : r.forms) r.representatives.push_back(from_canonical(f));
    r.elapsed_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
    return r;
}

}  // namespace matvine
