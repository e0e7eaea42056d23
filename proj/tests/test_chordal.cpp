#include <gtest/gtest.h>

#include <random>

#include "oracles.hpp"

using namespace matvine;

namespace {

Graph cycle(std::size_t n) {
    std::vector<std::pair<std::string, std::string>> e;
    auto v = oracle::names(n);
    for (std::size_t i = 0; i < n; ++i) e.emplace_back(v[i], v[(i + 1) % n]);
    return Graph(v, e);
}

Graph complete(std::size_t n) {
    std::vector<std::pair<std::string, std::string>> e;
    auto v = oracle::names(n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) e.emplace_back(v[i], v[j]);
    return Graph(v, e);
}

Graph sun(std::size_t k) {
    std::vector<std::string> v;
    std::vector<std::pair<std::string, std::string>> e;
    for (std::size_t i = 0; i < k; ++i) v.push_back("w" + std::to_string(i));
    for (std::size_t i = 0; i < k; ++i) v.push_back("u" + std::to_string(i));
    for (std::size_t i = 0; i < k; ++i)
        for (std::size_t j = i + 1; j < k; ++j) e.emplace_back(v[i], v[j]);
    for (std::size_t i = 0; i < k; ++i) {
        e.emplace_back(v[k + i], v[i]);
        e.emplace_back(v[k + i], v[(i + 1) % k]);
    }
    return Graph(v, e);
}

Graph induced_on(const Graph& g, const std::vector<std::string>& ids) {
    std::vector<std::size_t> keep;
    for (const auto& id : ids) keep.push_back(g.index_of(id));
    return g.induced(keep);
}

std::multiset<int> labels_of(const LabeledGraph& g) {
    std::multiset<int> r;
    for (const auto& e : g.edges()) r.insert(e.label);
    return r;
}

}  // namespace

TEST(StronglyChordal, FourCycleIsNotChordal) {
    auto v = is_strongly_chordal(cycle(4));
    ASSERT_FALSE(v.ok());
    EXPECT_EQ(v.tag(), "NotChordal");
    auto w = induced_on(cycle(4), v.violation()->vertices);
    EXPECT_EQ(w.size(), 4u);
    EXPECT_EQ(w.edge_count(), 4u);
}

TEST(StronglyChordal, ThreeSunIsFound) {
    auto v = is_strongly_chordal(sun(3));
    ASSERT_FALSE(v.ok());
    EXPECT_EQ(v.tag(), "SunFound");
    EXPECT_EQ(v.violation()->vertices.size(), 6u);
}

TEST(StronglyChordal, LargerSunsAreFound) {
    for (std::size_t k = 4; k <= 6; ++k) {
        auto v = is_strongly_chordal(sun(k));
        ASSERT_FALSE(v.ok());
        EXPECT_EQ(v.tag(), "SunFound");
        EXPECT_TRUE(oracle::has_sun(induced_on(sun(k), v.violation()->vertices)));
    }
}

TEST(StronglyChordal, CompleteGraphsPass) {
    for (std::size_t n = 0; n <= 8; ++n) EXPECT_TRUE(is_strongly_chordal(complete(n)).ok()) << n;
}

TEST(StronglyChordal, AgreesWithBruteForceOnAllSmallGraphs) {
    // every simple graph on up to 6 labeled vertices; witnesses checked too
    for (std::size_t n = 1; n <= 6; ++n) {
        std::uint64_t total = std::uint64_t(1) << (n * (n - 1) / 2);
        for (std::uint64_t mask = 0; mask < total; ++mask) {
            auto g = oracle::graph_from_mask(n, mask);
            bool long_cycle = oracle::has_long_induced_cycle(g);
            ASSERT_EQ(is_chordal(g), !long_cycle) << mask;
            auto v = is_strongly_chordal(g);
            ASSERT_EQ(v.ok(), !long_cycle && !oracle::has_sun(g)) << mask;
            if (v.ok()) continue;
            auto w = induced_on(g, v.violation()->vertices);
            if (v.tag() == "NotChordal") {
                ASSERT_GE(w.size(), 4u);
                ASSERT_EQ(w.edge_count(), w.size());
                ASSERT_TRUE(oracle::has_long_induced_cycle(w));
            } else {
                ASSERT_EQ(v.tag(), "SunFound");
                ASSERT_TRUE(oracle::has_sun(w));
            }
        }
    }
}

TEST(FindMatLabeling, TriangleGetsLabelsOneOneTwo) {
    auto l = find_mat_labeling(complete(3));
    ASSERT_TRUE(l);
    EXPECT_TRUE(check_mat_labeling(*l).ok());
    EXPECT_EQ(labels_of(*l), (std::multiset<int>{1, 1, 2}));
}

TEST(FindMatLabeling, FourCycleHasNone) { EXPECT_FALSE(find_mat_labeling(cycle(4))); }

TEST(FindMatLabeling, SingleVertexGetsEmptyLabeling) {
    auto l = find_mat_labeling(Graph({"a"}, {}));
    ASSERT_TRUE(l);
    EXPECT_EQ(l->size(), 1u);
    EXPECT_EQ(l->edge_count(), 0u);
}

TEST(FindMatLabeling, SunHasNone) { EXPECT_FALSE(find_mat_labeling(sun(3))); }

TEST(FindMatLabeling, ExistsExactlyForStronglyChordalGraphsUpToSix) {
    for (std::size_t n = 1; n <= 6; ++n) {
        std::uint64_t total = std::uint64_t(1) << (n * (n - 1) / 2);
        for (std::uint64_t mask = 0; mask < total; ++mask) {
            auto g = oracle::graph_from_mask(n, mask);
            auto l = find_mat_labeling(g);
            ASSERT_EQ(l.has_value(), oracle::strongly_chordal(g)) << mask;
            if (!l) continue;
            ASSERT_TRUE(oracle::is_mat(*l));
            ASSERT_EQ(l->edge_count(), g.edge_count());
            for (const auto& e : g.edges()) ASSERT_NE(l->label(e.first, e.second), 0);
        }
    }
}

TEST(FindMatLabeling, CompleteGraphLabelCountsFollowLevels) {
    for (std::size_t n = 2; n <= 9; ++n) {
        auto l = find_mat_labeling(complete(n));
        ASSERT_TRUE(l);
        ASSERT_TRUE(check_mat_labeling(*l).ok());
        auto ls = labels_of(*l);
        for (std::size_t k = 1; k < n; ++k) EXPECT_EQ(ls.count(int(k)), n - k);
    }
}

TEST(MaximalCliques, AgreeWithBruteForceOnRandomChordalGraphs) {
    std::mt19937 rng(3);
    for (int t = 0; t < 300; ++t) {
        auto g = oracle::random_chordal(rng, 1 + rng() % 12);
        auto got = maximal_cliques(g);
        std::set<std::vector<std::size_t>> mine(got.begin(), got.end());
        ASSERT_EQ(mine.size(), got.size());
        ASSERT_EQ(mine, oracle::maximal_cliques(g));
    }
}

TEST(MaximalCliques, NonChordalIsPreconditionError) {
    EXPECT_THROW(maximal_cliques(cycle(5)), precondition_error);
}

TEST(Chordal, LargeInputIsResourceError) {
    EXPECT_THROW(is_chordal(Graph(oracle::names(65), {})), resource_error);
}
