#include <gtest/gtest.h>

#include <random>

#include "oracles.hpp"

using namespace matvine;

namespace {

LabeledGraph d4() {
    return LabeledGraph({"v1", "v2", "v3", "v4"}, {{"v1", "v2", 1},
                                                   {"v2", "v3", 1},
                                                   {"v3", "v4", 1},
                                                   {"v1", "v3", 2},
                                                   {"v2", "v4", 2},
                                                   {"v1", "v4", 3}});
}

LabeledGraph c4() {
    return LabeledGraph({"v1", "v2", "v3", "v4"}, {{"v1", "v2", 1},
                                                   {"v1", "v3", 1},
                                                   {"v1", "v4", 1},
                                                   {"v2", "v3", 2},
                                                   {"v2", "v4", 2},
                                                   {"v3", "v4", 3}});
}

LabeledGraph lrv5() {
    return LabeledGraph({"v1", "v2", "v3", "v4", "v5"}, {{"v1", "v4", 1},
                                                         {"v2", "v4", 1},
                                                         {"v3", "v4", 1},
                                                         {"v4", "v5", 1},
                                                         {"v1", "v3", 2},
                                                         {"v2", "v3", 2},
                                                         {"v3", "v5", 2}});
}

std::vector<std::string> members(const LabeledGraph& g, const PrincipalClique& c) {
    std::vector<std::string> r;
    for (auto m : c.members) r.push_back(g.vertex(m));
    return r;
}

const PrincipalClique& clique_of(const LabeledGraph& g, const std::vector<PrincipalClique>& cs,
                                 const std::string& a, const std::string& b) {
    for (const auto& c : cs) {
        auto u = g.vertex(c.edge.u), v = g.vertex(c.edge.v);
        if ((u == a && v == b) || (u == b && v == a)) return c;
    }
    throw std::runtime_error("no such edge");
}

}  // namespace

TEST(LabeledGraphInput, RejectsMalformedGraphs) {
    EXPECT_THROW(LabeledGraph({"a"}, {{"a", "a", 1}}), input_error);
    EXPECT_THROW(LabeledGraph({"a", "b"}, {{"a", "b", 0}}), input_error);
    EXPECT_THROW(LabeledGraph({"a", "b"}, {{"a", "b", -2}}), input_error);
    EXPECT_THROW(LabeledGraph({"a", "b"}, {{"a", "b", 1}, {"b", "a", 1}}), input_error);
    EXPECT_THROW(LabeledGraph({"a", "b"}, {{"a", "c", 1}}), input_error);
    EXPECT_THROW(LabeledGraph({"a", "a"}, {}), input_error);
    EXPECT_THROW(LabeledGraph({""}, {}), input_error);
}

TEST(LabeledGraphInput, EqualityIgnoresVertexOrder) {
    LabeledGraph a({"x", "y", "z"}, {{"x", "y", 1}, {"y", "z", 2}});
    LabeledGraph b({"z", "y", "x"}, {{"z", "y", 2}, {"y", "x", 1}});
    EXPECT_EQ(a, b);
    EXPECT_FALSE(a == LabeledGraph({"x", "y", "z"}, {{"x", "y", 1}, {"y", "z", 1}}));
}

TEST(CheckMatLabeling, DVineCompleteGraphIsMat) { EXPECT_TRUE(check_mat_labeling(d4()).ok()); }

TEST(CheckMatLabeling, SingleEdgeLabelOneIsMat) {
    EXPECT_TRUE(check_mat_labeling(LabeledGraph({"a", "b"}, {{"a", "b", 1}})).ok());
}

TEST(CheckMatLabeling, SingleEdgeLabelTwoViolatesMl2) {
    auto v = check_mat_labeling(LabeledGraph({"a", "b"}, {{"a", "b", 2}}));
    ASSERT_FALSE(v.ok());
    EXPECT_EQ(v.tag(), "ML2");
    EXPECT_EQ(v.violation()->edges.size(), 1u);
}

TEST(CheckMatLabeling, MonochromaticTriangleViolatesMl1WithCycle) {
    auto v = check_mat_labeling(LabeledGraph({"a", "b", "c"}, {{"a", "b", 1}, {"b", "c", 1}, {"a", "c", 1}}));
    ASSERT_FALSE(v.ok());
    EXPECT_EQ(v.tag(), "ML1");
    // the witness path plus the closing edge form the cycle
    EXPECT_EQ(v.violation()->vertices.size(), 3u);
    EXPECT_EQ(v.violation()->edges.size(), 1u);
}

TEST(CheckMatLabeling, LowerEdgeInsideHigherComponentViolatesMl1) {
    // label 2 forms the path z-x-w-y, and the label-1 edge x-y joins two of its vertices
    LabeledGraph g({"x", "y", "z", "w"},
                   {{"x", "y", 1}, {"y", "z", 1}, {"z", "w", 1}, {"x", "z", 2}, {"y", "w", 2}, {"w", "x", 2}});
    auto v = check_mat_labeling(g);
    ASSERT_FALSE(v.ok());
    EXPECT_EQ(v.tag(), "ML1");
    EXPECT_FALSE(oracle::is_mat(g));
}

TEST(CheckMatLabeling, EmptyGraphIsMat) { EXPECT_TRUE(check_mat_labeling(LabeledGraph({}, {})).ok()); }

TEST(CheckMatLabeling, AgreesWithDefinitionOnAllSmallLabelings) {
    // every labeling of every graph on up to 4 vertices with labels <= 4
    for (std::size_t n = 0; n <= 4; ++n) {
        std::size_t pairs = n * (n - (n ? 1 : 0)) / 2;
        std::size_t total = 1;
        for (std::size_t i = 0; i < pairs; ++i) total *= 5;
        for (std::size_t code = 0; code < total; ++code) {
            std::vector<int> m(n * n, 0);
            std::size_t c = code;
            for (std::size_t a = 0; a < n; ++a)
                for (std::size_t b = a + 1; b < n; ++b, c /= 5) m[a * n + b] = m[b * n + a] = int(c % 5);
            auto g = LabeledGraph::from_matrix(oracle::names(n), m);
            ASSERT_EQ(check_mat_labeling(g).ok(), oracle::is_mat(g)) << code;
        }
    }
}

TEST(IsMatSimplicial, DVineEndVertex) { EXPECT_TRUE(is_mat_simplicial(d4(), "v4").ok()); }

TEST(IsMatSimplicial, IsolatedVertex) {
    EXPECT_TRUE(is_mat_simplicial(LabeledGraph({"a", "b"}, {}), "a").ok());
}

TEST(IsMatSimplicial, CVineCenterFailsMs2) {
    auto v = is_mat_simplicial(c4(), "v1");
    ASSERT_FALSE(v.ok());
    EXPECT_EQ(v.tag(), "MS2");
}

TEST(IsMatSimplicial, NonCliqueNeighborhoodFailsMs1) {
    LabeledGraph g({"a", "b", "c"}, {{"a", "b", 1}, {"a", "c", 2}});
    EXPECT_EQ(is_mat_simplicial(g, "a").tag(), "MS1");
}

TEST(IsMatSimplicial, DominatedLabelFailsMs3) {
    LabeledGraph g({"a", "b", "c"}, {{"a", "b", 1}, {"a", "c", 2}, {"b", "c", 2}});
    EXPECT_EQ(is_mat_simplicial(g, "a").tag(), "MS3");
}

TEST(IsMatSimplicial, UnknownVertexIsInputError) { EXPECT_THROW(is_mat_simplicial(d4(), "zz"), input_error); }

TEST(FindMatPeo, DVineOrderIsValid) {
    auto o = find_mat_peo(d4());
    ASSERT_TRUE(o);
    EXPECT_TRUE(is_mat_peo(d4(), *o).ok());
    EXPECT_TRUE(is_mat_peo(d4(), {"v1", "v2", "v3", "v4"}).ok());
}

TEST(FindMatPeo, EmptyGraphGivesEmptyOrder) {
    auto o = find_mat_peo(LabeledGraph({}, {}));
    ASSERT_TRUE(o);
    EXPECT_TRUE(o->empty());
}

TEST(FindMatPeo, MonochromaticTriangleHasNone) {
    EXPECT_FALSE(find_mat_peo(LabeledGraph({"a", "b", "c"}, {{"a", "b", 1}, {"b", "c", 1}, {"a", "c", 1}})));
}

TEST(FindMatPeo, ExistsExactlyForMatLabelingsOnFiveVertices) {
    // all labeled graphs with at most 5 vertices and labels at most 4
    std::size_t mats = 0;
    for (std::size_t n = 0; n <= 5; ++n) {
        std::size_t pairs = n * (n - (n ? 1 : 0)) / 2;
        std::size_t total = 1;
        for (std::size_t i = 0; i < pairs; ++i) total *= 5;
        auto ids = oracle::names(n);
        std::vector<int> m(n * n, 0);
        for (std::size_t code = 0; code < total; ++code) {
            std::size_t c = code;
            for (std::size_t a = 0; a < n; ++a)
                for (std::size_t b = a + 1; b < n; ++b, c /= 5) m[a * n + b] = m[b * n + a] = int(c % 5);
            auto g = LabeledGraph::from_matrix(ids, m);
            bool mat = check_mat_labeling(g).ok();
            auto peo = find_mat_peo(g);
            ASSERT_EQ(mat, peo.has_value()) << code;
            if (peo) {
                ++mats;
                ASSERT_TRUE(is_mat_peo(g, *peo).ok());
            }
        }
    }
    EXPECT_GT(mats, 0u);
}

TEST(PrincipalCliques, DVineLargestClique) {
    auto g = d4();
    auto cs = principal_cliques(g);
    EXPECT_EQ(members(g, clique_of(g, cs, "v1", "v4")), (std::vector<std::string>{"v1", "v2", "v3", "v4"}));
    EXPECT_EQ(members(g, clique_of(g, cs, "v1", "v2")), (std::vector<std::string>{"v1", "v2"}));
}

TEST(PrincipalCliques, LrvEdgeV1V3) {
    auto g = lrv5();
    auto cs = principal_cliques(g);
    EXPECT_EQ(members(g, clique_of(g, cs, "v1", "v3")), (std::vector<std::string>{"v1", "v3", "v4"}));
    for (const auto& c : cs) {
        if (c.edge.label == 1) {
            EXPECT_EQ(c.members.size(), 2u);
        }
    }
}

TEST(PrincipalCliques, NonMatInputIsPreconditionError) {
    try {
        principal_cliques(LabeledGraph({"a", "b"}, {{"a", "b", 2}}));
        FAIL();
    } catch (const precondition_error& e) {
        EXPECT_EQ(e.condition, "NotMatLabeled");
    }
}

TEST(MatProperties, PrincipalCliquesAreCliquesWithLowerLabels) {
    std::mt19937 rng(7);
    for (int t = 0; t < 200; ++t) {
        auto g = oracle::random_mat_graph(rng, 10);
        for (const auto& c : principal_cliques(g)) {
            ASSERT_TRUE(is_clique(g, c.members));
            for (auto a : c.members)
                for (auto b : c.members)
                    if (a < b && !((a == c.edge.u && b == c.edge.v) || (a == c.edge.v && b == c.edge.u))) {
                        ASSERT_LT(g.label(a, b), c.edge.label);
                    }
        }
    }
}

TEST(MatProperties, LargestLabelMatchesCliqueNumber) {
    std::mt19937 rng(11);
    for (int t = 0; t < 200; ++t) {
        auto g = oracle::random_mat_graph(rng, 10);
        if (g.edge_count() == 0) continue;
        auto maxc = oracle::maximal_cliques(g.graph());
        std::size_t omega_g = 0;
        for (const auto& c : maxc) omega_g = std::max(omega_g, c.size());
        ASSERT_EQ(static_cast<std::size_t>(g.max_label()), omega_g - 1);
        std::set<std::vector<std::size_t>> largest, from_edges;
        for (const auto& c : maxc)
            if (c.size() == omega_g) largest.insert(c);
        std::size_t top_edges = 0;
        for (const auto& c : principal_cliques(g))
            if (c.edge.label == g.max_label()) {
                ++top_edges;
                from_edges.insert(c.members);
            }
        ASSERT_EQ(top_edges, from_edges.size());
        ASSERT_EQ(from_edges, largest);
    }
}

TEST(MatProperties, RemovingSimplicialVertexPreservesMat) {
    std::mt19937 rng(13);
    for (int t = 0; t < 300; ++t) {
        auto g = oracle::random_mat_graph(rng, 9);
        for (std::size_t v = 0; v < g.size(); ++v) {
            if (is_mat_simplicial(g, v).ok()) {
                ASSERT_TRUE(check_mat_labeling(g.without(v)).ok());
            }
        }
    }
    // converse: adding an MAT-simplicial vertex to an MAT graph keeps it MAT
    for (std::size_t code = 0; code < 5 * 5 * 5 * 5 * 5 * 5 * 5 * 5 * 5 * 5; code += 7) {
        std::size_t n = 5, c = code;
        std::vector<int> m(n * n, 0);
        for (std::size_t a = 0; a < n; ++a)
            for (std::size_t b = a + 1; b < n; ++b, c /= 5) m[a * n + b] = m[b * n + a] = int(c % 5);
        auto g = LabeledGraph::from_matrix(oracle::names(n), m);
        if (!is_mat_simplicial(g, n - 1).ok()) continue;
        ASSERT_EQ(check_mat_labeling(g).ok(), check_mat_labeling(g.without(n - 1)).ok()) << code;
    }
}

TEST(MatProperties, LargestLabelEndpointsAreSimplicialInCompleteGraphs) {
    for (const auto& g : {d4(), c4()}) {
        for (const auto& e : g.edges())
            if (e.label == g.max_label()) {
                EXPECT_TRUE(is_mat_simplicial(g, e.u).ok());
                EXPECT_TRUE(is_mat_simplicial(g, e.v).ok());
            }
    }
}

TEST(MatProperties, RestrictionToCliqueIntersectionsIsMat) {
    std::mt19937 rng(17);
    for (int t = 0; t < 200; ++t) {
        auto g = oracle::random_mat_graph(rng, 10);
        auto cs = maximal_cliques(g.graph());
        for (std::size_t a = 0; a < cs.size(); ++a)
            for (std::size_t b = a + 1; b < cs.size(); ++b) {
                std::vector<std::size_t> both;
                std::set_intersection(cs[a].begin(), cs[a].end(), cs[b].begin(), cs[b].end(),
                                      std::back_inserter(both));
                ASSERT_TRUE(check_mat_labeling(g.induced(both)).ok());
            }
    }
}
