#include <gtest/gtest.h>

#include <filesystem>
#include <random>

#include "oracles.hpp"

using namespace matvine;

namespace {

std::string data(const std::string& f) { return std::string(MATVINE_DATA_DIR) + "/" + f; }

}  // namespace

TEST(Json, GraphRoundTrip) {
    std::mt19937 rng(1);
    for (int t = 0; t < 100; ++t) {
        auto g = oracle::random_mat_graph(rng, 9);
        auto d = parse_document(to_json(g).dump());
        ASSERT_EQ(std::get<LabeledGraph>(d), g);
    }
}

TEST(Json, VineRoundTripKeepsLabels) {
    VinePoset p({{"a", 1, {}, "first"}, {"b", 1, {}, {}}, {"ab", 2, {"a", "b"}, "top"}});
    auto j = to_json(p);
    EXPECT_EQ(j["nodes"][0]["label"], "first");
    EXPECT_FALSE(j["nodes"][1].contains("label"));
    auto q = std::get<VinePoset>(parse_document(j.dump()));
    EXPECT_EQ(q, p);
    EXPECT_EQ(q.label(2), "top");
}

TEST(Json, ForestsRoundTrip) {
    auto f = std::get<ForestSequence>(read_document(data("d3-forests.json")));
    auto g = std::get<ForestSequence>(parse_document(to_json(f).dump()));
    EXPECT_TRUE(same_forests(f, g));
    EXPECT_EQ(to_json(f)["format"], forests_format);
}

TEST(Json, FixturesParseToTheirTypes) {
    EXPECT_TRUE(std::holds_alternative<LabeledGraph>(read_document(data("lrv5.json"))));
    EXPECT_TRUE(std::holds_alternative<VinePoset>(read_document(data("d4.json"))));
    EXPECT_TRUE(std::holds_alternative<ForestSequence>(read_document(data("d3-forests.json"))));
}

TEST(Json, VerdictSerialization) {
    EXPECT_EQ(to_json(Verdict::pass()).dump(), R"({"ok":true})");
    auto g = std::get<LabeledGraph>(read_document(data("c4cycle.json")));
    auto j = to_json(check_mat_labeling(g));
    EXPECT_EQ(j["ok"], false);
    EXPECT_EQ(j["tag"], "ML1");
    EXPECT_TRUE(j.contains("message"));
    EXPECT_EQ(j["vertices"].size(), 3u);
}

TEST(Json, ReportSerialization) {
    auto r = enumerate_mat_labelings_complete(6);
    auto j = to_json(r);
    EXPECT_EQ(j["l"], 6);
    EXPECT_EQ(j["class_count"], 40);
    EXPECT_EQ(j["formula_count"], 40);
    EXPECT_TRUE(j.contains("elapsed_ms"));
}

TEST(Json, MalformedInputsAreInputErrors) {
    for (const char* text : {
             "not json",
             R"({"nodes":[]})",
             R"({"format":"nope/v1"})",
             R"({"format":"mat-graph/v1","vertices":["a"]})",
             R"({"format":"mat-graph/v1","vertices":["a","b"],"edges":[["a","b"]]})",
             R"({"format":"mat-graph/v1","vertices":["a","b"],"edges":[["a","b","1"]]})",
             R"({"format":"mat-graph/v1","vertices":["a","b"],"edges":[["a","c",1]]})",
             R"({"format":"mat-graph/v1","vertices":["a","a"],"edges":[]})",
             R"({"format":"mat-graph/v1","vertices":["a","b"],"edges":[["a","b",0]]})",
             R"({"format":"vine/v1","nodes":[{"id":"a","rank":1}]})",
             R"({"format":"vine/v1","nodes":[{"id":"a","rank":"1","covers":[]}]})",
             R"({"format":"vine/v1","nodes":[{"id":"a","rank":1,"covers":["zz"]}]})",
             R"({"format":"vine-forests/v1","forests":[{"nodes":["1"],"edges":[{"id":"x","ends":["1"]}]}]})",
             R"({"format":"vine-forests/v1","forests":[{"nodes":["1","2"],"edges":[{"id":"x","ends":["1","3"]}]}]})",
             R"([1,2,3])",
         })
        EXPECT_THROW(parse_document(text), input_error) << text;
}

TEST(Json, UnreadableFileIsInputError) { EXPECT_THROW(read_document(data("missing.json")), input_error); }

TEST(Json, UnwritablePathIsInputError) { EXPECT_THROW(write_text("/nonexistent-dir/x.json", "{}"), input_error); }

TEST(Dot, GraphHasLabeledEdges) {
    auto s = to_dot(std::get<LabeledGraph>(read_document(data("d4-graph.json"))));
    EXPECT_EQ(s.rfind("graph G {", 0), 0u);
    EXPECT_NE(s.find("\"v1\" -- \"v4\" [label=3];"), std::string::npos);
    EXPECT_EQ(std::count(s.begin(), s.end(), '\n'), 1 + 4 + 6 + 1);
}

TEST(Dot, VineIsLayeredByRank) {
    auto s = to_dot(std::get<VinePoset>(read_document(data("d4.json"))));
    EXPECT_NE(s.find("rankdir=BT"), std::string::npos);
    std::size_t rows = 0;
    for (std::size_t at = s.find("rank=same"); at != std::string::npos; at = s.find("rank=same", at + 1)) ++rows;
    EXPECT_EQ(rows, 4u);
    EXPECT_NE(s.find("[label=\"14|23\"]"), std::string::npos);
    EXPECT_NE(s.find("\"13|2\" -> \"14|23\""), std::string::npos);
}

TEST(Dot, PsiOutputShowsDerivedNames) {
    auto p = psi(std::get<LabeledGraph>(read_document(data("lrv5.json"))));
    auto s = to_dot(p);
    EXPECT_NE(s.find("[label=\"{v1},{v3}|{v4}\"]"), std::string::npos);
}

TEST(Dot, QuotesAreEscaped) {
    auto s = to_dot(LabeledGraph({"a\"b"}, {}));
    EXPECT_NE(s.find("\"a\\\"b\""), std::string::npos);
}
