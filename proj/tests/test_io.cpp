#include <gtest/gtest.h>

#include <sstream>

#include "pencil/io.hpp"

using namespace pencil;
using pencil::io::json;

namespace {

Rational q(long long p, long long r = 1) { return Rational(BigInt(p), BigInt(r)); }

} // namespace

TEST(Json, PencilConfigRoundTrip) {
    auto cfg = build_grid_footnote_config(3);
    json j = io::to_json(cfg);
    EXPECT_EQ(j["label"], "grid-footnote(n=3)");
    EXPECT_EQ(j["pencils"][0]["centre"], json::array({"1", "0", "0"}));
    auto back = io::pencil_config_from_json(json::parse(j.dump()));
    EXPECT_EQ(back.label, cfg.label);
    ASSERT_EQ(back.pencils.size(), 4u);
    for (std::size_t k = 0; k < 4; ++k) {
        EXPECT_EQ(back.pencils[k].centre(), cfg.pencils[k].centre());
        EXPECT_EQ(back.pencils[k].lines(), cfg.pencils[k].lines());
    }
    EXPECT_EQ(io::to_json(back).dump(), j.dump());
}

TEST(Json, PencilConfigErrors) {
    EXPECT_THROW(io::pencil_config_from_json(json::parse(R"({"pencils": [{"centre": [0, 0, 1], "lines": []}]})")), Error);
    EXPECT_THROW(io::pencil_config_from_json(json::parse(R"({"label": "x"})")), Error);
    // line misses its centre
    auto bad = json::parse(R"({"pencils": [{"centre": ["0","0","1"], "lines": [["0","1","-1"]]}]})");
    EXPECT_THROW(io::pencil_config_from_json(bad), Error);
}

TEST(Json, GraphConstructionRoundTrip) {
    auto c = build_symmetric_farey_construction(16);
    json j = io::to_json(c);
    EXPECT_EQ(j["label"], "symmetric(n=16)");
    EXPECT_EQ(j["d"], "0");
    EXPECT_EQ(j["edges"].size(), 33u);
    auto back = io::graph_construction_from_json(json::parse(j.dump()));
    EXPECT_EQ(back.graph.edges(), c.graph.edges());
    EXPECT_EQ(back.A().elements(), c.A().elements());
    EXPECT_EQ(back.n, 16u);
    auto farey = build_farey_shift_construction(16, Rational::parse("1/3"));
    EXPECT_EQ(io::to_json(farey)["d"], "1/3");
}

TEST(Json, Centres) {
    auto pts = io::points_from_json(json::parse(R"([["0","-1"], ["1/2","3"], ["0","1","0"]])"));
    ASSERT_EQ(pts.size(), 3u);
    EXPECT_EQ(pts[0], ProjPoint(0, -1, 1));
    EXPECT_EQ(pts[1], ProjPoint(1, 6, 2));
    EXPECT_TRUE(pts[2].at_infinity());
    EXPECT_THROW(io::points_from_json(json::parse(R"([[0, 1]])")), Error);
    EXPECT_THROW(io::points_from_json(json::parse(R"([["1/2","1","1"]])")), Error);
}

TEST(Json, ReportsHaveFixedKeys) {
    auto r = rich_points(build_grid_footnote_config(2));
    json j = io::to_json(r);
    EXPECT_EQ(j["count"], 4);
    EXPECT_EQ(j["m"], 4);
    EXPECT_EQ(j["points"].size(), 4u);
    EXPECT_EQ(io::rich_csv_row(r), "grid-footnote(n=2),4,2;2;3;3,4,0,0");

    auto lemma = verify_lemma_chain(BipartiteGraph::complete(GroundSet({q(1)}), GroundSet({q(1), q(2)})), {q(0), q(0)},
                                    {q(1), q(0)});
    json l = io::to_json(lemma);
    EXPECT_EQ(l["verdicts"]["witnesses"], true);
    EXPECT_EQ(l["incidences"], 4);
    EXPECT_EQ(l["neighbourhood_square_sum"], "4");
    EXPECT_TRUE(l["ratio_constant"].is_number());
}

TEST(Csv, SweepRoundTrip) {
    SweepRow a;
    a.n = 16;
    a.d = Rational::parse("43/1000");
    a.construction = "farey-shift";
    a.edge_count = 39;
    a.ratio_set_sizes = {17, 21, 28};
    a.rich_count = 40;
    a.pencil_sizes = {7, 9, 9, 11};
    SweepRow b;
    b.n = 4;
    b.construction = "symmetric";
    b.edge_count = 5;

    std::stringstream ss;
    io::write_sweep_csv(ss, {a, b});
    const std::string text = ss.str();
    EXPECT_EQ(text.substr(0, text.find('\n')), io::kSweepCsvHeader);
    EXPECT_NE(text.find("16,43/1000,farey-shift,39,17;21;28,40,7;9;9;11,0\n"), std::string::npos);
    EXPECT_NE(text.find("4,0,symmetric,5,,,,0\n"), std::string::npos);

    auto rows = io::read_sweep(ss);
    ASSERT_EQ(rows.size(), 2u);
    EXPECT_EQ(rows[0].d, a.d);
    EXPECT_EQ(rows[0].ratio_set_sizes, a.ratio_set_sizes);
    EXPECT_EQ(rows[0].rich_count, a.rich_count);
    EXPECT_FALSE(rows[1].rich_count);
    EXPECT_TRUE(rows[1].pencil_sizes.empty());
}

TEST(Csv, JsonSweepInput) {
    SweepRow a;
    a.n = 9;
    a.construction = "grid-footnote";
    a.edge_count = 81;
    a.rich_count = 81;
    json arr = json::array({io::to_json(a)});
    std::istringstream is(arr.dump());
    auto rows = io::read_sweep(is);
    ASSERT_EQ(rows.size(), 1u);
    EXPECT_EQ(rows[0].rich_count, 81u);
}

TEST(Csv, Errors) {
    std::istringstream no_header("1,2,3\n");
    EXPECT_THROW(io::read_sweep(no_header), Error);
    std::istringstream short_row(std::string(io::kSweepCsvHeader) + "\n1,0,x\n");
    EXPECT_THROW(io::read_sweep(short_row), Error);
    std::istringstream bad_number(std::string(io::kSweepCsvHeader) + "\n1,0,x,-3,,,,0\n");
    EXPECT_THROW(io::read_sweep(bad_number), Error);
    EXPECT_EQ(io::csv_field("a,b"), "\"a,b\"");
}

TEST(Binary, EdgesRoundTrip) {
    std::vector<Edge> edges{{0, 1}, {7, 70000}, {4294967295u, 3}};
    std::stringstream ss;
    io::write_edges_binary(ss, edges);
    EXPECT_EQ(ss.str().size(), 24u);
    EXPECT_EQ(static_cast<unsigned char>(ss.str()[8]), 7u);
    EXPECT_EQ(io::read_edges_binary(ss), edges);
    std::istringstream truncated(std::string(5, '\0'));
    EXPECT_THROW(io::read_edges_binary(truncated), Error);
}
