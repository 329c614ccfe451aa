#include "ifg/generators.hpp"
#include "ifg/io.hpp"
#include "ifg/mwis.hpp"
#include "support.hpp"

#include <gtest/gtest.h>

#include <fstream>
#include <sstream>

using namespace ifg;

namespace {

std::string fixture(const std::string& name)
{
    std::ifstream in(std::string(IFG_FIXTURES) + "/" + name);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

const std::string header = "{\"format_version\":1,\"type\":\"instance\"}\n";

} // namespace

TEST(ParseInstance, MixedFixture)
{
    const auto rec = parse_instance(fixture("mixed.jsonl"));
    ASSERT_EQ(rec.size(), 4u);
    EXPECT_EQ(rec.ids, (std::vector<std::string>{"tent", "arc", "low", "big"}));
    const auto& tent = std::get<PolylineFilament>(rec.filaments[0]);
    EXPECT_EQ(tent.vertices[1].x, Rational(3, 2));
    EXPECT_EQ(std::get<SemicircleFilament>(rec.filaments[3]).left, Rational(13, 2));
    EXPECT_EQ(rec.weights, (std::vector<std::int64_t>{5, 4, 3, 2}));
    const auto ew = rec.edge_weight_map();
    ASSERT_EQ(ew.size(), 1u);
    EXPECT_EQ(ew.at({0, 1}), 10);
    EXPECT_FALSE(rec.adjacency.has_value());
}

TEST(ParseInstance, AbstractWithAdjacency)
{
    const auto rec = parse_instance(fixture("p3_violation.jsonl"));
    ASSERT_TRUE(rec.adjacency.has_value());
    const auto inst = rec.build();
    EXPECT_FALSE(inst.geometric());
    EXPECT_TRUE(inst.intersects(0, 2));
    EXPECT_FALSE(inst.intersects(0, 1));
}

TEST(ParseInstance, FloatWeights)
{
    const auto text = header + R"({"id":"a","kind":"semicircle","l":0,"r":1,"type":"filament","weight":1.5})" "\n";
    EXPECT_DOUBLE_EQ(parse_instance<double>(text).weights[0], 1.5);
    EXPECT_THROW(parse_instance<std::int64_t>(text), parse_error);
}

TEST(ParseInstance, CommentsAndBlankLines)
{
    const auto text = "# leading comment\n\n" + header + "   \n# another\n";
    EXPECT_EQ(parse_instance(text).size(), 0u);
}

TEST(ParseInstance, Malformed)
{
    const std::string arc_a = R"({"id":"a","kind":"semicircle","l":0,"r":2,"type":"filament","weight":1})" "\n";
    const std::string arc_b = R"({"id":"b","kind":"semicircle","l":1,"r":3,"type":"filament","weight":1})" "\n";
    const std::string abs_a = R"({"id":"a","kind":"abstract","l":0,"r":2,"type":"filament","weight":1})" "\n";
    const std::vector<std::string> bad{
        "",
        arc_a,
        R"({"format_version":2,"type":"instance"})" "\n",
        header + "{not json\n",
        header + "[1,2]\n",
        header + arc_a + arc_a,
        header + R"({"id":"a","kind":"spiral","type":"filament","weight":1})" "\n",
        header + R"({"id":"a","kind":"polyline","type":"filament","vertices":[[0,0]],"weight":1})" "\n",
        header + R"({"id":"a","kind":"semicircle","l":[1,0],"r":2,"type":"filament","weight":1})" "\n",
        header + R"({"id":"a","kind":"semicircle","l":0,"type":"filament","weight":1})" "\n",
        header + abs_a,
        header + abs_a + R"({"row":[1,0],"type":"adjacency"})" "\n",
        header + arc_a + arc_b + R"({"row":[1,1],"type":"adjacency"})" "\n" R"({"row":[0,1],"type":"adjacency"})" "\n",
        header + arc_a + R"({"row":[0],"type":"adjacency"})" "\n",
        header + arc_a + R"({"row":[2],"type":"adjacency"})" "\n",
        header + arc_a + R"({"a":"a","b":"zz","type":"edge_weight","w":3})" "\n",
        header + R"({"type":"mystery"})" "\n",
    };
    for (const auto& text : bad)
        EXPECT_THROW(parse_instance(text), parse_error) << text;
}

TEST(Serialize, RoundTripKeepsInstance)
{
    for (std::uint64_t seed = 0; seed < 30; ++seed)
    {
        const auto family = seed % 3 == 0 ? Family::random_polylines : seed % 3 == 1 ? Family::random_arcs
                                                                                    : Family::nested_arcs;
        const auto inst = generate({family, 1 + seed % 12, seed, WeightRange{-20, 20}, 1 + seed % 4});
        const auto text = serialize(to_record(inst));
        const auto back = parse_instance(text);
        EXPECT_EQ(serialize(back), text);
        const auto rebuilt = back.build();
        ASSERT_EQ(intersection_matrix(rebuilt), intersection_matrix(inst));
        ASSERT_EQ(rebuilt.weights(), inst.weights());
        ASSERT_EQ(solve_mwis(build_index(rebuilt)).solution.weight, solve_mwis(build_index(inst)).solution.weight);
    }
}

TEST(Serialize, RoundTripMatrixAndEdgeWeights)
{
    const auto inst = test::as_matrix(gen_random_arcs(6, 4, {1, 9}));
    const auto edges = intersection_matrix(inst);
    EdgeWeights<std::int64_t> ew;
    for (std::size_t a = 0; a < inst.size(); ++a)
        for (std::size_t b = a + 1; b < inst.size(); ++b)
            if (edges(a, b))
                ew[{a, b}] = static_cast<std::int64_t>(10 * a + b);
    const auto back = parse_instance(serialize(to_record(inst, &ew)));
    ASSERT_TRUE(back.adjacency.has_value());
    EXPECT_EQ(intersection_matrix(back.build()), edges);
    EXPECT_EQ(back.edge_weight_map(), ew);
}

TEST(Serialize, FixtureIsCanonical)
{
    const auto text = fixture("mixed.jsonl");
    EXPECT_EQ(serialize(parse_instance(text)), text);
}
