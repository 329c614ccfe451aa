#include "ifg/generators.hpp"
#include "ifg/mwis.hpp"
#include "ifg/oracle.hpp"
#include "support.hpp"

#include <gtest/gtest.h>

#include <limits>

using namespace ifg;
using test::arcs;

namespace {

template <class W>
MwisResult<W> solve(const Instance<W>& inst, EvaluationOrder order = EvaluationOrder::bottom_up)
{
    SolveOptions opts;
    opts.order = order;
    return solve_mwis(build_index(inst), opts);
}

Instance<std::int64_t> random_instance(std::uint64_t seed, std::size_t max_n, WeightRange w)
{
    SplitMix64 rng(seed);
    const std::size_t n = rng.below(max_n + 1);
    if (seed % 3 == 2)
        return gen_random_polylines(n, seed, 1 + seed % 4, w);
    return gen_random_arcs(n, seed, w);
}

} // namespace

TEST(SolveMwis, Empty)
{
    const auto r = solve(Instance<>{});
    EXPECT_EQ(r.solution.weight, 0);
    EXPECT_TRUE(r.solution.members.empty());
    EXPECT_TRUE(r.certified);
}

TEST(SolveMwis, SingleFilament)
{
    const auto r = solve(arcs({{0, 1}}, {5}));
    EXPECT_EQ(r.solution.weight, 5);
    EXPECT_EQ(r.solution.members, (std::vector<std::size_t>{0}));
    EXPECT_EQ(r.table.choice(0, 1), Choice::include);
}

TEST(SolveMwis, IntersectingPairPicksHeavier)
{
    const auto r = solve(arcs({{0, 2}, {1, 3}}, {3, 4}));
    EXPECT_EQ(r.solution.weight, 4);
    EXPECT_EQ(r.solution.members, (std::vector<std::size_t>{1}));
}

TEST(SolveMwis, NestedAndDisjointCombine)
{
    // (0, 10) holds (1, 3) and (4, 6) strictly inside; (2, 5) crosses both.
    const auto inst = arcs({{0, 10}, {1, 3}, {4, 6}, {2, 5}, {11, 12}}, {4, 3, 3, 5, 1});
    const auto r = solve(inst);
    EXPECT_EQ(r.solution.weight, 11);
    EXPECT_EQ(r.solution.members, (std::vector<std::size_t>{0, 1, 2, 4}));
}

TEST(SolveMwis, WorstcaseSevenPerSide)
{
    const auto inst = gen_worstcase(7);
    EXPECT_EQ(brute_mwis(inst).weight, 2);
    EXPECT_EQ(solve(inst).solution.weight, 2);
}

TEST(SolveMwis, NegativeWeightsAreNeverChosen)
{
    const auto r = solve(arcs({{0, 1}, {2, 3}, {4, 5}}, {-1, 2, -7}));
    EXPECT_EQ(r.solution.weight, 2);
    EXPECT_EQ(r.solution.members, (std::vector<std::size_t>{1}));
}

TEST(SolveMwis, ZeroWeightTieExcludes)
{
    const auto r = solve(arcs({{0, 1}, {2, 3}}, {0, 0}));
    EXPECT_EQ(r.solution.weight, 0);
    EXPECT_TRUE(r.solution.members.empty());
}

TEST(SolveMwis, MatchesOracleOnRandomInstances)
{
    for (std::uint64_t seed = 0; seed < 200; ++seed)
    {
        const auto inst = random_instance(seed, 12, {-10, 100});
        const auto r = solve(inst);
        ASSERT_EQ(r.solution.weight, brute_mwis(inst).weight) << "seed " << seed;
        ASSERT_TRUE(r.certified) << "seed " << seed;
    }
}

TEST(SolveMwis, MemoizedAgreesWithBottomUp)
{
    for (std::uint64_t seed = 0; seed < 60; ++seed)
    {
        const auto inst = random_instance(seed, 14, {-5, 30});
        const auto full = solve(inst);
        const auto lazy = solve(inst, EvaluationOrder::memoized);
        ASSERT_EQ(full.solution.weight, lazy.solution.weight);
        ASSERT_EQ(full.solution.members, lazy.solution.members);
        ASSERT_LE(state_count(lazy.table), state_count(full.table));
    }
}

TEST(SolveMwis, MatrixSourceMatchesGeometry)
{
    for (std::uint64_t seed = 0; seed < 40; ++seed)
    {
        const auto inst = random_instance(seed, 12, {1, 20});
        const auto frozen = test::as_matrix(inst);
        ASSERT_TRUE(check_axioms(frozen).empty());
        const auto a = solve(inst);
        const auto b = solve(frozen);
        ASSERT_EQ(a.solution.weight, b.solution.weight);
        ASSERT_EQ(a.solution.members, b.solution.members);
    }
}

TEST(Reconstruct, RebuildsSolutionFromTable)
{
    const auto idx = build_index(gen_random_arcs(12, 11, {1, 9}));
    const auto r = solve_mwis(idx);
    const auto again = reconstruct(idx, r.table);
    EXPECT_EQ(again.weight, r.table.value(0, 1));
    EXPECT_EQ(again.members, r.solution.members);
    EXPECT_TRUE(verify_independent_set(idx.source(), again));
}

TEST(Reconstruct, RejectsForeignTable)
{
    const auto idx = build_index(arcs({{0, 1}}));
    EXPECT_THROW(reconstruct(idx, DPTable<std::int64_t>(5)), std::invalid_argument);
}

TEST(StateCount, Examples)
{
    EXPECT_EQ(state_count(solve(Instance<>{}).table), 1u);
    const auto one = solve(arcs({{0, 1}}));
    EXPECT_EQ(state_count(one.table), 3u);
    for (auto [l, c] : {std::pair{0, 1}, {0, 2}, {1, 2}})
        EXPECT_TRUE(one.table.evaluated(l, c));
}

TEST(StateCount, BottomUpFillsTriangle)
{
    for (std::size_t n : {0u, 1u, 5u, 33u})
    {
        const std::uint64_t m = n + 1;
        EXPECT_EQ(state_count(solve(gen_random_arcs(n, n, {1, 1})).table), m * (m + 1) / 2);
    }
}

TEST(StateCount, QuadraticOnWorstCase)
{
    const auto small = state_count(solve(gen_worstcase(50)).table);
    const auto large = state_count(solve(gen_worstcase(100)).table);
    const double ratio = static_cast<double>(large) / static_cast<double>(small);
    EXPECT_GE(ratio, 3.5);
    EXPECT_LE(ratio, 4.5);
}

TEST(DPTable, ColumnMonotone)
{
    for (std::uint64_t seed = 0; seed < 30; ++seed)
    {
        const auto r = solve(random_instance(seed, 14, {-10, 100}));
        const std::size_t m = r.table.size();
        for (std::size_t c = 1; c < m; ++c)
            for (std::size_t l = 0; l < c; ++l)
                ASSERT_GE(r.table.value(l, c), r.table.value(l, c + 1));
        for (std::size_t l = 0; l < m; ++l)
            ASSERT_EQ(r.table.value(l, m), 0);
    }
}

TEST(Properties, AppendingNegativeWeightKeepsOptimum)
{
    for (std::uint64_t seed = 0; seed < 40; ++seed)
    {
        const auto inst = random_instance(seed, 12, {-10, 100});
        SplitMix64 rng(seed);
        auto fs = inst.filaments();
        auto ws = inst.weights();
        const auto l = rng.between(0, 30);
        fs.push_back(test::arc(l, l + rng.between(0, 10)));
        ws.push_back(-rng.between(1, 50));
        ASSERT_EQ(solve(Instance<>(fs, ws)).solution.weight, solve(inst).solution.weight);
    }
}

TEST(Properties, ScalingWeights)
{
    for (std::uint64_t seed = 0; seed < 40; ++seed)
    {
        const auto inst = random_instance(seed, 12, {-10, 100});
        const std::int64_t k = 1 + static_cast<std::int64_t>(seed % 7);
        auto ws = inst.weights();
        for (auto& w : ws)
            w *= k;
        const auto base = solve(inst);
        const auto scaled = solve(Instance<>(inst.filaments(), ws));
        ASSERT_EQ(scaled.solution.weight, k * base.solution.weight);
        std::int64_t old_members = 0;
        for (auto i : base.solution.members)
            old_members += ws[i];
        ASSERT_EQ(old_members, scaled.solution.weight);
    }
}

TEST(Properties, DeletionNeverIncreasesOptimum)
{
    for (std::uint64_t seed = 0; seed < 25; ++seed)
    {
        const auto inst = random_instance(seed, 10, {-10, 100});
        const auto full = solve(inst).solution.weight;
        for (std::size_t drop = 0; drop < inst.size(); ++drop)
        {
            auto fs = inst.filaments();
            auto ws = inst.weights();
            fs.erase(fs.begin() + static_cast<std::ptrdiff_t>(drop));
            ws.erase(ws.begin() + static_cast<std::ptrdiff_t>(drop));
            ASSERT_LE(solve(Instance<>(fs, ws)).solution.weight, full);
        }
    }
}

TEST(Errors, MemoryBudgetCheckedBeforeAllocation)
{
    SolveOptions opts;
    opts.memory_budget = 1000;
    const auto idx = build_index(gen_worstcase(50));
    try
    {
        (void)solve_mwis(idx, opts);
        FAIL() << "expected memory_budget_exceeded";
    }
    catch (const memory_budget_exceeded& e)
    {
        EXPECT_EQ(e.states(), 101u * 102u / 2u);
        EXPECT_EQ(e.required(), e.states() * (sizeof(std::int64_t) + 1));
        EXPECT_EQ(e.budget(), 1000u);
    }
}

TEST(Errors, IntegerOverflowIsReported)
{
    const auto big = std::numeric_limits<std::int64_t>::max() / 2 + 1;
    EXPECT_THROW(solve(arcs({{0, 1}, {2, 3}}, {big, big})), weight_overflow);
    EXPECT_EQ(solve(arcs({{0, 1}, {2, 3}}, {big, big - 2})).solution.weight,
              std::numeric_limits<std::int64_t>::max() - 1);
}

TEST(FloatingWeights, SolvesApproximately)
{
    std::vector<Filament> fs{test::arc(0, 2), test::arc(1, 3), test::arc(4, 5)};
    const Instance<double> inst(fs, {0.5, 0.75, 1.25});
    const auto r = solve(inst);
    EXPECT_DOUBLE_EQ(r.solution.weight, 2.0);
    EXPECT_EQ(r.solution.members, (std::vector<std::size_t>{1, 2}));
}

TEST(Certificate, DetectsViolatingMatrix)
{
    // Breaks P3: the DP may then return an intersecting pair.
    const auto inst = test::abstract({{0, 10}, {1, 9}, {2, 3}}, {{1, 0, 1}, {0, 1, 0}, {1, 0, 1}});
    const auto r = solve(inst);
    EXPECT_EQ(r.certified, verify_independent_set(inst, r.solution));
    EXPECT_FALSE(r.certified);
}
