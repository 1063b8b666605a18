#include "oracles.hpp"

#include "takagi/statemachine.hpp"

#include <gtest/gtest.h>

using namespace takagi;

namespace {

bool has_state(const StateGraph& g, long d, const Rational& r)
{
    for (const auto& n : g.nodes()) {
        if (n.state.slope == d && n.state.remainder == r) {
            return true;
        }
    }
    return false;
}

} // namespace

TEST(StateMachine, StepAndFeasibility)
{
    const PreimageState s{0, 0, Rational(1, 8)};
    EXPECT_EQ(step(s, 0).slope, 1);
    EXPECT_EQ(step(s, 0).remainder, Rational(1, 4));
    EXPECT_EQ(step(s, 1).slope, -1);
    EXPECT_EQ(step(s, 1).remainder, Rational(-3, 4));
    EXPECT_TRUE(feasible(0, Rational(2, 3)));
    EXPECT_FALSE(feasible(0, Rational(2, 3) + Rational(1, 1000)));
    EXPECT_FALSE(feasible(0, Rational(-1, 1000)));
    EXPECT_TRUE(feasible(-3, Rational(-3)));
}

// (D, T(t) + D t) is feasible for every t, and the step tracks the digits of t.
TEST(StateMachine, FeasibleAlongTrueOrbits)
{
    oracle::Gen gen(23);
    for (int i = 0; i < 200; ++i) {
        const Rational t = gen.unit_rational(90);
        const BinaryExpansion b = to_binary(t);
        PreimageState s{0, 0, eval_rational(t)};
        for (std::size_t j = 1; j <= 30; ++j) {
            ASSERT_TRUE(feasible(s));
            s = step(s, b.digit(j));
        }
        EXPECT_TRUE(feasible(s));
    }
}

TEST(StateMachine, Terminals)
{
    EXPECT_EQ(classify_state(2, Rational(0)), Terminal::zero_ray);
    EXPECT_EQ(classify_state(-2, Rational(-2)), Terminal::ones_ray);
    EXPECT_EQ(classify_state(0, Rational(2, 3)), Terminal::max_ray);
    EXPECT_EQ(classify_state(1, envelope_max(1)), Terminal::max_ray);
    // (D, D) for D >= 2 is not forced: t = 1 - 2^-D also solves T(t) + D t = D.
    EXPECT_EQ(classify_state(2, Rational(2)), Terminal::none);
    EXPECT_EQ(eval_rational(Rational(3, 4)) + 2 * Rational(3, 4), Rational(2));
}

TEST(StateMachine, GraphOfOneEighth)
{
    const StateGraph g = close_graph(Rational(1, 8));
    ASSERT_TRUE(g.closed());
    EXPECT_TRUE(has_state(g, 4, Rational(2)));
    EXPECT_TRUE(has_state(g, 5, Rational(4)));
    EXPECT_TRUE(has_state(g, -4, Rational(-2)));
    EXPECT_TRUE(has_state(g, -5, Rational(-1)));
    for (const auto& n : g.nodes()) {
        EXPECT_EQ(n.terminal, Terminal::none);
    }
    const GraphAnalysis a = analyze(g);
    EXPECT_EQ(a.verdict, Verdict::finite);
    EXPECT_EQ(a.count, 2u);
    EXPECT_EQ(reconstruct_preimages(g), (std::vector<Rational>{Rational(1, 48), Rational(47, 48)}));
}

TEST(StateMachine, GraphOfOneHalf)
{
    const StateGraph g = close_graph(Rational(1, 2));
    ASSERT_TRUE(g.closed());
    bool zero_ray = false;
    for (const auto& n : g.nodes()) {
        zero_ray = zero_ray || n.terminal == Terminal::zero_ray;
    }
    EXPECT_TRUE(zero_ray);
    EXPECT_TRUE(has_state(g, 1, Rational(1)));
    EXPECT_TRUE(has_state(g, 2, Rational(2)));
    EXPECT_EQ(analyze(g).verdict, Verdict::countably_infinite);
}

TEST(StateMachine, Verdicts)
{
    EXPECT_EQ(analyze(close_graph(Rational(2, 3))).verdict, Verdict::uncountable);
    EXPECT_EQ(analyze(close_graph(Rational(0))).verdict, Verdict::finite);
    EXPECT_EQ(reconstruct_preimages(close_graph(Rational(0))), (std::vector<Rational>{0, 1}));
    EXPECT_EQ(analyze(close_graph(Rational(9, 16))).verdict, Verdict::countably_infinite);
    const StateGraph empty = close_graph(Rational(3, 4));
    EXPECT_TRUE(empty.closed());
    EXPECT_TRUE(empty.empty());
}

// Finite verdicts: every lasso re-evaluates to y, no duplicates, increasing.
TEST(StateMachine, LassoSoundness)
{
    for (long j = 0; j <= 2 * 256; ++j) {
        const Rational y = oracle::frac(j, 3 * 256);
        const StateGraph g = close_graph(y);
        ASSERT_TRUE(g.closed()) << to_string(y);
        if (analyze(g).verdict != Verdict::finite) {
            continue;
        }
        const auto pre = reconstruct_preimages(g);
        ASSERT_FALSE(pre.empty());
        for (std::size_t i = 0; i < pre.size(); ++i) {
            EXPECT_EQ(eval_rational(pre[i]), y);
            if (i > 0) {
                EXPECT_LT(pre[i - 1], pre[i]);
            }
        }
    }
}

TEST(StateMachine, LeftmostPreimage)
{
    EXPECT_EQ(leftmost_preimage(Rational(1, 2)), Rational(1, 6));
    EXPECT_EQ(leftmost_preimage(Rational(1, 8)), Rational(1, 48));
    EXPECT_EQ(leftmost_preimage(Rational(2, 3)), Rational(1, 3));
}

TEST(StateMachine, BudgetLeavesGraphOpen)
{
    const StateGraph g = close_graph(Rational(1, 8), Budget{3, 64});
    EXPECT_FALSE(g.closed());
    EXPECT_THROW(analyze(g), not_closed);
}
