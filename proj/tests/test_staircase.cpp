#include <gtest/gtest.h>

#include "support.hpp"

using namespace equising;

namespace {

WeightSpec W(std::initializer_list<const char*> a) {
    std::vector<Surd> v;
    for (auto s : a) v.push_back(parse_weight(s));
    return WeightSpec::make(std::move(v));
}

Surd q(long long p, long long d = 1) { return Surd(Rational(p, d)); }

}  // namespace

TEST(WeightSpec, Validation) {
    EXPECT_THROW(WeightSpec::make({}), NonPositiveWeight);
    EXPECT_THROW(WeightSpec::make({q(2), q(-1)}), NonPositiveWeight);
    EXPECT_THROW(WeightSpec::make({q(2)}, 0, Rational(0)), precondition_error);
    EXPECT_THROW(WeightSpec::make({q(2), q(2)}, 1), precondition_error);
    EXPECT_EQ(WeightSpec::make({q(2), q(2)}).n, 2u);
    EXPECT_EQ(WeightSpec::make({q(2)}, 3).n, 3u);
}

TEST(Staircase, ContainsAgreesWithProbe) {
    const auto w22 = W({"2", "2"});
    EXPECT_FALSE(contains({0, 0}, w22, 1));
    EXPECT_EQ(integrability_probe({0, 0}, w22).verdict, Integrability::Divergent);
    EXPECT_TRUE(contains({1, 0}, w22, 1));
    EXPECT_EQ(integrability_probe({1, 0}, w22).verdict, Integrability::Convergent);
    EXPECT_TRUE(contains({0, 0}, W({"1/2", "1/2"}), 1));
    EXPECT_THROW(contains({0}, w22, 1), precondition_error);
}

TEST(Staircase, NonmemberExamples) {
    using V = std::vector<Exponent>;
    EXPECT_EQ(nonmember_set(W({"2", "2"}), 1), (V{{0, 0}}));
    EXPECT_EQ(nonmember_set(W({"3", "3"}), 1), (V{{0, 0}, {0, 1}, {1, 0}}));
    EXPECT_TRUE(nonmember_set(W({"1/2", "1/2"}), 1).empty());
    // Oracle: decimal sweep of a slightly larger box.
    for (auto w : {W({"2", "2"}), W({"3", "3"}), W({"1/2", "1/2"})})
        EXPECT_EQ(nonmember_set(w, 1), oracles::brute_nonmembers(w, 1));
}

TEST(Staircase, GeneratorExamples) {
    using V = std::vector<Exponent>;
    EXPECT_EQ(generators(W({"2", "2"}), 1), (V{{0, 1}, {1, 0}}));
    EXPECT_EQ(generators(W({"4", "4"}), 1), (V{{0, 3}, {1, 2}, {2, 1}, {3, 0}}));
    EXPECT_EQ(generators(W({"1/2", "1/2"}), 1), (V{{0, 0}}));
    const Staircase s = nonmembers(W({"2", "2"}), 1);
    EXPECT_EQ(s.scale, q(1));
    EXPECT_EQ(s.generators, (V{{0, 1}, {1, 0}}));
}

TEST(Staircase, IdealEqualExamples) {
    const auto w = W({"2*sqrt(2)", "2*sqrt(2)"});
    EXPECT_TRUE(ideal_equal(w, 1, q(3, 4)));
    EXPECT_EQ(nonmember_set(w, q(3, 4)), (std::vector<Exponent>{{0, 0}}));
    EXPECT_FALSE(ideal_equal(W({"2", "2"}), 1, q(1, 2)));
    EXPECT_TRUE(ideal_equal(W({"3", "5/2"}), q(2, 3), q(2, 3)));
}

TEST(Staircase, Epsilon0Examples) {
    const auto eps = epsilon0(W({"2*sqrt(2)", "2*sqrt(2)"}));
    ASSERT_TRUE(eps);
    EXPECT_EQ(*eps, q(1) - Surd::sqrt(2, Rational(1, 2)));
    EXPECT_FALSE(epsilon0(W({"2", "2"})));
    EXPECT_EQ(epsilon0(W({"sqrt(2)", "sqrt(2)"})), std::optional<Surd>(q(1)));

    const Margin m = margin(W({"2", "2"}));
    ASSERT_TRUE(m.boundary);
    EXPECT_EQ(*m.boundary, (Exponent{0, 0}));
}

TEST(Staircase, LctExamples) {
    const auto w22 = W({"2", "2"});
    EXPECT_EQ(lct(w22), q(1));
    EXPECT_EQ(lct(W({"1", "1", "1"})), q(3));
    const auto w = W({"2*sqrt(2)", "2*sqrt(2)"});
    const Surd l = lct(w);
    EXPECT_EQ(l, Surd::sqrt(2, Rational(1, 2)));
    // The constant flips from member to non-member exactly at t = lct.
    for (const auto& weight : {w22, w}) {
        const Surd t0 = lct(weight);
        EXPECT_FALSE(contains({0, 0}, weight, t0));
        EXPECT_TRUE(contains({0, 0}, weight, t0 - q(1, 1000)));
        EXPECT_FALSE(contains({0, 0}, weight, t0 + q(1, 1000)));
    }
    EXPECT_EQ(integrability_probe({0, 0}, w).verdict, Integrability::Divergent);
}

TEST(Staircase, BoxCap) {
    Limits lim;
    lim.max_box = 100;
    EXPECT_THROW(nonmember_set(W({"20", "20"}), 1, lim), BoxTooLarge);
    EXPECT_NO_THROW(nonmember_set(W({"10", "10"}), 1, lim));
}

TEST(Staircase, TrailingCoordinatesIgnored) {
    auto w = WeightSpec::make({q(3), q(3)}, 4);
    EXPECT_EQ(nonmember_set(w, 1), nonmember_set(W({"3", "3"}), 1));
}

// ---------------------------------------------------------------------------
// Properties

TEST(StaircaseProperty, UpwardClosureAndScaling) {
    std::mt19937_64 rng(21);
    std::uniform_int_distribution<int> e(0, 4);
    for (int trial = 0; trial < 200; ++trial) {
        const auto w = oracles::random_weight(rng);
        const Surd t = oracles::random_exponent(rng, 2);
        Exponent alpha(std::vector<std::int64_t>(w.m())), beta = alpha;
        for (std::size_t i = 0; i < w.m(); ++i) {
            alpha.powers[i] = e(rng);
            beta.powers[i] = alpha[i] + e(rng);
        }
        if (contains(alpha, w, t)) ASSERT_TRUE(contains(beta, w, t));

        WeightSpec scaled = w;
        for (auto& ai : scaled.a) ai = ai * t;
        ASSERT_EQ(contains(alpha, w, t), contains(alpha, scaled, 1));
    }
}

TEST(StaircaseProperty, NonmembersMatchBruteForceAndBound) {
    std::mt19937_64 rng(22);
    for (int trial = 0; trial < 100; ++trial) {
        const auto w = oracles::random_weight(rng);
        const Surd t = oracles::random_exponent(rng, 2);
        const auto set = nonmember_set(w, t);
        ASSERT_EQ(set, oracles::brute_nonmembers(w, t));
        for (const auto& alpha : set)
            for (std::size_t i = 0; i < w.m(); ++i)
                ASSERT_LE(compare(Surd(Rational(alpha[i] + 1)), t * w.a[i]), 0);
    }
}

TEST(StaircaseProperty, GeneratorDuality) {
    std::mt19937_64 rng(23);
    for (int trial = 0; trial < 100; ++trial) {
        const auto w = oracles::random_weight(rng);
        const auto st = nonmembers(w, 1);
        for (std::size_t i = 0; i < st.generators.size(); ++i)
            for (std::size_t j = 0; j < st.generators.size(); ++j)
                if (i != j) ASSERT_FALSE(st.generators[i].dominates(st.generators[j]));
        // Box one step beyond every non-member.
        std::vector<std::int64_t> box(w.m(), 1);
        for (const auto& nu : st.nonmembers)
            for (std::size_t i = 0; i < w.m(); ++i) box[i] = std::max(box[i], nu[i] + 2);
        Exponent alpha(std::vector<std::int64_t>(w.m(), 0));
        for (;;) {
            const bool member = contains(alpha, w, 1);
            const bool dominated = std::any_of(st.generators.begin(), st.generators.end(),
                                               [&](const Exponent& g) { return alpha.dominates(g); });
            ASSERT_EQ(member, dominated);
            std::size_t i = 0;
            while (i < w.m() && ++alpha.powers[i] > box[i]) alpha.powers[i++] = 0;
            if (i == w.m()) break;
        }
    }
}

TEST(StaircaseProperty, MarginIsSharp) {
    std::mt19937_64 rng(24);
    int checked = 0;
    for (int trial = 0; trial < 200 && checked < 60; ++trial) {
        const auto w = oracles::random_weight(rng);
        const Margin mg = margin(w);
        if (!mg.epsilon0) {
            ASSERT_TRUE(mg.boundary);
            continue;
        }
        ASSERT_GT(sign(*mg.epsilon0), 0);
        if (!mg.top) continue;
        ++checked;
        const Surd eps0 = *mg.epsilon0;
        ASSERT_TRUE(ideal_equal(w, 1, q(1) - eps0));
        ASSERT_TRUE(ideal_equal(w, 1, q(1) - eps0 * q(1, 2)));
        const Surd next = mg.next_below.value_or(Surd{});
        const Surd delta = (*mg.top - next) * q(1, 2);
        ASSERT_FALSE(ideal_equal(w, 1, q(1) - eps0 - delta));
    }
    EXPECT_GT(checked, 20);
}
