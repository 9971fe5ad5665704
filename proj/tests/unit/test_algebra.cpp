#include <gtest/gtest.h>

#include "fixtures.hpp"
#include "oracles.hpp"

using namespace singcat;

namespace {

class AlgebraP : public ::testing::TestWithParam<Scalar> {
protected:
    void SetUp() override { linalg::set_prime(GetParam()); }
};

Word repeat(const Word& w, int n) {
    Word out;
    for (int i = 0; i < n; ++i) out.insert(out.end(), w.begin(), w.end());
    return out;
}

void expect_matches_oracle(const AlgebraPtr& a, const std::vector<Word>& zero_words) {
    auto want = oracle::monomial_basis(a->quiver(), zero_words, 40);
    std::map<std::pair<int, int>, std::size_t> got;
    for (const auto& b : a->basis()) ++got[{b.source, b.target}];
    EXPECT_EQ(got, want);
}

TEST_P(AlgebraP, Ex313BasisMatchesPathEnumeration) {
    for (int n : {2, 3, 4}) {
        expect_matches_oracle(test::ex313(n, false), {repeat({0, 1}, n)});
        expect_matches_oracle(test::ex313(n, true), {repeat({0, 1}, n), repeat({1, 0}, n)});
    }
}

TEST_P(AlgebraP, Ex315BasisMatchesPathEnumeration) {
    expect_matches_oracle(test::ex315_lambda(), {{2, 1}, {1, 0, 2}});
    expect_matches_oracle(test::ex315_gamma(), {{2, 1}, {1, 0, 2}, {0, 3}, {3, 0}});
}

// Frozen from the enumeration oracle above.
TEST_P(AlgebraP, DimensionsFrozen) {
    EXPECT_EQ(test::ex313(2, false)->dim(), 9u);
    EXPECT_EQ(test::ex313(3, false)->dim(), 13u);
    EXPECT_EQ(test::ex313(2, true)->dim(), 8u);
    EXPECT_EQ(test::ex313(3, true)->dim(), 12u);
    EXPECT_EQ(test::ex315_lambda()->dim(), 8u);
    EXPECT_EQ(test::ex315_gamma()->dim(), 9u);
}

TEST_P(AlgebraP, AssociativeUnitalAndLoewy) {
    for (const auto& a : {test::ex313(2, false), test::ex313(3, true), test::ex315_lambda(), test::ex315_gamma()}) {
        EXPECT_TRUE(a->check_associative());
        EXPECT_TRUE(a->check_unital());
        int longest = 0;
        for (const auto& b : a->basis()) longest = std::max(longest, b.length);
        EXPECT_EQ(a->loewy_length(), longest + 1);
    }
}

TEST_P(AlgebraP, PathProductsFollowComposition) {
    auto a = test::ex313(2, false);
    // a o b is a path 2 -> 1 -> 2; b o a goes 1 -> 2 -> 1
    Element ab = a->multiply(a->arrow_element(0), a->arrow_element(1));
    EXPECT_EQ(ab, a->path_element({0, 1}));
    Element aa = a->multiply(a->arrow_element(0), a->arrow_element(0));
    EXPECT_EQ(aa, a->zero());
    EXPECT_EQ(a->path_element({0, 1, 0, 1}), a->zero());
    EXPECT_NE(a->path_element({1, 0, 1, 0}), a->zero());
    EXPECT_EQ(a->multiply(a->unit(), ab), ab);
}

TEST_P(AlgebraP, OppositeAndEnvelope) {
    auto l = test::ex315_lambda();
    auto op = opposite(l);
    EXPECT_EQ(op->dim(), l->dim());
    EXPECT_TRUE(op->check_associative());
    EXPECT_TRUE(same_algebra(opposite(op), l));
    auto g = test::ex313(2, true);
    auto env = envelope(g, g);
    EXPECT_EQ(env->dim(), g->dim() * g->dim());
    EXPECT_EQ(env->num_vertices(), 4);
    EXPECT_TRUE(env->check_unital());
}

TEST_P(AlgebraP, NonMonomialRelationsReduce) {
    Quiver q;
    q.vertices = {"1", "2"};
    q.arrows = {{"a", 0, 1}, {"b", 0, 1}, {"c", 1, 0}};
    // a c = b c and all length-three paths vanish via the bound
    Relation r{{Term{1, {0, 2}}, Term{linalg::neg(1), {1, 2}}}};
    std::vector<Relation> rels{r, Relation{{Term{1, {2, 0}}}}, Relation{{Term{1, {2, 1}}}}};
    auto a = build_algebra(q, rels, 30);
    EXPECT_EQ(a->path_element({0, 2}), a->path_element({1, 2}));
    EXPECT_TRUE(a->check_associative());
    // e1, e2, a, b, c, ac
    EXPECT_EQ(a->dim(), 6u);
}

TEST(AlgebraErrors, NotAdmissible) {
    linalg::set_prime(2);
    Quiver q;
    q.vertices = {"1"};
    q.arrows = {{"x", 0, 0}};
    try {
        build_algebra(q, {}, 8);
        FAIL() << "expected an error";
    } catch (const AlgebraError& e) {
        EXPECT_EQ(e.kind, AlgebraError::Kind::NotAdmissibleAtBound);
    }
}

TEST(AlgebraErrors, MalformedRelationIndex) {
    linalg::set_prime(2);
    Quiver q;
    q.vertices = {"1", "2"};
    q.arrows = {{"a", 0, 1}, {"b", 1, 0}};
    // second relation mixes a path 2 -> 2 with one 1 -> 1
    std::vector<Relation> rels{Relation{{Term{1, {0, 1, 0, 1}}}}, Relation{{Term{1, {0, 1}}, Term{1, {1, 0}}}}};
    try {
        build_algebra(q, rels, 30);
        FAIL() << "expected an error";
    } catch (const AlgebraError& e) {
        EXPECT_EQ(e.kind, AlgebraError::Kind::MalformedRelation);
        EXPECT_EQ(e.relation, 1);
    }
}

TEST(AlgebraErrors, NotComposable) {
    linalg::set_prime(3);
    Quiver q;
    q.vertices = {"1", "2"};
    q.arrows = {{"a", 0, 1}, {"b", 1, 0}};
    EXPECT_FALSE(word_composable(q, {0, 0}));
    EXPECT_TRUE(word_composable(q, {0, 1}));
    EXPECT_THROW(build_algebra(q, {Relation{{Term{1, {0, 0}}}}}, 30), AlgebraError);
}

TEST(AlgebraFingerprint, StableAcrossBuilds) {
    linalg::set_prime(2);
    EXPECT_EQ(test::ex313(3, false)->fingerprint(), test::ex313(3, false)->fingerprint());
    EXPECT_NE(test::ex313(3, false)->fingerprint(), test::ex313(3, true)->fingerprint());
}

INSTANTIATE_TEST_SUITE_P(Primes, AlgebraP, ::testing::Values(2u, 3u));

}  // namespace
