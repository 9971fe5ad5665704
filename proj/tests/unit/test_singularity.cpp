#include <gtest/gtest.h>

#include "fixtures.hpp"
#include "singcat/gorenstein.hpp"
#include "singcat/singularity.hpp"

using namespace singcat;

namespace {

class SingularityP : public ::testing::TestWithParam<Scalar> {
protected:
    void SetUp() override { linalg::set_prime(GetParam()); }
};

std::vector<Module> reps(const DsgEnumeration& e) {
    std::vector<Module> out;
    for (const auto& o : e.objects) out.push_back(o.rep);
    return out;
}

TEST_P(SingularityP, Ex313LambdaObjects) {
    for (int n : {2, 3, 4}) {
        auto a = test::ex313(n, false);
        DsgEnumeration e = dsg_indecomposables(a);
        ASSERT_EQ(e.status, Verdict::Yes);
        std::vector<Module> want;
        for (int k = 1; k <= n - 1; ++k) want.push_back(test::named(a, "P2/rad^" + std::to_string(2 * k)));
        EXPECT_TRUE(test::same_iso_classes(reps(e), want)) << "n=" << n;
    }
}

TEST_P(SingularityP, LayerSeedsAgreeOnLambda) {
    auto a = test::ex313(3, false);
    SeedOptions o;
    o.layers = true;
    EXPECT_TRUE(test::same_iso_classes(reps(dsg_indecomposables(a, o)), reps(dsg_indecomposables(a))));
}

// Over a selfinjective Nakayama algebra every nonprojective indecomposable
// is its own object: 2 * (2n - 1) of them.
TEST_P(SingularityP, Ex313QuotientCountFrozen) {
    SeedOptions o;
    o.layers = true;
    EXPECT_EQ(dsg_indecomposables(test::ex313(2, true), o).objects.size(), 6u);
    EXPECT_EQ(dsg_indecomposables(test::ex313(3, true), o).objects.size(), 10u);
}

TEST_P(SingularityP, Ex315GammaIsSemisimple) {
    auto g = test::ex315_gamma();
    SeedOptions o;
    o.layers = true;
    DsgEnumeration e = dsg_indecomposables(g, o);
    ASSERT_EQ(e.objects.size(), 4u);
    for (std::size_t i = 0; i < 4; ++i)
        for (std::size_t j = 0; j < 4; ++j) {
            DsgHom h = dsg_hom(e.objects[i], e.objects[j]);
            EXPECT_TRUE(h.answer.yes());
            EXPECT_EQ(h.dim, i == j ? 1u : 0u);
        }
    EXPECT_EQ(dsg_hom_dim(test::named(g, "2/1"), test::named(g, "2")), 0u);
    // the stable category still sees a map 2/1 -> 2
    EXPECT_EQ(stable_hom_dim(test::named(g, "2/1"), test::named(g, "2")), 1u);
}

TEST_P(SingularityP, DsgHomMatchesStableHomOnGorensteinAlgebra) {
    auto a = test::ex313(3, false);
    DsgEnumeration e = dsg_indecomposables(a);
    for (const auto& x : e.objects)
        for (const auto& y : e.objects) EXPECT_EQ(dsg_hom(x, y).dim, stable_hom_dim(x.rep, y.rep));
}

TEST_P(SingularityP, PerfectObjectsVanish) {
    auto a = test::ex313(3, false);
    DsgObject s1 = make_dsg_object(simple(a, 0));
    EXPECT_TRUE(s1.perfect());
    DsgObject m = make_dsg_object(test::named(a, "2/1"));
    EXPECT_EQ(dsg_hom(s1, m).dim, 0u);
    EXPECT_EQ(dsg_hom(m, s1).dim, 0u);
}

TEST_P(SingularityP, GorensteinAlgebraVerdicts) {
    auto l = is_gorenstein_algebra(test::ex313(3, false));
    ASSERT_TRUE(l.yes());
    EXPECT_EQ(l.witness["gorenstein_dimension"], 2);
    auto q = is_gorenstein_algebra(test::ex313(3, true));
    ASSERT_TRUE(q.yes());
    EXPECT_EQ(q.witness["gorenstein_dimension"], 0);
    EXPECT_TRUE(is_gorenstein_algebra(test::ex315_lambda()).no());
    EXPECT_TRUE(is_gorenstein_algebra(test::ex315_gamma()).no());
}

TEST_P(SingularityP, PerfectComplexes) {
    auto a = test::ex313(3, false);
    EXPECT_TRUE(is_perfect(stalk(simple(a, 0))).yes());
    EXPECT_TRUE(is_perfect(stalk(simple(a, 1))).no());
    auto q = test::ex313(3, true);
    EXPECT_TRUE(is_perfect(stalk(simple(q, 0))).no());
    EXPECT_TRUE(is_perfect(stalk(projective(q, 0))).yes());
    // S2 -> S2 by the identity is acyclic, hence perfect
    Module s2 = simple(a, 1);
    Complex c = make_complex(a, 0, {s2, s2}, {identity(s2)});
    EXPECT_TRUE(is_perfect(c).yes());
}

TEST_P(SingularityP, Ex315LambdaProjectiveDimensions) {
    auto l = test::ex315_lambda();
    auto s2 = pdim(simple(l, 1));
    ASSERT_TRUE(s2.yes());
    EXPECT_EQ(s2.witness["pdim"], 1);
    EXPECT_TRUE(pdim(simple(l, 0)).no());
    EXPECT_TRUE(pdim(simple(l, 2)).no());
}

INSTANTIATE_TEST_SUITE_P(Primes, SingularityP, ::testing::Values(2u, 3u));

}  // namespace
