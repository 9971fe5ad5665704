#include <gtest/gtest.h>

#include "fixtures.hpp"
#include "oracles.hpp"
#include "singcat/singularity.hpp"

using namespace singcat;

namespace {

class GorensteinP : public ::testing::TestWithParam<Scalar> {
protected:
    void SetUp() override { linalg::set_prime(GetParam()); }
};

std::vector<Module> layers(const AlgebraPtr& a) {
    SeedOptions o;
    o.layers = true;
    return seed_modules(a, o);
}

TEST_P(GorensteinP, Ex315GammaMembership) {
    auto g = test::ex315_gamma();
    for (const char* yes : {"2", "1/3"}) EXPECT_TRUE(is_gorenstein_projective(test::named(g, yes)).answer.yes()) << yes;
    for (const char* no : {"1", "3", "2/1"}) EXPECT_TRUE(is_gorenstein_projective(test::named(g, no)).answer.no()) << no;
    for (int v = 0; v < 3; ++v) EXPECT_TRUE(is_gorenstein_projective(projective(g, v)).answer.yes());
}

TEST_P(GorensteinP, Ex315LambdaHasNoNonProjectiveMembers) {
    auto l = test::ex315_lambda();
    for (const auto& m : layers(l)) {
        if (is_projective(m)) continue;
        EXPECT_TRUE(is_gorenstein_projective(m).answer.no()) << dims_string(m);
    }
}

TEST_P(GorensteinP, CompleteResolutionCertificate) {
    auto a = test::ex313(3, false);
    for (const char* lit : {"2/1", "2/1/2/1"}) {
        Module m = test::named(a, lit);
        GprojResult r = is_gorenstein_projective(m);
        ASSERT_TRUE(r.answer.yes()) << lit;
        ASSERT_TRUE(r.resolution.has_value());
        const auto& cr = *r.resolution;
        EXPECT_TRUE(cr.complex.check_tails());
        EXPECT_TRUE(is_totally_acyclic(cr.complex).yes());
        EXPECT_TRUE(is_injective_map(cr.b0_iso));
        EXPECT_EQ(cr.b0_iso.tgt.total(), m.total());
        Complex u = cr.complex.unroll(1, 1);
        EXPECT_TRUE(all_projective(u));
        for (int i = u.lo + 1; i < u.hi(); ++i) EXPECT_EQ(homology(u, i).total(), 0u);
    }
}

TEST_P(GorensteinP, TruncatedResolutionIsNotTotallyAcyclic) {
    auto a = test::ex313(3, false);
    Resolution r = min_proj_resolution(simple(a, 0));
    TailedComplex t{r.complex(3)};
    EXPECT_FALSE(is_totally_acyclic(t).yes());
}

TEST_P(GorensteinP, LeftApproximationByProjectives) {
    for (const auto& a : {test::ex313(3, false), test::ex315_gamma()})
        for (const auto& m : layers(a)) {
            LeftApprox la = left_add_lambda_approximation(m);
            for (int v = 0; v < a->num_vertices(); ++v)
                for (const auto& f : hom_basis(m, projective(a, v)))
                    EXPECT_TRUE(factor_through_left(f, la.map).has_value()) << dims_string(m);
        }
}

TEST_P(GorensteinP, StableHomKillsProjectives) {
    auto a = test::ex313(2, false);
    for (const auto& m : layers(a))
        for (int v = 0; v < 2; ++v) {
            EXPECT_EQ(stable_hom_dim(projective(a, v), m), 0u);
            EXPECT_EQ(stable_hom_dim(m, projective(a, v)) <= hom_dim(m, projective(a, v)), true);
        }
    // injective over a selfinjective algebra is projective too
    auto q = test::ex313(2, true);
    for (const auto& m : layers(q)) EXPECT_EQ(stable_hom_dim(m, injective(q, 0)), 0u);
}

TEST_P(GorensteinP, StableHomBasisIsIndependentModuloProjectiveMaps) {
    auto g = test::ex315_gamma();
    for (const auto& m : layers(g))
        for (const auto& n : layers(g)) {
            StableHom s = stable_hom(m, n);
            EXPECT_EQ(s.dim(), s.hom_dim - s.phom_dim);
            Matrix ph = phom_vectors(m, n);
            Matrix all = ph;
            for (const auto& f : s.basis) all = Matrix::hstack(all, Matrix::column_vector(flatten(f)));
            EXPECT_EQ(linalg::rank(all), s.phom_dim + s.dim());
        }
}

TEST(GorensteinOracle, StableHomMatchesEnumerationF2) {
    linalg::set_prime(2);
    std::size_t checked = 0;
    for (const auto& a : {test::ex313(2, false), test::ex313(2, true), test::ex315_lambda(), test::ex315_gamma()}) {
        auto pool = layers(a);
        for (const auto& m : pool)
            for (const auto& n : pool) {
                if (m.total() > 8 || n.total() > 8) continue;
                auto b = oracle::brute_stable_hom_dim_f2(m, n);
                if (!b) continue;
                EXPECT_EQ(stable_hom_dim(m, n), *b) << dims_string(m) << " -> " << dims_string(n);
                ++checked;
            }
    }
    EXPECT_GT(checked, 100u);
}

INSTANTIATE_TEST_SUITE_P(Primes, GorensteinP, ::testing::Values(2u, 3u));

}  // namespace
