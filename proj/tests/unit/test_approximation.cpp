#include <gtest/gtest.h>

#include "fixtures.hpp"
#include "singcat/approximation.hpp"
#include "singcat/random.hpp"

using namespace singcat;

namespace {

class ApproxP : public ::testing::TestWithParam<Scalar> {
protected:
    void SetUp() override { linalg::set_prime(GetParam()); }
};

Matrix shift_matrix(std::size_t n) {
    Matrix m(n, n);
    for (std::size_t i = 0; i + 1 < n; ++i) m(i + 1, i) = 1;
    return m;
}

TEST(DualML, HandBuiltChains) {
    linalg::set_prime(2);
    Matrix id2 = Matrix::identity(2);
    EXPECT_TRUE(dual_ml_check({id2, id2, id2}).stabilizes);
    EXPECT_EQ(dual_ml_check({id2, id2, id2}).index, 0);

    // from 0 the kernels grow 1, 2, 3 and fill the space; later starts run out first
    auto nil = dual_ml_check({shift_matrix(3), shift_matrix(3), shift_matrix(3)});
    EXPECT_EQ(nil.per_start, (std::vector<int>{3, -1, -1}));
    EXPECT_FALSE(nil.stabilizes);

    // a kernel that is still growing at the last map
    Matrix r1(2, 2);
    r1(0, 0) = 1;
    auto grow = dual_ml_check({id2, id2, r1});
    EXPECT_FALSE(grow.stabilizes);
    EXPECT_EQ(grow.per_start[0], -1);

    auto bad = dual_ml_check({Matrix(3, 2), Matrix(2, 2)});
    EXPECT_FALSE(bad.composable);
}

TEST_P(ApproxP, RightApproximationsAndMinimization) {
    Rng rng(4);
    auto a = test::ex313(3, false);
    std::vector<Module> g{projective(a, 0), projective(a, 1), test::named(a, "2/1")};
    for (int t = 0; t < 6; ++t) {
        Module m = random_module(a, rng, 6);
        RightApprox full = right_add_approximation(m, g);
        EXPECT_TRUE(is_right_approximation(full.map, g));
        RightApprox min = minimize_right_approximation(full, m, g);
        EXPECT_TRUE(is_right_approximation(min.map, g));
        EXPECT_LE(min.source.total(), full.source.total());
    }
}

TEST_P(ApproxP, SplittingOfSplitEpis) {
    auto a = test::ex315_gamma();
    Module p = projective(a, 1), s = simple(a, 0);
    Module sum = direct_sum(p, s);
    auto proj = sum_projections({p, s}, sum);
    auto sp = splitting(proj[1]);
    ASSERT_TRUE(sp.has_value());
    EXPECT_TRUE(equal_maps(compose(proj[1], *sp), identity(s)));
    EXPECT_FALSE(splitting(projective_cover(s).map).has_value());
}

TEST_P(ApproxP, GprojEnumeration) {
    GprojList g = enumerate_gproj(test::ex315_gamma());
    EXPECT_EQ(g.num_projective, 3u);
    std::vector<Module> nonproj(g.modules.begin() + static_cast<long>(g.num_projective), g.modules.end());
    auto gam = test::ex315_gamma();
    EXPECT_TRUE(test::same_iso_classes(nonproj, {test::named(gam, "2"), test::named(gam, "1/3")}));
    for (const auto& c : g.certificates) EXPECT_TRUE(c.yes());
    EXPECT_EQ(enumerate_gproj(test::ex315_lambda()).modules.size(), 3u);
}

TEST_P(ApproxP, GprojApproximationOfSimples) {
    for (int n : {2, 3}) {
        auto a = test::ex313(n, false);
        GpApprox s1 = gp_approximation(simple(a, 0));
        ASSERT_TRUE(s1.answer.yes());
        EXPECT_TRUE(s1.paths_agree);
        EXPECT_TRUE(test::iso(s1.fast.source, projective(a, 0)));
        GpApprox s2 = gp_approximation(simple(a, 1));
        ASSERT_TRUE(s2.answer.yes());
        EXPECT_TRUE(s2.paths_agree);
        EXPECT_TRUE(test::iso(s2.fast.source, test::named(a, "2/1")));
        EXPECT_TRUE(is_surjective_map(s2.fast.map));
    }
}

TEST_P(ApproxP, ApproximationOfGprojIsIdentity) {
    auto g = test::ex315_gamma();
    for (const char* lit : {"2", "1/3"}) {
        Module m = test::named(g, lit);
        GpApprox r = gp_approximation(m);
        ASSERT_TRUE(r.answer.yes());
        EXPECT_TRUE(test::iso(r.fast.source, m));
        EXPECT_TRUE(is_iso_map(r.fast.map));
    }
}

TEST_P(ApproxP, GeneratorSets) {
    auto a = test::ex313(2, false);
    EXPECT_EQ(regular_generators(a).size(), 2u);
    auto d = rho_dual_generators(a);
    EXPECT_EQ(d.size(), 2u);
    for (const auto& c : d) EXPECT_TRUE(all_projective(c));
}

TEST_P(ApproxP, TowerOverEx313) {
    auto a = test::ex313(2, false);
    Module s1 = simple(a, 0);
    Complex t = projective_resolution_complex(s1);
    Tower reg = dual_bousfield_tower(t, regular_generators(a));
    EXPECT_TRUE(reg.ledger_zero());
    EXPECT_FALSE(reg.ledger.empty());
    for (const auto& ch : reg.chains) EXPECT_TRUE(dual_ml_check(ch.maps).stabilizes);
    for (std::size_t j = 0; j + 1 < reg.stages.size(); ++j) {
        EXPECT_TRUE(is_chain_map(reg.stages[j].approx_map));
        EXPECT_TRUE(is_chain_map(reg.stages[j].transition));
    }

    auto gens = regular_generators(a);
    for (auto& x : rho_dual_generators(a)) gens.push_back(x);
    Tower both = dual_bousfield_tower(t, gens);
    EXPECT_TRUE(both.ledger_zero());
    GpApprox g = gp_approximation(s1);
    ResidualApprox r = residual_approximation(both, s1, g.gproj.modules);
    EXPECT_TRUE(r.is_right_approximation);
    EXPECT_TRUE(test::iso(r.approx.source, g.fast.source));
}

TEST_P(ApproxP, WindowTooSmallIsReported) {
    auto a = test::ex313(2, false);
    TowerOptions o;
    o.window = {-1, 1};
    Complex t = stalk(projective(a, 0), -3);
    EXPECT_THROW(dual_bousfield_tower(t, regular_generators(a), o), WindowTooSmall);
}

TEST_P(ApproxP, ColimTowerLedger) {
    auto a = test::ex313(2, false);
    Tower tw = bousfield_tower(projective_resolution_complex(simple(a, 0)), regular_generators(a));
    EXPECT_EQ(tw.direction, TowerDirection::Colim);
    EXPECT_TRUE(tw.ledger_zero());
}

INSTANTIATE_TEST_SUITE_P(Primes, ApproxP, ::testing::Values(2u, 3u));

}  // namespace
