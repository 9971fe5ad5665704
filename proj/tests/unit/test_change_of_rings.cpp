#include <gtest/gtest.h>

#include "fixtures.hpp"
#include "singcat/change_of_rings.hpp"
#include "singcat/random.hpp"

using namespace singcat;

namespace {

class ChangeP : public ::testing::TestWithParam<Scalar> {
protected:
    void SetUp() override { linalg::set_prime(GetParam()); }
};

AlgebraMorphism ex313_proj(int n) { return inclusion_morphism(test::ex313(n, false), test::ex313(n, true), "proj"); }
AlgebraMorphism ex315_incl() { return inclusion_morphism(test::ex315_lambda(), test::ex315_gamma(), "incl"); }

TEST_P(ChangeP, IdentityMorphismIsInert) {
    Rng rng(1);
    auto a = test::ex315_gamma();
    AlgebraMorphism id = identity_morphism(a);
    for (int t = 0; t < 5; ++t) {
        Module m = random_module(a, rng, 6);
        EXPECT_TRUE(test::iso(tensor_up(id, m), m));
        EXPECT_TRUE(test::iso(restrict(id, m), m));
        EXPECT_TRUE(test::iso(hom_up(id, m), m));
    }
    EXPECT_TRUE(homological_epi_evidence(id, 4).yes());
}

TEST_P(ChangeP, MorphismsRespectProducts) {
    for (const auto& f : {ex313_proj(2), ex315_incl()}) {
        const auto& s = *f.source;
        for (std::size_t i = 0; i < s.dim(); ++i)
            for (std::size_t j = 0; j < s.dim(); ++j) {
                Element lhs = f.apply(s.multiply(s.basis_element(i), s.basis_element(j)));
                Element rhs = f.target->multiply(f.basis_image(i), f.basis_image(j));
                EXPECT_EQ(lhs, rhs);
            }
        EXPECT_EQ(f.apply(s.unit()), f.target->unit());
    }
}

TEST_P(ChangeP, RelationsMustBePreserved) {
    try {
        inclusion_morphism(test::ex313(2, true), test::ex313(2, false));
        FAIL() << "expected an error";
    } catch (const MorphismError& e) {
        EXPECT_EQ(e.kind, MorphismError::Kind::RelationNotPreserved);
    }
}

TEST_P(ChangeP, AdjunctionIdentities) {
    Rng rng(31);
    for (const auto& f : {ex313_proj(2), ex313_proj(3), ex315_incl()})
        for (int t = 0; t < 15; ++t) {
            Module m = random_module(f.source, rng, 7), n = random_module(f.target, rng, 7);
            EXPECT_EQ(hom_dim(tensor_up(f, m), n), hom_dim(m, restrict(f, n)));
            EXPECT_EQ(hom_dim(restrict(f, n), m), hom_dim(n, hom_up(f, m)));
        }
}

TEST_P(ChangeP, TensorOfProjectivesAndTor) {
    auto f = ex313_proj(3);
    for (int v = 0; v < 2; ++v) {
        EXPECT_TRUE(test::iso(tensor_up(f, projective(f.source, v)), projective(f.target, v)));
        auto tor = tor_dims(f, projective(f.source, v), 3);
        for (std::size_t k = 1; k < tor.size(); ++k) EXPECT_EQ(tor[k], 0u);
    }
    // S1 over the quotient is S1; Tor_1(S1, Lambda/I) is I e_1 seen through the cover
    auto tor = tor_dims(f, simple(f.source, 0), 3);
    EXPECT_EQ(tor[0], 1u);
    // Tor_0 is the tensor product
    Rng rng(8);
    for (int t = 0; t < 5; ++t) {
        Module m = random_module(f.source, rng, 6);
        EXPECT_EQ(tor_dims(f, m, 0)[0], tensor_up(f, m).total());
    }
}

TEST_P(ChangeP, BimoduleConvention) {
    for (const auto& f : {ex313_proj(2), ex315_incl()}) {
        Bimodule x = algebra_bimodule(identity_morphism(f.target), f);
        EXPECT_TRUE(satisfies_relations(x.mod));
        EXPECT_EQ(x.mod.total(), f.target->dim());
        EXPECT_TRUE(test::iso(right_restriction(x), restrict(f, regular(f.target))));
        EXPECT_TRUE(test::iso(left_restriction(x), regular(opposite(f.target))));
    }
}

TEST_P(ChangeP, TheoremIHypotheses) {
    for (const auto& f : {ex313_proj(2), ex315_incl()}) {
        HypothesisReport h = check_theoremI(f);
        EXPECT_TRUE(h.pdim_left.yes());
        EXPECT_TRUE(h.pdim_right.yes());
        EXPECT_TRUE(h.cone_perfect_bimodule.yes());
        EXPECT_TRUE(h.homological_epi.no());
    }
    EXPECT_TRUE(check_theoremI(ex313_proj(3)).rhom_perfect.yes());
    EXPECT_TRUE(check_theoremI(ex315_incl()).rhom_perfect.no());
}

TEST_P(ChangeP, Ex313Conclusions) {
    for (int n : {2, 3}) {
        auto f = ex313_proj(n);
        ConclusionReport c = verify_conclusions(f, check_theoremI(f));
        EXPECT_TRUE(c.tensor_ok());
        EXPECT_TRUE(c.res_ok());
        EXPECT_TRUE(c.fully_faithful_ok());
        EXPECT_TRUE(c.images_ok());
        std::vector<Module> ker;
        for (auto k : c.kernel) ker.push_back(c.target_dsg.objects[k].rep);
        EXPECT_TRUE(test::same_iso_classes(ker, {simple(f.target, 0), test::named(f.target, "P2/soc")})) << "n=" << n;
    }
}

TEST_P(ChangeP, Ex315Conclusions) {
    auto f = ex315_incl();
    ConclusionReport c = verify_conclusions(f, check_theoremI(f));
    EXPECT_TRUE(c.tensor_ok());
    EXPECT_TRUE(c.res_ok());
    EXPECT_TRUE(c.fully_faithful_ok());
    EXPECT_EQ(c.source_dsg.objects.size(), 2u);
    EXPECT_EQ(c.target_dsg.objects.size(), 4u);
}

TEST_P(ChangeP, ConeOfTheStructureMap) {
    auto f = ex313_proj(2);
    Complex c = cone_bimodule_complex(f);
    EXPECT_EQ(c.lo, -1);
    EXPECT_NO_THROW(check_complex(c));
    // Lambda -> Lambda/I is onto with kernel I = (ba)^n, one dimensional
    EXPECT_EQ(homology(c, -1).total(), 1u);
    EXPECT_EQ(homology(c, 0).total(), 0u);
}

INSTANTIATE_TEST_SUITE_P(Primes, ChangeP, ::testing::Values(2u, 3u));

}  // namespace
