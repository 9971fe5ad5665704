#include <gtest/gtest.h>

#include "complexes.hpp"
#include "fixtures.hpp"

using namespace singcat;

namespace {

class ComplexP : public ::testing::TestWithParam<Scalar> {
protected:
    void SetUp() override { linalg::set_prime(GetParam()); }
};

Complex two_term(const ModuleMap& f, int lo = 0) { return make_complex(f.src.alg, lo, {f.src, f.tgt}, {f}); }

TEST_P(ComplexP, RandomComplexesSquareToZero) {
    Rng rng(1);
    auto a = test::ex313(2, true);
    for (int t = 0; t < 10; ++t) {
        Complex x = random_complex(a, rng, -1, 4, 6);
        EXPECT_NO_THROW(check_complex(x));
        for (int i = x.lo; i < x.hi(); ++i) EXPECT_TRUE(compose(x.diff(i + 1), x.diff(i)).is_zero());
    }
}

TEST_P(ComplexP, ConeOfIdentityIsContractible) {
    Rng rng(2);
    auto a = test::ex315_gamma();
    for (int t = 0; t < 5; ++t) {
        Complex x = random_complex(a, rng, 0, 3, 5);
        Complex c = cone(identity(x));
        EXPECT_TRUE(is_acyclic(c));
        EXPECT_EQ(hom_k_dim(c, c), 0u);
    }
}

TEST_P(ComplexP, ShiftMovesHomology) {
    Rng rng(3);
    auto a = test::ex313(3, false);
    Complex x = random_complex(a, rng, -1, 3, 6);
    for (int n : {-2, 1, 3}) {
        Complex y = shift(x, n);
        EXPECT_NO_THROW(check_complex(y));
        for (int i = x.lo; i <= x.hi(); ++i) EXPECT_EQ(homology_dims(y, i - n), homology_dims(x, i));
    }
}

TEST_P(ComplexP, HomKIsDegreeZeroHomologyOfHomComplex) {
    Rng rng(4);
    auto a = test::ex313(2, true);
    for (int t = 0; t < 8; ++t) {
        Complex x = random_complex(a, rng, 0, 2, 5), y = random_complex(a, rng, 0, 3, 5);
        auto h = hom_complex_homology(x, y, 0, 0);
        ASSERT_EQ(h.size(), 1u);
        EXPECT_EQ(hom_k_dim(x, y), h[0]);
        for (const auto& f : hom_k_basis(x, y)) EXPECT_TRUE(is_chain_map(f));
    }
}

TEST_P(ComplexP, HomKCoordinatesRoundTrip) {
    Rng rng(5);
    auto a = test::ex315_lambda();
    Complex x = random_complex(a, rng, 0, 2, 5), y = random_complex(a, rng, 0, 2, 5);
    HomKSpace h(x, y);
    for (std::size_t i = 0; i < h.dim(); ++i) {
        std::vector<Scalar> e(h.dim(), 0);
        e[i] = 1;
        EXPECT_EQ(h.coords(h.basis()[i]), e);
        EXPECT_EQ(h.coords(h.combine(e)), e);
    }
}

TEST_P(ComplexP, SyzygyDataIsShortExact) {
    Rng rng(6);
    auto a = test::ex313(3, false);
    for (int t = 0; t < 5; ++t) {
        Complex x = random_complex(a, rng, 0, 3, 6);
        SyzygyData s = syzygy_data(x);
        EXPECT_TRUE(is_acyclic(s.cover));
        EXPECT_TRUE(all_projective(s.cover));
        EXPECT_TRUE(is_chain_map(s.eps));
        EXPECT_TRUE(is_chain_map(s.incl));
        for (int i = s.cover.lo; i <= s.cover.hi(); ++i) {
            EXPECT_TRUE(is_surjective_map(s.eps.at(i)));
            EXPECT_TRUE(is_injective_map(s.incl.at(i)));
            EXPECT_EQ(s.omega.term(i).total() + x.term(i).total(), s.cover.term(i).total());
        }
        CosyzygyData c = cosyzygy_data(x);
        EXPECT_TRUE(is_acyclic(c.envelope));
        EXPECT_TRUE(all_injective(c.envelope));
        EXPECT_TRUE(is_chain_map(c.eta));
    }
}

TEST_P(ComplexP, MinimizeSplitsContractibleSummands) {
    auto a = test::ex313(2, false);
    Module p1 = projective(a, 0), p2 = projective(a, 1);
    // identity disk on P1 plus a stalk P2 in degree 1
    Complex disk = make_complex(a, 0, {p1, p1}, {identity(p1)});
    Complex x = direct_sum(disk, stalk(p2, 1));
    MinimalComplex m = minimize_projective_complex(x);
    Complex t = trim(m.min);
    ASSERT_EQ(t.lo, 1);
    ASSERT_EQ(t.terms.size(), 1u);
    EXPECT_TRUE(test::iso(t.terms[0], p2));
    EXPECT_TRUE(is_chain_map(m.incl));
    EXPECT_TRUE(is_chain_map(m.proj));
    ChainMap back = compose(m.proj, m.incl);
    for (int i = m.min.lo; i <= m.min.hi(); ++i) EXPECT_TRUE(equal_maps(back.at(i), identity(m.min.term(i))));
}

TEST_P(ComplexP, RhoOverGorensteinQuotientStalks) {
    // every projective over ex313 Lambda/I is a stalk of pdim 0
    auto a = test::ex313(2, true);
    for (int v = 0; v < 2; ++v) {
        Complex x = stalk(projective(a, v));
        Complex r = rho(x, 1);
        EXPECT_TRUE(all_projective(r));
        EXPECT_TRUE(test::find_quasi_iso(r, x).has_value());
    }
    EXPECT_THROW(rho(stalk(simple(a, 0)), 1), PdimExceeded);
}

TEST_P(ComplexP, RhoOverEx315LambdaIsProjectiveResolution) {
    auto a = test::ex315_lambda();
    Module s2 = simple(a, 1);
    for (int d : {1, 2}) {
        Complex r = rho(stalk(s2), d);
        EXPECT_TRUE(all_projective(r));
        auto q = test::find_quasi_iso(r, stalk(s2));
        ASSERT_TRUE(q.has_value());
        EXPECT_TRUE(is_chain_map(*q));
    }
}

TEST_P(ComplexP, LambdaIsDualToRho) {
    auto a = test::ex315_lambda();
    auto op = opposite(a);
    std::size_t checked = 0;
    for (int v = 0; v < op->num_vertices(); ++v) {
        Module s = simple(op, v);
        Resolution res = min_proj_resolution(s);
        if (!res.answer.yes()) continue;
        int d = std::max(res.pdim, 0);
        Complex r = rho(stalk(s), d);
        Complex l = lambda(stalk(dual(s, a)), d);
        EXPECT_TRUE(all_injective(l));
        for (int i = -4; i <= 4; ++i) EXPECT_EQ(dual(r, a).term(i).total(), l.term(i).total()) << "v=" << v << " i=" << i;
        ++checked;
    }
    EXPECT_GT(checked, 0u);
}

TEST_P(ComplexP, SyzygyCosyzygyAdjunctionUnderExtVanishing) {
    auto a = test::ex315_lambda();
    std::vector<Complex> xs{stalk(simple(a, 1)), stalk(projective(a, 0)), stalk(simple(a, 1), 1),
                            two_term(projective_cover(simple(a, 1)).map, -1)};
    for (const auto& x : xs)
        for (const auto& y : xs) {
            if (!test::termwise_ext_vanishes(x, y, 2)) continue;
            EXPECT_EQ(hom_k_dim(syzygy(x, 1), y), hom_k_dim(x, cosyzygy(y, 1)));
        }
}

TEST_P(ComplexP, ResolutionsAndPeriodicity) {
    auto a = test::ex313(3, false);
    Resolution s1 = min_proj_resolution(simple(a, 0));
    ASSERT_TRUE(s1.answer.yes());
    EXPECT_EQ(s1.pdim, 1);
    Resolution s2 = min_proj_resolution(simple(a, 1));
    ASSERT_TRUE(s2.answer.no());
    EXPECT_GT(s2.period, 0);
    ASSERT_TRUE(s2.cycle_iso.has_value());
    EXPECT_TRUE(is_iso_map(*s2.cycle_iso));
    TailedComplex t = periodic_resolution(s2);
    EXPECT_TRUE(t.check_tails());
    Complex u = t.unroll(2, 0);
    EXPECT_NO_THROW(check_complex(u));
    EXPECT_TRUE(all_projective(u));
    for (int i = u.lo + 1; i < u.hi(); ++i) EXPECT_EQ(homology(u, i).total(), 0u);

    auto q = test::ex313(2, true);
    Resolution r = min_proj_resolution(simple(q, 0));
    ASSERT_TRUE(r.answer.no());
    EXPECT_EQ(r.period, 2);
}

TEST_P(ComplexP, ExtOneBetweenSimplesCountsArrows) {
    auto a = test::ex315_gamma();
    for (int u = 0; u < 3; ++u)
        for (int v = 0; v < 3; ++v) {
            Module m = simple(a, u), n = simple(a, v);
            std::size_t e1 = ext_dim(m, n, 1);
            // arrows v -> u
            std::size_t arrows = 0;
            for (const auto& ar : a->quiver().arrows) arrows += (ar.source == v && ar.target == u);
            EXPECT_EQ(e1, arrows) << u << "," << v;
        }
}

INSTANTIATE_TEST_SUITE_P(Primes, ComplexP, ::testing::Values(2u, 3u));

}  // namespace
