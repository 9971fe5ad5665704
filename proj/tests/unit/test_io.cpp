#include <gtest/gtest.h>

#include "fixtures.hpp"
#include "singcat/io.hpp"

using namespace singcat;

namespace {

class IoP : public ::testing::TestWithParam<Scalar> {
protected:
    void SetUp() override { linalg::set_prime(GetParam()); }
};

io::FileError parse_error(const std::string& text) {
    try {
        io::parse_algebra(text, {}, "t.alg");
    } catch (const io::FileError& e) {
        return e;
    }
    ADD_FAILURE() << "no error for:\n" << text;
    return io::FileError(io::FileError::Kind::Io, "", 0, "");
}

TEST(IoExpr, IntegerExpressions) {
    io::Params p{{"n", 3}};
    EXPECT_EQ(io::eval_int("2n-1", p), 5);
    EXPECT_EQ(io::eval_int("(n+1)*2", p), 8);
    EXPECT_EQ(io::eval_int("-4 + n", p), -1);
    EXPECT_THROW(io::eval_int("m", p), std::exception);
}

TEST_P(IoP, WordsAndRelations) {
    auto a = test::ex313(3, false);
    const auto& q = a->quiver();
    EXPECT_EQ(io::parse_word(q, "(ab)^n", {{"n", 2}}), (Word{0, 1, 0, 1}));
    EXPECT_EQ(io::parse_word(q, "b(ab)^{n-1}", {{"n", 2}}), (Word{1, 0, 1}));
    EXPECT_EQ(io::parse_word(q, "a.b"), (Word{0, 1}));
    EXPECT_EQ(io::format_word(q, {1, 0, 1}), "bab");
    Relation r = io::parse_combination(q, "abab - 2*abab");
    EXPECT_EQ(io::format_relation(q, r), linalg::prime() == 2 ? "abab" : "-abab");
    EXPECT_TRUE(io::parse_combination(q, "0").terms.empty());
}

TEST_P(IoP, FixtureFilesMatchDirectBuilds) {
    for (int n : {2, 3}) {
        auto f = io::load_algebra(test::fixture("ex313.alg"), {{"n", n}});
        EXPECT_EQ(f.alg->fingerprint(), test::ex313(n, false)->fingerprint());
        auto g = io::load_algebra(test::fixture("ex313_quot.alg"), {{"n", n}});
        EXPECT_EQ(g.alg->fingerprint(), test::ex313(n, true)->fingerprint());
    }
    EXPECT_EQ(io::load_algebra(test::fixture("ex315_lambda.alg")).alg->fingerprint(), test::ex315_lambda()->fingerprint());
    EXPECT_EQ(io::load_algebra(test::fixture("ex315_gamma.alg")).alg->fingerprint(), test::ex315_gamma()->fingerprint());
}

TEST_P(IoP, DumpRoundTrips) {
    for (const char* file : {"ex313.alg", "ex313_quot.alg", "ex315_lambda.alg", "ex315_gamma.alg"}) {
        auto f = io::load_algebra(test::fixture(file), {{"n", 3}});
        std::string d = io::dump_algebra(f);
        auto g = io::parse_algebra(d);
        EXPECT_EQ(io::dump_algebra(g), d) << file;
        EXPECT_EQ(g.alg->fingerprint(), f.alg->fingerprint());
        ASSERT_EQ(g.modules.size(), f.modules.size());
        for (std::size_t i = 0; i < f.modules.size(); ++i) EXPECT_TRUE(test::iso(g.modules[i].module, f.modules[i].module));
    }
    auto m = io::load_morphism(test::fixture("ex315.mor"));
    std::string d = io::dump_morphism(m);
    auto m2 = io::parse_morphism(d, test::fixture(""));
    EXPECT_EQ(io::dump_morphism(m2), d);
}

TEST_P(IoP, ModuleLiterals) {
    auto a = test::ex313(3, false);
    io::Params p{{"n", 3}};
    EXPECT_EQ(io::module_name(test::named(a, "P2/rad^2", p)), "2/1");
    EXPECT_EQ(io::module_name(test::named(a, "P2", p)), "2/1/2/1/2/1");
    EXPECT_EQ(io::module_name(test::named(a, "rad P1", p)), "2/1/2/1/2/1");
    EXPECT_EQ(io::module_name(test::named(a, "soc^2 P1", p)), "2/1");
    EXPECT_EQ(io::module_name(test::named(a, "S1 + S2", p)), "1 + 2");
    EXPECT_TRUE(test::iso(test::named(a, "syz S2", p), test::named(a, "rad P2", p)));
    EXPECT_TRUE(test::iso(test::named(a, "I1", p), injective(a, 0)));
    EXPECT_TRUE(test::iso(test::named(a, "D", p), direct_sum(injective(a, 0), injective(a, 1))));
    EXPECT_TRUE(test::iso(test::named(a, "2/1/2/1", p), test::named(a, "P2/rad^4", p)));
    EXPECT_THROW(test::named(a, "2/2", p), std::exception);
    EXPECT_THROW(test::named(a, "P7", p), std::exception);
}

TEST_P(IoP, ExplicitModuleBlocks) {
    std::string text =
        "algebra t\nvertices 1 2\narrow a 1 2\narrow b 2 1\nrelation ab\nrelation ba\n"
        "module M dims 1 1\nact a = 1\nact b = 0\n";
    auto f = io::parse_algebra(text);
    ASSERT_EQ(f.modules.size(), 1u);
    EXPECT_EQ(io::module_name(f.modules[0].module), "2/1");
}

TEST(IoErrors, MalformedRelationHasLine) {
    linalg::set_prime(2);
    auto e = parse_error("algebra t\nvertices 1 2\narrow a 1 2\narrow b 2 1\n\nrelation ab + ba\n");
    EXPECT_EQ(e.kind, io::FileError::Kind::MalformedRelation);
    EXPECT_EQ(e.line, 6);
    EXPECT_EQ(e.file, "t.alg");
}

TEST(IoErrors, UnparsableRelationHasLine) {
    linalg::set_prime(2);
    auto e = parse_error("algebra t\nvertices 1 2\narrow a 1 2\narrow b 2 1\nrelation (ab\n");
    EXPECT_EQ(e.kind, io::FileError::Kind::MalformedRelation);
    EXPECT_EQ(e.line, 5);
}

TEST(IoErrors, LoopWithoutRelationIsNotAdmissible) {
    linalg::set_prime(2);
    auto e = parse_error("algebra t\nvertices 1\narrow x 1 1\nmax_len 6\n");
    EXPECT_EQ(e.kind, io::FileError::Kind::NotAdmissibleAtBound);
    EXPECT_EQ(e.line, 4);
}

TEST(IoErrors, UnknownNames) {
    linalg::set_prime(2);
    EXPECT_EQ(parse_error("algebra t\nvertices 1 2\narrow a 1 3\n").kind, io::FileError::Kind::UnknownName);
    EXPECT_EQ(parse_error("algebra t\nvertices 1 2\narrow a 1 2\nrelation aq\n").line, 4);
    EXPECT_EQ(parse_error("algebra t\nvertices 1\nfrobnicate\n").kind, io::FileError::Kind::Syntax);
}

TEST(IoErrors, ModuleViolatingRelations) {
    linalg::set_prime(2);
    auto e = parse_error(
        "algebra t\nvertices 1 2\narrow a 1 2\narrow b 2 1\nrelation ab\nrelation ba\n"
        "module M dims 1 1\nact a = 1\nact b = 1\n");
    EXPECT_EQ(e.line, 7);
}

TEST(IoErrors, MissingFile) {
    EXPECT_THROW(io::load_algebra(test::fixture("nope.alg")), io::FileError);
}

TEST(IoDot, DeterministicOutput) {
    linalg::set_prime(2);
    auto one = io::parse_algebra("algebra pt\nvertices 1\n");
    std::string d1 = io::to_dot(*one.alg);
    EXPECT_NE(d1.find("digraph"), std::string::npos);
    EXPECT_EQ(d1, io::to_dot(*io::parse_algebra("algebra pt\nvertices 1\n").alg));
    auto a = io::load_algebra(test::fixture("ex313.alg"));
    std::string d = io::to_dot(*a.alg);
    EXPECT_NE(d.find("label=\"a\""), std::string::npos);
    EXPECT_NE(d.find("label=\"b\""), std::string::npos);
    EXPECT_EQ(d, io::to_dot(*io::load_algebra(test::fixture("ex313.alg")).alg));
}

INSTANTIATE_TEST_SUITE_P(Primes, IoP, ::testing::Values(2u, 3u));

}  // namespace
