#include <gtest/gtest.h>
#include <sys/wait.h>

#include <array>
#include <cstdio>
#include <fstream>

#include "fixtures.hpp"
#include "suite.hpp"

using namespace singcat;

namespace {

struct CliRun {
    int code = -1;
    std::string out;
};

// stdout only; stderr goes to err when given.
CliRun run(const std::string& args, const std::string& err = "/dev/null") {
    std::string cmd = std::string("'") + SINGCAT_CLI_PATH + "' " + args + " 2>" + err;
    CliRun r;
    FILE* p = popen(cmd.c_str(), "r");
    if (!p) return r;
    std::array<char, 4096> buf{};
    std::size_t n;
    while ((n = fread(buf.data(), 1, buf.size(), p)) > 0) r.out.append(buf.data(), n);
    int st = pclose(p);
    r.code = WIFEXITED(st) ? WEXITSTATUS(st) : -1;
    return r;
}

class TempDir {
public:
    TempDir() {
        path_ = std::filesystem::temp_directory_path() / ("singcat_cli_" + std::to_string(::getpid()));
        std::filesystem::create_directories(path_);
    }
    ~TempDir() { std::filesystem::remove_all(path_); }
    std::string write(const std::string& name, const std::string& text) const {
        std::ofstream(path_ / name) << text;
        return (path_ / name).string();
    }
    std::string file(const std::string& name) const { return (path_ / name).string(); }

private:
    std::filesystem::path path_;
};

std::string slurp(const std::string& f) { return io::read_file(f); }

TEST(Cli, AlgebraCheckPasses) {
    CliRun r = run("algebra-check " + test::fixture("ex313.alg").string() + " --param n=3 --json -");
    ASSERT_EQ(r.code, 0);
    Json j = Json::parse(r.out);
    EXPECT_EQ(j["schema"], cli::kReportSchema);
    EXPECT_EQ(j["runs"].size(), 2u);
    EXPECT_EQ(j["runs"][0]["dim"], 13);
    EXPECT_TRUE(j["ok"].get<bool>());
}

TEST(Cli, MalformedRelationReportsLine) {
    TempDir t;
    std::string f = t.write("bad.alg", "algebra t\nvertices 1 2\narrow a 1 2\narrow b 2 1\n# comment\nrelation ab + ba\n");
    CliRun r = run("algebra-check " + f + " --json -", t.file("err.txt"));
    EXPECT_EQ(r.code, 2);
    std::string err = slurp(t.file("err.txt"));
    EXPECT_NE(err.find("bad.alg:6: MalformedRelation"), std::string::npos) << err;
    Json j = Json::parse(r.out);
    EXPECT_EQ(j["error"]["kind"], "MalformedRelation");
    EXPECT_EQ(j["error"]["line"], 6);
}

TEST(Cli, LoopIsNotAdmissible) {
    TempDir t;
    std::string f = t.write("loop.alg", "algebra loop\nvertices 1\narrow x 1 1\nmax_len 10\n");
    CliRun r = run("algebra-check " + f, t.file("err.txt"));
    EXPECT_EQ(r.code, 2);
    EXPECT_NE(slurp(t.file("err.txt")).find("loop.alg:4: NotAdmissibleAtBound"), std::string::npos);
}

TEST(Cli, DotOutput) {
    TempDir t;
    std::string f = t.write("pt.alg", "algebra pt\nvertices 1\n");
    CliRun one = run("dot " + f);
    ASSERT_EQ(one.code, 0);
    EXPECT_EQ(one.out, "digraph \"pt\" {\n  \"1\";\n}\n");
    CliRun e = run("dot " + test::fixture("ex313.alg").string());
    ASSERT_EQ(e.code, 0);
    EXPECT_EQ(e.out,
              "digraph \"ex313\" {\n  \"1\";\n  \"2\";\n  \"1\" -> \"2\" [label=\"a\"];\n"
              "  \"2\" -> \"1\" [label=\"b\"];\n}\n");
}

TEST(Cli, MorphismCheckKernel) {
    CliRun r = run("morphism-check " + test::fixture("ex313.mor").string() + " --param n=3 --prime 2 --json -");
    ASSERT_EQ(r.code, 0);
    Json j = Json::parse(r.out);
    EXPECT_EQ(j["runs"][0]["kernel_res"], Json({"1", "2/1/2/1/2"}));
    EXPECT_TRUE(j["runs"][0]["hypotheses_hold"].get<bool>());
}

TEST(Cli, IdentityMorphismIsTrivial) {
    CliRun r = run("morphism-check " + test::fixture("ex313_identity.mor").string() + " --json -");
    ASSERT_EQ(r.code, 0);
    Json j = Json::parse(r.out);
    for (const auto& run : j["runs"]) {
        EXPECT_TRUE(run["kernel_res"].empty());
        EXPECT_EQ(run["hypotheses"]["homological_epi"]["verdict"], "yes");
    }
}

TEST(Cli, FixtureRunAndSummary) {
    CliRun r = run("fixture ex315 --prime 3 --json -");
    ASSERT_EQ(r.code, 0);
    Json j = Json::parse(r.out);
    EXPECT_EQ(j["summary"]["failed"], 0);
    EXPECT_EQ(j["summary"]["undetermined"], 0);
    EXPECT_EQ(j["runs"][0]["prime"], 3);
    EXPECT_FALSE(j["runs"][0]["checks"].empty());
    for (const auto& c : j["runs"][0]["checks"]) EXPECT_FALSE(c.contains("seconds"));
}

TEST(Cli, TimingsAreOptIn) {
    CliRun r = run("fixture ex315 --prime 2 --timings --json -");
    ASSERT_EQ(r.code, 0);
    Json j = Json::parse(r.out);
    for (const auto& c : j["runs"][0]["checks"]) EXPECT_TRUE(c.contains("seconds"));
}

TEST(Cli, InputErrorsExitTwo) {
    EXPECT_EQ(run("fixture nosuchfixture").code, 2);
    EXPECT_EQ(run("algebra-check /nonexistent.alg").code, 2);
    EXPECT_EQ(run("fixture ex315 --prime 4").code, 2);
    EXPECT_NE(run("").code, 0);
}

TEST(Cli, FailingCheckExitsOne) {
    TempDir t;
    std::filesystem::copy(test::fixture("ex315_lambda.alg"), t.file("ex315_lambda.alg"));
    std::string f = t.write("wrong.fix",
                            "fixture wrong\nalgebra lambda = ex315_lambda.alg\ncheck pdim lambda S2 = 2\n");
    CliRun r = run("fixture " + f + " --prime 2 --json -");
    EXPECT_EQ(r.code, 1);
    Json j = Json::parse(r.out);
    EXPECT_EQ(j["summary"]["failed"], 1);
    EXPECT_EQ(j["runs"][0]["checks"][0]["line"], 3);
}

TEST(Suite, ParseFixture) {
    auto f = cli::parse_fixture("fixture demo\nparam n = 2\nalgebra a = x.alg\ncheck dsg a = { S1 }\n", "demo.fix");
    EXPECT_EQ(f.name, "demo");
    ASSERT_EQ(f.params.size(), 1u);
    EXPECT_EQ(f.params[0].second, 2);
    ASSERT_EQ(f.checks.size(), 1u);
    EXPECT_EQ(f.checks[0].kind, "dsg");
    EXPECT_EQ(f.checks[0].line, 4);
    EXPECT_EQ(f.checks[0].expected, "{ S1 }");
    EXPECT_THROW(cli::parse_fixture("fixture demo\ncheck nonsense a\n", "demo.fix"), io::FileError);
}

TEST(Suite, ResolveWithParameter) {
    cli::RunOptions opt;
    opt.fixtures_dir = SINGCAT_FIXTURE_DIR;
    auto [f, p] = cli::resolve_fixture("ex313:3", opt);
    EXPECT_EQ(f.name, "ex313");
    EXPECT_EQ(p.at("n"), 3);
}

}  // namespace
