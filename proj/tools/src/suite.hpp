#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "singcat/approximation.hpp"
#include "singcat/io.hpp"

namespace singcat::cli {

inline constexpr const char* kReportSchema = "singcat-report/1";

struct RunOptions {
    std::vector<linalg::Scalar> primes{2, 3};
    std::size_t bound = 64;
    int depth = 12;
    std::pair<int, int> window{-6, 6};
    std::uint64_t seed = 1;
    io::Params params;
    std::filesystem::path fixtures_dir;
    bool timings = false;

    Json header() const;
};

// A fixture is a data file naming algebras and morphisms plus "check" lines.
struct FixtureFile {
    struct Ref {
        int line = 0;
        std::string kind;  // algebra | morphism
        std::string name;
        std::string file;
    };
    struct Check {
        int line = 0;
        std::string kind;
        std::vector<std::string> args;
        std::string expected;  // text after '=', possibly empty
        std::string text() const;
    };
    std::string name;
    std::filesystem::path path;
    std::vector<std::pair<std::string, long>> params;  // declared defaults, in order
    std::vector<Ref> refs;
    std::vector<Check> checks;
};

FixtureFile parse_fixture(const std::string& text, const std::filesystem::path& path);
// "ex313:3" -> <dir>/ex313.fix with the first declared parameter set to 3;
// also accepts a path to a .fix file.
std::pair<FixtureFile, io::Params> resolve_fixture(const std::string& name, const RunOptions& opt);

struct CheckOutcome {
    std::string status;  // pass | fail | undetermined
    Json detail;
};

// One fixture at the current prime: {"fixture", "prime", "checks": [...]}.
Json run_fixture(const FixtureFile& f, const io::Params& params, const RunOptions& opt);

Json algebra_report(const io::AlgebraFile& a);
Json morphism_report(const io::MorphismFile& m, const RunOptions& opt);

// Counts over every "status" field below j.
struct Tally {
    std::size_t pass = 0, fail = 0, undetermined = 0;
    bool ok() const { return fail == 0 && undetermined == 0; }
};
Tally tally(const Json& j);

std::string text_summary(const Json& report);

}  // namespace singcat::cli
