#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "suite.hpp"

#ifndef SINGCAT_FIXTURE_DIR
#define SINGCAT_FIXTURE_DIR "fixtures"
#endif
#ifndef SINGCAT_VERSION
#define SINGCAT_VERSION "0.0.0"
#endif

namespace {

using namespace singcat;
using cli::RunOptions;

std::vector<linalg::Scalar> parse_primes(const std::string& s) {
    std::vector<linalg::Scalar> out;
    std::stringstream ss(s);
    for (std::string t; std::getline(ss, t, ',');) {
        long p = std::stol(t);
        if (p < 2) throw CLI::ValidationError("--prime", "not a prime: " + t);
        for (long d = 2; d * d <= p; ++d)
            if (p % d == 0) throw CLI::ValidationError("--prime", "not a prime: " + t);
        out.push_back(static_cast<linalg::Scalar>(p));
    }
    if (out.empty()) throw CLI::ValidationError("--prime", "empty list");
    return out;
}

std::pair<int, int> parse_window(std::string s) {
    std::replace(s.begin(), s.end(), ':', ',');
    auto c = s.find(',');
    if (c == std::string::npos) throw CLI::ValidationError("--window", "expected LO,HI");
    std::pair<int, int> w{std::stoi(s.substr(0, c)), std::stoi(s.substr(c + 1))};
    if (w.first > w.second) throw CLI::ValidationError("--window", "LO exceeds HI");
    return w;
}

io::Params parse_params(const std::vector<std::string>& kv) {
    io::Params p;
    for (const auto& s : kv) {
        auto eq = s.find('=');
        if (eq == std::string::npos) throw CLI::ValidationError("--param", "expected NAME=VALUE, got " + s);
        p[s.substr(0, eq)] = io::eval_int(s.substr(eq + 1), {});
    }
    return p;
}

Json base_report(const std::string& command, const std::vector<std::string>& inputs, const RunOptions& opt) {
    return {{"schema", cli::kReportSchema},
            {"tool", "singcat"},
            {"version", SINGCAT_VERSION},
            {"command", command},
            {"inputs", inputs},
            {"flags", opt.header()},
            {"runs", Json::array()}};
}

int finish(Json report, const std::string& json_out) {
    cli::Tally t = cli::tally(report["runs"]);
    report["summary"] = {{"passed", t.pass}, {"failed", t.fail}, {"undetermined", t.undetermined}};
    report["ok"] = t.ok();
    const std::string text = cli::text_summary(report);
    if (json_out == "-") {
        std::cout << report.dump(2) << '\n';
        std::cerr << text;
    } else {
        std::cout << text;
        if (!json_out.empty()) {
            std::ofstream f(json_out, std::ios::binary);
            if (!f) {
                std::cerr << "cannot write " << json_out << '\n';
                return 2;
            }
            f << report.dump(2) << '\n';
        }
    }
    return t.ok() ? 0 : 1;
}

int input_error(Json report, const io::FileError& e, const std::string& json_out) {
    std::cerr << e.what() << '\n';
    report["error"] = {{"kind", io::to_string(e.kind)}, {"file", e.file}, {"line", e.line}, {"message", e.message}};
    report["ok"] = false;
    if (json_out == "-") std::cout << report.dump(2) << '\n';
    else if (!json_out.empty()) std::ofstream(json_out, std::ios::binary) << report.dump(2) << '\n';
    return 2;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Singularity categories and Gorenstein projectives of path algebras over F_p"};
    app.require_subcommand(1);
    app.fallthrough();
    app.set_version_flag("--version", SINGCAT_VERSION);

    std::string primes = "2,3", window = "-6,6", json_out;
    std::vector<std::string> params;
    RunOptions opt;
    const char* env = std::getenv("SINGCAT_FIXTURES");
    std::string fixtures = env ? env : SINGCAT_FIXTURE_DIR;
    app.add_option("--prime", primes, "Comma-separated primes; each run is repeated per prime")->capture_default_str();
    app.add_option("--bound", opt.bound, "Resolution steps before a search reports Undetermined")->capture_default_str();
    app.add_option("--depth", opt.depth, "Tower depth")->capture_default_str();
    app.add_option("--window", window, "Shift window LO,HI for towers (use --window=-6,6)")->capture_default_str();
    app.add_option("--seed", opt.seed, "Seed for randomized searches")->capture_default_str();
    app.add_option("--param", params, "Parameter override NAME=VALUE (repeatable)");
    app.add_option("--fixtures", fixtures, "Directory holding *.fix files")->capture_default_str();
    app.add_option("--json", json_out, "Write the JSON report to FILE ('-' for stdout)");
    app.add_flag("--timings", opt.timings, "Record wall-clock seconds per check (breaks byte-identical reports)");

    std::string file;
    std::vector<std::string> names;
    auto* alg_cmd = app.add_subcommand("algebra-check", "Build an algebra file and check associativity, unitality, admissibility");
    alg_cmd->add_option("file", file, "Algebra file")->required();
    auto* mor_cmd = app.add_subcommand("morphism-check", "Hypotheses and conclusions for an algebra morphism file");
    mor_cmd->add_option("file", file, "Morphism file")->required();
    auto* fix_cmd = app.add_subcommand("fixture", "Run fixture suites, e.g. ex313:3 ex315");
    fix_cmd->add_option("names", names, "Fixture names (NAME or NAME:PARAM) or .fix paths")->required();
    auto* dot_cmd = app.add_subcommand("dot", "Print the quiver of an algebra file as a DOT graph");
    dot_cmd->add_option("file", file, "Algebra file")->required();

    try {
        app.parse(argc, argv);
        opt.primes = parse_primes(primes);
        opt.window = parse_window(window);
        opt.params = parse_params(params);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    } catch (const std::exception& e) {
        std::cerr << e.what() << '\n';
        return 2;
    }
    opt.fixtures_dir = fixtures;

    if (*dot_cmd) {
        try {
            linalg::set_prime(opt.primes.front());
            std::cout << io::to_dot(*io::load_algebra(file, opt.params).alg);
            return 0;
        } catch (const io::FileError& e) {
            std::cerr << e.what() << '\n';
            return 2;
        }
    }

    const std::string command = *alg_cmd ? "algebra-check" : *mor_cmd ? "morphism-check" : "fixture";
    Json report = base_report(command, *fix_cmd ? names : std::vector<std::string>{file}, opt);
    try {
        for (auto p : opt.primes) {
            linalg::set_prime(p);
            if (*alg_cmd) {
                report["runs"].push_back(cli::algebra_report(io::load_algebra(file, opt.params)));
            } else if (*mor_cmd) {
                report["runs"].push_back(cli::morphism_report(io::load_morphism(file, opt.params), opt));
            } else {
                for (const auto& n : names) {
                    auto [f, prm] = cli::resolve_fixture(n, opt);
                    report["runs"].push_back(cli::run_fixture(f, prm, opt));
                }
            }
        }
    } catch (const io::FileError& e) {
        return input_error(report, e, json_out);
    } catch (const std::invalid_argument& e) {
        std::cerr << e.what() << '\n';
        return 2;
    }
    return finish(report, json_out);
}
