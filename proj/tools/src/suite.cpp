#include "suite.hpp"

#include "singcat/random.hpp"

#include <algorithm>
#include <chrono>
#include <sstream>

namespace singcat::cli {

namespace la = linalg;

Json RunOptions::header() const {
    Json p = Json::object();
    for (const auto& [k, v] : params) p[k] = v;
    return {{"prime", primes}, {"bound", bound}, {"depth", depth}, {"window", {window.first, window.second}},
            {"seed", seed},    {"params", p}};
}

std::string FixtureFile::Check::text() const {
    std::string s = kind;
    for (const auto& a : args) s += " " + a;
    if (!expected.empty()) s += " = " + expected;
    return s;
}

namespace {

std::string trim(const std::string& s) {
    std::size_t a = s.find_first_not_of(" \t\r");
    if (a == std::string::npos) return "";
    return s.substr(a, s.find_last_not_of(" \t\r") - a + 1);
}

std::vector<std::string> split_ws(const std::string& s) {
    std::istringstream is(s);
    std::vector<std::string> out;
    for (std::string t; is >> t;) out.push_back(t);
    return out;
}

std::vector<std::string> split_commas(const std::string& s) {
    std::vector<std::string> out;
    int depth = 0;
    std::string cur;
    for (char c : s) {
        if (c == '(' || c == '{') ++depth;
        if (c == ')' || c == '}') --depth;
        if (c == ',' && depth == 0) {
            out.push_back(trim(cur));
            cur.clear();
        } else {
            cur += c;
        }
    }
    if (!trim(cur).empty()) out.push_back(trim(cur));
    return out;
}

using io::FileError;

struct Context {
    const FixtureFile& fix;
    io::Params params;
    const RunOptions& opt;
    std::map<std::string, io::AlgebraFile> algs;
    std::map<std::string, io::MorphismFile> mors;
    std::map<std::string, DsgEnumeration> dsg;
    std::map<std::string, std::pair<HypothesisReport, ConclusionReport>> concl;

    FileError error(int line, const std::string& msg) const {
        return FileError(FileError::Kind::UnknownName, fix.path.string(), line, msg);
    }
    const io::AlgebraFile& alg(const std::string& n, int line) const {
        auto it = algs.find(n);
        if (it == algs.end()) throw error(line, "unknown algebra '" + n + "'");
        return it->second;
    }
    const io::MorphismFile& mor(const std::string& n, int line) const {
        auto it = mors.find(n);
        if (it == mors.end()) throw error(line, "unknown morphism '" + n + "'");
        return it->second;
    }
    Module module(const io::AlgebraFile& a, const std::string& lit, int line, const io::Params& extra = {}) const {
        if (const auto* d = a.find_module(lit)) return d->module;
        io::Params p = params;
        for (const auto& [k, v] : extra) p[k] = v;
        try {
            return io::parse_module(a.alg, lit, p);
        } catch (const std::exception& e) {
            throw FileError(FileError::Kind::Syntax, fix.path.string(), line, e.what());
        }
    }
    // "{ A, B }" or "{ EXPR : k = lo..hi }"
    std::vector<Module> module_list(const io::AlgebraFile& a, const std::string& text, int line) const {
        std::string t = trim(text);
        if (t.size() < 2 || t.front() != '{' || t.back() != '}') throw error(line, "expected a braced module list");
        t = trim(t.substr(1, t.size() - 2));
        std::vector<Module> out;
        if (t.empty()) return out;
        auto colon = t.find(':');
        if (colon == std::string::npos) {
            for (const auto& item : split_commas(t)) out.push_back(module(a, item, line));
            return out;
        }
        std::string expr = trim(t.substr(0, colon)), binder = trim(t.substr(colon + 1));
        auto eq = binder.find('='), dots = binder.find("..");
        if (eq == std::string::npos || dots == std::string::npos) throw error(line, "expected 'k = lo..hi'");
        std::string var = trim(binder.substr(0, eq));
        long lo = io::eval_int(trim(binder.substr(eq + 1, dots - eq - 1)), params);
        long hi = io::eval_int(trim(binder.substr(dots + 2)), params);
        for (long k = lo; k <= hi; ++k) out.push_back(module(a, expr, line, {{var, k}}));
        return out;
    }
    const DsgEnumeration& enumeration(const std::string& n, int line) {
        auto it = dsg.find(n);
        if (it != dsg.end()) return it->second;
        SeedOptions so;
        so.layers = true;
        return dsg[n] = dsg_indecomposables(alg(n, line).alg, so, opt.bound, opt.seed);
    }
    const std::pair<HypothesisReport, ConclusionReport>& conclusions(const std::string& n, int line) {
        auto it = concl.find(n);
        if (it != concl.end()) return it->second;
        const auto& f = mor(n, line).morphism;
        HypothesisReport h = check_theoremI(f, opt.bound);
        ConclusionOptions co;
        co.seed = opt.seed;
        ConclusionReport c = verify_conclusions(f, h, opt.bound, co);
        return concl[n] = {std::move(h), std::move(c)};
    }
};

Json names(const std::vector<Module>& ms) {
    Json a = Json::array();
    for (const auto& m : ms) a.push_back(io::module_name(m));
    return a;
}

// Bijection up to isomorphism.
bool same_iso_classes(const std::vector<Module>& found, const std::vector<Module>& expected, std::uint64_t seed) {
    if (found.size() != expected.size()) return false;
    std::vector<bool> used(found.size(), false);
    for (const auto& e : expected) {
        bool hit = false;
        for (std::size_t i = 0; i < found.size() && !hit; ++i)
            if (!used[i] && found[i].dims == e.dims && is_isomorphic(found[i], e, seed).answer.yes()) used[i] = hit = true;
        if (!hit) return false;
    }
    return true;
}

CheckOutcome undetermined(const std::string& what, std::size_t bound, const char* flag) {
    return {"undetermined", {{"reason", what}, {"bound", bound}, {"raise_with", flag}}};
}

CheckOutcome verdict(bool ok, Json detail) { return {ok ? "pass" : "fail", std::move(detail)}; }

bool parse_yes_no(const std::string& s, const Context& ctx, int line) {
    if (s == "yes") return true;
    if (s == "no") return false;
    throw ctx.error(line, "expected 'yes' or 'no', got '" + s + "'");
}

void need_args(const FixtureFile::Check& c, std::size_t n, const Context& ctx) {
    if (c.args.size() != n)
        throw ctx.error(c.line, "'" + c.kind + "' takes " + std::to_string(n) + " argument(s)");
}

CheckOutcome check_dsg(const FixtureFile::Check& c, Context& ctx) {
    need_args(c, 1, ctx);
    const auto& en = ctx.enumeration(c.args[0], c.line);
    std::vector<Module> found;
    for (const auto& o : en.objects) found.push_back(o.rep);
    auto expected = ctx.module_list(ctx.alg(c.args[0], c.line), c.expected, c.line);
    Json d = {{"found", names(found)}, {"expected", names(expected)}, {"scope", en.scope}};
    if (en.status != Verdict::Yes) return undetermined("a seed resolution did not stabilise", ctx.opt.bound, "--bound");
    return verdict(same_iso_classes(found, expected, ctx.opt.seed), d);
}

CheckOutcome check_gproj(const FixtureFile::Check& c, Context& ctx) {
    need_args(c, 1, ctx);
    const auto& en = ctx.enumeration(c.args[0], c.line);
    std::vector<Module> found;
    Json cand = Json::array();
    bool undet = en.status != Verdict::Yes;
    for (const auto& o : en.objects) {
        GprojResult r = is_gorenstein_projective(o.rep, ctx.opt.bound, ctx.opt.seed);
        cand.push_back({{"module", io::module_name(o.rep)}, {"gproj", to_string(r.answer.verdict)}});
        if (r.answer.yes()) found.push_back(o.rep);
        if (r.answer.undetermined()) undet = true;
    }
    auto expected = ctx.module_list(ctx.alg(c.args[0], c.line), c.expected, c.line);
    Json d = {{"found", names(found)}, {"expected", names(expected)}, {"candidates", cand}};
    if (undet) return undetermined("Gorenstein projectivity not decided", ctx.opt.bound, "--bound");
    return verdict(same_iso_classes(found, expected, ctx.opt.seed), d);
}

CheckOutcome check_kernel(const FixtureFile::Check& c, Context& ctx) {
    need_args(c, 1, ctx);
    const auto& [h, r] = ctx.conclusions(c.args[0], c.line);
    (void)h;
    std::vector<Module> found;
    for (auto k : r.kernel) found.push_back(r.target_dsg.objects[k].rep);
    auto expected = ctx.module_list(ctx.mor(c.args[0], c.line).target, c.expected, c.line);
    return verdict(same_iso_classes(found, expected, ctx.opt.seed), {{"found", names(found)}, {"expected", names(expected)}});
}

CheckOutcome check_gorenstein(const FixtureFile::Check& c, Context& ctx) {
    need_args(c, 1, ctx);
    bool want = parse_yes_no(c.expected, ctx, c.line);
    CertifiedAnswer a = is_gorenstein_algebra(ctx.alg(c.args[0], c.line).alg, ctx.opt.bound);
    if (a.undetermined()) return undetermined("resolutions of injectives did not stabilise", ctx.opt.bound, "--bound");
    return verdict(a.yes() == want, a.to_json());
}

CheckOutcome check_selfinjective(const FixtureFile::Check& c, Context& ctx) {
    need_args(c, 1, ctx);
    bool want = parse_yes_no(c.expected, ctx, c.line);
    const AlgebraPtr& a = ctx.alg(c.args[0], c.line).alg;
    Json per = Json::array();
    bool all = true;
    for (int v = 0; v < a->num_vertices(); ++v) {
        Module p = projective(a, v);
        int match = -1;
        for (int w = 0; w < a->num_vertices() && match < 0; ++w)
            if (is_isomorphic(p, injective(a, w), ctx.opt.seed).answer.yes()) match = w;
        per.push_back({{"projective", a->quiver().vertices[v]},
                       {"injective", match < 0 ? Json(nullptr) : Json(a->quiver().vertices[match])}});
        all = all && match >= 0;
    }
    return verdict(all == want, {{"matches", per}});
}

CheckOutcome check_pdim(const FixtureFile::Check& c, Context& ctx) {
    need_args(c, 2, ctx);
    const auto& a = ctx.alg(c.args[0], c.line);
    Module m = ctx.module(a, c.args[1], c.line);
    CertifiedAnswer r = pdim(m, ctx.opt.bound);
    if (r.undetermined()) return undetermined("resolution did not stabilise", ctx.opt.bound, "--bound");
    Json found = r.yes() ? Json(r.witness.value("pdim", -1)) : Json("infinite");
    Json want = c.expected == "infinite" ? Json("infinite") : Json(io::eval_int(c.expected, ctx.params));
    return verdict(found == want, {{"found", found}, {"expected", want}, {"certificate", r.to_json()}});
}

CheckOutcome check_dsg_hom(const FixtureFile::Check& c, Context& ctx) {
    need_args(c, 3, ctx);
    const auto& a = ctx.alg(c.args[0], c.line);
    DsgObject m = make_dsg_object(ctx.module(a, c.args[1], c.line), ctx.opt.bound, ctx.opt.seed);
    DsgObject n = make_dsg_object(ctx.module(a, c.args[2], c.line), ctx.opt.bound, ctx.opt.seed);
    DsgHom h = dsg_hom(m, n, ctx.opt.seed);
    if (h.answer.undetermined()) return undetermined("syzygies did not stabilise", ctx.opt.bound, "--bound");
    long want = io::eval_int(c.expected, ctx.params);
    return verdict(static_cast<long>(h.dim) == want, {{"found", h.dim}, {"expected", want}, {"certificate", h.answer.to_json()}});
}

CheckOutcome check_dsg_semisimple(const FixtureFile::Check& c, Context& ctx) {
    need_args(c, 1, ctx);
    const auto& en = ctx.enumeration(c.args[0], c.line);
    if (en.status != Verdict::Yes) return undetermined("a seed resolution did not stabilise", ctx.opt.bound, "--bound");
    const std::size_t n = en.objects.size();
    Json grid = Json::array();
    bool ok = static_cast<long>(n) == io::eval_int(c.expected, ctx.params);
    for (std::size_t i = 0; i < n; ++i) {
        Json row = Json::array();
        for (std::size_t j = 0; j < n; ++j) {
            DsgHom h = dsg_hom(en.objects[i], en.objects[j], ctx.opt.seed);
            if (h.answer.undetermined()) return undetermined("syzygies did not stabilise", ctx.opt.bound, "--bound");
            row.push_back(h.dim);
            ok = ok && h.dim == (i == j ? 1u : 0u);
        }
        grid.push_back(row);
    }
    std::vector<Module> reps;
    for (const auto& o : en.objects) reps.push_back(o.rep);
    return verdict(ok, {{"objects", names(reps)}, {"dsg_hom", grid}});
}

CheckOutcome check_theorem_i(const FixtureFile::Check& c, Context& ctx) {
    need_args(c, 1, ctx);
    const auto& [h, r] = ctx.conclusions(c.args[0], c.line);
    bool ok = h.pdim_left.yes() && h.pdim_right.yes() && h.cone_perfect_bimodule.yes() && r.tensor_ok() && r.res_ok();
    Json d = {{"hypotheses", h.to_json()},
              {"tensor_ok", r.tensor_ok()},
              {"res_ok", r.res_ok()},
              {"tensor_gproj", r.to_json()["tensor_gproj"]},
              {"res_gproj", r.to_json()["res_gproj"]}};
    if (h.pdim_left.undetermined() || h.pdim_right.undetermined() || h.cone_perfect_bimodule.undetermined())
        return undetermined("a hypothesis was not decided", ctx.opt.bound, "--bound");
    return verdict(ok, d);
}

CheckOutcome check_fully_faithful(const FixtureFile::Check& c, Context& ctx) {
    need_args(c, 1, ctx);
    const auto& [h, r] = ctx.conclusions(c.args[0], c.line);
    (void)h;
    Json j = r.to_json();
    return verdict(r.fully_faithful_ok() && !r.fully_faithful.empty() == !r.source_dsg.objects.empty(),
                   {{"pairs", j["fully_faithful"]}, {"derived_shift", r.derived_shift}});
}

CheckOutcome check_buchweitz(const FixtureFile::Check& c, Context& ctx) {
    need_args(c, 1, ctx);
    const auto& en = ctx.enumeration(c.args[0], c.line);
    std::vector<const DsgObject*> g;
    for (const auto& o : en.objects) {
        GprojResult r = is_gorenstein_projective(o.rep, ctx.opt.bound, ctx.opt.seed);
        if (r.answer.undetermined()) return undetermined("Gorenstein projectivity not decided", ctx.opt.bound, "--bound");
        if (r.answer.yes()) g.push_back(&o);
    }
    bool ok = !g.empty();
    Json pairs = Json::array();
    for (const auto* x : g)
        for (const auto* y : g) {
            DsgHom h = dsg_hom(*x, *y, ctx.opt.seed);
            std::size_t s = stable_hom_dim(x->rep, y->rep);
            pairs.push_back({{"pair", {io::module_name(x->rep), io::module_name(y->rep)}}, {"dsg_hom", h.dim}, {"stable_hom", s}});
            ok = ok && h.answer.yes() && h.dim == s;
        }
    return verdict(ok, {{"pairs", pairs}});
}

CheckOutcome check_adjunction(const FixtureFile::Check& c, Context& ctx) {
    need_args(c, 1, ctx);
    const auto& f = ctx.mor(c.args[0], c.line).morphism;
    long count = io::eval_int(c.expected, ctx.params);
    Rng rng(ctx.opt.seed * 7919 + 17);
    long bad = 0;
    Json first_bad = nullptr;
    for (long i = 0; i < count; ++i) {
        Module m = random_module(f.source, rng, 8);
        Module n = random_module(f.target, rng, 8);
        std::size_t l1 = hom_dim(tensor_up(f, m), n), r1 = hom_dim(m, restrict(f, n));
        std::size_t l2 = hom_dim(restrict(f, n), m), r2 = hom_dim(n, hom_up(f, m));
        if (l1 != r1 || l2 != r2) {
            if (!bad) first_bad = {{"index", i}, {"M", dims_string(m)}, {"N", dims_string(n)}, {"dims", {l1, r1, l2, r2}}};
            ++bad;
        }
    }
    return verdict(bad == 0, {{"pairs", count}, {"failures", bad}, {"first_failure", first_bad}});
}

CheckOutcome check_gp_approximation(const FixtureFile::Check& c, Context& ctx) {
    need_args(c, 2, ctx);
    const auto& a = ctx.alg(c.args[0], c.line);
    Module m = ctx.module(a, c.args[1], c.line);
    Module want = ctx.module(a, c.expected, c.line);
    GpApprox g = gp_approximation(m, ctx.opt.bound, ctx.opt.seed);
    bool iso = g.fast.source.dims == want.dims && is_isomorphic(g.fast.source, want, ctx.opt.seed).answer.yes();
    if (g.answer.undetermined()) return undetermined("approximation not certified", ctx.opt.bound, "--bound");
    return verdict(g.answer.yes() && iso,
                   {{"source", io::module_name(g.fast.source)}, {"expected", io::module_name(want)}, {"paths_agree", g.paths_agree}});
}

CheckOutcome check_tower(const FixtureFile::Check& c, Context& ctx) {
    need_args(c, 2, ctx);
    const auto& a = ctx.alg(c.args[0], c.line);
    Module m = ctx.module(a, c.args[1], c.line);
    TowerOptions to;
    to.depth = ctx.opt.depth;
    to.window = ctx.opt.window;
    Complex t = projective_resolution_complex(m, ctx.opt.bound);
    Json d;
    bool ok = true;
    try {
        Tower reg = dual_bousfield_tower(t, regular_generators(a.alg), to);
        bool ml = true;
        for (const auto& ch : reg.chains) ml = ml && dual_ml_check(ch.maps).stabilizes;
        d["regular"] = {{"stages", reg.stages.size()}, {"ledger_entries", reg.ledger.size()}, {"ledger_zero", reg.ledger_zero()},
                        {"chains", reg.chains.size()}, {"dual_ml", ml}, {"escaped", reg.escaped.size()}, {"label", reg.label}};
        ok = reg.ledger_zero() && ml;

        auto gens = regular_generators(a.alg);
        for (auto& x : rho_dual_generators(a.alg, ctx.opt.bound)) gens.push_back(x);
        Tower both = dual_bousfield_tower(t, gens, to);
        GpApprox g = gp_approximation(m, ctx.opt.bound, ctx.opt.seed);
        ResidualApprox ra = residual_approximation(both, m, g.gproj.modules);
        bool iso = ra.approx.source.dims == g.fast.source.dims &&
                   is_isomorphic(ra.approx.source, g.fast.source, ctx.opt.seed).answer.yes();
        d["with_dual"] = {{"stages", both.stages.size()},
                          {"ledger_zero", both.ledger_zero()},
                          {"residual_cokernel", io::module_name(ra.cokernel)},
                          {"residual_approximation", io::module_name(ra.approx.source)},
                          {"gp_approximation", io::module_name(g.fast.source)},
                          {"right_approximation", ra.is_right_approximation},
                          {"iso", iso}};
        ok = ok && iso && ra.is_right_approximation;
    } catch (const WindowTooSmall& e) {
        return undetermined(e.what(), static_cast<std::size_t>(ctx.opt.window.second), "--window");
    }
    return verdict(ok, d);
}

using CheckFn = CheckOutcome (*)(const FixtureFile::Check&, Context&);
const std::map<std::string, CheckFn>& registry() {
    static const std::map<std::string, CheckFn> r = {
        {"adjunction", check_adjunction},         {"buchweitz", check_buchweitz},
        {"dsg", check_dsg},                       {"dsg_hom", check_dsg_hom},
        {"dsg_semisimple", check_dsg_semisimple}, {"fully_faithful", check_fully_faithful},
        {"gorenstein", check_gorenstein},         {"gp_approximation", check_gp_approximation},
        {"gproj", check_gproj},                   {"kernel", check_kernel},
        {"pdim", check_pdim},                     {"selfinjective", check_selfinjective},
        {"theorem_i", check_theorem_i},           {"tower", check_tower},
    };
    return r;
}

}  // namespace

FixtureFile parse_fixture(const std::string& text, const std::filesystem::path& path) {
    FixtureFile f;
    f.path = path;
    std::istringstream is(text);
    int no = 0;
    auto fail = [&](const std::string& msg) { return FileError(FileError::Kind::Syntax, path.string(), no, msg); };
    for (std::string raw; std::getline(is, raw);) {
        ++no;
        if (auto h = raw.find('#'); h != std::string::npos) raw.resize(h);
        std::string t = trim(raw);
        if (t.empty()) continue;
        auto sp = t.find_first_of(" \t");
        std::string kw = t.substr(0, sp), rest = sp == std::string::npos ? "" : trim(t.substr(sp));
        auto eq = rest.find('=');
        std::string lhs = trim(rest.substr(0, eq)), rhs = eq == std::string::npos ? "" : trim(rest.substr(eq + 1));
        if (kw == "fixture") {
            f.name = rest;
        } else if (kw == "param") {
            if (eq == std::string::npos) throw fail("expected 'param NAME = VALUE'");
            f.params.push_back({lhs, io::eval_int(rhs, {})});
        } else if (kw == "algebra" || kw == "morphism") {
            if (eq == std::string::npos || lhs.empty() || rhs.empty()) throw fail("expected '" + kw + " NAME = FILE'");
            f.refs.push_back({no, kw, lhs, rhs});
        } else if (kw == "check") {
            auto toks = split_ws(lhs);
            if (toks.empty()) throw fail("empty check");
            if (!registry().count(toks[0])) throw fail("unknown check '" + toks[0] + "'");
            f.checks.push_back({no, toks[0], std::vector<std::string>(toks.begin() + 1, toks.end()), rhs});
        } else {
            throw fail("unknown directive '" + kw + "'");
        }
    }
    return f;
}

std::pair<FixtureFile, io::Params> resolve_fixture(const std::string& name, const RunOptions& opt) {
    std::filesystem::path path;
    std::string arg;
    if (name.size() > 4 && name.substr(name.size() - 4) == ".fix") {
        path = name;
    } else {
        auto colon = name.find(':');
        path = opt.fixtures_dir / (name.substr(0, colon) + ".fix");
        if (colon != std::string::npos) arg = name.substr(colon + 1);
    }
    if (!std::filesystem::exists(path)) throw std::invalid_argument("unknown fixture '" + name + "' (no " + path.string() + ")");
    FixtureFile f = parse_fixture(io::read_file(path), path);
    io::Params p;
    for (const auto& [k, v] : f.params) p[k] = v;
    if (!arg.empty()) {
        if (f.params.empty()) throw std::invalid_argument("fixture '" + f.name + "' takes no parameter");
        p[f.params.front().first] = io::eval_int(arg, {});
    }
    for (const auto& [k, v] : opt.params) p[k] = v;
    return {f, p};
}

Json run_fixture(const FixtureFile& f, const io::Params& params, const RunOptions& opt) {
    Context ctx{f, params, opt, {}, {}, {}, {}};
    const auto dir = f.path.parent_path();
    for (const auto& r : f.refs) {
        if (r.kind == "algebra") ctx.algs[r.name] = io::load_algebra(dir / r.file, params);
        else ctx.mors[r.name] = io::load_morphism(dir / r.file, params);
    }
    Json p = Json::object();
    for (const auto& [k, v] : params) p[k] = v;
    Json checks = Json::array();
    for (const auto& c : f.checks) {
        auto t0 = std::chrono::steady_clock::now();
        CheckOutcome o;
        try {
            o = registry().at(c.kind)(c, ctx);
        } catch (const FileError&) {
            throw;
        } catch (const std::exception& e) {
            o = {"fail", {{"error", e.what()}}};
        }
        Json j = {{"line", c.line}, {"check", c.text()}, {"status", o.status}, {"detail", o.detail}};
        if (opt.timings) j["seconds"] = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        checks.push_back(j);
    }
    return {{"fixture", f.name}, {"file", f.path.filename().string()}, {"params", p}, {"prime", la::prime()}, {"checks", checks}};
}

Json algebra_report(const io::AlgebraFile& a) {
    const PathAlgebra& A = *a.alg;
    std::vector<std::size_t> by_len(A.loewy_length() + 1, 0);
    for (const auto& b : A.basis()) ++by_len[b.length];
    Json checks = Json::array();
    checks.push_back({{"check", "admissible"}, {"status", "pass"}, {"detail", {{"max_len", A.max_len()}, {"loewy_length", A.loewy_length()}}}});
    checks.push_back({{"check", "associative"}, {"status", A.check_associative() ? "pass" : "fail"}, {"detail", Json::object()}});
    checks.push_back({{"check", "unital"}, {"status", A.check_unital() ? "pass" : "fail"}, {"detail", Json::object()}});
    Json mods = Json::array();
    for (const auto& m : a.modules)
        mods.push_back({{"name", m.name}, {"dims", m.module.dims}, {"structure", io::module_name(m.module)}});
    Json pdims = Json::array(), vdims = Json::array();
    for (int v = 0; v < A.num_vertices(); ++v) vdims.push_back(projective(a.alg, v).total());
    return {{"algebra", a.name},
            {"prime", la::prime()},
            {"dim", A.dim()},
            {"vertices", A.quiver().vertices},
            {"arrows", A.quiver().num_arrows()},
            {"basis_by_length", by_len},
            {"projective_dims", vdims},
            {"fingerprint", A.fingerprint()},
            {"modules", mods},
            {"checks", checks}};
}

Json morphism_report(const io::MorphismFile& mf, const RunOptions& opt) {
    const auto& f = mf.morphism;
    HypothesisReport h = check_theoremI(f, opt.bound);
    ConclusionOptions co;
    co.seed = opt.seed;
    ConclusionReport r = verify_conclusions(f, h, opt.bound, co);
    auto listing = [&](const DsgEnumeration& en) {
        Json objs = Json::array();
        for (const auto& o : en.objects) objs.push_back(io::module_name(o.rep));
        Json grid = Json::array();
        for (const auto& x : en.objects) {
            Json row = Json::array();
            for (const auto& y : en.objects) {
                DsgHom d = dsg_hom(x, y, opt.seed);
                row.push_back(d.answer.undetermined() ? Json(nullptr) : Json(d.dim));
            }
            grid.push_back(row);
        }
        return Json{{"objects", objs}, {"dsg_hom", grid}, {"status", to_string(en.status)}, {"scope", en.scope}};
    };
    Json kernel = Json::array();
    for (auto k : r.kernel) kernel.push_back(io::module_name(r.target_dsg.objects[k].rep));
    const bool hyp = h.pdim_left.yes() && h.pdim_right.yes() && h.cone_perfect_bimodule.yes();
    Json checks = Json::array();
    auto add = [&](const char* name, bool ok, bool asserted) {
        checks.push_back({{"check", name}, {"status", !asserted ? "pass" : ok ? "pass" : "fail"}, {"asserted", asserted},
                          {"detail", {{"holds", ok}}}});
    };
    add("tensor_preserves_gproj", r.tensor_ok(), hyp);
    add("restriction_reaches_gproj", r.res_ok(), hyp);
    add("fully_faithful", r.fully_faithful_ok(), hyp);
    add("images_in_target_dsg", r.images_ok(), hyp);
    Json j = r.to_json();
    return {{"morphism", mf.name},
            {"source", mf.source.name},
            {"target", mf.target.name},
            {"prime", la::prime()},
            {"hypotheses", h.to_json()},
            {"hypotheses_hold", hyp},
            {"source_dsg", listing(r.source_dsg)},
            {"target_dsg", listing(r.target_dsg)},
            {"kernel_res", kernel},
            {"conclusions", j},
            {"checks", checks}};
}

Tally tally(const Json& j) {
    Tally t;
    if (j.is_object()) {
        if (j.contains("status") && j["status"].is_string() && j.contains("check")) {
            const std::string s = j["status"];
            if (s == "pass") ++t.pass;
            else if (s == "fail") ++t.fail;
            else ++t.undetermined;
            return t;
        }
        for (const auto& [k, v] : j.items()) {
            Tally u = tally(v);
            t.pass += u.pass, t.fail += u.fail, t.undetermined += u.undetermined;
        }
    } else if (j.is_array()) {
        for (const auto& v : j) {
            Tally u = tally(v);
            t.pass += u.pass, t.fail += u.fail, t.undetermined += u.undetermined;
        }
    }
    return t;
}

std::string text_summary(const Json& report) {
    std::ostringstream os;
    os << report["command"].get<std::string>() << "  (" << report["flags"].dump() << ")\n";
    for (const auto& run : report["runs"]) {
        os << "[p=" << run["prime"] << "] ";
        if (run.contains("fixture")) os << run["fixture"].get<std::string>() << " " << run["params"].dump();
        else if (run.contains("algebra")) os << "algebra " << run["algebra"].get<std::string>() << " dim " << run["dim"];
        else if (run.contains("morphism")) os << "morphism " << run["morphism"].get<std::string>();
        os << '\n';
        if (run.contains("kernel_res")) os << "  Ker(res) = " << run["kernel_res"].dump() << '\n';
        if (run.contains("target_dsg")) {
            os << "  Dsg(target) = " << run["target_dsg"]["objects"].dump() << ", hom " << run["target_dsg"]["dsg_hom"].dump() << '\n';
        }
        for (const auto& c : run["checks"]) {
            os << "  " << c["status"].get<std::string>() << "  " << c["check"].get<std::string>();
            if (c.contains("seconds")) os << "  (" << c["seconds"].get<double>() << " s)";
            os << '\n';
        }
    }
    Tally t = tally(report["runs"]);
    os << "passed " << t.pass << ", failed " << t.fail << ", undetermined " << t.undetermined << '\n';
    return os.str();
}

}  // namespace singcat::cli
