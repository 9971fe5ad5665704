#include "singcat/singularity.hpp"

#include <map>
#include <numeric>

namespace singcat {

namespace la = linalg;

ComplexResolution resolve_complex(const Complex& x) {
    const AlgebraPtr& alg = x.alg;
    ComplexResolution out;
    if (x.empty()) {
        out.proj = zero_complex(alg);
        out.to_x = zero_chain_map(out.proj, x);
        out.tail = zero_module(alg);
        out.tail_incl = zero_map(out.tail, out.tail);
        return out;
    }
    std::map<int, Module> P;
    std::map<int, ModuleMap> dP, g;
    auto Pt = [&](int i) { return P.count(i) ? P.at(i) : zero_module(alg); };
    auto dPt = [&](int i) { return dP.count(i) ? dP.at(i) : zero_map(Pt(i), Pt(i + 1)); };
    auto gt = [&](int i) { return g.count(i) ? g.at(i) : zero_map(Pt(i), x.term(i)); };

    for (int n = x.hi(); n >= x.lo; --n) {
        // C^n = P^{n+1} + X^n, Z = ker d_C^n
        std::vector<Module> cs{Pt(n + 1), x.term(n)};
        ModuleMap dc = grid_map(cs, {Pt(n + 2), x.term(n + 1)},
                                {{scale(dPt(n + 1), la::neg(1)), std::nullopt}, {gt(n + 1), x.diff(n)}}, alg);
        Sub z = kernel(dc);
        ModuleMap u = grid_map({x.term(n - 1)}, cs, {{std::nullopt}, {x.diff(n - 1)}}, alg);
        Quot q = cokernel(corestrict(u, z));
        Cover c = projective_cover(q.mod);
        ModuleMap h = compose(z.incl, lift_from_projective(c.proj, c.map, q.proj));
        auto pr = sum_projections(cs, dc.src);
        P[n] = c.proj.mod;
        dP[n] = scale(compose(pr[0], h), la::neg(1));
        g[n] = compose(pr[1], h);
    }
    Sub z = kernel(grid_map({Pt(x.lo)}, {Pt(x.lo + 1), x.term(x.lo)}, {{scale(dPt(x.lo), la::neg(1))}, {gt(x.lo)}}, alg));
    out.tail = z.mod;
    out.tail_incl = z.incl;

    std::vector<Module> terms;
    std::vector<ModuleMap> d, maps;
    for (int i = x.lo; i <= x.hi(); ++i) {
        terms.push_back(P[i]);
        if (i < x.hi()) d.push_back(dP[i]);
        maps.push_back(g[i]);
    }
    out.proj = make_complex(alg, x.lo, terms, d);
    out.to_x = ChainMap{out.proj, x, x.lo, maps};
    return out;
}

PerfectResult perfect_test(const Complex& x, std::size_t bound, std::uint64_t seed) {
    PerfectResult r;
    r.resolution = resolve_complex(x);
    r.tail = min_proj_resolution(r.resolution.tail, bound, seed);
    std::size_t nz = 0;
    for (const auto& t : r.resolution.proj.terms) nz += t.is_zero() ? 0 : 1;
    if (r.tail.answer.yes()) {
        int extra = r.resolution.tail.is_zero() ? 0 : r.tail.pdim + 1;
        r.answer = CertifiedAnswer::make(Verdict::Yes,
                                         {{"projective_terms", nz + extra}, {"tail_pdim", r.resolution.tail.is_zero() ? -1 : r.tail.pdim},
                                          {"lowest_degree", x.lo - extra}},
                                         r.tail.steps());
    } else if (r.tail.answer.no()) {
        r.answer = CertifiedAnswer::make(Verdict::No,
                                         {{"tail_dims", r.resolution.tail.dims},
                                          {"cycle", {{"lag", r.tail.lag}, {"period", r.tail.period}}}},
                                         r.tail.steps());
    } else {
        r.answer = CertifiedAnswer::make(Verdict::Undetermined, {{"reason", "tail resolution did not stabilise"}}, bound);
    }
    return r;
}

CertifiedAnswer is_perfect(const Complex& x, std::size_t bound, std::uint64_t seed) {
    return perfect_test(x, bound, seed).answer;
}

DsgObject make_dsg_object(const Module& m, std::size_t bound, std::uint64_t seed, std::string provenance) {
    return DsgObject{m, min_proj_resolution(m, bound, seed), std::move(provenance)};
}

ModuleMap syzygy_map(const ModuleMap& f, const Cover& cm, const ModuleMap& incl_m, const Cover& cn,
                     const ModuleMap& incl_n) {
    ModuleMap lift = lift_from_projective(cm.proj, compose(f, cm.map), cn.map);
    Sub kn{incl_n.src, incl_n};
    return corestrict(compose(lift, incl_m), kn);
}

namespace {

// f: syz_M[i] -> syz_N[i] at reduced level i, pushed one level up.
ModuleMap step(const ModuleMap& f, const Resolution& rm, const Resolution& rn, std::size_t i) {
    std::size_t a = rm.reduce(i), b = rn.reduce(i);
    ModuleMap h = syzygy_map(f, rm.covers[a], rm.incl[a], rn.covers[b], rn.incl[b]);
    if (static_cast<int>(a) + 1 == rm.lag + rm.period) h = compose(h, *rm.cycle_iso);
    if (static_cast<int>(b) + 1 == rn.lag + rn.period) h = compose(*inverse(*rn.cycle_iso), h);
    return h;
}

}  // namespace

DsgHom dsg_hom(const DsgObject& m, const DsgObject& n, std::uint64_t) {
    DsgHom out;
    if (m.perfect() || n.perfect()) {
        out.answer = CertifiedAnswer::make(Verdict::Yes, {{"dim", 0}, {"reason", "perfect object"}}, 0);
        return out;
    }
    if (m.res.answer.undetermined() || n.res.answer.undetermined()) {
        out.answer = CertifiedAnswer::make(Verdict::Undetermined, {{"reason", "syzygies did not stabilise"}},
                                           std::max(m.res.steps(), n.res.steps()));
        return out;
    }
    const Resolution& rm = m.res;
    const Resolution& rn = n.res;
    const std::size_t i0 = static_cast<std::size_t>(std::max(rm.lag, rn.lag));
    const int per = std::lcm(rm.period, rn.period);
    out.start_level = static_cast<int>(i0);
    out.period = per;
    for (int k = 0; k < per; ++k) out.level_dims.push_back(stable_hom_dim(rm.syzygy(i0 + k), rn.syzygy(i0 + k)));

    const Module& s = rm.syzygy(i0);
    const Module& t = rn.syzygy(i0);
    StableHom v = stable_hom(s, t);
    const std::size_t steps = (v.dim() + 1) * static_cast<std::size_t>(per);
    std::vector<ModuleMap> imgs;
    for (const auto& f0 : v.basis) {
        ModuleMap f = f0;
        for (std::size_t k = 0; k < steps; ++k) f = step(f, rm, rn, i0 + k);
        imgs.push_back(f);
    }
    Matrix ph = phom_vectors(s, t);
    std::size_t r0 = la::rank(ph);
    std::size_t dim = imgs.empty() ? 0 : la::rank(Matrix::hstack(ph, hom_matrix(imgs, s, t))) - r0;
    out.dim = dim;
    out.answer = CertifiedAnswer::make(Verdict::Yes,
                                       {{"dim", dim},
                                        {"start_level", i0},
                                        {"period", per},
                                        {"iterations", steps},
                                        {"level_dims", out.level_dims}},
                                       steps);
    return out;
}

std::size_t dsg_hom_dim(const Module& m, const Module& n, std::size_t bound, std::uint64_t seed) {
    DsgHom h = dsg_hom(make_dsg_object(m, bound, seed), make_dsg_object(n, bound, seed), seed);
    if (h.answer.undetermined()) throw std::runtime_error("dsg_hom_dim: undetermined");
    return h.dim;
}

std::vector<Module> seed_modules(const AlgebraPtr& alg, const SeedOptions& opt) {
    std::vector<Module> cand;
    const int nv = alg->num_vertices();
    if (opt.simples)
        for (int v = 0; v < nv; ++v) cand.push_back(simple(alg, v));
    if (opt.layers) {
        AlgebraPtr op = opposite(alg);
        for (int v = 0; v < nv; ++v) {
            Module p = projective(alg, v);
            Module pop = projective(op, v);
            for (int k = 1;; ++k) {
                Sub r = radical_power(p, k);
                Sub rop = radical_power(pop, k);
                if (r.mod.is_zero() && rop.mod.is_zero()) break;
                if (!r.mod.is_zero()) {
                    cand.push_back(quotient(p, radical_power_spaces(p, k)).mod);
                    cand.push_back(r.mod);
                }
                if (!rop.mod.is_zero()) cand.push_back(dual(quotient(pop, radical_power_spaces(pop, k)).mod, alg));
            }
        }
    }
    for (const auto& e : opt.extra) cand.push_back(e);
    std::vector<Module> out;
    for (const auto& c : cand) {
        if (c.is_zero()) continue;
        bool dup = false;
        for (const auto& o : out)
            if (o.dims == c.dims && is_isomorphic(o, c).answer.yes()) {
                dup = true;
                break;
            }
        if (!dup) out.push_back(c);
    }
    return out;
}

DsgEnumeration dsg_indecomposables(const AlgebraPtr& alg, const SeedOptions& opt, std::size_t bound,
                                   std::uint64_t seed) {
    DsgEnumeration out;
    auto seeds = seed_modules(alg, opt);
    for (std::size_t si = 0; si < seeds.size(); ++si) {
        Resolution r = min_proj_resolution(seeds[si], bound, seed);
        if (r.answer.yes()) continue;
        if (r.answer.undetermined()) {
            out.status = Verdict::Undetermined;
            continue;
        }
        for (int k = r.lag; k < r.lag + r.period; ++k) {
            Decomposition dec = decompose(r.syz[k], seed);
            if (dec.status != Verdict::Yes) out.status = Verdict::Undetermined;
            for (const auto& [part, mult] : dec.parts) {
                (void)mult;
                if (is_projective(part)) continue;
                bool dup = false;
                for (const auto& o : out.objects)
                    if (o.rep.dims == part.dims && is_isomorphic(o.rep, part, seed).answer.yes()) {
                        dup = true;
                        break;
                    }
                if (dup) continue;
                DsgObject obj = make_dsg_object(part, bound, seed,
                                                "seed " + std::to_string(si) + " " + dims_string(seeds[si]) + ", syzygy " +
                                                    std::to_string(k));
                if (obj.perfect()) continue;
                if (obj.res.answer.undetermined()) out.status = Verdict::Undetermined;
                out.objects.push_back(std::move(obj));
            }
        }
    }
    return out;
}

CertifiedAnswer is_gorenstein_algebra(const AlgebraPtr& alg, std::size_t bound) {
    const int nv = alg->num_vertices();
    Json w;
    w["pdim_injectives"] = Json::array();
    w["idim_projectives"] = Json::array();
    bool undetermined = false;
    int gdim = 0;
    std::size_t used = 0;
    auto record = [&](const Resolution& r, const char* key, int v) -> bool {
        used = std::max(used, r.steps());
        if (r.answer.no()) {
            w["infinite"] = {{"kind", key}, {"vertex", v}, {"cycle", {{"lag", r.lag}, {"period", r.period}}}};
            return true;
        }
        if (r.answer.undetermined()) {
            undetermined = true;
            w[key].push_back(nullptr);
        } else {
            w[key].push_back(r.pdim);
            gdim = std::max(gdim, r.pdim);
        }
        return false;
    };
    for (int v = 0; v < nv; ++v)
        if (record(min_proj_resolution(injective(alg, v), bound), "pdim_injectives", v))
            return CertifiedAnswer::make(Verdict::No, w, used);
    for (int v = 0; v < nv; ++v)
        if (record(min_inj_coresolution_dual(projective(alg, v), bound), "idim_projectives", v))
            return CertifiedAnswer::make(Verdict::No, w, used);
    if (undetermined) return CertifiedAnswer::make(Verdict::Undetermined, w, bound);
    w["gorenstein_dimension"] = gdim;
    return CertifiedAnswer::make(Verdict::Yes, w, used);
}

}  // namespace singcat
