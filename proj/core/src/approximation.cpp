#include "singcat/approximation.hpp"

#include <algorithm>
#include <map>
#include <tuple>

namespace singcat {

namespace la = linalg;

// ---- module approximations ----

RightApprox RightApprox::assemble(const Module& m, std::vector<Module> parts, std::vector<int> kinds,
                                  std::vector<ModuleMap> components) {
    RightApprox a;
    a.parts = std::move(parts);
    a.kinds = std::move(kinds);
    a.components = std::move(components);
    a.source = direct_sum(a.parts, m.alg);
    std::vector<std::optional<ModuleMap>> row;
    for (const auto& c : a.components) row.push_back(c);
    a.map = a.parts.empty() ? zero_map(a.source, m) : grid_map(a.parts, {m}, {row}, m.alg);
    return a;
}

RightApprox right_add_approximation(const Module& m, const std::vector<Module>& g) {
    std::vector<Module> parts;
    std::vector<int> kinds;
    std::vector<ModuleMap> comps;
    for (std::size_t i = 0; i < g.size(); ++i) {
        for (auto& phi : hom_basis(g[i], m)) {
            parts.push_back(g[i]);
            kinds.push_back(static_cast<int>(i));
            comps.push_back(std::move(phi));
        }
    }
    return RightApprox::assemble(m, std::move(parts), std::move(kinds), std::move(comps));
}

namespace {

// columns: phi_k o h for h in Hom(G_j, part_k)
Matrix through_part(const Module& gj, const Module& part, const ModuleMap& phi, const Module& m) {
    auto hb = hom_basis(gj, part);
    std::size_t len = 0;
    for (std::size_t v = 0; v < gj.dims.size(); ++v) len += gj.dims[v] * m.dims[v];
    if (hb.empty()) return Matrix(len, 0);
    std::vector<ModuleMap> c;
    for (const auto& h : hb) c.push_back(compose(phi, h));
    return hom_matrix(c, gj, m);
}

}  // namespace

RightApprox minimize_right_approximation(const RightApprox& a, const Module& m, const std::vector<Module>& g) {
    const std::size_t n = a.parts.size();
    std::vector<std::size_t> target(g.size());
    std::vector<std::vector<Matrix>> blocks(g.size(), std::vector<Matrix>(n));
    for (std::size_t j = 0; j < g.size(); ++j) {
        target[j] = hom_dim(g[j], m);
        for (std::size_t k = 0; k < n; ++k) blocks[j][k] = through_part(g[j], a.parts[k], a.components[k], m);
    }
    std::vector<bool> keep(n, true);
    auto onto = [&]() {
        for (std::size_t j = 0; j < g.size(); ++j) {
            if (!target[j]) continue;
            Matrix acc;
            bool first = true;
            for (std::size_t k = 0; k < n; ++k) {
                if (!keep[k]) continue;
                acc = first ? blocks[j][k] : Matrix::hstack(acc, blocks[j][k]);
                first = false;
            }
            if (first || la::rank(acc) < target[j]) return false;
        }
        return true;
    };
    for (std::size_t k = n; k-- > 0;) {
        keep[k] = false;
        if (!onto()) keep[k] = true;
    }
    std::vector<Module> parts;
    std::vector<int> kinds;
    std::vector<ModuleMap> comps;
    for (std::size_t k = 0; k < n; ++k) {
        if (!keep[k]) continue;
        parts.push_back(a.parts[k]);
        kinds.push_back(a.kinds[k]);
        comps.push_back(a.components[k]);
    }
    return RightApprox::assemble(m, std::move(parts), std::move(kinds), std::move(comps));
}

bool is_right_approximation(const ModuleMap& f, const std::vector<Module>& g) {
    for (const auto& gj : g) {
        auto target = hom_basis(gj, f.tgt);
        for (const auto& t : target)
            if (!factor_through_right(t, f)) return false;
    }
    return true;
}

std::optional<ModuleMap> splitting(const ModuleMap& f) { return factor_through_right(identity(f.tgt), f); }

GprojList enumerate_gproj(const AlgebraPtr& alg, std::size_t bound, std::uint64_t seed, bool layer_seeds) {
    GprojList out;
    for (int v = 0; v < alg->num_vertices(); ++v) {
        out.modules.push_back(projective(alg, v));
        out.certificates.push_back(CertifiedAnswer::make(Verdict::Yes, {{"reason", "projective"}, {"vertex", v}}));
    }
    out.num_projective = out.modules.size();
    SeedOptions so;
    so.layers = layer_seeds;
    DsgEnumeration en = dsg_indecomposables(alg, so, bound, seed);
    if (en.status != Verdict::Yes) throw NotEnumerable("enumerate_gproj: Dsg enumeration undetermined within bound");
    for (const auto& o : en.objects) {
        GprojResult r = is_gorenstein_projective(o.rep, bound, seed);
        if (r.answer.no()) continue;
        if (!r.answer.yes())
            throw NotEnumerable("enumerate_gproj: Gorenstein projectivity of " + dims_string(o.rep) + " undetermined");
        out.modules.push_back(o.rep);
        out.certificates.push_back(r.answer);
    }
    return out;
}

namespace {

ModuleMap generator_inclusion(const ProjModule& p, std::size_t t) {
    ProjModule q = projective(p.mod.alg, std::vector<int>{p.gens[t]});
    return from_projective(q, p.mod, {generator_images(p, identity(p.mod))[t]});
}

// phi: G -> M lifted along P^G -> G and rho M, degrees -depth..0 of the
// shifted complete resolution.
std::vector<ModuleMap> comparison(const Complex& cg, const ModuleMap& eps_g, const Complex& rm, const ModuleMap& eps_m,
                                  const ModuleMap& phi, int depth) {
    std::vector<ModuleMap> f;  // f[k] in degree -k
    auto lift = [&](const Module& src, const ModuleMap& g, const ModuleMap& pi) {
        Cover c = projective_cover(src);
        if (!is_iso_map(c.map)) throw std::logic_error("comparison: term is not projective");
        ModuleMap h = lift_from_projective(c.proj, compose(g, c.map), pi);
        return compose(h, *inverse(c.map));
    };
    f.push_back(lift(cg.term(0), compose(phi, eps_g), eps_m));
    for (int k = 1; k <= depth; ++k) {
        if (cg.term(-k).is_zero() || rm.term(-k).is_zero()) {
            f.push_back(zero_map(cg.term(-k), rm.term(-k)));
            continue;
        }
        f.push_back(lift(cg.term(-k), compose(f[k - 1], cg.diff(-k)), rm.diff(-k)));
    }
    return f;
}

Complex truncate(const Complex& x, int lo, int hi) {
    lo = std::max(lo, x.lo);
    hi = std::min(hi, x.hi());
    if (x.empty() || lo > hi) return zero_complex(x.alg);
    std::vector<Module> t;
    std::vector<ModuleMap> d;
    for (int i = lo; i <= hi; ++i) {
        t.push_back(x.term(i));
        if (i < hi) d.push_back(x.diff(i));
    }
    return make_complex(x.alg, lo, t, d);
}

}  // namespace

Module degree_zero_cokernel(const Complex& x) { return cokernel(x.diff(-1)).mod; }

GpApprox gp_approximation(const Module& m, std::size_t bound, std::uint64_t seed) {
    GpApprox out;
    const AlgebraPtr& alg = m.alg;
    out.gproj = enumerate_gproj(alg, bound, seed);
    const auto& G = out.gproj.modules;

    // fast path
    out.fast = minimize_right_approximation(right_add_approximation(m, G), m, G);

    // pipeline: X = sum of complete resolutions of G_i (P_0 in degree 0) with
    // the disk on P^M_0, mapped to rho M; then Cok in degree 0.
    Resolution rm_res = min_proj_resolution(m, bound, seed);
    const int depth = 2;
    if (rm_res.answer.undetermined()) throw NotEnumerable("gp_approximation: resolution of M did not stabilise");
    Complex rm = rm_res.answer.yes() ? rm_res.complex(std::min(depth, rm_res.pdim))
                                     : truncate(periodic_resolution(rm_res).unroll(depth, 0), -depth, 0);
    ModuleMap eps_m = rm_res.covers[0].map;

    std::vector<Module> parts;
    std::vector<int> kinds;
    std::vector<ModuleMap> comps;
    std::vector<Complex> pieces;
    Json used = Json::array();
    for (std::size_t i = out.gproj.num_projective; i < G.size(); ++i) {
        auto hb = hom_basis(G[i], m);
        if (hb.empty()) continue;
        GprojResult gr = is_gorenstein_projective(G[i], bound, seed);
        // P_k in degree -k, Q^0 in degree 1
        Complex cr = truncate(shift(gr.resolution->complex.unroll(2, 1), -1), -depth, 1);
        Quot q = cokernel(cr.diff(-1));
        auto hq = hom_basis(q.mod, m);
        for (const auto& phi : hq) {
            auto f = comparison(cr, q.proj, rm, eps_m, phi, depth);
            ChainMap alpha{truncate(cr, -depth, 0), rm, -depth, {}};
            for (int k = depth; k >= 0; --k) alpha.maps.push_back(f[k]);
            // degree 1 of rho M is zero, so only degrees <= 0 carry conditions
            if (!is_chain_map(alpha)) throw std::logic_error("gp_approximation: comparison map is not a chain map");
            auto a = factor_through_left(compose(eps_m, f[0]), q.proj);
            if (!a) throw std::logic_error("gp_approximation: no induced map on cokernels");
            parts.push_back(q.mod);
            kinds.push_back(static_cast<int>(i));
            comps.push_back(*a);
            pieces.push_back(cr);
        }
        used.push_back({{"gproj", i}, {"maps", hq.size()}});
    }
    // disk P^M_0 -id-> P^M_0 in degrees 0, 1: its Cok in degree 0 is P^M_0
    const ProjModule& p0 = rm_res.covers[0].proj;
    for (std::size_t t = 0; t < p0.gens.size(); ++t) {
        ModuleMap inc = generator_inclusion(p0, t);
        parts.push_back(inc.src);
        kinds.push_back(p0.gens[t]);
        comps.push_back(compose(eps_m, inc));
        pieces.push_back(make_complex(alg, 0, {inc.src, inc.src}, {identity(inc.src)}));
    }
    RightApprox pipe = RightApprox::assemble(m, parts, kinds, comps);
    Complex xsum = zero_complex(alg);
    for (const auto& pc : pieces) xsum = direct_sum(xsum, pc);
    out.pipeline_complex = xsum;
    bool pipe_is_approx = is_right_approximation(pipe.map, G);
    RightApprox pmin = minimize_right_approximation(pipe, m, G);
    out.pipeline_source = pmin.source;
    out.pipeline_map = pmin.map;

    auto iso = is_isomorphic(out.fast.source, out.pipeline_source, seed);
    out.paths_agree = iso.answer.yes();
    bool fast_ok = is_right_approximation(out.fast.map, G);
    std::vector<std::string> src_parts;
    for (int k : out.fast.kinds) src_parts.push_back(dims_string(G[k]));
    Json w = {{"gproj_count", G.size()},
              {"gproj_projective", out.gproj.num_projective},
              {"fast_source", dims_string(out.fast.source)},
              {"fast_parts", src_parts},
              {"fast_is_right_approximation", fast_ok},
              {"pipeline_source", dims_string(out.pipeline_source)},
              {"pipeline_unminimized_is_right_approximation", pipe_is_approx},
              {"pipeline_maps", used},
              {"paths_agree", out.paths_agree}};
    Verdict v = (fast_ok && pipe_is_approx && out.paths_agree) ? Verdict::Yes : Verdict::No;
    out.answer = CertifiedAnswer::make(v, w, bound);
    return out;
}

// ---- towers ----

namespace {

struct Object {
    int gen;
    int shift;
    Complex cx;
};

Complex sum_complex(const std::vector<Complex>& parts, const AlgebraPtr& alg) {
    int lo = 0, hi = -1;
    bool any = false;
    for (const auto& p : parts) {
        if (p.empty()) continue;
        if (!any) {
            lo = p.lo;
            hi = p.hi();
            any = true;
        } else {
            lo = std::min(lo, p.lo);
            hi = std::max(hi, p.hi());
        }
    }
    if (!any) return zero_complex(alg);
    std::vector<Module> terms;
    std::vector<ModuleMap> d;
    for (int i = lo; i <= hi; ++i) {
        std::vector<Module> a, b;
        for (const auto& p : parts) {
            a.push_back(p.term(i));
            b.push_back(p.term(i + 1));
        }
        terms.push_back(direct_sum(a, alg));
        if (i == hi) break;
        std::vector<std::vector<std::optional<ModuleMap>>> g(parts.size(), std::vector<std::optional<ModuleMap>>(parts.size()));
        for (std::size_t k = 0; k < parts.size(); ++k) g[k][k] = parts[k].diff(i);
        d.push_back(grid_map(a, b, g, alg));
    }
    return make_complex(alg, lo, terms, d);
}

// T -> sum of parts, componentwise
ChainMap into_sum(const Complex& t, const std::vector<Complex>& parts, const Complex& sum, const std::vector<ChainMap>& comps) {
    ChainMap f{t, sum, std::min(t.lo, sum.lo), {}};
    if (t.empty() || sum.empty()) return zero_chain_map(t, sum);
    int hi = std::max(t.hi(), sum.hi());
    for (int i = f.lo; i <= hi; ++i) {
        std::vector<Module> tg;
        std::vector<std::vector<std::optional<ModuleMap>>> g;
        for (std::size_t k = 0; k < parts.size(); ++k) {
            tg.push_back(parts[k].term(i));
            g.push_back({comps[k].at(i)});
        }
        f.maps.push_back(grid_map({t.term(i)}, tg, g, t.alg));
    }
    return f;
}

ChainMap from_sum(const std::vector<Complex>& parts, const Complex& sum, const Complex& t, const std::vector<ChainMap>& comps) {
    ChainMap f{sum, t, std::min(t.lo, sum.lo), {}};
    if (t.empty() || sum.empty()) return zero_chain_map(sum, t);
    int hi = std::max(t.hi(), sum.hi());
    for (int i = f.lo; i <= hi; ++i) {
        std::vector<Module> sg;
        std::vector<std::optional<ModuleMap>> row;
        for (std::size_t k = 0; k < parts.size(); ++k) {
            sg.push_back(parts[k].term(i));
            row.push_back(comps[k].at(i));
        }
        f.maps.push_back(grid_map(sg, {t.term(i)}, {row}, t.alg));
    }
    return f;
}

bool overlaps(const Complex& a, const Complex& b) {
    if (a.empty() || b.empty()) return false;
    return std::max(a.lo, b.lo) <= std::min(a.hi(), b.hi());
}

// scalar c with top(g) - c nilpotent in every degree
Scalar residue(const ChainMap& g) {
    const Complex& x = g.src;
    std::optional<Scalar> c;
    for (int i = x.lo; i <= x.hi(); ++i) {
        if (x.term(i).is_zero()) continue;
        Quot tp = top(x.term(i));
        Matrix a = induced_on_quotients(g.at(i), tp, tp).total();
        const std::size_t n = a.rows();
        std::optional<Scalar> found;
        for (Scalar s = 0; s < la::prime() && !found; ++s) {
            Matrix b = a - Matrix::identity(n).scaled(s);
            Matrix pw = b;
            for (std::size_t k = 1; k < n; ++k) pw = pw * b;
            if (pw.is_zero()) found = s;
        }
        if (!found) throw std::invalid_argument("tower generator: endomorphism ring is not split local");
        if (c && *c != *found) throw std::invalid_argument("tower generator: endomorphism ring is not local");
        c = found;
    }
    return c.value_or(0);
}

struct GenData {
    Complex cx;                  // minimal
    std::vector<ChainMap> rad;   // basis of rad End_K
};

GenData gen_data(const Complex& x) {
    GenData g{minimize_projective_complex(x).min, {}};
    HomKSpace e(g.cx, g.cx);
    if (e.dim() == 0) return g;
    Matrix chi(1, e.dim());
    for (std::size_t k = 0; k < e.dim(); ++k) chi(0, k) = residue(e.basis()[k]);
    Matrix ker = la::kernel_basis(chi);
    for (std::size_t c = 0; c < ker.cols(); ++c) g.rad.push_back(e.combine(ker.column_values(c)));
    return g;
}

// x ~ y for indecomposables with local endomorphism rings
bool iso_in_k(const GenData& x, const GenData& y) {
    if (!overlaps(x.cx, y.cx)) return false;
    HomKSpace a(x.cx, y.cx), b(y.cx, x.cx);
    for (const auto& f : a.basis())
        for (const auto& g : b.basis())
            if (residue(compose(g, f)) != 0) return true;
    return false;
}

ChainMap shift_map(const ChainMap& f, int s) { return shift(f, s); }

class TowerEngine {
public:
    TowerEngine(const std::vector<Complex>& x, const TowerOptions& opt, TowerDirection dir, Tower& tower)
        : opt_(opt), dir_(dir), tower_(tower) {
        for (std::size_t i = 0; i < x.size(); ++i) {
            GenData g = gen_data(x[i]);
            int dup = -1;
            for (std::size_t j = 0; j < gens_.size(); ++j)
                if (iso_in_k(gens_[j], g)) {
                    dup = gen_index_[j];
                    break;
                }
            tower_.duplicate_of.push_back(dup);
            if (dup >= 0 || g.cx.empty()) continue;
            gens_.push_back(std::move(g));
            gen_index_.push_back(static_cast<int>(i));
        }
        for (std::size_t g = 0; g < gens_.size(); ++g)
            for (int s = opt.window.first; s <= opt.window.second; ++s)
                objects_.push_back({static_cast<int>(g), s, shift(gens_[g].cx, s)});
    }

    const std::vector<Object>& objects() const { return objects_; }
    int original(int g) const { return gen_index_[g]; }

    // radical maps o' -> o
    const std::vector<ChainMap>& rad(std::size_t from, std::size_t to) {
        auto key = std::make_pair(from, to);
        auto it = rad_.find(key);
        if (it != rad_.end()) return it->second;
        std::vector<ChainMap> r;
        const Object& a = objects_[from];
        const Object& b = objects_[to];
        if (from == to) {
            for (const auto& g : gens_[a.gen].rad) r.push_back(shift_map(g, a.shift));
        } else if (overlaps(a.cx, b.cx)) {
            r = HomKSpace(a.cx, b.cx).basis();
        }
        return rad_.emplace(key, std::move(r)).first->second;
    }

    HomKSpace hom(const Complex& t, std::size_t o) const {
        return dir_ == TowerDirection::Lim ? HomKSpace(t, objects_[o].cx) : HomKSpace(objects_[o].cx, t);
    }

    // Out-of-window Homs: an error for the input, recorded afterwards.
    void check_window(const Complex& t, int stage, std::vector<LedgerEntry>& escaped) const {
        if (t.empty()) return;
        for (std::size_t g = 0; g < gens_.size(); ++g) {
            const Complex& x = gens_[g].cx;
            // X[s] meets [t.lo, t.hi] when x.lo - s <= t.hi and x.hi - s >= t.lo
            for (int s = x.lo - t.hi(); s <= x.hi() - t.lo; ++s) {
                if (s >= opt_.window.first && s <= opt_.window.second) continue;
                Complex xs = shift(x, s);
                std::size_t dim = dir_ == TowerDirection::Lim ? hom_k_dim(t, xs) : hom_k_dim(xs, t);
                if (!dim) continue;
                if (stage == 0)
                    throw WindowTooSmall("tower input: generator " + std::to_string(gen_index_[g]) + " needed at shift " +
                                             std::to_string(s) + " outside the window; raise --window",
                                         stage, gen_index_[g], s);
                escaped.push_back({stage, gen_index_[g], s, dim, 0});
            }
        }
    }

private:
    TowerOptions opt_;
    TowerDirection dir_;
    Tower& tower_;
    std::vector<GenData> gens_;
    std::vector<int> gen_index_;
    std::vector<Object> objects_;
    std::map<std::pair<std::size_t, std::size_t>, std::vector<ChainMap>> rad_;
};

Matrix coords_matrix(const HomKSpace& h, const std::vector<ChainMap>& maps) {
    Matrix m(h.dim(), maps.size());
    for (std::size_t c = 0; c < maps.size(); ++c) {
        auto v = h.coords(maps[c]);
        for (std::size_t r = 0; r < v.size(); ++r) m(r, c) = v[r];
    }
    return m;
}

Tower run_tower(const Complex& t0, const std::vector<Complex>& x, const TowerOptions& opt, TowerDirection dir) {
    Tower tower;
    tower.direction = dir;
    tower.depth = opt.depth;
    tower.window = opt.window;
    TowerEngine eng(x, opt, dir, tower);
    const auto& objs = eng.objects();
    const AlgebraPtr& alg = t0.alg;
    const bool lim = dir == TowerDirection::Lim;

    MinimalComplex m0 = minimize_projective_complex(t0);
    Complex t = m0.min;
    tower.input_map = m0.incl;
    std::map<std::size_t, std::size_t> chain_of;  // object -> index into tower.chains
    for (int j = 0;; ++j) {
        eng.check_window(t, j, tower.escaped);
        TowerStage st;
        st.object = t;
        std::vector<HomKSpace> h;
        bool all_zero = true;
        for (std::size_t o = 0; o < objs.size(); ++o) {
            h.push_back(overlaps(t, objs[o].cx) ? eng.hom(t, o) : HomKSpace(zero_complex(alg), objs[o].cx));
            if (h.back().dim()) all_zero = false;
        }
        if (all_zero) tower.stabilized = true;
        if (j == opt.depth || all_zero) {
            for (std::size_t o = 0; o < objs.size(); ++o)
                if (h[o].dim()) tower.ledger.push_back({j, eng.original(objs[o].gen), objs[o].shift, h[o].dim(), 0});
            tower.stages.push_back(std::move(st));
            break;
        }
        // generators of Hom(T, o) modulo radical maps
        std::vector<Complex> parts;
        std::vector<ChainMap> comps;
        for (std::size_t o = 0; o < objs.size(); ++o) {
            st.multiplicities.push_back(0);
            if (!h[o].dim()) continue;
            std::vector<ChainMap> radmaps;
            for (std::size_t o2 = 0; o2 < objs.size(); ++o2) {
                if (!h[o2].dim()) continue;
                const auto& r = lim ? eng.rad(o2, o) : eng.rad(o, o2);
                for (const auto& g : r)
                    for (const auto& b : h[o2].basis()) radmaps.push_back(lim ? compose(g, b) : compose(b, g));
            }
            Matrix rv = radmaps.empty() ? Matrix(h[o].dim(), 0) : la::image_basis(coords_matrix(h[o], radmaps));
            Matrix comp = la::complement_basis(rv, h[o].dim());
            for (std::size_t c = 0; c < comp.cols(); ++c) {
                parts.push_back(objs[o].cx);
                comps.push_back(h[o].combine(comp.column_values(c)));
            }
            st.multiplicities.back() = comp.cols();
        }
        Complex y = sum_complex(parts, alg);
        ChainMap f = lim ? into_sum(t, parts, y, comps) : from_sum(parts, y, t, comps);
        if (!is_chain_map(f)) throw std::logic_error("tower: approximation is not a chain map");
        if (opt.check_approximations) {
            for (std::size_t o = 0; o < objs.size(); ++o) {
                if (!h[o].dim()) continue;
                HomKSpace hy = lim ? HomKSpace(y, objs[o].cx) : HomKSpace(objs[o].cx, y);
                std::vector<ChainMap> pulled;
                for (const auto& b : hy.basis()) pulled.push_back(lim ? compose(b, f) : compose(f, b));
                std::size_t r = pulled.empty() ? 0 : la::rank(coords_matrix(h[o], pulled));
                if (r != h[o].dim()) throw std::logic_error("tower: approximation not Hom-surjective");
            }
            st.approximation_checked = true;
        }
        // next object and the transition map
        Complex next;
        ChainMap trans;
        if (lim) {
            Complex c = shift(cone(f), -1);  // T^i + Y^{i-1}
            ChainMap pr{c, t, c.lo, {}};
            for (int i = c.lo; i <= c.hi(); ++i) pr.maps.push_back(sum_projections({t.term(i), y.term(i - 1)}, c.term(i))[0]);
            MinimalComplex mc = minimize_projective_complex(c);
            next = mc.min;
            trans = compose(pr, mc.incl);
        } else {
            Complex c = cone(f);  // Y^{i+1} + T^i
            ChainMap in{t, c, c.lo, {}};
            for (int i = c.lo; i <= c.hi(); ++i) in.maps.push_back(sum_inclusions({y.term(i + 1), t.term(i)}, c.term(i))[1]);
            MinimalComplex mc = minimize_projective_complex(c);
            next = mc.min;
            trans = compose(mc.proj, in);
        }
        st.approx = y;
        st.approx_map = f;
        st.transition = trans;
        // ledger: Hom(T_j, o) -> Hom(T_{j+1}, o), or Hom(o, T_j) -> Hom(o, T_{j+1})
        for (std::size_t o = 0; o < objs.size(); ++o) {
            HomKSpace hn = overlaps(next, objs[o].cx) ? eng.hom(next, o)
                                                      : (lim ? HomKSpace(zero_complex(alg), objs[o].cx)
                                                             : HomKSpace(objs[o].cx, zero_complex(alg)));
            if (!h[o].dim() && !hn.dim()) continue;
            std::vector<ChainMap> moved;
            for (const auto& b : h[o].basis()) moved.push_back(lim ? compose(b, trans) : compose(trans, b));
            Matrix mm(hn.dim(), h[o].dim());
            if (hn.dim() && !moved.empty()) mm = coords_matrix(hn, moved);
            std::size_t rk = mm.empty() ? 0 : la::rank(mm);
            tower.ledger.push_back({j, eng.original(objs[o].gen), objs[o].shift, h[o].dim(), rk});
            auto it = chain_of.find(o);
            if (it == chain_of.end()) {
                HomChain hc{eng.original(objs[o].gen), objs[o].shift, {}};
                // zero maps for the stages before this object appeared
                for (int k = 0; k < j; ++k) hc.maps.push_back(Matrix(0, 0));
                tower.chains.push_back(hc);
                it = chain_of.emplace(o, tower.chains.size() - 1).first;
            }
            auto& maps = tower.chains[it->second].maps;
            while (static_cast<int>(maps.size()) < j) maps.push_back(Matrix(0, 0));
            maps.push_back(mm);
        }
        tower.stages.push_back(std::move(st));
        t = next;
    }
    // pad chains with the right shapes
    for (auto& hc : tower.chains) {
        std::size_t prev_rows = 0;
        for (auto& m : hc.maps) {
            if (m.rows() == 0 && m.cols() == 0 && prev_rows) m = Matrix(0, prev_rows);
            prev_rows = m.rows();
        }
    }
    return tower;
}

}  // namespace

Tower dual_bousfield_tower(const Complex& t, const std::vector<Complex>& x, const TowerOptions& opt) {
    return run_tower(t, x, opt, TowerDirection::Lim);
}

Tower bousfield_tower(const Complex& t, const std::vector<Complex>& x, const TowerOptions& opt) {
    return run_tower(t, x, opt, TowerDirection::Colim);
}

ChainMap Tower::residual_map() const {
    ChainMap f = identity(stages.back().object);
    for (std::size_t k = stages.size() - 1; k-- > 0;) f = compose(stages[k].transition, f);
    return compose(input_map, f);
}

ResidualApprox residual_approximation(const Tower& t, const Module& m, const std::vector<Module>& g) {
    if (t.direction != TowerDirection::Lim) throw std::invalid_argument("residual_approximation: needs a lim tower");
    ResidualApprox out;
    const ChainMap f = t.residual_map();
    const Complex& in = f.tgt;
    Quot qm = cokernel(in.diff(-1));
    auto iso = is_isomorphic(qm.mod, m);
    if (!iso.answer.yes()) throw std::invalid_argument("residual_approximation: tower input is not a resolution of M");
    ModuleMap eps = compose(*iso.iso, qm.proj);  // input^0 ->> M
    Quot qr = cokernel(t.residual().diff(-1));
    out.cokernel = qr.mod;
    std::vector<Module> parts;
    std::vector<int> kinds;
    std::vector<ModuleMap> comps;
    if (!qr.mod.is_zero()) {
        auto a = factor_through_left(compose(eps, f.at(0)), qr.proj);
        if (!a) throw std::logic_error("residual_approximation: no induced map on cokernels");
        parts.push_back(qr.mod);
        kinds.push_back(-1);
        comps.push_back(*a);
    }
    Cover c = projective_cover(in.term(0));
    if (!is_iso_map(c.map)) throw std::invalid_argument("residual_approximation: degree 0 of the input is not projective");
    for (std::size_t k = 0; k < c.proj.gens.size(); ++k) {
        ModuleMap inc = compose(c.map, generator_inclusion(c.proj, k));
        parts.push_back(inc.src);
        kinds.push_back(-1);
        comps.push_back(compose(eps, inc));
    }
    RightApprox raw = RightApprox::assemble(m, parts, kinds, comps);
    out.is_right_approximation = is_right_approximation(raw.map, g);
    out.approx = minimize_right_approximation(raw, m, g);
    return out;
}

bool Tower::ledger_zero() const {
    return std::all_of(ledger.begin(), ledger.end(), [](const LedgerEntry& e) { return e.composite_rank == 0; });
}

Json Tower::to_json() const {
    Json j;
    j["label"] = label;
    j["direction"] = direction == TowerDirection::Lim ? "lim" : "colim";
    j["depth"] = depth;
    j["window"] = {window.first, window.second};
    j["stabilized"] = stabilized;
    j["duplicate_of"] = duplicate_of;
    Json st = Json::array();
    for (std::size_t k = 0; k < stages.size(); ++k) {
        const auto& s = stages[k];
        Json e;
        e["stage"] = k;
        e["object"] = complex_to_json(s.object);
        e["multiplicities"] = s.multiplicities;
        e["approximation_checked"] = s.approximation_checked;
        st.push_back(e);
    }
    j["stages"] = st;
    Json led = Json::array();
    for (const auto& e : ledger)
        led.push_back({{"stage", e.stage},
                       {"generator", e.generator},
                       {"shift", e.shift},
                       {"hom_dim", e.hom_dim},
                       {"composite_rank", e.composite_rank}});
    j["ledger"] = led;
    j["ledger_zero"] = ledger_zero();
    Json esc = Json::array();
    for (const auto& e : escaped) esc.push_back({{"stage", e.stage}, {"generator", e.generator}, {"shift", e.shift}, {"hom_dim", e.hom_dim}});
    j["escaped"] = esc;
    return j;
}

std::vector<Complex> regular_generators(const AlgebraPtr& alg) {
    std::vector<Complex> out;
    for (int v = 0; v < alg->num_vertices(); ++v) out.push_back(stalk(projective(alg, v), 0));
    return out;
}

Complex projective_resolution_complex(const Module& m, std::size_t bound) {
    Resolution r = min_proj_resolution(m, bound);
    if (!r.answer.yes()) throw PdimExceeded("projective_resolution_complex: resolution of " + dims_string(m) + " is not finite");
    return r.complex(static_cast<std::size_t>(r.pdim));
}

std::vector<Complex> rho_dual_generators(const AlgebraPtr& alg, std::size_t bound) {
    std::vector<Complex> out;
    for (int v = 0; v < alg->num_vertices(); ++v) out.push_back(projective_resolution_complex(injective(alg, v), bound));
    return out;
}

DualMLResult dual_ml_check(const std::vector<Matrix>& seq) {
    DualMLResult r;
    for (std::size_t i = 0; i + 1 < seq.size(); ++i)
        if (seq[i + 1].cols() != seq[i].rows()) {
            r.composable = false;
            r.stabilizes = false;
            return r;
        }
    for (std::size_t i = 0; i < seq.size(); ++i) {
        const std::size_t a = seq[i].cols();
        std::vector<std::size_t> kd{0};
        Matrix comp = Matrix::identity(a);
        for (std::size_t k = i; k < seq.size(); ++k) {
            comp = seq[k] * comp;
            kd.push_back(a - la::rank(comp));
        }
        const std::size_t last = kd.size() - 1;
        std::size_t idx = last;
        while (idx > 0 && kd[idx - 1] == kd[last]) --idx;
        int res = (idx < last || kd[last] == a) ? static_cast<int>(idx) : -1;
        r.per_start.push_back(res);
        if (res < 0)
            r.stabilizes = false;
        else
            r.index = std::max(r.index, res);
    }
    return r;
}

}  // namespace singcat
