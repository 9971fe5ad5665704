#include "singcat/change_of_rings.hpp"

#include <algorithm>
#include <map>

namespace singcat {

namespace la = linalg;

// ---------------------------------------------------------------- morphisms

Element AlgebraMorphism::basis_image(std::size_t b) const {
    const auto& A = *source;
    const auto& G = *target;
    const BasisElement& be = A.basis(b);
    if (be.word.empty()) {
        Element e = G.zero();
        for (int v : vertex_images[be.source]) e = G.add(e, G.vertex_element(v));
        return e;
    }
    Element e = arrow_images[be.word[0]];
    for (std::size_t i = 1; i < be.word.size(); ++i) e = G.multiply(e, arrow_images[be.word[i]]);
    return e;
}

Element AlgebraMorphism::apply(const Element& x) const {
    const auto& G = *target;
    Element out = G.zero();
    for (std::size_t b = 0; b < x.size(); ++b)
        if (x[b]) out = G.add(out, G.scale(basis_image(b), x[b]));
    return out;
}

int AlgebraMorphism::vertex_of(int tv) const {
    for (std::size_t i = 0; i < vertex_images.size(); ++i)
        if (std::find(vertex_images[i].begin(), vertex_images[i].end(), tv) != vertex_images[i].end()) return static_cast<int>(i);
    return -1;
}

AlgebraMorphism make_morphism(const AlgebraPtr& source, const AlgebraPtr& target, std::vector<std::vector<int>> vimg,
                              std::vector<Element> aimg, std::string name) {
    const auto& A = *source;
    const auto& G = *target;
    if (static_cast<int>(vimg.size()) != A.num_vertices())
        throw MorphismError(MorphismError::Kind::NotUnital, "vertex image count differs from source vertex count");
    std::vector<int> seen(G.num_vertices(), 0);
    for (auto& s : vimg) {
        std::sort(s.begin(), s.end());
        for (int v : s) {
            if (v < 0 || v >= G.num_vertices()) throw MorphismError(MorphismError::Kind::NotUnital, "vertex image out of range");
            ++seen[v];
        }
    }
    for (int v = 0; v < G.num_vertices(); ++v)
        if (seen[v] != 1)
            throw MorphismError(MorphismError::Kind::NotUnital,
                                "target vertex " + G.quiver().vertices[v] + (seen[v] ? " hit twice" : " not covered"));
    if (static_cast<int>(aimg.size()) != A.quiver().num_arrows())
        throw MorphismError(MorphismError::Kind::EndpointMismatch, "arrow image count differs from source arrow count");
    for (int a = 0; a < A.quiver().num_arrows(); ++a) {
        const Arrow& ar = A.quiver().arrows[a];
        if (aimg[a].size() != G.dim()) throw MorphismError(MorphismError::Kind::EndpointMismatch, "arrow image has wrong length");
        const auto& T = vimg[ar.target];
        const auto& S = vimg[ar.source];
        for (std::size_t b = 0; b < G.dim(); ++b) {
            if (!aimg[a][b]) continue;
            const BasisElement& be = G.basis(b);
            bool ok = std::binary_search(T.begin(), T.end(), be.target) && std::binary_search(S.begin(), S.end(), be.source);
            if (!ok)
                throw MorphismError(MorphismError::Kind::EndpointMismatch,
                                    "image of arrow " + ar.label + " leaves f(e_t) Gamma f(e_s)");
        }
    }
    AlgebraMorphism f{source, target, std::move(vimg), std::move(aimg), std::move(name)};
    for (std::size_t r = 0; r < A.relations().size(); ++r) {
        Element acc = G.zero();
        for (const auto& t : A.relations()[r].terms) {
            if (t.word.empty()) continue;
            Element e = f.arrow_images[t.word[0]];
            for (std::size_t i = 1; i < t.word.size(); ++i) e = G.multiply(e, f.arrow_images[t.word[i]]);
            acc = G.add(acc, G.scale(e, t.coeff));
        }
        if (std::any_of(acc.begin(), acc.end(), [](Scalar s) { return s != 0; }))
            throw MorphismError(MorphismError::Kind::RelationNotPreserved, "relation " + std::to_string(r + 1) + " does not map to 0");
    }
    return f;
}

AlgebraMorphism inclusion_morphism(const AlgebraPtr& source, const AlgebraPtr& target, std::string name) {
    const auto& qs = source->quiver();
    const auto& qt = target->quiver();
    std::vector<std::vector<int>> vimg;
    for (const auto& v : qs.vertices) {
        int t = qt.vertex_index(v);
        if (t < 0) throw MorphismError(MorphismError::Kind::AlgebraMismatch, "vertex " + v + " missing in target");
        vimg.push_back({t});
    }
    std::vector<Element> aimg;
    for (const auto& a : qs.arrows) {
        int t = qt.arrow_index(a.label);
        if (t < 0) throw MorphismError(MorphismError::Kind::AlgebraMismatch, "arrow " + a.label + " missing in target");
        aimg.push_back(target->arrow_element(t));
    }
    return make_morphism(source, target, std::move(vimg), std::move(aimg), std::move(name));
}

AlgebraMorphism identity_morphism(const AlgebraPtr& a) {
    std::vector<std::vector<int>> vimg;
    for (int v = 0; v < a->num_vertices(); ++v) vimg.push_back({v});
    std::vector<Element> aimg;
    for (int x = 0; x < a->quiver().num_arrows(); ++x) aimg.push_back(a->arrow_element(x));
    return AlgebraMorphism{a, a, vimg, aimg, "id"};
}

AlgebraMorphism compose(const AlgebraMorphism& g, const AlgebraMorphism& f) {
    if (!same_algebra(f.target, g.source)) throw MorphismError(MorphismError::Kind::AlgebraMismatch, "compose: algebras differ");
    std::vector<std::vector<int>> vimg;
    for (const auto& s : f.vertex_images) {
        std::vector<int> u;
        for (int v : s) u.insert(u.end(), g.vertex_images[v].begin(), g.vertex_images[v].end());
        std::sort(u.begin(), u.end());
        vimg.push_back(u);
    }
    std::vector<Element> aimg;
    for (const auto& x : f.arrow_images) aimg.push_back(g.apply(x));
    return AlgebraMorphism{f.source, g.target, vimg, aimg, g.name + "*" + f.name};
}

AlgebraMorphism opposite(const AlgebraMorphism& f) {
    // opposite algebras keep basis and arrow indices
    return AlgebraMorphism{opposite(f.source), opposite(f.target), f.vertex_images, f.arrow_images, f.name + "^op"};
}

// ---------------------------------------------------------------- restriction

namespace {

// offsets of target vertices inside the regrouped component of their source vertex
struct Regroup {
    std::vector<std::size_t> dims;
    std::vector<std::size_t> off;  // per target vertex
};

Regroup regroup(const AlgebraMorphism& f, const std::vector<std::size_t>& tdims) {
    Regroup r;
    r.off.assign(tdims.size(), 0);
    for (const auto& s : f.vertex_images) {
        std::size_t o = 0;
        for (int v : s) {
            r.off[v] = o;
            o += tdims[v];
        }
        r.dims.push_back(o);
    }
    return r;
}

std::optional<std::vector<Scalar>> coords(const Matrix& basis, const std::vector<Scalar>& v) {
    auto x = la::solve(basis, Matrix::column_vector(v));
    if (!x) return std::nullopt;
    return x->column_values(0);
}

}  // namespace

Module restrict(const AlgebraMorphism& f, const Module& n) {
    if (!same_algebra(n.alg, f.target)) throw MorphismError(MorphismError::Kind::AlgebraMismatch, "restrict: module not over target");
    const auto& A = *f.source;
    Regroup rg = regroup(f, n.dims);
    Module m{f.source, rg.dims, {}};
    for (int a = 0; a < A.quiver().num_arrows(); ++a) {
        const Arrow& ar = A.quiver().arrows[a];
        Matrix x(m.dims[ar.source], m.dims[ar.target]);
        for (int u : f.vertex_images[ar.source])
            for (int v : f.vertex_images[ar.target]) {
                if (!n.dims[u] || !n.dims[v]) continue;
                Matrix b = element_block(n, f.arrow_images[a], v, u);
                if (!b.is_zero()) x.set_block(rg.off[u], rg.off[v], b);
            }
        m.act.push_back(std::move(x));
    }
    return m;
}

ModuleMap restrict(const AlgebraMorphism& f, const ModuleMap& g) {
    Module s = restrict(f, g.src), t = restrict(f, g.tgt);
    ModuleMap h = zero_map(s, t);
    Regroup rs = regroup(f, g.src.dims), rt = regroup(f, g.tgt.dims);
    for (std::size_t i = 0; i < f.vertex_images.size(); ++i)
        for (int v : f.vertex_images[i])
            if (g.blocks[v].rows() && g.blocks[v].cols()) h.blocks[i].set_block(rt.off[v], rs.off[v], g.blocks[v]);
    return h;
}

// ---------------------------------------------------------------- tensor

Presentation presentation(const Module& m) {
    Presentation p;
    p.c0 = projective_cover(m);
    Sub k = kernel(p.c0.map);
    p.c1 = projective_cover(k.mod);
    p.d = compose(k.incl, p.c1.map);
    return p;
}

ProjModule tensor_up(const AlgebraMorphism& f, const ProjModule& p) {
    std::vector<int> gens;
    for (int g : p.gens) gens.insert(gens.end(), f.vertex_images[g].begin(), f.vertex_images[g].end());
    return projective(f.target, gens);
}

ProjMapImage tensor_up(const AlgebraMorphism& f, const ProjModule& src, const ProjModule& tgt, const ModuleMap& h) {
    ProjMapImage out{tensor_up(f, src), tensor_up(f, tgt), {}};
    ElementMatrix e = projective_entries(src, tgt, h);
    // entry (r, c) lives in e_{g_r} Lambda e_{g_c}; its image fills every (u, w) block
    ElementMatrix big(out.tgt.gens.size(), std::vector<Element>(out.src.gens.size(), f.target->zero()));
    std::size_t R = 0;
    for (std::size_t r = 0; r < tgt.gens.size(); ++r) {
        std::size_t nr = f.vertex_images[tgt.gens[r]].size();
        std::size_t C = 0;
        for (std::size_t c = 0; c < src.gens.size(); ++c) {
            std::size_t nc = f.vertex_images[src.gens[c]].size();
            Element x = f.apply(e[r][c]);
            for (std::size_t i = 0; i < nr; ++i)
                for (std::size_t j = 0; j < nc; ++j) big[R + i][C + j] = x;
            C += nc;
        }
        R += nr;
    }
    out.map = projective_map(out.src, out.tgt, big);
    return out;
}

TensorResult tensor_up_data(const AlgebraMorphism& f, const Module& m) {
    TensorResult t;
    t.pres = presentation(m);
    ProjMapImage d = tensor_up(f, t.pres.c1.proj, t.pres.c0.proj, t.pres.d);
    t.quot = cokernel(d.map);
    t.mod = t.quot.mod;
    return t;
}

Module tensor_up(const AlgebraMorphism& f, const Module& m) { return tensor_up_data(f, m).mod; }

ModuleMap tensor_up(const AlgebraMorphism& f, const ModuleMap& h) {
    TensorResult a = tensor_up_data(f, h.src), b = tensor_up_data(f, h.tgt);
    ModuleMap g0 = lift_from_projective(a.pres.c0.proj, compose(h, a.pres.c0.map), b.pres.c0.map);
    ProjMapImage tg = tensor_up(f, a.pres.c0.proj, b.pres.c0.proj, g0);
    return induced_on_quotients(tg.map, a.quot, b.quot);
}

std::vector<std::size_t> tor_dims(const AlgebraMorphism& f, const Module& m, std::size_t upto) {
    // explicit resolution P_0 .. P_{upto+1}
    std::vector<Cover> cov;
    std::vector<ModuleMap> incl;
    Module cur = m;
    for (std::size_t k = 0; k <= upto + 1; ++k) {
        cov.push_back(projective_cover(cur));
        Sub ker = kernel(cov.back().map);
        incl.push_back(ker.incl);
        cur = ker.mod;
    }
    // T(d_k): T(P_k) -> T(P_{k-1})
    std::vector<std::size_t> rk(upto + 3, 0), tot(upto + 2, 0);
    for (std::size_t k = 0; k <= upto + 1; ++k) tot[k] = tensor_up(f, cov[k].proj).mod.total();
    for (std::size_t k = 1; k <= upto + 1; ++k) {
        ModuleMap d = compose(incl[k - 1], cov[k].map);
        ProjMapImage t = tensor_up(f, cov[k].proj, cov[k - 1].proj, d);
        std::size_t r = 0;
        for (const auto& b : t.map.blocks) r += la::rank(b);
        rk[k] = r;
    }
    std::vector<std::size_t> out;
    for (std::size_t n = 0; n <= upto; ++n) out.push_back(tot[n] - rk[n] - rk[n + 1]);
    return out;
}

// ---------------------------------------------------------------- bimodules

namespace {

std::vector<std::size_t> corner_basis(const PathAlgebra& C, const std::vector<int>& T, const std::vector<int>& S) {
    std::vector<std::size_t> out;
    for (std::size_t b = 0; b < C.dim(); ++b) {
        const BasisElement& be = C.basis(b);
        if (std::find(T.begin(), T.end(), be.target) != T.end() && std::find(S.begin(), S.end(), be.source) != S.end())
            out.push_back(b);
    }
    return out;
}

struct BimoduleLayout {
    std::vector<std::vector<std::size_t>> basis;   // per env vertex
    std::vector<std::vector<long>> pos;            // per env vertex: C-basis index -> row, or -1
};

BimoduleLayout bimodule_layout(const AlgebraMorphism& fl, const AlgebraMorphism& fr) {
    const auto& C = *fl.target;
    const int na = fl.source->num_vertices(), nb = fr.source->num_vertices();
    BimoduleLayout L;
    for (int u = 0; u < na; ++u)
        for (int j = 0; j < nb; ++j) {
            L.basis.push_back(corner_basis(C, fl.vertex_images[u], fr.vertex_images[j]));
            std::vector<long> p(C.dim(), -1);
            for (std::size_t k = 0; k < L.basis.back().size(); ++k) p[L.basis.back()[k]] = static_cast<long>(k);
            L.pos.push_back(std::move(p));
        }
    return L;
}

Matrix element_columns(const BimoduleLayout& L, int from, int to, const std::vector<Element>& imgs) {
    Matrix x(L.basis[to].size(), L.basis[from].size());
    for (std::size_t c = 0; c < imgs.size(); ++c)
        for (std::size_t b = 0; b < imgs[c].size(); ++b) {
            if (!imgs[c][b]) continue;
            long r = L.pos[to][b];
            if (r < 0) throw std::logic_error("bimodule: product leaves its corner");
            x(static_cast<std::size_t>(r), c) = imgs[c][b];
        }
    return x;
}

}  // namespace

Bimodule algebra_bimodule(const AlgebraMorphism& fl, const AlgebraMorphism& fr, const AlgebraPtr& env_in) {
    if (!same_algebra(fl.target, fr.target)) throw MorphismError(MorphismError::Kind::AlgebraMismatch, "bimodule: targets differ");
    const auto& C = *fl.target;
    const auto& A = *fl.source;
    const auto& B = *fr.source;
    AlgebraPtr env = env_in ? env_in : envelope(fl.source, fr.source);
    const int na = A.num_vertices(), nb = B.num_vertices();
    const int naa = A.quiver().num_arrows(), nba = B.quiver().num_arrows();
    BimoduleLayout L = bimodule_layout(fl, fr);
    Module m{env, {}, std::vector<Matrix>(env->quiver().num_arrows(), Matrix(0, 0))};
    for (const auto& b : L.basis) m.dims.push_back(b.size());
    auto vid = [nb](int u, int j) { return u * nb + j; };
    // left action: alpha: i -> k sends (i, j) to (k, j)
    for (int a = 0; a < naa; ++a) {
        const Arrow& ar = A.quiver().arrows[a];
        Element x = fl.arrow_images[a];
        for (int j = 0; j < nb; ++j) {
            int from = vid(ar.source, j), to = vid(ar.target, j);
            std::vector<Element> imgs;
            for (auto b : L.basis[from]) imgs.push_back(C.multiply(x, C.basis_element(b)));
            m.act[a * nb + j] = element_columns(L, from, to, imgs);
        }
    }
    // right action: y: s -> t sends (u, t) to (u, s)
    for (int y = 0; y < nba; ++y) {
        const Arrow& ar = B.quiver().arrows[y];
        Element x = fr.arrow_images[y];
        for (int u = 0; u < na; ++u) {
            int from = vid(u, ar.target), to = vid(u, ar.source);
            std::vector<Element> imgs;
            for (auto b : L.basis[from]) imgs.push_back(C.multiply(C.basis_element(b), x));
            m.act[naa * nb + y * na + u] = element_columns(L, from, to, imgs);
        }
    }
    return Bimodule{fl.source, fr.source, env, m};
}

ModuleMap algebra_bimodule_map(const AlgebraMorphism& fl, const AlgebraMorphism& fr, const AlgebraMorphism& phi,
                               const Bimodule& x, const Bimodule& y) {
    BimoduleLayout Lx = bimodule_layout(fl, fr);
    BimoduleLayout Ly = bimodule_layout(compose(phi, fl), compose(phi, fr));
    ModuleMap g = zero_map(x.mod, y.mod);
    for (std::size_t w = 0; w < Lx.basis.size(); ++w) {
        Matrix b(Ly.basis[w].size(), Lx.basis[w].size());
        for (std::size_t c = 0; c < Lx.basis[w].size(); ++c) {
            Element e = phi.basis_image(Lx.basis[w][c]);
            for (std::size_t k = 0; k < e.size(); ++k) {
                if (!e[k]) continue;
                long r = Ly.pos[w][k];
                if (r < 0) throw std::logic_error("bimodule map leaves its corner");
                b(static_cast<std::size_t>(r), c) = e[k];
            }
        }
        g.blocks[w] = b;
    }
    return g;
}

Module row_module(const Bimodule& x, int u) {
    const int na = x.left->num_vertices(), nb = x.right->num_vertices();
    const int naa = x.left->quiver().num_arrows(), nba = x.right->quiver().num_arrows();
    Module m{x.right, {}, {}};
    for (int j = 0; j < nb; ++j) m.dims.push_back(x.mod.dims[u * nb + j]);
    for (int y = 0; y < nba; ++y) m.act.push_back(x.mod.act[naa * nb + y * na + u]);
    return m;
}

namespace {

// left multiplication by alpha: e_i X -> e_k X
ModuleMap left_mult(const Bimodule& x, int a) {
    const auto& ar = x.left->quiver().arrows[a];
    const int nb = x.right->num_vertices();
    Module s = row_module(x, ar.source), t = row_module(x, ar.target);
    ModuleMap g{s, t, {}};
    for (int j = 0; j < nb; ++j) g.blocks.push_back(x.mod.act[a * nb + j]);
    return g;
}

ModuleMap row_map(const Bimodule& x, const Bimodule& x2, const ModuleMap& g, int u) {
    const int nb = x.right->num_vertices();
    ModuleMap h{row_module(x, u), row_module(x2, u), {}};
    for (int j = 0; j < nb; ++j) h.blocks.push_back(g.blocks[u * nb + j]);
    return h;
}

}  // namespace

Module right_restriction(const Bimodule& x) {
    const int na = x.left->num_vertices(), nb = x.right->num_vertices();
    const int naa = x.left->quiver().num_arrows(), nba = x.right->quiver().num_arrows();
    Module m{x.right, std::vector<std::size_t>(nb, 0), {}};
    for (int u = 0; u < na; ++u)
        for (int j = 0; j < nb; ++j) m.dims[j] += x.mod.dims[u * nb + j];
    for (int y = 0; y < nba; ++y) {
        const Arrow& ar = x.right->quiver().arrows[y];
        Matrix big(m.dims[ar.source], m.dims[ar.target]);
        std::size_t r = 0, c = 0;
        for (int u = 0; u < na; ++u) {
            const Matrix& b = x.mod.act[naa * nb + y * na + u];
            if (b.rows() && b.cols()) big.set_block(r, c, b);
            r += x.mod.dims[u * nb + ar.source];
            c += x.mod.dims[u * nb + ar.target];
        }
        m.act.push_back(std::move(big));
    }
    return m;
}

Module left_restriction(const Bimodule& x) {
    const int na = x.left->num_vertices(), nb = x.right->num_vertices();
    const int naa = x.left->quiver().num_arrows();
    AlgebraPtr op = opposite(x.left);
    Module m{op, std::vector<std::size_t>(na, 0), {}};
    for (int u = 0; u < na; ++u)
        for (int j = 0; j < nb; ++j) m.dims[u] += x.mod.dims[u * nb + j];
    for (int a = 0; a < naa; ++a) {
        // in the opposite algebra alpha runs k -> i and acts M_i -> M_k
        const Arrow& ar = x.left->quiver().arrows[a];
        Matrix big(m.dims[ar.target], m.dims[ar.source]);
        std::size_t r = 0, c = 0;
        for (int j = 0; j < nb; ++j) {
            const Matrix& b = x.mod.act[a * nb + j];
            if (b.rows() && b.cols()) big.set_block(r, c, b);
            r += x.mod.dims[ar.target * nb + j];
            c += x.mod.dims[ar.source * nb + j];
        }
        m.act.push_back(std::move(big));
    }
    return m;
}

BimoduleHom bimodule_hom(const Bimodule& x, const Module& n) {
    const int na = x.left->num_vertices();
    const auto& qa = x.left->quiver();
    BimoduleHom h;
    std::vector<Module> rows;
    std::vector<Matrix> mats;
    for (int u = 0; u < na; ++u) {
        rows.push_back(row_module(x, u));
        h.basis.push_back(hom_basis(rows.back(), n));
        mats.push_back(hom_matrix(h.basis.back(), rows.back(), n));
    }
    h.mod = Module{x.left, {}, {}};
    for (int u = 0; u < na; ++u) h.mod.dims.push_back(h.basis[u].size());
    for (int a = 0; a < qa.num_arrows(); ++a) {
        const Arrow& ar = qa.arrows[a];
        const int i = ar.source, k = ar.target;
        Matrix act(h.mod.dims[i], h.mod.dims[k]);
        if (h.mod.dims[i] && h.mod.dims[k]) {
            ModuleMap L = left_mult(x, a);
            for (std::size_t c = 0; c < h.basis[k].size(); ++c) {
                auto v = coords(mats[i], flatten(compose(h.basis[k][c], L)));
                if (!v) throw std::logic_error("bimodule_hom: action leaves Hom space");
                for (std::size_t r = 0; r < v->size(); ++r) act(r, c) = (*v)[r];
            }
        }
        h.mod.act.push_back(std::move(act));
    }
    return h;
}

ModuleMap bimodule_hom_map(const Bimodule& x, const BimoduleHom& hx, const Bimodule& x2, const BimoduleHom& hx2,
                           const ModuleMap& g, const Module& n) {
    const int na = x.left->num_vertices();
    ModuleMap out = zero_map(hx2.mod, hx.mod);
    for (int u = 0; u < na; ++u) {
        if (hx2.basis[u].empty() || hx.basis[u].empty()) continue;
        Module r = row_module(x, u);
        Matrix basis = hom_matrix(hx.basis[u], r, n);
        ModuleMap gu = row_map(x, x2, g, u);
        for (std::size_t c = 0; c < hx2.basis[u].size(); ++c) {
            auto v = coords(basis, flatten(compose(hx2.basis[u][c], gu)));
            if (!v) throw std::logic_error("bimodule_hom_map: not a Hom element");
            for (std::size_t k = 0; k < v->size(); ++k) out.blocks[u](k, c) = (*v)[k];
        }
    }
    return out;
}

BimoduleHom hom_up_data(const AlgebraMorphism& f, const Module& m) {
    Bimodule g = algebra_bimodule(identity_morphism(f.target), f);
    return bimodule_hom(g, m);
}

Module hom_up(const AlgebraMorphism& f, const Module& m) { return hom_up_data(f, m).mod; }

ModuleMap hom_up(const AlgebraMorphism& f, const ModuleMap& h) {
    Bimodule g = algebra_bimodule(identity_morphism(f.target), f);
    BimoduleHom a = bimodule_hom(g, h.src), b = bimodule_hom(g, h.tgt);
    ModuleMap out = zero_map(a.mod, b.mod);
    for (int u = 0; u < f.target->num_vertices(); ++u) {
        if (a.basis[u].empty() || b.basis[u].empty()) continue;
        Module r = row_module(g, u);
        Matrix basis = hom_matrix(b.basis[u], r, h.tgt);
        for (std::size_t c = 0; c < a.basis[u].size(); ++c) {
            auto v = coords(basis, flatten(compose(h, a.basis[u][c])));
            if (!v) throw std::logic_error("hom_up: not a Hom element");
            for (std::size_t k = 0; k < v->size(); ++k) out.blocks[u](k, c) = (*v)[k];
        }
    }
    return out;
}

// ---------------------------------------------------------------- RHom and cone

RHomResult rhom_gamma_lambda(const AlgebraMorphism& f, std::size_t bound) {
    RHomResult out;
    Module gl = restrict(f, regular(f.target));
    Resolution r = min_proj_resolution(gl, bound);
    if (!r.answer.yes()) {
        out.perfect = CertifiedAnswer::make(Verdict::Undetermined,
                                            {{"reason", "pdim Gamma_Lambda not certified finite"}, {"pdim", r.answer.to_json()}}, bound);
        return out;
    }
    const int d = r.pdim;
    out.d = d;
    Bimodule X = algebra_bimodule(identity_morphism(f.target), f);
    Module reg = regular(f.source);
    // bimodule resolution P_0 .. P_{d-1}, syzygy Omega^d
    std::vector<Bimodule> P;
    std::vector<ModuleMap> dmap;  // d_k: P_k -> P_{k-1}, k >= 1; last entry: Omega^d -> P_{d-1}
    Bimodule cur = X;
    ModuleMap prev_incl;
    for (int k = 0; k < d; ++k) {
        Cover c = projective_cover(cur.mod);
        Sub ker = kernel(c.map);
        Bimodule pk{X.left, X.right, X.env, c.proj.mod};
        if (k > 0) dmap.push_back(compose(prev_incl, c.map));
        P.push_back(pk);
        prev_incl = ker.incl;
        cur = Bimodule{X.left, X.right, X.env, ker.mod};
    }
    Bimodule omega = cur;
    if (!is_projective(right_restriction(omega)))
        throw BimoduleSyzygyNotLambdaProjective("syzygy " + std::to_string(d) + " of Gamma is not Lambda-projective");
    std::vector<Bimodule> terms = P;
    terms.push_back(omega);
    if (d > 0) dmap.push_back(prev_incl);
    std::vector<BimoduleHom> H;
    for (const auto& t : terms) H.push_back(bimodule_hom(t, reg));
    std::vector<Module> ct;
    std::vector<ModuleMap> cd;
    for (std::size_t k = 0; k < terms.size(); ++k) {
        ct.push_back(H[k].mod);
        if (k + 1 < terms.size()) cd.push_back(bimodule_hom_map(terms[k + 1], H[k + 1], terms[k], H[k], dmap[k], reg));
    }
    out.complex = make_complex(f.target, 0, ct, cd);
    out.perfect = is_perfect(out.complex, bound);
    out.perfect.witness["pdim_right"] = d;
    return out;
}

Complex cone_bimodule_complex(const AlgebraMorphism& f) {
    AlgebraMorphism idl = identity_morphism(f.source);
    AlgebraPtr env = envelope(f.source, f.source);
    Bimodule lam = algebra_bimodule(idl, idl, env);
    Bimodule gam = algebra_bimodule(f, f, env);
    ModuleMap g = algebra_bimodule_map(idl, idl, f, lam, gam);
    return make_complex(env, -1, {lam.mod, gam.mod}, {g});
}

CertifiedAnswer cone_f_perfect(const AlgebraMorphism& f, std::size_t bound) {
    Complex c = cone_bimodule_complex(f);
    CertifiedAnswer a = is_perfect(c, bound);
    a.witness["homology_dims"] = {homology(c, -1).total(), homology(c, 0).total()};
    return a;
}

CertifiedAnswer homological_epi_evidence(const AlgebraMorphism& f, std::size_t window, std::size_t bound) {
    const int nv = f.target->num_vertices();
    std::vector<Resolution> rg, rl;
    std::vector<Module> sg, sl;
    for (int v = 0; v < nv; ++v) {
        sg.push_back(simple(f.target, v));
        sl.push_back(restrict(f, sg.back()));
    }
    Json checked = Json::array();
    for (int v = 0; v < nv; ++v) {
        Resolution a = min_proj_resolution(sg[v], bound), b = min_proj_resolution(sl[v], bound);
        if (a.answer.undetermined() || b.answer.undetermined())
            return CertifiedAnswer::make(Verdict::Undetermined, {{"reason", "resolution did not stabilise"}, {"vertex", v}}, bound);
        for (int w = 0; w < nv; ++w)
            for (std::size_t i = 0; i <= window; ++i) {
                std::size_t eg = ext_dim(a, sg[w], i), el = ext_dim(b, sl[w], i);
                if (eg != el)
                    return CertifiedAnswer::make(Verdict::No,
                                                 {{"pair", {v, w}}, {"degree", i}, {"ext_target", eg}, {"ext_source", el}},
                                                 window);
            }
    }
    return CertifiedAnswer::make(Verdict::Yes, {{"evidence_only", true}, {"window", window}, {"pairs", nv * nv}}, window);
}

Json HypothesisReport::to_json() const {
    return {{"pdim_left", pdim_left.to_json()},
            {"pdim_right", pdim_right.to_json()},
            {"rhom_perfect", rhom_perfect.to_json()},
            {"cone_perfect_bimodule", cone_perfect_bimodule.to_json()},
            {"homological_epi", homological_epi.to_json()}};
}

HypothesisReport check_theoremI(const AlgebraMorphism& f, std::size_t bound, std::size_t window) {
    HypothesisReport h;
    h.pdim_right = pdim(restrict(f, regular(f.target)), bound);
    AlgebraMorphism fo = opposite(f);
    h.pdim_left = pdim(restrict(fo, regular(fo.target)), bound);
    if (h.pdim_right.yes())
        h.rhom_perfect = rhom_gamma_lambda(f, bound).perfect;
    else
        h.rhom_perfect = CertifiedAnswer::make(Verdict::Undetermined, {{"reason", "pdim_right not finite"}}, bound);
    h.cone_perfect_bimodule = cone_f_perfect(f, bound);
    h.homological_epi = homological_epi_evidence(f, window, bound);
    return h;
}

// ---------------------------------------------------------------- conclusions

namespace {

Module nonprojective_part(const Module& m, std::uint64_t seed, std::vector<Module>* parts_out = nullptr) {
    Decomposition d = decompose(m, seed);
    std::vector<Module> keep;
    for (const auto& [p, mult] : d.parts)
        if (!is_projective(p))
            for (int k = 0; k < mult; ++k) keep.push_back(p);
    if (parts_out) *parts_out = keep;
    return direct_sum(keep, m.alg);
}

Module syzygy_of(const Module& m, int k) {
    Module cur = m;
    for (int i = 0; i < k; ++i) cur = kernel(projective_cover(cur).map).mod;
    return cur;
}

}  // namespace

bool ConclusionReport::tensor_ok() const {
    for (const auto& e : tensor_gproj) {
        if (!e.gproj.yes()) return false;
        for (auto t : e.tor)
            if (t) return false;
    }
    return true;
}

bool ConclusionReport::res_ok() const {
    for (const auto& e : res_gproj)
        if (!e.cls.yes()) return false;
    return true;
}

bool ConclusionReport::fully_faithful_ok() const {
    for (const auto& p : fully_faithful) {
        if (p.dsg_source != p.dsg_target) return false;
        if (p.stable_source && p.stable_target && *p.stable_source != *p.stable_target) return false;
    }
    return true;
}

bool ConclusionReport::images_ok() const {
    for (int i : image_in_target)
        if (i < 0) return false;
    return true;
}

ConclusionReport verify_conclusions(const AlgebraMorphism& f, const HypothesisReport& report, std::size_t bound,
                                    const ConclusionOptions& opt) {
    ConclusionReport out;
    SeedOptions so;
    so.layers = opt.layer_seeds;
    out.source_dsg = dsg_indecomposables(f.source, so, bound, opt.seed);
    out.target_dsg = dsg_indecomposables(f.target, so, bound, opt.seed);

    // (a) Gproj(source), including indecomposable projectives
    std::vector<Module> gsrc;
    std::vector<bool> src_is_gproj;
    for (int v = 0; v < f.source->num_vertices(); ++v) gsrc.push_back(projective(f.source, v));
    for (const auto& o : out.source_dsg.objects) {
        bool g = is_gorenstein_projective(o.rep, bound, opt.seed).answer.yes();
        src_is_gproj.push_back(g);
        if (g) gsrc.push_back(o.rep);
    }
    for (const auto& m : gsrc) {
        ConclusionReport::TensorEntry e;
        e.module = m;
        e.image = tensor_up(f, m);
        e.gproj = is_gorenstein_projective(e.image, bound, opt.seed).answer;
        auto t = tor_dims(f, m, opt.tor_upto);
        e.tor.assign(t.begin() + 1, t.end());
        out.tensor_gproj.push_back(std::move(e));
    }

    // (b) Gproj(target) under restriction
    std::vector<Module> gtgt;
    std::vector<bool> tgt_is_gproj;
    for (int v = 0; v < f.target->num_vertices(); ++v) gtgt.push_back(projective(f.target, v));
    for (const auto& o : out.target_dsg.objects) {
        bool g = is_gorenstein_projective(o.rep, bound, opt.seed).answer.yes();
        tgt_is_gproj.push_back(g);
        if (g) gtgt.push_back(o.rep);
    }
    for (const auto& n : gtgt) {
        ConclusionReport::ResEntry e;
        e.module = n;
        e.image = restrict(f, n);
        Resolution r = min_proj_resolution(e.image, bound, opt.seed);
        if (r.answer.yes()) {
            e.cls = CertifiedAnswer::make(Verdict::Yes, {{"reason", "perfect"}, {"pdim", r.pdim}}, r.steps());
        } else if (r.answer.no()) {
            e.cls = CertifiedAnswer::make(Verdict::No, {{"reason", "no Gproj syzygy on the cycle"}}, r.steps());
            for (int k = 0; k <= r.lag + r.period; ++k) {
                auto g = is_gorenstein_projective(r.syz[k], bound, opt.seed);
                if (g.answer.yes()) {
                    e.syzygy = k;
                    e.cls = CertifiedAnswer::make(Verdict::Yes, {{"syzygy", k}, {"gproj", g.answer.to_json()}}, r.steps());
                    break;
                }
            }
        } else {
            e.cls = CertifiedAnswer::make(Verdict::Undetermined, {{"reason", "resolution did not stabilise"}}, bound);
        }
        out.res_gproj.push_back(std::move(e));
    }

    // (c) derived tensor on Dsg objects via Omega^shift
    int shift = 0;
    bool all_flat = true;
    for (const auto& o : out.source_dsg.objects) {
        auto t = tor_dims(f, o.rep, opt.tor_upto);
        for (std::size_t k = 1; k < t.size(); ++k)
            if (t[k]) all_flat = false;
    }
    if (!all_flat && report.pdim_right.yes()) shift = report.pdim_right.witness.value("pdim", 0);
    out.derived_shift = shift;
    std::vector<DsgObject> imgs;
    for (const auto& o : out.source_dsg.objects) {
        Module x = tensor_up(f, syzygy_of(o.rep, shift));
        imgs.push_back(make_dsg_object(x, bound, opt.seed));
    }
    const std::size_t n = out.source_dsg.objects.size();
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            ConclusionReport::HomPair p;
            p.i = i;
            p.j = j;
            p.dsg_source = dsg_hom(out.source_dsg.objects[i], out.source_dsg.objects[j], opt.seed).dim;
            p.dsg_target = dsg_hom(imgs[i], imgs[j], opt.seed).dim;
            if (src_is_gproj[i] && src_is_gproj[j]) {
                p.stable_source = stable_hom_dim(out.source_dsg.objects[i].rep, out.source_dsg.objects[j].rep);
                p.stable_target = stable_hom_dim(tensor_up(f, out.source_dsg.objects[i].rep), tensor_up(f, out.source_dsg.objects[j].rep));
            }
            out.fully_faithful.push_back(p);
        }
    // image lies on an enumerated cycle of the target
    for (std::size_t i = 0; i < n; ++i) {
        std::vector<Module> parts;
        nonprojective_part(imgs[i].rep, opt.seed, &parts);
        int hit = -1;
        if (parts.size() == 1)
            for (std::size_t t = 0; t < out.target_dsg.objects.size(); ++t) {
                const Module& c = out.target_dsg.objects[t].rep;
                if (c.dims == parts[0].dims && is_isomorphic(c, parts[0], opt.seed).answer.yes()) {
                    hit = static_cast<int>(t);
                    break;
                }
            }
        out.image_in_target.push_back(hit);
    }

    // (d) Ker(res) on Dsg(target)
    for (std::size_t t = 0; t < out.target_dsg.objects.size(); ++t) {
        Resolution r = min_proj_resolution(restrict(f, out.target_dsg.objects[t].rep), bound, opt.seed);
        if (r.answer.yes()) out.kernel.push_back(t);
    }
    return out;
}

Json ConclusionReport::to_json() const {
    Json j;
    auto objs = [](const DsgEnumeration& e) {
        Json a = Json::array();
        for (const auto& o : e.objects) a.push_back({{"dims", o.rep.dims}, {"provenance", o.provenance}});
        return Json{{"objects", a}, {"status", to_string(e.status)}, {"scope", e.scope}};
    };
    j["source_dsg"] = objs(source_dsg);
    j["target_dsg"] = objs(target_dsg);
    Json t = Json::array();
    for (const auto& e : tensor_gproj)
        t.push_back({{"module", e.module.dims}, {"image", e.image.dims}, {"gproj", to_string(e.gproj.verdict)}, {"tor", e.tor}});
    j["tensor_gproj"] = t;
    Json r = Json::array();
    for (const auto& e : res_gproj)
        r.push_back({{"module", e.module.dims}, {"image", e.image.dims}, {"class", e.cls.to_json()}});
    j["res_gproj"] = r;
    Json ff = Json::array();
    for (const auto& p : fully_faithful) {
        Json x = {{"pair", {p.i, p.j}}, {"dsg_source", p.dsg_source}, {"dsg_target", p.dsg_target}};
        if (p.stable_source) x["stable_source"] = *p.stable_source;
        if (p.stable_target) x["stable_target"] = *p.stable_target;
        ff.push_back(x);
    }
    j["derived_shift"] = derived_shift;
    j["fully_faithful"] = ff;
    j["image_in_target"] = image_in_target;
    j["kernel"] = kernel;
    j["summary"] = {{"tensor_gproj", tensor_ok()},
                    {"res_gproj", res_ok()},
                    {"fully_faithful", fully_faithful_ok()},
                    {"images_in_list", images_ok()}};
    return j;
}

Json morphism_to_json(const AlgebraMorphism& f) {
    Json j;
    j["name"] = f.name;
    j["source"] = f.source->name();
    j["target"] = f.target->name();
    j["vertex_images"] = f.vertex_images;
    Json a = Json::array();
    for (const auto& e : f.arrow_images) a.push_back(e);
    j["arrow_images"] = a;
    return j;
}

}  // namespace singcat
