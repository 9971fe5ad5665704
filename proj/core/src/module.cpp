#include "singcat/module.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <sstream>
#include <stdexcept>

namespace singcat {

namespace la = linalg;

std::size_t Module::total() const { return std::accumulate(dims.begin(), dims.end(), std::size_t{0}); }

std::size_t Module::offset(int v) const {
    std::size_t o = 0;
    for (int i = 0; i < v; ++i) o += dims[i];
    return o;
}

bool ModuleMap::is_zero() const {
    for (const auto& b : blocks)
        if (!b.is_zero()) return false;
    return true;
}

Matrix ModuleMap::total() const {
    Matrix t(tgt.total(), src.total());
    std::size_t r = 0, c = 0;
    for (std::size_t v = 0; v < blocks.size(); ++v) {
        t.set_block(r, c, blocks[v]);
        r += tgt.dims[v];
        c += src.dims[v];
    }
    return t;
}

namespace {

void require_same(const AlgebraPtr& a, const AlgebraPtr& b, const char* what) {
    if (!same_algebra(a, b)) throw std::invalid_argument(std::string(what) + ": algebra mismatch");
}

// Action of a basis element b (target t, source s) as a map M_t -> M_s.
Matrix basis_action(const Module& m, std::size_t i) {
    const auto& b = m.alg->basis(i);
    if (b.length == 0) return Matrix::identity(m.dims[b.source]);
    return path_action(m, b.word);
}

// Cached actions of every basis element on one module.
struct ActionCache {
    const Module& m;
    std::vector<std::optional<Matrix>> cache;
    explicit ActionCache(const Module& mod) : m(mod), cache(mod.alg->dim()) {}
    const Matrix& operator()(std::size_t i) {
        if (!cache[i]) cache[i] = basis_action(m, i);
        return *cache[i];
    }
};

// Per-vertex layout of a sum of indecomposable projectives.
struct ProjSlot {
    std::size_t gen;
    std::size_t basis;
};

std::vector<std::vector<ProjSlot>> proj_layout(const PathAlgebra& a, const std::vector<int>& gens) {
    std::vector<std::vector<ProjSlot>> lay(a.num_vertices());
    for (int v = 0; v < a.num_vertices(); ++v)
        for (std::size_t t = 0; t < gens.size(); ++t)
            for (auto b : a.basis_between(gens[t], v)) lay[v].push_back({t, b});
    return lay;
}

// Inverse of [S | C] with C a standard complement; rows split as (S part, C part).
struct Split {
    Matrix basis;      // S columns
    Matrix comp;       // C columns
    Matrix left_sub;   // coordinates along S
    Matrix left_comp;  // coordinates along C
};

Split split_space(const Matrix& s, std::size_t n) {
    Split sp;
    sp.basis = s.cols() ? s : Matrix(n, 0);
    sp.comp = complement_basis(sp.basis, n);
    Matrix full = Matrix::hstack(sp.basis, sp.comp);
    auto inv = la::inverse(full);
    if (!inv) throw std::logic_error("split_space: subspace basis is not independent");
    sp.left_sub = inv->block(0, 0, sp.basis.cols(), n);
    sp.left_comp = inv->block(sp.basis.cols(), 0, sp.comp.cols(), n);
    return sp;
}

std::vector<Scalar> coeffs(std::mt19937_64& rng, std::size_t r) {
    std::vector<Scalar> c(r);
    for (auto& x : c) x = static_cast<Scalar>(rng() % la::prime());
    return c;
}

ModuleMap combination(const std::vector<ModuleMap>& basis, const std::vector<Scalar>& c, const Module& m,
                      const Module& n) {
    ModuleMap f = zero_map(m, n);
    for (std::size_t i = 0; i < basis.size(); ++i) {
        if (!c[i]) continue;
        for (std::size_t v = 0; v < f.blocks.size(); ++v) f.blocks[v] = f.blocks[v] + basis[i].blocks[v].scaled(c[i]);
    }
    return f;
}

bool blocks_invertible(const ModuleMap& f) {
    for (std::size_t v = 0; v < f.blocks.size(); ++v) {
        if (f.src.dims[v] != f.tgt.dims[v]) return false;
        if (la::rank(f.blocks[v]) != f.src.dims[v]) return false;
    }
    return true;
}

Matrix mat_power(Matrix x, std::size_t e) {
    Matrix r = Matrix::identity(x.rows());
    while (e) {
        if (e & 1) r = r * x;
        x = x * x;
        e >>= 1;
    }
    return r;
}

}  // namespace

// ---- construction ----

Module zero_module(const AlgebraPtr& alg) {
    Module m{alg, std::vector<std::size_t>(alg->num_vertices(), 0), {}};
    m.act.assign(alg->quiver().num_arrows(), Matrix(0, 0));
    return m;
}

Module simple(const AlgebraPtr& alg, int v) {
    Module m = zero_module(alg);
    m.dims[v] = 1;
    const auto& q = alg->quiver();
    for (int a = 0; a < q.num_arrows(); ++a) m.act[a] = Matrix(m.dims[q.arrows[a].source], m.dims[q.arrows[a].target]);
    return m;
}

ProjModule projective(const AlgebraPtr& alg, const std::vector<int>& gens) {
    const auto& A = *alg;
    const auto& q = A.quiver();
    auto lay = proj_layout(A, gens);
    Module m{alg, {}, {}};
    for (const auto& l : lay) m.dims.push_back(l.size());
    // position of (generator, basis) inside its component
    std::vector<std::vector<std::size_t>> pos(gens.size(), std::vector<std::size_t>(A.dim(), 0));
    for (const auto& l : lay)
        for (std::size_t k = 0; k < l.size(); ++k) pos[l[k].gen][l[k].basis] = k;
    for (int a = 0; a < q.num_arrows(); ++a) {
        int s = q.arrows[a].source, t = q.arrows[a].target;
        Matrix x(m.dims[s], m.dims[t]);
        std::size_t ai = A.arrow_basis_index(a);
        if (ai != static_cast<std::size_t>(-1)) {
            for (std::size_t k = 0; k < lay[t].size(); ++k) {
                const auto& slot = lay[t][k];
                for (const auto& e : A.product(slot.basis, ai)) x(pos[slot.gen][e.index], k) = la::add(x(pos[slot.gen][e.index], k), e.coeff);
            }
        }
        m.act.push_back(std::move(x));
    }
    return {m, gens};
}

Module projective(const AlgebraPtr& alg, int v) { return projective(alg, std::vector<int>{v}).mod; }

Module injective(const AlgebraPtr& alg, int v) { return dual(projective(opposite(alg), v), alg); }

Module regular(const AlgebraPtr& alg) {
    std::vector<int> g(alg->num_vertices());
    std::iota(g.begin(), g.end(), 0);
    return projective(alg, g).mod;
}

Module direct_sum(const Module& a, const Module& b) {
    require_same(a.alg, b.alg, "direct_sum");
    Module m{a.alg, {}, {}};
    for (std::size_t v = 0; v < a.dims.size(); ++v) m.dims.push_back(a.dims[v] + b.dims[v]);
    for (std::size_t i = 0; i < a.act.size(); ++i) m.act.push_back(Matrix::block_diag(a.act[i], b.act[i]));
    return m;
}

Module direct_sum(const std::vector<Module>& parts, const AlgebraPtr& alg) {
    Module m = zero_module(alg);
    const auto& q = alg->quiver();
    for (int a = 0; a < q.num_arrows(); ++a) m.act[a] = Matrix(0, 0);
    for (const auto& p : parts) m = direct_sum(m, p);
    return m;
}

std::vector<ModuleMap> sum_inclusions(const std::vector<Module>& parts, const Module& sum) {
    std::vector<ModuleMap> out;
    std::vector<std::size_t> off(sum.dims.size(), 0);
    for (const auto& p : parts) {
        ModuleMap f = zero_map(p, sum);
        for (std::size_t v = 0; v < sum.dims.size(); ++v) {
            f.blocks[v].set_block(off[v], 0, Matrix::identity(p.dims[v]));
            off[v] += p.dims[v];
        }
        out.push_back(std::move(f));
    }
    return out;
}

std::vector<ModuleMap> sum_projections(const std::vector<Module>& parts, const Module& sum) {
    std::vector<ModuleMap> out;
    for (auto& f : sum_inclusions(parts, sum)) {
        ModuleMap g = zero_map(sum, f.src);
        for (std::size_t v = 0; v < g.blocks.size(); ++v) g.blocks[v] = f.blocks[v].transpose();
        out.push_back(std::move(g));
    }
    return out;
}

Module dual(const Module& m, const AlgebraPtr& target_alg) {
    Module d{target_alg ? target_alg : opposite(m.alg), m.dims, {}};
    for (const auto& x : m.act) d.act.push_back(x.transpose());
    return d;
}

ModuleMap dual(const ModuleMap& f, const AlgebraPtr& target_alg) {
    AlgebraPtr alg = target_alg ? target_alg : opposite(f.src.alg);
    ModuleMap g{dual(f.tgt, alg), dual(f.src, alg), {}};
    for (const auto& b : f.blocks) g.blocks.push_back(b.transpose());
    return g;
}

Matrix path_action(const Module& m, const Word& w) {
    if (w.empty()) throw std::invalid_argument("path_action: empty word");
    const auto& q = m.alg->quiver();
    Matrix x = m.act[w[0]];
    for (std::size_t i = 1; i < w.size(); ++i) {
        if (q.arrows[w[i]].target != q.arrows[w[i - 1]].source) return Matrix(m.dims[q.arrows[w.back()].source], m.dims[q.arrows[w[0]].target]);
        x = m.act[w[i]] * x;
    }
    return x;
}

Matrix element_block(const Module& m, const Element& x, int target, int source) {
    Matrix out(m.dims[source], m.dims[target]);
    for (auto i : m.alg->basis_between(target, source))
        if (x[i]) out = out + basis_action(m, i).scaled(x[i]);
    return out;
}

Matrix element_action(const Module& m, const Element& x) {
    Matrix out(m.total(), m.total());
    const int n = m.num_vertices();
    for (int t = 0; t < n; ++t)
        for (int s = 0; s < n; ++s) {
            if (!m.dims[t] || !m.dims[s]) continue;
            Matrix b = element_block(m, x, t, s);
            if (!b.is_zero()) out.set_block(m.offset(s), m.offset(t), b);
        }
    return out;
}

bool satisfies_relations(const Module& m) {
    const auto& q = m.alg->quiver();
    for (const auto& r : m.alg->relations()) {
        if (r.terms.empty()) continue;
        const Word& w0 = r.terms[0].word;
        Matrix acc(m.dims[word_source(q, w0)], m.dims[word_target(q, w0)]);
        for (const auto& t : r.terms) acc = acc + path_action(m, t.word).scaled(t.coeff);
        if (!acc.is_zero()) return false;
    }
    return true;
}

void check_module(const Module& m) {
    const auto& q = m.alg->quiver();
    if (static_cast<int>(m.dims.size()) != q.num_vertices() || static_cast<int>(m.act.size()) != q.num_arrows())
        throw std::invalid_argument("module: wrong number of components");
    for (int a = 0; a < q.num_arrows(); ++a)
        if (m.act[a].rows() != m.dims[q.arrows[a].source] || m.act[a].cols() != m.dims[q.arrows[a].target])
            throw std::invalid_argument("module: arrow " + q.arrows[a].label + " has the wrong shape");
    if (!satisfies_relations(m)) throw std::invalid_argument("module: relations do not vanish");
}

// ---- maps ----

ModuleMap identity(const Module& m) {
    ModuleMap f{m, m, {}};
    for (auto d : m.dims) f.blocks.push_back(Matrix::identity(d));
    return f;
}

ModuleMap zero_map(const Module& a, const Module& b) {
    require_same(a.alg, b.alg, "zero_map");
    ModuleMap f{a, b, {}};
    for (std::size_t v = 0; v < a.dims.size(); ++v) f.blocks.emplace_back(b.dims[v], a.dims[v]);
    return f;
}

ModuleMap compose(const ModuleMap& g, const ModuleMap& f) {
    if (g.src.dims != f.tgt.dims) throw std::invalid_argument("compose: shapes do not match");
    ModuleMap h{f.src, g.tgt, {}};
    for (std::size_t v = 0; v < f.blocks.size(); ++v) h.blocks.push_back(g.blocks[v] * f.blocks[v]);
    return h;
}

ModuleMap add(const ModuleMap& f, const ModuleMap& g) {
    ModuleMap h = f;
    for (std::size_t v = 0; v < f.blocks.size(); ++v) h.blocks[v] = f.blocks[v] + g.blocks[v];
    return h;
}

ModuleMap sub(const ModuleMap& f, const ModuleMap& g) {
    ModuleMap h = f;
    for (std::size_t v = 0; v < f.blocks.size(); ++v) h.blocks[v] = f.blocks[v] - g.blocks[v];
    return h;
}

ModuleMap scale(const ModuleMap& f, Scalar s) {
    ModuleMap h = f;
    for (auto& b : h.blocks) b = b.scaled(s);
    return h;
}

ModuleMap direct_sum(const ModuleMap& f, const ModuleMap& g) {
    ModuleMap h{direct_sum(f.src, g.src), direct_sum(f.tgt, g.tgt), {}};
    for (std::size_t v = 0; v < f.blocks.size(); ++v) h.blocks.push_back(Matrix::block_diag(f.blocks[v], g.blocks[v]));
    return h;
}

ModuleMap from_total(const Module& a, const Module& b, const Matrix& t) {
    ModuleMap f{a, b, {}};
    for (int v = 0; v < a.num_vertices(); ++v) f.blocks.push_back(t.block(b.offset(v), a.offset(v), b.dims[v], a.dims[v]));
    return f;
}

bool is_equivariant(const ModuleMap& f) {
    const auto& q = f.src.alg->quiver();
    for (int a = 0; a < q.num_arrows(); ++a) {
        int s = q.arrows[a].source, t = q.arrows[a].target;
        if (f.blocks[s] * f.src.act[a] != f.tgt.act[a] * f.blocks[t]) return false;
    }
    return true;
}

bool is_injective_map(const ModuleMap& f) {
    for (std::size_t v = 0; v < f.blocks.size(); ++v)
        if (la::rank(f.blocks[v]) != f.src.dims[v]) return false;
    return true;
}

bool is_surjective_map(const ModuleMap& f) {
    for (std::size_t v = 0; v < f.blocks.size(); ++v)
        if (la::rank(f.blocks[v]) != f.tgt.dims[v]) return false;
    return true;
}

bool is_iso_map(const ModuleMap& f) { return blocks_invertible(f); }

std::optional<ModuleMap> inverse(const ModuleMap& f) {
    ModuleMap g{f.tgt, f.src, {}};
    for (const auto& b : f.blocks) {
        auto i = la::inverse(b);
        if (!i) return std::nullopt;
        g.blocks.push_back(*i);
    }
    return g;
}

bool equal_maps(const ModuleMap& f, const ModuleMap& g) { return f.blocks == g.blocks; }

std::vector<Scalar> flatten(const ModuleMap& f) {
    std::vector<Scalar> out;
    for (const auto& b : f.blocks) out.insert(out.end(), b.data().begin(), b.data().end());
    return out;
}

ModuleMap from_projective(const ProjModule& p, const Module& tgt, const std::vector<std::vector<Scalar>>& images) {
    require_same(p.mod.alg, tgt.alg, "from_projective");
    const auto& A = *p.mod.alg;
    auto lay = proj_layout(A, p.gens);
    ActionCache act(tgt);
    ModuleMap f = zero_map(p.mod, tgt);
    for (int v = 0; v < A.num_vertices(); ++v) {
        for (std::size_t k = 0; k < lay[v].size(); ++k) {
            const auto& slot = lay[v][k];
            const auto& img = images[slot.gen];
            if (std::all_of(img.begin(), img.end(), [](Scalar x) { return x == 0; })) continue;
            Matrix col = act(slot.basis) * Matrix::column_vector(img);
            f.blocks[v].set_block(0, k, col);
        }
    }
    return f;
}

std::vector<Scalar> generator_vector(const ProjModule& p, std::size_t t) {
    const auto& A = *p.mod.alg;
    int g = p.gens[t];
    auto lay = proj_layout(A, p.gens);
    std::vector<Scalar> v(p.mod.total(), 0);
    std::size_t off = p.mod.offset(g);
    for (std::size_t k = 0; k < lay[g].size(); ++k)
        if (lay[g][k].gen == t && lay[g][k].basis == A.vertex_basis_index(g)) v[off + k] = 1;
    return v;
}

std::vector<std::vector<Scalar>> generator_images(const ProjModule& p, const ModuleMap& f) {
    const auto& A = *p.mod.alg;
    auto lay = proj_layout(A, p.gens);
    std::vector<std::vector<Scalar>> out(p.gens.size());
    for (std::size_t t = 0; t < p.gens.size(); ++t) {
        int g = p.gens[t];
        for (std::size_t k = 0; k < lay[g].size(); ++k)
            if (lay[g][k].gen == t && lay[g][k].basis == A.vertex_basis_index(g)) out[t] = f.blocks[g].column_values(k);
    }
    return out;
}

ModuleMap lift_from_projective(const ProjModule& p, const ModuleMap& g, const ModuleMap& pi) {
    auto imgs = generator_images(p, g);
    std::vector<std::vector<Scalar>> lifted;
    for (std::size_t t = 0; t < p.gens.size(); ++t) {
        int v = p.gens[t];
        auto x = la::solve(pi.blocks[v], Matrix::column_vector(imgs[t]));
        if (!x) throw std::invalid_argument("lift_from_projective: map does not factor");
        lifted.push_back(x->column_values(0));
    }
    return from_projective(p, pi.src, lifted);
}

ModuleMap projective_map(const ProjModule& src, const ProjModule& tgt, const ElementMatrix& entries) {
    const auto& A = *src.mod.alg;
    auto lay = proj_layout(A, tgt.gens);
    std::vector<std::vector<Scalar>> imgs;
    for (std::size_t c = 0; c < src.gens.size(); ++c) {
        int v = src.gens[c];
        std::vector<Scalar> img(tgt.mod.dims[v], 0);
        for (std::size_t k = 0; k < lay[v].size(); ++k) {
            const auto& slot = lay[v][k];
            img[k] = entries[slot.gen][c][slot.basis];
        }
        imgs.push_back(std::move(img));
    }
    return from_projective(src, tgt.mod, imgs);
}

ElementMatrix projective_entries(const ProjModule& src, const ProjModule& tgt, const ModuleMap& f) {
    const auto& A = *src.mod.alg;
    auto lay = proj_layout(A, tgt.gens);
    auto imgs = generator_images(src, f);
    ElementMatrix e(tgt.gens.size(), std::vector<Element>(src.gens.size(), A.zero()));
    for (std::size_t c = 0; c < src.gens.size(); ++c) {
        int v = src.gens[c];
        for (std::size_t k = 0; k < lay[v].size(); ++k) e[lay[v][k].gen][c][lay[v][k].basis] = imgs[c][k];
    }
    return e;
}

// ---- Hom ----

std::vector<ModuleMap> hom_basis(const Module& m, const Module& n) {
    require_same(m.alg, n.alg, "hom_basis");
    if (m.is_zero() || n.is_zero()) return {};
    // A map M -> N is a map P0 -> N killing the kernel of the cover P0 ->> M.
    Cover cov = projective_cover(m);
    const auto& A = *m.alg;
    const auto& gens = cov.proj.gens;
    auto lay = proj_layout(A, gens);
    std::vector<std::size_t> uoff(gens.size() + 1, 0);
    for (std::size_t t = 0; t < gens.size(); ++t) uoff[t + 1] = uoff[t] + n.dims[gens[t]];
    const std::size_t unknowns = uoff.back();
    if (unknowns == 0) return {};
    ActionCache act(n);
    std::vector<Matrix> eq_rows;
    std::size_t total_rows = 0;
    for (int v = 0; v < A.num_vertices(); ++v) {
        if (!n.dims[v] || lay[v].empty()) continue;
        Matrix ker = la::kernel_basis(cov.map.blocks[v]);
        for (std::size_t c = 0; c < ker.cols(); ++c) {
            Matrix rows(n.dims[v], unknowns);
            for (std::size_t k = 0; k < lay[v].size(); ++k) {
                Scalar x = ker(k, c);
                if (!x) continue;
                const auto& slot = lay[v][k];
                Matrix blk = rows.block(0, uoff[slot.gen], n.dims[v], n.dims[gens[slot.gen]]);
                rows.set_block(0, uoff[slot.gen], blk + act(slot.basis).scaled(x));
            }
            total_rows += rows.rows();
            eq_rows.push_back(std::move(rows));
        }
    }
    Matrix sys(total_rows, unknowns);
    std::size_t r = 0;
    for (const auto& e : eq_rows) {
        sys.set_block(r, 0, e);
        r += e.rows();
    }
    Matrix sol = la::kernel_basis(sys);
    // right inverses of the cover blocks
    std::vector<Matrix> rinv;
    for (int v = 0; v < A.num_vertices(); ++v) {
        if (!m.dims[v]) {
            rinv.emplace_back(cov.proj.mod.dims[v], 0);
            continue;
        }
        auto x = la::solve(cov.map.blocks[v], Matrix::identity(m.dims[v]));
        rinv.push_back(*x);
    }
    std::vector<ModuleMap> out;
    for (std::size_t c = 0; c < sol.cols(); ++c) {
        std::vector<std::vector<Scalar>> imgs(gens.size());
        for (std::size_t t = 0; t < gens.size(); ++t)
            for (std::size_t k = uoff[t]; k < uoff[t + 1]; ++k) imgs[t].push_back(sol(k, c));
        ModuleMap phi = from_projective(cov.proj, n, imgs);
        ModuleMap f = zero_map(m, n);
        for (int v = 0; v < A.num_vertices(); ++v)
            if (m.dims[v] && n.dims[v]) f.blocks[v] = phi.blocks[v] * rinv[v];
        out.push_back(std::move(f));
    }
    return out;
}

std::size_t hom_dim(const Module& m, const Module& n) { return hom_basis(m, n).size(); }

Matrix hom_matrix(const std::vector<ModuleMap>& basis, const Module& m, const Module& n) {
    std::size_t len = 0;
    for (std::size_t v = 0; v < m.dims.size(); ++v) len += m.dims[v] * n.dims[v];
    Matrix h(len, basis.size());
    for (std::size_t c = 0; c < basis.size(); ++c) {
        auto f = flatten(basis[c]);
        for (std::size_t i = 0; i < len; ++i) h(i, c) = f[i];
    }
    return h;
}

namespace {

std::optional<std::vector<Scalar>> solve_in_span(const std::vector<ModuleMap>& cands, const ModuleMap& g) {
    Matrix h = hom_matrix(cands, g.src, g.tgt);
    auto rhs = flatten(g);
    if (cands.empty()) {
        if (std::all_of(rhs.begin(), rhs.end(), [](Scalar x) { return x == 0; })) return std::vector<Scalar>{};
        return std::nullopt;
    }
    auto x = la::solve(h, Matrix::column_vector(rhs));
    if (!x) return std::nullopt;
    return x->column_values(0);
}

}  // namespace

std::optional<ModuleMap> factor_through_left(const ModuleMap& g, const ModuleMap& f) {
    auto basis = hom_basis(f.tgt, g.tgt);
    std::vector<ModuleMap> comps;
    for (const auto& h : basis) comps.push_back(compose(h, f));
    auto c = solve_in_span(comps, g);
    if (!c) return std::nullopt;
    return combination(basis, *c, f.tgt, g.tgt);
}

std::optional<ModuleMap> factor_through_right(const ModuleMap& g, const ModuleMap& f) {
    auto basis = hom_basis(g.src, f.src);
    std::vector<ModuleMap> comps;
    for (const auto& h : basis) comps.push_back(compose(f, h));
    auto c = solve_in_span(comps, g);
    if (!c) return std::nullopt;
    return combination(basis, *c, g.src, f.src);
}

// ---- sub and quotient ----

Sub submodule(const Module& m, const std::vector<Matrix>& spaces) {
    const auto& q = m.alg->quiver();
    std::vector<Split> sp;
    for (int v = 0; v < m.num_vertices(); ++v) sp.push_back(split_space(spaces[v], m.dims[v]));
    Module s{m.alg, {}, {}};
    for (const auto& x : sp) s.dims.push_back(x.basis.cols());
    for (int a = 0; a < q.num_arrows(); ++a) {
        int src = q.arrows[a].source, tgt = q.arrows[a].target;
        s.act.push_back(sp[src].left_sub * (m.act[a] * sp[tgt].basis));
    }
    ModuleMap incl{s, m, {}};
    for (const auto& x : sp) incl.blocks.push_back(x.basis);
    return {s, incl};
}

Quot quotient(const Module& m, const std::vector<Matrix>& spaces) {
    const auto& q = m.alg->quiver();
    std::vector<Split> sp;
    for (int v = 0; v < m.num_vertices(); ++v) sp.push_back(split_space(spaces[v], m.dims[v]));
    Module s{m.alg, {}, {}};
    for (const auto& x : sp) s.dims.push_back(x.comp.cols());
    for (int a = 0; a < q.num_arrows(); ++a) {
        int src = q.arrows[a].source, tgt = q.arrows[a].target;
        s.act.push_back(sp[src].left_comp * (m.act[a] * sp[tgt].comp));
    }
    ModuleMap proj{m, s, {}};
    for (const auto& x : sp) proj.blocks.push_back(x.left_comp);
    return {s, proj};
}

Sub kernel(const ModuleMap& f) {
    std::vector<Matrix> sp;
    for (const auto& b : f.blocks) sp.push_back(la::kernel_basis(b));
    return submodule(f.src, sp);
}

Quot cokernel(const ModuleMap& f) {
    std::vector<Matrix> sp;
    for (const auto& b : f.blocks) sp.push_back(la::image_basis(b));
    return quotient(f.tgt, sp);
}

ModuleMap corestrict(const ModuleMap& f, const Sub& s) {
    ModuleMap c{f.src, s.mod, {}};
    for (std::size_t v = 0; v < f.blocks.size(); ++v) {
        if (!s.mod.dims[v] || !f.src.dims[v]) {
            c.blocks.emplace_back(s.mod.dims[v], f.src.dims[v]);
            continue;
        }
        auto x = la::solve(s.incl.blocks[v], f.blocks[v]);
        if (!x) throw std::invalid_argument("corestrict: map leaves the submodule");
        c.blocks.push_back(*x);
    }
    return c;
}

ModuleMap induced_on_quotients(const ModuleMap& g, const Quot& q, const Quot& r) {
    ModuleMap h{q.mod, r.mod, {}};
    for (std::size_t v = 0; v < g.blocks.size(); ++v) {
        if (!q.mod.dims[v] || !r.mod.dims[v]) {
            h.blocks.emplace_back(r.mod.dims[v], q.mod.dims[v]);
            continue;
        }
        auto sec = la::solve(q.proj.blocks[v], Matrix::identity(q.mod.dims[v]));
        h.blocks.push_back(r.proj.blocks[v] * (g.blocks[v] * *sec));
    }
    return h;
}

ModuleMap grid_map(const std::vector<Module>& srcs, const std::vector<Module>& tgts,
                   const std::vector<std::vector<std::optional<ModuleMap>>>& grid, const AlgebraPtr& alg) {
    Module s = direct_sum(srcs, alg), t = direct_sum(tgts, alg);
    ModuleMap f = zero_map(s, t);
    for (int v = 0; v < alg->num_vertices(); ++v) {
        std::size_t r0 = 0;
        for (std::size_t r = 0; r < tgts.size(); ++r) {
            std::size_t c0 = 0;
            for (std::size_t c = 0; c < srcs.size(); ++c) {
                if (grid[r][c] && tgts[r].dims[v] && srcs[c].dims[v]) f.blocks[v].set_block(r0, c0, grid[r][c]->blocks[v]);
                c0 += srcs[c].dims[v];
            }
            r0 += tgts[r].dims[v];
        }
    }
    return f;
}

Sub image(const ModuleMap& f) { return image_factorization(f).first; }

std::pair<Sub, ModuleMap> image_factorization(const ModuleMap& f) {
    std::vector<Matrix> sp;
    for (const auto& b : f.blocks) sp.push_back(la::image_basis(b));
    Sub s = submodule(f.tgt, sp);
    ModuleMap c{f.src, s.mod, {}};
    for (std::size_t v = 0; v < f.blocks.size(); ++v) {
        Split x = split_space(sp[v], f.tgt.dims[v]);
        c.blocks.push_back(x.left_sub * f.blocks[v]);
    }
    return {s, c};
}

std::vector<Matrix> radical_spaces(const Module& m) { return radical_power_spaces(m, 1); }

std::vector<Matrix> radical_power_spaces(const Module& m, int k) {
    const auto& q = m.alg->quiver();
    std::vector<Matrix> cur;
    for (auto d : m.dims) cur.push_back(Matrix::identity(d));
    for (int step = 0; step < k; ++step) {
        std::vector<Matrix> nxt;
        for (int v = 0; v < m.num_vertices(); ++v) nxt.emplace_back(m.dims[v], 0);
        for (int a = 0; a < q.num_arrows(); ++a) {
            int s = q.arrows[a].source, t = q.arrows[a].target;
            if (!m.dims[s] || !cur[t].cols()) continue;
            nxt[s] = la::sum_spaces(nxt[s], m.act[a] * cur[t]);
        }
        cur = std::move(nxt);
    }
    return cur;
}

std::vector<Matrix> socle_spaces(const Module& m) {
    const auto& q = m.alg->quiver();
    std::vector<Matrix> out;
    for (int v = 0; v < m.num_vertices(); ++v) {
        Matrix stack(0, m.dims[v]);
        for (int a = 0; a < q.num_arrows(); ++a)
            if (q.arrows[a].target == v) stack = Matrix::vstack(stack, m.act[a]);
        out.push_back(stack.rows() ? la::kernel_basis(stack) : Matrix::identity(m.dims[v]));
    }
    return out;
}

Sub radical(const Module& m) { return submodule(m, radical_spaces(m)); }
Sub radical_power(const Module& m, int k) { return submodule(m, radical_power_spaces(m, k)); }
Quot top(const Module& m) { return quotient(m, radical_spaces(m)); }
Sub socle(const Module& m) { return submodule(m, socle_spaces(m)); }

std::vector<std::size_t> top_dims(const Module& m) {
    auto r = radical_spaces(m);
    std::vector<std::size_t> out;
    for (int v = 0; v < m.num_vertices(); ++v) out.push_back(m.dims[v] - r[v].cols());
    return out;
}

std::vector<std::size_t> socle_dims(const Module& m) {
    std::vector<std::size_t> out;
    for (const auto& s : socle_spaces(m)) out.push_back(s.cols());
    return out;
}

Cover projective_cover(const Module& m) {
    auto rad = radical_spaces(m);
    std::vector<int> gens;
    std::vector<std::vector<Scalar>> imgs;
    for (int v = 0; v < m.num_vertices(); ++v) {
        Matrix c = complement_basis(rad[v].cols() ? rad[v] : Matrix(m.dims[v], 0), m.dims[v]);
        for (std::size_t k = 0; k < c.cols(); ++k) {
            gens.push_back(v);
            imgs.push_back(c.column_values(k));
        }
    }
    ProjModule p = projective(m.alg, gens);
    ModuleMap pi = from_projective(p, m, imgs);
    return {p, pi};
}

Envelope injective_envelope(const Module& m) {
    AlgebraPtr op = opposite(m.alg);
    Module dm = dual(m, op);
    Cover c = projective_cover(dm);
    ModuleMap f = dual(c.map, m.alg);  // D(DM) = M -> D(P)
    f.src = m;
    return {f.tgt, c.proj.gens, f};
}

bool is_projective(const Module& m) {
    Cover c = projective_cover(m);
    return c.proj.mod.total() == m.total();
}

bool is_injective(const Module& m) {
    Envelope e = injective_envelope(m);
    return e.inj.total() == m.total();
}

// ---- isomorphism ----

namespace {

Json dims_json(const Module& m) { return Json(m.dims); }

}  // namespace

IsoResult is_isomorphic(const Module& m, const Module& n, std::uint64_t seed) {
    require_same(m.alg, n.alg, "is_isomorphic");
    IsoResult res;
    if (m.dims != n.dims) {
        res.answer = CertifiedAnswer::make(Verdict::No, {{"invariant", "dim_vector"}, {"left", dims_json(m)}, {"right", dims_json(n)}});
        return res;
    }
    if (m.is_zero()) {
        res.answer = CertifiedAnswer::make(Verdict::Yes, {{"method", "zero"}});
        res.iso = identity(m);
        return res;
    }
    auto mn = hom_basis(m, n);
    auto nm = hom_basis(n, m);
    std::size_t em = hom_dim(m, m), en = hom_dim(n, n);
    if (mn.size() != nm.size() || em != en || mn.size() != em) {
        res.answer = CertifiedAnswer::make(Verdict::No, {{"invariant", "hom_dims"},
                                                         {"hom_mn", mn.size()},
                                                         {"hom_nm", nm.size()},
                                                         {"end_m", em},
                                                         {"end_n", en}});
        return res;
    }
    std::mt19937_64 rng(seed);
    const std::size_t draws = 200;
    for (std::size_t d = 0; d < draws; ++d) {
        ModuleMap f = combination(mn, coeffs(rng, mn.size()), m, n);
        if (blocks_invertible(f)) {
            res.answer = CertifiedAnswer::make(Verdict::Yes, {{"method", "random"}, {"draw", d}}, d + 1);
            res.iso = f;
            return res;
        }
    }
    const std::size_t p = la::prime();
    const std::size_t r = mn.size();
    double logsize = static_cast<double>(r) * std::log2(static_cast<double>(p));
    if (logsize <= 20.0) {
        std::vector<Scalar> c(r, 0);
        std::size_t count = 0;
        while (true) {
            ++count;
            ModuleMap f = combination(mn, c, m, n);
            if (blocks_invertible(f)) {
                res.answer = CertifiedAnswer::make(Verdict::Yes, {{"method", "exhaustive"}}, draws + count);
                res.iso = f;
                return res;
            }
            std::size_t i = 0;
            while (i < r && ++c[i] == p) c[i++] = 0;
            if (i == r) break;
        }
        res.answer = CertifiedAnswer::make(Verdict::No, {{"invariant", "exhaustive_search"}, {"hom_dim", r}}, draws + count);
        return res;
    }
    res.answer = CertifiedAnswer::make(Verdict::Undetermined, {{"hom_dim", r}}, draws);
    return res;
}

// ---- decomposition ----

namespace {

// Roots in F_p of the minimal polynomial of x restricted to Krylov spaces.
std::vector<Scalar> eigen_candidates(const Matrix& x, std::mt19937_64& rng) {
    const Scalar p = la::prime();
    std::vector<Scalar> out;
    if (p <= 16) {
        for (Scalar l = 0; l < p; ++l) out.push_back(l);
        return out;
    }
    const std::size_t n = x.rows();
    for (int trial = 0; trial < 3; ++trial) {
        Matrix v(n, 1);
        for (std::size_t i = 0; i < n; ++i) v(i, 0) = static_cast<Scalar>(rng() % p);
        Matrix kry = v;
        Matrix cur = v;
        std::optional<Matrix> rel;
        for (std::size_t k = 1; k <= n; ++k) {
            cur = x * cur;
            auto c = la::solve(kry, cur);
            if (c) {
                rel = c;
                break;
            }
            kry = Matrix::hstack(kry, cur);
        }
        if (!rel) continue;
        // t^k - sum c_i t^i
        std::size_t k = rel->rows();
        for (Scalar l = 0; l < p; ++l) {
            Scalar val = 1, pw = 1;
            for (std::size_t i = 0; i < k; ++i) pw = la::mul(pw, l);
            val = pw;
            Scalar li = 1;
            for (std::size_t i = 0; i < k; ++i) {
                val = la::sub(val, la::mul((*rel)(i, 0), li));
                li = la::mul(li, l);
            }
            if (!val && std::find(out.begin(), out.end(), l) == out.end()) out.push_back(l);
        }
    }
    return out;
}

ModuleMap shift_by(const ModuleMap& f, Scalar l) {
    ModuleMap g = f;
    for (std::size_t v = 0; v < g.blocks.size(); ++v) g.blocks[v] = g.blocks[v] - Matrix::identity(g.src.dims[v]).scaled(l);
    return g;
}

bool map_nilpotent(const ModuleMap& f) {
    for (std::size_t v = 0; v < f.blocks.size(); ++v)
        if (f.src.dims[v] && !mat_power(f.blocks[v], f.src.dims[v]).is_zero()) return false;
    return true;
}

// Fitting splitting along a non-nilpotent, non-invertible endomorphism.
std::optional<std::pair<Module, Module>> fitting_split(const ModuleMap& y) {
    if (map_nilpotent(y) || blocks_invertible(y)) return std::nullopt;
    const std::size_t n = y.src.total();
    std::vector<Matrix> im, ker;
    for (std::size_t v = 0; v < y.blocks.size(); ++v) {
        Matrix yn = mat_power(y.blocks[v], n);
        im.push_back(la::image_basis(yn));
        ker.push_back(la::kernel_basis(yn));
    }
    return std::make_pair(submodule(y.src, im).mod, submodule(y.src, ker).mod);
}

struct LocalTest {
    Verdict indecomposable = Verdict::Undetermined;
    std::optional<std::pair<Module, Module>> split;
};

ModuleMap mult_endo(const ModuleMap& a, const ModuleMap& b) { return compose(a, b); }

LocalTest test_local(const Module& m, std::uint64_t seed) {
    LocalTest out;
    auto E = hom_basis(m, m);
    if (E.size() <= 1) {
        out.indecomposable = Verdict::Yes;
        return out;
    }
    std::mt19937_64 rng(seed);
    auto try_elem = [&](const ModuleMap& x) -> bool {
        if (auto s = fitting_split(x)) {
            out.split = s;
            return true;
        }
        for (Scalar l : eigen_candidates(x.total(), rng)) {
            if (auto s = fitting_split(shift_by(x, l))) {
                out.split = s;
                return true;
            }
        }
        return false;
    };
    for (const auto& b : E)
        if (try_elem(b)) {
            out.indecomposable = Verdict::No;
            return out;
        }
    for (std::size_t i = 0; i < E.size(); ++i)
        for (std::size_t j = 0; j < E.size(); ++j)
            if (try_elem(mult_endo(E[i], E[j]))) {
                out.indecomposable = Verdict::No;
                return out;
            }
    for (int d = 0; d < 200; ++d)
        if (try_elem(combination(E, coeffs(rng, E.size()), m, m))) {
            out.indecomposable = Verdict::No;
            return out;
        }
    // Certify locality: W = span of nilpotent shifts b - l of the basis must be
    // a nilpotent two-sided ideal with E = F.1 + W.
    std::vector<ModuleMap> w;
    bool residue_ok = true;
    for (const auto& b : E) {
        bool found = false;
        if (map_nilpotent(b)) {
            w.push_back(b);
            continue;
        }
        for (Scalar l : eigen_candidates(b.total(), rng)) {
            ModuleMap s = shift_by(b, l);
            if (map_nilpotent(s)) {
                w.push_back(s);
                found = true;
                break;
            }
        }
        if (!found) {
            residue_ok = false;
            break;
        }
    }
    if (residue_ok) {
        Matrix wm = la::image_basis(hom_matrix(w, m, m));
        std::vector<ModuleMap> wb;
        {
            auto idx = la::rref(hom_matrix(w, m, m)).pivots;
            for (auto i : idx) wb.push_back(w[i]);
        }
        auto in_w = [&](const ModuleMap& f) {
            auto fl = flatten(f);
            if (!wm.cols()) return std::all_of(fl.begin(), fl.end(), [](Scalar x) { return x == 0; });
            return la::solve(wm, Matrix::column_vector(fl)).has_value();
        };
        bool ideal = true;
        for (const auto& x : wb) {
            for (const auto& b : E)
                if (!in_w(mult_endo(x, b)) || !in_w(mult_endo(b, x))) {
                    ideal = false;
                    break;
                }
            if (!ideal) break;
        }
        bool nilpotent = ideal;
        std::vector<ModuleMap> pw = wb;
        for (std::size_t k = 0; nilpotent && !pw.empty(); ++k) {
            if (k > m.total()) {
                nilpotent = false;
                break;
            }
            std::vector<ModuleMap> prod;
            for (const auto& x : pw)
                for (const auto& y : wb) prod.push_back(mult_endo(x, y));
            std::vector<ModuleMap> next;
            if (!prod.empty())
                for (auto i : la::rref(hom_matrix(prod, m, m)).pivots) next.push_back(prod[i]);
            pw = std::move(next);
        }
        if (nilpotent && wb.size() + 1 == E.size()) {
            out.indecomposable = Verdict::Yes;
            return out;
        }
    }
    // Exhaustive idempotent search.
    const std::size_t p = la::prime();
    double logsize = static_cast<double>(E.size()) * std::log2(static_cast<double>(p));
    if (logsize <= 20.0) {
        std::vector<Scalar> c(E.size(), 0);
        while (true) {
            ModuleMap e = combination(E, c, m, m);
            if (!e.is_zero() && !blocks_invertible(e) && equal_maps(compose(e, e), e)) {
                out.split = fitting_split(e);
                out.indecomposable = Verdict::No;
                return out;
            }
            std::size_t i = 0;
            while (i < c.size() && ++c[i] == p) c[i++] = 0;
            if (i == c.size()) break;
        }
        out.indecomposable = Verdict::Yes;
        return out;
    }
    return out;
}

}  // namespace

Verdict is_indecomposable(const Module& m, std::uint64_t seed) {
    if (m.is_zero()) return Verdict::No;
    return test_local(m, seed).indecomposable;
}

Decomposition decompose(const Module& m, std::uint64_t seed) {
    Decomposition dec;
    std::vector<Module> todo{m};
    std::vector<Module> pieces;
    while (!todo.empty()) {
        Module x = std::move(todo.back());
        todo.pop_back();
        if (x.is_zero()) continue;
        LocalTest t = test_local(x, seed);
        if (t.split) {
            // keep discovery order stable: first summand processed first
            todo.push_back(t.split->second);
            todo.push_back(t.split->first);
            continue;
        }
        if (t.indecomposable == Verdict::Undetermined) dec.status = Verdict::Undetermined;
        pieces.push_back(std::move(x));
    }
    for (auto& x : pieces) {
        bool merged = false;
        for (auto& [y, mult] : dec.parts) {
            auto r = is_isomorphic(x, y, seed);
            if (r.answer.yes()) {
                ++mult;
                merged = true;
                break;
            }
            if (r.answer.undetermined()) dec.status = Verdict::Undetermined;
        }
        if (!merged) dec.parts.emplace_back(x, 1);
    }
    return dec;
}

std::string dims_string(const Module& m) {
    std::ostringstream os;
    os << '(';
    for (std::size_t i = 0; i < m.dims.size(); ++i) os << (i ? "," : "") << m.dims[i];
    os << ')';
    return os.str();
}

Json matrix_to_json(const Matrix& m) {
    Json rows = Json::array();
    for (std::size_t i = 0; i < m.rows(); ++i) {
        Json r = Json::array();
        for (std::size_t k = 0; k < m.cols(); ++k) r.push_back(m(i, k));
        rows.push_back(r);
    }
    return rows;
}

Json module_to_json(const Module& m) {
    Json j;
    j["dims"] = m.dims;
    Json arrows = Json::object();
    const auto& q = m.alg->quiver();
    for (int a = 0; a < q.num_arrows(); ++a) {
        Json rows = Json::array();
        for (std::size_t i = 0; i < m.act[a].rows(); ++i) {
            Json r = Json::array();
            for (std::size_t k = 0; k < m.act[a].cols(); ++k) r.push_back(m.act[a](i, k));
            rows.push_back(r);
        }
        arrows[q.arrows[a].label] = rows;
    }
    j["arrows"] = arrows;
    return j;
}

}  // namespace singcat
