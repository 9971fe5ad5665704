#include "singcat/complex.hpp"

#include <algorithm>
#include <map>

namespace singcat {

namespace la = linalg;

Module Complex::term(int i) const {
    if (i < lo || i > hi()) return zero_module(alg);
    return terms[i - lo];
}

ModuleMap Complex::diff(int i) const {
    if (i < lo || i > hi()) return zero_map(term(i), term(i + 1));
    return d[i - lo];
}

bool Complex::is_zero() const {
    for (const auto& t : terms)
        if (!t.is_zero()) return false;
    return true;
}

ModuleMap ChainMap::at(int i) const {
    int k = i - lo;
    if (k < 0 || k >= static_cast<int>(maps.size())) return zero_map(src.term(i), tgt.term(i));
    return maps[k];
}

Complex zero_complex(const AlgebraPtr& alg) { return Complex{alg, 0, {}, {}}; }

Complex stalk(const Module& m, int degree) {
    return Complex{m.alg, degree, {m}, {zero_map(m, zero_module(m.alg))}};
}

Complex make_complex(const AlgebraPtr& alg, int lo, std::vector<Module> terms, std::vector<ModuleMap> d) {
    if (!terms.empty() && d.size() + 1 != terms.size()) throw std::invalid_argument("make_complex: need one map fewer than terms");
    Complex x{alg, lo, std::move(terms), std::move(d)};
    if (!x.terms.empty()) x.d.push_back(zero_map(x.terms.back(), zero_module(alg)));
    return x;
}

void check_complex(const Complex& x) {
    for (int i = x.lo; i <= x.hi(); ++i) {
        ModuleMap a = x.diff(i);
        if (!is_equivariant(a)) throw std::invalid_argument("complex: differential not a module map in degree " + std::to_string(i));
        if (!compose(x.diff(i + 1), a).is_zero()) throw std::invalid_argument("complex: d o d != 0 in degree " + std::to_string(i));
    }
}

bool is_chain_map(const ChainMap& f) {
    int lo = std::min(f.src.lo, f.tgt.lo) - 1, hi = std::max(f.src.hi(), f.tgt.hi()) + 1;
    for (int i = lo; i <= hi; ++i) {
        if (!is_equivariant(f.at(i))) return false;
        if (!equal_maps(compose(f.tgt.diff(i), f.at(i)), compose(f.at(i + 1), f.src.diff(i)))) return false;
    }
    return true;
}

Complex trim(const Complex& x) {
    int a = x.lo, b = x.hi();
    while (a <= b && x.term(a).is_zero()) ++a;
    while (b >= a && x.term(b).is_zero()) --b;
    if (a > b) return zero_complex(x.alg);
    Complex y{x.alg, a, {}, {}};
    for (int i = a; i <= b; ++i) {
        y.terms.push_back(x.term(i));
        y.d.push_back(i == b ? zero_map(x.term(i), zero_module(x.alg)) : x.diff(i));
    }
    return y;
}

Complex shift(const Complex& x, int n) {
    Complex y = x;
    y.lo = x.lo - n;
    if (n % 2)
        for (auto& m : y.d) m = scale(m, la::neg(1));
    return y;
}

namespace {

std::pair<int, int> span_of(const Complex& x, const Complex& y) {
    if (x.empty()) return {y.lo, y.hi()};
    if (y.empty()) return {x.lo, x.hi()};
    return {std::min(x.lo, y.lo), std::max(x.hi(), y.hi())};
}

Complex assemble(const AlgebraPtr& alg, int lo, int hi, const std::map<int, Module>& t, const std::map<int, ModuleMap>& d) {
    Complex c{alg, lo, {}, {}};
    for (int i = lo; i <= hi; ++i) {
        c.terms.push_back(t.at(i));
        if (i < hi)
            c.d.push_back(d.at(i));
        else
            c.d.push_back(zero_map(t.at(i), zero_module(alg)));
    }
    return c;
}

using Grid = std::vector<std::vector<std::optional<ModuleMap>>>;

}  // namespace

Complex direct_sum(const Complex& x, const Complex& y) {
    if (x.empty()) return y;
    if (y.empty()) return x;
    auto [lo, hi] = span_of(x, y);
    std::map<int, Module> t;
    std::map<int, ModuleMap> d;
    for (int i = lo; i <= hi; ++i) {
        t.emplace(i, direct_sum(x.term(i), y.term(i)));
        d.emplace(i, direct_sum(x.diff(i), y.diff(i)));
    }
    return assemble(x.alg, lo, hi, t, d);
}

Complex cone(const ChainMap& f) {
    const Complex& X = f.src;
    const Complex& Y = f.tgt;
    const AlgebraPtr& alg = X.alg ? X.alg : Y.alg;
    int lo, hi;
    if (X.empty() && Y.empty()) return zero_complex(alg);
    if (X.empty()) {
        lo = Y.lo;
        hi = Y.hi();
    } else if (Y.empty()) {
        lo = X.lo - 1;
        hi = X.hi() - 1;
    } else {
        lo = std::min(X.lo - 1, Y.lo);
        hi = std::max(X.hi() - 1, Y.hi());
    }
    std::map<int, Module> t;
    std::map<int, ModuleMap> d;
    for (int i = lo; i <= hi; ++i) t.emplace(i, direct_sum(X.term(i + 1), Y.term(i)));
    for (int i = lo; i < hi; ++i) {
        Grid g(2, std::vector<std::optional<ModuleMap>>(2));
        g[0][0] = scale(X.diff(i + 1), la::neg(1));
        g[1][0] = f.at(i + 1);
        g[1][1] = Y.diff(i);
        d.emplace(i, grid_map({X.term(i + 1), Y.term(i)}, {X.term(i + 2), Y.term(i + 1)}, g, alg));
    }
    return assemble(alg, lo, hi, t, d);
}

ChainMap identity(const Complex& x) {
    ChainMap f{x, x, x.lo, {}};
    for (const auto& t : x.terms) f.maps.push_back(identity(t));
    return f;
}

ChainMap zero_chain_map(const Complex& x, const Complex& y) {
    auto [lo, hi] = span_of(x, y);
    ChainMap f{x, y, lo, {}};
    for (int i = lo; i <= hi; ++i) f.maps.push_back(zero_map(x.term(i), y.term(i)));
    return f;
}

ChainMap compose(const ChainMap& g, const ChainMap& f) {
    auto [lo, hi] = span_of(f.src, g.tgt);
    ChainMap h{f.src, g.tgt, lo, {}};
    for (int i = lo; i <= hi; ++i) h.maps.push_back(compose(g.at(i), f.at(i)));
    return h;
}

ChainMap shift(const ChainMap& f, int n) {
    ChainMap g{shift(f.src, n), shift(f.tgt, n), f.lo - n, f.maps};
    return g;
}

Complex dual(const Complex& x, const AlgebraPtr& target_alg) {
    if (x.empty()) return zero_complex(target_alg ? target_alg : opposite(x.alg));
    AlgebraPtr alg = target_alg ? target_alg : opposite(x.alg);
    std::map<int, Module> t;
    std::map<int, ModuleMap> d;
    int lo = -x.hi(), hi = -x.lo;
    for (int i = lo; i <= hi; ++i) t.emplace(i, dual(x.term(-i), alg));
    for (int i = lo; i < hi; ++i) d.emplace(i, dual(x.diff(-i - 1), alg));
    return assemble(alg, lo, hi, t, d);
}

Module homology(const Complex& x, int i) {
    Sub k = kernel(x.diff(i));
    ModuleMap into = corestrict(x.diff(i - 1), k);
    return cokernel(into).mod;
}

std::vector<std::size_t> homology_dims(const Complex& x, int i) {
    ModuleMap out = x.diff(i), in = x.diff(i - 1);
    std::vector<std::size_t> h;
    for (std::size_t v = 0; v < out.blocks.size(); ++v)
        h.push_back(x.term(i).dims[v] - la::rank(out.blocks[v]) - la::rank(in.blocks[v]));
    return h;
}

bool is_acyclic(const Complex& x) {
    for (int i = x.lo; i <= x.hi(); ++i)
        for (auto v : homology_dims(x, i))
            if (v) return false;
    return true;
}

CertifiedAnswer same_homology(const Complex& x, const Complex& y, std::uint64_t seed) {
    auto [lo, hi] = span_of(x, y);
    Json per = Json::array();
    Verdict overall = Verdict::Yes;
    for (int i = lo; i <= hi; ++i) {
        auto r = is_isomorphic(homology(x, i), homology(y, i), seed);
        per.push_back({{"degree", i}, {"verdict", to_string(r.answer.verdict)}});
        if (r.answer.no()) return CertifiedAnswer::make(Verdict::No, {{"degree", i}, {"reason", r.answer.witness}});
        if (r.answer.undetermined()) overall = Verdict::Undetermined;
    }
    return CertifiedAnswer::make(overall, {{"degrees", per}});
}

bool all_projective(const Complex& x) {
    for (const auto& t : x.terms)
        if (!is_projective(t)) return false;
    return true;
}

bool all_injective(const Complex& x) {
    for (const auto& t : x.terms)
        if (!is_injective(t)) return false;
    return true;
}

// ---- Hom complex ----

namespace {

struct Piece {
    int i;
    ModuleMap f;  // X^i -> Y^{i+n}
};

struct HomDegree {
    int n;
    std::vector<Piece> basis;
    std::vector<std::size_t> offsets;  // ambient offset per source degree
    std::size_t ambient = 0;
};

HomDegree hom_degree(const Complex& x, const Complex& y, int n) {
    HomDegree h{n, {}, {}, 0};
    for (int i = x.lo; i <= x.hi(); ++i) {
        h.offsets.push_back(h.ambient);
        Module a = x.term(i), b = y.term(i + n);
        for (std::size_t v = 0; v < a.dims.size(); ++v) h.ambient += a.dims[v] * b.dims[v];
        if (a.is_zero() || b.is_zero()) continue;
        for (auto& f : hom_basis(a, b)) h.basis.push_back({i, std::move(f)});
    }
    return h;
}

void put(std::vector<Scalar>& vec, const HomDegree& h, const Complex& x, int i, const ModuleMap& f) {
    if (i < x.lo || i > x.hi()) return;
    std::size_t off = h.offsets[i - x.lo];
    auto fl = flatten(f);
    for (std::size_t k = 0; k < fl.size(); ++k) vec[off + k] = la::add(vec[off + k], fl[k]);
}

// delta of every basis element of degree n, as ambient vectors of degree n + 1.
Matrix delta_matrix(const Complex& x, const Complex& y, const HomDegree& from, const HomDegree& to) {
    Matrix m(to.ambient, from.basis.size());
    const int n = from.n;
    Scalar sign = (n % 2 == 0) ? la::neg(1) : 1;  // -(-1)^n
    for (std::size_t c = 0; c < from.basis.size(); ++c) {
        const auto& p = from.basis[c];
        std::vector<Scalar> vec(to.ambient, 0);
        put(vec, to, x, p.i, compose(y.diff(p.i + n), p.f));
        put(vec, to, x, p.i - 1, scale(compose(p.f, x.diff(p.i - 1)), sign));
        for (std::size_t r = 0; r < vec.size(); ++r) m(r, c) = vec[r];
    }
    return m;
}

Matrix basis_vectors(const Complex& x, const HomDegree& h) {
    Matrix m(h.ambient, h.basis.size());
    for (std::size_t c = 0; c < h.basis.size(); ++c) {
        std::vector<Scalar> vec(h.ambient, 0);
        put(vec, h, x, h.basis[c].i, h.basis[c].f);
        for (std::size_t r = 0; r < vec.size(); ++r) m(r, c) = vec[r];
    }
    return m;
}

ChainMap chain_map_from(const Complex& x, const Complex& y, const HomDegree& h0, const std::vector<Scalar>& coeff) {
    ChainMap f = zero_chain_map(x, y);
    for (std::size_t c = 0; c < h0.basis.size(); ++c) {
        if (!coeff[c]) continue;
        int i = h0.basis[c].i;
        int k = i - f.lo;
        f.maps[k] = add(f.maps[k], scale(h0.basis[c].f, coeff[c]));
    }
    return f;
}

std::vector<Scalar> chain_vector(const ChainMap& f, const HomDegree& h0) {
    std::vector<Scalar> vec(h0.ambient, 0);
    for (int i = f.src.lo; i <= f.src.hi(); ++i) put(vec, h0, f.src, i, f.at(i));
    return vec;
}

}  // namespace

std::size_t hom_k_dim(const Complex& x, const Complex& y) {
    if (x.empty() || y.empty()) return 0;
    HomDegree hm = hom_degree(x, y, -1), h0 = hom_degree(x, y, 0), h1 = hom_degree(x, y, 1);
    std::size_t z = h0.basis.size() - la::rank(delta_matrix(x, y, h0, h1));
    std::size_t b = la::rank(delta_matrix(x, y, hm, h0));
    return z - b;
}

std::vector<ChainMap> hom_k_basis(const Complex& x, const Complex& y) {
    if (x.empty() || y.empty()) return {};
    HomDegree hm = hom_degree(x, y, -1), h0 = hom_degree(x, y, 0), h1 = hom_degree(x, y, 1);
    Matrix zk = la::kernel_basis(delta_matrix(x, y, h0, h1));  // coefficients in h0 basis
    Matrix zv = basis_vectors(x, h0) * zk;
    Matrix bv = delta_matrix(x, y, hm, h0);
    Matrix bimg = la::image_basis(bv);
    Matrix both = Matrix::hstack(bimg, zv);
    auto piv = la::rref(both).pivots;
    std::vector<ChainMap> out;
    for (auto p : piv) {
        if (p < bimg.cols()) continue;
        out.push_back(chain_map_from(x, y, h0, zk.column_values(p - bimg.cols())));
    }
    return out;
}

std::vector<std::size_t> hom_complex_homology(const Complex& x, const Complex& y, int from, int to) {
    std::vector<std::size_t> out;
    for (int n = from; n <= to; ++n) {
        if (x.empty() || y.empty()) {
            out.push_back(0);
            continue;
        }
        HomDegree hm = hom_degree(x, y, n - 1), h0 = hom_degree(x, y, n), h1 = hom_degree(x, y, n + 1);
        std::size_t z = h0.basis.size() - la::rank(delta_matrix(x, y, h0, h1));
        out.push_back(z - la::rank(delta_matrix(x, y, hm, h0)));
    }
    return out;
}

bool is_null_homotopic(const ChainMap& f) {
    const Complex& x = f.src;
    const Complex& y = f.tgt;
    if (x.empty() || y.empty()) return true;
    HomDegree hm = hom_degree(x, y, -1), h0 = hom_degree(x, y, 0);
    Matrix bv = delta_matrix(x, y, hm, h0);
    auto vec = chain_vector(f, h0);
    if (std::all_of(vec.begin(), vec.end(), [](Scalar s) { return s == 0; })) return true;
    if (!bv.cols()) return false;
    return la::solve(bv, Matrix::column_vector(vec)).has_value();
}

struct HomKSpace::Impl {
    Complex x, y;
    HomDegree h0;
    Matrix both;  // boundaries then basis, as ambient vectors
    std::size_t nb = 0;
};

HomKSpace::HomKSpace(const Complex& x, const Complex& y) {
    auto im = std::make_shared<Impl>();
    im->x = x;
    im->y = y;
    if (!x.empty() && !y.empty()) {
        HomDegree hm = hom_degree(x, y, -1);
        im->h0 = hom_degree(x, y, 0);
        HomDegree h1 = hom_degree(x, y, 1);
        Matrix zk = la::kernel_basis(delta_matrix(x, y, im->h0, h1));
        Matrix zv = basis_vectors(x, im->h0) * zk;
        Matrix bimg = la::image_basis(delta_matrix(x, y, hm, im->h0));
        auto piv = la::rref(Matrix::hstack(bimg, zv)).pivots;
        std::vector<std::size_t> keep;
        for (auto p : piv)
            if (p >= bimg.cols()) keep.push_back(p - bimg.cols());
        for (auto k : keep) basis_.push_back(chain_map_from(x, y, im->h0, zk.column_values(k)));
        im->nb = bimg.cols();
        im->both = Matrix::hstack(bimg, zv.columns(keep));
    }
    impl_ = std::move(im);
}

std::vector<Scalar> HomKSpace::coords(const ChainMap& f) const {
    std::vector<Scalar> out(basis_.size(), 0);
    if (basis_.empty()) return out;
    auto vec = chain_vector(f, impl_->h0);
    auto sol = la::solve(impl_->both, Matrix::column_vector(vec));
    if (!sol) throw std::invalid_argument("HomKSpace::coords: not a chain map between the stored complexes");
    for (std::size_t k = 0; k < out.size(); ++k) out[k] = (*sol)(impl_->nb + k, 0);
    return out;
}

ChainMap HomKSpace::combine(const std::vector<Scalar>& c) const {
    ChainMap f = zero_chain_map(impl_->x, impl_->y);
    for (std::size_t k = 0; k < basis_.size(); ++k) {
        if (!c[k]) continue;
        for (int i = f.lo; i < f.lo + static_cast<int>(f.maps.size()); ++i)
            f.maps[i - f.lo] = add(f.maps[i - f.lo], scale(basis_[k].at(i), c[k]));
    }
    return f;
}

MinimalComplex minimize_projective_complex(const Complex& x0) {
    const AlgebraPtr& alg = x0.alg;
    if (x0.empty()) return {x0, identity(x0), identity(x0)};
    std::map<int, Module> t;
    std::map<int, ModuleMap> d, inc, prj;
    int lo = x0.lo, hi = x0.hi();
    for (int i = lo; i <= hi; ++i) {
        t.emplace(i, x0.term(i));
        d.emplace(i, x0.diff(i));
        inc.emplace(i, identity(x0.term(i)));
        prj.emplace(i, identity(x0.term(i)));
    }
    for (bool changed = true; changed;) {
        changed = false;
        for (int i = lo; i < hi && !changed; ++i) {
            const ModuleMap di = d.at(i);
            const Module t_old_i = t.at(i), t_old_n = t.at(i + 1);
            Quot tp = top(t.at(i + 1));
            ModuleMap tm = compose(tp.proj, di);
            if (tm.is_zero()) continue;
            auto [ims, tmc] = image_factorization(tm);
            Cover c = projective_cover(ims.mod);
            ModuleMap s = lift_from_projective(c.proj, c.map, tmc);
            ModuleMap j = compose(di, s);
            auto p = factor_through_left(identity(c.proj.mod), j);
            if (!p) throw std::logic_error("minimize_projective_complex: no retraction");
            Sub k = kernel(compose(*p, di));
            Sub l = kernel(*p);
            if (i > lo) d.at(i - 1) = corestrict(d.at(i - 1), k);
            ModuleMap dn = corestrict(compose(di, k.incl), l);
            d.at(i + 1) = compose(d.at(i + 1), l.incl);
            d.at(i) = dn;
            t.at(i) = k.mod;
            t.at(i + 1) = l.mod;
            inc.at(i) = compose(inc.at(i), k.incl);
            inc.at(i + 1) = compose(inc.at(i + 1), l.incl);
            // projections along s(Q) and j(Q)
            ModuleMap pk = corestrict(sub(identity(t_old_i), compose(s, compose(*p, di))), k);
            ModuleMap pl = corestrict(sub(identity(t_old_n), compose(j, *p)), l);
            prj.at(i) = compose(pk, prj.at(i));
            prj.at(i + 1) = compose(pl, prj.at(i + 1));
            changed = true;
        }
    }
    while (lo <= hi && t.at(lo).is_zero()) ++lo;
    while (hi >= lo && t.at(hi).is_zero()) --hi;
    if (lo > hi) {
        Complex z = zero_complex(alg);
        return {z, zero_chain_map(z, x0), zero_chain_map(x0, z)};
    }
    std::vector<Module> terms;
    std::vector<ModuleMap> ds, maps, pmaps;
    for (int i = lo; i <= hi; ++i) {
        terms.push_back(t.at(i));
        if (i < hi) ds.push_back(d.at(i));
        maps.push_back(inc.at(i));
        pmaps.push_back(prj.at(i));
    }
    Complex m = make_complex(alg, lo, terms, ds);
    return {m, ChainMap{m, x0, lo, maps}, ChainMap{x0, m, lo, pmaps}};
}

// ---- syzygies of complexes ----

SyzygyData syzygy_data(const Complex& x) {
    const AlgebraPtr& alg = x.alg;
    SyzygyData out;
    if (x.empty()) {
        out.omega = out.cover = zero_complex(alg);
        out.incl = zero_chain_map(out.omega, out.cover);
        out.eps = zero_chain_map(out.cover, x);
        return out;
    }
    const int lo = x.lo, hi = x.hi() + 1;
    std::map<int, Cover> cov;
    for (int i = x.lo; i <= x.hi(); ++i) cov.emplace(i, projective_cover(x.term(i)));
    auto A = [&](int i) { return cov.count(i) ? cov.at(i).proj.mod : zero_module(alg); };
    auto pi = [&](int i) { return cov.count(i) ? cov.at(i).map : zero_map(zero_module(alg), x.term(i)); };
    std::map<int, Module> t;
    std::map<int, ModuleMap> d;
    for (int i = lo; i <= hi; ++i) t.emplace(i, direct_sum(A(i), A(i - 1)));
    for (int i = lo; i < hi; ++i) {
        Grid g(2, std::vector<std::optional<ModuleMap>>(2));
        g[1][0] = identity(A(i));
        d.emplace(i, grid_map({A(i), A(i - 1)}, {A(i + 1), A(i)}, g, alg));
    }
    out.cover = assemble(alg, lo, hi, t, d);
    out.eps = ChainMap{out.cover, x, lo, {}};
    for (int i = lo; i <= hi; ++i) {
        Grid g(1, std::vector<std::optional<ModuleMap>>(2));
        g[0][0] = pi(i);
        g[0][1] = compose(x.diff(i - 1), pi(i - 1));
        out.eps.maps.push_back(grid_map({A(i), A(i - 1)}, {x.term(i)}, g, alg));
    }
    for (int i = lo; i <= hi; ++i) {
        Grid g(2, std::vector<std::optional<ModuleMap>>(2));
        g[0][1] = identity(A(i - 1));
        out.homotopy.push_back(grid_map({A(i), A(i - 1)}, {A(i - 1), A(i - 2)}, g, alg));
    }
    std::map<int, Sub> ker;
    for (int i = lo; i <= hi; ++i) ker.emplace(i, kernel(out.eps.at(i)));
    std::map<int, Module> kt;
    std::map<int, ModuleMap> kd;
    for (int i = lo; i <= hi; ++i) kt.emplace(i, ker.at(i).mod);
    for (int i = lo; i < hi; ++i) kd.emplace(i, corestrict(compose(out.cover.diff(i), ker.at(i).incl), ker.at(i + 1)));
    out.omega = assemble(alg, lo, hi, kt, kd);
    out.incl = ChainMap{out.omega, out.cover, lo, {}};
    for (int i = lo; i <= hi; ++i) out.incl.maps.push_back(ker.at(i).incl);
    return out;
}

CosyzygyData cosyzygy_data(const Complex& x) {
    const AlgebraPtr& alg = x.alg;
    CosyzygyData out;
    if (x.empty()) {
        out.mho = out.envelope = zero_complex(alg);
        out.eta = zero_chain_map(x, out.envelope);
        out.proj = zero_chain_map(out.envelope, out.mho);
        return out;
    }
    const int lo = x.lo - 1, hi = x.hi();
    std::map<int, Envelope> env;
    for (int i = x.lo; i <= x.hi(); ++i) env.emplace(i, injective_envelope(x.term(i)));
    auto J = [&](int i) { return env.count(i) ? env.at(i).inj : zero_module(alg); };
    auto iota = [&](int i) { return env.count(i) ? env.at(i).map : zero_map(x.term(i), zero_module(alg)); };
    std::map<int, Module> t;
    std::map<int, ModuleMap> d;
    for (int i = lo; i <= hi; ++i) t.emplace(i, direct_sum(J(i), J(i + 1)));
    for (int i = lo; i < hi; ++i) {
        Grid g(2, std::vector<std::optional<ModuleMap>>(2));
        g[0][1] = identity(J(i + 1));
        d.emplace(i, grid_map({J(i), J(i + 1)}, {J(i + 1), J(i + 2)}, g, alg));
    }
    out.envelope = assemble(alg, lo, hi, t, d);
    out.eta = ChainMap{x, out.envelope, lo, {}};
    for (int i = lo; i <= hi; ++i) {
        Grid g(2, std::vector<std::optional<ModuleMap>>(1));
        g[0][0] = iota(i);
        g[1][0] = compose(iota(i + 1), x.diff(i));
        out.eta.maps.push_back(grid_map({x.term(i)}, {J(i), J(i + 1)}, g, alg));
    }
    std::map<int, Quot> cok;
    for (int i = lo; i <= hi; ++i) cok.emplace(i, cokernel(out.eta.at(i)));
    std::map<int, Module> ct;
    std::map<int, ModuleMap> cd;
    for (int i = lo; i <= hi; ++i) ct.emplace(i, cok.at(i).mod);
    for (int i = lo; i < hi; ++i) cd.emplace(i, induced_on_quotients(out.envelope.diff(i), cok.at(i), cok.at(i + 1)));
    out.mho = assemble(alg, lo, hi, ct, cd);
    out.proj = ChainMap{out.envelope, out.mho, lo, {}};
    for (int i = lo; i <= hi; ++i) out.proj.maps.push_back(cok.at(i).proj);
    return out;
}

Complex syzygy(const Complex& x, int times) {
    Complex c = x;
    for (int k = 0; k < times; ++k) c = trim(syzygy_data(c).omega);
    return c;
}

Complex cosyzygy(const Complex& x, int times) {
    Complex c = x;
    for (int k = 0; k < times; ++k) c = trim(cosyzygy_data(c).mho);
    return c;
}

Complex rho(const Complex& x, int d, std::size_t bound) {
    for (const auto& t : x.terms) {
        auto r = pdim(t, bound);
        if (!r.yes() || r.witness.value("pdim", 0) > d)
            throw PdimExceeded("rho: a term has projective dimension above " + std::to_string(d));
    }
    return shift(syzygy(x, d), d);
}

Complex lambda(const Complex& x, int d, std::size_t bound) {
    for (const auto& t : x.terms) {
        auto r = idim(t, bound);
        if (!r.yes() || r.witness.value("idim", 0) > d)
            throw PdimExceeded("lambda: a term has injective dimension above " + std::to_string(d));
    }
    return shift(cosyzygy(x, d), -d);
}

// ---- resolutions ----

std::size_t Resolution::reduce(std::size_t k) const {
    if (period > 0) {
        std::size_t edge = static_cast<std::size_t>(lag + period);
        if (k < edge) return k;
        return static_cast<std::size_t>(lag) + (k - lag) % period;
    }
    return std::min(k, syz.size() - 1);
}

ModuleMap Resolution::differential(std::size_t k) const {
    if (k == 0 || k >= covers.size()) throw std::out_of_range("Resolution::differential");
    return compose(incl[k - 1], covers[k].map);
}

Complex Resolution::complex(std::size_t top) const {
    top = std::min(top, covers.size() ? covers.size() - 1 : 0);
    if (covers.empty()) return zero_complex(module.alg);
    std::vector<Module> t;
    std::vector<ModuleMap> d;
    for (std::size_t k = top + 1; k-- > 0;) {
        t.push_back(covers[k].proj.mod);
        if (k > 0) d.push_back(differential(k));
    }
    return make_complex(module.alg, -static_cast<int>(top), t, d);
}

Resolution min_proj_resolution(const Module& m, std::size_t bound, std::uint64_t seed) {
    Resolution r;
    r.module = m;
    r.syz.push_back(m);
    if (m.is_zero()) {
        r.pdim = 0;
        r.answer = CertifiedAnswer::make(Verdict::Yes, {{"pdim", 0}, {"reason", "zero module"}}, 0);
        return r;
    }
    for (std::size_t k = 0; k < bound; ++k) {
        Cover c = projective_cover(r.syz[k]);
        Sub ker = kernel(c.map);
        r.covers.push_back(c);
        r.incl.push_back(ker.incl);
        r.syz.push_back(ker.mod);
        if (ker.mod.is_zero()) {
            r.pdim = static_cast<int>(k);
            r.answer = CertifiedAnswer::make(Verdict::Yes, {{"pdim", k}, {"steps", k + 1}}, k + 1);
            return r;
        }
        for (std::size_t j = 0; j <= k; ++j) {
            if (r.syz[j].dims != ker.mod.dims) continue;
            auto iso = is_isomorphic(r.syz[j], ker.mod, seed);
            if (iso.answer.yes()) {
                r.lag = static_cast<int>(j);
                r.period = static_cast<int>(k + 1 - j);
                r.cycle_iso = iso.iso;
                r.answer = CertifiedAnswer::make(Verdict::No,
                                                 {{"cycle", {{"lag", j}, {"period", r.period}}},
                                                  {"dims", ker.mod.dims}},
                                                 k + 1);
                return r;
            }
        }
    }
    r.answer = CertifiedAnswer::make(Verdict::Undetermined, {{"reason", "bound reached"}}, bound);
    return r;
}

Resolution min_inj_coresolution_dual(const Module& m, std::size_t bound, std::uint64_t seed) {
    return min_proj_resolution(dual(m), bound, seed);
}

CertifiedAnswer pdim(const Module& m, std::size_t bound) {
    Resolution r = min_proj_resolution(m, bound);
    return r.answer;
}

CertifiedAnswer idim(const Module& m, std::size_t bound) {
    Resolution r = min_inj_coresolution_dual(m, bound);
    CertifiedAnswer a = r.answer;
    if (a.yes()) a.witness["idim"] = r.pdim;
    return a;
}

namespace {

std::size_t hom_from_projective_dim(const ProjModule& p, const Module& n) {
    std::size_t s = 0;
    for (int g : p.gens) s += n.dims[g];
    return s;
}

}  // namespace

std::size_t ext_dim(const Resolution& r, const Module& n, std::size_t i) {
    if (i == 0) return hom_dim(r.module, n);
    if (r.answer.yes() && static_cast<int>(i) > r.pdim) return 0;
    if (r.answer.undetermined() && i + 1 > r.syz.size()) throw std::out_of_range("ext_dim: resolution too short");
    const Module& si = r.syzygy(i);
    const Module& sp = r.syzygy(i - 1);
    std::size_t a = hom_dim(si, n);
    std::size_t b = hom_from_projective_dim(r.cover(i - 1).proj, n);
    std::size_t c = hom_dim(sp, n);
    return a + c - b;
}

std::size_t ext_dim(const Module& m, const Module& n, std::size_t i, std::size_t bound) {
    return ext_dim(min_proj_resolution(m, bound), n, i);
}

// ---- tailed complexes ----

Complex TailedComplex::unroll(int left_periods, int right_periods) const {
    const Complex& w = window;
    if (w.empty()) return w;
    std::map<int, Module> t;
    std::map<int, ModuleMap> d;
    const int lo = w.lo, hi = w.hi();
    for (int i = lo; i <= hi; ++i) t.emplace(i, w.term(i));
    for (int i = lo; i < hi; ++i) d.emplace(i, w.diff(i));
    int new_lo = lo, new_hi = hi;
    if (left_period > 0 && left_wrap) {
        const int L = left_periods * left_period;
        d.emplace(lo - 1, *left_wrap);
        for (int s = 1; s <= L; ++s) {
            t.emplace(lo - s, t.at(lo - s + left_period));
            if (s >= 2) d.emplace(lo - s, d.at(lo - s + left_period));
        }
        new_lo = lo - L;
        if (L == 0) d.erase(lo - 1);
    }
    if (right_period > 0 && right_wrap) {
        const int R = right_periods * right_period;
        if (R > 0) d[hi] = *right_wrap;
        for (int s = 1; s <= R; ++s) {
            t.emplace(hi + s, t.at(hi + s - right_period));
            if (s < R) d.emplace(hi + s, d.at(hi + s - right_period));
        }
        new_hi = hi + R;
    }
    return assemble(w.alg, new_lo, new_hi, t, d);
}

bool TailedComplex::check_tails() const {
    Complex u = unroll(2, 2);
    for (int i = u.lo; i < u.hi(); ++i)
        if (!compose(u.diff(i + 1), u.diff(i)).is_zero()) return false;
    for (int i = u.lo; i <= u.hi(); ++i)
        if (!is_equivariant(u.diff(i))) return false;
    return true;
}

TailedComplex periodic_resolution(const Resolution& r) {
    if (r.period <= 0 || !r.cycle_iso) throw std::invalid_argument("periodic_resolution: no cycle");
    const std::size_t top = static_cast<std::size_t>(r.lag + r.period - 1);
    TailedComplex tc;
    tc.window = r.complex(top);
    tc.left_period = r.period;
    // P_L ->> syz_L ~ syz_{L+pi} >-> P_{L+pi-1}
    tc.left_wrap = compose(r.incl[top], compose(*r.cycle_iso, r.covers[r.lag].map));
    return tc;
}

Json complex_to_json(const Complex& x) {
    Json j;
    j["lo"] = x.lo;
    j["hi"] = x.hi();
    Json terms = Json::array();
    for (const auto& t : x.terms) terms.push_back(t.dims);
    j["dims"] = terms;
    Json ds = Json::array();
    for (int i = x.lo; i < x.hi(); ++i) ds.push_back(matrix_to_json(x.diff(i).total()));
    j["d"] = ds;
    return j;
}

Json tailed_to_json(const TailedComplex& t) {
    Json j;
    j["window"] = complex_to_json(t.window);
    j["left_period"] = t.left_period;
    j["right_period"] = t.right_period;
    if (t.left_wrap) j["left_wrap"] = matrix_to_json(t.left_wrap->total());
    if (t.right_wrap) j["right_wrap"] = matrix_to_json(t.right_wrap->total());
    return j;
}

}  // namespace singcat
