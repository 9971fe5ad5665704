#include "singcat/random.hpp"

namespace singcat {

namespace la = linalg;

Scalar random_scalar(Rng& rng) { return static_cast<Scalar>(rng() % la::prime()); }

ModuleMap random_map(const Module& m, const Module& n, Rng& rng) {
    ModuleMap f = zero_map(m, n);
    for (const auto& b : hom_basis(m, n)) f = add(f, scale(b, random_scalar(rng)));
    return f;
}

namespace {

std::size_t pick(Rng& rng, std::size_t n) { return static_cast<std::size_t>(rng() % n); }

ProjModule random_projective(const AlgebraPtr& alg, Rng& rng, std::size_t count) {
    std::vector<int> gens;
    for (std::size_t i = 0; i < count; ++i) gens.push_back(static_cast<int>(pick(rng, alg->num_vertices())));
    return projective(alg, gens);
}

ModuleMap random_from_projective(const ProjModule& p, const Module& tgt, Rng& rng) {
    std::vector<std::vector<Scalar>> imgs;
    for (int g : p.gens) {
        std::vector<Scalar> v(tgt.dims[g]);
        for (auto& x : v) x = random_scalar(rng);
        imgs.push_back(v);
    }
    return from_projective(p, tgt, imgs);
}

}  // namespace

Module random_module(const AlgebraPtr& alg, Rng& rng, std::size_t max_total) {
    for (int attempt = 0; attempt < 64; ++attempt) {
        ProjModule p0 = random_projective(alg, rng, 1 + pick(rng, 2));
        ProjModule p1 = random_projective(alg, rng, pick(rng, 3));
        Module m = p0.mod;
        if (!p1.gens.empty()) m = cokernel(random_from_projective(p1, p0.mod, rng)).mod;
        // cut long modules down by a random radical power
        if (m.total() > max_total) {
            int k = 1 + static_cast<int>(pick(rng, 3));
            m = quotient(m, radical_power_spaces(m, k)).mod;
        }
        if (!m.is_zero() && pick(rng, 3) == 0) {
            ProjModule q = random_projective(alg, rng, 1 + pick(rng, 2));
            Module s = image(random_from_projective(q, m, rng)).mod;
            if (!s.is_zero()) m = s;
        }
        if (!m.is_zero() && m.total() <= max_total) return m;
    }
    return simple(alg, static_cast<int>(pick(rng, alg->num_vertices())));
}

Complex random_complex(const AlgebraPtr& alg, Rng& rng, int lo, int length, std::size_t max_total) {
    std::vector<Module> terms;
    std::vector<ModuleMap> d;
    for (int k = 0; k < length; ++k) {
        Module t = pick(rng, 5) == 0 ? zero_module(alg) : random_module(alg, rng, max_total);
        if (k == 0) {
            terms.push_back(t);
            continue;
        }
        Quot c = k == 1 ? Quot{terms[0], identity(terms[0])} : cokernel(d.back());
        d.push_back(compose(random_map(c.mod, t, rng), c.proj));
        terms.push_back(t);
    }
    return make_complex(alg, lo, terms, d);
}

}  // namespace singcat
