#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "singcat/module.hpp"

namespace singcat {

// Cohomological complex: terms[k] sits in degree lo + k and d[k] maps it to
// degree lo + k + 1. Outside [lo, hi] every term is zero.
struct Complex {
    AlgebraPtr alg;
    int lo = 0;
    std::vector<Module> terms;
    std::vector<ModuleMap> d;  // d.size() == terms.size(); the last one lands in 0

    int hi() const { return lo + static_cast<int>(terms.size()) - 1; }
    bool empty() const { return terms.empty(); }
    Module term(int i) const;
    ModuleMap diff(int i) const;  // X^i -> X^{i+1}
    bool is_zero() const;
};

struct ChainMap {
    Complex src;
    Complex tgt;
    int lo = 0;
    std::vector<ModuleMap> maps;  // maps[k] in degree lo + k

    ModuleMap at(int i) const;
};

class PdimExceeded : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

Complex zero_complex(const AlgebraPtr& alg);
Complex stalk(const Module& m, int degree = 0);
// Builds a complex from terms and differentials d^i: X^i -> X^{i+1}
// (one fewer map than terms).
Complex make_complex(const AlgebraPtr& alg, int lo, std::vector<Module> terms, std::vector<ModuleMap> d);
void check_complex(const Complex& x);
bool is_chain_map(const ChainMap& f);
Complex trim(const Complex& x);  // drop zero terms at both ends

Complex shift(const Complex& x, int n);  // X[n]^i = X^{i+n}, d multiplied by (-1)^n
Complex direct_sum(const Complex& x, const Complex& y);
Complex cone(const ChainMap& f);  // C^i = X^{i+1} + Y^i
ChainMap identity(const Complex& x);
ChainMap zero_chain_map(const Complex& x, const Complex& y);
ChainMap compose(const ChainMap& g, const ChainMap& f);
ChainMap shift(const ChainMap& f, int n);
Complex dual(const Complex& x, const AlgebraPtr& target_alg = nullptr);  // (DX)^i = D(X^{-i})

Module homology(const Complex& x, int i);
std::vector<std::size_t> homology_dims(const Complex& x, int i);
bool is_acyclic(const Complex& x);
// Degreewise isomorphic homology.
CertifiedAnswer same_homology(const Complex& x, const Complex& y, std::uint64_t seed = 1);
bool all_projective(const Complex& x);
bool all_injective(const Complex& x);

// Hom complex Hom(X,Y)^n = prod_i Hom(X^i, Y^{i+n}), delta f = d_Y f - (-1)^n f d_X.
struct HomComplexDegree {
    int n = 0;
    std::vector<ChainMap> basis;  // graded maps of degree n stored as chain-map-shaped data
};
std::size_t hom_k_dim(const Complex& x, const Complex& y);
// Chain maps X -> Y whose classes form a basis of Hom_K(X, Y).
std::vector<ChainMap> hom_k_basis(const Complex& x, const Complex& y);
std::vector<std::size_t> hom_complex_homology(const Complex& x, const Complex& y, int from, int to);
// True when f is null-homotopic.
bool is_null_homotopic(const ChainMap& f);

// Hom_K(X, Y) with coordinates of chain maps modulo homotopy.
class HomKSpace {
public:
    HomKSpace(const Complex& x, const Complex& y);
    const std::vector<ChainMap>& basis() const { return basis_; }
    std::size_t dim() const { return basis_.size(); }
    // Coordinates of the class of f in basis(); f must be a chain map X -> Y.
    std::vector<Scalar> coords(const ChainMap& f) const;
    ChainMap combine(const std::vector<Scalar>& c) const;

private:
    struct Impl;
    std::shared_ptr<const Impl> impl_;
    std::vector<ChainMap> basis_;
};

// Bounded complex of projectives with every contractible summand P -id-> P
// split off; incl and proj are inverse homotopy equivalences with
// proj o incl = id.
struct MinimalComplex {
    Complex min;
    ChainMap incl;  // min -> x
    ChainMap proj;  // x -> min
};
MinimalComplex minimize_projective_complex(const Complex& x);

// Contractible cover P_X ->> X and envelope X >-> I_X.
struct SyzygyData {
    Complex omega;  // kernel of eps
    Complex cover;  // P_X, contractible
    ChainMap incl;  // omega -> P_X
    ChainMap eps;   // P_X -> X
    std::vector<ModuleMap> homotopy;  // h^i: P_X^i -> P_X^{i-1} with dh + hd = 1, indexed from cover.lo
};
struct CosyzygyData {
    Complex mho;       // cokernel of eta
    Complex envelope;  // I_X, contractible
    ChainMap eta;      // X -> I_X
    ChainMap proj;     // I_X -> mho
};
SyzygyData syzygy_data(const Complex& x);
CosyzygyData cosyzygy_data(const Complex& x);
Complex syzygy(const Complex& x, int times = 1);
Complex cosyzygy(const Complex& x, int times = 1);
Complex rho(const Complex& x, int d, std::size_t bound = 64);
Complex lambda(const Complex& x, int d, std::size_t bound = 64);

// Minimal projective resolution with a periodicity certificate.
struct Resolution {
    Module module;
    std::vector<Cover> covers;     // covers[k]: P_k ->> syz[k]
    std::vector<Module> syz;       // syz[0] = M, syz[k + 1] = ker covers[k]
    std::vector<ModuleMap> incl;   // incl[k]: syz[k + 1] >-> P_k
    CertifiedAnswer answer;        // Yes: finite pdim; No: syzygy cycle; Undetermined: bound
    int pdim = -1;                 // valid when answer is Yes
    int lag = -1, period = 0;      // syz[lag] ~ syz[lag + period]
    std::optional<ModuleMap> cycle_iso;  // syz[lag] -> syz[lag + period]

    std::size_t steps() const { return covers.size(); }
    // Index into the computed part equivalent to position k (periodic reduction).
    std::size_t reduce(std::size_t k) const;
    const Module& syzygy(std::size_t k) const { return syz[reduce(k)]; }
    const Cover& cover(std::size_t k) const { return covers[reduce(k)]; }
    // d: P_k -> P_{k-1}, k >= 1, within the computed part
    ModuleMap differential(std::size_t k) const;
    // Truncation P_top -> ... -> P_0 in degrees -top..0.
    Complex complex(std::size_t top) const;
};

Resolution min_proj_resolution(const Module& m, std::size_t bound = 64, std::uint64_t seed = 1);
// Injective coresolution read through duality: resolution of DM over the opposite algebra.
Resolution min_inj_coresolution_dual(const Module& m, std::size_t bound = 64, std::uint64_t seed = 1);
CertifiedAnswer pdim(const Module& m, std::size_t bound = 64);
CertifiedAnswer idim(const Module& m, std::size_t bound = 64);

// dim Ext^i(M, N) from a resolution of M.
std::size_t ext_dim(const Resolution& r, const Module& n, std::size_t i);
std::size_t ext_dim(const Module& m, const Module& n, std::size_t i, std::size_t bound = 64);

// Window complex with optional periodic tails. Left tail: degree lo - 1
// repeats lo + left_period - 1, and d^{lo-1} is left_wrap. Right tail:
// degree hi + 1 repeats hi - right_period + 1, and d^{hi} is right_wrap.
// A period of 0 means zero beyond the window.
struct TailedComplex {
    Complex window;
    int left_period = 0;
    std::optional<ModuleMap> left_wrap;   // X^{lo+lp-1} -> X^{lo}
    int right_period = 0;
    std::optional<ModuleMap> right_wrap;  // X^{hi} -> X^{hi-rp+1}

    // Window extended by whole periods on each side.
    Complex unroll(int left_periods, int right_periods) const;
    bool check_tails() const;
};

// Left-tailed complex of the periodic part of a resolution; requires a cycle.
TailedComplex periodic_resolution(const Resolution& r);

Json complex_to_json(const Complex& x);
Json tailed_to_json(const TailedComplex& t);

}  // namespace singcat
