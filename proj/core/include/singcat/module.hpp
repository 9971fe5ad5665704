#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "singcat/algebra.hpp"
#include "singcat/certified.hpp"

namespace singcat {

// Right module as a quiver representation. An arrow a: i -> j acts by a
// linear map from the vertex-j component to the vertex-i component, so
// act[a] has dims[i] rows and dims[j] columns. A path x1...xk acts on the
// right as X_k ... X_1.
struct Module {
    AlgebraPtr alg;
    std::vector<std::size_t> dims;
    std::vector<Matrix> act;

    std::size_t total() const;
    std::size_t offset(int v) const;
    bool is_zero() const { return total() == 0; }
    int num_vertices() const { return static_cast<int>(dims.size()); }
};

struct ModuleMap {
    Module src;
    Module tgt;
    std::vector<Matrix> blocks;  // blocks[v]: src.dims[v] -> tgt.dims[v]

    bool is_zero() const;
    Matrix total() const;  // block diagonal matrix on total spaces
};

// Direct sum of indecomposable projectives e_g Lambda with a recorded
// generator list; component v lists, generator by generator, the basis
// elements with target g and source v.
struct ProjModule {
    Module mod;
    std::vector<int> gens;
};

struct Sub {
    Module mod;
    ModuleMap incl;
};

struct Quot {
    Module mod;
    ModuleMap proj;
};

struct Cover {
    ProjModule proj;
    ModuleMap map;  // proj.mod ->> M
};

struct Envelope {
    Module inj;
    std::vector<int> cogens;
    ModuleMap map;  // M >-> inj
};

struct IsoResult {
    CertifiedAnswer answer;
    std::optional<ModuleMap> iso;
};

struct Decomposition {
    std::vector<std::pair<Module, int>> parts;
    Verdict status = Verdict::Yes;  // Undetermined when some summand was not certified
};

// construction
Module zero_module(const AlgebraPtr& alg);
Module simple(const AlgebraPtr& alg, int v);
ProjModule projective(const AlgebraPtr& alg, const std::vector<int>& gens);
Module projective(const AlgebraPtr& alg, int v);
Module injective(const AlgebraPtr& alg, int v);
Module regular(const AlgebraPtr& alg);
Module direct_sum(const Module& a, const Module& b);
Module direct_sum(const std::vector<Module>& parts, const AlgebraPtr& alg);
std::vector<ModuleMap> sum_inclusions(const std::vector<Module>& parts, const Module& sum);
std::vector<ModuleMap> sum_projections(const std::vector<Module>& parts, const Module& sum);

// Linear dual: right modules over A become right modules over A^op.
Module dual(const Module& m, const AlgebraPtr& target_alg = nullptr);
ModuleMap dual(const ModuleMap& f, const AlgebraPtr& target_alg = nullptr);

bool satisfies_relations(const Module& m);
void check_module(const Module& m);

// action of paths and algebra elements
Matrix path_action(const Module& m, const Word& w);
Matrix element_block(const Module& m, const Element& x, int target, int source);  // x in e_t A e_s: M_t -> M_s
Matrix element_action(const Module& m, const Element& x);                         // on the total space

// maps
ModuleMap identity(const Module& m);
ModuleMap zero_map(const Module& a, const Module& b);
ModuleMap compose(const ModuleMap& g, const ModuleMap& f);  // g o f
ModuleMap add(const ModuleMap& f, const ModuleMap& g);
ModuleMap sub(const ModuleMap& f, const ModuleMap& g);
ModuleMap scale(const ModuleMap& f, Scalar s);
ModuleMap direct_sum(const ModuleMap& f, const ModuleMap& g);
ModuleMap from_total(const Module& a, const Module& b, const Matrix& t);
bool is_equivariant(const ModuleMap& f);
bool is_injective_map(const ModuleMap& f);
bool is_surjective_map(const ModuleMap& f);
bool is_iso_map(const ModuleMap& f);
std::optional<ModuleMap> inverse(const ModuleMap& f);
bool equal_maps(const ModuleMap& f, const ModuleMap& g);
std::vector<Scalar> flatten(const ModuleMap& f);

// Maps out of a projective are fixed by the images of the generators.
ModuleMap from_projective(const ProjModule& p, const Module& tgt, const std::vector<std::vector<Scalar>>& images);
std::vector<Scalar> generator_vector(const ProjModule& p, std::size_t t);  // total-space coordinates
std::vector<std::vector<Scalar>> generator_images(const ProjModule& p, const ModuleMap& f);
// h: P -> Q with pi o h = g (P projective). Throws if g does not land in im(pi).
ModuleMap lift_from_projective(const ProjModule& p, const ModuleMap& g, const ModuleMap& pi);

// Maps between sums of indecomposable projectives as matrices of algebra
// elements: entries[r][c] in e_{tgt.gens[r]} A e_{src.gens[c]} is the image of
// generator c in the summand of generator r.
using ElementMatrix = std::vector<std::vector<Element>>;
ModuleMap projective_map(const ProjModule& src, const ProjModule& tgt, const ElementMatrix& entries);
ElementMatrix projective_entries(const ProjModule& src, const ProjModule& tgt, const ModuleMap& f);

// Hom spaces
std::vector<ModuleMap> hom_basis(const Module& m, const Module& n);
std::size_t hom_dim(const Module& m, const Module& n);
// Columns are flattened basis maps.
Matrix hom_matrix(const std::vector<ModuleMap>& basis, const Module& m, const Module& n);
// Solve for h with h o f = g (f: A -> B, g: A -> C); nothing when impossible.
std::optional<ModuleMap> factor_through_left(const ModuleMap& g, const ModuleMap& f);
// Solve for h with f o h = g (f: B -> C, g: A -> C).
std::optional<ModuleMap> factor_through_right(const ModuleMap& g, const ModuleMap& f);

// sub and quotient modules from per-vertex column bases
Sub submodule(const Module& m, const std::vector<Matrix>& spaces);
Quot quotient(const Module& m, const std::vector<Matrix>& spaces);
Sub kernel(const ModuleMap& f);
Quot cokernel(const ModuleMap& f);
Sub image(const ModuleMap& f);
// f: A -> M landing inside s, as a map A -> s.mod
ModuleMap corestrict(const ModuleMap& f, const Sub& s);
// g: M -> N mapping the kernel of q into the kernel of r, induced M/.. -> N/..
ModuleMap induced_on_quotients(const ModuleMap& g, const Quot& q, const Quot& r);
// Block map between direct sums; grid[r][c]: srcs[c] -> tgts[r], absent entries are zero.
ModuleMap grid_map(const std::vector<Module>& srcs, const std::vector<Module>& tgts,
                   const std::vector<std::vector<std::optional<ModuleMap>>>& grid, const AlgebraPtr& alg);
// image(f) as a module together with f = incl o corestriction
std::pair<Sub, ModuleMap> image_factorization(const ModuleMap& f);

std::vector<Matrix> radical_spaces(const Module& m);
std::vector<Matrix> radical_power_spaces(const Module& m, int k);
std::vector<Matrix> socle_spaces(const Module& m);
Sub radical(const Module& m);
Sub radical_power(const Module& m, int k);
Quot top(const Module& m);
Sub socle(const Module& m);
std::vector<std::size_t> top_dims(const Module& m);
std::vector<std::size_t> socle_dims(const Module& m);

Cover projective_cover(const Module& m);
Envelope injective_envelope(const Module& m);
bool is_projective(const Module& m);
bool is_injective(const Module& m);

IsoResult is_isomorphic(const Module& m, const Module& n, std::uint64_t seed = 1);
Decomposition decompose(const Module& m, std::uint64_t seed = 1);
// Certified indecomposability via the idempotent test on End(m).
Verdict is_indecomposable(const Module& m, std::uint64_t seed = 1);

std::string dims_string(const Module& m);
Json matrix_to_json(const Matrix& m);
Json module_to_json(const Module& m);

}  // namespace singcat
