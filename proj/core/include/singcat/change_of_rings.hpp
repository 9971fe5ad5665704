#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "singcat/singularity.hpp"

namespace singcat {

class MorphismError : public std::runtime_error {
public:
    enum class Kind { NotUnital, EndpointMismatch, RelationNotPreserved, AlgebraMismatch };
    MorphismError(Kind k, const std::string& msg) : std::runtime_error(msg), kind(k) {}
    Kind kind;
};

class BimoduleSyzygyNotLambdaProjective : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// f: source -> target. Vertex i goes to the sum of the idempotents of
// vertex_images[i]; arrow a goes to arrow_images[a].
struct AlgebraMorphism {
    AlgebraPtr source;
    AlgebraPtr target;
    std::vector<std::vector<int>> vertex_images;
    std::vector<Element> arrow_images;
    std::string name;

    Element apply(const Element& x) const;
    Element basis_image(std::size_t b) const;
    int vertex_of(int target_vertex) const;  // source vertex whose image contains it
};

AlgebraMorphism make_morphism(const AlgebraPtr& source, const AlgebraPtr& target, std::vector<std::vector<int>> vertex_images,
                              std::vector<Element> arrow_images, std::string name = "");
// Same vertices and arrows, target a quotient or an extension containing the quiver.
AlgebraMorphism inclusion_morphism(const AlgebraPtr& source, const AlgebraPtr& target, std::string name = "");
AlgebraMorphism identity_morphism(const AlgebraPtr& a);
AlgebraMorphism compose(const AlgebraMorphism& g, const AlgebraMorphism& f);  // g o f
AlgebraMorphism opposite(const AlgebraMorphism& f);

Module restrict(const AlgebraMorphism& f, const Module& n);
ModuleMap restrict(const AlgebraMorphism& f, const ModuleMap& g);

// Projective presentation P1 -> P0 -> M -> 0.
struct Presentation {
    Cover c0;
    Cover c1;       // onto ker c0.map
    ModuleMap d;    // P1 -> P0
};
Presentation presentation(const Module& m);

struct ProjMapImage {
    ProjModule src;
    ProjModule tgt;
    ModuleMap map;
};
ProjModule tensor_up(const AlgebraMorphism& f, const ProjModule& p);
ProjMapImage tensor_up(const AlgebraMorphism& f, const ProjModule& src, const ProjModule& tgt, const ModuleMap& h);

struct TensorResult {
    Module mod;
    Presentation pres;
    Quot quot;  // T(P0) ->> mod
};
TensorResult tensor_up_data(const AlgebraMorphism& f, const Module& m);
Module tensor_up(const AlgebraMorphism& f, const Module& m);
ModuleMap tensor_up(const AlgebraMorphism& f, const ModuleMap& h);

// dim Tor_n(M, Gamma) for n = 0..upto.
std::vector<std::size_t> tor_dims(const AlgebraMorphism& f, const Module& m, std::size_t upto);

// Bimodules: an (A,B)-bimodule is a right module over envelope(A, B), vertex
// (u, j) at index u * |B_0| + j.
struct Bimodule {
    AlgebraPtr left;
    AlgebraPtr right;
    AlgebraPtr env;
    Module mod;
};
// C as an (A,B)-bimodule through fl: A -> C and fr: B -> C.
Bimodule algebra_bimodule(const AlgebraMorphism& fl, const AlgebraMorphism& fr, const AlgebraPtr& env = nullptr);
// phi: C -> C' as a map x = algebra_bimodule(fl, fr) -> y = algebra_bimodule(phi o fl, phi o fr).
ModuleMap algebra_bimodule_map(const AlgebraMorphism& fl, const AlgebraMorphism& fr, const AlgebraMorphism& phi,
                               const Bimodule& x, const Bimodule& y);
Module right_restriction(const Bimodule& x);  // over right
Module left_restriction(const Bimodule& x);   // over opposite(left)
Module row_module(const Bimodule& x, int u);  // e_u X over right

// Hom_B(X, N) as a right A-module, (phi a)(x) = phi(a x).
struct BimoduleHom {
    Module mod;
    std::vector<std::vector<ModuleMap>> basis;  // basis[u] spans Hom_B(e_u X, N)
};
BimoduleHom bimodule_hom(const Bimodule& x, const Module& n);
// g: X -> X' of bimodules induces Hom(X', N) -> Hom(X, N).
ModuleMap bimodule_hom_map(const Bimodule& x, const BimoduleHom& hx, const Bimodule& x2, const BimoduleHom& hx2,
                           const ModuleMap& g, const Module& n);

BimoduleHom hom_up_data(const AlgebraMorphism& f, const Module& m);
Module hom_up(const AlgebraMorphism& f, const Module& m);
ModuleMap hom_up(const AlgebraMorphism& f, const ModuleMap& h);

struct RHomResult {
    Complex complex;        // over target, degrees 0..d
    CertifiedAnswer perfect;
    int d = -1;
};
RHomResult rhom_gamma_lambda(const AlgebraMorphism& f, std::size_t bound = 64);

// Lambda -> Gamma in degrees -1, 0 over envelope(Lambda, Lambda).
Complex cone_bimodule_complex(const AlgebraMorphism& f);
CertifiedAnswer cone_f_perfect(const AlgebraMorphism& f, std::size_t bound = 64);

// Ext_Gamma(S, S') against Ext_Lambda(res S, res S') for simples, degrees 0..window.
CertifiedAnswer homological_epi_evidence(const AlgebraMorphism& f, std::size_t window, std::size_t bound = 64);

struct HypothesisReport {
    CertifiedAnswer pdim_left;
    CertifiedAnswer pdim_right;
    CertifiedAnswer rhom_perfect;
    CertifiedAnswer cone_perfect_bimodule;
    CertifiedAnswer homological_epi;
    Json to_json() const;
};
HypothesisReport check_theoremI(const AlgebraMorphism& f, std::size_t bound = 64, std::size_t window = 6);

struct ConclusionOptions {
    std::size_t tor_upto = 8;
    bool layer_seeds = true;
    std::uint64_t seed = 1;
};

struct ConclusionReport {
    DsgEnumeration source_dsg;
    DsgEnumeration target_dsg;

    struct TensorEntry {
        Module module;
        Module image;
        CertifiedAnswer gproj;
        std::vector<std::size_t> tor;  // Tor_1..Tor_upto
    };
    std::vector<TensorEntry> tensor_gproj;  // Gproj(source) -> Gproj(target)

    struct ResEntry {
        Module module;
        Module image;
        CertifiedAnswer cls;  // Yes: Dsg class of res N contains a certified Gproj
        int syzygy = -1;      // which syzygy of res N is Gproj (-1: perfect)
    };
    std::vector<ResEntry> res_gproj;

    struct HomPair {
        std::size_t i = 0, j = 0;
        std::size_t dsg_source = 0, dsg_target = 0;
        std::optional<std::size_t> stable_source, stable_target;
    };
    int derived_shift = 0;              // modules are pushed through Omega^shift before tensoring
    std::vector<HomPair> fully_faithful;
    std::vector<int> image_in_target;   // per source Dsg object, matching target Dsg index or -1
    std::vector<std::size_t> kernel;    // indices into target_dsg with perfect restriction

    bool tensor_ok() const;
    bool res_ok() const;
    bool fully_faithful_ok() const;
    bool images_ok() const;
    Json to_json() const;
};
ConclusionReport verify_conclusions(const AlgebraMorphism& f, const HypothesisReport& report, std::size_t bound = 64,
                                    const ConclusionOptions& opt = {});

Json morphism_to_json(const AlgebraMorphism& f);

}  // namespace singcat
