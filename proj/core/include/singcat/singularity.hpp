#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "singcat/gorenstein.hpp"

namespace singcat {

// Projective resolution P -> X of a bounded complex, built from the top
// degree down. Below X.lo it continues as the minimal resolution of the
// module `tail`; the complex is perfect iff tail has finite pdim.
struct ComplexResolution {
    Complex proj;        // P in degrees [X.lo, X.hi]
    ChainMap to_x;       // P -> X
    Module tail;         // ker of the degree-lo part of cone(P -> X)
    ModuleMap tail_incl; // tail >-> P^{lo}
};
ComplexResolution resolve_complex(const Complex& x);

struct PerfectResult {
    CertifiedAnswer answer;
    ComplexResolution resolution;
    Resolution tail;
};
PerfectResult perfect_test(const Complex& x, std::size_t bound = 64, std::uint64_t seed = 1);
CertifiedAnswer is_perfect(const Complex& x, std::size_t bound = 64, std::uint64_t seed = 1);

// A module together with its syzygy certificate.
struct DsgObject {
    Module rep;
    Resolution res;
    std::string provenance;
    bool perfect() const { return res.answer.yes(); }
};
DsgObject make_dsg_object(const Module& m, std::size_t bound = 64, std::uint64_t seed = 1, std::string provenance = "");

struct DsgHom {
    CertifiedAnswer answer;
    std::size_t dim = 0;
    int start_level = 0;
    int period = 0;
    std::vector<std::size_t> level_dims;  // stable Hom dims along one period
};
DsgHom dsg_hom(const DsgObject& m, const DsgObject& n, std::uint64_t seed = 1);
std::size_t dsg_hom_dim(const Module& m, const Module& n, std::size_t bound = 64, std::uint64_t seed = 1);

// Omega f on the stable level: lifts f o pi through the cover of the target
// and restricts to the syzygies.
// incl_m: Omega M >-> P^M, incl_n likewise.
ModuleMap syzygy_map(const ModuleMap& f, const Cover& cm, const ModuleMap& incl_m, const Cover& cn,
                     const ModuleMap& incl_n);

struct SeedOptions {
    bool simples = true;
    bool layers = true;  // P_i / rad^k, rad^k P_i and socle layers of I_i
    std::vector<Module> extra;
};
std::vector<Module> seed_modules(const AlgebraPtr& alg, const SeedOptions& opt);

struct DsgEnumeration {
    std::vector<DsgObject> objects;
    Verdict status = Verdict::Yes;  // Undetermined when some seed did not stabilise
    std::string scope = "complete under CM-periodicity hypothesis";
};
DsgEnumeration dsg_indecomposables(const AlgebraPtr& alg, const SeedOptions& opt = {}, std::size_t bound = 64,
                                   std::uint64_t seed = 1);

CertifiedAnswer is_gorenstein_algebra(const AlgebraPtr& alg, std::size_t bound = 64);

}  // namespace singcat
