#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <vector>

#include "singcat/complex.hpp"

namespace singcat {

class NonProjectiveTerm : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Two-sided tailed complex of projectives with B^0 = im(d^{-1}) identified
// with a module.
struct CompleteResolution {
    TailedComplex complex;
    Module module;
    ModuleMap b0_iso;  // module -> B^0 (as a submodule of T^0)
};

struct GprojResult {
    CertifiedAnswer answer;
    std::optional<CompleteResolution> resolution;
};

// Minimal left add(Lambda)-approximation M -> Q.
struct LeftApprox {
    ProjModule target;
    ModuleMap map;
};
LeftApprox left_add_lambda_approximation(const Module& m);

CertifiedAnswer is_totally_acyclic(const TailedComplex& x);
GprojResult is_gorenstein_projective(const Module& m, std::size_t bound = 64, std::uint64_t seed = 1);

struct StableHom {
    std::size_t hom_dim = 0;
    std::size_t phom_dim = 0;  // maps factoring through a projective
    std::vector<ModuleMap> basis;  // representatives of a basis of the quotient
    std::size_t dim() const { return basis.size(); }
};
// Columns are flattened maps M -> N that factor through the projective cover of N.
Matrix phom_vectors(const Module& m, const Module& n);
StableHom stable_hom(const Module& m, const Module& n);
std::size_t stable_hom_dim(const Module& m, const Module& n);

Json complete_resolution_to_json(const CompleteResolution& c);

}  // namespace singcat
