#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "singcat/singularity.hpp"

namespace singcat {

class NotEnumerable : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class WindowTooSmall : public std::runtime_error {
public:
    WindowTooSmall(const std::string& msg, int stage, int generator, int shift)
        : std::runtime_error(msg), stage(stage), generator(generator), shift(shift) {}
    int stage, generator, shift;
};

// ---- modules ----

struct RightApprox {
    std::vector<Module> parts;          // summands of the source
    std::vector<int> kinds;             // index into G per part, -1 when not taken from G
    std::vector<ModuleMap> components;  // parts[k] -> M
    Module source;
    ModuleMap map;                      // source -> M

    static RightApprox assemble(const Module& m, std::vector<Module> parts, std::vector<int> kinds,
                                std::vector<ModuleMap> components);
};

// Sum of G_i^{dim Hom(G_i, M)} -> M from Hom bases.
RightApprox right_add_approximation(const Module& m, const std::vector<Module>& g);
// Greedy pruning of summands while Hom(G_j, -) stays surjective for every j.
RightApprox minimize_right_approximation(const RightApprox& a, const Module& m, const std::vector<Module>& g);
// Hom(G_j, source) -> Hom(G_j, M) onto for every j, checked by solving.
bool is_right_approximation(const ModuleMap& f, const std::vector<Module>& g);
// A splitting s with f o s = id when f is a split epi.
std::optional<ModuleMap> splitting(const ModuleMap& f);

// Indecomposable Gorenstein projectives: projectives first, then the
// non-projective periodic syzygies of the Dsg enumeration, each certified.
struct GprojList {
    std::vector<Module> modules;
    std::vector<CertifiedAnswer> certificates;
    std::size_t num_projective = 0;
};
GprojList enumerate_gproj(const AlgebraPtr& alg, std::size_t bound = 64, std::uint64_t seed = 1,
                          bool layer_seeds = true);

struct GpApprox {
    CertifiedAnswer answer;  // witness: both paths and their comparison
    RightApprox fast;        // minimized right add(G)-approximation
    Module pipeline_source;  // Cok(X^{-1} -> X^0) after minimizing
    ModuleMap pipeline_map;
    Complex pipeline_complex;  // X, degrees around 0
    bool paths_agree = false;
    GprojList gproj;
};
GpApprox gp_approximation(const Module& m, std::size_t bound = 64, std::uint64_t seed = 1);

// ---- towers ----

enum class TowerDirection { Lim, Colim };

struct LedgerEntry {
    int stage = 0;
    int generator = 0;
    int shift = 0;
    std::size_t hom_dim = 0;         // Hom_K(T_j, X[s]) (lim) or Hom_K(X[s], T_j) (colim)
    std::size_t composite_rank = 0;  // rank of the transition map; 0 asserted
};

struct TowerStage {
    Complex object;       // T_j, minimal
    Complex approx;       // X_j
    ChainMap approx_map;  // T_j -> X_j (lim) or X_j -> T_j (colim)
    ChainMap transition;  // T_{j+1} -> T_j (lim) or T_j -> T_{j+1} (colim)
    std::vector<std::size_t> multiplicities;  // per (generator, shift) in window order
    bool approximation_checked = false;
};

struct HomChain {
    int generator = 0;
    int shift = 0;
    std::vector<Matrix> maps;  // Hom(T_0, X[s]) -> Hom(T_1, X[s]) -> ...
};

struct Tower {
    TowerDirection direction = TowerDirection::Lim;
    std::vector<TowerStage> stages;  // stage j holds T_j; the last one has no approximation
    int depth = 0;
    std::pair<int, int> window{-6, 6};
    std::vector<LedgerEntry> ledger;
    std::vector<HomChain> chains;
    // Nonzero Homs to shifts outside the window at later stages; never approximated.
    std::vector<LedgerEntry> escaped;
    bool stabilized = false;  // some T_j already orthogonal to the window
    std::vector<int> duplicate_of;  // per generator: earlier isomorphic generator, or -1
    std::string label = "truncated tower";

    ChainMap input_map;  // T_0 -> the input complex

    const Complex& residual() const { return stages.back().object; }
    // T_last -> T_0 -> input
    ChainMap residual_map() const;
    bool ledger_zero() const;
    Json to_json() const;
};

struct TowerOptions {
    int depth = 12;
    std::pair<int, int> window{-6, 6};
    bool check_approximations = true;
};

// Generators must be indecomposable complexes of projectives with local
// endomorphism rings split over F_p.
Tower dual_bousfield_tower(const Complex& t, const std::vector<Complex>& x, const TowerOptions& opt = {});
Tower bousfield_tower(const Complex& t, const std::vector<Complex>& x, const TowerOptions& opt = {});

// Stalk complexes P_v and rho(I_v) for the generator sets used with towers.
std::vector<Complex> regular_generators(const AlgebraPtr& alg);
std::vector<Complex> rho_dual_generators(const AlgebraPtr& alg, std::size_t bound = 64);
// Minimal projective resolution of m as a complex with P_0 in degree 0.
Complex projective_resolution_complex(const Module& m, std::size_t bound = 64);

// Cok(X^{-1} -> X^0).
Module degree_zero_cokernel(const Complex& x);

// Right approximation read off a lim tower started at rho M: Cok in degree 0
// of the residual plus the disk on P_0 of rho M (the contractible cover, which
// keeps the residual's K-class), mapped to M, then right-minimized against G.
struct ResidualApprox {
    Module cokernel;      // degree-0 cokernel of the residual alone
    RightApprox approx;   // minimized
    bool is_right_approximation = false;
};
ResidualApprox residual_approximation(const Tower& t, const Module& m, const std::vector<Module>& g);

struct DualMLResult {
    bool composable = true;
    bool stabilizes = true;
    int index = 0;  // largest stabilization index over all starting points
    std::vector<int> per_start;  // -1 when the chain ran out before stabilizing
};
// Sequence A_0 -f_0-> A_1 -f_1-> ...; f_i has A_{i+1} rows and A_i columns.
DualMLResult dual_ml_check(const std::vector<Matrix>& seq);

}  // namespace singcat
