#pragma once

#include <cstdint>
#include <random>

#include "singcat/complex.hpp"

namespace singcat {

// Seeded generators for property tests. Draws use raw engine output reduced
// mod p so that sequences agree across standard libraries.
using Rng = std::mt19937_64;

Scalar random_scalar(Rng& rng);
// Random combination of a Hom basis.
ModuleMap random_map(const Module& m, const Module& n, Rng& rng);
// Quotient of a small sum of projectives by a random submodule, sometimes
// followed by a random submodule of that; total dimension in [1, max_total].
Module random_module(const AlgebraPtr& alg, Rng& rng, std::size_t max_total = 8);
// Terms in degrees lo..lo+length-1 with d^{i+1} killing the image of d^i by
// construction (it factors through the cokernel).
Complex random_complex(const AlgebraPtr& alg, Rng& rng, int lo, int length, std::size_t max_total = 6);

}  // namespace singcat
