#pragma once

#include <optional>
#include <random>

#include "singcat/complex.hpp"
#include "singcat/random.hpp"

namespace singcat::test {

// A chain map with acyclic cone, searched among classes in Hom_K(from, to):
// every class when the space is small, seeded random ones otherwise.
inline std::optional<ChainMap> find_quasi_iso(const Complex& from, const Complex& to, std::uint64_t seed = 1) {
    if (!same_homology(from, to).yes()) return std::nullopt;
    HomKSpace h(from, to);
    const std::size_t p = linalg::prime();
    std::size_t total = 1;
    bool small = true;
    for (std::size_t i = 0; i < h.dim() && small; ++i) {
        total *= p;
        small = total <= 4096;
    }
    auto try_coords = [&](const std::vector<Scalar>& c) -> std::optional<ChainMap> {
        ChainMap f = h.combine(c);
        if (is_acyclic(cone(f))) return f;
        return std::nullopt;
    };
    if (h.dim() == 0) {
        ChainMap z = zero_chain_map(from, to);
        if (is_acyclic(cone(z))) return z;
        return std::nullopt;
    }
    if (small) {
        for (std::size_t code = 1; code < total; ++code) {
            std::vector<Scalar> c(h.dim());
            std::size_t x = code;
            for (auto& s : c) {
                s = static_cast<Scalar>(x % p);
                x /= p;
            }
            if (auto f = try_coords(c)) return f;
        }
        return std::nullopt;
    }
    Rng rng(seed);
    for (int t = 0; t < 400; ++t) {
        std::vector<Scalar> c(h.dim());
        for (auto& s : c) s = random_scalar(rng);
        if (auto f = try_coords(c)) return f;
    }
    return std::nullopt;
}

// Ext^k(X^m, Y^n) = 0 for every pair of terms.
inline bool termwise_ext_vanishes(const Complex& x, const Complex& y, std::size_t k) {
    for (const auto& a : x.terms)
        for (const auto& b : y.terms)
            if (!a.is_zero() && !b.is_zero() && ext_dim(a, b, k) != 0) return false;
    return true;
}

}  // namespace singcat::test
