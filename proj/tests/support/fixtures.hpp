#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "singcat/io.hpp"
#include "singcat/module.hpp"

namespace singcat::test {

// Built straight from quivers so io is not on the path.
inline AlgebraPtr ex313(int n, bool quotient) {
    Quiver q;
    q.vertices = {"1", "2"};
    q.arrows = {{"a", 0, 1}, {"b", 1, 0}};
    Word ab, ba;
    for (int i = 0; i < n; ++i) {
        ab.insert(ab.end(), {0, 1});
        ba.insert(ba.end(), {1, 0});
    }
    std::vector<Relation> rels{Relation{{Term{1, ab}}}};
    if (quotient) rels.push_back(Relation{{Term{1, ba}}});
    return build_algebra(q, rels, 30, quotient ? "ex313_quot" : "ex313");
}

inline Quiver ex315_quiver(bool with_x) {
    Quiver q;
    q.vertices = {"1", "2", "3"};
    q.arrows = {{"a", 0, 1}, {"b", 1, 2}, {"c", 2, 0}};
    if (with_x) q.arrows.push_back({"x", 1, 0});
    return q;
}

inline AlgebraPtr ex315_lambda() {
    return build_algebra(ex315_quiver(false), {Relation{{Term{1, {2, 1}}}}, Relation{{Term{1, {1, 0, 2}}}}}, 30,
                         "ex315_lambda");
}

inline AlgebraPtr ex315_gamma() {
    return build_algebra(ex315_quiver(true),
                         {Relation{{Term{1, {2, 1}}}}, Relation{{Term{1, {1, 0, 2}}}}, Relation{{Term{1, {0, 3}}}},
                          Relation{{Term{1, {3, 0}}}}},
                         30, "ex315_gamma");
}

inline std::filesystem::path fixture(const std::string& file) { return std::filesystem::path(SINGCAT_FIXTURE_DIR) / file; }

inline Module named(const AlgebraPtr& a, const std::string& literal, const io::Params& p = {}) {
    return io::parse_module(a, literal, p);
}

// Bijection up to isomorphism.
inline bool same_iso_classes(const std::vector<Module>& found, const std::vector<Module>& expected) {
    if (found.size() != expected.size()) return false;
    std::vector<bool> used(found.size(), false);
    for (const auto& e : expected) {
        bool hit = false;
        for (std::size_t i = 0; i < found.size() && !hit; ++i)
            if (!used[i] && found[i].dims == e.dims && is_isomorphic(found[i], e).answer.yes()) used[i] = hit = true;
        if (!hit) return false;
    }
    return true;
}

inline bool iso(const Module& a, const Module& b) { return a.dims == b.dims && is_isomorphic(a, b).answer.yes(); }

}  // namespace singcat::test
