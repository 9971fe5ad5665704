#pragma once

#include <filesystem>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "singcat/change_of_rings.hpp"
#include "singcat/module.hpp"

namespace singcat::io {

// Errors from text inputs carry the file and 1-based line.
class FileError : public std::runtime_error {
public:
    enum class Kind { Syntax, UnknownName, MalformedRelation, NotAdmissibleAtBound, Morphism, Io };
    FileError(Kind k, std::string file, int line, const std::string& msg);
    Kind kind;
    std::string file;
    int line;
    std::string message;
};
const char* to_string(FileError::Kind k);

using Params = std::map<std::string, long>;

// Integer expressions over params: + - * parentheses, "2n" means 2*n.
long eval_int(const std::string& expr, const Params& params);

// "ab", "a.b", "(ab)^n", "b(ab)^{n-1}"; labels matched greedily.
Word parse_word(const Quiver& q, const std::string& text, const Params& params = {});
std::string format_word(const Quiver& q, const Word& w);
// "ab - 2*ba"; coefficients reduced mod the current prime.
Relation parse_combination(const Quiver& q, const std::string& text, const Params& params = {});
std::string format_relation(const Quiver& q, const Relation& r);

struct ModuleDef {
    std::string name;
    std::string literal;  // canonical text after "=", or empty for explicit matrices
    Module module;
};

struct AlgebraFile {
    std::string name;
    AlgebraPtr alg;
    std::vector<ModuleDef> modules;
    const ModuleDef* find_module(const std::string& name) const;
};

AlgebraFile parse_algebra(const std::string& text, const Params& params = {}, const std::string& origin = "<input>");
AlgebraFile load_algebra(const std::filesystem::path& path, const Params& params = {});
std::string dump_algebra(const AlgebraFile& f);

// Structured names: S1, P2, I3, P2/rad^2, P2/soc, rad^2 P1, soc P1, syz^k X,
// uniserial "2/1/2", sums "P1 + S2". Vertex labels follow the letter.
Module parse_module(const AlgebraPtr& alg, const std::string& text, const Params& params = {});
// Uniserial name "2/1/2" when every radical layer is simple, else a dimension vector.
std::string module_name(const Module& m);

struct MorphismFile {
    std::string name;
    AlgebraFile source;
    AlgebraFile target;
    std::string source_file, target_file;  // as written
    AlgebraMorphism morphism;
};
MorphismFile parse_morphism(const std::string& text, const std::filesystem::path& base_dir, const Params& params = {},
                            const std::string& origin = "<input>");
MorphismFile load_morphism(const std::filesystem::path& path, const Params& params = {});
std::string dump_morphism(const MorphismFile& f);

std::string to_dot(const PathAlgebra& a);

std::string read_file(const std::filesystem::path& path);

}  // namespace singcat::io
