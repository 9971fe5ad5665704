#pragma once

#include <memory>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "singcat/linalg.hpp"

namespace singcat {

using linalg::Matrix;
using linalg::Scalar;

struct Arrow {
    std::string label;
    int source = 0;
    int target = 0;
};

struct Quiver {
    std::vector<std::string> vertices;
    std::vector<Arrow> arrows;

    int vertex_index(const std::string& label) const;
    int arrow_index(const std::string& label) const;
    int num_vertices() const { return static_cast<int>(vertices.size()); }
    int num_arrows() const { return static_cast<int>(arrows.size()); }
};

// Arrow indices. A word x1 x2 ... xk is the composite x1 o x2 o ... o xk:
// xk is traversed first, so x(i+1) must end where x(i) starts.
using Word = std::vector<int>;

struct Term {
    Scalar coeff = 1;
    Word word;
};

struct Relation {
    std::vector<Term> terms;
};

struct BasisElement {
    Word word;
    int source = 0;
    int target = 0;
    int length = 0;
};

// Coordinates with respect to the basis of a PathAlgebra.
using Element = std::vector<Scalar>;

class AlgebraError : public std::runtime_error {
public:
    enum class Kind { NotAdmissibleAtBound, MalformedRelation };
    AlgebraError(Kind k, const std::string& msg, int relation = -1)
        : std::runtime_error(msg), kind(k), relation(relation) {}
    Kind kind;
    int relation;  // 0-based index of the offending relation, -1 if none
};

class PathAlgebra {
public:
    struct Entry {
        std::size_t index;
        Scalar coeff;
    };

    const std::string& name() const { return name_; }
    const Quiver& quiver() const { return quiver_; }
    const std::vector<Relation>& relations() const { return relations_; }
    int max_len() const { return max_len_; }
    int loewy_length() const { return loewy_; }
    bool homogeneous() const { return true; }
    int num_vertices() const { return quiver_.num_vertices(); }

    std::size_t dim() const { return basis_.size(); }
    const std::vector<BasisElement>& basis() const { return basis_; }
    const BasisElement& basis(std::size_t i) const { return basis_[i]; }

    // Sparse product of two basis elements.
    const std::vector<Entry>& product(std::size_t i, std::size_t j) const { return table_[i * basis_.size() + j]; }

    Element zero() const { return Element(basis_.size(), 0); }
    Element unit() const;
    Element vertex_element(int v) const;
    Element arrow_element(int a) const;
    Element basis_element(std::size_t i) const;
    Element multiply(const Element& x, const Element& y) const;
    // Class of a path; empty words need the vertex.
    Element path_element(const Word& w, int vertex = -1) const;
    Element add(const Element& x, const Element& y) const;
    Element scale(const Element& x, Scalar s) const;

    std::size_t vertex_basis_index(int v) const { return vertex_index_[v]; }
    std::size_t arrow_basis_index(int a) const { return arrow_index_[a]; }

    // Basis elements e_i b e_j != 0, i.e. target i and source j.
    std::vector<std::size_t> basis_between(int target, int source) const;

    const std::string& fingerprint() const { return fingerprint_; }
    std::string word_string(const Word& w) const;

    bool check_associative() const;
    bool check_unital() const;

    struct Builder;
    friend struct Builder;
    friend std::shared_ptr<const PathAlgebra> build_algebra(const Quiver&, const std::vector<Relation>&, int,
                                                            const std::string&);
    friend std::shared_ptr<const PathAlgebra> opposite(const std::shared_ptr<const PathAlgebra>&);
    friend std::shared_ptr<const PathAlgebra> envelope(const std::shared_ptr<const PathAlgebra>&,
                                                       const std::shared_ptr<const PathAlgebra>&);

private:
    void finish();

    std::string name_;
    Quiver quiver_;
    std::vector<Relation> relations_;
    int max_len_ = 30;
    int loewy_ = 0;
    std::vector<BasisElement> basis_;
    std::vector<std::vector<Entry>> table_;
    std::vector<std::size_t> vertex_index_;
    std::vector<std::size_t> arrow_index_;
    std::string fingerprint_;
};

using AlgebraPtr = std::shared_ptr<const PathAlgebra>;

AlgebraPtr build_algebra(const Quiver& q, const std::vector<Relation>& rels, int max_len = 30,
                         const std::string& name = "");
AlgebraPtr opposite(const AlgebraPtr& a);
// a^op tensor b: right modules over it are (a,b)-bimodules.
AlgebraPtr envelope(const AlgebraPtr& a, const AlgebraPtr& b);

bool same_algebra(const AlgebraPtr& a, const AlgebraPtr& b);
std::string word_string(const Quiver& q, const Word& w);
bool word_composable(const Quiver& q, const Word& w);
int word_source(const Quiver& q, const Word& w);
int word_target(const Quiver& q, const Word& w);

}  // namespace singcat
