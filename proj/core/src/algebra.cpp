#include "singcat/algebra.hpp"

#include <algorithm>
#include <map>
#include <sstream>

namespace singcat {

using linalg::Echelon;

int Quiver::vertex_index(const std::string& label) const {
    for (std::size_t i = 0; i < vertices.size(); ++i)
        if (vertices[i] == label) return static_cast<int>(i);
    return -1;
}

int Quiver::arrow_index(const std::string& label) const {
    for (std::size_t i = 0; i < arrows.size(); ++i)
        if (arrows[i].label == label) return static_cast<int>(i);
    return -1;
}

std::string word_string(const Quiver& q, const Word& w) {
    bool single = true;
    for (const auto& a : q.arrows) single = single && a.label.size() == 1;
    std::string s;
    for (std::size_t i = 0; i < w.size(); ++i) {
        if (i && !single) s += '.';
        s += q.arrows[w[i]].label;
    }
    return s;
}

bool word_composable(const Quiver& q, const Word& w) {
    for (std::size_t i = 0; i + 1 < w.size(); ++i)
        if (q.arrows[w[i + 1]].target != q.arrows[w[i]].source) return false;
    return true;
}

int word_source(const Quiver& q, const Word& w) { return q.arrows[w.back()].source; }
int word_target(const Quiver& q, const Word& w) { return q.arrows[w.front()].target; }

namespace {

// Label-wise lexicographic comparison of words.
bool word_less(const Quiver& q, const Word& a, const Word& b) {
    std::size_t n = std::min(a.size(), b.size());
    for (std::size_t i = 0; i < n; ++i) {
        const std::string& la = q.arrows[a[i]].label;
        const std::string& lb = q.arrows[b[i]].label;
        if (la != lb) return la < lb;
    }
    return a.size() < b.size();
}

std::string relation_string(const Quiver& q, const Relation& r) {
    std::string s;
    for (std::size_t i = 0; i < r.terms.size(); ++i) {
        if (i) s += " + ";
        if (r.terms[i].coeff != 1) s += std::to_string(r.terms[i].coeff) + "*";
        s += word_string(q, r.terms[i].word);
    }
    return s;
}

std::string make_fingerprint(const Quiver& q, const std::vector<Relation>& rels, const std::string& extra) {
    std::ostringstream os;
    os << "p=" << linalg::prime() << ";V=";
    for (const auto& v : q.vertices) os << v << ',';
    os << ";A=";
    for (const auto& a : q.arrows) os << a.label << ':' << a.source << '>' << a.target << ',';
    os << ";R=";
    for (const auto& r : rels) os << relation_string(q, r) << ';';
    os << extra;
    return os.str();
}

struct Level {
    std::vector<Word> kept;
    std::map<Word, std::size_t> index;
    Echelon K;
    std::vector<bool> pivot;
    std::vector<std::size_t> pivot_row;
    std::vector<bool> zero;
    std::vector<std::size_t> basis_id;
};

}  // namespace

struct PathAlgebra::Builder {
    const Quiver& q;
    std::vector<Relation> rels;
    int max_len;
    std::vector<Level> levels;
    std::vector<BasisElement> basis;
    std::map<Word, std::vector<Entry>> memo;

    using Sparse = std::vector<Entry>;

    bool nonzero_path(const Word& w) const {
        std::size_t l = w.size();
        if (l >= levels.size()) return false;
        auto it = levels[l].index.find(w);
        return it != levels[l].index.end() && !levels[l].zero[it->second];
    }

    Sparse nf_level(const Word& w) const {
        std::size_t l = w.size();
        if (l >= levels.size()) return {};
        const Level& L = levels[l];
        auto it = L.index.find(w);
        if (it == L.index.end()) return {};
        std::size_t c = it->second;
        if (!L.pivot[c]) return {{L.basis_id[c], 1}};
        Sparse out;
        const auto& row = L.K.form;
        std::size_t r = L.pivot_row[c];
        for (std::size_t j = 0; j < L.kept.size(); ++j) {
            if (j == c || !row(r, j)) continue;
            out.push_back({L.basis_id[j], linalg::neg(row(r, j))});
        }
        return out;
    }

    Sparse nf(const Word& w) {
        if (w.size() <= 1) return nf_level(w);
        auto it = memo.find(w);
        if (it != memo.end()) return it->second;
        Word rest(w.begin() + 1, w.end());
        Sparse r = nf(rest);
        std::map<std::size_t, Scalar> acc;
        for (const auto& e : r) {
            Word p;
            p.push_back(w[0]);
            const Word& bw = basis[e.index].word;
            p.insert(p.end(), bw.begin(), bw.end());
            for (const auto& f : nf_level(p)) acc[f.index] = linalg::add(acc[f.index], linalg::mul(e.coeff, f.coeff));
        }
        Sparse out;
        for (auto& [k, v] : acc)
            if (v) out.push_back({k, v});
        memo[w] = out;
        return out;
    }
};

namespace {

std::vector<Relation> normalize_relations(const Quiver& q, const std::vector<Relation>& rels) {
    std::vector<Relation> out;
    for (std::size_t ri = 0; ri < rels.size(); ++ri) {
        const Relation& r = rels[ri];
        std::map<Word, Scalar> acc;
        int src = -1, tgt = -1;
        std::size_t len = 0;
        bool first = true;
        for (const auto& t : r.terms) {
            const std::string where = "relation " + std::to_string(ri + 1);
            if (t.word.size() < 2)
                throw AlgebraError(AlgebraError::Kind::MalformedRelation,
                                   where + ": paths must have length at least 2", static_cast<int>(ri));
            for (int a : t.word)
                if (a < 0 || a >= q.num_arrows())
                    throw AlgebraError(AlgebraError::Kind::MalformedRelation, where + ": unknown arrow", static_cast<int>(ri));
            if (!word_composable(q, t.word))
                throw AlgebraError(AlgebraError::Kind::MalformedRelation,
                                   where + ": path " + word_string(q, t.word) + " is not composable", static_cast<int>(ri));
            int s = word_source(q, t.word), g = word_target(q, t.word);
            if (first) {
                src = s, tgt = g, len = t.word.size();
                first = false;
            } else if (s != src || g != tgt) {
                throw AlgebraError(AlgebraError::Kind::MalformedRelation,
                                   where + ": paths are not parallel (" + relation_string(q, r) + ")", static_cast<int>(ri));
            } else if (t.word.size() != len) {
                throw AlgebraError(AlgebraError::Kind::MalformedRelation,
                                   where + ": paths of different lengths are not supported (" + relation_string(q, r) +
                                       ")", static_cast<int>(ri));
            }
            acc[t.word] = linalg::add(acc[t.word], t.coeff % linalg::prime());
        }
        Relation n;
        for (auto& [w, c] : acc)
            if (c) n.terms.push_back({c, w});
        if (!n.terms.empty()) out.push_back(n);
    }
    return out;
}

}  // namespace

AlgebraPtr build_algebra(const Quiver& q, const std::vector<Relation>& rels_in, int max_len,
                         const std::string& name) {
    if (max_len < 1) throw std::invalid_argument("max_len must be at least 1");
    for (const auto& a : q.arrows)
        if (a.source < 0 || a.source >= q.num_vertices() || a.target < 0 || a.target >= q.num_vertices())
            throw std::invalid_argument("arrow " + a.label + " has an unknown endpoint");
    for (std::size_t i = 0; i < q.vertices.size(); ++i)
        for (std::size_t j = i + 1; j < q.vertices.size(); ++j)
            if (q.vertices[i] == q.vertices[j]) throw std::invalid_argument("duplicate vertex " + q.vertices[i]);
    for (std::size_t i = 0; i < q.arrows.size(); ++i)
        for (std::size_t j = i + 1; j < q.arrows.size(); ++j)
            if (q.arrows[i].label == q.arrows[j].label)
                throw std::invalid_argument("duplicate arrow " + q.arrows[i].label);

    std::vector<Relation> rels = normalize_relations(q, rels_in);
    PathAlgebra::Builder B{q, rels, max_len, {}, {}, {}};
    auto desc = [&](const Word& a, const Word& b) { return word_less(q, b, a); };

    // degree 0
    {
        Level L;
        L.K = Echelon{Matrix(0, 0), {}};
        for (int v = 0; v < q.num_vertices(); ++v) {
            B.basis.push_back({{}, v, v, 0});
            L.basis_id.push_back(static_cast<std::size_t>(v));
        }
        B.levels.push_back(L);
    }
    for (int l = 1;; ++l) {
        Level L;
        const Level& prev = B.levels[l - 1];
        if (l == 1) {
            for (int a = 0; a < q.num_arrows(); ++a) L.kept.push_back({a});
        } else {
            for (std::size_t c = 0; c < prev.kept.size(); ++c) {
                if (prev.zero[c]) continue;
                const Word& w = prev.kept[c];
                int t = word_target(q, w);
                for (int a = 0; a < q.num_arrows(); ++a) {
                    if (q.arrows[a].source != t) continue;
                    Word p;
                    p.push_back(a);
                    p.insert(p.end(), w.begin(), w.end());
                    Word prefix(p.begin(), p.end() - 1);
                    if (!B.nonzero_path(prefix)) continue;
                    L.kept.push_back(p);
                }
            }
        }
        std::sort(L.kept.begin(), L.kept.end(), desc);
        L.kept.erase(std::unique(L.kept.begin(), L.kept.end()), L.kept.end());
        for (std::size_t i = 0; i < L.kept.size(); ++i) L.index[L.kept[i]] = i;
        const std::size_t n = L.kept.size();

        std::vector<std::vector<Scalar>> rows;
        auto add_row = [&](const std::vector<Scalar>& r) {
            for (Scalar x : r)
                if (x) {
                    rows.push_back(r);
                    return;
                }
        };
        for (const auto& r : rels) {
            if (static_cast<int>(r.terms[0].word.size()) != l) continue;
            std::vector<Scalar> row(n, 0);
            for (const auto& t : r.terms) {
                auto it = L.index.find(t.word);
                if (it != L.index.end()) row[it->second] = linalg::add(row[it->second], t.coeff);
            }
            add_row(row);
        }
        if (l >= 2) {
            for (std::size_t kr = 0; kr < prev.K.pivots.size(); ++kr) {
                for (int a = 0; a < q.num_arrows(); ++a) {
                    std::vector<Scalar> left(n, 0), right(n, 0);
                    for (std::size_t c = 0; c < prev.kept.size(); ++c) {
                        Scalar v = prev.K.form(kr, c);
                        if (!v) continue;
                        const Word& w = prev.kept[c];
                        if (q.arrows[a].source == word_target(q, w)) {
                            Word p{a};
                            p.insert(p.end(), w.begin(), w.end());
                            auto it = L.index.find(p);
                            if (it != L.index.end()) left[it->second] = linalg::add(left[it->second], v);
                        }
                        if (q.arrows[a].target == word_source(q, w)) {
                            Word p = w;
                            p.push_back(a);
                            auto it = L.index.find(p);
                            if (it != L.index.end()) right[it->second] = linalg::add(right[it->second], v);
                        }
                    }
                    add_row(left);
                    add_row(right);
                }
            }
        }
        Matrix Km(rows.size(), n);
        for (std::size_t i = 0; i < rows.size(); ++i)
            for (std::size_t j = 0; j < n; ++j) Km(i, j) = rows[i][j];
        L.K = linalg::rref(Km);
        // keep only the nonzero rows
        L.K.form = L.K.form.block(0, 0, L.K.pivots.size(), n);
        L.pivot.assign(n, false);
        L.pivot_row.assign(n, 0);
        L.zero.assign(n, false);
        L.basis_id.assign(n, 0);
        for (std::size_t r = 0; r < L.K.pivots.size(); ++r) {
            std::size_t c = L.K.pivots[r];
            L.pivot[c] = true;
            L.pivot_row[c] = r;
            bool alone = true;
            for (std::size_t j = 0; j < n && alone; ++j)
                if (j != c && L.K.form(r, j)) alone = false;
            L.zero[c] = alone;
        }
        std::vector<std::size_t> nonpiv;
        for (std::size_t c = 0; c < n; ++c)
            if (!L.pivot[c]) nonpiv.push_back(c);
        std::reverse(nonpiv.begin(), nonpiv.end());
        for (std::size_t c : nonpiv) {
            L.basis_id[c] = B.basis.size();
            const Word& w = L.kept[c];
            B.basis.push_back({w, word_source(q, w), word_target(q, w), l});
        }
        bool any = !nonpiv.empty();
        B.levels.push_back(std::move(L));
        if (!any) break;
        if (l >= max_len)
            throw AlgebraError(AlgebraError::Kind::NotAdmissibleAtBound,
                               "paths of length " + std::to_string(max_len) +
                                   " survive; the ideal is not admissible at this bound");
    }

    auto alg = std::make_shared<PathAlgebra>();
    alg->name_ = name;
    alg->quiver_ = q;
    alg->relations_ = rels;
    alg->max_len_ = max_len;
    alg->basis_ = B.basis;
    const std::size_t d = B.basis.size();
    alg->table_.assign(d * d, {});
    for (std::size_t i = 0; i < d; ++i) {
        for (std::size_t j = 0; j < d; ++j) {
            const BasisElement& x = B.basis[i];
            const BasisElement& y = B.basis[j];
            if (x.source != y.target) continue;
            if (x.length == 0) {
                alg->table_[i * d + j] = {{j, 1}};
                continue;
            }
            if (y.length == 0) {
                alg->table_[i * d + j] = {{i, 1}};
                continue;
            }
            Word w = x.word;
            w.insert(w.end(), y.word.begin(), y.word.end());
            alg->table_[i * d + j] = B.nf(w);
        }
    }
    alg->fingerprint_ = make_fingerprint(q, rels, "");
    alg->finish();
    return alg;
}

void PathAlgebra::finish() {
    vertex_index_.assign(quiver_.num_vertices(), 0);
    arrow_index_.assign(quiver_.num_arrows(), static_cast<std::size_t>(-1));
    loewy_ = 0;
    for (std::size_t i = 0; i < basis_.size(); ++i) {
        const auto& b = basis_[i];
        loewy_ = std::max(loewy_, b.length + 1);
        if (b.length == 0) vertex_index_[b.source] = i;
        if (b.length == 1) arrow_index_[b.word[0]] = i;
    }
}

Element PathAlgebra::unit() const {
    Element e = zero();
    for (int v = 0; v < num_vertices(); ++v) e[vertex_index_[v]] = 1;
    return e;
}

Element PathAlgebra::vertex_element(int v) const {
    Element e = zero();
    e[vertex_index_[v]] = 1;
    return e;
}

Element PathAlgebra::arrow_element(int a) const {
    Element e = zero();
    if (arrow_index_[a] != static_cast<std::size_t>(-1)) e[arrow_index_[a]] = 1;
    return e;
}

Element PathAlgebra::basis_element(std::size_t i) const {
    Element e = zero();
    e[i] = 1;
    return e;
}

Element PathAlgebra::multiply(const Element& x, const Element& y) const {
    const std::size_t d = dim();
    Element out(d, 0);
    for (std::size_t i = 0; i < d; ++i) {
        if (!x[i]) continue;
        for (std::size_t j = 0; j < d; ++j) {
            if (!y[j]) continue;
            Scalar c = linalg::mul(x[i], y[j]);
            for (const auto& e : product(i, j)) out[e.index] = linalg::add(out[e.index], linalg::mul(c, e.coeff));
        }
    }
    return out;
}

Element PathAlgebra::path_element(const Word& w, int vertex) const {
    if (w.empty()) {
        if (vertex < 0) throw std::invalid_argument("empty path needs a vertex");
        return vertex_element(vertex);
    }
    if (!word_composable(quiver_, w)) return zero();
    Element e = arrow_element(w.back());
    for (std::size_t i = w.size() - 1; i-- > 0;) e = multiply(arrow_element(w[i]), e);
    return e;
}

Element PathAlgebra::add(const Element& x, const Element& y) const {
    Element out(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) out[i] = linalg::add(x[i], y[i]);
    return out;
}

Element PathAlgebra::scale(const Element& x, Scalar s) const {
    Element out(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) out[i] = linalg::mul(x[i], s);
    return out;
}

std::vector<std::size_t> PathAlgebra::basis_between(int target, int source) const {
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < basis_.size(); ++i)
        if (basis_[i].target == target && basis_[i].source == source) out.push_back(i);
    return out;
}

std::string PathAlgebra::word_string(const Word& w) const { return singcat::word_string(quiver_, w); }

bool PathAlgebra::check_associative() const {
    const std::size_t d = dim();
    for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = 0; j < d; ++j)
            for (std::size_t k = 0; k < d; ++k) {
                Element x = basis_element(i), y = basis_element(j), z = basis_element(k);
                if (multiply(multiply(x, y), z) != multiply(x, multiply(y, z))) return false;
            }
    return true;
}

bool PathAlgebra::check_unital() const {
    Element one = unit();
    for (std::size_t i = 0; i < dim(); ++i) {
        Element x = basis_element(i);
        if (multiply(one, x) != x || multiply(x, one) != x) return false;
    }
    return true;
}

AlgebraPtr opposite(const AlgebraPtr& a) {
    auto op = std::make_shared<PathAlgebra>();
    op->name_ = a->name_.empty() ? "" : a->name_ + "^op";
    op->quiver_ = a->quiver_;
    for (auto& ar : op->quiver_.arrows) std::swap(ar.source, ar.target);
    for (const auto& r : a->relations_) {
        Relation n;
        for (const auto& t : r.terms) n.terms.push_back({t.coeff, Word(t.word.rbegin(), t.word.rend())});
        op->relations_.push_back(n);
    }
    op->max_len_ = a->max_len_;
    for (const auto& b : a->basis_) op->basis_.push_back({Word(b.word.rbegin(), b.word.rend()), b.target, b.source, b.length});
    const std::size_t d = a->dim();
    op->table_.assign(d * d, {});
    for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = 0; j < d; ++j) op->table_[i * d + j] = a->table_[j * d + i];
    // The opposite of an opposite is the original algebra.
    const std::string tag = "op(";
    if (a->fingerprint_.rfind(tag, 0) == 0 && a->fingerprint_.back() == ')')
        op->fingerprint_ = a->fingerprint_.substr(tag.size(), a->fingerprint_.size() - tag.size() - 1);
    else
        op->fingerprint_ = tag + a->fingerprint_ + ")";
    if (a->name_.size() > 3 && a->name_.substr(a->name_.size() - 3) == "^op")
        op->name_ = a->name_.substr(0, a->name_.size() - 3);
    op->finish();
    return op;
}

AlgebraPtr envelope(const AlgebraPtr& A, const AlgebraPtr& B) {
    auto E = std::make_shared<PathAlgebra>();
    const Quiver& qa = A->quiver_;
    const Quiver& qb = B->quiver_;
    const int na = qa.num_vertices(), nb = qb.num_vertices();
    E->name_ = "env(" + A->name_ + "," + B->name_ + ")";
    Quiver& q = E->quiver_;
    for (int u = 0; u < na; ++u)
        for (int j = 0; j < nb; ++j) q.vertices.push_back(qa.vertices[u] + "|" + qb.vertices[j]);
    auto vid = [nb](int u, int j) { return u * nb + j; };
    // op-side arrows (alpha', j): alpha: i -> k in A gives (k,j) -> (i,j)
    std::vector<std::vector<int>> opa(qa.num_arrows(), std::vector<int>(nb));
    for (int a = 0; a < qa.num_arrows(); ++a)
        for (int j = 0; j < nb; ++j) {
            opa[a][j] = q.num_arrows();
            const Arrow& x = qa.arrows[a];
            q.arrows.push_back({x.label + "'|" + qb.vertices[j], vid(x.target, j), vid(x.source, j)});
        }
    std::vector<std::vector<int>> rb(qb.num_arrows(), std::vector<int>(na));
    for (int b = 0; b < qb.num_arrows(); ++b)
        for (int u = 0; u < na; ++u) {
            rb[b][u] = q.num_arrows();
            const Arrow& y = qb.arrows[b];
            q.arrows.push_back({qa.vertices[u] + "|" + y.label, vid(u, y.source), vid(u, y.target)});
        }
    for (const auto& r : A->relations_)
        for (int j = 0; j < nb; ++j) {
            Relation n;
            for (const auto& t : r.terms) {
                Word w;
                for (auto it = t.word.rbegin(); it != t.word.rend(); ++it) w.push_back(opa[*it][j]);
                n.terms.push_back({t.coeff, w});
            }
            E->relations_.push_back(n);
        }
    for (const auto& r : B->relations_)
        for (int u = 0; u < na; ++u) {
            Relation n;
            for (const auto& t : r.terms) {
                Word w;
                for (int x : t.word) w.push_back(rb[x][u]);
                n.terms.push_back({t.coeff, w});
            }
            E->relations_.push_back(n);
        }
    for (int a = 0; a < qa.num_arrows(); ++a)
        for (int b = 0; b < qb.num_arrows(); ++b) {
            const Arrow& x = qa.arrows[a];
            const Arrow& y = qb.arrows[b];
            // (k,j) -> (i,l) two ways
            Relation n;
            n.terms.push_back({1, {opa[a][y.target], rb[b][x.target]}});
            n.terms.push_back({linalg::neg(1), {rb[b][x.source], opa[a][y.source]}});
            E->relations_.push_back(n);
        }
    E->max_len_ = A->max_len_ + B->max_len_;
    const std::size_t da = A->dim(), db = B->dim();
    for (std::size_t ia = 0; ia < da; ++ia)
        for (std::size_t ib = 0; ib < db; ++ib) {
            const BasisElement& x = A->basis_[ia];
            const BasisElement& y = B->basis_[ib];
            Word w;
            for (auto it = x.word.rbegin(); it != x.word.rend(); ++it) w.push_back(opa[*it][y.target]);
            for (int t : y.word) w.push_back(rb[t][x.target]);
            E->basis_.push_back({w, vid(x.target, y.source), vid(x.source, y.target), x.length + y.length});
        }
    const std::size_t d = da * db;
    E->table_.assign(d * d, {});
    for (std::size_t i = 0; i < d; ++i) {
        std::size_t a1 = i / db, b1 = i % db;
        for (std::size_t j = 0; j < d; ++j) {
            std::size_t a2 = j / db, b2 = j % db;
            const auto& pa = A->product(a2, a1);
            if (pa.empty()) continue;
            const auto& pb = B->product(b1, b2);
            if (pb.empty()) continue;
            auto& out = E->table_[i * d + j];
            for (const auto& ea : pa)
                for (const auto& eb : pb) out.push_back({ea.index * db + eb.index, linalg::mul(ea.coeff, eb.coeff)});
            std::sort(out.begin(), out.end(), [](const auto& l, const auto& r) { return l.index < r.index; });
        }
    }
    E->fingerprint_ = "env(" + A->fingerprint_ + "," + B->fingerprint_ + ")";
    E->finish();
    return E;
}

bool same_algebra(const AlgebraPtr& a, const AlgebraPtr& b) {
    return a == b || (a && b && a->fingerprint() == b->fingerprint());
}

}  // namespace singcat
