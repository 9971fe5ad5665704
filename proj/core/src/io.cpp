#include "singcat/io.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <sstream>

namespace singcat::io {

namespace la = linalg;

FileError::FileError(Kind k, std::string f, int l, const std::string& msg)
    : std::runtime_error(f + ":" + std::to_string(l) + ": " + to_string(k) + ": " + msg),
      kind(k),
      file(std::move(f)),
      line(l),
      message(msg) {}

const char* to_string(FileError::Kind k) {
    switch (k) {
        case FileError::Kind::Syntax: return "SyntaxError";
        case FileError::Kind::UnknownName: return "UnknownName";
        case FileError::Kind::MalformedRelation: return "MalformedRelation";
        case FileError::Kind::NotAdmissibleAtBound: return "NotAdmissibleAtBound";
        case FileError::Kind::Morphism: return "MorphismError";
        case FileError::Kind::Io: return "IoError";
    }
    return "Error";
}

namespace {

// Syntax problems inside a single line; the caller adds file and line.
struct LocalError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct NameError : LocalError {
    using LocalError::LocalError;
};

FileError::Kind kind_of(const LocalError& e, FileError::Kind otherwise) {
    return dynamic_cast<const NameError*>(&e) ? FileError::Kind::UnknownName : otherwise;
}

std::string trim(const std::string& s) {
    std::size_t a = s.find_first_not_of(" \t\r");
    if (a == std::string::npos) return "";
    std::size_t b = s.find_last_not_of(" \t\r");
    return s.substr(a, b - a + 1);
}

std::string squash(const std::string& s) {
    std::string out;
    bool sp = false;
    for (char c : trim(s)) {
        if (c == ' ' || c == '\t') {
            sp = true;
            continue;
        }
        if (sp && !out.empty()) out += ' ';
        sp = false;
        out += c;
    }
    return out;
}

std::vector<std::string> split_ws(const std::string& s) {
    std::istringstream is(s);
    std::vector<std::string> out;
    for (std::string t; is >> t;) out.push_back(t);
    return out;
}

bool is_ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
bool is_ident_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '\''; }

Scalar reduce(long v) {
    long p = static_cast<long>(la::prime());
    long r = v % p;
    if (r < 0) r += p;
    return static_cast<Scalar>(r);
}

struct ExprParser {
    const std::string& s;
    const Params& params;
    std::size_t i = 0;

    void ws() {
        while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
    }
    long expr() {
        long v = term();
        for (;;) {
            ws();
            if (i < s.size() && (s[i] == '+' || s[i] == '-')) {
                char op = s[i++];
                long t = term();
                v = op == '+' ? v + t : v - t;
            } else {
                return v;
            }
        }
    }
    long term() {
        long v = factor();
        for (;;) {
            ws();
            if (i < s.size() && s[i] == '*') {
                ++i;
                v *= factor();
            } else if (i < s.size() && (is_ident_start(s[i]) || s[i] == '(')) {
                v *= factor();  // 2n, 2(n-1)
            } else {
                return v;
            }
        }
    }
    long factor() {
        ws();
        if (i >= s.size()) throw LocalError("unexpected end of expression '" + s + "'");
        if (s[i] == '-') {
            ++i;
            return -factor();
        }
        if (s[i] == '(') {
            ++i;
            long v = expr();
            ws();
            if (i >= s.size() || s[i] != ')') throw LocalError("missing ')' in '" + s + "'");
            ++i;
            return v;
        }
        if (std::isdigit(static_cast<unsigned char>(s[i]))) {
            long v = 0;
            while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) v = v * 10 + (s[i++] - '0');
            return v;
        }
        if (is_ident_start(s[i])) {
            std::size_t j = i;
            while (i < s.size() && std::isalnum(static_cast<unsigned char>(s[i]))) ++i;
            std::string name = s.substr(j, i - j);
            auto it = params.find(name);
            if (it == params.end()) throw LocalError("unknown parameter '" + name + "'");
            return it->second;
        }
        throw LocalError(std::string("unexpected '") + s[i] + "' in '" + s + "'");
    }
};

// Exponent after '^': digits, a parameter, or a bracketed expression.
long read_exponent(const std::string& s, std::size_t& i, const Params& params) {
    if (i >= s.size()) throw LocalError("missing exponent");
    std::size_t j = i;
    if (s[i] == '{' || s[i] == '(') {
        char close = s[i] == '{' ? '}' : ')';
        int depth = 0;
        for (; j < s.size(); ++j) {
            if (s[j] == '{' || s[j] == '(') ++depth;
            if (s[j] == '}' || s[j] == ')') {
                if (--depth == 0) break;
            }
        }
        if (j >= s.size() || s[j] != close) throw LocalError("unbalanced exponent in '" + s + "'");
        long v = eval_int(s.substr(i + 1, j - i - 1), params);
        i = j + 1;
        return v;
    }
    if (std::isdigit(static_cast<unsigned char>(s[i]))) {
        while (j < s.size() && std::isdigit(static_cast<unsigned char>(s[j]))) ++j;
    } else if (is_ident_start(s[i])) {
        while (j < s.size() && std::isalnum(static_cast<unsigned char>(s[j]))) ++j;
    } else {
        throw LocalError("bad exponent in '" + s + "'");
    }
    long v = eval_int(s.substr(i, j - i), params);
    i = j;
    return v;
}

struct WordParser {
    const Quiver& q;
    const std::string& s;
    const Params& params;
    std::size_t i = 0;

    Word seq(bool inner) {
        Word w;
        for (;;) {
            while (i < s.size() && (s[i] == '.' || s[i] == ' ')) ++i;
            if (i >= s.size()) break;
            if (s[i] == ')') {
                if (!inner) throw LocalError("unbalanced ')' in '" + s + "'");
                break;
            }
            Word item;
            if (s[i] == '(') {
                ++i;
                item = seq(true);
                if (i >= s.size() || s[i] != ')') throw LocalError("missing ')' in '" + s + "'");
                ++i;
            } else {
                std::size_t best = 0;
                int arrow = -1;
                for (int a = 0; a < q.num_arrows(); ++a) {
                    const std::string& l = q.arrows[a].label;
                    if (l.size() > best && s.compare(i, l.size(), l) == 0) best = l.size(), arrow = a;
                }
                if (arrow < 0) throw LocalError("no arrow label at '" + s.substr(i) + "'");
                item = {arrow};
                i += best;
            }
            if (i < s.size() && s[i] == '^') {
                ++i;
                long k = read_exponent(s, i, params);
                if (k < 0) throw LocalError("negative exponent in '" + s + "'");
                Word rep;
                for (long t = 0; t < k; ++t) rep.insert(rep.end(), item.begin(), item.end());
                item = rep;
            }
            w.insert(w.end(), item.begin(), item.end());
        }
        return w;
    }
};

bool single_char_labels(const Quiver& q) {
    return std::all_of(q.arrows.begin(), q.arrows.end(), [](const Arrow& a) { return a.label.size() == 1; });
}

// Top-level split of a linear combination into signed pieces.
std::vector<std::pair<int, std::string>> split_terms(const std::string& text) {
    std::vector<std::pair<int, std::string>> out;
    int depth = 0, sign = 1;
    std::string cur;
    auto flush = [&] {
        std::string t = trim(cur);
        if (t.empty()) throw LocalError("empty term in '" + text + "'");
        out.push_back({sign, t});
        cur.clear();
    };
    for (std::size_t i = 0; i < text.size(); ++i) {
        char c = text[i];
        if (c == '(' || c == '{') ++depth;
        if (c == ')' || c == '}') --depth;
        if (depth == 0 && (c == '+' || c == '-')) {
            if (trim(cur).empty()) {
                if (c == '-') sign = -sign;
                continue;
            }
            flush();
            sign = c == '-' ? -1 : 1;
            continue;
        }
        cur += c;
    }
    flush();
    return out;
}

std::string format_matrix(const Matrix& m) {
    std::ostringstream os;
    for (std::size_t r = 0; r < m.rows(); ++r) {
        if (r) os << " ;";
        for (std::size_t c = 0; c < m.cols(); ++c) os << ' ' << m(r, c);
    }
    return os.str();
}

Matrix parse_matrix(const std::string& text, std::size_t rows, std::size_t cols) {
    std::vector<long> v;
    std::string t = text;
    std::replace(t.begin(), t.end(), ';', ' ');
    for (const auto& tok : split_ws(t)) {
        try {
            std::size_t used = 0;
            long x = std::stol(tok, &used);
            if (used != tok.size()) throw LocalError("bad matrix entry '" + tok + "'");
            v.push_back(x);
        } catch (const std::logic_error&) {
            throw LocalError("bad matrix entry '" + tok + "'");
        }
    }
    if (v.size() != rows * cols)
        throw LocalError("expected " + std::to_string(rows * cols) + " entries (" + std::to_string(rows) + "x" +
                         std::to_string(cols) + "), got " + std::to_string(v.size()));
    Matrix m(rows, cols);
    for (std::size_t r = 0; r < rows; ++r)
        for (std::size_t c = 0; c < cols; ++c) m(r, c) = reduce(v[r * cols + c]);
    return m;
}

struct Line {
    int no;
    std::vector<std::string> head;  // keyword and following tokens before '='
    std::string rest;               // text after the keyword
};

std::vector<Line> lex_lines(const std::string& text) {
    std::vector<Line> out;
    std::istringstream is(text);
    int no = 0;
    for (std::string raw; std::getline(is, raw);) {
        ++no;
        std::size_t h = raw.find('#');
        if (h != std::string::npos) raw.resize(h);
        std::string t = trim(raw);
        if (t.empty()) continue;
        std::size_t sp = t.find_first_of(" \t");
        Line l;
        l.no = no;
        l.head = {t.substr(0, sp)};
        l.rest = sp == std::string::npos ? "" : trim(t.substr(sp));
        out.push_back(l);
    }
    return out;
}

Module quotient_by_socles(Module m, long k) {
    for (long t = 0; t < k; ++t) {
        Sub s = socle(m);
        m = cokernel(s.incl).mod;
    }
    return m;
}

Module syzygy_module(Module m, long k) {
    for (long t = 0; t < k; ++t) {
        Cover c = projective_cover(m);
        m = kernel(c.map).mod;
    }
    return m;
}

int vertex_of(const Quiver& q, const std::string& label) {
    int v = q.vertex_index(label);
    if (v < 0) throw NameError("unknown vertex '" + label + "'");
    return v;
}

bool all_vertices(const Quiver& q, const std::vector<std::string>& parts) {
    return !parts.empty() &&
           std::all_of(parts.begin(), parts.end(), [&](const std::string& p) { return q.vertex_index(trim(p)) >= 0; });
}

// "rad^2" -> ("rad", 2); "soc" -> ("soc", 1)
bool operator_token(const std::string& t, const std::string& op, const Params& params, long& k) {
    if (t.compare(0, op.size(), op) != 0) return false;
    std::string r = t.substr(op.size());
    if (r.empty()) {
        k = 1;
        return true;
    }
    if (r[0] != '^') return false;
    std::size_t i = 1;
    k = read_exponent(r, i, params);
    if (i != r.size()) throw LocalError("trailing text after '" + t + "'");
    return true;
}

std::vector<std::string> split_top(const std::string& s, char sep) {
    std::vector<std::string> out;
    int depth = 0;
    std::string cur;
    for (char c : s) {
        if (c == '(' || c == '{') ++depth;
        if (c == ')' || c == '}') --depth;
        if (depth == 0 && c == sep) {
            out.push_back(cur);
            cur.clear();
        } else {
            cur += c;
        }
    }
    out.push_back(cur);
    return out;
}

Module parse_summand(const AlgebraPtr& alg, const std::string& text, const Params& params);

Module parse_base(const AlgebraPtr& alg, const std::string& t, const Params& params) {
    const Quiver& q = alg->quiver();
    if (t.size() >= 2 && t.front() == '(' && t.back() == ')') return parse_module(alg, t.substr(1, t.size() - 2), params);
    if (t == "0") return zero_module(alg);
    if (t == "A" || t == "Lambda") return regular(alg);
    if (t == "D" || t == "DA") return dual(regular(opposite(alg)), alg);
    if (!t.empty() && (t[0] == 'S' || t[0] == 'P' || t[0] == 'I')) {
        std::string v = t.substr(1);
        if (!v.empty() && v[0] == '_') v = v.substr(1);
        int idx = vertex_of(q, v);
        if (t[0] == 'S') return simple(alg, idx);
        if (t[0] == 'P') return projective(alg, idx);
        return injective(alg, idx);
    }
    throw LocalError("unknown module '" + t + "'");
}

Module parse_summand(const AlgebraPtr& alg, const std::string& text, const Params& params) {
    const Quiver& q = alg->quiver();
    std::string t = squash(text);
    auto slash = split_top(t, '/');
    if (all_vertices(q, slash)) {
        // uniserial: start from P_top / rad^len and cut each radical layer
        // down to the requested vertex
        const int len = static_cast<int>(slash.size());
        std::vector<int> want;
        for (const auto& sv : slash) want.push_back(vertex_of(q, trim(sv)));
        Module p = projective(alg, want[0]);
        Module m = quotient(p, radical_power_spaces(p, len)).mod;
        for (int j = 1; j < len; ++j) {
            Sub r = radical_power(m, j), r1 = radical_power(m, j + 1);
            std::vector<int> gens;
            std::vector<std::vector<Scalar>> vecs;
            for (int w = 0; w < alg->num_vertices(); ++w) {
                Matrix span = r1.incl.blocks[w];
                bool kept = false;
                for (std::size_t c = 0; c < r.incl.blocks[w].cols(); ++c) {
                    Matrix col = r.incl.blocks[w].column(c);
                    Matrix grown = Matrix::hstack(span, col);
                    if (la::rank(grown) == la::rank(span)) continue;
                    span = grown;
                    if (w == want[j] && !kept) {
                        kept = true;
                        continue;
                    }
                    gens.push_back(w);
                    vecs.push_back(col.column_values(0));
                }
            }
            if (gens.empty()) continue;
            ProjModule pg = projective(alg, gens);
            m = cokernel(from_projective(pg, m, vecs)).mod;
        }
        for (int k = 0; k < len; ++k) {
            std::vector<std::size_t> td(alg->num_vertices(), 0);
            td[want[k]] = 1;
            if (top_dims(radical_power(m, k).mod) != td)
                throw LocalError("no uniserial module '" + t + "' below P" + trim(slash[0]));
        }
        if (!radical_power(m, len).mod.is_zero()) throw LocalError("no uniserial module '" + t + "'");
        return m;
    }
    // prefix operators, then the base, then /rad^k and /soc^k
    auto words = split_ws(slash[0]);
    std::vector<std::pair<std::string, long>> prefix;
    std::size_t w = 0;
    for (; w + 1 < words.size(); ++w) {
        long k = 0;
        if (operator_token(words[w], "rad", params, k)) prefix.push_back({"rad", k});
        else if (operator_token(words[w], "soc", params, k)) prefix.push_back({"soc", k});
        else if (operator_token(words[w], "syz", params, k)) prefix.push_back({"syz", k});
        else break;
    }
    std::string base;
    for (std::size_t j = w; j < words.size(); ++j) base += (j > w ? " " : "") + words[j];
    if (base.empty()) throw LocalError("missing module in '" + t + "'");
    Module m = parse_base(alg, base, params);
    for (std::size_t k = 1; k < slash.size(); ++k) {
        std::string op = trim(slash[k]);
        long e = 0;
        if (operator_token(op, "rad", params, e)) m = quotient(m, radical_power_spaces(m, static_cast<int>(e))).mod;
        else if (operator_token(op, "soc", params, e)) m = quotient_by_socles(m, e);
        else throw LocalError("expected rad^k or soc^k after '/', got '" + op + "'");
    }
    for (auto it = prefix.rbegin(); it != prefix.rend(); ++it) {
        if (it->first == "rad") m = radical_power(m, static_cast<int>(it->second)).mod;
        else if (it->first == "syz") m = syzygy_module(m, it->second);
        else {
            Sub s = socle(m);
            for (long r = 1; r < it->second; ++r) {
                // soc^k: preimage of soc(M / soc^{k-1})
                Quot qq = cokernel(s.incl);
                Sub s2 = socle(qq.mod);
                s = kernel(compose(cokernel(s2.incl).proj, qq.proj));
            }
            m = s.mod;
        }
    }
    return m;
}

void require_identifier(const std::string& s, const std::string& what) {
    if (s.empty() || !is_ident_start(s[0]) ||
        !std::all_of(s.begin(), s.end(), [](char c) { return is_ident_char(c); }))
        throw LocalError("bad " + what + " '" + s + "'");
}

void require_label(const std::string& s, const std::string& what) {
    if (s.empty() || !std::all_of(s.begin(), s.end(), [](char c) { return is_ident_char(c); }))
        throw LocalError("bad " + what + " '" + s + "'");
}

}  // namespace

long eval_int(const std::string& expr, const Params& params) {
    ExprParser p{expr, params};
    long v = p.expr();
    p.ws();
    if (p.i != expr.size()) throw LocalError("trailing text in expression '" + expr + "'");
    return v;
}

Word parse_word(const Quiver& q, const std::string& text, const Params& params) {
    WordParser p{q, text, params};
    return p.seq(false);
}

std::string format_word(const Quiver& q, const Word& w) {
    std::string out;
    const bool tight = single_char_labels(q);
    for (std::size_t i = 0; i < w.size(); ++i) {
        if (i && !tight) out += '.';
        out += q.arrows[w[i]].label;
    }
    return out;
}

Relation parse_combination(const Quiver& q, const std::string& text, const Params& params) {
    Relation r;
    if (trim(text) == "0") return r;
    for (const auto& [sign, piece] : split_terms(text)) {
        std::size_t i = 0;
        long coeff = 1;
        if (std::isdigit(static_cast<unsigned char>(piece[0]))) {
            coeff = 0;
            while (i < piece.size() && std::isdigit(static_cast<unsigned char>(piece[i]))) coeff = coeff * 10 + (piece[i++] - '0');
            while (i < piece.size() && (piece[i] == ' ' || piece[i] == '*')) ++i;
        }
        std::string ws = piece.substr(i);
        Word w = parse_word(q, ws, params);
        if (w.empty()) throw LocalError("empty path in '" + text + "'");
        Scalar c = reduce(sign * coeff);
        auto it = std::find_if(r.terms.begin(), r.terms.end(), [&](const Term& t) { return t.word == w; });
        if (it == r.terms.end())
            r.terms.push_back(Term{c, w});
        else
            it->coeff = la::add(it->coeff, c);
    }
    std::erase_if(r.terms, [](const Term& t) { return t.coeff == 0; });
    return r;
}

std::string format_relation(const Quiver& q, const Relation& r) {
    if (r.terms.empty()) return "0";
    std::string out;
    const Scalar m1 = la::neg(1);
    for (std::size_t i = 0; i < r.terms.size(); ++i) {
        const Term& t = r.terms[i];
        std::string w = format_word(q, t.word);
        bool minus = t.coeff == m1 && t.coeff != 1;
        if (i) out += minus ? " - " : " + ";
        else if (minus) out += "-";
        if (t.coeff != 1 && !minus) out += std::to_string(t.coeff) + "*";
        out += w;
    }
    return out;
}

const ModuleDef* AlgebraFile::find_module(const std::string& n) const {
    for (const auto& m : modules)
        if (m.name == n) return &m;
    return nullptr;
}

AlgebraFile parse_algebra(const std::string& text, const Params& given, const std::string& origin) {
    auto fail = [&](FileError::Kind k, int line, const std::string& msg) -> FileError { return FileError(k, origin, line, msg); };
    AlgebraFile out;
    Quiver q;
    Params params;
    std::vector<std::pair<int, std::string>> rel_lines;
    int max_len = 30, max_len_line = 0, first_line = 1;
    bool have_vertices = false;

    struct PendingModule {
        int line;
        std::string name, literal;
        std::vector<std::size_t> dims;
        std::vector<std::pair<int, std::pair<std::string, std::string>>> acts;  // line, (arrow, entries)
        bool explicit_dims = false;
    };
    std::vector<PendingModule> mods;

    auto lines = lex_lines(text);
    if (!lines.empty()) first_line = lines.front().no;
    // params first so that they may appear anywhere
    for (const auto& l : lines) {
        if (l.head[0] != "param") continue;
        try {
            auto eq = l.rest.find('=');
            if (eq == std::string::npos) throw LocalError("expected 'param NAME = VALUE'");
            std::string name = trim(l.rest.substr(0, eq));
            require_identifier(name, "parameter name");
            params[name] = eval_int(trim(l.rest.substr(eq + 1)), params);
        } catch (const LocalError& e) {
            throw fail(FileError::Kind::Syntax, l.no, e.what());
        }
    }
    for (const auto& [k, v] : given) params[k] = v;

    for (const auto& l : lines) {
        const std::string& kw = l.head[0];
        try {
            if (kw == "param") continue;
            if (kw == "algebra") {
                require_identifier(l.rest, "algebra name");
                out.name = l.rest;
            } else if (kw == "vertices") {
                if (have_vertices) throw LocalError("duplicate 'vertices' line");
                have_vertices = true;
                for (const auto& v : split_ws(l.rest)) {
                    require_label(v, "vertex label");
                    if (q.vertex_index(v) >= 0) throw LocalError("duplicate vertex '" + v + "'");
                    q.vertices.push_back(v);
                }
                if (q.vertices.empty()) throw LocalError("empty vertex list");
            } else if (kw == "arrow") {
                auto t = split_ws(l.rest);
                if (t.size() != 3) throw LocalError("expected 'arrow NAME SOURCE TARGET'");
                require_identifier(t[0], "arrow name");
                if (q.arrow_index(t[0]) >= 0) throw LocalError("duplicate arrow '" + t[0] + "'");
                q.arrows.push_back(Arrow{t[0], vertex_of(q, t[1]), vertex_of(q, t[2])});
            } else if (kw == "relation") {
                rel_lines.push_back({l.no, l.rest});
            } else if (kw == "max_len") {
                max_len = static_cast<int>(eval_int(l.rest, params));
                max_len_line = l.no;
                if (max_len < 1) throw LocalError("max_len must be at least 1");
            } else if (kw == "module") {
                PendingModule pm;
                pm.line = l.no;
                auto eq = l.rest.find('=');
                std::string lhs = trim(eq == std::string::npos ? l.rest : l.rest.substr(0, eq));
                auto t = split_ws(lhs);
                if (t.empty()) throw LocalError("missing module name");
                require_identifier(t[0], "module name");
                pm.name = t[0];
                if (t.size() > 1) {
                    if (t[1] != "dims" || eq != std::string::npos)
                        throw LocalError("expected 'module NAME = LITERAL' or 'module NAME dims d1 d2 ...'");
                    pm.explicit_dims = true;
                    for (std::size_t i = 2; i < t.size(); ++i) pm.dims.push_back(static_cast<std::size_t>(eval_int(t[i], params)));
                } else {
                    if (eq == std::string::npos) throw LocalError("expected '=' after module name");
                    pm.literal = squash(l.rest.substr(eq + 1));
                    if (pm.literal.empty()) throw LocalError("empty module literal");
                }
                for (const auto& o : mods)
                    if (o.name == pm.name) throw LocalError("duplicate module '" + pm.name + "'");
                mods.push_back(pm);
            } else if (kw == "act") {
                if (mods.empty() || !mods.back().explicit_dims) throw LocalError("'act' must follow 'module NAME dims ...'");
                auto eq = l.rest.find('=');
                if (eq == std::string::npos) throw LocalError("expected 'act ARROW = entries'");
                mods.back().acts.push_back({l.no, {trim(l.rest.substr(0, eq)), l.rest.substr(eq + 1)}});
            } else {
                throw LocalError("unknown directive '" + kw + "'");
            }
        } catch (const LocalError& e) {
            throw fail(kind_of(e, FileError::Kind::Syntax), l.no, e.what());
        }
    }
    if (!have_vertices) throw fail(FileError::Kind::Syntax, first_line, "missing 'vertices' line");

    std::vector<Relation> rels;
    for (const auto& [no, txt] : rel_lines) {
        try {
            rels.push_back(parse_combination(q, txt, params));
        } catch (const LocalError& e) {
            throw fail(FileError::Kind::MalformedRelation, no, e.what());
        }
    }
    try {
        out.alg = build_algebra(q, rels, max_len, out.name);
    } catch (const AlgebraError& e) {
        if (e.kind == AlgebraError::Kind::MalformedRelation) {
            int no = e.relation >= 0 && e.relation < static_cast<int>(rel_lines.size()) ? rel_lines[e.relation].first : first_line;
            throw fail(FileError::Kind::MalformedRelation, no, e.what());
        }
        throw fail(FileError::Kind::NotAdmissibleAtBound, max_len_line ? max_len_line : first_line,
                   std::string(e.what()) + " (raise max_len)");
    }

    for (const auto& pm : mods) {
        ModuleDef d;
        d.name = pm.name;
        d.literal = pm.literal;
        try {
            if (!pm.explicit_dims) {
                d.module = parse_module(out.alg, pm.literal, params);
            } else {
                if (static_cast<int>(pm.dims.size()) != q.num_vertices())
                    throw LocalError("dims needs one entry per vertex");
                Module m{out.alg, pm.dims, {}};
                for (const auto& a : q.arrows) m.act.push_back(Matrix(pm.dims[a.source], pm.dims[a.target]));
                std::vector<bool> seen(q.num_arrows(), false);
                for (const auto& [no, act] : pm.acts) {
                    try {
                        int a = q.arrow_index(act.first);
                        if (a < 0) throw NameError("unknown arrow '" + act.first + "'");
                        if (seen[a]) throw LocalError("arrow '" + act.first + "' given twice");
                        seen[a] = true;
                        m.act[a] = parse_matrix(act.second, pm.dims[q.arrows[a].source], pm.dims[q.arrows[a].target]);
                    } catch (const LocalError& e) {
                        throw fail(kind_of(e, FileError::Kind::Syntax), no, e.what());
                    }
                }
                if (!satisfies_relations(m)) throw LocalError("module '" + pm.name + "' violates the relations");
                d.module = m;
            }
        } catch (const LocalError& e) {
            throw fail(FileError::Kind::Syntax, pm.line, e.what());
        }
        out.modules.push_back(d);
    }
    return out;
}

std::string read_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw FileError(FileError::Kind::Io, path.string(), 0, "cannot open file");
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

AlgebraFile load_algebra(const std::filesystem::path& path, const Params& params) {
    return parse_algebra(read_file(path), params, path.string());
}

std::string dump_algebra(const AlgebraFile& f) {
    const PathAlgebra& a = *f.alg;
    const Quiver& q = a.quiver();
    std::ostringstream os;
    if (!f.name.empty()) os << "algebra " << f.name << '\n';
    os << "vertices";
    for (const auto& v : q.vertices) os << ' ' << v;
    os << '\n';
    for (const auto& ar : q.arrows) os << "arrow " << ar.label << ' ' << q.vertices[ar.source] << ' ' << q.vertices[ar.target] << '\n';
    for (const auto& r : a.relations()) os << "relation " << format_relation(q, r) << '\n';
    os << "max_len " << a.max_len() << '\n';
    for (const auto& m : f.modules) {
        if (!m.literal.empty()) {
            os << "module " << m.name << " = " << m.literal << '\n';
            continue;
        }
        os << "module " << m.name << " dims";
        for (auto d : m.module.dims) os << ' ' << d;
        os << '\n';
        for (int x = 0; x < q.num_arrows(); ++x) os << "  act " << q.arrows[x].label << " =" << format_matrix(m.module.act[x]) << '\n';
    }
    return os.str();
}

Module parse_module(const AlgebraPtr& alg, const std::string& text, const Params& params) {
    auto parts = split_top(text, '+');
    Module m = parse_summand(alg, parts[0], params);
    for (std::size_t i = 1; i < parts.size(); ++i) m = direct_sum(m, parse_summand(alg, parts[i], params));
    return m;
}

namespace {

std::string uniserial_name(const Module& m) {
    if (m.is_zero()) return "0";
    const Quiver& q = m.alg->quiver();
    std::string out;
    for (int k = 0;; ++k) {
        Module r = radical_power(m, k).mod;
        if (r.is_zero()) return out;
        auto td = top_dims(r);
        std::size_t tot = 0;
        int v = -1;
        for (std::size_t i = 0; i < td.size(); ++i) {
            tot += td[i];
            if (td[i]) v = static_cast<int>(i);
        }
        if (tot != 1) return "";
        out += (k ? "/" : "") + q.vertices[v];
    }
}

}  // namespace

std::string module_name(const Module& m) {
    std::string u = uniserial_name(m);
    if (!u.empty()) return u;
    Decomposition dec = decompose(m);
    if (dec.status == Verdict::Yes && (dec.parts.size() > 1 || dec.parts[0].second > 1)) {
        std::vector<std::string> names;
        for (const auto& [p, k] : dec.parts) {
            std::string n = uniserial_name(p);
            if (n.empty()) return dims_string(m);
            for (int i = 0; i < k; ++i) names.push_back(n);
        }
        std::sort(names.begin(), names.end());
        std::string out;
        for (std::size_t i = 0; i < names.size(); ++i) out += (i ? " + " : "") + names[i];
        return out;
    }
    return dims_string(m);
}

MorphismFile parse_morphism(const std::string& text, const std::filesystem::path& base_dir, const Params& params,
                            const std::string& origin) {
    auto fail = [&](FileError::Kind k, int line, const std::string& msg) -> FileError { return FileError(k, origin, line, msg); };
    MorphismFile out;
    auto lines = lex_lines(text);
    int src_line = 0, tgt_line = 0, head_line = lines.empty() ? 1 : lines.front().no;
    std::vector<std::pair<int, std::pair<std::string, std::string>>> vlines, alines;
    for (const auto& l : lines) {
        const std::string& kw = l.head[0];
        try {
            if (kw == "morphism") {
                require_identifier(l.rest, "morphism name");
                out.name = l.rest;
            } else if (kw == "source" || kw == "target") {
                if (l.rest.empty()) throw LocalError("missing file name");
                (kw == "source" ? out.source_file : out.target_file) = l.rest;
                (kw == "source" ? src_line : tgt_line) = l.no;
            } else if (kw == "vertex" || kw == "arrow") {
                auto arrow = l.rest.find("->");
                if (arrow == std::string::npos) throw LocalError("expected '" + kw + " NAME -> IMAGE'");
                (kw == "vertex" ? vlines : alines).push_back({l.no, {trim(l.rest.substr(0, arrow)), trim(l.rest.substr(arrow + 2))}});
            } else {
                throw LocalError("unknown directive '" + kw + "'");
            }
        } catch (const LocalError& e) {
            throw fail(kind_of(e, FileError::Kind::Syntax), l.no, e.what());
        }
    }
    if (!src_line) throw fail(FileError::Kind::Syntax, head_line, "missing 'source' line");
    if (!tgt_line) throw fail(FileError::Kind::Syntax, head_line, "missing 'target' line");
    out.source = load_algebra(base_dir / out.source_file, params);
    out.target = load_algebra(base_dir / out.target_file, params);
    const Quiver& qs = out.source.alg->quiver();
    const Quiver& qt = out.target.alg->quiver();

    std::vector<std::vector<int>> vimg(qs.num_vertices());
    std::vector<bool> vseen(qs.num_vertices(), false);
    for (const auto& [no, pr] : vlines) {
        try {
            int v = qs.vertex_index(pr.first);
            if (v < 0) throw LocalError("unknown source vertex '" + pr.first + "'");
            if (vseen[v]) throw LocalError("vertex '" + pr.first + "' mapped twice");
            vseen[v] = true;
            for (const auto& t : split_ws(pr.second)) vimg[v].push_back(vertex_of(qt, t));
            if (vimg[v].empty()) throw LocalError("empty vertex image");
        } catch (const LocalError& e) {
            throw fail(FileError::Kind::UnknownName, no, e.what());
        }
    }
    for (int v = 0; v < qs.num_vertices(); ++v)
        if (!vseen[v]) throw fail(FileError::Kind::Syntax, head_line, "no image for vertex '" + qs.vertices[v] + "'");

    std::vector<Element> aimg(qs.num_arrows());
    std::vector<bool> aseen(qs.num_arrows(), false);
    for (const auto& [no, pr] : alines) {
        try {
            int a = qs.arrow_index(pr.first);
            if (a < 0) throw LocalError("unknown source arrow '" + pr.first + "'");
            if (aseen[a]) throw LocalError("arrow '" + pr.first + "' mapped twice");
            aseen[a] = true;
            Element e = out.target.alg->zero();
            Relation comb = parse_combination(qt, pr.second, params);
            for (const auto& t : comb.terms) {
                if (!word_composable(qt, t.word)) throw LocalError("path '" + format_word(qt, t.word) + "' is not composable");
                e = out.target.alg->add(e, out.target.alg->scale(out.target.alg->path_element(t.word), t.coeff));
            }
            aimg[a] = e;
        } catch (const LocalError& e) {
            throw fail(FileError::Kind::Syntax, no, e.what());
        }
    }
    for (int a = 0; a < qs.num_arrows(); ++a)
        if (!aseen[a]) throw fail(FileError::Kind::Syntax, head_line, "no image for arrow '" + qs.arrows[a].label + "'");
    try {
        out.morphism = make_morphism(out.source.alg, out.target.alg, vimg, aimg, out.name);
    } catch (const MorphismError& e) {
        throw fail(FileError::Kind::Morphism, head_line, e.what());
    }
    return out;
}

MorphismFile load_morphism(const std::filesystem::path& path, const Params& params) {
    return parse_morphism(read_file(path), path.parent_path(), params, path.string());
}

std::string dump_morphism(const MorphismFile& f) {
    const Quiver& qs = f.source.alg->quiver();
    const Quiver& qt = f.target.alg->quiver();
    const PathAlgebra& t = *f.target.alg;
    std::ostringstream os;
    if (!f.name.empty()) os << "morphism " << f.name << '\n';
    os << "source " << f.source_file << '\n' << "target " << f.target_file << '\n';
    for (int v = 0; v < qs.num_vertices(); ++v) {
        os << "vertex " << qs.vertices[v] << " ->";
        for (int w : f.morphism.vertex_images[v]) os << ' ' << qt.vertices[w];
        os << '\n';
    }
    for (int a = 0; a < qs.num_arrows(); ++a) {
        Relation r;
        const Element& e = f.morphism.arrow_images[a];
        for (std::size_t b = 0; b < e.size(); ++b)
            if (e[b]) r.terms.push_back(Term{e[b], t.basis(b).word});
        os << "arrow " << qs.arrows[a].label << " -> " << format_relation(qt, r) << '\n';
    }
    return os.str();
}

std::string to_dot(const PathAlgebra& a) {
    const Quiver& q = a.quiver();
    std::ostringstream os;
    os << "digraph \"" << (a.name().empty() ? "quiver" : a.name()) << "\" {\n";
    for (const auto& v : q.vertices) os << "  \"" << v << "\";\n";
    for (const auto& ar : q.arrows)
        os << "  \"" << q.vertices[ar.source] << "\" -> \"" << q.vertices[ar.target] << "\" [label=\"" << ar.label << "\"];\n";
    os << "}\n";
    return os.str();
}

}  // namespace singcat::io
