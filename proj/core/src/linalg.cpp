#include "singcat/linalg.hpp"

#include <sstream>
#include <stdexcept>

namespace singcat::linalg {

namespace {

Scalar g_prime = 2;

bool is_prime(Scalar p) {
    if (p < 2) return false;
    for (Scalar d = 2; d * d <= p; ++d)
        if (p % d == 0) return false;
    return true;
}

}  // namespace

void set_prime(Scalar p) {
    if (!is_prime(p) || p > 46337) throw std::invalid_argument("prime expected (at most 46337), got " + std::to_string(p));
    g_prime = p;
}

Scalar prime() { return g_prime; }

Scalar add(Scalar a, Scalar b) {
    Scalar s = a + b;
    return s >= g_prime ? s - g_prime : s;
}

Scalar sub(Scalar a, Scalar b) { return a >= b ? a - b : a + g_prime - b; }

Scalar mul(Scalar a, Scalar b) {
    return static_cast<Scalar>((static_cast<std::uint64_t>(a) * b) % g_prime);
}

Scalar neg(Scalar a) { return a == 0 ? 0 : g_prime - a; }

Scalar inv(Scalar a) {
    if (a % g_prime == 0) throw std::domain_error("inverse of zero");
    // Fermat: a^(p-2)
    std::uint64_t r = 1, b = a % g_prime;
    Scalar e = g_prime - 2;
    while (e) {
        if (e & 1) r = r * b % g_prime;
        b = b * b % g_prime;
        e >>= 1;
    }
    return static_cast<Scalar>(r);
}

Scalar reduce(long long v) {
    long long p = g_prime;
    long long r = v % p;
    if (r < 0) r += p;
    return static_cast<Scalar>(r);
}

Matrix::Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), a_(rows * cols, 0) {}

Matrix Matrix::identity(std::size_t n) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
    return m;
}

Matrix Matrix::from_rows(const std::vector<std::vector<long long>>& rows) {
    std::size_t c = rows.empty() ? 0 : rows[0].size();
    Matrix m(rows.size(), c);
    for (std::size_t i = 0; i < rows.size(); ++i) {
        if (rows[i].size() != c) throw std::invalid_argument("ragged matrix literal");
        for (std::size_t j = 0; j < c; ++j) m(i, j) = reduce(rows[i][j]);
    }
    return m;
}

Matrix Matrix::column_vector(const std::vector<Scalar>& v) {
    Matrix m(v.size(), 1);
    for (std::size_t i = 0; i < v.size(); ++i) m(i, 0) = v[i] % g_prime;
    return m;
}

Matrix Matrix::hstack(const Matrix& a, const Matrix& b) {
    if (a.rows_ != b.rows_) throw std::invalid_argument("hstack: row mismatch");
    Matrix m(a.rows_, a.cols_ + b.cols_);
    m.set_block(0, 0, a);
    m.set_block(0, a.cols_, b);
    return m;
}

Matrix Matrix::vstack(const Matrix& a, const Matrix& b) {
    if (a.cols_ != b.cols_) throw std::invalid_argument("vstack: column mismatch");
    Matrix m(a.rows_ + b.rows_, a.cols_);
    m.set_block(0, 0, a);
    m.set_block(a.rows_, 0, b);
    return m;
}

Matrix Matrix::block_diag(const Matrix& a, const Matrix& b) {
    Matrix m(a.rows_ + b.rows_, a.cols_ + b.cols_);
    m.set_block(0, 0, a);
    m.set_block(a.rows_, a.cols_, b);
    return m;
}

bool Matrix::operator==(const Matrix& o) const {
    return rows_ == o.rows_ && cols_ == o.cols_ && a_ == o.a_;
}

Matrix Matrix::operator*(const Matrix& o) const {
    if (cols_ != o.rows_) throw std::invalid_argument("matrix product: dimension mismatch");
    Matrix m(rows_, o.cols_);
    if (rows_ == 0 || o.cols_ == 0 || cols_ == 0) return m;
    std::vector<std::uint64_t> acc(o.cols_);
    const std::uint64_t p = g_prime;
    for (std::size_t i = 0; i < rows_; ++i) {
        std::fill(acc.begin(), acc.end(), 0);
        const Scalar* ri = row(i);
        for (std::size_t k = 0; k < cols_; ++k) {
            std::uint64_t v = ri[k];
            if (!v) continue;
            const Scalar* rk = o.row(k);
            for (std::size_t j = 0; j < o.cols_; ++j) acc[j] += v * rk[j];
            if ((k & 1023) == 1023)
                for (auto& x : acc) x %= p;
        }
        Scalar* out = m.row(i);
        for (std::size_t j = 0; j < o.cols_; ++j) out[j] = static_cast<Scalar>(acc[j] % p);
    }
    return m;
}

Matrix Matrix::operator+(const Matrix& o) const {
    if (rows_ != o.rows_ || cols_ != o.cols_) throw std::invalid_argument("matrix sum: dimension mismatch");
    Matrix m(rows_, cols_);
    for (std::size_t i = 0; i < a_.size(); ++i) m.a_[i] = add(a_[i], o.a_[i]);
    return m;
}

Matrix Matrix::operator-(const Matrix& o) const {
    if (rows_ != o.rows_ || cols_ != o.cols_) throw std::invalid_argument("matrix difference: dimension mismatch");
    Matrix m(rows_, cols_);
    for (std::size_t i = 0; i < a_.size(); ++i) m.a_[i] = sub(a_[i], o.a_[i]);
    return m;
}

Matrix Matrix::scaled(Scalar s) const {
    Matrix m(rows_, cols_);
    for (std::size_t i = 0; i < a_.size(); ++i) m.a_[i] = linalg::mul(a_[i], s);
    return m;
}

Matrix Matrix::transpose() const {
    Matrix m(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j) m(j, i) = (*this)(i, j);
    return m;
}

Matrix Matrix::block(std::size_t r0, std::size_t c0, std::size_t nr, std::size_t nc) const {
    if (r0 + nr > rows_ || c0 + nc > cols_) throw std::out_of_range("matrix block out of range");
    Matrix m(nr, nc);
    for (std::size_t i = 0; i < nr; ++i)
        for (std::size_t j = 0; j < nc; ++j) m(i, j) = (*this)(r0 + i, c0 + j);
    return m;
}

void Matrix::set_block(std::size_t r0, std::size_t c0, const Matrix& b) {
    if (r0 + b.rows_ > rows_ || c0 + b.cols_ > cols_) throw std::out_of_range("matrix set_block out of range");
    for (std::size_t i = 0; i < b.rows_; ++i)
        for (std::size_t j = 0; j < b.cols_; ++j) (*this)(r0 + i, c0 + j) = b(i, j);
}

Matrix Matrix::columns(const std::vector<std::size_t>& idx) const {
    Matrix m(rows_, idx.size());
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < idx.size(); ++j) m(i, j) = (*this)(i, idx[j]);
    return m;
}

Matrix Matrix::rows_subset(const std::vector<std::size_t>& idx) const {
    Matrix m(idx.size(), cols_);
    for (std::size_t i = 0; i < idx.size(); ++i)
        for (std::size_t j = 0; j < cols_; ++j) m(i, j) = (*this)(idx[i], j);
    return m;
}

Matrix Matrix::column(std::size_t j) const { return columns({j}); }

std::vector<Scalar> Matrix::column_values(std::size_t j) const {
    std::vector<Scalar> v(rows_);
    for (std::size_t i = 0; i < rows_; ++i) v[i] = (*this)(i, j);
    return v;
}

bool Matrix::is_zero() const {
    for (Scalar x : a_)
        if (x) return false;
    return true;
}

std::string Matrix::str() const {
    std::ostringstream os;
    os << '[';
    for (std::size_t i = 0; i < rows_; ++i) {
        os << (i ? ",[" : "[");
        for (std::size_t j = 0; j < cols_; ++j) os << (j ? "," : "") << (*this)(i, j);
        os << ']';
    }
    os << ']';
    return os.str();
}

Echelon rref(const Matrix& m) {
    Echelon e{m, {}};
    Matrix& a = e.form;
    const std::size_t R = a.rows(), C = a.cols();
    std::size_t r = 0;
    for (std::size_t c = 0; c < C && r < R; ++c) {
        std::size_t piv = R;
        for (std::size_t i = r; i < R; ++i)
            if (a(i, c)) {
                piv = i;
                break;
            }
        if (piv == R) continue;
        if (piv != r)
            for (std::size_t j = c; j < C; ++j) std::swap(a(piv, j), a(r, j));
        Scalar s = inv(a(r, c));
        Scalar* pr = a.row(r);
        if (s != 1)
            for (std::size_t j = c; j < C; ++j) pr[j] = mul(pr[j], s);
        for (std::size_t i = 0; i < R; ++i) {
            if (i == r) continue;
            Scalar f = a(i, c);
            if (!f) continue;
            Scalar* pi = a.row(i);
            for (std::size_t j = c; j < C; ++j)
                if (pr[j]) pi[j] = sub(pi[j], mul(f, pr[j]));
        }
        e.pivots.push_back(c);
        ++r;
    }
    return e;
}

std::size_t rank(const Matrix& m) { return rref(m).pivots.size(); }

Matrix kernel_basis(const Matrix& m) {
    Echelon e = rref(m);
    const std::size_t C = m.cols();
    std::vector<bool> is_piv(C, false);
    for (auto p : e.pivots) is_piv[p] = true;
    std::vector<std::size_t> free;
    for (std::size_t j = 0; j < C; ++j)
        if (!is_piv[j]) free.push_back(j);
    Matrix k(C, free.size());
    for (std::size_t t = 0; t < free.size(); ++t) {
        std::size_t f = free[t];
        k(f, t) = 1;
        for (std::size_t r = 0; r < e.pivots.size(); ++r) k(e.pivots[r], t) = neg(e.form(r, f));
    }
    return k;
}

Matrix image_basis(const Matrix& m) { return m.columns(rref(m).pivots); }

std::optional<Matrix> solve(const Matrix& m, const Matrix& b) {
    if (m.rows() != b.rows()) throw std::invalid_argument("solve: dimension mismatch");
    Matrix aug = Matrix::hstack(m, b);
    Echelon e = rref(aug);
    const std::size_t n = m.cols();
    Matrix x(n, b.cols());
    for (std::size_t r = 0; r < e.pivots.size(); ++r) {
        std::size_t p = e.pivots[r];
        if (p >= n) return std::nullopt;
        for (std::size_t j = 0; j < b.cols(); ++j) x(p, j) = e.form(r, n + j);
    }
    return x;
}

std::optional<Matrix> inverse(const Matrix& m) {
    if (m.rows() != m.cols()) return std::nullopt;
    auto x = solve(m, Matrix::identity(m.rows()));
    if (!x) return std::nullopt;
    if (rank(m) != m.rows()) return std::nullopt;
    return x;
}

Matrix complement_basis(const Matrix& sub, std::size_t n) {
    Matrix aug = Matrix::hstack(sub.rows() == n ? sub : Matrix(n, 0), Matrix::identity(n));
    Echelon e = rref(aug);
    std::vector<std::size_t> idx;
    for (auto p : e.pivots)
        if (p >= sub.cols()) idx.push_back(p - sub.cols());
    return Matrix::identity(n).columns(idx);
}

Matrix intersect_spaces(const Matrix& a, const Matrix& b) {
    if (a.rows() != b.rows()) throw std::invalid_argument("intersect_spaces: dimension mismatch");
    if (a.cols() == 0 || b.cols() == 0) return Matrix(a.rows(), 0);
    Matrix k = kernel_basis(Matrix::hstack(a, b.scaled(neg(1))));
    Matrix top = k.block(0, 0, a.cols(), k.cols());
    return image_basis(a * top);
}

Matrix sum_spaces(const Matrix& a, const Matrix& b) {
    if (a.rows() != b.rows()) throw std::invalid_argument("sum_spaces: dimension mismatch");
    return image_basis(Matrix::hstack(a, b));
}

}  // namespace singcat::linalg
