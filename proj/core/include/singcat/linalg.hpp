#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace singcat::linalg {

using Scalar = std::uint32_t;

// The ground field is F_p for one prime p per session. Changing it
// invalidates every object built under the old prime.
void set_prime(Scalar p);
Scalar prime();

Scalar add(Scalar a, Scalar b);
Scalar sub(Scalar a, Scalar b);
Scalar mul(Scalar a, Scalar b);
Scalar neg(Scalar a);
Scalar inv(Scalar a);
Scalar reduce(long long v);

class Matrix {
public:
    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols);

    static Matrix identity(std::size_t n);
    static Matrix zero(std::size_t rows, std::size_t cols) { return Matrix(rows, cols); }
    static Matrix from_rows(const std::vector<std::vector<long long>>& rows);
    static Matrix column_vector(const std::vector<Scalar>& v);
    static Matrix hstack(const Matrix& a, const Matrix& b);
    static Matrix vstack(const Matrix& a, const Matrix& b);
    static Matrix block_diag(const Matrix& a, const Matrix& b);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    bool empty() const { return rows_ == 0 || cols_ == 0; }

    Scalar& operator()(std::size_t i, std::size_t j) { return a_[i * cols_ + j]; }
    Scalar operator()(std::size_t i, std::size_t j) const { return a_[i * cols_ + j]; }
    const Scalar* row(std::size_t i) const { return a_.data() + i * cols_; }
    Scalar* row(std::size_t i) { return a_.data() + i * cols_; }

    bool operator==(const Matrix& o) const;
    bool operator!=(const Matrix& o) const { return !(*this == o); }

    Matrix operator*(const Matrix& o) const;
    Matrix operator+(const Matrix& o) const;
    Matrix operator-(const Matrix& o) const;
    Matrix scaled(Scalar s) const;
    Matrix transpose() const;

    Matrix block(std::size_t r0, std::size_t c0, std::size_t nr, std::size_t nc) const;
    void set_block(std::size_t r0, std::size_t c0, const Matrix& b);
    Matrix columns(const std::vector<std::size_t>& idx) const;
    Matrix rows_subset(const std::vector<std::size_t>& idx) const;
    Matrix column(std::size_t j) const;
    std::vector<Scalar> column_values(std::size_t j) const;

    bool is_zero() const;
    std::string str() const;
    const std::vector<Scalar>& data() const { return a_; }

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<Scalar> a_;
};

struct Echelon {
    Matrix form;
    std::vector<std::size_t> pivots;
};

Echelon rref(const Matrix& m);
std::size_t rank(const Matrix& m);

// Columns span {v : m v = 0}.
Matrix kernel_basis(const Matrix& m);

// Pivot columns of m, a basis of its column space.
Matrix image_basis(const Matrix& m);

// x with m x = b, or nothing when b is outside the column space of m.
std::optional<Matrix> solve(const Matrix& m, const Matrix& b);

std::optional<Matrix> inverse(const Matrix& m);

// Standard basis vectors of F^n completing the column space of sub.
Matrix complement_basis(const Matrix& sub, std::size_t n);

// Basis of the intersection of two column spaces in F^n.
Matrix intersect_spaces(const Matrix& a, const Matrix& b);

Matrix sum_spaces(const Matrix& a, const Matrix& b);

}  // namespace singcat::linalg
