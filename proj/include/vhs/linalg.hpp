#pragma once

#include "vhs/scalar.hpp"

#include <initializer_list>
#include <vector>

namespace vhs {

/// Dense matrix of Scalars. Row-major; sized for desk scale (dim ≲ 50),
/// so plain Gauss elimination everywhere. Exact pivoting on rational
/// entries, threshold pivoting on floats.
class Matrix {
public:
    Matrix() : rows_(0), cols_(0) {}
    Matrix(std::size_t rows, std::size_t cols)
        : rows_(rows), cols_(cols), data_(rows * cols) {}
    Matrix(std::initializer_list<std::initializer_list<Scalar>> init);

    static Matrix identity(std::size_t n);
    static Matrix zero(std::size_t rows, std::size_t cols) { return Matrix(rows, cols); }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    bool same_shape(const Matrix& o) const { return rows_ == o.rows_ && cols_ == o.cols_; }

    Scalar& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
    const Scalar& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

    friend Matrix operator+(const Matrix& a, const Matrix& b);
    friend Matrix operator-(const Matrix& a, const Matrix& b);
    friend Matrix operator*(const Matrix& a, const Matrix& b);
    friend Matrix operator*(const Scalar& s, const Matrix& a);
    Matrix operator-() const { return Scalar(-1) * *this; }

    Matrix transpose() const;
    Matrix conj() const;
    Matrix conj_transpose() const { return conj().transpose(); }

    bool is_zero() const;
    bool all_exact() const;
    /// Max |entry| over the matrix.
    double max_abs() const;
    /// Max |a−b| entrywise.
    static double max_abs_diff(const Matrix& a, const Matrix& b);

    /// Gauss-Jordan inverse. Throws Error("matrix", "singular") if rank-deficient.
    Matrix inverse(double tol = 0.0) const;
    /// Column rank by row echelon on a copy.
    std::size_t rank(double tol = 0.0) const;
    /// Basis of the kernel {x : Ax = 0}, returned as columns.
    Matrix null_space(double tol = 0.0) const;

    /// Columns [first, first+count) as a new matrix.
    Matrix columns(std::size_t first, std::size_t count) const;
    /// Horizontal concatenation.
    static Matrix hcat(const Matrix& a, const Matrix& b);

    Matrix pow(unsigned k) const;
    /// Smallest k with A^k = 0, or 0 if A is not nilpotent up to dim.
    unsigned nilpotency_index() const;

    friend bool operator==(const Matrix& a, const Matrix& b) {
        return a.same_shape(b) && a.data_ == b.data_;
    }

private:
    std::size_t rows_, cols_;
    std::vector<Scalar> data_;
};

/// commutator [A, B] = AB − BA.
Matrix commutator(const Matrix& a, const Matrix& b);

/// Finite exponential sum for nilpotent X; exact on rational input.
/// Throws if X^dim ≠ 0.
Matrix exp_nilpotent(const Matrix& x);

/// Sylvester check: is H (Hermitian within tol) positive definite?
/// Exact leading-principal-minor signs when all entries are rational.
bool hermitian_positive_definite(const Matrix& h, double tol);

}  // namespace vhs
