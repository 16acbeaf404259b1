#include "vhs/linalg.hpp"

#include <algorithm>
#include <cstddef>

namespace vhs {

Matrix::Matrix(std::initializer_list<std::initializer_list<Scalar>> init) {
    rows_ = init.size();
    cols_ = rows_ ? init.begin()->size() : 0;
    data_.reserve(rows_ * cols_);
    for (const auto& row : init) {
        if (row.size() != cols_) throw Error("matrix", "ragged initializer");
        for (const auto& v : row) data_.push_back(v);
    }
}

Matrix Matrix::identity(std::size_t n) {
    Matrix m(n, n);
    for (std::size_t k = 0; k < n; ++k) m(k, k) = Scalar(1);
    return m;
}

Matrix operator+(const Matrix& a, const Matrix& b) {
    if (!a.same_shape(b)) throw Error("matrix", "shape mismatch in add");
    Matrix r(a.rows_, a.cols_);
    for (std::size_t k = 0; k < a.data_.size(); ++k) r.data_[k] = a.data_[k] + b.data_[k];
    return r;
}

Matrix operator-(const Matrix& a, const Matrix& b) {
    if (!a.same_shape(b)) throw Error("matrix", "shape mismatch in sub");
    Matrix r(a.rows_, a.cols_);
    for (std::size_t k = 0; k < a.data_.size(); ++k) r.data_[k] = a.data_[k] - b.data_[k];
    return r;
}

Matrix operator*(const Matrix& a, const Matrix& b) {
    if (a.cols_ != b.rows_) throw Error("matrix", "shape mismatch in mul");
    Matrix r(a.rows_, b.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i)
        for (std::size_t k = 0; k < a.cols_; ++k) {
            if (a(i, k).is_zero()) continue;
            for (std::size_t j = 0; j < b.cols_; ++j)
                r(i, j) += a(i, k) * b(k, j);
        }
    return r;
}

Matrix operator*(const Scalar& s, const Matrix& a) {
    Matrix r(a.rows_, a.cols_);
    for (std::size_t k = 0; k < a.data_.size(); ++k) r.data_[k] = s * a.data_[k];
    return r;
}

Matrix Matrix::transpose() const {
    Matrix r(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j) r(j, i) = (*this)(i, j);
    return r;
}

Matrix Matrix::conj() const {
    Matrix r(rows_, cols_);
    for (std::size_t k = 0; k < data_.size(); ++k) r.data_[k] = data_[k].conj();
    return r;
}

bool Matrix::is_zero() const {
    return std::all_of(data_.begin(), data_.end(), [](const Scalar& s) { return s.is_zero(); });
}

bool Matrix::all_exact() const {
    return std::all_of(data_.begin(), data_.end(), [](const Scalar& s) { return s.exact(); });
}

double Matrix::max_abs() const {
    double m = 0.0;
    for (const auto& s : data_) m = std::max(m, s.abs());
    return m;
}

double Matrix::max_abs_diff(const Matrix& a, const Matrix& b) {
    return (a - b).max_abs();
}

namespace {

// Row echelon in place. Returns pivot column list. Exact pivoting when the
// whole matrix is rational; otherwise partial pivoting with |entry| > tol.
std::vector<std::size_t> echelon(Matrix& m, double tol) {
    const bool exact = m.all_exact();
    std::vector<std::size_t> pivots;
    std::size_t row = 0;
    for (std::size_t col = 0; col < m.cols() && row < m.rows(); ++col) {
        std::size_t best = row;
        double best_abs = m(row, col).abs();
        for (std::size_t r = row + 1; r < m.rows(); ++r)
            if (m(r, col).abs() > best_abs) { best = r; best_abs = m(r, col).abs(); }
        bool nonzero = exact ? !m(best, col).is_zero() : best_abs > tol;
        if (!nonzero) continue;
        if (best != row)
            for (std::size_t c = 0; c < m.cols(); ++c) std::swap(m(row, c), m(best, c));
        Scalar inv = Scalar(1) / m(row, col);
        for (std::size_t c = col; c < m.cols(); ++c) m(row, c) *= inv;
        for (std::size_t r = 0; r < m.rows(); ++r) {
            if (r == row || m(r, col).is_zero()) continue;
            Scalar f = m(r, col);
            for (std::size_t c = col; c < m.cols(); ++c) m(r, c) -= f * m(row, c);
        }
        pivots.push_back(col);
        ++row;
    }
    return pivots;
}

}  // namespace

Matrix Matrix::inverse(double tol) const {
    if (rows_ != cols_) throw Error("matrix", "inverse of non-square matrix");
    Matrix aug = hcat(*this, identity(rows_));
    auto pivots = echelon(aug, tol);
    if (pivots.size() != rows_) throw Error("matrix", "singular");
    return aug.columns(cols_, cols_);
}

std::size_t Matrix::rank(double tol) const {
    Matrix m = *this;
    return echelon(m, tol).size();
}

Matrix Matrix::null_space(double tol) const {
    Matrix m = *this;
    auto pivots = echelon(m, tol);
    std::vector<bool> is_pivot(cols_, false);
    for (auto p : pivots) is_pivot[p] = true;
    std::size_t nullity = cols_ - pivots.size();
    Matrix basis(cols_, nullity);
    std::size_t out = 0;
    for (std::size_t free_col = 0; free_col < cols_; ++free_col) {
        if (is_pivot[free_col]) continue;
        basis(free_col, out) = Scalar(1);
        for (std::size_t pr = 0; pr < pivots.size(); ++pr)
            basis(pivots[pr], out) = -m(pr, free_col);
        ++out;
    }
    return basis;
}

Matrix Matrix::columns(std::size_t first, std::size_t count) const {
    Matrix r(rows_, count);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < count; ++j) r(i, j) = (*this)(i, first + j);
    return r;
}

Matrix Matrix::hcat(const Matrix& a, const Matrix& b) {
    if (a.rows_ != b.rows_) throw Error("matrix", "hcat row mismatch");
    Matrix r(a.rows_, a.cols_ + b.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i) {
        for (std::size_t j = 0; j < a.cols_; ++j) r(i, j) = a(i, j);
        for (std::size_t j = 0; j < b.cols_; ++j) r(i, a.cols_ + j) = b(i, j);
    }
    return r;
}

Matrix Matrix::pow(unsigned k) const {
    Matrix r = identity(rows_);
    for (unsigned e = 0; e < k; ++e) r = r * *this;
    return r;
}

unsigned Matrix::nilpotency_index() const {
    if (rows_ != cols_) throw Error("matrix", "nilpotency of non-square matrix");
    Matrix p = *this;
    for (unsigned k = 1; k <= rows_; ++k) {
        if (p.is_zero()) return k;
        p = p * *this;
    }
    return 0;
}

Matrix commutator(const Matrix& a, const Matrix& b) { return a * b - b * a; }

Matrix exp_nilpotent(const Matrix& x) {
    if (x.nilpotency_index() == 0) throw Error("matrix", "exp_nilpotent on non-nilpotent input");
    Matrix sum = Matrix::identity(x.rows());
    Matrix term = Matrix::identity(x.rows());
    for (unsigned k = 1; k <= x.rows(); ++k) {
        term = (Scalar(1) / Scalar(static_cast<long long>(k))) * (term * x);
        if (term.is_zero()) break;
        sum = sum + term;
    }
    return sum;
}

bool hermitian_positive_definite(const Matrix& h, double tol) {
    if (h.rows() != h.cols()) throw Error("matrix", "pd check on non-square matrix");
    if (Matrix::max_abs_diff(h, h.conj_transpose()) > tol) return false;
    const std::size_t n = h.rows();
    const bool exact = h.all_exact();
    // Sylvester: all leading principal minors positive. The minors of a
    // Hermitian matrix are real; computed by elimination on a copy.
    Matrix m = h;
    Scalar det(1);
    for (std::size_t k = 0; k < n; ++k) {
        // Leading minor k+1 = det so far times the next pivot after
        // eliminating below-diagonal entries in column k.
        if (exact ? m(k, k).is_zero() : m(k, k).abs() <= tol) return false;
        det *= m(k, k);
        if (exact) {
            if (det.im_rat() != 0 || det.re_rat() <= 0) return false;
        } else {
            auto d = det.to_complex();
            if (std::abs(d.imag()) > tol * std::max(1.0, std::abs(d.real())) || d.real() <= tol)
                return false;
        }
        for (std::size_t r = k + 1; r < n; ++r) {
            if (m(r, k).is_zero()) continue;
            Scalar f = m(r, k) / m(k, k);
            for (std::size_t c = k; c < n; ++c) m(r, c) -= f * m(k, c);
        }
    }
    return true;
}

}  // namespace vhs
