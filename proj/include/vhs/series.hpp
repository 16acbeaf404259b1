#pragma once

#include "vhs/linalg.hpp"
#include "vhs/scalar.hpp"

#include <map>
#include <vector>

namespace vhs {

/// Exponent vector of a monomial in N variables. Graded-lex ordered.
class MultiIndex {
public:
    MultiIndex() = default;
    explicit MultiIndex(std::size_t num_vars) : e_(num_vars, 0) {}
    explicit MultiIndex(std::vector<int> exponents);

    static MultiIndex unit(std::size_t num_vars, std::size_t var);

    std::size_t num_vars() const { return e_.size(); }
    int order() const;
    int operator[](std::size_t v) const { return e_[v]; }
    int& operator[](std::size_t v) { return e_[v]; }
    const std::vector<int>& exponents() const { return e_; }

    MultiIndex plus(std::size_t var, int delta = 1) const;
    friend MultiIndex operator+(const MultiIndex& a, const MultiIndex& b);

    /// I! = ∏ e_v!
    Scalar factorial() const;
    /// Number of distinct orderings of the index as a tuple: |I|! / I!
    Scalar tuple_multiplicity() const;

    friend bool operator==(const MultiIndex& a, const MultiIndex& b) { return a.e_ == b.e_; }
    friend bool operator<(const MultiIndex& a, const MultiIndex& b);

    std::string str() const;

private:
    std::vector<int> e_;
};

/// Multivariate power series in t_1..t_N and their conjugates, truncated at
/// a fixed combined total order. Coefficients are fixed-shape Scalar
/// matrices (1×1 for scalar series, 1×d rows for class-coordinate series).
/// Absent key = zero. Immutable by convention once built.
class TruncatedSeries {
public:
    using Key = std::pair<MultiIndex, MultiIndex>;  // (holomorphic, antiholomorphic)

    struct KeyLess {
        bool operator()(const Key& a, const Key& b) const;
    };
    using CoeffMap = std::map<Key, Matrix, KeyLess>;

    TruncatedSeries(std::size_t num_vars, int max_order,
                    std::size_t coeff_rows = 1, std::size_t coeff_cols = 1)
        : num_vars_(num_vars), max_order_(max_order),
          coeff_rows_(coeff_rows), coeff_cols_(coeff_cols) {}

    static TruncatedSeries constant(std::size_t num_vars, int max_order, const Matrix& value);
    static TruncatedSeries constant(std::size_t num_vars, int max_order, const Scalar& value);
    /// The coordinate series t_var (scalar-valued).
    static TruncatedSeries variable(std::size_t num_vars, int max_order, std::size_t var,
                                    bool antiholo = false);

    std::size_t num_vars() const { return num_vars_; }
    int max_order() const { return max_order_; }
    std::size_t coeff_rows() const { return coeff_rows_; }
    std::size_t coeff_cols() const { return coeff_cols_; }
    bool scalar_valued() const { return coeff_rows_ == 1 && coeff_cols_ == 1; }
    const CoeffMap& coeffs() const { return coeffs_; }

    /// Exact-polynomial certificate: set at construction, cleared whenever a
    /// nonzero term is lost to truncation.
    bool polynomial() const { return polynomial_; }
    void clear_polynomial_flag() { polynomial_ = false; }

    const Matrix& coeff(const MultiIndex& holo, const MultiIndex& anti) const;
    Scalar scalar_coeff(const MultiIndex& holo, const MultiIndex& anti) const;
    void set_coeff(const MultiIndex& holo, const MultiIndex& anti, const Matrix& value);
    void set_coeff(const MultiIndex& holo, const MultiIndex& anti, const Scalar& value);
    void add_coeff(const MultiIndex& holo, const MultiIndex& anti, const Matrix& value);

    friend TruncatedSeries operator+(const TruncatedSeries& a, const TruncatedSeries& b);
    friend TruncatedSeries operator-(const TruncatedSeries& a, const TruncatedSeries& b);
    /// Cauchy product truncated at max_order. Shapes must contract:
    /// scalar×any, any×scalar, or (r×k)·(k×c).
    friend TruncatedSeries operator*(const TruncatedSeries& a, const TruncatedSeries& b);
    TruncatedSeries scale(const Scalar& s) const;

    enum class VarKind { holo, antiholo };
    /// Formal partial derivative; result max_order = max_order − 1.
    TruncatedSeries derivative(std::size_t var, VarKind kind) const;

    /// Substitute t := point, t̄ := conj(point). No radius check beyond the
    /// caller's; exact on rational input.
    Matrix eval(const std::vector<Scalar>& point) const;
    Scalar eval_scalar(const std::vector<Scalar>& point) const;

    /// Entrywise conjugate with holo/antiholo roles swapped: the series of
    /// conj(s(t)) on the diagonal t̄ = conj t.
    TruncatedSeries conjugate() const;

    /// Apply a linear map to every coefficient: coeff ↦ coeff · m.
    TruncatedSeries map_right(const Matrix& m) const;
    TruncatedSeries transpose_coeffs() const;

    /// log of a scalar series with constant term exactly 1.
    TruncatedSeries log_unit() const;
    /// exp of a scalar series with zero constant term.
    TruncatedSeries exp_zero() const;

    /// Inverse of a square-matrix-valued series whose constant term is
    /// invertible (Neumann series).
    TruncatedSeries inverse_matrix(double tol = 0.0) const;

    /// Exact shift t ↦ t + center of a certified polynomial.
    TruncatedSeries recenter(const std::vector<Scalar>& center) const;

    /// Drop keys with combined order > new_order (flag preserved only when
    /// nothing nonzero is dropped).
    TruncatedSeries truncated(int new_order) const;

    bool is_zero() const;
    double max_abs() const;

    const CoeffMap& terms() const { return coeffs_; }

private:
    void check_binary(const TruncatedSeries& b, const char* op) const;
    void prune_zero();

    std::size_t num_vars_;
    int max_order_;
    std::size_t coeff_rows_, coeff_cols_;
    bool polynomial_ = true;
    CoeffMap coeffs_;
};

}  // namespace vhs
