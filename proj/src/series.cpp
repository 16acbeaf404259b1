#include "vhs/series.hpp"

#include <algorithm>
#include <functional>
#include <numeric>

namespace vhs {

MultiIndex::MultiIndex(std::vector<int> exponents) : e_(std::move(exponents)) {
    for (int v : e_)
        if (v < 0) throw Error("multi_index", "negative exponent");
}

MultiIndex MultiIndex::unit(std::size_t num_vars, std::size_t var) {
    MultiIndex m(num_vars);
    m[var] = 1;
    return m;
}

int MultiIndex::order() const { return std::accumulate(e_.begin(), e_.end(), 0); }

MultiIndex MultiIndex::plus(std::size_t var, int delta) const {
    MultiIndex m = *this;
    m[var] += delta;
    if (m[var] < 0) throw Error("multi_index", "negative exponent after shift");
    return m;
}

MultiIndex operator+(const MultiIndex& a, const MultiIndex& b) {
    if (a.num_vars() != b.num_vars()) throw Error("num_vars", "multi-index size mismatch");
    MultiIndex m = a;
    for (std::size_t v = 0; v < b.num_vars(); ++v) m[v] += b[v];
    return m;
}

Scalar MultiIndex::factorial() const {
    Rational f = 1;
    for (int v : e_)
        for (int k = 2; k <= v; ++k) f *= k;
    return Scalar(f);
}

Scalar MultiIndex::tuple_multiplicity() const {
    Rational f = 1;
    for (int k = 2; k <= order(); ++k) f *= k;
    return Scalar(f) / factorial();
}

bool operator<(const MultiIndex& a, const MultiIndex& b) {
    if (a.order() != b.order()) return a.order() < b.order();
    return a.e_ < b.e_;  // lex within a grade
}

std::string MultiIndex::str() const {
    std::string s = "(";
    for (std::size_t v = 0; v < e_.size(); ++v)
        s += (v ? "," : "") + std::to_string(e_[v]);
    return s + ")";
}

bool TruncatedSeries::KeyLess::operator()(const Key& a, const Key& b) const {
    int oa = a.first.order() + a.second.order();
    int ob = b.first.order() + b.second.order();
    if (oa != ob) return oa < ob;
    if (!(a.first == b.first)) return a.first < b.first;
    return a.second < b.second;
}

TruncatedSeries TruncatedSeries::constant(std::size_t num_vars, int max_order,
                                          const Matrix& value) {
    TruncatedSeries s(num_vars, max_order, value.rows(), value.cols());
    s.set_coeff(MultiIndex(num_vars), MultiIndex(num_vars), value);
    return s;
}

TruncatedSeries TruncatedSeries::constant(std::size_t num_vars, int max_order,
                                          const Scalar& value) {
    Matrix m(1, 1);
    m(0, 0) = value;
    return constant(num_vars, max_order, m);
}

TruncatedSeries TruncatedSeries::variable(std::size_t num_vars, int max_order, std::size_t var,
                                          bool antiholo) {
    if (var >= num_vars) throw Error("var", "variable index out of range");
    TruncatedSeries s(num_vars, max_order);
    MultiIndex zero(num_vars), unit = MultiIndex::unit(num_vars, var);
    if (antiholo)
        s.set_coeff(zero, unit, Scalar(1));
    else
        s.set_coeff(unit, zero, Scalar(1));
    return s;
}

const Matrix& TruncatedSeries::coeff(const MultiIndex& holo, const MultiIndex& anti) const {
    static const Matrix* zero_cache = nullptr;
    auto it = coeffs_.find({holo, anti});
    if (it != coeffs_.end()) return it->second;
    // Shape-correct zero; one static per (rows, cols) would be overkill here,
    // so keep a per-call thread-local map.
    thread_local std::map<std::pair<std::size_t, std::size_t>, Matrix> zeros;
    (void)zero_cache;
    auto key = std::make_pair(coeff_rows_, coeff_cols_);
    auto z = zeros.find(key);
    if (z == zeros.end()) z = zeros.emplace(key, Matrix(coeff_rows_, coeff_cols_)).first;
    return z->second;
}

Scalar TruncatedSeries::scalar_coeff(const MultiIndex& holo, const MultiIndex& anti) const {
    if (!scalar_valued()) throw Error("series", "scalar_coeff on non-scalar series");
    return coeff(holo, anti)(0, 0);
}

void TruncatedSeries::set_coeff(const MultiIndex& holo, const MultiIndex& anti,
                                const Matrix& value) {
    if (holo.num_vars() != num_vars_ || anti.num_vars() != num_vars_)
        throw Error("num_vars", "multi-index arity mismatch");
    if (holo.order() + anti.order() > max_order_)
        throw Error("max_order", "coefficient beyond truncation order");
    if (value.rows() != coeff_rows_ || value.cols() != coeff_cols_)
        throw Error("coeff_shape", "coefficient shape mismatch");
    if (value.is_zero())
        coeffs_.erase({holo, anti});
    else
        coeffs_[{holo, anti}] = value;
}

void TruncatedSeries::set_coeff(const MultiIndex& holo, const MultiIndex& anti,
                                const Scalar& value) {
    Matrix m(1, 1);
    m(0, 0) = value;
    set_coeff(holo, anti, m);
}

void TruncatedSeries::add_coeff(const MultiIndex& holo, const MultiIndex& anti,
                                const Matrix& value) {
    set_coeff(holo, anti, coeff(holo, anti) + value);
}

void TruncatedSeries::check_binary(const TruncatedSeries& b, const char* op) const {
    if (num_vars_ != b.num_vars_)
        throw Error("num_vars", std::string("mismatch in ") + op);
}

TruncatedSeries operator+(const TruncatedSeries& a, const TruncatedSeries& b) {
    a.check_binary(b, "add");
    if (a.coeff_rows_ != b.coeff_rows_ || a.coeff_cols_ != b.coeff_cols_)
        throw Error("coeff_shape", "mismatch in add");
    int order = std::min(a.max_order_, b.max_order_);
    TruncatedSeries r(a.num_vars_, order, a.coeff_rows_, a.coeff_cols_);
    r.polynomial_ = a.polynomial_ && b.polynomial_;
    for (const TruncatedSeries* side : {&a, &b})
        for (const auto& [key, value] : side->coeffs_) {
            if (key.first.order() + key.second.order() > order) {
                if (!value.is_zero()) r.polynomial_ = false;
                continue;
            }
            r.add_coeff(key.first, key.second, value);
        }
    return r;
}

TruncatedSeries operator-(const TruncatedSeries& a, const TruncatedSeries& b) {
    return a + b.scale(Scalar(-1));
}

TruncatedSeries operator*(const TruncatedSeries& a, const TruncatedSeries& b) {
    a.check_binary(b, "mul");
    std::size_t rows, cols;
    bool a_scalar = a.scalar_valued(), b_scalar = b.scalar_valued();
    if (a_scalar) {
        rows = b.coeff_rows_;
        cols = b.coeff_cols_;
    } else if (b_scalar) {
        rows = a.coeff_rows_;
        cols = a.coeff_cols_;
    } else if (a.coeff_cols_ == b.coeff_rows_) {
        rows = a.coeff_rows_;
        cols = b.coeff_cols_;
    } else {
        throw Error("coeff_shape", "incompatible coefficient shapes in mul");
    }
    int max_order = std::min(a.max_order_, b.max_order_);
    TruncatedSeries r(a.num_vars_, max_order, rows, cols);
    r.polynomial_ = a.polynomial_ && b.polynomial_;
    for (const auto& [ka, va] : a.coeffs_)
        for (const auto& [kb, vb] : b.coeffs_) {
            int order = ka.first.order() + ka.second.order() + kb.first.order() +
                        kb.second.order();
            Matrix prod = a_scalar   ? va(0, 0) * vb
                          : b_scalar ? vb(0, 0) * va
                                     : va * vb;
            if (order > max_order) {
                if (!prod.is_zero()) r.polynomial_ = false;
                continue;
            }
            r.add_coeff(ka.first + kb.first, ka.second + kb.second, prod);
        }
    return r;
}

TruncatedSeries TruncatedSeries::scale(const Scalar& s) const {
    TruncatedSeries r(num_vars_, max_order_, coeff_rows_, coeff_cols_);
    r.polynomial_ = polynomial_;
    for (const auto& [key, value] : coeffs_) r.set_coeff(key.first, key.second, s * value);
    return r;
}

TruncatedSeries TruncatedSeries::derivative(std::size_t var, VarKind kind) const {
    if (var >= num_vars_) throw Error("var", "variable index out of range");
    TruncatedSeries r(num_vars_, max_order_ - 1, coeff_rows_, coeff_cols_);
    r.polynomial_ = polynomial_;
    for (const auto& [key, value] : coeffs_) {
        const MultiIndex& idx = (kind == VarKind::holo) ? key.first : key.second;
        if (idx[var] == 0) continue;
        Scalar factor(static_cast<long long>(idx[var]));
        MultiIndex holo = key.first, anti = key.second;
        if (kind == VarKind::holo)
            holo = holo.plus(var, -1);
        else
            anti = anti.plus(var, -1);
        r.add_coeff(holo, anti, factor * value);
    }
    return r;
}

Matrix TruncatedSeries::eval(const std::vector<Scalar>& point) const {
    if (point.size() != num_vars_) throw Error("point", "dimension mismatch");
    Matrix sum(coeff_rows_, coeff_cols_);
    for (const auto& [key, value] : coeffs_) {
        Scalar mono(1);
        for (std::size_t v = 0; v < num_vars_; ++v) {
            for (int k = 0; k < key.first[v]; ++k) mono *= point[v];
            for (int k = 0; k < key.second[v]; ++k) mono *= point[v].conj();
        }
        sum = sum + mono * value;
    }
    return sum;
}

Scalar TruncatedSeries::eval_scalar(const std::vector<Scalar>& point) const {
    if (!scalar_valued()) throw Error("series", "eval_scalar on non-scalar series");
    return eval(point)(0, 0);
}

TruncatedSeries TruncatedSeries::conjugate() const {
    TruncatedSeries r(num_vars_, max_order_, coeff_rows_, coeff_cols_);
    r.polynomial_ = polynomial_;
    for (const auto& [key, value] : coeffs_) r.set_coeff(key.second, key.first, value.conj());
    return r;
}

TruncatedSeries TruncatedSeries::map_right(const Matrix& m) const {
    TruncatedSeries r(num_vars_, max_order_, coeff_rows_, m.cols());
    r.polynomial_ = polynomial_;
    for (const auto& [key, value] : coeffs_) r.set_coeff(key.first, key.second, value * m);
    return r;
}

TruncatedSeries TruncatedSeries::transpose_coeffs() const {
    TruncatedSeries r(num_vars_, max_order_, coeff_cols_, coeff_rows_);
    r.polynomial_ = polynomial_;
    for (const auto& [key, value] : coeffs_)
        r.set_coeff(key.first, key.second, value.transpose());
    return r;
}

TruncatedSeries TruncatedSeries::log_unit() const {
    if (!scalar_valued()) throw Error("series", "log_unit needs a scalar series");
    if (!scalar_coeff(MultiIndex(num_vars_), MultiIndex(num_vars_)).is_one())
        throw Error("constant_term", "log_unit needs constant term exactly 1");
    TruncatedSeries u = *this - constant(num_vars_, max_order_, Scalar(1));
    TruncatedSeries result(num_vars_, max_order_);
    TruncatedSeries power = constant(num_vars_, max_order_, Scalar(1));
    for (int k = 1; k <= max_order_; ++k) {
        power = power * u;
        Scalar c = Scalar((k % 2) ? 1 : -1) / Scalar(static_cast<long long>(k));
        result = result + power.scale(c);
    }
    result.polynomial_ = false;  // log is not a polynomial operation
    return result;
}

TruncatedSeries TruncatedSeries::exp_zero() const {
    if (!scalar_valued()) throw Error("series", "exp_zero needs a scalar series");
    if (!scalar_coeff(MultiIndex(num_vars_), MultiIndex(num_vars_)).is_zero())
        throw Error("constant_term", "exp_zero needs zero constant term");
    TruncatedSeries result = constant(num_vars_, max_order_, Scalar(1));
    TruncatedSeries power = constant(num_vars_, max_order_, Scalar(1));
    Scalar fact(1);
    for (int k = 1; k <= max_order_; ++k) {
        power = power * *this;
        fact *= Scalar(static_cast<long long>(k));
        result = result + power.scale(Scalar(1) / fact);
    }
    result.polynomial_ = false;
    return result;
}

TruncatedSeries TruncatedSeries::inverse_matrix(double tol) const {
    if (coeff_rows_ != coeff_cols_) throw Error("series", "inverse of non-square coefficients");
    Matrix c0 = coeff(MultiIndex(num_vars_), MultiIndex(num_vars_));
    Matrix c0_inv = c0.inverse(tol);
    // S = C0 (I + T) with T of order ≥ 1; S^{-1} = (Σ (−T)^k) C0^{-1}.
    TruncatedSeries t = constant(num_vars_, max_order_, c0_inv) * *this -
                        constant(num_vars_, max_order_, Matrix::identity(coeff_rows_));
    TruncatedSeries neumann = constant(num_vars_, max_order_, Matrix::identity(coeff_rows_));
    TruncatedSeries power = neumann;
    for (int k = 1; k <= max_order_; ++k) {
        power = power * t.scale(Scalar(-1));
        neumann = neumann + power;
    }
    TruncatedSeries result = neumann * constant(num_vars_, max_order_, c0_inv);
    result.polynomial_ = false;
    return result;
}

namespace {

Scalar binomial(int n, int k) {
    Rational b = 1;
    for (int j = 1; j <= k; ++j) b = b * (n - j + 1) / j;
    return Scalar(b);
}

// All sub-indices K ≤ I, with binomial weight ∏ C(I_v, K_v) and the
// complementary monomial value ∏ c_v^{I_v − K_v}.
void enumerate_shifts(const MultiIndex& idx, const std::vector<Scalar>& center, std::size_t var,
                      MultiIndex current, Scalar weight,
                      const std::function<void(const MultiIndex&, const Scalar&)>& emit) {
    if (var == idx.num_vars()) {
        emit(current, weight);
        return;
    }
    for (int k = 0; k <= idx[var]; ++k) {
        Scalar w = weight * binomial(idx[var], k);
        for (int j = 0; j < idx[var] - k; ++j) w *= center[var];
        current[var] = k;
        enumerate_shifts(idx, center, var + 1, current, w, emit);
    }
}

}  // namespace

TruncatedSeries TruncatedSeries::recenter(const std::vector<Scalar>& center) const {
    if (!polynomial_)
        throw Error("polynomial", "recenter requires a certified exact polynomial");
    if (center.size() != num_vars_) throw Error("center", "dimension mismatch");
    std::vector<Scalar> center_conj(center.size());
    for (std::size_t v = 0; v < center.size(); ++v) center_conj[v] = center[v].conj();
    TruncatedSeries r(num_vars_, max_order_, coeff_rows_, coeff_cols_);
    for (const auto& [key, value] : coeffs_) {
        enumerate_shifts(key.first, center, 0, MultiIndex(num_vars_), Scalar(1),
                         [&](const MultiIndex& holo, const Scalar& hw) {
            enumerate_shifts(key.second, center_conj, 0, MultiIndex(num_vars_), Scalar(1),
                             [&](const MultiIndex& anti, const Scalar& aw) {
                Matrix term = (hw * aw) * value;
                if (!term.is_zero()) r.add_coeff(holo, anti, term);
            });
        });
    }
    return r;
}

TruncatedSeries TruncatedSeries::truncated(int new_order) const {
    TruncatedSeries r(num_vars_, new_order, coeff_rows_, coeff_cols_);
    r.polynomial_ = polynomial_;
    for (const auto& [key, value] : coeffs_) {
        if (key.first.order() + key.second.order() > new_order) {
            if (!value.is_zero()) r.polynomial_ = false;
            continue;
        }
        r.set_coeff(key.first, key.second, value);
    }
    return r;
}

bool TruncatedSeries::is_zero() const {
    return std::all_of(coeffs_.begin(), coeffs_.end(),
                       [](const auto& kv) { return kv.second.is_zero(); });
}

double TruncatedSeries::max_abs() const {
    double m = 0.0;
    for (const auto& [key, value] : coeffs_) m = std::max(m, value.max_abs());
    return m;
}

}  // namespace vhs
