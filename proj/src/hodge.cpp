#include "vhs/hodge.hpp"

#include <string>

namespace vhs {

HodgeData::HodgeData(int weight, std::vector<int> hodge_numbers)
    : weight_(weight), h_(std::move(hodge_numbers)) {
    if (weight_ < 1 || static_cast<int>(h_.size()) != weight_ + 1)
        throw Error("hodge_numbers", "need weight+1 entries");
    for (int v : h_)
        if (v < 0) throw Error("hodge_numbers", "negative Hodge number");
}

HodgeData HodgeData::cy3(int n) {
    if (n < 1) throw Error("num_deformations", "need at least one deformation direction");
    return HodgeData(3, {1, n, n, 1});
}

HodgeData HodgeData::hyperkahler(int n) {
    if (n < 1) throw Error("num_deformations", "need at least one deformation direction");
    return HodgeData(2, {1, n, 1});
}

int HodgeData::filtration_dim(int k) const {
    if (k < 0 || k > weight_ + 1) throw Error("filtration_level", "out of range");
    int f = 0;
    for (int j = 0; j <= weight_ - k; ++j) f += h_[j];
    return f;
}

PolarizationForm::PolarizationForm(int weight, Matrix gram_qtilde, Matrix real_structure_swap)
    : weight_(weight), gram_qtilde_(std::move(gram_qtilde)), swap_(std::move(real_structure_swap)) {
    if (gram_qtilde_.rows() != gram_qtilde_.cols())
        throw Error("gram_Qtilde", "must be square");
    if (!swap_.same_shape(gram_qtilde_)) throw Error("real_structure_swap", "shape mismatch");
    // (−1)^n symmetry of Q carries over to Q̃ unchanged.
    Matrix sym = (weight_ % 2) ? gram_qtilde_ + gram_qtilde_.transpose()
                               : gram_qtilde_ - gram_qtilde_.transpose();
    if (!sym.is_zero()) throw Error("gram_Qtilde", "wrong symmetry for the weight");
    gram_qtilde_.inverse(1e-12);  // nondegeneracy; throws if singular
}

PolarizationForm PolarizationForm::cy3_reference(int n) {
    std::size_t dim = 2 * static_cast<std::size_t>(n) + 2;
    Matrix g(dim, dim), s(dim, dim);
    g(0, dim - 1) = Scalar(1);
    g(dim - 1, 0) = Scalar(-1);
    s(0, dim - 1) = s(dim - 1, 0) = Scalar(1);
    for (int i = 1; i <= n; ++i) {
        g(i, n + i) = Scalar(-1);
        g(n + i, i) = Scalar(1);
        s(i, n + i) = s(n + i, i) = Scalar(1);
    }
    return PolarizationForm(3, g, s);
}

PolarizationForm PolarizationForm::hyperkahler_reference(int n) {
    std::size_t dim = static_cast<std::size_t>(n) + 2;
    Matrix g(dim, dim), s(dim, dim);
    g(0, dim - 1) = g(dim - 1, 0) = Scalar(1);
    s(0, dim - 1) = s(dim - 1, 0) = Scalar(1);
    for (int i = 1; i <= n; ++i) {
        g(i, i) = Scalar(-1);
        s(i, i) = Scalar(1);
    }
    return PolarizationForm(2, g, s);
}

Matrix PolarizationForm::conjugate_classes(const Matrix& coords) const {
    return swap_ * coords.conj();
}

Scalar PolarizationForm::qtilde(const Matrix& u, const Matrix& v) const {
    Matrix r = u.transpose() * gram_qtilde_ * v;
    if (r.rows() != 1 || r.cols() != 1) throw Error("qtilde", "arguments must be columns");
    return r(0, 0);
}

HodgeFiltration HodgeFiltration::reference(const HodgeData& data) {
    return {Matrix::identity(data.total_dim())};
}

const char* to_string(HodgeRiemannVerdict v) {
    switch (v) {
        case HodgeRiemannVerdict::in_D: return "in_D";
        case HodgeRiemannVerdict::in_Dcheck_only: return "in_Dcheck_only";
        default: return "outside";
    }
}

Matrix weil_apply(const Matrix& v, int p, int q, int weight) {
    if (p + q != weight) throw Error("component", "p+q must equal the weight");
    return i_pow(2 * p - weight) * v;
}

namespace {

// Basis of F^p ∩ conj(F^{n−p}) as columns; empty optional on rank trouble.
Matrix intersect_spans(const Matrix& a, const Matrix& b, double tol) {
    Matrix stacked = Matrix::hcat(a, Scalar(-1) * b);
    Matrix ker = stacked.null_space(tol);
    Matrix top(a.cols(), ker.cols());
    for (std::size_t i = 0; i < a.cols(); ++i)
        for (std::size_t j = 0; j < ker.cols(); ++j) top(i, j) = ker(i, j);
    return a * top;
}

}  // namespace

std::vector<Matrix> hodge_components(const HodgeFiltration& f, const PolarizationForm& pol,
                                     const HodgeData& data, double tol) {
    const int n = data.weight();
    if (f.basis_matrix.rank(tol) != static_cast<std::size_t>(data.total_dim()))
        throw Error("basis_matrix", "singular");
    std::vector<Matrix> result;
    Matrix conj_basis = pol.conjugate_classes(f.basis_matrix);
    for (int p = n; p >= 0; --p) {
        Matrix fp = f.basis_matrix.columns(0, data.filtration_dim(p));
        Matrix fq_conj = conj_basis.columns(0, data.filtration_dim(n - p));
        Matrix h = intersect_spans(fp, fq_conj, tol);
        if (h.cols() != static_cast<std::size_t>(data.hodge_number(p)))
            throw Error("hodge_components",
                        "H^{" + std::to_string(p) + "," + std::to_string(n - p) +
                            "} has dimension " + std::to_string(h.cols()) + ", expected " +
                            std::to_string(data.hodge_number(p)));
        result.push_back(h);
    }
    return result;
}

HodgeRiemannVerdict check_hodge_riemann(const HodgeFiltration& f, const PolarizationForm& pol,
                                        const HodgeData& data, double tol) {
    const int n = data.weight();
    if (f.basis_matrix.rank(tol) != static_cast<std::size_t>(data.total_dim()))
        throw Error("basis_matrix", "singular");
    const bool exact = f.basis_matrix.all_exact() && pol.gram_qtilde().all_exact();

    // First relation: Q(F^k, F^{n−k+1}) = 0 (Q̃ differs by a scalar only).
    for (int k = 1; k <= n; ++k) {
        Matrix fk = f.basis_matrix.columns(0, data.filtration_dim(k));
        Matrix fm = f.basis_matrix.columns(0, data.filtration_dim(n - k + 1));
        Matrix pairing = fk.transpose() * pol.gram_qtilde() * fm;
        bool ok = exact ? pairing.is_zero() : pairing.max_abs() <= tol;
        if (!ok) return HodgeRiemannVerdict::outside;
    }

    // Second relation via positivity on each H^{p,q}.
    std::vector<Matrix> components;
    try {
        components = hodge_components(f, pol, data, tol);
    } catch (const Error&) {
        return HodgeRiemannVerdict::in_Dcheck_only;
    }
    Matrix gram_q = pol.gram_q();
    for (int p = n; p >= 0; --p) {
        const Matrix& basis = components[n - p];
        if (basis.cols() == 0) continue;
        Matrix g = i_pow(2 * p - n) *
                   (basis.transpose() * gram_q * pol.conjugate_classes(basis));
        // xᵀ G x̄ > 0 as a sesquilinear form means Gᵀ is Hermitian PD.
        if (!hermitian_positive_definite(g.transpose(), exact ? 0.0 : tol))
            return HodgeRiemannVerdict::in_Dcheck_only;
    }
    return HodgeRiemannVerdict::in_D;
}

}  // namespace vhs
