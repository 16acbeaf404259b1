#include "vhs/family.hpp"

#include <string>

namespace vhs {

namespace {

Matrix conj_row(const PolarizationForm& pol, const Matrix& row) {
    return pol.conjugate_classes(row.transpose()).transpose();
}

Matrix unit_row(std::size_t dim, std::size_t slot) {
    Matrix r(1, dim);
    r(0, slot) = Scalar(1);
    return r;
}

void require_pairing(const Scalar& got, const Scalar& want, bool exact, const char* what) {
    Scalar d = got - want;
    bool bad = exact ? !d.is_zero() : d.abs() > 1e-9;
    if (bad) throw Error("normalization", std::string(what) + " (got " + got.str() + ")");
}

/// η̄-slot rows of the symmetrized cubic induced by the degree-2 extras:
/// w[(i·N+j)·N+k] = A_i γ_{jk} + A_j γ_{ik} + A_k γ_{ij}.
std::vector<Matrix> induced_cubic_rows(const VHSModel& model) {
    const int n = model.num_vars;
    std::vector<Matrix> gamma(static_cast<std::size_t>(n) * n, Matrix(1, n));
    bool any = false;
    for (const auto& [idx, row] : model.extra_coeffs) {
        if (idx.order() != 2) continue;
        int j = -1, k = -1;
        for (int v = 0; v < n; ++v) {
            if (idx[v] == 2) j = k = v;
            else if (idx[v] == 1) (j < 0 ? j : k) = v;
        }
        Scalar m = (j == k) ? Scalar(2) : Scalar(1);
        Matrix g(1, n);
        for (int p = 0; p < n; ++p) g(0, p) = m * row(0, 1 + n + p);
        gamma[j * n + k] = g;
        if (j != k) gamma[k * n + j] = g;
        any = any || !g.is_zero();
    }
    std::vector<Matrix> w(static_cast<std::size_t>(n) * n * n, Matrix(1, n));
    if (!any || model.A.empty()) return w;
    auto apply = [&](int i, const Matrix& g) {
        Matrix r(1, model.num_vars);
        for (int m = 0; m < n; ++m) {
            Scalar s(0);
            for (int p = 0; p < n; ++p) s += model.A[i](m, p) * g(0, p);
            r(0, m) = s;
        }
        return r;
    };
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            for (int k = 0; k < n; ++k)
                w[(i * n + j) * n + k] =
                    apply(i, gamma[j * n + k]) + apply(j, gamma[i * n + k]) +
                    apply(k, gamma[i * n + j]);
    return w;
}

}  // namespace

Matrix VHSModel::e_matrix(int i) const {
    const int n = num_vars;
    Matrix e(dim(), dim());
    if (hodge.weight() == 3) {
        e(0, 1 + i) = Scalar(1);
        for (int j = 0; j < n; ++j)
            for (int k = 0; k < n; ++k) e(1 + j, 1 + n + k) = A[i](j, k);
        e(1 + n + i, 2 * n + 1) = Scalar(1);
    } else if (hodge.weight() == 2) {
        e(0, 1 + i) = Scalar(1);
        e(1 + i, n + 1) = Scalar(1);
    } else {
        throw Error("weight", "only weights 2 and 3 carry a family structure");
    }
    return e;
}

Scalar VHSModel::qtilde_rows(const Matrix& u, const Matrix& v) const {
    return (u * polarization.gram_qtilde() * v.transpose())(0, 0);
}

void VHSModel::validate() const {
    const int n = num_vars;
    if (n < 1) throw Error("num_vars", "need at least one deformation direction");
    if (hodge.weight() == 3) {
        if (static_cast<int>(A.size()) != n) throw Error("A_tensors", "need one matrix per direction");
        for (const Matrix& a : A)
            if (a.rows() != static_cast<std::size_t>(n) || a.cols() != static_cast<std::size_t>(n))
                throw Error("A_tensors", "each matrix must be N x N");
    }
    const std::size_t d = dim();
    bool exact = polarization.gram_qtilde().all_exact();
    for (const auto& [idx, row] : extra_coeffs)
        exact = exact && row.all_exact();

    Matrix a0 = unit_row(d, 0);
    require_pairing(qtilde_rows(a0, conj_row(polarization, a0)), Scalar(1), exact,
                    "pairing of the base class with its conjugate must be 1");
    for (int i = 0; i < n; ++i) {
        Matrix ai = unit_row(d, 1 + i);
        require_pairing(qtilde_rows(a0, conj_row(polarization, ai)), Scalar(0), exact,
                        "base class must pair to 0 with conjugate degree-1 classes");
        for (int j = 0; j < n; ++j) {
            Matrix aj = unit_row(d, 1 + j);
            require_pairing(qtilde_rows(ai, conj_row(polarization, aj)),
                            i == j ? Scalar(-1) : Scalar(0), exact,
                            "degree-1 classes must pair to minus identity");
        }
    }
    for (const auto& [idx, row] : extra_coeffs) {
        if (idx.order() < 2) throw Error("extra_coeffs", "indices must have total degree >= 2");
        if (row.rows() != 1 || row.cols() != d)
            throw Error("extra_coeffs", "coefficient rows must have the basis dimension");
        for (std::size_t s = 0; s <= static_cast<std::size_t>(n); ++s)
            if (!row(0, s).is_zero())
                throw Error("extra_coeffs",
                            "coefficient " + idx.str() + " has a nonzero entry in slot " +
                                std::to_string(s) +
                                "; higher-order terms must lie outside the first two Hodge blocks");
        Matrix cr = conj_row(polarization, row);
        require_pairing(qtilde_rows(a0, cr), Scalar(0), exact,
                        "extra coefficients must pair to 0 with the base class");
        for (int i = 0; i < n; ++i)
            require_pairing(qtilde_rows(unit_row(d, 1 + i), cr), Scalar(0), exact,
                            "extra coefficients must pair to 0 with degree-1 classes");
    }
}

VHSModel build_cy3_model(const std::vector<Matrix>& c, int order) {
    const int n = static_cast<int>(c.size());
    if (n < 1) throw Error("yukawa_tensor", "need at least one slice");
    for (int i = 0; i < n; ++i)
        if (c[i].rows() != static_cast<std::size_t>(n) || c[i].cols() != static_cast<std::size_t>(n))
            throw Error("yukawa_tensor", "each slice must be N x N");
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            for (int k = 0; k < n; ++k) {
                if (c[i](j, k) != c[j](i, k) || c[i](j, k) != c[i](k, j))
                    throw Error("yukawa_tensor",
                                "not symmetric at indices (" + std::to_string(i + 1) + "," +
                                    std::to_string(j + 1) + "," + std::to_string(k + 1) + ")");
            }
    VHSModel m{HodgeData::cy3(n), PolarizationForm::cy3_reference(n), n, c, {}, order};
    m.validate();
    return m;
}

VHSModel build_hk_vhs_model(int num_vars, int order) {
    VHSModel m{HodgeData::hyperkahler(num_vars), PolarizationForm::hyperkahler_reference(num_vars),
               num_vars, {}, {}, order};
    m.validate();
    return m;
}

FamilyExpansion classic_family(const VHSModel& model) {
    const int n = model.num_vars;
    const int max_order = model.order + 3;
    TruncatedSeries t_e(n, max_order, static_cast<std::size_t>(model.dim()), model.dim());
    for (int i = 0; i < n; ++i) {
        TruncatedSeries term(n, max_order, static_cast<std::size_t>(model.dim()), model.dim());
        term.set_coeff(MultiIndex::unit(n, i), MultiIndex(static_cast<std::size_t>(n)),
                       model.e_matrix(i));
        t_e = t_e + term;
    }
    TruncatedSeries expo = TruncatedSeries::constant(n, max_order, Matrix::identity(model.dim()));
    TruncatedSeries power = expo;
    Scalar fact(1);
    for (int k = 1; k <= model.hodge.weight(); ++k) {
        power = power * t_e;
        fact *= Scalar(k);
        expo = expo + power.scale(Scalar(1) / fact);
    }
    TruncatedSeries row =
        TruncatedSeries::constant(n, max_order, unit_row(model.dim(), 0)) * expo;
    return {row, FamilyExpansion::Kind::classic};
}

FamilyExpansion canonical_family(const VHSModel& model) {
    model.validate();
    FamilyExpansion fam = classic_family(model);
    MultiIndex no_anti(static_cast<std::size_t>(model.num_vars));
    for (const auto& [idx, row] : model.extra_coeffs) {
        if (idx.order() > model.order + 3) continue;
        fam.coeffs.add_coeff(idx, no_anti, row);
    }
    const int n = model.num_vars;
    std::vector<Matrix> w = induced_cubic_rows(model);
    Scalar sixth = rat(1, 6);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            for (int k = 0; k < n; ++k) {
                const Matrix& wr = w[(i * n + j) * n + k];
                if (wr.is_zero()) continue;
                Matrix full(1, model.dim());
                for (int p = 0; p < n; ++p) full(0, 1 + n + p) = sixth * wr(0, p);
                MultiIndex idx =
                    MultiIndex::unit(n, i) + MultiIndex::unit(n, j) + MultiIndex::unit(n, k);
                fam.coeffs.add_coeff(idx, no_anti, full);
            }
    fam.kind = FamilyExpansion::Kind::canonical;
    return fam;
}

QuantumCorrection quantum_correction(const VHSModel& model) {
    QuantumCorrection qc{canonical_family(model).coeffs - classic_family(model).coeffs,
                         induced_cubic_rows(model), true, true};
    qc.strong_is_zero = qc.strong.is_zero();
    for (const Matrix& w : qc.weak) qc.weak_is_zero = qc.weak_is_zero && w.is_zero();
    return qc;
}

YukawaCoupling yukawa(const VHSModel& model) {
    if (model.hodge.weight() != 3) throw Error("weight", "Yukawa couplings need weight 3");
    const int n = model.num_vars;
    TruncatedSeries can = canonical_family(model).coeffs;
    TruncatedSeries strong = quantum_correction(model).strong;
    TruncatedSeries paired = can.map_right(model.polarization.gram_qtilde());
    YukawaCoupling y;
    y.full.assign(static_cast<std::size_t>(n) * n * n, TruncatedSeries(n, 0));
    y.correction = y.full;
    for (int i = 0; i < n; ++i)
        for (int j = i; j < n; ++j)
            for (int k = j; k < n; ++k) {
                auto third = [&](const TruncatedSeries& s) {
                    return s.derivative(i, TruncatedSeries::VarKind::holo)
                        .derivative(j, TruncatedSeries::VarKind::holo)
                        .derivative(k, TruncatedSeries::VarKind::holo)
                        .transpose_coeffs();
                };
                TruncatedSeries full = paired.truncated(model.order) * third(can);
                TruncatedSeries corr = paired.truncated(model.order) * third(strong);
                int idx[3] = {i, j, k};
                int perms[6][3] = {{0, 1, 2}, {0, 2, 1}, {1, 0, 2}, {1, 2, 0}, {2, 0, 1}, {2, 1, 0}};
                for (auto& p : perms) {
                    std::size_t at =
                        (static_cast<std::size_t>(idx[p[0]]) * n + idx[p[1]]) * n + idx[p[2]];
                    y.full[at] = full;
                    y.correction[at] = corr;
                }
            }
    return y;
}

}  // namespace vhs
