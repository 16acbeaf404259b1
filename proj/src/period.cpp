#include "vhs/period.hpp"

namespace vhs {

namespace {

bool small(double residual, bool exact) { return exact ? residual == 0.0 : residual < 1e-9; }

/// p-value of a basis column in the reference adapted order: block j of size
/// h^{n−j,j} carries p = n − j.
std::vector<int> block_p_values(const HodgeData& data) {
    std::vector<int> p(data.total_dim());
    int at = 0;
    for (int j = 0; j <= data.weight(); ++j)
        for (int c = 0; c < data.hodge_number(data.weight() - j); ++c) p[at++] = data.weight() - j;
    return p;
}

}  // namespace

QCompatResult q_compat_check(const Matrix& x, const PolarizationForm& pol) {
    Matrix m = pol.gram_q();
    Matrix r = x.transpose() * m + m * x;
    double residual = r.max_abs();
    return {small(residual, x.all_exact() && m.all_exact()), residual};
}

bool GradedLieElement::pure(int k) const {
    for (const auto& [deg, comp] : components)
        if (deg != k && !comp.is_zero()) return false;
    return true;
}

GradedLieElement grading_decompose(const Matrix& x, const HodgeData& data) {
    if (x.rows() != x.cols() || x.rows() != static_cast<std::size_t>(data.total_dim()))
        throw Error("matrix", "shape does not match the Hodge data");
    std::vector<int> p = block_p_values(data);
    GradedLieElement g{x, {}};
    for (std::size_t a = 0; a < x.rows(); ++a)
        for (std::size_t b = 0; b < x.cols(); ++b) {
            if (x(a, b).is_zero()) continue;
            int k = p[b] - p[a];
            auto it = g.components.find(k);
            if (it == g.components.end())
                it = g.components.emplace(k, Matrix(x.rows(), x.cols())).first;
            it->second(a, b) = x(a, b);
        }
    return g;
}

AbelianCheck abelian_check(const std::vector<Matrix>& e) {
    double worst = 0;
    bool exact = true;
    for (const Matrix& m : e) exact = exact && m.all_exact();
    for (std::size_t i = 0; i < e.size(); ++i)
        for (std::size_t j = i + 1; j < e.size(); ++j)
            worst = std::max(worst, commutator(e[i], e[j]).max_abs());
    return {small(worst, exact), worst};
}

NilpotentOrbitPoint orbit_filtration(const std::vector<Matrix>& e,
                                     const std::vector<Scalar>& params,
                                     const PolarizationForm& pol, const HodgeData& data,
                                     double tol) {
    if (e.empty() || params.size() != e.size())
        throw Error("parameters", "need one parameter per generator");
    AbelianCheck ab = abelian_check(e);
    if (!ab.abelian) throw Error("E_matrices", "generators do not commute");
    Matrix x(e[0].rows(), e[0].cols());
    for (std::size_t i = 0; i < e.size(); ++i) x = x + params[i] * e[i];
    Matrix m = exp_nilpotent(x);
    HodgeFiltration f{m.transpose()};
    return {params, m, f, check_hodge_riemann(f, pol, data, tol)};
}

SigmaResult cy3_sigma(const VHSModel& model, const std::vector<Scalar>& t) {
    if (model.hodge.weight() != 3) throw Error("weight", "period matrix form needs weight 3");
    if (!model.no_strong_correction())
        throw Error("model",
                    "the block period matrix form only holds without strong correction");
    const std::size_t n = model.num_vars;
    if (t.size() != n) throw Error("point", "dimension mismatch");

    Matrix at(n, n);  // A(t) = Σ t_i A_i
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            for (std::size_t k = 0; k < n; ++k) at(j, k) += t[i] * model.A[i](j, k);
    std::vector<Scalar> ta(n);  // (t A(t))_k
    for (std::size_t k = 0; k < n; ++k)
        for (std::size_t j = 0; j < n; ++j) ta[k] += t[j] * at(j, k);
    Scalar tat;  // t A(t) tᵀ
    for (std::size_t k = 0; k < n; ++k) tat += ta[k] * t[k];

    std::size_t d = model.dim();
    Matrix sigma = Matrix::identity(d);
    Scalar half = rat(1, 2);
    for (std::size_t j = 0; j < n; ++j) {
        sigma(0, 1 + j) = t[j];
        sigma(0, 1 + n + j) = half * ta[j];
        sigma(1 + n + j, 2 * n + 1) = t[j];
        sigma(1 + j, 2 * n + 1) = half * ta[j];
        for (std::size_t k = 0; k < n; ++k) sigma(1 + j, 1 + n + k) = at(j, k);
    }
    sigma(0, 2 * n + 1) = rat(1, 6) * tat;

    SigmaResult r{sigma, {}, false, false, false};
    for (std::size_t i = 0; i < n; ++i) r.e.push_back(model.e_matrix(i));
    bool exact = sigma.all_exact() && model.polarization.gram_qtilde().all_exact();

    const Matrix& m = model.polarization.gram_qtilde();
    r.preserves_pairing = small((sigma.transpose() * m * sigma - m).max_abs(), exact);

    Matrix x(d, d);
    for (std::size_t i = 0; i < n; ++i) x = x + t[i] * r.e[i];
    r.equals_exponential = small(Matrix::max_abs_diff(sigma, exp_nilpotent(x)), exact);

    Matrix top(1 + n + 1, d);
    for (std::size_t a = 0; a <= n; ++a)
        for (std::size_t b = 0; b < d; ++b) top(a, b) = sigma(a, b);
    TruncatedSeries classic = classic_family(model).coeffs;
    r.transversal = true;
    double tol = exact ? 0.0 : 1e-9;
    for (std::size_t i = 0; i < n; ++i) {
        Matrix di = classic.derivative(i, TruncatedSeries::VarKind::holo).eval(t);
        for (std::size_t b = 0; b < d; ++b) top(1 + n, b) = di(0, b);
        r.transversal = r.transversal && top.rank(tol) == 1 + n;
    }
    return r;
}

}  // namespace vhs
