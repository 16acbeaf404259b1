#include "vhs/hyperkahler.hpp"

#include <cmath>
#include <functional>

namespace vhs {

namespace {

void enumerate_tuples(int num_vars, int degree, int from, MultiIndex acc,
                      const std::function<void(const MultiIndex&)>& emit) {
    if (degree == 0) {
        emit(acc);
        return;
    }
    for (int v = from; v < num_vars; ++v) enumerate_tuples(num_vars, degree - 1, v, acc.plus(v), emit);
}

}  // namespace

HKModel build_hk_model(int num_vars, int half_dim, int order) {
    if (num_vars < 1) throw Error("num_vars", "need at least one deformation direction");
    if (half_dim < 2) throw Error("half_dim", "the manifold dimension 2n needs n >= 2");
    return {num_vars, half_dim, build_hk_vhs_model(num_vars, order)};
}

FamilyExpansion hk20_family(const HKModel& model) {
    FamilyExpansion fam = classic_family(model.vhs);
    fam.kind = FamilyExpansion::Kind::canonical;
    return fam;
}

WedgeExpansionTable hk2n0_coefficients(const HKModel& model) {
    WedgeExpansionTable table;
    for (int k = 0; k <= 2 * model.half_dim; ++k)
        enumerate_tuples(model.num_vars, k, 0, MultiIndex(model.num_vars),
                         [&](const MultiIndex& idx) {
                             table[idx] = Scalar(1) / idx.factorial();
                         });
    return table;
}

HKMembership hc_membership(const HKModel& model, const std::vector<Scalar>& tau, double tol) {
    HKEMatrices em = hk_E_matrices(model);
    NilpotentOrbitPoint pt = orbit_filtration(em.e, tau, model.vhs.polarization,
                                              model.vhs.hodge, tol);
    Scalar norm2(0), sum_sq(0);
    for (const Scalar& s : tau) {
        norm2 += s * s.conj();
        sum_sq += s * s;
    }
    Scalar abs_sq = sum_sq * sum_sq.conj();
    HKMembership r;
    r.verdict = pt.verdict;
    r.positivity_squared = Scalar(1) - norm2 + rat(1, 4) * abs_sq;
    r.positivity_unsquared = Scalar(1) - norm2 + rat(1, 4) * Scalar(sum_sq.abs());
    return r;
}

HKEMatrices hk_E_matrices(const HKModel& model) {
    const int n = model.num_vars;
    HKEMatrices r;
    for (int i = 0; i < n; ++i) r.e.push_back(model.vhs.e_matrix(i));

    Matrix corner(n + 2, n + 2);
    corner(0, n + 1) = Scalar(1);
    r.products_diagonal = true;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            Matrix want = (i == j) ? corner : Matrix(n + 2, n + 2);
            r.products_diagonal = r.products_diagonal && r.e[i] * r.e[j] == want;
        }

    r.exponential_matches = true;
    for (int trial = 0; trial < 3 && r.exponential_matches; ++trial) {
        Matrix x(n + 2, n + 2);
        Scalar half_sum(0);
        for (int i = 0; i < n; ++i) {
            Scalar tau = rat(trial + 1, 3 + i);
            x = x + tau * r.e[i];
            half_sum += rat(1, 2) * tau * tau;
        }
        Matrix ex = exp_nilpotent(x);
        r.exponential_matches = ex(0, n + 1) == half_sum;
        for (int i = 0; i < n && r.exponential_matches; ++i)
            r.exponential_matches = ex(0, 1 + i) == x(0, 1 + i) && ex(1 + i, n + 1) == x(1 + i, n + 1);
    }

    r.q_compatible = true;
    for (const Matrix& e : r.e)
        r.q_compatible = r.q_compatible && q_compat_check(e, model.vhs.polarization).compatible;
    return r;
}

double coordinate_coincidence(const HKModel& model, const std::vector<Scalar>& t, double tol) {
    HKEMatrices em = hk_E_matrices(model);
    NilpotentOrbitPoint pt =
        orbit_filtration(em.e, t, model.vhs.polarization, model.vhs.hodge, tol);
    if (pt.verdict != HodgeRiemannVerdict::in_D)
        throw Error("point", "outside the bounded realization of the period domain");
    Matrix fam = hk20_family(model).coeffs.eval(t);
    double worst = 0;
    for (int b = 0; b < model.num_vars + 2; ++b)
        worst = std::max(worst, (pt.matrix(0, b) - fam(0, b)).abs());
    return worst;
}

}  // namespace vhs
