#pragma once

#include "vhs/period.hpp"

#include <map>

namespace vhs {

/// Weight-2 model: deformation space of dimension N on a manifold of complex
/// dimension 2n, reference basis ([Ω^{2,0}], [η_1], …, [η_N], [Ω̄^{2,0}])
/// with Q(Ω, Ω̄) = −1 and Q(η_i, η_j) = δ_ij.
struct HKModel {
    int num_vars;
    int half_dim;  // n, so the manifold has complex dimension 2n
    VHSModel vhs;
};

HKModel build_hk_model(int num_vars, int half_dim, int order = 6);

/// [Ω^{2,0}(t)] = [1, t, ½Σ t_i²]: exact degree-2 polynomial rows.
FamilyExpansion hk20_family(const HKModel& model);

/// Coefficients of the formal exponential applied to the (4n,0)-symbol:
/// key = sorted index tuple, value = 1/(m_1!⋯m_N!) for its multiplicities.
/// Terminates at total degree 2n.
using WedgeExpansionTable = std::map<MultiIndex, Scalar>;

WedgeExpansionTable hk2n0_coefficients(const HKModel& model);

struct HKMembership {
    HodgeRiemannVerdict verdict;   // from the full bilinear-relation check
    Scalar positivity_squared;     // 1 − Σ|τ|² + ¼|Στ²|²
    Scalar positivity_unsquared;   // 1 − Σ|τ|² + ¼|Στ²| (alternate reading)
};

/// Membership of exp(Στ_i E_i)·(reference) in the period domain. The verdict
/// comes from the bilinear relations only; the scalars are diagnostic.
HKMembership hc_membership(const HKModel& model, const std::vector<Scalar>& tau,
                           double tol = 1e-9);

struct HKEMatrices {
    std::vector<Matrix> e;
    bool products_diagonal;   // E_i E_j = δ_ij · corner matrix
    bool exponential_matches; // exp(Στ E) has top corner ½Στ² on samples
    bool q_compatible;        // every E_i passes the pairing compatibility check
};

HKEMatrices hk_E_matrices(const HKModel& model);

/// Max difference between the first row of exp(Σ t_i E_i) and the family
/// coefficient vector at t; exactly zero on rational input inside the domain.
double coordinate_coincidence(const HKModel& model, const std::vector<Scalar>& t,
                              double tol = 1e-9);

}  // namespace vhs
