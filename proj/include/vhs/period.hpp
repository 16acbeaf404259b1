#pragma once

#include "vhs/family.hpp"

#include <map>

namespace vhs {

struct QCompatResult {
    bool compatible;
    double residual;
};

/// Infinitesimal invariance of the pairing: XᵀM + MX = 0 with M the Gram of Q.
QCompatResult q_compat_check(const Matrix& x, const PolarizationForm& pol);

/// Decomposition of End(H) by the amount each block of the reference Hodge
/// decomposition is shifted: component k maps H^{r,n−r} into H^{r+k,n−r−k}.
struct GradedLieElement {
    Matrix matrix;
    std::map<int, Matrix> components;

    bool pure(int k) const;
};

GradedLieElement grading_decompose(const Matrix& x, const HodgeData& data);

/// Block-upper-triangular point exp(Σ params_i E_i) acting on the reference
/// filtration.
struct NilpotentOrbitPoint {
    std::vector<Scalar> parameters;
    Matrix matrix;
    HodgeFiltration filtration;
    HodgeRiemannVerdict verdict;
};

NilpotentOrbitPoint orbit_filtration(const std::vector<Matrix>& e,
                                     const std::vector<Scalar>& params,
                                     const PolarizationForm& pol, const HodgeData& data,
                                     double tol = 1e-9);

struct AbelianCheck {
    bool abelian;
    double max_commutator;
};

AbelianCheck abelian_check(const std::vector<Matrix>& e);

struct SigmaResult {
    Matrix sigma;            // the displayed block matrix at the given t
    std::vector<Matrix> e;   // degree-1 coefficient matrices E_i
    bool preserves_pairing;  // σᵀ M σ = M
    bool equals_exponential; // σ = exp(Σ t_i E_i)
    bool transversal;        // ∂_i of the classic family lies in the top 1+N rows
};

/// The explicit period matrix of a weight-3 model without strong correction.
/// Rows: the classic family and its chain under the interior products.
SigmaResult cy3_sigma(const VHSModel& model, const std::vector<Scalar>& t);

}  // namespace vhs
