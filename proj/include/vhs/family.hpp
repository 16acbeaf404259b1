#pragma once

#include "vhs/hodge.hpp"
#include "vhs/series.hpp"

#include <map>
#include <vector>

namespace vhs {

/// A variation model over flat coordinates t_1..t_N. Coefficient vectors of
/// the family expansions live in the reference adapted basis and are stored
/// as 1 × total_dim rows, so the interior-product operators act on the right.
struct VHSModel {
    HodgeData hodge;
    PolarizationForm polarization;
    int num_vars;
    /// A_i encode φ_i⌟η_j = Σ_k (A_i)_{jk} η̄_k; unused for weight 2.
    std::vector<Matrix> A;
    /// Canonical-family coefficients beyond the classic ones: |I| ≥ 2 rows.
    std::map<MultiIndex, Matrix> extra_coeffs;
    int order = 6;

    int dim() const { return hodge.total_dim(); }
    bool no_strong_correction() const { return extra_coeffs.empty(); }

    /// Matrix of φ_i⌟ acting on row coordinate vectors from the right.
    Matrix e_matrix(int i) const;

    /// Normalization against the model's Gram: Q̃(a_0, ā_0) = 1,
    /// Q̃(a_i, ā_j) = −δ_ij, all pairings with the ā_I (|I| ≥ 2) zero.
    /// Extras must vanish on the first two Hodge blocks. Throws on failure.
    void validate() const;

    /// Q̃ evaluated on coordinate rows, bilinear (no conjugation).
    Scalar qtilde_rows(const Matrix& u, const Matrix& v) const;
};

struct FamilyExpansion {
    enum class Kind { classic, canonical };
    TruncatedSeries coeffs;  // 1 × dim rows in t only
    Kind kind;
};

struct QuantumCorrection {
    TruncatedSeries strong;  // canonical − classic, 1 × dim rows
    /// weak[(i·N + j)·N + k] = A_i γ_{jk} + A_j γ_{ik} + A_k γ_{ij} as a
    /// 1 × N row of η̄-slot components, where γ_{jk} collects the η̄ parts
    /// of the degree-2 extra coefficients.
    std::vector<Matrix> weak;
    bool strong_is_zero;
    bool weak_is_zero;
};

struct YukawaCoupling {
    /// Scalar series indexed (i·N + j)·N + k, fully symmetric in i, j, k.
    std::vector<TruncatedSeries> full;
    std::vector<TruncatedSeries> correction;
};

/// Weight-3 model from a fully symmetric cubic tensor, given as N matrices
/// C[i] with C[i](j,k) = C_{ijk}. Throws naming the violating triple.
VHSModel build_cy3_model(const std::vector<Matrix>& c, int order = 6);

/// Weight-2 model with the orthonormal reference Gram; φ_i⌟φ_j⌟Ω = δ_ij Ω̄.
VHSModel build_hk_vhs_model(int num_vars, int order = 6);

/// exp(Σ t_i φ_i)⌟Ω as a coefficient row series; exact polynomial of total
/// degree ≤ weight.
FamilyExpansion classic_family(const VHSModel& model);

/// Classic family plus the extra coefficients and the cubic they induce
/// through the A-pairing. Degree ≤ 1 slots never change.
FamilyExpansion canonical_family(const VHSModel& model);

QuantumCorrection quantum_correction(const VHSModel& model);

/// Triple pairings of the canonical family with its third derivatives.
/// Requires weight 3.
YukawaCoupling yukawa(const VHSModel& model);

}  // namespace vhs
