#pragma once

#include "vhs/linalg.hpp"

#include <vector>

namespace vhs {

/// Hodge numbers of a weight-n structure and the induced filtration
/// dimensions f^k = Σ_{i≥k} h^{i,n−i}.
class HodgeData {
public:
    HodgeData(int weight, std::vector<int> hodge_numbers);

    /// Weight 3, numbers (1, N, N, 1).
    static HodgeData cy3(int num_deformations);
    /// Weight 2, numbers (1, N, 1).
    static HodgeData hyperkahler(int num_deformations);

    int weight() const { return weight_; }
    /// h^{p, n−p}
    int hodge_number(int p) const { return h_.at(weight_ - p); }
    int filtration_dim(int k) const;  // f^k
    int total_dim() const { return filtration_dim(0); }

private:
    int weight_;
    std::vector<int> h_;  // h_[j] = h^{n−j, j}, j = 0..n
};

/// Polarization data in the reference adapted basis. The stored Gram is
/// that of Q̃ = (√−1)^n Q, the form with alternating block signs; the Gram
/// of Q itself is recovered by the inverse power of √−1.
class PolarizationForm {
public:
    PolarizationForm(int weight, Matrix gram_qtilde, Matrix real_structure_swap);

    /// Anti-diagonal blocks (1, −I_N, I_N, −1) on [Ω], [η], [η̄], [Ω̄].
    static PolarizationForm cy3_reference(int num_deformations);
    /// Q̃ = −Q with Q(Ω, Ω̄) = −1, Q(η_i, η_j) = δ_ij on [Ω], [η], [Ω̄].
    static PolarizationForm hyperkahler_reference(int num_deformations);

    int weight() const { return weight_; }
    const Matrix& gram_qtilde() const { return gram_qtilde_; }
    Matrix gram_q() const { return i_pow(-weight_) * gram_qtilde_; }

    /// Coordinates of the complex conjugate of a class: the reference basis
    /// pairs conjugate elements block-against-block, so conjugation is
    /// entrywise conjugation followed by the block swap.
    Matrix conjugate_classes(const Matrix& coords) const;
    const Matrix& real_structure_swap() const { return swap_; }

    /// Q̃(u, v) for coordinate columns (bilinear, no conjugation).
    Scalar qtilde(const Matrix& u, const Matrix& v) const;

private:
    int weight_;
    Matrix gram_qtilde_;
    Matrix swap_;
};

/// Point of the compact dual: total_dim × total_dim nonsingular matrix whose
/// leading f^k columns span F^k.
struct HodgeFiltration {
    Matrix basis_matrix;

    static HodgeFiltration reference(const HodgeData& data);
};

enum class HodgeRiemannVerdict { in_D, in_Dcheck_only, outside };

const char* to_string(HodgeRiemannVerdict v);

/// Weil operator on an (p, q)-class: (√−1)^{2p−n} · v.
Matrix weil_apply(const Matrix& v, int p, int q, int weight);

/// Both Hodge–Riemann bilinear relations. First relation: Q(F^k, F^{n−k+1})
/// = 0 for every k. Second: Q(Cv, v̄) > 0 on each H^{p,q} = F^p ∩ conj(F^{n−p}).
HodgeRiemannVerdict check_hodge_riemann(const HodgeFiltration& f, const PolarizationForm& pol,
                                        const HodgeData& data, double tol = 1e-9);

/// Bases of H^{p,q} = F^p ∩ conj(F^{n−p}), p = n..0, as column matrices.
/// Throws when any intersection dimension differs from h^{p,q}.
std::vector<Matrix> hodge_components(const HodgeFiltration& f, const PolarizationForm& pol,
                                     const HodgeData& data, double tol = 1e-9);

}  // namespace vhs
