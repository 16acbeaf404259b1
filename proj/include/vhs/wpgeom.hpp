#pragma once

#include "vhs/family.hpp"

namespace vhs {

inline std::size_t idx3(int n, int i, int j, int k) {
    return (static_cast<std::size_t>(i) * n + j) * n + k;
}
inline std::size_t idx4(int n, int i, int j, int k, int l) {
    return ((static_cast<std::size_t>(i) * n + j) * n + k) * n + l;
}
inline std::size_t idx5(int n, int r, int i, int j, int k, int l) {
    return static_cast<std::size_t>(r) * n * n * n * n + idx4(n, i, j, k, l);
}

/// Pairing of the canonical family with its own conjugate: the scalar whose
/// negative log is the Kähler potential of the metric on the chart.
struct WPPotential {
    TruncatedSeries q;
    int num_vars;

    Scalar coeff(const MultiIndex& holo, const MultiIndex& anti) const {
        return q.scalar_coeff(holo, anti);
    }
    /// Symmetric tensor behind the (2,2) block: q_{ik,j̄l̄}.
    Scalar quartic(int i, int k, int j, int l) const;
    /// (3,2) block tensor q_{ikr,j̄l̄}.
    Scalar quintic_holo(int i, int k, int r, int j, int l) const;
    /// (2,3) block tensor q_{ik,j̄l̄r̄}.
    Scalar quintic_anti(int i, int k, int j, int l, int r) const;
};

WPPotential wp_potential(const VHSModel& model);

/// N×N-matrix-valued series of the metric, entry (k,l) = −∂_k ∂_l̄ log q.
TruncatedSeries wp_metric_series(const WPPotential& p);

struct CurvatureReport {
    std::vector<Scalar> point;
    Matrix metric;                     // g_{i j̄} at the point
    std::vector<Scalar> christoffel;   // Γ^k_{ij} at idx3(i, j, k)
    std::vector<Scalar> curvature;     // R_{i j̄ k l̄} at idx4(i, j, k, l)
    std::vector<Scalar> nabla_r;       // ∇_r R at idx5(r, i, j, k, l)
    std::vector<Scalar> nabla_rbar;    // ∇_r̄ R at idx5(r, i, j, k, l)
    double fd_residual_metric = 0;     // vs closed-form rational expression
    double fd_residual_curvature = 0;  // vs central differences of the metric
    double fd_residual_nabla = 0;      // vs differenced covariant derivative
};

/// Analytic geometry from the recentered potential series; finite-difference
/// residuals included unless with_fd is false. Refuses points where the
/// potential drops below the validity guard.
CurvatureReport geometry_at(const VHSModel& model, const std::vector<Scalar>& point,
                            bool with_fd = true, double fd_step = 1e-4);

/// ∇R(0) straight from the degree-5 potential tensors; the sign convention is
/// the one the log-potential expansion produces (documented in the README).
void nabla_curvature_at_base(const VHSModel& model, std::vector<Scalar>& nabla_r,
                             std::vector<Scalar>& nabla_rbar);

enum class SymmetryVerdict { symmetric_at_base, symmetric_on_samples, not_symmetric };
const char* to_string(SymmetryVerdict v);

SymmetryVerdict symmetry_verdict(const VHSModel& model,
                                 const std::vector<std::vector<Scalar>>& sample_points,
                                 double tol = 1e-6);

struct ProjectionCurvature {
    std::vector<Scalar> curvature;  // idx4 layout
    double residual;                // max deviation from geometry_at(0)
};

/// Curvature at the base via covariant second derivatives of the family and
/// the triple-pairing formula, compared against the potential route.
ProjectionCurvature curvature_via_projection(const VHSModel& model);

/// Metric at a point from the closed rational expression
/// q^{−2}(∂q ∂̄q − q ∂∂̄q); the finite-difference oracle differentiates this.
Matrix metric_at_closed_form(const WPPotential& p, const std::vector<Scalar>& point);

std::vector<Scalar> fd_curvature(const VHSModel& model, const std::vector<Scalar>& point,
                                 double step = 1e-4);
void fd_nabla(const VHSModel& model, const std::vector<Scalar>& point,
              std::vector<Scalar>& nabla_r, std::vector<Scalar>& nabla_rbar,
              double step = 1e-4);

}  // namespace vhs
