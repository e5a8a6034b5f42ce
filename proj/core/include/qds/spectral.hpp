// spectral.hpp — Superoperator eigenanalysis: eigenmodes, fixed spaces,
// time means, peripheral modes, decay profiles

#pragma once

#include "qds/channel.hpp"
#include "qds/density.hpp"
#include "qds/subspace.hpp"
#include "qds/types.hpp"

#include <optional>
#include <vector>

namespace qds {

struct EigenMode {
    Complex eigenvalue;
    Matrix eigenmatrix;   // N x N, Frobenius-normalized
    double residual;      // ||T(gamma) - lambda gamma||_F (or the generator analogue)
};

struct FixedSpace {
    std::vector<Matrix> basis;   // Frobenius-orthonormal
    bool hermitian_closed{true}; // adjoints already lay in the span before re-closure

    Index dim() const { return static_cast<Index>(basis.size()); }
};

// Full eigendecomposition of an N^2 x N^2 superoperator. Modes are sorted by
// descending |lambda| (discrete) or descending Re lambda (continuous).
std::vector<EigenMode> eig_superop(const Matrix& superop, TimeKind kind);

// Orthonormal basis of {X : T(X) = X} (discrete) or ker L (continuous),
// via SVD nullspace of (S - 1) resp. S, re-spanned to be adjoint-closed.
FixedSpace fixed_space(const System& s, double rel_tol = 1e-8);
FixedSpace fixed_space_of_superop(const Matrix& superop, TimeKind kind, double rel_tol = 1e-8);

// Spectral projector onto the eigenvalue-1 cluster (discrete) or the kernel
// cluster (continuous). Returns nothing when the eigenvector matrix is too
// ill-conditioned (> 1e6); callers then fall back to power averaging.
std::optional<Matrix> unit_eigen_projector(const Matrix& superop, TimeKind kind,
                                           double cluster_tol = 1e-7);

// Time mean of a state: the projection of rho0 onto the fixed part of the
// evolution, oscillating peripheral components averaged away. Falls back to
// Cesaro power averaging (T_max = 10^4, declared tolerance 1e-6) when the
// eigenbasis is ill-conditioned.
DensityMatrix cesaro_mean_state(const System& s, const DensityMatrix& rho0,
                                const ToleranceSet& tol = ToleranceSet::defaults());

// Heisenberg-picture mean; satisfies Tr(mean(A) rho) = Tr(A mean(rho)).
Matrix mean_operator(const System& s, const Matrix& a,
                     const ToleranceSet& tol = ToleranceSet::defaults());

// Modes with ||lambda| - 1| <= tol (discrete) or |Re lambda| <= tol (continuous).
std::vector<EigenMode> peripheral_modes(const System& s, double tol = 1e-7);

// Tr(P_decay T^t(rho0)) for t = 0..steps. dt is the step for continuous time.
std::vector<double> decay_profile(const System& s, const DensityMatrix& rho0,
                                  const Matrix& decay_projector, int steps, double dt = 1.0);

}  // namespace qds
