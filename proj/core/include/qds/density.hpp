// density.hpp — Density matrices with tolerance-checked invariants

#pragma once

#include "qds/types.hpp"

#include <stdexcept>

namespace qds {

struct DensityDefects {
    double herm{0.0};
    double min_eig{0.0};
    double trace{0.0};
    bool finite{true};

    bool ok(const ToleranceSet& tol) const {
        return finite && herm <= tol.herm && min_eig >= -tol.psd && trace <= tol.trace;
    }
};

DensityDefects density_defects(const Matrix& m);

struct DensityMatrix {
    Matrix rho;

    Index dim() const { return rho.rows(); }

    // Validating constructor; throws std::invalid_argument on defect.
    static DensityMatrix from_matrix(Matrix m, const ToleranceSet& tol = ToleranceSet::defaults());

    // For values that are valid by construction.
    static DensityMatrix unchecked(Matrix m) { return DensityMatrix{std::move(m)}; }
};

DensityMatrix pure_state(const Vector& psi);
DensityMatrix basis_state(Index dim, Index k);
DensityMatrix maximally_mixed(Index dim);

}  // namespace qds
