// density.cpp — Density matrix validation and common states

#include "qds/density.hpp"

#include <cmath>
#include <sstream>

namespace qds {

DensityDefects density_defects(const Matrix& m) {
    DensityDefects d;
    d.finite = all_finite(m);
    if (!d.finite || m.rows() != m.cols() || m.rows() == 0) {
        d.finite = false;
        return d;
    }
    d.herm = hermiticity_defect(m);
    d.min_eig = min_hermitian_eigenvalue(m);
    d.trace = std::abs(m.trace() - Complex(1.0, 0.0));
    return d;
}

DensityMatrix DensityMatrix::from_matrix(Matrix m, const ToleranceSet& tol) {
    const DensityDefects d = density_defects(m);
    if (!d.ok(tol)) {
        std::ostringstream msg;
        msg << "invalid density matrix: herm defect " << d.herm << ", min eigenvalue " << d.min_eig
            << ", trace defect " << d.trace << (d.finite ? "" : ", non-finite entries");
        throw std::invalid_argument(msg.str());
    }
    return DensityMatrix{std::move(m)};
}

DensityMatrix pure_state(const Vector& psi) {
    const double norm = psi.norm();
    if (norm == 0.0) {
        throw std::invalid_argument("pure_state: zero vector");
    }
    const Vector unit = psi / norm;
    return DensityMatrix::unchecked(unit * unit.adjoint());
}

DensityMatrix basis_state(Index dim, Index k) {
    if (k < 0 || k >= dim) {
        throw std::invalid_argument("basis_state: index out of range");
    }
    Matrix m = Matrix::Zero(dim, dim);
    m(k, k) = 1.0;
    return DensityMatrix::unchecked(std::move(m));
}

DensityMatrix maximally_mixed(Index dim) {
    if (dim <= 0) {
        throw std::invalid_argument("maximally_mixed: dimension must be positive");
    }
    return DensityMatrix::unchecked(Matrix::Identity(dim, dim) / static_cast<double>(dim));
}

}  // namespace qds
