// subspace.hpp — Subspaces as orthonormal-column isometries with projectors

#pragma once

#include "qds/types.hpp"

#include <vector>

namespace qds {

struct Subspace {
    Index ambient{0};
    Matrix basis;      // ambient x d, orthonormal columns (d may be 0)
    Matrix projector;  // basis * basis^dagger

    Index dim() const { return basis.cols(); }

    // Requires orthonormal columns within 1e-12.
    static Subspace from_basis(Matrix b);

    // Orthonormalizes the span of arbitrary columns; columns whose singular
    // value falls below rel_tol * sigma_max are dropped.
    static Subspace from_span(const Matrix& columns, double rel_tol = 1e-10);

    // Support of a Hermitian PSD matrix: eigenvectors with eigenvalue
    // >= rel_tol * lambda_max.
    static Subspace support(const Matrix& hermitian, double rel_tol);

    static Subspace full(Index n);
    static Subspace zero(Index n);

    Subspace complement() const;

    double overlap(const Subspace& other) const;  // ||P_a P_b||_F
    bool orthogonal_to(const Subspace& other, double tol) const;

    // Compress an ambient operator to this subspace's coordinates (d x d).
    Matrix compress(const Matrix& m) const;
    // Embed a d x d operator back into the ambient space.
    Matrix embed(const Matrix& m) const;
};

double projector_distance(const Subspace& a, const Subspace& b);

}  // namespace qds
