// types.cpp — Shared numeric helpers

#include "qds/types.hpp"

#include <cstdlib>

namespace qds {

ToleranceSet ToleranceSet::from_env() {
    const char* profile = std::getenv("QDS_TOL_PROFILE");
    if (profile != nullptr && std::string(profile) == "strict") {
        return strict();
    }
    return defaults();
}

Matrix kron(const Matrix& a, const Matrix& b) {
    Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Index i = 0; i < a.rows(); ++i) {
        for (Index j = 0; j < a.cols(); ++j) {
            out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
        }
    }
    return out;
}

double min_hermitian_eigenvalue(const Matrix& m) {
    Eigen::SelfAdjointEigenSolver<Matrix> es(hermitize(m), Eigen::EigenvaluesOnly);
    return es.eigenvalues().minCoeff();
}

Matrix random_matrix(SplitMix64& rng, Index rows, Index cols) {
    Matrix out(rows, cols);
    for (Index j = 0; j < cols; ++j) {
        for (Index i = 0; i < rows; ++i) {
            out(i, j) = rng.complex_gaussian();
        }
    }
    return out;
}

Matrix random_hermitian(SplitMix64& rng, Index n) {
    return hermitize(random_matrix(rng, n, n));
}

Vector random_unit_vector(SplitMix64& rng, Index n) {
    Vector v(n);
    for (Index i = 0; i < n; ++i) {
        v(i) = rng.complex_gaussian();
    }
    const double norm = v.norm();
    if (norm == 0.0) {
        v.setZero();
        v(0) = 1.0;
        return v;
    }
    return v / norm;
}

}  // namespace qds
