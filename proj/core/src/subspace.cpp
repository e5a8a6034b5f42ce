// subspace.cpp — Subspace construction and geometry

#include "qds/subspace.hpp"

#include <Eigen/SVD>

#include <stdexcept>

namespace qds {

Subspace Subspace::from_basis(Matrix b) {
    if (b.rows() == 0) {
        throw std::invalid_argument("Subspace: empty ambient space");
    }
    const Matrix gram = b.adjoint() * b;
    if ((gram - Matrix::Identity(b.cols(), b.cols())).norm() > 1e-12 * std::max<double>(1.0, b.cols())) {
        throw std::invalid_argument("Subspace: basis columns are not orthonormal");
    }
    Subspace s;
    s.ambient = b.rows();
    s.projector = b * b.adjoint();
    s.basis = std::move(b);
    return s;
}

Subspace Subspace::from_span(const Matrix& columns, double rel_tol) {
    if (columns.rows() == 0) {
        throw std::invalid_argument("Subspace: empty ambient space");
    }
    if (columns.cols() == 0) {
        return zero(columns.rows());
    }
    Eigen::JacobiSVD<Matrix> svd(columns, Eigen::ComputeThinU);
    const auto& sv = svd.singularValues();
    const double cut = sv.size() > 0 ? sv(0) * rel_tol : 0.0;
    Index keep = 0;
    while (keep < sv.size() && sv(keep) > cut && sv(keep) > 0.0) {
        ++keep;
    }
    if (keep == 0) {
        return zero(columns.rows());
    }
    return from_basis(svd.matrixU().leftCols(keep));
}

Subspace Subspace::support(const Matrix& hermitian, double rel_tol) {
    Eigen::SelfAdjointEigenSolver<Matrix> es(hermitize(hermitian));
    const auto& ev = es.eigenvalues();
    const double top = ev.size() > 0 ? ev.maxCoeff() : 0.0;
    if (top <= 0.0) {
        return zero(hermitian.rows());
    }
    const double cut = top * rel_tol;
    Matrix cols(hermitian.rows(), hermitian.rows());
    Index keep = 0;
    for (Index i = 0; i < ev.size(); ++i) {
        if (ev(i) >= cut) {
            cols.col(keep++) = es.eigenvectors().col(i);
        }
    }
    return from_basis(cols.leftCols(keep));
}

Subspace Subspace::full(Index n) {
    return from_basis(Matrix::Identity(n, n));
}

Subspace Subspace::zero(Index n) {
    Subspace s;
    s.ambient = n;
    s.basis = Matrix::Zero(n, 0);
    s.projector = Matrix::Zero(n, n);
    return s;
}

Subspace Subspace::complement() const {
    Eigen::SelfAdjointEigenSolver<Matrix> es(Matrix::Identity(ambient, ambient) - projector);
    Matrix cols(ambient, ambient);
    Index keep = 0;
    for (Index i = 0; i < ambient; ++i) {
        if (es.eigenvalues()(i) > 0.5) {
            cols.col(keep++) = es.eigenvectors().col(i);
        }
    }
    if (keep == 0) {
        return zero(ambient);
    }
    return from_basis(cols.leftCols(keep));
}

double Subspace::overlap(const Subspace& other) const {
    return (projector * other.projector).norm();
}

bool Subspace::orthogonal_to(const Subspace& other, double tol) const {
    return overlap(other) <= tol;
}

Matrix Subspace::compress(const Matrix& m) const {
    return basis.adjoint() * m * basis;
}

Matrix Subspace::embed(const Matrix& m) const {
    return basis * m * basis.adjoint();
}

double projector_distance(const Subspace& a, const Subspace& b) {
    return (a.projector - b.projector).norm();
}

}  // namespace qds
