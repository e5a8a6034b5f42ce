// spectral.cpp — Eigenanalysis of superoperators and time means

#include "qds/spectral.hpp"

#include "qds/errors.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>
#include <unsupported/Eigen/MatrixFunctions>

#include <algorithm>
#include <cmath>

namespace qds {

namespace {

constexpr double kEigvecConditionLimit = 1e6;
constexpr int kPowerAverageSteps = 10000;

// Orthonormal columns spanning the numerical nullspace of m (right singular
// vectors with sigma <= rel_tol * sigma_max).
Matrix nullspace(const Matrix& m, double rel_tol) {
    Eigen::JacobiSVD<Matrix> svd(m, Eigen::ComputeFullV);
    const auto& sv = svd.singularValues();
    const double smax = sv.size() > 0 ? sv(0) : 0.0;
    // Guard against numerically zero inputs, where the largest singular
    // value is itself rounding noise.
    const double cut = smax <= 1e-12 ? 1e-12 : smax * rel_tol;
    Index first_null = sv.size();
    for (Index i = 0; i < sv.size(); ++i) {
        if (sv(i) <= cut) {
            first_null = i;
            break;
        }
    }
    const Index n_null = m.cols() - first_null;
    Matrix out(m.cols(), n_null);
    if (n_null > 0) {
        out = svd.matrixV().rightCols(n_null);
    }
    return out;
}

// Orthonormalize matrix-space vectors (as columns), dropping directions below
// rel_tol * sigma_max.
Matrix orthonormal_columns(const Matrix& columns, double rel_tol) {
    if (columns.cols() == 0) {
        return columns;
    }
    Eigen::JacobiSVD<Matrix> svd(columns, Eigen::ComputeThinU);
    const auto& sv = svd.singularValues();
    const double cut = (sv.size() > 0 ? sv(0) : 0.0) * rel_tol;
    Index keep = 0;
    while (keep < sv.size() && sv(keep) > cut && sv(keep) > 0.0) {
        ++keep;
    }
    return svd.matrixU().leftCols(keep);
}

bool in_unit_cluster(Complex lambda, TimeKind kind, double tol) {
    if (kind == TimeKind::discrete) {
        return std::abs(lambda - Complex(1.0, 0.0)) <= tol;
    }
    return std::abs(lambda) <= tol;
}

// One evolution step for power averaging: S itself for channels, exp(h L)
// for generators with a step scaled to the generator norm.
Matrix averaging_step(const Matrix& superop, TimeKind kind) {
    if (kind == TimeKind::discrete) {
        return superop;
    }
    const double scale = std::max(1.0, superop.norm());
    const Matrix scaled = superop / scale;
    return scaled.exp();
}

Vector power_average(const Matrix& step, const Vector& v0) {
    Vector acc = v0;
    Vector cur = v0;
    for (int t = 1; t <= kPowerAverageSteps; ++t) {
        cur = step * cur;
        acc += cur;
    }
    return acc / static_cast<double>(kPowerAverageSteps + 1);
}

}  // namespace

std::vector<EigenMode> eig_superop(const Matrix& superop, TimeKind kind) {
    const Index n = superop_side(superop);
    Eigen::ComplexEigenSolver<Matrix> es(superop);
    if (es.info() != Eigen::Success) {
        throw StructuralInconsistency("eig_superop: eigensolver failed to converge");
    }
    std::vector<EigenMode> modes;
    modes.reserve(superop.rows());
    for (Index i = 0; i < superop.rows(); ++i) {
        EigenMode mode;
        mode.eigenvalue = es.eigenvalues()(i);
        Vector v = es.eigenvectors().col(i);
        const double norm = v.norm();
        if (norm > 0.0) {
            v /= norm;
        }
        mode.eigenmatrix = unvec(v, n, n);
        mode.residual = (superop * v - mode.eigenvalue * v).norm();
        modes.push_back(std::move(mode));
    }
    if (kind == TimeKind::discrete) {
        std::stable_sort(modes.begin(), modes.end(), [](const EigenMode& a, const EigenMode& b) {
            return std::abs(a.eigenvalue) > std::abs(b.eigenvalue);
        });
    } else {
        std::stable_sort(modes.begin(), modes.end(), [](const EigenMode& a, const EigenMode& b) {
            return a.eigenvalue.real() > b.eigenvalue.real();
        });
    }
    return modes;
}

FixedSpace fixed_space_of_superop(const Matrix& superop, TimeKind kind, double rel_tol) {
    const Index n = superop_side(superop);
    Matrix target = superop;
    if (kind == TimeKind::discrete) {
        target -= Matrix::Identity(superop.rows(), superop.cols());
    }
    Matrix null_basis = nullspace(target, rel_tol);
    if (null_basis.cols() == 0) {
        throw StructuralInconsistency(
            "fixed_space: empty fixed space; impossible for a trace-preserving system");
    }

    // Adjoint closure: re-span with vec(B^dag) and re-orthonormalize.
    Matrix closure(superop.rows(), 2 * null_basis.cols());
    closure.leftCols(null_basis.cols()) = null_basis;
    for (Index c = 0; c < null_basis.cols(); ++c) {
        const Matrix b = unvec(null_basis.col(c), n, n);
        closure.col(null_basis.cols() + c) = vec(Matrix(b.adjoint()));
    }
    const Matrix closed = orthonormal_columns(closure, rel_tol);

    FixedSpace fs;
    fs.hermitian_closed = closed.cols() == null_basis.cols();
    for (Index c = 0; c < closed.cols(); ++c) {
        fs.basis.push_back(unvec(closed.col(c), n, n));
    }
    return fs;
}

FixedSpace fixed_space(const System& s, double rel_tol) {
    return fixed_space_of_superop(superop_of(s), time_kind(s), rel_tol);
}

std::optional<Matrix> unit_eigen_projector(const Matrix& superop, TimeKind kind,
                                           double cluster_tol) {
    Eigen::ComplexEigenSolver<Matrix> es(superop);
    if (es.info() != Eigen::Success) {
        return std::nullopt;
    }
    const Matrix& v = es.eigenvectors();
    Eigen::JacobiSVD<Matrix> svd(v);
    const double smin = svd.singularValues()(svd.singularValues().size() - 1);
    const double smax = svd.singularValues()(0);
    if (smin <= 0.0 || smax / smin > kEigvecConditionLimit) {
        return std::nullopt;
    }
    Matrix indicator = Matrix::Zero(superop.rows(), superop.cols());
    for (Index i = 0; i < es.eigenvalues().size(); ++i) {
        if (in_unit_cluster(es.eigenvalues()(i), kind, cluster_tol)) {
            indicator(i, i) = 1.0;
        }
    }
    const Matrix v_inv = v.partialPivLu().solve(Matrix::Identity(v.rows(), v.cols()));
    return v * indicator * v_inv;
}

DensityMatrix cesaro_mean_state(const System& s, const DensityMatrix& rho0,
                                const ToleranceSet& tol) {
    const Index n = dim_of(s);
    if (rho0.dim() != n) {
        throw std::invalid_argument("cesaro_mean_state: state dimension mismatch");
    }
    const Matrix& superop = superop_of(s);
    const TimeKind kind = time_kind(s);

    Vector mean_vec;
    double psd_tol = tol.psd;
    if (const auto projector = unit_eigen_projector(superop, kind, tol.cluster)) {
        mean_vec = (*projector) * vec(rho0.rho);
    } else {
        // Ill-conditioned eigenbasis: plain Cesaro power averaging with a
        // declared tolerance of 1e-6.
        const Matrix step = averaging_step(superop, kind);
        mean_vec = power_average(step, vec(rho0.rho));
        psd_tol = 1e-6;
    }
    const Matrix mean = hermitize(unvec(mean_vec, n, n));
    const DensityDefects defects = density_defects(mean);
    if (defects.min_eig < -std::max(psd_tol, tol.psd) || defects.trace > 1e-6) {
        throw StructuralInconsistency(
            "cesaro_mean_state: projection produced an invalid state (min eigenvalue " +
            std::to_string(defects.min_eig) + ", trace defect " + std::to_string(defects.trace) +
            "); peripheral structure may be defective");
    }
    return DensityMatrix::unchecked(mean);
}

Matrix mean_operator(const System& s, const Matrix& a, const ToleranceSet& tol) {
    const Index n = dim_of(s);
    if (a.rows() != n || a.cols() != n) {
        throw std::invalid_argument("mean_operator: operand dimension mismatch");
    }
    const Matrix& superop = superop_of(s);
    const TimeKind kind = time_kind(s);
    if (const auto projector = unit_eigen_projector(superop, kind, tol.cluster)) {
        // The Heisenberg-picture projector is the matrix adjoint.
        return unvec(projector->adjoint() * vec(a), n, n);
    }
    const Matrix step = averaging_step(superop, kind).adjoint();
    return unvec(power_average(step, vec(a)), n, n);
}

std::vector<EigenMode> peripheral_modes(const System& s, double tol) {
    const TimeKind kind = time_kind(s);
    std::vector<EigenMode> all = eig_superop(superop_of(s), kind);
    std::vector<EigenMode> peripheral;
    for (auto& mode : all) {
        const bool keep = kind == TimeKind::discrete
                              ? std::abs(std::abs(mode.eigenvalue) - 1.0) <= tol
                              : std::abs(mode.eigenvalue.real()) <= tol;
        if (keep) {
            peripheral.push_back(std::move(mode));
        }
    }
    return peripheral;
}

std::vector<double> decay_profile(const System& s, const DensityMatrix& rho0,
                                  const Matrix& decay_projector, int steps, double dt) {
    const Index n = dim_of(s);
    if (rho0.dim() != n || decay_projector.rows() != n || decay_projector.cols() != n) {
        throw std::invalid_argument("decay_profile: dimension mismatch");
    }
    if (steps < 0) {
        throw std::invalid_argument("decay_profile: steps must be >= 0");
    }
    Matrix step;
    if (time_kind(s) == TimeKind::discrete) {
        step = superop_of(s);
    } else {
        if (dt <= 0.0) {
            throw std::invalid_argument("decay_profile: dt must be > 0 for continuous systems");
        }
        const Matrix scaled = dt * superop_of(s);
        step = scaled.exp();
    }
    std::vector<double> profile;
    profile.reserve(steps + 1);
    Vector v = vec(rho0.rho);
    for (int t = 0; t <= steps; ++t) {
        const Matrix rho_t = unvec(v, n, n);
        profile.push_back((decay_projector * rho_t).trace().real());
        if (t < steps) {
            v = step * v;
        }
    }
    return profile;
}

}  // namespace qds
