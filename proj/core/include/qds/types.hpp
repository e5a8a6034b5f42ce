// types.hpp — Complex matrix aliases, vectorization convention, tolerances, numeric helpers

#pragma once

#include <Eigen/Dense>

#include <cmath>
#include <complex>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace qds {

using Complex    = std::complex<double>;
using Matrix     = Eigen::MatrixXcd;
using Vector     = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;
using Index      = Eigen::Index;

// Tolerances used throughout. Frobenius / eigenvalue scale, absolute unless
// noted. `rank` and the support thresholds are relative to the largest
// singular value / eigenvalue.
struct ToleranceSet {
    double herm    = 1e-9;   // Hermiticity defect
    double psd     = 1e-9;   // admissible negative eigenvalue magnitude
    double trace   = 1e-9;   // trace-one / trace-preservation defect
    double eig     = 1e-8;   // eigenmode residuals, fixed-point defects
    double rank    = 1e-8;   // relative rank / nullspace threshold
    double cluster = 1e-7;   // eigenvalue clustering (absolute)

    static ToleranceSet defaults() { return {}; }
    static ToleranceSet strict() {
        ToleranceSet t;
        t.herm = t.psd = t.trace = 1e-11;
        t.eig = 1e-10;
        t.rank = 1e-10;
        t.cluster = 1e-9;
        return t;
    }
    // Reads QDS_TOL_PROFILE ("default" | "strict"); anything else -> defaults.
    static ToleranceSet from_env();
};

// Vectorization convention, fixed project-wide: column stacking,
// vec(|i><j|) = e_j (x) e_i, so the map rho -> A rho B has superoperator
// B^T (x) A. Eigen stores column-major, so vec() is a plain reinterpret.
inline Vector vec(const Matrix& m) {
    return Eigen::Map<const Vector>(m.data(), m.size());
}

inline Matrix unvec(const Vector& v, Index rows, Index cols) {
    if (v.size() != rows * cols) {
        throw std::invalid_argument("unvec: size mismatch");
    }
    return Eigen::Map<const Matrix>(v.data(), rows, cols);
}

// Square unvec; the vector length must be a perfect square.
inline Matrix unvec(const Vector& v) {
    const auto n = static_cast<Index>(std::llround(std::sqrt(static_cast<double>(v.size()))));
    if (n * n != v.size()) {
        throw std::invalid_argument("unvec: length is not a perfect square");
    }
    return unvec(v, n, n);
}

// Side of an N^2 x N^2 superoperator; throws if not a perfect square.
inline Index superop_side(const Matrix& s) {
    if (s.rows() != s.cols()) {
        throw std::invalid_argument("superoperator must be square");
    }
    const auto n = static_cast<Index>(std::llround(std::sqrt(static_cast<double>(s.rows()))));
    if (n * n != s.rows()) {
        throw std::invalid_argument("superoperator side is not a perfect square");
    }
    return n;
}

Matrix kron(const Matrix& a, const Matrix& b);

inline Matrix identity(Index n) { return Matrix::Identity(n, n); }

inline Matrix hermitize(const Matrix& m) { return 0.5 * (m + m.adjoint()); }

inline double hermiticity_defect(const Matrix& m) { return (m - m.adjoint()).norm(); }

inline bool is_hermitian(const Matrix& m, double tol) {
    return m.rows() == m.cols() && hermiticity_defect(m) <= tol;
}

inline bool all_finite(const Matrix& m) {
    return m.allFinite();
}

// Smallest eigenvalue of the Hermitian part.
double min_hermitian_eigenvalue(const Matrix& m);

// SplitMix64: the project-wide PRNG. Fixed algorithm so that seeded
// constructions reproduce across platforms and implementations.
struct SplitMix64 {
    std::uint64_t state{0};

    explicit SplitMix64(std::uint64_t seed) : state(seed) {}

    std::uint64_t next() {
        std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    // Uniform in (0, 1]; never zero so it is safe under log().
    double uniform() {
        return (static_cast<double>(next() >> 11) + 1.0) * 0x1.0p-53;
    }

    // Standard normal via Box-Muller.
    double gaussian() {
        if (has_spare_) {
            has_spare_ = false;
            return spare_;
        }
        const double u1 = uniform();
        const double u2 = uniform();
        const double r  = std::sqrt(-2.0 * std::log(u1));
        const double a  = 6.283185307179586476925286766559 * u2;
        spare_      = r * std::sin(a);
        has_spare_  = true;
        return r * std::cos(a);
    }

    Complex complex_gaussian() {
        const double re = gaussian();
        const double im = gaussian();
        return Complex(re, im) * 0.7071067811865475244;
    }

private:
    double spare_{0.0};
    bool has_spare_{false};
};

Matrix random_matrix(SplitMix64& rng, Index rows, Index cols);
Matrix random_hermitian(SplitMix64& rng, Index n);
Vector random_unit_vector(SplitMix64& rng, Index n);

}  // namespace qds
