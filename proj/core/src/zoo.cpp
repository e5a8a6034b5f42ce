// zoo.cpp — Example channel constructors and seeded random systems

#include "qds/zoo.hpp"

#include "qds/errors.hpp"

#include <Eigen/Eigenvalues>

#include <cmath>
#include <sstream>

namespace qds::zoo {

namespace {

Matrix ketbra(Index dim, Index i, Index j) {
    Matrix m = Matrix::Zero(dim, dim);
    m(i, j) = 1.0;
    return m;
}

}  // namespace

QuantumChannel cyclic_shift(int n) {
    if (n < 2) {
        throw std::invalid_argument("cyclic_shift: n must be >= 2");
    }
    std::vector<Matrix> kraus;
    for (Index k = 0; k < n; ++k) {
        kraus.push_back(ketbra(n, (k + 1) % n, k));
    }
    return QuantumChannel::from_kraus(std::move(kraus));
}

QuantumChannel collapse_cascade(int n, int m) {
    if (m < 2 || m > n) {
        throw std::invalid_argument("collapse_cascade: need 2 <= m <= n");
    }
    // Levels are 1-based in the construction; storage is 0-based.
    std::vector<Matrix> kraus;
    for (int k = m; k <= n; ++k) {
        kraus.push_back(ketbra(n, 0, k - 1));  // collapse of the top band onto level 1
    }
    for (int k = 2; k <= m - 1; ++k) {
        kraus.push_back(ketbra(n, k - 1, k - 2));  // upward shift of levels 1..m-2
    }
    const double spread = 1.0 / std::sqrt(static_cast<double>(n - m + 1));
    for (int k = m; k <= n; ++k) {
        kraus.push_back(spread * ketbra(n, k - 1, m - 2));  // level m-1 spreads over the band
    }
    return QuantumChannel::from_kraus(std::move(kraus));
}

QuantumChannel sudden_decay(const DensityMatrix& rho_inf) {
    const Index n = rho_inf.dim();
    Eigen::SelfAdjointEigenSolver<Matrix> es(hermitize(rho_inf.rho));
    std::vector<Matrix> kraus;
    for (Index i = 0; i < n; ++i) {
        const double p = es.eigenvalues()(i);
        if (p <= 1e-14) {
            continue;
        }
        const double w = std::sqrt(p);
        for (Index j = 0; j < n; ++j) {
            Matrix k = Matrix::Zero(n, n);
            k.col(j) = w * es.eigenvectors().col(i);
            kraus.push_back(std::move(k));
        }
    }
    if (kraus.empty()) {
        throw std::invalid_argument("sudden_decay: target state has no support");
    }
    return QuantumChannel::from_kraus(std::move(kraus));
}

QuantumChannel amplitude_damping(double gamma) {
    if (gamma < 0.0 || gamma > 1.0) {
        throw std::invalid_argument("amplitude_damping: gamma must lie in [0, 1]");
    }
    Matrix k0(2, 2);
    k0 << 1.0, 0.0, 0.0, std::sqrt(1.0 - gamma);
    Matrix k1(2, 2);
    k1 << 0.0, std::sqrt(gamma), 0.0, 0.0;
    return QuantumChannel::from_kraus({k0, k1});
}

QuantumChannel dephasing(double p) {
    if (p < 0.0 || p > 1.0) {
        throw std::invalid_argument("dephasing: p must lie in [0, 1]");
    }
    Matrix z(2, 2);
    z << 1.0, 0.0, 0.0, -1.0;
    return QuantumChannel::from_kraus(
        {std::sqrt(1.0 - p) * Matrix::Identity(2, 2), std::sqrt(p) * z});
}

QuantumChannel depolarizing(double p) {
    if (p < 0.0 || p > 1.0) {
        throw std::invalid_argument("depolarizing: p must lie in [0, 1]");
    }
    Matrix x(2, 2), y(2, 2), z(2, 2);
    x << 0.0, 1.0, 1.0, 0.0;
    y << 0.0, Complex(0.0, -1.0), Complex(0.0, 1.0), 0.0;
    z << 1.0, 0.0, 0.0, -1.0;
    const double w = std::sqrt(p / 4.0);
    return QuantumChannel::from_kraus({std::sqrt(1.0 - 3.0 * p / 4.0) * Matrix::Identity(2, 2),
                                       w * x, w * y, w * z});
}

QuantumChannel unitary_channel(const Matrix& u, double tol) {
    if (u.rows() != u.cols() || u.rows() < 1) {
        throw std::invalid_argument("unitary_channel: matrix must be square");
    }
    if ((u.adjoint() * u - Matrix::Identity(u.rows(), u.cols())).norm() > tol) {
        throw std::invalid_argument("unitary_channel: matrix is not unitary within tolerance");
    }
    return QuantumChannel::from_kraus({u});
}

LindbladGenerator hamiltonian_generator(const Matrix& h) {
    return LindbladGenerator::from_parts(h, {});
}

LindbladGenerator damped_qubit_generator(double gamma, double omega) {
    if (gamma < 0.0) {
        throw std::invalid_argument("damped_qubit_generator: gamma must be >= 0");
    }
    Matrix h = Matrix::Zero(2, 2);
    h(1, 1) = omega;
    Matrix jump = Matrix::Zero(2, 2);
    jump(0, 1) = std::sqrt(gamma);
    return LindbladGenerator::from_parts(h, {jump});
}

QuantumChannel direct_sum(const QuantumChannel& a, const QuantumChannel& b) {
    const Index na = a.dim;
    const Index nb = b.dim;
    const Index n = na + nb;
    if (a.kraus.empty() || b.kraus.empty()) {
        throw std::invalid_argument("direct_sum: both channels need Kraus representations");
    }
    std::vector<Matrix> kraus;
    for (const auto& k : a.kraus) {
        Matrix padded = Matrix::Zero(n, n);
        padded.topLeftCorner(na, na) = k;
        kraus.push_back(std::move(padded));
    }
    for (const auto& k : b.kraus) {
        Matrix padded = Matrix::Zero(n, n);
        padded.bottomRightCorner(nb, nb) = k;
        kraus.push_back(std::move(padded));
    }
    return QuantumChannel::from_kraus(std::move(kraus));
}

QuantumChannel replica(int m, const QuantumChannel& a) {
    if (m < 1) {
        throw std::invalid_argument("replica: m must be >= 1");
    }
    if (a.kraus.empty()) {
        throw std::invalid_argument("replica: base channel needs a Kraus representation");
    }
    const Matrix eye = Matrix::Identity(m, m);
    std::vector<Matrix> kraus;
    for (const auto& k : a.kraus) {
        kraus.push_back(kron(eye, k));
    }
    return QuantumChannel::from_kraus(std::move(kraus));
}

QuantumChannel random_cptp(Index dim, int n_kraus, std::uint64_t seed) {
    if (dim < 1 || n_kraus < 1) {
        throw std::invalid_argument("random_cptp: dimensions must be >= 1");
    }
    SplitMix64 rng(seed);
    std::vector<Matrix> raw;
    Matrix total = Matrix::Zero(dim, dim);
    for (int k = 0; k < n_kraus; ++k) {
        raw.push_back(random_matrix(rng, dim, dim));
        total += raw.back().adjoint() * raw.back();
    }
    // Normalize with the inverse square root of sum G^dag G.
    Eigen::SelfAdjointEigenSolver<Matrix> es(hermitize(total));
    const Vector d = es.eigenvalues().cwiseMax(1e-300).cwiseSqrt().cwiseInverse().cast<Complex>();
    const Matrix inv_sqrt = es.eigenvectors() * d.asDiagonal() * es.eigenvectors().adjoint();
    std::vector<Matrix> kraus;
    for (const auto& g : raw) {
        kraus.push_back(g * inv_sqrt);
    }
    return QuantumChannel::from_kraus(std::move(kraus));
}

LindbladGenerator random_lindblad(Index dim, int n_jumps, std::uint64_t seed) {
    if (dim < 1 || n_jumps < 0) {
        throw std::invalid_argument("random_lindblad: dimensions must be >= 1");
    }
    SplitMix64 rng(seed);
    const Matrix h = random_hermitian(rng, dim);
    std::vector<Matrix> jumps;
    for (int k = 0; k < n_jumps; ++k) {
        jumps.push_back(random_matrix(rng, dim, dim));
    }
    return LindbladGenerator::from_parts(h, std::move(jumps));
}

namespace {

double param(const ZooSpec& spec, const std::string& name) {
    const auto it = spec.params.find(name);
    if (it == spec.params.end()) {
        throw ParseError("zoo " + spec.name + ": missing parameter --" + name);
    }
    return it->second;
}

int iparam(const ZooSpec& spec, const std::string& name) {
    return static_cast<int>(std::llround(param(spec, name)));
}

}  // namespace

std::string available_constructors() {
    return "cyclic(n), cascade(n,m), sudden(dim[,level]), damping(gamma), dephasing(p), "
           "depolarizing(p), damped-qubit(gamma,omega), random(dim,kraus;seed), "
           "random-lindblad(dim,jumps;seed)";
}

System build(const ZooSpec& spec) {
    const std::uint64_t seed = spec.seed.value_or(1);
    if (spec.name == "cyclic") {
        return cyclic_shift(iparam(spec, "n"));
    }
    if (spec.name == "cascade") {
        return collapse_cascade(iparam(spec, "n"), iparam(spec, "m"));
    }
    if (spec.name == "sudden") {
        const int dim = iparam(spec, "dim");
        const int level = spec.params.count("level") ? iparam(spec, "level") : 0;
        return sudden_decay(basis_state(dim, level));
    }
    if (spec.name == "damping") {
        return amplitude_damping(param(spec, "gamma"));
    }
    if (spec.name == "dephasing") {
        return dephasing(param(spec, "p"));
    }
    if (spec.name == "depolarizing") {
        return depolarizing(param(spec, "p"));
    }
    if (spec.name == "damped-qubit") {
        return damped_qubit_generator(param(spec, "gamma"), param(spec, "omega"));
    }
    if (spec.name == "random") {
        return random_cptp(iparam(spec, "dim"), iparam(spec, "kraus"), seed);
    }
    if (spec.name == "random-lindblad") {
        return random_lindblad(iparam(spec, "dim"), iparam(spec, "jumps"), seed);
    }
    std::ostringstream msg;
    msg << "unknown zoo constructor '" << spec.name << "'; available: " << available_constructors();
    throw ParseError(msg.str());
}

}  // namespace qds::zoo
