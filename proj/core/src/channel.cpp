// channel.cpp — Channel and generator representations, conversions, verification

#include "qds/channel.hpp"

#include <unsupported/Eigen/MatrixFunctions>

#include <sstream>
#include <stdexcept>

namespace qds {

namespace {

void require_square_same_dim(const std::vector<Matrix>& mats, const char* what) {
    if (mats.empty()) {
        throw std::invalid_argument(std::string(what) + ": empty operator list");
    }
    const Index n = mats.front().rows();
    if (n < 1) {
        throw std::invalid_argument(std::string(what) + ": dimension must be >= 1");
    }
    for (const auto& m : mats) {
        if (m.rows() != n || m.cols() != n) {
            throw std::invalid_argument(std::string(what) + ": operators must be square and of equal dimension");
        }
        if (!all_finite(m)) {
            throw std::invalid_argument(std::string(what) + ": non-finite entries");
        }
    }
}

}  // namespace

QuantumChannel QuantumChannel::from_kraus(std::vector<Matrix> kraus) {
    require_square_same_dim(kraus, "from_kraus");
    QuantumChannel ch;
    ch.dim = kraus.front().rows();
    ch.superop = kraus_to_superop(kraus);
    ch.kraus = std::move(kraus);
    return ch;
}

QuantumChannel QuantumChannel::from_superop(Matrix superop) {
    QuantumChannel ch;
    ch.dim = superop_side(superop);
    if (!all_finite(superop)) {
        throw std::invalid_argument("from_superop: non-finite entries");
    }
    ch.superop = std::move(superop);
    return ch;
}

QuantumChannel QuantumChannel::identity(Index dim) {
    return from_kraus({Matrix::Identity(dim, dim)});
}

LindbladGenerator LindbladGenerator::from_parts(Matrix hamiltonian, std::vector<Matrix> jumps,
                                                double herm_tol) {
    if (hamiltonian.rows() != hamiltonian.cols() || hamiltonian.rows() < 1) {
        throw std::invalid_argument("from_parts: Hamiltonian must be square and non-empty");
    }
    if (!is_hermitian(hamiltonian, herm_tol)) {
        throw std::invalid_argument("from_parts: Hamiltonian is not Hermitian within tolerance");
    }
    const Index n = hamiltonian.rows();
    for (const auto& j : jumps) {
        if (j.rows() != n || j.cols() != n) {
            throw std::invalid_argument("from_parts: jump operator dimension mismatch");
        }
        if (!all_finite(j)) {
            throw std::invalid_argument("from_parts: non-finite jump entries");
        }
    }
    LindbladGenerator gen;
    gen.dim = n;
    gen.superop = lindblad_superop_matrix(hamiltonian, jumps);
    gen.hamiltonian = std::move(hamiltonian);
    gen.jumps = std::move(jumps);
    gen.has_parts = true;
    return gen;
}

LindbladGenerator LindbladGenerator::from_superop(Matrix superop) {
    LindbladGenerator gen;
    gen.dim = superop_side(superop);
    if (!all_finite(superop)) {
        throw std::invalid_argument("from_superop: non-finite entries");
    }
    gen.hamiltonian = Matrix::Zero(gen.dim, gen.dim);
    gen.superop = std::move(superop);
    gen.has_parts = false;
    return gen;
}

TimeKind time_kind(const System& s) {
    return s.channel() != nullptr ? TimeKind::discrete : TimeKind::continuous;
}

Index dim_of(const System& s) {
    return std::visit([](const auto& v) { return v.dim; }, s.value);
}

const Matrix& superop_of(const System& s) {
    return std::visit([](const auto& v) -> const Matrix& { return v.superop; }, s.value);
}

Matrix kraus_to_superop(const std::vector<Matrix>& kraus) {
    require_square_same_dim(kraus, "kraus_to_superop");
    const Index n = kraus.front().rows();
    Matrix s = Matrix::Zero(n * n, n * n);
    for (const auto& k : kraus) {
        s += kron(k.conjugate(), k);
    }
    return s;
}

Matrix lindblad_superop_matrix(const Matrix& h, const std::vector<Matrix>& jumps) {
    const Index n = h.rows();
    const Matrix eye = Matrix::Identity(n, n);
    const Complex i_unit(0.0, 1.0);
    // -i[H, rho]  ->  -i (1 (x) H) + i (H^T (x) 1)
    Matrix s = -i_unit * kron(eye, h) + i_unit * kron(h.transpose(), eye);
    for (const auto& l : jumps) {
        const Matrix ldl = l.adjoint() * l;
        s += kron(l.conjugate(), l);
        s -= 0.5 * kron(eye, ldl);
        s -= 0.5 * kron(ldl.transpose(), eye);
    }
    return s;
}

LindbladGenerator lindblad_superop(const Matrix& hamiltonian, std::vector<Matrix> jumps) {
    return LindbladGenerator::from_parts(hamiltonian, std::move(jumps));
}

Matrix choi_from_superop(const Matrix& superop) {
    const Index n = superop_side(superop);
    Matrix choi(n * n, n * n);
    for (Index i = 0; i < n; ++i) {
        for (Index j = 0; j < n; ++j) {
            // vec(|i><j|) = e_j (x) e_i sits at column j*n + i.
            const Vector col = superop.col(j * n + i);
            choi.block(i * n, j * n, n, n) = unvec(col, n, n);
        }
    }
    return choi;
}

Matrix superop_from_choi(const Matrix& choi) {
    const Index n = superop_side(choi);
    Matrix s(n * n, n * n);
    for (Index i = 0; i < n; ++i) {
        for (Index j = 0; j < n; ++j) {
            const Matrix block = choi.block(i * n, j * n, n, n);
            s.col(j * n + i) = vec(block);
        }
    }
    return s;
}

Matrix choi_of(const QuantumChannel& channel) {
    return choi_from_superop(channel.superop);
}

std::vector<Matrix> kraus_from_choi(const Matrix& choi, double psd_tol) {
    const Index n = superop_side(choi);
    Eigen::SelfAdjointEigenSolver<Matrix> es(hermitize(choi));
    std::vector<Matrix> kraus;
    for (Index i = 0; i < es.eigenvalues().size(); ++i) {
        const double lambda = es.eigenvalues()(i);
        if (lambda < -psd_tol) {
            std::ostringstream msg;
            msg << "kraus_from_choi: Choi eigenvalue " << lambda << " below -" << psd_tol
                << "; map is not completely positive";
            throw std::invalid_argument(msg.str());
        }
        if (lambda > psd_tol) {
            const Vector v = es.eigenvectors().col(i) * std::sqrt(lambda);
            kraus.push_back(unvec(v, n, n));
        }
    }
    if (kraus.empty()) {
        kraus.push_back(Matrix::Zero(n, n));
    }
    return kraus;
}

VerificationReport verify_cptp(const QuantumChannel& channel, double tol) {
    VerificationReport report;
    report.min_choi_eig = min_hermitian_eigenvalue(choi_of(channel));
    report.cp = report.min_choi_eig >= -tol;
    if (!channel.kraus.empty()) {
        Matrix sum = Matrix::Zero(channel.dim, channel.dim);
        for (const auto& k : channel.kraus) {
            sum += k.adjoint() * k;
        }
        report.tp_defect = (sum - Matrix::Identity(channel.dim, channel.dim)).norm();
    } else {
        // Trace preservation in superoperator terms: S^dag vec(1) = vec(1).
        const Vector vec_id = vec(Matrix::Identity(channel.dim, channel.dim));
        report.tp_defect = (channel.superop.adjoint() * vec_id - vec_id).norm();
    }
    report.tp = report.tp_defect <= tol;
    return report;
}

VerificationReport verify_cptp(const System& s, double tol) {
    if (const auto* ch = s.channel()) {
        return verify_cptp(*ch, tol);
    }
    // Generators map onto the channel-style report via their own invariants.
    const auto& gen = *s.generator();
    const GeneratorReport gr = verify_generator(gen, tol);
    VerificationReport report;
    report.cp = gr.hermitian;
    report.tp = gr.trace_annihilating;
    report.min_choi_eig = 0.0;
    report.tp_defect = gr.trace_defect;
    return report;
}

GeneratorReport verify_generator(const LindbladGenerator& gen, double tol) {
    GeneratorReport report;
    report.herm_defect = gen.has_parts ? hermiticity_defect(gen.hamiltonian) : 0.0;
    report.hermitian = report.herm_defect <= tol;
    // |Tr L(X)| <= ||S^dag vec(1)|| * ||X||_F, with equality attained.
    const Vector vec_id = vec(Matrix::Identity(gen.dim, gen.dim));
    report.trace_defect = (gen.superop.adjoint() * vec_id).norm();
    report.trace_annihilating = report.trace_defect <= tol;
    return report;
}

bool system_verified(const System& s, double tol) {
    if (const auto* ch = s.channel()) {
        return verify_cptp(*ch, tol).ok();
    }
    return verify_generator(*s.generator(), tol).ok();
}

namespace {

Matrix apply_superop(const Matrix& superop, Index dim, const Matrix& x, const char* what) {
    if (x.rows() != dim || x.cols() != dim) {
        throw std::invalid_argument(std::string(what) + ": operand dimension mismatch");
    }
    return unvec(superop * vec(x), dim, dim);
}

}  // namespace

Matrix QuantumChannel::apply(const Matrix& x) const {
    return apply_superop(superop, dim, x, "apply");
}

Matrix QuantumChannel::apply_adjoint(const Matrix& a) const {
    return apply_superop(superop.adjoint(), dim, a, "apply_adjoint");
}

Matrix LindbladGenerator::apply(const Matrix& x) const {
    return apply_superop(superop, dim, x, "apply");
}

Matrix LindbladGenerator::apply_adjoint(const Matrix& a) const {
    return apply_superop(superop.adjoint(), dim, a, "apply_adjoint");
}

Matrix System::apply(const Matrix& x) const {
    return apply_superop(superop_of(*this), dim_of(*this), x, "apply");
}

Matrix System::apply_adjoint(const Matrix& a) const {
    return apply_superop(superop_of(*this).adjoint(), dim_of(*this), a, "apply_adjoint");
}

QuantumChannel exp_generator(const LindbladGenerator& gen, double t) {
    if (t < 0.0) {
        throw std::invalid_argument("exp_generator: t must be >= 0");
    }
    const Matrix scaled = t * gen.superop;
    return QuantumChannel::from_superop(scaled.exp());
}

}  // namespace qds
