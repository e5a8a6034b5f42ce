// channel.hpp — CPTP channels, Lindblad generators, representation conversions,
// verification, and Schroedinger / Heisenberg application

#pragma once

#include "qds/density.hpp"
#include "qds/types.hpp"

#include <variant>
#include <vector>

namespace qds {

enum class TimeKind { discrete, continuous };

// A discrete-time channel. The superoperator is always present and is the
// authoritative representation for spectral work; the Kraus list witnesses
// complete positivity when the channel was built from one.
struct QuantumChannel {
    Index dim{0};
    std::vector<Matrix> kraus;  // empty when built from a superoperator
    Matrix superop;             // N^2 x N^2

    static QuantumChannel from_kraus(std::vector<Matrix> kraus);
    static QuantumChannel from_superop(Matrix superop);
    static QuantumChannel identity(Index dim);

    // Schroedinger picture T(x).
    Matrix apply(const Matrix& x) const;
    // Heisenberg picture, Tr(T^dag(a) rho) = Tr(a T(rho)). Under column
    // stacking this is the matrix adjoint of the superoperator.
    Matrix apply_adjoint(const Matrix& a) const;
};

// A continuous-time generator. `has_parts` is false when only the
// superoperator matrix is known.
struct LindbladGenerator {
    Index dim{0};
    Matrix hamiltonian;         // N x N Hermitian (units of inverse time)
    std::vector<Matrix> jumps;  // N x N (units of inverse sqrt time)
    Matrix superop;             // N^2 x N^2
    bool has_parts{true};

    static LindbladGenerator from_parts(Matrix hamiltonian, std::vector<Matrix> jumps,
                                        double herm_tol = 1e-9);
    static LindbladGenerator from_superop(Matrix superop);

    Matrix apply(const Matrix& x) const;          // L(x)
    Matrix apply_adjoint(const Matrix& a) const;  // L^dag(a)
};

// Either kind of system. A wrapper (not a bare variant alias) so that
// unqualified calls like apply(system, x) resolve inside this namespace.
struct System {
    std::variant<QuantumChannel, LindbladGenerator> value;

    System(QuantumChannel ch) : value(std::move(ch)) {}
    System(LindbladGenerator gen) : value(std::move(gen)) {}

    const QuantumChannel* channel() const { return std::get_if<QuantumChannel>(&value); }
    const LindbladGenerator* generator() const { return std::get_if<LindbladGenerator>(&value); }

    Matrix apply(const Matrix& x) const;
    Matrix apply_adjoint(const Matrix& a) const;
};

TimeKind time_kind(const System& s);
Index dim_of(const System& s);
const Matrix& superop_of(const System& s);

// Superoperator of rho -> sum_k K_k rho K_k^dagger; exactly sum conj(K) (x) K.
Matrix kraus_to_superop(const std::vector<Matrix>& kraus);

// Superoperator of the Lindblad form
//   L(rho) = -i[H, rho] + sum_k (L_k rho L_k^dagger - 1/2 {L_k^dagger L_k, rho}).
Matrix lindblad_superop_matrix(const Matrix& hamiltonian, const std::vector<Matrix>& jumps);

// Spec-facing constructor: validates H and wraps the superoperator.
LindbladGenerator lindblad_superop(const Matrix& hamiltonian, std::vector<Matrix> jumps);

// Choi matrix C = sum_ij |i><j| (x) T(|i><j|).
Matrix choi_of(const QuantumChannel& channel);
Matrix choi_from_superop(const Matrix& superop);
Matrix superop_from_choi(const Matrix& choi);

// Kraus operators from the Choi eigendecomposition. Eigenvalues in
// [-psd_tol, psd_tol] are discarded; anything below -psd_tol means the map
// is not completely positive and is rejected.
std::vector<Matrix> kraus_from_choi(const Matrix& choi, double psd_tol = 1e-9);

struct VerificationReport {
    bool cp{false};
    bool tp{false};
    double min_choi_eig{0.0};
    double tp_defect{0.0};

    bool ok() const { return cp && tp; }
};

// Never throws: reports the witnessed numbers.
VerificationReport verify_cptp(const QuantumChannel& channel, double tol = 1e-9);
VerificationReport verify_cptp(const System& s, double tol = 1e-9);

struct GeneratorReport {
    bool hermitian{false};
    bool trace_annihilating{false};
    double herm_defect{0.0};
    double trace_defect{0.0};

    bool ok() const { return hermitian && trace_annihilating; }
};

GeneratorReport verify_generator(const LindbladGenerator& gen, double tol = 1e-9);

// True when the system passes its verification contract.
bool system_verified(const System& s, double tol = 1e-9);

// The semigroup element exp(t L) as a discrete channel snapshot; t >= 0.
QuantumChannel exp_generator(const LindbladGenerator& gen, double t);

}  // namespace qds
