// coherence.hpp — Matrix-block machinery and the classification of coherence:
// block decompositions, rings and spheres of enclosures, symmetry unitaries,
// peripheral mode classification

#pragma once

#include "qds/channel.hpp"
#include "qds/spectral.hpp"
#include "qds/structure.hpp"
#include "qds/subspace.hpp"

#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace qds {

struct BlockDecomposition {
    Matrix vv;  // P_V M P_V
    Matrix ww;  // P_W M P_W
    Matrix c1;  // P_V M P_W
    Matrix c2;  // P_W M P_V
};

// The four compressions of M relative to an orthogonal pair (V, W).
// Reassembly is exact by construction.
BlockDecomposition block_decompose(const Matrix& m, const Subspace& v, const Subspace& w,
                                   double tol = 1e-10);

struct BlockPairReport {
    std::string from;
    std::string to;
    std::string section;   // "diagonal", "c1", "decay-coherence"
    double leakage{0.0};
    bool pass{false};
};

// Checks that the evolution maps each diagonal block section into itself,
// each C1 coherence section between distinct central blocks into itself, and
// that the (D, R) coherence never feeds back into M_D.
std::vector<BlockPairReport> verify_block_preservation(const System& s,
                                                       const StructureDecomposition& sd,
                                                       double tol = 1e-9,
                                                       std::uint64_t seed = 7);

// The unique (up to phase) fixed point of the C1 block map between two
// minimal enclosures, normalized to a partial isometry Q with Q Q^dag = P_V
// and Q^dag Q = P_W. Empty when the block map has no unit eigenvalue.
std::optional<Matrix> stationary_coherence(const System& s, const Subspace& v, const Subspace& w,
                                           double tol = 1e-7);

// A ring/sphere of minimal enclosures spanned by V, W and the partial
// isometry Q between them.
struct RingSphere {
    Subspace v;
    Subspace w;
    Matrix q;  // N x N partial isometry, Q Q^dag = P_V, Q^dag Q = P_W

    static RingSphere from_isometry(Subspace v, Subspace w, Matrix q, double tol = 1e-9);
    static RingSphere from_replicas(const XBlock& block, int alpha = 0, int beta = 1);
};

// P(alpha, z) = cos^2 a P_V + z sin a cos a Q + conj(z) sin a cos a Q^dag + sin^2 a P_W.
Matrix ring_projector(const RingSphere& rs, double alpha, Complex z);

struct RingUnitaries {
    Matrix u_alpha;  // rotation of the ring by alpha
    Matrix r_alpha;  // reflection 1 - 2 P(alpha)
};

RingUnitaries ring_unitaries(const RingSphere& rs, double alpha);

// Unitary mapping each subspace of decomp_b onto the matching subspace of
// decomp_a inside one X block, commuting with the evolution on M_R.
Matrix equivalence_unitary(const System& s, const StructureDecomposition& sd,
                           const std::vector<Subspace>& decomp_a,
                           const std::vector<Subspace>& decomp_b, double tol = 1e-8);

enum class ModeKind {
    stationary_state,
    stationary_coherence,
    rotating_coherence,
    intra_enclosure_oscillation,
    decaying_coherence_witness,
};

std::string to_string(ModeKind kind);

// Identifies a minimal block of the decomposition: D, a U block, or one
// replica of an X block. Replica identities are basis-dependent.
struct BlockId {
    enum class Kind { decaying, u, x_replica, x } kind{Kind::u};
    int block{-1};    // 0-based index into u_blocks / x_blocks
    int replica{-1};  // 0-based replica index for x_replica

    std::string label() const;  // "D", "U1", "X1.V2", "X1"
};

struct ModeClassification {
    ModeKind kind{ModeKind::stationary_state};
    BlockId from;
    BlockId to;
    Complex eigenvalue{0.0, 0.0};
    double frequency{0.0};  // arg(lambda) for discrete, Im(lambda) for continuous
    std::optional<std::pair<int, int>> root_of_unity;  // (q, m) for discrete intra modes
    double residual{0.0};
};

// Classifies peripheral modes against the decomposition. Degenerate
// eigenvalue clusters are re-based into section-pure combinations first so
// that every reported mode lives in a single matrix-block section.
std::vector<ModeClassification> classify_modes(const System& s, const StructureDecomposition& sd,
                                               const std::vector<EigenMode>& modes,
                                               double tol = 1e-7);

// For every central-block pair whose coherence block carries no peripheral
// mode, a witness that the block-restricted map is a strict contraction:
// eigenvalue = its dominant eigenvalue (spectral radius / abscissa).
std::vector<ModeClassification> decay_witnesses(const System& s, const StructureDecomposition& sd);

}  // namespace qds
