// structure.hpp — State-space structure: decaying/recurrent split, enclosures,
// cut-off dual, fixed-point algebra, canonical block decomposition

#pragma once

#include "qds/channel.hpp"
#include "qds/density.hpp"
#include "qds/spectral.hpp"
#include "qds/subspace.hpp"

#include <cstdint>
#include <vector>

namespace qds {

// A block carrying exactly one stationary state whose range is the block.
struct UBlock {
    Subspace space;
    DensityMatrix stationary;  // ambient N x N, supported on the block
};

// A block isomorphic to C^m (x) V: m replica copies of a factor space V,
// a free m x m density coordinate, and a fixed reference state tau on V.
// The replica isometries (N x factor_dim each) are basis-dependent; only the
// block itself is canonical.
struct XBlock {
    Subspace space;
    int multiplicity{0};
    Index factor_dim{0};
    std::vector<Matrix> replica_isometries;
    DensityMatrix tau;  // factor_dim x factor_dim
};

struct StructureDecomposition {
    Subspace decaying;   // D
    Subspace recurrent;  // R = D^perp
    std::vector<UBlock> u_blocks;
    std::vector<XBlock> x_blocks;

    Index dim() const { return decaying.ambient; }
    // dim D + sum dim U_k + sum m(l) * dim V_l; equals the ambient dimension.
    Index dims_total() const;
    // Count of free real-parameter blocks in the stationary set, complexified:
    // (#U) + sum m(l)^2.
    Index stationary_parameter_count() const;
    std::vector<Subspace> central_blocks() const;  // U spaces then X spaces
};

// Coordinates of a stationary state: weights lambda_k on the U blocks and
// (mu_l, sigma_l) pairs on the X blocks.
struct CanonicalStationaryState {
    std::vector<double> lambda;
    std::vector<double> mu;
    std::vector<Matrix> sigma;  // each m(l) x m(l), density-normalized
};

struct SplitResult {
    Subspace decaying;
    Subspace recurrent;
};

// R = support of the time mean of the maximally mixed state; D = R^perp.
SplitResult split_decaying(const System& s, double rank_tol = 1e-8);

struct EnclosureCheck {
    bool enclosure{false};
    double leakage{0.0};
};

// True iff nothing leaves V: both the complement-diagonal part and the
// coherence part of the image of every M_V basis element vanish within tol.
EnclosureCheck is_enclosure(const System& s, const Subspace& v, double tol = 1e-8);

// Cut-off Heisenberg evolution compressed to R-coordinates, as a d_R^2 x d_R^2
// superoperator. R must be an enclosure; unital for channels, kernel-unital
// for generators.
Matrix cutoff_dual(const System& s, const Subspace& r, double tol = 1e-8);

struct FixedAlgebra {
    FixedSpace space;
    bool algebra_verified{false};  // products of basis pairs lie in the span
};

// Fixed operators of a cut-off dual superoperator, verified to close under
// multiplication.
FixedAlgebra fixed_point_algebra(const Matrix& cutoff_superop, TimeKind kind, double tol = 1e-8);

// The full pipeline: D/R split, cut-off dual, fixed-point algebra, central
// decomposition into U and X blocks with replica isometries and reference
// states.
StructureDecomposition decompose_structure(const System& s,
                                           const ToleranceSet& tol = ToleranceSet::defaults());

// sum_k lambda_k rho_k + sum_l mu_l (sigma_l (x) tau_l), embedded through the
// replica isometries.
DensityMatrix canonical_stationary(const StructureDecomposition& sd,
                                   const CanonicalStationaryState& coords);

// Inverse direction: extracts the coordinates of a fixed point and checks
// that cross-block compressions vanish.
CanonicalStationaryState stationary_coordinates(const System& s, const StructureDecomposition& sd,
                                                const DensityMatrix& rho, double tol = 1e-8);

// Independent cross-check for the central blocks: long time averaging done by
// operator doubling (no eigensolver on the superoperator), supports of many
// random pure-state limits, and merging of supports that carry mutual
// coherence. Returns the central blocks only; individual replicas are not
// comparable across methods.
std::vector<Subspace> minimal_enclosures_oracle(const System& s, int samples, std::uint64_t seed);

}  // namespace qds
