// coherence.cpp — Coherence blocks, rings and spheres, equivalence unitaries,
// and peripheral mode classification

#include "qds/coherence.hpp"

#include "qds/errors.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/QR>
#include <Eigen/SVD>

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>
#include <set>
#include <sstream>

namespace qds {

namespace {

bool near_unit_eigenvalue(Complex lambda, TimeKind kind, double tol) {
    return kind == TimeKind::discrete ? std::abs(lambda - Complex(1.0, 0.0)) <= tol
                                      : std::abs(lambda) <= tol;
}

// Superoperator of the C1 block map X -> B_v^dag T(B_v X B_w^dag) B_w,
// acting on d_v x d_w matrices.
Matrix block_map(const Matrix& superop, const Subspace& v, const Subspace& w) {
    const Matrix embed = kron(w.basis.conjugate(), v.basis);  // N^2 x (d_v d_w)
    return embed.adjoint() * superop * embed;
}

}  // namespace

BlockDecomposition block_decompose(const Matrix& m, const Subspace& v, const Subspace& w,
                                   double tol) {
    if (m.rows() != v.ambient || m.cols() != v.ambient || w.ambient != v.ambient) {
        throw std::invalid_argument("block_decompose: dimension mismatch");
    }
    if (!v.orthogonal_to(w, tol)) {
        throw std::invalid_argument("block_decompose: subspaces are not orthogonal");
    }
    BlockDecomposition parts;
    parts.vv = v.projector * m * v.projector;
    parts.ww = w.projector * m * w.projector;
    parts.c1 = v.projector * m * w.projector;
    parts.c2 = w.projector * m * v.projector;
    return parts;
}

std::vector<BlockPairReport> verify_block_preservation(const System& s,
                                                       const StructureDecomposition& sd,
                                                       double tol, std::uint64_t seed) {
    const Index n = dim_of(s);
    SplitMix64 rng(seed);

    std::vector<std::pair<std::string, Subspace>> blocks;
    for (std::size_t k = 0; k < sd.u_blocks.size(); ++k) {
        blocks.emplace_back("U" + std::to_string(k + 1), sd.u_blocks[k].space);
    }
    for (std::size_t l = 0; l < sd.x_blocks.size(); ++l) {
        blocks.emplace_back("X" + std::to_string(l + 1), sd.x_blocks[l].space);
    }

    constexpr int kSamples = 3;
    std::vector<BlockPairReport> reports;

    const auto probe = [&](const Matrix& left, const Matrix& right, const Matrix& keep_left,
                           const Matrix& keep_right, bool complement) {
        double worst = 0.0;
        for (int t = 0; t < kSamples; ++t) {
            Matrix x = left * random_matrix(rng, n, n) * right;
            const double norm = x.norm();
            if (norm == 0.0) {
                continue;
            }
            x /= norm;
            const Matrix y = s.apply(x);
            const double leak =
                complement ? (keep_left * y * keep_right).norm()
                           : (y - keep_left * y * keep_right).norm();
            worst = std::max(worst, leak);
        }
        return worst;
    };

    for (std::size_t i = 0; i < blocks.size(); ++i) {
        for (std::size_t j = 0; j < blocks.size(); ++j) {
            const Matrix& pi = blocks[i].second.projector;
            const Matrix& pj = blocks[j].second.projector;
            BlockPairReport rep;
            rep.from = blocks[i].first;
            rep.to = blocks[j].first;
            rep.section = i == j ? "diagonal" : "c1";
            rep.leakage = probe(pi, pj, pi, pj, false);
            rep.pass = rep.leakage <= tol;
            reports.push_back(std::move(rep));
        }
    }
    if (sd.decaying.dim() > 0) {
        // One-way statement only: the (D, R) coherence never feeds M_D.
        BlockPairReport rep;
        rep.from = "D";
        rep.to = "R";
        rep.section = "decay-coherence";
        rep.leakage = probe(sd.decaying.projector, sd.recurrent.projector, sd.decaying.projector,
                            sd.decaying.projector, true);
        rep.pass = rep.leakage <= tol;
        reports.push_back(std::move(rep));
    }
    return reports;
}

std::optional<Matrix> stationary_coherence(const System& s, const Subspace& v, const Subspace& w,
                                           double tol) {
    const Index n = dim_of(s);
    if (v.ambient != n || w.ambient != n || v.dim() == 0 || w.dim() == 0) {
        throw std::invalid_argument("stationary_coherence: bad subspace dimensions");
    }
    if (!v.orthogonal_to(w, 1e-10)) {
        throw std::invalid_argument("stationary_coherence: subspaces are not orthogonal");
    }
    if (!is_enclosure(s, v, 1e-8).enclosure || !is_enclosure(s, w, 1e-8).enclosure) {
        throw std::invalid_argument("stationary_coherence: inputs must be enclosures");
    }
    const TimeKind kind = time_kind(s);
    const Matrix blk = block_map(superop_of(s), v, w);
    Eigen::ComplexEigenSolver<Matrix> es(blk);
    if (es.info() != Eigen::Success) {
        throw StructuralInconsistency("stationary_coherence: eigensolver failed");
    }
    std::vector<Index> unit;
    for (Index i = 0; i < es.eigenvalues().size(); ++i) {
        if (near_unit_eigenvalue(es.eigenvalues()(i), kind, tol)) {
            unit.push_back(i);
        }
    }
    if (unit.empty()) {
        return std::nullopt;
    }
    if (unit.size() > 1) {
        throw StructuralInconsistency(
            "stationary_coherence: fixed coherence space has dimension > 1; "
            "inputs are not minimal enclosures");
    }
    if (v.dim() != w.dim()) {
        throw StructuralInconsistency(
            "stationary_coherence: fixed coherence between spaces of different dimension");
    }
    const Matrix q_raw = unvec(es.eigenvectors().col(unit.front()), v.dim(), w.dim());
    Eigen::JacobiSVD<Matrix> svd(q_raw, Eigen::ComputeFullU | Eigen::ComputeFullV);
    const auto& sv = svd.singularValues();
    if ((sv(0) - sv(sv.size() - 1)) > 1e-6 * sv(0)) {
        throw StructuralInconsistency(
            "stationary_coherence: fixed coherence is not a multiple of an isometry");
    }
    const Matrix q = v.basis * (svd.matrixU() * svd.matrixV().adjoint()) * w.basis.adjoint();
    if ((q * q.adjoint() - v.projector).norm() > 1e-8 ||
        (q.adjoint() * q - w.projector).norm() > 1e-8) {
        throw StructuralInconsistency("stationary_coherence: polar part is not a partial isometry");
    }
    return q;
}

RingSphere RingSphere::from_isometry(Subspace v, Subspace w, Matrix q, double tol) {
    if ((q * q.adjoint() - v.projector).norm() > tol ||
        (q.adjoint() * q - w.projector).norm() > tol) {
        throw std::invalid_argument("RingSphere: Q is not a partial isometry between V and W");
    }
    RingSphere rs;
    rs.v = std::move(v);
    rs.w = std::move(w);
    rs.q = std::move(q);
    return rs;
}

RingSphere RingSphere::from_replicas(const XBlock& block, int alpha, int beta) {
    const int m = block.multiplicity;
    if (alpha < 0 || beta < 0 || alpha >= m || beta >= m || alpha == beta) {
        throw std::invalid_argument("RingSphere: bad replica indices");
    }
    const Matrix& ja = block.replica_isometries[static_cast<std::size_t>(alpha)];
    const Matrix& jb = block.replica_isometries[static_cast<std::size_t>(beta)];
    return from_isometry(Subspace::from_basis(ja), Subspace::from_basis(jb),
                         ja * jb.adjoint(), 1e-9);
}

Matrix ring_projector(const RingSphere& rs, double alpha, Complex z) {
    if (std::abs(std::abs(z) - 1.0) > 1e-12) {
        throw std::invalid_argument("ring_projector: z must lie on the unit circle");
    }
    const double c = std::cos(alpha);
    const double sn = std::sin(alpha);
    return c * c * rs.v.projector + z * sn * c * rs.q + std::conj(z) * sn * c * rs.q.adjoint() +
           sn * sn * rs.w.projector;
}

RingUnitaries ring_unitaries(const RingSphere& rs, double alpha) {
    const Index n = rs.v.ambient;
    const Matrix eye = Matrix::Identity(n, n);
    const Matrix r0 = eye - 2.0 * ring_projector(rs, 0.0, 1.0);
    RingUnitaries out;
    out.r_alpha = eye - 2.0 * ring_projector(rs, alpha, 1.0);
    out.u_alpha = (eye - 2.0 * ring_projector(rs, alpha / 2.0, 1.0)) * r0;
    return out;
}

namespace {

// Extract the C^m coordinate of a minimal enclosure inside an X block: the
// subspace must equal (u (x) 1_f) applied to the replica frame, and u is the
// top eigenvector of the replica Gram matrix.
Vector replica_coordinate(const XBlock& x, const Subspace& sub) {
    const int m = x.multiplicity;
    const Index f = x.factor_dim;
    if (sub.dim() != f) {
        throw StructuralInconsistency(
            "equivalence_unitary: subspace dimension does not match the block factor");
    }
    Matrix gram(m, m);
    std::vector<Matrix> coords;
    for (int a = 0; a < m; ++a) {
        coords.push_back(x.replica_isometries[static_cast<std::size_t>(a)].adjoint() * sub.basis);
    }
    for (int a = 0; a < m; ++a) {
        for (int b = 0; b < m; ++b) {
            gram(a, b) = (coords[static_cast<std::size_t>(a)] *
                          coords[static_cast<std::size_t>(b)].adjoint())
                             .trace() /
                         static_cast<double>(f);
        }
    }
    Eigen::SelfAdjointEigenSolver<Matrix> es(hermitize(gram));
    const Index top = es.eigenvalues().size() - 1;
    if (es.eigenvalues()(top) < 1.0 - 1e-6 ||
        (top > 0 && es.eigenvalues()(top - 1) > 1e-6)) {
        throw StructuralInconsistency(
            "equivalence_unitary: subspace is not a minimal enclosure of this block "
            "(no connecting ring)");
    }
    Vector u = es.eigenvectors().col(top);
    // Deterministic phase: largest component real positive.
    Index imax = 0;
    for (Index i = 1; i < u.size(); ++i) {
        if (std::abs(u(i)) > std::abs(u(imax))) {
            imax = i;
        }
    }
    u *= std::conj(u(imax)) / std::abs(u(imax));
    return u;
}

}  // namespace

Matrix equivalence_unitary(const System& s, const StructureDecomposition& sd,
                           const std::vector<Subspace>& decomp_a,
                           const std::vector<Subspace>& decomp_b, double tol) {
    const Index n = dim_of(s);
    if (decomp_a.empty() || decomp_a.size() != decomp_b.size()) {
        throw StructuralInconsistency("equivalence_unitary: decompositions of different size");
    }
    for (const auto& list : {decomp_a, decomp_b}) {
        for (const auto& sub : list) {
            if (!is_enclosure(s, sub, 1e-7).enclosure) {
                throw StructuralInconsistency(
                    "equivalence_unitary: input subspace is not an enclosure");
            }
        }
    }

    // Both decompositions must span the same X block.
    const auto span_of = [n](const std::vector<Subspace>& list) {
        Matrix p = Matrix::Zero(n, n);
        for (const auto& sub : list) {
            p += sub.projector;
        }
        return p;
    };
    const Matrix pa = span_of(decomp_a);
    const Matrix pb = span_of(decomp_b);
    if ((pa - pb).norm() > 1e-7) {
        throw StructuralInconsistency("equivalence_unitary: decompositions span different spaces");
    }
    const XBlock* block = nullptr;
    for (const auto& x : sd.x_blocks) {
        if ((pa - x.space.projector).norm() <= 1e-6) {
            block = &x;
            break;
        }
    }

    // Identical decompositions: nothing to rotate.
    std::vector<std::size_t> pairing(decomp_a.size());
    std::vector<bool> used(decomp_b.size(), false);
    for (std::size_t i = 0; i < decomp_a.size(); ++i) {
        double best = -1.0;
        std::size_t best_j = 0;
        for (std::size_t j = 0; j < decomp_b.size(); ++j) {
            if (used[j]) {
                continue;
            }
            const double ov = decomp_a[i].overlap(decomp_b[j]);
            if (ov > best) {
                best = ov;
                best_j = j;
            }
        }
        pairing[i] = best_j;
        used[best_j] = true;
    }
    bool identical = true;
    for (std::size_t i = 0; i < decomp_a.size(); ++i) {
        if (projector_distance(decomp_a[i], decomp_b[pairing[i]]) > 1e-9) {
            identical = false;
            break;
        }
    }
    if (identical) {
        return Matrix::Identity(n, n);
    }
    if (block == nullptr) {
        throw StructuralInconsistency(
            "equivalence_unitary: differing decompositions outside any X block; "
            "the splitting is unique and no ring connects them");
    }
    const int m = block->multiplicity;
    if (static_cast<int>(decomp_a.size()) != m) {
        throw StructuralInconsistency("equivalence_unitary: expected one subspace per replica");
    }

    Matrix u_mat(m, m);
    Matrix v_mat(m, m);
    for (std::size_t i = 0; i < decomp_a.size(); ++i) {
        v_mat.col(static_cast<Index>(i)) = replica_coordinate(*block, decomp_a[i]);
        u_mat.col(static_cast<Index>(i)) = replica_coordinate(*block, decomp_b[pairing[i]]);
    }
    if ((u_mat.adjoint() * u_mat - Matrix::Identity(m, m)).norm() > 1e-7 ||
        (v_mat.adjoint() * v_mat - Matrix::Identity(m, m)).norm() > 1e-7) {
        throw StructuralInconsistency("equivalence_unitary: replica coordinates not orthonormal");
    }
    const Matrix rot = v_mat * u_mat.adjoint();  // maps u_j -> v_j in C^m

    Matrix u = Matrix::Identity(n, n) - block->space.projector;
    for (int a = 0; a < m; ++a) {
        for (int b = 0; b < m; ++b) {
            u += rot(a, b) * block->replica_isometries[static_cast<std::size_t>(a)] *
                 block->replica_isometries[static_cast<std::size_t>(b)].adjoint();
        }
    }

    // Postconditions: subspace mapping and commutation with the evolution.
    for (std::size_t i = 0; i < decomp_a.size(); ++i) {
        const Matrix mapped = u * decomp_b[pairing[i]].projector * u.adjoint();
        if ((mapped - decomp_a[i].projector).norm() > 1e-8 * std::sqrt(static_cast<double>(n))) {
            throw StructuralInconsistency("equivalence_unitary: unitary does not map the subspaces");
        }
    }
    SplitMix64 rng(0xe91a7e5eedULL);
    for (int t = 0; t < 5; ++t) {
        const Matrix g = random_matrix(rng, n, n);
        const Matrix x = sd.recurrent.projector * g * sd.recurrent.projector;
        const Matrix lhs = s.apply(Matrix(u * x * u.adjoint()));
        const Matrix rhs = u * s.apply(x) * u.adjoint();
        if ((lhs - rhs).norm() > std::max(tol, 1e-8) * std::max(1.0, x.norm())) {
            throw StructuralInconsistency(
                "equivalence_unitary: unitary does not commute with the evolution on M_R");
        }
    }
    return u;
}

std::string to_string(ModeKind kind) {
    switch (kind) {
        case ModeKind::stationary_state: return "stationary_state";
        case ModeKind::stationary_coherence: return "stationary_coherence";
        case ModeKind::rotating_coherence: return "rotating_coherence";
        case ModeKind::intra_enclosure_oscillation: return "intra_enclosure_oscillation";
        case ModeKind::decaying_coherence_witness: return "decaying_coherence_witness";
    }
    return "unknown";
}

std::string BlockId::label() const {
    switch (kind) {
        case Kind::decaying: return "D";
        case Kind::u: return "U" + std::to_string(block + 1);
        case Kind::x: return "X" + std::to_string(block + 1);
        case Kind::x_replica:
            return "X" + std::to_string(block + 1) + ".V" + std::to_string(replica + 1);
    }
    return "?";
}

namespace {

struct MinimalBlock {
    BlockId id;
    Subspace space;
};

std::vector<MinimalBlock> minimal_blocks(const StructureDecomposition& sd) {
    std::vector<MinimalBlock> blocks;
    for (std::size_t k = 0; k < sd.u_blocks.size(); ++k) {
        blocks.push_back({BlockId{BlockId::Kind::u, static_cast<int>(k), -1}, sd.u_blocks[k].space});
    }
    for (std::size_t l = 0; l < sd.x_blocks.size(); ++l) {
        const XBlock& x = sd.x_blocks[l];
        for (int a = 0; a < x.multiplicity; ++a) {
            blocks.push_back(
                {BlockId{BlockId::Kind::x_replica, static_cast<int>(l), a},
                 Subspace::from_basis(x.replica_isometries[static_cast<std::size_t>(a)])});
        }
    }
    if (sd.decaying.dim() > 0) {
        blocks.push_back({BlockId{BlockId::Kind::decaying, -1, -1}, sd.decaying});
    }
    return blocks;
}

std::optional<std::pair<int, int>> fit_root_of_unity(Complex lambda, Index enclosure_dim,
                                                     double tol) {
    for (int m = 2; m <= static_cast<int>(enclosure_dim); ++m) {
        for (int q = 1; q < m; ++q) {
            const double angle = 2.0 * std::numbers::pi * q / m;
            if (std::abs(lambda - std::polar(1.0, angle)) <= tol) {
                return std::make_pair(q, m);
            }
        }
    }
    return std::nullopt;
}

}  // namespace

std::vector<ModeClassification> classify_modes(const System& s, const StructureDecomposition& sd,
                                               const std::vector<EigenMode>& modes, double tol) {
    const Index n = dim_of(s);
    const TimeKind kind = time_kind(s);
    const Matrix& superop = superop_of(s);
    const auto blocks = minimal_blocks(sd);

    // Group modes into eigenvalue clusters; degenerate clusters are re-based
    // into section-pure combinations below.
    std::vector<std::vector<const EigenMode*>> clusters;
    std::vector<Complex> centroids;
    for (const auto& mode : modes) {
        bool placed = false;
        for (std::size_t c = 0; c < clusters.size(); ++c) {
            if (std::abs(mode.eigenvalue - centroids[c]) <= 1e-7) {
                clusters[c].push_back(&mode);
                placed = true;
                break;
            }
        }
        if (!placed) {
            clusters.push_back({&mode});
            centroids.push_back(mode.eigenvalue);
        }
    }

    std::vector<ModeClassification> out;
    for (std::size_t c = 0; c < clusters.size(); ++c) {
        const auto r = static_cast<Index>(clusters[c].size());
        Matrix raw(n * n, r);
        for (Index i = 0; i < r; ++i) {
            raw.col(i) = vec(clusters[c][static_cast<std::size_t>(i)]->eigenmatrix);
        }
        // Orthonormal basis of the cluster eigenspace.
        Eigen::HouseholderQR<Matrix> qr(raw);
        const Matrix v = qr.householderQ() * Matrix::Identity(n * n, r);
        const Complex lambda = centroids[c];

        Index found = 0;
        for (std::size_t a = 0; a < blocks.size(); ++a) {
            for (std::size_t b = 0; b < blocks.size(); ++b) {
                const Matrix& p_left = blocks[a].space.projector;
                const Matrix& p_right = blocks[b].space.projector;
                Matrix defect(n * n, r);
                for (Index i = 0; i < r; ++i) {
                    const Matrix m_i = unvec(v.col(i), n, n);
                    defect.col(i) = vec(Matrix(m_i - p_left * m_i * p_right));
                }
                // Combinations annihilated by the out-of-section defect are
                // pure (a, b)-section modes.
                Eigen::JacobiSVD<Matrix> svd(defect, Eigen::ComputeFullV);
                std::vector<Index> pure;
                for (Index i = 0; i < svd.singularValues().size(); ++i) {
                    if (svd.singularValues()(i) <= 1e-6) {
                        pure.push_back(i);
                    }
                }
                for (Index pi : pure) {
                    const Vector combo = v * svd.matrixV().col(pi);
                    ++found;

                    ModeClassification cls;
                    cls.eigenvalue = lambda;
                    cls.residual = (superop * combo - lambda * combo).norm();
                    cls.from = blocks[a].id;
                    cls.to = blocks[b].id;
                    cls.frequency = kind == TimeKind::discrete ? std::arg(lambda) : lambda.imag();

                    const bool unit = near_unit_eigenvalue(lambda, kind, std::max(tol, 1e-7));
                    if (blocks[a].id.kind == BlockId::Kind::decaying ||
                        blocks[b].id.kind == BlockId::Kind::decaying) {
                        throw StructuralInconsistency(
                            "classify_modes: peripheral mode touches the decaying subspace");
                    }
                    if (a == b) {
                        if (unit) {
                            cls.kind = ModeKind::stationary_state;
                        } else if (kind == TimeKind::continuous) {
                            throw StructuralInconsistency(
                                "classify_modes: oscillation inside a minimal enclosure in "
                                "continuous time");
                        } else {
                            cls.kind = ModeKind::intra_enclosure_oscillation;
                            cls.root_of_unity =
                                fit_root_of_unity(lambda, blocks[a].space.dim(), 1e-7);
                            if (!cls.root_of_unity) {
                                throw StructuralInconsistency(
                                    "classify_modes: intra-enclosure eigenvalue is not a root of "
                                    "unity of admissible order");
                            }
                        }
                    } else {
                        if (unit) {
                            const bool same_x =
                                blocks[a].id.kind == BlockId::Kind::x_replica &&
                                blocks[b].id.kind == BlockId::Kind::x_replica &&
                                blocks[a].id.block == blocks[b].id.block;
                            if (!same_x) {
                                throw StructuralInconsistency(
                                    "classify_modes: stationary coherence between distinct "
                                    "central blocks");
                            }
                            cls.kind = ModeKind::stationary_coherence;
                        } else {
                            cls.kind = ModeKind::rotating_coherence;
                        }
                    }
                    out.push_back(std::move(cls));
                }
            }
        }
        if (found != r) {
            std::ostringstream msg;
            msg << "classify_modes: eigenvalue cluster at (" << lambda.real() << ", "
                << lambda.imag() << ") has " << (r - found)
                << " mode(s) straddling block sections";
            throw StructuralInconsistency(msg.str());
        }
    }

    // Continuous time: at most one frequency (stationary or rotating) per
    // ordered coherence section.
    if (kind == TimeKind::continuous) {
        std::map<std::pair<std::string, std::string>, std::set<long long>> freqs;
        for (const auto& cls : out) {
            if (cls.kind == ModeKind::rotating_coherence ||
                cls.kind == ModeKind::stationary_coherence) {
                const auto key = std::make_pair(cls.from.label(), cls.to.label());
                freqs[key].insert(std::llround(cls.frequency / 1e-7));
                if (freqs[key].size() > 1) {
                    throw StructuralInconsistency(
                        "classify_modes: two different coherence behaviors in one block pair "
                        "in continuous time");
                }
            }
        }
    }
    return out;
}

std::vector<ModeClassification> decay_witnesses(const System& s, const StructureDecomposition& sd) {
    const TimeKind kind = time_kind(s);
    const Matrix& superop = superop_of(s);

    std::vector<std::pair<BlockId, Subspace>> central;
    for (std::size_t k = 0; k < sd.u_blocks.size(); ++k) {
        central.emplace_back(BlockId{BlockId::Kind::u, static_cast<int>(k), -1},
                             sd.u_blocks[k].space);
    }
    for (std::size_t l = 0; l < sd.x_blocks.size(); ++l) {
        central.emplace_back(BlockId{BlockId::Kind::x, static_cast<int>(l), -1},
                             sd.x_blocks[l].space);
    }

    std::vector<ModeClassification> out;
    for (std::size_t i = 0; i < central.size(); ++i) {
        for (std::size_t j = i + 1; j < central.size(); ++j) {
            const Matrix blk = block_map(superop, central[i].second, central[j].second);
            Eigen::ComplexEigenSolver<Matrix> es(blk, /*computeEigenvectors=*/false);
            Complex dominant(0.0, 0.0);
            for (Index e = 0; e < es.eigenvalues().size(); ++e) {
                const Complex lam = es.eigenvalues()(e);
                const bool more = kind == TimeKind::discrete
                                      ? std::abs(lam) > std::abs(dominant)
                                      : lam.real() > dominant.real();
                if (e == 0 || more) {
                    dominant = lam;
                }
            }
            const bool decays = kind == TimeKind::discrete
                                    ? std::abs(dominant) < 1.0 - 1e-9
                                    : dominant.real() < -1e-9;
            if (!decays) {
                continue;  // the pair carries a peripheral coherence mode
            }
            ModeClassification cls;
            cls.kind = ModeKind::decaying_coherence_witness;
            cls.from = central[i].first;
            cls.to = central[j].first;
            cls.eigenvalue = dominant;
            cls.frequency = kind == TimeKind::discrete ? std::arg(dominant) : dominant.imag();
            cls.residual = 0.0;
            out.push_back(std::move(cls));
        }
    }
    return out;
}

}  // namespace qds
