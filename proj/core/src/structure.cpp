// structure.cpp — D/R split, enclosures, cut-off dual, fixed-point algebra,
// and the canonical central decomposition

#include "qds/structure.hpp"

#include "qds/errors.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/LU>
#include <Eigen/SVD>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

namespace qds {

namespace {

constexpr std::uint64_t kCentralSeed = 0x51ab5eedc0debeefULL;
constexpr int kDoublings = 40;

struct SplitData {
    Subspace decaying;
    Subspace recurrent;
    Matrix rho_bar;  // N x N mean of the maximally mixed state
};

SplitData split_full(const System& s, double rank_tol, const ToleranceSet& tol) {
    const Index n = dim_of(s);
    const DensityMatrix mean = cesaro_mean_state(s, maximally_mixed(n), tol);
    SplitData out;
    out.recurrent = Subspace::support(mean.rho, rank_tol);
    if (out.recurrent.dim() == 0) {
        throw StructuralInconsistency("split_decaying: empty recurrent subspace");
    }
    out.decaying = out.recurrent.complement();
    out.rho_bar = mean.rho;
    return out;
}

void require_verified(const System& s, const ToleranceSet& tol) {
    const double vtol = 10.0 * std::max(tol.psd, tol.trace);
    if (!system_verified(s, vtol)) {
        throw VerificationError("system failed CPTP / generator verification");
    }
}

// Eigenvalue clusters of an ascending real spectrum; a gap larger than tol
// starts a new cluster.
std::vector<std::pair<Index, Index>> cluster_ranges(const RealVector& ev, double tol) {
    std::vector<std::pair<Index, Index>> ranges;
    if (ev.size() == 0) {
        return ranges;
    }
    Index start = 0;
    for (Index i = 1; i < ev.size(); ++i) {
        if (ev(i) - ev(i - 1) > tol) {
            ranges.emplace_back(start, i);
            start = i;
        }
    }
    ranges.emplace_back(start, ev.size());
    return ranges;
}

Matrix orthonormal_columns_abs(const Matrix& columns, double rel_tol) {
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

Matrix nullspace_of(const Matrix& m, double rel_tol) {
    Eigen::JacobiSVD<Matrix> svd(m, Eigen::ComputeFullV);
    const auto& sv = svd.singularValues();
    const double smax = sv.size() > 0 ? sv(0) : 0.0;
    // A numerically zero matrix annihilates everything; the relative cut
    // alone would then compare noise against noise.
    const double cut = smax <= 1e-12 ? 1e-12 : smax * rel_tol;
    Index first_null = sv.size();
    for (Index i = 0; i < sv.size(); ++i) {
        if (sv(i) <= cut) {
            first_null = i;
            break;
        }
    }
    const Index n_null = m.cols() - first_null;
    if (n_null <= 0) {
        return Matrix(m.cols(), 0);
    }
    return svd.matrixV().rightCols(n_null);
}

// Center of a Frobenius-orthonormal, adjoint-closed matrix algebra basis:
// combinations commuting with every basis element.
std::vector<Matrix> algebra_center(const std::vector<Matrix>& basis, double rel_tol) {
    const auto k = static_cast<Index>(basis.size());
    const Index d = basis.front().rows();
    if (k == 1) {
        return basis;
    }
    Matrix commutators(k * d * d, k);
    for (Index col = 0; col < k; ++col) {
        for (Index i = 0; i < k; ++i) {
            const Matrix c = basis[col] * basis[i] - basis[i] * basis[col];
            commutators.block(i * d * d, col, d * d, 1) = vec(c);
        }
    }
    const Matrix null = nullspace_of(commutators, rel_tol);
    std::vector<Matrix> center;
    Matrix stacked(d * d, null.cols() * 2);
    Index cols = 0;
    for (Index c = 0; c < null.cols(); ++c) {
        Matrix z = Matrix::Zero(d, d);
        for (Index i = 0; i < k; ++i) {
            z += null(i, c) * basis[i];
        }
        stacked.col(cols++) = vec(z);
        stacked.col(cols++) = vec(Matrix(z.adjoint()));
    }
    const Matrix closed = orthonormal_columns_abs(stacked.leftCols(cols), rel_tol);
    for (Index c = 0; c < closed.cols(); ++c) {
        center.push_back(unvec(closed.col(c), d, d));
    }
    return center;
}

Matrix random_combination(SplitMix64& rng, const std::vector<Matrix>& basis) {
    Matrix out = Matrix::Zero(basis.front().rows(), basis.front().cols());
    for (const auto& b : basis) {
        out += rng.complex_gaussian() * b;
    }
    return out;
}

double span_residual(const Matrix& m, const std::vector<Matrix>& basis) {
    Matrix rem = m;
    for (const auto& b : basis) {
        const Complex coeff = (vec(b).adjoint() * vec(m))(0);
        rem -= coeff * b;
    }
    return rem.norm();
}

// Long time average of the evolution operator, computed purely by doubling:
// for channels the exact Cesaro average over 2^k steps, for generators the
// 2^k-th power of the implicit-Euler resolvent. Both converge to the
// (generally oblique) projector onto the fixed part without any
// eigendecomposition. Two Newton purification passes remove the rounding
// drift the repeated squaring accumulates.
Matrix averaged_superop(const Matrix& superop, TimeKind kind) {
    const Index sz = superop.rows();
    Matrix avg;
    if (kind == TimeKind::discrete) {
        avg = Matrix::Identity(sz, sz);
        Matrix power = superop;
        for (int k = 0; k < kDoublings; ++k) {
            avg = 0.5 * (avg + power * avg);
            if (k + 1 < kDoublings) {
                power = power * power;
            }
            if (!avg.allFinite() || avg.norm() > 1e9) {
                throw StructuralInconsistency(
                    "oracle averaging diverged; peripheral part appears defective");
            }
        }
    } else {
        const double h = 1.0 / std::max(1.0, superop.norm());
        const Matrix lhs = Matrix::Identity(sz, sz) - h * superop;
        avg = lhs.partialPivLu().solve(Matrix::Identity(sz, sz));
        for (int k = 0; k < kDoublings; ++k) {
            avg = avg * avg;
            if (!avg.allFinite() || avg.norm() > 1e9) {
                throw StructuralInconsistency(
                    "oracle averaging diverged; kernel appears defective");
            }
        }
    }
    for (int pass = 0; pass < 2; ++pass) {
        const Matrix sq = avg * avg;
        avg = 3.0 * sq - 2.0 * (sq * avg);
    }
    return avg;
}

}  // namespace

Index StructureDecomposition::dims_total() const {
    Index total = decaying.dim();
    for (const auto& u : u_blocks) {
        total += u.space.dim();
    }
    for (const auto& x : x_blocks) {
        total += x.space.dim();
    }
    return total;
}

Index StructureDecomposition::stationary_parameter_count() const {
    Index count = static_cast<Index>(u_blocks.size());
    for (const auto& x : x_blocks) {
        count += static_cast<Index>(x.multiplicity) * static_cast<Index>(x.multiplicity);
    }
    return count;
}

std::vector<Subspace> StructureDecomposition::central_blocks() const {
    std::vector<Subspace> blocks;
    for (const auto& u : u_blocks) {
        blocks.push_back(u.space);
    }
    for (const auto& x : x_blocks) {
        blocks.push_back(x.space);
    }
    return blocks;
}

SplitResult split_decaying(const System& s, double rank_tol) {
    ToleranceSet tol = ToleranceSet::defaults();
    tol.rank = rank_tol;
    require_verified(s, tol);
    const SplitData data = split_full(s, rank_tol, tol);
    return SplitResult{data.decaying, data.recurrent};
}

EnclosureCheck is_enclosure(const System& s, const Subspace& v, double tol) {
    const Index n = dim_of(s);
    if (v.ambient != n) {
        throw std::invalid_argument("is_enclosure: ambient dimension mismatch");
    }
    EnclosureCheck check;
    check.enclosure = true;
    check.leakage = 0.0;
    const Index d = v.dim();
    if (d == 0) {
        return check;
    }
    const Matrix q = Matrix::Identity(n, n) - v.projector;
    for (Index i = 0; i < d; ++i) {
        for (Index j = 0; j < d; ++j) {
            const Matrix sigma = v.basis.col(i) * v.basis.col(j).adjoint();
            const Matrix image = s.apply(sigma);
            const double diag_leak = (q * image * q).norm();
            const double coh_leak = (q * image * v.projector).norm();
            check.leakage = std::max({check.leakage, diag_leak, coh_leak});
        }
    }
    check.enclosure = check.leakage <= tol;
    return check;
}

Matrix cutoff_dual(const System& s, const Subspace& r, double tol) {
    const EnclosureCheck check = is_enclosure(s, r, tol);
    if (!check.enclosure) {
        std::ostringstream msg;
        msg << "cutoff_dual: subspace is not an enclosure (leakage " << check.leakage << ")";
        throw std::invalid_argument(msg.str());
    }
    const Index d = r.dim();
    const Matrix w = kron(r.basis.conjugate(), r.basis);  // N^2 x d^2
    const Matrix cut = w.adjoint() * superop_of(s).adjoint() * w;
    const Vector vec_id = vec(Matrix(Matrix::Identity(d, d)));
    const double unital_defect = time_kind(s) == TimeKind::discrete
                                     ? (cut * vec_id - vec_id).norm()
                                     : (cut * vec_id).norm();
    if (unital_defect > std::max(10.0 * tol * std::sqrt(static_cast<double>(d)), 1e-8)) {
        throw StructuralInconsistency("cutoff_dual: compressed dual is not unital; defect " +
                                      std::to_string(unital_defect));
    }
    return cut;
}

FixedAlgebra fixed_point_algebra(const Matrix& cutoff_superop, TimeKind kind, double tol) {
    const Index d = superop_side(cutoff_superop);
    const Vector vec_id = vec(Matrix(Matrix::Identity(d, d)));
    const double unital_defect = kind == TimeKind::discrete
                                     ? (cutoff_superop * vec_id - vec_id).norm()
                                     : (cutoff_superop * vec_id).norm();
    if (unital_defect > std::max(100.0 * tol, 1e-6)) {
        throw std::invalid_argument("fixed_point_algebra: input superoperator is not unital");
    }
    FixedAlgebra alg;
    alg.space = fixed_space_of_superop(cutoff_superop, kind, tol);
    alg.algebra_verified = true;
    const auto& basis = alg.space.basis;
    for (const auto& a : basis) {
        for (const auto& b : basis) {
            const Matrix prod = a * b;
            const double resid = span_residual(prod, basis);
            if (resid > 10.0 * tol * std::max(1.0, prod.norm())) {
                alg.algebra_verified = false;
            }
        }
    }
    return alg;
}

namespace {

struct CentralSplit {
    std::vector<Matrix> cluster_bases;  // d_R x n_c eigenvector columns, per block
};

CentralSplit central_projections(const std::vector<Matrix>& center, double cluster_tol) {
    for (int attempt = 0; attempt < 3; ++attempt) {
        SplitMix64 rng(kCentralSeed + static_cast<std::uint64_t>(attempt));
        const Matrix g = hermitize(random_combination(rng, center));
        Eigen::SelfAdjointEigenSolver<Matrix> es(g);
        const double scale = std::max(1.0, es.eigenvalues().cwiseAbs().maxCoeff());
        const auto ranges = cluster_ranges(es.eigenvalues(), cluster_tol * scale);
        if (ranges.size() != center.size()) {
            continue;  // eigenvalue collision across central projections; redraw
        }
        CentralSplit split;
        bool ok = true;
        for (const auto& [lo, hi] : ranges) {
            const Matrix w = es.eigenvectors().middleCols(lo, hi - lo);
            const Matrix proj = w * w.adjoint();
            if (span_residual(proj, center) > 1e-6 * proj.norm()) {
                ok = false;
                break;
            }
            split.cluster_bases.push_back(w);
        }
        if (ok) {
            return split;
        }
    }
    throw StructuralInconsistency(
        "decompose_structure: could not isolate minimal central projections");
}

// Refine one X-type central block: replica projectors from a generic
// Hermitian algebra element, intertwiners from the polar parts of a generic
// off-diagonal element.
struct ReplicaRefinement {
    std::vector<Matrix> isometries;  // n_c x f, one per replica
    Matrix tau;                      // f x f reference state
};

ReplicaRefinement refine_x_block(const std::vector<Matrix>& block_algebra, const Matrix& rho_block,
                                 int m, Index f, double cluster_tol) {
    for (int attempt = 0; attempt < 5; ++attempt) {
        SplitMix64 rng(kCentralSeed ^ (0x9999ULL + static_cast<std::uint64_t>(attempt)));
        const Matrix h = hermitize(random_combination(rng, block_algebra));
        Eigen::SelfAdjointEigenSolver<Matrix> es(h);
        const double scale = std::max(1.0, es.eigenvalues().cwiseAbs().maxCoeff());
        const auto ranges = cluster_ranges(es.eigenvalues(), cluster_tol * scale);
        if (static_cast<int>(ranges.size()) != m) {
            continue;
        }
        bool sizes_ok = true;
        for (const auto& [lo, hi] : ranges) {
            if (hi - lo != f) {
                sizes_ok = false;
                break;
            }
        }
        if (!sizes_ok) {
            continue;
        }
        std::vector<Matrix> replica_bases;
        for (const auto& [lo, hi] : ranges) {
            replica_bases.push_back(es.eigenvectors().middleCols(lo, hi - lo));
        }

        const Matrix g2 = random_combination(rng, block_algebra);
        ReplicaRefinement out;
        out.isometries.push_back(replica_bases[0]);
        bool polar_ok = true;
        for (int alpha = 1; alpha < m; ++alpha) {
            const Matrix c = replica_bases[alpha].adjoint() * g2 * replica_bases[0];  // f x f
            Eigen::JacobiSVD<Matrix> svd(c, Eigen::ComputeFullU | Eigen::ComputeFullV);
            const auto& sv = svd.singularValues();
            if (sv(sv.size() - 1) <= 1e-8 * std::max(1.0, sv(0)) ||
                (sv(0) - sv(sv.size() - 1)) > 1e-6 * std::max(1.0, sv(0))) {
                polar_ok = false;
                break;
            }
            const Matrix omega = svd.matrixU() * svd.matrixV().adjoint();
            out.isometries.push_back(replica_bases[alpha] * omega);
        }
        if (!polar_ok) {
            continue;
        }

        // Reference state and cross-replica consistency.
        Matrix tau = out.isometries[0].adjoint() * rho_block * out.isometries[0];
        const double tr = tau.trace().real();
        if (tr <= 0.0) {
            continue;
        }
        tau = hermitize(tau / tr);
        bool tau_ok = true;
        for (int alpha = 1; alpha < m; ++alpha) {
            Matrix t = out.isometries[alpha].adjoint() * rho_block * out.isometries[alpha];
            const double ta = t.trace().real();
            if (ta <= 0.0 || (hermitize(t / ta) - tau).norm() > 1e-6) {
                tau_ok = false;
                break;
            }
        }
        if (!tau_ok) {
            continue;
        }
        out.tau = tau;
        return out;
    }
    throw StructuralInconsistency("decompose_structure: replica refinement failed");
}

}  // namespace

StructureDecomposition decompose_structure(const System& s, const ToleranceSet& tol) {
    require_verified(s, tol);
    const Index n = dim_of(s);
    const TimeKind kind = time_kind(s);

    const SplitData split = split_full(s, tol.rank, tol);
    const Subspace& r = split.recurrent;

    const Matrix cut = cutoff_dual(s, r, tol.eig);
    const FixedAlgebra alg = fixed_point_algebra(cut, kind, tol.eig);
    if (!alg.algebra_verified) {
        throw StructuralInconsistency(
            "decompose_structure: fixed operators do not close under multiplication; "
            "tolerance failure or non-CPTP input");
    }

    Matrix rho_r = hermitize(r.compress(split.rho_bar));
    rho_r /= rho_r.trace().real();

    const std::vector<Matrix> center = algebra_center(alg.space.basis, tol.rank);
    const CentralSplit central = central_projections(center, tol.cluster);

    StructureDecomposition sd;
    sd.decaying = split.decaying;
    sd.recurrent = r;

    for (const Matrix& w : central.cluster_bases) {
        const Index nc = w.cols();
        // Compress the algebra onto the block and measure its dimension.
        Matrix stacked(nc * nc, static_cast<Index>(alg.space.basis.size()));
        for (Index i = 0; i < static_cast<Index>(alg.space.basis.size()); ++i) {
            stacked.col(i) = vec(Matrix(w.adjoint() * alg.space.basis[i] * w));
        }
        const Matrix block_basis_vecs = orthonormal_columns_abs(stacked, tol.rank);
        const Index block_dim = block_basis_vecs.cols();

        const Matrix embed_basis = r.basis * w;  // N x nc

        if (block_dim == 1) {
            Matrix rho_blk = hermitize(w.adjoint() * rho_r * w);
            const double tr = rho_blk.trace().real();
            if (tr <= 0.0) {
                throw StructuralInconsistency("decompose_structure: block carries no stationary weight");
            }
            rho_blk /= tr;
            const Subspace support = Subspace::support(rho_blk, tol.rank);
            if (support.dim() != nc) {
                throw StructuralInconsistency(
                    "decompose_structure: stationary state is not faithful on its block");
            }
            UBlock u;
            u.space = Subspace::from_basis(embed_basis);
            u.stationary =
                DensityMatrix::unchecked(hermitize(embed_basis * rho_blk * embed_basis.adjoint()));
            sd.u_blocks.push_back(std::move(u));
            continue;
        }

        const int m = static_cast<int>(std::llround(std::sqrt(static_cast<double>(block_dim))));
        if (static_cast<Index>(m) * static_cast<Index>(m) != block_dim || m < 2 || nc % m != 0) {
            throw StructuralInconsistency(
                "decompose_structure: block algebra dimension is not a square factor");
        }
        const Index f = nc / m;

        std::vector<Matrix> block_algebra;
        for (Index c = 0; c < block_basis_vecs.cols(); ++c) {
            block_algebra.push_back(unvec(block_basis_vecs.col(c), nc, nc));
        }
        const Matrix rho_blk = hermitize(w.adjoint() * rho_r * w);
        const ReplicaRefinement refinement =
            refine_x_block(block_algebra, rho_blk, m, f, tol.cluster);

        XBlock x;
        x.multiplicity = m;
        x.factor_dim = f;
        Matrix space_basis(n, nc);
        for (int alpha = 0; alpha < m; ++alpha) {
            const Matrix j = embed_basis * refinement.isometries[alpha];  // N x f
            x.replica_isometries.push_back(j);
            space_basis.middleCols(static_cast<Index>(alpha) * f, f) = j;
        }
        x.space = Subspace::from_basis(space_basis);
        x.tau = DensityMatrix::unchecked(refinement.tau);

        // The embedded cross-replica coherence must itself be a fixed point.
        if (m >= 2) {
            const Matrix coherence =
                x.replica_isometries[0] * refinement.tau * x.replica_isometries[1].adjoint();
            const Matrix image = s.apply(coherence);
            const double defect = kind == TimeKind::discrete ? (image - coherence).norm()
                                                             : image.norm();
            if (defect > 1e-6 * std::max(1.0, coherence.norm())) {
                throw StructuralInconsistency(
                    "decompose_structure: replica coherence is not stationary; defect " +
                    std::to_string(defect));
            }
        }
        sd.x_blocks.push_back(std::move(x));
    }

    if (sd.dims_total() != n) {
        throw StructuralInconsistency("decompose_structure: block dimensions do not sum to N");
    }
    return sd;
}

DensityMatrix canonical_stationary(const StructureDecomposition& sd,
                                   const CanonicalStationaryState& coords) {
    if (coords.lambda.size() != sd.u_blocks.size() || coords.mu.size() != sd.x_blocks.size() ||
        coords.sigma.size() != sd.x_blocks.size()) {
        throw std::invalid_argument("canonical_stationary: coordinate shape mismatch");
    }
    double total = 0.0;
    for (double l : coords.lambda) {
        if (l < -1e-12) {
            throw std::invalid_argument("canonical_stationary: negative lambda weight");
        }
        total += l;
    }
    for (double m : coords.mu) {
        if (m < -1e-12) {
            throw std::invalid_argument("canonical_stationary: negative mu weight");
        }
        total += m;
    }
    if (std::abs(total - 1.0) > 1e-9) {
        throw std::invalid_argument("canonical_stationary: weights must sum to one");
    }

    const Index n = sd.dim();
    Matrix rho = Matrix::Zero(n, n);
    for (std::size_t k = 0; k < sd.u_blocks.size(); ++k) {
        rho += coords.lambda[k] * sd.u_blocks[k].stationary.rho;
    }
    for (std::size_t l = 0; l < sd.x_blocks.size(); ++l) {
        const XBlock& x = sd.x_blocks[l];
        const Matrix& sigma = coords.sigma[l];
        if (sigma.rows() != x.multiplicity || sigma.cols() != x.multiplicity) {
            throw std::invalid_argument("canonical_stationary: sigma dimension mismatch");
        }
        const DensityDefects defects = density_defects(sigma);
        if (!defects.ok(ToleranceSet::defaults())) {
            throw std::invalid_argument("canonical_stationary: sigma is not a density matrix");
        }
        for (int a = 0; a < x.multiplicity; ++a) {
            for (int b = 0; b < x.multiplicity; ++b) {
                rho += coords.mu[l] * sigma(a, b) * x.replica_isometries[a] * x.tau.rho *
                       x.replica_isometries[b].adjoint();
            }
        }
    }
    return DensityMatrix::from_matrix(hermitize(rho));
}

CanonicalStationaryState stationary_coordinates(const System& s, const StructureDecomposition& sd,
                                                const DensityMatrix& rho, double tol) {
    const Index n = sd.dim();
    if (rho.dim() != n) {
        throw std::invalid_argument("stationary_coordinates: dimension mismatch");
    }
    const Matrix image = s.apply(rho.rho);
    const double fixed_defect = time_kind(s) == TimeKind::discrete ? (image - rho.rho).norm()
                                                                   : image.norm();
    if (fixed_defect > std::max(tol, 1e-8) * std::max(1.0, rho.rho.norm())) {
        throw std::invalid_argument("stationary_coordinates: state is not a fixed point (defect " +
                                    std::to_string(fixed_defect) + ")");
    }

    CanonicalStationaryState coords;
    for (const auto& u : sd.u_blocks) {
        coords.lambda.push_back((u.space.projector * rho.rho).trace().real());
    }
    for (const auto& x : sd.x_blocks) {
        const int m = x.multiplicity;
        Matrix sigma_raw(m, m);
        for (int a = 0; a < m; ++a) {
            for (int b = 0; b < m; ++b) {
                sigma_raw(a, b) =
                    (x.replica_isometries[a].adjoint() * rho.rho * x.replica_isometries[b]).trace();
            }
        }
        const double mu = sigma_raw.trace().real();
        coords.mu.push_back(mu);
        if (mu > 1e-12) {
            coords.sigma.push_back(hermitize(sigma_raw / mu));
        } else {
            coords.sigma.push_back(Matrix::Identity(m, m) / static_cast<double>(m));
        }
    }

    // Cross-block coherence of a fixed point must vanish.
    std::vector<Subspace> blocks = sd.central_blocks();
    if (sd.decaying.dim() > 0) {
        blocks.push_back(sd.decaying);
    }
    const double cross_tol = std::max(tol, 1e-8) * std::max(1.0, rho.rho.norm());
    for (std::size_t i = 0; i < blocks.size(); ++i) {
        for (std::size_t j = 0; j < blocks.size(); ++j) {
            if (i == j) {
                continue;
            }
            const double coherence = (blocks[i].projector * rho.rho * blocks[j].projector).norm();
            if (coherence > cross_tol) {
                throw StructuralInconsistency(
                    "stationary_coordinates: nonvanishing cross-block coherence " +
                    std::to_string(coherence));
            }
        }
    }
    // Within each X block the state must have the sigma (x) tau form.
    for (std::size_t l = 0; l < sd.x_blocks.size(); ++l) {
        const XBlock& x = sd.x_blocks[l];
        Matrix rebuilt = Matrix::Zero(n, n);
        for (int a = 0; a < x.multiplicity; ++a) {
            for (int b = 0; b < x.multiplicity; ++b) {
                rebuilt += coords.mu[l] * coords.sigma[l](a, b) * x.replica_isometries[a] *
                           x.tau.rho * x.replica_isometries[b].adjoint();
            }
        }
        const Matrix actual = x.space.projector * rho.rho * x.space.projector;
        if ((rebuilt - actual).norm() > cross_tol) {
            throw StructuralInconsistency(
                "stationary_coordinates: block state is not of product form");
        }
    }
    return coords;
}

std::vector<Subspace> minimal_enclosures_oracle(const System& s, int samples, std::uint64_t seed) {
    const Index n = dim_of(s);
    const Matrix avg = averaged_superop(superop_of(s), time_kind(s));

    const Matrix rho_inf = hermitize(unvec(avg * vec(maximally_mixed(n).rho), n, n));
    const Subspace r = Subspace::support(rho_inf, 1e-8);
    if (r.dim() == 0) {
        throw StructuralInconsistency("oracle: empty recurrent subspace");
    }
    const Matrix avg_heis = avg.adjoint();

    SplitMix64 rng(seed);

    // Eigenvalue clusters of one generic time-averaged observable give one
    // decomposition of R into minimal enclosures.
    std::vector<Matrix> cluster_bases;
    for (int attempt = 0; attempt < 5 && cluster_bases.empty(); ++attempt) {
        const Matrix g = random_hermitian(rng, n);
        const Matrix g_mean = hermitize(unvec(avg_heis * vec(g), n, n));
        const Matrix g_r = hermitize(r.compress(g_mean));
        Eigen::SelfAdjointEigenSolver<Matrix> es(g_r);
        const double scale = std::max(1.0, es.eigenvalues().cwiseAbs().maxCoeff());
        const double ctol = 1e-7 * scale;
        const auto ranges = cluster_ranges(es.eigenvalues(), ctol);
        // Require well-separated clusters so a collision cannot merge blocks.
        bool separated = true;
        for (std::size_t i = 1; i < ranges.size(); ++i) {
            const double gap = es.eigenvalues()(ranges[i].first) -
                               es.eigenvalues()(ranges[i - 1].second - 1);
            if (gap < 100.0 * ctol) {
                separated = false;
                break;
            }
        }
        if (!separated) {
            continue;
        }
        for (const auto& [lo, hi] : ranges) {
            cluster_bases.push_back(es.eigenvectors().middleCols(lo, hi - lo));
        }
    }
    if (cluster_bases.empty()) {
        throw StructuralInconsistency("oracle: could not separate invariant-observable spectrum");
    }

    // Merge enclosures that carry coherence in some sampled limit state.
    const auto n_clusters = cluster_bases.size();
    std::vector<std::size_t> parent(n_clusters);
    std::iota(parent.begin(), parent.end(), 0);
    const auto find = [&parent](std::size_t a) {
        while (parent[a] != a) {
            parent[a] = parent[parent[a]];
            a = parent[a];
        }
        return a;
    };
    const auto unite = [&parent, &find](std::size_t a, std::size_t b) {
        a = find(a);
        b = find(b);
        if (a != b) {
            parent[std::max(a, b)] = std::min(a, b);
        }
    };

    for (int t = 0; t < samples; ++t) {
        const Vector psi = random_unit_vector(rng, n);
        const Matrix limit = hermitize(unvec(avg * vec(Matrix(psi * psi.adjoint())), n, n));
        const Matrix limit_r = r.compress(limit);
        for (std::size_t i = 0; i < n_clusters; ++i) {
            for (std::size_t j = i + 1; j < n_clusters; ++j) {
                const double coherence =
                    (cluster_bases[i].adjoint() * limit_r * cluster_bases[j]).norm();
                if (coherence > 1e-6) {
                    unite(i, j);
                }
            }
        }
    }

    std::vector<Subspace> blocks;
    for (std::size_t root = 0; root < n_clusters; ++root) {
        if (find(root) != root) {
            continue;
        }
        Index total = 0;
        for (std::size_t i = 0; i < n_clusters; ++i) {
            if (find(i) == root) {
                total += cluster_bases[i].cols();
            }
        }
        Matrix basis(r.dim(), total);
        Index at = 0;
        for (std::size_t i = 0; i < n_clusters; ++i) {
            if (find(i) == root) {
                basis.middleCols(at, cluster_bases[i].cols()) = cluster_bases[i];
                at += cluster_bases[i].cols();
            }
        }
        blocks.push_back(Subspace::from_basis(r.basis * basis));
    }
    return blocks;
}

}  // namespace qds
