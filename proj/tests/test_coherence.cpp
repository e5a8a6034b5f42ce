// test_coherence.cpp — Block machinery, rings/spheres, symmetry unitaries,
// mode classification

#include "qds/coherence.hpp"
#include "qds/errors.hpp"
#include "qds/zoo.hpp"

#include "test_support.hpp"

#include <doctest.h>

#include <cmath>
#include <numbers>
#include <set>

using namespace qds;

namespace {

Subspace level(Index dim, Index k) {
    Matrix b = Matrix::Zero(dim, 1);
    b(k, 0) = 1.0;
    return Subspace::from_basis(b);
}

}  // namespace

TEST_CASE("block_decompose examples") {
    SplitMix64 rng(31);
    const Subspace v = level(4, 0);
    const Subspace w = Subspace::from_basis([] {
        Matrix b = Matrix::Zero(4, 2);
        b(1, 0) = 1.0;
        b(2, 1) = 1.0;
        return b;
    }());
    SUBCASE("a projector sits in its own diagonal block") {
        const BlockDecomposition parts = block_decompose(v.projector, v, w);
        CHECK((parts.vv - v.projector).norm() < 1e-14);
        CHECK(parts.ww.norm() < 1e-14);
        CHECK(parts.c1.norm() < 1e-14);
        CHECK(parts.c2.norm() < 1e-14);
    }
    SUBCASE("|psi><phi| with psi in V, phi in W is pure C1") {
        Matrix m = Matrix::Zero(4, 4);
        m(0, 1) = 1.0;
        const BlockDecomposition parts = block_decompose(m, v, w);
        CHECK((parts.c1 - m).norm() < 1e-14);
        CHECK(parts.c2.norm() < 1e-14);
    }
    SUBCASE("Hermitian matrices have c2 = c1^dag and exact reassembly") {
        const Matrix m = random_hermitian(rng, 4);
        const BlockDecomposition parts = block_decompose(m, v, w);
        CHECK((parts.c2 - parts.c1.adjoint()).norm() < 1e-14);
        const Matrix whole = (v.projector + w.projector) * m * (v.projector + w.projector);
        CHECK((parts.vv + parts.ww + parts.c1 + parts.c2 - whole).norm() < 1e-13);
    }
    SUBCASE("non-orthogonal pairs rejected") {
        CHECK_THROWS_AS(block_decompose(Matrix::Identity(4, 4), v, v), std::invalid_argument);
    }
}

TEST_CASE("verify_block_preservation") {
    SUBCASE("replica channel preserves every section") {
        const System s = zoo::replica(2, zoo::depolarizing(0.5));
        const StructureDecomposition sd = decompose_structure(s);
        for (const auto& rep : verify_block_preservation(s, sd, 1e-10)) {
            CAPTURE(rep.from + "->" + rep.to);
            CHECK(rep.pass);
        }
    }
    SUBCASE("dephasing keeps coherence inside C1") {
        const System s = zoo::dephasing(0.3);
        const StructureDecomposition sd = decompose_structure(s);
        for (const auto& rep : verify_block_preservation(s, sd, 1e-10)) {
            CHECK(rep.pass);
        }
    }
    SUBCASE("sudden decay: (D,R) coherence never reaches M_D") {
        const System s = zoo::sudden_decay(basis_state(2, 0));
        const StructureDecomposition sd = decompose_structure(s);
        bool saw_decay_pair = false;
        for (const auto& rep : verify_block_preservation(s, sd, 1e-10)) {
            CHECK(rep.pass);
            if (rep.section == "decay-coherence") {
                saw_decay_pair = true;
            }
        }
        CHECK(saw_decay_pair);
    }
}

TEST_CASE("stationary_coherence examples") {
    SUBCASE("replica channel: a partial isometry between the replicas") {
        const System s = zoo::replica(2, zoo::depolarizing(0.5));
        const StructureDecomposition sd = decompose_structure(s);
        const XBlock& x = sd.x_blocks[0];
        const Subspace v = Subspace::from_basis(x.replica_isometries[0]);
        const Subspace w = Subspace::from_basis(x.replica_isometries[1]);
        const auto q = stationary_coherence(s, v, w, 1e-7);
        REQUIRE(q.has_value());
        CHECK((*q * q->adjoint() - v.projector).norm() < 1e-9);
        CHECK((q->adjoint() * *q - w.projector).norm() < 1e-9);
        CHECK((s.apply(*q) - *q).norm() < 1e-9);
    }
    SUBCASE("dephasing qubit: no stationary coherence between the levels") {
        const System s = zoo::dephasing(0.3);
        const auto q = stationary_coherence(s, level(2, 0), level(2, 1), 1e-7);
        CHECK_FALSE(q.has_value());
    }
    SUBCASE("direct sum of inequivalent blocks: no coherence across the boundary") {
        const QuantumChannel a = zoo::cyclic_shift(3);
        const QuantumChannel b = zoo::direct_sum(a, zoo::dephasing(0.4));
        // Between the cyclic summand (levels 0..2) and one dephasing level.
        Matrix vb = Matrix::Zero(5, 3);
        vb(0, 0) = vb(1, 1) = vb(2, 2) = 1.0;
        const Subspace v = Subspace::from_basis(vb);
        const auto q = stationary_coherence(System(b), v, level(5, 3), 1e-7);
        CHECK_FALSE(q.has_value());
    }
    SUBCASE("non-enclosure inputs rejected") {
        const System s = zoo::amplitude_damping(0.5);
        CHECK_THROWS_AS(stationary_coherence(s, level(2, 0), level(2, 1), 1e-7),
                        std::invalid_argument);
    }
}

TEST_CASE("ring_projector examples (sphere of enclosures)") {
    const System s = zoo::replica(2, zoo::depolarizing(0.5));
    const StructureDecomposition sd = decompose_structure(s);
    const RingSphere rs = RingSphere::from_replicas(sd.x_blocks[0]);
    SUBCASE("alpha = 0 and pi/2 give the replica projectors") {
        CHECK((ring_projector(rs, 0.0, 1.0) - rs.v.projector).norm() < 1e-12);
        CHECK((ring_projector(rs, std::numbers::pi / 2, 1.0) - rs.w.projector).norm() < 1e-12);
    }
    SUBCASE("alpha = pi/4 is idempotent and S-invariant") {
        const Matrix p = ring_projector(rs, std::numbers::pi / 4, 1.0);
        const Matrix expected =
            0.5 * (rs.v.projector + rs.w.projector + rs.q + rs.q.adjoint());
        CHECK((p - expected).norm() < 1e-12);
        CHECK((p * p - p).norm() < 1e-10);
        CHECK(hermiticity_defect(p) < 1e-12);
        CHECK((s.apply_adjoint(p) - p).norm() < 1e-9);
    }
    SUBCASE("sampled (alpha, z) grid: projectors invariant under the cut-off dual") {
        const Matrix cut = cutoff_dual(s, sd.recurrent);
        for (int i = 0; i < 5; ++i) {
            for (int j = 0; j < 4; ++j) {
                const double alpha = i * std::numbers::pi / 8.0;
                const Complex z = std::polar(1.0, j * std::numbers::pi / 2.0 + 0.3);
                const Matrix p = ring_projector(rs, alpha, z);
                CHECK((p * p - p).norm() < 1e-9);
                CHECK(hermiticity_defect(p) < 1e-12);
                const Matrix p_r = sd.recurrent.compress(p);
                const Matrix image = unvec(Vector(cut * vec(p_r)), 4, 4);
                CHECK((image - p_r).norm() < 1e-9);
            }
        }
    }
    SUBCASE("off-circle z rejected") {
        CHECK_THROWS_AS(ring_projector(rs, 0.3, Complex(0.5, 0.0)), std::invalid_argument);
    }
}

TEST_CASE("ring_unitaries examples") {
    const System s = zoo::replica(2, zoo::depolarizing(0.5));
    const StructureDecomposition sd = decompose_structure(s);
    const RingSphere rs = RingSphere::from_replicas(sd.x_blocks[0]);
    SUBCASE("U_0 = 1 and reflections square to 1") {
        const RingUnitaries ru = ring_unitaries(rs, 0.0);
        CHECK((ru.u_alpha - Matrix::Identity(4, 4)).norm() < 1e-12);
        CHECK((ru.r_alpha * ru.r_alpha - Matrix::Identity(4, 4)).norm() < 1e-12);
    }
    SUBCASE("transformation law U_a P(b) U_a^dag = P(a+b)") {
        SplitMix64 rng(33);
        for (int t = 0; t < 6; ++t) {
            const double a = rng.uniform() * std::numbers::pi;
            const double b = rng.uniform() * std::numbers::pi;
            const RingUnitaries ru = ring_unitaries(rs, a);
            CHECK((ru.u_alpha * ru.u_alpha.adjoint() - Matrix::Identity(4, 4)).norm() < 1e-10);
            const Matrix lhs = ru.u_alpha * ring_projector(rs, b, 1.0) * ru.u_alpha.adjoint();
            CHECK((lhs - ring_projector(rs, a + b, 1.0)).norm() < 1e-9);
        }
    }
    SUBCASE("U_{pi/2} swaps the replica projectors") {
        const RingUnitaries ru = ring_unitaries(rs, std::numbers::pi / 2);
        const Matrix mapped = ru.u_alpha * rs.v.projector * ru.u_alpha.adjoint();
        CHECK((mapped - rs.w.projector).norm() < 1e-9);
    }
    SUBCASE("symmetry law: ring unitaries commute with the evolution on M_R") {
        SplitMix64 rng(34);
        const RingUnitaries ru = ring_unitaries(rs, 0.77);
        for (int t = 0; t < 5; ++t) {
            const DensityMatrix rho = test::random_state(rng, 4);
            const Matrix lhs = s.apply(Matrix(ru.u_alpha * rho.rho * ru.u_alpha.adjoint()));
            const Matrix rhs = ru.u_alpha * s.apply(rho.rho) * ru.u_alpha.adjoint();
            CHECK((lhs - rhs).norm() < 1e-9);
        }
    }
}

TEST_CASE("equivalence_unitary examples") {
    const System s = zoo::replica(2, zoo::depolarizing(0.5));
    const StructureDecomposition sd = decompose_structure(s);
    const XBlock& x = sd.x_blocks[0];
    const std::vector<Subspace> standard = {Subspace::from_basis(x.replica_isometries[0]),
                                            Subspace::from_basis(x.replica_isometries[1])};
    SUBCASE("identical decompositions give the identity") {
        const Matrix u = equivalence_unitary(s, sd, standard, standard, 1e-8);
        CHECK((u - Matrix::Identity(4, 4)).norm() < 1e-12);
    }
    SUBCASE("rotated replicas are mapped back by a ring rotation") {
        const RingSphere rs = RingSphere::from_replicas(x);
        const Subspace rot_a = Subspace::support(
            ring_projector(rs, std::numbers::pi / 4, 1.0), 1e-8);
        const Subspace rot_b = Subspace::support(
            ring_projector(rs, 3 * std::numbers::pi / 4, 1.0), 1e-8);
        const std::vector<Subspace> rotated = {rot_a, rot_b};
        const Matrix u = equivalence_unitary(s, sd, standard, rotated, 1e-8);
        CHECK((u * u.adjoint() - Matrix::Identity(4, 4)).norm() < 1e-9);
        for (std::size_t j = 0; j < 2; ++j) {
            double best = 1e300;
            for (std::size_t i = 0; i < 2; ++i) {
                best = std::min(best,
                                (u * rotated[j].projector * u.adjoint() - standard[i].projector)
                                    .norm());
            }
            CHECK(best < 1e-8);
        }
        SplitMix64 rng(35);
        for (int t = 0; t < 20; ++t) {
            const DensityMatrix rho = test::random_state(rng, 4);
            const Matrix lhs = s.apply(Matrix(u * rho.rho * u.adjoint()));
            const Matrix rhs = u * s.apply(rho.rho) * u.adjoint();
            CHECK((lhs - rhs).norm() < 1e-9);
        }
    }
    SUBCASE("unique splittings admit no equivalence") {
        const System deph = zoo::dephasing(0.3);
        const StructureDecomposition sd2 = decompose_structure(deph);
        const std::vector<Subspace> a = {sd2.u_blocks[0].space, sd2.u_blocks[1].space};
        Matrix plus(2, 1), minus(2, 1);
        plus << 1.0, 1.0;
        minus << 1.0, -1.0;
        const std::vector<Subspace> b = {Subspace::from_span(plus / std::sqrt(2.0)),
                                         Subspace::from_span(minus / std::sqrt(2.0))};
        CHECK_THROWS_AS(equivalence_unitary(deph, sd2, a, b, 1e-8), StructuralInconsistency);
    }
}

TEST_CASE("classify_modes examples") {
    SUBCASE("cyclic shift n=3: intra-enclosure oscillations with (q, m)") {
        const System s = zoo::cyclic_shift(3);
        const StructureDecomposition sd = decompose_structure(s);
        const auto cls = classify_modes(s, sd, peripheral_modes(s, 1e-7));
        REQUIRE(cls.size() == 3);
        int oscillations = 0;
        for (const auto& c : cls) {
            if (c.kind == ModeKind::intra_enclosure_oscillation) {
                ++oscillations;
                REQUIRE(c.root_of_unity.has_value());
                CHECK(c.root_of_unity->second == 3);
                CHECK(c.from.label() == "U1");
            }
        }
        CHECK(oscillations == 2);
    }
    SUBCASE("Hamiltonian generator: rotating coherence at the Bohr frequency") {
        Matrix h = Matrix::Zero(2, 2);
        h(1, 1) = 1.0;
        const System s = zoo::hamiltonian_generator(h);
        const StructureDecomposition sd = decompose_structure(s);
        const auto cls = classify_modes(s, sd, peripheral_modes(s, 1e-7));
        int rotating = 0;
        for (const auto& c : cls) {
            if (c.kind == ModeKind::rotating_coherence) {
                ++rotating;
                CHECK(std::abs(std::abs(c.frequency) - 1.0) < 1e-9);
                CHECK(c.from.label() != c.to.label());
            }
        }
        CHECK(rotating == 2);
    }
    SUBCASE("cascade(5,3): oscillations with m=3 inside the 5-dimensional enclosure") {
        const System s = zoo::collapse_cascade(5, 3);
        const StructureDecomposition sd = decompose_structure(s);
        const auto cls = classify_modes(s, sd, peripheral_modes(s, 1e-7));
        std::vector<std::pair<int, int>> qm;
        for (const auto& c : cls) {
            if (c.kind == ModeKind::intra_enclosure_oscillation) {
                REQUIRE(c.root_of_unity.has_value());
                qm.push_back(*c.root_of_unity);
            }
        }
        REQUIRE(qm.size() == 2);
        std::sort(qm.begin(), qm.end());
        CHECK(qm[0] == std::pair<int, int>(1, 3));
        CHECK(qm[1] == std::pair<int, int>(2, 3));
    }
    SUBCASE("replica channel: stationary states and stationary coherence") {
        const System s = zoo::replica(2, zoo::depolarizing(0.5));
        const StructureDecomposition sd = decompose_structure(s);
        const auto cls = classify_modes(s, sd, peripheral_modes(s, 1e-7));
        int coh = 0, stat = 0;
        for (const auto& c : cls) {
            if (c.kind == ModeKind::stationary_coherence) {
                ++coh;
                CHECK(c.from.label() != c.to.label());
            }
            if (c.kind == ModeKind::stationary_state) {
                ++stat;
            }
        }
        CHECK(coh == 2);
        CHECK(stat == 2);
    }
    SUBCASE("discrete mixed case: replica of a cyclic shift") {
        // Coherence between replicas of a cyclic shift carries both a
        // stationary and rotating modes; inside each replica the shift
        // oscillates. All of it must classify cleanly.
        const System s = zoo::replica(2, zoo::cyclic_shift(3));
        const StructureDecomposition sd = decompose_structure(s);
        const auto cls = classify_modes(s, sd, peripheral_modes(s, 1e-7));
        int intra = 0, rot = 0, stat_coh = 0, stat = 0;
        for (const auto& c : cls) {
            switch (c.kind) {
                case ModeKind::intra_enclosure_oscillation: ++intra; break;
                case ModeKind::rotating_coherence: ++rot; break;
                case ModeKind::stationary_coherence: ++stat_coh; break;
                case ModeKind::stationary_state: ++stat; break;
                default: break;
            }
        }
        CHECK(intra == 4);     // e^{+-2pi i/3} inside each of the two replicas
        CHECK(rot == 4);       // e^{+-2pi i/3} in both coherence directions
        CHECK(stat_coh == 2);  // unit eigenvalue in both coherence directions
        CHECK(stat == 2);      // one stationary state per replica
    }
}

TEST_CASE("decay witnesses: coherence blocks without peripheral modes contract") {
    SUBCASE("dephasing qubit") {
        const System s = zoo::dephasing(0.3);
        const StructureDecomposition sd = decompose_structure(s);
        const auto witnesses = decay_witnesses(s, sd);
        REQUIRE(witnesses.size() == 1);
        CHECK(witnesses[0].kind == ModeKind::decaying_coherence_witness);
        CHECK(std::abs(witnesses[0].eigenvalue) == doctest::Approx(0.4));
    }
    SUBCASE("replica channel has no witness (its coherence is stationary)") {
        const System s = zoo::replica(2, zoo::depolarizing(0.5));
        const StructureDecomposition sd = decompose_structure(s);
        CHECK(decay_witnesses(s, sd).empty());
    }
}

TEST_CASE("Kadison inequality for the cut-off dual") {
    SplitMix64 rng(36);
    for (int c = 0; c < 10; ++c) {
        const QuantumChannel ch = zoo::random_cptp(3, 3, 300 + c);
        const System s = ch;
        const SplitResult split = split_decaying(s);
        const Matrix cut = cutoff_dual(s, split.recurrent);
        const Index d = split.recurrent.dim();
        for (int t = 0; t < 4; ++t) {
            const Matrix a = random_matrix(rng, d, d);
            const Matrix sa = unvec(Vector(cut * vec(a)), d, d);
            const Matrix sada = unvec(Vector(cut * vec(Matrix(a.adjoint() * a))), d, d);
            CHECK(min_hermitian_eigenvalue(sada - sa.adjoint() * sa) >= -1e-9);
        }
    }
}

TEST_CASE("C1/C2 non-mixing on the zoo") {
    SplitMix64 rng(37);
    for (const auto& [name, ch] : test::zoo_channels()) {
        CAPTURE(name);
        const System s = ch;
        const StructureDecomposition sd = decompose_structure(s);
        const auto blocks = sd.central_blocks();
        for (std::size_t i = 0; i < blocks.size(); ++i) {
            for (std::size_t j = 0; j < blocks.size(); ++j) {
                if (i == j) {
                    continue;
                }
                Matrix x = blocks[i].projector * random_matrix(rng, ch.dim, ch.dim) *
                           blocks[j].projector;
                if (x.norm() == 0.0) {
                    continue;
                }
                x /= x.norm();
                const Matrix y = s.apply(x);
                const double c2_part = (blocks[j].projector * y * blocks[i].projector).norm();
                CHECK(c2_part <= 1e-10);
            }
        }
    }
}

TEST_CASE("continuous-time exclusion: no intra-enclosure oscillation") {
    for (int c = 0; c < 10; ++c) {
        const LindbladGenerator gen = zoo::random_lindblad(3, 2, 400 + c);
        const System s = gen;
        const StructureDecomposition sd = decompose_structure(s);
        const auto cls = classify_modes(s, sd, peripheral_modes(s, 1e-7));
        for (const auto& mode : cls) {
            CHECK(mode.kind != ModeKind::intra_enclosure_oscillation);
        }
    }
}

TEST_CASE("rotating coherence implies a dynamical symmetry (modified-evolution route)") {
    // A generator with two equivalent one-dimensional enclosures rotating at
    // frequency omega: freeze the rotation, find the stationary coherence of
    // the modified generator, and verify the induced unitary symmetry on the
    // diagonal blocks of the original evolution.
    const double omega = 1.3;
    Matrix h = Matrix::Zero(2, 2);
    h(1, 1) = omega;
    const LindbladGenerator gen = zoo::hamiltonian_generator(h);
    const System s = gen;

    const Subspace v = level(2, 0);
    const Subspace w = level(2, 1);
    // Modified generator: L_omega = L - i omega [P_V, .].
    const Matrix commutator_superop =
        kron(Matrix::Identity(2, 2), v.projector) - kron(v.projector.transpose(), Matrix::Identity(2, 2));
    const Matrix mod = gen.superop - Complex(0.0, omega) * commutator_superop;
    const LindbladGenerator gen_mod = LindbladGenerator::from_superop(mod);

    const auto q = stationary_coherence(System(gen_mod), w, v, 1e-7);
    REQUIRE(q.has_value());
    const Matrix u = *q + q->adjoint();  // unitary V -> W swap
    CHECK((u * u.adjoint() - Matrix::Identity(2, 2)).norm() < 1e-9);

    SplitMix64 rng(38);
    for (int t = 0; t < 5; ++t) {
        Matrix sigma = v.projector * random_matrix(rng, 2, 2) * v.projector;
        const Matrix lhs = w.projector * s.apply(Matrix(u * sigma * u.adjoint())) * w.projector;
        const Matrix rhs = u * (v.projector * s.apply(sigma) * v.projector) * u.adjoint();
        CHECK((lhs - rhs).norm() < 1e-9);
    }
}

TEST_CASE("decoherence universality: every central pair decays or carries a peripheral mode") {
    for (const auto& [name, ch] : test::zoo_channels()) {
        CAPTURE(name);
        const System s = ch;
        const StructureDecomposition sd = decompose_structure(s);
        const auto cls = classify_modes(s, sd, peripheral_modes(s, 1e-7));
        const auto witnesses = decay_witnesses(s, sd);

        // Map minimal-block labels up to their central blocks.
        const auto central_of = [](const BlockId& id) {
            if (id.kind == BlockId::Kind::x_replica) {
                return "X" + std::to_string(id.block + 1);
            }
            return id.label();
        };
        std::set<std::pair<std::string, std::string>> peripheral_pairs;
        for (const auto& c : cls) {
            const std::string a = central_of(c.from);
            const std::string b = central_of(c.to);
            if (a != b) {
                peripheral_pairs.insert({std::min(a, b), std::max(a, b)});
            }
        }
        std::set<std::pair<std::string, std::string>> witness_pairs;
        for (const auto& w : witnesses) {
            witness_pairs.insert({std::min(w.from.label(), w.to.label()),
                                  std::max(w.from.label(), w.to.label())});
        }

        std::vector<std::string> labels;
        for (std::size_t k = 0; k < sd.u_blocks.size(); ++k) {
            labels.push_back("U" + std::to_string(k + 1));
        }
        for (std::size_t l = 0; l < sd.x_blocks.size(); ++l) {
            labels.push_back("X" + std::to_string(l + 1));
        }
        for (std::size_t i = 0; i < labels.size(); ++i) {
            for (std::size_t j = i + 1; j < labels.size(); ++j) {
                const auto pair = std::make_pair(std::min(labels[i], labels[j]),
                                                 std::max(labels[i], labels[j]));
                const bool has_peripheral = peripheral_pairs.count(pair) > 0;
                const bool has_witness = witness_pairs.count(pair) > 0;
                CAPTURE(pair.first + "|" + pair.second);
                CHECK(has_peripheral != has_witness);
            }
        }
    }
}

TEST_CASE("dephasing inside U blocks for gapped zoo channels") {
    SplitMix64 rng(0xdea1);
    for (const auto& [name, ch] : test::zoo_channels()) {
        CAPTURE(name);
        const System s = ch;
        // Spectral gap below the peripheral circle.
        double sub_radius = 0.0;
        for (const auto& mode : eig_superop(ch.superop, TimeKind::discrete)) {
            const double r = std::abs(mode.eigenvalue);
            if (r < 1.0 - 1e-7) {
                sub_radius = std::max(sub_radius, r);
            }
        }
        if (1.0 - sub_radius < 0.05) {
            continue;
        }
        const StructureDecomposition sd = decompose_structure(s);
        const int steps = static_cast<int>(std::ceil(std::log(1e8) / -std::log(sub_radius + 1e-12))) + 1;
        Matrix rho = test::random_state(rng, ch.dim).rho;
        for (int t = 0; t < steps; ++t) {
            rho = s.apply(rho);
        }
        for (const auto& u : sd.u_blocks) {
            const Matrix block = u.space.compress(rho);
            Eigen::SelfAdjointEigenSolver<Matrix> es(
                hermitize(u.space.compress(u.stationary.rho)));
            const Matrix in_basis = es.eigenvectors().adjoint() * block * es.eigenvectors();
            for (Index i = 0; i < in_basis.rows(); ++i) {
                for (Index j = 0; j < in_basis.cols(); ++j) {
                    if (i != j) {
                        CHECK(std::abs(in_basis(i, j)) < 1e-6);
                    }
                }
            }
        }
    }
}

TEST_CASE("equivalence unitary for a three-replica block") {
    const System s = zoo::replica(3, zoo::depolarizing(0.5));
    const StructureDecomposition sd = decompose_structure(s);
    const XBlock& x = sd.x_blocks[0];
    REQUIRE(x.multiplicity == 3);
    std::vector<Subspace> standard;
    for (const auto& iso : x.replica_isometries) {
        standard.push_back(Subspace::from_basis(iso));
    }
    // Rotate all three replicas by a generic unitary in replica coordinates.
    SplitMix64 rng(31337);
    const Matrix g = random_matrix(rng, 3, 3);
    Eigen::JacobiSVD<Matrix> svd(g, Eigen::ComputeFullU);
    const Matrix rot = svd.matrixU();
    std::vector<Subspace> rotated;
    for (int j = 0; j < 3; ++j) {
        Matrix basis = Matrix::Zero(6, x.factor_dim);
        for (int a = 0; a < 3; ++a) {
            basis += rot(a, j) * x.replica_isometries[static_cast<std::size_t>(a)];
        }
        rotated.push_back(Subspace::from_basis(basis));
    }
    const Matrix u = equivalence_unitary(s, sd, standard, rotated, 1e-8);
    CHECK((u * u.adjoint() - Matrix::Identity(6, 6)).norm() < 1e-9);
    for (int j = 0; j < 3; ++j) {
        double best = 1e300;
        for (int i = 0; i < 3; ++i) {
            best = std::min(best, (u * rotated[static_cast<std::size_t>(j)].projector * u.adjoint() -
                                   standard[static_cast<std::size_t>(i)].projector)
                                      .norm());
        }
        CHECK(best < 1e-8);
    }
}
