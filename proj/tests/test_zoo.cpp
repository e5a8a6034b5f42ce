// test_zoo.cpp — Constructor contracts, determinism, verification

#include "qds/errors.hpp"
#include "qds/spectral.hpp"
#include "qds/structure.hpp"
#include "qds/zoo.hpp"

#include "test_support.hpp"

#include <doctest.h>

#include <cmath>
#include <numbers>

using namespace qds;

TEST_CASE("cyclic_shift") {
    SUBCASE("n=2 swaps the two levels") {
        const QuantumChannel ch = zoo::cyclic_shift(2);
        const Matrix out = System(ch).apply(basis_state(2, 0).rho);
        CHECK((out - basis_state(2, 1).rho).norm() < 1e-14);
    }
    SUBCASE("n=3 has the third roots of unity in its peripheral spectrum") {
        const auto modes = peripheral_modes(System(zoo::cyclic_shift(3)), 1e-7);
        CHECK(modes.size() == 3);
    }
    SUBCASE("n=4: the fourth power acts as the identity on diagonal matrices") {
        const QuantumChannel ch = zoo::cyclic_shift(4);
        const System s = ch;
        Matrix rho = Matrix::Zero(4, 4);
        rho(0, 0) = 0.1;
        rho(1, 1) = 0.2;
        rho(2, 2) = 0.3;
        rho(3, 3) = 0.4;
        Matrix out = rho;
        for (int t = 0; t < 4; ++t) {
            out = s.apply(out);
        }
        CHECK((out - rho).norm() < 1e-14);
    }
    SUBCASE("fixed space is one-dimensional for n = 2..6") {
        for (int n = 2; n <= 6; ++n) {
            CHECK(fixed_space(System(zoo::cyclic_shift(n))).dim() == 1);
        }
    }
    SUBCASE("n < 2 rejected") {
        CHECK_THROWS_AS(zoo::cyclic_shift(1), std::invalid_argument);
    }
}

TEST_CASE("collapse_cascade") {
    SUBCASE("n=5, m=3: the documented stationary state") {
        const System s = zoo::collapse_cascade(5, 3);
        Matrix rho = Matrix::Zero(5, 5);
        rho(0, 0) = rho(1, 1) = 1.0 / 3.0;
        rho(2, 2) = rho(3, 3) = rho(4, 4) = 1.0 / 9.0;
        CHECK((s.apply(rho) - rho).norm() < 1e-14);
    }
    SUBCASE("peripheral eigenvalue count equals m for 2 <= m <= n <= 6") {
        for (int n = 2; n <= 6; ++n) {
            for (int m = 2; m <= n; ++m) {
                CAPTURE(n);
                CAPTURE(m);
                const auto modes = peripheral_modes(System(zoo::collapse_cascade(n, m)), 1e-7);
                CHECK(static_cast<int>(modes.size()) == m);
            }
        }
    }
    SUBCASE("m=2 reads its spread weight from level 1") {
        const QuantumChannel ch = zoo::collapse_cascade(4, 2);
        const Matrix out = System(ch).apply(basis_state(4, 0).rho);
        // Population of level 1 spreads uniformly over levels 2..4.
        CHECK(out(0, 0).real() == doctest::Approx(0.0));
        for (Index k = 1; k < 4; ++k) {
            CHECK(out(k, k).real() == doctest::Approx(1.0 / 3.0));
        }
    }
    SUBCASE("parameter violations rejected") {
        CHECK_THROWS_AS(zoo::collapse_cascade(3, 1), std::invalid_argument);
        CHECK_THROWS_AS(zoo::collapse_cascade(3, 4), std::invalid_argument);
    }
}

TEST_CASE("sudden_decay") {
    SUBCASE("maps everything to rho_inf and is idempotent") {
        SplitMix64 rng(41);
        const DensityMatrix rho_inf = test::random_state(rng, 3);
        const QuantumChannel ch = zoo::sudden_decay(rho_inf);
        const DensityMatrix rho0 = test::random_state(rng, 3);
        CHECK((System(ch).apply(rho0.rho) - rho_inf.rho).norm() < 1e-12);
        CHECK((ch.superop * ch.superop - ch.superop).norm() < 1e-12);
    }
    SUBCASE("full-rank target: no decaying subspace") {
        const SplitResult split = split_decaying(System(zoo::sudden_decay(maximally_mixed(2))));
        CHECK(split.decaying.dim() == 0);
    }
}

TEST_CASE("standard channels and generators") {
    SUBCASE("depolarizing(1) equals sudden_decay(1/2) as a superoperator") {
        const QuantumChannel a = zoo::depolarizing(1.0);
        const QuantumChannel b = zoo::sudden_decay(maximally_mixed(2));
        CHECK((a.superop - b.superop).norm() < 1e-14);
    }
    SUBCASE("nondegenerate unitary: N one-dimensional U blocks") {
        Matrix u = Matrix::Zero(3, 3);
        u(0, 0) = std::polar(1.0, 0.3);
        u(1, 1) = std::polar(1.0, 1.1);
        u(2, 2) = std::polar(1.0, 2.2);
        const StructureDecomposition sd = decompose_structure(System(zoo::unitary_channel(u)));
        CHECK(sd.u_blocks.size() == 3);
        CHECK(sd.x_blocks.empty());
    }
    SUBCASE("non-unitary input rejected") {
        Matrix u = Matrix::Identity(2, 2);
        u(0, 0) = 2.0;
        CHECK_THROWS_AS(zoo::unitary_channel(u), std::invalid_argument);
    }
    SUBCASE("damped qubit generator: verified, kernel is the ground state") {
        const LindbladGenerator gen = zoo::damped_qubit_generator(0.7, 1.3);
        CHECK(verify_generator(gen).ok());
        const FixedSpace fs = fixed_space(System(gen));
        REQUIRE(fs.dim() == 1);
        const Matrix diff = fs.basis[0] * fs.basis[0](0, 0) / std::abs(fs.basis[0](0, 0)) -
                            basis_state(2, 0).rho;
        CHECK(diff.norm() < 1e-9);
    }
}

TEST_CASE("direct_sum and replica") {
    SUBCASE("replica(2, depolarizing(0.5)) is the canonical X block") {
        const StructureDecomposition sd =
            decompose_structure(System(zoo::replica(2, zoo::depolarizing(0.5))));
        REQUIRE(sd.x_blocks.size() == 1);
        CHECK(sd.x_blocks[0].multiplicity == 2);
        CHECK((sd.x_blocks[0].tau.rho - 0.5 * Matrix::Identity(2, 2)).norm() < 1e-9);
    }
    SUBCASE("direct_sum of different dephasings: four U blocks, no cross coherence") {
        const QuantumChannel ch = zoo::direct_sum(zoo::dephasing(0.3), zoo::dephasing(0.7));
        const StructureDecomposition sd = decompose_structure(System(ch));
        CHECK(sd.u_blocks.size() == 4);
        CHECK(sd.x_blocks.empty());
    }
    SUBCASE("direct_sum annihilates coherence between the summands") {
        const QuantumChannel ch = zoo::direct_sum(zoo::dephasing(0.3), zoo::dephasing(0.3));
        Matrix x = Matrix::Zero(4, 4);
        x(0, 2) = 1.0;
        CHECK(System(ch).apply(x).norm() < 1e-14);
    }
}

TEST_CASE("random constructors") {
    SUBCASE("determinism: identical seeds give identical systems") {
        const QuantumChannel a = zoo::random_cptp(4, 6, 7);
        const QuantumChannel b = zoo::random_cptp(4, 6, 7);
        REQUIRE(a.kraus.size() == b.kraus.size());
        for (std::size_t k = 0; k < a.kraus.size(); ++k) {
            CHECK((a.kraus[k] - b.kraus[k]).norm() == 0.0);
        }
        const LindbladGenerator ga = zoo::random_lindblad(3, 2, 9);
        const LindbladGenerator gb = zoo::random_lindblad(3, 2, 9);
        CHECK((ga.superop - gb.superop).norm() == 0.0);
    }
    SUBCASE("every output verifies at 1e-10") {
        for (int seed = 1; seed <= 10; ++seed) {
            const VerificationReport rep = verify_cptp(zoo::random_cptp(4, 3, seed), 1e-10);
            CHECK(rep.cp);
            CHECK(rep.tp);
            CHECK(verify_generator(zoo::random_lindblad(4, 3, seed), 1e-10).ok());
        }
    }
    SUBCASE("generic channels have a faithful stationary state") {
        const StructureDecomposition sd = decompose_structure(System(zoo::random_cptp(4, 6, 1)));
        CHECK(sd.decaying.dim() == 0);
        REQUIRE(sd.u_blocks.size() == 1);
        CHECK(sd.u_blocks[0].space.dim() == 4);
        CHECK(sd.x_blocks.empty());
    }
}

TEST_CASE("zoo build dispatch") {
    SUBCASE("known names") {
        zoo::ZooSpec spec;
        spec.name = "cyclic";
        spec.params["n"] = 4;
        CHECK(dim_of(zoo::build(spec)) == 4);
        spec.name = "cascade";
        spec.params["n"] = 5;
        spec.params["m"] = 3;
        CHECK(dim_of(zoo::build(spec)) == 5);
    }
    SUBCASE("unknown name lists the constructors") {
        zoo::ZooSpec spec;
        spec.name = "nonsense";
        bool threw = false;
        try {
            (void)zoo::build(spec);
        } catch (const ParseError& e) {
            threw = true;
            CHECK(std::string(e.what()).find("available:") != std::string::npos);
        }
        CHECK(threw);
    }
}
