// zoo.hpp — Deterministic constructors for example channels and seeded
// random test systems

#pragma once

#include "qds/channel.hpp"
#include "qds/density.hpp"

#include <cstdint>
#include <map>
#include <optional>
#include <string>

namespace qds::zoo {

// Named constructor request, as used by the CLI. Parameters are looked up by
// name; integer-valued parameters are rounded.
struct ZooSpec {
    std::string name;
    std::map<std::string, double> params;
    std::optional<std::uint64_t> seed;
};

// Cyclic shift on n levels: Kraus set {|k+1><k|}, indices mod n.
QuantumChannel cyclic_shift(int n);

// Collapse-and-cascade map on n levels with period m (2 <= m <= n): the top
// levels m..n collapse onto level 1, levels 1..m-2 shift up by one, and level
// m-1 spreads uniformly over levels m..n. For m = 2 the shift term is absent
// and the spread reads its weight from level 1.
QuantumChannel collapse_cascade(int n, int m);

// rho -> Tr(rho) rho_inf; idempotent, decay completes in one step.
QuantumChannel sudden_decay(const DensityMatrix& rho_inf);

QuantumChannel amplitude_damping(double gamma);
QuantumChannel dephasing(double p);
QuantumChannel depolarizing(double p);
QuantumChannel unitary_channel(const Matrix& u, double tol = 1e-9);

LindbladGenerator hamiltonian_generator(const Matrix& h);
// H = diag(0, omega), jump sqrt(gamma)|0><1|.
LindbladGenerator damped_qubit_generator(double gamma, double omega);

// Block-diagonal Kraus padding; both summands are enclosures and evolve
// independently. Coherence between the summands is annihilated.
QuantumChannel direct_sum(const QuantumChannel& a, const QuantumChannel& b);

// m identical copies sharing one set of Kraus operators: {1_m (x) K}.
QuantumChannel replica(int m, const QuantumChannel& a);

// Seeded complex-Gaussian Kraus block, normalized so sum K^dag K = 1.
// Deterministic per seed (SplitMix64 + Box-Muller, see types.hpp).
QuantumChannel random_cptp(Index dim, int n_kraus, std::uint64_t seed);
LindbladGenerator random_lindblad(Index dim, int n_jumps, std::uint64_t seed);

// Dispatch by name for parameter-only constructors. Throws ParseError for
// unknown names; the message lists the available constructors.
System build(const ZooSpec& spec);
std::string available_constructors();

}  // namespace qds::zoo
