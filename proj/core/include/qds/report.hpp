// report.hpp — End-to-end analysis pipeline and report serialization

#pragma once

#include "qds/channel.hpp"
#include "qds/coherence.hpp"
#include "qds/json_io.hpp"
#include "qds/structure.hpp"

#include <cstdint>
#include <string>

namespace qds::report {

using nlohmann::json;

struct AnalysisOptions {
    ToleranceSet tol = ToleranceSet::from_env();
    bool with_oracle{false};
    int oracle_samples{500};
    std::uint64_t seed{1};
};

// Verification section; for channels {cp, tp, min_choi_eig, tp_defect},
// for generators the Hermiticity and trace-annihilation defects.
json verification_to_json(const System& s, double tol);
bool verification_passed(const json& verification);

json subspace_to_json(const Subspace& sub);
Subspace subspace_from_json(const json& j);

json structure_to_json(const StructureDecomposition& sd);
json modes_to_json(const std::vector<ModeClassification>& modes);

// The full report: digest, verification, structure, classified modes,
// tolerances, timings, and optional oracle agreement diagnostics.
json analyze(const System& s, const AnalysisOptions& opts, const std::string& digest);

// Human-readable rendering with the dimension-annotated block diagram.
std::string render_text(const json& analysis);

// Trajectory of cmd_evolve: per-step state, decay mass, per-pair coherence
// norms. Verifies the monotonicity of the decay column before emission.
json evolve(const System& s, const DensityMatrix& rho0, int steps, double dt,
            const ToleranceSet& tol);

}  // namespace qds::report
