// report.cpp — Analysis pipeline, report JSON, text rendering, trajectories

#include "qds/report.hpp"

#include "qds/errors.hpp"

#include <unsupported/Eigen/MatrixFunctions>

#include <chrono>
#include <cmath>
#include <iomanip>
#include <sstream>

namespace qds::report {

namespace {

using Clock = std::chrono::steady_clock;

double ms_since(Clock::time_point start) {
    return std::chrono::duration<double, std::milli>(Clock::now() - start).count();
}

json tolerances_to_json(const ToleranceSet& tol) {
    return json{{"herm", tol.herm},   {"psd", tol.psd},     {"trace", tol.trace},
                {"eig", tol.eig},     {"rank", tol.rank},   {"cluster", tol.cluster}};
}

json complex_to_json(Complex z) {
    return json::array({z.real(), z.imag()});
}

}  // namespace

json verification_to_json(const System& s, double tol) {
    json out;
    if (const auto* ch = s.channel()) {
        const VerificationReport rep = verify_cptp(*ch, tol);
        out["kind"] = "channel";
        out["cp"] = rep.cp;
        out["tp"] = rep.tp;
        out["min_choi_eig"] = rep.min_choi_eig;
        out["tp_defect"] = rep.tp_defect;
        out["ok"] = rep.ok();
        return out;
    }
    const auto& gen = *s.generator();
    const GeneratorReport rep = verify_generator(gen, tol);
    out["kind"] = "generator";
    out["hermitian"] = rep.hermitian;
    out["trace_annihilating"] = rep.trace_annihilating;
    out["herm_defect"] = rep.herm_defect;
    out["trace_defect"] = rep.trace_defect;
    out["ok"] = rep.ok();
    return out;
}

bool verification_passed(const json& verification) {
    return verification.value("ok", false);
}

json subspace_to_json(const Subspace& sub) {
    json out;
    out["ambient"] = sub.ambient;
    out["dim"] = sub.dim();
    out["basis"] = io::matrix_to_json(sub.basis);
    return out;
}

Subspace subspace_from_json(const json& j) {
    const auto ambient = static_cast<Index>(j.at("ambient").get<long long>());
    const auto dim = static_cast<Index>(j.at("dim").get<long long>());
    if (dim == 0) {
        return Subspace::zero(ambient);
    }
    const Matrix basis = io::matrix_from_json(j.at("basis"), ambient, dim, "subspace basis");
    return Subspace::from_basis(basis);
}

json structure_to_json(const StructureDecomposition& sd) {
    json out;
    out["dim"] = sd.dim();
    out["decaying"] = subspace_to_json(sd.decaying);
    out["recurrent"] = subspace_to_json(sd.recurrent);
    json u_blocks = json::array();
    for (const auto& u : sd.u_blocks) {
        json b;
        b["dim"] = u.space.dim();
        b["space"] = subspace_to_json(u.space);
        b["stationary"] = io::matrix_to_json(u.stationary.rho);
        u_blocks.push_back(std::move(b));
    }
    out["u_blocks"] = std::move(u_blocks);
    json x_blocks = json::array();
    for (const auto& x : sd.x_blocks) {
        json b;
        b["dim"] = x.space.dim();
        b["space"] = subspace_to_json(x.space);
        b["multiplicity"] = x.multiplicity;
        b["factor_dim"] = x.factor_dim;
        json isos = json::array();
        for (const auto& j : x.replica_isometries) {
            isos.push_back(io::matrix_to_json(j));
        }
        b["replica_isometries"] = std::move(isos);
        b["tau"] = io::matrix_to_json(x.tau.rho);
        x_blocks.push_back(std::move(b));
    }
    out["x_blocks"] = std::move(x_blocks);
    out["stationary_parameter_count"] = sd.stationary_parameter_count();
    return out;
}

json modes_to_json(const std::vector<ModeClassification>& modes) {
    json out = json::array();
    for (const auto& m : modes) {
        json entry;
        entry["kind"] = to_string(m.kind);
        entry["from"] = m.from.label();
        entry["to"] = m.to.label();
        entry["eigenvalue"] = complex_to_json(m.eigenvalue);
        entry["frequency"] = m.frequency;
        entry["residual"] = m.residual;
        if (m.root_of_unity) {
            entry["q"] = m.root_of_unity->first;
            entry["m"] = m.root_of_unity->second;
        }
        out.push_back(std::move(entry));
    }
    return out;
}

namespace {

json oracle_agreement(const System& s, const StructureDecomposition& sd, int samples,
                      std::uint64_t seed) {
    json out;
    const std::vector<Subspace> oracle_blocks = minimal_enclosures_oracle(s, samples, seed);
    const std::vector<Subspace> computed = sd.central_blocks();
    out["oracle_block_count"] = oracle_blocks.size();
    out["computed_block_count"] = computed.size();
    json dims = json::array();
    for (const auto& b : oracle_blocks) {
        dims.push_back(b.dim());
    }
    out["oracle_block_dims"] = std::move(dims);

    double worst = std::numeric_limits<double>::infinity();
    if (oracle_blocks.size() == computed.size()) {
        worst = 0.0;
        std::vector<bool> used(computed.size(), false);
        for (const auto& ob : oracle_blocks) {
            double best = std::numeric_limits<double>::infinity();
            std::size_t best_j = computed.size();
            for (std::size_t j = 0; j < computed.size(); ++j) {
                if (used[j]) {
                    continue;
                }
                const double dist = projector_distance(ob, computed[j]);
                if (dist < best) {
                    best = dist;
                    best_j = j;
                }
            }
            if (best_j < computed.size()) {
                used[best_j] = true;
            }
            worst = std::max(worst, best);
        }
    }
    out["max_projector_distance"] = worst;
    out["agreement"] = worst <= 1e-6;
    return out;
}

}  // namespace

json analyze(const System& s, const AnalysisOptions& opts, const std::string& digest) {
    json out;
    json timings;
    out["input_digest"] = digest;
    out["tolerances"] = tolerances_to_json(opts.tol);

    auto t0 = Clock::now();
    const json verification = verification_to_json(s, 10.0 * std::max(opts.tol.psd, opts.tol.trace));
    timings["verify_ms"] = ms_since(t0);
    out["verification"] = verification;
    if (!verification_passed(verification)) {
        throw VerificationError("analyze: input failed verification: " + verification.dump());
    }

    t0 = Clock::now();
    const StructureDecomposition sd = decompose_structure(s, opts.tol);
    timings["structure_ms"] = ms_since(t0);
    out["structure"] = structure_to_json(sd);

    t0 = Clock::now();
    const std::vector<EigenMode> peripheral = peripheral_modes(s, opts.tol.cluster);
    std::vector<ModeClassification> classified = classify_modes(s, sd, peripheral, opts.tol.cluster);
    const std::vector<ModeClassification> witnesses = decay_witnesses(s, sd);
    classified.insert(classified.end(), witnesses.begin(), witnesses.end());
    timings["modes_ms"] = ms_since(t0);
    out["modes"] = modes_to_json(classified);

    if (opts.with_oracle) {
        if (dim_of(s) > 6) {
            out["oracle"] = json{{"skipped", "oracle restricted to dim <= 6"}};
        } else {
            t0 = Clock::now();
            out["oracle"] = oracle_agreement(s, sd, opts.oracle_samples, opts.seed);
            timings["oracle_ms"] = ms_since(t0);
        }
    }
    out["timings"] = std::move(timings);
    return out;
}

namespace {

std::string format_complex(const json& pair) {
    std::ostringstream out;
    const double re = pair[0].get<double>();
    const double im = pair[1].get<double>();
    out << std::setprecision(6) << std::fixed << re << (im < 0 ? " - " : " + ")
        << std::abs(im) << "i";
    return out.str();
}

}  // namespace

std::string render_text(const json& analysis) {
    std::ostringstream out;
    const json& st = analysis.at("structure");
    const auto n = st.at("dim").get<long long>();
    const auto d_dim = st.at("decaying").at("dim").get<long long>();
    const auto r_dim = st.at("recurrent").at("dim").get<long long>();

    out << "input digest: " << analysis.at("input_digest").get<std::string>() << "\n";
    const json& ver = analysis.at("verification");
    if (ver.at("kind").get<std::string>() == "channel") {
        out << "verification: cp=" << (ver.at("cp").get<bool>() ? "yes" : "no")
            << " tp=" << (ver.at("tp").get<bool>() ? "yes" : "no")
            << "  (min Choi eig " << ver.at("min_choi_eig").get<double>() << ", tp defect "
            << ver.at("tp_defect").get<double>() << ")\n";
    } else {
        out << "verification: hermitian=" << (ver.at("hermitian").get<bool>() ? "yes" : "no")
            << " trace-annihilating=" << (ver.at("trace_annihilating").get<bool>() ? "yes" : "no")
            << "\n";
    }

    out << "\nHilbert space (dim " << n << ") = D (dim " << d_dim << ") + R (dim " << r_dim
        << ")\n";

    std::vector<std::string> labels;
    std::vector<long long> dims;
    if (d_dim > 0) {
        labels.push_back("D");
        dims.push_back(d_dim);
    }
    int idx = 1;
    for (const auto& u : st.at("u_blocks")) {
        labels.push_back("U" + std::to_string(idx++));
        dims.push_back(u.at("dim").get<long long>());
    }
    idx = 1;
    for (const auto& x : st.at("x_blocks")) {
        labels.push_back("X" + std::to_string(idx++));
        dims.push_back(x.at("dim").get<long long>());
    }

    idx = 1;
    for (const auto& u : st.at("u_blocks")) {
        out << "  U" << idx++ << "  dim " << u.at("dim").get<long long>() << "\n";
    }
    idx = 1;
    for (const auto& x : st.at("x_blocks")) {
        out << "  X" << idx++ << "  dim " << x.at("dim").get<long long>() << " = "
            << x.at("multiplicity").get<int>() << " x V(dim "
            << x.at("factor_dim").get<long long>() << ")\n";
    }
    out << "stationary-state parameter count: "
        << st.at("stationary_parameter_count").get<long long>() << "\n";

    // Block diagram: diagonal sections evolve inside themselves, off-diagonal
    // sections carry coherence.
    out << "\nblock diagram (rows x cols = matrix sections):\n";
    out << "        ";
    for (std::size_t j = 0; j < labels.size(); ++j) {
        out << std::setw(7) << (labels[j] + ":" + std::to_string(dims[j]));
    }
    out << "\n";
    for (std::size_t i = 0; i < labels.size(); ++i) {
        out << std::setw(7) << (labels[i] + ":" + std::to_string(dims[i])) << " [";
        for (std::size_t j = 0; j < labels.size(); ++j) {
            const bool diag = i == j;
            out << std::setw(6) << (diag ? "#" : "C") << " ";
        }
        out << "]\n";
    }

    out << "\nperipheral modes:\n";
    for (const auto& m : analysis.at("modes")) {
        out << "  lambda = " << format_complex(m.at("eigenvalue")) << "  "
            << std::setw(28) << std::left << m.at("kind").get<std::string>() << std::right
            << "  " << m.at("from").get<std::string>();
        if (m.at("from").get<std::string>() != m.at("to").get<std::string>()) {
            out << " <-> " << m.at("to").get<std::string>();
        }
        if (m.contains("q")) {
            out << "  (q=" << m.at("q").get<int>() << ", m=" << m.at("m").get<int>() << ")";
        }
        out << "\n";
    }
    if (analysis.contains("oracle")) {
        out << "\noracle: " << analysis.at("oracle").dump() << "\n";
    }
    return out.str();
}

json evolve(const System& s, const DensityMatrix& rho0, int steps, double dt,
            const ToleranceSet& tol) {
    const Index n = dim_of(s);
    if (rho0.dim() != n) {
        throw std::invalid_argument("evolve: state dimension mismatch");
    }
    if (steps < 0) {
        throw std::invalid_argument("evolve: steps must be >= 0");
    }
    Matrix step;
    if (time_kind(s) == TimeKind::discrete) {
        step = superop_of(s);
    } else {
        if (dt <= 0.0) {
            throw std::invalid_argument("evolve: dt must be > 0 for continuous systems");
        }
        const Matrix scaled = dt * superop_of(s);
        step = scaled.exp();
    }

    const StructureDecomposition sd = decompose_structure(s, tol);
    const std::vector<Subspace> central = sd.central_blocks();
    std::vector<std::string> labels;
    for (std::size_t k = 0; k < sd.u_blocks.size(); ++k) {
        labels.push_back("U" + std::to_string(k + 1));
    }
    for (std::size_t l = 0; l < sd.x_blocks.size(); ++l) {
        labels.push_back("X" + std::to_string(l + 1));
    }

    json trajectory = json::array();
    std::vector<double> decay_column;
    Vector v = vec(rho0.rho);
    for (int t = 0; t <= steps; ++t) {
        const Matrix rho_t = unvec(v, n, n);
        json entry;
        entry["t"] = time_kind(s) == TimeKind::discrete ? static_cast<double>(t) : t * dt;
        entry["state"] = io::matrix_to_json(rho_t);
        const double decay_mass = (sd.decaying.projector * rho_t).trace().real();
        entry["decay_mass"] = decay_mass;
        decay_column.push_back(decay_mass);
        json coherence;
        for (std::size_t i = 0; i < central.size(); ++i) {
            for (std::size_t j = i + 1; j < central.size(); ++j) {
                const double norm =
                    (central[i].projector * rho_t * central[j].projector).norm();
                coherence["C(" + labels[i] + "," + labels[j] + ")"] = norm;
            }
        }
        if (sd.decaying.dim() > 0) {
            coherence["C(D,R)"] =
                (sd.decaying.projector * rho_t * sd.recurrent.projector).norm();
        }
        entry["coherence_norms"] = std::move(coherence);
        trajectory.push_back(std::move(entry));
        if (t < steps) {
            v = step * v;
        }
    }

    for (std::size_t t = 1; t < decay_column.size(); ++t) {
        if (decay_column[t] > decay_column[t - 1] + 1e-10) {
            throw StructuralInconsistency("evolve: decay column is not monotone at step " +
                                          std::to_string(t));
        }
    }

    json out;
    out["steps"] = steps;
    out["dt"] = dt;
    out["trajectory"] = std::move(trajectory);
    return out;
}

}  // namespace qds::report
