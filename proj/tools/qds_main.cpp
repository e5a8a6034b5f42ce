// qds_main.cpp — Command-line front end: verify, analyze, evolve, zoo, oracle

#include "qds/errors.hpp"
#include "qds/json_io.hpp"
#include "qds/report.hpp"
#include "qds/zoo.hpp"

#include <CLI11.hpp>

#include <cstdint>
#include <iostream>
#include <optional>
#include <string>

namespace {

// Exit-code contract: 0 success, 1 verification failure, 2 input error,
// 3 structural inconsistency.
constexpr int kExitOk = 0;
constexpr int kExitVerification = 1;
constexpr int kExitInput = 2;
constexpr int kExitInconsistency = 3;

using qds::io::json;

int run_verify(const std::string& path) {
    std::string digest;
    const qds::System system = qds::io::load_system(path, &digest);
    json out = qds::report::verification_to_json(system, 1e-9);
    out["input_digest"] = digest;
    std::cout << out.dump(2) << "\n";
    return qds::report::verification_passed(out) ? kExitOk : kExitVerification;
}

int run_analyze(const std::string& path, const qds::report::AnalysisOptions& opts,
                const std::string& format) {
    std::string digest;
    const qds::System system = qds::io::load_system(path, &digest);
    const json analysis = qds::report::analyze(system, opts, digest);
    if (format == "text") {
        std::cout << qds::report::render_text(analysis);
    } else {
        std::cout << analysis.dump(2) << "\n";
    }
    return kExitOk;
}

int run_evolve(const std::string& path, const std::string& state_path, int steps, double dt,
               const qds::ToleranceSet& tol) {
    const qds::System system = qds::io::load_system(path);
    const qds::DensityMatrix rho0 = qds::io::load_state(state_path, tol);
    if (rho0.dim() != qds::dim_of(system)) {
        throw std::invalid_argument("evolve: state and channel dimensions differ");
    }
    const json out = qds::report::evolve(system, rho0, steps, dt, tol);
    std::cout << out.dump(2) << "\n";
    return kExitOk;
}

int run_oracle(const std::string& path, int samples, std::uint64_t seed) {
    const qds::System system = qds::io::load_system(path);
    const auto blocks = qds::minimal_enclosures_oracle(system, samples, seed);
    json out;
    out["samples"] = samples;
    out["seed"] = seed;
    json arr = json::array();
    for (const auto& b : blocks) {
        arr.push_back(qds::report::subspace_to_json(b));
    }
    out["central_blocks"] = std::move(arr);
    std::cout << out.dump(2) << "\n";
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"State-space structure analysis for quantum dynamical semigroups"};
    app.require_subcommand(1);

    std::string path;
    std::string state_path;
    std::string format = "json";
    double tol_rank = 0.0;
    double tol_eig = 0.0;
    bool with_oracle = false;
    int steps = 0;
    double dt = 1.0;
    int samples = 500;
    std::uint64_t seed = 1;

    auto* verify = app.add_subcommand("verify", "Check the CPTP / generator axioms of a channel file");
    verify->add_option("path", path, "channel JSON file")->required();

    auto* analyze = app.add_subcommand("analyze", "Full state-space structure report");
    analyze->add_option("path", path, "channel JSON file")->required();
    analyze->add_option("--tol-rank", tol_rank, "relative rank threshold");
    analyze->add_option("--tol-eig", tol_eig, "eigenmode residual tolerance");
    analyze->add_option("--format", format, "output format: json|text")
        ->check(CLI::IsMember({"json", "text"}));
    analyze->add_flag("--oracle", with_oracle, "append oracle-agreement diagnostics (dim <= 6)");
    analyze->add_option("--seed", seed, "seed for the oracle sampling");

    auto* evolve = app.add_subcommand("evolve", "Evolve a state and report decay/coherence columns");
    evolve->add_option("path", path, "channel JSON file")->required();
    evolve->add_option("--state", state_path, "density-matrix JSON file")->required();
    evolve->add_option("--steps", steps, "number of steps")->required();
    evolve->add_option("--dt", dt, "time step (continuous systems)");

    auto* zoo_cmd = app.add_subcommand("zoo", "Emit a built-in channel as channel JSON");
    std::string zoo_name;
    double p_n = 0, p_m = 0, p_dim = 0, p_level = 0, p_gamma = 0, p_p = 0, p_omega = 0,
           p_kraus = 0, p_jumps = 0;
    std::string base_path;
    std::string other_path;
    std::string matrix_path;
    zoo_cmd->add_option("name", zoo_name, "constructor name")->required();
    zoo_cmd->add_option("--n", p_n, "levels");
    zoo_cmd->add_option("--m", p_m, "period / replica count");
    zoo_cmd->add_option("--dim", p_dim, "dimension");
    zoo_cmd->add_option("--level", p_level, "basis level (sudden)");
    zoo_cmd->add_option("--gamma", p_gamma, "damping rate");
    zoo_cmd->add_option("--p", p_p, "mixing probability");
    zoo_cmd->add_option("--omega", p_omega, "frequency");
    zoo_cmd->add_option("--kraus", p_kraus, "number of Kraus operators (random)");
    zoo_cmd->add_option("--jumps", p_jumps, "number of jump operators (random-lindblad)");
    zoo_cmd->add_option("--seed", seed, "seed for random constructors");
    zoo_cmd->add_option("--base", base_path, "base channel JSON (replica, direct-sum, unitary)");
    zoo_cmd->add_option("--other", other_path, "second channel JSON (direct-sum)");
    zoo_cmd->add_option("--matrix", matrix_path,
                        "state JSON supplying a matrix (unitary: the unitary; sudden: rho_inf)");

    auto* oracle_cmd = app.add_subcommand("oracle", "Independent central-block search");
    oracle_cmd->add_option("path", path, "channel JSON file")->required();
    oracle_cmd->add_option("--samples", samples, "number of sampled pure states");
    oracle_cmd->add_option("--seed", seed, "sampling seed");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitInput;
    }

    try {
        if (verify->parsed()) {
            return run_verify(path);
        }
        if (analyze->parsed()) {
            qds::report::AnalysisOptions opts;
            opts.tol = qds::ToleranceSet::from_env();
            if (tol_rank > 0.0) {
                opts.tol.rank = tol_rank;
            }
            if (tol_eig > 0.0) {
                opts.tol.eig = tol_eig;
            }
            opts.with_oracle = with_oracle;
            opts.seed = seed;
            return run_analyze(path, opts, format);
        }
        if (evolve->parsed()) {
            return run_evolve(path, state_path, steps, dt, qds::ToleranceSet::from_env());
        }
        if (oracle_cmd->parsed()) {
            return run_oracle(path, samples, seed);
        }
        if (zoo_cmd->parsed()) {
            qds::System system = [&]() -> qds::System {
                if (zoo_name == "replica") {
                    const auto base = qds::io::load_system(base_path.empty() ? other_path : base_path);
                    const auto* ch = base.channel();
                    if (ch == nullptr) {
                        throw qds::ParseError("zoo replica: base must be a discrete channel");
                    }
                    return qds::zoo::replica(static_cast<int>(p_m), *ch);
                }
                if (zoo_name == "direct-sum") {
                    const auto a = qds::io::load_system(base_path);
                    const auto b = qds::io::load_system(other_path);
                    const auto* ca = a.channel();
                    const auto* cb = b.channel();
                    if (ca == nullptr || cb == nullptr) {
                        throw qds::ParseError("zoo direct-sum: both inputs must be discrete channels");
                    }
                    return qds::zoo::direct_sum(*ca, *cb);
                }
                if (zoo_name == "unitary") {
                    const json j = qds::io::json::parse(qds::io::read_file(matrix_path));
                    const auto dim = static_cast<qds::Index>(j.at("dim").get<long long>());
                    const qds::Matrix u =
                        qds::io::matrix_from_json(j.at("matrix"), dim, dim, "matrix");
                    return qds::zoo::unitary_channel(u);
                }
                if (zoo_name == "hamiltonian") {
                    const json j = qds::io::json::parse(qds::io::read_file(matrix_path));
                    const auto dim = static_cast<qds::Index>(j.at("dim").get<long long>());
                    const qds::Matrix h =
                        qds::io::matrix_from_json(j.at("matrix"), dim, dim, "matrix");
                    return qds::zoo::hamiltonian_generator(h);
                }
                if (zoo_name == "sudden" && !matrix_path.empty()) {
                    return qds::zoo::sudden_decay(qds::io::load_state(matrix_path));
                }
                qds::zoo::ZooSpec spec;
                spec.name = zoo_name;
                spec.seed = seed;
                const auto set_if = [&spec](const char* key, double value, const CLI::Option* opt) {
                    if (opt->count() > 0) {
                        spec.params[key] = value;
                    }
                };
                set_if("n", p_n, zoo_cmd->get_option("--n"));
                set_if("m", p_m, zoo_cmd->get_option("--m"));
                set_if("dim", p_dim, zoo_cmd->get_option("--dim"));
                set_if("level", p_level, zoo_cmd->get_option("--level"));
                set_if("gamma", p_gamma, zoo_cmd->get_option("--gamma"));
                set_if("p", p_p, zoo_cmd->get_option("--p"));
                set_if("omega", p_omega, zoo_cmd->get_option("--omega"));
                set_if("kraus", p_kraus, zoo_cmd->get_option("--kraus"));
                set_if("jumps", p_jumps, zoo_cmd->get_option("--jumps"));
                return qds::zoo::build(spec);
            }();
            std::cout << qds::io::system_to_json(system).dump(2) << "\n";
            return kExitOk;
        }
    } catch (const qds::ParseError& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return kExitInput;
    } catch (const std::invalid_argument& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return kExitInput;
    } catch (const qds::VerificationError& e) {
        std::cerr << "verification failure: " << e.what() << "\n";
        return kExitVerification;
    } catch (const qds::StructuralInconsistency& e) {
        std::cerr << "structural inconsistency: " << e.what() << "\n";
        return kExitInconsistency;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInconsistency;
    }
    return kExitOk;
}
