// json_io.cpp — Channel / state JSON parsing and emission

#include "qds/json_io.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

namespace qds::io {

namespace {

Index require_dim(const json& j) {
    if (!j.contains("dim") || !j["dim"].is_number_integer()) {
        throw ParseError("channel JSON: missing or non-integer \"dim\"");
    }
    const auto dim = j["dim"].get<long long>();
    if (dim < 1) {
        throw ParseError("channel JSON: \"dim\" must be >= 1");
    }
    return static_cast<Index>(dim);
}

std::string require_string(const json& j, const char* key) {
    if (!j.contains(key) || !j[key].is_string()) {
        throw ParseError(std::string("channel JSON: missing or non-string \"") + key + "\"");
    }
    return j[key].get<std::string>();
}

const json& require_array(const json& j, const char* key) {
    if (!j.contains(key) || !j[key].is_array()) {
        throw ParseError(std::string("channel JSON: missing or non-array \"") + key + "\"");
    }
    return j[key];
}

}  // namespace

json matrix_to_json(const Matrix& m) {
    json out = json::array();
    for (Index i = 0; i < m.rows(); ++i) {
        for (Index j = 0; j < m.cols(); ++j) {
            out.push_back({m(i, j).real(), m(i, j).imag()});
        }
    }
    return out;
}

Matrix matrix_from_json(const json& j, Index rows, Index cols, const std::string& where) {
    if (!j.is_array()) {
        throw ParseError(where + ": expected an array of [re, im] pairs");
    }
    if (static_cast<Index>(j.size()) != rows * cols) {
        std::ostringstream msg;
        msg << where << ": expected " << rows * cols << " entries, got " << j.size();
        throw ParseError(msg.str());
    }
    Matrix m(rows, cols);
    Index at = 0;
    for (Index i = 0; i < rows; ++i) {
        for (Index k = 0; k < cols; ++k, ++at) {
            const json& entry = j[static_cast<std::size_t>(at)];
            if (!entry.is_array() || entry.size() != 2 || !entry[0].is_number() ||
                !entry[1].is_number()) {
                std::ostringstream msg;
                msg << where << ": entry " << at << " is not an [re, im] pair";
                throw ParseError(msg.str());
            }
            const double re = entry[0].get<double>();
            const double im = entry[1].get<double>();
            if (!std::isfinite(re) || !std::isfinite(im)) {
                std::ostringstream msg;
                msg << where << ": entry " << at << " is not finite";
                throw ParseError(msg.str());
            }
            m(i, k) = Complex(re, im);
        }
    }
    return m;
}

json system_to_json(const System& s) {
    json out;
    out["dim"] = dim_of(s);
    if (const auto* ch = s.channel()) {
        out["time"] = "discrete";
        if (!ch->kraus.empty()) {
            out["repr"] = "kraus";
            json mats = json::array();
            for (const auto& k : ch->kraus) {
                mats.push_back(matrix_to_json(k));
            }
            out["matrices"] = std::move(mats);
        } else {
            out["repr"] = "superop";
            out["matrices"] = json::array({matrix_to_json(ch->superop)});
        }
        return out;
    }
    const auto& gen = *s.generator();
    out["time"] = "continuous";
    if (gen.has_parts) {
        out["repr"] = "lindblad";
        out["hamiltonian"] = matrix_to_json(gen.hamiltonian);
        json jumps = json::array();
        for (const auto& l : gen.jumps) {
            jumps.push_back(matrix_to_json(l));
        }
        out["jumps"] = std::move(jumps);
    } else {
        out["repr"] = "superop";
        out["matrices"] = json::array({matrix_to_json(gen.superop)});
    }
    return out;
}

System system_from_json(const json& j) {
    if (!j.is_object()) {
        throw ParseError("channel JSON: top level must be an object");
    }
    const Index dim = require_dim(j);
    const std::string time = require_string(j, "time");
    const std::string repr = require_string(j, "repr");
    if (time != "discrete" && time != "continuous") {
        throw ParseError("channel JSON: \"time\" must be \"discrete\" or \"continuous\"");
    }

    if (repr == "lindblad") {
        if (time != "continuous") {
            throw ParseError("channel JSON: repr \"lindblad\" requires continuous time");
        }
        const Matrix h = matrix_from_json(require_array(j, "hamiltonian"), dim, dim, "hamiltonian");
        std::vector<Matrix> jumps;
        if (j.contains("jumps")) {
            const json& arr = require_array(j, "jumps");
            for (std::size_t k = 0; k < arr.size(); ++k) {
                jumps.push_back(
                    matrix_from_json(arr[k], dim, dim, "jumps[" + std::to_string(k) + "]"));
            }
        }
        try {
            return LindbladGenerator::from_parts(h, std::move(jumps));
        } catch (const std::invalid_argument& e) {
            throw ParseError(std::string("channel JSON: ") + e.what());
        }
    }

    if (repr == "kraus") {
        if (time != "discrete") {
            throw ParseError("channel JSON: repr \"kraus\" requires discrete time");
        }
        const json& arr = require_array(j, "matrices");
        if (arr.empty()) {
            throw ParseError("channel JSON: \"matrices\" must contain at least one Kraus operator");
        }
        std::vector<Matrix> kraus;
        for (std::size_t k = 0; k < arr.size(); ++k) {
            kraus.push_back(
                matrix_from_json(arr[k], dim, dim, "matrices[" + std::to_string(k) + "]"));
        }
        return QuantumChannel::from_kraus(std::move(kraus));
    }

    if (repr == "superop" || repr == "choi") {
        const json& arr = require_array(j, "matrices");
        if (arr.size() != 1) {
            throw ParseError("channel JSON: repr \"" + repr + "\" takes exactly one matrix");
        }
        Matrix m = matrix_from_json(arr[0], dim * dim, dim * dim, "matrices[0]");
        if (repr == "choi") {
            if (time != "discrete") {
                throw ParseError("channel JSON: repr \"choi\" requires discrete time");
            }
            m = superop_from_choi(m);
        }
        if (time == "discrete") {
            return QuantumChannel::from_superop(std::move(m));
        }
        return LindbladGenerator::from_superop(std::move(m));
    }

    throw ParseError("channel JSON: unknown repr \"" + repr + "\"");
}

json state_to_json(const DensityMatrix& rho) {
    json out;
    out["dim"] = rho.dim();
    out["matrix"] = matrix_to_json(rho.rho);
    return out;
}

DensityMatrix state_from_json(const json& j, const ToleranceSet& tol) {
    if (!j.is_object()) {
        throw ParseError("state JSON: top level must be an object");
    }
    const Index dim = require_dim(j);
    const Matrix m = matrix_from_json(require_array(j, "matrix"), dim, dim, "matrix");
    try {
        return DensityMatrix::from_matrix(m, tol);
    } catch (const std::invalid_argument& e) {
        throw ParseError(std::string("state JSON: ") + e.what());
    }
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw ParseError("cannot open file: " + path);
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

namespace {

json parse_text(const std::string& text, const std::string& path) {
    try {
        return json::parse(text);
    } catch (const json::parse_error& e) {
        throw ParseError(path + ": " + e.what());
    }
}

}  // namespace

System load_system(const std::string& path) {
    return load_system(path, nullptr);
}

System load_system(const std::string& path, std::string* digest_out) {
    const std::string text = read_file(path);
    if (digest_out != nullptr) {
        *digest_out = content_digest(text);
    }
    return system_from_json(parse_text(text, path));
}

DensityMatrix load_state(const std::string& path, const ToleranceSet& tol) {
    const std::string text = read_file(path);
    return state_from_json(parse_text(text, path), tol);
}

std::string content_digest(std::string_view bytes) {
    std::uint64_t hash = 0xcbf29ce484222325ULL;
    for (const char c : bytes) {
        hash ^= static_cast<unsigned char>(c);
        hash *= 0x100000001b3ULL;
    }
    std::ostringstream out;
    out << "fnv1a64:" << std::hex;
    out.width(16);
    out.fill('0');
    out << hash;
    return out.str();
}

}  // namespace qds::io
