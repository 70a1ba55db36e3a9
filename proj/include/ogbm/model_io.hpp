#pragma once

// JSON descriptions of OGB and LPV models: a registry of named basis
// functions (constant, monomials, sin/cos/sqrt of single outputs,
// exogenous-signal terms), input-map selection by name, and scheduling
// signals given inline, as CSV references, or as sinusoid generators.
// Channels and shifts are 1-indexed/0-indexed respectively in the files,
// matching the documentation convention y_ch(t - shift).

#include <cmath>
#include <map>
#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "ogbm/csv.hpp"
#include "ogbm/lpv.hpp"
#include "ogbm/ogb.hpp"

namespace ogbm {

using json = nlohmann::json;

/// Configuration/schema problems; the CLI maps these to exit code 3.
struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

using ExogenousMap = std::map<std::string, std::shared_ptr<const ExogenousSignal>>;

inline InputMap make_input_map(const std::string& name) {
    if (name == "identity") return identity_input_map();
    if (name == "shear_cube") return shear_cube_input_map();
    if (name == "exp") return exp_input_map();
    throw ConfigError("unknown input map '" + name + "' (known: identity, shear_cube, exp)");
}

namespace detail {

template <typename T>
T get_field(const json& j, const std::string& key) {
    if (!j.contains(key)) throw ConfigError("missing field '" + key + "' in " + j.dump());
    try {
        return j.at(key).get<T>();
    } catch (const json::exception& e) {
        throw ConfigError("field '" + key + "': " + e.what());
    }
}

template <typename T>
T get_field_or(const json& j, const std::string& key, T fallback) {
    return j.contains(key) ? get_field<T>(j, key) : fallback;
}

}  // namespace detail

/// Builds one registry basis function. `n_y` and `lookback` fix the window
/// layout; exogenous kinds resolve their signal by name.
inline BasisFunction make_basis(const json& j, Eigen::Index n_y, Eigen::Index lookback,
                                const ExogenousMap& exo = {}) {
    const auto kind = detail::get_field<std::string>(j, "kind");
    try {
        if (kind == "constant") return basis_constant(detail::get_field<double>(j, "value"));
        if (kind == "monomial" || kind == "sin" || kind == "cos" || kind == "sqrt") {
            const Eigen::Index ch = detail::get_field<Eigen::Index>(j, "channel") - 1;
            const Eigen::Index shift = detail::get_field_or<Eigen::Index>(j, "shift", 0);
            if (kind == "monomial") return basis_monomial(n_y, lookback, ch, shift, detail::get_field<int>(j, "degree"));
            if (kind == "sin") return basis_sin(n_y, lookback, ch, shift);
            if (kind == "cos") return basis_cos(n_y, lookback, ch, shift);
            return basis_sqrt(n_y, lookback, ch, shift);
        }
        if (kind == "exogenous" || kind == "exogenous_kron_output") {
            const auto name = detail::get_field_or<std::string>(j, "signal", "p");
            const auto it = exo.find(name);
            if (it == exo.end()) throw ConfigError("basis references unknown exogenous signal '" + name + "'");
            const Eigen::Index shift = detail::get_field_or<Eigen::Index>(j, "shift", 0);
            if (kind == "exogenous") return basis_exogenous(it->second, shift, name);
            return basis_exogenous_kron_output(it->second, n_y, lookback, shift, name);
        }
    } catch (const std::invalid_argument& e) {
        throw ConfigError(std::string("basis '") + kind + "': " + e.what());
    }
    throw ConfigError("unknown basis kind '" + kind +
                      "' (known: constant, monomial, sin, cos, sqrt, exogenous, exogenous_kron_output)");
}

/// Scheduling/exogenous signal: {"inline": [[...per-time column...]]},
/// {"csv": "file.csv"} (channels become signal components), or
/// {"sinusoid": {"length": N, "offset": [...], "amplitude": [...],
/// "frequency": [...], "phase": [...]}} with
/// p_j(t) = offset_j + amplitude_j * sin(2 pi frequency_j t + phase_j).
inline std::shared_ptr<const ExogenousSignal> make_exogenous(const json& j, const std::string& base_dir = ".") {
    auto sig = std::make_shared<ExogenousSignal>();
    sig->start_time = detail::get_field_or<Eigen::Index>(j, "start_time", 1);
    if (j.contains("inline")) {
        const auto rows = detail::get_field<std::vector<std::vector<double>>>(j, "inline");
        if (rows.empty()) throw ConfigError("inline exogenous signal is empty");
        sig->values.resize(static_cast<Eigen::Index>(rows.size()), static_cast<Eigen::Index>(rows[0].size()));
        for (std::size_t i = 0; i < rows.size(); ++i) {
            if (rows[i].size() != rows[0].size()) throw ConfigError("inline exogenous rows differ in length");
            for (std::size_t t = 0; t < rows[i].size(); ++t) {
                sig->values(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(t)) = rows[i][t];
            }
        }
        return sig;
    }
    if (j.contains("csv")) {
        const Trajectory w = read_trajectory_csv(base_dir + "/" + detail::get_field<std::string>(j, "csv"));
        sig->values = w.values;
        return sig;
    }
    if (j.contains("sinusoid")) {
        const json& s = j.at("sinusoid");
        const auto length = detail::get_field<Eigen::Index>(s, "length");
        const auto amp = detail::get_field<std::vector<double>>(s, "amplitude");
        const auto freq = detail::get_field<std::vector<double>>(s, "frequency");
        const auto phase = detail::get_field_or<std::vector<double>>(s, "phase", std::vector<double>(amp.size(), 0));
        const auto offset = detail::get_field_or<std::vector<double>>(s, "offset", std::vector<double>(amp.size(), 0));
        if (freq.size() != amp.size() || phase.size() != amp.size() || offset.size() != amp.size()) {
            throw ConfigError("sinusoid: amplitude/frequency/phase/offset sizes differ");
        }
        if (length < 1) throw ConfigError("sinusoid: length must be positive");
        sig->values.resize(static_cast<Eigen::Index>(amp.size()), length);
        for (Eigen::Index t = 1; t <= length; ++t) {
            for (std::size_t jj = 0; jj < amp.size(); ++jj) {
                sig->values(static_cast<Eigen::Index>(jj), t - 1) =
                    offset[jj] + amp[jj] * std::sin(2.0 * M_PI * freq[jj] * static_cast<double>(t) + phase[jj]);
            }
        }
        return sig;
    }
    throw ConfigError("exogenous signal needs one of: inline, csv, sinusoid");
}

/// Full OGB model description: dims, zero_pad, input_map, phi_b, phi_b0 and
/// optional named exogenous signals. Determinism of evaluation is the
/// contract; bit-exact round trips of the description are not.
inline OgbModel model_from_json(const json& j, const std::string& base_dir = ".",
                                const ExogenousMap& extra_signals = {}) {
    OgbModel m;
    const json& d = j.contains("dims") ? j.at("dims") : throw ConfigError("model: missing 'dims'");
    m.dims.n_u = detail::get_field<Eigen::Index>(d, "n_u");
    m.dims.n_y = detail::get_field<Eigen::Index>(d, "n_y");
    m.dims.n_nl = detail::get_field<Eigen::Index>(d, "n_nl");
    m.dims.lag = detail::get_field<Eigen::Index>(d, "lag");
    m.dims.order = detail::get_field<Eigen::Index>(d, "order");
    m.dims.unl_lookback = detail::get_field_or<Eigen::Index>(d, "unl_lookback", 0);
    m.zero_pad = detail::get_field_or<Eigen::Index>(j, "zero_pad", 0);
    m.input_map = make_input_map(detail::get_field_or<std::string>(j, "input_map", "identity"));

    ExogenousMap exo = extra_signals;
    if (j.contains("exogenous")) {
        for (const auto& [name, spec] : j.at("exogenous").items()) exo[name] = make_exogenous(spec, base_dir);
    }
    for (const json& bj : detail::get_field_or<json>(j, "phi_b", json::array())) {
        m.phi_b.push_back(make_basis(bj, m.dims.n_y, m.dims.unl_lookback, exo));
    }
    for (const json& ej : detail::get_field_or<json>(j, "phi_b0", json::array())) {
        PaddedBasis pb;
        pb.offset = detail::get_field_or<Eigen::Index>(ej, "offset", 0);
        pb.fn = make_basis(ej.contains("basis") ? ej.at("basis") : ej, m.dims.n_y, m.dims.unl_lookback, exo);
        m.phi_b0.push_back(std::move(pb));
    }
    try {
        m.validate();
    } catch (const std::invalid_argument& e) {
        throw ConfigError(std::string("model: ") + e.what());
    }
    return m;
}

/// LPV model file: dimensions, coefficient matrices a[i][j] (i = 1..n_a) and
/// b[i][j] (i = 0..n_b) as nested row-major arrays, and the scheduling
/// signal.
inline LpvModel lpv_from_json(const json& j, const std::string& base_dir = ".") {
    LpvModel m;
    m.n_a = detail::get_field<Eigen::Index>(j, "n_a");
    m.n_b = detail::get_field<Eigen::Index>(j, "n_b");
    m.n_p = detail::get_field<Eigen::Index>(j, "n_p");
    m.n_u = detail::get_field<Eigen::Index>(j, "n_u");
    m.n_y = detail::get_field<Eigen::Index>(j, "n_y");

    auto parse_matrix = [](const json& mj, Eigen::Index rows, Eigen::Index cols) {
        const auto data = mj.get<std::vector<std::vector<double>>>();
        if (static_cast<Eigen::Index>(data.size()) != rows) throw ConfigError("coefficient matrix row count");
        Eigen::MatrixXd M(rows, cols);
        for (Eigen::Index r = 0; r < rows; ++r) {
            if (static_cast<Eigen::Index>(data[static_cast<std::size_t>(r)].size()) != cols) {
                throw ConfigError("coefficient matrix column count");
            }
            for (Eigen::Index c = 0; c < cols; ++c) M(r, c) = data[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)];
        }
        return M;
    };
    auto parse_coeffs = [&](const json& arr, Eigen::Index shifts, Eigen::Index cols) {
        std::vector<std::vector<Eigen::MatrixXd>> out;
        if (static_cast<Eigen::Index>(arr.size()) != shifts) {
            throw ConfigError("coefficient list: expected " + std::to_string(shifts) + " shifts, got " +
                              std::to_string(arr.size()));
        }
        for (const json& per_shift : arr) {
            if (static_cast<Eigen::Index>(per_shift.size()) != m.n_p) {
                throw ConfigError("coefficient list: expected n_p matrices per shift");
            }
            std::vector<Eigen::MatrixXd> row;
            for (const json& mj : per_shift) row.push_back(parse_matrix(mj, m.n_y, cols));
            out.push_back(std::move(row));
        }
        return out;
    };
    m.a = parse_coeffs(detail::get_field_or<json>(j, "a", json::array()), m.n_a, m.n_y);
    m.b = parse_coeffs(detail::get_field<json>(j, "b"), m.n_b + 1, m.n_u);
    m.scheduling = make_exogenous(j.contains("scheduling") ? j.at("scheduling")
                                                           : throw ConfigError("lpv: missing 'scheduling'"),
                                  base_dir);
    try {
        m.validate();
    } catch (const std::invalid_argument& e) {
        throw ConfigError(std::string("lpv: ") + e.what());
    }
    return m;
}

}  // namespace ogbm
