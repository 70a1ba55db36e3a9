#pragma once

// The output-generalized bilinear model class.
//
// A model is defined by basis-function sets phi_b and phi_b,0, a bijective
// input transformation h, and dimensions. The nonlinear term is
//
//   phi_nl(x_y, x_hu) = phi_b0(x_y) + [phi_b(x_y) (x) x_hu ; 0_k],
//
// affine in the transformed input window x_hu, with the Kronecker product
// ordered phi_b slowest / x_hu fastest. Windows are parameterized by the
// model's unl_lookback d: basis functions receive
//
//   x_y  = [y(t-d); ...; y(t)]     (n_y*(d+1) entries)
//   x_hu = [u_h(t-d); ...; u_h(t)] (n_u*(d+1) entries)
//
// so d = lag reproduces the classical past-output window (plus an unread
// current slot), while d = 0 covers additional inputs that depend on current
// samples only, e.g. sqrt(y(t)). The time argument t is 1-indexed and is how
// basis functions reach known exogenous signals.

#include <cmath>
#include <cstdint>
#include <functional>
#include <memory>
#include <random>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "ogbm/hankel.hpp"
#include "ogbm/signal.hpp"

namespace ogbm {

/// A known time-indexed signal (e.g. an LPV scheduling trajectory) that
/// basis functions may look up. Lookups outside the covered range are hard
/// errors, never extrapolations.
struct ExogenousSignal {
    Eigen::MatrixXd values;       // dim x length
    Eigen::Index start_time = 1;  // time index of the first column

    Eigen::VectorXd lookup(Eigen::Index t) const {
        const Eigen::Index col = t - start_time;
        if (col < 0 || col >= values.cols()) {
            throw std::out_of_range("ExogenousSignal: lookup at t=" + std::to_string(t) + " outside " +
                                    std::to_string(start_time) + ".." +
                                    std::to_string(start_time + values.cols() - 1));
        }
        return values.col(col);
    }
};

/// One basis function: a deterministic map from the output window (and time)
/// to a fixed-length vector. Evaluators must be pure; no continuity or
/// differentiability is assumed.
struct BasisFunction {
    Eigen::Index dim = 1;
    std::function<Eigen::VectorXd(const Eigen::VectorXd& y_window, Eigen::Index t)> eval;
    std::string name;
};

/// A phi_b,0 contribution written at a fixed offset of the n_nl-long
/// nonlinear term (the zero-padded form: slots outside any contribution
/// stay zero).
struct PaddedBasis {
    BasisFunction fn;
    Eigen::Index offset = 0;
};

/// Bijective input transformation u_h = h(u) with a known inverse. Maps with
/// lookback > 0 may read earlier inputs, which are treated as known
/// constants: the inverse is applied sequentially forward in time with the
/// already-recovered original inputs as history.
struct InputMap {
    Eigen::Index lookback = 0;
    std::function<Eigen::VectorXd(const Eigen::VectorXd& u, const Eigen::MatrixXd& u_past)> forward;
    std::function<Eigen::VectorXd(const Eigen::VectorXd& u_h, const Eigen::MatrixXd& u_past)> inverse;
    std::string name = "identity";
};

inline InputMap identity_input_map() {
    InputMap m;
    m.forward = [](const Eigen::VectorXd& u, const Eigen::MatrixXd&) { return u; };
    m.inverse = [](const Eigen::VectorXd& v, const Eigen::MatrixXd&) { return v; };
    return m;
}

/// h(u) = [u1 + u2^2, u2^3]: bijective on R^2, inverse
/// u = [v1 - cbrt(v2)^2, cbrt(v2)].
inline InputMap shear_cube_input_map() {
    InputMap m;
    m.name = "shear_cube";
    m.forward = [](const Eigen::VectorXd& u, const Eigen::MatrixXd&) {
        if (u.size() != 2) throw std::invalid_argument("shear_cube: needs 2 input channels");
        Eigen::VectorXd v(2);
        v << u(0) + u(1) * u(1), u(1) * u(1) * u(1);
        return v;
    };
    m.inverse = [](const Eigen::VectorXd& v, const Eigen::MatrixXd&) {
        if (v.size() != 2) throw std::invalid_argument("shear_cube: needs 2 input channels");
        const double r = std::cbrt(v(1));
        Eigen::VectorXd u(2);
        u << v(0) - r * r, r;
        return u;
    };
    return m;
}

/// h(u) = exp(u) elementwise; inverse log(v), defined for v > 0 only.
inline InputMap exp_input_map() {
    InputMap m;
    m.name = "exp";
    m.forward = [](const Eigen::VectorXd& u, const Eigen::MatrixXd&) { return u.array().exp().matrix().eval(); };
    m.inverse = [](const Eigen::VectorXd& v, const Eigen::MatrixXd&) {
        if ((v.array() <= 0.0).any()) {
            throw std::domain_error("exp input map: inverse needs strictly positive values");
        }
        return v.array().log().matrix().eval();
    };
    return m;
}

// ---------------------------------------------------------------------------
// Basis-function factories. `shift` reads y(t - shift); it must not exceed
// the model's unl_lookback, which is validated when the window is indexed.
// ---------------------------------------------------------------------------

namespace detail {

/// Position of channel `ch` of y(t - shift) inside the window
/// [y(t-d); ...; y(t)].
inline Eigen::Index window_pos(Eigen::Index n_y, Eigen::Index lookback, Eigen::Index ch, Eigen::Index shift) {
    if (ch < 0 || ch >= n_y) throw std::invalid_argument("basis: output channel out of range");
    if (shift < 0 || shift > lookback) {
        throw std::invalid_argument("basis: shift " + std::to_string(shift) + " exceeds window lookback " +
                                    std::to_string(lookback));
    }
    return (lookback - shift) * n_y + ch;
}

}  // namespace detail

inline BasisFunction basis_constant(double value) {
    BasisFunction f;
    f.name = "const(" + std::to_string(value) + ")";
    f.eval = [value](const Eigen::VectorXd&, Eigen::Index) { return Eigen::VectorXd::Constant(1, value).eval(); };
    return f;
}

inline BasisFunction basis_monomial(Eigen::Index n_y, Eigen::Index lookback, Eigen::Index channel,
                                    Eigen::Index shift, int degree) {
    if (degree < 1) throw std::invalid_argument("basis_monomial: degree must be >= 1");
    const Eigen::Index pos = detail::window_pos(n_y, lookback, channel, shift);
    BasisFunction f;
    f.name = "y" + std::to_string(channel + 1) + "(t-" + std::to_string(shift) + ")^" + std::to_string(degree);
    f.eval = [pos, degree](const Eigen::VectorXd& w, Eigen::Index) {
        return Eigen::VectorXd::Constant(1, std::pow(w(pos), degree)).eval();
    };
    return f;
}

inline BasisFunction basis_sin(Eigen::Index n_y, Eigen::Index lookback, Eigen::Index channel, Eigen::Index shift) {
    const Eigen::Index pos = detail::window_pos(n_y, lookback, channel, shift);
    BasisFunction f;
    f.name = "sin(y" + std::to_string(channel + 1) + "(t-" + std::to_string(shift) + "))";
    f.eval = [pos](const Eigen::VectorXd& w, Eigen::Index) {
        return Eigen::VectorXd::Constant(1, std::sin(w(pos))).eval();
    };
    return f;
}

inline BasisFunction basis_cos(Eigen::Index n_y, Eigen::Index lookback, Eigen::Index channel, Eigen::Index shift) {
    const Eigen::Index pos = detail::window_pos(n_y, lookback, channel, shift);
    BasisFunction f;
    f.name = "cos(y" + std::to_string(channel + 1) + "(t-" + std::to_string(shift) + "))";
    f.eval = [pos](const Eigen::VectorXd& w, Eigen::Index) {
        return Eigen::VectorXd::Constant(1, std::cos(w(pos))).eval();
    };
    return f;
}

inline BasisFunction basis_sqrt(Eigen::Index n_y, Eigen::Index lookback, Eigen::Index channel, Eigen::Index shift) {
    const Eigen::Index pos = detail::window_pos(n_y, lookback, channel, shift);
    BasisFunction f;
    f.name = "sqrt(y" + std::to_string(channel + 1) + "(t-" + std::to_string(shift) + "))";
    f.eval = [pos, f_name = f.name](const Eigen::VectorXd& w, Eigen::Index t) {
        if (w(pos) < 0.0) {
            throw std::domain_error("sqrt basis: negative argument " + std::to_string(w(pos)) + " at t=" +
                                    std::to_string(t));
        }
        return Eigen::VectorXd::Constant(1, std::sqrt(w(pos))).eval();
    };
    return f;
}

/// All components of an exogenous signal at t - shift (dim = signal dim).
inline BasisFunction basis_exogenous(std::shared_ptr<const ExogenousSignal> sig, Eigen::Index shift,
                                     const std::string& sig_name = "p") {
    if (!sig) throw std::invalid_argument("basis_exogenous: null signal");
    BasisFunction f;
    f.dim = sig->values.rows();
    f.name = sig_name + "(t-" + std::to_string(shift) + ")";
    f.eval = [sig, shift](const Eigen::VectorXd&, Eigen::Index t) { return sig->lookup(t - shift); };
    return f;
}

/// p(t-shift) (x) y(t-shift), the scheduling/output product terms of an
/// affine LPV system (dim = n_p * n_y).
inline BasisFunction basis_exogenous_kron_output(std::shared_ptr<const ExogenousSignal> sig, Eigen::Index n_y,
                                                 Eigen::Index lookback, Eigen::Index shift,
                                                 const std::string& sig_name = "p") {
    if (!sig) throw std::invalid_argument("basis_exogenous_kron_output: null signal");
    const Eigen::Index first = detail::window_pos(n_y, lookback, 0, shift);
    const Eigen::Index n_p = sig->values.rows();
    BasisFunction f;
    f.dim = n_p * n_y;
    f.name = sig_name + "(t-" + std::to_string(shift) + ")(x)y(t-" + std::to_string(shift) + ")";
    f.eval = [sig, shift, first, n_y, n_p](const Eigen::VectorXd& w, Eigen::Index t) {
        const Eigen::VectorXd p = sig->lookup(t - shift);
        Eigen::VectorXd out(n_p * n_y);
        for (Eigen::Index j = 0; j < n_p; ++j) out.segment(j * n_y, n_y) = p(j) * w.segment(first, n_y);
        return out;
    };
    return f;
}

// ---------------------------------------------------------------------------
// The model
// ---------------------------------------------------------------------------

struct OgbModel {
    SystemDims dims;
    std::vector<BasisFunction> phi_b;
    std::vector<PaddedBasis> phi_b0;
    Eigen::Index zero_pad = 0;  // k of the zero-padded form
    InputMap input_map = identity_input_map();

    Eigen::Index n_b() const {
        Eigen::Index n = 0;
        for (const auto& f : phi_b) n += f.dim;
        return n;
    }
    /// Width of one x_hu window.
    Eigen::Index kron_width() const { return dims.n_u * (dims.unl_lookback + 1); }
    /// Length of u_nl per step: n_b * n_u * (d+1) + k.
    Eigen::Index n_nl() const { return n_b() * kron_width() + zero_pad; }
    /// Leading samples lost to window depth and input-map history.
    Eigen::Index burn_in() const { return dims.unl_lookback + input_map.lookback; }

    void validate() const {
        dims.validate();
        if (dims.n_nl != n_nl()) {
            throw std::invalid_argument("OgbModel: dims.n_nl=" + std::to_string(dims.n_nl) +
                                        " but basis layout gives " + std::to_string(n_nl()));
        }
        for (const auto& pb : phi_b0) {
            if (pb.offset < 0 || pb.offset + pb.fn.dim > n_nl()) {
                throw std::invalid_argument("OgbModel: phi_b0 entry '" + pb.fn.name + "' at offset " +
                                            std::to_string(pb.offset) + " leaves the n_nl=" +
                                            std::to_string(n_nl()) + " layout");
            }
        }
    }
};

/// Stacked phi_b(x_y, t) of length n_b.
inline Eigen::VectorXd eval_phi_b(const OgbModel& m, const Eigen::VectorXd& x_y, Eigen::Index t) {
    Eigen::VectorXd out(m.n_b());
    Eigen::Index at = 0;
    for (const auto& f : m.phi_b) {
        Eigen::VectorXd v = f.eval(x_y, t);
        if (v.size() != f.dim) {
            throw std::logic_error("basis '" + f.name + "' returned " + std::to_string(v.size()) +
                                   " values, declared " + std::to_string(f.dim));
        }
        out.segment(at, f.dim) = v;
        at += f.dim;
    }
    return out;
}

/// Full-length phi_b,0(x_y, t): contributions scattered at their offsets,
/// zero elsewhere.
inline Eigen::VectorXd eval_phi_b0(const OgbModel& m, const Eigen::VectorXd& x_y, Eigen::Index t) {
    Eigen::VectorXd out = Eigen::VectorXd::Zero(m.n_nl());
    for (const auto& pb : m.phi_b0) {
        Eigen::VectorXd v = pb.fn.eval(x_y, t);
        if (v.size() != pb.fn.dim) {
            throw std::logic_error("basis '" + pb.fn.name + "' returned " + std::to_string(v.size()) +
                                   " values, declared " + std::to_string(pb.fn.dim));
        }
        out.segment(pb.offset, pb.fn.dim) += v;
    }
    return out;
}

/// phi_nl(x_y, x_hu, t) = phi_b0 + [phi_b (x) x_hu ; 0_k], with x_hu varying
/// fastest in the Kronecker product.
inline Eigen::VectorXd eval_phi_nl(const OgbModel& m, const Eigen::VectorXd& x_y, const Eigen::VectorXd& x_hu,
                                   Eigen::Index t) {
    const Eigen::Index kw = m.kron_width();
    if (x_y.size() != m.dims.n_y * (m.dims.unl_lookback + 1)) {
        throw std::invalid_argument("eval_phi_nl: x_y has " + std::to_string(x_y.size()) + " entries, window needs " +
                                    std::to_string(m.dims.n_y * (m.dims.unl_lookback + 1)));
    }
    if (x_hu.size() != kw) {
        throw std::invalid_argument("eval_phi_nl: x_hu has " + std::to_string(x_hu.size()) +
                                    " entries, window needs " + std::to_string(kw));
    }
    Eigen::VectorXd out = eval_phi_b0(m, x_y, t);
    if (!m.phi_b.empty()) {
        const Eigen::VectorXd pb = eval_phi_b(m, x_y, t);
        for (Eigen::Index i = 0; i < pb.size(); ++i) out.segment(i * kw, kw) += pb(i) * x_hu;
    }
    return out;
}

/// Applies the input map per step. Columns before lookback+1 are returned
/// zero; valid columns start at t = lookback+1.
inline Eigen::MatrixXd apply_input_map(const InputMap& map, const Eigen::MatrixXd& u) {
    Eigen::MatrixXd uh = Eigen::MatrixXd::Zero(u.rows(), u.cols());
    for (Eigen::Index t = map.lookback; t < u.cols(); ++t) {
        uh.col(t) = map.forward(u.col(t), u.middleCols(t - map.lookback, map.lookback));
    }
    return uh;
}

/// Sequential inverse: earlier original inputs are known constants by the
/// time each step is inverted. `u_past_init` seeds the history for maps with
/// lookback > 0 (empty for memoryless maps).
inline Eigen::MatrixXd invert_input_map(const InputMap& map, const Eigen::MatrixXd& u_h,
                                        const Eigen::MatrixXd& u_past_init = {}) {
    if (map.lookback > 0 && u_past_init.cols() < map.lookback) {
        throw std::invalid_argument("invert_input_map: map needs " + std::to_string(map.lookback) +
                                    " steps of input history");
    }
    Eigen::MatrixXd hist(u_h.rows(), map.lookback + u_h.cols());
    if (map.lookback > 0) hist.leftCols(map.lookback) = u_past_init.rightCols(map.lookback);
    for (Eigen::Index t = 0; t < u_h.cols(); ++t) {
        hist.col(map.lookback + t) = map.inverse(u_h.col(t), hist.middleCols(t, map.lookback));
    }
    return hist.rightCols(u_h.cols());
}

namespace detail {

inline Eigen::VectorXd window_of(const Eigen::MatrixXd& sig, Eigen::Index t, Eigen::Index depth) {
    // t is 1-indexed; window covers t-depth .. t.
    Eigen::VectorXd w((depth + 1) * sig.rows());
    for (Eigen::Index s = 0; s <= depth; ++s) w.segment(s * sig.rows(), sig.rows()) = sig.col(t - 1 - depth + s);
    return w;
}

}  // namespace detail

/// The additional-input signal u_nl(t) = phi_nl(windows ending at t), for
/// t = burn_in+1 .. T; usable length T - burn_in.
inline Trajectory build_unl(const OgbModel& m, const Trajectory& u, const Trajectory& y) {
    m.validate();
    if (u.length() != y.length()) throw std::invalid_argument("build_unl: u and y lengths differ");
    if (u.channels() != m.dims.n_u || y.channels() != m.dims.n_y) {
        throw std::invalid_argument("build_unl: channel counts do not match model dims");
    }
    const Eigen::Index burn = m.burn_in();
    const Eigen::Index T = u.length();
    if (T <= burn) {
        throw std::invalid_argument("build_unl: length " + std::to_string(T) + " does not exceed burn-in " +
                                    std::to_string(burn));
    }
    const Eigen::MatrixXd uh = apply_input_map(m.input_map, u.values);
    const Eigen::Index d = m.dims.unl_lookback;
    Eigen::MatrixXd out(m.n_nl(), T - burn);
    for (Eigen::Index t = burn + 1; t <= T; ++t) {
        out.col(t - burn - 1) =
            eval_phi_nl(m, detail::window_of(y.values, t, d), detail::window_of(uh, t, d), t);
    }
    return make_trajectory(std::move(out), default_labels(m.n_nl(), "unl"));
}

/// Channel-grouped extended trajectory (u_h, y, u_nl) over the usable window
/// t = burn_in+1 .. T.
inline Trajectory build_extended(const OgbModel& m, const Trajectory& u, const Trajectory& y) {
    const Trajectory unl = build_unl(m, u, y);
    const Eigen::Index burn = m.burn_in();
    const Eigen::Index len = u.length() - burn;
    const Eigen::MatrixXd uh = apply_input_map(m.input_map, u.values);

    Eigen::MatrixXd ext(m.dims.extended_channels(), len);
    ext.topRows(m.dims.n_u) = uh.rightCols(len);
    ext.middleRows(m.dims.n_u, m.dims.n_y) = y.values.rightCols(len);
    ext.bottomRows(m.dims.n_nl) = unl.values;

    std::vector<std::string> labels = default_labels(m.dims.n_u, "uh");
    for (const auto& l : default_labels(m.dims.n_y, "y")) labels.push_back(l);
    for (const auto& l : default_labels(m.dims.n_nl, "unl")) labels.push_back(l);
    return make_trajectory(std::move(ext), std::move(labels));
}

/// Pulse-probing result: the stacked inhomogeneous term and the matrix of the
/// affine map from the full stacked transformed-input vector to the stacked
/// additional inputs, so that
///
///   stack(u_nl(d+1..horizon)) = phi_b0_stack + phi_b * stack(u_h(1..horizon)).
struct PulseProbe {
    Eigen::VectorXd phi_b0_stack;  // n_nl*(horizon-d)
    Eigen::MatrixXd phi_b;         // n_nl*(horizon-d) x n_u*horizon
    Eigen::Index first_step = 0;   // d+1
    Eigen::Index steps = 0;        // horizon-d
};

/// Recovers the matrix of the input-affine map by black-box evaluation:
/// phi_nl at the zero input gives the offset, and each unit pulse in the
/// input window gives one column (one evaluation per input coordinate per
/// step; the map is block-banded because step t only sees u_h(t-d..t)).
inline PulseProbe probe_phi_matrix(const OgbModel& m, const Trajectory& y_window, Eigen::Index horizon) {
    m.validate();
    const Eigen::Index d = m.dims.unl_lookback;
    if (horizon < 1 || horizon <= d) {
        throw std::invalid_argument("probe_phi_matrix: horizon must exceed the lookback " + std::to_string(d));
    }
    if (y_window.channels() != m.dims.n_y || y_window.length() < horizon) {
        throw std::invalid_argument("probe_phi_matrix: output window must supply n_y x horizon samples (have " +
                                    std::to_string(y_window.length()) + ", need " + std::to_string(horizon) + ")");
    }
    const Eigen::Index n_nl = m.n_nl();
    const Eigen::Index kw = m.kron_width();
    PulseProbe probe;
    probe.first_step = d + 1;
    probe.steps = horizon - d;
    probe.phi_b0_stack.resize(n_nl * probe.steps);
    probe.phi_b = Eigen::MatrixXd::Zero(n_nl * probe.steps, m.dims.n_u * horizon);

    Eigen::VectorXd pulse = Eigen::VectorXd::Zero(kw);
    for (Eigen::Index t = d + 1; t <= horizon; ++t) {
        const Eigen::VectorXd x_y = detail::window_of(y_window.values, t, d);
        const Eigen::VectorXd phi0 = eval_phi_nl(m, x_y, Eigen::VectorXd::Zero(kw), t);
        const Eigen::Index row = (t - d - 1) * n_nl;
        probe.phi_b0_stack.segment(row, n_nl) = phi0;
        if (m.phi_b.empty()) continue;
        for (Eigen::Index j = 0; j < kw; ++j) {
            pulse(j) = 1.0;
            // window coordinate j = step t-d+j/n_u, channel j%n_u
            const Eigen::Index col = (t - d - 1) * m.dims.n_u + j;
            probe.phi_b.block(row, col, n_nl, 1) = eval_phi_nl(m, x_y, pulse, t) - phi0;
            pulse(j) = 0.0;
        }
    }
    return probe;
}

/// Splits the probed matrix at the past/future boundary:
/// phi_b = [Phi_b,p | Phi_b,f] with n_u*T_ini and n_u*L columns.
inline std::pair<Eigen::MatrixXd, Eigen::MatrixXd> split_phi_matrix(const Eigen::MatrixXd& phi_b,
                                                                    const SystemDims& dims, Eigen::Index T_ini,
                                                                    Eigen::Index L) {
    if (phi_b.cols() != dims.n_u * (T_ini + L)) {
        throw std::invalid_argument("split_phi_matrix: " + std::to_string(phi_b.cols()) +
                                    " columns, expected n_u*(T_ini+L)=" + std::to_string(dims.n_u * (T_ini + L)));
    }
    return {phi_b.leftCols(dims.n_u * T_ini), phi_b.rightCols(dims.n_u * L)};
}

// ---------------------------------------------------------------------------
// Redundancy detection: additional-input channels that are pure time shifts
// of one another make the extended Hankel rows dependent and the rank
// condition unattainable; they carry no new information and can be pruned.
// ---------------------------------------------------------------------------

struct ShiftRedundancy {
    Eigen::Index channel = 0;  // u_nl channel index
    Eigen::Index matches = 0;  // earlier channel it duplicates
    Eigen::Index shift = 0;    // channel(t) == matches(t - shift), shift >= 0
};

/// Numerically detects u_nl channels that equal another channel delayed by
/// 0..d steps, by evaluating the model on random positive trajectories.
/// Exact shifted duplicates evaluate the same arithmetic on the same samples,
/// so agreement is tested at 1e-12 relative tolerance.
inline std::vector<ShiftRedundancy> find_shift_redundancies(const OgbModel& m, Eigen::Index probe_length = 30,
                                                            int trials = 3, std::uint64_t seed = 0x5eed) {
    m.validate();
    const Eigen::Index d = m.dims.unl_lookback;
    std::vector<Eigen::MatrixXd> signals;
    std::mt19937_64 rng(seed);
    for (int k = 0; k < trials; ++k) {
        Eigen::MatrixXd yv(m.dims.n_y, probe_length);
        Eigen::MatrixXd uv(m.dims.n_u, probe_length);
        for (Eigen::Index t = 0; t < probe_length; ++t) {
            for (Eigen::Index c = 0; c < m.dims.n_y; ++c) yv(c, t) = detail::uniform_open(rng, 0.05, 1.0);
            for (Eigen::Index c = 0; c < m.dims.n_u; ++c) uv(c, t) = detail::uniform_open(rng, 0.05, 1.0);
        }
        signals.push_back(build_unl(m, make_trajectory(uv, default_labels(m.dims.n_u, "u")),
                                    make_trajectory(yv, default_labels(m.dims.n_y, "y")))
                              .values);
    }
    auto same = [&](Eigen::Index a, Eigen::Index b, Eigen::Index s) {
        for (const auto& sig : signals) {
            for (Eigen::Index t = s; t < sig.cols(); ++t) {
                const double va = sig(a, t);
                const double vb = sig(b, t - s);
                if (std::abs(va - vb) > 1e-12 * std::max({1.0, std::abs(va), std::abs(vb)})) return false;
            }
        }
        return true;
    };
    std::vector<ShiftRedundancy> found;
    const Eigen::Index n = m.n_nl();
    for (Eigen::Index i = 0; i < n; ++i) {
        for (Eigen::Index j = 0; j < i; ++j) {
            for (Eigen::Index s = 0; s <= d; ++s) {
                if (same(i, j, s)) {
                    found.push_back({i, j, s});
                    break;
                }
                if (s > 0 && same(j, i, s)) {
                    found.push_back({j, i, s});
                    break;
                }
            }
        }
    }
    return found;
}

}  // namespace ogbm
