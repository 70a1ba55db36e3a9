#pragma once

// Finite multivariate discrete-time signals and the operations the rest of
// the library builds on: input/output partitioning, concatenation, shifting
// and seeded random excitation.
//
// Time is 1-indexed in all documentation (w(1)..w(T)); storage is 0-indexed.
// Trajectories are immutable values: every operation returns a new one.

#include <cmath>
#include <cstdint>
#include <random>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

namespace ogbm {

/// A q-variate signal of length T, stored as a q x T matrix (one column per
/// time step) with one label per channel.
struct Trajectory {
    Eigen::MatrixXd values;           // q x T
    std::vector<std::string> labels;  // size q

    Eigen::Index channels() const { return values.rows(); }
    Eigen::Index length() const { return values.cols(); }

    /// Sample at 1-indexed time t.
    Eigen::VectorXd at(Eigen::Index t) const {
        if (t < 1 || t > length()) {
            throw std::out_of_range("Trajectory::at: time index " + std::to_string(t) +
                                    " outside 1.." + std::to_string(length()));
        }
        return values.col(t - 1);
    }
};

inline std::vector<std::string> default_labels(Eigen::Index q, const std::string& prefix = "ch") {
    std::vector<std::string> labels;
    labels.reserve(static_cast<std::size_t>(q));
    for (Eigen::Index i = 0; i < q; ++i) labels.push_back(prefix + std::to_string(i + 1));
    return labels;
}

/// Builds a trajectory, validating finiteness and label count. Length 0 is
/// permitted (it is the identity element of concat).
inline Trajectory make_trajectory(Eigen::MatrixXd values, std::vector<std::string> labels = {}) {
    if (labels.empty()) labels = default_labels(values.rows());
    if (static_cast<Eigen::Index>(labels.size()) != values.rows()) {
        throw std::invalid_argument("make_trajectory: " + std::to_string(labels.size()) +
                                    " labels for " + std::to_string(values.rows()) + " channels");
    }
    if (!values.array().isFinite().all()) {
        throw std::invalid_argument("make_trajectory: non-finite sample");
    }
    return Trajectory{std::move(values), std::move(labels)};
}

/// Input/output partitioning of a q-variate signal: disjoint index lists
/// covering all channels (0-based channel indices).
struct Partitioning {
    std::vector<Eigen::Index> input_indices;
    std::vector<Eigen::Index> output_indices;

    Eigen::Index n_u() const { return static_cast<Eigen::Index>(input_indices.size()); }
    Eigen::Index n_y() const { return static_cast<Eigen::Index>(output_indices.size()); }

    void validate(Eigen::Index q) const {
        std::vector<int> seen(static_cast<std::size_t>(q), 0);
        auto mark = [&](Eigen::Index i) {
            if (i < 0 || i >= q) {
                throw std::out_of_range("Partitioning: channel index " + std::to_string(i) +
                                        " outside 0.." + std::to_string(q - 1));
            }
            if (seen[static_cast<std::size_t>(i)]++) {
                throw std::invalid_argument("Partitioning: duplicate channel index " + std::to_string(i));
            }
        };
        for (auto i : input_indices) mark(i);
        for (auto i : output_indices) mark(i);
        if (n_u() + n_y() != q) {
            throw std::invalid_argument("Partitioning: indices do not cover all " + std::to_string(q) +
                                        " channels");
        }
    }
};

/// Uniform iid excitation on the open interval ]low, high[, with an optional
/// all-zero prefix. Fully determined by the seed.
struct ExcitationSpec {
    Eigen::Index length = 0;
    double low = 0.0;
    double high = 1.0;
    Eigen::Index leading_zeros = 0;
    std::uint64_t seed = 0;

    void validate() const {
        if (length < 1) throw std::invalid_argument("ExcitationSpec: length must be positive");
        if (!(low < high)) throw std::invalid_argument("ExcitationSpec: requires low < high");
        if (leading_zeros < 0 || leading_zeros > length) {
            throw std::invalid_argument("ExcitationSpec: leading_zeros outside 0..length");
        }
    }
};

/// w1 followed by w2. Channel counts and labels must agree.
inline Trajectory concat(const Trajectory& w1, const Trajectory& w2) {
    if (w1.channels() != w2.channels() || w1.labels != w2.labels) {
        throw std::invalid_argument("concat: channel mismatch (" + std::to_string(w1.channels()) +
                                    " vs " + std::to_string(w2.channels()) + " or differing labels)");
    }
    Eigen::MatrixXd out(w1.channels(), w1.length() + w2.length());
    out.leftCols(w1.length()) = w1.values;
    out.rightCols(w2.length()) = w2.values;
    return Trajectory{std::move(out), w1.labels};
}

/// Window advanced (k>0) or delayed (k<0) by |k| steps: length T-|k|.
/// shift(w,1) realizes the shift operator sigma, dropping w(1).
inline Trajectory shift(const Trajectory& w, Eigen::Index k) {
    const Eigen::Index a = std::abs(k);
    if (a >= w.length()) {
        throw std::invalid_argument("shift: |k|=" + std::to_string(a) + " leaves no samples of a length-" +
                                    std::to_string(w.length()) + " trajectory");
    }
    Eigen::MatrixXd out = (k >= 0) ? w.values.rightCols(w.length() - a).eval()
                                   : w.values.leftCols(w.length() - a).eval();
    return Trajectory{std::move(out), w.labels};
}

/// Selects the input and output channels, in partition order.
inline std::pair<Trajectory, Trajectory> split(const Trajectory& w, const Partitioning& p) {
    p.validate(w.channels());
    auto take = [&](const std::vector<Eigen::Index>& idx) {
        Eigen::MatrixXd m(static_cast<Eigen::Index>(idx.size()), w.length());
        std::vector<std::string> labels;
        labels.reserve(idx.size());
        for (std::size_t r = 0; r < idx.size(); ++r) {
            m.row(static_cast<Eigen::Index>(r)) = w.values.row(idx[r]);
            labels.push_back(w.labels[static_cast<std::size_t>(idx[r])]);
        }
        return Trajectory{std::move(m), std::move(labels)};
    };
    return {take(p.input_indices), take(p.output_indices)};
}

/// Inverse of split: scatters u and y back to their original channel slots.
inline Trajectory merge(const Trajectory& u, const Trajectory& y, const Partitioning& p) {
    const Eigen::Index q = u.channels() + y.channels();
    p.validate(q);
    if (u.length() != y.length()) throw std::invalid_argument("merge: length mismatch");
    if (u.channels() != p.n_u() || y.channels() != p.n_y()) {
        throw std::invalid_argument("merge: channel counts do not match partitioning");
    }
    Eigen::MatrixXd m(q, u.length());
    std::vector<std::string> labels(static_cast<std::size_t>(q));
    for (std::size_t r = 0; r < p.input_indices.size(); ++r) {
        m.row(p.input_indices[r]) = u.values.row(static_cast<Eigen::Index>(r));
        labels[static_cast<std::size_t>(p.input_indices[r])] = u.labels[r];
    }
    for (std::size_t r = 0; r < p.output_indices.size(); ++r) {
        m.row(p.output_indices[r]) = y.values.row(static_cast<Eigen::Index>(r));
        labels[static_cast<std::size_t>(p.output_indices[r])] = y.labels[r];
    }
    return Trajectory{std::move(m), std::move(labels)};
}

namespace detail {

/// mt19937_64 output mapped to [0,1) with 53 random bits. Arithmetic only,
/// so the stream is bit-identical on every conforming platform.
inline double uniform01(std::mt19937_64& rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

/// Draw from the open interval ]low, high[. Endpoint hits (probability-zero
/// in exact arithmetic, possible after rounding) are rejected and redrawn so
/// the interval really is open; determinism is unaffected because the
/// rejection is itself a pure function of the seeded stream.
inline double uniform_open(std::mt19937_64& rng, double low, double high) {
    for (;;) {
        const double v = low + uniform01(rng) * (high - low);
        if (v > low && v < high) return v;
    }
}

}  // namespace detail

/// Seeded iid excitation: the first `leading_zeros` columns are exactly zero
/// (and consume no draws), remaining entries are uniform on ]low, high[,
/// sampled time-major then channel-major.
inline Trajectory generate_excitation(const ExcitationSpec& spec, Eigen::Index n_channels,
                                      const std::string& label_prefix = "u") {
    spec.validate();
    if (n_channels < 1) throw std::invalid_argument("generate_excitation: n_channels must be positive");
    std::mt19937_64 rng(spec.seed);
    Eigen::MatrixXd m = Eigen::MatrixXd::Zero(n_channels, spec.length);
    for (Eigen::Index t = spec.leading_zeros; t < spec.length; ++t) {
        for (Eigen::Index c = 0; c < n_channels; ++c) {
            m(c, t) = detail::uniform_open(rng, spec.low, spec.high);
        }
    }
    return Trajectory{std::move(m), default_labels(n_channels, label_prefix)};
}

/// Stacks the samples of w into one column: [w(1); w(2); ...; w(T)].
inline Eigen::VectorXd stack(const Trajectory& w) {
    Eigen::VectorXd v(w.channels() * w.length());
    for (Eigen::Index t = 0; t < w.length(); ++t) {
        v.segment(t * w.channels(), w.channels()) = w.values.col(t);
    }
    return v;
}

/// Inverse of stack for a known channel count.
inline Eigen::MatrixXd unstack(const Eigen::VectorXd& v, Eigen::Index channels) {
    if (channels < 1 || v.size() % channels != 0) {
        throw std::invalid_argument("unstack: vector size " + std::to_string(v.size()) +
                                    " is not a multiple of " + std::to_string(channels));
    }
    const Eigen::Index T = v.size() / channels;
    Eigen::MatrixXd m(channels, T);
    for (Eigen::Index t = 0; t < T; ++t) m.col(t) = v.segment(t * channels, channels);
    return m;
}

}  // namespace ogbm
