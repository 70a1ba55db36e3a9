#pragma once

// Structure estimation: the left null space of a shallow extended Hankel
// matrix H_{l+1}(w_ext) encodes the system's difference equations; its
// coefficients reveal which (channel, shift) terms actually influence each
// output, letting inactive basis functions be pruned.

#include <algorithm>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "ogbm/hankel.hpp"
#include "ogbm/numlin.hpp"
#include "ogbm/ogb.hpp"
#include "ogbm/signal.hpp"

namespace ogbm {

/// Minimal usable extended-trajectory length for structure estimation:
/// (n_u + n_nl)(lag + 1) + order + lag.
inline Eigen::Index min_structure_length(const SystemDims& dims) {
    dims.validate();
    return (dims.n_u + dims.n_nl) * (dims.lag + 1) + dims.order + dims.lag;
}

/// One term of a difference equation: w_ext channel index and how many steps
/// back from the newest window sample (shift 0 = current).
struct ActiveTerm {
    Eigen::Index channel = 0;
    Eigen::Index shift = 0;
    friend bool operator==(const ActiveTerm&, const ActiveTerm&) = default;
    friend auto operator<=>(const ActiveTerm&, const ActiveTerm&) = default;
};

/// One canonicalized annihilator row: coefficients of a single difference
/// equation, attributed to the output whose current sample it pivots on.
struct AnnihilatorRow {
    Eigen::Index output = -1;  // -1 when no current-output pivot was found
    Eigen::VectorXd coefficients;
    std::vector<ActiveTerm> active;
};

struct StructureReport {
    Eigen::MatrixXd annihilator;          // canonicalized rows x q_ext*(l+1)
    std::vector<AnnihilatorRow> rows;
    std::vector<ActiveTerm> active_terms; // union over rows, sorted
    std::vector<bool> unl_channel_active; // per additional-input channel
    Eigen::Index data_length_used = 0;
    double annihilation_residual = 0.0;   // max |annihilator * H| entry
    std::vector<std::string> channel_labels;
    std::optional<OgbModel> pruned_model;
};

/// Left null space of H_{l+1}(w_ext), canonicalized by Gauss-Jordan pivoting
/// on the current-output coordinates so each row reads as one output's
/// difference equation. A term is active when its coefficient exceeds
/// `activity_threshold` relative to the largest coefficient in its row.
inline StructureReport estimate_structure(const Trajectory& w_ext, const SystemDims& dims,
                                          const RankPolicy& policy = {}, double activity_threshold = 1e-6) {
    dims.validate();
    if (w_ext.channels() != dims.extended_channels()) {
        throw std::invalid_argument("estimate_structure: trajectory has " + std::to_string(w_ext.channels()) +
                                    " channels, dims say " + std::to_string(dims.extended_channels()));
    }
    const Eigen::Index need = min_structure_length(dims);
    if (w_ext.length() < need) {
        throw std::invalid_argument("estimate_structure: needs an extended trajectory of length >= " +
                                    std::to_string(need) + " ((n_u+n_nl)(lag+1)+order+lag), have " +
                                    std::to_string(w_ext.length()));
    }
    const Eigen::Index q = dims.extended_channels();
    const Eigen::Index depth = dims.lag + 1;
    const Eigen::MatrixXd H = build_hankel(w_ext, depth).matrix;

    const auto svd = detail::svd_of(H, Eigen::ComputeFullU);
    const Eigen::Index rank = detail::rank_from_singvalues(svd.singularValues(), H.rows(), H.cols(), policy);
    const Eigen::Index null_dim = H.rows() - rank;

    StructureReport rep;
    rep.data_length_used = w_ext.length();
    rep.channel_labels = w_ext.labels;
    Eigen::MatrixXd ann = svd.matrixU().rightCols(null_dim).transpose();

    // Canonicalize: one pivot per output on its newest-sample coordinate.
    const auto current_coord = [&](Eigen::Index output) { return dims.lag * q + dims.n_u + output; };
    Eigen::Index placed = 0;
    for (Eigen::Index out = 0; out < dims.n_y && placed < ann.rows(); ++out) {
        const Eigen::Index col = current_coord(out);
        Eigen::Index best = -1;
        double best_mag = 0.0;
        for (Eigen::Index r = placed; r < ann.rows(); ++r) {
            if (std::abs(ann(r, col)) > best_mag) {
                best_mag = std::abs(ann(r, col));
                best = r;
            }
        }
        if (best < 0 || best_mag < 1e-12) continue;  // no equation pivots on this output
        ann.row(best).swap(ann.row(placed));
        ann.row(placed) /= ann(placed, col);
        for (Eigen::Index r = 0; r < ann.rows(); ++r) {
            if (r != placed) ann.row(r) -= ann(r, col) * ann.row(placed);
        }
        ++placed;
    }
    rep.annihilator = ann;
    rep.annihilation_residual = ann.rows() > 0 ? (ann * H).cwiseAbs().maxCoeff() : 0.0;

    rep.unl_channel_active.assign(static_cast<std::size_t>(dims.n_nl), false);
    for (Eigen::Index r = 0; r < ann.rows(); ++r) {
        AnnihilatorRow row;
        row.coefficients = ann.row(r);
        const double scale = ann.row(r).cwiseAbs().maxCoeff();
        for (Eigen::Index c = 0; c < ann.cols(); ++c) {
            if (std::abs(ann(r, c)) <= activity_threshold * scale) continue;
            const Eigen::Index block = c / q;
            const Eigen::Index channel = c % q;
            row.active.push_back({channel, dims.lag - block});
            if (channel >= dims.n_u + dims.n_y) {
                rep.unl_channel_active[static_cast<std::size_t>(channel - dims.n_u - dims.n_y)] = true;
            }
        }
        // Identify the output this row pivots on, if canonicalization placed one.
        for (Eigen::Index out = 0; out < dims.n_y; ++out) {
            if (std::abs(ann(r, current_coord(out)) - 1.0) < 1e-9) {
                bool sole = true;
                for (Eigen::Index o2 = 0; o2 < dims.n_y; ++o2) {
                    if (o2 != out && std::abs(ann(r, current_coord(o2))) > 1e-9) sole = false;
                }
                if (sole) row.output = out;
                break;
            }
        }
        rep.rows.push_back(std::move(row));
    }
    for (const auto& row : rep.rows) {
        rep.active_terms.insert(rep.active_terms.end(), row.active.begin(), row.active.end());
    }
    std::sort(rep.active_terms.begin(), rep.active_terms.end());
    rep.active_terms.erase(std::unique(rep.active_terms.begin(), rep.active_terms.end()), rep.active_terms.end());
    return rep;
}

/// Removes basis functions none of whose additional-input channels are
/// active. phi_b functions are dropped whole (all their Kronecker slots must
/// be inactive); phi_b,0 entries must live in the zero-padded region and are
/// repacked after the surviving Kronecker block.
inline OgbModel prune_model(const OgbModel& model, const StructureReport& report) {
    model.validate();
    if (static_cast<Eigen::Index>(report.unl_channel_active.size()) != model.n_nl()) {
        throw std::invalid_argument("prune_model: report covers " +
                                    std::to_string(report.unl_channel_active.size()) + " channels, model has " +
                                    std::to_string(model.n_nl()));
    }
    const Eigen::Index kw = model.kron_width();
    const Eigen::Index kron_len = model.n_b() * kw;

    OgbModel pruned;
    pruned.dims = model.dims;
    pruned.input_map = model.input_map;

    Eigen::Index at = 0;
    for (const auto& f : model.phi_b) {
        bool any = false;
        for (Eigen::Index c = at * kw; c < (at + f.dim) * kw; ++c) {
            any = any || report.unl_channel_active[static_cast<std::size_t>(c)];
        }
        if (any) pruned.phi_b.push_back(f);
        at += f.dim;
    }
    Eigen::Index pad_at = pruned.n_b() * kw;
    for (const auto& pb : model.phi_b0) {
        if (pb.offset < kron_len) {
            throw std::invalid_argument("prune_model: phi_b0 entry '" + pb.fn.name +
                                        "' overlaps the Kronecker block; pruning supports zero-padded "
                                        "entries only");
        }
        bool any = false;
        for (Eigen::Index c = pb.offset; c < pb.offset + pb.fn.dim; ++c) {
            any = any || report.unl_channel_active[static_cast<std::size_t>(c)];
        }
        if (!any) continue;
        pruned.phi_b0.push_back({pb.fn, pad_at});
        pad_at += pb.fn.dim;
    }
    pruned.zero_pad = pad_at - pruned.n_b() * kw;
    pruned.dims.n_nl = pruned.n_nl();
    pruned.validate();
    return pruned;
}

}  // namespace ogbm
