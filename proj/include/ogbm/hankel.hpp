#pragma once

// Block Hankel matrices of finite trajectories, the past/future row
// partitioning used by the matcher, the generalized persistency of
// excitation rank check, and minimal data-length arithmetic.

#include <stdexcept>
#include <string>

#include <Eigen/Dense>

#include "ogbm/numlin.hpp"
#include "ogbm/signal.hpp"

namespace ogbm {

/// Dimensions of an extended system: n_u physical inputs, n_y outputs, n_nl
/// additional (nonlinear) inputs, the lag and order of the LTI embedding,
/// and unl_lookback = how many past steps the additional input needs (0 when
/// it depends on current samples only).
struct SystemDims {
    Eigen::Index n_u = 0;
    Eigen::Index n_y = 0;
    Eigen::Index n_nl = 0;
    Eigen::Index lag = 0;
    Eigen::Index order = 0;
    Eigen::Index unl_lookback = 0;

    Eigen::Index extended_channels() const { return n_u + n_y + n_nl; }

    void validate() const {
        if (n_u < 0 || n_y < 0 || n_nl < 0 || lag < 0 || order < 0 || unl_lookback < 0) {
            throw std::invalid_argument("SystemDims: negative dimension");
        }
    }
};

/// H_L(w): block row i, column j holds w(i+j-1); shape (q L) x (T-L+1).
struct BlockHankel {
    Eigen::MatrixXd matrix;
    Eigen::Index block_rows = 0;  // L
    Eigen::Index channels = 0;    // q
};

inline BlockHankel build_hankel(const Trajectory& w, Eigen::Index L) {
    if (L < 1) throw std::invalid_argument("build_hankel: L must be positive");
    if (L > w.length()) {
        throw std::invalid_argument("build_hankel: L=" + std::to_string(L) + " exceeds trajectory length " +
                                    std::to_string(w.length()));
    }
    const Eigen::Index q = w.channels();
    const Eigen::Index cols = w.length() - L + 1;
    Eigen::MatrixXd H(q * L, cols);
    for (Eigen::Index i = 0; i < L; ++i) {
        H.middleRows(i * q, q) = w.values.middleCols(i, cols);
    }
    return BlockHankel{std::move(H), L, q};
}

/// The row-partitioned Hankel system of an extended trajectory (u_h, y, u_nl):
/// per-group Hankels with the input and output groups split into the first
/// T_ini (past) and remaining L (future) block rows; u_nl stays unsplit.
struct PartitionedHankel {
    Eigen::MatrixXd U_hp;  // n_u*T_ini rows
    Eigen::MatrixXd U_hf;  // n_u*L rows
    Eigen::MatrixXd Y_p;   // n_y*T_ini rows
    Eigen::MatrixXd Y_f;   // n_y*L rows
    Eigen::MatrixXd U_nl;  // n_nl*(L+T_ini) rows
    Eigen::Index T_ini = 0;
    Eigen::Index L = 0;

    Eigen::Index cols() const { return Y_f.cols(); }

    /// The stack [U_hp; U_hf; Y_p; Y_f; U_nl]: a row permutation of the
    /// interleaved H_{L+T_ini}(w_ext).
    Eigen::MatrixXd stacked() const {
        Eigen::MatrixXd S(U_hp.rows() + U_hf.rows() + Y_p.rows() + Y_f.rows() + U_nl.rows(), cols());
        Eigen::Index r = 0;
        for (const Eigen::MatrixXd* m : {&U_hp, &U_hf, &Y_p, &Y_f, &U_nl}) {
            S.middleRows(r, m->rows()) = *m;
            r += m->rows();
        }
        return S;
    }
};

/// Builds the partitioned Hankel system from a channel-grouped extended
/// trajectory (u_h rows first, then y, then u_nl, as produced by
/// build_extended).
inline PartitionedHankel partition_extended(const Trajectory& w_ext, const SystemDims& dims, Eigen::Index L,
                                            Eigen::Index T_ini) {
    dims.validate();
    if (L < 1 || T_ini < 0) throw std::invalid_argument("partition_extended: need L >= 1 and T_ini >= 0");
    if (w_ext.channels() != dims.extended_channels()) {
        throw std::invalid_argument("partition_extended: trajectory has " + std::to_string(w_ext.channels()) +
                                    " channels, dims say " + std::to_string(dims.extended_channels()));
    }
    const Eigen::Index depth = L + T_ini;
    if (w_ext.length() < depth) {
        throw std::invalid_argument("partition_extended: need length >= L+T_ini=" + std::to_string(depth) +
                                    ", have " + std::to_string(w_ext.length()));
    }
    auto rows_of = [&](Eigen::Index first, Eigen::Index count) {
        return make_trajectory(w_ext.values.middleRows(first, count),
                               {w_ext.labels.begin() + first, w_ext.labels.begin() + first + count});
    };
    const BlockHankel Uh = build_hankel(rows_of(0, dims.n_u), depth);
    const BlockHankel Y = build_hankel(rows_of(dims.n_u, dims.n_y), depth);

    PartitionedHankel ph;
    ph.T_ini = T_ini;
    ph.L = L;
    ph.U_hp = Uh.matrix.topRows(dims.n_u * T_ini);
    ph.U_hf = Uh.matrix.bottomRows(dims.n_u * L);
    ph.Y_p = Y.matrix.topRows(dims.n_y * T_ini);
    ph.Y_f = Y.matrix.bottomRows(dims.n_y * L);
    if (dims.n_nl > 0) {
        ph.U_nl = build_hankel(rows_of(dims.n_u + dims.n_y, dims.n_nl), depth).matrix;
    } else {
        ph.U_nl = Eigen::MatrixXd::Zero(0, Uh.matrix.cols());
    }
    return ph;
}

enum class GpeVerdict { satisfied, deficient, exceeds };

inline const char* to_string(GpeVerdict v) {
    switch (v) {
        case GpeVerdict::satisfied: return "satisfied";
        case GpeVerdict::deficient: return "deficient";
        case GpeVerdict::exceeds: return "exceeds";
    }
    return "?";
}

/// Outcome of the generalized persistency of excitation check:
/// rank H_{L+T_ini}(w_ext) vs (n_u + n_nl)(L + T_ini) + order.
struct GpeReport {
    Eigen::Index computed_rank = 0;
    Eigen::Index required_rank = 0;
    Eigen::Index columns = 0;
    GpeVerdict verdict = GpeVerdict::deficient;
    std::string note;
};

/// Rank check of the extended Hankel system. Failure is reported, never
/// thrown: matching with slightly deficient data can still reproduce the
/// output, and an excess rank means the assumed order is too low or the
/// basis does not span the true nonlinearity.
inline GpeReport check_gpe(const PartitionedHankel& ph, const SystemDims& dims, const RankPolicy& policy = {}) {
    GpeReport rep;
    rep.required_rank = (dims.n_u + dims.n_nl) * (ph.L + ph.T_ini) + dims.order;
    rep.columns = ph.cols();
    rep.computed_rank = rank_of(ph.stacked(), policy);
    if (rep.computed_rank == rep.required_rank) {
        rep.verdict = GpeVerdict::satisfied;
    } else if (rep.computed_rank < rep.required_rank) {
        rep.verdict = GpeVerdict::deficient;
        rep.note = "rank short by " + std::to_string(rep.required_rank - rep.computed_rank) +
                   (rep.columns < rep.required_rank ? " (not enough columns: data too short)" : "");
    } else {
        rep.verdict = GpeVerdict::exceeds;
        rep.note = "rank exceeds requirement: assumed order too low, or the basis set does not span the "
                   "true nonlinearity";
    }
    return rep;
}

/// Minimal data lengths to satisfy the rank condition.
struct MinLengthReport {
    Eigen::Index T_ogb = 0;   // extended system, with the lookback burn-in
    Eigen::Index T_lti = 0;   // plain LTI system of the same order
    Eigen::Index extra = 0;   // T_ogb - T_lti
};

/// Column-count arithmetic: the extended trajectory loses unl_lookback
/// leading samples, and H_{L+T_ini} of the remainder needs
/// (n_u+n_nl)(L+T_ini)+order columns.
inline MinLengthReport min_data_length(const SystemDims& dims, Eigen::Index L, Eigen::Index T_ini) {
    dims.validate();
    if (L < 1 || T_ini < 0) throw std::invalid_argument("min_data_length: need L >= 1 and T_ini >= 0");
    const Eigen::Index depth = L + T_ini;
    MinLengthReport rep;
    rep.T_ogb = (dims.n_u + dims.n_nl + 1) * depth + dims.order + dims.unl_lookback - 1;
    rep.T_lti = (dims.n_u + 1) * depth + dims.order - 1;
    rep.extra = rep.T_ogb - rep.T_lti;
    return rep;
}

}  // namespace ogbm
