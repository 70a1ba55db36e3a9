#pragma once

// Discrete-time linear parameter-varying systems with affine dependence on a
// known scheduling signal:
//
//   y(t) + sum_{i=1..n_a} a_i(p(t-i)) y(t-i) = sum_{i=0..n_b} b_i(p(t-i)) u(t-i),
//   a_i(p) = sum_j a_{i,j} p_j,   b_i(p) = sum_j b_{i,j} p_j,
//
// their reduction to an output-generalized bilinear model with additional
// input u_nl(t) = [p(t) (x) u(t); p(t) (x) y(t)], and an equivalence check of
// the matcher's assembled system against a directly constructed LPV
// data-driven system (equal up to a row permutation).

#include <algorithm>
#include <memory>
#include <numeric>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "ogbm/matcher.hpp"
#include "ogbm/ogb.hpp"
#include "ogbm/signal.hpp"

namespace ogbm {

struct LpvModel {
    Eigen::Index n_a = 0;  // output lag depth
    Eigen::Index n_b = 0;  // input lag depth
    Eigen::Index n_p = 1;  // scheduling dimension
    Eigen::Index n_u = 1;
    Eigen::Index n_y = 1;
    // a[i-1][j-1] is a_{i,j} (n_y x n_y), i = 1..n_a; b[i][j-1] is b_{i,j}
    // (n_y x n_u), i = 0..n_b.
    std::vector<std::vector<Eigen::MatrixXd>> a;
    std::vector<std::vector<Eigen::MatrixXd>> b;
    std::shared_ptr<const ExogenousSignal> scheduling;

    Eigen::Index lag() const { return std::max(n_a, n_b); }

    void validate() const {
        if (n_p < 1 || n_u < 1 || n_y < 1 || n_a < 0 || n_b < 0) {
            throw std::invalid_argument("LpvModel: bad dimensions");
        }
        if (static_cast<Eigen::Index>(a.size()) != n_a || static_cast<Eigen::Index>(b.size()) != n_b + 1) {
            throw std::invalid_argument("LpvModel: coefficient list sizes must be n_a and n_b+1");
        }
        auto check = [&](const std::vector<std::vector<Eigen::MatrixXd>>& cs, Eigen::Index cols,
                         const char* which) {
            for (const auto& per_shift : cs) {
                if (static_cast<Eigen::Index>(per_shift.size()) != n_p) {
                    throw std::invalid_argument(std::string("LpvModel: ") + which + " needs n_p matrices per shift");
                }
                for (const auto& mat : per_shift) {
                    if (mat.rows() != n_y || mat.cols() != cols) {
                        throw std::invalid_argument(std::string("LpvModel: ") + which + " matrix shape mismatch");
                    }
                }
            }
        };
        check(a, n_y, "a");
        check(b, n_u, "b");
        if (!scheduling) throw std::invalid_argument("LpvModel: scheduling signal is required");
        if (scheduling->values.rows() != n_p) {
            throw std::invalid_argument("LpvModel: scheduling dimension mismatch");
        }
    }

    Eigen::MatrixXd a_at(Eigen::Index i, const Eigen::VectorXd& p) const {
        Eigen::MatrixXd m = Eigen::MatrixXd::Zero(n_y, n_y);
        for (Eigen::Index j = 0; j < n_p; ++j) m += a[i - 1][j] * p(j);
        return m;
    }
    Eigen::MatrixXd b_at(Eigen::Index i, const Eigen::VectorXd& p) const {
        Eigen::MatrixXd m = Eigen::MatrixXd::Zero(n_y, n_u);
        for (Eigen::Index j = 0; j < n_p; ++j) m += b[i][j] * p(j);
        return m;
    }
};

/// Forward recursion of the LPV difference equation. y_init supplies
/// max(n_a, n_b) initial output samples; scheduling must cover the horizon.
inline Trajectory simulate_lpv(const LpvModel& m, const Trajectory& u, const Eigen::MatrixXd& y_init) {
    m.validate();
    if (u.channels() != m.n_u) throw std::invalid_argument("simulate_lpv: input channel mismatch");
    const Eigen::Index start = m.lag();
    if (y_init.rows() != m.n_y || y_init.cols() < start) {
        throw std::invalid_argument("simulate_lpv: y_init must supply " + std::to_string(start) + " samples");
    }
    const Eigen::Index T = u.length();
    if (T <= start) throw std::invalid_argument("simulate_lpv: horizon too short");
    Eigen::MatrixXd y(m.n_y, T);
    y.leftCols(start) = y_init.leftCols(start);
    for (Eigen::Index t = start + 1; t <= T; ++t) {
        Eigen::VectorXd acc = Eigen::VectorXd::Zero(m.n_y);
        for (Eigen::Index i = 1; i <= m.n_a; ++i) {
            acc -= m.a_at(i, m.scheduling->lookup(t - i)) * y.col(t - i - 1);
        }
        for (Eigen::Index i = 0; i <= m.n_b; ++i) {
            acc += m.b_at(i, m.scheduling->lookup(t - i)) * u.values.col(t - i - 1);
        }
        y.col(t - 1) = acc;
    }
    return make_trajectory(std::move(y), default_labels(m.n_y, "y"));
}

/// Rows per output of the full coefficient stack of the affine-LPV
/// embedding: n_p (n_u (n_b+1) + n_y n_a).
inline Eigen::Index theta_rows_per_output(const LpvModel& m) {
    return m.n_p * (m.n_u * (m.n_b + 1) + m.n_y * m.n_a);
}

/// The reduced LPV-as-OGB form: model plus the extended theta parameters
/// needed to simulate it generically.
struct LpvOgb {
    OgbModel model;
    Eigen::MatrixXd theta_lin;     // all zero for a pure LPV system
    Eigen::MatrixXd theta_nl_ext;  // coefficients over shifts of u_nl

    GenericOgbPlant plant() const { return GenericOgbPlant{model, theta_lin, theta_nl_ext}; }
};

/// Reduces an LPV model to an OGB model with additional input
/// u_nl(t) = [p(t) (x) u(t); p(t) (x) y(t)] (scheduling slowest in both
/// Kronecker products), zero lookback and theta_lin = 0. The order is set to
/// the generic value n_y * lag of the FIR extended dynamics.
inline LpvOgb to_ogb(const LpvModel& m) {
    m.validate();
    const Eigen::Index lag = m.lag();
    LpvOgb r;
    r.model.dims = SystemDims{m.n_u, m.n_y, m.n_p * (m.n_u + m.n_y), lag, m.n_y * lag, 0};
    r.model.zero_pad = m.n_p * m.n_y;
    r.model.phi_b.push_back(basis_exogenous(m.scheduling, 0));
    r.model.phi_b0.push_back({basis_exogenous_kron_output(m.scheduling, m.n_y, 0, 0), m.n_p * m.n_u});
    r.model.validate();

    const Eigen::Index n_nl = r.model.dims.n_nl;
    r.theta_lin = Eigen::MatrixXd::Zero(lag * (m.n_y + m.n_u) + m.n_u, m.n_y);
    r.theta_nl_ext = Eigen::MatrixXd::Zero((lag + 1) * n_nl, m.n_y);
    // x_nl slot s holds u_nl(t-lag+s); the shift-i coefficients land in slot
    // lag-i. pu channel (j,mu) = j*n_u+mu, py channel (j,my) = n_p*n_u+j*n_y+my.
    for (Eigen::Index i = 0; i <= m.n_b; ++i) {
        const Eigen::Index slot = lag - i;
        for (Eigen::Index j = 0; j < m.n_p; ++j) {
            for (Eigen::Index row = 0; row < m.n_y; ++row) {
                for (Eigen::Index mu = 0; mu < m.n_u; ++mu) {
                    r.theta_nl_ext(slot * n_nl + j * m.n_u + mu, row) = m.b[i][j](row, mu);
                }
            }
        }
    }
    for (Eigen::Index i = 1; i <= m.n_a; ++i) {
        const Eigen::Index slot = lag - i;
        for (Eigen::Index j = 0; j < m.n_p; ++j) {
            for (Eigen::Index row = 0; row < m.n_y; ++row) {
                for (Eigen::Index my = 0; my < m.n_y; ++my) {
                    r.theta_nl_ext(slot * n_nl + m.n_p * m.n_u + j * m.n_y + my, row) = -m.a[i][j](row, my);
                }
            }
        }
    }
    return r;
}

// ---------------------------------------------------------------------------
// The naive (un-pruned) embedding: channel descriptors of the full Kronecker
// stack [p(t); ...; p(t-n_b)] (x) [u(t-lag); ...; u(t)] plus the
// p(t-i) (x) y(t-i) products, used to show that removing time-shift-redundant
// channels and zero-coefficient classes yields exactly [p (x) u; p (x) y].
// ---------------------------------------------------------------------------

struct LpvNaiveChannel {
    Eigen::Index p_shift = 0;    // p(t - p_shift)
    Eigen::Index p_comp = 0;
    Eigen::Index sig_shift = 0;  // u or y at t - sig_shift
    Eigen::Index sig_comp = 0;
    bool output_product = false;  // false: p*u, true: p*y

    /// Channels equal up to a time shift share this key.
    auto shift_class() const {
        return std::make_tuple(p_shift - sig_shift, p_comp, sig_comp, output_product);
    }
    /// Matched-shift products are the only ones the LPV equations use.
    bool carries_coefficients() const { return p_shift == sig_shift; }
};

inline std::vector<LpvNaiveChannel> lpv_naive_channels(const LpvModel& m) {
    std::vector<LpvNaiveChannel> out;
    for (Eigen::Index i = 0; i <= m.n_b; ++i) {
        for (Eigen::Index jp = 0; jp < m.n_p; ++jp) {
            for (Eigen::Index s = m.lag(); s >= 0; --s) {  // u(t-lag)..u(t)
                for (Eigen::Index mu = 0; mu < m.n_u; ++mu) {
                    out.push_back({i, jp, s, mu, false});
                }
            }
        }
    }
    for (Eigen::Index i = 1; i <= m.n_a; ++i) {
        for (Eigen::Index jp = 0; jp < m.n_p; ++jp) {
            for (Eigen::Index my = 0; my < m.n_y; ++my) out.push_back({i, jp, i, my, true});
        }
    }
    return out;
}

/// Collapses each shift class to its minimal-lookback representative and
/// drops classes whose coefficients vanish identically; the survivors are
/// the reduced channels [p(t) (x) u(t); p(t) (x) y(t)].
inline std::vector<LpvNaiveChannel> lpv_pruned_channels(const LpvModel& m) {
    std::vector<LpvNaiveChannel> pruned;
    for (const auto& ch : lpv_naive_channels(m)) {
        if (!ch.carries_coefficients()) continue;
        LpvNaiveChannel rep = ch;
        const Eigen::Index base = std::min(rep.p_shift, rep.sig_shift);
        rep.p_shift -= base;
        rep.sig_shift -= base;
        const bool seen = std::any_of(pruned.begin(), pruned.end(), [&](const LpvNaiveChannel& q) {
            return q.shift_class() == rep.shift_class();
        });
        if (!seen) pruned.push_back(rep);
    }
    return pruned;
}

/// The naive embedding as an actual OgbModel (window depth = lag), for
/// exercising the numerical shift-redundancy detector.
inline OgbModel lpv_naive_ogb(const LpvModel& m) {
    m.validate();
    const Eigen::Index lag = m.lag();
    OgbModel naive;
    const Eigen::Index kron = m.n_p * (m.n_b + 1) * m.n_u * (lag + 1);
    naive.dims = SystemDims{m.n_u, m.n_y, kron + m.n_p * m.n_y * m.n_a, lag, m.n_y * lag, lag};
    naive.zero_pad = m.n_p * m.n_y * m.n_a;
    for (Eigen::Index i = 0; i <= m.n_b; ++i) naive.phi_b.push_back(basis_exogenous(m.scheduling, i));
    for (Eigen::Index i = 1; i <= m.n_a; ++i) {
        naive.phi_b0.push_back(
            {basis_exogenous_kron_output(m.scheduling, m.n_y, lag, i), kron + (i - 1) * m.n_p * m.n_y});
    }
    naive.validate();
    return naive;
}

// ---------------------------------------------------------------------------
// Direct LPV data-driven system, built from first principles: block Hankel
// matrices of u, y, p (x) u and p (x) y, with the known reference scheduling
// moved onto the coefficient side for the unknown future inputs.
// ---------------------------------------------------------------------------

struct LinearSystemRows {
    Eigen::MatrixXd A;
    Eigen::VectorXd b;
};

inline LinearSystemRows build_direct_lpv_system(const LpvModel& m, const Trajectory& u_d, const Trajectory& y_d,
                                                Eigen::Index L, Eigen::Index T_ini, const Trajectory& u_ini,
                                                const Trajectory& y_ini, const Trajectory& y_r,
                                                const ExogenousSignal& p_ref) {
    m.validate();
    const Eigen::Index depth = T_ini + L;
    const Eigen::Index T = u_d.length();
    if (y_d.length() != T) throw std::invalid_argument("build_direct_lpv_system: data length mismatch");

    // Product signals from the data-side scheduling.
    Eigen::MatrixXd pu(m.n_p * m.n_u, T), py(m.n_p * m.n_y, T);
    for (Eigen::Index t = 1; t <= T; ++t) {
        const Eigen::VectorXd p = m.scheduling->lookup(t);
        for (Eigen::Index j = 0; j < m.n_p; ++j) {
            pu.block(j * m.n_u, t - 1, m.n_u, 1) = p(j) * u_d.values.col(t - 1);
            py.block(j * m.n_y, t - 1, m.n_y, 1) = p(j) * y_d.values.col(t - 1);
        }
    }
    const Eigen::MatrixXd Hu = build_hankel(u_d, depth).matrix;
    const Eigen::MatrixXd Hy = build_hankel(y_d, depth).matrix;
    const Eigen::MatrixXd Hpu = build_hankel(make_trajectory(pu), depth).matrix;
    const Eigen::MatrixXd Hpy = build_hankel(make_trajectory(py), depth).matrix;

    Eigen::MatrixXd y_c(m.n_y, depth);
    y_c.leftCols(T_ini) = y_ini.values;
    y_c.rightCols(L) = y_r.values;

    const Eigen::Index rows = m.n_u * T_ini + m.n_y * depth + (m.n_p * m.n_u) * depth + (m.n_p * m.n_y) * depth;
    LinearSystemRows sys;
    sys.A.resize(rows, Hu.cols());
    sys.b.resize(rows);
    Eigen::Index r = 0;

    sys.A.middleRows(r, m.n_u * T_ini) = Hu.topRows(m.n_u * T_ini);
    for (Eigen::Index t = 0; t < T_ini; ++t) sys.b.segment(r + t * m.n_u, m.n_u) = u_ini.values.col(t);
    r += m.n_u * T_ini;

    sys.A.middleRows(r, m.n_y * depth) = Hy;
    for (Eigen::Index t = 0; t < depth; ++t) sys.b.segment(r + t * m.n_y, m.n_y) = y_c.col(t);
    r += m.n_y * depth;

    for (Eigen::Index t = 0; t < depth; ++t) {
        const Eigen::VectorXd p = p_ref.lookup(t + 1);
        const Eigen::Index block = m.n_p * m.n_u;
        sys.A.middleRows(r, block) = Hpu.middleRows(t * block, block);
        if (t < T_ini) {
            for (Eigen::Index j = 0; j < m.n_p; ++j) {
                sys.b.segment(r + j * m.n_u, m.n_u) = p(j) * u_ini.values.col(t);
            }
        } else {
            // Future inputs are unknown: move the known scheduling factor
            // onto the coefficient side.
            for (Eigen::Index j = 0; j < m.n_p; ++j) {
                sys.A.middleRows(r + j * m.n_u, m.n_u) -= p(j) * Hu.middleRows(t * m.n_u, m.n_u);
            }
            sys.b.segment(r, block).setZero();
        }
        r += block;
    }
    for (Eigen::Index t = 0; t < depth; ++t) {
        const Eigen::VectorXd p = p_ref.lookup(t + 1);
        const Eigen::Index block = m.n_p * m.n_y;
        sys.A.middleRows(r, block) = Hpy.middleRows(t * block, block);
        for (Eigen::Index j = 0; j < m.n_p; ++j) sys.b.segment(r + j * m.n_y, m.n_y) = p(j) * y_c.col(t);
        r += block;
    }
    return sys;
}

struct RowEquivalenceReport {
    bool equivalent = false;
    Eigen::Index rows = 0;
    double max_deviation = 0.0;              // over the matched rows
    std::vector<Eigen::Index> permutation;   // matcher row -> direct row
    std::string note;
};

namespace detail {

inline std::vector<Eigen::Index> sorted_row_order(const Eigen::MatrixXd& M) {
    std::vector<Eigen::Index> idx(static_cast<std::size_t>(M.rows()));
    std::iota(idx.begin(), idx.end(), 0);
    std::sort(idx.begin(), idx.end(), [&](Eigen::Index i, Eigen::Index j) {
        for (Eigen::Index c = 0; c < M.cols(); ++c) {
            if (M(i, c) != M(j, c)) return M(i, c) < M(j, c);
        }
        return false;
    });
    return idx;
}

}  // namespace detail

/// Checks that the matcher's assembled system for the LPV-as-OGB model and
/// the directly constructed LPV system coincide up to a row permutation
/// (multiset comparison of [A|b] rows after canonical ordering; any row
/// bijection is accepted). The matching target is the last T_ini+L window of
/// the given data trajectory.
inline RowEquivalenceReport verify_row_permutation_equivalence(const LpvModel& m, const Trajectory& u_d,
                                                               const Trajectory& y_d, Eigen::Index L,
                                                               Eigen::Index T_ini, double tolerance = 0.0) {
    m.validate();
    const Eigen::Index depth = T_ini + L;
    const Eigen::Index T = u_d.length();
    if (T < depth + m.lag() + 1) {
        throw std::invalid_argument("verify_row_permutation_equivalence: data too short for the window");
    }

    // Target window: the tail of the data, re-clocked to local time 1..depth.
    const Eigen::Index s0 = T - depth;  // window covers data times s0+1 .. T
    Trajectory u_ini = make_trajectory(u_d.values.middleCols(s0, T_ini), default_labels(m.n_u, "u"));
    Trajectory y_ini = make_trajectory(y_d.values.middleCols(s0, T_ini), default_labels(m.n_y, "y"));
    Trajectory y_r = make_trajectory(y_d.values.rightCols(L), default_labels(m.n_y, "y"));

    auto p_ref = std::make_shared<ExogenousSignal>();
    p_ref->start_time = 1;
    p_ref->values.resize(m.n_p, depth);
    for (Eigen::Index t = 0; t < depth; ++t) p_ref->values.col(t) = m.scheduling->lookup(s0 + 1 + t);

    // Matcher side, through the OGB reduction bound to the re-clocked
    // scheduling.
    LpvModel m_ref = m;
    m_ref.scheduling = p_ref;
    const LpvOgb data_form = to_ogb(m);
    const LpvOgb ref_form = to_ogb(m_ref);

    MatchProblem prob;
    prob.data = build_extended(data_form.model, u_d, y_d);
    prob.model = ref_form.model;
    prob.u_ini = u_ini;
    prob.y_ini = y_ini;
    prob.y_r = y_r;
    const AssembledSystem ours = assemble(prob);

    const LinearSystemRows direct = build_direct_lpv_system(m, u_d, y_d, L, T_ini, u_ini, y_ini, y_r, *p_ref);

    RowEquivalenceReport rep;
    rep.rows = ours.A.rows();
    if (direct.A.rows() != ours.A.rows() || direct.A.cols() != ours.A.cols()) {
        rep.note = "row/column counts differ: " + std::to_string(ours.A.rows()) + "x" +
                   std::to_string(ours.A.cols()) + " vs " + std::to_string(direct.A.rows()) + "x" +
                   std::to_string(direct.A.cols());
        return rep;
    }
    Eigen::MatrixXd Mo(ours.A.rows(), ours.A.cols() + 1), Md(direct.A.rows(), direct.A.cols() + 1);
    Mo << ours.A, ours.b;
    Md << direct.A, direct.b;
    const auto io = detail::sorted_row_order(Mo);
    const auto id = detail::sorted_row_order(Md);

    rep.permutation.assign(static_cast<std::size_t>(rep.rows), -1);
    rep.equivalent = true;
    for (std::size_t k = 0; k < io.size(); ++k) {
        const double dev = (Mo.row(io[k]) - Md.row(id[k])).cwiseAbs().maxCoeff();
        rep.max_deviation = std::max(rep.max_deviation, dev);
        if (dev > tolerance) rep.equivalent = false;
        rep.permutation[static_cast<std::size_t>(io[k])] = id[k];
    }
    if (!rep.equivalent) rep.note = "row multisets differ by " + std::to_string(rep.max_deviation);
    return rep;
}

}  // namespace ogbm
