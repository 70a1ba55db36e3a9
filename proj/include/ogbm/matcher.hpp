#pragma once

// Data-driven output matching for output-generalized bilinear systems.
//
// Given one measured (extended) data trajectory, an initial trajectory and a
// fully known reference output, the matcher assembles the linear system
//
//   A g = b,   A = [U_hp; Y_p; Y_f; U_nl - Phi_b,f U_hf],
//              b = [u_h,ini; y_ini; y_r; Phi_b,p u_h,ini + phi_b,0],
//
// solves it by minimum-norm least squares, recovers the input through the
// inverse input map, and parameterizes the full solution set of u_h with the
// minimal number of parameters rank(U_hf N).

#include <cmath>
#include <cstdint>
#include <limits>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "ogbm/hankel.hpp"
#include "ogbm/numlin.hpp"
#include "ogbm/ogb.hpp"
#include "ogbm/signal.hpp"

namespace ogbm {

/// One output-matching instance. The data trajectory is the channel-grouped
/// extended trajectory from build_extended; the model must resolve its
/// exogenous lookups (if any) on the matching window's local clock
/// t = 1 .. T_ini + L.
struct MatchProblem {
    Trajectory data;   // extended data trajectory (u_h, y, u_nl)
    OgbModel model;
    Trajectory u_ini;  // n_u x T_ini, original input coordinates
    Trajectory y_ini;  // n_y x T_ini
    Trajectory y_r;    // n_y x L
    RankPolicy policy;
    FeasibilityPolicy feasibility;

    Eigen::Index T_ini() const { return u_ini.length(); }
    Eigen::Index L() const { return y_r.length(); }

    void validate() const {
        model.validate();
        if (u_ini.length() != y_ini.length()) {
            throw std::invalid_argument("MatchProblem: u_ini and y_ini lengths differ");
        }
        if (u_ini.channels() != model.dims.n_u || y_ini.channels() != model.dims.n_y ||
            y_r.channels() != model.dims.n_y) {
            throw std::invalid_argument("MatchProblem: channel counts do not match model dims");
        }
        if (y_r.length() < 1) throw std::invalid_argument("MatchProblem: empty reference output");
        if (model.dims.unl_lookback > T_ini()) {
            throw std::invalid_argument("MatchProblem: unl_lookback exceeds T_ini; the initial trajectory "
                                        "cannot anchor the additional-input rows");
        }
    }
};

/// The assembled linear system together with the Hankel partition and probed
/// input-affine map it was built from.
struct AssembledSystem {
    Eigen::MatrixXd A;
    Eigen::VectorXd b;
    PartitionedHankel ph;
    PulseProbe probe;
    Eigen::MatrixXd phi_p;      // columns of probe.phi_b for u_h(1..T_ini)
    Eigen::MatrixXd phi_f;      // columns for u_h(T_ini+1..T_ini+L)
    Eigen::VectorXd u_h_ini;    // stacked transformed initial inputs
};

/// Builds A and b. The probed matrices are evaluated on the output windows of
/// y_ini ^ y_r -- the reference output being fully known is exactly what
/// makes output matching (unlike reference tracking) a linear problem. For
/// models with unl_lookback d > 0 the first d block rows of U_nl are left
/// out: their right-hand sides would need outputs preceding w_ini.
inline AssembledSystem assemble(const MatchProblem& prob) {
    prob.validate();
    const SystemDims& dims = prob.model.dims;
    const Eigen::Index T_ini = prob.T_ini();
    const Eigen::Index L = prob.L();
    const Eigen::Index d = dims.unl_lookback;
    const Eigen::Index horizon = T_ini + L;

    AssembledSystem sys;
    sys.ph = partition_extended(prob.data, dims, L, T_ini);

    Eigen::MatrixXd y_c(dims.n_y, horizon);
    y_c.leftCols(T_ini) = prob.y_ini.values;
    y_c.rightCols(L) = prob.y_r.values;
    sys.probe = probe_phi_matrix(prob.model, make_trajectory(y_c, default_labels(dims.n_y, "y")), horizon);
    std::tie(sys.phi_p, sys.phi_f) = split_phi_matrix(sys.probe.phi_b, dims, T_ini, L);

    if (prob.model.input_map.lookback > 0) {
        // u_h over the initial window would need inputs preceding w_ini.
        throw std::invalid_argument("assemble: output matching requires a memoryless input map; "
                                    "history-dependent maps are supported on the inversion side only");
    }
    const Eigen::MatrixXd uh_ini_mat = apply_input_map(prob.model.input_map, prob.u_ini.values);
    sys.u_h_ini = stack(make_trajectory(uh_ini_mat, prob.u_ini.labels));

    const Eigen::Index unl_rows = dims.n_nl * (horizon - d);
    const Eigen::MatrixXd U_nl_used = sys.ph.U_nl.bottomRows(unl_rows);

    const Eigen::Index rows = dims.n_u * T_ini + dims.n_y * horizon + unl_rows;
    sys.A.resize(rows, sys.ph.cols());
    sys.b.resize(rows);
    Eigen::Index r = 0;
    sys.A.middleRows(r, sys.ph.U_hp.rows()) = sys.ph.U_hp;
    sys.b.segment(r, sys.u_h_ini.size()) = sys.u_h_ini;
    r += sys.ph.U_hp.rows();
    sys.A.middleRows(r, sys.ph.Y_p.rows()) = sys.ph.Y_p;
    sys.b.segment(r, dims.n_y * T_ini) = stack(prob.y_ini);
    r += sys.ph.Y_p.rows();
    sys.A.middleRows(r, sys.ph.Y_f.rows()) = sys.ph.Y_f;
    sys.b.segment(r, dims.n_y * L) = stack(prob.y_r);
    r += sys.ph.Y_f.rows();
    if (unl_rows > 0) {
        sys.A.middleRows(r, unl_rows) = U_nl_used - sys.phi_f * sys.ph.U_hf;
        sys.b.segment(r, unl_rows) = sys.phi_p * sys.u_h_ini + sys.probe.phi_b0_stack;
    }
    return sys;
}

struct MatchDiagnostics {
    GpeReport gpe;
    double solve_residual = 0.0;
    Eigen::Index parameter_count = 0;
    double predicted_rrmse = 0.0;  // data-predicted Y_f g against y_r
};

/// Result of an output-matching solve. When the assembled system is
/// inconsistent (the problem has no solution, cf. the classical
/// counterexample where the free response already contradicts y_r) the
/// least-squares attempt is still carried, flagged infeasible.
struct MatchSolution {
    bool feasible = false;
    Trajectory u;                  // particular input, original coordinates
    AffineSolutionSet u_h_set;     // affine solution set of stacked u_h
    MatchDiagnostics diagnostics;
    Eigen::MatrixXd u_ini_values;  // kept for sequential inversion of samples
};

namespace detail {

inline Trajectory input_from_uh(const OgbModel& model, const Eigen::VectorXd& uh_stacked,
                                const Eigen::MatrixXd& u_ini_values) {
    const Eigen::MatrixXd uh = unstack(uh_stacked, model.dims.n_u);
    Eigen::MatrixXd u = invert_input_map(model.input_map, uh, u_ini_values);
    return make_trajectory(std::move(u), default_labels(model.dims.n_u, "u"));
}

}  // namespace detail

/// Solves the output-matching problem. The particular input is the image of
/// the minimum-norm g (the literal pseudo-inverse solution), not the
/// minimum-norm u_h; see select_min_energy for the latter.
inline MatchSolution solve(const MatchProblem& prob) {
    const AssembledSystem sys = assemble(prob);
    const SystemDims& dims = prob.model.dims;

    MatchSolution sol;
    sol.diagnostics.gpe = check_gpe(sys.ph, dims, prob.policy);

    const AffineSolutionSet g = solve_affine(sys.A, sys.b, prob.policy, prob.feasibility);
    sol.u_h_set = parameterize_image(sys.ph.U_hf, g, prob.policy);
    sol.feasible = g.feasible;
    sol.u_ini_values = prob.u_ini.values;
    sol.u = detail::input_from_uh(prob.model, sol.u_h_set.offset, sol.u_ini_values);

    sol.diagnostics.solve_residual = g.residual;
    sol.diagnostics.parameter_count = sol.u_h_set.dimension;
    const Eigen::VectorXd y_pred = sys.ph.Y_f * g.offset;
    const double ref_norm = stack(prob.y_r).norm();
    sol.diagnostics.predicted_rrmse =
        ref_norm > 0 ? (y_pred - stack(prob.y_r)).norm() / ref_norm : std::numeric_limits<double>::quiet_NaN();
    return sol;
}

/// Draws `count` members of the solution set: u = h^{-1}(offset + basis z)
/// with z standard normal (Box-Muller over the library's portable uniform
/// stream). With parameter_count == 0 every sample equals the particular
/// solution.
inline std::vector<Trajectory> sample_solutions(const MatchSolution& sol, const OgbModel& model,
                                                Eigen::Index count, std::uint64_t seed) {
    if (!sol.feasible) throw std::logic_error("sample_solutions: solution set of an infeasible problem");
    std::mt19937_64 rng(seed);
    auto normal = [&rng]() {
        const double u1 = 1.0 - detail::uniform01(rng);  // (0,1]
        const double u2 = detail::uniform01(rng);
        return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * M_PI * u2);
    };
    std::vector<Trajectory> out;
    out.reserve(static_cast<std::size_t>(count));
    for (Eigen::Index k = 0; k < count; ++k) {
        Eigen::VectorXd z(sol.u_h_set.dimension);
        for (Eigen::Index i = 0; i < z.size(); ++i) z(i) = normal();
        out.push_back(detail::input_from_uh(model, sol.u_h_set.point(z), sol.u_ini_values));
    }
    return out;
}

/// The member of the solution set minimizing ||u_h||_2: with an orthonormal
/// basis B the minimizer is z = -B^T offset, i.e. the projection of the
/// offset onto the orthogonal complement of span(B).
inline Trajectory select_min_energy(const MatchSolution& sol, const OgbModel& model) {
    if (!sol.feasible) throw std::logic_error("select_min_energy: solution set of an infeasible problem");
    if (sol.u_h_set.dimension == 0) return detail::input_from_uh(model, sol.u_h_set.offset, sol.u_ini_values);
    const Eigen::VectorXd z = -sol.u_h_set.basis.transpose() * sol.u_h_set.offset;
    return detail::input_from_uh(model, sol.u_h_set.point(z), sol.u_ini_values);
}

}  // namespace ogbm
