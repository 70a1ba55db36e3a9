#pragma once

// Numerical linear-algebra contracts shared by the whole library: rank under
// a single tolerance policy, minimum-norm affine solves with an explicit
// null-space basis, and minimal parameterization of the image of a solution
// set. One SVD per matrix; every rank decision in an experiment goes through
// the same RankPolicy so feasibility verdicts stay consistent.

#include <limits>
#include <optional>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>
#include <Eigen/SVD>

namespace ogbm {

/// Threshold rule for deciding which singular values count as nonzero.
/// relative: sigma > tolerance * sigma_max, with tolerance defaulting to
/// max(rows, cols) * machine epsilon. absolute: sigma > tolerance.
struct RankPolicy {
    enum class Mode { absolute, relative };
    Mode mode = Mode::relative;
    std::optional<double> tolerance;  // nullopt = default factor (relative mode only)

    static RankPolicy absolute(double tol) { return RankPolicy{Mode::absolute, tol}; }
    static RankPolicy relative(double tol) { return RankPolicy{Mode::relative, tol}; }

    double threshold(Eigen::Index rows, Eigen::Index cols, double sigma_max) const {
        if (tolerance && *tolerance < 0) throw std::invalid_argument("RankPolicy: negative tolerance");
        if (mode == Mode::absolute) {
            if (!tolerance) throw std::invalid_argument("RankPolicy: absolute mode needs a tolerance");
            return *tolerance;
        }
        const double factor =
            tolerance ? *tolerance
                      : static_cast<double>(std::max(rows, cols)) * std::numeric_limits<double>::epsilon();
        return factor * sigma_max;
    }
};

/// Affine set {offset + basis * z}: a particular solution plus an orthonormal
/// basis of the homogeneous solutions. `residual` is ||A*offset - b||_2 on
/// the original (unscaled) system; `feasible` applies the caller's residual
/// thresholds, since an inconsistent right-hand side is an expected outcome,
/// not an error.
struct AffineSolutionSet {
    Eigen::VectorXd offset;
    Eigen::MatrixXd basis;  // orthonormal columns
    Eigen::Index dimension = 0;
    double residual = 0.0;
    bool feasible = true;

    Eigen::VectorXd point(const Eigen::VectorXd& z) const {
        if (z.size() != dimension) throw std::invalid_argument("AffineSolutionSet::point: z size mismatch");
        return dimension == 0 ? offset : (offset + basis * z).eval();
    }
};

/// Residual rule for calling a least-squares solve inconsistent:
/// residual > abs_tol + rel_tol * ||b||_2.
struct FeasibilityPolicy {
    double abs_tol = 1e-8;
    double rel_tol = 1e-10;

    bool accepts(double residual, double b_norm) const { return residual <= abs_tol + rel_tol * b_norm; }
};

namespace detail {

inline Eigen::BDCSVD<Eigen::MatrixXd> svd_of(const Eigen::MatrixXd& M, unsigned options) {
    Eigen::BDCSVD<Eigen::MatrixXd> svd(M, options);
    if (svd.info() != Eigen::Success) {
        throw std::runtime_error("SVD failed on a " + std::to_string(M.rows()) + "x" +
                                 std::to_string(M.cols()) + " matrix (largest entry " +
                                 std::to_string(M.cwiseAbs().maxCoeff()) + ")");
    }
    return svd;
}

inline Eigen::Index rank_from_singvalues(const Eigen::VectorXd& sv, Eigen::Index rows, Eigen::Index cols,
                                         const RankPolicy& policy) {
    if (sv.size() == 0) return 0;
    const double thresh = policy.threshold(rows, cols, sv(0));
    Eigen::Index r = 0;
    while (r < sv.size() && sv(r) > thresh) ++r;
    return r;
}

}  // namespace detail

/// Number of singular values above the policy threshold.
inline Eigen::Index rank_of(const Eigen::MatrixXd& M, const RankPolicy& policy = {}) {
    if (M.rows() == 0 || M.cols() == 0) throw std::invalid_argument("rank_of: empty matrix");
    const auto svd = detail::svd_of(M, 0);
    return detail::rank_from_singvalues(svd.singularValues(), M.rows(), M.cols(), policy);
}

/// Minimum-norm least-squares solution of A g = b together with an
/// orthonormal null-space basis, from one SVD.
///
/// With equilibrate=true the rows of [A|b] are scaled to unit 2-norm before
/// the decomposition. Row scaling leaves the solution set (and hence the
/// minimum-norm solution and null space) unchanged in exact arithmetic but
/// removes artificial conditioning caused by mixed physical row scales. The
/// reported residual is always measured on the unscaled system.
inline AffineSolutionSet solve_affine(const Eigen::MatrixXd& A, const Eigen::VectorXd& b,
                                      const RankPolicy& policy = {}, const FeasibilityPolicy& feas = {},
                                      bool equilibrate = true) {
    if (A.rows() != b.size()) {
        throw std::invalid_argument("solve_affine: A has " + std::to_string(A.rows()) + " rows, b has " +
                                    std::to_string(b.size()));
    }
    Eigen::MatrixXd As = A;
    Eigen::VectorXd bs = b;
    if (equilibrate) {
        for (Eigen::Index i = 0; i < As.rows(); ++i) {
            const double n = As.row(i).norm();
            if (n > 0) {
                As.row(i) /= n;
                bs(i) /= n;
            }
        }
    }

    const auto svd = detail::svd_of(As, Eigen::ComputeThinU | Eigen::ComputeFullV);
    const Eigen::VectorXd& sv = svd.singularValues();
    const Eigen::Index r = detail::rank_from_singvalues(sv, As.rows(), As.cols(), policy);

    AffineSolutionSet sol;
    if (r == 0) {
        sol.offset = Eigen::VectorXd::Zero(A.cols());
    } else {
        const Eigen::VectorXd c = svd.matrixU().leftCols(r).transpose() * bs;
        sol.offset = svd.matrixV().leftCols(r) * (c.array() / sv.head(r).array()).matrix();
    }
    sol.dimension = A.cols() - r;
    sol.basis = svd.matrixV().rightCols(sol.dimension);
    sol.residual = (A * sol.offset - b).norm();
    sol.feasible = feas.accepts(sol.residual, b.norm());
    return sol;
}

/// Minimal parameterization of the image {U g | A g = b}: offset U*offset and
/// an orthonormal basis spanning col(U * N), so the image is described by
/// exactly rank(U*N) parameters. The compression is a second SVD keeping the
/// left singular vectors above the policy threshold.
inline AffineSolutionSet parameterize_image(const Eigen::MatrixXd& U, const AffineSolutionSet& sol,
                                            const RankPolicy& policy = {}) {
    if (U.cols() != sol.offset.size()) {
        throw std::invalid_argument("parameterize_image: U has " + std::to_string(U.cols()) +
                                    " columns, solution lives in dimension " + std::to_string(sol.offset.size()));
    }
    AffineSolutionSet img;
    img.offset = U * sol.offset;
    img.residual = sol.residual;
    img.feasible = sol.feasible;
    if (sol.dimension == 0) {
        img.basis = Eigen::MatrixXd::Zero(U.rows(), 0);
        img.dimension = 0;
        return img;
    }
    const Eigen::MatrixXd M = U * sol.basis;
    const auto svd = detail::svd_of(M, Eigen::ComputeThinU);
    const Eigen::Index r = detail::rank_from_singvalues(svd.singularValues(), M.rows(), M.cols(), policy);
    img.basis = svd.matrixU().leftCols(r);
    img.dimension = r;
    return img;
}

}  // namespace ogbm
