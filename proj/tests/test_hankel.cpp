#include "ogbm/hankel.hpp"

#include <gtest/gtest.h>

#include <random>

#include "ogbm/signal.hpp"

using namespace ogbm;

namespace {

Trajectory scalar_traj(std::initializer_list<double> vals) {
    Eigen::MatrixXd m(1, static_cast<Eigen::Index>(vals.size()));
    Eigen::Index c = 0;
    for (double v : vals) m(0, c++) = v;
    return make_trajectory(std::move(m));
}

/// First-order SISO LTI data: y(t) = a y(t-1) + b u(t-1), y(1) = 0.
Trajectory lti_data(double a, double b, const Trajectory& u) {
    Eigen::MatrixXd w(2, u.length());
    w.row(0) = u.values.row(0);
    w(1, 0) = 0.0;
    for (Eigen::Index t = 1; t < u.length(); ++t) w(1, t) = a * w(1, t - 1) + b * w(0, t - 1);
    return make_trajectory(std::move(w), {"u1", "y1"});
}

}  // namespace

TEST(BuildHankel, ScalarExample) {
    const BlockHankel H = build_hankel(scalar_traj({1, 2, 3, 4}), 2);
    Eigen::MatrixXd expect(2, 3);
    expect << 1, 2, 3, 2, 3, 4;
    EXPECT_TRUE(H.matrix == expect);
}

TEST(BuildHankel, TwoChannelInterleavesBlocks) {
    Eigen::MatrixXd m(2, 3);
    m << 1, 2, 3, 4, 5, 6;
    const BlockHankel H = build_hankel(make_trajectory(m), 2);
    ASSERT_EQ(H.matrix.rows(), 4);
    ASSERT_EQ(H.matrix.cols(), 2);
    Eigen::MatrixXd expect(4, 2);
    expect << 1, 2, 4, 5, 2, 3, 5, 6;
    EXPECT_TRUE(H.matrix == expect);
}

TEST(BuildHankel, FullDepthGivesSingleColumn) {
    const Trajectory w = scalar_traj({1, 2, 3});
    const BlockHankel H = build_hankel(w, 3);
    EXPECT_EQ(H.matrix.cols(), 1);
    EXPECT_TRUE(H.matrix.col(0) == stack(w));
}

TEST(BuildHankel, TooDeepThrows) { EXPECT_THROW(build_hankel(scalar_traj({1, 2}), 3), std::invalid_argument); }

TEST(BuildHankel, RoundTripReconstructsTrajectory) {
    std::mt19937_64 rng(11);
    Eigen::MatrixXd m(2, 9);
    for (Eigen::Index i = 0; i < m.size(); ++i) m(i / 9, i % 9) = detail::uniform_open(rng, -1, 1);
    const Trajectory w = make_trajectory(m);
    const Eigen::Index L = 4, q = 2;
    const BlockHankel H = build_hankel(w, L);
    // First column carries w(1..L); the last block row carries w(L..T).
    for (Eigen::Index t = 0; t < L; ++t) {
        EXPECT_TRUE(H.matrix.col(0).segment(t * q, q) == w.values.col(t));
    }
    for (Eigen::Index j = 0; j < H.matrix.cols(); ++j) {
        EXPECT_TRUE(H.matrix.col(j).tail(q) == w.values.col(L - 1 + j));
    }
}

TEST(PartitionExtended, ShapeArithmetic) {
    // dims(n_u=1, n_y=1, n_nl=1), L=2, T_ini=1, length-4 extended trajectory.
    Eigen::MatrixXd m(3, 4);
    m.setRandom();
    const SystemDims dims{1, 1, 1, 1, 1, 0};
    const PartitionedHankel ph = partition_extended(make_trajectory(m), dims, 2, 1);
    EXPECT_EQ(ph.U_hp.rows(), 1);
    EXPECT_EQ(ph.U_hf.rows(), 2);
    EXPECT_EQ(ph.Y_p.rows(), 1);
    EXPECT_EQ(ph.Y_f.rows(), 2);
    EXPECT_EQ(ph.U_nl.rows(), 3);
    EXPECT_EQ(ph.cols(), 2);
}

TEST(PartitionExtended, StackIsRowPermutationOfInterleavedHankel) {
    std::mt19937_64 rng(12);
    const SystemDims dims{2, 1, 2, 1, 1, 0};
    const Eigen::Index q = dims.extended_channels(), T = 12, L = 3, T_ini = 2;
    Eigen::MatrixXd m(q, T);
    for (Eigen::Index i = 0; i < q; ++i) {
        for (Eigen::Index t = 0; t < T; ++t) m(i, t) = detail::uniform_open(rng, -1, 1);
    }
    const Trajectory w = make_trajectory(m);
    const PartitionedHankel ph = partition_extended(w, dims, L, T_ini);
    const Eigen::MatrixXd H = build_hankel(w, L + T_ini).matrix;
    const Eigen::MatrixXd S = ph.stacked();

    // Explicit permutation: group block rows by channel group.
    std::vector<Eigen::Index> perm;
    for (Eigen::Index i = 0; i < L + T_ini; ++i) {
        for (Eigen::Index c = 0; c < dims.n_u; ++c) perm.push_back(i * q + c);
    }
    for (Eigen::Index i = 0; i < L + T_ini; ++i) {
        for (Eigen::Index c = 0; c < dims.n_y; ++c) perm.push_back(i * q + dims.n_u + c);
    }
    for (Eigen::Index i = 0; i < L + T_ini; ++i) {
        for (Eigen::Index c = 0; c < dims.n_nl; ++c) perm.push_back(i * q + dims.n_u + dims.n_y + c);
    }
    ASSERT_EQ(static_cast<Eigen::Index>(perm.size()), S.rows());
    for (Eigen::Index r = 0; r < S.rows(); ++r) {
        EXPECT_TRUE(S.row(r) == H.row(perm[static_cast<std::size_t>(r)])) << "row " << r;
    }
}

TEST(PartitionExtended, TooShortThrows) {
    Eigen::MatrixXd m(3, 4);
    m.setRandom();
    const SystemDims dims{1, 1, 1, 1, 1, 0};
    EXPECT_THROW(partition_extended(make_trajectory(m), dims, 4, 2), std::invalid_argument);
}

TEST(CheckGpe, PersistentlyExcitingLtiDataSaturates) {
    // Lemma hypothesis on a first-order SISO system: rank H_L = m L + n.
    const Trajectory u = generate_excitation({80, -1.0, 1.0, 0, 77}, 1);
    const Trajectory w = lti_data(0.7, 1.3, u);
    for (Eigen::Index L = 1; L <= 8; ++L) {
        EXPECT_EQ(rank_of(build_hankel(w, L).matrix), L + 1) << "L=" << L;
    }
}

TEST(CheckGpe, VerdictsOnLtiData) {
    const Trajectory u = generate_excitation({60, -1.0, 1.0, 0, 78}, 1);
    const Trajectory w = lti_data(0.5, 1.0, u);
    const SystemDims dims{1, 1, 0, 1, 1, 0};
    const Eigen::Index L = 4, T_ini = 2;

    const PartitionedHankel ok = partition_extended(w, dims, L, T_ini);
    const GpeReport good = check_gpe(ok, dims);
    EXPECT_EQ(good.verdict, GpeVerdict::satisfied);
    EXPECT_EQ(good.required_rank, 1 * (L + T_ini) + 1);

    // Truncated far below the minimal length: too few columns.
    const Trajectory w_short = make_trajectory(w.values.leftCols(9), w.labels);
    const GpeReport bad = check_gpe(partition_extended(w_short, dims, L, T_ini), dims);
    EXPECT_EQ(bad.verdict, GpeVerdict::deficient);

    // Overstated claim: pretending the order is lower than it is.
    SystemDims lying = dims;
    lying.order = 0;
    EXPECT_EQ(check_gpe(ok, lying).verdict, GpeVerdict::exceeds);
}

TEST(MinDataLength, WorkedExample) {
    // n=2, T_ini=2, L=10, n_u=1, n_nl=3, lookback=T_ini.
    const SystemDims dims{1, 1, 3, 2, 2, 2};
    const MinLengthReport rep = min_data_length(dims, 10, 2);
    EXPECT_EQ(rep.T_ogb, 63);
    EXPECT_EQ(rep.T_lti, 25);
    EXPECT_EQ(rep.extra, 38);
}

TEST(MinDataLength, LtiDegenerate) {
    const SystemDims dims{2, 1, 0, 1, 3, 0};
    const MinLengthReport rep = min_data_length(dims, 7, 2);
    EXPECT_EQ(rep.T_ogb, rep.T_lti);
    EXPECT_EQ(rep.extra, 0);
}

TEST(MinDataLength, MonotoneInEveryArgument) {
    std::mt19937_64 rng(13);
    for (int k = 0; k < 40; ++k) {
        SystemDims d{static_cast<Eigen::Index>(1 + rng() % 3), 1, static_cast<Eigen::Index>(rng() % 4), 2,
                     static_cast<Eigen::Index>(rng() % 5), static_cast<Eigen::Index>(rng() % 3)};
        const Eigen::Index L = 2 + static_cast<Eigen::Index>(rng() % 9);
        const Eigen::Index T_ini = static_cast<Eigen::Index>(rng() % 4);
        const Eigen::Index base = min_data_length(d, L, T_ini).T_ogb;
        EXPECT_GE(min_data_length(d, L + 1, T_ini).T_ogb, base);
        EXPECT_GE(min_data_length(d, L, T_ini + 1).T_ogb, base);
        for (auto bump : {&SystemDims::n_u, &SystemDims::n_nl, &SystemDims::order}) {
            SystemDims d2 = d;
            d2.*bump += 1;
            EXPECT_GE(min_data_length(d2, L, T_ini).T_ogb, base);
        }
    }
}
