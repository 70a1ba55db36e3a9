#include "ogbm/signal.hpp"

#include <gtest/gtest.h>

#include <random>
#include <sstream>

#include "ogbm/csv.hpp"

using namespace ogbm;

namespace {

Trajectory traj(std::initializer_list<std::initializer_list<double>> rows) {
    Eigen::MatrixXd m(static_cast<Eigen::Index>(rows.size()),
                      static_cast<Eigen::Index>(rows.begin()->size()));
    Eigen::Index r = 0;
    for (const auto& row : rows) {
        Eigen::Index c = 0;
        for (double v : row) m(r, c++) = v;
        ++r;
    }
    return make_trajectory(std::move(m));
}

Trajectory random_traj(Eigen::Index q, Eigen::Index T, std::mt19937_64& rng) {
    Eigen::MatrixXd m(q, T);
    for (Eigen::Index i = 0; i < q; ++i) {
        for (Eigen::Index j = 0; j < T; ++j) m(i, j) = detail::uniform_open(rng, -1.0, 1.0);
    }
    return make_trajectory(std::move(m));
}

}  // namespace

TEST(Trajectory, RejectsNonFinite) {
    Eigen::MatrixXd m(1, 2);
    m << 1.0, std::numeric_limits<double>::quiet_NaN();
    EXPECT_THROW(make_trajectory(m), std::invalid_argument);
}

TEST(Concat, Basic) {
    const Trajectory w = concat(traj({{1, 2}}), traj({{3}}));
    ASSERT_EQ(w.length(), 3);
    EXPECT_EQ(w.values(0, 0), 1);
    EXPECT_EQ(w.values(0, 1), 2);
    EXPECT_EQ(w.values(0, 2), 3);
}

TEST(Concat, ShapeArithmetic) {
    const Trajectory w = concat(traj({{1, 2}, {3, 4}}), traj({{5, 6, 7}, {8, 9, 10}}));
    EXPECT_EQ(w.channels(), 2);
    EXPECT_EQ(w.length(), 5);
}

TEST(Concat, EmptyIsIdentity) {
    const Trajectory w = traj({{1, 2}, {3, 4}});
    const Trajectory empty{Eigen::MatrixXd(2, 0), w.labels};
    EXPECT_TRUE(concat(w, empty).values.isApprox(w.values));
    EXPECT_TRUE(concat(empty, w).values.isApprox(w.values));
}

TEST(Concat, MismatchThrows) {
    EXPECT_THROW(concat(traj({{1}}), traj({{1}, {2}})), std::invalid_argument);
}

TEST(Concat, Associative) {
    std::mt19937_64 rng(7);
    for (int k = 0; k < 20; ++k) {
        const Trajectory a = random_traj(2, 3, rng), b = random_traj(2, 4, rng), c = random_traj(2, 2, rng);
        const Trajectory ab_c = concat(concat(a, b), c);
        const Trajectory a_bc = concat(a, concat(b, c));
        EXPECT_TRUE(ab_c.values == a_bc.values);
    }
}

TEST(Shift, Basic) {
    const Trajectory w = traj({{1, 2, 3}});
    EXPECT_TRUE(shift(w, 1).values == traj({{2, 3}}).values);
    EXPECT_TRUE(shift(w, 0).values == w.values);
    EXPECT_TRUE(shift(w, -1).values == traj({{1, 2}}).values);
    EXPECT_THROW(shift(w, 3), std::invalid_argument);
    EXPECT_THROW(shift(w, -3), std::invalid_argument);
}

TEST(Shift, Composes) {
    std::mt19937_64 rng(8);
    const Trajectory w = random_traj(2, 12, rng);
    for (Eigen::Index a : {-3, -1, 0, 2}) {
        for (Eigen::Index b : {-2, 0, 1, 3}) {
            if ((a >= 0) == (b >= 0)) {  // same direction: windows stay nonempty
                EXPECT_TRUE(shift(shift(w, a), b).values == shift(w, a + b).values);
            }
        }
    }
}

TEST(Split, SelectsAndOrders) {
    const Trajectory w = traj({{1, 2}, {3, 4}, {5, 6}});
    const auto [u, y] = split(w, Partitioning{{0}, {1, 2}});
    EXPECT_EQ(u.channels(), 1);
    EXPECT_EQ(y.channels(), 2);
    EXPECT_EQ(u.values(0, 0), 1);
    EXPECT_EQ(y.values(1, 1), 6);
}

TEST(Split, PermutesWhenRequested) {
    const Trajectory w = traj({{1, 2}, {3, 4}});
    const auto [u, y] = split(w, Partitioning{{1}, {0}});
    EXPECT_EQ(u.values(0, 0), 3);
    EXPECT_EQ(y.values(0, 0), 1);
}

TEST(Split, MergeRoundTrip) {
    std::mt19937_64 rng(9);
    const Trajectory w = random_traj(4, 6, rng);
    const Partitioning p{{2, 0}, {3, 1}};
    const auto [u, y] = split(w, p);
    EXPECT_TRUE(merge(u, y, p).values == w.values);
}

TEST(Split, OutOfRangeThrows) {
    EXPECT_THROW(split(traj({{1}}), Partitioning{{0}, {5}}), std::out_of_range);
    EXPECT_THROW(split(traj({{1}, {2}}), Partitioning{{0}, {0}}), std::invalid_argument);
}

TEST(Excitation, RangeAndShape) {
    const Trajectory w = generate_excitation({307, 0.0, 0.08, 0, 42}, 1);
    EXPECT_EQ(w.channels(), 1);
    EXPECT_EQ(w.length(), 307);
    EXPECT_TRUE((w.values.array() > 0.0).all());
    EXPECT_TRUE((w.values.array() < 0.08).all());
}

TEST(Excitation, LeadingZeros) {
    const Trajectory w = generate_excitation({102, 0.0, 0.05, 2, 42}, 1);
    EXPECT_EQ(w.values(0, 0), 0.0);
    EXPECT_EQ(w.values(0, 1), 0.0);
    EXPECT_GT(w.values(0, 2), 0.0);
}

TEST(Excitation, DeterministicForFixedSeed) {
    const ExcitationSpec spec{64, -0.3, 0.7, 3, 123456789ULL};
    const Trajectory a = generate_excitation(spec, 3);
    const Trajectory b = generate_excitation(spec, 3);
    EXPECT_TRUE(a.values == b.values);  // bitwise
    const Trajectory c = generate_excitation({64, -0.3, 0.7, 3, 987654321ULL}, 3);
    EXPECT_FALSE(a.values == c.values);
}

TEST(Excitation, InvalidSpecThrows) {
    EXPECT_THROW(generate_excitation({10, 1.0, 1.0, 0, 1}, 1), std::invalid_argument);
    EXPECT_THROW(generate_excitation({10, 0.0, 1.0, 11, 1}, 1), std::invalid_argument);
}

TEST(StackUnstack, RoundTrip) {
    std::mt19937_64 rng(10);
    const Trajectory w = random_traj(3, 5, rng);
    EXPECT_TRUE(unstack(stack(w), 3) == w.values);
    EXPECT_EQ(stack(w)(3), w.values(0, 1));  // sample-major stacking
}

TEST(Csv, RoundTripIsExact) {
    Eigen::MatrixXd m(2, 3);
    m << 1.0 / 3.0, 1e-300, -0.0, M_PI, 5e304, 0.08;
    const Trajectory w = make_trajectory(m, {"u1", "y1"});
    std::stringstream ss;
    write_trajectory_csv(ss, w);
    const Trajectory r = read_trajectory_csv(ss);
    EXPECT_EQ(r.labels, w.labels);
    ASSERT_EQ(r.length(), w.length());
    for (Eigen::Index i = 0; i < 2; ++i) {
        for (Eigen::Index j = 0; j < 3; ++j) EXPECT_EQ(r.values(i, j), w.values(i, j));
    }
}

TEST(Csv, RejectsRaggedRows) {
    std::stringstream ss("a,b\n1,2\n3\n");
    EXPECT_THROW(read_trajectory_csv(ss), std::runtime_error);
}
