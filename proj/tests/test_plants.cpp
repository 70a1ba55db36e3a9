#include "ogbm/plants.hpp"

#include <gtest/gtest.h>

#include <random>

#include "ogbm/signal.hpp"

using namespace ogbm;

TEST(Pendulum, RestStaysAtRest) {
    const Trajectory u = make_trajectory(Eigen::MatrixXd::Zero(1, 50));
    const Trajectory y = simulate_pendulum(PendulumParams{}, u, 0.0, 0.0);
    EXPECT_EQ(y.values.cwiseAbs().maxCoeff(), 0.0);
}

TEST(Pendulum, OneStepFromUprightMatchesHandSubstitution) {
    const PendulumParams p{};
    const Trajectory u = make_trajectory(Eigen::MatrixXd::Zero(1, 3));
    const Trajectory y = simulate_pendulum(p, u, M_PI / 2.0, M_PI / 2.0);
    // y(3) = 2(pi/2) - pi/2 - sg*sin(pi/2) - damping*0 + 0 = pi/2 - sg.
    EXPECT_NEAR(y.values(0, 2), M_PI / 2.0 - p.sin_gain(), 1e-15);
}

TEST(Pendulum, ReferenceRecipeShape) {
    const Trajectory u = generate_excitation({102, 0.0, 0.05, 2, 7}, 1);
    const Trajectory y = simulate_pendulum(PendulumParams{}, u, M_PI / 2.0, M_PI / 2.0);
    EXPECT_EQ(y.length(), 102);
    EXPECT_EQ(y.values(0, 0), M_PI / 2.0);
    EXPECT_EQ(y.values(0, 1), M_PI / 2.0);
    EXPECT_TRUE(y.values.array().isFinite().all());
    EXPECT_LT(y.values.cwiseAbs().maxCoeff(), 10.0);  // bounded swing
}

TEST(Pendulum, GenericOgbSimulatorAgrees) {
    const PendulumParams p{};
    const Trajectory u = generate_excitation({60, 0.0, 0.08, 0, 8}, 1);
    const Trajectory direct = simulate_pendulum(p, u, M_PI / 2.0, M_PI / 2.0);
    Eigen::MatrixXd init(1, 2);
    init << M_PI / 2.0, M_PI / 2.0;
    for (Eigen::Index lookback : {0, 2}) {
        const Trajectory generic = pendulum_plant(p, lookback).simulate(u, init);
        EXPECT_LT((generic.values - direct.values).cwiseAbs().maxCoeff(), 1e-12) << "lookback " << lookback;
    }
}

TEST(FourTank, EmptyTanksStayEmptyWithoutPumping) {
    const Trajectory u = make_trajectory(Eigen::MatrixXd::Zero(2, 30));
    const Trajectory y = simulate_fourtank(FourTankParams{}, u, Eigen::Vector4d::Zero());
    EXPECT_EQ(y.values.cwiseAbs().maxCoeff(), 0.0);
}

TEST(FourTank, TankThreeDecouplesFromPumpOne) {
    const FourTankParams p{};
    Trajectory u1 = generate_excitation({40, 0.0, 0.05, 0, 9}, 2);
    Trajectory u2 = u1;
    u2.values.row(0) *= 0.1;  // perturb pump 1 only
    const Trajectory ya = simulate_fourtank(p, u1, Eigen::Vector4d::Zero());
    const Trajectory yb = simulate_fourtank(p, u2, Eigen::Vector4d::Zero());
    EXPECT_EQ((ya.values.row(2) - yb.values.row(2)).cwiseAbs().maxCoeff(), 0.0);
    EXPECT_GT((ya.values.row(0) - yb.values.row(0)).cwiseAbs().maxCoeff(), 0.0);
}

TEST(FourTank, BenchmarkExcitationKeepsLevelsNonnegative) {
    const Trajectory u = generate_excitation({1410, 0.0, 0.05, 2, 10}, 2);
    const Trajectory y = simulate_fourtank(FourTankParams{}, u, Eigen::Vector4d::Zero());
    EXPECT_EQ(y.length(), 1410);
    EXPECT_GE(y.values.minCoeff(), 0.0);
    EXPECT_GT(y.values.maxCoeff(), 0.0);
}

TEST(FourTank, NegativeLevelIsADomainError) {
    FourTankParams p{};
    p.T_s = 50.0;  // grossly unstable Euler step
    Trajectory u = make_trajectory(Eigen::MatrixXd::Zero(2, 10));
    EXPECT_THROW(simulate_fourtank(p, u, Eigen::Vector4d(1e-4, 0, 0, 0)), std::domain_error);
}

TEST(FourTank, GenericOgbSimulatorAgrees) {
    const FourTankParams p{};
    const Trajectory u = generate_excitation({200, 0.0, 0.05, 2, 11}, 2);
    const Trajectory direct = simulate_fourtank(p, u, Eigen::Vector4d::Zero());
    const Trajectory generic = fourtank_plant(p).simulate(u, Eigen::MatrixXd::Zero(4, 1));
    EXPECT_LT((generic.values - direct.values).cwiseAbs().maxCoeff(), 1e-12);
}

TEST(Rrmse, RatioArithmetic) {
    Eigen::MatrixXd m(1, 3);
    m << 1, 2, 2;
    const Trajectory y = make_trajectory(m);
    EXPECT_EQ(rrmse(y, y), 0.0);
    Trajectory y2 = y;
    y2.values *= 2.0;
    EXPECT_NEAR(rrmse(y2, y), 1.0, 1e-15);
    const Trajectory zero = make_trajectory(Eigen::MatrixXd::Zero(1, 3));
    EXPECT_THROW(rrmse(y, zero), std::invalid_argument);
    EXPECT_THROW(rrmse(y, make_trajectory(Eigen::MatrixXd::Zero(1, 2))), std::invalid_argument);
}

TEST(GenericOgbPlant, RejectsImplicitFeedthrough) {
    // u_nl(t) = y(t)^2 entering the output equation at the current step.
    GenericOgbPlant plant;
    plant.model.dims = SystemDims{1, 1, 1, 1, 1, 0};
    plant.model.zero_pad = 1;
    plant.model.phi_b0.push_back({basis_monomial(1, 0, 0, 0, 2), 0});
    plant.theta_lin = Eigen::MatrixXd::Zero(3, 1);
    plant.theta_lin(0, 0) = 0.5;
    plant.theta_nl_ext = Eigen::MatrixXd::Zero(2, 1);
    plant.theta_nl_ext(1, 0) = 1.0;  // current u_nl slot
    const Trajectory u = generate_excitation({10, 0.0, 1.0, 0, 12}, 1);
    Eigen::MatrixXd init(1, 1);
    init << 0.4;
    EXPECT_THROW(plant.simulate(u, init), std::logic_error);
}
