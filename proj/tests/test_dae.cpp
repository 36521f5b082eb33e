#include <doctest.h>

#include <cmath>
#include <random>

#include "netdyn/dae.hpp"
#include "netdyn/flows.hpp"
#include "netdyn/linalg.hpp"
#include "test_support.hpp"

using namespace netdyn;
using testsupport::path_middle_last;

TEST_CASE("heterogeneous network validation") {
    CHECK_THROWS_AS(HeterogeneousNetwork(Digraph(2, {{0, 1}}), 0), ValidationError);
    CHECK_THROWS_AS(HeterogeneousNetwork(Digraph(2, {{0, 1}}), 2), ValidationError);
    CHECK_THROWS_AS(HeterogeneousNetwork(Digraph(3, {{0, 1}}), 1), NotConnectedError);
    CHECK_NOTHROW(HeterogeneousNetwork(Digraph(2, {{0, 1}}), 1));
}

TEST_CASE("laplacian blocks") {
    SUBCASE("two-node path with one dynamic node") {
        const HeterogeneousNetwork h(Digraph(2, {{0, 1}}), 1);
        const LaplacianBlocks b = build_blocks(h);
        CHECK(b.l11(0, 0) == 1.0);
        CHECK(b.l12(0, 0) == -1.0);
        CHECK(b.l21(0, 0) == -1.0);
        CHECK(b.l22(0, 0) == 1.0);
    }
    SUBCASE("path with algebraic middle node") {
        const HeterogeneousNetwork h(path_middle_last(), 2);
        const LaplacianBlocks b = build_blocks(h);
        CHECK(b.l11 == Eigen::MatrixXd::Identity(2, 2));
        CHECK(b.l22(0, 0) == 2.0);
        // Assembled blocks reproduce the full Laplacian.
        Eigen::MatrixXd assembled(3, 3);
        assembled << b.l11, b.l12, b.l21, b.l22;
        CHECK(assembled == laplacian(h.graph()));
        CHECK(b.l21 == b.l12.transpose().eval());
    }
    SUBCASE("star with an algebraic center") {
        const HeterogeneousNetwork h(Digraph(4, {{0, 3}, {1, 3}, {2, 3}}), 3);
        CHECK(build_blocks(h).l22(0, 0) == 3.0);
    }
}

TEST_CASE("consistent completion") {
    SUBCASE("constant vectors complete to constants") {
        const HeterogeneousNetwork h(path_middle_last(), 2);
        const Eigen::VectorXd z = consistent_completion(h, Eigen::VectorXd::Constant(2, 3.5));
        CHECK(z.size() == 1);
        CHECK(z(0) == doctest::Approx(3.5).epsilon(1e-12));
    }
    SUBCASE("path with algebraic middle, y0 = (1, 0)") {
        const HeterogeneousNetwork h(path_middle_last(), 2);
        Eigen::VectorXd y0(2);
        y0 << 1, 0;
        CHECK(consistent_completion(h, y0)(0) == doctest::Approx(0.5).epsilon(1e-12));
    }
    SUBCASE("star center carries the mean of its neighbors") {
        const HeterogeneousNetwork h(Digraph(4, {{0, 3}, {1, 3}, {2, 3}}), 3);
        Eigen::VectorXd y0(3);
        y0 << 1, 2, 3;
        CHECK(consistent_completion(h, y0)(0) == doctest::Approx(2.0).epsilon(1e-12));
    }
}

TEST_CASE("reduction to the explicit ODE") {
    SUBCASE("two-node path, r = 1: a single dynamic node freezes") {
        const HeterogeneousNetwork h(Digraph(2, {{0, 1}}), 1);
        const ReducedSystem sys = reduce(h);
        REQUIRE(sys.reduced_matrix.rows() == 1);
        CHECK(std::abs(sys.reduced_matrix(0, 0)) < 1e-14);
    }
    SUBCASE("path with algebraic middle reduces to -(1/2) K2 Laplacian") {
        const HeterogeneousNetwork h(path_middle_last(), 2);
        const ReducedSystem sys = reduce(h);
        Eigen::MatrixXd expected(2, 2);
        expected << -0.5, 0.5, 0.5, -0.5;
        CHECK((sys.reduced_matrix - expected).cwiseAbs().maxCoeff() < 1e-14);
    }
    SUBCASE("the equilibrium line lies in the kernel") {
        std::mt19937 rng(79);
        for (int trial = 0; trial < 10; ++trial) {
            const Digraph g = testsupport::random_connected_graph(rng, 2, 9);
            const int r = std::uniform_int_distribution<int>(1, g.node_count() - 1)(rng);
            const HeterogeneousNetwork h(g, r);
            const ReducedSystem sys = reduce(h);
            CHECK((sys.reduced_matrix * Eigen::VectorXd::Ones(r)).cwiseAbs().maxCoeff() < 1e-12);
        }
    }
}

TEST_CASE("spectral structure of the reduced matrix") {
    std::mt19937 rng(83);
    for (int trial = 0; trial < 15; ++trial) {
        const Digraph g = testsupport::random_connected_graph(rng, 2, 10);
        const int r = std::uniform_int_distribution<int>(1, g.node_count() - 1)(rng);
        const ReducedSystem sys = reduce(HeterogeneousNetwork(g, r));

        CHECK((sys.reduced_matrix - sys.reduced_matrix.transpose()).cwiseAbs().maxCoeff() <=
              1e-12);
        const Eigen::VectorXd eigs = symmetric_eigenvalues(sys.reduced_matrix);
        CHECK(eigs(eigs.size() - 1) <= 1e-10);
        int zeros = 0;
        for (int i = 0; i < eigs.size(); ++i) {
            if (std::abs(eigs(i)) <= 1e-10) {
                ++zeros;
            } else {
                CHECK(eigs(i) < -1e-10);
            }
        }
        CHECK(zeros == 1);
    }
}

TEST_CASE("transversality: the stacked constraint matrix has full row rank") {
    std::mt19937 rng(89);
    for (int trial = 0; trial < 10; ++trial) {
        const Digraph g = testsupport::random_connected_graph(rng, 2, 9);
        const int n = g.node_count();
        const int r = std::uniform_int_distribution<int>(1, n - 1)(rng);
        const LaplacianBlocks b = build_blocks(HeterogeneousNetwork(g, r));

        Eigen::MatrixXd stacked(n - r + 1, n);
        stacked.row(0).setZero();
        stacked.row(0).head(r).setOnes();
        stacked.bottomRows(n - r) << b.l21, b.l22;
        CHECK(rank_kernel(stacked).rank == n - r + 1);
    }
}

TEST_CASE("predicted equilibrium is the mean of the dynamic initial values") {
    const HeterogeneousNetwork h(path_middle_last(), 2);
    SUBCASE("already uniform") {
        const HeterogeneousNetwork star(Digraph(4, {{0, 3}, {1, 3}, {2, 3}}), 3);
        const Eigen::VectorXd eq = predicted_equilibrium(star, Eigen::VectorXd::Ones(3));
        CHECK(eq == Eigen::VectorXd::Ones(4));
    }
    SUBCASE("two dynamic nodes") {
        Eigen::VectorXd y0(2);
        y0 << 1, 0;
        const Eigen::VectorXd eq = predicted_equilibrium(h, y0);
        CHECK(eq == Eigen::VectorXd::Constant(3, 0.5));
    }
    SUBCASE("three values averaging to 2") {
        const HeterogeneousNetwork star(Digraph(4, {{0, 3}, {1, 3}, {2, 3}}), 3);
        Eigen::VectorXd y0(3);
        y0 << 3, -1, 4;
        CHECK(predicted_equilibrium(star, y0) == Eigen::VectorXd::Constant(4, 2.0));
    }
}

TEST_CASE("constrained simulation") {
    SUBCASE("equilibrium initial values stay put") {
        const HeterogeneousNetwork h(path_middle_last(), 2);
        const DaeTrajectory traj = simulate_dae(h, Eigen::VectorXd::Constant(2, 1.25), 10.0);
        CHECK(traj.termination == Termination::Converged);
        CHECK((traj.y.back() - Eigen::VectorXd::Constant(2, 1.25)).cwiseAbs().maxCoeff() < 1e-12);
        CHECK(std::abs(traj.z.back()(0) - 1.25) < 1e-12);
    }
    SUBCASE("sum of dynamic variables is conserved") {
        std::mt19937 rng(97);
        const Digraph g = testsupport::random_connected_graph(rng, 3, 8);
        const int r = std::uniform_int_distribution<int>(1, g.node_count() - 1)(rng);
        const HeterogeneousNetwork h(g, r);
        const Eigen::VectorXd y0 = testsupport::random_vector(rng, r);
        IntegratorConfig config;
        config.convergence_tol = 1e-16;
        const DaeTrajectory traj = simulate_dae(h, y0, 20.0, config);
        const double sum0 = y0.sum();
        for (const Eigen::VectorXd& y : traj.y) {
            CHECK(std::abs(y.sum() - sum0) <= 1e-9 * (1.0 + std::abs(sum0)));
        }
    }
    SUBCASE("path with algebraic middle converges to one half") {
        const HeterogeneousNetwork h(path_middle_last(), 2);
        Eigen::VectorXd y0(2);
        y0 << 1, 0;
        IntegratorConfig config;
        const DaeTrajectory traj = simulate_dae(h, y0, 200.0, config);
        const Eigen::VectorXd expected = Eigen::VectorXd::Constant(2, 0.5);
        CHECK((traj.y.back() - expected).cwiseAbs().maxCoeff() < 1e-6);
        CHECK(std::abs(traj.z.back()(0) - 0.5) < 1e-6);
    }
}
