#include <doctest.h>

#include <cmath>
#include <random>

#include "netdyn/flows.hpp"
#include "netdyn/linalg.hpp"
#include "netdyn/multilevel.hpp"
#include "test_support.hpp"

using namespace netdyn;

namespace {

// Random two-level network with a connected group graph.
TwoLevelNetwork random_two_level(std::mt19937& rng, int max_agents = 8, int max_groups = 4) {
    const int p = std::uniform_int_distribution<int>(1, max_groups)(rng);
    const int n = std::uniform_int_distribution<int>(p, max_agents)(rng);
    // Every group gets one agent, the rest are spread at random.
    std::vector<int> membership(static_cast<size_t>(n));
    for (int j = 0; j < p; ++j) {
        membership[static_cast<size_t>(j)] = j;
    }
    for (int i = p; i < n; ++i) {
        membership[static_cast<size_t>(i)] = std::uniform_int_distribution<int>(0, p - 1)(rng);
    }
    const Digraph groups = p == 1 ? Digraph(1, {})
                                  : testsupport::random_connected_graph(rng, p, p, 0.4);
    return TwoLevelNetwork(Digraph(n, {}), groups, membership);
}

TwoLevelSystem sizes_21_system() {
    // Three agents in groups {0,1} and {2}; one edge between the two groups.
    const TwoLevelNetwork t(Digraph(3, {}), Digraph(2, {{0, 1}}), {0, 0, 1});
    return build_system(t, TwoLevelVariant::Simplified);
}

}  // namespace

TEST_CASE("system matrix assembly") {
    SUBCASE("one agent, one group, node-group coupling only") {
        const TwoLevelNetwork t(Digraph(1, {}), Digraph(1, {}), {0});
        const TwoLevelSystem s = build_system(t, TwoLevelVariant::NodeGroupOnly);
        Eigen::MatrixXd expected(2, 2);
        expected << -1, 1, 1, -1;
        CHECK(s.system_matrix() == expected);
    }
    SUBCASE("two singleton groups with one group edge, simplified") {
        const TwoLevelNetwork t(Digraph(2, {}), Digraph(2, {{0, 1}}), {0, 1});
        const TwoLevelSystem s = build_system(t, TwoLevelVariant::Simplified);
        Eigen::MatrixXd expected(4, 4);
        expected << -1, 0, 1, 0,
                    0, -1, 0, 1,
                    1, 0, -2, 1,
                    0, 1, 1, -2;
        CHECK(s.system_matrix() == expected);
        // Group diagonal is -1-d_j; every column sums to zero exactly.
        for (const Rational& sum : s.exact_system_matrix().column_sums()) {
            CHECK(sum == 0);
        }
    }
    SUBCASE("membership columns of A_H (A_H^T A_H)^{-1} sum to one") {
        std::mt19937 rng(101);
        for (int trial = 0; trial < 10; ++trial) {
            const TwoLevelSystem s =
                build_system(random_two_level(rng), TwoLevelVariant::Simplified);
            const int n = s.agent_count();
            const int p = s.group_count();
            const RationalMatrix& m = s.exact_system_matrix();
            for (int j = 0; j < p; ++j) {
                Rational column_sum(0);
                for (int i = 0; i < n; ++i) {
                    column_sum += m(i, n + j);
                }
                CHECK(column_sum == 1);
            }
        }
    }
    SUBCASE("column sums vanish exactly for every variant") {
        std::mt19937 rng(103);
        const TwoLevelNetwork base = random_two_level(rng);
        // Give the full variant an agent graph with edges.
        const TwoLevelNetwork with_edges(
            testsupport::random_connected_graph(rng, base.agent_count(), base.agent_count()),
            base.groups(), base.membership());
        for (TwoLevelVariant variant :
             {TwoLevelVariant::Simplified, TwoLevelVariant::Full, TwoLevelVariant::NodeGroupOnly}) {
            const TwoLevelSystem s = build_system(with_edges, variant);
            for (const Rational& sum : s.exact_system_matrix().column_sums()) {
                CHECK(sum == 0);
            }
        }
    }
    SUBCASE("disconnected group graph is rejected outside node-group-only") {
        const TwoLevelNetwork t(Digraph(2, {}), Digraph(2, {}), {0, 1});
        CHECK_THROWS_AS(build_system(t, TwoLevelVariant::Simplified),
                        GroupGraphDisconnectedError);
        CHECK_THROWS_AS(build_system(t, TwoLevelVariant::Full), GroupGraphDisconnectedError);
        CHECK_NOTHROW(build_system(t, TwoLevelVariant::NodeGroupOnly));
    }
}

TEST_CASE("equilibrium line") {
    SUBCASE("all singleton groups: the all-ones direction") {
        const TwoLevelNetwork t(Digraph(2, {}), Digraph(2, {{0, 1}}), {0, 1});
        const TwoLevelSystem s = build_system(t, TwoLevelVariant::Simplified);
        CHECK(equilibrium_line(s) == Eigen::VectorXd::Ones(4));
    }
    SUBCASE("group sizes (2, 1)") {
        const Eigen::VectorXd direction = equilibrium_line(sizes_21_system());
        Eigen::VectorXd expected(5);
        expected << 0.5, 0.5, 1.0, 1.0, 1.0;
        CHECK(direction == expected);
    }
    SUBCASE("kernel of M is exactly one-dimensional") {
        std::mt19937 rng(107);
        for (int trial = 0; trial < 10; ++trial) {
            const TwoLevelSystem s =
                build_system(random_two_level(rng), TwoLevelVariant::Simplified);
            const RankKernel rk = rank_kernel(s.system_matrix());
            CHECK(rk.rank == s.agent_count() + s.group_count() - 1);
        }
    }
    SUBCASE("full variant is refused") {
        std::mt19937 rng(109);
        const TwoLevelSystem s = build_system(random_two_level(rng), TwoLevelVariant::Full);
        CHECK_THROWS_AS(equilibrium_line(s), VariantUnsupportedError);
        Eigen::VectorXd x0 = Eigen::VectorXd::Zero(s.agent_count());
        Eigen::VectorXd y0 = Eigen::VectorXd::Zero(s.group_count());
        CHECK_THROWS_AS(predicted_limit(s, x0, y0), VariantUnsupportedError);
        CHECK_THROWS_AS(stability_certificate(s), VariantUnsupportedError);
        // But the full variant is constructible and simulatable.
        CHECK_NOTHROW(simulate_twolevel(s, x0, y0, 1.0));
    }
}

TEST_CASE("predicted limit") {
    SUBCASE("zero initial data goes to zero") {
        const TwoLevelState limit =
            predicted_limit(sizes_21_system(), Eigen::VectorXd::Zero(3), Eigen::VectorXd::Zero(2));
        CHECK(limit.x.cwiseAbs().maxCoeff() == 0.0);
        CHECK(limit.y.cwiseAbs().maxCoeff() == 0.0);
    }
    SUBCASE("one agent, one group") {
        const TwoLevelNetwork t(Digraph(1, {}), Digraph(1, {}), {0});
        const TwoLevelSystem s = build_system(t, TwoLevelVariant::Simplified);
        const TwoLevelState limit = predicted_limit(s, Eigen::VectorXd::Constant(1, 2.0),
                                                    Eigen::VectorXd::Zero(1));
        CHECK(limit.y(0) == doctest::Approx(1.0));
        CHECK(limit.x(0) == doctest::Approx(1.0));
    }
    SUBCASE("sizes (2, 1) worked example") {
        Eigen::VectorXd x0 = Eigen::VectorXd::Ones(3);
        Eigen::VectorXd y0(2);
        y0 << 3, 0;
        const TwoLevelState limit = predicted_limit(sizes_21_system(), x0, y0);
        CHECK(limit.y(0) == doctest::Approx(1.5));
        CHECK(limit.y(1) == doctest::Approx(1.5));
        CHECK(limit.x(0) == doctest::Approx(0.75));
        CHECK(limit.x(1) == doctest::Approx(0.75));
        CHECK(limit.x(2) == doctest::Approx(1.5));
    }
}

TEST_CASE("stability certificate") {
    SUBCASE("one agent, one group: both discs are (-1, 1)") {
        const TwoLevelNetwork t(Digraph(1, {}), Digraph(1, {}), {0});
        const StabilityCertificate cert =
            stability_certificate(build_system(t, TwoLevelVariant::Simplified));
        REQUIRE(cert.discs.size() == 2);
        for (const Disc& d : cert.discs) {
            CHECK(d.center == -1.0);
            CHECK(d.radius == 1.0);
        }
        CHECK(cert.all_in_closed_left_half_plane);
        CHECK(cert.zero_eigenvalue_simple);
    }
    SUBCASE("two singleton groups with one edge: group discs are (-2, 2)") {
        const TwoLevelNetwork t(Digraph(2, {}), Digraph(2, {{0, 1}}), {0, 1});
        const StabilityCertificate cert =
            stability_certificate(build_system(t, TwoLevelVariant::Simplified));
        REQUIRE(cert.discs.size() == 4);
        CHECK(cert.discs[2].center == -2.0);
        CHECK(cert.discs[2].radius == 2.0);
        CHECK(cert.discs[3].center == -2.0);
        CHECK(cert.discs[3].radius == 2.0);
    }
    SUBCASE("certificate holds on random instances") {
        std::mt19937 rng(113);
        for (int trial = 0; trial < 10; ++trial) {
            const TwoLevelSystem s =
                build_system(random_two_level(rng), TwoLevelVariant::Simplified);
            const StabilityCertificate cert = stability_certificate(s);
            CHECK(cert.all_in_closed_left_half_plane);
            CHECK(cert.zero_eigenvalue_simple);
            // Agent discs: center -1, radius 1; group discs: center -1-d_j,
            // radius 1+d_j.
            for (int i = 0; i < s.agent_count(); ++i) {
                CHECK(cert.discs[static_cast<size_t>(i)].center == -1.0);
                CHECK(cert.discs[static_cast<size_t>(i)].radius == 1.0);
            }
            for (int j = 0; j < s.group_count(); ++j) {
                const double d = s.group_degrees()[static_cast<size_t>(j)];
                CHECK(cert.discs[static_cast<size_t>(s.agent_count() + j)].center == -1.0 - d);
            }
        }
    }
}

TEST_CASE("eliminating the agent block reduces the equilibrium condition to Gy = 0") {
    std::mt19937 rng(163);
    for (int trial = 0; trial < 5; ++trial) {
        const TwoLevelSystem s = build_system(random_two_level(rng), TwoLevelVariant::Simplified);
        const int n = s.agent_count();
        const int p = s.group_count();
        const Eigen::MatrixXd& m = s.system_matrix();

        // Reorder the state as (y, x) so the agent block is the one eliminated.
        Eigen::MatrixXd permuted(n + p, n + p);
        permuted.topLeftCorner(p, p) = m.bottomRightCorner(p, p);
        permuted.topRightCorner(p, n) = m.bottomLeftCorner(p, n);
        permuted.bottomLeftCorner(n, p) = m.topRightCorner(n, p);
        permuted.bottomRightCorner(n, n) = m.topLeftCorner(n, n);

        const SchurReduction schur = schur_reduce(permuted, p);
        const Eigen::MatrixXd group_lap = laplacian(s.network().groups());
        CHECK((schur.reduced + group_lap).cwiseAbs().maxCoeff() < 1e-12);
    }
}

TEST_CASE("estimated decay rate") {
    SUBCASE("one agent, one group: eigenvalues are 0 and -2") {
        const TwoLevelNetwork t(Digraph(1, {}), Digraph(1, {}), {0});
        const TwoLevelSystem s = build_system(t, TwoLevelVariant::Simplified);
        const auto rate = estimated_decay_rate(s);
        REQUIRE(rate.has_value());
        CHECK(*rate == doctest::Approx(-2.0));
    }
    SUBCASE("negative on random small instances") {
        std::mt19937 rng(151);
        for (int trial = 0; trial < 10; ++trial) {
            const TwoLevelSystem s =
                build_system(random_two_level(rng), TwoLevelVariant::Simplified);
            const auto rate = estimated_decay_rate(s);
            REQUIRE(rate.has_value());
            CHECK(*rate < 0.0);
        }
    }
    SUBCASE("refused above 12 states") {
        // 10 agents in 4 groups: 14 state variables.
        std::vector<int> membership = {0, 0, 0, 1, 1, 1, 2, 2, 3, 3};
        const TwoLevelNetwork t(Digraph(10, {}),
                                Digraph(4, {{0, 1}, {1, 2}, {2, 3}}), membership);
        const TwoLevelSystem s = build_system(t, TwoLevelVariant::Simplified);
        CHECK_FALSE(estimated_decay_rate(s).has_value());
        // The certificate still applies.
        CHECK(stability_certificate(s).all_in_closed_left_half_plane);
    }
}

TEST_CASE("two-level simulation") {
    SUBCASE("starting on the equilibrium line stays constant") {
        const TwoLevelSystem s = sizes_21_system();
        const Eigen::VectorXd dir = equilibrium_line(s);
        const Trajectory traj = simulate_twolevel(s, dir.head(3), dir.tail(2), 10.0);
        CHECK(traj.termination == Termination::Converged);
        CHECK((traj.terminal_state() - dir).cwiseAbs().maxCoeff() < 1e-12);
    }
    SUBCASE("conservation and convergence to the predicted limit") {
        const TwoLevelSystem s = sizes_21_system();
        Eigen::VectorXd x0 = Eigen::VectorXd::Ones(3);
        Eigen::VectorXd y0(2);
        y0 << 3, 0;
        IntegratorConfig config;
        config.convergence_tol = 1e-12;
        const Trajectory traj = simulate_twolevel(s, x0, y0, 400.0, config);
        const double total0 = x0.sum() + y0.sum();
        for (const Eigen::VectorXd& state : traj.states) {
            CHECK(std::abs(state.sum() - total0) <= 1e-9 * (1.0 + std::abs(total0)));
        }
        const Eigen::VectorXd limit = predicted_limit(s, x0, y0).stacked();
        CHECK((traj.terminal_state() - limit).lpNorm<Eigen::Infinity>() < 1e-6);
        CHECK(traj.terminal_state()(3) == doctest::Approx(1.5).epsilon(1e-6));
        CHECK(traj.terminal_state()(4) == doctest::Approx(1.5).epsilon(1e-6));
    }
}
