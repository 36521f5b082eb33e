// Command-line front end: network file ingestion, analysis commands,
// simulation runs, and machine-readable reports.

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>
#include <string>

#include "netdyn/dae.hpp"
#include "netdyn/equilibria.hpp"
#include "netdyn/flows.hpp"
#include "netdyn/graph.hpp"
#include "netdyn/linalg.hpp"
#include "netdyn/multilevel.hpp"
#include "netdyn/network_file.hpp"
#include "netdyn/sim.hpp"

using nlohmann::json;

namespace {

struct Options {
    std::string file;
    bool as_json = false;
    int precision = 6;
    long long cap = netdyn::kDefaultTreeCap;
};

long long cap_from_env() {
    // NETDYN_CAP overrides the default enumeration cap; --cap overrides both.
    if (const char* env = std::getenv("NETDYN_CAP")) {
        try {
            return std::stoll(env);
        } catch (const std::exception&) {
            throw netdyn::ValidationError("NETDYN_CAP is not an integer");
        }
    }
    return netdyn::kDefaultTreeCap;
}

std::string fmt_full(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

std::string fmt_sig(double v, int digits) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.*g", digits, v);
    return buf;
}

json matrix_json(const Eigen::MatrixXd& m) {
    json rows = json::array();
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        json row = json::array();
        for (Eigen::Index j = 0; j < m.cols(); ++j) {
            row.push_back(m(i, j));
        }
        rows.push_back(row);
    }
    return rows;
}

json vector_json(const Eigen::VectorXd& v) {
    json out = json::array();
    for (Eigen::Index i = 0; i < v.size(); ++i) {
        out.push_back(v(i));
    }
    return out;
}

void print_matrix(const Eigen::MatrixXd& m, int digits) {
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        std::cout << "  ";
        for (Eigen::Index j = 0; j < m.cols(); ++j) {
            std::cout << (j ? " " : "") << fmt_sig(m(i, j), digits);
        }
        std::cout << "\n";
    }
}

Eigen::VectorXd parse_state(const std::string& spec, int dim) {
    if (spec.rfind("seed:", 0) == 0) {
        unsigned seed = 42;
        try {
            seed = static_cast<unsigned>(std::stoul(spec.substr(5)));
        } catch (const std::exception&) {
            throw netdyn::ValidationError("invalid seed in --x0: " + spec);
        }
        std::mt19937 rng(seed);
        std::uniform_real_distribution<double> dist(-1.0, 1.0);
        Eigen::VectorXd x(dim);
        for (int i = 0; i < dim; ++i) {
            x(i) = dist(rng);
        }
        return x;
    }
    std::vector<double> values;
    std::stringstream ss(spec);
    std::string token;
    while (std::getline(ss, token, ',')) {
        try {
            values.push_back(std::stod(token));
        } catch (const std::exception&) {
            throw netdyn::ValidationError("invalid number in --x0: " + token);
        }
    }
    if (static_cast<int>(values.size()) != dim) {
        throw netdyn::ValidationError("--x0 has " + std::to_string(values.size()) +
                                      " entries, expected " + std::to_string(dim));
    }
    return Eigen::Map<Eigen::VectorXd>(values.data(), dim);
}

void write_csv(const std::string& path, const std::vector<std::string>& labels,
               const std::vector<double>& times, const std::vector<Eigen::VectorXd>& states) {
    std::ofstream out(path);
    if (!out) {
        throw netdyn::ValidationError("cannot write trajectory file: " + path);
    }
    out << "t";
    for (const std::string& label : labels) {
        out << "," << label;
    }
    out << "\n";
    for (size_t k = 0; k < times.size(); ++k) {
        out << fmt_full(times[k]);
        for (Eigen::Index i = 0; i < states[k].size(); ++i) {
            out << "," << fmt_full(states[k](i));
        }
        out << "\n";
    }
}

const char* termination_name(netdyn::Termination t) {
    switch (t) {
        case netdyn::Termination::Converged:
            return "converged";
        case netdyn::Termination::HorizonReached:
            return "horizonReached";
        default:
            return "error";
    }
}

// ---------------------------------------------------------------------------

int cmd_info(const Options& opt) {
    const netdyn::NetworkFile file = netdyn::NetworkFile::load(opt.file);
    const netdyn::Digraph g = file.digraph();
    const netdyn::WeightedDigraph w = file.weighted();

    json report;
    report["nodes"] = g.node_count();
    report["edges"] = g.edge_count();
    report["labels"] = file.labels;
    report["connected"] = netdyn::is_connected(g);
    report["incidenceMatrix"] = matrix_json(netdyn::incidence_matrix(g));
    report["laplacian"] = matrix_json(netdyn::laplacian(g, w.weights()));
    if (file.has_groups()) {
        const netdyn::TwoLevelNetwork t = file.two_level();
        json groups;
        groups["count"] = t.group_count();
        groups["edgeCount"] = t.groups().edge_count();
        groups["sizes"] = t.group_sizes();
        groups["membershipMatrix"] = matrix_json(netdyn::group_incidence(t));
        groups["groupGraphConnected"] = netdyn::is_connected(t.groups());
        report["groups"] = groups;
    }

    if (opt.as_json) {
        std::cout << report.dump(2) << "\n";
        return 0;
    }
    std::cout << "nodes: " << g.node_count() << "\nedges: " << g.edge_count()
              << "\nconnected: " << (report["connected"].get<bool>() ? "yes" : "no") << "\n";
    std::cout << "incidence matrix:\n";
    print_matrix(netdyn::incidence_matrix(g), opt.precision);
    std::cout << "laplacian:\n";
    print_matrix(netdyn::laplacian(g, w.weights()), opt.precision);
    if (file.has_groups()) {
        const netdyn::TwoLevelNetwork t = file.two_level();
        std::cout << "groups: " << t.group_count() << " (sizes:";
        for (int s : t.group_sizes()) {
            std::cout << " " << s;
        }
        std::cout << "), group edges: " << t.groups().edge_count() << "\n";
        std::cout << "membership matrix:\n";
        print_matrix(netdyn::group_incidence(t), opt.precision);
    }
    return 0;
}

int cmd_trees(const Options& opt, bool with_signs) {
    const netdyn::NetworkFile file = netdyn::NetworkFile::load(opt.file);
    const netdyn::WeightedDigraph w = file.weighted();
    const netdyn::Digraph& g = w.base();

    if (!netdyn::is_connected(g)) {
        throw netdyn::NotConnectedError();
    }
    const mpz_class count = netdyn::tree_count(g);
    const netdyn::Rational det_sum = netdyn::tree_weight_sum_det(w);

    json report;
    report["treeCount"] = count.get_str();
    report["weightSumDet"] = netdyn::to_string(det_sum);
    report["weightSumValue"] = netdyn::to_double(det_sum);

    try {
        const netdyn::Rational enum_sum = netdyn::tree_weight_sum_enum(w, opt.cap);
        report["weightSumEnum"] = netdyn::to_string(enum_sum);
        report["agree"] = (enum_sum == det_sum);
        if (with_signs) {
            const netdyn::SignedTreeCounts counts =
                netdyn::signed_tree_counts(file.signed_digraph(), opt.cap);
            report["signed"] = {{"positive", counts.positive},
                                {"negative", counts.negative},
                                {"degenerate", counts.positive == counts.negative}};
        }
    } catch (const netdyn::CapExceededError& e) {
        report["capExceeded"] = true;
        report["guidance"] =
            "enumeration skipped (tree count above cap); the determinantal value weightSumDet is "
            "exact and sufficient for the corank test";
        if (opt.as_json) {
            std::cout << report.dump(2) << "\n";
        } else {
            std::cout << e.what() << "\n"
                      << "tree-weight sum (determinant route): " << netdyn::to_string(det_sum)
                      << "\n";
        }
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    }

    if (opt.as_json) {
        std::cout << report.dump(2) << "\n";
        return 0;
    }
    std::cout << "spanning trees: " << count.get_str() << "\n"
              << "tree-weight sum (enumeration):  " << report["weightSumEnum"].get<std::string>()
              << "\n"
              << "tree-weight sum (determinant):  " << report["weightSumDet"].get<std::string>()
              << "\n"
              << "routes agree: " << (report["agree"].get<bool>() ? "yes" : "no") << "\n";
    if (with_signs) {
        std::cout << "positive trees: " << report["signed"]["positive"].get<long long>()
                  << ", negative trees: " << report["signed"]["negative"].get<long long>()
                  << (report["signed"]["degenerate"].get<bool>() ? " (degenerate)" : "") << "\n";
    }
    return 0;
}

int cmd_equilibria(const Options& opt, const std::string& at) {
    const netdyn::NetworkFile file = netdyn::NetworkFile::load(opt.file);
    const netdyn::PotentialFlow flow = file.flow();
    const int n = flow.graph().node_count();
    const Eigen::VectorXd x_star = at.empty() ? Eigen::VectorXd::Zero(n) : parse_state(at, n);

    const netdyn::EquilibriumReport rep = netdyn::corank_one_test(flow, x_star, opt.cap);

    json report;
    report["state"] = vector_json(x_star);
    report["jacobianRank"] = rep.jacobian_rank;
    report["corank"] = rep.corank;
    json kernel = json::array();
    for (Eigen::Index k = 0; k < rep.kernel_basis.cols(); ++k) {
        kernel.push_back(vector_json(rep.kernel_basis.col(k)));
    }
    report["kernelBasis"] = kernel;
    report["treeWeightSum"] = rep.tree_weight_sum;
    if (rep.tree_weight_sum_enum) {
        report["treeWeightSumEnum"] = netdyn::to_string(*rep.tree_weight_sum_enum);
    }
    if (rep.tree_weight_sum_det) {
        report["treeWeightSumDet"] = netdyn::to_string(*rep.tree_weight_sum_det);
    }
    report["exactDecision"] = rep.exact_decision;
    report["corankOneCertified"] = rep.corank_one_certified;
    report["localDimension"] = rep.dimension_certified
                                   ? std::to_string(rep.local_dimension)
                                   : "uncertified(>=" + std::to_string(rep.local_dimension) + ")";

    if (opt.as_json) {
        std::cout << report.dump(2) << "\n";
        return 0;
    }
    std::cout << "jacobian rank: " << rep.jacobian_rank << "\ncorank: " << rep.corank << "\n"
              << "tree-weight sum: "
              << (rep.tree_weight_sum_det ? netdyn::to_string(*rep.tree_weight_sum_det)
                                          : fmt_sig(rep.tree_weight_sum, opt.precision))
              << (rep.exact_decision ? " (exact)" : " (numerical)") << "\n"
              << "corank-one certified: " << (rep.corank_one_certified ? "yes" : "no") << "\n"
              << "local equilibrium dimension: " << report["localDimension"].get<std::string>()
              << "\n";
    if (rep.kernel_basis.cols() > 0) {
        std::cout << "kernel basis (rows):\n";
        print_matrix(rep.kernel_basis.transpose(), opt.precision);
    }
    return 0;
}

int cmd_simulate(const Options& opt, const std::string& model, const std::string& x0_spec,
                 double horizon, double step, const std::string& method,
                 const std::string& out_path) {
    const netdyn::NetworkFile file = netdyn::NetworkFile::load(opt.file);

    netdyn::IntegratorConfig config;
    config.step = step;
    config.horizon = horizon;
    if (method == "rk45") {
        config.method = netdyn::Method::AdaptiveRK45;
    } else if (method != "rk4") {
        throw netdyn::ValidationError("unknown --method (use rk4 or rk45)");
    }

    std::vector<std::string> labels;
    std::vector<double> times;
    std::vector<Eigen::VectorXd> states;
    netdyn::Termination termination = netdyn::Termination::Error;
    Eigen::VectorXd predicted;
    bool has_predicted = false;

    if (model == "consensus") {
        const netdyn::Digraph g = file.digraph();
        if (!netdyn::is_connected(g)) {
            throw netdyn::NotConnectedError();
        }
        const Eigen::VectorXd x0 = parse_state(x0_spec, g.node_count());
        const Eigen::MatrixXd lap = netdyn::laplacian(g);
        const netdyn::Trajectory traj = netdyn::integrate(
            [&lap](double, const Eigen::VectorXd& x) -> Eigen::VectorXd { return -lap * x; }, x0,
            config);
        labels = file.labels;
        times = traj.times;
        states = traj.states;
        termination = traj.termination;
        predicted = Eigen::VectorXd::Constant(g.node_count(), x0.mean());
        has_predicted = true;
    } else if (model == "flow") {
        const netdyn::PotentialFlow flow = file.flow();
        if (!flow.all_dynamic()) {
            throw netdyn::ModelMismatchError(
                "flow model requires all alpha = 1; use --model dae for constrained nodes");
        }
        const Eigen::VectorXd x0 = parse_state(x0_spec, flow.graph().node_count());
        const netdyn::Trajectory traj = netdyn::integrate(
            [&flow](double, const Eigen::VectorXd& x) -> Eigen::VectorXd {
                return netdyn::rhs(flow, x);
            },
            x0, config);
        labels = file.labels;
        times = traj.times;
        states = traj.states;
        termination = traj.termination;
        bool positive = true;
        for (const netdyn::EdgeFunction& f : flow.edge_functions()) {
            if (!f.is_linear() || f.linear_weight() <= 0.0) {
                positive = false;
            }
        }
        if (positive && netdyn::is_connected(flow.graph())) {
            predicted = Eigen::VectorXd::Constant(flow.graph().node_count(), x0.mean());
            has_predicted = true;
        }
    } else if (model == "dae") {
        const netdyn::HeterogeneousNetwork h = file.heterogeneous();
        const int r = h.type1_count();
        const int n = h.graph().node_count();
        Eigen::VectorXd y0;
        if (x0_spec.rfind("seed:", 0) == 0) {
            y0 = parse_state(x0_spec, r);
        } else {
            // Accept either y0 (length r) or a full state (length n); a full
            // state has its z-part replaced by the consistent completion.
            std::stringstream ss(x0_spec);
            std::string token;
            int entries = 0;
            while (std::getline(ss, token, ',')) {
                ++entries;
            }
            if (entries == n && n != r) {
                const Eigen::VectorXd full = parse_state(x0_spec, n);
                y0 = full.head(r);
                const Eigen::VectorXd z0 = netdyn::consistent_completion(h, y0);
                if ((full.tail(n - r) - z0).lpNorm<Eigen::Infinity>() >
                    1e-9 * (1.0 + z0.lpNorm<Eigen::Infinity>())) {
                    std::cerr << "warning: supplied z is inconsistent with the constraints; "
                                 "using the consistent completion instead\n";
                }
            } else {
                y0 = parse_state(x0_spec, r);
            }
        }
        const netdyn::DaeTrajectory traj = netdyn::simulate_dae(h, y0, horizon, config);
        labels = file.labels;
        times = traj.times;
        states.reserve(traj.times.size());
        for (size_t k = 0; k < traj.times.size(); ++k) {
            states.push_back(traj.full_state(k));
        }
        termination = traj.termination;
        predicted = netdyn::predicted_equilibrium(h, y0);
        has_predicted = true;
    } else if (model == "twolevel") {
        const netdyn::TwoLevelNetwork t = file.two_level();
        const netdyn::TwoLevelSystem sys =
            netdyn::build_system(t, netdyn::TwoLevelVariant::Simplified);
        const int n = t.agent_count();
        const int p = t.group_count();
        const Eigen::VectorXd state0 = parse_state(x0_spec, n + p);
        const netdyn::Trajectory traj =
            netdyn::simulate_twolevel(sys, state0.head(n), state0.tail(p), horizon, config);
        labels = file.labels;
        for (int j = 1; j <= p; ++j) {
            labels.push_back("g" + std::to_string(j));
        }
        times = traj.times;
        states = traj.states;
        termination = traj.termination;
        predicted = netdyn::predicted_limit(sys, state0.head(n), state0.tail(p)).stacked();
        has_predicted = true;
    } else {
        throw netdyn::ModelMismatchError("unknown --model (use consensus|dae|twolevel|flow)");
    }

    write_csv(out_path, labels, times, states);

    json summary;
    summary["model"] = model;
    summary["csv"] = out_path;
    summary["terminationReason"] = termination_name(termination);
    summary["steps"] = times.size() - 1;
    summary["terminalTime"] = times.back();
    summary["terminalState"] = vector_json(states.back());
    if (has_predicted) {
        summary["predictedEquilibrium"] = vector_json(predicted);
        summary["deviationNorm"] = (states.back() - predicted).lpNorm<Eigen::Infinity>();
    } else {
        summary["predictedEquilibrium"] = nullptr;
        summary["deviationNorm"] = nullptr;
    }

    if (opt.as_json) {
        std::cout << summary.dump(2) << "\n";
        return 0;
    }
    std::cout << "model: " << model << "\ntermination: " << termination_name(termination)
              << " at t = " << fmt_sig(times.back(), opt.precision) << " (" << times.size() - 1
              << " steps)\n";
    std::cout << "terminal state:";
    for (Eigen::Index i = 0; i < states.back().size(); ++i) {
        std::cout << " " << fmt_sig(states.back()(i), opt.precision);
    }
    std::cout << "\n";
    if (has_predicted) {
        std::cout << "predicted equilibrium:";
        for (Eigen::Index i = 0; i < predicted.size(); ++i) {
            std::cout << " " << fmt_sig(predicted(i), opt.precision);
        }
        std::cout << "\ndeviation (max norm): "
                  << fmt_sig(summary["deviationNorm"].get<double>(), opt.precision) << "\n";
    }
    std::cout << "trajectory written to " << out_path << "\n";
    return 0;
}

int cmd_gershgorin(const Options& opt) {
    const netdyn::NetworkFile file = netdyn::NetworkFile::load(opt.file);
    const netdyn::TwoLevelNetwork t = file.two_level();
    const netdyn::TwoLevelSystem sys = netdyn::build_system(t, netdyn::TwoLevelVariant::Simplified);
    const netdyn::StabilityCertificate cert = netdyn::stability_certificate(sys);

    json report;
    json discs = json::array();
    for (const netdyn::Disc& d : cert.discs) {
        discs.push_back({{"center", d.center}, {"radius", d.radius}});
    }
    report["discs"] = discs;
    report["allInClosedLeftHalfPlane"] = cert.all_in_closed_left_half_plane;
    report["zeroEigenvalueSimple"] = cert.zero_eigenvalue_simple;
    const std::optional<double> rate = netdyn::estimated_decay_rate(sys);
    report["slowestNonzeroRate"] = rate ? json(*rate) : json(nullptr);

    if (opt.as_json) {
        std::cout << report.dump(2) << "\n";
        return 0;
    }
    std::cout << "Gershgorin discs (center, radius):\n";
    for (const netdyn::Disc& d : cert.discs) {
        std::cout << "  (" << fmt_sig(d.center, opt.precision) << ", "
                  << fmt_sig(d.radius, opt.precision) << ")\n";
    }
    std::cout << "all discs in closed left half plane: "
              << (cert.all_in_closed_left_half_plane ? "yes" : "no") << "\n"
              << "zero eigenvalue simple: " << (cert.zero_eigenvalue_simple ? "yes" : "no") << "\n";
    if (rate) {
        std::cout << "slowest nonzero eigenvalue (real part): " << fmt_sig(*rate, opt.precision)
                  << "\n";
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Network dynamics toolkit: consensus, constrained and two-level flows, "
                 "and spanning-tree equilibrium analysis"};
    app.require_subcommand(1);

    Options opt;
    std::string at;
    std::string model;
    std::string x0_spec = "seed:42";
    std::string method = "rk4";
    std::string out_path = "trajectory.csv";
    double horizon = 50.0;
    double step = 1e-2;
    bool with_signs = false;

    auto add_common = [&](CLI::App* cmd) {
        cmd->add_option("file", opt.file, "network file (JSON)")->required();
        cmd->add_flag("--json", opt.as_json, "emit a machine-readable JSON report");
        cmd->add_option("--precision", opt.precision,
                        "significant digits for human-readable output");
    };

    CLI::App* info = app.add_subcommand("info", "network structure and matrices");
    add_common(info);

    CLI::App* trees = app.add_subcommand("trees", "spanning-tree count and weight sums");
    add_common(trees);
    trees->add_option("--cap", opt.cap, "enumeration cap (overrides NETDYN_CAP)");
    trees->add_flag("--signed", with_signs, "also report positive/negative tree counts");

    CLI::App* equilibria =
        app.add_subcommand("equilibria", "corank test and equilibrium-set report");
    add_common(equilibria);
    equilibria->add_option("--cap", opt.cap, "enumeration cap (overrides NETDYN_CAP)");
    equilibria->add_option("--at", at, "probe state, comma separated (default: zero state)");

    CLI::App* simulate = app.add_subcommand("simulate", "integrate a model and write a CSV");
    add_common(simulate);
    simulate->add_option("--model", model, "consensus|dae|twolevel|flow")->required();
    simulate->add_option("--x0", x0_spec, "initial state: comma list or seed:<n> (default seed:42)");
    simulate->add_option("--horizon", horizon, "integration horizon");
    simulate->add_option("--step", step, "fixed step (rk4) / initial step (rk45)");
    simulate->add_option("--method", method, "rk4 (default) or rk45");
    simulate->add_option("--out", out_path, "trajectory CSV path");

    CLI::App* gershgorin = app.add_subcommand("gershgorin", "two-level stability certificate");
    add_common(gershgorin);

    try {
        opt.cap = cap_from_env();
        app.parse(argc, argv);

        if (info->parsed()) return cmd_info(opt);
        if (trees->parsed()) return cmd_trees(opt, with_signs);
        if (equilibria->parsed()) return cmd_equilibria(opt, at);
        if (simulate->parsed()) return cmd_simulate(opt, model, x0_spec, horizon, step, method, out_path);
        if (gershgorin->parsed()) return cmd_gershgorin(opt);
        return 2;
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    } catch (const netdyn::ValidationError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const netdyn::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    }
}
