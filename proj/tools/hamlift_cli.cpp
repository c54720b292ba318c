// Command-line front end: flows, quantization, propagation, verification.
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "hamlift/config.hpp"
#include "hamlift/correspondence.hpp"
#include "hamlift/flow.hpp"
#include "hamlift/io.hpp"
#include "hamlift/verify.hpp"
#include "hamlift/weyl.hpp"

namespace {

using namespace hamlift;

struct CommonOptions {
    std::string config_path;
    std::string out_path;
    double hbar = -1;  // <0: not set on the command line
    long grid_n = -1;
    int steps = -1;
    long seed = -1;
};

void add_common(CLI::App* cmd, CommonOptions& c) {
    cmd->add_option("--config", c.config_path, "key=value config file");
    cmd->add_option("--out", c.out_path, "output path (default stdout)");
    cmd->add_option("--hbar", c.hbar, "override hbar");
    cmd->add_option("--grid-n", c.grid_n, "override grid sample count");
    cmd->add_option("--steps", c.steps, "override integrator steps");
    cmd->add_option("--seed", c.seed, "override probe seed");
}

RunConfig load_config(const CommonOptions& c) {
    RunConfig cfg = c.config_path.empty() ? parse_config("") : parse_config_file(c.config_path);
    if (c.hbar > 0) cfg.hbar = c.hbar;
    if (c.grid_n > 0) cfg.grid_n = c.grid_n;
    if (c.steps > 0) cfg.steps = c.steps;
    if (c.seed >= 0) cfg.seed = c.seed;
    return cfg;
}

int emit(const CommonOptions& c, const std::string& text) {
    if (c.out_path.empty()) {
        std::cout << text;
        return 0;
    }
    std::ofstream f(c.out_path, std::ios::binary);
    if (!f) {
        std::cerr << "hamlift: cannot open output path '" << c.out_path << "'\n";
        return 2;
    }
    f << text;
    return 0;
}

int cmd_flow(const CommonOptions& c, double x0, double p0, double t) {
    const RunConfig cfg = load_config(c);
    if (t == 0.0) {
        Trajectory tr;
        tr.times.push_back(0.0);
        tr.states.push_back(PhaseSpacePoint(x0, p0).to_vector());
        std::ostringstream os;
        write_trajectory_csv(os, tr,
                             {cfg.hamiltonian()(PhaseSpacePoint(x0, p0), 0.0)});
        return emit(c, os.str());
    }
    FlowMap fm;
    fm.H = cfg.hamiltonian();
    fm.t_from = 0.0;
    fm.t_to = t;
    fm.steps = cfg.steps;
    fm.method = cfg.method;
    const FlowResult res = integrate_flow(fm, PhaseSpacePoint(x0, p0));
    std::vector<double> energies;
    energies.reserve(res.trajectory.times.size());
    for (std::size_t i = 0; i < res.trajectory.times.size(); ++i)
        energies.push_back(fm.H(PhaseSpacePoint::from_vector(res.trajectory.states[i]),
                                res.trajectory.times[i]));
    std::ostringstream os;
    write_trajectory_csv(os, res.trajectory, energies);
    return emit(c, os.str());
}

int cmd_jacobian(const CommonOptions& c, double x0, double p0, double t) {
    const RunConfig cfg = load_config(c);
    const JacobianTrajectory jt =
        integrate_variational(cfg.hamiltonian(), PhaseSpacePoint(x0, p0), 0.0, t, cfg.steps);
    const Mat& S = jt.final_jacobian();
    nlohmann::json j = {{"t", t},
                        {"z0", {x0, p0}},
                        {"jacobian", matrix_to_json(S)},
                        {"symplecticity_defect", symplecticity_defect(S)}};
    return emit(c, json_to_string(j));
}

int cmd_banyaga(const CommonOptions& c, double t_eval) {
    // Reconstruct the configured Hamiltonian from its own numerical flow
    // family and report the mismatch at sample points.
    const RunConfig cfg = load_config(c);
    const HamiltonianSpec H = cfg.hamiltonian();
    const int steps_per_unit = std::max(64, cfg.steps / 10);
    const FlowFamily family = [H, steps_per_unit](const PhaseSpacePoint& z, double t) {
        const int steps = std::max(16, static_cast<int>(std::ceil(std::abs(t) * steps_per_unit)));
        return flow_point(H, z, 0.0, t, steps);
    };
    const HamiltonianSpec rec = banyaga_reconstruct(
        family, [](const PhaseSpacePoint&) { return 0.0; }, 1);
    nlohmann::json samples = nlohmann::json::array();
    double worst = 0;
    for (double r : {0.5, 1.0, 1.5, 2.0}) {
        for (double ang : {0.0, 1.0, 2.5, 4.2}) {
            const PhaseSpacePoint z(r * std::cos(ang), r * std::sin(ang));
            const double got = rec(z, t_eval);
            const double want = H(z, t_eval) - H(PhaseSpacePoint(0.0, 0.0), t_eval);
            worst = std::max(worst, std::abs(got - want));
            samples.push_back({{"x", z.x(0)},
                               {"p", z.p(0)},
                               {"reconstructed", got},
                               {"reference", want}});
        }
    }
    nlohmann::json j = {{"hamiltonian", H.label},
                        {"t", t_eval},
                        {"max_abs_error", worst},
                        {"samples", samples}};
    return emit(c, json_to_string(j));
}

int cmd_quantize(const CommonOptions& c, const std::string& symbol_name, double tau) {
    const RunConfig cfg = load_config(c);
    const Grid g = cfg.grid();
    const Symbol a = symbols::by_name(symbol_name);
    const GridOperator op = tau_operator_matrix(a, tau, g);
    const double scale = std::max(1.0, op.matrix.lpNorm<Eigen::Infinity>());
    const double herm = (op.matrix - op.matrix.adjoint()).lpNorm<Eigen::Infinity>() / scale;
    const Eigen::Index mid = g.N / 2;
    nlohmann::json j = {
        {"symbol", symbol_name},
        {"tau", tau},
        {"grid_n", g.N},
        {"hbar", g.hbar},
        {"hermiticity_residual", herm},
        {"center_block", cmatrix_to_json(op.matrix.block(mid - 1, mid - 1, 2, 2))}};
    return emit(c, json_to_string(j));
}

int cmd_propagate(const CommonOptions& c, double x0, double p0, double t,
                  const std::string& method_name) {
    const RunConfig cfg = load_config(c);
    const Grid g = cfg.grid();
    PropagationMethod method = PropagationMethod::eigensolve;
    if (method_name == "eigensolve")
        method = PropagationMethod::eigensolve;
    else if (method_name == "split_step")
        method = PropagationMethod::split_step;
    else if (method_name == "metaplectic")
        method = PropagationMethod::metaplectic;
    else {
        std::cerr << "hamlift: unknown propagation method '" << method_name << "'\n";
        return 2;
    }
    const WaveFunction psi0 = coherent_state(g, x0, p0);
    const WaveFunction psit = propagate_schrodinger(cfg.quadratic(), psi0, t, cfg.steps, method);
    std::ostringstream os;
    write_wavefunction_csv(os, psit);
    return emit(c, os.str());
}

int cmd_covariance(const CommonOptions& c, const std::string& symbol_name, double tau,
                   double WP, double WL, double WQ) {
    const RunConfig cfg = load_config(c);
    const Grid g = cfg.grid();
    const QuadraticGeneratingFunction W = QuadraticGeneratingFunction::scalar(WP, WL, WQ);
    const double res = covariance_residual(symbols::by_name(symbol_name), W, tau, g);
    nlohmann::json j = {{"tau", tau},
                        {"W", {{"P", WP}, {"L", WL}, {"Q", WQ}}},
                        {"symbol", symbol_name},
                        {"residual", res}};
    return emit(c, json_to_string(j));
}

int cmd_verify(const CommonOptions& c, double covariance_tau) {
    const RunConfig cfg = load_config(c);
    VerifyOptions opts;
    opts.hbar = cfg.hbar;
    opts.seed = cfg.seed;
    opts.covariance_tau = covariance_tau;
    const auto checks = run_verification(opts);
    const int rc = emit(c, json_to_string(verification_report(checks)));
    if (rc != 0) return rc;
    return all_pass(checks) ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"hamlift: Hamiltonian flows, quantization, and verification"};
    app.require_subcommand(1);

    CommonOptions common;
    double x0 = 1.0, p0 = 0.0, t = 1.0, tau = 0.5;
    double WP = 0.0, WL = 1.0, WQ = 0.0, covariance_tau = 0.5;
    std::string symbol_name = "gaussian", method_name = "eigensolve";

    auto* flow = app.add_subcommand("flow", "integrate a Hamiltonian flow, CSV trajectory");
    add_common(flow, common);
    flow->add_option("--x0", x0, "initial position");
    flow->add_option("--p0", p0, "initial momentum");
    flow->add_option("--t", t, "final time");

    auto* jac = app.add_subcommand("jacobian", "flow Jacobian at a point, JSON");
    add_common(jac, common);
    jac->add_option("--x0", x0, "initial position");
    jac->add_option("--p0", p0, "initial momentum");
    jac->add_option("--t", t, "final time");

    auto* ban = app.add_subcommand("banyaga",
                                   "reconstruct the Hamiltonian from its flow family, JSON");
    add_common(ban, common);
    ban->add_option("--t", t, "evaluation time");

    auto* qnt = app.add_subcommand("quantize", "tau-quantize a symbol, JSON summary");
    add_common(qnt, common);
    qnt->add_option("--symbol", symbol_name, "symbol name (1, x, p, xp, p2, gaussian)");
    qnt->add_option("--tau", tau, "quantization parameter in [0, 1]");

    auto* prop = app.add_subcommand("propagate", "propagate a coherent state, CSV");
    add_common(prop, common);
    prop->add_option("--x0", x0, "initial center position");
    prop->add_option("--p0", p0, "initial center momentum");
    prop->add_option("--t", t, "duration");
    prop->add_option("--method", method_name, "eigensolve | split_step | metaplectic");

    auto* cov = app.add_subcommand("covariance", "symplectic-covariance residual, JSON");
    add_common(cov, common);
    cov->add_option("--symbol", symbol_name, "symbol name");
    cov->add_option("--tau", tau, "quantization parameter");
    cov->add_option("--wp", WP, "generating function P");
    cov->add_option("--wl", WL, "generating function L");
    cov->add_option("--wq", WQ, "generating function Q");

    auto* ver = app.add_subcommand("verify", "run the verification suite, JSON report");
    add_common(ver, common);
    ver->add_option("--covariance-tau", covariance_tau,
                    "tau used by the covariance checks (0.5 passes)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        if (flow->parsed()) return cmd_flow(common, x0, p0, t);
        if (jac->parsed()) return cmd_jacobian(common, x0, p0, t);
        if (ban->parsed()) return cmd_banyaga(common, t);
        if (qnt->parsed()) return cmd_quantize(common, symbol_name, tau);
        if (prop->parsed()) return cmd_propagate(common, x0, p0, t, method_name);
        if (cov->parsed()) return cmd_covariance(common, symbol_name, tau, WP, WL, WQ);
        if (ver->parsed()) return cmd_verify(common, covariance_tau);
    } catch (const ConfigError& e) {
        std::cerr << "hamlift: " << e.what() << "\n";
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "hamlift: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "hamlift: " << e.what() << "\n";
        return 1;
    }
    return 2;
}
