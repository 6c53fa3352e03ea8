// Command-line front end: compute, sweep, channel, figures, verify.

#include <fstream>
#include <iostream>
#include <sstream>
#include <thread>

#include <CLI11.hpp>

#include "sqd/app.hpp"
#include "sqd/verify.hpp"

namespace {

struct StateFlags {
    double s = 0.0, c1 = 0.0, c2 = 0.0, c3 = 0.0;
    std::string config;
    std::string mode = "strict";
};

void add_state_flags(CLI::App *cmd, StateFlags &f) {
    cmd->add_option("--s", f.s, "Bloch-z bias of qubit B");
    cmd->add_option("--c1", f.c1, "sigma_1 (x) sigma_1 correlation");
    cmd->add_option("--c2", f.c2, "sigma_2 (x) sigma_2 correlation");
    cmd->add_option("--c3", f.c3, "sigma_3 (x) sigma_3 correlation");
    cmd->add_option("--config", f.config, "text file with s, c1, c2, c3 (overrides the flags)");
    cmd->add_option("--mode", f.mode, "parameter validation mode")->check(CLI::IsMember({"strict", "relaxed"}));
}

sqd::XStateParams read_state(const StateFlags &f) {
    if (f.config.empty()) {
        return {f.s, f.c1, f.c2, f.c3};
    }
    std::ifstream in(f.config);
    if (!in) {
        throw sqd::DomainError("cannot read parameter file '" + f.config + "'");
    }
    std::stringstream buf;
    buf << in.rdbuf();
    return sqd::parse_params_text(buf.str());
}

sqd::ValidationMode read_mode(const StateFlags &f) {
    return f.mode == "relaxed" ? sqd::ValidationMode::Relaxed : sqd::ValidationMode::Strict;
}

struct OptimizerFlags {
    std::string grid = "61x121";
    unsigned workers = 1;
    std::uint64_t seed = 42;
};

void add_optimizer_flags(CLI::App *cmd, OptimizerFlags &f) {
    cmd->add_option("--grid", f.grid, "oracle grid as POLARxAZIMUTH")->capture_default_str();
    cmd->add_option("--workers", f.workers, "worker threads (0 = hardware concurrency)")->capture_default_str();
    cmd->add_option("--seed", f.seed, "seed for refinement restarts and sampling")->capture_default_str();
}

sqd::OptimizerConfig read_optimizer(const OptimizerFlags &f) {
    sqd::OptimizerConfig cfg;
    const auto sep = f.grid.find('x');
    try {
        if (sep == std::string::npos) {
            throw std::invalid_argument(f.grid);
        }
        cfg.polar_steps = std::stoi(f.grid.substr(0, sep));
        cfg.azimuth_steps = std::stoi(f.grid.substr(sep + 1));
    } catch (const std::logic_error &) {
        throw sqd::DomainError("--grid expects POLARxAZIMUTH, e.g. 61x121; got '" + f.grid + "'");
    }
    cfg.seed = f.seed;
    cfg.validate();
    return cfg;
}

unsigned resolve_workers(unsigned w) { return w == 0 ? std::max(1U, std::thread::hardware_concurrency()) : w; }

} // namespace

int main(int argc, char **argv) {
    CLI::App app{"Quantum discord and weak-measurement (super) quantum discord for two-qubit X-states"};
    app.require_subcommand(1);

    StateFlags state;
    OptimizerFlags opt;

    auto *compute = app.add_subcommand("compute", "report all correlation measures at one point");
    add_state_flags(compute, state);
    add_optimizer_flags(compute, opt);
    double x = 1.0;
    std::optional<double> p, gamma, time;
    std::string out;
    compute->add_option("--x", x, "measurement strength")->capture_default_str();
    compute->add_option("--p", p, "dephase both qubits with flip probability p first");
    compute->add_option("--gamma", gamma, "phase damping rate (with --time)");
    compute->add_option("--time", time, "evolution time (with --gamma)");
    compute->add_option("--out", out, "write the report as JSON");

    auto *sweep = app.add_subcommand("sweep", "sweep the measurement strength x and write CSV");
    add_state_flags(sweep, state);
    add_optimizer_flags(sweep, opt);
    double from = 0.0, to = 5.0;
    int steps = 201;
    sweep->add_option("--from", from, "first x")->capture_default_str();
    sweep->add_option("--to", to, "last x")->capture_default_str();
    sweep->add_option("--steps", steps, "grid points, endpoints included")->capture_default_str();
    sweep->add_option("--p", p, "dephase both qubits with flip probability p first");
    sweep->add_option("--out", out, "CSV output path")->required();

    auto *channel = app.add_subcommand("channel", "sweep the flip probability p at fixed x and write CSV");
    add_state_flags(channel, state);
    add_optimizer_flags(channel, opt);
    double p_from = 0.0, p_to = 1.0;
    int p_steps = 101;
    channel->add_option("--x", x, "measurement strength")->capture_default_str();
    channel->add_option("--from", p_from, "first p")->capture_default_str();
    channel->add_option("--to", p_to, "last p")->capture_default_str();
    channel->add_option("--steps", p_steps, "grid points, endpoints included")->capture_default_str();
    channel->add_option("--out", out, "CSV output path")->required();

    auto *figures = app.add_subcommand("figures", "write CSV and SVG for the reproduced figure panels");
    add_optimizer_flags(figures, opt);
    std::string figure = "all";
    std::string out_dir = "figures";
    figures->add_option("--figure", figure, "1a, 1b, 2a, 2b, 2c or all")->capture_default_str();
    figures->add_option("--out", out_dir, "output directory")->capture_default_str();

    auto *verify = app.add_subcommand("verify", "run the verification suite");
    add_optimizer_flags(verify, opt);
    int samples = 500;
    double tol = 1e-6;
    verify->add_option("--samples", samples, "base sample count")->capture_default_str();
    verify->add_option("--tol", tol, "oracle agreement tolerance")->capture_default_str();

    CLI11_PARSE(app, argc, argv);

    try {
        const sqd::OptimizerConfig cfg = read_optimizer(opt);
        const unsigned workers = resolve_workers(opt.workers);
        if (compute->parsed()) {
            sqd::app::ComputeOptions o;
            o.params = read_state(state);
            o.mode = read_mode(state);
            o.x = x;
            o.p = p;
            o.gamma = gamma;
            o.time = time;
            o.cfg = cfg;
            o.cfg.workers = workers;
            if (!out.empty()) {
                o.out = out;
            }
            return sqd::app::cmd_compute(o, std::cout, std::cerr);
        }
        if (sweep->parsed() || channel->parsed()) {
            sqd::app::SweepSpec spec;
            spec.params = read_state(state);
            spec.mode = read_mode(state);
            if (sweep->parsed()) {
                spec.variable = sqd::app::SweepVariable::X;
                spec.from = from;
                spec.to = to;
                spec.steps = steps;
                spec.fixed_p = p.value_or(0.0);
            } else {
                spec.variable = sqd::app::SweepVariable::P;
                spec.from = p_from;
                spec.to = p_to;
                spec.steps = p_steps;
                spec.fixed_x = x;
            }
            return sqd::app::cmd_sweep(spec, cfg, workers, out, std::cout, std::cerr);
        }
        if (figures->parsed()) {
            return sqd::app::cmd_figures(figure, out_dir, cfg, workers, std::cout, std::cerr);
        }
        if (verify->parsed()) {
            sqd::verify::Options vo;
            vo.samples = samples;
            vo.seed = opt.seed;
            vo.tol = tol;
            vo.workers = workers;
            vo.cfg = cfg;
            return sqd::verify::cmd_verify(vo, std::cout, std::cerr);
        }
    } catch (const sqd::DomainError &e) {
        std::cerr << "error: " << e.what() << "\n";
        return sqd::app::kInputError;
    } catch (const sqd::NumericalError &e) {
        std::cerr << "numerical failure: " << e.what() << "\n";
        return sqd::app::kVerificationFailure;
    }
    return sqd::app::kInputError;
}
