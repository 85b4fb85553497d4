#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "fnls/diagnostics.hpp"
#include "fnls/evolution.hpp"
#include "fnls/io.hpp"
#include "fnls/solvers.hpp"
#include "fnls/symbols.hpp"

namespace {

constexpr int exit_ok = 0;
constexpr int exit_solver = 1;
constexpr int exit_validation = 2;
constexpr int exit_io = 3;

struct RunConfig {
    double sigma = 0.75;
    double omega = 1.0;
    double k = 1.0;
    double theta = 0.95;
    double box = 40.0 * 3.14159265358979323846;
    std::size_t n = 2048;
    double dt = 1e-3;
    double t_final = 1.0;
    double tol = 1e-10;
    int max_iter = 5000;
    int observe_every = 10;
    bool no_dealias = false;
    std::string out;
    std::string in;
    std::string format = "json";
    std::uint64_t seed = 2024;
    std::string config;
};

void load_config_file(const std::string& path, RunConfig& cfg) {
    std::ifstream is(path);
    if (!is) throw std::runtime_error("cannot open config file: " + path);
    nlohmann::json j;
    is >> j;
    cfg.sigma = j.value("sigma", cfg.sigma);
    cfg.omega = j.value("omega", cfg.omega);
    cfg.k = j.value("k", cfg.k);
    cfg.theta = j.value("theta", cfg.theta);
    cfg.box = j.value("box", cfg.box);
    cfg.n = j.value("n", cfg.n);
    cfg.dt = j.value("dt", cfg.dt);
    cfg.t_final = j.value("t_final", cfg.t_final);
    cfg.tol = j.value("tol", cfg.tol);
    cfg.max_iter = j.value("max_iter", cfg.max_iter);
    cfg.observe_every = j.value("observe_every", cfg.observe_every);
    cfg.out = j.value("out", cfg.out);
    cfg.in = j.value("in", cfg.in);
    cfg.format = j.value("format", cfg.format);
    cfg.seed = j.value("seed", cfg.seed);
}

fnls::SolverOptions solver_options(const RunConfig& cfg) {
    fnls::SolverOptions opts;
    opts.residual_tol = cfg.tol;
    opts.max_iterations = cfg.max_iter;
    return opts;
}

fnls::FileFormat parse_format(const std::string& f) {
    if (f == "csv") return fnls::FileFormat::csv;
    if (f == "json") return fnls::FileFormat::json;
    throw std::runtime_error("format must be csv or json");
}

std::string default_out(const RunConfig& cfg, const std::string& stem) {
    if (!cfg.out.empty()) return cfg.out;
    return stem + (cfg.format == "csv" ? ".csv" : ".json");
}

void add_common_options(CLI::App* sub, RunConfig& cfg) {
    sub->add_option("--sigma", cfg.sigma, "dispersion exponent");
    sub->add_option("--omega", cfg.omega, "profile frequency")->check(CLI::PositiveNumber);
    sub->add_option("--k", cfg.k, "velocity parameter");
    sub->add_option("--theta", cfg.theta, "interpolation weight in (0, 1)")
        ->check(CLI::Range(1e-9, 1.0 - 1e-9));
    sub->add_option("--box", cfg.box, "grid half-length L")->check(CLI::PositiveNumber);
    sub->add_option("--n", cfg.n, "grid points (power of two, >= 16)");
    sub->add_option("--dt", cfg.dt, "time step")->check(CLI::PositiveNumber);
    sub->add_option("--t-final", cfg.t_final, "final time")->check(CLI::PositiveNumber);
    sub->add_option("--tol", cfg.tol, "solver residual tolerance")->check(CLI::PositiveNumber);
    sub->add_option("--max-iter", cfg.max_iter, "iteration cap")->check(CLI::PositiveNumber);
    sub->add_option("--observe-every", cfg.observe_every, "steps between observations")
        ->check(CLI::PositiveNumber);
    sub->add_flag("--no-dealias", cfg.no_dealias, "disable the 2/3-rule truncation");
    sub->add_option("--out", cfg.out, "output path");
    sub->add_option("--in", cfg.in, "input profile path (rescale, evolve)");
    sub->add_option("--format", cfg.format, "output format")
        ->check(CLI::IsMember({"csv", "json"}));
    sub->add_option("--seed", cfg.seed, "random seed");
    // Honored up front in main; registered here so CLI11 accepts it.
    sub->add_option("--config", cfg.config, "JSON config file (flags override it)");
}

void require_sigma(double sigma, double lo, const char* what) {
    if (!(sigma > lo && sigma <= 1.0)) {
        std::ostringstream msg;
        msg << "sigma must lie in (" << lo << ", 1]";
        (void)what;
        throw CLI::ValidationError(msg.str());
    }
}

int cmd_groundstate(const RunConfig& cfg) {
    require_sigma(cfg.sigma, 0.25, "groundstate");
    const fnls::Grid grid{cfg.box, cfg.n};
    const auto profile = fnls::solve_static_ground_state(cfg.sigma, cfg.omega, grid, solver_options(cfg));
    fnls::write_profile(profile, default_out(cfg, "groundstate"), parse_format(cfg.format));
    std::cout << "groundstate: sigma=" << cfg.sigma << " omega=" << cfg.omega
              << " residual=" << profile.residual << " iterations=" << profile.iterations << '\n';
    return exit_ok;
}

int cmd_soliton(const RunConfig& cfg) {
    require_sigma(cfg.sigma, 0.5, "soliton");
    const fnls::Grid grid{cfg.box, cfg.n};
    auto profile = fnls::solve_traveling_profile(cfg.sigma, cfg.omega, grid, solver_options(cfg));
    fnls::write_profile(profile, default_out(cfg, "soliton"), parse_format(cfg.format));
    std::cout << "soliton: sigma=" << cfg.sigma << " omega=" << cfg.omega
              << " residual=" << profile.residual << " iterations=" << profile.iterations
              << " imag_fraction=" << profile.imag_fraction << '\n';
    return exit_ok;
}

int cmd_rescale(const RunConfig& cfg) {
    require_sigma(cfg.sigma, 0.5, "rescale");
    if (cfg.k == 0.0) throw CLI::ValidationError("k must be nonzero");
    fnls::SolitonProfile q1 = [&] {
        if (!cfg.in.empty()) return fnls::read_profile(cfg.in, parse_format(cfg.format));
        const fnls::Grid grid{cfg.box, cfg.n};
        return fnls::solve_traveling_profile(cfg.sigma, cfg.omega, grid, solver_options(cfg));
    }();
    const auto qk = fnls::rescale_to_k(q1, cfg.k);
    fnls::write_profile(qk, default_out(cfg, "rescaled"), parse_format(cfg.format));
    std::cout << "rescale: k=" << cfg.k << " omega_k=" << qk.omega
              << " residual=" << qk.residual << '\n';
    return exit_ok;
}

int cmd_evolve(const RunConfig& cfg) {
    require_sigma(cfg.sigma, 0.5, "evolve");
    fnls::SolitonProfile profile = [&] {
        if (!cfg.in.empty()) return fnls::read_profile(cfg.in, fnls::FileFormat::json);
        const fnls::Grid grid{cfg.box, cfg.n};
        if (cfg.k == 0.0)
            return fnls::solve_static_ground_state(cfg.sigma, cfg.omega, grid, solver_options(cfg));
        auto q1 = fnls::solve_traveling_profile(cfg.sigma, cfg.omega, grid, solver_options(cfg));
        return cfg.k == 1.0 ? q1 : fnls::rescale_to_k(q1, cfg.k);
    }();

    const fnls::Field u0 = fnls::make_traveling_initial(profile);
    fnls::EvolutionConfig ecfg;
    ecfg.dt = cfg.dt;
    ecfg.t_final = cfg.t_final;
    ecfg.dealias = !cfg.no_dealias;
    ecfg.observe_every = cfg.observe_every;
    const auto report = fnls::evolve(u0, cfg.sigma, ecfg, &profile);

    const std::string path = cfg.out.empty() ? std::string("trajectory.csv") : cfg.out;
    fnls::write_trajectory(report, path);

    const double expected = 2.0 * cfg.sigma *
                            std::pow(std::abs(profile.k), 2.0 * cfg.sigma - 2.0) * profile.k;
    std::cout << "evolve: center velocity " << report.center_velocity << " (ansatz "
              << expected << "), phase drift " << report.phase_drift_rate
              << " per unit time, final shape error "
              << (report.shape_error.empty() ? 0.0 : report.shape_error.back()) << '\n';
    return exit_ok;
}

int cmd_check(const RunConfig& cfg, bool sigma_given) {
    std::vector<double> sigmas = {0.6, 0.75, 0.9};
    if (sigma_given) {
        require_sigma(cfg.sigma, 0.5, "check");
        if (cfg.sigma >= 1.0) throw CLI::ValidationError("check needs sigma in (0.5, 1)");
        sigmas = {cfg.sigma};
    }
    const fnls::Grid grid{cfg.box, cfg.n};
    fnls::CheckSettings settings;
    settings.theta = cfg.theta;
    settings.seed = cfg.seed;
    settings.solver = solver_options(cfg);

    nlohmann::json all = nlohmann::json::array();
    bool ok = true;
    for (double s : sigmas) {
        const auto rep = fnls::run_diagnostics(s, grid, settings);
        std::ostringstream one;
        fnls::write_diagnostics_json(rep, one);
        all.push_back(nlohmann::json::parse(one.str()));
        ok = ok && rep.passed;
        std::cout << "check sigma=" << s << ": " << (rep.passed ? "pass" : "FAIL")
                  << " (pohozaev " << rep.pohozaev_defects.first << ", "
                  << rep.pohozaev_defects.second << "; c " << rep.c_value << "; gn_margin "
                  << rep.gn_margin << ")\n";
    }
    const std::string path = cfg.out.empty() ? std::string("diagnostics.json") : cfg.out;
    std::ofstream os(path);
    if (!os) throw std::runtime_error("cannot open for writing: " + path);
    os << all.dump(2) << '\n';
    return ok ? exit_ok : exit_validation;
}

int cmd_symbol_table(const RunConfig& cfg) {
    require_sigma(cfg.sigma, 0.5, "symbol-table");
    const fnls::Grid grid{cfg.box, cfg.n};
    const fnls::SymbolParams params{cfg.sigma, cfg.k};
    const std::string path = cfg.out.empty() ? std::string("symbols.csv") : cfg.out;
    std::ofstream os(path);
    if (!os) throw std::runtime_error("cannot open for writing: " + path);
    os << "xi,p_k,p_k_prime,p_k_second,g,E\n";
    for (double xi : grid.frequencies()) {
        double second = std::nan("");
        if (cfg.sigma == 1.0 || xi + cfg.k != 0.0) second = fnls::eval_symbol(params, xi, 2);
        os << fnls::format_double(xi) << ',' << fnls::format_double(fnls::eval_symbol(params, xi, 0))
           << ',' << fnls::format_double(fnls::eval_symbol(params, xi, 1)) << ','
           << fnls::format_double(second) << ','
           << fnls::format_double(fnls::symmetrized_g(cfg.sigma, xi)) << ','
           << fnls::format_double(fnls::error_symbol(cfg.sigma, cfg.k, xi)) << '\n';
    }
    return exit_ok;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Traveling solitons of the 1-D cubic fractional NLS: spectral solvers, "
                 "time evolution and validation reports"};
    app.require_subcommand(1);

    RunConfig cfg;
    // --config is honored before regular parsing so command-line flags win.
    for (int i = 1; i < argc - 1; ++i) {
        if (std::string(argv[i]) == "--config") {
            try {
                load_config_file(argv[i + 1], cfg);
            } catch (const std::exception& e) {
                std::cerr << "error: " << e.what() << '\n';
                return exit_io;
            }
        }
    }

    auto* groundstate = app.add_subcommand("groundstate", "solve the static ground state");
    auto* soliton = app.add_subcommand("soliton", "solve the traveling profile at k = 1");
    auto* rescale = app.add_subcommand("rescale", "rescale a k = 1 profile to another speed");
    auto* evolve = app.add_subcommand("evolve", "propagate the traveling ansatz in time");
    auto* check = app.add_subcommand("check", "run the validation report suite");
    auto* symtab = app.add_subcommand("symbol-table", "tabulate the dispersion symbols");
    for (auto* sub : {groundstate, soliton, rescale, evolve, check, symtab})
        add_common_options(sub, cfg);

    CLI11_PARSE(app, argc, argv);

    try {
        if (groundstate->parsed()) return cmd_groundstate(cfg);
        if (soliton->parsed()) return cmd_soliton(cfg);
        if (rescale->parsed()) return cmd_rescale(cfg);
        if (evolve->parsed()) return cmd_evolve(cfg);
        if (check->parsed()) return cmd_check(cfg, check->count("--sigma") > 0);
        if (symtab->parsed()) return cmd_symbol_table(cfg);
    } catch (const CLI::ValidationError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return exit_validation;
    } catch (const fnls::ConvergenceError& e) {
        std::cerr << "solver error: " << e.what() << '\n';
        return exit_solver;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << '\n';
        return exit_validation;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return exit_io;
    }
    return exit_ok;
}
