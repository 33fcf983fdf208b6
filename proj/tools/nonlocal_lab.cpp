// nonlocal_lab: generalized-trigonometric correlations and CHSH optimization
// from the command line. Subcommands: pi, corr, chsh, sweep, ode.

#include <cstdlib>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "nonlocal/cli_app.hpp"

namespace {

unsigned threads_from_env() {
    const char* raw = std::getenv("NONLOCAL_LAB_THREADS");
    if (raw == nullptr || *raw == '\0') return 0;
    try {
        const long v = std::stol(raw);
        if (v >= 1) return static_cast<unsigned>(v);
    } catch (const std::exception&) {
    }
    std::cerr << "warning: ignoring invalid NONLOCAL_LAB_THREADS value '" << raw
              << "'\n";
    return 0;
}

std::vector<double> parse_eps_list(const std::string& csv) {
    std::vector<double> values;
    std::stringstream ss(csv);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (item.empty()) continue;
        std::size_t used = 0;
        const double v = std::stod(item, &used);
        if (used != item.size())
            throw CLI::ValidationError("--eps-list", "cannot parse '" + item + "'");
        values.push_back(v);
    }
    if (values.empty())
        throw CLI::ValidationError("--eps-list", "no values given");
    return values;
}

}  // namespace

int main(int argc, char** argv) {
    using nonlocal::Convention;
    namespace cli = nonlocal::cli;

    CLI::App app{"Generalized-trigonometric correlations and CHSH optimization"};
    app.require_subcommand(1);
    app.fallthrough();  // shared options may follow the subcommand
    app.set_config("--config", "", "Configuration file with key=value lines");
    app.get_config_formatter_base()->comment('#');

    cli::RunConfig cfg;
    cfg.threads = threads_from_env();

    std::string convention_name = "paper-literal";
    std::string format_name = "csv";
    app.add_option("--convention", convention_name,
                   "Probability convention: paper-literal, identity-consistent, "
                   "renormalized")
        ->check(CLI::IsMember(
            {"paper-literal", "identity-consistent", "renormalized"}))
        ->capture_default_str();
    app.add_option("--quad-tol", cfg.quad_tol, "Quadrature absolute tolerance")
        ->capture_default_str();
    app.add_option("--invert-tol", cfg.invert_tol, "Inversion tolerance")
        ->capture_default_str();
    app.add_option("--grid-n", cfg.grid_n, "CHSH coarse-grid resolution per axis")
        ->capture_default_str();
    app.add_option("--multistart", cfg.multistart, "CHSH refinement starts")
        ->capture_default_str();
    app.add_option("--format", format_name,
                   "Output format for the tabular commands corr and sweep: csv or "
                   "json (chsh and ode always emit json)")
        ->check(CLI::IsMember({"csv", "json"}))
        ->capture_default_str();
    app.add_option("--output", cfg.output_path, "Write the document to this file "
                                                "(atomic; default stdout)");
    app.add_option("--svg", cfg.svg_path, "Also write a line chart to this file");

    // pi
    double arg_p = 2.0, arg_q = 2.0;
    CLI::App* sub_pi = app.add_subcommand("pi", "Evaluate pi_{p,q} both ways");
    sub_pi->add_option("--p", arg_p, "Exponent p (> 1)")->required();
    sub_pi->add_option("--q", arg_q, "Exponent q (> 0)")->required();

    // corr
    double arg_eps = 0.0, arg_tmin = 0.0, arg_tmax = 0.0;
    int arg_points = 256;
    CLI::App* sub_corr =
        app.add_subcommand("corr", "Tabulate the correlation E_eps(theta)");
    sub_corr->add_option("--eps", arg_eps, "Non-linearity degree (> -1)")->required();
    CLI::Option* opt_tmin = sub_corr->add_option("--theta-min", arg_tmin, "Grid start");
    CLI::Option* opt_tmax = sub_corr->add_option("--theta-max", arg_tmax,
                                                 "Grid end (default: one period)");
    sub_corr->add_option("--points", arg_points, "Grid size")->capture_default_str();

    // chsh
    double arg_chsh_eps = 0.0;
    CLI::App* sub_chsh = app.add_subcommand("chsh", "Maximize the CHSH functional");
    sub_chsh->add_option("--eps", arg_chsh_eps, "Non-linearity degree (> -1)")
        ->required();

    // sweep
    std::string arg_eps_list;
    double arg_eps_min = 0.0, arg_eps_max = 0.0, arg_eps_step = 0.0;
    CLI::App* sub_sweep =
        app.add_subcommand("sweep", "Sweep epsilon and compare with the conjecture");
    CLI::Option* opt_list = sub_sweep->add_option(
        "--eps-list", arg_eps_list, "Comma-separated epsilon values");
    CLI::Option* opt_min = sub_sweep->add_option("--eps-min", arg_eps_min, "Range start");
    CLI::Option* opt_max = sub_sweep->add_option("--eps-max", arg_eps_max, "Range end");
    CLI::Option* opt_step =
        sub_sweep->add_option("--eps-step", arg_eps_step, "Range step (> 0)");
    opt_list->excludes(opt_min)->excludes(opt_max)->excludes(opt_step);

    // ode
    int arg_n = 1, arg_grid_points = 1024;
    double arg_ode_eps = 0.0, arg_amplitude = 1.0;
    CLI::App* sub_ode =
        app.add_subcommand("ode", "Residual check of the eigenfunction");
    sub_ode->add_option("--n", arg_n, "Mode index (>= 1)")->capture_default_str();
    sub_ode->add_option("--eps", arg_ode_eps, "Non-linearity degree (> -1)")
        ->required();
    sub_ode->add_option("--amplitude", arg_amplitude, "Eigenfunction amplitude")
        ->capture_default_str();
    sub_ode->add_option("--grid-points", arg_grid_points, "Grid size (>= 64)")
        ->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e);
        app.exit(e);
        return cli::kExitUsage;
    }

    if (auto parsed = nonlocal::convention_from_string(convention_name))
        cfg.convention = *parsed;
    cfg.output_format = format_name == "json" ? cli::OutputFormat::Json
                                              : cli::OutputFormat::Csv;

    if (sub_pi->parsed())
        return cli::cmd_pi(arg_p, arg_q, cfg, std::cout, std::cerr);

    if (sub_corr->parsed()) {
        if (opt_tmax->count() == 0) {
            // Default to one full period of the generalized circle.
            try {
                arg_tmax = 2.0 * nonlocal::pi_pq_gamma({2.0, 2.0 + arg_eps});
            } catch (const std::domain_error& e) {
                std::cerr << "error: " << e.what() << '\n';
                return cli::kExitUsage;
            }
            if (opt_tmin->count() == 0) arg_tmin = 0.0;
        }
        return cli::cmd_corr(arg_eps, arg_tmin, arg_tmax, arg_points, cfg, std::cout,
                             std::cerr);
    }

    if (sub_chsh->parsed())
        return cli::cmd_chsh(arg_chsh_eps, cfg, std::cout, std::cerr);

    if (sub_sweep->parsed()) {
        std::vector<double> eps_values;
        try {
            if (opt_list->count() > 0) {
                eps_values = parse_eps_list(arg_eps_list);
            } else {
                if (opt_min->count() == 0 || opt_max->count() == 0 ||
                    opt_step->count() == 0) {
                    std::cerr << "error: sweep needs --eps-list or the full "
                                 "--eps-min/--eps-max/--eps-step triple\n";
                    return cli::kExitUsage;
                }
                if (!(arg_eps_step > 0.0) || !(arg_eps_max >= arg_eps_min)) {
                    std::cerr << "error: sweep range is empty or has a non-positive "
                                 "step\n";
                    return cli::kExitUsage;
                }
                for (double e = arg_eps_min; e <= arg_eps_max + 1e-12 * arg_eps_step;
                     e += arg_eps_step)
                    eps_values.push_back(e);
            }
        } catch (const CLI::Error& e) {
            std::cerr << "error: " << e.what() << '\n';
            return cli::kExitUsage;
        } catch (const std::exception& e) {
            std::cerr << "error: " << e.what() << '\n';
            return cli::kExitUsage;
        }
        return cli::cmd_sweep(eps_values, cfg, std::cout, std::cerr);
    }

    if (sub_ode->parsed())
        return cli::cmd_ode(arg_n, arg_ode_eps, arg_amplitude, arg_grid_points, cfg,
                            std::cout, std::cerr);

    std::cerr << "error: no subcommand\n";
    return cli::kExitUsage;
}
