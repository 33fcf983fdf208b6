#include "nonlocal/cli_app.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <utility>

#include <json.hpp>

#include "nonlocal/ode_check.hpp"
#include "nonlocal/quadrature.hpp"

namespace nonlocal::cli {

void RunConfig::validate() const {
    if (!(quad_tol > 0.0))
        throw std::invalid_argument("config: quad_tol must be positive");
    if (!(invert_tol > 0.0))
        throw std::invalid_argument("config: invert_tol must be positive");
    if (grid_n < 8)
        throw std::invalid_argument("config: grid_n must be at least 8");
    if (multistart < 1)
        throw std::invalid_argument("config: multistart must be at least 1");
}

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

namespace {

SearchConfig search_config_from(const RunConfig& cfg) {
    SearchConfig sc;
    sc.grid_n = cfg.grid_n;
    sc.multistart = cfg.multistart;
    sc.invert_tol = cfg.invert_tol;
    return sc;
}

// Documents land either on the out stream or, atomically, in output_path
// (temporary file in the same directory, then rename).
void emit_document(const std::string& document, const RunConfig& cfg,
                   std::ostream& out) {
    if (cfg.output_path.empty()) {
        out << document;
        return;
    }
    const std::filesystem::path target(cfg.output_path);
    const std::filesystem::path tmp(cfg.output_path + ".tmp");
    {
        std::ofstream file(tmp, std::ios::binary | std::ios::trunc);
        if (!file)
            throw std::runtime_error("cannot open " + tmp.string() + " for writing");
        file << document;
        if (!file.flush())
            throw std::runtime_error("failed writing " + tmp.string());
    }
    std::filesystem::rename(tmp, target);
}

struct Series {
    std::string name;
    std::string color;
    std::vector<std::pair<double, double>> points;
};

std::string format_tick(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.6g", v);
    return buf;
}

// Self-contained polyline chart; convenience view only.
std::string line_chart_svg(const std::string& title, const std::string& x_label,
                           const std::string& y_label,
                           const std::vector<Series>& series) {
    constexpr double kWidth = 880, kHeight = 560, kMargin = 70;
    double x_min = 0, x_max = 1, y_min = 0, y_max = 1;
    bool first = true;
    for (const auto& s : series) {
        for (const auto& [x, y] : s.points) {
            if (first) {
                x_min = x_max = x;
                y_min = y_max = y;
                first = false;
            }
            x_min = std::min(x_min, x);
            x_max = std::max(x_max, x);
            y_min = std::min(y_min, y);
            y_max = std::max(y_max, y);
        }
    }
    if (x_max <= x_min) x_max = x_min + 1.0;
    if (y_max <= y_min) y_max = y_min + 1.0;
    const double plot_w = kWidth - 2 * kMargin;
    const double plot_h = kHeight - 2 * kMargin;
    const auto sx = [&](double x) { return kMargin + (x - x_min) / (x_max - x_min) * plot_w; };
    const auto sy = [&](double y) { return kHeight - kMargin - (y - y_min) / (y_max - y_min) * plot_h; };

    std::ostringstream svg;
    svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth
        << "\" height=\"" << kHeight << "\" viewBox=\"0 0 " << kWidth << " "
        << kHeight << "\">\n";
    svg << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    svg << "<text x=\"" << kWidth / 2 << "\" y=\"30\" text-anchor=\"middle\" "
        << "font-family=\"sans-serif\" font-size=\"18\">" << title << "</text>\n";

    for (int i = 0; i <= 4; ++i) {
        const double fx = x_min + (x_max - x_min) * i / 4.0;
        const double fy = y_min + (y_max - y_min) * i / 4.0;
        const double px = sx(fx), py = sy(fy);
        svg << "<line x1=\"" << px << "\" y1=\"" << kHeight - kMargin << "\" x2=\"" << px
            << "\" y2=\"" << kHeight - kMargin + 6 << "\" stroke=\"black\"/>\n";
        svg << "<text x=\"" << px << "\" y=\"" << kHeight - kMargin + 22
            << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"12\">"
            << format_tick(fx) << "</text>\n";
        svg << "<line x1=\"" << kMargin - 6 << "\" y1=\"" << py << "\" x2=\"" << kMargin
            << "\" y2=\"" << py << "\" stroke=\"black\"/>\n";
        svg << "<text x=\"" << kMargin - 10 << "\" y=\"" << py + 4
            << "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"12\">"
            << format_tick(fy) << "</text>\n";
    }
    svg << "<rect x=\"" << kMargin << "\" y=\"" << kMargin << "\" width=\"" << plot_w
        << "\" height=\"" << plot_h << "\" fill=\"none\" stroke=\"black\"/>\n";
    svg << "<text x=\"" << kWidth / 2 << "\" y=\"" << kHeight - 20
        << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"14\">"
        << x_label << "</text>\n";
    svg << "<text x=\"20\" y=\"" << kHeight / 2
        << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"14\" "
        << "transform=\"rotate(-90 20 " << kHeight / 2 << ")\">" << y_label
        << "</text>\n";

    int legend_row = 0;
    for (const auto& s : series) {
        if (s.points.empty()) continue;
        svg << "<polyline fill=\"none\" stroke=\"" << s.color
            << "\" stroke-width=\"1.5\" points=\"";
        for (const auto& [x, y] : s.points) svg << sx(x) << "," << sy(y) << " ";
        svg << "\"/>\n";
        const double ly = kMargin + 18 + 18 * legend_row++;
        svg << "<line x1=\"" << kWidth - kMargin - 150 << "\" y1=\"" << ly << "\" x2=\""
            << kWidth - kMargin - 120 << "\" y2=\"" << ly << "\" stroke=\"" << s.color
            << "\" stroke-width=\"2\"/>\n";
        svg << "<text x=\"" << kWidth - kMargin - 112 << "\" y=\"" << ly + 4
            << "\" font-family=\"sans-serif\" font-size=\"12\">" << s.name
            << "</text>\n";
    }
    svg << "</svg>\n";
    return svg.str();
}

void emit_svg(const std::string& chart, const RunConfig& cfg) {
    if (cfg.svg_path.empty()) return;
    RunConfig file_cfg = cfg;
    file_cfg.output_path = cfg.svg_path;
    std::ostringstream unused;
    emit_document(chart, file_cfg, unused);
}

template <class Fn>
int run_guarded(std::ostream& diag, Fn&& fn) {
    try {
        fn();
        return kExitOk;
    } catch (const std::domain_error& e) {
        diag << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const std::invalid_argument& e) {
        diag << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const ConvergenceError& e) {
        diag << "numerical failure: " << e.what() << '\n';
        return kExitNumeric;
    } catch (const std::exception& e) {
        diag << "internal failure: " << e.what() << '\n';
        return kExitNumeric;
    }
}

nlohmann::ordered_json bell_result_json(const BellResult& r) {
    nlohmann::ordered_json j;
    j["epsilon"] = r.epsilon;
    j["convention"] = std::string(to_string(r.convention));
    j["value"] = r.value;
    j["settings"] = {{"alpha", r.settings.alpha},
                     {"alpha_prime", r.settings.alpha_prime},
                     {"beta", r.settings.beta},
                     {"beta_prime", r.settings.beta_prime}};
    j["evaluations"] = r.evaluations;
    j["converged"] = r.converged;
    return j;
}

}  // namespace

int cmd_pi(double p, double q, const RunConfig& cfg, std::ostream& out,
           std::ostream& diag) {
    return run_guarded(diag, [&] {
        cfg.validate();
        const PQParams pq{p, q};
        const double by_gamma = pi_pq_gamma(pq);
        const double by_quadrature = pi_pq_quadrature(pq, cfg.quad_tol);
        std::ostringstream doc;
        doc << "pi_gamma      = " << format_double(by_gamma) << '\n'
            << "pi_quadrature = " << format_double(by_quadrature) << '\n'
            << "abs_diff      = " << format_double(std::abs(by_gamma - by_quadrature))
            << '\n';
        emit_document(doc.str(), cfg, out);
    });
}

int cmd_corr(double eps_value, double theta_min, double theta_max, int points,
             const RunConfig& cfg, std::ostream& out, std::ostream& diag) {
    return run_guarded(diag, [&] {
        cfg.validate();
        const Epsilon eps{eps_value};
        eps.validate();
        if (!(theta_max > theta_min))
            throw std::invalid_argument("corr: theta_max must exceed theta_min");
        if (points < 2)
            throw std::invalid_argument("corr: need at least 2 points");

        std::ostringstream doc;
        nlohmann::ordered_json rows = nlohmann::ordered_json::array();
        doc << "theta,E,E_taylor,defect\n";
        Series curve{"E", "#1f4fd8", {}};
        Series taylor{"E_taylor", "#d82f2f", {}};
        const double step = (theta_max - theta_min) / (points - 1);
        for (int i = 0; i < points; ++i) {
            const double theta = i == points - 1 ? theta_max : theta_min + i * step;
            const ProbabilityPair pp =
                probabilities(eps, theta, cfg.convention, cfg.invert_tol);
            const double e_exact = pp.p_same - pp.p_diff;
            const double e_taylor = correlation_taylor(eps, theta, cfg.invert_tol);
            if (cfg.output_format == OutputFormat::Json) {
                rows.push_back({{"theta", theta},
                                {"E", e_exact},
                                {"E_taylor", e_taylor},
                                {"defect", pp.defect}});
            } else {
                doc << format_double(theta) << ',' << format_double(e_exact) << ','
                    << format_double(e_taylor) << ',' << format_double(pp.defect)
                    << '\n';
            }
            curve.points.emplace_back(theta, e_exact);
            taylor.points.emplace_back(theta, e_taylor);
        }
        emit_document(cfg.output_format == OutputFormat::Json ? rows.dump(2) + "\n"
                                                              : doc.str(),
                      cfg, out);
        emit_svg(line_chart_svg("correlation, eps = " + format_tick(eps_value),
                                "theta", "E", {curve, taylor}),
                 cfg);
    });
}

int cmd_chsh(double eps_value, const RunConfig& cfg, std::ostream& out,
             std::ostream& diag) {
    return run_guarded(diag, [&] {
        cfg.validate();
        const Epsilon eps{eps_value};
        eps.validate();
        const BellResult r = maximize_bell(eps, cfg.convention, search_config_from(cfg));
        emit_document(bell_result_json(r).dump(2) + "\n", cfg, out);
    });
}

int cmd_sweep(const std::vector<double>& eps_values, const RunConfig& cfg,
              std::ostream& out, std::ostream& diag) {
    return run_guarded(diag, [&] {
        cfg.validate();
        if (eps_values.empty())
            throw std::invalid_argument("sweep: empty epsilon list");
        for (double e : eps_values) Epsilon{e}.validate();

        const std::vector<SweepRecord> records =
            sweep(eps_values, cfg.convention, search_config_from(cfg), cfg.threads);

        std::ostringstream doc;
        nlohmann::ordered_json rows = nlohmann::ordered_json::array();
        doc << "epsilon,max_bell,conjecture,rel_dev,converged\n";
        Series max_curve{"max_bell", "#1f4fd8", {}};
        Series conj_curve{"conjecture", "#d82f2f", {}};
        for (const SweepRecord& rec : records) {
            if (cfg.output_format == OutputFormat::Json) {
                rows.push_back({{"epsilon", rec.epsilon},
                                {"max_bell", rec.max_bell},
                                {"conjecture", rec.conjecture},
                                {"rel_dev", rec.relative_deviation},
                                {"converged", rec.converged}});
            } else {
                doc << format_double(rec.epsilon) << ',' << format_double(rec.max_bell)
                    << ',' << format_double(rec.conjecture) << ','
                    << format_double(rec.relative_deviation) << ','
                    << (rec.converged ? 1 : 0) << '\n';
            }
            max_curve.points.emplace_back(rec.epsilon, rec.max_bell);
            conj_curve.points.emplace_back(rec.epsilon, rec.conjecture);
        }
        emit_document(cfg.output_format == OutputFormat::Json ? rows.dump(2) + "\n"
                                                              : doc.str(),
                      cfg, out);
        emit_svg(line_chart_svg("CHSH maximum vs epsilon", "epsilon", "B",
                                {max_curve, conj_curve}),
                 cfg);
    });
}

int cmd_ode(int n, double eps_value, double amplitude, int grid_points,
            const RunConfig& cfg, std::ostream& out, std::ostream& diag) {
    return run_guarded(diag, [&] {
        cfg.validate();
        const Epsilon eps{eps_value};
        eps.validate();
        const EigenSolution sol = build_eigenfunction(n, eps, amplitude, grid_points);
        const double coupling = coupling_for(n, eps, amplitude);
        const ResidualReport report = residual(sol, coupling);

        nlohmann::ordered_json j;
        j["n"] = n;
        j["epsilon"] = eps_value;
        j["amplitude"] = amplitude;
        j["grid_size"] = report.grid_size;
        j["coupling_used"] = report.coupling_used;
        j["coupling_alternate"] = coupling_alternate(n, eps, amplitude);
        j["l_inf"] = report.l_inf;
        j["l2"] = report.l2;
        j["excluded_points"] = report.excluded_points;
        emit_document(j.dump(2) + "\n", cfg, out);
    });
}

}  // namespace nonlocal::cli
