#pragma once

// Command implementations behind the nonlocal_lab binary. Kept as ordinary
// functions over streams so both the CLI front end and the tests drive the
// exact same code paths.

#include <iosfwd>
#include <string>
#include <vector>

#include "nonlocal/chsh.hpp"

namespace nonlocal::cli {

enum class OutputFormat { Csv, Json };

struct RunConfig {
    Convention convention = Convention::PaperLiteral;
    double quad_tol = 1e-10;
    double invert_tol = 1e-12;
    int grid_n = 48;
    int multistart = 8;
    OutputFormat output_format = OutputFormat::Csv;
    std::string output_path;  // empty: write the document to the out stream
    std::string svg_path;     // empty: no chart
    unsigned threads = 0;     // sweep fan-out cap; 0 = hardware default

    void validate() const;  // throws std::invalid_argument
};

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 2;    // usage or domain error
inline constexpr int kExitNumeric = 3;  // internal numerical failure

// 17 significant digits, '.' decimal separator; doubles round-trip losslessly.
std::string format_double(double v);

// Prints pi_{p,q} by the Gamma formula and by quadrature plus their absolute
// difference.
int cmd_pi(double p, double q, const RunConfig& cfg, std::ostream& out,
           std::ostream& diag);

// CSV columns: theta,E,E_taylor,defect over a uniform theta grid.
int cmd_corr(double eps, double theta_min, double theta_max, int points,
             const RunConfig& cfg, std::ostream& out, std::ostream& diag);

// JSON document mirroring BellResult.
int cmd_chsh(double eps, const RunConfig& cfg, std::ostream& out,
             std::ostream& diag);

// CSV columns: epsilon,max_bell,conjecture,rel_dev,converged.
int cmd_sweep(const std::vector<double>& eps_values, const RunConfig& cfg,
              std::ostream& out, std::ostream& diag);

// JSON document mirroring ResidualReport plus the printed coupling relation
// evaluated for comparison.
int cmd_ode(int n, double eps, double amplitude, int grid_points,
            const RunConfig& cfg, std::ostream& out, std::ostream& diag);

}  // namespace nonlocal::cli
