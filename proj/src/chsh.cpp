#include "nonlocal/chsh.hpp"

#include <algorithm>
#include <array>
#include <atomic>
#include <cmath>
#include <stdexcept>
#include <thread>

namespace nonlocal {

void SearchConfig::validate() const {
    if (grid_n < 2)
        throw std::invalid_argument("SearchConfig: grid_n must be at least 2");
    if (multistart < 1)
        throw std::invalid_argument("SearchConfig: multistart must be at least 1");
    if (!(refine_tol > 0.0))
        throw std::invalid_argument("SearchConfig: refine_tol must be positive");
    if (max_iterations < 1)
        throw std::invalid_argument("SearchConfig: max_iterations must be at least 1");
    if (!(invert_tol > 0.0))
        throw std::invalid_argument("SearchConfig: invert_tol must be positive");
}

namespace {

double reduce_mod(double x, double period) {
    double r = std::fmod(x, period);
    if (r < 0.0) r += period;
    return r;
}

using Vec3 = std::array<double, 3>;

struct SimplexResult {
    Vec3 x;
    double value = 0.0;   // maximized objective value
    bool converged = false;
    long long evaluations = 0;
};

// Standard Nelder-Mead (reflection 1, expansion 2, contraction 1/2,
// shrink 1/2) maximizing f; deterministic tie-breaking via stable ordering.
template <class F>
SimplexResult nelder_mead_max(F&& f, const Vec3& start, double step,
                              double tol, int max_iter) {
    constexpr int kDim = 3;
    std::array<Vec3, kDim + 1> xs;
    std::array<double, kDim + 1> fs;  // minimizing -f internally
    SimplexResult out;

    xs[0] = start;
    for (int i = 0; i < kDim; ++i) {
        xs[i + 1] = start;
        xs[i + 1][i] += step;
    }
    for (int i = 0; i <= kDim; ++i) {
        fs[i] = -f(xs[i]);
        ++out.evaluations;
    }

    std::array<int, kDim + 1> order{0, 1, 2, 3};
    for (int iter = 0; iter < max_iter; ++iter) {
        std::stable_sort(order.begin(), order.end(),
                         [&](int a, int b) { return fs[a] < fs[b]; });
        const int best = order[0], second_worst = order[kDim - 1], worst = order[kDim];
        if (fs[worst] - fs[best] < tol) {
            out.converged = true;
            break;
        }

        Vec3 centroid{0.0, 0.0, 0.0};
        for (int i = 0; i < kDim; ++i)
            for (int d = 0; d < kDim; ++d) centroid[d] += xs[order[i]][d];
        for (int d = 0; d < kDim; ++d) centroid[d] /= kDim;

        auto blend = [&](double coef) {
            Vec3 p;
            for (int d = 0; d < kDim; ++d)
                p[d] = centroid[d] + coef * (centroid[d] - xs[worst][d]);
            return p;
        };

        const Vec3 reflected = blend(1.0);
        const double fr = -f(reflected);
        ++out.evaluations;
        if (fr < fs[best]) {
            const Vec3 expanded = blend(2.0);
            const double fe = -f(expanded);
            ++out.evaluations;
            if (fe < fr) {
                xs[worst] = expanded;
                fs[worst] = fe;
            } else {
                xs[worst] = reflected;
                fs[worst] = fr;
            }
            continue;
        }
        if (fr < fs[second_worst]) {
            xs[worst] = reflected;
            fs[worst] = fr;
            continue;
        }
        const Vec3 contracted = fr < fs[worst] ? blend(0.5) : blend(-0.5);
        const double fc = -f(contracted);
        ++out.evaluations;
        if (fc < std::min(fr, fs[worst])) {
            xs[worst] = contracted;
            fs[worst] = fc;
            continue;
        }
        for (int i = 1; i <= kDim; ++i) {  // shrink toward the best vertex
            const int idx = order[i];
            for (int d = 0; d < kDim; ++d)
                xs[idx][d] = xs[order[0]][d] + 0.5 * (xs[idx][d] - xs[order[0]][d]);
            fs[idx] = -f(xs[idx]);
            ++out.evaluations;
        }
    }

    int best = 0;
    for (int i = 1; i <= kDim; ++i)
        if (fs[i] < fs[best]) best = i;
    out.x = xs[best];
    out.value = -fs[best];
    return out;
}

}  // namespace

double bell_value(Epsilon eps, const MeasurementSettings& settings, Convention mode,
                  double invert_tol) {
    eps.validate();
    const double period = 2.0 * pi_pq_gamma({2.0, eps.q()});
    const auto corr = [&](double diff) {
        return correlation(eps, reduce_mod(diff, period), mode, invert_tol);
    };
    return corr(settings.beta - settings.alpha) +
           corr(settings.beta_prime - settings.alpha) +
           corr(settings.beta - settings.alpha_prime) -
           corr(settings.beta_prime - settings.alpha_prime);
}

double conjecture_bound(Epsilon eps) {
    eps.validate();
    return 4.0 / std::pow(2.0, (1.0 + eps.value) / (2.0 + eps.value));
}

BellResult maximize_bell(Epsilon eps, Convention mode, const SearchConfig& cfg) {
    eps.validate();
    cfg.validate();

    const double period = 2.0 * pi_pq_gamma({2.0, eps.q()});
    const int n = cfg.grid_n;
    const double h = period / n;

    BellResult result;
    result.epsilon = eps.value;
    result.convention = mode;

    // The correlation only ever gets evaluated at lattice differences during
    // the scan, so one table of n values covers the whole n^3 grid.
    std::vector<double> table(n);
    for (int k = 0; k < n; ++k) {
        table[k] = correlation(eps, k * h, mode, cfg.invert_tol);
        ++result.evaluations;
    }

    struct Cell {
        double value;
        int ia, ib, ic;
    };
    const int keep = std::min<long long>(cfg.multistart, static_cast<long long>(n) * n * n);
    std::vector<Cell> top;
    top.reserve(keep + 1);
    for (int ia = 0; ia < n; ++ia) {
        for (int ib = 0; ib < n; ++ib) {
            const double e1 = table[ib];
            const double e3 = table[(ib - ia + n) % n];
            for (int ic = 0; ic < n; ++ic) {
                const double v = e1 + table[ic] + e3 - table[(ic - ia + n) % n];
                if (static_cast<int>(top.size()) == keep && v <= top.back().value) continue;
                Cell cell{v, ia, ib, ic};
                auto pos = std::upper_bound(top.begin(), top.end(), cell,
                                            [](const Cell& a, const Cell& b) {
                                                return a.value > b.value;
                                            });
                top.insert(pos, cell);
                if (static_cast<int>(top.size()) > keep) top.pop_back();
            }
        }
    }

    const auto objective = [&](const Vec3& x) {
        MeasurementSettings s;
        s.alpha = 0.0;
        s.alpha_prime = x[0];
        s.beta = x[1];
        s.beta_prime = x[2];
        return bell_value(eps, s, mode, cfg.invert_tol);
    };

    bool have_best = false;
    SimplexResult best{};
    for (const Cell& cell : top) {
        const Vec3 start{cell.ia * h, cell.ib * h, cell.ic * h};
        SimplexResult r = nelder_mead_max(objective, start, 0.5 * h,
                                          cfg.refine_tol, cfg.max_iterations);
        result.evaluations += r.evaluations;
        if (!have_best || r.value > best.value) {
            best = r;
            have_best = true;
        }
    }

    result.value = best.value;
    result.converged = best.converged;
    result.settings.alpha = 0.0;
    result.settings.alpha_prime = reduce_mod(best.x[0], period);
    result.settings.beta = reduce_mod(best.x[1], period);
    result.settings.beta_prime = reduce_mod(best.x[2], period);
    return result;
}

std::vector<SweepRecord> sweep(std::vector<double> eps_values, Convention mode,
                               const SearchConfig& cfg, unsigned max_threads) {
    cfg.validate();
    for (double e : eps_values) Epsilon{e}.validate();
    std::sort(eps_values.begin(), eps_values.end());

    std::vector<SweepRecord> records(eps_values.size());
    if (eps_values.empty()) return records;

    unsigned hw = std::thread::hardware_concurrency();
    if (hw == 0) hw = 1;
    unsigned workers = max_threads == 0 ? hw : std::min(max_threads, hw);
    workers = std::min<unsigned>(workers, eps_values.size());
    workers = std::max(1u, workers);

    std::atomic<std::size_t> next{0};
    auto run = [&]() {
        for (;;) {
            const std::size_t i = next.fetch_add(1);
            if (i >= eps_values.size()) break;
            const Epsilon eps{eps_values[i]};
            const BellResult r = maximize_bell(eps, mode, cfg);
            SweepRecord rec;
            rec.epsilon = eps.value;
            rec.max_bell = r.value;
            rec.conjecture = conjecture_bound(eps);
            rec.relative_deviation = std::abs(r.value - rec.conjecture) / r.value;
            rec.converged = r.converged;
            records[i] = rec;
        }
    };

    if (workers == 1) {
        run();
    } else {
        std::vector<std::thread> pool;
        pool.reserve(workers);
        for (unsigned t = 0; t < workers; ++t) pool.emplace_back(run);
        for (auto& th : pool) th.join();
    }
    return records;
}

}  // namespace nonlocal
