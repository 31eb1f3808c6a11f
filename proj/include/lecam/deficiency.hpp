#ifndef LECAM_DEFICIENCY_HPP
#define LECAM_DEFICIENCY_HPP

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <functional>
#include <limits>
#include <string>
#include <vector>

#include "lecam/core.hpp"
#include "lecam/lp.hpp"

namespace lecam {

inline void require_shared_parameters(const Experiment& e, const Experiment& f,
                                      const char* where) {
    if (e.parameters != f.parameters)
        throw validation_error(std::string(where) + ": parameter lists differ");
}

/// Worst-case (over theta) TV error of simulating f from e through t.
inline double kernel_simulation_error(const Experiment& e, const Experiment& f, const Kernel& t) {
    require_shared_parameters(e, f, "kernel_simulation_error");
    if (e.outcomes != t.from_outcomes || f.outcomes != t.to_outcomes)
        throw validation_error("kernel_simulation_error: kernel shape does not match experiments");
    double worst = 0.0;
    for (std::size_t th = 0; th < e.n_parameters(); ++th) {
        std::vector<double> pushed = push_row(e.rows[th], t);
        double s = 0.0;
        for (std::size_t y = 0; y < pushed.size(); ++y) s += std::abs(pushed[y] - f.rows[th][y]);
        worst = std::max(worst, 0.5 * s);
    }
    return worst;
}

struct DeficiencyReport {
    double value = 0.0;                 // delta, from the re-checked witness
    double lp_objective = 0.0;          // raw LP optimum
    Kernel witness;
    std::string source;
    std::string target;
    std::string solver_status;          // "optimal" or "tolerance-limited"
    std::size_t iterations = 0;
};

/// Exact one-directional deficiency: minimize t over row-stochastic T with
/// slacks u[theta][y] >= |(P_theta T)_y - Q_theta(y)| and
/// (1/2) sum_y u[theta][y] <= t for every theta. The reported value is the
/// simulation error of the extracted witness, recomputed outside the solver.
inline DeficiencyReport deficiency(const Experiment& e, const Experiment& f) {
    require_shared_parameters(e, f, "deficiency");
    const std::size_t nx = e.n_outcomes();
    const std::size_t ny = f.n_outcomes();
    const std::size_t np = e.n_parameters();

    // variable layout: T[x][y] (nx*ny), u[theta][y] (np*ny), t (1)
    const std::size_t n_t = nx * ny;
    const std::size_t n_u = np * ny;
    const std::size_t n_vars = n_t + n_u + 1;
    auto tvar = [&](std::size_t x, std::size_t y) { return x * ny + y; };
    auto uvar = [&](std::size_t th, std::size_t y) { return n_t + th * ny + y; };
    const std::size_t scalar_t = n_t + n_u;

    lp::Problem p;
    p.n_vars = n_vars;
    p.c.assign(n_vars, 0.0);
    p.c[scalar_t] = 1.0;

    // rows of T sum to 1
    for (std::size_t x = 0; x < nx; ++x) {
        std::vector<double> row(n_vars, 0.0);
        for (std::size_t y = 0; y < ny; ++y) row[tvar(x, y)] = 1.0;
        p.a_eq.push_back(std::move(row));
        p.b_eq.push_back(1.0);
    }
    // +/- ((P_theta T)_y - Q_theta(y)) <= u[theta][y]
    for (std::size_t th = 0; th < np; ++th) {
        for (std::size_t y = 0; y < ny; ++y) {
            std::vector<double> pos(n_vars, 0.0), neg(n_vars, 0.0);
            for (std::size_t x = 0; x < nx; ++x) {
                pos[tvar(x, y)] = e.rows[th][x];
                neg[tvar(x, y)] = -e.rows[th][x];
            }
            pos[uvar(th, y)] = -1.0;
            neg[uvar(th, y)] = -1.0;
            p.a_ub.push_back(std::move(pos));
            p.b_ub.push_back(f.rows[th][y]);
            p.a_ub.push_back(std::move(neg));
            p.b_ub.push_back(-f.rows[th][y]);
        }
        // (1/2) sum_y u <= t
        std::vector<double> cap(n_vars, 0.0);
        for (std::size_t y = 0; y < ny; ++y) cap[uvar(th, y)] = 0.5;
        cap[scalar_t] = -1.0;
        p.a_ub.push_back(std::move(cap));
        p.b_ub.push_back(0.0);
    }

    lp::Result sol = lp::solve(p);
    DeficiencyReport rep;
    rep.source = e.name;
    rep.target = f.name;
    rep.iterations = sol.iterations;
    if (sol.status != lp::Status::optimal)
        throw validation_error(std::string("deficiency: LP solver failed: ") +
                               lp::to_string(sol.status));

    // extract the witness and clean it up into an exactly stochastic kernel
    std::vector<std::vector<double>> w(nx, std::vector<double>(ny, 0.0));
    for (std::size_t x = 0; x < nx; ++x) {
        double sum = 0.0;
        for (std::size_t y = 0; y < ny; ++y) {
            double v = std::max(0.0, sol.x[tvar(x, y)]);
            w[x][y] = v;
            sum += v;
        }
        if (sum <= 0.0) {
            w[x][0] = 1.0;
        } else {
            for (std::size_t y = 0; y < ny; ++y) w[x][y] /= sum;
        }
    }
    rep.witness = Kernel(e.outcomes, f.outcomes, std::move(w));
    rep.lp_objective = sol.objective;
    rep.value = kernel_simulation_error(e, f, rep.witness);
    rep.solver_status =
        (std::abs(rep.value - rep.lp_objective) <= 1e-7) ? "optimal" : "tolerance-limited";
    return rep;
}

struct LeCamDistance {
    DeficiencyReport forward;   // delta(e, f)
    DeficiencyReport backward;  // delta(f, e)
    double delta = 0.0;         // max of the two
};

inline LeCamDistance lecam_distance(const Experiment& e, const Experiment& f) {
    LeCamDistance d;
    d.forward = deficiency(e, f);
    d.backward = deficiency(f, e);
    d.delta = std::max(d.forward.value, d.backward.value);
    return d;
}

namespace detail {

// Enumerate probability rows of length `dim` with entries k*resolution.
template <typename Fn>
void enumerate_simplex(std::size_t dim, std::size_t steps, std::vector<double>& row,
                       std::size_t pos, std::size_t remaining, double resolution, Fn&& fn) {
    if (pos + 1 == dim) {
        row[pos] = static_cast<double>(remaining) * resolution;
        fn(row);
        return;
    }
    for (std::size_t k = 0; k <= remaining; ++k) {
        row[pos] = static_cast<double>(k) * resolution;
        enumerate_simplex(dim, steps, row, pos + 1, remaining - k, resolution, fn);
    }
}

}  // namespace detail

/// Independent grid oracle: exhaustive minimum of kernel_simulation_error
/// over row-stochastic matrices with entries on a multiple-of-resolution
/// grid. Upper-bounds the true deficiency by at most |f.outcomes|*resolution.
/// Exponential in |e.outcomes|*(|f.outcomes|-1); both outcome counts are
/// capped at 3.
inline double deficiency_bruteforce(const Experiment& e, const Experiment& f, double resolution) {
    require_shared_parameters(e, f, "deficiency_bruteforce");
    if (e.n_outcomes() > 3 || f.n_outcomes() > 3)
        throw validation_error("deficiency_bruteforce: limited to <=3 outcomes per side");
    if (!(resolution > 0.0) || resolution > 1.0)
        throw validation_error("deficiency_bruteforce: resolution must be in (0,1]");

    const std::size_t nx = e.n_outcomes();
    const std::size_t ny = f.n_outcomes();
    const std::size_t np = e.n_parameters();
    const std::size_t steps = static_cast<std::size_t>(std::llround(1.0 / resolution));
    const double step = 1.0 / static_cast<double>(steps);

    // Fast path for binary targets: each T row is (t_x, 1-t_x) and
    // TV = |sum_x P(x) t_x - Q(0)|, so scan nested grids with running sums.
    if (ny == 2) {
        // hot loop: up to (steps+1)^3 iterations at resolution 0.001, so the
        // innermost level runs on incrementally updated sums, no recursion
        double best = std::numeric_limits<double>::infinity();
        const std::size_t s0 = steps;
        const std::size_t s1 = nx > 1 ? steps : 0;
        const std::size_t s2 = nx > 2 ? steps : 0;
        std::vector<double> q0(np), w0(np), w1(np, 0.0), w2(np, 0.0);
        for (std::size_t th = 0; th < np; ++th) {
            q0[th] = f.rows[th][0];
            w0[th] = e.rows[th][0];
            if (nx > 1) w1[th] = e.rows[th][1];
            if (nx > 2) w2[th] = e.rows[th][2];
        }
        for (std::size_t k0 = 0; k0 <= s0; ++k0) {
            double t0 = static_cast<double>(k0) * step;
            for (std::size_t k1 = 0; k1 <= s1; ++k1) {
                double t1 = static_cast<double>(k1) * step;
                double sa = w0[0] * t0 + w1[0] * t1;
                double sb = np > 1 ? w0[1] * t0 + w1[1] * t1 : 0.0;
                double da = w2[0] * step;
                double db = np > 1 ? w2[1] * step : 0.0;
                if (np <= 2) {
                    double qa = q0[0], qb = np > 1 ? q0[1] : 0.0;
                    for (std::size_t k2 = 0; k2 <= s2; ++k2) {
                        double worst = std::abs(sa - qa);
                        if (np > 1) worst = std::max(worst, std::abs(sb - qb));
                        if (worst < best) best = worst;
                        sa += da;
                        sb += db;
                    }
                } else {
                    for (std::size_t k2 = 0; k2 <= s2; ++k2) {
                        double t2 = static_cast<double>(k2) * step;
                        double worst = 0.0;
                        for (std::size_t th = 0; th < np; ++th) {
                            double s = w0[th] * t0 + w1[th] * t1 + w2[th] * t2;
                            worst = std::max(worst, std::abs(s - q0[th]));
                        }
                        if (worst < best) best = worst;
                    }
                }
            }
        }
        return best;
    }

    // General case: enumerate every row over the discrete simplex.
    std::vector<std::vector<double>> grid;
    {
        std::vector<double> row(ny, 0.0);
        detail::enumerate_simplex(ny, steps, row, 0, steps, step,
                                  [&](const std::vector<double>& r) { grid.push_back(r); });
    }
    double best = std::numeric_limits<double>::infinity();
    std::vector<std::vector<double>> pushed(np, std::vector<double>(ny, 0.0));
    std::function<void(std::size_t)> rec = [&](std::size_t x) {
        if (x == nx) {
            double worst = 0.0;
            for (std::size_t th = 0; th < np; ++th) {
                double s = 0.0;
                for (std::size_t y = 0; y < ny; ++y) s += std::abs(pushed[th][y] - f.rows[th][y]);
                worst = std::max(worst, 0.5 * s);
            }
            best = std::min(best, worst);
            return;
        }
        for (const auto& row : grid) {
            for (std::size_t th = 0; th < np; ++th) {
                double px = e.rows[th][x];
                for (std::size_t y = 0; y < ny; ++y) pushed[th][y] += px * row[y];
            }
            rec(x + 1);
            for (std::size_t th = 0; th < np; ++th) {
                double px = e.rows[th][x];
                for (std::size_t y = 0; y < ny; ++y) pushed[th][y] -= px * row[y];
            }
        }
    };
    rec(0);
    return best;
}

struct BinaryDeficiencyDiag {
    double lp_value = 0.0;          // restricted-pair LP deficiency
    double tv_source = 0.0;         // TV between the two source rows
    double tv_target = 0.0;         // TV between the two target rows
    double half_tv_difference = 0.0;  // (1/2)|tv_source - tv_target|, diagnostic only
    double contraction_lower_bound = 0.0;  // (1/2)max(0, tv_target - tv_source)
};

/// Restrict both experiments to two parameters and report the pair LP
/// deficiency next to the half-TV-difference expression and the contraction
/// lower bound. No ordering between the LP value and the half-TV expression
/// is implied.
inline Experiment restrict_parameters(const Experiment& e,
                                      const std::vector<std::string>& params) {
    auto idx = detail::index_of(e.parameters);
    std::vector<std::vector<double>> rows;
    for (const auto& p : params) {
        auto it = idx.find(p);
        if (it == idx.end()) throw validation_error("restrict_parameters: unknown parameter " + p);
        rows.push_back(e.rows[it->second]);
    }
    return Experiment(e.name + "|restricted", params, e.outcomes, std::move(rows));
}

inline BinaryDeficiencyDiag binary_deficiency_diag(const Experiment& e, const Experiment& f,
                                                   const std::string& theta0,
                                                   const std::string& theta1) {
    require_shared_parameters(e, f, "binary_deficiency_diag");
    Experiment es = restrict_parameters(e, {theta0, theta1});
    Experiment fs = restrict_parameters(f, {theta0, theta1});
    BinaryDeficiencyDiag d;
    d.lp_value = deficiency(es, fs).value;
    d.tv_source = total_variation(es.row_distribution(0), es.row_distribution(1));
    d.tv_target = total_variation(fs.row_distribution(0), fs.row_distribution(1));
    d.half_tv_difference = 0.5 * std::abs(d.tv_source - d.tv_target);
    d.contraction_lower_bound = 0.5 * std::max(0.0, d.tv_target - d.tv_source);
    return d;
}

}  // namespace lecam

#endif  // LECAM_DEFICIENCY_HPP
