#ifndef LECAM_LP_HPP
#define LECAM_LP_HPP

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <string>
#include <vector>

namespace lecam::lp {

// Minimize c.x subject to A_eq x = b_eq, A_ub x <= b_ub, x >= 0.
// Dense two-phase simplex. Problem sizes in this project are a few hundred
// rows at most, so a plain tableau is fast enough and easy to audit.

enum class Status { optimal, infeasible, unbounded, iteration_limit };

inline const char* to_string(Status s) {
    switch (s) {
        case Status::optimal: return "optimal";
        case Status::infeasible: return "infeasible";
        case Status::unbounded: return "unbounded";
        case Status::iteration_limit: return "iteration_limit";
    }
    return "?";
}

struct Problem {
    std::size_t n_vars = 0;
    std::vector<double> c;
    std::vector<std::vector<double>> a_eq;
    std::vector<double> b_eq;
    std::vector<std::vector<double>> a_ub;
    std::vector<double> b_ub;
};

struct Result {
    Status status = Status::infeasible;
    double objective = std::numeric_limits<double>::quiet_NaN();
    std::vector<double> x;
    std::size_t iterations = 0;
};

namespace detail {

inline constexpr double kPivotTol = 1e-9;

class Tableau {
public:
    // rows x (cols+1); last column is the rhs, row `rows` is the objective.
    Tableau(std::size_t rows, std::size_t cols)
        : rows_(rows), cols_(cols), data_((rows + 1) * (cols + 1), 0.0), basis_(rows, 0) {}

    double& at(std::size_t r, std::size_t c) { return data_[r * (cols_ + 1) + c]; }
    double at(std::size_t r, std::size_t c) const { return data_[r * (cols_ + 1) + c]; }
    double& rhs(std::size_t r) { return at(r, cols_); }
    double& obj(std::size_t c) { return at(rows_, c); }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    std::vector<std::size_t>& basis() { return basis_; }

    void pivot(std::size_t pr, std::size_t pc) {
        double* prow = &data_[pr * (cols_ + 1)];
        double inv = 1.0 / prow[pc];
        for (std::size_t j = 0; j <= cols_; ++j) prow[j] *= inv;
        prow[pc] = 1.0;
        for (std::size_t r = 0; r <= rows_; ++r) {
            if (r == pr) continue;
            double* row = &data_[r * (cols_ + 1)];
            double f = row[pc];
            if (f == 0.0) continue;
            for (std::size_t j = 0; j <= cols_; ++j) row[j] -= f * prow[j];
            row[pc] = 0.0;
        }
        basis_[pr] = pc;
    }

    // Clamp tiny negative basic values to zero so a later pivot on a small
    // element cannot amplify them into genuine infeasibility.
    void clean_rhs() {
        for (std::size_t r = 0; r < rows_; ++r)
            if (rhs(r) < 0.0 && rhs(r) > -1e-8) rhs(r) = 0.0;
    }

    // Ratio test over column pc. Prefers pivot elements above `strong` for
    // numerical stability; among (near-)tied minimum ratios picks the largest
    // pivot element, or the lowest basis index when `bland` is set.
    std::size_t ratio_test(std::size_t pc, double strong, bool bland) const {
        std::size_t pr = rows_;
        double best_ratio = std::numeric_limits<double>::infinity();
        double best_a = 0.0;
        for (std::size_t r = 0; r < rows_; ++r) {
            double a = at(r, pc);
            if (a <= strong) continue;
            double ratio = std::max(0.0, at(r, cols_)) / a;
            bool take = false;
            if (pr == rows_ || ratio < best_ratio - 1e-9) {
                take = true;
            } else if (ratio < best_ratio + 1e-9) {
                take = bland ? basis_[r] < basis_[pr] : a > best_a;
            }
            if (take) {
                best_ratio = std::min(best_ratio, ratio);
                best_a = a;
                pr = r;
            }
        }
        return pr;
    }

    // Dual simplex: from a dual-feasible tableau (reduced costs >= 0) with
    // some negative basic values, pivots until the basis is primal feasible.
    Status dual_solve(const std::vector<bool>& allowed, std::size_t max_iter,
                      std::size_t& iters) {
        while (iters < max_iter) {
            std::size_t pr = rows_;
            double worst = -1e-9;
            for (std::size_t r = 0; r < rows_; ++r)
                if (rhs(r) < worst) {
                    worst = rhs(r);
                    pr = r;
                }
            if (pr == rows_) {
                clean_rhs();
                return Status::optimal;
            }
            // two-pass ratio test: find the minimum ratio, then among columns
            // within a small slack of it take the largest pivot element, so a
            // marginally better ratio can never force a destabilizing tiny
            // pivot
            double min_ratio = std::numeric_limits<double>::infinity();
            for (std::size_t j = 0; j < cols_; ++j) {
                if (!allowed[j]) continue;
                double a = at(pr, j);
                if (a >= -kPivotTol) continue;
                min_ratio = std::min(min_ratio, std::max(0.0, obj(j)) / (-a));
            }
            if (min_ratio == std::numeric_limits<double>::infinity())
                return Status::infeasible;
            double slack = 1e-7 * (1.0 + min_ratio);
            std::size_t pc = cols_;
            double best_a = 0.0;
            for (std::size_t j = 0; j < cols_; ++j) {
                if (!allowed[j]) continue;
                double a = at(pr, j);
                if (a >= -kPivotTol) continue;
                if (std::max(0.0, obj(j)) / (-a) <= min_ratio + slack && -a > best_a) {
                    best_a = -a;
                    pc = j;
                }
            }
            if (pc == cols_) return Status::infeasible;
            pivot(pr, pc);
            ++iters;
        }
        return Status::iteration_limit;
    }

    Status solve(const std::vector<bool>& allowed, std::size_t max_iter, std::size_t& iters) {
        constexpr double kStrongPivot = 1e-7;
        constexpr std::size_t kStallLimit = 500;
        std::size_t stall = 0;
        double best_obj = -at(rows_, cols_);
        bool bland = false;
        while (iters < max_iter) {
            std::size_t pc = cols_;
            double best = -kPivotTol;
            for (std::size_t j = 0; j < cols_; ++j) {
                if (!allowed[j]) continue;
                double rc = obj(j);
                if (bland) {
                    if (rc < -kPivotTol) {
                        pc = j;
                        break;
                    }
                } else if (rc < best) {
                    best = rc;
                    pc = j;
                }
            }
            if (pc == cols_) return Status::optimal;

            std::size_t pr = ratio_test(pc, kStrongPivot, bland);
            if (pr == rows_) pr = ratio_test(pc, kPivotTol, bland);
            if (pr == rows_) return Status::unbounded;
            if (rhs(pr) < 0.0) rhs(pr) = 0.0;
            pivot(pr, pc);
            clean_rhs();
            double cur = -at(rows_, cols_);
            if (cur < best_obj - 1e-12) {
                best_obj = cur;
                stall = 0;
            } else if (!bland && ++stall > kStallLimit) {
                bland = true;  // degenerate plateau: Bland's rule cannot cycle
            }
            ++iters;
        }
        return Status::iteration_limit;
    }

private:
    std::size_t rows_, cols_;
    std::vector<double> data_;
    std::vector<std::size_t> basis_;
};

// Fills the constraint rows of `t` from the original problem data:
// structural columns, slack columns for the <= rows, one artificial column
// per row, and the rhs, with each row scaled by row_sign to keep the rhs
// nonnegative. The objective row is left at zero.
inline void build_rows(const Problem& p, const std::vector<double>& row_sign, Tableau& t) {
    const std::size_t n = p.n_vars;
    const std::size_t m_eq = p.a_eq.size();
    const std::size_t m = m_eq + p.a_ub.size();
    const std::size_t n_slack = p.a_ub.size();
    for (std::size_t r = 0; r < m; ++r) {
        const bool is_eq = r < m_eq;
        const auto& arow = is_eq ? p.a_eq[r] : p.a_ub[r - m_eq];
        double b = is_eq ? p.b_eq[r] : p.b_ub[r - m_eq];
        double sign = row_sign[r];
        for (std::size_t j = 0; j < n; ++j) t.at(r, j) = sign * arow[j];
        if (!is_eq) t.at(r, n + (r - m_eq)) = sign * 1.0;
        t.at(r, n + n_slack + r) = 1.0;
        t.rhs(r) = sign * b;
    }
}

// Rebuilds the full tableau from the original data at the given basis, wiping
// out any floating-point drift accumulated over the pivots that reached it.
// Returns false when the basis matrix is numerically singular.
inline bool rebuild(const Problem& p, const std::vector<std::size_t>& basis,
                    const std::vector<double>& row_sign, Tableau& t) {
    build_rows(p, row_sign, t);
    const std::size_t m = t.rows();
    const std::size_t cols = t.cols();
    std::vector<bool> used(m, false);
    for (std::size_t k = 0; k < m; ++k) {
        std::size_t col = basis[k];
        std::size_t pr = m;
        double best = 1e-9;
        for (std::size_t r = 0; r < m; ++r)
            if (!used[r] && std::abs(t.at(r, col)) > best) {
                best = std::abs(t.at(r, col));
                pr = r;
            }
        if (pr == m) return false;
        used[pr] = true;
        double inv = 1.0 / t.at(pr, col);
        for (std::size_t j = 0; j <= cols; ++j) t.at(pr, j) *= inv;
        t.at(pr, col) = 1.0;
        for (std::size_t r = 0; r < m; ++r) {
            if (r == pr) continue;
            double f = t.at(r, col);
            if (f == 0.0) continue;
            for (std::size_t j = 0; j <= cols; ++j) t.at(r, j) -= f * t.at(pr, j);
            t.at(r, col) = 0.0;
        }
        t.basis()[pr] = col;
    }
    t.clean_rhs();
    // phase-2 objective priced out over the rebuilt basis
    for (std::size_t j = 0; j <= cols; ++j) t.obj(j) = 0.0;
    for (std::size_t j = 0; j < p.n_vars; ++j) t.obj(j) = p.c[j];
    for (std::size_t r = 0; r < m; ++r) {
        std::size_t bj = t.basis()[r];
        double cb = (bj < p.n_vars) ? p.c[bj] : 0.0;
        if (cb == 0.0) continue;
        for (std::size_t j = 0; j <= cols; ++j) t.obj(j) -= cb * t.at(r, j);
    }
    return true;
}

// After many degenerate pivots the tableau rhs drifts; the basis itself is
// exact combinatorial information, so recompute the basic values from the
// original data by solving B x_B = b with partial pivoting. Returns false if
// the basis matrix is numerically singular.
inline bool resolve_basis(const Problem& p, const std::vector<std::size_t>& basis,
                          const std::vector<double>& row_sign, std::vector<double>& x) {
    const std::size_t n = p.n_vars;
    const std::size_t m_eq = p.a_eq.size();
    const std::size_t m = m_eq + p.a_ub.size();
    const std::size_t n_slack = p.a_ub.size();

    std::vector<std::vector<double>> b_mat(m, std::vector<double>(m + 1, 0.0));
    for (std::size_t r = 0; r < m; ++r)
        b_mat[r][m] = (r < m_eq) ? p.b_eq[r] : p.b_ub[r - m_eq];
    for (std::size_t k = 0; k < m; ++k) {
        std::size_t j = basis[k];
        if (j < n) {
            for (std::size_t r = 0; r < m; ++r)
                b_mat[r][k] = (r < m_eq) ? p.a_eq[r][j] : p.a_ub[r - m_eq][j];
        } else if (j < n + n_slack) {
            b_mat[m_eq + (j - n)][k] = 1.0;
        } else {
            std::size_t r = j - n - n_slack;
            b_mat[r][k] = row_sign[r];  // artificial lives on the flipped row
        }
    }
    // gaussian elimination with partial pivoting
    for (std::size_t col = 0; col < m; ++col) {
        std::size_t piv = col;
        for (std::size_t r = col + 1; r < m; ++r)
            if (std::abs(b_mat[r][col]) > std::abs(b_mat[piv][col])) piv = r;
        if (std::abs(b_mat[piv][col]) < 1e-12) return false;
        std::swap(b_mat[col], b_mat[piv]);
        for (std::size_t r = 0; r < m; ++r) {
            if (r == col) continue;
            double f = b_mat[r][col] / b_mat[col][col];
            if (f == 0.0) continue;
            for (std::size_t j2 = col; j2 <= m; ++j2) b_mat[r][j2] -= f * b_mat[col][j2];
        }
    }
    x.assign(n, 0.0);
    for (std::size_t k = 0; k < m; ++k) {
        double v = b_mat[k][m] / b_mat[k][k];
        if (basis[k] < n) x[basis[k]] = std::max(0.0, v);
    }
    return true;
}

}  // namespace detail

inline Result solve(const Problem& p, std::size_t max_iter = 200000) {
    using detail::Tableau;
    const std::size_t n = p.n_vars;
    const std::size_t m_eq = p.a_eq.size();
    const std::size_t m_ub = p.a_ub.size();
    const std::size_t m = m_eq + m_ub;
    const std::size_t n_slack = m_ub;
    // artificial variables for every row; unneeded ones just start nonbasic
    const std::size_t n_art = m;
    const std::size_t cols = n + n_slack + n_art;

    Tableau t(m, cols);

    // structural + slack columns, rhs made nonnegative row by row
    std::vector<double> row_sign(m, 1.0);
    for (std::size_t r = 0; r < m; ++r) {
        double b = (r < m_eq) ? p.b_eq[r] : p.b_ub[r - m_eq];
        if (b < 0.0) row_sign[r] = -1.0;
    }
    detail::build_rows(p, row_sign, t);

    Result res;

    // Phase 1: minimize the sum of artificials. Start with slack columns in
    // the basis where they carry +1, artificials elsewhere.
    std::vector<bool> allowed(cols, true);
    for (std::size_t r = 0; r < m; ++r) {
        std::size_t slack_col = (r >= m_eq) ? n + (r - m_eq) : cols;
        if (slack_col < cols && t.at(r, slack_col) > 0.5) {
            t.basis()[r] = slack_col;
            t.at(r, n + n_slack + r) = 0.0;  // drop the unused artificial
        } else {
            t.basis()[r] = n + n_slack + r;
        }
    }
    for (std::size_t r = 0; r < m; ++r) {
        if (t.basis()[r] != n + n_slack + r) continue;
        for (std::size_t j = 0; j <= cols; ++j) t.obj(j) -= t.at(r, j);
    }
    // price out basic artificials (phase-1 cost 1 each): reduced cost of a
    // basic column must be zero
    for (std::size_t r = 0; r < m; ++r)
        if (t.basis()[r] == n + n_slack + r) t.obj(n + n_slack + r) = 0.0;
    // mask columns of dropped artificials
    for (std::size_t r = 0; r < m; ++r)
        if (t.basis()[r] != n + n_slack + r) allowed[n + n_slack + r] = false;

    Status st = t.solve(allowed, max_iter, res.iterations);
    if (st == Status::iteration_limit) {
        res.status = st;
        return res;
    }
    double phase1 = -t.at(m, cols);
    if (phase1 > 1e-7) {
        res.status = Status::infeasible;
        return res;
    }

    // Pivot any artificial still in the basis out on a structural column.
    for (std::size_t r = 0; r < m; ++r) {
        if (t.basis()[r] < n + n_slack) continue;
        std::size_t pc = cols;
        double best_a = detail::kPivotTol;
        for (std::size_t j = 0; j < n + n_slack; ++j)
            if (std::abs(t.at(r, j)) > best_a) {
                best_a = std::abs(t.at(r, j));
                pc = j;
            }
        if (pc < cols) t.pivot(r, pc);
        // else: redundant row, artificial stays at value ~0
    }

    // Phase 2: restore the real objective, priced out over the current basis.
    for (std::size_t j = 0; j <= cols; ++j) t.obj(j) = 0.0;
    for (std::size_t j = 0; j < n; ++j) t.obj(j) = p.c[j];
    for (std::size_t r = 0; r < m; ++r) {
        std::size_t bj = t.basis()[r];
        double cb = (bj < n) ? p.c[bj] : 0.0;
        if (cb == 0.0) continue;
        for (std::size_t j = 0; j <= cols; ++j) t.obj(j) -= cb * t.at(r, j);
    }
    for (std::size_t j = n + n_slack; j < cols; ++j) allowed[j] = false;

    st = t.solve(allowed, max_iter, res.iterations);

    // The walk to the first claimed optimum can drift on degenerate
    // instances. Repair rounds: rebuild the tableau exactly at the current
    // basis, restore primal feasibility with dual pivots (cheap, since the
    // rebuilt basis is near-feasible), snapshot the exactly-feasible solution
    // reached, then let the primal improve further. Massively degenerate
    // instances may never certify a clean basis -- the primal just wanders
    // the optimal plateau -- so the loop keeps the best feasible snapshot and
    // stops once the exact objective stops improving.
    double best_feasible_obj = std::numeric_limits<double>::infinity();
    std::vector<double> best_x;
    int stalled_rounds = 0;
    for (int round = 0; round < 100 && st == Status::optimal; ++round) {
        Tableau fresh(m, cols);
        if (!detail::rebuild(p, t.basis(), row_sign, fresh)) break;
        std::size_t before = res.iterations;
        // keep repair stretches short between rebuilds so drift cannot
        // accumulate; a round that hits its budget simply rebuilds again
        std::size_t budget = std::min(max_iter, before + 300);
        Status st2 = fresh.dual_solve(allowed, budget, res.iterations);
        bool improved = false;
        if (st2 == Status::optimal) {
            std::vector<double> cand;
            if (detail::resolve_basis(p, fresh.basis(), row_sign, cand)) {
                double cobj = 0.0;
                for (std::size_t j = 0; j < n; ++j) cobj += p.c[j] * cand[j];
                if (cobj < best_feasible_obj) {
                    improved = cobj < best_feasible_obj - 1e-10;
                    best_feasible_obj = cobj;
                    best_x = std::move(cand);
                }
            }
            st2 = fresh.solve(allowed, budget, res.iterations);
        }
        if (st2 != Status::optimal && st2 != Status::iteration_limit) break;
        bool clean = st2 == Status::optimal && res.iterations == before;
        t = std::move(fresh);
        if (clean) break;
        stalled_rounds = improved ? 0 : stalled_rounds + 1;
        if (stalled_rounds >= 12) break;
        if (res.iterations >= max_iter) break;
    }

    res.status = st;
    if (st != Status::optimal) return res;

    if (!best_x.empty()) {
        res.x = std::move(best_x);
    } else if (!detail::resolve_basis(p, t.basis(), row_sign, res.x)) {
        res.x.assign(n, 0.0);
        for (std::size_t r = 0; r < m; ++r)
            if (t.basis()[r] < n) res.x[t.basis()[r]] = t.rhs(r);
    }
    double obj = 0.0;
    for (std::size_t j = 0; j < n; ++j) obj += p.c[j] * res.x[j];
    res.objective = obj;
    return res;
}

}  // namespace lecam::lp

#endif  // LECAM_LP_HPP
