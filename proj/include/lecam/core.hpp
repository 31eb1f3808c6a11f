#ifndef LECAM_CORE_HPP
#define LECAM_CORE_HPP

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

namespace lecam {

inline constexpr double kProbTol = 1e-9;

/// Raised when an input violates a structural invariant (bad row sum,
/// mismatched outcome lists, duplicate labels, ...).
class validation_error : public std::runtime_error {
public:
    explicit validation_error(const std::string& what) : std::runtime_error(what) {}
};

namespace detail {

inline void check_unique(const std::vector<std::string>& labels, const char* what) {
    std::vector<std::string> sorted = labels;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
        throw validation_error(std::string(what) + ": duplicate label");
}

inline void check_prob_row(const std::vector<double>& row, const char* what) {
    double sum = 0.0;
    for (double p : row) {
        if (!(p >= 0.0))
            throw validation_error(std::string(what) + ": negative or NaN probability");
        sum += p;
    }
    if (std::abs(sum - 1.0) > kProbTol)
        throw validation_error(std::string(what) + ": row sum " + std::to_string(sum) +
                               " outside 1 +/- 1e-9");
}

// Renormalize a row already known to sum to 1 within kProbTol. Inputs further
// off are rejected by check_prob_row, never silently fixed. Rows already
// normalized to machine precision are left untouched, so the operation is
// idempotent and parse/serialize round-trips stay bit-exact.
inline void renormalize(std::vector<double>& row) {
    double sum = 0.0;
    for (double p : row) sum += p;
    if (sum > 0.0 && std::abs(sum - 1.0) > 1e-15)
        for (double& p : row) p /= sum;
}

inline std::map<std::string, std::size_t> index_of(const std::vector<std::string>& labels) {
    std::map<std::string, std::size_t> idx;
    for (std::size_t i = 0; i < labels.size(); ++i) idx[labels[i]] = i;
    return idx;
}

}  // namespace detail

/// Probability vector over a named finite outcome set.
struct Distribution {
    std::vector<std::string> outcomes;
    std::vector<double> probs;

    Distribution() = default;
    Distribution(std::vector<std::string> outcomes_, std::vector<double> probs_)
        : outcomes(std::move(outcomes_)), probs(std::move(probs_)) {
        if (outcomes.size() != probs.size())
            throw validation_error("Distribution: outcome/prob length mismatch");
        detail::check_unique(outcomes, "Distribution");
        detail::check_prob_row(probs, "Distribution");
        detail::renormalize(probs);
    }

    bool operator==(const Distribution&) const = default;
};

/// Finite statistical experiment: a parameter set and one distribution per
/// parameter, all over the same outcome list.
struct Experiment {
    std::string name;
    std::vector<std::string> parameters;
    std::vector<std::string> outcomes;
    std::vector<std::vector<double>> rows;  // rows[theta][outcome]

    Experiment() = default;
    Experiment(std::string name_, std::vector<std::string> parameters_,
               std::vector<std::string> outcomes_, std::vector<std::vector<double>> rows_)
        : name(std::move(name_)),
          parameters(std::move(parameters_)),
          outcomes(std::move(outcomes_)),
          rows(std::move(rows_)) {
        if (parameters.empty()) throw validation_error("Experiment: empty parameter list");
        detail::check_unique(parameters, "Experiment parameters");
        detail::check_unique(outcomes, "Experiment outcomes");
        if (rows.size() != parameters.size())
            throw validation_error("Experiment: one row per parameter required");
        for (auto& row : rows) {
            if (row.size() != outcomes.size())
                throw validation_error("Experiment: row length != outcome count");
            detail::check_prob_row(row, "Experiment row");
            detail::renormalize(row);
        }
    }

    std::size_t n_parameters() const { return parameters.size(); }
    std::size_t n_outcomes() const { return outcomes.size(); }

    Distribution row_distribution(std::size_t theta) const {
        return Distribution(outcomes, rows.at(theta));
    }

    bool operator==(const Experiment&) const = default;
};

/// Row-stochastic matrix from one outcome set to another.
struct Kernel {
    std::vector<std::string> from_outcomes;
    std::vector<std::string> to_outcomes;
    std::vector<std::vector<double>> matrix;  // matrix[from][to]

    Kernel() = default;
    Kernel(std::vector<std::string> from_, std::vector<std::string> to_,
           std::vector<std::vector<double>> matrix_)
        : from_outcomes(std::move(from_)), to_outcomes(std::move(to_)), matrix(std::move(matrix_)) {
        detail::check_unique(from_outcomes, "Kernel from_outcomes");
        detail::check_unique(to_outcomes, "Kernel to_outcomes");
        if (matrix.size() != from_outcomes.size())
            throw validation_error("Kernel: one row per from_outcome required");
        for (auto& row : matrix) {
            if (row.size() != to_outcomes.size())
                throw validation_error("Kernel: row length != to_outcome count");
            detail::check_prob_row(row, "Kernel row");
            detail::renormalize(row);
        }
    }

    static Kernel identity(const std::vector<std::string>& outcomes) {
        std::vector<std::vector<double>> m(outcomes.size(),
                                           std::vector<double>(outcomes.size(), 0.0));
        for (std::size_t i = 0; i < outcomes.size(); ++i) m[i][i] = 1.0;
        return Kernel(outcomes, outcomes, std::move(m));
    }

    bool operator==(const Kernel&) const = default;
};

/// Total deterministic map between outcome sets; losslessly convertible to a
/// 0/1 Kernel.
struct DeterministicMap {
    std::vector<std::string> from_outcomes;
    std::vector<std::string> to_outcomes;
    std::vector<std::size_t> target;  // target[from] indexes to_outcomes

    DeterministicMap() = default;
    DeterministicMap(std::vector<std::string> from_, std::vector<std::string> to_,
                     std::vector<std::size_t> target_)
        : from_outcomes(std::move(from_)), to_outcomes(std::move(to_)), target(std::move(target_)) {
        detail::check_unique(from_outcomes, "DeterministicMap from_outcomes");
        detail::check_unique(to_outcomes, "DeterministicMap to_outcomes");
        if (target.size() != from_outcomes.size())
            throw validation_error("DeterministicMap: map must be total");
        for (std::size_t t : target)
            if (t >= to_outcomes.size())
                throw validation_error("DeterministicMap: target index out of range");
    }

    /// Build from (from, to) label pairs; the to-outcome set is either given
    /// explicitly or collected from the mapping in first-appearance order.
    static DeterministicMap from_pairs(
        const std::vector<std::string>& from_outcomes,
        const std::map<std::string, std::string>& mapping,
        std::vector<std::string> to_outcomes = {}) {
        if (to_outcomes.empty()) {
            for (const auto& x : from_outcomes) {
                auto it = mapping.find(x);
                if (it == mapping.end())
                    throw validation_error("DeterministicMap: missing image for " + x);
                if (std::find(to_outcomes.begin(), to_outcomes.end(), it->second) ==
                    to_outcomes.end())
                    to_outcomes.push_back(it->second);
            }
        }
        auto to_idx = detail::index_of(to_outcomes);
        std::vector<std::size_t> target;
        for (const auto& x : from_outcomes) {
            auto it = mapping.find(x);
            if (it == mapping.end())
                throw validation_error("DeterministicMap: missing image for " + x);
            auto jt = to_idx.find(it->second);
            if (jt == to_idx.end())
                throw validation_error("DeterministicMap: image not in to_outcomes: " + it->second);
            target.push_back(jt->second);
        }
        return DeterministicMap(from_outcomes, std::move(to_outcomes), std::move(target));
    }

    Kernel to_kernel() const {
        std::vector<std::vector<double>> m(from_outcomes.size(),
                                           std::vector<double>(to_outcomes.size(), 0.0));
        for (std::size_t i = 0; i < from_outcomes.size(); ++i) m[i][target[i]] = 1.0;
        return Kernel(from_outcomes, to_outcomes, std::move(m));
    }

    bool operator==(const DeterministicMap&) const = default;
};

/// Half-L1 total variation distance, range [0, 1].
inline double total_variation(const Distribution& p, const Distribution& q) {
    if (p.outcomes != q.outcomes)
        throw validation_error("total_variation: outcome lists differ");
    double s = 0.0;
    for (std::size_t i = 0; i < p.probs.size(); ++i) s += std::abs(p.probs[i] - q.probs[i]);
    return 0.5 * s;
}

inline std::vector<double> push_row(const std::vector<double>& row, const Kernel& t) {
    std::vector<double> out(t.to_outcomes.size(), 0.0);
    for (std::size_t x = 0; x < row.size(); ++x) {
        double px = row[x];
        if (px == 0.0) continue;
        const auto& trow = t.matrix[x];
        for (std::size_t y = 0; y < out.size(); ++y) out[y] += px * trow[y];
    }
    return out;
}

/// Push every row of an experiment through a kernel: the induced experiment.
inline Experiment apply_kernel(const Experiment& e, const Kernel& t) {
    if (e.outcomes != t.from_outcomes)
        throw validation_error("apply_kernel: experiment outcomes do not match kernel domain");
    std::vector<std::vector<double>> rows;
    rows.reserve(e.rows.size());
    for (const auto& row : e.rows) rows.push_back(push_row(row, t));
    return Experiment(e.name + "*", e.parameters, t.to_outcomes, std::move(rows));
}

inline Experiment apply_map(const Experiment& e, const DeterministicMap& t) {
    return apply_kernel(e, t.to_kernel());
}

inline Kernel compose_kernels(const Kernel& t1, const Kernel& t2) {
    if (t1.to_outcomes != t2.from_outcomes)
        throw validation_error("compose_kernels: inner outcome lists differ");
    std::size_t n = t1.from_outcomes.size();
    std::size_t m = t2.to_outcomes.size();
    std::size_t k = t1.to_outcomes.size();
    std::vector<std::vector<double>> prod(n, std::vector<double>(m, 0.0));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < k; ++j) {
            double a = t1.matrix[i][j];
            if (a == 0.0) continue;
            for (std::size_t l = 0; l < m; ++l) prod[i][l] += a * t2.matrix[j][l];
        }
    return Kernel(t1.from_outcomes, t2.to_outcomes, std::move(prod));
}

/// Experiment whose rows are point masses: one instance per parameter, each
/// observing its designated solution with certainty.
inline Experiment point_mass_experiment(const std::vector<std::string>& instances,
                                        const std::map<std::string, std::string>& solution,
                                        std::vector<std::string> outcome_space = {}) {
    detail::check_unique(instances, "point_mass_experiment instances");
    if (outcome_space.empty()) {
        for (const auto& x : instances) {
            auto it = solution.find(x);
            if (it == solution.end())
                throw validation_error("point_mass_experiment: no solution for " + x);
            if (std::find(outcome_space.begin(), outcome_space.end(), it->second) ==
                outcome_space.end())
                outcome_space.push_back(it->second);
        }
    }
    auto idx = detail::index_of(outcome_space);
    std::vector<std::vector<double>> rows;
    for (const auto& x : instances) {
        auto it = solution.find(x);
        if (it == solution.end())
            throw validation_error("point_mass_experiment: no solution for " + x);
        std::vector<double> row(outcome_space.size(), 0.0);
        row[idx.at(it->second)] = 1.0;
        rows.push_back(std::move(row));
    }
    return Experiment("point-mass", instances, std::move(outcome_space), std::move(rows));
}

}  // namespace lecam

#endif  // LECAM_CORE_HPP
