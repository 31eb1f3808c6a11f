#ifndef LECAM_RANDOM_HPP
#define LECAM_RANDOM_HPP

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "lecam/core.hpp"

namespace lecam {

/// Seeded generator for the randomized suites. Uniform doubles are produced
/// from raw mt19937_64 words rather than std distributions, whose output is
/// implementation-defined; identical seeds give identical streams on every
/// platform.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : eng_(seed) {}

    double uniform() {
        return static_cast<double>(eng_() >> 11) * 0x1.0p-53;
    }

    std::size_t uniform_index(std::size_t n) {
        // rejection-free modulo is fine here; n is tiny
        return static_cast<std::size_t>(eng_() % n);
    }

    /// Exponential-normalization sample from the interior of the simplex.
    std::vector<double> random_prob_row(std::size_t dim) {
        std::vector<double> row(dim);
        double sum = 0.0;
        for (double& v : row) {
            double u = uniform();
            if (u <= 0.0) u = 0x1.0p-53;
            v = -std::log(u);
            sum += v;
        }
        for (double& v : row) v /= sum;
        return row;
    }

    Experiment random_experiment(const std::string& name, std::size_t n_params,
                                 std::size_t n_outcomes) {
        std::vector<std::string> params, outcomes;
        for (std::size_t i = 0; i < n_params; ++i) params.push_back("t" + std::to_string(i));
        for (std::size_t i = 0; i < n_outcomes; ++i) outcomes.push_back("x" + std::to_string(i));
        std::vector<std::vector<double>> rows;
        for (std::size_t i = 0; i < n_params; ++i) rows.push_back(random_prob_row(n_outcomes));
        return Experiment(name, std::move(params), std::move(outcomes), std::move(rows));
    }

    Kernel random_kernel(const std::vector<std::string>& from, const std::vector<std::string>& to) {
        std::vector<std::vector<double>> m;
        for (std::size_t i = 0; i < from.size(); ++i) m.push_back(random_prob_row(to.size()));
        return Kernel(from, to, std::move(m));
    }

private:
    std::mt19937_64 eng_;
};

}  // namespace lecam

#endif  // LECAM_RANDOM_HPP
