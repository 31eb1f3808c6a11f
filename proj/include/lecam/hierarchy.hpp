#ifndef LECAM_HIERARCHY_HPP
#define LECAM_HIERARCHY_HPP

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <string>
#include <utility>
#include <vector>

#include "lecam/core.hpp"
#include "lecam/deficiency.hpp"

namespace lecam {

struct SufficiencyResult {
    bool holds = false;
    double max_deviation = 0.0;
    // images with zero mass under some parameter are skipped from the
    // deviation sup and listed here
    std::vector<std::string> skipped_images;
    std::string worst_image;
    std::string worst_outcome;
};

/// A statistic is sufficient when the conditional law of the outcome given
/// the statistic's value is the same for every parameter. Deviation is the
/// sup over images z, parameter pairs and preimage outcomes of the
/// conditional-probability difference.
inline SufficiencyResult check_sufficiency(const Experiment& e, const DeterministicMap& t) {
    if (t.from_outcomes != e.outcomes)
        throw validation_error("check_sufficiency: map domain does not match experiment");
    SufficiencyResult res;
    const std::size_t np = e.n_parameters();
    for (std::size_t z = 0; z < t.to_outcomes.size(); ++z) {
        std::vector<double> mass(np, 0.0);
        for (std::size_t x = 0; x < e.outcomes.size(); ++x)
            if (t.target[x] == z)
                for (std::size_t th = 0; th < np; ++th) mass[th] += e.rows[th][x];
        bool positive_everywhere = true;
        for (double m : mass)
            if (m <= 0.0) positive_everywhere = false;
        if (!positive_everywhere) {
            bool nonempty = std::any_of(mass.begin(), mass.end(), [](double m) { return m > 0.0; });
            if (nonempty) res.skipped_images.push_back(t.to_outcomes[z]);
            continue;
        }
        for (std::size_t x = 0; x < e.outcomes.size(); ++x) {
            if (t.target[x] != z) continue;
            for (std::size_t a = 0; a < np; ++a)
                for (std::size_t b = a + 1; b < np; ++b) {
                    double dev = std::abs(e.rows[a][x] / mass[a] - e.rows[b][x] / mass[b]);
                    if (dev > res.max_deviation) {
                        res.max_deviation = dev;
                        res.worst_image = t.to_outcomes[z];
                        res.worst_outcome = e.outcomes[x];
                    }
                }
        }
    }
    res.holds = res.max_deviation <= 1e-9;
    return res;
}

/// Sup over parameter pairs and outcomes of the change in log likelihood
/// ratio under the map. Pairs where both densities vanish are skipped;
/// one-sided vanishing anywhere gives +infinity.
inline double likelihood_distortion(const Experiment& e, const DeterministicMap& t) {
    if (t.from_outcomes != e.outcomes)
        throw validation_error("likelihood_distortion: map domain does not match experiment");
    Experiment f = apply_map(e, t);
    const std::size_t np = e.n_parameters();
    double sup = 0.0;
    for (std::size_t a = 0; a < np; ++a)
        for (std::size_t b = 0; b < np; ++b) {
            if (a == b) continue;
            for (std::size_t x = 0; x < e.outcomes.size(); ++x) {
                double pa = e.rows[a][x], pb = e.rows[b][x];
                if (pa == 0.0 && pb == 0.0) continue;
                double qa = f.rows[a][t.target[x]], qb = f.rows[b][t.target[x]];
                if (pa == 0.0 || pb == 0.0 || qa == 0.0 || qb == 0.0)
                    return std::numeric_limits<double>::infinity();
                double before = std::log(pa / pb);
                double after = std::log(qa / qb);
                sup = std::max(sup, std::abs(after - before));
            }
        }
    return sup;
}

struct TestingEquivalenceResult {
    double max_pairwise_deficiency = 0.0;
    std::pair<std::string, std::string> argmax_pair;
};

/// Max over unordered parameter pairs of the two-parameter restricted LP
/// deficiency from e to f. One independent solve per pair.
inline TestingEquivalenceResult testing_equivalence(const Experiment& e, const Experiment& f) {
    require_shared_parameters(e, f, "testing_equivalence");
    if (e.n_parameters() < 2)
        throw validation_error("testing_equivalence: needs at least two parameters");
    TestingEquivalenceResult res;
    for (std::size_t a = 0; a < e.n_parameters(); ++a)
        for (std::size_t b = a + 1; b < e.n_parameters(); ++b) {
            std::vector<std::string> pair = {e.parameters[a], e.parameters[b]};
            double d = deficiency(restrict_parameters(e, pair), restrict_parameters(f, pair)).value;
            if (d >= res.max_pairwise_deficiency) {
                res.max_pairwise_deficiency = d;
                res.argmax_pair = {pair[0], pair[1]};
            }
        }
    return res;
}

struct HierarchyReport {
    SufficiencyResult sufficiency;
    double likelihood_distortion = 0.0;  // may be +infinity
    TestingEquivalenceResult testing;
    double delta_forward = 0.0;   // delta(e, e o t)
    double delta_backward = 0.0;  // delta(e o t, e)
    double delta = 0.0;           // max of the two
    double eps = 0.0;
    bool sufficiency_pass = false;
    bool distortion_pass = false;
    bool testing_pass = false;
    bool lecam_pass = false;
    bool nesting_consistent = false;
};

/// Runs all four equivalence checkers of the hierarchy against the induced
/// experiment and flags each level at threshold eps. Nesting violations
/// (sufficiency without zero distortion, or bounded distortion without
/// correspondingly bounded testing deficiency) mark the report inconsistent.
inline HierarchyReport classify_hierarchy(const Experiment& e, const DeterministicMap& t,
                                          double eps) {
    HierarchyReport rep;
    rep.eps = eps;
    rep.sufficiency = check_sufficiency(e, t);
    rep.likelihood_distortion = likelihood_distortion(e, t);
    Experiment f = apply_map(e, t);
    if (e.n_parameters() >= 2) {
        rep.testing = testing_equivalence(e, f);
    }
    LeCamDistance d = lecam_distance(e, f);
    rep.delta_forward = d.forward.value;
    rep.delta_backward = d.backward.value;
    rep.delta = d.delta;

    rep.sufficiency_pass = rep.sufficiency.holds;
    rep.distortion_pass = rep.likelihood_distortion <= eps;
    rep.testing_pass = rep.testing.max_pairwise_deficiency <= eps;
    rep.lecam_pass = rep.delta <= eps;

    rep.nesting_consistent = true;
    if (rep.sufficiency.holds && rep.likelihood_distortion > 1e-9)
        rep.nesting_consistent = false;
    // bounded distortion controls every pairwise testing deficiency at the
    // e^eps - 1 scale
    if (std::isfinite(rep.likelihood_distortion) && rep.likelihood_distortion <= eps &&
        rep.testing.max_pairwise_deficiency >
            std::expm1(rep.likelihood_distortion) + 1e-7)
        rep.nesting_consistent = false;
    return rep;
}

}  // namespace lecam

#endif  // LECAM_HIERARCHY_HPP
