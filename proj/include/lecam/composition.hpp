#ifndef LECAM_COMPOSITION_HPP
#define LECAM_COMPOSITION_HPP

#include <cmath>
#include <cstddef>
#include <string>
#include <vector>

#include "lecam/core.hpp"
#include "lecam/deficiency.hpp"

namespace lecam {

/// A base experiment with two parallel oracle chains of equal shape: the
/// ideal kernels and their approximate stand-ins. Per-step deficiencies are
/// measured, never trusted from input.
struct ChainSpec {
    Experiment base;
    std::vector<Kernel> ideal;
    std::vector<Kernel> approx;

    void validate() const {
        if (ideal.size() != approx.size())
            throw validation_error("ChainSpec: ideal/approx length mismatch");
        std::vector<std::string> cur = base.outcomes;
        for (std::size_t i = 0; i < ideal.size(); ++i) {
            if (ideal[i].from_outcomes != cur)
                throw validation_error("ChainSpec: ideal kernel " + std::to_string(i) +
                                       " does not chain");
            if (approx[i].from_outcomes != ideal[i].from_outcomes ||
                approx[i].to_outcomes != ideal[i].to_outcomes)
                throw validation_error("ChainSpec: approx kernel " + std::to_string(i) +
                                       " shape differs from ideal");
            cur = ideal[i].to_outcomes;
        }
    }
};

inline Experiment compose_chain(const ChainSpec& spec, bool use_approx) {
    spec.validate();
    Experiment cur = spec.base;
    const auto& chain = use_approx ? spec.approx : spec.ideal;
    for (const auto& k : chain) cur = apply_kernel(cur, k);
    return cur;
}

struct CompositionReport {
    double delta_total = 0.0;
    std::vector<double> per_step_eps;  // measured per-step deviations
    double eps_sum = 0.0;
    bool holds = false;  // delta_total <= eps_sum + 1e-7
};

/// Error accumulation over a chain: the end-to-end deficiency between the
/// all-ideal and all-approx compositions is bounded by the sum of per-step
/// deviations, each measured on the chain with steps 1..i-1 ideal and step i
/// swapped.
inline CompositionReport verify_composition_bound(const ChainSpec& spec) {
    spec.validate();
    CompositionReport rep;
    const std::size_t k = spec.ideal.size();

    // eps_i = max_theta TV(prefix o ideal_i, prefix o approx_i) with prefix
    // the all-ideal chain up to i-1. Measuring in total variation (not
    // deficiency) is what makes the telescoping sound: TV is contracted by
    // the common approx suffix of each hybrid pair, while deficiency can
    // grow under shared post-processing.
    Experiment prefix = spec.base;
    for (std::size_t i = 0; i < k; ++i) {
        Experiment with_ideal = apply_kernel(prefix, spec.ideal[i]);
        Experiment with_approx = apply_kernel(prefix, spec.approx[i]);
        double eps = 0.0;
        for (std::size_t th = 0; th < with_ideal.n_parameters(); ++th)
            eps = std::max(eps, total_variation(with_ideal.row_distribution(th),
                                                with_approx.row_distribution(th)));
        rep.per_step_eps.push_back(eps);
        rep.eps_sum += eps;
        prefix = std::move(with_ideal);
    }

    rep.delta_total = k == 0 ? 0.0
                             : deficiency(compose_chain(spec, false), compose_chain(spec, true)).value;
    rep.holds = rep.delta_total <= rep.eps_sum + 1e-7;
    return rep;
}

struct NftReport {
    double source_fidelity = 0.0;   // delta(E_S o T, E_S)
    double target_fidelity = 0.0;   // delta(E_T o T, E_T)
    double invariance_error = 0.0;  // sup_theta TV(Q_theta^S, Q_theta^T)
    double task_gap = 0.0;          // delta(E_T, E_S)
    bool holds = false;  // fidelities + invariance >= task_gap - 1e-7
};

/// No-free-transfer terms for a shared representation kernel: the sum of the
/// two fidelity deficiencies and the invariance error lower-bounds nothing
/// less than the intrinsic gap between the experiments (unit constant).
inline NftReport nft_terms(const Experiment& e_s, const Experiment& e_t, const Kernel& t) {
    require_shared_parameters(e_s, e_t, "nft_terms");
    if (e_s.outcomes != t.from_outcomes || e_t.outcomes != t.from_outcomes)
        throw validation_error("nft_terms: kernel domain must match both outcome spaces");
    Experiment qs = apply_kernel(e_s, t);
    Experiment qt = apply_kernel(e_t, t);
    NftReport rep;
    rep.source_fidelity = deficiency(qs, e_s).value;
    rep.target_fidelity = deficiency(qt, e_t).value;
    for (std::size_t th = 0; th < e_s.n_parameters(); ++th)
        rep.invariance_error = std::max(
            rep.invariance_error, total_variation(qs.row_distribution(th), qt.row_distribution(th)));
    rep.task_gap = deficiency(e_t, e_s).value;
    rep.holds =
        rep.source_fidelity + rep.target_fidelity + rep.invariance_error >= rep.task_gap - 1e-7;
    return rep;
}

}  // namespace lecam

#endif  // LECAM_COMPOSITION_HPP
