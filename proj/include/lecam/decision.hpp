#ifndef LECAM_DECISION_HPP
#define LECAM_DECISION_HPP

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <functional>
#include <string>
#include <vector>

#include "lecam/core.hpp"
#include "lecam/deficiency.hpp"

namespace lecam {

/// Finite action set plus a loss matrix over (parameter, action), with
/// declared bounds (default [0,1]).
struct DecisionProblem {
    std::vector<std::string> actions;
    std::vector<std::vector<double>> loss;  // loss[theta][action]
    double lo = 0.0;
    double hi = 1.0;

    DecisionProblem() = default;
    DecisionProblem(std::vector<std::string> actions_, std::vector<std::vector<double>> loss_,
                    double lo_ = 0.0, double hi_ = 1.0)
        : actions(std::move(actions_)), loss(std::move(loss_)), lo(lo_), hi(hi_) {
        detail::check_unique(actions, "DecisionProblem actions");
        if (!(std::isfinite(lo) && std::isfinite(hi)) || !(lo <= hi))
            throw validation_error("DecisionProblem: bounds must be finite with lo <= hi");
        for (auto& row : loss) {
            if (row.size() != actions.size())
                throw validation_error("DecisionProblem: loss row length != action count");
            for (double v : row)
                if (!(v >= lo - 1e-12) || !(v <= hi + 1e-12))
                    throw validation_error("DecisionProblem: loss entry outside declared bounds");
        }
    }

    double oscillation() const { return hi - lo; }

    /// 0-1 loss with one action per parameter (guess-the-parameter).
    static DecisionProblem zero_one(const std::vector<std::string>& parameters) {
        std::vector<std::vector<double>> loss(parameters.size(),
                                              std::vector<double>(parameters.size(), 1.0));
        for (std::size_t i = 0; i < parameters.size(); ++i) loss[i][i] = 0.0;
        return DecisionProblem(parameters, std::move(loss));
    }
};

/// A decision rule is a kernel from outcomes to actions; deterministic rules
/// are stored as maps and expanded to 0/1 kernels on demand.
struct DecisionRule {
    bool deterministic = true;
    DeterministicMap map;  // used when deterministic
    Kernel kernel;         // used otherwise

    static DecisionRule from_map(DeterministicMap m) {
        DecisionRule r;
        r.deterministic = true;
        r.map = std::move(m);
        return r;
    }
    static DecisionRule from_kernel(Kernel k) {
        DecisionRule r;
        r.deterministic = false;
        r.kernel = std::move(k);
        return r;
    }

    Kernel as_kernel() const { return deterministic ? map.to_kernel() : kernel; }
    const std::vector<std::string>& domain() const {
        return deterministic ? map.from_outcomes : kernel.from_outcomes;
    }
    const std::vector<std::string>& actions() const {
        return deterministic ? map.to_outcomes : kernel.to_outcomes;
    }
};

/// Per-parameter expected loss R(theta) = sum_x P_theta(x) sum_a rho(a|x) l(theta,a).
inline std::vector<double> risk(const Experiment& e, const DecisionRule& rule,
                                const DecisionProblem& dp) {
    if (rule.domain() != e.outcomes)
        throw validation_error("risk: rule domain does not match experiment outcomes");
    if (dp.loss.size() != e.n_parameters())
        throw validation_error("risk: loss matrix needs one row per parameter");
    Kernel k = rule.as_kernel();
    if (k.to_outcomes != dp.actions)
        throw validation_error("risk: rule actions do not match decision problem");
    std::vector<double> out(e.n_parameters(), 0.0);
    for (std::size_t th = 0; th < e.n_parameters(); ++th) {
        std::vector<double> action_probs = push_row(e.rows[th], k);
        double r = 0.0;
        for (std::size_t a = 0; a < action_probs.size(); ++a)
            r += action_probs[a] * dp.loss[th][a];
        out[th] = r;
    }
    return out;
}

/// Pre-compose a rule on f with a kernel t from e-outcomes to f-outcomes:
/// the transferred rule rho' = rho after t.
inline DecisionRule transfer_rule(const DecisionRule& rule_on_f, const Kernel& t) {
    if (t.to_outcomes != rule_on_f.domain())
        throw validation_error("transfer_rule: kernel range does not match rule domain");
    return DecisionRule::from_kernel(compose_kernels(t, rule_on_f.as_kernel()));
}

/// Streams every total deterministic map outcomes -> actions exactly once.
/// |actions|^|outcomes| must stay at or below 10^6.
inline void enumerate_deterministic_rules(const std::vector<std::string>& outcomes,
                                          const std::vector<std::string>& actions,
                                          const std::function<void(const DecisionRule&)>& fn) {
    double count = std::pow(static_cast<double>(actions.size()),
                            static_cast<double>(outcomes.size()));
    if (count > 1e6)
        throw validation_error("enumerate_deterministic_rules: |actions|^|outcomes| > 10^6");
    std::vector<std::size_t> target(outcomes.size(), 0);
    while (true) {
        fn(DecisionRule::from_map(DeterministicMap(outcomes, actions, target)));
        std::size_t i = 0;
        for (; i < target.size(); ++i) {
            if (++target[i] < actions.size()) break;
            target[i] = 0;
        }
        if (i == target.size()) break;
    }
}

struct HingeReport {
    double delta = 0.0;      // deficiency(e, f)
    double bound = 0.0;      // oscillation * delta
    double max_gap = 0.0;    // max observed |risk gap|
    std::size_t rules_checked = 0;
    bool holds = false;      // max_gap <= bound + 1e-7
};

/// Risk-transfer check: for every supplied problem and rule on f, the rule
/// transferred through the deficiency witness kernel changes each
/// per-parameter risk by at most oscillation * delta.
inline HingeReport verify_hinge(const Experiment& e, const Experiment& f,
                                const std::vector<DecisionProblem>& problems,
                                const std::vector<DecisionRule>& rules_on_f) {
    require_shared_parameters(e, f, "verify_hinge");
    DeficiencyReport rep = deficiency(e, f);
    HingeReport h;
    h.delta = rep.value;
    double max_osc = 0.0;
    for (const auto& dp : problems) max_osc = std::max(max_osc, dp.oscillation());
    h.bound = max_osc * rep.value;
    h.holds = true;
    for (const auto& dp : problems) {
        for (const auto& rule : rules_on_f) {
            std::vector<double> rf = risk(f, rule, dp);
            std::vector<double> re = risk(e, transfer_rule(rule, rep.witness), dp);
            for (std::size_t th = 0; th < rf.size(); ++th) {
                double gap = std::abs(re[th] - rf[th]);
                h.max_gap = std::max(h.max_gap, gap);
                if (gap > dp.oscillation() * rep.value + 1e-7) h.holds = false;
            }
            ++h.rules_checked;
        }
    }
    return h;
}

struct CertificateReport {
    std::size_t decision_class_size = 0;
    double delta_hat = 0.0;
    std::size_t worst_problem = 0;   // index of the maximizing (problem, rule) entry
    std::vector<double> per_problem_gaps;
    double epsilon = 0.0;
    bool epsilon_simulable = false;
};

/// Empirical deficiency-gap certificate over an explicit finite decision
/// class. Frequency tables are normalized into empirical distributions; the
/// class is a list of (problem, rule-on-source, rule-on-target) entries and
/// delta_hat is the largest per-parameter risk difference across the class.
struct ClassEntry {
    DecisionProblem problem;
    DecisionRule rule_source;
    DecisionRule rule_target;
};

inline Experiment experiment_from_frequencies(const std::string& name,
                                              const std::vector<std::string>& parameters,
                                              const std::vector<std::string>& outcomes,
                                              const std::vector<std::vector<double>>& counts) {
    std::vector<std::vector<double>> rows;
    for (const auto& c : counts) {
        double tot = 0.0;
        for (double v : c) {
            if (!(v >= 0.0)) throw validation_error("frequency table: negative count");
            tot += v;
        }
        if (tot <= 0.0) throw validation_error("frequency table: empty row for some parameter");
        std::vector<double> row;
        row.reserve(c.size());
        for (double v : c) row.push_back(v / tot);
        rows.push_back(std::move(row));
    }
    return Experiment(name, parameters, outcomes, std::move(rows));
}

inline CertificateReport empirical_deficiency_gap(const Experiment& source,
                                                  const Experiment& target,
                                                  const std::vector<ClassEntry>& decision_class,
                                                  double epsilon) {
    require_shared_parameters(source, target, "empirical_deficiency_gap");
    if (decision_class.empty())
        throw validation_error("empirical_deficiency_gap: empty decision class");
    CertificateReport rep;
    rep.decision_class_size = decision_class.size();
    rep.epsilon = epsilon;
    for (std::size_t i = 0; i < decision_class.size(); ++i) {
        const auto& entry = decision_class[i];
        std::vector<double> rs = risk(source, entry.rule_source, entry.problem);
        std::vector<double> rt = risk(target, entry.rule_target, entry.problem);
        double gap = 0.0;
        for (std::size_t th = 0; th < rs.size(); ++th)
            gap = std::max(gap, std::abs(rs[th] - rt[th]));
        rep.per_problem_gaps.push_back(gap);
        if (gap > rep.delta_hat) {
            rep.delta_hat = gap;
            rep.worst_problem = i;
        }
    }
    rep.epsilon_simulable = rep.delta_hat <= epsilon;
    return rep;
}

}  // namespace lecam

#endif  // LECAM_DECISION_HPP
