#ifndef LECAM_JSON_IO_HPP
#define LECAM_JSON_IO_HPP

#include <cstdio>
#include <map>
#include <string>
#include <vector>

#include <json.hpp>

#include "lecam/composition.hpp"
#include "lecam/core.hpp"
#include "lecam/decision.hpp"
#include "lecam/deficiency.hpp"
#include "lecam/gaussian.hpp"
#include "lecam/hierarchy.hpp"
#include "lecam/shannon.hpp"

namespace lecam {

using nlohmann::json;  // plain json: object keys stay sorted

/// Format a double with 17 significant digits, enough to round-trip any
/// binary64 value exactly.
inline std::string format_real(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

/// Canonical serialization: sorted object keys (json's storage order) and
/// fixed %.17g float formatting, so identical values give identical bytes on
/// every platform.
inline void canonical_dump(const json& j, std::string& out) {
    switch (j.type()) {
        case json::value_t::object: {
            out += '{';
            bool first = true;
            for (auto it = j.begin(); it != j.end(); ++it) {
                if (!first) out += ',';
                first = false;
                out += json(it.key()).dump();
                out += ':';
                canonical_dump(it.value(), out);
            }
            out += '}';
            break;
        }
        case json::value_t::array: {
            out += '[';
            for (std::size_t i = 0; i < j.size(); ++i) {
                if (i) out += ',';
                canonical_dump(j[i], out);
            }
            out += ']';
            break;
        }
        case json::value_t::number_float:
            out += format_real(j.get<double>());
            break;
        default:
            out += j.dump();
            break;
    }
}

inline std::string canonical_dump(const json& j) {
    std::string out;
    canonical_dump(j, out);
    return out;
}

struct ParseDiagnostics {
    std::size_t line = 0;
    std::size_t column = 0;
    std::string message;
};

/// Parse with line/column diagnostics on failure.
inline json parse_json(const std::string& text) {
    try {
        return json::parse(text);
    } catch (const json::parse_error& e) {
        // nlohmann reports a byte offset; convert it to line:column
        std::size_t line = 1, col = 1;
        for (std::size_t i = 0; i + 1 < e.byte && i < text.size(); ++i) {
            if (text[i] == '\n') {
                ++line;
                col = 1;
            } else {
                ++col;
            }
        }
        throw validation_error("JSON parse error at line " + std::to_string(line) + ", column " +
                               std::to_string(col) + ": " + e.what());
    }
}

// ---- core types ----

inline json to_json(const Experiment& e) {
    return json{{"name", e.name},
                {"parameters", e.parameters},
                {"outcomes", e.outcomes},
                {"rows", e.rows}};
}

inline Experiment experiment_from_json(const json& j) {
    try {
        return Experiment(j.value("name", std::string("experiment")),
                          j.at("parameters").get<std::vector<std::string>>(),
                          j.at("outcomes").get<std::vector<std::string>>(),
                          j.at("rows").get<std::vector<std::vector<double>>>());
    } catch (const json::exception& e) {
        throw validation_error(std::string("experiment JSON: ") + e.what());
    }
}

inline json to_json(const Kernel& k) {
    return json{{"from_outcomes", k.from_outcomes},
                {"to_outcomes", k.to_outcomes},
                {"matrix", k.matrix}};
}

inline Kernel kernel_from_json(const json& j) {
    try {
        return Kernel(j.at("from_outcomes").get<std::vector<std::string>>(),
                      j.at("to_outcomes").get<std::vector<std::string>>(),
                      j.at("matrix").get<std::vector<std::vector<double>>>());
    } catch (const json::exception& e) {
        throw validation_error(std::string("kernel JSON: ") + e.what());
    }
}

/// Deterministic map file: {"map": {from: to, ...}, "from_outcomes": [...],
/// optional "to_outcomes": [...]}.
inline DeterministicMap map_from_json(const json& j) {
    try {
        auto mapping = j.at("map").get<std::map<std::string, std::string>>();
        auto from = j.at("from_outcomes").get<std::vector<std::string>>();
        std::vector<std::string> to;
        if (j.contains("to_outcomes")) to = j.at("to_outcomes").get<std::vector<std::string>>();
        return DeterministicMap::from_pairs(from, mapping, std::move(to));
    } catch (const json::exception& e) {
        throw validation_error(std::string("map JSON: ") + e.what());
    }
}

inline json to_json(const DecisionProblem& dp) {
    return json{{"actions", dp.actions}, {"loss", dp.loss}, {"bounds", {dp.lo, dp.hi}}};
}

inline DecisionProblem decision_problem_from_json(const json& j) {
    try {
        double lo = 0.0, hi = 1.0;
        if (j.contains("bounds")) {
            lo = j.at("bounds").at(0).get<double>();
            hi = j.at("bounds").at(1).get<double>();
        }
        return DecisionProblem(j.at("actions").get<std::vector<std::string>>(),
                               j.at("loss").get<std::vector<std::vector<double>>>(), lo, hi);
    } catch (const json::exception& e) {
        throw validation_error(std::string("decision problem JSON: ") + e.what());
    }
}

inline ChainSpec chain_from_json(const json& j) {
    try {
        ChainSpec spec;
        spec.base = experiment_from_json(j.at("base"));
        for (const auto& k : j.at("ideal")) spec.ideal.push_back(kernel_from_json(k));
        for (const auto& k : j.at("approx")) spec.approx.push_back(kernel_from_json(k));
        spec.validate();
        return spec;
    } catch (const json::exception& e) {
        throw validation_error(std::string("chain JSON: ") + e.what());
    }
}

// ---- reports ----

inline json to_json(const DeficiencyReport& r) {
    return json{{"value", r.value},
                {"lp_objective", r.lp_objective},
                {"witness", to_json(r.witness)},
                {"direction", {r.source, r.target}},
                {"solver_status", r.solver_status},
                {"iterations", r.iterations}};
}

inline json to_json(const NftReport& r) {
    return json{{"source_fidelity", r.source_fidelity},
                {"target_fidelity", r.target_fidelity},
                {"invariance_error", r.invariance_error},
                {"task_gap", r.task_gap},
                {"holds", r.holds}};
}

inline json to_json(const CompositionReport& r) {
    return json{{"delta_total", r.delta_total},
                {"per_step_eps", r.per_step_eps},
                {"eps_sum", r.eps_sum},
                {"holds", r.holds}};
}

// +infinity (possible for likelihood distortion) is not representable in
// JSON numbers; encode it as the string "infinity"
inline json real_or_infinity(double v) {
    if (std::isfinite(v)) return v;
    return "infinity";
}

inline json to_json(const HierarchyReport& r) {
    return json{
        {"sufficiency",
         {{"holds", r.sufficiency.holds},
          {"max_deviation", r.sufficiency.max_deviation},
          {"worst_image", r.sufficiency.worst_image},
          {"skipped_images", r.sufficiency.skipped_images}}},
        {"likelihood_distortion", real_or_infinity(r.likelihood_distortion)},
        {"testing",
         {{"max_pairwise_deficiency", r.testing.max_pairwise_deficiency},
          {"argmax_pair", {r.testing.argmax_pair.first, r.testing.argmax_pair.second}}}},
        {"delta_forward", r.delta_forward},
        {"delta_backward", r.delta_backward},
        {"delta", r.delta},
        {"eps", r.eps},
        {"levels",
         {{"sufficiency", r.sufficiency_pass},
          {"distortion", r.distortion_pass},
          {"testing", r.testing_pass},
          {"lecam", r.lecam_pass}}},
        {"nesting_consistent", r.nesting_consistent}};
}

inline json to_json(const Counterexample3Report& r) {
    return json{{"simulation_error", r.simulation_error},
                {"tv_tight", r.tv_tight},
                {"tv_wide", r.tv_wide},
                {"tv_tight_closed_form", r.tv_tight_closed_form},
                {"tv_wide_closed_form", r.tv_wide_closed_form},
                {"pairwise_deficiency_wide_to_tight", r.pairwise_deficiency_wide_to_tight},
                {"contraction_lower_bound", r.contraction_lower_bound},
                {"convention_note", r.convention_note}};
}

inline json to_json(const CodingReport& r) {
    return json{{"deficiency_value", r.deficiency_value},
                {"max_message_error", r.max_message_error},
                {"per_message_error", r.per_message_error},
                {"average_error", r.average_error}};
}

inline json to_json(const CertificateReport& r) {
    return json{{"decision_class_size", r.decision_class_size},
                {"delta_hat", r.delta_hat},
                {"worst_problem", r.worst_problem},
                {"per_problem_gaps", r.per_problem_gaps},
                {"epsilon", r.epsilon},
                {"epsilon_simulable", r.epsilon_simulable}};
}

}  // namespace lecam

#endif  // LECAM_JSON_IO_HPP
