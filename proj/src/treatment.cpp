#include "adtree/treatment.hpp"

#include <algorithm>
#include <cmath>
#include <set>

namespace adtree {

namespace {

// Exploitability values that differ only by floating-point association order
// rank as ties.
constexpr double kTieTolerance = 1e-9;

std::set<std::string> names_under(const TreeIndex& index, const Node& node) {
    std::set<std::string> out;
    std::vector<const Node*> stack;
    auto visit = [&](auto&& self, const Node& n) -> void {
        const Node* def = index.resolve(n);
        if (def == nullptr || std::find(stack.begin(), stack.end(), def) != stack.end()) return;
        if (!def->name.empty()) out.insert(def->name);
        stack.push_back(def);
        for (const auto& c : def->children) self(self, c);
        stack.pop_back();
    };
    visit(visit, node);
    return out;
}

TreatmentReport evaluate_with_focus(const Model& model, const Goal& goal, const Scenario& scenario,
                                    const Focus& focus) {
    const ScenarioState state = make_state(model, goal, scenario);
    const ScenarioState baseline = baseline_state();

    TreatmentReport report;
    report.scenario = scenario.name;
    report.branch = focus.name;
    report.applied = state.applied;
    report.baseline = Evaluator(goal, baseline).score_path(*focus.node, focus.name);
    report.treated = Evaluator(goal, state).score_path(*focus.node, focus.name);
    report.delta_e = report.baseline.e_path - report.treated.e_path;
    for (const auto& a : state.applied) {
        report.cost_sum += a.cost;
        if (!report.cost_range) {
            report.cost_range = CostRange{a.cost, a.cost};
        } else {
            report.cost_range->min = std::min(report.cost_range->min, a.cost);
            report.cost_range->max = std::max(report.cost_range->max, a.cost);
        }
    }
    report.notes = state.detective_notes;
    const auto warnings = transform_warnings(goal, state);
    report.notes.insert(report.notes.end(), warnings.begin(), warnings.end());
    return report;
}

}  // namespace

Focus resolve_focus(const Goal& goal, std::span<const Scenario* const> scenarios,
                    const std::optional<std::string>& branch) {
    const ScenarioState none = baseline_state();
    const Evaluator evaluator(goal, none);
    const auto branches = evaluator.branches();
    if (branch) {
        if (*branch == goal.name) return {&goal.root, goal.name};
        for (const auto& [node, name] : branches) {
            if (name == *branch) return {node, name};
        }
        if (const Node* node = evaluator.index().find(*branch)) return {node, *branch};
        throw EvaluationError("goal " + goal.name + " has no branch or node named '" + *branch + "'");
    }

    std::set<std::string> targets;
    for (const Scenario* s : scenarios) {
        for (const auto& app : s->applications) targets.insert(app.target.node);
    }
    if (!targets.empty() && branches.size() > 1) {
        std::vector<Focus> candidates;
        for (const auto& [node, name] : branches) {
            const auto names = names_under(evaluator.index(), *node);
            if (std::includes(names.begin(), names.end(), targets.begin(), targets.end())) {
                candidates.push_back({node, name});
            }
        }
        if (candidates.size() == 1) return candidates.front();
    }
    return {&goal.root, goal.name};
}

std::vector<std::string> transform_warnings(const Goal& goal, const ScenarioState& state) {
    std::vector<std::string> out;
    const TreeIndex index(goal);
    for (const auto& [leaf_name, transforms] : state.leaf_transforms) {
        const Node* leaf = index.find(leaf_name);
        if (leaf == nullptr) continue;
        for (const auto& c : leaf->candidates) {
            MetricVector v = c.vector;
            for (const auto& t : transforms) {
                const auto result = apply_transform(v, t);
                if (result.warning) out.push_back(leaf_name + " [" + c.id + "]: " + *result.warning);
                v = result.vector;
            }
        }
    }
    return out;
}

TreatmentReport baseline_report(const Goal& goal, const Focus& focus) {
    const ScenarioState baseline = baseline_state();
    TreatmentReport report;
    report.scenario = "Baseline";
    report.branch = focus.name;
    report.baseline = Evaluator(goal, baseline).score_path(*focus.node, focus.name);
    report.treated = report.baseline;
    return report;
}

TreatmentReport evaluate_scenario(const Model& model, const Goal& goal, const Scenario& scenario,
                                  const std::optional<std::string>& branch) {
    const Scenario* one[] = {&scenario};
    return evaluate_with_focus(model, goal, scenario, resolve_focus(goal, one, branch));
}

std::vector<TreatmentReport> compare_scenarios(const Model& model, const Goal& goal,
                                               std::span<const Scenario* const> scenarios,
                                               const std::optional<std::string>& branch) {
    const Focus focus = resolve_focus(goal, scenarios, branch);
    std::vector<TreatmentReport> rows;
    for (const Scenario* s : scenarios) rows.push_back(evaluate_with_focus(model, goal, *s, focus));
    std::stable_sort(rows.begin(), rows.end(), [](const TreatmentReport& a, const TreatmentReport& b) {
        const double diff = a.treated.e_path - b.treated.e_path;
        if (std::abs(diff) > kTieTolerance) return diff < 0;
        if (a.cost_sum != b.cost_sum) return a.cost_sum < b.cost_sum;
        return a.scenario < b.scenario;
    });
    rows.insert(rows.begin(), baseline_report(goal, focus));
    return rows;
}

}  // namespace adtree
