#include <algorithm>

#include "adtree/scenario_state.hpp"

namespace adtree {

TransformOutcome apply_transform(const MetricVector& v, const Transform& t) {
    if (!t.hardens()) {
        throw std::invalid_argument("transform " + t.to_string() + " would loosen " + std::string(metric_name(t.metric)));
    }
    const int current = level(v, t.metric);
    if (current == t.from) {
        return {with_level(v, t.metric, t.to), true, std::nullopt};
    }
    const std::string at = std::string(metric_name(t.metric)) + ":" + level_code(t.metric, current);
    if (current >= t.to) {
        return {v, false, "transform " + t.to_string() + " inapplicable: " + at + " is already at or beyond the target"};
    }
    return {v, false, "transform " + t.to_string() + " inapplicable: vector has " + at};
}

const std::vector<Transform>& ScenarioState::transforms_for(std::string_view leaf) const {
    static const std::vector<Transform> kNone;
    const auto it = leaf_transforms.find(leaf);
    return it == leaf_transforms.end() ? kNone : it->second;
}

ScenarioState baseline_state() { return {}; }

ScenarioState make_state(const Model& model, const Goal& goal, const Scenario& scenario) {
    ScenarioState state;
    state.name = scenario.name;
    const TreeIndex index(goal);
    for (const auto& app : scenario.applications) {
        const Control* control = model.find_control(app.control);
        if (control == nullptr) {
            throw EvaluationError("scenario " + scenario.name + ": unresolved control '" + app.control + "'");
        }
        const Node* node = index.find(app.target.node);
        if (node == nullptr) {
            throw EvaluationError("scenario " + scenario.name + ": target '" + app.target.node +
                                  "' is not part of goal " + goal.name);
        }
        state.applied.push_back({control->name, app.target, control->cls, control->cost});
        if (control->cls == ControlClass::Detective) {
            state.detective_notes.push_back(control->name + " on " + app.target.to_string() +
                                            " is detective: it shortens detection and response but leaves "
                                            "exploitability unchanged");
            continue;
        }
        for (const Node* leaf : index.leaves_under(*node)) {
            auto& merged = state.leaf_transforms[leaf->name];
            for (const auto& t : control->transforms) {
                const auto it = std::find_if(merged.begin(), merged.end(),
                                             [&](const Transform& m) { return m.metric == t.metric; });
                if (it == merged.end()) {
                    merged.push_back(t);
                } else if (!(*it == t)) {
                    throw EvaluationError("scenario " + scenario.name + ": conflicting transforms " + it->to_string() +
                                          " and " + t.to_string() + " on leaf '" + leaf->name + "'");
                }
            }
            std::sort(merged.begin(), merged.end(),
                      [](const Transform& a, const Transform& b) { return a.metric < b.metric; });
        }
    }
    return state;
}

}  // namespace adtree
