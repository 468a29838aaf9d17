#pragma once

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "adtree/model.hpp"

namespace adtree {

class EvaluationError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct TransformOutcome {
    MetricVector vector;
    bool applied = false;
    std::optional<std::string> warning;  // set when the transform did not apply
};

/// Replaces one metric when it currently equals `t.from`. Otherwise the
/// vector comes back unchanged with a warning. Throws std::invalid_argument
/// for a transform that would loosen the metric.
TransformOutcome apply_transform(const MetricVector& v, const Transform& t);

struct AppliedControl {
    std::string control;
    Target target;
    ControlClass cls = ControlClass::Preventive;
    int cost = 1;
};

/// The merged effect of one scenario on one goal tree.
struct ScenarioState {
    std::string name = "Baseline";
    std::map<std::string, std::vector<Transform>, std::less<>> leaf_transforms;  // one per metric, metric order
    std::vector<AppliedControl> applied;
    std::vector<std::string> detective_notes;

    const std::vector<Transform>& transforms_for(std::string_view leaf) const;
    bool is_baseline() const { return applied.empty(); }
};

ScenarioState baseline_state();

/// Resolves every application against `goal` and merges the transforms per
/// leaf. Throws EvaluationError for an unknown control, a target outside the
/// goal, or conflicting transforms.
ScenarioState make_state(const Model& model, const Goal& goal, const Scenario& scenario);

}  // namespace adtree
