#pragma once

// Defense scenarios as metric transforms: re-score the path, report the
// exploitability reduction and the ordinal cost of the applied controls.

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "adtree/engine.hpp"
#include "adtree/model.hpp"
#include "adtree/scenario_state.hpp"

namespace adtree {

struct CostRange {
    int min = 0;
    int max = 0;

    friend bool operator==(const CostRange&, const CostRange&) = default;
};

struct TreatmentReport {
    std::string scenario;
    std::string branch;
    std::vector<AppliedControl> applied;
    PathScore baseline;
    PathScore treated;
    double delta_e = 0.0;  // baseline e_path - treated e_path
    std::optional<CostRange> cost_range;
    int cost_sum = 0;
    std::vector<std::string> notes;
};

/// The path a treatment report describes.
struct Focus {
    const Node* node = nullptr;
    std::string name;
};

/// An explicit `branch` names the goal, a branch, or any labelled node.
/// Otherwise the focus is the single top-level branch containing every
/// target of `scenarios`, falling back to the whole goal.
Focus resolve_focus(const Goal& goal, std::span<const Scenario* const> scenarios,
                    const std::optional<std::string>& branch = std::nullopt);

/// Warnings for transforms that leave some candidate vector unchanged.
std::vector<std::string> transform_warnings(const Goal& goal, const ScenarioState& state);

TreatmentReport baseline_report(const Goal& goal, const Focus& focus);

TreatmentReport evaluate_scenario(const Model& model, const Goal& goal, const Scenario& scenario,
                                  const std::optional<std::string>& branch = std::nullopt);

/// Baseline row first, then reports by treated e_path ascending, cost_sum
/// ascending, then name. All reports share one focus.
std::vector<TreatmentReport> compare_scenarios(const Model& model, const Goal& goal,
                                               std::span<const Scenario* const> scenarios,
                                               const std::optional<std::string>& branch = std::nullopt);

}  // namespace adtree
