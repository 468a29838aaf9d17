#pragma once

// Compositional scoring: OR takes the easiest child, AND the hardest, and SAND
// bounds the precondition family by its execution step after the step's
// attack complexity has been conditioned on the family's majority label.

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "adtree/cvss.hpp"
#include "adtree/model.hpp"
#include "adtree/scenario_state.hpp"

namespace adtree {

/// Exploitability of a subtree. Carries no impact term; impact enters once,
/// at the goal.
struct NodeScore {
    double e = 0.0;
    std::vector<AttackComplexity> ac_labels;  // one per leaf occurrence, post-treatment
    std::vector<std::string> leaves;          // same order as ac_labels
};

struct SandScore {
    double e_pre = 0.0;
    AttackComplexity ac_maj = AttackComplexity::High;
    double e_exec_star = 0.0;
    double e_path = 0.0;
};

struct PathScore {
    std::string branch;
    std::optional<double> e_pre;  // set when the path is a SAND
    std::optional<AttackComplexity> ac_maj;
    std::optional<double> e_exec_star;
    double e_path = 0.0;
    ImpactTriple impact;
    double impact_subscore = 0.0;
    double base = 0.0;
    Severity severity = Severity::None;
};

/// L iff strictly more L than H labels; ties go to H. Throws
/// std::invalid_argument on an empty family.
AttackComplexity majority_ac(std::span<const AttackComplexity> labels);

/// V*: AV/PR/UI from `exec_vector` hardened by `exec_transforms`; AC is the
/// majority label unless a transform hardened AC, in which case the harder
/// of the two wins.
MetricVector condition_execution(const MetricVector& exec_vector, AttackComplexity ac_maj,
                                 std::span<const Transform> exec_transforms);

// Aggregation primitives.
double or_combine(std::span<const double> children);
double and_combine(std::span<const double> children);
double sand_combine(double e_pre, double e_exec_star);

/// Scores the nodes of one goal tree under one scenario. Both arguments must
/// outlive the evaluator.
class Evaluator {
public:
    Evaluator(const Goal& goal, const ScenarioState& state);

    /// `conditioning` is the majority label exported by an enclosing SAND when
    /// the node lies on its execution side.
    NodeScore score_node(const Node& node, std::optional<AttackComplexity> conditioning = std::nullopt) const;
    SandScore score_sand(const Node& sand, std::optional<AttackComplexity> conditioning = std::nullopt) const;

    /// Scores `node` as a complete path and applies the goal impact.
    PathScore score_path(const Node& node, std::string branch) const;
    PathScore score_goal() const;
    /// One row per alternative under the goal's top-level OR, or a single row
    /// when the goal has one path.
    std::vector<PathScore> score_branches() const;

    /// Branch nodes paired with their display names.
    std::vector<std::pair<const Node*, std::string>> branches() const;

    /// Worst-case candidate of a leaf after this scenario's transforms.
    LeafExploitability treated_leaf(const Node& leaf, std::optional<AttackComplexity> conditioning) const;

    const TreeIndex& index() const { return index_; }

private:
    const Goal& goal_;
    const ScenarioState& state_;
    TreeIndex index_;
};

PathScore score_goal(const Goal& goal, const ScenarioState& state);
std::vector<PathScore> score_branches(const Goal& goal, const ScenarioState& state);

std::string branch_name(const Node& node, std::size_t position);

}  // namespace adtree
