#include "adtree/engine.hpp"

#include <algorithm>
#include <stdexcept>

namespace adtree {

AttackComplexity majority_ac(std::span<const AttackComplexity> labels) {
    if (labels.empty()) throw std::invalid_argument("majority AC of an empty precondition family");
    const auto low = std::count(labels.begin(), labels.end(), AttackComplexity::Low);
    const auto high = static_cast<std::ptrdiff_t>(labels.size()) - low;
    return low > high ? AttackComplexity::Low : AttackComplexity::High;
}

MetricVector condition_execution(const MetricVector& exec_vector, AttackComplexity ac_maj,
                                 std::span<const Transform> exec_transforms) {
    MetricVector v = exec_vector;
    bool ac_hardened = false;
    for (const auto& t : exec_transforms) {
        const auto out = apply_transform(v, t);
        if (out.applied && t.metric == Metric::AC) ac_hardened = true;
        v = out.vector;
    }
    v.ac = ac_hardened ? harder(ac_maj, v.ac) : ac_maj;
    return v;
}

double or_combine(std::span<const double> children) {
    if (children.empty()) throw std::invalid_argument("OR over no children");
    return *std::max_element(children.begin(), children.end());
}

double and_combine(std::span<const double> children) {
    if (children.empty()) throw std::invalid_argument("AND over no children");
    return *std::min_element(children.begin(), children.end());
}

double sand_combine(double e_pre, double e_exec_star) { return std::min(e_pre, e_exec_star); }

Evaluator::Evaluator(const Goal& goal, const ScenarioState& state) : goal_(goal), state_(state), index_(goal) {}

LeafExploitability Evaluator::treated_leaf(const Node& leaf, std::optional<AttackComplexity> conditioning) const {
    if (leaf.candidates.empty()) throw std::invalid_argument("leaf '" + leaf.name + "' has no candidates");
    const auto& transforms = state_.transforms_for(leaf.name);
    LeafExploitability best{-1.0, AttackComplexity::High};
    for (const auto& c : leaf.candidates) {
        MetricVector v;
        if (conditioning) {
            v = condition_execution(c.vector, *conditioning, transforms);
        } else {
            v = c.vector;
            for (const auto& t : transforms) v = apply_transform(v, t).vector;
        }
        const double e = exploitability(v);
        if (e > best.e || (e == best.e && v.ac == AttackComplexity::Low)) best = {e, v.ac};
    }
    return best;
}

NodeScore Evaluator::score_node(const Node& node, std::optional<AttackComplexity> conditioning) const {
    const Node* def = index_.resolve(node);
    if (def == nullptr) throw std::invalid_argument("unresolved reference '" + node.name + "'");

    NodeScore out;
    switch (def->kind) {
    case NodeKind::Leaf: {
        const auto leaf = treated_leaf(*def, conditioning);
        out.e = leaf.e;
        out.ac_labels.push_back(leaf.ac_label);
        out.leaves.push_back(def->name);
        return out;
    }
    case NodeKind::Or:
    case NodeKind::And: {
        std::vector<double> values;
        for (const auto& child : def->children) {
            auto s = score_node(child, conditioning);
            values.push_back(s.e);
            out.ac_labels.insert(out.ac_labels.end(), s.ac_labels.begin(), s.ac_labels.end());
            out.leaves.insert(out.leaves.end(), s.leaves.begin(), s.leaves.end());
        }
        out.e = def->kind == NodeKind::Or ? or_combine(values) : and_combine(values);
        return out;
    }
    case NodeKind::Sand: {
        const auto pre = score_node(def->pre(), conditioning);
        const auto exec = score_node(def->exec(), majority_ac(pre.ac_labels));
        out.e = sand_combine(pre.e, exec.e);
        out.ac_labels = pre.ac_labels;
        out.ac_labels.insert(out.ac_labels.end(), exec.ac_labels.begin(), exec.ac_labels.end());
        out.leaves = pre.leaves;
        out.leaves.insert(out.leaves.end(), exec.leaves.begin(), exec.leaves.end());
        return out;
    }
    case NodeKind::Ref:
        break;
    }
    throw std::logic_error("unreachable node kind");
}

SandScore Evaluator::score_sand(const Node& sand, std::optional<AttackComplexity> conditioning) const {
    const Node* def = index_.resolve(sand);
    if (def == nullptr || def->kind != NodeKind::Sand) throw std::invalid_argument("not a SAND node");
    const auto pre = score_node(def->pre(), conditioning);
    SandScore out;
    out.e_pre = pre.e;
    out.ac_maj = majority_ac(pre.ac_labels);
    out.e_exec_star = score_node(def->exec(), out.ac_maj).e;
    out.e_path = sand_combine(out.e_pre, out.e_exec_star);
    return out;
}

PathScore Evaluator::score_path(const Node& node, std::string branch) const {
    const Node* def = index_.resolve(node);
    if (def == nullptr) throw std::invalid_argument("unresolved reference '" + node.name + "'");
    PathScore out;
    out.branch = std::move(branch);
    if (def->kind == NodeKind::Sand) {
        const auto s = score_sand(*def);
        out.e_pre = s.e_pre;
        out.ac_maj = s.ac_maj;
        out.e_exec_star = s.e_exec_star;
        out.e_path = s.e_path;
    } else if (def->kind == NodeKind::Leaf) {
        const auto leaf = treated_leaf(*def, std::nullopt);
        out.ac_maj = leaf.ac_label;
        out.e_path = leaf.e;
    } else {
        out.e_path = score_node(*def).e;
    }
    out.impact = goal_.impact;
    out.impact_subscore = impact_subscore(goal_.impact);
    const auto base = base_score(out.e_path, goal_.impact);
    out.base = base.value;
    out.severity = base.severity;
    return out;
}

PathScore Evaluator::score_goal() const { return score_path(goal_.root, goal_.name); }

std::vector<std::pair<const Node*, std::string>> Evaluator::branches() const {
    std::vector<std::pair<const Node*, std::string>> out;
    const Node* root = index_.resolve(goal_.root);
    if (root != nullptr && root->kind == NodeKind::Or) {
        for (std::size_t i = 0; i < root->children.size(); ++i) {
            out.emplace_back(&root->children[i], branch_name(root->children[i], i));
        }
    } else {
        out.emplace_back(&goal_.root, goal_.name);
    }
    return out;
}

std::vector<PathScore> Evaluator::score_branches() const {
    std::vector<PathScore> out;
    for (const auto& [node, name] : branches()) out.push_back(score_path(*node, name));
    return out;
}

PathScore score_goal(const Goal& goal, const ScenarioState& state) { return Evaluator(goal, state).score_goal(); }

std::vector<PathScore> score_branches(const Goal& goal, const ScenarioState& state) {
    return Evaluator(goal, state).score_branches();
}

std::string branch_name(const Node& node, std::size_t position) {
    return node.name.empty() ? "B" + std::to_string(position + 1) : node.name;
}

}  // namespace adtree
