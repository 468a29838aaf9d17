#include "adtree/model.hpp"

#include <algorithm>
#include <cctype>
#include <stdexcept>

namespace adtree {

std::string_view node_kind_name(NodeKind k) {
    switch (k) {
    case NodeKind::Leaf: return "leaf";
    case NodeKind::Or: return "or";
    case NodeKind::And: return "and";
    case NodeKind::Sand: return "sand";
    case NodeKind::Ref: return "ref";
    }
    return "?";
}

Node Node::leaf(std::string name, std::vector<CveRef> candidates, std::vector<std::string> defenses) {
    Node n;
    n.kind = NodeKind::Leaf;
    n.name = std::move(name);
    n.candidates = std::move(candidates);
    n.defenses = std::move(defenses);
    return n;
}

Node Node::any_of(std::vector<Node> children, std::string label) {
    Node n;
    n.kind = NodeKind::Or;
    n.name = std::move(label);
    n.children = std::move(children);
    return n;
}

Node Node::all_of(std::vector<Node> children, std::string label) {
    Node n;
    n.kind = NodeKind::And;
    n.name = std::move(label);
    n.children = std::move(children);
    return n;
}

Node Node::sand(Node pre, Node exec, std::string label) {
    Node n;
    n.kind = NodeKind::Sand;
    n.name = std::move(label);
    n.children.push_back(std::move(pre));
    n.children.push_back(std::move(exec));
    return n;
}

Node Node::ref(std::string target) {
    Node n;
    n.kind = NodeKind::Ref;
    n.name = std::move(target);
    return n;
}

std::string Transform::to_string() const {
    std::string out(metric_name(metric));
    out += ':';
    out += level_code(metric, from);
    out += "->";
    out += level_code(metric, to);
    return out;
}

const Goal* Model::find_goal(std::string_view n) const {
    for (const auto& g : goals) {
        if (g.name == n) return &g;
    }
    return nullptr;
}

const Scenario* Model::find_scenario(std::string_view n) const {
    for (const auto& s : scenarios) {
        if (s.name == n) return &s;
    }
    return nullptr;
}

const Control* Model::find_control(std::string_view n) const {
    const auto it = controls.find(std::string(n));
    return it == controls.end() ? nullptr : &it->second;
}

TreeIndex::TreeIndex(const Goal& goal) {
    collect(goal.root);
    std::vector<const Node*> stack;
    mark_exec(goal.root, false, stack);
}

void TreeIndex::collect(const Node& node) {
    const bool named = node.kind == NodeKind::Leaf || (node.is_connector() && !node.name.empty());
    if (named) {
        const auto [it, inserted] = by_name_.emplace(node.name, &node);
        if (!inserted) duplicates_.push_back(node.name);
    }
    for (const auto& child : node.children) collect(child);
}

void TreeIndex::mark_exec(const Node& node, bool in_exec, std::vector<const Node*>& stack) {
    const Node* def = resolve(node);
    if (def == nullptr) return;
    if (std::find(stack.begin(), stack.end(), def) != stack.end()) {
        has_cycle_ = true;
        return;
    }
    if (in_exec && !def->name.empty()) exec_positioned_.insert(def->name);
    stack.push_back(def);
    if (def->kind == NodeKind::Sand && def->children.size() == 2) {
        mark_exec(def->children[0], in_exec, stack);
        mark_exec(def->children[1], true, stack);
    } else {
        for (const auto& child : def->children) mark_exec(child, in_exec, stack);
    }
    stack.pop_back();
}

const Node* TreeIndex::find(std::string_view name) const {
    const auto it = by_name_.find(name);
    return it == by_name_.end() ? nullptr : it->second;
}

const Node* TreeIndex::resolve(const Node& node) const {
    if (node.kind != NodeKind::Ref) return &node;
    const Node* target = find(node.name);
    if (target == nullptr || target->kind == NodeKind::Ref) return nullptr;
    return target;
}

std::vector<const Node*> TreeIndex::leaves_under(const Node& node) const {
    std::vector<const Node*> out;
    std::vector<const Node*> stack;
    auto visit = [&](auto&& self, const Node& n) -> void {
        const Node* def = resolve(n);
        if (def == nullptr || std::find(stack.begin(), stack.end(), def) != stack.end()) return;
        if (def->kind == NodeKind::Leaf) {
            if (std::find(out.begin(), out.end(), def) == out.end()) out.push_back(def);
            return;
        }
        stack.push_back(def);
        for (const auto& child : def->children) self(self, child);
        stack.pop_back();
    };
    visit(visit, node);
    return out;
}

LeafExploitability leaf_exploitability(const Node& leaf) {
    if (leaf.kind != NodeKind::Leaf || leaf.candidates.empty()) {
        throw std::invalid_argument("leaf '" + leaf.name + "' has no candidate vectors");
    }
    LeafExploitability best{-1.0, AttackComplexity::High};
    for (const auto& c : leaf.candidates) {
        const double e = exploitability(c.vector);
        if (e > best.e || (e == best.e && c.ac_label() == AttackComplexity::Low)) {
            best = {e, c.ac_label()};
        }
    }
    return best;
}

bool is_cve_id(std::string_view id) {
    // CVE-YYYY-NNNN+
    if (id.size() < 13 || id.substr(0, 4) != "CVE-") return false;
    auto digits = [](std::string_view s) {
        return !s.empty() && std::all_of(s.begin(), s.end(), [](char ch) { return std::isdigit(static_cast<unsigned char>(ch)); });
    };
    if (!digits(id.substr(4, 4)) || id[8] != '-') return false;
    return digits(id.substr(9)) && id.size() - 9 >= 4;
}

}  // namespace adtree
