#pragma once

// Attack-defense tree data model: goals, connectors, leaves with candidate
// CVE vectors, controls and scenarios.

#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "adtree/cvss.hpp"
#include "adtree/diagnostic.hpp"

namespace adtree {

struct CveRef {
    std::string id;
    MetricVector vector;
    std::optional<std::string> note;
    SourceSpan span;

    AttackComplexity ac_label() const { return vector.ac; }

    friend bool operator==(const CveRef& a, const CveRef& b) {
        return a.id == b.id && a.vector == b.vector && a.note == b.note;
    }
};

enum class NodeKind { Leaf, Or, And, Sand, Ref };

std::string_view node_kind_name(NodeKind k);

/// One node of a goal tree.
///
/// Or/And hold their alternatives in `children`; Sand holds exactly two
/// children, the precondition subtree then the execution subtree. A Ref names
/// a leaf or labelled connector defined elsewhere in the same tree, which is
/// how shared subtrees (a common precondition family) are expressed.
struct Node {
    NodeKind kind = NodeKind::Leaf;
    std::string name;  // leaf name, optional connector label, or Ref target
    std::vector<Node> children;
    std::vector<CveRef> candidates;    // Leaf only
    std::vector<std::string> defenses; // Leaf only: controls that may be applied here
    SourceSpan span;

    static Node leaf(std::string name, std::vector<CveRef> candidates, std::vector<std::string> defenses = {});
    static Node any_of(std::vector<Node> children, std::string label = {});
    static Node all_of(std::vector<Node> children, std::string label = {});
    static Node sand(Node pre, Node exec, std::string label = {});
    static Node ref(std::string target);

    bool is_connector() const { return kind == NodeKind::Or || kind == NodeKind::And || kind == NodeKind::Sand; }
    const Node& pre() const { return children.at(0); }
    const Node& exec() const { return children.at(1); }

    friend bool operator==(const Node& a, const Node& b) {
        return a.kind == b.kind && a.name == b.name && a.children == b.children && a.candidates == b.candidates &&
               a.defenses == b.defenses;
    }
};

struct Goal {
    std::string name;
    ImpactTriple impact;
    Node root;
    SourceSpan span;

    friend bool operator==(const Goal& a, const Goal& b) {
        return a.name == b.name && a.impact == b.impact && a.root == b.root;
    }
};

/// Hardening of one metric, e.g. PR: L -> H. Levels are hardness ranks.
struct Transform {
    Metric metric = Metric::AC;
    int from = 0;
    int to = 1;

    bool hardens() const { return to > from; }
    std::string to_string() const;

    friend bool operator==(const Transform&, const Transform&) = default;
};

enum class ControlClass { Preventive, Detective };

struct Control {
    std::string name;
    ControlClass cls = ControlClass::Preventive;
    int cost = 1;  // ordinal level 1..4
    std::vector<Transform> transforms;
    SourceSpan span;

    friend bool operator==(const Control& a, const Control& b) {
        return a.name == b.name && a.cls == b.cls && a.cost == b.cost && a.transforms == b.transforms;
    }
};

struct Target {
    std::string node;
    bool exec = false;  // exec(NAME): the whole execution subtree rooted at NAME

    std::string to_string() const { return exec ? "exec(" + node + ")" : node; }

    friend bool operator==(const Target&, const Target&) = default;
};

struct Application {
    std::string control;
    Target target;
    SourceSpan span;

    friend bool operator==(const Application& a, const Application& b) {
        return a.control == b.control && a.target == b.target;
    }
};

struct Scenario {
    std::string name;
    std::vector<Application> applications;
    SourceSpan span;

    friend bool operator==(const Scenario& a, const Scenario& b) {
        return a.name == b.name && a.applications == b.applications;
    }
};

struct Model {
    std::string name;
    std::map<std::string, Control> controls;
    std::vector<Goal> goals;
    std::vector<Scenario> scenarios;

    const Goal* find_goal(std::string_view name) const;
    const Scenario* find_scenario(std::string_view name) const;
    const Control* find_control(std::string_view name) const;

    friend bool operator==(const Model& a, const Model& b) {
        return a.name == b.name && a.controls == b.controls && a.goals == b.goals && a.scenarios == b.scenarios;
    }
};

/// Name lookup for one goal tree. Holds pointers into the goal, so the goal
/// must outlive the index and stay unmodified.
class TreeIndex {
public:
    explicit TreeIndex(const Goal& goal);

    /// Leaf or labelled connector with this name; nullptr if absent.
    const Node* find(std::string_view name) const;
    /// Follows a Ref to its definition; other nodes are returned unchanged.
    /// Returns nullptr for an unresolved Ref.
    const Node* resolve(const Node& node) const;

    /// Leaf definitions reachable from `node`, refs expanded, each listed once.
    std::vector<const Node*> leaves_under(const Node& node) const;
    /// Names of nodes that sit somewhere inside the execution subtree of a Sand.
    const std::set<std::string>& exec_positioned() const { return exec_positioned_; }
    const std::vector<std::string>& duplicate_names() const { return duplicates_; }
    bool has_cycle() const { return has_cycle_; }

private:
    void collect(const Node& node);
    void mark_exec(const Node& node, bool in_exec, std::vector<const Node*>& stack);

    std::map<std::string, const Node*, std::less<>> by_name_;
    std::set<std::string> exec_positioned_;
    std::vector<std::string> duplicates_;
    bool has_cycle_ = false;
};

/// Structural validation; empty iff every model invariant holds.
std::vector<Diagnostic> validate(const Model& model);

struct LeafExploitability {
    double e = 0.0;
    AttackComplexity ac_label = AttackComplexity::Low;
};

/// Worst case over the leaf's candidates; on equal E the Low label wins.
/// Throws std::invalid_argument for a leaf without candidates.
LeafExploitability leaf_exploitability(const Node& leaf);

bool is_cve_id(std::string_view id);

}  // namespace adtree
