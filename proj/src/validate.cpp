#include <algorithm>
#include <map>
#include <set>

#include "adtree/model.hpp"

namespace adtree {

namespace {

class Validator {
public:
    explicit Validator(const Model& model) : model_(model) {}

    std::vector<Diagnostic> run() {
        check_controls();
        check_goals();
        check_scenarios();
        return std::move(diags_);
    }

private:
    void error(const SourceSpan& span, std::string code, std::string message) {
        diags_.push_back({DiagnosticSeverity::Error, span, std::move(code), std::move(message)});
    }
    void warning(const SourceSpan& span, std::string code, std::string message) {
        diags_.push_back({DiagnosticSeverity::Warning, span, std::move(code), std::move(message)});
    }

    void check_controls() {
        for (const auto& [name, control] : model_.controls) {
            const std::string where = "control " + name + ": ";
            if (control.cost < 1 || control.cost > 4) {
                error(control.span, "E-COST-RANGE", where + "cost level must be in 1..4");
            }
            if (control.cls == ControlClass::Detective && !control.transforms.empty()) {
                error(control.span, "E-DETECTIVE-TRANSFORM", where + "detective controls carry no metric transforms");
            }
            if (control.cls == ControlClass::Preventive && control.transforms.empty()) {
                error(control.span, "E-PREVENTIVE-EMPTY", where + "preventive control needs at least one transform");
            }
            std::set<Metric> seen;
            for (const auto& t : control.transforms) {
                const int n = level_count(t.metric);
                if (t.from < 0 || t.from >= n || t.to < 0 || t.to >= n) {
                    error(control.span, "E-BAD-METRIC", where + "transform level out of range");
                    continue;
                }
                if (!t.hardens()) {
                    error(control.span, "E-LOOSENING", where + "transform " + t.to_string() + " does not harden the metric");
                }
                if (!seen.insert(t.metric).second) {
                    error(control.span, "E-CONFLICT",
                          where + "more than one transform on " + std::string(metric_name(t.metric)));
                }
            }
        }
    }

    void check_goals() {
        std::set<std::string> names;
        for (const auto& goal : model_.goals) {
            if (!names.insert(goal.name).second) {
                error(goal.span, "E-DUPLICATE", "duplicate goal '" + goal.name + "'");
            }
            const auto& t = goal.impact;
            for (double x : {t.c, t.i, t.a}) {
                if (!(x >= 0.0 && x <= 1.0)) {
                    error(goal.span, "E-IMPACT-RANGE", "goal " + goal.name + ": impact components must lie in [0, 1]");
                    break;
                }
            }
            TreeIndex index(goal);
            for (const auto& dup : index.duplicate_names()) {
                error(find_span(goal.root, dup), "E-DUPLICATE",
                      "goal " + goal.name + ": name '" + dup + "' defined more than once in this tree");
            }
            if (index.has_cycle()) {
                error(goal.span, "E-CYCLE", "goal " + goal.name + ": references form a cycle");
            }
            check_node(goal.root, index, goal.name);
        }
    }

    static SourceSpan find_span(const Node& node, const std::string& name) {
        SourceSpan found;
        int count = 0;
        auto visit = [&](auto&& self, const Node& n) -> void {
            if (n.kind != NodeKind::Ref && n.name == name && ++count == 2) found = n.span;
            for (const auto& c : n.children) self(self, c);
        };
        visit(visit, node);
        return found;
    }

    void check_node(const Node& node, const TreeIndex& index, const std::string& path) {
        const std::string here =
            path + "/" + (node.name.empty() ? std::string(node_kind_name(node.kind)) : node.name);
        switch (node.kind) {
        case NodeKind::Or:
        case NodeKind::And:
            if (node.children.size() < 2) {
                const std::string kw = node.kind == NodeKind::Or ? "OR" : "AND";
                error(node.span, "E-ARITY", here + ": " + kw + " requires ≥2 children");
            }
            break;
        case NodeKind::Sand:
            if (node.children.size() != 2) {
                error(node.span, "E-ARITY", here + ": SAND requires exactly one precondition and one execution subtree");
            }
            break;
        case NodeKind::Ref:
            if (index.resolve(node) == nullptr) {
                error(node.span, "E-UNRESOLVED-REF", here + ": unresolved reference '" + node.name + "'");
            }
            break;
        case NodeKind::Leaf:
            check_leaf(node, here);
            break;
        }
        if (node.kind == NodeKind::Sand && node.children.size() == 2) {
            check_node(node.children[0], index, here + "/pre");
            check_node(node.children[1], index, here + "/exec");
        } else {
            for (const auto& child : node.children) check_node(child, index, here);
        }
    }

    void check_leaf(const Node& leaf, const std::string& here) {
        if (!leaf.children.empty()) {
            error(leaf.span, "E-ARITY", here + ": a leaf has no children");
        }
        if (leaf.candidates.empty()) {
            error(leaf.span, "E-EMPTY-LEAF", here + ": leaf needs at least one candidate CVE");
        }
        std::set<std::string> ids;
        for (const auto& c : leaf.candidates) {
            if (c.id.empty()) {
                error(c.span, "E-CVE-ID", here + ": empty CVE identifier");
            } else if (!is_cve_id(c.id)) {
                warning(c.span, "W-CVE-ID", here + ": '" + c.id + "' is not of the form CVE-YYYY-NNNN");
            }
            if (!ids.insert(c.id).second) {
                error(c.span, "E-DUPLICATE-CVE", here + ": candidate '" + c.id + "' listed twice");
            }
        }
        std::set<std::string> seen;
        for (const auto& d : leaf.defenses) {
            if (model_.find_control(d) == nullptr) {
                error(leaf.span, "E-UNRESOLVED-CONTROL", here + ": unresolved control '" + d + "'");
            }
            if (!seen.insert(d).second) {
                error(leaf.span, "E-DUPLICATE", here + ": control '" + d + "' attached twice");
            }
        }
    }

    void check_scenarios() {
        std::set<std::string> names;
        std::vector<TreeIndex> indexes;
        indexes.reserve(model_.goals.size());
        for (const auto& goal : model_.goals) indexes.emplace_back(goal);

        for (const auto& scenario : model_.scenarios) {
            const std::string where = "scenario " + scenario.name + ": ";
            if (!names.insert(scenario.name).second) {
                error(scenario.span, "E-DUPLICATE", "duplicate scenario '" + scenario.name + "'");
            }
            // goal index -> leaf -> metric -> transform
            std::map<std::size_t, std::map<std::string, std::map<Metric, Transform>>> merged;
            for (const auto& app : scenario.applications) {
                const Control* control = model_.find_control(app.control);
                if (control == nullptr) {
                    error(app.span, "E-UNRESOLVED-CONTROL", where + "unresolved control '" + app.control + "'");
                }
                bool found = false;
                for (std::size_t g = 0; g < indexes.size(); ++g) {
                    const auto& index = indexes[g];
                    const Node* node = index.find(app.target.node);
                    if (node == nullptr) continue;
                    found = true;
                    if (!app.target.exec && node->kind != NodeKind::Leaf) {
                        error(app.span, "E-TARGET-KIND",
                              where + "'" + app.target.node +
                                  "' is a connector; controls attach to leaves or to exec(...) subtrees");
                        continue;
                    }
                    if (app.target.exec && index.exec_positioned().count(app.target.node) == 0) {
                        error(app.span, "E-EXEC-TARGET",
                              where + "'" + app.target.node + "' is not inside the execution side of a SAND");
                        continue;
                    }
                    if (control == nullptr) continue;
                    for (const Node* leaf : index.leaves_under(*node)) {
                        if (std::find(leaf->defenses.begin(), leaf->defenses.end(), control->name) ==
                            leaf->defenses.end()) {
                            error(app.span, "E-NOT-ATTACHED",
                                  where + "control '" + control->name + "' is not declared as a defense of leaf '" +
                                      leaf->name + "'");
                            continue;
                        }
                        auto& per_metric = merged[g][leaf->name];
                        for (const auto& t : control->transforms) {
                            const auto [it, inserted] = per_metric.emplace(t.metric, t);
                            if (!inserted && !(it->second == t)) {
                                error(app.span, "E-CONFLICT",
                                      where + "conflicting transforms " + it->second.to_string() + " and " +
                                          t.to_string() + " on leaf '" + leaf->name + "'");
                            }
                        }
                    }
                }
                if (!found) {
                    error(app.span, "E-UNRESOLVED-TARGET", where + "unresolved target '" + app.target.node + "'");
                }
            }
        }
    }

    const Model& model_;
    std::vector<Diagnostic> diags_;
};

}  // namespace

std::vector<Diagnostic> validate(const Model& model) { return Validator(model).run(); }

}  // namespace adtree
