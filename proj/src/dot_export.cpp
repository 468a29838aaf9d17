#include <map>
#include <sstream>

#include "adtree/report.hpp"

namespace adtree {

namespace {

std::string quoted(const std::string& s) {
    std::string out = "\"";
    for (char ch : s) {
        if (ch == '"' || ch == '\\') out += '\\';
        if (ch == '\n') {
            out += "\\n";
            continue;
        }
        out += ch;
    }
    return out + "\"";
}

struct WorstCase {
    const CveRef* cve = nullptr;
    MetricVector vector;
    double e = -1.0;
};

WorstCase worst_case(const Node& leaf, const std::vector<Transform>& transforms) {
    WorstCase best;
    for (const auto& c : leaf.candidates) {
        MetricVector v = c.vector;
        for (const auto& t : transforms) v = apply_transform(v, t).vector;
        const double e = exploitability(v);
        if (e > best.e || (e == best.e && v.ac == AttackComplexity::Low)) best = {&c, v, e};
    }
    return best;
}

class DotWriter {
public:
    DotWriter(const Goal& goal, const ScenarioState& state) : goal_(goal), state_(state), index_(goal) {}

    std::string run() {
        out_ << "digraph " << quoted(goal_.name) << " {\n";
        out_ << "  rankdir=TB;\n";
        out_ << "  node [fontname=\"Helvetica\", fontsize=10];\n";
        out_ << "  edge [fontname=\"Helvetica\", fontsize=9];\n";
        const std::string goal_label = goal_.name + "\n(C,I,A) = " + format_impact(goal_.impact);
        out_ << "  n0 [shape=doubleoctagon, label=" << quoted(goal_label) << "];\n";
        next_ = 1;
        number(goal_.root);
        emit_nodes(goal_.root);
        out_ << "  n0 -> " << id_of(goal_.root) << ";\n";
        emit_edges(goal_.root);
        legend();
        out_ << "}\n";
        return out_.str();
    }

private:
    void number(const Node& n) {
        if (n.kind == NodeKind::Ref) return;
        ids_[&n] = "n" + std::to_string(next_++);
        for (const auto& c : n.children) number(c);
    }

    std::string id_of(const Node& n) const {
        const Node* def = index_.resolve(n);
        const auto it = ids_.find(def);
        return it == ids_.end() ? std::string("n0") : it->second;
    }

    void emit_nodes(const Node& n) {
        if (n.kind == NodeKind::Ref) return;
        const std::string id = ids_.at(&n);
        switch (n.kind) {
        case NodeKind::Leaf:
            emit_leaf(id, n);
            break;
        case NodeKind::Or:
            connector(id, "diamond", "OR", n.name);
            break;
        case NodeKind::And:
            connector(id, "box", "AND", n.name);
            break;
        case NodeKind::Sand:
            connector(id, "trapezium", "SAND", n.name);
            break;
        case NodeKind::Ref:
            break;
        }
        for (const auto& c : n.children) emit_nodes(c);
    }

    void connector(const std::string& id, const char* shape, const char* kind, const std::string& name) {
        const std::string label = name.empty() ? std::string(kind) : std::string(kind) + "\n" + name;
        out_ << "  " << id << " [shape=" << shape << ", label=" << quoted(label) << "];\n";
    }

    void emit_leaf(const std::string& id, const Node& leaf) {
        const auto& transforms = state_.transforms_for(leaf.name);
        const auto w = worst_case(leaf, transforms);
        std::string label = leaf.name;
        if (w.cve != nullptr) label += "\n" + w.cve->id + "\n" + to_string(w.vector) + "\nE = " + format_e(w.e);
        out_ << "  " << id << " [shape=ellipse, label=" << quoted(label);
        if (!transforms.empty()) {
            std::string applied;
            for (const auto& t : transforms) applied += (applied.empty() ? "" : ", ") + t.to_string();
            out_ << ", style=\"filled,bold\", fillcolor=\"#cfe8ff\", tooltip=" << quoted("hardened: " + applied);
        }
        out_ << "];\n";
    }

    void emit_edges(const Node& n) {
        if (n.kind == NodeKind::Ref) return;
        const std::string from = ids_.at(&n);
        for (std::size_t i = 0; i < n.children.size(); ++i) {
            std::vector<std::string> attrs;
            if (n.kind == NodeKind::Sand) attrs.push_back("label=" + quoted(i == 0 ? "1:pre" : "2:exec"));
            if (n.children[i].kind == NodeKind::Ref) attrs.push_back("style=dashed");
            out_ << "  " << from << " -> " << id_of(n.children[i]);
            for (std::size_t a = 0; a < attrs.size(); ++a) out_ << (a == 0 ? " [" : ", ") << attrs[a];
            out_ << (attrs.empty() ? ";\n" : "];\n");
        }
        for (const auto& c : n.children) emit_edges(c);
    }

    void legend() {
        out_ << "  subgraph cluster_legend {\n";
        out_ << "    label=\"Legend\";\n";
        out_ << "    style=dashed;\n";
        out_ << "    legend_goal [shape=doubleoctagon, label=\"goal\"];\n";
        out_ << "    legend_or [shape=diamond, label=\"OR\"];\n";
        out_ << "    legend_and [shape=box, label=\"AND\"];\n";
        out_ << "    legend_sand [shape=trapezium, label=\"SAND\"];\n";
        out_ << "    legend_leaf [shape=ellipse, label=\"leaf\"];\n";
        out_ << "    legend_hardened [shape=ellipse, style=\"filled,bold\", fillcolor=\"#cfe8ff\", label=\"hardened leaf\"];\n";
        out_ << "  }\n";
    }

    const Goal& goal_;
    const ScenarioState& state_;
    TreeIndex index_;
    std::map<const Node*, std::string> ids_;
    int next_ = 0;
    std::ostringstream out_;
};

}  // namespace

std::string export_dot(const Goal& goal, const ScenarioState& state) { return DotWriter(goal, state).run(); }

}  // namespace adtree
