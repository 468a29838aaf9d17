#include <charconv>
#include <sstream>

#include "adtree/dsl.hpp"

namespace adtree {

namespace {

std::string quote(std::string_view s) {
    std::string out = "\"";
    for (char c : s) {
        switch (c) {
        case '"': out += "\\\""; break;
        case '\\': out += "\\\\"; break;
        case '\n': out += "\\n"; break;
        case '\t': out += "\\t"; break;
        default: out += c;
        }
    }
    out += '"';
    return out;
}

std::string number(double x) {
    char buf[64];
    const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, x);
    return std::string(buf, ec == std::errc{} ? ptr : buf);
}

class Writer {
public:
    std::string run(const Model& model) {
        out_ << "model " << quote(model.name) << " {\n";
        bool first = true;
        auto separate = [&] {
            if (!first) out_ << '\n';
            first = false;
        };
        for (const auto& [name, control] : model.controls) {
            separate();
            write_control(control);
        }
        for (const auto& goal : model.goals) {
            separate();
            write_goal(goal);
        }
        for (const auto& scenario : model.scenarios) {
            separate();
            write_scenario(scenario);
        }
        out_ << "}\n";
        return out_.str();
    }

private:
    void indent(int depth) {
        for (int i = 0; i < depth; ++i) out_ << "  ";
    }

    void write_control(const Control& c) {
        indent(1);
        out_ << "control " << c.name << " {\n";
        indent(2);
        out_ << "cost " << c.cost << ";\n";
        indent(2);
        out_ << "class " << (c.cls == ControlClass::Preventive ? "preventive" : "detective") << ";\n";
        for (const auto& t : c.transforms) {
            indent(2);
            out_ << "transform " << metric_name(t.metric) << ' ' << level_code(t.metric, t.from) << " -> "
                 << level_code(t.metric, t.to) << ";\n";
        }
        indent(1);
        out_ << "}\n";
    }

    void write_goal(const Goal& g) {
        indent(1);
        out_ << "goal " << g.name << " {\n";
        indent(2);
        out_ << "impact C:" << number(g.impact.c) << " I:" << number(g.impact.i) << " A:" << number(g.impact.a)
             << ";\n";
        indent(2);
        write_node(g.root, 2);
        indent(1);
        out_ << "}\n";
    }

    // Writes the node starting at the current column; `depth` is the indent
    // of the line the node starts on.
    void write_node(const Node& n, int depth) {
        switch (n.kind) {
        case NodeKind::Ref:
            out_ << n.name << '\n';
            return;
        case NodeKind::Leaf:
            out_ << "leaf " << n.name << " {\n";
            for (const auto& c : n.candidates) {
                indent(depth + 1);
                out_ << "cve " << quote(c.id) << " vector";
                for (Metric m : kAllMetrics) {
                    out_ << ' ' << metric_name(m) << ':' << level_code(m, level(c.vector, m));
                }
                if (c.note) out_ << " note " << quote(*c.note);
                out_ << ";\n";
            }
            if (!n.defenses.empty()) {
                indent(depth + 1);
                out_ << "defenses [";
                for (std::size_t i = 0; i < n.defenses.size(); ++i) {
                    if (i) out_ << ", ";
                    out_ << n.defenses[i];
                }
                out_ << "];\n";
            }
            break;
        case NodeKind::Or:
        case NodeKind::And:
            out_ << node_kind_name(n.kind) << (n.name.empty() ? "" : " " + n.name) << " {\n";
            for (const auto& child : n.children) {
                indent(depth + 1);
                write_node(child, depth + 1);
            }
            break;
        case NodeKind::Sand:
            out_ << "sand" << (n.name.empty() ? "" : " " + n.name) << " {\n";
            indent(depth + 1);
            out_ << "pre ";
            write_node(n.pre(), depth + 1);
            indent(depth + 1);
            out_ << "exec ";
            write_node(n.exec(), depth + 1);
            break;
        }
        indent(depth);
        out_ << "}\n";
    }

    void write_scenario(const Scenario& s) {
        indent(1);
        out_ << "scenario " << s.name << " {\n";
        for (const auto& app : s.applications) {
            indent(2);
            out_ << "apply " << app.control << " -> " << app.target.to_string() << ";\n";
        }
        indent(1);
        out_ << "}\n";
    }

    std::ostringstream out_;
};

}  // namespace

std::string serialize(const Model& model) { return Writer().run(model); }

}  // namespace adtree
