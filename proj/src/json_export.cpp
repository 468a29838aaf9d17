#include <nlohmann/json.hpp>

#include "adtree/dsl.hpp"

namespace adtree {

namespace {

using nlohmann::ordered_json;

ordered_json node_json(const Node& n) {
    ordered_json j;
    j["kind"] = node_kind_name(n.kind);
    switch (n.kind) {
    case NodeKind::Ref:
        j["target"] = n.name;
        break;
    case NodeKind::Leaf: {
        j["name"] = n.name;
        ordered_json candidates = ordered_json::array();
        for (const auto& c : n.candidates) {
            ordered_json cj;
            cj["id"] = c.id;
            cj["vector"] = to_string(c.vector);
            cj["ac_label"] = std::string(1, ac_code(c.ac_label()));
            if (c.note) cj["note"] = *c.note;
            candidates.push_back(std::move(cj));
        }
        j["candidates"] = std::move(candidates);
        j["defenses"] = n.defenses;
        break;
    }
    case NodeKind::Or:
    case NodeKind::And: {
        if (!n.name.empty()) j["name"] = n.name;
        ordered_json children = ordered_json::array();
        for (const auto& c : n.children) children.push_back(node_json(c));
        j["children"] = std::move(children);
        break;
    }
    case NodeKind::Sand:
        if (!n.name.empty()) j["name"] = n.name;
        j["pre"] = node_json(n.pre());
        j["exec"] = node_json(n.exec());
        break;
    }
    return j;
}

}  // namespace

std::string to_json(const Model& model, int indent) {
    ordered_json doc;
    doc["name"] = model.name;
    ordered_json controls = ordered_json::array();
    for (const auto& [name, c] : model.controls) {
        ordered_json cj;
        cj["name"] = name;
        cj["class"] = c.cls == ControlClass::Preventive ? "preventive" : "detective";
        cj["cost"] = c.cost;
        ordered_json transforms = ordered_json::array();
        for (const auto& t : c.transforms) {
            transforms.push_back({{"metric", metric_name(t.metric)},
                                  {"from", std::string(1, level_code(t.metric, t.from))},
                                  {"to", std::string(1, level_code(t.metric, t.to))}});
        }
        cj["transforms"] = std::move(transforms);
        controls.push_back(std::move(cj));
    }
    doc["controls"] = std::move(controls);

    ordered_json goals = ordered_json::array();
    for (const auto& g : model.goals) {
        ordered_json gj;
        gj["name"] = g.name;
        gj["impact"] = {{"c", g.impact.c}, {"i", g.impact.i}, {"a", g.impact.a}};
        gj["root"] = node_json(g.root);
        goals.push_back(std::move(gj));
    }
    doc["goals"] = std::move(goals);

    ordered_json scenarios = ordered_json::array();
    for (const auto& s : model.scenarios) {
        ordered_json sj;
        sj["name"] = s.name;
        ordered_json apps = ordered_json::array();
        for (const auto& a : s.applications) {
            apps.push_back({{"control", a.control}, {"target", a.target.node}, {"exec", a.target.exec}});
        }
        sj["applications"] = std::move(apps);
        scenarios.push_back(std::move(sj));
    }
    doc["scenarios"] = std::move(scenarios);
    return doc.dump(indent) + "\n";
}

}  // namespace adtree
