#include <sstream>

#include "adtree/engine.hpp"
#include "adtree/oracle.hpp"

namespace adtree {

namespace {

std::string describe(const Goal& goal, const std::string& path, const ScenarioState& state) {
    return goal.name + "/" + path + " under " + state.name;
}

void compare(const Goal& goal, const Node& node, const std::string& path, const ScenarioState& state,
             std::size_t leaf_bound, bool required, OracleCheck& out) {
    OracleScore oracle;
    try {
        oracle = brute_force_score(goal, node, state, leaf_bound);
    } catch (const OracleError& e) {
        if (required) out.skipped.push_back(describe(goal, path, state) + ": " + e.what());
        return;
    }
    const PathScore engine = Evaluator(goal, state).score_path(node, path);
    ++out.checked;
    if (engine.e_path != oracle.e || (oracle.ac_maj && engine.ac_maj != oracle.ac_maj)) {
        std::ostringstream msg;
        msg.precision(17);
        msg << describe(goal, path, state) << ": engine E=" << engine.e_path << ", oracle E=" << oracle.e;
        if (oracle.ac_maj) {
            msg << ", engine AC_maj=" << (engine.ac_maj ? ac_code(*engine.ac_maj) : '-')
                << ", oracle AC_maj=" << ac_code(*oracle.ac_maj);
        }
        out.mismatches.push_back(msg.str());
    }
}

}  // namespace

OracleCheck check_model(const Model& model, std::size_t leaf_bound) {
    OracleCheck out;
    for (const auto& goal : model.goals) {
        std::vector<ScenarioState> states{baseline_state()};
        for (const auto& s : model.scenarios) {
            try {
                states.push_back(make_state(model, goal, s));
            } catch (const EvaluationError&) {
                // Scenario belongs to another goal.
            }
        }
        for (const auto& state : states) {
            const ScenarioState none = baseline_state();
            const auto branches = Evaluator(goal, none).branches();
            for (const auto& [node, name] : branches) compare(goal, *node, name, state, leaf_bound, true, out);
            // The whole goal is checked too when it fits the bound.
            if (branches.size() > 1) compare(goal, goal.root, goal.name, state, leaf_bound, false, out);
        }
    }
    return out;
}

}  // namespace adtree
