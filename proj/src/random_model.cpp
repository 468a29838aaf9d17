#include <algorithm>
#include <cstdio>

#include "adtree/oracle.hpp"

namespace adtree {

namespace {

class TreeGenerator {
public:
    TreeGenerator(std::mt19937_64& rng, const RandomTreeParams& p) : rng_(rng), p_(p) {}

    Node root() {
        return connector(0, std::max(2, p_.max_leaves));
    }

    const std::vector<std::string>& leaves() const { return leaf_names_; }

private:
    bool chance(double p) { return std::bernoulli_distribution(p)(rng_); }
    int uniform(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng_); }

    // `cap` is the most leaves this subtree may consume.
    Node node(int depth, int cap) {
        if (cap <= 1 || depth >= p_.max_depth || chance(0.35)) return leaf();
        return connector(depth, cap);
    }

    Node connector(int depth, int cap) {
        if (cap >= 2 && chance(p_.sand_probability)) {
            const int pre_cap = uniform(1, cap - 1);
            Node pre = node(depth + 1, pre_cap);
            Node exec = node(depth + 1, cap - used_since(pre));
            return Node::sand(std::move(pre), std::move(exec), label());
        }
        const int arity = uniform(2, std::max(2, std::min(p_.max_fanout, cap)));
        std::vector<Node> children;
        int budget = cap;
        for (int i = 0; i < arity; ++i) {
            const int reserve = arity - i - 1;
            const int before = leaf_count_;
            children.push_back(node(depth + 1, std::max(1, budget - reserve)));
            budget -= leaf_count_ - before;
        }
        return chance(0.5) ? Node::any_of(std::move(children), label()) : Node::all_of(std::move(children), label());
    }

    int used_since(const Node& n) const {
        int count = 0;
        auto walk = [&](auto&& self, const Node& x) -> void {
            if (x.kind == NodeKind::Leaf) ++count;
            for (const auto& c : x.children) self(self, c);
        };
        walk(walk, n);
        return count;
    }

    Node leaf() {
        ++leaf_count_;
        const std::string name = "l" + std::to_string(leaf_names_.size());
        leaf_names_.push_back(name);
        std::vector<CveRef> candidates;
        const int k = uniform(1, std::max(1, p_.max_candidates));
        for (int i = 0; i < k; ++i) {
            MetricVector v;
            v.av = static_cast<AttackVector>(uniform(0, 3));
            v.ac = static_cast<AttackComplexity>(uniform(0, 1));
            v.pr = static_cast<PrivilegesRequired>(uniform(0, 2));
            v.ui = static_cast<UserInteraction>(uniform(0, 1));
            char id[32];
            std::snprintf(id, sizeof id, "CVE-2099-%05d", ++cve_counter_);
            candidates.push_back({id, v, std::nullopt, {}});
        }
        return Node::leaf(name, std::move(candidates));
    }

    std::string label() { return "n" + std::to_string(label_counter_++); }

    std::mt19937_64& rng_;
    const RandomTreeParams& p_;
    int leaf_count_ = 0;
    int label_counter_ = 0;
    int cve_counter_ = 0;
    std::vector<std::string> leaf_names_;
};

void attach_everywhere(Node& n, const std::vector<std::string>& controls) {
    if (n.kind == NodeKind::Leaf) n.defenses = controls;
    for (auto& c : n.children) attach_everywhere(c, controls);
}

// Labelled nodes lying on the execution side of some SAND.
void exec_labels(const Node& n, bool in_exec, std::vector<std::string>& out) {
    if (in_exec && !n.name.empty()) out.push_back(n.name);
    if (n.kind == NodeKind::Sand) {
        exec_labels(n.pre(), in_exec, out);
        exec_labels(n.exec(), true, out);
        return;
    }
    for (const auto& c : n.children) exec_labels(c, in_exec, out);
}

void leaf_names(const Node& n, std::vector<std::string>& out) {
    if (n.kind == NodeKind::Leaf) out.push_back(n.name);
    for (const auto& c : n.children) leaf_names(c, out);
}

}  // namespace

Scenario random_scenario(const Model& model, std::mt19937_64& rng, int max_applications, std::string name) {
    Scenario s;
    s.name = std::move(name);
    if (model.goals.empty() || model.controls.empty()) return s;
    const Goal& goal = model.goals.front();

    std::vector<std::string> plain;
    leaf_names(goal.root, plain);
    std::vector<std::string> exec;
    exec_labels(goal.root, false, exec);
    std::vector<std::string> controls;
    for (const auto& [name, c] : model.controls) controls.push_back(name);

    const int n = std::uniform_int_distribution<int>(1, std::max(1, max_applications))(rng);
    for (int i = 0; i < n; ++i) {
        Application app;
        app.control = controls[std::uniform_int_distribution<std::size_t>(0, controls.size() - 1)(rng)];
        const bool use_exec = !exec.empty() && std::bernoulli_distribution(0.3)(rng);
        const auto& pool = use_exec ? exec : plain;
        app.target = {pool[std::uniform_int_distribution<std::size_t>(0, pool.size() - 1)(rng)], use_exec};
        s.applications.push_back(app);
        try {
            (void)make_state(model, goal, s);
        } catch (const EvaluationError&) {
            s.applications.pop_back();
        }
    }
    return s;
}

Model random_model(std::uint64_t seed, const RandomTreeParams& params) {
    std::mt19937_64 rng(seed);
    Model m;
    m.name = "random_" + std::to_string(seed);

    TreeGenerator gen(rng, params);
    Goal goal;
    goal.name = "R";
    goal.impact = {0.56, 0.22, 0.0};
    goal.root = gen.root();

    std::vector<std::string> names;
    for (int i = 0; i < params.controls; ++i) {
        Control c;
        c.name = "c" + std::to_string(i);
        c.cost = std::uniform_int_distribution<int>(1, 4)(rng);
        auto metrics = std::vector<Metric>(kAllMetrics.begin(), kAllMetrics.end());
        std::shuffle(metrics.begin(), metrics.end(), rng);
        const int k = std::uniform_int_distribution<int>(1, 2)(rng);
        for (int j = 0; j < k; ++j) {
            const Metric metric = metrics[static_cast<std::size_t>(j)];
            const int top = level_count(metric) - 1;
            const int from = std::uniform_int_distribution<int>(0, top - 1)(rng);
            const int to = std::uniform_int_distribution<int>(from + 1, top)(rng);
            c.transforms.push_back({metric, from, to});
        }
        names.push_back(c.name);
        m.controls.emplace(c.name, std::move(c));
    }
    Control monitor;
    monitor.name = "monitor";
    monitor.cls = ControlClass::Detective;
    monitor.cost = 1;
    names.push_back(monitor.name);
    m.controls.emplace(monitor.name, std::move(monitor));

    attach_everywhere(goal.root, names);
    m.goals.push_back(std::move(goal));
    for (int i = 0; i < params.scenarios; ++i) {
        m.scenarios.push_back(random_scenario(m, rng, 4, "S" + std::to_string(i + 1)));
    }
    return m;
}

}  // namespace adtree
