#include "adtree/oracle.hpp"

#include <algorithm>
#include <array>
#include <map>

namespace adtree {

namespace {

// Flattened copy of the tree with every reference expanded in place, so each
// leaf occurrence has its own slot.
struct Slot {
    NodeKind kind = NodeKind::Leaf;
    const Node* leaf = nullptr;
    std::vector<int> children;
    int parent = -1;
};

class Flattened {
public:
    Flattened(const Goal& goal, const Node& node, std::size_t leaf_bound) : bound_(leaf_bound) {
        register_defs(goal.root);
        add(node, -1);
    }

    const std::vector<Slot>& slots() const { return slots_; }
    std::size_t leaf_count() const { return leaves_; }

    // Innermost SAND having `slot` on its execution side, or -1.
    int conditioning_sand(int slot) const {
        int child = slot;
        for (int p = slots_[slot].parent; p >= 0; child = p, p = slots_[p].parent) {
            if (slots_[p].kind == NodeKind::Sand && slots_[p].children[1] == child) return p;
        }
        return -1;
    }

    PathRole role(int slot) const {
        int child = slot;
        for (int p = slots_[slot].parent; p >= 0; child = p, p = slots_[p].parent) {
            if (slots_[p].kind == NodeKind::Sand) {
                return slots_[p].children[0] == child ? PathRole::Pre : PathRole::Exec;
            }
        }
        return PathRole::Plain;
    }

    void leaves_below(int slot, std::vector<int>& out) const {
        if (slots_[slot].kind == NodeKind::Leaf) {
            out.push_back(slot);
            return;
        }
        for (int c : slots_[slot].children) leaves_below(c, out);
    }

private:
    void register_defs(const Node& n) {
        if (n.kind == NodeKind::Ref) return;
        if (!n.name.empty()) defs_.emplace(n.name, &n);
        for (const auto& c : n.children) register_defs(c);
    }

    int add(const Node& n, int parent) {
        const Node* def = &n;
        std::vector<std::string> seen;
        while (def->kind == NodeKind::Ref) {
            if (std::find(seen.begin(), seen.end(), def->name) != seen.end()) {
                throw OracleError("reference cycle through '" + def->name + "'");
            }
            seen.push_back(def->name);
            const auto it = defs_.find(def->name);
            if (it == defs_.end()) throw OracleError("unresolved reference '" + def->name + "'");
            def = it->second;
        }
        if (std::find(open_.begin(), open_.end(), def) != open_.end()) {
            throw OracleError("reference cycle through '" + def->name + "'");
        }

        const int id = static_cast<int>(slots_.size());
        slots_.push_back({def->kind, nullptr, {}, parent});
        if (def->kind == NodeKind::Leaf) {
            if (++leaves_ > bound_) {
                throw OracleError("tree exceeds the oracle leaf bound of " + std::to_string(bound_) +
                                  " leaf occurrences");
            }
            slots_[id].leaf = def;
            return id;
        }
        open_.push_back(def);
        for (const auto& c : def->children) {
            const int child = add(c, id);
            slots_[id].children.push_back(child);
        }
        open_.pop_back();
        return id;
    }

    std::size_t bound_;
    std::size_t leaves_ = 0;
    std::map<std::string, const Node*> defs_;
    std::vector<Slot> slots_;
    std::vector<const Node*> open_;
};

int rank(const MetricVector& v, Metric m) {
    switch (m) {
    case Metric::AV: return static_cast<int>(v.av);
    case Metric::AC: return static_cast<int>(v.ac);
    case Metric::PR: return static_cast<int>(v.pr);
    case Metric::UI: return static_cast<int>(v.ui);
    }
    return 0;
}

void set_rank(MetricVector& v, Metric m, int r) {
    switch (m) {
    case Metric::AV: v.av = static_cast<AttackVector>(r); break;
    case Metric::AC: v.ac = static_cast<AttackComplexity>(r); break;
    case Metric::PR: v.pr = static_cast<PrivilegesRequired>(r); break;
    case Metric::UI: v.ui = static_cast<UserInteraction>(r); break;
    }
}

double e_of(const MetricVector& v) {
    return weights::kExploitabilityCoefficient * weights::kAttackVector[static_cast<std::size_t>(v.av)] *
           weights::kAttackComplexity[static_cast<std::size_t>(v.ac)] *
           weights::kPrivilegesRequired[static_cast<std::size_t>(v.pr)] *
           weights::kUserInteraction[static_cast<std::size_t>(v.ui)];
}

struct LeafValue {
    double e = 0.0;
    AttackComplexity label = AttackComplexity::Low;
};

LeafValue leaf_value(const Node& leaf, const ScenarioState& state, std::optional<AttackComplexity> conditioning) {
    std::vector<Transform> transforms;
    if (const auto it = state.leaf_transforms.find(leaf.name); it != state.leaf_transforms.end()) {
        transforms = it->second;
    }
    std::vector<LeafValue> values;
    for (const auto& c : leaf.candidates) {
        MetricVector v = c.vector;
        bool ac_moved = false;
        for (const auto& t : transforms) {
            if (rank(v, t.metric) != t.from) continue;
            set_rank(v, t.metric, t.to);
            ac_moved = ac_moved || t.metric == Metric::AC;
        }
        if (conditioning) {
            const auto cond = *conditioning;
            v.ac = ac_moved ? std::max(cond, v.ac) : cond;
        }
        values.push_back({e_of(v), v.ac});
    }
    if (values.empty()) throw OracleError("leaf '" + leaf.name + "' has no candidates");
    double top = values.front().e;
    for (const auto& x : values) top = std::max(top, x.e);
    LeafValue out{top, AttackComplexity::High};
    for (const auto& x : values) {
        if (x.e == top && x.label == AttackComplexity::Low) out.label = AttackComplexity::Low;
    }
    return out;
}

std::vector<std::vector<int>> sets_of(const Flattened& f, int slot) {
    const Slot& s = f.slots()[slot];
    switch (s.kind) {
    case NodeKind::Leaf:
        return {{slot}};
    case NodeKind::Or: {
        std::vector<std::vector<int>> out;
        for (int c : s.children) {
            auto sub = sets_of(f, c);
            out.insert(out.end(), sub.begin(), sub.end());
        }
        return out;
    }
    case NodeKind::And:
    case NodeKind::Sand: {
        std::vector<std::vector<int>> out{{}};
        for (int c : s.children) {
            const auto sub = sets_of(f, c);
            std::vector<std::vector<int>> next;
            for (const auto& left : out) {
                for (const auto& right : sub) {
                    auto joined = left;
                    joined.insert(joined.end(), right.begin(), right.end());
                    next.push_back(std::move(joined));
                }
            }
            out = std::move(next);
        }
        return out;
    }
    case NodeKind::Ref:
        break;
    }
    throw OracleError("unexpanded reference");
}

}  // namespace

std::vector<std::string> AttackPath::leaf_names() const {
    std::vector<std::string> out;
    for (const auto& s : steps) out.push_back(s.leaf);
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

AttackPathSet enumerate_paths(const Goal& goal, const Node& node, std::size_t leaf_bound) {
    const Flattened f(goal, node, leaf_bound);
    AttackPathSet out;
    out.leaf_occurrences = f.leaf_count();
    for (const auto& set : sets_of(f, 0)) {
        AttackPath path;
        for (int slot : set) path.steps.push_back({f.slots()[slot].leaf->name, f.role(slot), static_cast<std::size_t>(slot)});
        out.paths.push_back(std::move(path));
    }
    return out;
}

OracleScore brute_force_score(const Goal& goal, const Node& node, const ScenarioState& state, std::size_t leaf_bound) {
    const Flattened f(goal, node, leaf_bound);
    const auto& slots = f.slots();
    const int n = static_cast<int>(slots.size());

    std::vector<int> cond(n, -1);
    std::vector<std::vector<int>> pre_family(n);
    for (int i = 0; i < n; ++i) {
        if (slots[i].kind == NodeKind::Leaf) cond[i] = f.conditioning_sand(i);
        if (slots[i].kind == NodeKind::Sand) f.leaves_below(slots[i].children[0], pre_family[i]);
    }

    // Resolve leaf values and SAND majorities in whatever order their inputs
    // become available.
    std::vector<std::optional<LeafValue>> value(n);
    std::vector<std::optional<AttackComplexity>> majority(n);
    for (bool progress = true; progress;) {
        progress = false;
        for (int i = 0; i < n; ++i) {
            if (slots[i].kind == NodeKind::Leaf && !value[i]) {
                if (cond[i] >= 0 && !majority[cond[i]]) continue;
                value[i] = leaf_value(*slots[i].leaf, state, cond[i] >= 0 ? majority[cond[i]] : std::nullopt);
                progress = true;
            } else if (slots[i].kind == NodeKind::Sand && !majority[i]) {
                std::size_t low = 0;
                bool ready = true;
                for (int leaf : pre_family[i]) {
                    if (!value[leaf]) {
                        ready = false;
                        break;
                    }
                    if (value[leaf]->label == AttackComplexity::Low) ++low;
                }
                if (!ready) continue;
                majority[i] = 2 * low > pre_family[i].size() ? AttackComplexity::Low : AttackComplexity::High;
                progress = true;
            }
        }
    }

    OracleScore out;
    bool first = true;
    for (const auto& set : sets_of(f, 0)) {
        double weakest = value[set.front()]->e;
        for (int slot : set) weakest = std::min(weakest, value[slot]->e);
        if (first || weakest > out.e) out.e = weakest;
        first = false;
    }
    if (slots[0].kind == NodeKind::Sand) out.ac_maj = majority[0];
    return out;
}

}  // namespace adtree
