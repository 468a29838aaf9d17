#include <doctest.h>

#include <stdexcept>
#include <vector>

#include "adtree/engine.hpp"
#include "support.hpp"

using namespace adtree;
using testing::longhand_e;
namespace w = testing::w;

namespace {

constexpr auto L = AttackComplexity::Low;
constexpr auto H = AttackComplexity::High;

const double kNLNN = longhand_e(w::N, w::AC_L, w::N, w::N);        // 3.89
const double kNLLN = longhand_e(w::N, w::AC_L, w::PR_L, w::N);     // 2.84
const double kNHNN = longhand_e(w::N, w::AC_H, w::N, w::N);        // 2.22
const double kNHLN = longhand_e(w::N, w::AC_H, w::PR_L, w::N);     // 1.62

CveRef cve(std::string id, AttackComplexity ac, PrivilegesRequired pr = PrivilegesRequired::None,
           UserInteraction ui = UserInteraction::None) {
    return {std::move(id), MetricVector{AttackVector::Network, ac, pr, ui}, std::nullopt, {}};
}

Goal goal_of(Node root, ImpactTriple impact = {0, 0.56, 0}) {
    Goal g;
    g.name = "T";
    g.impact = impact;
    g.root = std::move(root);
    return g;
}

const PathScore& row(const std::vector<PathScore>& rows, std::string_view branch) {
    for (const auto& r : rows) {
        if (r.branch == branch) return r;
    }
    throw std::runtime_error("no row " + std::string(branch));
}

}  // namespace

TEST_CASE("combinators") {
    const std::vector<double> five = {3.89, 2.84, 2.84, 2.07, 2.22};
    CHECK(or_combine(five) == 3.89);
    CHECK(and_combine(five) == 2.07);
    const std::vector<double> hardened = {0.71, 2.84, 2.84, 2.07, 2.22};
    CHECK(or_combine(hardened) == 2.84);
    CHECK(and_combine(hardened) == 0.71);
    CHECK(sand_combine(3.89, 2.22) == 2.22);
    CHECK(sand_combine(1.62, 2.22) == 1.62);
    const std::vector<double> one = {1.5};
    CHECK(or_combine(one) == 1.5);
    CHECK(and_combine(one) == 1.5);
}

TEST_CASE("majority label") {
    const std::vector<AttackComplexity> llh = {L, L, H};
    const std::vector<AttackComplexity> lh = {L, H};
    const std::vector<AttackComplexity> hhl = {H, L, H};
    const std::vector<AttackComplexity> lllhh = {L, L, L, H, H};
    const std::vector<AttackComplexity> only_l = {L};
    CHECK(majority_ac(llh) == L);
    CHECK(majority_ac(lh) == H);
    CHECK(majority_ac(hhl) == H);
    CHECK(majority_ac(lllhh) == L);
    CHECK(majority_ac(only_l) == L);
    CHECK_THROWS_AS(majority_ac(std::span<const AttackComplexity>{}), std::invalid_argument);
}

TEST_CASE("execution-step conditioning") {
    const MetricVector nlnn{};
    CHECK(condition_execution(nlnn, L, {}) == nlnn);
    CHECK(condition_execution(nlnn, H, {}).ac == H);

    // A hard candidate is relabelled by an easy majority.
    const MetricVector nhnn{AttackVector::Network, H, PrivilegesRequired::None, UserInteraction::None};
    CHECK(condition_execution(nhnn, L, {}).ac == L);

    // With an AC transform the harder of the two labels wins.
    const std::vector<Transform> ac_up = {{Metric::AC, 0, 1}};
    CHECK(condition_execution(nlnn, L, ac_up).ac == H);
    CHECK(condition_execution(nlnn, H, ac_up).ac == H);

    const std::vector<Transform> ui_up = {{Metric::UI, 0, 1}};
    const auto v = condition_execution(nlnn, H, ui_up);
    CHECK(v.ac == H);
    CHECK(v.ui == UserInteraction::Required);
    CHECK(exploitability(v) == doctest::Approx(longhand_e(w::N, w::AC_H, w::N, w::UI_R)));
}

TEST_CASE("two-precondition toy tree by hand") {
    // Preconditions (N,L,L,N) and (N,H,N,N): E_pre = max, labels tie to H.
    const std::vector<double> pre = {kNLLN, kNHNN};
    const double e_pre = or_combine(pre);
    const std::vector<AttackComplexity> labels = {L, H};
    const auto ac = majority_ac(labels);
    const double e_exec = exploitability(condition_execution(MetricVector{}, ac, {}));
    CHECK(e_pre == doctest::Approx(2.835).epsilon(1e-3));
    CHECK(ac == H);
    CHECK(e_exec == doctest::Approx(kNHNN));
    CHECK(sand_combine(e_pre, e_exec) == doctest::Approx(kNHNN));

    const Model toy = testing::load("toy.adt");
    const auto base = baseline_state();
    const auto got = score_goal(*toy.find_goal("G2_toy"), base);
    REQUIRE(got.e_pre);
    CHECK(*got.e_pre == doctest::Approx(e_pre));
    CHECK(*got.ac_maj == H);
    CHECK(*got.e_exec_star == doctest::Approx(e_exec));
    CHECK(got.e_path == doctest::Approx(kNHNN));
    CHECK(got.base == 5.9);  // C-only impact: roundup(3.5952 + 2.2198)
}

TEST_CASE("G1 baseline branches") {
    const Model m = testing::load("g1.adt");
    const auto base = baseline_state();
    const auto rows = score_branches(*m.find_goal("G1"), base);
    REQUIRE(rows.size() == 5);
    CHECK(rows[0].branch == "B1_prompt_injection");
    CHECK(rows[4].branch == "B5_web_mitm");

    const auto& b1 = row(rows, "B1_prompt_injection");
    CHECK(*b1.e_pre == doctest::Approx(kNLNN));
    CHECK(*b1.ac_maj == L);
    CHECK(*b1.e_exec_star == doctest::Approx(kNLNN));
    CHECK(b1.e_path == doctest::Approx(kNLNN));
    CHECK(b1.base == 7.5);
    CHECK(b1.severity == Severity::High);
    CHECK(b1.impact_subscore == doctest::Approx(6.42 * 0.56));

    for (const char* name : {"B2_session_mismanagement", "B3_orchestration_errors", "B4_model_tampering"}) {
        CAPTURE(name);
        const auto& r = row(rows, name);
        CHECK(*r.ac_maj == L);
        CHECK(r.e_path == doctest::Approx(kNLNN));
        CHECK(r.base == 7.5);
    }

    // A single-leaf branch reports the leaf's own label.
    const auto& b5 = row(rows, "B5_web_mitm");
    CHECK_FALSE(b5.e_pre);
    CHECK(*b5.ac_maj == H);
    CHECK(b5.e_path == doctest::Approx(kNHNN));
    CHECK(b5.base == 5.9);
    CHECK(b5.severity == Severity::Medium);

    const auto whole = score_goal(*m.find_goal("G1"), base);
    CHECK(whole.e_path == doctest::Approx(kNLNN));
}

TEST_CASE("G2 and G3 baseline branches") {
    const auto base = baseline_state();
    const Model g2 = testing::load("g2.adt");
    const auto rows2 = score_branches(g2.goals.at(0), base);
    REQUIRE(rows2.size() == 3);
    for (const auto& r : rows2) {
        CAPTURE(r.branch);
        CHECK(r.e_path == doctest::Approx(kNLNN));
        CHECK(r.base == 7.5);
    }
    CHECK_FALSE(rows2[0].ac_maj);
    CHECK(*rows2[1].ac_maj == L);

    const Model g3 = testing::load("g3.adt");
    const auto rows3 = score_branches(g3.goals.at(0), base);
    REQUIRE(rows3.size() == 7);
    CHECK(rows3[0].branch == "B1_prompt_flooding");
    CHECK(*rows3[0].ac_maj == L);  // four L, one H
    CHECK(rows3[0].e_path == doctest::Approx(kNLLN));
    CHECK(rows3[0].base == 6.5);
    for (std::size_t i = 1; i < rows3.size(); ++i) {
        CAPTURE(rows3[i].branch);
        CHECK(*rows3[i].ac_maj == L);
        CHECK(rows3[i].e_path == doctest::Approx(kNLNN));
        CHECK(rows3[i].base == 7.5);
    }
}

TEST_CASE("nested SAND in a precondition") {
    // pre = and{ sand{a(N,H,N,N), b(N,L,N,N)}, d(N,L,L,N) }, exec = c(N,L,N,N)
    const Node inner = Node::sand(Node::leaf("a", {cve("CVE-2000-0001", H)}), Node::leaf("b", {cve("CVE-2000-0002", L)}),
                                  "inner");
    const Node pre = Node::all_of({inner, Node::leaf("d", {cve("CVE-2000-0003", L, PrivilegesRequired::Low)})});
    const Goal g = goal_of(Node::sand(pre, Node::leaf("c", {cve("CVE-2000-0004", L)})));
    const auto state = baseline_state();
    const Evaluator ev(g, state);

    // Inner family is {a} alone: H, so b is scored as (N,H,N,N).
    const auto inner_score = ev.score_sand(g.root.pre().children[0]);
    CHECK(inner_score.ac_maj == H);
    CHECK(inner_score.e_path == doctest::Approx(kNHNN));

    // Outer family {a, b, d}: b counts with its conditioned label, so H, H, L.
    const auto outer = ev.score_sand(g.root);
    CHECK(outer.ac_maj == H);
    CHECK(outer.e_pre == doctest::Approx(kNHNN));
    CHECK(outer.e_exec_star == doctest::Approx(kNHNN));
    CHECK(outer.e_path == doctest::Approx(kNHNN));
}

TEST_CASE("node scores carry no impact") {
    const Node tree = Node::any_of({Node::leaf("x", {cve("CVE-2000-0001", L)}), Node::leaf("y", {cve("CVE-2000-0002", H)})});
    const auto state = baseline_state();
    const Goal none = goal_of(tree, {0, 0, 0});
    const Goal full = goal_of(tree, {0.56, 0.56, 0.56});
    const auto a = Evaluator(none, state).score_node(none.root);
    const auto b = Evaluator(full, state).score_node(full.root);
    CHECK(a.e == b.e);
    CHECK(a.e == doctest::Approx(kNLNN));
    CHECK(a.ac_labels == std::vector<AttackComplexity>{L, H});
    CHECK(a.leaves == std::vector<std::string>{"x", "y"});

    CHECK(score_goal(none, state).base == 0.0);
    CHECK(score_goal(full, state).base == 9.8);
}

TEST_CASE("conditioning reaches every exec candidate") {
    const Node leaf = Node::leaf("v", {cve("CVE-2000-0001", H), cve("CVE-2000-0002", L, PrivilegesRequired::Low)});
    const Goal g = goal_of(Node::sand(Node::leaf("p", {cve("CVE-2000-0003", L)}), leaf));
    const auto state = baseline_state();
    const Evaluator ev(g, state);
    const auto& v = g.root.exec();
    CHECK(ev.treated_leaf(v, std::nullopt).e == doctest::Approx(kNLLN));
    CHECK(ev.treated_leaf(v, L).e == doctest::Approx(kNLNN));  // (N,H,N,N) relabelled L
    CHECK(ev.treated_leaf(v, H).e == doctest::Approx(kNHNN));
    CHECK(ev.treated_leaf(v, H).ac_label == H);
}

TEST_CASE("scores under a scenario") {
    const Model m = testing::load("g1.adt");
    const Goal& g = *m.find_goal("G1");
    const auto s2 = make_state(m, g, *m.find_scenario("S2"));
    const Evaluator ev(g, s2);
    const auto rows = ev.score_branches();
    const auto& b1 = row(rows, "B1_prompt_injection");
    CHECK(*b1.e_pre == doctest::Approx(kNHLN));
    CHECK(*b1.ac_maj == H);
    CHECK(*b1.e_exec_star == doctest::Approx(kNHNN));
    CHECK(b1.e_path == doctest::Approx(kNHLN));
    CHECK(b1.base == 5.3);
    // Untouched branches keep their baseline values.
    CHECK(row(rows, "B2_session_mismanagement").e_path == doctest::Approx(kNLNN));

    const auto branches = ev.branches();
    REQUIRE(branches.size() == 5);
    CHECK(branches[2].second == "B3_orchestration_errors");
    CHECK(branch_name(*branches[2].first, 2) == "B3_orchestration_errors");
}
