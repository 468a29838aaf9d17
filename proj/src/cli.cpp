#include "adtree/cli.hpp"

#include <algorithm>
#include <fstream>
#include <optional>

#include <CLI11.hpp>

#include "adtree/dsl.hpp"
#include "adtree/engine.hpp"
#include "adtree/oracle.hpp"
#include "adtree/report.hpp"
#include "adtree/treatment.hpp"

namespace adtree::cli {

namespace {

class UsageError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct Options {
    std::string file;
    std::vector<std::string> files;
    std::string goal;
    std::string scenario;
    std::vector<std::string> scenarios;
    std::string branch;
    std::string format = "table";
    std::string output;
    std::uint64_t seed = 20250101;
    int random = 0;
    std::size_t leaf_bound = kDefaultLeafBound;
};

std::optional<Model> load(const std::string& path, std::ostream& err) {
    auto result = parse_file(path);
    for (const auto& d : result.diagnostics) err << d << "\n";
    return std::move(result.model);
}

const Goal& need_goal(const Model& m, const std::string& name) {
    if (const Goal* g = m.find_goal(name)) return *g;
    throw UsageError("no goal named '" + name + "'");
}

const Scenario& need_scenario(const Model& m, const std::string& name) {
    if (const Scenario* s = m.find_scenario(name)) return *s;
    throw UsageError("no scenario named '" + name + "'");
}

Format need_format(const std::string& name) {
    if (const auto f = parse_format(name)) return *f;
    throw UsageError("unknown format '" + name + "' (expected table, csv or json)");
}

std::optional<std::string> optional_branch(const Options& o) {
    return o.branch.empty() ? std::nullopt : std::optional<std::string>(o.branch);
}

int emit(const std::string& text, const Options& o, std::ostream& out, std::ostream& err) {
    if (o.output.empty()) {
        out << text;
        return kOk;
    }
    std::ofstream file(o.output, std::ios::binary);
    file << text;
    if (!file) {
        err << "error: cannot write " << o.output << "\n";
        return kInvalidModel;
    }
    return kOk;
}

void print_notes(const std::vector<TreatmentReport>& rows, std::ostream& err) {
    for (const auto& r : rows) {
        for (const auto& n : r.notes) err << "note: " << r.scenario << ": " << n << "\n";
    }
}

int cmd_validate(const Options& o, std::ostream&, std::ostream& err) {
    const auto result = parse_file(o.file);
    std::size_t errors = 0;
    std::size_t warnings = 0;
    for (const auto& d : result.diagnostics) {
        err << d << "\n";
        (d.is_error() ? errors : warnings) += 1;
    }
    err << o.file << ": " << errors << " error(s), " << warnings << " warning(s)\n";
    return errors == 0 ? kOk : kInvalidModel;
}

int cmd_score(const Options& o, std::ostream& out, std::ostream& err) {
    const Format format = need_format(o.format);
    const auto model = load(o.file, err);
    if (!model) return kInvalidModel;
    const Goal& goal = need_goal(*model, o.goal);
    const ScenarioState state = o.scenario.empty() ? baseline_state()
                                                   : make_state(*model, goal, need_scenario(*model, o.scenario));
    for (const auto& n : state.detective_notes) err << "note: " << n << "\n";
    const auto rows = score_branches(goal, state);
    out << render_score_table(rows, format);
    return kOk;
}

int cmd_treat(const Options& o, std::ostream& out, std::ostream& err) {
    const Format format = need_format(o.format);
    const auto model = load(o.file, err);
    if (!model) return kInvalidModel;
    const Goal& goal = need_goal(*model, o.goal);
    const Scenario* one[] = {&need_scenario(*model, o.scenario)};
    const auto rows = compare_scenarios(*model, goal, one, optional_branch(o));
    print_notes(rows, err);
    out << render_treatment_table(rows, format);
    return kOk;
}

int cmd_compare(const Options& o, std::ostream& out, std::ostream& err) {
    const Format format = need_format(o.format);
    const auto model = load(o.file, err);
    if (!model) return kInvalidModel;
    const Goal& goal = need_goal(*model, o.goal);
    std::vector<const Scenario*> list;
    for (const auto& name : o.scenarios) list.push_back(&need_scenario(*model, name));
    const auto rows = compare_scenarios(*model, goal, list, optional_branch(o));
    print_notes(rows, err);
    out << render_treatment_table(rows, format);
    return kOk;
}

int cmd_export_dot(const Options& o, std::ostream& out, std::ostream& err) {
    const auto model = load(o.file, err);
    if (!model) return kInvalidModel;
    const Goal& goal = need_goal(*model, o.goal);
    const ScenarioState state = o.scenario.empty() ? baseline_state()
                                                   : make_state(*model, goal, need_scenario(*model, o.scenario));
    return emit(export_dot(goal, state), o, out, err);
}

int cmd_oracle_check(const Options& o, std::ostream& out, std::ostream& err) {
    if (o.files.empty() && o.random <= 0) throw UsageError("oracle-check needs a model file or --random K");
    bool ok = true;
    for (const auto& path : o.files) {
        const auto model = load(path, err);
        if (!model) return kInvalidModel;
        const auto check = check_model(*model, o.leaf_bound);
        for (const auto& m : check.mismatches) out << "MISMATCH " << path << ": " << m << "\n";
        for (const auto& s : check.skipped) out << "SKIPPED " << path << ": " << s << "\n";
        out << path << ": " << check.checked << " path evaluations, " << check.mismatches.size() << " mismatch(es)\n";
        ok = ok && check.ok();
    }
    if (o.random > 0) {
        RandomTreeParams params;
        params.max_candidates = 2;
        std::size_t checked = 0;
        std::size_t mismatches = 0;
        for (int i = 0; i < o.random; ++i) {
            const std::uint64_t seed = o.seed + static_cast<std::uint64_t>(i);
            const auto check = check_model(random_model(seed, params), o.leaf_bound);
            for (const auto& m : check.mismatches) out << "MISMATCH seed " << seed << ": " << m << "\n";
            for (const auto& s : check.skipped) out << "SKIPPED seed " << seed << ": " << s << "\n";
            checked += check.checked;
            mismatches += check.mismatches.size();
            ok = ok && check.ok();
        }
        out << "random: " << o.random << " trees from seed " << o.seed << ", " << checked << " path evaluations, "
            << mismatches << " mismatch(es)\n";
    }
    return ok ? kOk : kOracleMismatch;
}

int cmd_fmt(const Options& o, std::ostream& out, std::ostream& err) {
    const auto model = load(o.file, err);
    if (!model) return kInvalidModel;
    return emit(serialize(*model), o, out, err);
}

int cmd_export_json(const Options& o, std::ostream& out, std::ostream& err) {
    const auto model = load(o.file, err);
    if (!model) return kInvalidModel;
    return emit(to_json(*model) + "\n", o, out, err);
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Attack-defense tree scoring with CVSS v3.1 exploitability", "adtree"};
    app.require_subcommand(1);
    Options o;

    auto* validate = app.add_subcommand("validate", "Parse and validate a model; diagnostics go to stderr");
    validate->add_option("file", o.file, "Model file")->required();

    auto* score = app.add_subcommand("score", "Score every branch of a goal");
    score->add_option("file", o.file, "Model file")->required();
    score->add_option("--goal", o.goal, "Goal name")->required();
    score->add_option("--scenario", o.scenario, "Score after applying this scenario");
    score->add_option("--format", o.format, "table, csv or json");

    auto* treat = app.add_subcommand("treat", "Baseline and treated path for one scenario");
    treat->add_option("file", o.file, "Model file")->required();
    treat->add_option("--goal", o.goal, "Goal name")->required();
    treat->add_option("--scenario", o.scenario, "Scenario name")->required();
    treat->add_option("--branch", o.branch, "Branch or labelled node to report on");
    treat->add_option("--format", o.format, "table, csv or json");

    auto* compare = app.add_subcommand("compare", "Compare scenarios against the baseline");
    compare->add_option("file", o.file, "Model file")->required();
    compare->add_option("--goal", o.goal, "Goal name")->required();
    compare->add_option("--scenarios", o.scenarios, "Comma-separated scenario names")->required()->delimiter(',');
    compare->add_option("--branch", o.branch, "Branch or labelled node to report on");
    compare->add_option("--format", o.format, "table, csv or json");

    auto* dot = app.add_subcommand("export-dot", "Graphviz rendering of a goal tree");
    dot->add_option("file", o.file, "Model file")->required();
    dot->add_option("--goal", o.goal, "Goal name")->required();
    dot->add_option("--scenario", o.scenario, "Show hardened leaves for this scenario");
    dot->add_option("-o,--output", o.output, "Write to this file instead of stdout");

    auto* oracle = app.add_subcommand("oracle-check", "Compare the engine with the brute-force oracle");
    oracle->add_option("files", o.files, "Model files");
    oracle->add_option("--seed", o.seed, "Seed of the first random tree");
    oracle->add_option("--random", o.random, "Number of random trees to check")->check(CLI::NonNegativeNumber);
    oracle->add_option("--leaf-bound", o.leaf_bound, "Largest tree the oracle will enumerate")
        ->check(CLI::PositiveNumber);

    auto* fmt = app.add_subcommand("fmt", "Print a model in canonical form");
    fmt->add_option("file", o.file, "Model file")->required();
    fmt->add_option("-o,--output", o.output, "Write to this file instead of stdout");

    auto* json = app.add_subcommand("export-json", "Print a model as JSON");
    json->add_option("file", o.file, "Model file")->required();
    json->add_option("-o,--output", o.output, "Write to this file instead of stdout");

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp& e) {
        out << app.help();
        return kOk;
    } catch (const CLI::CallForAllHelp& e) {
        out << app.help("", CLI::AppFormatMode::All);
        return kOk;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n";
        if (const auto* sub = app.get_subcommands().empty() ? nullptr : app.get_subcommands().front()) {
            err << sub->help();
        } else {
            err << app.help();
        }
        return kUsage;
    }

    try {
        if (validate->parsed()) return cmd_validate(o, out, err);
        if (score->parsed()) return cmd_score(o, out, err);
        if (treat->parsed()) return cmd_treat(o, out, err);
        if (compare->parsed()) return cmd_compare(o, out, err);
        if (dot->parsed()) return cmd_export_dot(o, out, err);
        if (oracle->parsed()) return cmd_oracle_check(o, out, err);
        if (fmt->parsed()) return cmd_fmt(o, out, err);
        if (json->parsed()) return cmd_export_json(o, out, err);
    } catch (const UsageError& e) {
        err << "error: " << e.what() << "\n";
        return kUsage;
    } catch (const EvaluationError& e) {
        err << "error: " << e.what() << "\n";
        return kInvalidModel;
    }
    return kUsage;
}

}  // namespace adtree::cli
