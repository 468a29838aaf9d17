#include "adtree/report.hpp"

#include <algorithm>
#include <cstdio>
#include <stdexcept>
#include <vector>

#include <nlohmann/json.hpp>

namespace adtree {

namespace {

using Row = std::vector<std::string>;

std::string fixed(double x, int decimals) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*f", decimals, x);
    return buf;
}

// JSON numbers carry exactly the digits shown in the text renderings.
double shown(const std::string& cell) { return std::stod(cell); }

std::string ac_word(AttackComplexity ac) { return ac == AttackComplexity::Low ? "Low" : "High"; }

std::string base_cell(double base, Severity severity) {
    return format_base(base) + " (" + std::string(severity_name(severity)) + ")";
}

std::string render_table(const Row& header, const std::vector<Row>& rows) {
    std::vector<std::size_t> width(header.size());
    for (std::size_t c = 0; c < header.size(); ++c) {
        width[c] = header[c].size();
        for (const auto& r : rows) width[c] = std::max(width[c], r[c].size());
    }
    auto line = [&](const Row& r) {
        std::string out;
        for (std::size_t c = 0; c < r.size(); ++c) {
            if (c > 0) out += " | ";
            out += r[c];
            if (c + 1 < r.size()) out.append(width[c] - r[c].size(), ' ');
        }
        return out + "\n";
    };
    std::string out = line(header);
    for (std::size_t c = 0; c < width.size(); ++c) {
        if (c > 0) out += "-+-";
        out.append(width[c], '-');
    }
    out += "\n";
    for (const auto& r : rows) out += line(r);
    return out;
}

std::string csv_cell(const std::string& s) {
    if (s.find_first_of(",\"\r\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char ch : s) {
        if (ch == '"') out += '"';
        out += ch;
    }
    return out + "\"";
}

std::string render_csv(const Row& header, const std::vector<Row>& rows) {
    auto line = [](const Row& r) {
        std::string out;
        for (std::size_t c = 0; c < r.size(); ++c) {
            if (c > 0) out += ',';
            out += csv_cell(r[c]);
        }
        return out + "\r\n";
    };
    std::string out = line(header);
    for (const auto& r : rows) out += line(r);
    return out;
}

nlohmann::ordered_json impact_json(const ImpactTriple& t) {
    return {{"c", shown(fixed(t.c, 2))}, {"i", shown(fixed(t.i, 2))}, {"a", shown(fixed(t.a, 2))}};
}

nlohmann::ordered_json optional_e(const std::optional<double>& e) {
    return e ? nlohmann::ordered_json(shown(format_e(*e))) : nlohmann::ordered_json(nullptr);
}

nlohmann::ordered_json path_json(const PathScore& s) {
    nlohmann::ordered_json j;
    j["branch"] = s.branch;
    j["e_pre"] = optional_e(s.e_pre);
    j["ac_maj"] = s.ac_maj ? nlohmann::ordered_json(std::string(1, ac_code(*s.ac_maj))) : nlohmann::ordered_json(nullptr);
    j["e_exec_star"] = optional_e(s.e_exec_star);
    j["e_path"] = shown(format_e(s.e_path));
    j["impact"] = impact_json(s.impact);
    j["impact_subscore"] = shown(format_e(s.impact_subscore));
    j["base"] = shown(format_base(s.base));
    j["severity"] = std::string(severity_name(s.severity));
    return j;
}

std::string defense_set(const TreatmentReport& r) {
    if (r.applied.empty()) return "None";
    // Controls grouped by target, in order of first appearance.
    std::vector<std::pair<std::string, std::string>> groups;
    for (const auto& a : r.applied) {
        const std::string target = a.target.to_string();
        auto it = std::find_if(groups.begin(), groups.end(), [&](const auto& g) { return g.first == target; });
        if (it == groups.end()) {
            groups.emplace_back(target, a.control);
        } else {
            it->second += ", " + a.control;
        }
    }
    std::string out;
    for (const auto& [target, controls] : groups) {
        if (!out.empty()) out += "; ";
        out += target + ": " + controls;
    }
    return out;
}

}  // namespace

std::optional<Format> parse_format(std::string_view name) {
    if (name == "table") return Format::Table;
    if (name == "csv") return Format::Csv;
    if (name == "json") return Format::Json;
    return std::nullopt;
}

std::string format_e(double e) { return fixed(e, 2); }

std::string format_base(double base) { return fixed(base, 1); }

std::string format_impact(const ImpactTriple& t) {
    return "(" + fixed(t.c, 2) + ", " + fixed(t.i, 2) + ", " + fixed(t.a, 2) + ")";
}

std::string format_cost(const std::optional<CostRange>& range) {
    if (!range) return "--";
    if (range->min == range->max) return std::to_string(range->min);
    return std::to_string(range->min) + "-" + std::to_string(range->max);
}

std::string render_score_table(std::span<const PathScore> results, Format format) {
    if (results.empty()) throw std::invalid_argument("no score rows to render");
    if (format == Format::Json) {
        auto j = nlohmann::ordered_json::array();
        for (const auto& s : results) j.push_back(path_json(s));
        return j.dump(2) + "\n";
    }
    const Row header = {"Branch", "E_path", "AC_maj", "(C,I,A)", "Base (S:U)"};
    std::vector<Row> rows;
    for (const auto& s : results) {
        rows.push_back({s.branch, format_e(s.e_path), s.ac_maj ? ac_word(*s.ac_maj) : "--", format_impact(s.impact),
                        base_cell(s.base, s.severity)});
    }
    return format == Format::Csv ? render_csv(header, rows) : render_table(header, rows);
}

std::string render_treatment_table(std::span<const TreatmentReport> reports, Format format) {
    if (reports.empty()) throw std::invalid_argument("no treatment rows to render");
    if (format == Format::Json) {
        auto j = nlohmann::ordered_json::array();
        for (const auto& r : reports) {
            nlohmann::ordered_json row;
            row["id"] = r.scenario;
            row["branch"] = r.branch;
            auto applied = nlohmann::ordered_json::array();
            for (const auto& a : r.applied) {
                applied.push_back({{"control", a.control},
                                   {"target", a.target.to_string()},
                                   {"class", a.cls == ControlClass::Detective ? "detective" : "preventive"},
                                   {"cost", a.cost}});
            }
            row["applied"] = applied;
            row["baseline"] = path_json(r.baseline);
            row["treated"] = path_json(r.treated);
            row["delta_e"] = shown(format_e(r.delta_e));
            row["cost"] = format_cost(r.cost_range);
            row["cost_sum"] = r.cost_sum;
            row["notes"] = r.notes;
            j.push_back(std::move(row));
        }
        return j.dump(2) + "\n";
    }
    const Row header = {"ID", "Defense Set", "E(P)", "AC_maj(P)", "E(V*)", "E_path", "Final Base (S:U)", "Cost"};
    std::vector<Row> rows;
    for (const auto& r : reports) {
        const auto& t = r.treated;
        rows.push_back({r.scenario, defense_set(r), t.e_pre ? format_e(*t.e_pre) : "--",
                        t.ac_maj ? std::string(1, ac_code(*t.ac_maj)) : "--",
                        t.e_exec_star ? format_e(*t.e_exec_star) : "--", format_e(t.e_path),
                        base_cell(t.base, t.severity), format_cost(r.cost_range)});
    }
    return format == Format::Csv ? render_csv(header, rows) : render_table(header, rows);
}

}  // namespace adtree
