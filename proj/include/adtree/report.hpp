#pragma once

// Text, CSV and JSON renderings of score and treatment results, and DOT export
// of goal trees. Renderers only format; every number comes from the engine.

#include <optional>
#include <span>
#include <string>
#include <string_view>

#include "adtree/engine.hpp"
#include "adtree/model.hpp"
#include "adtree/scenario_state.hpp"
#include "adtree/treatment.hpp"

namespace adtree {

enum class Format { Table, Csv, Json };

std::optional<Format> parse_format(std::string_view name);

/// E values to two decimals, base scores to one.
std::string format_e(double e);
std::string format_base(double base);
std::string format_impact(const ImpactTriple& t);  // "(0.00, 0.56, 0.00)"
std::string format_cost(const std::optional<CostRange>& range);  // "--", "3", "2-3"

/// Columns: Branch | E_path | AC_maj | (C,I,A) | Base (S:U).
std::string render_score_table(std::span<const PathScore> results, Format format);

/// Columns: ID | Defense Set | E(P) | AC_maj(P) | E(V*) | E_path | Final Base (S:U) | Cost.
std::string render_treatment_table(std::span<const TreatmentReport> reports, Format format);

/// Graphviz digraph of `goal` under `state`, with a legend cluster.
std::string export_dot(const Goal& goal, const ScenarioState& state);

}  // namespace adtree
