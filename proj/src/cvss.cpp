#include "adtree/cvss.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace adtree {

namespace {

constexpr std::string_view kAvCodes = "NALP";
constexpr std::string_view kAcCodes = "LH";
constexpr std::string_view kPrCodes = "NLH";
constexpr std::string_view kUiCodes = "NR";

std::string_view codes(Metric m) {
    switch (m) {
    case Metric::AV: return kAvCodes;
    case Metric::AC: return kAcCodes;
    case Metric::PR: return kPrCodes;
    case Metric::UI: return kUiCodes;
    }
    return {};
}

void check_component(double x, const char* name) {
    if (!(x >= 0.0 && x <= 1.0)) {
        throw std::domain_error(std::string("impact component ") + name + " outside [0, 1]");
    }
}

}  // namespace

double weight(AttackVector v) { return weights::kAttackVector[static_cast<int>(v)]; }
double weight(AttackComplexity v) { return weights::kAttackComplexity[static_cast<int>(v)]; }
double weight(PrivilegesRequired v) { return weights::kPrivilegesRequired[static_cast<int>(v)]; }
double weight(UserInteraction v) { return weights::kUserInteraction[static_cast<int>(v)]; }

double exploitability(const MetricVector& v) {
    return weights::kExploitabilityCoefficient * weight(v.av) * weight(v.ac) * weight(v.pr) * weight(v.ui);
}

double isc_base(const ImpactTriple& t) {
    check_component(t.c, "C");
    check_component(t.i, "I");
    check_component(t.a, "A");
    return 1.0 - (1.0 - t.c) * (1.0 - t.i) * (1.0 - t.a);
}

double impact_subscore(const ImpactTriple& t) { return weights::kImpactCoefficient * isc_base(t); }

double roundup(double x) {
    const auto scaled = std::llround(x * 100000.0);
    if (scaled % 10000 == 0) {
        return static_cast<double>(scaled) / 100000.0;
    }
    return (std::floor(static_cast<double>(scaled) / 10000.0) + 1.0) / 10.0;
}

Severity severity_of(double base) {
    if (base <= 0.0) return Severity::None;
    if (base < 4.0) return Severity::Low;
    if (base < 7.0) return Severity::Medium;
    if (base < 9.0) return Severity::High;
    return Severity::Critical;
}

BaseScore base_score(double e_path, const ImpactTriple& t) {
    if (isc_base(t) <= 0.0) {
        return {0.0, Severity::None};
    }
    const double value = roundup(std::min(impact_subscore(t) + e_path, 10.0));
    return {value, severity_of(value)};
}

int level(const MetricVector& v, Metric m) {
    switch (m) {
    case Metric::AV: return static_cast<int>(v.av);
    case Metric::AC: return static_cast<int>(v.ac);
    case Metric::PR: return static_cast<int>(v.pr);
    case Metric::UI: return static_cast<int>(v.ui);
    }
    return 0;
}

MetricVector with_level(MetricVector v, Metric m, int lvl) {
    if (lvl < 0 || lvl >= level_count(m)) {
        throw std::out_of_range("metric level out of range");
    }
    switch (m) {
    case Metric::AV: v.av = static_cast<AttackVector>(lvl); break;
    case Metric::AC: v.ac = static_cast<AttackComplexity>(lvl); break;
    case Metric::PR: v.pr = static_cast<PrivilegesRequired>(lvl); break;
    case Metric::UI: v.ui = static_cast<UserInteraction>(lvl); break;
    }
    return v;
}

int level_count(Metric m) { return static_cast<int>(codes(m).size()); }

char level_code(Metric m, int lvl) { return codes(m).at(static_cast<std::size_t>(lvl)); }

std::optional<int> parse_level(Metric m, std::string_view code) {
    if (code.size() != 1) return std::nullopt;
    const auto pos = codes(m).find(code.front());
    if (pos == std::string_view::npos) return std::nullopt;
    return static_cast<int>(pos);
}

std::string_view metric_name(Metric m) {
    switch (m) {
    case Metric::AV: return "AV";
    case Metric::AC: return "AC";
    case Metric::PR: return "PR";
    case Metric::UI: return "UI";
    }
    return "?";
}

std::optional<Metric> parse_metric(std::string_view name) {
    for (Metric m : kAllMetrics) {
        if (metric_name(m) == name) return m;
    }
    return std::nullopt;
}

AttackComplexity harder(AttackComplexity a, AttackComplexity b) {
    return (a == AttackComplexity::High || b == AttackComplexity::High) ? AttackComplexity::High
                                                                        : AttackComplexity::Low;
}

char ac_code(AttackComplexity ac) { return ac == AttackComplexity::Low ? 'L' : 'H'; }

std::string_view severity_name(Severity s) {
    switch (s) {
    case Severity::None: return "None";
    case Severity::Low: return "Low";
    case Severity::Medium: return "Medium";
    case Severity::High: return "High";
    case Severity::Critical: return "Critical";
    }
    return "?";
}

std::string to_string(const MetricVector& v) {
    std::string out;
    for (Metric m : kAllMetrics) {
        if (!out.empty()) out += '/';
        out += metric_name(m);
        out += ':';
        out += level_code(m, level(v, m));
    }
    return out;
}

std::optional<MetricVector> parse_vector(std::string_view text) {
    MetricVector v;
    std::array<bool, 4> seen{};
    while (!text.empty()) {
        const auto slash = text.find('/');
        const auto part = text.substr(0, slash);
        text = slash == std::string_view::npos ? std::string_view{} : text.substr(slash + 1);
        const auto colon = part.find(':');
        if (colon == std::string_view::npos) return std::nullopt;
        const auto metric = parse_metric(part.substr(0, colon));
        if (!metric) return std::nullopt;
        const auto lvl = parse_level(*metric, part.substr(colon + 1));
        auto& flag = seen[static_cast<std::size_t>(*metric)];
        if (!lvl || flag) return std::nullopt;
        flag = true;
        v = with_level(v, *metric, *lvl);
    }
    if (!std::all_of(seen.begin(), seen.end(), [](bool b) { return b; })) return std::nullopt;
    return v;
}

}  // namespace adtree
