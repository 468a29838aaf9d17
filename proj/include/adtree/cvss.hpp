#pragma once

// CVSS v3.1 exploitability and base-score arithmetic, Scope:Unchanged only.

#include <array>
#include <optional>
#include <string>
#include <string_view>

namespace adtree {

// Enumerators are ordered from most permissive to hardest, so the underlying
// value doubles as a hardness rank.
enum class AttackVector { Network, Adjacent, Local, Physical };
enum class AttackComplexity { Low, High };
enum class PrivilegesRequired { None, Low, High };
enum class UserInteraction { None, Required };

enum class Metric { AV, AC, PR, UI };

inline constexpr std::array<Metric, 4> kAllMetrics = {Metric::AV, Metric::AC, Metric::PR, Metric::UI};

struct MetricVector {
    AttackVector av = AttackVector::Network;
    AttackComplexity ac = AttackComplexity::Low;
    PrivilegesRequired pr = PrivilegesRequired::None;
    UserInteraction ui = UserInteraction::None;

    friend bool operator==(const MetricVector&, const MetricVector&) = default;
};

struct ImpactTriple {
    double c = 0.0;
    double i = 0.0;
    double a = 0.0;

    friend bool operator==(const ImpactTriple&, const ImpactTriple&) = default;
};

enum class Severity { None, Low, Medium, High, Critical };

struct BaseScore {
    double value = 0.0;
    Severity severity = Severity::None;
};

namespace weights {
inline constexpr double kExploitabilityCoefficient = 8.22;
inline constexpr double kImpactCoefficient = 6.42;

inline constexpr std::array<double, 4> kAttackVector = {0.85, 0.62, 0.55, 0.20};
inline constexpr std::array<double, 2> kAttackComplexity = {0.77, 0.44};
// Scope:Unchanged column.
inline constexpr std::array<double, 3> kPrivilegesRequired = {0.85, 0.62, 0.27};
inline constexpr std::array<double, 2> kUserInteraction = {0.85, 0.62};

inline constexpr double kImpactNone = 0.00;
inline constexpr double kImpactLow = 0.22;
inline constexpr double kImpactHigh = 0.56;
}  // namespace weights

double weight(AttackVector v);
double weight(AttackComplexity v);
double weight(PrivilegesRequired v);
double weight(UserInteraction v);

/// 8.22 * AV * AC * PR * UI, unrounded.
double exploitability(const MetricVector& v);

/// 1 - (1-C)(1-I)(1-A). Throws std::domain_error if a component is outside [0, 1].
double isc_base(const ImpactTriple& t);

/// 6.42 * ISC, unrounded.
double impact_subscore(const ImpactTriple& t);

/// Smallest one-decimal value >= x, with the CVSS v3.1 guard against
/// floating-point noise.
double roundup(double x);

Severity severity_of(double base);

/// round_up(min(Impact + E, 10)); zero when the impact triple is all None.
BaseScore base_score(double e_path, const ImpactTriple& t);

// Hardness rank access by metric.
int level(const MetricVector& v, Metric m);
MetricVector with_level(MetricVector v, Metric m, int level);
int level_count(Metric m);
char level_code(Metric m, int level);
std::optional<int> parse_level(Metric m, std::string_view code);
std::string_view metric_name(Metric m);
std::optional<Metric> parse_metric(std::string_view name);

AttackComplexity harder(AttackComplexity a, AttackComplexity b);
char ac_code(AttackComplexity ac);

std::string_view severity_name(Severity s);

/// Short form "AV:N/AC:L/PR:N/UI:N".
std::string to_string(const MetricVector& v);
std::optional<MetricVector> parse_vector(std::string_view text);

}  // namespace adtree
