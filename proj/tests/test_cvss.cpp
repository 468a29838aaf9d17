#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include "adtree/cvss.hpp"
#include "support.hpp"

using namespace adtree;
using namespace testing;

namespace {

MetricVector vec(AttackVector av, AttackComplexity ac, PrivilegesRequired pr, UserInteraction ui) {
    return {av, ac, pr, ui};
}

constexpr auto N = AttackVector::Network;
constexpr auto L = AttackComplexity::Low;
constexpr auto H = AttackComplexity::High;

}  // namespace

TEST_CASE("exploitability matches the published vectors") {
    const struct {
        MetricVector v;
        double shown;
        double longhand;
    } cases[] = {
        {vec(N, L, PrivilegesRequired::None, UserInteraction::None), 3.89, longhand_e(w::N, w::AC_L, w::N, w::N)},
        {vec(N, L, PrivilegesRequired::Low, UserInteraction::None), 2.84, longhand_e(w::N, w::AC_L, w::PR_L, w::N)},
        {vec(N, H, PrivilegesRequired::None, UserInteraction::None), 2.22, longhand_e(w::N, w::AC_H, w::N, w::N)},
        {vec(N, H, PrivilegesRequired::High, UserInteraction::None), 0.71, longhand_e(w::N, w::AC_H, w::PR_H, w::N)},
        {vec(N, H, PrivilegesRequired::None, UserInteraction::Required), 1.62,
         longhand_e(w::N, w::AC_H, w::N, w::UI_R)},
    };
    for (const auto& c : cases) {
        CAPTURE(to_string(c.v));
        CHECK(exploitability(c.v) == doctest::Approx(c.longhand).epsilon(1e-12));
        CHECK(std::abs(exploitability(c.v) - c.shown) <= 0.005);
    }
}

TEST_CASE("(N,L,N,N) is the global maximum and single-metric hardening strictly decreases E") {
    const double top = exploitability({});
    for (int av = 0; av < 4; ++av) {
        for (int ac = 0; ac < 2; ++ac) {
            for (int pr = 0; pr < 3; ++pr) {
                for (int ui = 0; ui < 2; ++ui) {
                    const MetricVector v{static_cast<AttackVector>(av), static_cast<AttackComplexity>(ac),
                                         static_cast<PrivilegesRequired>(pr), static_cast<UserInteraction>(ui)};
                    CHECK(exploitability(v) <= top);
                    CHECK(exploitability(v) > 0.0);
                    for (Metric m : kAllMetrics) {
                        if (level(v, m) + 1 < level_count(m)) {
                            CHECK(exploitability(with_level(v, m, level(v, m) + 1)) < exploitability(v));
                        }
                    }
                }
            }
        }
    }
}

TEST_CASE("impact sub-scores") {
    CHECK(isc_base({0, 0.56, 0}) == doctest::Approx(0.56));
    CHECK(isc_base({0, 0, 0}) == 0.0);
    CHECK(isc_base({0.56, 0.56, 0.56}) == doctest::Approx(1.0 - 0.44 * 0.44 * 0.44));
    CHECK(impact_subscore({0, 0.56, 0}) == doctest::Approx(6.42 * 0.56));
    CHECK(impact_subscore({0.56, 0, 0}) == doctest::Approx(3.5952));
    CHECK(impact_subscore({0, 0, 0}) == 0.0);
    CHECK_THROWS_AS(isc_base({1.2, 0, 0}), std::domain_error);
    CHECK_THROWS_AS(isc_base({0, -0.1, 0}), std::domain_error);
}

TEST_CASE("roundup") {
    CHECK(roundup(5.70) == 5.7);
    CHECK(roundup(7.4822) == 7.5);
    CHECK(roundup(4.0) == 4.0);
    CHECK(roundup(4.02) == 4.1);
    CHECK(roundup(0.0) == 0.0);
    // Noise just above a one-decimal value is absorbed rather than rounded up.
    CHECK(roundup(0.1 + 0.2) == doctest::Approx(0.3));
    CHECK(roundup(3.000001) == 3.0);
    for (int i = 0; i <= 10000; ++i) {
        const double x = i / 1000.0;
        const double r = roundup(x);
        CHECK(r >= x - 1e-9);
        CHECK(r - x < 0.1);
        CHECK(roundup(r) == r);
    }
}

TEST_CASE("base score and severity bands") {
    const double e_max = exploitability({});
    auto b = base_score(e_max, {0, 0.56, 0});
    CHECK(b.value == 7.5);
    CHECK(b.severity == Severity::High);
    b = base_score(exploitability({N, H, PrivilegesRequired::None, UserInteraction::None}), {0, 0.56, 0});
    CHECK(b.value == 5.9);
    CHECK(b.severity == Severity::Medium);
    b = base_score(2.10, {0.56, 0, 0});
    CHECK(b.value == 5.7);
    CHECK(b.severity == Severity::Medium);
    b = base_score(e_max, {0, 0, 0});
    CHECK(b.value == 0.0);
    CHECK(b.severity == Severity::None);
    CHECK(base_score(e_max, {0.56, 0.56, 0.56}).value == 9.8);
    CHECK(base_score(e_max, {0.56, 0.56, 0.56}).severity == Severity::Critical);

    CHECK(severity_of(0.0) == Severity::None);
    CHECK(severity_of(0.1) == Severity::Low);
    CHECK(severity_of(3.9) == Severity::Low);
    CHECK(severity_of(4.0) == Severity::Medium);
    CHECK(severity_of(6.9) == Severity::Medium);
    CHECK(severity_of(7.0) == Severity::High);
    CHECK(severity_of(8.9) == Severity::High);
    CHECK(severity_of(9.0) == Severity::Critical);
    CHECK(severity_of(10.0) == Severity::Critical);
}

TEST_CASE("vector text form") {
    const MetricVector v{AttackVector::Adjacent, H, PrivilegesRequired::Low, UserInteraction::Required};
    CHECK(to_string(v) == "AV:A/AC:H/PR:L/UI:R");
    CHECK(parse_vector("AV:A/AC:H/PR:L/UI:R") == v);
    CHECK_FALSE(parse_vector("AV:A/AC:X/PR:L/UI:R"));
    CHECK_FALSE(parse_vector("AV:A/AC:H/PR:L"));
    CHECK(harder(L, H) == H);
    CHECK(harder(L, L) == L);
}
