#pragma once

// Brute-force reference evaluator. It enumerates every satisfying leaf set of
// a (small) tree and scores each one directly. Only the CVSS weight table is
// shared with the compositional engine.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include "adtree/cvss.hpp"
#include "adtree/model.hpp"
#include "adtree/scenario_state.hpp"

namespace adtree {

inline constexpr std::size_t kDefaultLeafBound = 16;

class OracleError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Role of a leaf occurrence relative to its innermost enclosing SAND.
enum class PathRole { Plain, Pre, Exec };

struct PathStep {
    std::string leaf;
    PathRole role = PathRole::Plain;
    std::size_t occurrence = 0;  // position of this leaf occurrence in a depth-first walk
};

/// One satisfying set: every step must succeed. Pre steps of a SAND precede
/// its exec steps.
struct AttackPath {
    std::vector<PathStep> steps;

    std::vector<std::string> leaf_names() const;  // sorted, without duplicates
};

struct AttackPathSet {
    std::vector<AttackPath> paths;
    std::size_t leaf_occurrences = 0;
};

/// Enumerates satisfying sets of `node` (references expanded). Throws
/// OracleError when the subtree holds more than `leaf_bound` leaf occurrences.
AttackPathSet enumerate_paths(const Goal& goal, const Node& node, std::size_t leaf_bound = kDefaultLeafBound);

struct OracleScore {
    double e = 0.0;
    std::optional<AttackComplexity> ac_maj;  // set when `node` is a SAND
};

/// Max over enumerated paths of the min post-treatment E along the path, with
/// every execution-side occurrence conditioned on the majority AC label of its
/// SAND's full precondition family.
OracleScore brute_force_score(const Goal& goal, const Node& node, const ScenarioState& state,
                              std::size_t leaf_bound = kDefaultLeafBound);

struct RandomTreeParams {
    int max_depth = 4;
    int max_fanout = 3;
    double sand_probability = 0.3;
    int max_leaves = 12;
    int max_candidates = 1;  // CVE candidates per leaf
    int controls = 6;
    int scenarios = 4;
};

/// Outcome of comparing the engine with the oracle over a model: every
/// branch of every goal, under the baseline and each scenario that applies
/// to the goal.
struct OracleCheck {
    std::size_t checked = 0;
    std::vector<std::string> mismatches;
    std::vector<std::string> skipped;  // paths beyond the leaf bound

    bool ok() const { return mismatches.empty() && skipped.empty(); }
};

OracleCheck check_model(const Model& model, std::size_t leaf_bound = kDefaultLeafBound);

/// A validated model with one goal "R", preventive controls attached to every
/// leaf, one detective control, and conflict-free scenarios.
Model random_model(std::uint64_t seed, const RandomTreeParams& params = {});

/// A random conflict-free scenario over `model`'s first goal with up to
/// `max_applications` applications.
Scenario random_scenario(const Model& model, std::mt19937_64& rng, int max_applications, std::string name);

}  // namespace adtree
