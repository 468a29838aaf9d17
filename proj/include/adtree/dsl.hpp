#pragma once

// Reader and writer for the `.adt` model format.
//
//   model "name" {
//     control mfa { cost 3; class preventive; transform PR L -> H; }
//     goal G1 {
//       impact C:0 I:0.56 A:0;
//       sand B1 {
//         pre or { leaf a { cve "CVE-2025-0001" vector AV:N AC:L PR:L UI:N; defenses [mfa]; } ... }
//         exec leaf v { cve "CVE-2025-0002" vector AV:N AC:L PR:N UI:N; }
//       }
//     }
//     scenario S1 { apply mfa -> a; }
//   }
//
// Connectors take an optional label (`or P_G3 { ... }`); a bare identifier in
// node position refers to a leaf or labelled connector of the same tree.

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "adtree/diagnostic.hpp"
#include "adtree/model.hpp"

namespace adtree {

struct ParseResult {
    std::optional<Model> model;  // present iff `diagnostics` holds no error
    std::vector<Diagnostic> diagnostics;

    bool ok() const { return model.has_value(); }
};

/// Lexes, parses and validates. Lexical, syntax and semantic failures carry
/// distinct codes (E-LEX, E-SYNTAX / E-BAD-METRIC / E-SCOPE-CHANGED, and the
/// validator's codes respectively).
ParseResult parse(std::string_view text, std::string file = {});

/// Reads a file and parses it; an unreadable file yields an E-IO diagnostic.
ParseResult parse_file(const std::string& path);

/// Canonical text: two-space indent, controls in name order, LF line ends.
std::string serialize(const Model& model);

/// Stable-key JSON document mirroring the model.
std::string to_json(const Model& model, int indent = 2);

}  // namespace adtree
