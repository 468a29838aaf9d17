#pragma once

#include <algorithm>
#include <ostream>
#include <string>
#include <vector>

namespace adtree {

struct SourceSpan {
    std::string file;
    int line = 1;    // 1-based
    int column = 1;  // 1-based
    int length = 0;

    bool covers(int l, int c) const { return line == l && c >= column && c < column + std::max(length, 1); }
};

enum class DiagnosticSeverity { Error, Warning };

struct Diagnostic {
    DiagnosticSeverity severity = DiagnosticSeverity::Error;
    SourceSpan span;
    std::string code;
    std::string message;

    bool is_error() const { return severity == DiagnosticSeverity::Error; }
};

inline bool has_errors(const std::vector<Diagnostic>& diags) {
    for (const auto& d : diags) {
        if (d.is_error()) return true;
    }
    return false;
}

/// "file:line:col: error[CODE]: message"
inline std::ostream& operator<<(std::ostream& os, const Diagnostic& d) {
    os << (d.span.file.empty() ? "<input>" : d.span.file) << ':' << d.span.line << ':' << d.span.column << ": "
       << (d.is_error() ? "error" : "warning") << '[' << d.code << "]: " << d.message;
    return os;
}

}  // namespace adtree
