#ifndef CRP_TPTP_HPP
#define CRP_TPTP_HPP

#include <optional>
#include <string>
#include <vector>

#include "clause.hpp"

namespace crp {

struct Diagnostic {
    enum class Severity { Warning, Error };
    Severity severity = Severity::Error;
    std::string file;
    int line = 0;
    int column = 0;
    std::string message;
};

std::string formatDiagnostic(const Diagnostic& d);

struct ParseResult {
    std::optional<Problem> problem; // absent when any error was reported
    std::vector<Diagnostic> diagnostics;

    bool ok() const { return problem.has_value(); }
};

// Reads a TPTP CNF problem. Only cnf() formulas and include() directives
// are accepted; fof/tff/thf input is rejected with a "CNF only" error.
// Includes are resolved against `includeDirs` in order, then against the
// directory of the including file, and are expanded depth-first at the
// directive. Warnings (equality literals, unknown roles, include
// selection lists) do not prevent a successful parse.
ParseResult parseProblemFile(const std::string& path,
                             const std::vector<std::string>& includeDirs = {});

// Same grammar for in-memory text; `displayName` is used in diagnostics
// and include resolution falls back to the current directory.
ParseResult parseProblemText(const std::string& text, const std::string& displayName,
                             const std::vector<std::string>& includeDirs = {});

} // namespace crp

#endif
