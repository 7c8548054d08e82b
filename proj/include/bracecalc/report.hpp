#pragma once

#include <string>
#include <utility>
#include <vector>

#include "bracecalc/verdict.hpp"

namespace bracecalc {

inline constexpr const char* tool_version = "0.1.0";

// Result document of one CLI invocation.  Everything is kept in insertion
// order and carries no timestamps, so identical inputs and table files
// render byte-identically; the verdict labels double as the ordering key.
struct Report {
    std::string command;                                      // invocation echo
    std::vector<std::pair<std::string, std::string>> inputs;  // ordered key/value
    std::vector<std::pair<std::string, Verdict>> verdicts;    // labelled
    std::vector<std::string> notes;                           // free-form result lines
    std::vector<std::string> tables_used;                     // citations, deduplicated

    void add_verdict(std::string label, Verdict v);
    void cite(const std::vector<std::string>& citations);

    // 2 when any verdict fails, 0 otherwise
    int exit_code() const;
};

std::string render_text(const Report& r);
std::string render_json(const Report& r);  // 2-space indent, trailing newline

}  // namespace bracecalc
