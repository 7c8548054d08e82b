#pragma once

#include <string>
#include <utility>
#include <vector>

namespace bracecalc {

// Caveat tags attached to verdicts.  A James-level "holds" on a fibration
// that is not a wedge or a suspension-over-suspension never implies the
// generalized brace product vanishes, so it always carries the first tag.
inline constexpr const char* caveat_generalized_brace_not_implied =
    "GENERALIZED_BRACE_NOT_IMPLIED";
inline constexpr const char* caveat_converse_fails = "CONVERSE_FAILS";

enum class Status { Holds, Fails, HoldsUpToDegree, Unknown };

std::string status_name(Status s);

// Qualified answer of a decision operation: the status plus the evidence
// backing it -- a nonzero witness for failures, certificate lines for
// constructive conclusions, caveat tags, and literature citations.
struct Verdict {
    Status status = Status::Unknown;
    int degree = -1;      // degree bound, set when status == HoldsUpToDegree
    std::string witness;  // nonzero obstruction, set exactly when status == Fails
    std::vector<std::string> certificate;
    std::vector<std::string> caveats;
    std::vector<std::string> citations;

    static Verdict holds() {
        Verdict v;
        v.status = Status::Holds;
        return v;
    }
    static Verdict fails(std::string w) {
        Verdict v;
        v.status = Status::Fails;
        v.witness = std::move(w);
        return v;
    }
    static Verdict up_to_degree(int cap) {
        Verdict v;
        v.status = Status::HoldsUpToDegree;
        v.degree = cap;
        return v;
    }
    static Verdict unknown() { return Verdict{}; }

    bool is_fails() const { return status == Status::Fails; }
    bool is_holds() const { return status == Status::Holds; }

    // One-line rendering, e.g. "Fails (witness: 2 ad gamma)".
    std::string summary() const;
};

}  // namespace bracecalc
