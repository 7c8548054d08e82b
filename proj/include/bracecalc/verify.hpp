#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace bracecalc {

class ClutchingTable;

// Outcome of one property suite.  `trials` counts every round that ran,
// including the deterministic baseline rounds a suite prepends (e.g. the
// shipped exact-sequence audits).  Mutation rounds corrupt a single entry
// of otherwise-valid data and demand that the corresponding audit object;
// an unnoticed corruption counts against mutations_detected.
struct SuiteResult {
    std::string suite;
    int trials = 0;
    int passes = 0;
    int failures = 0;
    std::vector<std::string> witnesses;  // minimized, capped at a handful
    int mutations_total = 0;
    int mutations_detected = 0;

    bool ok() const { return failures == 0 && mutations_detected == mutations_total; }
};

// Runs one of the property suites:
//   jacobi      random free graded Lie algebras: antisymmetry in both
//               gradings, the Whitehead-signed Jacobi sum, bilinearity.
//   derivation  random valid split fibrations: the brace acts on the fibre
//               as a graded derivation; mutation rounds plant one
//               inconsistent composite row and expect a Fails witness.
//   lie-map     same, for the Lie-map identity in the base variable.
//   exactness   audits every shipped exact sequence, then mutation rounds
//               corrupt one matrix column or element and expect
//               AuditFailure.
//   j-rules     random J-expressions: rewriting in random redex order
//               reaches the deterministic normal form.
// degree_cap <= 0 picks the suite default (Whitehead degree 12 for jacobi,
// combined Whitehead degree 9 for derivation/lie-map).  Trials fan out
// across a worker pool -- every callee is pure and each trial owns an RNG
// stream derived from (seed, index) -- so results are order-independent.
// Throws UnknownSuite for any other name.
SuiteResult run_suite(const std::string& suite, int trials, int degree_cap,
                      std::uint64_t seed, const ClutchingTable& tables);

}  // namespace bracecalc
