#pragma once

#include <string>
#include <vector>

namespace bracecalc {

// Formal calculus of J-homomorphism expressions.  The rewriting rules are:
//   (1) additivity:      J[a + b]      ->  J[a] + J[b]  (and scalars move out)
//   (2) naturality:      J[phi . a]    ->  phi_* J[a]
//   (3) epsilon rule:    J[epsilon]    ->  0   when the base is a suspension
//   (4) constant rule:   J[const]      ->  0
// The rule set is confluent and terminating; any application order reaches
// the same normal form (a sorted integer combination of pushed-forward
// J-atoms), which is what the randomized-order checks exercise.

struct JAtom {
    enum class Kind { Rho, Epsilon, ConstMap };
    Kind kind = Kind::Rho;
    std::string name;  // display name, e.g. "rho" or "eps"

    friend bool operator==(const JAtom& a, const JAtom& b) {
        return a.kind == b.kind && a.name == b.name;
    }
};

// Expression tree.  Compose nodes only make sense inside a J node (a map
// precomposed with the classifying class); Push nodes are pushforwards
// applied outside J.
struct JNode {
    enum class Kind { Zero, Atom, J, Push, Scale, Sum, Compose };
    Kind kind = Kind::Zero;
    long long coeff = 1;     // Scale payload
    std::string map_name;    // Push / Compose payload
    JAtom leaf;              // Atom payload
    std::vector<JNode> children;

    static JNode zero();
    static JNode atom(JAtom::Kind kind, std::string name);
    static JNode j(JNode arg);
    static JNode push(std::string map, JNode arg);
    static JNode scale(long long c, JNode arg);
    static JNode sum(std::vector<JNode> terms);
    static JNode compose(std::string map, JNode arg);
};

// Normal form: sum of coeff * (pushforwards applied to J[atom]).
// `pushforwards` is outermost-first.
struct JTerm {
    long long coeff = 0;
    std::vector<std::string> pushforwards;
    JAtom atom;
};
using JNormalForm = std::vector<JTerm>;

bool operator==(const JTerm& a, const JTerm& b);
bool operator==(const JNormalForm& a, const JNormalForm& b);

// Deterministic full normalization.
JNormalForm j_normal_form(const JNode& expr, bool base_is_suspension);

// Small-step interface used by the randomized-order confluence checks.
// A redex is a tree position (child indices from the root) plus the rule
// that fires there.
struct JRedex {
    std::vector<int> path;
    int rule = 0;
};
std::vector<JRedex> j_redexes(const JNode& expr, bool base_is_suspension);
JNode j_apply_redex(const JNode& expr, const JRedex& r);
// Reads the terms off a tree with no redexes left.
JNormalForm j_read_normal_form(const JNode& expr);

std::string to_string(const JNormalForm& nf);

}  // namespace bracecalc
