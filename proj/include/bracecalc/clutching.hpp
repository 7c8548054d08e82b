#pragma once

#include <optional>
#include <string>
#include <vector>

#include "bracecalc/abelian.hpp"
#include "bracecalc/jterms.hpp"
#include "bracecalc/tables.hpp"
#include "bracecalc/verdict.hpp"

namespace bracecalc {

// An S^q bundle over S^n with SO(q+1) structure, encoded by its clutching
// class rho in pi_{n-1}(SO(q+1)).  The optional lift is a vector-bundle
// representative xi in pi_{n-1}(SO(q)) with iota_* xi = rho; the optional
// j_image short-circuits table resolution of J[rho] and must carry its own
// citation.
struct ClutchingClass {
    int n = 0;
    int q = 0;
    GroupElement rho;
    std::optional<GroupElement> lift;
    std::optional<GroupElement> j_image;
    std::string j_citation;

    std::string structure_group() const { return "SO(" + std::to_string(q + 1) + ")"; }
};

// One row of the split exact sequence
//   0 -> pi_n(S^n) --d--> pi_{n-1}(SO(n)) --iota--> pi_{n-1}(SO(n+1)) -> 0
// together with the commuting-square data into pi_{2n-1}(S^n) and
// pi_2n(S^{n+1}): the negated J-homomorphism columns, the Whitehead square
// P(Id) = [i_n, i_n], the suspension, and the right-hand J column.
struct ExactSeqSO {
    int n = 0;
    FGAbGroup pi_n_sn;   // pi_n(S^n)
    FGAbGroup so_n;      // pi_{n-1}(SO(n))
    FGAbGroup so_n1;     // pi_{n-1}(SO(n+1))
    FGAbGroup top;       // pi_{2n-1}(S^n)
    FGAbGroup top1;      // pi_2n(S^{n+1})
    GroupElement boundary_id;            // d(Id) in so_n
    GroupHom iota;                       // so_n -> so_n1
    std::vector<GroupElement> section;   // lift of each so_n1 generator into so_n
    GroupHom minus_j;                    // -J : so_n -> top
    GroupElement p_image;                // P(Id) = [i_n, i_n] in top
    GroupHom sigma;                      // suspension top -> top1
    GroupHom j_right;                    // J : so_n1 -> top1
    std::string citation;

    // Coordinate-wise representative lift through the stored section columns;
    // always satisfies iota(lift(rho)) == rho on audited data.
    GroupElement lift(const GroupElement& rho) const;
};

// Curated J-homomorphism / suspension columns and exact sequences, loaded
// from a `clutching/1` JSON document.  Groups are resolved against a
// homotopy table at ingestion time.
class ClutchingTable {
public:
    static ClutchingTable ingest(const std::string& json_text, const HomotopyTable& groups);
    static const ClutchingTable& builtin();
    static const char* builtin_json();

    bool has_exact_sequence(int n) const;
    const ExactSeqSO& exact_sequence(int n) const;  // MissingEntry
    const std::vector<ExactSeqSO>& exact_sequences() const { return rows_; }

    // J : pi_degree(SO(so)) -> pi_{degree+so}(S^so).  Falls back to the
    // exact-sequence columns (negated minus_j, or j_right) when no
    // standalone row exists.
    GroupHom j_map(int so, int degree) const;  // MissingEntry
    bool has_j_map(int so, int degree) const;
    std::string j_map_citation(int so, int degree) const;

    // Suspension pi_degree(S^sphere) -> pi_{degree+1}(S^{sphere+1}).
    GroupHom suspension(int sphere, int degree) const;  // MissingEntry
    std::string suspension_citation(int sphere, int degree) const;

    // Stabilization iota_* : pi_degree(SO(so)) -> pi_degree(SO(so+1)).
    // Derived from exact-sequence rows; a trivial domain gives the zero map.
    GroupHom iota_map(int so, int degree) const;  // MissingEntry

    const HomotopyTable& groups() const { return *groups_; }

private:
    const HomotopyTable* groups_ = nullptr;
    std::vector<ExactSeqSO> rows_;
    struct JRow { int so; int degree; GroupHom hom; std::string citation; };
    struct SigmaRow { int sphere; int degree; GroupHom hom; std::string citation; };
    std::vector<JRow> jrows_;
    std::vector<SigmaRow> sigmarows_;
};

// ---- operations ----------------------------------------------------------

// Brace of the canonical infinity-section against the fibre identity.
// Over a suspension base the value resolves to -J[rho]; otherwise the
// formal expression J[eps] - J[rho] is returned.
struct ClutchedBrace {
    bool resolved = false;
    GroupElement value;     // -J[rho] in pi_{n+q}(S^{q+1}) when resolved
    JNormalForm formal;     // J[eps] - J[rho] when not
    int sphere = 0;         // q + 1
    int degree = 0;         // n + q
    std::vector<std::string> citations;
};
ClutchedBrace brace_from_clutching(const ClutchingTable& t, const ClutchingClass& c,
                                   bool base_is_suspension = true);

// Milnor cell structure of the Thom space / sphere-bundle total space for a
// vector-bundle class xi in pi_{n-1}(SO(q)) (the lift of c).  The attaching
// class of the top cell of the total space is iota_* J(xi) + [omega], with
// [omega] the Whitehead product of the wedge inclusions.
struct CellStructure {
    GroupElement attaching;   // J(xi) in pi_{n+q-1}(S^q)
    std::string thom_space;   // e.g. "Th(xi) = D^7 cup_{J(xi)} S^3"
    std::string total_space;  // e.g. "S(xi + eps) = D^7 cup_{iota_* J(xi) + [omega]} (S^4 v S^3)"
    std::vector<std::string> citations;
};
CellStructure thom_attaching(const ClutchingTable& t, const ClutchingClass& c);

// Fibre homotopy equivalence of the suspended sphere bundles: holds iff
// phi_* J[rho_1] = J[rho_2], with phi_* acting as an integer multiplier.
Verdict fibre_equiv_decision(const ClutchingTable& t, const ClutchingClass& c1,
                             const ClutchingClass& c2, long long phi_effect = 1);

// The naive inclusion im(J) <= im(Sigma) fails; the rectified statement
// says J[rho] is a suspension when rho lifts to SO(q).  The report records
// both maps, whether the naive inclusion has a counterexample, and -- when
// a lift exists -- the verified identity Sigma(-J xi) = J[iota_* xi].
struct HusemollerReport {
    int n = 0, q = 0;
    std::string j_description;      // "J: pi_3(SO(3)) -> pi_6(S^3) = Z_12"
    std::string sigma_description;  // "Sigma: pi_5(S^2) = Z_2 -> pi_6(S^3) = Z_12"
    bool j_onto = false;
    bool sigma_onto = false;
    bool counterexample = false;    // some J value escapes im(Sigma)
    bool has_lift = false;
    GroupElement j_rho;             // J[rho] in pi_{n+q}(S^{q+1})
    bool j_rho_in_sigma_image = false;
    std::vector<std::string> notes;
    std::vector<std::string> citations;
};
HusemollerReport husemoller_report(const ClutchingTable& t, const ClutchingClass& c);

// Rectified identity, strict form: requires a lift xi (from c or solved
// through iota), returns Sigma(-J xi) and checks it equals J[rho].
// Throws NoLift when no xi with iota_* xi = rho exists.
struct RectifiedSuspension {
    GroupElement xi;
    GroupElement suspended;  // Sigma(-J xi)
    GroupElement j_rho;      // J[iota_* xi]
    bool equal = false;
};
RectifiedSuspension husemoller_rectified(const ClutchingTable& t, const ClutchingClass& c);

// P(Id) = [i_n, i_n] in pi_{2n-1}(S^n), with its (Z + G)-coordinate string:
// "(1, 0)" for n != 2,4,8 and "(2, g_n)" for n = 2,4,8 (g_2 = 0).
struct PMapValue {
    GroupElement value;
    std::string zg_form;
    std::string citation;
};
PMapValue p_map(const ClutchingTable& t, int n);

// Constructive rational-splitting certificate.  Branches: q odd (rational
// fibre homotopy concentrated in degree q); q even with n != q (degree
// count); n = q even (the xi' = 2 xi - [2]m d(Id) construction through the
// exact sequence).  Never returns Fails.
Verdict rational_split_certificate(const ClutchingTable& t, const ClutchingClass& c);

// Self-verification of one stored exact sequence: exactness at both spots,
// surjectivity of iota, ker(Sigma) = <P(Id)>, and the commuting squares
// Sigma(-J) = J iota_* and (-J) d = P.  Throws AuditFailure on violation.
Verdict exactness_audit(const ClutchingTable& t, const ExactSeqSO& seq);
std::vector<std::pair<int, Verdict>> exactness_audit_all(const ClutchingTable& t);

}  // namespace bracecalc
