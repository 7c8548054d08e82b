#pragma once

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "bracecalc/abelian.hpp"
#include "bracecalc/clutching.hpp"
#include "bracecalc/graded_lie.hpp"
#include "bracecalc/tables.hpp"
#include "bracecalc/verdict.hpp"

namespace bracecalc {

// One row of a brace pairing table: the value of {alpha, beta}_s on a pair
// of basis monomials, everything in the Whitehead view.  Rows on composite
// monomials override what the derivation rules would derive from the
// generator rows; assemble_total_lie is what detects overrides that break
// the mixed Jacobi identities.
struct BraceEntry {
    Word base_word;
    Word fibre_word;
    LieElement value;  // fibre element of Whitehead degree |alpha| + |beta| - 1
};

// Fibration F -> E -> B with a section, modelled over the rationals: free
// graded Lie algebras for the base and fibre homotopy plus the brace
// pairing {,}_s induced by the section.  Construction validates words and
// degrees only; whether the pairing satisfies the mixed Jacobi identities
// is a property, checked by assemble_total_lie and the identity checks.
class SplitFibration {
public:
    SplitFibration(LieAlgebra base, LieAlgebra fibre, std::vector<BraceEntry> pairing);

    const LieAlgebra& base() const { return base_; }
    const LieAlgebra& fibre() const { return fibre_; }
    const std::vector<BraceEntry>& pairing() const { return entries_; }

    // {alpha, beta}_s for alpha over the base and beta over the fibre.
    // Bilinear, Whitehead view in and out, degree |alpha| + |beta| - 1.
    LieElement james_brace(const LieElement& alpha, const LieElement& beta) const;

    // Defect of the derivation identity
    //   {b,[g,d]} - (-1)^{k-1}[{b,g},d] - (-1)^{(l-1)(k-1)}[g,{b,d}]
    // for b of Whitehead degree k over the base and g, d of Whitehead
    // degrees l, m over the fibre; zero iff the identity holds there.
    LieElement derivation_defect(const LieElement& beta, const LieElement& gamma,
                                 const LieElement& delta) const;

    // Defect of the Lie-map identity
    //   {[a,b],g} - (-1)^{j-1}({a,{b,g}} - (-1)^{(j-1)(k-1)}{b,{a,g}})
    // for a, b of Whitehead degrees j, k over the base and g over the fibre.
    LieElement lie_map_defect(const LieElement& alpha, const LieElement& beta,
                              const LieElement& gamma) const;

private:
    LieElement t_word(const Word& bw, const Word& fw) const;
    LieElement t_apply(const Word& bw, const LieElement& x) const;

    LieAlgebra base_;
    LieAlgebra fibre_;
    std::vector<BraceEntry> entries_;
    // Supplied rows converted to the Samelson adjoint action T_{bw}(fw).
    std::map<std::pair<Word, Word>, LieElement> tvals_;
};

// Verdict wrappers around the defects: Holds when the defect vanishes,
// Fails with the nonzero defect as witness otherwise.
Verdict derivation_identity_check(const SplitFibration& fib, const LieElement& beta,
                                  const LieElement& gamma, const LieElement& delta);
Verdict lie_map_identity_check(const SplitFibration& fib, const LieElement& alpha,
                               const LieElement& beta, const LieElement& gamma);

// Presentation of the total space's homotopy Lie algebra as the twisted sum
// of base and fibre: free generators of both sides plus one mixed relation
// [b, f] = {b, f}_s per generator pair.  assemble_total_lie verifies the
// mixed Jacobi identities on all basis triples up to the Whitehead degree
// cap and throws InvalidPairing with a witness when one fails.
struct TotalLie {
    std::vector<Generator> base_generators;  // Samelson degrees
    std::vector<Generator> fibre_generators;
    std::vector<std::string> relations;      // "[b, f] = ..." per generator pair
    int degree_cap = 0;
    long long triples_checked = 0;
};
TotalLie assemble_total_lie(const SplitFibration& fib, int degree_cap);

// Brace pulled back along a map into the base acting on base classes as
// multiplication by `effect`: {f_* alpha, beta}_s = {effect * alpha, beta}_s.
LieElement brace_pullback(const SplitFibration& fib, long long effect,
                          const LieElement& alpha, const LieElement& beta);

// Componentwise brace of the fibre product of two fibrations over one base:
// {alpha, (beta1, beta2)}_s = ({alpha, beta1}_s, {alpha, beta2}_s).
// Throws BaseMismatch unless the base algebras agree.
std::pair<LieElement, LieElement> brace_product_fibration(
    const SplitFibration& fib1, const SplitFibration& fib2, const LieElement& alpha,
    const LieElement& beta1, const LieElement& beta2);

// ---- free loop fibrations -------------------------------------------------

// Class a*g in pi_degree(space), coordinates against the generators the
// homotopy table records there.
struct SpaceClass {
    SpaceRef space;
    int degree = 0;
    GroupElement value;
    std::string label;  // display name, e.g. "Id"
};

// Class on the m-fold loop space of Z, written as ad^m of a class on Z.
struct LoopClass {
    SpaceClass cls;  // the delooped class, on Z itself
    int shift = 0;   // m

    int degree() const { return cls.degree - shift; }
    // "2 ad gamma", "ad^2 gamma", "0"
    std::string to_string() const;
};

struct FreeLoopBraceResult {
    LoopClass value;  // ad^m [f, ad^{-m} g]
    std::vector<std::string> citations;

    bool is_zero() const { return value.cls.value.is_zero(); }
    std::string to_string() const { return value.to_string(); }
};

// Brace product of the free loop fibration Omega^m Z -> Lambda^m Z -> Z with
// the constant-loops section: {f, g}_s = ad^m [f, ad^{-m} g].  Whitehead
// products are resolved through the table rows; throws MissingEntry when no
// row covers the pair, BaseMismatch when f and g live over different spaces
// or g is not an m-fold loop class, DegreeOutOfRange when g sits below
// degree 1 on the loop space.
FreeLoopBraceResult free_loop_brace(const HomotopyTable& ht, int m,
                                    const SpaceClass& f, const LoopClass& g);

// ---- splitting verdicts ----------------------------------------------------

// Nonzero entry of a wedge-over-wedge pairing table; pairs not listed are
// zero.
struct WedgeBrace {
    int base_dim = 0;
    int fibre_dim = 0;
    std::string witness;  // the nonzero value, e.g. "[iota_3, iota_5]"
};

// The fibration a verdict request is about, plus the data each kind needs.
// Parsed from the fibration/1 JSON schema.
struct FibrationDescriptor {
    enum class Kind {
        SphereOverSphere,     // fibrewise-suspended clutched bundle S(xi + eps)
        Clutched,             // same data, clutching map given explicitly
        WedgeOverWedge,       // base and fibre wedges of double suspensions
        FreeLoop,             // Omega^m Z -> Lambda^m Z -> Z
        SurfaceSphereBundle,  // S(zeta) over a closed orientable surface
        ProductPullback,      // pullback along a null composite
        SphereOverLieGroup,   // sphere bundle with section over a Lie group
        HomogeneousPrincipal, // H -> G -> G/H with G/H a sphere
        Presented,            // explicit SplitFibration
    };

    Kind kind = Kind::SphereOverSphere;

    std::optional<ClutchingClass> clutching;    // SphereOverSphere, Clutched
    std::vector<int> base_dims;                 // WedgeOverWedge, ProductPullback
    std::vector<int> fibre_dims;
    std::vector<WedgeBrace> wedge_braces;       // nonzero pairs only
    int loop_m = 1;                             // FreeLoop
    SpaceRef loop_space;
    int genus = 1;                              // SurfaceSphereBundle
    int sphere_n = 2;                           // fibre sphere dimension
    bool w2_nonzero = false;
    std::string lie_group;                      // SphereOverLieGroup, Homogeneous
    int homog_fibre = 3;                        // Homogeneous: dim of H as sphere
    int homog_base = 5;                         //   dim of G/H
    std::shared_ptr<SplitFibration> presented;  // Presented
    int presented_cap = 12;

    static FibrationDescriptor parse(const std::string& json_text,
                                     const HomotopyTable& ht);
    std::string kind_name() const;
};

// Does the loop fibration split as H-spaces?  Wedge-over-wedge and
// suspension-over-suspension kinds are decided outright; kinds where only
// the James-level brace is decidable return Holds or HoldsUpToDegree with
// the caveat that the generalized brace is not implied.
Verdict h_split_verdict(const HomotopyTable& ht, const ClutchingTable& ct,
                        const FibrationDescriptor& desc, int degree_cap = 24);

// Suspension-over-suspension splitting from a known brace value
// {Id_n, Id_m}_s in pi_{n+m-1}(S^m): splits iff the value vanishes.
Verdict sphere_over_sphere_split(const HomotopyTable& ht, int n, int m,
                                 const GroupElement& brace_value);

// Rational splitting verdicts: sphere bundles over spheres, odd-sphere
// expansions of Lie group bases, and the SU(3) converse example.
Verdict rational_verdicts(const HomotopyTable& ht, const ClutchingTable& ct,
                          const FibrationDescriptor& desc, int degree_cap = 24);

// Sphere bundle S(zeta) -> Sigma_g, g >= 1: the aspherical base kills every
// James brace, yet the bundle is a product iff w_2(zeta) = 0, so the report
// carries both verdicts plus the total Stiefel-Whitney class that separates
// them.
struct SurfaceBundleReport {
    int genus = 1;
    int n = 2;
    bool w2_nonzero = false;
    Verdict james;        // brace vanishes in every degree
    Verdict product;      // trivial as a bundle iff w_2 = 0
    std::string w_class;  // total Stiefel-Whitney class of T S(zeta)
    std::vector<std::string> citations;
};
SurfaceBundleReport surface_bundle_report(const HomotopyTable& ht, int genus, int n,
                                          bool w2_nonzero);

}  // namespace bracecalc
