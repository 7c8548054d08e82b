#pragma once

#include <optional>
#include <string>
#include <vector>

#include "bracecalc/rational.hpp"

namespace bracecalc {

using IntMat = std::vector<std::vector<long long>>;

// Smith normal form of an integer matrix: returns the invariant factors
// (positive, each dividing the next) and unimodular transforms with
// U * A * V = diag(factors).  Sizes here are tiny (homotopy-group
// presentations), so plain int64 with overflow checks suffices.
struct SmithResult {
    std::vector<long long> factors; // length min(rows, cols), zeros allowed at tail
    IntMat U;                       // rows x rows
    IntMat V;                       // cols x cols
};
SmithResult smith_normal_form(IntMat A);

// Finitely generated abelian group in canonical form: free rank plus a
// torsion divisor chain d_1 | d_2 | ... with every d_i >= 2.  Labels are
// optional display names for the chosen generators (e.g. the named torsion
// classes g_4, g_8); they never affect equality.
struct FGAbGroup {
    int free_rank = 0;
    std::vector<long long> torsion;
    std::vector<std::string> free_labels;    // empty or one per free generator
    std::vector<std::string> torsion_labels; // empty or one per torsion generator

    // Normalizes an arbitrary torsion list into a divisor chain (dropping
    // ones); `changed` reports whether normalization altered the input,
    // so table ingestion can warn.
    static FGAbGroup make(int rank, std::vector<long long> torsion, bool* changed = nullptr);
    // Cokernel of a relations matrix acting on `generator_count` generators.
    static FGAbGroup from_relations(int generator_count, const IntMat& relations);

    int generator_count() const { return free_rank + static_cast<int>(torsion.size()); }
    bool is_trivial() const { return free_rank == 0 && torsion.empty(); }
    bool operator==(const FGAbGroup& o) const {
        return free_rank == o.free_rank && torsion == o.torsion;
    }
    bool operator!=(const FGAbGroup& o) const { return !(*this == o); }

    // "Z + Z_12", "Z_2 + Z_2", "0"
    std::string to_string() const;
    long long torsion_order() const; // product of the divisor chain, 1 if none
};

// Element of an FGAbGroup with reduced coordinates: free coordinates are
// arbitrary integers, torsion coordinate i lies in [0, d_i).
struct GroupElement {
    FGAbGroup group;
    std::vector<long long> free_c;
    std::vector<long long> tor_c;

    static GroupElement make(const FGAbGroup& g, std::vector<long long> free_c,
                             std::vector<long long> tor_c);
    static GroupElement zero(const FGAbGroup& g);
    // k-th generator in the (free gens, then torsion gens) ordering.
    static GroupElement basis(const FGAbGroup& g, int k);

    bool is_zero() const;
    GroupElement operator+(const GroupElement& o) const;
    GroupElement operator-(const GroupElement& o) const;
    GroupElement operator-() const;
    GroupElement scaled(long long n) const;
    bool operator==(const GroupElement& o) const;
    bool operator!=(const GroupElement& o) const { return !(*this == o); }

    // Coordinates with labels, e.g. "(2, g_4)"; pure free groups render as
    // "(2)" and the trivial element as "0".
    std::string to_string() const;
};

// Homomorphism given by images of the domain generators (free generators
// first, then torsion generators).  Well-definedness (d_i * image_i = 0)
// is enforced at construction.
struct GroupHom {
    FGAbGroup dom, cod;
    std::vector<GroupElement> cols;

    static GroupHom make(const FGAbGroup& dom, const FGAbGroup& cod,
                         std::vector<GroupElement> cols);
    static GroupHom zero(const FGAbGroup& dom, const FGAbGroup& cod);
    GroupElement apply(const GroupElement& x) const;
    bool is_surjective() const;
};

// Integer linear algebra on groups, used by the exactness audits.
// Does target lie in the subgroup generated by gens?  Returns one witness
// coefficient vector if so.
std::optional<std::vector<long long>> solve_in_group(const std::vector<GroupElement>& gens,
                                                     const GroupElement& target);
// Generating set for the kernel of h (as elements of h.dom).
std::vector<GroupElement> kernel_generators(const GroupHom& h);
// One integer solution of A x = b, if any.
std::optional<std::vector<long long>> integer_solve(const IntMat& A,
                                                    const std::vector<long long>& b);

// Rank of G tensor Q.
int rationalize(const FGAbGroup& g);
// Image of an element in G tensor Q: the free coordinates (torsion dies).
std::vector<Rational> rationalize_element(const GroupElement& x);

} // namespace bracecalc
