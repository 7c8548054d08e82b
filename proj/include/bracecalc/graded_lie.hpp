#pragma once

#include <map>
#include <string>
#include <vector>

#include "bracecalc/rational.hpp"

namespace bracecalc {

// Two gradings of the same algebra: Samelson (bracket preserves degree) is
// the internal one; Whitehead (degrees shifted up by one, quasi-Lie signs)
// is a reporting view used by the fibration calculus.
enum class GradingView { Samelson, Whitehead };

struct Generator {
    std::string name;
    int samelson_degree = 1; // >= 1
};

// A basis monomial is identified by its word: the left-to-right sequence of
// generator indices of its standard bracketing.  Words are either Lyndon
// words (standard Lyndon trees) or ww for a Lyndon word w of odd Samelson
// degree (the square [w,w], which survives only in odd degree).
using Word = std::vector<int>;

class LieAlgebra;

// Homogeneous element in canonical normal form: a sparse rational combination
// of basis monomials, all of one Samelson degree.  Immutable in spirit; every
// operation returns a fresh value.  Coefficients are stored in the Samelson
// normalization; the Whitehead view only changes how they are reported.
class LieElement {
public:
    LieElement() = default;

    const LieAlgebra* algebra() const { return alg_; }
    GradingView view() const { return view_; }
    bool is_zero() const { return terms_.empty(); }
    int samelson_degree() const { return sdeg_; }
    // Degree in the element's own view (Whitehead = Samelson + 1).
    int degree() const { return view_ == GradingView::Samelson ? sdeg_ : sdeg_ + 1; }

    // Terms as visible in the element's view.  In the Whitehead view each
    // coefficient carries the per-node shift sign relative to the internal
    // Samelson normalization.
    std::map<Word, Rational> terms() const;

    LieElement operator+(const LieElement& o) const;
    LieElement operator-(const LieElement& o) const;
    LieElement operator-() const;
    LieElement scaled(const Rational& c) const;
    bool operator==(const LieElement& o) const;
    bool operator!=(const LieElement& o) const { return !(*this == o); }

    std::string to_string() const;

private:
    friend class LieAlgebra;

    const LieAlgebra* alg_ = nullptr;
    int sdeg_ = 0;                    // meaningful only when non-zero
    GradingView view_ = GradingView::Samelson;
    std::map<Word, Rational> terms_;  // Samelson-normalized coefficients
};

// Free graded Lie algebra over the rationals on a finite ordered generator
// list.  Generator order is declaration order and fixes the monomial basis
// (super-Lyndon words) and all normal forms.  All methods are pure.
class LieAlgebra {
public:
    explicit LieAlgebra(std::vector<Generator> generators, int degree_cap = 24);

    const std::vector<Generator>& generators() const { return gens_; }
    int degree_cap() const { return cap_; }

    // Generator lookup by name; throws UnknownGenerator.
    LieElement generator(const std::string& name) const;
    LieElement zero() const;
    // Element from explicit (word, coefficient) pairs in the given view.
    // Words must be basis words of a single degree; throws MixedDegree.
    LieElement element(const std::map<Word, Rational>& terms, GradingView view) const;

    // Samelson bracket.  Inputs in the Whitehead view are converted first;
    // the result is in the Samelson view.  Throws MixedDegree if an input is
    // inhomogeneous (cannot happen for values built through this API) and
    // UnknownGenerator if the inputs belong to another algebra.
    LieElement bracket(const LieElement& x, const LieElement& y) const;

    // Whitehead-graded quasi-Lie bracket: satisfies
    //   [f,g] = (-1)^{|f||g|} [g,f]   (Whitehead degrees)
    // and the Whitehead-signed Jacobi identity.  Result is Whitehead view.
    LieElement whitehead_bracket(const LieElement& x, const LieElement& y) const;

    // Whitehead-signed Jacobi sum
    //   (-1)^{|x||z|}[[x,y],z] + (-1)^{|y||x|}[[y,z],x] + (-1)^{|z||y|}[[z,x],y]
    // with Whitehead degrees and brackets; identically zero here, exposed so
    // callers can audit sign conventions.
    LieElement jacobi_defect(const LieElement& x, const LieElement& y,
                             const LieElement& z) const;

    // Change of grading view.  Applies the sign (-1)^k per bracket node,
    // k the Samelson degree of the node's left subtree; an involution, so
    // shifting there and back is the identity.  Throws MixedDegree if x is
    // not in the `from` view.
    LieElement adjoint_shift(const LieElement& x, GradingView from, GradingView to) const;

    // Basis monomials per Samelson degree, 1..degree_cap, deterministic
    // (word-lexicographic) order.  Throws CapTooSmall if the cap is below
    // the largest generator degree.
    std::vector<std::vector<Word>> graded_basis(int degree_cap) const;

    // Degree and pretty form of a basis word.
    int word_degree(const Word& w) const;
    std::string word_to_string(const Word& w) const;
    // Sign picked up by a basis word under the grading shift: product over
    // bracket nodes of (-1)^{Samelson degree of left subtree}.
    int shift_sign(const Word& w) const;
    // Subtrees of a basis word's standard bracketing: (w, w) for a square
    // monomial ww, the standard factorization for a Lyndon word.  Throws
    // MixedDegree unless w is a basis monomial of length >= 2.
    std::pair<Word, Word> word_children(const Word& w) const;

private:
    LieElement make(int sdeg, GradingView view, std::map<Word, Rational> terms) const;
    void check_same(const LieElement& x) const;
    LieElement to_samelson(const LieElement& x) const;

    // [x, y] for basis words, as Samelson-normalized terms.
    std::map<Word, Rational> word_bracket(const Word& x, const Word& y) const;
    std::map<Word, Rational> terms_bracket(const std::map<Word, Rational>& a,
                                           const std::map<Word, Rational>& b) const;

    bool is_lyndon(const Word& w) const;
    bool is_square_word(const Word& w) const;
    // Standard factorization of a Lyndon word of length >= 2: w = uv with v
    // the lexicographically smallest proper suffix.
    std::pair<Word, Word> standard_factorization(const Word& w) const;

    std::vector<Generator> gens_;
    std::map<std::string, int> index_;
    int cap_;
};

} // namespace bracecalc
