#pragma once

// Independent cross-check for the bracket engine.  The free graded Lie
// algebra embeds into the free graded associative algebra (its universal
// envelope; faithful over Q) by expanding every bracket as a graded
// commutator
//     [A, B] = AB - (-1)^{|A||B|} BA                (Samelson degrees)
// so any identity the engine claims can be re-verified by multiplying out
// tensors with exact GMP rationals.  Nothing here shares code with the
// engine beyond the basis words themselves and their standard bracketing
// shape (word_children), which is exactly the structure under test.

#include <gmpxx.h>

#include <map>
#include <utility>
#include <vector>

#include "bracecalc/graded_lie.hpp"

namespace oracle {

using bracecalc::GradingView;
using bracecalc::LieAlgebra;
using bracecalc::LieElement;
using bracecalc::Word;

// Element of the free associative algebra: generator-index word -> coeff.
using Tensor = std::map<std::vector<int>, mpq_class>;

inline mpq_class to_mpq(const bracecalc::Rational& r) {
    return mpq_class(static_cast<long>(r.num())) / static_cast<long>(r.den());
}

inline void add_term(Tensor& t, const std::vector<int>& w, const mpq_class& c) {
    auto it = t.find(w);
    if (it == t.end()) {
        if (c != 0) t.emplace(w, c);
        return;
    }
    it->second += c;
    if (it->second == 0) t.erase(it);
}

inline Tensor add(const Tensor& a, const Tensor& b) {
    Tensor out = a;
    for (const auto& [w, c] : b) add_term(out, w, c);
    return out;
}

inline Tensor scale(const Tensor& a, const mpq_class& c) {
    Tensor out;
    if (c == 0) return out;
    for (const auto& [w, cw] : a) out.emplace(w, cw * c);
    return out;
}

inline Tensor mul(const Tensor& a, const Tensor& b) {
    Tensor out;
    for (const auto& [wa, ca] : a)
        for (const auto& [wb, cb] : b) {
            std::vector<int> w = wa;
            w.insert(w.end(), wb.begin(), wb.end());
            add_term(out, w, ca * cb);
        }
    return out;
}

inline int word_sdeg(const LieAlgebra& alg, const std::vector<int>& w) {
    int d = 0;
    for (int i : w) d += alg.generators()[static_cast<size_t>(i)].samelson_degree;
    return d;
}

// Graded commutator of homogeneous tensors of Samelson degrees da, db.
inline Tensor commutator(const Tensor& a, int da, const Tensor& b, int db) {
    Tensor ab = mul(a, b);
    Tensor ba = mul(b, a);
    // [a,b] = ab - (-1)^{da db} ba
    mpq_class sign = (da % 2 != 0 && db % 2 != 0) ? 1 : -1;
    return add(ab, scale(ba, sign));
}

// Embedding of a basis monomial through its standard bracketing.
inline Tensor embed_word(const LieAlgebra& alg, const Word& w) {
    if (w.size() == 1) return Tensor{{w, mpq_class(1)}};
    auto [u, v] = alg.word_children(w);
    return commutator(embed_word(alg, u), word_sdeg(alg, u),
                      embed_word(alg, v), word_sdeg(alg, v));
}

// Embedding of a full element.  Coefficients are taken in the Samelson
// normalization, which is what the commutator expansion realizes.
inline Tensor embed(const LieAlgebra& alg, const LieElement& x) {
    LieElement xs = x.view() == GradingView::Samelson
                        ? x
                        : alg.adjoint_shift(x, GradingView::Whitehead,
                                            GradingView::Samelson);
    Tensor out;
    for (const auto& [w, c] : xs.terms()) {
        Tensor e = embed_word(alg, w);
        for (const auto& [tw, tc] : e) add_term(out, tw, tc * to_mpq(c));
    }
    return out;
}

// Rank of a list of tensors over Q, by exact Gaussian elimination on the
// (sparse rows x union-of-words) coefficient matrix.
inline size_t tensor_rank(std::vector<Tensor> rows) {
    size_t rank = 0;
    for (size_t i = 0; i < rows.size(); ++i) {
        if (rows[i].empty()) continue;
        ++rank;
        auto pivot = *rows[i].begin(); // smallest word with nonzero coeff
        for (size_t j = i + 1; j < rows.size(); ++j) {
            auto it = rows[j].find(pivot.first);
            if (it == rows[j].end()) continue;
            mpq_class f = it->second / pivot.second;
            for (const auto& [w, c] : rows[i]) add_term(rows[j], w, -f * c);
        }
    }
    return rank;
}

} // namespace oracle
