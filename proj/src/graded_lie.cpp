#include "bracecalc/graded_lie.hpp"

#include <algorithm>

#include "bracecalc/errors.hpp"

namespace bracecalc {

namespace {

// (-1)^{d1*d2}
int koszul(int d1, int d2) { return ((d1 & 1) && (d2 & 1)) ? -1 : 1; }

void add_into(std::map<Word, Rational>& acc, const Word& w, const Rational& c) {
    auto it = acc.find(w);
    if (it == acc.end()) {
        if (!c.is_zero()) acc.emplace(w, c);
        return;
    }
    it->second += c;
    if (it->second.is_zero()) acc.erase(it);
}

void add_scaled(std::map<Word, Rational>& acc, const std::map<Word, Rational>& t,
                const Rational& c) {
    if (c.is_zero()) return;
    for (const auto& [w, coef] : t) add_into(acc, w, coef * c);
}

} // namespace

// ---------------------------------------------------------------------------
// LieElement

std::map<Word, Rational> LieElement::terms() const {
    if (view_ == GradingView::Samelson || alg_ == nullptr) return terms_;
    std::map<Word, Rational> out;
    // Whitehead-view coefficients carry the per-node shift sign.
    for (const auto& [w, c] : terms_)
        out.emplace(w, alg_->shift_sign(w) < 0 ? -c : c);
    return out;
}

LieElement LieElement::operator+(const LieElement& o) const {
    if (is_zero()) return o;
    if (o.is_zero()) return *this;
    if (view_ != o.view_ || sdeg_ != o.sdeg_)
        throw MixedDegree("cannot add elements of different degree or grading view");
    LieElement r = *this;
    for (const auto& [w, c] : o.terms_) add_into(r.terms_, w, c);
    if (r.terms_.empty()) r.sdeg_ = 0;
    return r;
}

LieElement LieElement::operator-(const LieElement& o) const { return *this + (-o); }

LieElement LieElement::operator-() const { return scaled(Rational(-1)); }

LieElement LieElement::scaled(const Rational& c) const {
    LieElement r = *this;
    if (c.is_zero()) {
        r.terms_.clear();
        r.sdeg_ = 0;
        return r;
    }
    for (auto& [w, coef] : r.terms_) coef *= c;
    return r;
}

bool LieElement::operator==(const LieElement& o) const {
    if (is_zero() || o.is_zero()) return is_zero() && o.is_zero();
    return view_ == o.view_ && sdeg_ == o.sdeg_ && terms_ == o.terms_;
}

std::string LieElement::to_string() const {
    if (is_zero()) return "0";
    std::string out;
    bool first = true;
    for (const auto& [w, c] : terms()) {
        Rational a = c;
        if (first) {
            if (a < Rational(0)) {
                out += "-";
                a = -a;
            }
        } else {
            out += (a < Rational(0)) ? " - " : " + ";
            if (a < Rational(0)) a = -a;
        }
        first = false;
        if (!(a == Rational(1))) out += a.to_string() + "*";
        out += alg_ ? alg_->word_to_string(w) : "?";
    }
    return out;
}

// ---------------------------------------------------------------------------
// LieAlgebra

LieAlgebra::LieAlgebra(std::vector<Generator> generators, int degree_cap)
    : gens_(std::move(generators)), cap_(degree_cap) {
    for (size_t i = 0; i < gens_.size(); ++i) {
        if (gens_[i].samelson_degree < 1)
            throw MixedDegree("generator '" + gens_[i].name + "' must have degree >= 1");
        if (!index_.emplace(gens_[i].name, static_cast<int>(i)).second)
            throw UnknownGenerator("duplicate generator name '" + gens_[i].name + "'");
    }
}

LieElement LieAlgebra::make(int sdeg, GradingView view,
                            std::map<Word, Rational> terms) const {
    LieElement e;
    e.alg_ = this;
    e.view_ = view;
    for (auto it = terms.begin(); it != terms.end();)
        it = it->second.is_zero() ? terms.erase(it) : std::next(it);
    e.terms_ = std::move(terms);
    e.sdeg_ = e.terms_.empty() ? 0 : sdeg;
    return e;
}

LieElement LieAlgebra::zero() const { return make(0, GradingView::Samelson, {}); }

LieElement LieAlgebra::generator(const std::string& name) const {
    auto it = index_.find(name);
    if (it == index_.end()) throw UnknownGenerator("no generator named '" + name + "'");
    return make(gens_[it->second].samelson_degree, GradingView::Samelson,
                {{Word{it->second}, Rational(1)}});
}

LieElement LieAlgebra::element(const std::map<Word, Rational>& terms,
                               GradingView view) const {
    std::map<Word, Rational> internal;
    int deg = -1;
    for (const auto& [w, c] : terms) {
        if (c.is_zero()) continue;
        if (w.empty()) throw MixedDegree("empty word is not a basis monomial");
        for (int g : w)
            if (g < 0 || g >= static_cast<int>(gens_.size()))
                throw UnknownGenerator("word references generator index " +
                                       std::to_string(g));
        if (!is_lyndon(w) && !is_square_word(w))
            throw MixedDegree("word '" + word_to_string(w) + "' is not a basis monomial");
        int d = word_degree(w);
        if (deg == -1) deg = d;
        if (d != deg) throw MixedDegree("element mixes degrees " + std::to_string(deg) +
                                        " and " + std::to_string(d));
        Rational coef = c;
        if (view == GradingView::Whitehead && shift_sign(w) < 0) coef = -coef;
        internal.emplace(w, coef);
    }
    return make(deg == -1 ? 0 : deg, view, std::move(internal));
}

void LieAlgebra::check_same(const LieElement& x) const {
    if (x.alg_ == nullptr || x.alg_ == this) return;
    const auto& og = x.alg_->gens_;
    bool same = og.size() == gens_.size();
    for (size_t i = 0; same && i < og.size(); ++i)
        same = og[i].name == gens_[i].name &&
               og[i].samelson_degree == gens_[i].samelson_degree;
    if (!same)
        throw UnknownGenerator("element belongs to an algebra with different generators");
}

LieElement LieAlgebra::to_samelson(const LieElement& x) const {
    if (x.view() == GradingView::Samelson) return x;
    LieElement r = x;
    r.view_ = GradingView::Samelson;
    r.alg_ = this;
    return r;
}

int LieAlgebra::word_degree(const Word& w) const {
    int d = 0;
    for (int g : w) {
        if (g < 0 || g >= static_cast<int>(gens_.size()))
            throw UnknownGenerator("word references generator index " + std::to_string(g));
        d += gens_[g].samelson_degree;
    }
    return d;
}

std::string LieAlgebra::word_to_string(const Word& w) const {
    if (w.size() == 1) return gens_[w[0]].name;
    Word l, r;
    if (is_square_word(w)) {
        l.assign(w.begin(), w.begin() + w.size() / 2);
        r.assign(w.begin() + w.size() / 2, w.end());
    } else {
        auto [u, v] = standard_factorization(w);
        l = u;
        r = v;
    }
    return "[" + word_to_string(l) + "," + word_to_string(r) + "]";
}

int LieAlgebra::shift_sign(const Word& w) const {
    if (w.size() == 1) return 1;
    Word l, r;
    if (is_square_word(w)) {
        l.assign(w.begin(), w.begin() + w.size() / 2);
        r.assign(w.begin() + w.size() / 2, w.end());
    } else {
        auto [u, v] = standard_factorization(w);
        l = u;
        r = v;
    }
    int s = (word_degree(l) & 1) ? -1 : 1;
    return s * shift_sign(l) * shift_sign(r);
}

std::pair<Word, Word> LieAlgebra::word_children(const Word& w) const {
    if (is_square_word(w)) {
        Word h(w.begin(), w.begin() + w.size() / 2);
        return {h, h};
    }
    if (w.size() < 2 || !is_lyndon(w))
        throw MixedDegree("word '" + word_to_string(w) +
                          "' has no bracketing children");
    return standard_factorization(w);
}

bool LieAlgebra::is_lyndon(const Word& w) const {
    if (w.empty()) return false;
    for (size_t i = 1; i < w.size(); ++i) {
        Word suf(w.begin() + i, w.end());
        if (!(w < suf)) return false;
    }
    return true;
}

bool LieAlgebra::is_square_word(const Word& w) const {
    size_t n = w.size();
    if (n < 2 || n % 2 != 0) return false;
    if (!std::equal(w.begin(), w.begin() + n / 2, w.begin() + n / 2)) return false;
    Word h(w.begin(), w.begin() + n / 2);
    return is_lyndon(h) && (word_degree(h) & 1);
}

std::pair<Word, Word> LieAlgebra::standard_factorization(const Word& w) const {
    // right factor = lexicographically smallest proper suffix
    size_t cut = 1;
    Word best(w.begin() + 1, w.end());
    for (size_t i = 2; i < w.size(); ++i) {
        Word suf(w.begin() + i, w.end());
        if (suf < best) {
            best = suf;
            cut = i;
        }
    }
    return {Word(w.begin(), w.begin() + cut), best};
}

std::map<Word, Rational> LieAlgebra::terms_bracket(const std::map<Word, Rational>& a,
                                                   const std::map<Word, Rational>& b) const {
    std::map<Word, Rational> acc;
    for (const auto& [wa, ca] : a)
        for (const auto& [wb, cb] : b)
            add_scaled(acc, word_bracket(wa, wb), ca * cb);
    return acc;
}

// Bracket of two basis words, rewritten into the super-Lyndon basis.  The
// recursion mirrors the classical Lyndon-word rewriting for free Lie rings,
// extended by the square monomials [w,w] that survive in odd degree:
//   x == y          -> [x,x] basis square in odd degree, 0 in even degree
//   x > y           -> swap, sign -(-1)^{|x||y|}
//   x = [w,w]       -> [[w,w],y] = 2[w,[w,y]]
//   y = [v,v]       -> [x,[v,v]] = [[x,v],v] + (-1)^{|x||v|}[v,[x,v]]
//   xy standard     -> concatenation is the basis word
//   otherwise       -> Jacobi through the standard factorization of x
std::map<Word, Rational> LieAlgebra::word_bracket(const Word& x, const Word& y) const {
    std::map<Word, Rational> out;
    if (x == y) {
        if (word_degree(x) & 1) {
            Word sq = x;
            sq.insert(sq.end(), x.begin(), x.end());
            out.emplace(std::move(sq), Rational(1));
        }
        return out;
    }
    int dx = word_degree(x), dy = word_degree(y);
    if (y < x) {
        auto t = word_bracket(y, x);
        Rational s(-koszul(dx, dy));
        add_scaled(out, t, s);
        return out;
    }
    if (is_square_word(x)) {
        Word w(x.begin(), x.begin() + x.size() / 2);
        auto inner = word_bracket(w, y);
        add_scaled(out, terms_bracket({{w, Rational(1)}}, inner), Rational(2));
        return out;
    }
    if (is_square_word(y)) {
        Word v(y.begin(), y.begin() + y.size() / 2);
        if (x == v) return out; // [v,[v,v]] = 0 rationally: Jacobi gives 3[v,[v,v]] = 0
        int dv = word_degree(v);
        auto t = word_bracket(x, v);
        add_scaled(out, terms_bracket(t, {{v, Rational(1)}}), Rational(1));
        add_scaled(out, terms_bracket({{v, Rational(1)}}, t), Rational(koszul(dx, dv)));
        return out;
    }
    // both Lyndon, x < y
    if (x.size() == 1 || standard_factorization(x).second >= y) {
        Word cat = x;
        cat.insert(cat.end(), y.begin(), y.end());
        out.emplace(std::move(cat), Rational(1));
        return out;
    }
    auto [x1, x2] = standard_factorization(x);
    int d1 = word_degree(x1), d2 = word_degree(x2);
    add_scaled(out, terms_bracket({{x1, Rational(1)}}, word_bracket(x2, y)), Rational(1));
    add_scaled(out, terms_bracket({{x2, Rational(1)}}, word_bracket(x1, y)),
               Rational(-koszul(d1, d2)));
    return out;
}

LieElement LieAlgebra::bracket(const LieElement& x, const LieElement& y) const {
    check_same(x);
    check_same(y);
    if (x.is_zero() || y.is_zero()) return zero();
    LieElement xs = to_samelson(x), ys = to_samelson(y);
    return make(xs.sdeg_ + ys.sdeg_, GradingView::Samelson,
                terms_bracket(xs.terms_, ys.terms_));
}

LieElement LieAlgebra::whitehead_bracket(const LieElement& x, const LieElement& y) const {
    LieElement r = bracket(x, y);
    // Whitehead quasi-Lie bracket differs from the Samelson one by the sign
    // (-1)^{Samelson degree of the left argument}; tagged as Whitehead view.
    if (x.samelson_degree() & 1) r = -r;
    r = adjoint_shift(r, GradingView::Samelson, GradingView::Whitehead);
    return r;
}

LieElement LieAlgebra::jacobi_defect(const LieElement& x, const LieElement& y,
                                     const LieElement& z) const {
    check_same(x);
    check_same(y);
    check_same(z);
    if (x.is_zero() || y.is_zero() || z.is_zero()) return zero();
    // Whitehead degrees
    int a = x.samelson_degree() + 1;
    int b = y.samelson_degree() + 1;
    int c = z.samelson_degree() + 1;
    auto wb = [&](const LieElement& u, const LieElement& v) {
        return whitehead_bracket(u, v);
    };
    LieElement t1 = wb(wb(x, y), z).scaled(Rational(koszul(a, c)));
    LieElement t2 = wb(wb(y, z), x).scaled(Rational(koszul(b, a)));
    LieElement t3 = wb(wb(z, x), y).scaled(Rational(koszul(c, b)));
    return t1 + t2 + t3;
}

LieElement LieAlgebra::adjoint_shift(const LieElement& x, GradingView from,
                                     GradingView to) const {
    check_same(x);
    if (!x.is_zero() && x.view() != from)
        throw MixedDegree("adjoint_shift: element is not in the requested source view");
    LieElement r = x;
    r.alg_ = this;
    r.view_ = to;
    return r;
}

std::vector<std::vector<Word>> LieAlgebra::graded_basis(int degree_cap) const {
    int max_gen = 0;
    for (const auto& g : gens_) max_gen = std::max(max_gen, g.samelson_degree);
    if (degree_cap < max_gen)
        throw CapTooSmall("degree cap " + std::to_string(degree_cap) +
                          " is below the largest generator degree " +
                          std::to_string(max_gen));

    std::vector<std::vector<Word>> buckets(degree_cap + 1);
    // Enumerate Lyndon words by weight via DFS over prenecklaces: extend the
    // current word one letter at a time, tracking the period p of its longest
    // Lyndon prefix; a letter below w[n-p] breaks the prenecklace property,
    // a letter equal to it extends the period, a larger one makes the whole
    // word Lyndon (p = n+1).
    Word t;
    auto dfs = [&](auto&& self, int p, int weight) -> void {
        if (p == static_cast<int>(t.size())) {
            buckets[weight].push_back(t);
            int w2 = 2 * weight;
            if ((weight & 1) && w2 <= degree_cap) {
                Word sq = t;
                sq.insert(sq.end(), t.begin(), t.end());
                buckets[w2].push_back(std::move(sq));
            }
        }
        int n = static_cast<int>(t.size());
        for (int c = t[n - p]; c < static_cast<int>(gens_.size()); ++c) {
            int w2 = weight + gens_[c].samelson_degree;
            if (w2 > degree_cap) continue;
            t.push_back(c);
            self(self, c == t[n - p] ? p : n + 1, w2);
            t.pop_back();
        }
    };
    for (int c = 0; c < static_cast<int>(gens_.size()); ++c) {
        if (gens_[c].samelson_degree > degree_cap) continue;
        t.assign(1, c);
        dfs(dfs, 1, gens_[c].samelson_degree);
    }
    for (auto& b : buckets) std::sort(b.begin(), b.end());

    std::vector<std::vector<Word>> out;
    for (int d = 1; d <= degree_cap; ++d) out.push_back(std::move(buckets[d]));
    return out;
}

} // namespace bracecalc
