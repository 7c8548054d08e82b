#include "bracecalc/abelian.hpp"

#include <algorithm>
#include <cstdint>

#include "bracecalc/errors.hpp"

namespace bracecalc {

namespace {

long long checked_mul(long long a, long long b) {
    __int128 p = static_cast<__int128>(a) * b;
    if (p < INT64_MIN || p > INT64_MAX)
        throw OverflowError("integer matrix arithmetic exceeded 64-bit range");
    return static_cast<long long>(p);
}

long long checked_sub(long long a, long long b) {
    __int128 d = static_cast<__int128>(a) - b;
    if (d < INT64_MIN || d > INT64_MAX)
        throw OverflowError("integer matrix arithmetic exceeded 64-bit range");
    return static_cast<long long>(d);
}

long long checked_add(long long a, long long b) {
    __int128 s = static_cast<__int128>(a) + b;
    if (s < INT64_MIN || s > INT64_MAX)
        throw OverflowError("integer matrix arithmetic exceeded 64-bit range");
    return static_cast<long long>(s);
}

IntMat identity(int n) {
    IntMat m(n, std::vector<long long>(n, 0));
    for (int i = 0; i < n; ++i) m[i][i] = 1;
    return m;
}

long long positive_mod(long long a, long long d) {
    long long r = a % d;
    return r < 0 ? r + d : r;
}

} // namespace

SmithResult smith_normal_form(IntMat D) {
    int r = static_cast<int>(D.size());
    int c = r ? static_cast<int>(D[0].size()) : 0;
    SmithResult res;
    res.U = identity(r);
    res.V = identity(c);

    auto row_addmul = [&](int dst, int src, long long q) { // row_dst += q * row_src
        for (int j = 0; j < c; ++j) D[dst][j] = checked_add(D[dst][j], checked_mul(q, D[src][j]));
        for (int j = 0; j < r; ++j)
            res.U[dst][j] = checked_add(res.U[dst][j], checked_mul(q, res.U[src][j]));
    };
    auto col_addmul = [&](int dst, int src, long long q) {
        for (int i = 0; i < r; ++i) D[i][dst] = checked_add(D[i][dst], checked_mul(q, D[i][src]));
        for (int i = 0; i < c; ++i)
            res.V[i][dst] = checked_add(res.V[i][dst], checked_mul(q, res.V[i][src]));
    };
    auto row_swap = [&](int a, int b) {
        std::swap(D[a], D[b]);
        std::swap(res.U[a], res.U[b]);
    };
    auto col_swap = [&](int a, int b) {
        for (int i = 0; i < r; ++i) std::swap(D[i][a], D[i][b]);
        for (int i = 0; i < c; ++i) std::swap(res.V[i][a], res.V[i][b]);
    };

    int limit = std::min(r, c);
    for (int t = 0; t < limit; ++t) {
        while (true) {
            // smallest nonzero entry of the trailing submatrix becomes the pivot
            int pi = -1, pj = -1;
            for (int i = t; i < r; ++i)
                for (int j = t; j < c; ++j)
                    if (D[i][j] != 0 &&
                        (pi == -1 || std::abs(D[i][j]) < std::abs(D[pi][pj]))) {
                        pi = i;
                        pj = j;
                    }
            if (pi == -1) { // submatrix is zero; remaining factors are 0
                for (int k = t; k < limit; ++k) res.factors.push_back(0);
                goto done;
            }
            if (pi != t) row_swap(pi, t);
            if (pj != t) col_swap(pj, t);

            bool dirty = true;
            while (dirty) {
                dirty = false;
                for (int i = t + 1; i < r; ++i) {
                    if (D[i][t] == 0) continue;
                    row_addmul(i, t, -(D[i][t] / D[t][t]));
                    if (D[i][t] != 0) { // remainder left: smaller pivot available
                        row_swap(i, t);
                        dirty = true;
                    }
                }
                for (int j = t + 1; j < c; ++j) {
                    if (D[t][j] == 0) continue;
                    col_addmul(j, t, -(D[t][j] / D[t][t]));
                    if (D[t][j] != 0) {
                        col_swap(j, t);
                        dirty = true;
                    }
                }
            }
            // divisor-chain condition: the pivot must divide the rest
            bool redo = false;
            for (int i = t + 1; i < r && !redo; ++i)
                for (int j = t + 1; j < c && !redo; ++j)
                    if (D[i][j] % D[t][t] != 0) {
                        row_addmul(t, i, 1);
                        redo = true;
                    }
            if (!redo) break;
        }
        if (D[t][t] < 0) {
            for (int j = 0; j < c; ++j) D[t][j] = -D[t][j];
            for (int j = 0; j < r; ++j) res.U[t][j] = -res.U[t][j];
        }
        res.factors.push_back(D[t][t]);
    }
done:
    return res;
}

// ---------------------------------------------------------------------------
// FGAbGroup

FGAbGroup FGAbGroup::make(int rank, std::vector<long long> torsion, bool* changed) {
    if (rank < 0) throw SchemaError("negative free rank");
    for (long long d : torsion)
        if (d <= 0) throw SchemaError("torsion orders must be positive");
    std::vector<long long> given = torsion;
    // normalize into a divisor chain via the Smith form of the diagonal
    IntMat diag(torsion.size(), std::vector<long long>(torsion.size(), 0));
    for (size_t i = 0; i < torsion.size(); ++i) diag[i][i] = torsion[i];
    auto snf = smith_normal_form(diag);
    std::vector<long long> chain;
    for (long long f : snf.factors)
        if (f >= 2) chain.push_back(f);
    if (changed) *changed = (chain != given);
    FGAbGroup g;
    g.free_rank = rank;
    g.torsion = std::move(chain);
    return g;
}

FGAbGroup FGAbGroup::from_relations(int generator_count, const IntMat& relations) {
    if (generator_count < 0) throw SchemaError("negative generator count");
    for (const auto& row : relations)
        if (static_cast<int>(row.size()) != generator_count)
            throw SchemaError("relation row length does not match generator count");
    auto snf = smith_normal_form(relations);
    int nonzero = 0;
    std::vector<long long> torsion;
    for (long long f : snf.factors)
        if (f != 0) {
            ++nonzero;
            if (f >= 2) torsion.push_back(f);
        }
    FGAbGroup g;
    g.free_rank = generator_count - nonzero;
    g.torsion = std::move(torsion);
    return g;
}

std::string FGAbGroup::to_string() const {
    if (is_trivial()) return "0";
    std::string out;
    for (int i = 0; i < free_rank; ++i) out += out.empty() ? "Z" : " + Z";
    for (long long d : torsion)
        out += (out.empty() ? "Z_" : " + Z_") + std::to_string(d);
    return out;
}

long long FGAbGroup::torsion_order() const {
    long long p = 1;
    for (long long d : torsion) p = checked_mul(p, d);
    return p;
}

// ---------------------------------------------------------------------------
// GroupElement

GroupElement GroupElement::make(const FGAbGroup& g, std::vector<long long> free_c,
                                std::vector<long long> tor_c) {
    if (static_cast<int>(free_c.size()) != g.free_rank ||
        tor_c.size() != g.torsion.size())
        throw SchemaError("element coordinates do not match the group shape");
    for (size_t i = 0; i < tor_c.size(); ++i) tor_c[i] = positive_mod(tor_c[i], g.torsion[i]);
    GroupElement e;
    e.group = g;
    e.free_c = std::move(free_c);
    e.tor_c = std::move(tor_c);
    return e;
}

GroupElement GroupElement::zero(const FGAbGroup& g) {
    return make(g, std::vector<long long>(g.free_rank, 0),
                std::vector<long long>(g.torsion.size(), 0));
}

GroupElement GroupElement::basis(const FGAbGroup& g, int k) {
    GroupElement e = zero(g);
    if (k < 0 || k >= g.generator_count())
        throw SchemaError("generator index out of range");
    if (k < g.free_rank)
        e.free_c[k] = 1;
    else
        e.tor_c[k - g.free_rank] = 1 % g.torsion[k - g.free_rank];
    return e;
}

bool GroupElement::is_zero() const {
    for (long long v : free_c)
        if (v != 0) return false;
    for (long long v : tor_c)
        if (v != 0) return false;
    return true;
}

GroupElement GroupElement::operator+(const GroupElement& o) const {
    if (group != o.group) throw SchemaError("adding elements of different groups");
    GroupElement e = *this;
    for (size_t i = 0; i < free_c.size(); ++i) e.free_c[i] = checked_add(e.free_c[i], o.free_c[i]);
    for (size_t i = 0; i < tor_c.size(); ++i)
        e.tor_c[i] = positive_mod(checked_add(e.tor_c[i], o.tor_c[i]), group.torsion[i]);
    return e;
}

GroupElement GroupElement::operator-(const GroupElement& o) const { return *this + (-o); }

GroupElement GroupElement::operator-() const { return scaled(-1); }

GroupElement GroupElement::scaled(long long n) const {
    GroupElement e = *this;
    for (auto& v : e.free_c) v = checked_mul(v, n);
    for (size_t i = 0; i < e.tor_c.size(); ++i)
        e.tor_c[i] = positive_mod(checked_mul(e.tor_c[i], n), group.torsion[i]);
    return e;
}

bool GroupElement::operator==(const GroupElement& o) const {
    return group == o.group && free_c == o.free_c && tor_c == o.tor_c;
}

std::string GroupElement::to_string() const {
    if (group.generator_count() == 0) return "0";
    if (is_zero()) return "0";
    std::string out = "(";
    bool first = true;
    for (size_t i = 0; i < free_c.size(); ++i) {
        if (!first) out += ", ";
        first = false;
        bool labeled = i < group.free_labels.size() && !group.free_labels[i].empty();
        if (labeled) {
            const std::string& l = group.free_labels[i];
            if (free_c[i] == 0) out += "0";
            else if (free_c[i] == 1) out += l;
            else out += std::to_string(free_c[i]) + "*" + l;
        } else {
            out += std::to_string(free_c[i]);
        }
    }
    for (size_t i = 0; i < tor_c.size(); ++i) {
        if (!first) out += ", ";
        first = false;
        bool labeled = i < group.torsion_labels.size() && !group.torsion_labels[i].empty();
        if (labeled) {
            const std::string& l = group.torsion_labels[i];
            if (tor_c[i] == 0) out += "0";
            else if (tor_c[i] == 1) out += l;
            else out += std::to_string(tor_c[i]) + "*" + l;
        } else {
            out += std::to_string(tor_c[i]);
        }
    }
    return out + ")";
}

// ---------------------------------------------------------------------------
// GroupHom

GroupHom GroupHom::make(const FGAbGroup& dom, const FGAbGroup& cod,
                        std::vector<GroupElement> cols) {
    if (static_cast<int>(cols.size()) != dom.generator_count())
        throw SchemaError("homomorphism needs one image per domain generator");
    for (const auto& e : cols)
        if (e.group != cod) throw SchemaError("homomorphism image lies in the wrong group");
    for (size_t i = 0; i < dom.torsion.size(); ++i) {
        const auto& img = cols[dom.free_rank + i];
        if (!img.scaled(dom.torsion[i]).is_zero())
            throw SchemaError("not a homomorphism: torsion generator of order " +
                              std::to_string(dom.torsion[i]) +
                              " maps to an element of larger order");
    }
    GroupHom h;
    h.dom = dom;
    h.cod = cod;
    h.cols = std::move(cols);
    return h;
}

GroupHom GroupHom::zero(const FGAbGroup& dom, const FGAbGroup& cod) {
    return make(dom, cod,
                std::vector<GroupElement>(dom.generator_count(), GroupElement::zero(cod)));
}

GroupElement GroupHom::apply(const GroupElement& x) const {
    if (x.group != dom) throw SchemaError("homomorphism applied to the wrong group");
    GroupElement acc = GroupElement::zero(cod);
    for (int i = 0; i < dom.free_rank; ++i) acc = acc + cols[i].scaled(x.free_c[i]);
    for (size_t i = 0; i < dom.torsion.size(); ++i)
        acc = acc + cols[dom.free_rank + i].scaled(x.tor_c[i]);
    return acc;
}

bool GroupHom::is_surjective() const {
    for (int k = 0; k < cod.generator_count(); ++k)
        if (!solve_in_group(cols, GroupElement::basis(cod, k))) return false;
    return true;
}

// ---------------------------------------------------------------------------
// integer solving

std::optional<std::vector<long long>> integer_solve(const IntMat& A,
                                                    const std::vector<long long>& b) {
    int r = static_cast<int>(A.size());
    int c = r ? static_cast<int>(A[0].size()) : 0;
    if (static_cast<int>(b.size()) != r) throw SchemaError("solve: shape mismatch");
    auto snf = smith_normal_form(A);
    // U A V = D; solve D y = U b, then x = V y
    std::vector<long long> ub(r, 0);
    for (int i = 0; i < r; ++i)
        for (int j = 0; j < r; ++j) ub[i] = checked_add(ub[i], checked_mul(snf.U[i][j], b[j]));
    std::vector<long long> y(c, 0);
    int limit = std::min(r, c);
    for (int i = 0; i < r; ++i) {
        long long d = i < limit ? snf.factors[i] : 0;
        if (d == 0) {
            if (ub[i] != 0) return std::nullopt;
        } else {
            if (ub[i] % d != 0) return std::nullopt;
            y[i] = ub[i] / d;
        }
    }
    std::vector<long long> x(c, 0);
    for (int i = 0; i < c; ++i)
        for (int j = 0; j < c; ++j) x[i] = checked_add(x[i], checked_mul(snf.V[i][j], y[j]));
    return x;
}

std::optional<std::vector<long long>> solve_in_group(const std::vector<GroupElement>& gens,
                                                     const GroupElement& target) {
    const FGAbGroup& g = target.group;
    for (const auto& e : gens)
        if (e.group != g) throw SchemaError("solve_in_group: mixed groups");
    int n = static_cast<int>(gens.size());
    int fr = g.free_rank, ts = static_cast<int>(g.torsion.size());
    // unknowns: n combination coefficients plus one slack per torsion relation
    IntMat A(fr + ts, std::vector<long long>(n + ts, 0));
    std::vector<long long> b(fr + ts, 0);
    for (int j = 0; j < n; ++j) {
        for (int i = 0; i < fr; ++i) A[i][j] = gens[j].free_c[i];
        for (int i = 0; i < ts; ++i) A[fr + i][j] = gens[j].tor_c[i];
    }
    for (int i = 0; i < ts; ++i) A[fr + i][n + i] = g.torsion[i];
    for (int i = 0; i < fr; ++i) b[i] = target.free_c[i];
    for (int i = 0; i < ts; ++i) b[fr + i] = target.tor_c[i];
    auto sol = integer_solve(A, b);
    if (!sol) return std::nullopt;
    sol->resize(n);
    return sol;
}

std::vector<GroupElement> kernel_generators(const GroupHom& h) {
    int n = h.dom.generator_count();
    int fr = h.cod.free_rank, ts = static_cast<int>(h.cod.torsion.size());
    if (fr + ts == 0) { // trivial codomain: the kernel is all of the domain
        std::vector<GroupElement> out;
        for (int k = 0; k < n; ++k) out.push_back(GroupElement::basis(h.dom, k));
        return out;
    }
    IntMat A(fr + ts, std::vector<long long>(n + ts, 0));
    for (int j = 0; j < n; ++j) {
        for (int i = 0; i < fr; ++i) A[i][j] = h.cols[j].free_c[i];
        for (int i = 0; i < ts; ++i) A[fr + i][j] = h.cols[j].tor_c[i];
    }
    for (int i = 0; i < ts; ++i) A[fr + i][n + i] = h.cod.torsion[i];
    auto snf = smith_normal_form(A);
    int rows = fr + ts, cols = n + ts;
    int limit = std::min(rows, cols);
    std::vector<GroupElement> out;
    for (int k = 0; k < cols; ++k) {
        bool in_kernel = k >= limit || snf.factors[k] == 0;
        if (!in_kernel) continue;
        // column k of V spans a kernel direction of the lifted lattice
        std::vector<long long> fc(h.dom.free_rank, 0), tc(h.dom.torsion.size(), 0);
        for (int i = 0; i < h.dom.free_rank; ++i) fc[i] = snf.V[i][k];
        for (size_t i = 0; i < h.dom.torsion.size(); ++i) tc[i] = snf.V[h.dom.free_rank + i][k];
        GroupElement e = GroupElement::make(h.dom, std::move(fc), std::move(tc));
        if (!e.is_zero()) out.push_back(std::move(e));
    }
    // torsion relations of the domain itself also die, but reduce to zero
    // coordinates, so nothing to add
    return out;
}

int rationalize(const FGAbGroup& g) { return g.free_rank; }

std::vector<Rational> rationalize_element(const GroupElement& x) {
    std::vector<Rational> out;
    out.reserve(x.free_c.size());
    for (long long v : x.free_c) out.emplace_back(v);
    return out;
}

} // namespace bracecalc
