#include "bracecalc/fibration.hpp"

#include <algorithm>

#include <json.hpp>

#include "bracecalc/errors.hpp"

namespace bracecalc {

using nlohmann::json;

namespace {

constexpr const char* cite_derivation =
    "I. M. James and J. H. C. Whitehead, The homotopy theory of sphere bundles "
    "over spheres I, Proc. London Math. Soc. (1954): the section pairing acts "
    "on the fibre by graded derivations";
constexpr const char* cite_lie_map =
    "I. M. James and J. H. C. Whitehead, The homotopy theory of sphere bundles "
    "over spheres II, Proc. London Math. Soc. (1955): the section pairing is a "
    "map of graded Lie algebras in the base variable";

Rational sgn(long long parity) { return Rational((parity & 1) ? -1 : 1); }

// Rebuild x on `alg` (tolerating elements built over a structurally equal
// algebra) and report it in the Samelson view.
LieElement to_samelson_on(const LieAlgebra& alg, const LieElement& x) {
    if (x.is_zero()) return alg.zero();
    LieElement r = alg.element(x.terms(), x.view());
    if (x.view() == GradingView::Whitehead)
        r = alg.adjoint_shift(r, GradingView::Whitehead, GradingView::Samelson);
    return r;
}

LieElement whitehead_unit(const LieAlgebra& alg, const Word& w) {
    return alg.element({{w, Rational(1)}}, GradingView::Whitehead);
}

void add_unique(std::vector<std::string>& xs, const std::string& s) {
    if (std::find(xs.begin(), xs.end(), s) == xs.end()) xs.push_back(s);
}

std::string pi_str(int degree, const std::string& space) {
    return "pi_" + std::to_string(degree) + "(" + space + ")";
}

std::string sphere_str(int n) { return "S^" + std::to_string(n); }

}  // namespace

// ---------------------------------------------------------------------------
// SplitFibration

SplitFibration::SplitFibration(LieAlgebra base, LieAlgebra fibre,
                               std::vector<BraceEntry> pairing)
    : base_(std::move(base)), fibre_(std::move(fibre)), entries_(std::move(pairing)) {
    for (const auto& e : entries_) {
        // validate the words by rebuilding unit monomials on our copies
        base_.element({{e.base_word, Rational(1)}}, GradingView::Samelson);
        fibre_.element({{e.fibre_word, Rational(1)}}, GradingView::Samelson);
        std::string key_str = "{" + base_.word_to_string(e.base_word) + ", " +
                              fibre_.word_to_string(e.fibre_word) + "}";
        LieElement v = to_samelson_on(fibre_, e.value);
        int want = base_.word_degree(e.base_word) + fibre_.word_degree(e.fibre_word);
        if (!v.is_zero() && v.samelson_degree() != want)
            throw InvalidPairing(key_str + ": value has Whitehead degree " +
                                 std::to_string(v.samelson_degree() + 1) +
                                 ", expected " + std::to_string(want + 1));
        auto key = std::make_pair(e.base_word, e.fibre_word);
        if (tvals_.count(key)) throw InvalidPairing("duplicate entry " + key_str);
        // The row records {alpha, beta}_s on Whitehead unit monomials; the
        // internal Samelson adjoint action differs by the degree sign of the
        // base monomial and the two grading-shift signs.
        Rational c = sgn(base_.word_degree(e.base_word));
        if (base_.shift_sign(e.base_word) < 0) c = -c;
        if (fibre_.shift_sign(e.fibre_word) < 0) c = -c;
        tvals_.emplace(std::move(key), v.scaled(c));
    }
}

// T_{bw} applied to the fibre basis monomial fw; Samelson view throughout.
// Explicit table rows win; otherwise squares and Lyndon factorizations on
// the base side reduce through the commutator rule, and composite fibre
// monomials reduce through the derivation rule.
LieElement SplitFibration::t_word(const Word& bw, const Word& fw) const {
    auto it = tvals_.find(std::make_pair(bw, fw));
    if (it != tvals_.end()) return it->second;
    if (bw.size() > 1) {
        auto [x, y] = base_.word_children(bw);
        if (x == y)  // square monomial: T_{[w,w]} = 2 T_w T_w
            return t_apply(x, t_word(x, fw)).scaled(Rational(2));
        long long dx = base_.word_degree(x), dy = base_.word_degree(y);
        return t_apply(x, t_word(y, fw)) - t_apply(y, t_word(x, fw)).scaled(sgn(dx * dy));
    }
    if (fw.size() == 1) return fibre_.zero();  // pair without a table row
    auto [u, v] = fibre_.word_children(fw);
    long long db = base_.word_degree(bw), du = fibre_.word_degree(u);
    LieElement eu = fibre_.element({{u, Rational(1)}}, GradingView::Samelson);
    LieElement ev = fibre_.element({{v, Rational(1)}}, GradingView::Samelson);
    return fibre_.bracket(t_word(bw, u), ev) +
           fibre_.bracket(eu, t_word(bw, v)).scaled(sgn(db * du));
}

LieElement SplitFibration::t_apply(const Word& bw, const LieElement& x) const {
    LieElement out = fibre_.zero();
    for (const auto& [fw, c] : x.terms()) out = out + t_word(bw, fw).scaled(c);
    return out;
}

LieElement SplitFibration::james_brace(const LieElement& alpha,
                                       const LieElement& beta) const {
    LieElement a = to_samelson_on(base_, alpha);
    LieElement b = to_samelson_on(fibre_, beta);
    if (a.is_zero() || b.is_zero())
        return fibre_.adjoint_shift(fibre_.zero(), GradingView::Samelson,
                                    GradingView::Whitehead);
    int target = a.samelson_degree() + b.samelson_degree() + 1;  // Whitehead
    if (target < 1)
        throw DegreeOutOfRange("brace target degree " + std::to_string(target) +
                               " is below 1");
    LieElement out = fibre_.zero();
    for (const auto& [bw, c] : a.terms()) out = out + t_apply(bw, b).scaled(c);
    out = out.scaled(sgn(a.samelson_degree()));
    return fibre_.adjoint_shift(out, GradingView::Samelson, GradingView::Whitehead);
}

LieElement SplitFibration::derivation_defect(const LieElement& beta,
                                             const LieElement& gamma,
                                             const LieElement& delta) const {
    LieElement b = to_samelson_on(base_, beta);
    LieElement g = to_samelson_on(fibre_, gamma);
    LieElement d = to_samelson_on(fibre_, delta);
    if (b.is_zero() || g.is_zero() || d.is_zero())
        return fibre_.adjoint_shift(fibre_.zero(), GradingView::Samelson,
                                    GradingView::Whitehead);
    long long k = b.samelson_degree() + 1;  // Whitehead degrees
    long long l = g.samelson_degree() + 1;
    LieElement lhs = james_brace(b, fibre_.whitehead_bracket(g, d));
    LieElement r1 = fibre_.whitehead_bracket(james_brace(b, g), d).scaled(sgn(k - 1));
    LieElement r2 =
        fibre_.whitehead_bracket(g, james_brace(b, d)).scaled(sgn((l - 1) * (k - 1)));
    return lhs - r1 - r2;
}

LieElement SplitFibration::lie_map_defect(const LieElement& alpha,
                                          const LieElement& beta,
                                          const LieElement& gamma) const {
    LieElement a = to_samelson_on(base_, alpha);
    LieElement b = to_samelson_on(base_, beta);
    LieElement g = to_samelson_on(fibre_, gamma);
    if (a.is_zero() || b.is_zero() || g.is_zero())
        return fibre_.adjoint_shift(fibre_.zero(), GradingView::Samelson,
                                    GradingView::Whitehead);
    long long j = a.samelson_degree() + 1;
    long long k = b.samelson_degree() + 1;
    LieElement lhs = james_brace(base_.whitehead_bracket(a, b), g);
    LieElement t1 = james_brace(a, james_brace(b, g));
    LieElement t2 = james_brace(b, james_brace(a, g)).scaled(sgn((j - 1) * (k - 1)));
    return lhs - (t1 - t2).scaled(sgn(j - 1));
}

Verdict derivation_identity_check(const SplitFibration& fib, const LieElement& beta,
                                  const LieElement& gamma, const LieElement& delta) {
    LieElement d = fib.derivation_defect(beta, gamma, delta);
    Verdict v = d.is_zero() ? Verdict::holds()
                            : Verdict::fails("defect " + d.to_string() + " != 0");
    v.certificate.push_back(
        "{b,[g,d]} = (-1)^{k-1}[{b,g},d] + (-1)^{(l-1)(k-1)}[g,{b,d}] on (b, g, d) = (" +
        beta.to_string() + ", " + gamma.to_string() + ", " + delta.to_string() + ")");
    v.citations.push_back(cite_derivation);
    return v;
}

Verdict lie_map_identity_check(const SplitFibration& fib, const LieElement& alpha,
                               const LieElement& beta, const LieElement& gamma) {
    LieElement d = fib.lie_map_defect(alpha, beta, gamma);
    Verdict v = d.is_zero() ? Verdict::holds()
                            : Verdict::fails("defect " + d.to_string() + " != 0");
    v.certificate.push_back(
        "{[a,b],g} = (-1)^{j-1}({a,{b,g}} - (-1)^{(j-1)(k-1)}{b,{a,g}}) on (a, b, g) = (" +
        alpha.to_string() + ", " + beta.to_string() + ", " + gamma.to_string() + ")");
    v.citations.push_back(cite_lie_map);
    return v;
}

TotalLie assemble_total_lie(const SplitFibration& fib, int degree_cap) {
    const LieAlgebra& B = fib.base();
    const LieAlgebra& F = fib.fibre();
    if (degree_cap < 3)
        throw CapTooSmall("degree cap " + std::to_string(degree_cap) +
                          " leaves no room for a mixed Jacobi triple");
    int cap_s = degree_cap - 1;  // Samelson budget of a whole triple
    auto bb = B.graded_basis(cap_s);
    auto fb = F.graded_basis(cap_s);

    TotalLie out;
    out.base_generators = B.generators();
    out.fibre_generators = F.generators();
    out.degree_cap = degree_cap;
    for (const auto& gb : B.generators())
        for (const auto& gf : F.generators()) {
            LieElement br = fib.james_brace(B.generator(gb.name), F.generator(gf.name));
            out.relations.push_back("[" + gb.name + ", " + gf.name + "] = " +
                                    br.to_string());
        }

    // Mixed Jacobi on basis triples: the (b, f, f') instances are the
    // derivation identity, the (b, b', f) instances the Lie-map identity.
    for (int sb = 1; sb <= cap_s; ++sb)
        for (const Word& bw : bb[sb - 1]) {
            LieElement b = whitehead_unit(B, bw);
            for (int s1 = 1; sb + s1 + 1 <= cap_s; ++s1)
                for (const Word& f1 : fb[s1 - 1])
                    for (int s2 = 1; sb + s1 + s2 <= cap_s; ++s2)
                        for (const Word& f2 : fb[s2 - 1]) {
                            LieElement d = fib.derivation_defect(
                                b, whitehead_unit(F, f1), whitehead_unit(F, f2));
                            ++out.triples_checked;
                            if (!d.is_zero())
                                throw InvalidPairing(
                                    "Jacobi fails on (" + B.word_to_string(bw) + ", " +
                                    F.word_to_string(f1) + ", " + F.word_to_string(f2) +
                                    "): defect = " + d.to_string());
                        }
            for (int s2 = 1; sb + s2 + 1 <= cap_s; ++s2)
                for (const Word& bw2 : bb[s2 - 1])
                    for (int sf = 1; sb + s2 + sf <= cap_s; ++sf)
                        for (const Word& fw : fb[sf - 1]) {
                            LieElement d = fib.lie_map_defect(
                                b, whitehead_unit(B, bw2), whitehead_unit(F, fw));
                            ++out.triples_checked;
                            if (!d.is_zero())
                                throw InvalidPairing(
                                    "Jacobi fails on (" + B.word_to_string(bw) + ", " +
                                    B.word_to_string(bw2) + ", " + F.word_to_string(fw) +
                                    "): defect = " + d.to_string());
                        }
        }
    if (out.triples_checked == 0)
        throw CapTooSmall("degree cap " + std::to_string(degree_cap) +
                          " admits no mixed Jacobi triple for these generators");
    return out;
}

LieElement brace_pullback(const SplitFibration& fib, long long effect,
                          const LieElement& alpha, const LieElement& beta) {
    return fib.james_brace(alpha.scaled(Rational(effect)), beta);
}

std::pair<LieElement, LieElement> brace_product_fibration(
    const SplitFibration& fib1, const SplitFibration& fib2, const LieElement& alpha,
    const LieElement& beta1, const LieElement& beta2) {
    const auto& g1 = fib1.base().generators();
    const auto& g2 = fib2.base().generators();
    bool same = g1.size() == g2.size();
    for (size_t i = 0; same && i < g1.size(); ++i)
        same = g1[i].name == g2[i].name &&
               g1[i].samelson_degree == g2[i].samelson_degree;
    if (!same)
        throw BaseMismatch("the fibre product needs both fibrations over one base");
    return {fib1.james_brace(alpha, beta1), fib2.james_brace(alpha, beta2)};
}

// ---------------------------------------------------------------------------
// free loop fibrations

namespace {

std::string class_terms(const GroupElement& v) {
    const FGAbGroup& g = v.group;
    auto label = [](const std::vector<std::string>& ls, size_t i, const char* stem) {
        if (i < ls.size() && !ls[i].empty()) return ls[i];
        return std::string(stem) + "_" + std::to_string(i + 1);
    };
    std::vector<std::string> parts;
    auto push = [&](long long c, const std::string& nm) {
        if (c == 0) return;
        if (c == 1) parts.push_back(nm);
        else if (c == -1) parts.push_back("-" + nm);
        else parts.push_back(std::to_string(c) + " " + nm);
    };
    for (int i = 0; i < g.free_rank; ++i) push(v.free_c[i], label(g.free_labels, i, "b"));
    for (size_t i = 0; i < g.torsion.size(); ++i)
        push(v.tor_c[i], label(g.torsion_labels, i, "t"));
    if (parts.empty()) return "0";
    std::string out = parts[0];
    for (size_t i = 1; i < parts.size(); ++i) out += " + " + parts[i];
    return out;
}

long long single_coord(const GroupElement& v, const std::string& what) {
    const FGAbGroup& g = v.group;
    if (g.generator_count() == 0) return 0;
    if (g.generator_count() != 1)
        throw MissingEntry(what + ": product rows are recorded against "
                           "single-generator groups, got " + g.to_string());
    return g.free_rank == 1 ? v.free_c[0] : v.tor_c[0];
}

}  // namespace

std::string LoopClass::to_string() const {
    if (cls.value.is_zero()) return "0";
    std::string body = class_terms(cls.value);
    if (shift <= 0) return body;
    std::string ad = shift == 1 ? "ad " : "ad^" + std::to_string(shift) + " ";
    int nonzero = 0;
    for (long long c : cls.value.free_c) nonzero += c != 0;
    for (long long c : cls.value.tor_c) nonzero += c != 0;
    if (nonzero > 1) return ad + "(" + body + ")";
    auto sp = body.find(' ');
    if (sp == std::string::npos)
        return body[0] == '-' ? "-" + ad + body.substr(1) : ad + body;
    return body.substr(0, sp + 1) + ad + body.substr(sp + 1);
}

FreeLoopBraceResult free_loop_brace(const HomotopyTable& ht, int m,
                                    const SpaceClass& f, const LoopClass& g) {
    if (m < 1) throw Unsupported("free loop brace: m must be >= 1");
    if (!(f.space == g.cls.space))
        throw BaseMismatch("f lives over " + f.space.to_string() +
                           " but g deloops to " + g.cls.space.to_string());
    if (g.shift != m)
        throw BaseMismatch("g must be an " + std::to_string(m) +
                           "-fold loop class, got shift " + std::to_string(g.shift));
    if (g.degree() < 1)
        throw DegreeOutOfRange("g sits in degree " + std::to_string(g.degree()) +
                               " on the loop space; need >= 1");
    if (f.space.kind != SpaceKind::Sphere)
        throw MissingEntry("Whitehead products are tabulated for spheres; got " +
                           f.space.to_string());
    int n = f.space.n, l = f.degree, r = g.cls.degree;
    FGAbGroup gl = ht.group_lookup(f.space, l);
    FGAbGroup gr = ht.group_lookup(f.space, r);
    if (f.value.group != gl)
        throw MixedDegree("f does not carry coordinates in " +
                          pi_str(l, f.space.to_string()));
    if (g.cls.value.group != gr)
        throw MixedDegree("g does not deloop to coordinates in " +
                          pi_str(r, f.space.to_string()));
    long long a = single_coord(f.value, "f");
    long long b = single_coord(g.cls.value, "g");

    GroupElement prod = GroupElement::zero(FGAbGroup{});
    std::string cite;
    if (auto row = ht.whitehead_product(n, l, r)) {
        prod = row->value;
        cite = row->citation;
    } else if (auto row2 = ht.whitehead_product(n, r, l)) {
        // [x, y] = (-1)^{|x||y|} [y, x] in Whitehead degrees
        prod = ((l & 1) && (r & 1)) ? -row2->value : row2->value;
        cite = row2->citation;
    } else if (l == r && l == n) {
        const auto& sq = ht.whitehead_square(n);
        prod = sq.value;
        cite = sq.citation;
    } else {
        throw MissingEntry("no Whitehead product row for [" + pi_str(l, sphere_str(n)) +
                           ", " + pi_str(r, sphere_str(n)) + "]");
    }

    FreeLoopBraceResult out;
    out.value.cls.space = f.space;
    out.value.cls.degree = l + r - 1;
    out.value.cls.value = prod.scaled(a * b);
    out.value.shift = m;
    out.citations.push_back(cite);
    out.citations.push_back(ht.fact("free-loop-brace").citation);
    return out;
}

// ---------------------------------------------------------------------------
// descriptors

namespace {

const json& field(const json& j, const char* key, const std::string& where) {
    if (!j.is_object() || !j.contains(key))
        throw SchemaError(where + ": missing field '" + key + "'");
    return j.at(key);
}

std::string require_string(const json& j, const char* key, const std::string& where) {
    const json& v = field(j, key, where);
    if (!v.is_string()) throw SchemaError(where + ": field '" + key + "' must be a string");
    return v.get<std::string>();
}

int require_int(const json& j, const char* key, const std::string& where) {
    const json& v = field(j, key, where);
    if (!v.is_number_integer())
        throw SchemaError(where + ": field '" + key + "' must be an integer");
    return v.get<int>();
}

std::vector<long long> read_coords(const json& j, const char* key, size_t want,
                                   const std::string& where) {
    std::vector<long long> out;
    if (j.is_object() && j.contains(key)) {
        const json& arr = j.at(key);
        if (!arr.is_array())
            throw SchemaError(where + ": field '" + key + "' must be an array");
        for (const auto& x : arr) {
            if (!x.is_number_integer())
                throw SchemaError(where + ": coordinates must be integers");
            out.push_back(x.get<long long>());
        }
    }
    if (out.size() > want)
        throw SchemaError(where + ": " + std::to_string(out.size()) + " '" + key +
                          "' coordinates for a group with " + std::to_string(want));
    out.resize(want, 0);
    return out;
}

GroupElement parse_element(const json& j, const FGAbGroup& g, const std::string& where) {
    if (!j.is_object())
        throw SchemaError(where + ": element must be an object with 'free'/'torsion'");
    return GroupElement::make(g, read_coords(j, "free", g.free_rank, where),
                              read_coords(j, "torsion", g.torsion.size(), where));
}

int gen_index(const LieAlgebra& alg, const std::string& name, const std::string& where) {
    const auto& gs = alg.generators();
    for (size_t i = 0; i < gs.size(); ++i)
        if (gs[i].name == name) return static_cast<int>(i);
    throw UnknownGenerator(where + ": no generator named '" + name + "'");
}

Word parse_word(const json& v, const LieAlgebra& alg, const std::string& where) {
    Word w;
    if (v.is_string()) {
        w.push_back(gen_index(alg, v.get<std::string>(), where));
    } else if (v.is_array()) {
        for (const auto& s : v) {
            if (!s.is_string())
                throw SchemaError(where + ": word letters must be generator names");
            w.push_back(gen_index(alg, s.get<std::string>(), where));
        }
    } else {
        throw SchemaError(where + ": word must be a name or an array of names");
    }
    return w;
}

Rational parse_coeff(const json& v, const std::string& where) {
    if (v.is_number_integer()) return Rational(v.get<long long>());
    if (v.is_string()) {
        std::string s = v.get<std::string>();
        try {
            auto slash = s.find('/');
            if (slash == std::string::npos) return Rational(std::stoll(s));
            return Rational(std::stoll(s.substr(0, slash))) /
                   Rational(std::stoll(s.substr(slash + 1)));
        } catch (const std::logic_error&) {
            throw SchemaError(where + ": cannot parse coefficient '" + s + "'");
        }
    }
    throw SchemaError(where + ": coefficient must be an integer or a 'p/q' string");
}

LieAlgebra parse_algebra(const json& arr, const std::string& where) {
    if (!arr.is_array()) throw SchemaError(where + ": must be an array of generators");
    std::vector<Generator> gens;
    for (const auto& e : arr) {
        std::string name = require_string(e, "name", where);
        int wdeg = require_int(e, "degree", where);  // Whitehead degree
        if (wdeg < 2)
            throw SchemaError(where + ": generator '" + name +
                              "' must have Whitehead degree >= 2");
        gens.push_back({name, wdeg - 1});
    }
    if (gens.empty()) throw SchemaError(where + ": needs at least one generator");
    return LieAlgebra(std::move(gens));
}

LieElement parse_value(const json& arr, const LieAlgebra& fibre, const std::string& where) {
    if (!arr.is_array()) throw SchemaError(where + ": value must be an array of terms");
    std::map<Word, Rational> terms;
    for (const auto& t : arr) {
        Word w = parse_word(field(t, "word", where), fibre, where);
        Rational c = parse_coeff(field(t, "coeff", where), where);
        auto it = terms.find(w);
        if (it == terms.end()) terms.emplace(std::move(w), c);
        else it->second += c;
    }
    return fibre.element(terms, GradingView::Whitehead);
}

ClutchingClass parse_clutching(const json& j, const HomotopyTable& ht,
                               const std::string& where) {
    ClutchingClass c;
    c.n = require_int(j, "n", where);
    c.q = require_int(j, "q", where);
    if (c.n < 2 || c.q < 1)
        throw Unsupported(where + ": need n >= 2 and q >= 1");
    FGAbGroup g_rho = ht.group_lookup(SpaceRef::so(c.q + 1), c.n - 1);
    c.rho = j.contains("rho") ? parse_element(j.at("rho"), g_rho, where + ".rho")
                              : GroupElement::zero(g_rho);
    if (j.contains("lift"))
        c.lift = parse_element(j.at("lift"), ht.group_lookup(SpaceRef::so(c.q), c.n - 1),
                               where + ".lift");
    if (j.contains("j_image")) {
        c.j_image = parse_element(j.at("j_image"),
                                  ht.group_lookup(SpaceRef::sphere(c.q + 1), c.n + c.q),
                                  where + ".j_image");
        c.j_citation = require_string(j, "j_citation", where);
    }
    return c;
}

}  // namespace

FibrationDescriptor FibrationDescriptor::parse(const std::string& json_text,
                                               const HomotopyTable& ht) {
    json j;
    try {
        j = json::parse(json_text);
    } catch (const json::parse_error& e) {
        throw SchemaError(std::string("descriptor is not valid JSON: ") + e.what());
    }
    const std::string where = "fibration descriptor";
    if (!j.is_object() || j.value("schema", std::string()) != "fibration/1")
        throw SchemaError(where + ": expected schema 'fibration/1'");
    std::string kind = require_string(j, "kind", where);

    FibrationDescriptor d;
    if (kind == "sphere-over-sphere" || kind == "clutched") {
        d.kind = kind == "clutched" ? Kind::Clutched : Kind::SphereOverSphere;
        d.clutching = parse_clutching(j, ht, where);
    } else if (kind == "wedge-over-wedge") {
        d.kind = Kind::WedgeOverWedge;
        for (const auto& x : field(j, "base_dims", where)) d.base_dims.push_back(x.get<int>());
        for (const auto& x : field(j, "fibre_dims", where)) d.fibre_dims.push_back(x.get<int>());
        if (j.contains("braces"))
            for (const auto& e : j.at("braces")) {
                WedgeBrace wb;
                wb.base_dim = require_int(e, "base_dim", where + ".braces");
                wb.fibre_dim = require_int(e, "fibre_dim", where + ".braces");
                wb.witness = require_string(e, "witness", where + ".braces");
                d.wedge_braces.push_back(std::move(wb));
            }
    } else if (kind == "free-loop") {
        d.kind = Kind::FreeLoop;
        d.loop_m = require_int(j, "m", where);
        d.loop_space = ht.parse_space(require_string(j, "space", where));
    } else if (kind == "surface-bundle") {
        d.kind = Kind::SurfaceSphereBundle;
        d.genus = require_int(j, "genus", where);
        d.sphere_n = require_int(j, "n", where);
        const json& w2 = field(j, "w2_nonzero", where);
        if (!w2.is_boolean()) throw SchemaError(where + ": 'w2_nonzero' must be a boolean");
        d.w2_nonzero = w2.get<bool>();
    } else if (kind == "product-pullback") {
        d.kind = Kind::ProductPullback;
        for (const auto& x : field(j, "factors", where)) d.base_dims.push_back(x.get<int>());
        if (j.contains("fibre_dims"))
            for (const auto& x : j.at("fibre_dims")) d.fibre_dims.push_back(x.get<int>());
    } else if (kind == "lie-group") {
        d.kind = Kind::SphereOverLieGroup;
        d.lie_group = require_string(j, "group", where);
        d.sphere_n = require_int(j, "fibre", where);
    } else if (kind == "homogeneous") {
        d.kind = Kind::HomogeneousPrincipal;
        d.lie_group = require_string(j, "total", where);
        d.homog_fibre = require_int(j, "subgroup_sphere", where);
        d.homog_base = require_int(j, "base_sphere", where);
    } else if (kind == "presented") {
        d.kind = Kind::Presented;
        LieAlgebra base = parse_algebra(field(j, "base", where), where + ".base");
        LieAlgebra fibre = parse_algebra(field(j, "fibre", where), where + ".fibre");
        std::vector<BraceEntry> rows;
        for (const auto& e : field(j, "pairing", where)) {
            BraceEntry be;
            be.base_word = parse_word(field(e, "base", where + ".pairing"), base,
                                      where + ".pairing");
            be.fibre_word = parse_word(field(e, "fibre", where + ".pairing"), fibre,
                                       where + ".pairing");
            be.value = parse_value(field(e, "value", where + ".pairing"), fibre,
                                   where + ".pairing");
            rows.push_back(std::move(be));
        }
        if (j.contains("degree_cap")) d.presented_cap = require_int(j, "degree_cap", where);
        d.presented = std::make_shared<SplitFibration>(std::move(base), std::move(fibre),
                                                       std::move(rows));
    } else {
        throw Unsupported("unknown descriptor kind '" + kind + "'");
    }
    return d;
}

std::string FibrationDescriptor::kind_name() const {
    switch (kind) {
        case Kind::SphereOverSphere: return "sphere-over-sphere";
        case Kind::Clutched: return "clutched";
        case Kind::WedgeOverWedge: return "wedge-over-wedge";
        case Kind::FreeLoop: return "free-loop";
        case Kind::SurfaceSphereBundle: return "surface-bundle";
        case Kind::ProductPullback: return "product-pullback";
        case Kind::SphereOverLieGroup: return "lie-group";
        case Kind::HomogeneousPrincipal: return "homogeneous";
        case Kind::Presented: return "presented";
    }
    return "?";
}

// ---------------------------------------------------------------------------
// verdicts

Verdict sphere_over_sphere_split(const HomotopyTable& ht, int n, int m,
                                 const GroupElement& brace_value) {
    if (n < 2 || m < 2)
        throw Unsupported("suspension-over-suspension splitting needs n, m >= 2");
    FGAbGroup g = ht.group_lookup(SpaceRef::sphere(m), n + m - 1);
    if (brace_value.group != g)
        throw SchemaError("brace value is not a class in " +
                          pi_str(n + m - 1, sphere_str(m)));
    std::string where = pi_str(n + m - 1, sphere_str(m)) + " = " + g.to_string();
    Verdict v;
    if (brace_value.is_zero()) {
        v = Verdict::holds();
        v.certificate.push_back("{Id, Id}_s = 0 in " + where);
        v.certificate.push_back(
            "for a sphere bundle over a sphere with section the brace of the "
            "identities is the complete splitting obstruction");
    } else {
        v = Verdict::fails("{Id, Id}_s = " + brace_value.to_string() + " != 0 in " + where);
    }
    v.citations.push_back(ht.fact("brace-section-obstruction").citation);
    return v;
}

namespace {

Verdict free_loop_verdict(const HomotopyTable& ht, const FibrationDescriptor& desc) {
    if (desc.loop_m < 1) throw Unsupported("free loop fibrations need m >= 1");
    if (desc.loop_space.kind != SpaceKind::Sphere)
        throw Unsupported("free-loop verdicts are tabulated for spheres; got " +
                          desc.loop_space.to_string());
    int n = desc.loop_space.n;
    if (desc.loop_m >= 2) {
        if (n != 2)
            throw Unsupported("the m >= 2 vanishing theorem is recorded for S^2 only");
        Verdict v = Verdict::holds();
        v.certificate.push_back(
            "every brace {f, g}_s = ad^" + std::to_string(desc.loop_m) + " [f, ad^{-" +
            std::to_string(desc.loop_m) + "} g] with the delooped class in degree >= " +
            std::to_string(desc.loop_m + 1));
        v.certificate.push_back(
            "[pi_j(S^2), pi_{>=3}(S^2)] consists of even multiples of order-2 "
            "classes, so the generalized brace vanishes identically");
        v.citations.push_back(ht.fact("free-loop-vanishing-m-ge-2").citation);
        v.citations.push_back(ht.fact("free-loop-brace").citation);
        return v;
    }
    // m = 1: the brace of the identities is ad [Id, Id]
    FGAbGroup gn = ht.group_lookup(SpaceRef::sphere(n), n);
    SpaceClass id{SpaceRef::sphere(n), n, GroupElement::basis(gn, 0), "Id"};
    LoopClass ad_id{id, 1};
    FreeLoopBraceResult br = free_loop_brace(ht, 1, id, ad_id);
    Verdict v;
    if (br.is_zero()) {
        v = Verdict::holds();
        v.certificate.push_back("{Id, ad Id}_s = ad [Id, Id] = 0");
        v.certificate.push_back(
            "[Id, Id] = 0 forces every Whitehead product on " + sphere_str(n) +
            " to vanish, so the generalized brace is identically zero");
    } else {
        v = Verdict::fails("{Id, ad Id}_s = " + br.to_string() + " != 0 in " +
                           pi_str(2 * n - 2, "Omega " + sphere_str(n)));
    }
    for (const auto& c : br.citations) add_unique(v.citations, c);
    return v;
}

Verdict presented_verdict(const SplitFibration& fib, const HomotopyTable& ht,
                          int degree_cap) {
    TotalLie tl = assemble_total_lie(fib, degree_cap);
    const LieAlgebra& B = fib.base();
    const LieAlgebra& F = fib.fibre();
    int cap_s = degree_cap - 1;
    auto bb = B.graded_basis(cap_s);
    auto fb = F.graded_basis(cap_s);
    long long pairs = 0;
    for (int sb = 1; sb <= cap_s; ++sb)
        for (const Word& bw : bb[sb - 1])
            for (int sf = 1; sb + sf <= cap_s; ++sf)
                for (const Word& fw : fb[sf - 1]) {
                    LieElement br =
                        fib.james_brace(whitehead_unit(B, bw), whitehead_unit(F, fw));
                    ++pairs;
                    if (!br.is_zero()) {
                        Verdict v = Verdict::fails(
                            "{" + B.word_to_string(bw) + ", " + F.word_to_string(fw) +
                            "}_s = " + br.to_string() + " != 0");
                        v.citations.push_back(ht.fact("brace-section-obstruction").citation);
                        return v;
                    }
                }
    Verdict v = Verdict::up_to_degree(degree_cap);
    v.certificate.push_back("all " + std::to_string(pairs) +
                            " James braces on basis pairs of Whitehead degree <= " +
                            std::to_string(degree_cap) + " vanish");
    v.certificate.push_back("mixed Jacobi verified on " +
                            std::to_string(tl.triples_checked) + " basis triples");
    v.caveats.push_back(caveat_generalized_brace_not_implied);
    v.citations.push_back(ht.fact("brace-section-obstruction").citation);
    return v;
}

}  // namespace

Verdict h_split_verdict(const HomotopyTable& ht, const ClutchingTable& ct,
                        const FibrationDescriptor& desc, int degree_cap) {
    switch (desc.kind) {
        case FibrationDescriptor::Kind::SphereOverSphere:
        case FibrationDescriptor::Kind::Clutched: {
            if (!desc.clutching) throw Unsupported("descriptor carries no clutching class");
            const ClutchingClass& c = *desc.clutching;
            ClutchedBrace br = brace_from_clutching(ct, c, true);
            Verdict v = sphere_over_sphere_split(ht, c.n, c.q + 1, br.value);
            v.certificate.insert(v.certificate.begin(),
                                 "{Id, Id}_s = -J[rho] = " + br.value.to_string() +
                                     " in " + pi_str(br.degree, sphere_str(br.sphere)));
            for (const auto& cit : br.citations) add_unique(v.citations, cit);
            return v;
        }
        case FibrationDescriptor::Kind::WedgeOverWedge: {
            for (int dim : desc.base_dims)
                if (dim < 2)
                    throw Unsupported("wedge summands must be double suspensions "
                                      "(dimension >= 2)");
            for (int dim : desc.fibre_dims)
                if (dim < 2)
                    throw Unsupported("wedge summands must be double suspensions "
                                      "(dimension >= 2)");
            for (const auto& e : desc.wedge_braces) {
                Verdict v = Verdict::fails("{iota_" + std::to_string(e.base_dim) +
                                           ", iota_" + std::to_string(e.fibre_dim) +
                                           "}_s = " + e.witness + " != 0");
                v.citations.push_back(ht.fact("wedge-brace-definitive").citation);
                return v;
            }
            Verdict v = Verdict::holds();
            v.certificate.push_back("all pairwise braces of the wedge summands vanish");
            v.certificate.push_back(
                "for wedges of double suspensions the pairwise braces of the "
                "inclusions decide the splitting outright");
            v.citations.push_back(ht.fact("wedge-brace-definitive").citation);
            return v;
        }
        case FibrationDescriptor::Kind::FreeLoop:
            return free_loop_verdict(ht, desc);
        case FibrationDescriptor::Kind::SurfaceSphereBundle:
            return surface_bundle_report(ht, desc.genus, desc.sphere_n, desc.w2_nonzero)
                .james;
        case FibrationDescriptor::Kind::ProductPullback: {
            for (int dim : desc.base_dims)
                if (dim < 1) throw Unsupported("base factors must be spheres of dim >= 1");
            Verdict v = Verdict::holds();
            v.certificate.push_back(
                "the classifying composite is null, so f_* = 0 on homotopy");
            v.certificate.push_back(
                "{f_* alpha, beta}_s = {0, beta}_s = 0 for every alpha, beta");
            v.citations.push_back(ht.fact("product-pullback-vanishing").citation);
            return v;
        }
        case FibrationDescriptor::Kind::SphereOverLieGroup: {
            ht.lie_group_rational_degrees(desc.lie_group);  // MissingEntry if unknown
            Verdict v = Verdict::unknown();
            v.certificate.push_back(
                "integral braces over a Lie group base are not tabulated; see the "
                "rational verdict");
            v.citations.push_back(ht.fact("lie-base-rational-splitting").citation);
            return v;
        }
        case FibrationDescriptor::Kind::HomogeneousPrincipal: {
            if (desc.lie_group != "SU(3)" || desc.homog_fibre != 3 || desc.homog_base != 5)
                throw Unsupported("homogeneous verdicts are recorded for "
                                  "SU(2) -> SU(3) -> S^5 only");
            FGAbGroup su3 = ht.group_lookup(SpaceRef::lie_group("SU(3)"), 4);
            FGAbGroup s3 = ht.group_lookup(SpaceRef::sphere(3), 4);
            Verdict v = Verdict::fails(
                "pi_4(SU(3)) = " + su3.to_string() +
                ", but a splitting would force pi_4(S^3 x S^5) = " + s3.to_string());
            v.citations.push_back(ht.fact("su3-no-section").citation);
            return v;
        }
        case FibrationDescriptor::Kind::Presented: {
            if (!desc.presented) throw Unsupported("descriptor carries no presentation");
            return presented_verdict(*desc.presented, ht, degree_cap);
        }
    }
    throw Unsupported("unknown descriptor kind");
}

Verdict rational_verdicts(const HomotopyTable& ht, const ClutchingTable& ct,
                          const FibrationDescriptor& desc, int degree_cap) {
    (void)degree_cap;  // the rational criteria below are degree-complete
    switch (desc.kind) {
        case FibrationDescriptor::Kind::SphereOverSphere:
        case FibrationDescriptor::Kind::Clutched: {
            if (!desc.clutching) throw Unsupported("descriptor carries no clutching class");
            return rational_split_certificate(ct, *desc.clutching);
        }
        case FibrationDescriptor::Kind::SphereOverLieGroup: {
            int n = desc.sphere_n;
            if (n < 2) throw Unsupported("fibre sphere must have dimension >= 2");
            std::vector<int> degs = ht.lie_group_rational_degrees(desc.lie_group);
            Verdict v = Verdict::holds();
            std::string product;
            for (size_t i = 0; i < degs.size(); ++i)
                product += (i ? " x " : "") + sphere_str(degs[i]);
            v.certificate.push_back(desc.lie_group + " ~_Q " + product +
                                    ": rational homotopy in odd degrees only");
            for (int k : degs) {
                int target = k + n - 1;
                if (rational_pi_sphere(n, target) != 0)
                    throw AuditFailure("rational sphere homotopy expected to vanish in "
                                       "degree " + std::to_string(target));
                v.certificate.push_back("{x_" + std::to_string(k) + ", Id}_s lands in " +
                                        pi_str(target, sphere_str(n)) +
                                        " tensor Q = 0");
            }
            v.certificate.push_back(
                "all rational braces vanish, and pairwise vanishing over a product "
                "of odd rational spheres splits the fibration rationally");
            v.citations.push_back(ht.fact("lie-base-rational-splitting").citation);
            for (const auto& row : ht.lie_groups())
                if (row.name == desc.lie_group) add_unique(v.citations, row.citation);
            return v;
        }
        case FibrationDescriptor::Kind::HomogeneousPrincipal: {
            if (desc.lie_group != "SU(3)" || desc.homog_fibre != 3 || desc.homog_base != 5)
                throw Unsupported("homogeneous verdicts are recorded for "
                                  "SU(2) -> SU(3) -> S^5 only");
            FGAbGroup su3 = ht.group_lookup(SpaceRef::lie_group("SU(3)"), 4);
            FGAbGroup s3 = ht.group_lookup(SpaceRef::sphere(3), 4);
            Verdict v = Verdict::holds();
            v.certificate.push_back(
                "SU(3) ~_Q S^3 x S^5: both have rational homotopy Q in degrees 3 and 5");
            v.certificate.push_back("pi_4(SU(3)) = " + su3.to_string() +
                                    " but pi_4(S^3 x S^5) = " + s3.to_string());
            v.certificate.push_back(
                "the rational equivalence admits no integral section: rational "
                "splitting does not imply a section or brace vanishing");
            v.caveats.push_back(caveat_converse_fails);
            v.citations.push_back(ht.fact("su3-no-section").citation);
            v.citations.push_back(ht.fact("lie-base-rational-splitting").citation);
            return v;
        }
        case FibrationDescriptor::Kind::WedgeOverWedge: {
            if (desc.wedge_braces.empty()) {
                Verdict v = Verdict::holds();
                v.certificate.push_back(
                    "all pairwise braces vanish integrally, hence rationally");
                v.citations.push_back(ht.fact("wedge-brace-definitive").citation);
                return v;
            }
            Verdict v = Verdict::unknown();
            v.certificate.push_back(
                "a nonzero integral brace is recorded; its rational class is not "
                "tabulated");
            v.citations.push_back(ht.fact("wedge-brace-definitive").citation);
            return v;
        }
        case FibrationDescriptor::Kind::ProductPullback: {
            Verdict v = Verdict::holds();
            v.certificate.push_back(
                "the pullback splits integrally (null composite), hence rationally");
            v.citations.push_back(ht.fact("product-pullback-vanishing").citation);
            return v;
        }
        case FibrationDescriptor::Kind::SurfaceSphereBundle:
            throw Unsupported(
                "rational splitting criteria here need a simply connected base");
        case FibrationDescriptor::Kind::FreeLoop:
        case FibrationDescriptor::Kind::Presented:
            throw Unsupported("no rational verdict is tabulated for kind '" +
                              desc.kind_name() + "'");
    }
    throw Unsupported("unknown descriptor kind");
}

SurfaceBundleReport surface_bundle_report(const HomotopyTable& ht, int genus, int n,
                                          bool w2_nonzero) {
    if (genus < 1 || n < 2)
        throw Unsupported("surface bundle reports need genus >= 1 and fibre "
                          "dimension >= 2");
    SurfaceBundleReport r;
    r.genus = genus;
    r.n = n;
    r.w2_nonzero = w2_nonzero;
    r.w_class = "w(T S(zeta)) = 1 + pi^*w_2(zeta)";

    std::string sigma = "Sigma_" + std::to_string(genus);
    r.james = Verdict::holds();
    r.james.certificate.push_back(
        "rank " + std::to_string(n + 1) + " >= 3 kills the Euler class over " + sigma +
        ", so the sphere bundle has a section");
    r.james.certificate.push_back("pi_j(" + sigma + ") = 0 for j >= 2 (genus >= 1), and "
                                  "the bundle restricted to the 1-skeleton is trivial");
    r.james.certificate.push_back("every James brace {alpha, beta}_s vanishes");
    r.james.caveats.push_back(caveat_generalized_brace_not_implied);
    r.james.citations.push_back(ht.fact("surface-1-skeleton-pullback").citation);

    if (w2_nonzero) {
        r.product = Verdict::fails("pi^*w_2(zeta) != 0 in H^2(S(zeta); Z/2)");
        r.product.certificate.push_back(
            "pi^* is injective on H^2(" + sigma + "; Z/2): the fibre " + sphere_str(n) +
            " has no cohomology below degree " + std::to_string(n));
        r.product.certificate.push_back(
            "S(zeta) = " + sphere_str(n) + " x " + sigma +
            " would force pi^*w_2(zeta) = 0");
    } else {
        r.product = Verdict::holds();
        r.product.certificate.push_back(
            "w_2(zeta) = 0: an orientable rank " + std::to_string(n + 1) +
            " bundle over " + sigma + " is trivial, so S(zeta) = " + sphere_str(n) +
            " x " + sigma);
    }
    r.product.citations.push_back(ht.fact("surface-bundle-w2").citation);

    r.citations.push_back(ht.fact("surface-1-skeleton-pullback").citation);
    r.citations.push_back(ht.fact("surface-bundle-w2").citation);
    return r;
}

}  // namespace bracecalc
