#include "bracecalc/jterms.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>
#include <tuple>

#include "bracecalc/errors.hpp"

namespace bracecalc {

JNode JNode::zero() {
    JNode n;
    n.kind = Kind::Zero;
    return n;
}

JNode JNode::atom(JAtom::Kind kind, std::string name) {
    JNode n;
    n.kind = Kind::Atom;
    n.leaf = JAtom{kind, std::move(name)};
    return n;
}

JNode JNode::j(JNode arg) {
    JNode n;
    n.kind = Kind::J;
    n.children.push_back(std::move(arg));
    return n;
}

JNode JNode::push(std::string map, JNode arg) {
    JNode n;
    n.kind = Kind::Push;
    n.map_name = std::move(map);
    n.children.push_back(std::move(arg));
    return n;
}

JNode JNode::scale(long long c, JNode arg) {
    JNode n;
    n.kind = Kind::Scale;
    n.coeff = c;
    n.children.push_back(std::move(arg));
    return n;
}

JNode JNode::sum(std::vector<JNode> terms) {
    JNode n;
    n.kind = Kind::Sum;
    n.children = std::move(terms);
    return n;
}

JNode JNode::compose(std::string map, JNode arg) {
    JNode n;
    n.kind = Kind::Compose;
    n.map_name = std::move(map);
    n.children.push_back(std::move(arg));
    return n;
}

bool operator==(const JTerm& a, const JTerm& b) {
    return a.coeff == b.coeff && a.pushforwards == b.pushforwards && a.atom == b.atom;
}

bool operator==(const JNormalForm& a, const JNormalForm& b) {
    if (a.size() != b.size()) return false;
    for (size_t i = 0; i < a.size(); ++i)
        if (!(a[i] == b[i])) return false;
    return true;
}

namespace {

// Rule identifiers for the small-step engine.
enum Rule {
    rule_j_sum = 1,       // J(Sum ...)        -> Sum(J ...)
    rule_j_scale = 2,     // J(Scale c x)      -> Scale c (J x)
    rule_j_compose = 3,   // J(Compose phi x)  -> Push phi (J x)
    rule_j_vanish = 4,    // J(eps)/J(const)   -> 0
    rule_push_sum = 5,    // Push phi (Sum ..) -> Sum(Push phi ..)
    rule_push_scale = 6,  // Push phi (Scale)  -> Scale (Push phi ..)
    rule_push_zero = 7,   // Push phi 0        -> 0
    rule_scale_zero = 8,  // Scale c 0 / Scale 0 x -> 0
    rule_scale_scale = 9, // Scale c (Scale d) -> Scale cd
    rule_scale_sum = 10,  // Scale c (Sum ..)  -> Sum(Scale c ..)
    rule_sum_flatten = 11 // Sum with Sum/Zero children, or trivial Sum
};

bool atom_vanishes(const JAtom& a, bool base_is_suspension) {
    if (a.kind == JAtom::Kind::ConstMap) return true;  // J of the zero class
    if (a.kind == JAtom::Kind::Epsilon) return base_is_suspension;
    return false;
}

// Rules applicable at the root of `n` (position only, not descendants).
void local_rules(const JNode& n, bool susp, std::vector<int>& out) {
    using K = JNode::Kind;
    switch (n.kind) {
    case K::J: {
        const JNode& c = n.children[0];
        if (c.kind == K::Sum) out.push_back(rule_j_sum);
        if (c.kind == K::Scale) out.push_back(rule_j_scale);
        if (c.kind == K::Compose) out.push_back(rule_j_compose);
        if (c.kind == K::Atom && atom_vanishes(c.leaf, susp)) out.push_back(rule_j_vanish);
        if (c.kind == K::Zero) out.push_back(rule_j_vanish);
        break;
    }
    case K::Push: {
        const JNode& c = n.children[0];
        if (c.kind == K::Sum) out.push_back(rule_push_sum);
        if (c.kind == K::Scale) out.push_back(rule_push_scale);
        if (c.kind == K::Zero) out.push_back(rule_push_zero);
        break;
    }
    case K::Scale: {
        const JNode& c = n.children[0];
        if (n.coeff == 0 || c.kind == K::Zero) out.push_back(rule_scale_zero);
        else if (c.kind == K::Scale) out.push_back(rule_scale_scale);
        else if (c.kind == K::Sum) out.push_back(rule_scale_sum);
        break;
    }
    case K::Sum: {
        if (n.children.size() <= 1) { out.push_back(rule_sum_flatten); break; }
        for (const JNode& c : n.children)
            if (c.kind == K::Sum || c.kind == K::Zero) { out.push_back(rule_sum_flatten); break; }
        break;
    }
    default:
        break;
    }
}

JNode apply_local(const JNode& n, int rule) {
    using K = JNode::Kind;
    switch (rule) {
    case rule_j_sum: {
        std::vector<JNode> parts;
        for (const JNode& c : n.children[0].children) parts.push_back(JNode::j(c));
        return JNode::sum(std::move(parts));
    }
    case rule_j_scale:
        return JNode::scale(n.children[0].coeff, JNode::j(n.children[0].children[0]));
    case rule_j_compose:
        return JNode::push(n.children[0].map_name, JNode::j(n.children[0].children[0]));
    case rule_j_vanish:
        return JNode::zero();
    case rule_push_sum: {
        std::vector<JNode> parts;
        for (const JNode& c : n.children[0].children)
            parts.push_back(JNode::push(n.map_name, c));
        return JNode::sum(std::move(parts));
    }
    case rule_push_scale:
        return JNode::scale(n.children[0].coeff,
                            JNode::push(n.map_name, n.children[0].children[0]));
    case rule_push_zero:
    case rule_scale_zero:
        return JNode::zero();
    case rule_scale_scale:
        return JNode::scale(n.coeff * n.children[0].coeff, n.children[0].children[0]);
    case rule_scale_sum: {
        std::vector<JNode> parts;
        for (const JNode& c : n.children[0].children)
            parts.push_back(JNode::scale(n.coeff, c));
        return JNode::sum(std::move(parts));
    }
    case rule_sum_flatten: {
        if (n.children.empty()) return JNode::zero();
        std::vector<JNode> parts;
        for (const JNode& c : n.children) {
            if (c.kind == K::Zero) continue;
            if (c.kind == K::Sum)
                parts.insert(parts.end(), c.children.begin(), c.children.end());
            else
                parts.push_back(c);
        }
        if (parts.empty()) return JNode::zero();
        if (parts.size() == 1) return parts[0];
        return JNode::sum(std::move(parts));
    }
    default:
        throw SchemaError("unknown J rewrite rule");
    }
}

void collect_redexes(const JNode& n, bool susp, std::vector<int>& path,
                     std::vector<JRedex>& out) {
    std::vector<int> rules;
    local_rules(n, susp, rules);
    for (int r : rules) out.push_back(JRedex{path, r});
    for (size_t i = 0; i < n.children.size(); ++i) {
        path.push_back(static_cast<int>(i));
        collect_redexes(n.children[i], susp, path, out);
        path.pop_back();
    }
}

JNode apply_at(const JNode& n, const std::vector<int>& path, size_t depth, int rule) {
    if (depth == path.size()) return apply_local(n, rule);
    JNode copy = n;
    int idx = path[depth];
    if (idx < 0 || static_cast<size_t>(idx) >= copy.children.size())
        throw SchemaError("J rewrite position out of range");
    copy.children[idx] = apply_at(copy.children[idx], path, depth + 1, rule);
    return copy;
}

// Structural recursion that accumulates terms; used both for the
// deterministic normal form and for reading off a fixpoint tree.
void accumulate(const JNode& n, long long coeff, std::vector<std::string>& pushes,
                bool susp, bool strict, JNormalForm& out) {
    using K = JNode::Kind;
    switch (n.kind) {
    case K::Zero:
        return;
    case K::Sum:
        for (const JNode& c : n.children) accumulate(c, coeff, pushes, susp, strict, out);
        return;
    case K::Scale:
        accumulate(n.children[0], coeff * n.coeff, pushes, susp, strict, out);
        return;
    case K::Push:
        pushes.push_back(n.map_name);
        accumulate(n.children[0], coeff, pushes, susp, strict, out);
        pushes.pop_back();
        return;
    case K::J: {
        const JNode& arg = n.children[0];
        if (arg.kind == K::Atom) {
            if (atom_vanishes(arg.leaf, susp)) return;
            JTerm t;
            t.coeff = coeff;
            t.pushforwards = pushes;
            t.atom = arg.leaf;
            out.push_back(std::move(t));
            return;
        }
        if (strict) throw SchemaError("tree is not in J normal form");
        // recurse through the argument, pulling maps and scalars out of J
        if (arg.kind == K::Zero) return;
        if (arg.kind == K::Sum) {
            for (const JNode& c : arg.children)
                accumulate(JNode::j(c), coeff, pushes, susp, strict, out);
            return;
        }
        if (arg.kind == K::Scale) {
            accumulate(JNode::j(arg.children[0]), coeff * arg.coeff, pushes, susp, strict, out);
            return;
        }
        if (arg.kind == K::Compose) {
            pushes.push_back(arg.map_name);
            accumulate(JNode::j(arg.children[0]), coeff, pushes, susp, strict, out);
            pushes.pop_back();
            return;
        }
        throw SchemaError("J applied to a non-class expression");
    }
    case K::Atom:
    case K::Compose:
        throw SchemaError("class expression outside of J[...]");
    }
}

JNormalForm canonicalize(JNormalForm terms) {
    using Key = std::tuple<std::string, int, std::vector<std::string>>;
    std::map<Key, long long> merged;
    for (const JTerm& t : terms)
        merged[Key{t.atom.name, static_cast<int>(t.atom.kind), t.pushforwards}] += t.coeff;
    JNormalForm out;
    for (const auto& [key, coeff] : merged) {
        if (coeff == 0) continue;
        JTerm t;
        t.coeff = coeff;
        t.atom.name = std::get<0>(key);
        t.atom.kind = static_cast<JAtom::Kind>(std::get<1>(key));
        t.pushforwards = std::get<2>(key);
        out.push_back(std::move(t));
    }
    return out;
}

}  // namespace

JNormalForm j_normal_form(const JNode& expr, bool base_is_suspension) {
    JNormalForm raw;
    std::vector<std::string> pushes;
    accumulate(expr, 1, pushes, base_is_suspension, /*strict=*/false, raw);
    return canonicalize(std::move(raw));
}

std::vector<JRedex> j_redexes(const JNode& expr, bool base_is_suspension) {
    std::vector<JRedex> out;
    std::vector<int> path;
    collect_redexes(expr, base_is_suspension, path, out);
    return out;
}

JNode j_apply_redex(const JNode& expr, const JRedex& r) {
    return apply_at(expr, r.path, 0, r.rule);
}

JNormalForm j_read_normal_form(const JNode& expr) {
    JNormalForm raw;
    std::vector<std::string> pushes;
    // susp flag is irrelevant for a fixpoint tree: vanishing atoms are gone
    accumulate(expr, 1, pushes, /*susp=*/false, /*strict=*/true, raw);
    return canonicalize(std::move(raw));
}

std::string to_string(const JNormalForm& nf) {
    if (nf.empty()) return "0";
    std::string out;
    bool first = true;
    for (const JTerm& t : nf) {
        long long c = t.coeff;
        if (first) {
            if (c < 0) { out += "-"; c = -c; }
        } else {
            out += c < 0 ? " - " : " + ";
            if (c < 0) c = -c;
        }
        first = false;
        if (c != 1) out += std::to_string(c) + " ";
        for (const std::string& p : t.pushforwards) out += p + "_* ";
        out += "J[" + t.atom.name + "]";
    }
    return out;
}

}  // namespace bracecalc
