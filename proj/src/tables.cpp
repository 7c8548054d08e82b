#include "bracecalc/tables.hpp"

#include <cctype>

#include <json.hpp>

#include "bracecalc/errors.hpp"
#include "builtin_htpy.hpp"

namespace bracecalc {

using nlohmann::json;

// ---------------------------------------------------------------------------
// SpaceRef

SpaceRef SpaceRef::sphere(int n) {
    SpaceRef s;
    s.kind = SpaceKind::Sphere;
    s.n = n;
    return s;
}
SpaceRef SpaceRef::so(int n) {
    SpaceRef s;
    s.kind = SpaceKind::SO;
    s.n = n;
    return s;
}
SpaceRef SpaceRef::lie_group(std::string name) {
    SpaceRef s;
    s.kind = SpaceKind::LieGroup;
    s.name = std::move(name);
    return s;
}
SpaceRef SpaceRef::custom(std::string name) {
    SpaceRef s;
    s.kind = SpaceKind::Custom;
    s.name = std::move(name);
    return s;
}

std::string SpaceRef::to_string() const {
    switch (kind) {
        case SpaceKind::Sphere: return "S^" + std::to_string(n);
        case SpaceKind::SO: return "SO(" + std::to_string(n) + ")";
        case SpaceKind::LieGroup: return name;
        case SpaceKind::Custom: return name;
    }
    return "?";
}

// ---------------------------------------------------------------------------
// ingestion helpers

namespace {

SpaceRef parse_space_json(const json& j) {
    if (!j.is_object() || !j.contains("kind"))
        throw SchemaError("space must be an object with a 'kind'");
    std::string kind = j.at("kind").get<std::string>();
    if (kind == "sphere" || kind == "so") {
        if (!j.contains("param") || !j.at("param").is_number_integer())
            throw SchemaError("space kind '" + kind + "' needs an integer 'param'");
        int n = j.at("param").get<int>();
        if (n < 1) throw SchemaError("space parameter must be >= 1");
        return kind == "sphere" ? SpaceRef::sphere(n) : SpaceRef::so(n);
    }
    if (kind == "lie_group" || kind == "custom") {
        if (!j.contains("param") || !j.at("param").is_string())
            throw SchemaError("space kind '" + kind + "' needs a string 'param'");
        std::string name = j.at("param").get<std::string>();
        if (name.empty()) throw SchemaError("space name must be non-empty");
        return kind == "lie_group" ? SpaceRef::lie_group(name) : SpaceRef::custom(name);
    }
    throw SchemaError("unknown space kind '" + kind + "'");
}

std::vector<long long> parse_int_list(const json& j, const char* what) {
    if (!j.is_array()) throw SchemaError(std::string(what) + " must be an array");
    std::vector<long long> out;
    for (const auto& v : j) {
        if (!v.is_number_integer()) throw SchemaError(std::string(what) + " must hold integers");
        out.push_back(v.get<long long>());
    }
    return out;
}

std::string torsion_to_text(const std::vector<long long>& t) {
    std::string s = "[";
    for (size_t i = 0; i < t.size(); ++i) s += (i ? "," : "") + std::to_string(t[i]);
    return s + "]";
}

GroupElement parse_element(const json& j, const FGAbGroup& g, const std::string& where) {
    std::vector<long long> fc(g.free_rank, 0), tc(g.torsion.size(), 0);
    if (j.contains("free")) fc = parse_int_list(j.at("free"), "free coordinates");
    if (j.contains("torsion")) tc = parse_int_list(j.at("torsion"), "torsion coordinates");
    if (static_cast<int>(fc.size()) != g.free_rank || tc.size() != g.torsion.size())
        throw SchemaError(where + ": coordinates do not match group " + g.to_string());
    return GroupElement::make(g, std::move(fc), std::move(tc));
}

} // namespace

// ---------------------------------------------------------------------------
// HomotopyTable

HomotopyTable HomotopyTable::ingest(const std::string& json_text, IngestReport* report) {
    json doc;
    try {
        doc = json::parse(json_text);
    } catch (const json::exception& e) {
        throw SchemaError(std::string("table document is not valid JSON: ") + e.what());
    }
    if (!doc.is_object() || doc.value("schema", "") != "htpy-table/1")
        throw SchemaError("expected a document with \"schema\": \"htpy-table/1\"");
    if (!doc.contains("entries") || !doc.at("entries").is_array())
        throw SchemaError("table document needs an 'entries' array");

    HomotopyTable t;
    IngestReport local;
    IngestReport& rep = report ? *report : local;

    for (const auto& je : doc.at("entries")) {
        TableEntry e;
        e.space = parse_space_json(je.at("space"));
        if (!je.contains("degree") || !je.at("degree").is_number_integer())
            throw SchemaError("entry for " + e.space.to_string() + " needs an integer degree");
        e.degree = je.at("degree").get<int>();
        if (e.degree < 0) throw SchemaError("degree must be >= 0");
        std::string key = e.space.to_string() + " degree " + std::to_string(e.degree);

        if (je.contains("relations")) {
            if (je.contains("rank") || je.contains("torsion"))
                throw SchemaError(key + ": give either rank/torsion or relations, not both");
            const auto& jr = je.at("relations");
            int gens = jr.at("generators").get<int>();
            IntMat rows;
            for (const auto& rr : jr.at("rows")) rows.push_back(parse_int_list(rr, "relation row"));
            e.group = FGAbGroup::from_relations(gens, rows);
            rep.warnings.push_back(key + ": presented by relations; normalized to " +
                                   e.group.to_string());
        } else {
            if (!je.contains("rank") || !je.contains("torsion"))
                throw SchemaError(key + ": needs rank and torsion (or a relations matrix)");
            auto torsion = parse_int_list(je.at("torsion"), "torsion");
            bool changed = false;
            e.group = FGAbGroup::make(je.at("rank").get<int>(), torsion, &changed);
            if (changed)
                rep.warnings.push_back(key + ": torsion " + torsion_to_text(torsion) +
                                       " normalized to divisor chain " +
                                       torsion_to_text(e.group.torsion));
        }

        if (je.contains("labels")) {
            const auto& jl = je.at("labels");
            if (jl.contains("free"))
                for (const auto& s : jl.at("free")) e.group.free_labels.push_back(s.get<std::string>());
            if (jl.contains("torsion"))
                for (const auto& s : jl.at("torsion"))
                    e.group.torsion_labels.push_back(s.get<std::string>());
            if ((!e.group.free_labels.empty() &&
                 static_cast<int>(e.group.free_labels.size()) != e.group.free_rank) ||
                (!e.group.torsion_labels.empty() &&
                 e.group.torsion_labels.size() != e.group.torsion.size()))
                throw SchemaError(key + ": label lists do not match the group shape");
        }

        e.citation = je.value("citation", "");
        if (e.citation.empty()) throw SchemaError(key + ": citation must be non-empty");
        e.provenance = je.value("provenance", "");
        if (e.provenance != "paper" && e.provenance != "literature")
            throw SchemaError(key + ": provenance must be 'paper' or 'literature'");
        if (e.provenance == "paper") rep.paper_pinned.push_back(key);

        for (const auto& prev : t.entries_)
            if (prev.space == e.space && prev.degree == e.degree)
                throw SchemaError("duplicate entry for " + key);
        t.entries_.push_back(std::move(e));
        ++rep.entry_count;
    }

    if (doc.contains("lie_groups")) {
        for (const auto& jg : doc.at("lie_groups")) {
            LieGroupRow row;
            row.name = jg.at("name").get<std::string>();
            for (const auto& d : jg.at("odd_sphere_degrees")) {
                int deg = d.get<int>();
                if (deg < 3 || deg % 2 == 0)
                    throw SchemaError("lie group " + row.name +
                                      ": rational sphere degrees must be odd and >= 3");
                row.degrees.push_back(deg);
            }
            row.citation = jg.value("citation", "");
            if (row.citation.empty())
                throw SchemaError("lie group " + row.name + ": citation must be non-empty");
            for (const auto& prev : t.lie_groups_)
                if (prev.name == row.name)
                    throw SchemaError("duplicate lie group row for " + row.name);
            t.lie_groups_.push_back(std::move(row));
        }
    }

    if (doc.contains("whitehead_products")) {
        for (const auto& jp : doc.at("whitehead_products")) {
            WhiteheadProductRow row;
            row.n = jp.at("n").get<int>();
            row.left_degree = jp.at("left_degree").get<int>();
            row.right_degree = jp.at("right_degree").get<int>();
            int target = row.left_degree + row.right_degree - 1;
            FGAbGroup g = t.group_lookup(SpaceRef::sphere(row.n), target);
            row.value = parse_element(jp, g, "whitehead product on S^" + std::to_string(row.n));
            row.citation = jp.value("citation", "");
            if (row.citation.empty())
                throw SchemaError("whitehead product rows need citations");
            t.products_.push_back(std::move(row));
        }
    }

    if (doc.contains("whitehead_squares")) {
        for (const auto& jp : doc.at("whitehead_squares")) {
            WhiteheadSquareRow row;
            row.n = jp.at("n").get<int>();
            FGAbGroup g = t.group_lookup(SpaceRef::sphere(row.n), 2 * row.n - 1);
            row.value = parse_element(jp, g, "whitehead square of S^" + std::to_string(row.n));
            row.citation = jp.value("citation", "");
            if (row.citation.empty()) throw SchemaError("whitehead square rows need citations");
            t.squares_.push_back(std::move(row));
        }
    }

    if (doc.contains("facts")) {
        for (const auto& jf : doc.at("facts")) {
            TableFact f;
            f.id = jf.at("id").get<std::string>();
            f.statement = jf.at("statement").get<std::string>();
            f.citation = jf.value("citation", "");
            if (f.id.empty() || f.statement.empty() || f.citation.empty())
                throw SchemaError("facts need id, statement and citation");
            t.facts_.push_back(std::move(f));
        }
    }

    return t;
}

const HomotopyTable& HomotopyTable::builtin() {
    static const HomotopyTable t = ingest(builtin_htpy_json);
    return t;
}

const char* HomotopyTable::builtin_json() { return builtin_htpy_json; }

bool HomotopyTable::has_entry(const SpaceRef& s, int degree) const {
    for (const auto& e : entries_)
        if (e.space == s && e.degree == degree) return true;
    return false;
}

const TableEntry& HomotopyTable::entry(const SpaceRef& s, int degree) const {
    for (const auto& e : entries_)
        if (e.space == s && e.degree == degree) return e;
    throw MissingEntry("no table entry for pi_" + std::to_string(degree) + "(" +
                       s.to_string() + ")");
}

FGAbGroup HomotopyTable::group_lookup(const SpaceRef& s, int degree) const {
    return entry(s, degree).group;
}

std::vector<int> HomotopyTable::lie_group_rational_degrees(const std::string& name) const {
    for (const auto& row : lie_groups_)
        if (row.name == name) return row.degrees;
    throw MissingEntry("no rational sphere-product data for Lie group '" + name + "'");
}

std::optional<WhiteheadProductRow> HomotopyTable::whitehead_product(int n, int left_degree,
                                                                    int right_degree) const {
    for (const auto& row : products_) {
        if (row.n != n) continue;
        if (row.left_degree == left_degree && row.right_degree == right_degree) return row;
    }
    return std::nullopt;
}

const WhiteheadSquareRow& HomotopyTable::whitehead_square(int n) const {
    for (const auto& row : squares_)
        if (row.n == n) return row;
    throw MissingEntry("no Whitehead square entry for S^" + std::to_string(n));
}

const TableFact& HomotopyTable::fact(const std::string& id) const {
    for (const auto& f : facts_)
        if (f.id == id) return f;
    throw MissingEntry("no table fact with id '" + id + "'");
}

SpaceRef HomotopyTable::parse_space(const std::string& text) const {
    auto digits = [](const std::string& s) {
        if (s.empty()) return false;
        for (char c : s)
            if (!std::isdigit(static_cast<unsigned char>(c))) return false;
        return true;
    };
    if (text.size() >= 2 && text[0] == 'S') {
        std::string rest = text.substr(1);
        if (!rest.empty() && rest[0] == '^') rest = rest.substr(1);
        if (text.rfind("SO", 0) == 0) {
            std::string arg = text.substr(2);
            if (!arg.empty() && arg.front() == '(' && arg.back() == ')')
                arg = arg.substr(1, arg.size() - 2);
            if (digits(arg)) return SpaceRef::so(std::stoi(arg));
        }
        if (digits(rest)) return SpaceRef::sphere(std::stoi(rest));
    }
    for (const auto& row : lie_groups_)
        if (row.name == text) return SpaceRef::lie_group(text);
    for (const auto& e : entries_)
        if (e.space.kind == SpaceKind::LieGroup && e.space.name == text)
            return SpaceRef::lie_group(text);
    return SpaceRef::custom(text);
}

int rational_pi_sphere(int n, int k) {
    if (n < 2 || k < 1)
        throw Unsupported("rational_pi_sphere expects n >= 2 and k >= 1");
    if (k == n) return 1;
    if (n % 2 == 0 && k == 2 * n - 1) return 1;
    return 0;
}

} // namespace bracecalc
