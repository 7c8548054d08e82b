#pragma once

#include <optional>
#include <string>
#include <vector>

#include "bracecalc/abelian.hpp"

namespace bracecalc {

enum class SpaceKind { Sphere, SO, LieGroup, Custom };

struct SpaceRef {
    SpaceKind kind = SpaceKind::Custom;
    int n = 0;        // sphere dimension / SO(n)
    std::string name; // lie_group / custom

    static SpaceRef sphere(int n);
    static SpaceRef so(int n);
    static SpaceRef lie_group(std::string name);
    static SpaceRef custom(std::string name);

    std::string to_string() const; // "S^3", "SO(13)", "SU(3)", ...
    bool operator==(const SpaceRef& o) const {
        return kind == o.kind && n == o.n && name == o.name;
    }
    bool operator<(const SpaceRef& o) const {
        if (kind != o.kind) return kind < o.kind;
        if (n != o.n) return n < o.n;
        return name < o.name;
    }
};

struct TableEntry {
    SpaceRef space;
    int degree = 0;
    FGAbGroup group;
    std::string citation;   // non-empty
    std::string provenance; // "paper" (pinned by the worked examples) or "literature"
};

struct LieGroupRow {
    std::string name;
    std::vector<int> degrees; // odd sphere dimensions of the rational product
    std::string citation;
};

// Curated Whitehead product [x, y] for x in pi_l(S^n), y in pi_r(S^n),
// recorded on the generators; the value lives in pi_{l+r-1}(S^n).
struct WhiteheadProductRow {
    int n = 0;
    int left_degree = 0;
    int right_degree = 0;
    GroupElement value;
    std::string citation;
};

// Whitehead square [i_n, i_n] in pi_{2n-1}(S^n).
struct WhiteheadSquareRow {
    int n = 0;
    GroupElement value;
    std::string citation;
};

// A named background fact cited by verdicts (kept in the data file so the
// calculus and its justifications travel together).
struct TableFact {
    std::string id;
    std::string statement;
    std::string citation;
};

struct IngestReport {
    int entry_count = 0;
    std::vector<std::string> warnings;     // normalizations applied
    std::vector<std::string> paper_pinned; // entries tagged provenance=paper
};

// Homotopy-group table (schema htpy-table/1).  Lookups never invent values:
// anything absent raises MissingEntry naming the requested space and degree.
class HomotopyTable {
public:
    static HomotopyTable ingest(const std::string& json_text, IngestReport* report = nullptr);
    // Table embedded at build time from data/htpy_tables.json, and its raw
    // JSON text (the CLI re-ingests it when the table file is overridden).
    static const HomotopyTable& builtin();
    static const char* builtin_json();

    bool has_entry(const SpaceRef& s, int degree) const;
    const TableEntry& entry(const SpaceRef& s, int degree) const;
    FGAbGroup group_lookup(const SpaceRef& s, int degree) const;
    const std::vector<TableEntry>& entries() const { return entries_; }

    const std::vector<LieGroupRow>& lie_groups() const { return lie_groups_; }
    std::vector<int> lie_group_rational_degrees(const std::string& name) const;

    std::optional<WhiteheadProductRow> whitehead_product(int n, int left_degree,
                                                         int right_degree) const;
    const WhiteheadSquareRow& whitehead_square(int n) const; // MissingEntry
    const TableFact& fact(const std::string& id) const;      // MissingEntry

    // Space reference from CLI-style text: "S3"/"S^3", "SO13"/"SO(13)",
    // otherwise a Lie-group name if the table knows it, else custom.
    SpaceRef parse_space(const std::string& text) const;

private:
    std::vector<TableEntry> entries_;
    std::vector<LieGroupRow> lie_groups_;
    std::vector<WhiteheadProductRow> products_;
    std::vector<WhiteheadSquareRow> squares_;
    std::vector<TableFact> facts_;
};

// Rank of pi_k(S^n) tensor Q for n >= 2: one for k = n, one for k = 2n-1
// when n is even, zero otherwise.  Throws Unsupported for n < 2 or k < 1.
int rational_pi_sphere(int n, int k);

} // namespace bracecalc
