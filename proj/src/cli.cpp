#include "bracecalc/cli.hpp"

#include <algorithm>
#include <cstdint>
#include <cstdlib>
#include <fstream>
#include <memory>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "bracecalc/clutching.hpp"
#include "bracecalc/errors.hpp"
#include "bracecalc/fibration.hpp"
#include "bracecalc/report.hpp"
#include "bracecalc/tables.hpp"
#include "bracecalc/verify.hpp"

namespace bracecalc {
namespace {

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw SchemaError("cannot read '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

// Tables resolved for one invocation.  The homotopy table comes from
// --table, else $BRACE_TABLE_PATH, else the builtin; the clutching data
// from --so-table or the builtin, but re-resolved against a custom
// homotopy table so its groups stay consistent.  shared_ptr keeps the
// clutching table's back-pointer into the homotopy table valid.
struct LoadedTables {
    std::shared_ptr<const HomotopyTable> ht;
    std::shared_ptr<const ClutchingTable> ct;
    std::string htpy_source = "builtin";
    std::string so_source = "builtin";
};

LoadedTables load_tables(const std::string& table_flag, const std::string& so_flag) {
    LoadedTables t;
    std::string path = table_flag;
    if (path.empty()) {
        const char* env = std::getenv("BRACE_TABLE_PATH");
        if (env && *env) path = env;
    }
    if (path.empty()) {
        t.ht = std::shared_ptr<const HomotopyTable>(std::shared_ptr<const HomotopyTable>(),
                                                    &HomotopyTable::builtin());
    } else {
        t.ht = std::make_shared<const HomotopyTable>(HomotopyTable::ingest(read_file(path)));
        t.htpy_source = path;
    }
    if (so_flag.empty() && path.empty()) {
        t.ct = std::shared_ptr<const ClutchingTable>(std::shared_ptr<const ClutchingTable>(),
                                                     &ClutchingTable::builtin());
    } else {
        const std::string so_json =
            so_flag.empty() ? std::string(ClutchingTable::builtin_json()) : read_file(so_flag);
        t.ct = std::make_shared<const ClutchingTable>(ClutchingTable::ingest(so_json, *t.ht));
        if (!so_flag.empty()) t.so_source = so_flag;
    }
    return t;
}

std::vector<long long> parse_coords(const std::string& text, const std::string& what) {
    std::vector<long long> out;
    std::stringstream ss(text);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        try {
            std::size_t used = 0;
            long long v = std::stoll(tok, &used);
            if (used != tok.size()) throw std::invalid_argument(tok);
            out.push_back(v);
        } catch (const std::exception&) {
            throw SchemaError(what + ": '" + tok + "' is not an integer");
        }
    }
    if (out.empty()) throw SchemaError(what + ": expected comma-separated integers");
    return out;
}

std::vector<int> parse_dims(const std::string& text, const std::string& what) {
    std::vector<int> out;
    for (long long v : parse_coords(text, what)) out.push_back(static_cast<int>(v));
    return out;
}

// Coordinates in the (free generators, then torsion generators) ordering;
// missing trailing coordinates are zero.
GroupElement element_from_coords(const FGAbGroup& g, const std::string& text,
                                 const std::string& what) {
    std::vector<long long> coords = parse_coords(text, what);
    if (static_cast<int>(coords.size()) > g.generator_count())
        throw SchemaError(what + ": " + std::to_string(coords.size()) +
                          " coordinates given, but the group is " + g.to_string());
    coords.resize(static_cast<std::size_t>(g.generator_count()), 0);
    std::vector<long long> fc(coords.begin(), coords.begin() + g.free_rank);
    std::vector<long long> tc(coords.begin() + g.free_rank, coords.end());
    return GroupElement::make(g, std::move(fc), std::move(tc));
}

ClutchingClass clutching_from_flags(const HomotopyTable& ht, int n, int q,
                                    const std::string& rho, const std::string& lift) {
    if (n < 2 || q < 1) throw Unsupported("clutched bundles need --n >= 2 and --q >= 1");
    ClutchingClass c;
    c.n = n;
    c.q = q;
    c.rho = element_from_coords(ht.group_lookup(SpaceRef::so(q + 1), n - 1), rho, "--rho");
    if (!lift.empty())
        c.lift = element_from_coords(ht.group_lookup(SpaceRef::so(q), n - 1), lift, "--lift");
    return c;
}

struct AnalyzeOpts {
    std::string descriptor;
    std::string kind;
    int n = 0;
    int q = 0;
    int m = 1;
    int genus = 1;
    int w2 = 0;
    std::string space = "S2";
    std::string group = "SU(3)";
    int fibre = 3;
    int subgroup_sphere = 3;
    int base_sphere = 5;
    std::string rho = "0";
    std::string lift;
    std::string rho2;
    std::string lift2;
    long long phi = 1;
    std::string base_dims;
    std::string fibre_dims;
    std::string factors;
    int degree_cap = 24;
};

FibrationDescriptor descriptor_from_flags(const HomotopyTable& ht, const AnalyzeOpts& o,
                                          Report& rep) {
    using Kind = FibrationDescriptor::Kind;
    auto num = [](long long v) { return std::to_string(v); };
    FibrationDescriptor d;
    rep.inputs.push_back({"kind", o.kind});
    if (o.kind == "sphere-over-sphere" || o.kind == "clutched") {
        d.kind = o.kind == "clutched" ? Kind::Clutched : Kind::SphereOverSphere;
        d.clutching = clutching_from_flags(ht, o.n, o.q, o.rho, o.lift);
        rep.inputs.push_back({"n", num(o.n)});
        rep.inputs.push_back({"q", num(o.q)});
        rep.inputs.push_back({"rho", d.clutching->rho.to_string()});
        if (d.clutching->lift) rep.inputs.push_back({"lift", d.clutching->lift->to_string()});
    } else if (o.kind == "free-loop") {
        d.kind = Kind::FreeLoop;
        d.loop_m = o.m;
        d.loop_space = ht.parse_space(o.space);
        rep.inputs.push_back({"m", num(o.m)});
        rep.inputs.push_back({"space", d.loop_space.to_string()});
    } else if (o.kind == "surface-bundle") {
        d.kind = Kind::SurfaceSphereBundle;
        d.genus = o.genus;
        d.sphere_n = o.n;
        d.w2_nonzero = o.w2 != 0;
        rep.inputs.push_back({"genus", num(o.genus)});
        rep.inputs.push_back({"n", num(o.n)});
        rep.inputs.push_back({"w2", o.w2 != 0 ? "nonzero" : "zero"});
    } else if (o.kind == "wedge-over-wedge") {
        d.kind = Kind::WedgeOverWedge;
        d.base_dims = parse_dims(o.base_dims, "--base-dims");
        d.fibre_dims = parse_dims(o.fibre_dims, "--fibre-dims");
        rep.inputs.push_back({"base-dims", o.base_dims});
        rep.inputs.push_back({"fibre-dims", o.fibre_dims});
    } else if (o.kind == "product-pullback") {
        d.kind = Kind::ProductPullback;
        d.base_dims = parse_dims(o.factors, "--factors");
        if (!o.fibre_dims.empty()) d.fibre_dims = parse_dims(o.fibre_dims, "--fibre-dims");
        rep.inputs.push_back({"factors", o.factors});
    } else if (o.kind == "lie-group") {
        d.kind = Kind::SphereOverLieGroup;
        d.lie_group = o.group;
        d.sphere_n = o.fibre;
        rep.inputs.push_back({"group", o.group});
        rep.inputs.push_back({"fibre", num(o.fibre)});
    } else if (o.kind == "homogeneous") {
        d.kind = Kind::HomogeneousPrincipal;
        d.lie_group = o.group;
        d.homog_fibre = o.subgroup_sphere;
        d.homog_base = o.base_sphere;
        rep.inputs.push_back({"total", o.group});
        rep.inputs.push_back({"subgroup-sphere", num(o.subgroup_sphere)});
        rep.inputs.push_back({"base-sphere", num(o.base_sphere)});
    } else if (o.kind == "presented") {
        throw Unsupported("kind 'presented' takes its pairing from --descriptor FILE");
    } else if (o.kind.empty()) {
        throw Unsupported("analyze needs --kind or --descriptor");
    } else {
        throw Unsupported("unknown kind '" + o.kind +
                          "' (expected sphere-over-sphere, clutched, wedge-over-wedge, "
                          "free-loop, surface-bundle, product-pullback, lie-group, "
                          "homogeneous, presented, or husemoller)");
    }
    return d;
}

Report do_husemoller(const LoadedTables& tb, const AnalyzeOpts& o) {
    Report rep;
    ClutchingClass c = clutching_from_flags(*tb.ht, o.n, o.q, o.rho, o.lift);
    rep.inputs.push_back({"kind", "husemoller"});
    rep.inputs.push_back({"n", std::to_string(o.n)});
    rep.inputs.push_back({"q", std::to_string(o.q)});
    rep.inputs.push_back({"rho", c.rho.to_string()});
    if (c.lift) rep.inputs.push_back({"lift", c.lift->to_string()});

    HusemollerReport hr = husemoller_report(*tb.ct, c);
    Verdict incl = hr.counterexample
                       ? Verdict::fails("im(J) is not contained in im(Sigma)")
                       : Verdict::holds();
    incl.certificate.push_back(hr.j_description + (hr.j_onto ? "  (onto)" : "  (not onto)"));
    incl.certificate.push_back(hr.sigma_description +
                               (hr.sigma_onto ? "  (onto)" : "  (not onto)"));
    for (const auto& s : hr.notes) incl.certificate.push_back(s);
    incl.citations = hr.citations;
    rep.add_verdict("j-image-in-suspension-image", incl);
    rep.notes.push_back("J[rho] = " + hr.j_rho.to_string() +
                        (hr.j_rho_in_sigma_image ? " is a suspension class"
                                                 : " is not a suspension class"));
    try {
        RectifiedSuspension rs = husemoller_rectified(*tb.ct, c);
        Verdict rect = rs.equal ? Verdict::holds()
                                : Verdict::fails("Sigma(-J xi) = " + rs.suspended.to_string() +
                                                 " != J[rho] = " + rs.j_rho.to_string());
        rect.certificate.push_back("xi = " + rs.xi.to_string() + " stabilizes to rho");
        if (rs.equal)
            rect.certificate.push_back("Sigma(-J xi) = " + rs.suspended.to_string() +
                                       " = J[rho]");
        rect.citations = hr.citations;
        rep.add_verdict("rectified-suspension", rect);
    } catch (const NoLift& e) {
        rep.notes.push_back(e.what());
    }
    return rep;
}

Report do_analyze(const LoadedTables& tb, const AnalyzeOpts& o) {
    if (o.descriptor.empty() && o.kind == "husemoller") return do_husemoller(tb, o);

    Report rep;
    const HomotopyTable& ht = *tb.ht;
    const ClutchingTable& ct = *tb.ct;

    FibrationDescriptor desc;
    if (!o.descriptor.empty()) {
        desc = FibrationDescriptor::parse(read_file(o.descriptor), ht);
        rep.inputs.push_back({"descriptor", o.descriptor});
        rep.inputs.push_back({"kind", desc.kind_name()});
    } else {
        desc = descriptor_from_flags(ht, o, rep);
    }

    rep.add_verdict("h-split", h_split_verdict(ht, ct, desc, o.degree_cap));

    switch (desc.kind) {
        case FibrationDescriptor::Kind::SphereOverSphere:
        case FibrationDescriptor::Kind::Clutched: {
            rep.add_verdict("rational-split", rational_verdicts(ht, ct, desc, o.degree_cap));
            const ClutchingClass& c = *desc.clutching;
            FGAbGroup cls = ht.group_lookup(SpaceRef::so(c.q + 1), c.n - 1);
            std::string count = cls.free_rank > 0 ? std::string("infinitely many")
                                                  : std::to_string(cls.torsion_order());
            rep.notes.push_back("S^" + std::to_string(c.q) + " bundles over S^" +
                                std::to_string(c.n) + " with " + c.structure_group() +
                                " action are classified by pi_" + std::to_string(c.n - 1) +
                                "(" + c.structure_group() + ") = " + cls.to_string() + ": " +
                                count + " classes");
            if (c.lift) {
                CellStructure cs = thom_attaching(ct, c);
                rep.notes.push_back(cs.thom_space);
                rep.notes.push_back(cs.total_space);
                rep.cite(cs.citations);
            }
            if (!o.rho2.empty()) {
                ClutchingClass c2 = clutching_from_flags(ht, c.n, c.q, o.rho2, o.lift2);
                rep.inputs.push_back({"rho2", c2.rho.to_string()});
                if (o.phi != 1) rep.inputs.push_back({"phi", std::to_string(o.phi)});
                rep.add_verdict("fibre-equivalence", fibre_equiv_decision(ct, c, c2, o.phi));
            }
            break;
        }
        case FibrationDescriptor::Kind::SurfaceSphereBundle: {
            SurfaceBundleReport sb =
                surface_bundle_report(ht, desc.genus, desc.sphere_n, desc.w2_nonzero);
            rep.add_verdict("product-structure", sb.product);
            rep.notes.push_back(sb.w_class);
            rep.cite(sb.citations);
            break;
        }
        case FibrationDescriptor::Kind::FreeLoop:
        case FibrationDescriptor::Kind::Presented:
            break;  // no rational verdict is tabulated for these kinds
        default:
            rep.add_verdict("rational-split", rational_verdicts(ht, ct, desc, o.degree_cap));
            break;
    }
    return rep;
}

Report do_verify(const LoadedTables& tb, const std::string& suite, int trials, int cap,
                 std::uint64_t seed) {
    Report rep;
    SuiteResult r = run_suite(suite, trials, cap, seed, *tb.ct);
    rep.inputs.push_back({"suite", r.suite});
    rep.inputs.push_back({"trials", std::to_string(trials)});
    rep.inputs.push_back(
        {"degree-cap", cap > 0 ? std::to_string(cap) : std::string("suite default")});
    rep.inputs.push_back({"seed", std::to_string(seed)});

    std::vector<std::string> wit = r.witnesses;
    std::sort(wit.begin(), wit.end());
    Verdict v = r.ok() ? Verdict::holds()
                       : Verdict::fails(wit.empty() ? "failures recorded without witness"
                                                    : wit.front());
    v.certificate.push_back(std::to_string(r.passes) + "/" + std::to_string(r.trials) +
                            " checks passed");
    if (r.mutations_total > 0)
        v.certificate.push_back(std::to_string(r.mutations_detected) + "/" +
                                std::to_string(r.mutations_total) +
                                " planted inconsistencies detected");
    for (std::size_t i = 1; i < wit.size(); ++i) v.certificate.push_back(wit[i]);
    if (r.suite == "jacobi") {
        v.citations.push_back(tb.ht->fact("samelson-jacobi").citation);
    } else if (r.suite == "derivation" || r.suite == "lie-map") {
        v.citations.push_back(tb.ht->fact("brace-derivation-rules").citation);
    } else if (r.suite == "j-rules") {
        v.citations.push_back(tb.ht->fact("j-hom-rules").citation);
    } else {
        for (const auto& s : tb.ct->exact_sequences())
            if (std::find(v.citations.begin(), v.citations.end(), s.citation) ==
                v.citations.end())
                v.citations.push_back(s.citation);
    }
    rep.add_verdict(r.suite, v);
    return rep;
}

Report do_tables_show(const LoadedTables& tb, const std::string& space, int degree) {
    Report rep;
    rep.inputs.push_back({"table", tb.htpy_source});
    if (!space.empty()) rep.inputs.push_back({"space", space});
    if (degree >= 0) rep.inputs.push_back({"degree", std::to_string(degree)});

    std::optional<SpaceRef> want;
    if (!space.empty()) want = tb.ht->parse_space(space);

    std::vector<TableEntry> rows = tb.ht->entries();
    std::sort(rows.begin(), rows.end(), [](const TableEntry& a, const TableEntry& b) {
        if (!(a.space == b.space)) return a.space < b.space;
        return a.degree < b.degree;
    });
    int shown = 0;
    for (const auto& e : rows) {
        if (want && !(e.space == *want)) continue;
        if (degree >= 0 && e.degree != degree) continue;
        rep.notes.push_back("pi_" + std::to_string(e.degree) + "(" + e.space.to_string() +
                            ") = " + e.group.to_string() + "  [" + e.citation + "]");
        rep.cite({e.citation});
        ++shown;
    }
    if (shown == 0)
        throw MissingEntry("no table entry matches the requested space/degree");
    if (!want && degree < 0) {
        for (const auto& lg : tb.ht->lie_groups()) {
            std::string model;
            for (std::size_t i = 0; i < lg.degrees.size(); ++i)
                model += (i ? " x " : "") + ("S^" + std::to_string(lg.degrees[i]));
            rep.notes.push_back(lg.name + " ~_Q " + model + "  [" + lg.citation + "]");
            rep.cite({lg.citation});
        }
        rep.notes.push_back(std::to_string(shown) + " homotopy-group entries; " +
                            std::to_string(tb.ct->exact_sequences().size()) +
                            " exact SO sequences with J and suspension columns");
    }
    return rep;
}

Report do_tables_validate(const LoadedTables& tb, const std::string& path_arg) {
    Report rep;
    std::string text;
    if (path_arg.empty()) {
        text = tb.htpy_source == "builtin" ? std::string(HomotopyTable::builtin_json())
                                           : read_file(tb.htpy_source);
        rep.inputs.push_back({"file", tb.htpy_source});
    } else {
        text = read_file(path_arg);
        rep.inputs.push_back({"file", path_arg});
    }

    std::string schema;
    try {
        auto j = nlohmann::json::parse(text);
        if (j.is_object()) schema = j.value("schema", std::string());
    } catch (const nlohmann::json::parse_error& e) {
        throw SchemaError(std::string("not valid JSON: ") + e.what());
    }

    if (schema == "htpy-table/1") {
        rep.inputs.push_back({"schema", schema});
        IngestReport ir;
        HomotopyTable t = HomotopyTable::ingest(text, &ir);
        rep.notes.push_back("OK, " + std::to_string(ir.entry_count) + " entries");
        for (const auto& w : ir.warnings) rep.notes.push_back("warning: " + w);
        if (!ir.paper_pinned.empty())
            rep.notes.push_back(std::to_string(ir.paper_pinned.size()) +
                                " entries pinned by the worked examples");
        for (const auto& e : t.entries()) rep.cite({e.citation});
    } else if (schema == "clutching/1") {
        rep.inputs.push_back({"schema", schema});
        ClutchingTable t = ClutchingTable::ingest(text, *tb.ht);
        rep.notes.push_back("OK, " + std::to_string(t.exact_sequences().size()) +
                            " exact sequences");
        for (const auto& s : t.exact_sequences()) rep.cite({s.citation});
    } else {
        throw SchemaError("unknown schema '" + schema +
                          "' (expected htpy-table/1 or clutching/1)");
    }
    return rep;
}

std::string join_args(const std::vector<std::string>& args) {
    std::string out;
    for (const auto& a : args) {
        if (!out.empty()) out += ' ';
        out += a;
    }
    return out;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"brace products, H-splitting and the J-homomorphism"};
    app.name("bracecalc");
    app.require_subcommand(1);

    bool as_json = false;
    std::string table_path, so_path;
    app.add_flag("--json", as_json, "emit the report as JSON");
    app.add_option("--table", table_path,
                   "homotopy-group table (schema htpy-table/1); overrides $BRACE_TABLE_PATH");
    app.add_option("--so-table", so_path,
                   "exact-sequence and J-homomorphism table (schema clutching/1)");

    AnalyzeOpts o;
    CLI::App* an = app.add_subcommand("analyze", "verdicts for one fibration");
    an->fallthrough();
    CLI::Option* opt_desc =
        an->add_option("--descriptor", o.descriptor, "fibration descriptor file (fibration/1)");
    CLI::Option* opt_kind = an->add_option(
        "--kind", o.kind,
        "sphere-over-sphere | clutched | wedge-over-wedge | free-loop | surface-bundle | "
        "product-pullback | lie-group | homogeneous | husemoller");
    opt_desc->excludes(opt_kind);
    an->add_option("--n", o.n, "base sphere dimension (fibre sphere dimension for surface-bundle)");
    an->add_option("--q", o.q, "fibre sphere dimension (structure group SO(q+1))");
    an->add_option("--rho", o.rho, "clutching class coordinates, e.g. 1 or 0,1");
    an->add_option("--lift", o.lift, "vector-bundle lift coordinates in pi_{n-1}(SO(q))");
    an->add_option("--rho2", o.rho2, "second clutching class for a fibre-equivalence check");
    an->add_option("--lift2", o.lift2, "lift of the second clutching class");
    an->add_option("--phi", o.phi, "degree of the comparison self-map (default 1)");
    an->add_option("--m", o.m, "free-loop: number of loop coordinates delooped");
    an->add_option("--space", o.space, "free-loop: the looped space, e.g. S2 or S^2");
    an->add_option("--g", o.genus, "surface-bundle: genus of the base surface");
    an->add_option("--w2", o.w2, "surface-bundle: 1 when w_2 of the bundle is nonzero");
    an->add_option("--base-dims", o.base_dims, "wedge-over-wedge: base sphere dimensions");
    an->add_option("--fibre-dims", o.fibre_dims, "wedge/pullback: fibre sphere dimensions");
    an->add_option("--factors", o.factors, "product-pullback: sphere dimensions of the product base");
    an->add_option("--group", o.group, "Lie group name, e.g. SU(3)");
    an->add_option("--fibre", o.fibre, "lie-group: fibre sphere dimension");
    an->add_option("--subgroup-sphere", o.subgroup_sphere, "homogeneous: subgroup sphere dimension");
    an->add_option("--base-sphere", o.base_sphere, "homogeneous: base sphere dimension");
    an->add_option("--degree-cap", o.degree_cap,
                   "Whitehead-degree cap for presented pairings (default 24)");

    std::string suite;
    int trials = 200, vcap = 0;
    std::uint64_t seed = 20260815;
    CLI::App* ve = app.add_subcommand("verify", "randomized identity and audit suites");
    ve->fallthrough();
    ve->add_option("suite", suite, "jacobi | derivation | lie-map | exactness | j-rules")
        ->required();
    ve->add_option("--trials", trials, "number of randomized trials (default 200)");
    ve->add_option("--degree-cap", vcap, "degree budget; 0 picks the suite default");
    ve->add_option("--seed", seed, "RNG seed (default 20260815)");

    CLI::App* ta = app.add_subcommand("tables", "inspect or validate table files");
    ta->fallthrough();
    ta->require_subcommand(1);
    std::string show_space;
    int show_degree = -1;
    CLI::App* show = ta->add_subcommand("show", "print entries with citations");
    show->fallthrough();
    show->add_option("--space", show_space, "restrict to one space, e.g. S3 or SO(5)");
    show->add_option("--degree", show_degree, "restrict to one degree");
    std::string validate_path;
    CLI::App* validate = ta->add_subcommand("validate", "schema-check a table document");
    validate->fallthrough();
    validate->add_option("path", validate_path,
                         "table file to check; defaults to the loaded homotopy table");

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e, out, err);
        return code == 0 ? 0 : 1;
    }

    try {
        LoadedTables tb = load_tables(table_path, so_path);
        Report rep;
        if (an->parsed()) {
            rep = do_analyze(tb, o);
        } else if (ve->parsed()) {
            rep = do_verify(tb, suite, trials, vcap, seed);
        } else if (show->parsed()) {
            rep = do_tables_show(tb, show_space, show_degree);
        } else {
            rep = do_tables_validate(tb, validate_path);
        }
        rep.command = join_args(args);
        if (tb.htpy_source != "builtin") rep.cite({"table file: " + tb.htpy_source});
        out << (as_json ? render_json(rep) : render_text(rep));
        return rep.exit_code();
    } catch (const CalcError& e) {
        err << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        err << "Error: " << e.what() << "\n";
        return 1;
    }
}

}  // namespace bracecalc
