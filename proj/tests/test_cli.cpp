#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "bracecalc/cli.hpp"
#include "bracecalc/clutching.hpp"
#include "bracecalc/tables.hpp"

namespace {

struct CliResult {
    int code = 0;
    std::string out;
    std::string err;
};

CliResult run(const std::vector<std::string>& args) {
    std::ostringstream o, e;
    CliResult r;
    r.code = bracecalc::run_cli(args, o, e);
    r.out = o.str();
    r.err = e.str();
    return r;
}

bool contains(const std::string& hay, const std::string& needle) {
    return hay.find(needle) != std::string::npos;
}

std::filesystem::path write_temp(const std::string& name, const std::string& text) {
    auto p = std::filesystem::temp_directory_path() / name;
    std::ofstream f(p);
    f << text;
    return p;
}

} // namespace

TEST_CASE("free loop analysis over S^2 fails with the doubled Hopf witness") {
    CliResult r = run({"analyze", "--kind", "free-loop", "--m", "1", "--space", "S2"});
    CHECK(r.code == 2);
    CHECK(r.err.empty());
    CHECK(r.out ==
          "bracecalc 0.1.0 -- analyze --kind free-loop --m 1 --space S2\n"
          "inputs:\n"
          "  kind: free-loop\n"
          "  m: 1\n"
          "  space: S^2\n"
          "[h-split] Fails (witness: {Id, ad Id}_s = 2 ad gamma != 0 in pi_2(Omega S^2))\n"
          "  > G.W. Whitehead: [i_2,i_2] = 2 gamma (Hopf invariant one on the Hopf class)\n"
          "  > adjunction ad: pi_k(Omega X) = pi_{k+1}(X); G.W. Whitehead products under looping\n"
          "tables used:\n"
          "  - G.W. Whitehead: [i_2,i_2] = 2 gamma (Hopf invariant one on the Hopf class)\n"
          "  - adjunction ad: pi_k(Omega X) = pi_{k+1}(X); G.W. Whitehead products under looping\n");
}

TEST_CASE("iterated free loops split") {
    for (const char* m : {"2", "3"}) {
        CliResult r = run({"analyze", "--kind", "free-loop", "--m", m, "--space", "S2"});
        CHECK(r.code == 0);
        CHECK(contains(r.out, "[h-split] Holds"));
        CHECK(contains(r.out, "  > ")); // every verdict cites its sources
    }
}

TEST_CASE("clutched bundle analysis reports both verdicts") {
    CliResult r = run({"analyze", "--kind", "sphere-over-sphere", "--n", "12", "--q",
                       "12", "--rho", "1"});
    CHECK(r.code == 2);
    CHECK(contains(r.out,
                   "[h-split] Fails (witness: {Id, Id}_s = (503) != 0 in "
                   "pi_24(S^13) = Z_504)"));
    CHECK(contains(r.out, "[rational-split] Holds"));
    CHECK(contains(r.out, "xi' = 2 xi - 2m d(Id) = (2, 0)"));
    CHECK(contains(r.out, "classified by pi_11(SO(13)) = Z: infinitely many classes"));
}

TEST_CASE("surface bundle analysis pins the Stiefel-Whitney witness") {
    CliResult r = run({"analyze", "--kind", "surface-bundle", "--g", "1", "--n",
                       "2", "--w2", "1"});
    CHECK(r.code == 2);
    CHECK(contains(r.out, "[h-split] Holds"));
    CHECK(contains(r.out, "  ! GENERALIZED_BRACE_NOT_IMPLIED"));
    CHECK(contains(r.out, "[product-structure] Fails"));
    CHECK(contains(r.out, "w(T S(zeta)) = 1 + pi^*w_2(zeta)"));
}

TEST_CASE("every emitted verdict carries at least one citation") {
    for (const auto& args : std::vector<std::vector<std::string>>{
             {"analyze", "--kind", "free-loop", "--m", "1", "--space", "S2"},
             {"analyze", "--kind", "sphere-over-sphere", "--n", "4", "--q", "2",
              "--rho", "1"},
             {"analyze", "--kind", "homogeneous", "--group", "SU(3)"},
             {"analyze", "--kind", "husemoller", "--n", "4", "--q", "2", "--rho", "1"},
             {"verify", "exactness"},
             {"--json", "analyze", "--kind", "product-pullback", "--factors", "3,5"}}) {
        CliResult r = run(args);
        CHECK(r.code != 1);
        if (args[0] == "--json") {
            auto doc = nlohmann::json::parse(r.out);
            for (const auto& v : doc["verdicts"]) CHECK(!v["citations"].empty());
        } else {
            CHECK(contains(r.out, "  > "));
        }
    }
}

TEST_CASE("verify suites run and report their tallies") {
    CliResult r = run({"verify", "jacobi", "--trials", "5", "--seed", "7"});
    CHECK(r.code == 0);
    CHECK(contains(r.out, "[jacobi] Holds"));
    CHECK(contains(r.out, "5/5 checks passed"));
    CHECK(contains(r.out, "seed: 7"));

    CliResult d = run({"verify", "derivation", "--trials", "6", "--seed", "3"});
    CHECK(d.code == 0);
    CHECK(contains(d.out, "planted inconsistencies detected"));

    CliResult x = run({"verify", "exactness"});
    CHECK(x.code == 0);
    CHECK(contains(x.out, "checks passed"));
}

TEST_CASE("unknown suites are usage errors") {
    CliResult r = run({"verify", "nonsense"});
    CHECK(r.code == 1);
    CHECK(r.out.empty());
    CHECK(contains(r.err, "UnknownSuite"));
    CHECK(contains(r.err, "jacobi, derivation, lie-map, exactness, or j-rules"));
}

TEST_CASE("tables show prints the requested entry with its citation") {
    CliResult r = run({"tables", "show", "--space", "S3", "--degree", "6"});
    CHECK(r.code == 0);
    CHECK(contains(r.out, "pi_6(S^3) = Z_12  [Toda (1962), 5.5: pi_6(S^3) = Z_12, "
                          "generated by nu']"));
    CliResult miss = run({"tables", "show", "--space", "S3", "--degree", "999"});
    CHECK(miss.code == 1);
    CHECK(contains(miss.err, "MissingEntry"));
}

TEST_CASE("tables validate accepts the builtin documents") {
    CliResult r = run({"tables", "validate"});
    CHECK(r.code == 0);
    CHECK(contains(r.out, "OK, 40 entries"));
    CHECK(contains(r.out, "pinned by the worked examples"));

    auto so = write_temp("bracecalc_so.json", bracecalc::ClutchingTable::builtin_json());
    CliResult s = run({"tables", "validate", so.string()});
    CHECK(s.code == 0);
    CHECK(contains(s.out, "OK, 6 exact sequences"));

    auto bad = write_temp("bracecalc_bad.json", "{\"schema\": \"mystery/9\"}");
    CliResult b = run({"tables", "validate", bad.string()});
    CHECK(b.code == 1);
    CHECK(contains(b.err, "SchemaError"));
}

TEST_CASE("json reports are canonical and byte-stable") {
    std::vector<std::string> args{"--json", "analyze", "--kind", "sphere-over-sphere",
                                  "--n", "12", "--q", "12", "--rho", "1"};
    CliResult a = run(args);
    CliResult b = run(args);
    CHECK(a.code == 2);
    CHECK(a.out == b.out);
    auto doc = nlohmann::json::parse(a.out);
    CHECK(doc["tool"] == "bracecalc");
    CHECK(doc["version"] == "0.1.0");
    CHECK(doc["command"] == "--json analyze --kind sphere-over-sphere --n 12 --q 12 --rho 1");
    CHECK(doc["verdicts"][0]["check"] == "h-split");
    CHECK(doc["verdicts"][0]["status"] == "Fails");
    CHECK(doc.dump(2) + "\n" == a.out); // round-trip is byte-identical
}

TEST_CASE("table files are picked up from flag and environment") {
    auto table = write_temp("bracecalc_htpy.json", bracecalc::HomotopyTable::builtin_json());

    CliResult flag = run({"--table", table.string(), "tables", "show", "--space", "S3",
                          "--degree", "6"});
    CHECK(flag.code == 0);
    CHECK(contains(flag.out, "table: " + table.string()));

    setenv("BRACE_TABLE_PATH", table.string().c_str(), 1);
    CliResult env = run({"tables", "show", "--space", "S3", "--degree", "6"});
    CHECK(env.code == 0);
    CHECK(contains(env.out, "table: " + table.string()));

    // an explicit flag wins over the environment
    setenv("BRACE_TABLE_PATH", "/nonexistent/htpy.json", 1);
    CliResult both = run({"--table", table.string(), "tables", "show", "--space", "S3",
                          "--degree", "6"});
    CHECK(both.code == 0);
    unsetenv("BRACE_TABLE_PATH");

    CliResult gone = run({"--table", "/nonexistent/htpy.json", "tables", "validate"});
    CHECK(gone.code == 1);
    CHECK(contains(gone.err, "cannot read"));
}

TEST_CASE("descriptor files feed the analyzer") {
    auto desc = write_temp("bracecalc_fib.json", R"({
        "schema": "fibration/1",
        "kind": "presented",
        "base": [{"name": "a", "degree": 3}, {"name": "b", "degree": 3}],
        "fibre": [{"name": "c", "degree": 3}, {"name": "d", "degree": 5}],
        "pairing": [{"base": "a", "fibre": "c",
                     "value": [{"word": ["d"], "coeff": 1}]}],
        "degree_cap": 10
    })");
    CliResult r = run({"analyze", "--descriptor", desc.string()});
    CHECK(r.code == 2);
    CHECK(contains(r.out, "[h-split] Fails"));
    CHECK(contains(r.out, "{a, c}_s = d != 0"));

    CliResult conflict = run({"analyze", "--descriptor", desc.string(), "--kind",
                              "free-loop"});
    CHECK(conflict.code == 1);
    CHECK(contains(conflict.err, "--descriptor"));
}

TEST_CASE("usage surface behaves like a standard tool") {
    CliResult help = run({"--help"});
    CHECK(help.code == 0);
    CHECK(contains(help.out, "brace products"));
    CHECK(contains(help.out, "analyze"));

    CliResult none = run({});
    CHECK(none.code == 1);

    CliResult badflag = run({"analyze", "--no-such-flag"});
    CHECK(badflag.code == 1);

    CliResult badkind = run({"analyze", "--kind", "moebius"});
    CHECK(badkind.code == 1);
    CHECK(contains(badkind.err, "Unsupported"));
}
