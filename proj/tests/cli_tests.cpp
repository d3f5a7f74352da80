// Exercises the command-line surface end to end: exit codes per outcome
// class, report determinism, and the catalog round trip.

#include "idealab/json_io.hpp"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

namespace fs = std::filesystem;

namespace {

int failures = 0;

void expect(bool ok, const std::string& what) {
    if (ok) {
        std::cout << "  ok: " << what << "\n";
    } else {
        std::cout << "  FAIL: " << what << "\n";
        ++failures;
    }
}

struct RunResult {
    int exit_code = -1;
    std::string output;
};

RunResult run(const std::string& cli, const std::string& args, const fs::path& workdir,
              const std::string& tag) {
    fs::path out = workdir / (tag + ".out");
    std::string cmd = cli + " " + args + " > " + out.string() + " 2>&1";
    int status = std::system(cmd.c_str());
    RunResult r;
    r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    std::ifstream in(out);
    std::stringstream ss;
    ss << in.rdbuf();
    r.output = ss.str();
    return r;
}

} // namespace

int main(int argc, char** argv) {
    if (argc < 3) {
        std::cerr << "usage: cli_tests <cli-path> <workdir>\n";
        return 2;
    }
    std::string cli = argv[1];
    fs::path workdir = argv[2];
    fs::create_directories(workdir);

    // Constructions succeed with exit 0 and fail on bad input with exit 3.
    expect(run(cli, "construct asymptotic_density", workdir, "c1").exit_code == 0,
           "construct asymptotic_density exits 0");
    {
        auto r = run(cli, "construct adl --depth 4", workdir, "c2");
        expect(r.exit_code == 0, "construct adl exits 0");
        expect(r.output.find("\"inequality_holds\": true") != std::string::npos,
               "adl report asserts the edge-size inequality");
    }
    expect(run(cli, "construct no_such_family", workdir, "c3").exit_code == 3,
           "unknown family exits 3");
    expect(run(cli, "construct adl --blocks flat2 --depth 3", workdir, "c3b").exit_code == 3,
           "off-schedule base blocks exit 3");
    expect(run(cli, "construct summable --weight bogus", workdir, "c4").exit_code == 3,
           "unknown weight stream exits 3");

    // Witness pipelines: verified runs, budget exhaustion, malformed input.
    expect(run(cli, "--budget 200 witness disjointify --preset delta-pair --count 3", workdir,
               "w1").exit_code == 0,
           "disjointify on point pairs exits 0");
    expect(run(cli, "--budget 50 witness disjointify --preset bounded --count 2", workdir,
               "w2").exit_code == 2,
           "disjointify on a bounded sequence exits 2");
    expect(run(cli, "witness npp --scheme trivial --depth 3 --budget 32", workdir, "w3").exit_code ==
               0,
           "diagonal witness on the trivial scheme exits 0");
    expect(run(cli, "witness npp --scheme residue --blocks aligned --depth 6 --budget 32", workdir,
               "w4").exit_code == 0,
           "diagonal witness on the residue scheme exits 0");
    expect(run(cli, "witness summable-ext --blocks bounded_unit --depth 3 --budget 30", workdir,
               "w5").exit_code == 2,
           "summable extraction on bounded blocks exits 2");
    expect(run(cli, "witness summable-ext --depth 6 --budget 30", workdir, "w6").exit_code == 0,
           "summable extraction on growing blocks exits 0");
    expect(run(cli, "witness anti-grothendieck --preset scaled-points --count 5", workdir,
               "w7").exit_code == 0,
           "normalization exits 0");
    expect(run(cli, "witness partition-select --scheme residue --depth 3 --budget 100", workdir,
               "w8").exit_code == 0,
           "partition selection exits 0");
    expect(run(cli, "witness sign-select --depth 3 --budget 100", workdir, "w9").exit_code == 0,
           "sign selection exits 0");
    expect(run(cli, "witness fin-exh --depth 8 --budget 4096", workdir, "w9b").exit_code == 0,
           "interval rescaling exits 0");
    expect(run(cli, "witness fin-exh --preset asymptotic_density --depth 4 --budget 2048", workdir,
               "w9c").exit_code == 2,
           "rescaling a bounded family exits 2");
    expect(run(cli, "witness snpp --depth 10 --horizon 200", workdir, "w9d").exit_code == 0,
           "chain decomposition exits 0");
    {
        fs::path bad = workdir / "bad_measures.json";
        std::ofstream(bad) << "{ not json";
        expect(run(cli, "witness disjointify --input " + bad.string(), workdir, "w10").exit_code ==
                   3,
               "unparsable input exits 3");
    }

    // Verification suites.
    expect(run(cli, "--seed 7 --budget 300 verify submeasure-axioms", workdir, "v1").exit_code == 0,
           "submeasure axiom suite exits 0");
    expect(run(cli, "verify kneser-chromatic", workdir, "v2").exit_code == 0,
           "chromatic suite exits 0");
    expect(run(cli, "verify prefix-laws", workdir, "v3").exit_code == 0, "prefix suite exits 0");
    expect(run(cli, "verify measure-additivity", workdir, "v4").exit_code == 0,
           "measure additivity suite exits 0");
    {
        // Fault injection: a density descriptor with a negative weight breaks
        // monotonicity and must falsify with a counterexample.
        fs::path bad = workdir / "corrupt.json";
        std::ofstream(bad)
            << R"({"family":"density","blocks":[{"support":[0,1],"weights":["1/1","-2/1"]}]})";
        auto r = run(cli, "--budget 300 verify submeasure-axioms --descriptor " + bad.string(),
                     workdir, "v5");
        expect(r.exit_code == 1, "corrupted descriptor falsifies with exit 1");
        expect(r.output.find("counterexample") != std::string::npos,
               "falsification carries a counterexample");
    }
    expect(run(cli, "verify no-such-suite", workdir, "v6").exit_code == 3,
           "unknown suite exits 3");

    // Order relations.
    expect(run(cli, "order katetov --from density_zero --to density_zero", workdir, "o1").exit_code ==
               0,
           "identity reduction exits 0");
    expect(run(cli, "order katetov --from density_zero --to fin", workdir, "o2").exit_code == 1,
           "reduction into the finite ideal falsifies");
    expect(run(cli, "order dominance --f linear --g linear", workdir, "o3").exit_code == 0,
           "reflexive dominance exits 0");
    expect(run(cli, "--horizon 512 order splitting --from fin --tests 5", workdir, "o4").exit_code ==
               0,
           "bit-slice splitting exits 0");
    expect(run(cli, "--budget 64 order tukey-demo --depth 6", workdir, "o5").exit_code == 0,
           "tukey demonstration exits 0");

    // Catalog.
    expect(run(cli, "catalog list", workdir, "k1").exit_code == 0, "catalog list exits 0");
    expect(run(cli, "catalog show trace_null", workdir, "k2").exit_code == 0,
           "catalog show exits 0");
    expect(run(cli, "catalog show no_such_ideal", workdir, "k3").exit_code == 3,
           "unknown ideal exits 3");
    {
        fs::path desc = workdir / "my_ideal.json";
        std::ofstream(desc) << R"({
            "name": "my_geometric",
            "submeasure": {"family": "summable", "f": {"kind": "formula", "name": "pow2"}},
            "generators": [
                {"description": "evens", "set": {"kind": "program", "name": "evens"}},
                {"description": "finite", "set": {"kind": "finite", "elements": [1, 2, 3]}}
            ]
        })";
        fs::path dir = workdir / "catalog";
        auto r = run(cli, "catalog add --file " + desc.string() + " --dir " + dir.string(),
                     workdir, "k4");
        expect(r.exit_code == 0, "catalog add exits 0");
        expect(fs::exists(dir / "my_geometric.json"), "descriptor file written");
        expect(fs::exists(dir / "index.json"), "index written");
        expect(run(cli, "catalog show my_geometric --dir " + dir.string(), workdir, "k5")
                       .exit_code == 0,
               "stored ideal shows");
        auto l = run(cli, "catalog list --dir " + dir.string(), workdir, "k6");
        expect(l.output.find("my_geometric") != std::string::npos, "stored ideal listed");
    }

    // Determinism: identical inputs and seed give byte-identical reports once
    // the timing field is dropped.
    {
        fs::path r1 = workdir / "rep1.json";
        fs::path r2 = workdir / "rep2.json";
        run(cli, "--seed 9 --budget 200 --out " + r1.string() + " verify submeasure-axioms",
            workdir, "d1");
        run(cli, "--seed 9 --budget 200 --out " + r2.string() + " verify submeasure-axioms",
            workdir, "d2");
        idealab::Json a, b;
        std::ifstream(r1) >> a;
        std::ifstream(r2) >> b;
        a.erase("timing_ms");
        b.erase("timing_ms");
        expect(a.dump() == b.dump(), "reports are byte-identical up to timing");
        expect(a.contains("input_hash"), "reports embed the input hash");
    }

    // CSV format flattens the report.
    {
        auto r = run(cli, "--format csv order dominance --f linear --g linear", workdir, "f1");
        expect(r.exit_code == 0, "csv format exits 0");
        expect(r.output.find("operation,") != std::string::npos, "csv has flattened keys");
    }

    if (failures) {
        std::cout << failures << " CLI check(s) failed\n";
        return 1;
    }
    std::cout << "all CLI checks passed\n";
    return 0;
}
