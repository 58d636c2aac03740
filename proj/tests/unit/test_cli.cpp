#include <doctest.h>

#include <cstdio>
#include <sstream>
#include <string>
#include <vector>

#include "lotl/cli.hpp"

using namespace lotl;

namespace {

struct cli_result {
    int code;
    std::string out;
    std::string err;
};

cli_result cli(std::vector<std::string> args) {
    std::ostringstream out, err;
    int code = run_cli(args, out, err);
    return {code, out.str(), err.str()};
}

bool contains(const std::string& haystack, const std::string& needle) {
    return haystack.find(needle) != std::string::npos;
}

}  // namespace

TEST_CASE("parse prints the desugared core form") {
    cli_result r = cli({"parse", "a -> b | c"});
    CHECK(r.code == 0);
    CHECK(r.out == "!a | b | c\n");
}

TEST_CASE("compile reports sizes and can serialize") {
    cli_result r = cli({"compile", "a U (b U c)"});
    CHECK(r.code == 0);
    CHECK(contains(r.out, "states: 25"));

    std::string path = "lotl_cli_test_tmp.aut";
    cli_result w = cli({"compile", "a U b", "--out", path});
    CHECK(w.code == 0);
    cli_result run = cli({"run", path, "{a} ({b})^w"});
    CHECK(run.code == 0);
    CHECK(contains(run.out, "output: 1^w"));
    std::remove(path.c_str());
}

TEST_CASE("eval prints the truth word of the unique run") {
    cli_result r = cli({"eval", "!a & G !(X a)", "{a} {}^w {a} {}^w {a}"});
    CHECK(r.code == 0);
    CHECK(r.out == "0 1^w 0 1^w 0\n");

    cli_result s = cli({"eval", "a", "{a} {b}", "--props", "a,b"});
    CHECK(s.code == 0);
    CHECK(s.out == "1 0\n");
}

TEST_CASE("oracle evaluates without touching automata") {
    cli_result fin = cli({"oracle", "a U b", "{a} {a} {b}"});
    CHECK(fin.code == 0);
    CHECK(fin.out == "1 1 0\n");

    cli_result up = cli({"oracle", "true S b", "({b} {})^w"});
    CHECK(up.code == 0);
    CHECK(up.out == "0 1^w\n");

    cli_result sh = cli({"oracle", "a", "sh({a}, {})"});
    CHECK(sh.code == 3);
    CHECK(contains(sh.err, "shape"));
}

TEST_CASE("run resolves fixture names and renders the run") {
    cli_result r = cli({"run", "fig1a.aut", "1 0"});
    CHECK(r.code == 0);
    CHECK(contains(r.out, "q0"));
    CHECK(contains(r.out, "output: 0 0"));
}

TEST_CASE("sat prints a verdict and a witness") {
    cli_result unsat = cli({"sat", "a & !a"});
    CHECK(unsat.code == 0);
    CHECK(contains(unsat.out, "UNSAT"));

    cli_result sat = cli({"sat", "a U b"});
    CHECK(sat.code == 0);
    CHECK(contains(sat.out, "SAT"));
    CHECK(contains(sat.out, "transition:"));
    CHECK(contains(sat.out, "reach:"));

    cli_result flipped = cli({"sat", "a U' b", "--rules", "succ,cat"});
    CHECK(flipped.code == 0);
    CHECK(contains(flipped.out, "UNSAT"));

    cli_result within = cli({"sat", "a U' b", "--within", "finite_words.aut"});
    CHECK(within.code == 0);
    CHECK(contains(within.out, "UNSAT"));

    cli_result capped = cli({"sat", "a U b", "--max-items", "2"});
    CHECK(capped.code == 5);
    CHECK(contains(capped.out, "UNKNOWN"));
}

TEST_CASE("exit codes sort the error classes") {
    CHECK(cli({"parse", "a U"}).code == 2);
    CHECK(cli({"eval", "a", "{a"}).code == 2);
    CHECK(cli({"eval", "a", "{b}"}).code == 3);
    CHECK(cli({"run", "fig1b.aut", "{a}"}).code == 4);
    CHECK(cli({"run", "no_such_file.aut", "0"}).code == 6);
    CHECK(cli({}).code == 2);
    CHECK(cli({"frobnicate"}).code == 2);
    CHECK(cli({"parse"}).code == 2);
}

TEST_CASE("help is not an error") {
    cli_result r = cli({"--help"});
    CHECK(r.code == 0);
    CHECK(contains(r.out, "sat"));
}

TEST_CASE("the self test runs a tiny corpus clean") {
    cli_result r = cli({"selftest", "--depth", "1", "--len", "1", "--cap", "6"});
    CHECK(r.code == 0);
    CHECK(contains(r.out, "checked"));
    CHECK(contains(r.out, "0 failures"));
}
