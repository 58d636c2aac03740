#include <doctest.h>

#include <fstream>
#include <set>
#include <string>
#include <vector>

#include "lotl/construction.hpp"
#include "lotl/errors.hpp"
#include "lotl/runs.hpp"

using namespace lotl;

namespace {

std::string fixture(const std::string& name) { return std::string(LOTL_FIXTURE_DIR) + "/" + name; }

finite_word bit_pairs(std::initializer_list<std::pair<int, int>> ps) {
    finite_word w;
    for (auto [x, y] : ps) w.push_back(letter::bits({x != 0, y != 0}));
    return w;
}

std::vector<std::string> run_states(const transducer& a, const finite_run& r) {
    std::vector<std::string> names;
    for (int q : r.states) names.push_back(a.state_name(q));
    return names;
}

std::string run_output(const transducer& a, const finite_run& r) {
    std::string s;
    for (int o : r.outputs) s += a.output_alphabet().at(o).name();
    return s;
}

void collect_props(const word_term& t, std::set<std::string>& props) {
    switch (t.node_kind()) {
        case word_term::kind::empty:
            return;
        case word_term::kind::lit:
            if (t.lit_letter().is_props())
                for (const auto& p : t.lit_letter().as_props()) props.insert(p);
            return;
        case word_term::kind::concat:
            collect_props(t.left(), props);
            collect_props(t.right(), props);
            return;
        case word_term::kind::omega:
        case word_term::kind::neg_omega:
            collect_props(t.body(), props);
            return;
        case word_term::kind::shuffle:
            for (const auto& b : t.bodies()) collect_props(b, props);
            return;
    }
}

}  // namespace

TEST_CASE("frozen runs of the until automaton") {
    transducer u = until_automaton();

    auto r1 = enumerate_finite_runs(u, bit_pairs({{1, 0}}));
    REQUIRE(r1.size() == 1);
    CHECK(run_states(u, r1[0]) == std::vector<std::string>{"q4", "q4"});
    CHECK(run_output(u, r1[0]) == "0");

    auto r2 = enumerate_finite_runs(u, bit_pairs({{0, 1}, {1, 1}}));
    REQUIRE(r2.size() == 1);
    CHECK(run_states(u, r2[0]) == std::vector<std::string>{"q1", "q0", "q4"});
    CHECK(run_output(u, r2[0]) == "10");

    auto r3 = enumerate_finite_runs(u, bit_pairs({{1, 0}, {0, 1}}));
    REQUIRE(r3.size() == 1);
    CHECK(run_states(u, r3[0]) == std::vector<std::string>{"q2", "q1", "q4"});
    CHECK(run_output(u, r3[0]) == "10");
}

TEST_CASE("frozen run of the gap-sensitive until automaton") {
    transducer s = stavi_until_automaton();
    auto r = enumerate_finite_runs(s, bit_pairs({{1, 1}}));
    REQUIRE(r.size() == 1);
    CHECK(run_states(s, r[0]) == std::vector<std::string>{"q7", "q8"});
    CHECK(run_output(s, r[0]) == "0");
}

TEST_CASE("the empty word is accepted through shared initial-final states") {
    transducer u = until_automaton();
    auto runs = enumerate_finite_runs(u, {});
    REQUIRE(runs.size() == 1);
    CHECK(run_states(u, runs[0]) == std::vector<std::string>{"q4"});
    CHECK(runs[0].outputs.empty());

    transducer b = load_automaton_file(fixture("fig1b.aut"));
    CHECK(enumerate_finite_runs(b, {}).empty());
}

TEST_CASE("the next-is-one fixture runs deterministically") {
    transducer a = load_automaton_file(fixture("fig1a.aut"));
    finite_word w = {letter::bit(true), letter::bit(false)};
    auto runs = enumerate_finite_runs(a, w);
    REQUIRE(runs.size() == 1);
    CHECK(run_states(a, runs[0]) == std::vector<std::string>{"q0", "q2", "q2"});
    CHECK(run_output(a, runs[0]) == "00");
}

TEST_CASE("validating finite runs localizes the violation") {
    transducer u = until_automaton();
    finite_word w = bit_pairs({{1, 0}, {0, 1}});
    auto runs = enumerate_finite_runs(u, w);
    REQUIRE(runs.size() == 1);
    CHECK(validate_finite_run(u, w, runs[0].states));

    std::vector<int> bad = runs[0].states;
    bad.front() = 3;
    std::string why;
    CHECK_FALSE(validate_finite_run(u, w, bad, &why));
    CHECK_FALSE(why.empty());

    CHECK_FALSE(validate_finite_run(u, w, {0, 1}, &why));
}

TEST_CASE("run search handles periodic terms") {
    transducer a = compile(parse_formula("a U b"), {"a", "b"});

    word_term t1 = parse_word_term("({a})^w");
    run_term r1 = find_run_term(a, t1);
    CHECK(validate_run_term(a, t1, r1));
    CHECK(print_word_term(normalize_word_term(run_term_output(a, t1, r1))) == "0^w");

    word_term t2 = parse_word_term("{a} ({b})^w");
    run_term r2 = find_run_term(a, t2);
    CHECK(validate_run_term(a, t2, r2));
    CHECK(print_word_term(normalize_word_term(run_term_output(a, t2, r2))) == "1^w");
}

TEST_CASE("run terms expose their boundary structure") {
    transducer a = compile(parse_formula("a U b"), {"a", "b"});
    word_term t = parse_word_term("{a} ({b})^w");
    run_term r = find_run_term(a, t);
    CHECK(a.initial().test(r.entry()));
    CHECK(a.final_states().test(r.exit()));
    state_set content = r.content(a.state_count());
    CHECK(content.any());
    CHECK(content.test(r.entry()));
}

TEST_CASE("validation rejects a run transplanted to another word") {
    transducer a = compile(parse_formula("a U b"), {"a", "b"});
    word_term t = parse_word_term("{a} {b}");
    run_term r = find_run_term(a, t);
    std::string why;
    CHECK_FALSE(validate_run_term(a, parse_word_term("{a} {a}"), r, &why));
    CHECK_FALSE(why.empty());
}

TEST_CASE("searches that cannot succeed say so") {
    transducer b = load_automaton_file(fixture("fig1b.aut"));
    CHECK_THROWS_AS(find_run_term(b, parse_word_term("{a}")), no_run_error);
    CHECK_THROWS_AS(find_run_term(b, parse_word_term("")), no_run_error);

    transducer a = compile(parse_formula("a"), {"a"});
    CHECK_THROWS_AS(find_run_term(a, parse_word_term("sh({a}, {})")), shape_error);
}

// Words with a gap between an omega block and a minus-omega block have no
// brute-force oracle; the expected truth words in the fixture are derived
// by hand, with the reasoning recorded next to them.
TEST_CASE("gap cases match their hand-derived truth words") {
    std::ifstream in(fixture("gap_cases.txt"));
    REQUIRE(in.good());
    std::string line;
    int cases = 0;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#') continue;
        std::size_t s1 = line.find(';');
        std::size_t s2 = line.find(';', s1 + 1);
        REQUIRE(s2 != std::string::npos);
        formula f = parse_formula(line.substr(0, s1));
        word_term input = parse_word_term(line.substr(s1 + 1, s2 - s1 - 1));
        word_term expected = normalize_word_term(parse_word_term(line.substr(s2 + 1)));

        std::set<std::string> props;
        collect_props(input, props);
        for (const auto& p : f.atoms()) props.insert(p);
        transducer a = compile(f, {props.begin(), props.end()});

        CAPTURE(line);
        run_term r = find_run_term(a, input);
        std::string why;
        CHECK(validate_run_term(a, input, r, &why));
        CHECK(why.empty());
        CHECK(print_word_term(normalize_word_term(run_term_output(a, input, r))) ==
              print_word_term(expected));
        ++cases;
    }
    CHECK(cases == 6);
}
