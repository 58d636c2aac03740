#include <doctest.h>

#include <vector>

#include "lotl/construction.hpp"
#include "lotl/errors.hpp"
#include "lotl/runs.hpp"

using namespace lotl;

namespace {

// Strict until over two bit streams, computed backwards: x U y holds at i
// exactly when y holds at i+1 or x does and the property holds there.
std::vector<bool> strict_until_bits(const std::vector<bool>& x, const std::vector<bool>& y) {
    std::size_t n = x.size();
    std::vector<bool> v(n, false);
    for (std::size_t i = n; i-- > 0;)
        v[i] = i + 1 < n && (y[i + 1] || (x[i + 1] && v[i + 1]));
    return v;
}

}  // namespace

TEST_CASE("elementary automata have the advertised sizes") {
    CHECK(atom_automaton({"a", "b"}, "a").state_count() == 1);
    CHECK(const_automaton({"a"}, true).state_count() == 1);
    CHECK(const_automaton({"a"}, false).state_count() == 1);
    CHECK(not_automaton().state_count() == 1);
    CHECK(or_automaton().state_count() == 1);
    CHECK(until_automaton().state_count() == 5);
    CHECK(since_automaton().state_count() == 5);
    CHECK(stavi_until_automaton().state_count() == 10);
    CHECK(stavi_since_automaton().state_count() == 10);
}

TEST_CASE("elementary alphabets") {
    transducer at = atom_automaton({"a", "b"}, "b");
    CHECK(at.input_alphabet().size() == 4);
    CHECK(at.output_alphabet().size() == 2);
    CHECK(at.input_alphabet().at(0).name() == "{}");

    transducer u = until_automaton();
    CHECK(u.input_alphabet().size() == 4);
    CHECK(u.input_alphabet().at(2).name() == "<1,0>");
    CHECK(u.output_alphabet().at(1).name() == "1");
}

TEST_CASE("compiled state counts multiply across the elementaries") {
    CHECK(compile(parse_formula("a U b"), {"a", "b"}).state_count() == 5);
    CHECK(compile(parse_formula("a U (b U c)"), {"a", "b", "c"}).state_count() == 25);
    CHECK(compile(parse_formula("X a"), {"a"}).state_count() == 5);
    CHECK(compile(parse_formula("a U' b"), {"a", "b"}).state_count() == 10);
    CHECK(compile(parse_formula("!a & G !(X a)"), {"a"}).state_count() == 125);
    CHECK(compile(parse_formula("!(a | b)"), {"a", "b"}).state_count() == 1);
}

TEST_CASE("compiling checks the proposition list") {
    CHECK_THROWS_AS(compile(parse_formula("c"), {"a", "b"}), shape_error);
    CHECK_THROWS_AS(compile(parse_formula("a U c"), {"a", "b"}), shape_error);
    CHECK(compile(parse_formula("a"), {"a", "b"}).input_alphabet().size() == 4);
}

TEST_CASE("product multiplies states and pairs outputs") {
    transducer p = product(until_automaton(), until_automaton());
    CHECK(p.state_count() == 25);
    CHECK(p.input_alphabet().size() == 4);
    CHECK(p.output_alphabet().size() == 4);
}

TEST_CASE("product demands matching input alphabets") {
    CHECK_THROWS_AS(product(until_automaton(), atom_automaton({"a"}, "a")), shape_error);
}

TEST_CASE("composition feeds outputs to inputs") {
    transducer c = compose(not_automaton(), until_automaton());
    CHECK(c.state_count() == 5);
    CHECK(c.input_alphabet().size() == 4);
    CHECK(c.output_alphabet().size() == 2);
    CHECK_THROWS_AS(compose(until_automaton(), not_automaton()), shape_error);
}

// Every bit-pair word of length up to 4 drives exactly one accepting run of
// the until automaton, and the published bits are the strict-until values of
// the input streams.
TEST_CASE("the until automaton computes strict until") {
    transducer u = until_automaton();
    const alphabet& in = u.input_alphabet();
    for (int len = 0; len <= 4; ++len) {
        std::vector<int> idx(len, 0);
        while (true) {
            finite_word w;
            std::vector<bool> x, y;
            for (int i : idx) {
                w.push_back(in.at(i));
                x.push_back(in.at(i).as_bits()[0]);
                y.push_back(in.at(i).as_bits()[1]);
            }
            auto runs = enumerate_finite_runs(u, w, 2);
            REQUIRE(runs.size() == 1);
            std::vector<bool> expect = strict_until_bits(x, y);
            for (int i = 0; i < len; ++i) {
                CAPTURE(len);
                CHECK(u.output_alphabet().at(runs[0].outputs[i]).first_bit() == expect[i]);
            }
            int pos = len;
            while (pos > 0 && ++idx[pos - 1] == static_cast<int>(in.size())) idx[--pos] = 0;
            if (pos == 0) break;
        }
    }
}

TEST_CASE("the since automaton mirrors until") {
    transducer s = since_automaton();
    const alphabet& in = s.input_alphabet();
    std::vector<int> idx = {1, 2, 0, 3};
    finite_word w;
    std::vector<bool> x, y;
    for (int i : idx) {
        w.push_back(in.at(i));
        x.push_back(in.at(i).as_bits()[0]);
        y.push_back(in.at(i).as_bits()[1]);
    }
    std::vector<bool> rx(x.rbegin(), x.rend()), ry(y.rbegin(), y.rend());
    std::vector<bool> expect = strict_until_bits(rx, ry);
    auto runs = enumerate_finite_runs(s, w, 2);
    REQUIRE(runs.size() == 1);
    for (int i = 0; i < 4; ++i)
        CHECK(s.output_alphabet().at(runs[0].outputs[i]).first_bit() == expect[3 - i]);
}
