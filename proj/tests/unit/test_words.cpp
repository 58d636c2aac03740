#include <doctest.h>

#include <string>

#include "lotl/errors.hpp"
#include "lotl/words.hpp"

using namespace lotl;

namespace {

std::string norm(const std::string& s) {
    return print_word_term(normalize_word_term(parse_word_term(s)));
}

}  // namespace

TEST_CASE("word terms print the way they parse") {
    for (const char* s : {"{a}", "{a,b} {}", "<0,1> <1,0>", "0 1", "{a} {}^w {a} {}^w {a}",
                          "({a} {})^w", "0^w", "(0 1)^-w 1", "sh({a}, {b})",
                          "sh({a}, sh({b}, {c}))"}) {
        CAPTURE(s);
        CHECK(print_word_term(parse_word_term(s)) == s);
    }
}

TEST_CASE("blank input is the empty word") {
    CHECK(parse_word_term("").node_kind() == word_term::kind::empty);
    CHECK(parse_word_term("   ").node_kind() == word_term::kind::empty);
    CHECK_FALSE(parse_word_term("").denotes_nonempty());
    CHECK(parse_word_term("0").denotes_nonempty());
}

TEST_CASE("normalization reduces periods and absorbs letters at open ends") {
    CHECK(norm("({a} {a})^w") == "{a}^w");
    CHECK(norm("(0 1 0 1)^w") == "(0 1)^w");
    CHECK(norm("{a} ({a})^w") == "{a}^w");
    CHECK(norm("{a} {a} ({a})^w") == "{a}^w");
    CHECK(norm("({a})^-w {a}") == "{a}^-w");
    // The closed ends stay put: a letter before a -w power or after a ^w
    // power is a genuine boundary.
    CHECK(norm("{a} ({a})^-w") == "{a} {a}^-w");
    CHECK(norm("({a})^w {a}") == "{a}^w {a}");
    CHECK(norm("{b} ({a})^w") == "{b} {a}^w");
    CHECK(norm("(0 1)^-w 1") == "(0 1)^-w 1");
}

TEST_CASE("reversal is an involution") {
    for (const char* s : {"{a} {b}", "({a} {})^w", "(0 1)^-w 1", "sh({a}, {b} {c})",
                          "{a} {}^w {a} {}^w {a}"}) {
        CAPTURE(s);
        word_term t = parse_word_term(s);
        CHECK(reverse_term(reverse_term(t)) == t);
    }
}

TEST_CASE("reversal swaps power directions") {
    CHECK(print_word_term(normalize_word_term(reverse_term(parse_word_term("{a} {b}^w")))) ==
          "{b}^-w {a}");
    CHECK(print_word_term(normalize_word_term(reverse_term(parse_word_term("(0 1)^-w")))) ==
          "(1 0)^w");
}

TEST_CASE("proposition-set alphabets enumerate subsets in order") {
    alphabet ps = alphabet::power_set({"a", "b"});
    REQUIRE(ps.size() == 4);
    CHECK(ps.at(0).name() == "{}");
    CHECK(ps.at(1).name() == "{a}");
    CHECK(ps.at(2).name() == "{b}");
    CHECK(ps.at(3).name() == "{a,b}");
    CHECK(ps.index_of("{b}") == 2);
    CHECK_FALSE(ps.index_of("{c}").has_value());
}

TEST_CASE("bit-tuple alphabets are in lexicographic order") {
    alphabet b2 = alphabet::bit_tuples(2);
    REQUIRE(b2.size() == 4);
    CHECK(b2.at(0).name() == "<0,0>");
    CHECK(b2.at(1).name() == "<0,1>");
    CHECK(b2.at(2).name() == "<1,0>");
    CHECK(b2.at(3).name() == "<1,1>");
    alphabet b1 = alphabet::bit_tuples(1);
    REQUIRE(b1.size() == 2);
    CHECK(b1.at(0).name() == "0");
    CHECK(b1.at(1).name() == "1");
}

TEST_CASE("finite conversions round-trip") {
    word_term t = parse_word_term("{a} {} {a,b}");
    finite_word w = to_finite(t);
    REQUIRE(w.size() == 3);
    CHECK(w[1] == letter::props({}));
    CHECK(print_word_term(from_finite(w)) == "{a} {} {a,b}");
    CHECK_THROWS_AS(to_finite(parse_word_term("({a})^w")), shape_error);
    CHECK_THROWS_AS(to_finite(parse_word_term("sh({a})")), shape_error);
}

TEST_CASE("zipping pairs letters position by position") {
    word_term z = zip_terms(parse_word_term("0 1"), parse_word_term("1 0"));
    finite_word w = to_finite(z);
    REQUIRE(w.size() == 2);
    CHECK(w[0] == letter::join(letter::bit(false), letter::bit(true)));
    CHECK(w[1] == letter::join(letter::bit(true), letter::bit(false)));

    word_term zw = zip_terms(parse_word_term("(0)^w"), parse_word_term("(1)^w"));
    CHECK(zw.node_kind() == word_term::kind::omega);

    CHECK_THROWS_AS(zip_terms(parse_word_term("0"), parse_word_term("0 0")), shape_error);
    CHECK_THROWS_AS(zip_terms(parse_word_term("(0)^w"), parse_word_term("0")), shape_error);
}

TEST_CASE("first_bit looks through joins from the left") {
    CHECK(letter::bit(true).first_bit());
    CHECK_FALSE(letter::bit(false).first_bit());
    CHECK(letter::join(letter::bit(true), letter::bit(false)).first_bit());
    CHECK_FALSE(letter::join(letter::bit(false), letter::bit(true)).first_bit());
}

TEST_CASE("malformed word terms are rejected") {
    CHECK_THROWS_AS(parse_word_term("{a"), parse_error);
    CHECK_THROWS_AS(parse_word_term("(0"), parse_error);
    CHECK_THROWS_AS(parse_word_term("0^"), parse_error);
    CHECK_THROWS_AS(parse_word_term("sh(0"), parse_error);
    CHECK_THROWS_AS(parse_word_term("<0,2>"), parse_error);
}
