// Acceptance sweep for the whole pipeline. Each criterion prints one
// PASS/FAIL line; the exit status is the number of failures, so the binary
// doubles as a ctest entry and as a quick health check after changes.

#include <chrono>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "lotl/construction.hpp"
#include "lotl/oracle.hpp"
#include "lotl/reach.hpp"
#include "lotl/runs.hpp"

using namespace lotl;

namespace {

std::string fixture(const std::string& name) { return std::string(LOTL_FIXTURE_DIR) + "/" + name; }

std::vector<finite_word> words_up_to(const alphabet& sigma, int max_len, int min_len = 0) {
    std::vector<finite_word> out;
    for (int len = min_len; len <= max_len; ++len) {
        std::vector<int> idx(len, 0);
        while (true) {
            finite_word w;
            for (int i : idx) w.push_back(sigma.at(i));
            out.push_back(w);
            int pos = len;
            while (pos > 0 && ++idx[pos - 1] == static_cast<int>(sigma.size())) idx[--pos] = 0;
            if (pos == 0) break;
        }
    }
    return out;
}

std::string norm_print(const transducer& a, const word_term& input, const run_term& r) {
    return print_word_term(normalize_word_term(run_term_output(a, input, r)));
}

// 1. The elementary automata have exactly the published sizes, and the
//    frozen transition table of the until automaton regenerates byte for
//    byte (comment lines aside).
bool criterion1(std::string& note) {
    if (until_automaton().state_count() != 5) return note = "until size", false;
    if (stavi_until_automaton().state_count() != 10) return note = "gap until size", false;
    if (atom_automaton({"a", "b"}, "a").state_count() != 1) return note = "atom size", false;
    if (not_automaton().state_count() != 1) return note = "not size", false;
    if (or_automaton().state_count() != 1) return note = "or size", false;
    if (const_automaton({"a"}, true).state_count() != 1) return note = "const size", false;
    if (const_automaton({"a"}, false).state_count() != 1) return note = "const size", false;

    std::ifstream in(fixture("until.aut"));
    if (!in.good()) return note = "fixture missing", false;
    std::ostringstream frozen;
    std::string line;
    while (std::getline(in, line)) {
        if (!line.empty() && line[0] == '#') continue;
        frozen << line << '\n';
    }
    if (frozen.str() != save_automaton(until_automaton())) return note = "fixture drift", false;
    return true;
}

// 2. On a seeded sample of 500 core formulas of height up to 3 over {a,b},
//    every finite word of length up to 4 drives exactly one accepting run,
//    whose output letters are the finite-word evaluator's bits.
bool criterion2(std::string& note) {
    std::vector<formula> all = enumerate_formulas({"a", "b"}, 3, true);
    if (all.size() != 38812) return note = "corpus size " + std::to_string(all.size()), false;
    std::vector<formula> sample = sample_formulas(std::move(all), 500, 1);
    std::vector<finite_word> words = words_up_to(alphabet::power_set({"a", "b"}), 4);
    if (words.size() != 341) return note = "word count", false;

    for (const formula& f : sample) {
        transducer a = compile(f, {"a", "b"});
        for (const finite_word& w : words) {
            auto runs = enumerate_finite_runs(a, w, 2);
            if (runs.size() != 1) {
                note = render_formula(f) + ": " + std::to_string(runs.size()) + " runs";
                return false;
            }
            std::vector<bool> expect = eval_finite(f, w);
            for (std::size_t i = 0; i < w.size(); ++i) {
                if (a.output_alphabet().at(runs[0].outputs[i]).first_bit() != expect[i]) {
                    note = render_formula(f) + ": output mismatch";
                    return false;
                }
            }
        }
    }
    return true;
}

// 3. The until automata are non-ambiguous and total over their raw
//    bit-pair alphabets: one accepting run per word, empty word included.
bool criterion3(std::string& note) {
    for (const transducer& a : {until_automaton(), stavi_until_automaton()}) {
        for (const finite_word& w : words_up_to(a.input_alphabet(), 5)) {
            auto runs = enumerate_finite_runs(a, w, 2);
            if (runs.size() != 1) {
                note = std::to_string(a.state_count()) + " states, length " +
                       std::to_string(w.size()) + ": " + std::to_string(runs.size()) + " runs";
                return false;
            }
        }
    }
    return true;
}

// 4. The worked truth-word example: !a & G !(X a) over two omega blocks
//    with single-letter interludes, and over the fully periodic word.
bool criterion4(std::string& note) {
    transducer a = compile(parse_formula("!a & G !(X a)"), {"a"});

    word_term w1 = parse_word_term("{a} {}^w {a} {}^w {a}");
    run_term r1 = find_run_term(a, w1);
    if (!validate_run_term(a, w1, r1)) return note = "first run invalid", false;
    if (norm_print(a, w1, r1) != "0 1^w 0 1^w 0")
        return note = "got " + norm_print(a, w1, r1), false;

    word_term w2 = parse_word_term("({a} {})^w");
    run_term r2 = find_run_term(a, w2);
    if (!validate_run_term(a, w2, r2)) return note = "second run invalid", false;
    if (norm_print(a, w2, r2) != "0^w") return note = "got " + norm_print(a, w2, r2), false;
    return true;
}

// 5. Satisfiability verdicts, including the rule-dependence of the
//    gap-sensitive until and the restriction to finite words.
bool criterion5(std::string& note) {
    if (satisfiable(parse_formula("a & !a")).v != verdict::unsat) return note = "a & !a", false;
    if (satisfiable(parse_formula("a U b")).v != verdict::sat) return note = "a U b", false;
    if (satisfiable(parse_formula("a S b")).v != verdict::sat) return note = "a S b", false;

    formula stavi = parse_formula("a U' b");
    if (satisfiable(stavi).v != verdict::sat) return note = "a U' b", false;
    verdict flipped = satisfiable(stavi, {}, rule_set::from_string("succ,cat")).v;
    if (flipped == verdict::sat) return note = "a U' b without limit rules", false;

    transducer finite = load_automaton_file(fixture("finite_words.aut"));
    if (satisfiable_within(stavi, finite).v != verdict::unsat)
        return note = "a U' b within finite words", false;
    return true;
}

// 6. The dense-order acceptor accepts something exactly when the shuffle
//    rule participates.
bool criterion6(std::string& note) {
    transducer dense = load_automaton_file(fixture("fig1b.aut"));
    if (is_empty(dense)) return note = "empty with all rules", false;
    if (!is_empty(dense, rule_set::from_string("succ,cat,omega,negomega")))
        return note = "nonempty without shuffle", false;
    return true;
}

// 7. The gap acceptor: on finite words the unique run publishes only
//    zeros, and its one-publishing transitions come alive only through the
//    limit rules.
bool criterion7(std::string& note) {
    transducer gap = load_automaton_file(fixture("fig4.aut"));
    for (const finite_word& w : words_up_to(gap.input_alphabet(), 4, 2)) {
        auto runs = enumerate_finite_runs(gap, w, 2);
        if (runs.size() != 1)
            return note = std::to_string(runs.size()) + " runs at length " +
                          std::to_string(w.size()),
                   false;
        for (int o : runs[0].outputs)
            if (gap.output_alphabet().at(o).first_bit()) return note = "a one leaked", false;
    }

    auto with = saturate(gap);
    auto without = saturate(gap, rule_set::from_string("succ,cat"));
    bool live_with = false, live_without = false;
    for (const auto& t : gap.successors()) {
        if (!gap.output_alphabet().at(t.out).first_bit()) continue;
        live_with = live_with || is_transition_live(gap, with, t);
        live_without = live_without || is_transition_live(gap, without, t);
    }
    if (!live_with) return note = "no live one-transition", false;
    if (live_without) return note = "live without limit rules", false;
    return true;
}

// 8. On ultimately periodic words the run output equals the periodic
//    evaluator, for every formula of height up to 2 over {a}, and the
//    gap-sensitive formulas in that corpus come out constant zero.
bool criterion8(std::string& note) {
    std::vector<formula> formulas = enumerate_formulas({"a"}, 2);
    alphabet sigma = alphabet::power_set({"a"});
    std::vector<up_word> words;
    for (const finite_word& u : words_up_to(sigma, 3))
        for (const finite_word& v : words_up_to(sigma, 3, 1)) words.push_back({u, v});

    for (const formula& f : formulas) {
        transducer a = compile(f, {"a"});
        bool stavi_root = f.node_kind() == formula::kind::stavi_until ||
                          f.node_kind() == formula::kind::stavi_since;
        for (const up_word& w : words) {
            word_term input = term_of_up(w);
            up_bits expect = eval_up(f, w);
            normalize_up(expect);
            std::string want = print_word_term(term_of_up(expect));

            run_term r = find_run_term(a, input);
            std::string got = norm_print(a, input, r);
            if (got != want) {
                note = render_formula(f) + " on " + print_word_term(input) + ": got " + got +
                       ", want " + want;
                return false;
            }
            if (stavi_root && got != "0^w") {
                note = render_formula(f) + " not constant zero";
                return false;
            }
        }
    }
    return true;
}

// 9. Reversal: an involution on the elementary automata, and the since
//    automaton behaves as the reversed until automaton on reversed input.
bool criterion9(std::string& note) {
    for (const transducer& a :
         {atom_automaton({"a", "b"}, "a"), const_automaton({"a"}, true), not_automaton(),
          or_automaton(), until_automaton(), since_automaton(), stavi_until_automaton(),
          stavi_since_automaton()}) {
        if (!transducer_equal_expanded(reverse_automaton(reverse_automaton(a)), a))
            return note = "not an involution", false;
    }

    transducer u = until_automaton();
    transducer s = since_automaton();
    for (const finite_word& w : words_up_to(u.input_alphabet(), 4)) {
        finite_word rw(w.rbegin(), w.rend());
        auto rs = enumerate_finite_runs(s, w, 2);
        auto ru = enumerate_finite_runs(u, rw, 2);
        if (rs.size() != 1 || ru.size() != 1) return note = "ambiguous", false;
        std::size_t n = w.size();
        for (std::size_t i = 0; i <= n; ++i) {
            if (s.state_name(rs[0].states[i]) != u.state_name(ru[0].states[n - i]))
                return note = "state sequences differ", false;
        }
        for (std::size_t i = 0; i < n; ++i) {
            if (rs[0].outputs[i] != ru[0].outputs[n - 1 - i])
                return note = "outputs differ", false;
        }
    }
    return true;
}

// 10. Compiled sizes are the product of the elementary sizes.
bool criterion10(std::string& note) {
    int nested = compile(parse_formula("a U (b U c)"), {"a", "b", "c"}).state_count();
    if (nested != 25) return note = "nested until: " + std::to_string(nested), false;
    int next = compile(parse_formula("X a"), {"a"}).state_count();
    if (next != 5) return note = "next: " + std::to_string(next), false;
    return true;
}

}  // namespace

int main() {
    struct entry {
        int number;
        const char* label;
        std::function<bool(std::string&)> check;
    };
    const std::vector<entry> entries = {
        {1, "elementary sizes and frozen transition table", criterion1},
        {2, "run outputs equal the finite-word oracle on 500 core formulas", criterion2},
        {3, "until automata are non-ambiguous and total", criterion3},
        {4, "worked truth-word example", criterion4},
        {5, "satisfiability verdicts and rule dependence", criterion5},
        {6, "dense-order acceptor needs the shuffle rule", criterion6},
        {7, "gap acceptor: zero outputs on finite words, ones live via limits", criterion7},
        {8, "periodic run outputs equal the periodic oracle", criterion8},
        {9, "reversal duality", criterion9},
        {10, "compiled state counts", criterion10},
    };

    int failures = 0;
    for (const entry& e : entries) {
        std::string note;
        bool ok = false;
        auto start = std::chrono::steady_clock::now();
        try {
            ok = e.check(note);
        } catch (const std::exception& ex) {
            note = std::string("exception: ") + ex.what();
        }
        auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                      std::chrono::steady_clock::now() - start)
                      .count();
        std::cout << (ok ? "PASS" : "FAIL") << " criterion " << e.number << ": " << e.label
                  << " (" << ms << " ms)";
        if (!ok && !note.empty()) std::cout << "  [" << note << "]";
        std::cout << std::endl;
        if (!ok) ++failures;
    }
    if (failures > 0) std::cout << failures << " criteria failed" << std::endl;
    return failures;
}
