#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "lotl/formula.hpp"
#include "lotl/words.hpp"

namespace lotl {

// Semantic evaluators independent of the automaton pipeline, used as
// oracles against it.

// Truth values at every position, by dynamic programming over the
// desugared formula. Letters must be proposition sets.
std::vector<bool> eval_finite(const formula& f, const finite_word& w);

// Same values straight from the quantifier semantics, sugar included, with
// no rewriting and no shared state. Quadratic and proud of it.
std::vector<bool> eval_finite_naive(const formula& f, const finite_word& w);

// Ultimately periodic words prefix . cycle^w and their truth words.
struct up_word {
    finite_word prefix;
    finite_word cycle;  // nonempty
};
struct up_bits {
    std::vector<bool> prefix;
    std::vector<bool> cycle;  // nonempty
};

up_bits eval_up(const formula& f, const up_word& w);

// Canonical forms: primitive cycle, prefix no longer than necessary.
void normalize_up(up_word& w);
void normalize_up(up_bits& b);

// Conversions to and from word terms (the shape prefix-literals then one
// omega power of literals).
std::optional<up_word> to_up_word(const word_term& t);
word_term term_of_up(const up_word& w);
word_term term_of_up(const up_bits& b);

// Formula corpus helpers. Heights count atoms as 1; core_only restricts the
// grammar to the connectives the compiler handles without rewriting.
std::vector<formula> enumerate_formulas(const std::vector<std::string>& props, int max_height,
                                        bool core_only = false);
std::vector<formula> sample_formulas(std::vector<formula> all, std::size_t cap,
                                     std::uint64_t seed);

struct differential_config {
    std::vector<std::string> props{"a", "b"};
    int max_height = 3;
    bool core_only = false;
    std::size_t corpus_cap = 200;
    int exhaustive_len = 2;  // all finite words up to this length
    int max_len = 5;         // random finite words up to this length
    int random_words = 10;   // how many random finite words beyond the exhaustive ones
    int up_words = 8;        // random ultimately periodic words
    int up_prefix_max = 2;
    int up_cycle_max = 3;
    int up_state_limit = 600;  // skip run search on automata larger than this
    std::uint64_t seed = 1;
};

struct differential_outcome {
    long formulas = 0;
    long cases = 0;
    long failures = 0;
};

// Cross-checks the two evaluators and the automaton pipeline on a shared
// corpus of formulas and words. Writes one FAIL line per disagreement
// (after shrinking the word) and a summary footer to `report`.
differential_outcome run_differential(const differential_config& cfg, std::ostream& report);

}  // namespace lotl
