#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "lotl/errors.hpp"

namespace lotl {

// A letter of some finite alphabet. Three structural kinds cover everything
// the library manipulates:
//   - a tuple of bits, printed `0`/`1` when it has one component and
//     `<b1,...,bk>` otherwise (truth values and zipped truth values),
//   - a set of propositions, printed `{a,b}` or `{}` (letters of 2^AP),
//   - a pair of letters, printed `(x,y)` (outputs of products).
// Joining two bit tuples flattens them, so the output alphabet of a product
// of two truth-word transducers is exactly the 2-bit input alphabet of the
// boolean and temporal elementary automata.
class letter {
public:
    letter() = default;

    static letter bit(bool b);
    static letter bits(const std::vector<bool>& bs);
    static letter props(std::vector<std::string> names);  // sorted, deduped
    static letter join(const letter& a, const letter& b);

    [[nodiscard]] const std::string& name() const { return rep_->name; }

    [[nodiscard]] bool is_bits() const;
    [[nodiscard]] const std::vector<bool>& as_bits() const;
    [[nodiscard]] bool is_props() const;
    [[nodiscard]] const std::vector<std::string>& as_props() const;

    // Leftmost bit of the letter; recurses through pairs. Used to read the
    // first component of a product output.
    [[nodiscard]] bool first_bit() const;

    bool operator==(const letter& o) const { return name() == o.name(); }
    bool operator!=(const letter& o) const { return !(*this == o); }
    bool operator<(const letter& o) const { return name() < o.name(); }

private:
    enum class kind { bits, props, pair };
    struct node {
        kind k;
        std::string name;
        std::vector<bool> bs;
        std::vector<std::string> ps;
        std::shared_ptr<const node> left, right;
    };
    explicit letter(std::shared_ptr<const node> n) : rep_(std::move(n)) {}
    std::shared_ptr<const node> rep_;
};

// An ordered finite alphabet with name lookup. Construction order is the
// canonical order used by serialization.
class alphabet {
public:
    alphabet() = default;
    explicit alphabet(std::vector<letter> letters);

    // All k-bit tuples in lexicographic order (0 before 1).
    static alphabet bit_tuples(int k);
    // All subsets of the given propositions, in subset-mask order with the
    // first proposition as the least significant bit: {}, {a}, {b}, {a,b}.
    static alphabet power_set(const std::vector<std::string>& props);
    // All joins a*b in a-major order.
    static alphabet join(const alphabet& a, const alphabet& b);

    [[nodiscard]] int size() const { return static_cast<int>(letters_.size()); }
    [[nodiscard]] const letter& at(int i) const { return letters_[i]; }
    [[nodiscard]] const std::vector<letter>& letters() const { return letters_; }

    [[nodiscard]] std::optional<int> index_of(const letter& l) const;
    [[nodiscard]] std::optional<int> index_of(const std::string& name) const;

    // Equality as letter sets; order is irrelevant.
    [[nodiscard]] bool same_letters(const alphabet& o) const;

private:
    std::vector<letter> letters_;
};

using finite_word = std::vector<letter>;

// A term denoting a word indexed by a linear ordering, built from single
// letters by concatenation, omega power, minus-omega power, and shuffle.
// Power and shuffle bodies always denote nonempty words.
class word_term {
public:
    enum class kind { empty, lit, concat, omega, neg_omega, shuffle };

    word_term() : word_term(empty()) {}

    static word_term empty();
    static word_term lit(const letter& l);
    static word_term concat(const word_term& l, const word_term& r);
    static word_term concat_all(const std::vector<word_term>& parts);
    static word_term omega(const word_term& body);      // body^w
    static word_term neg_omega(const word_term& body);  // body^-w
    static word_term shuffle(const std::vector<word_term>& bodies);

    [[nodiscard]] kind node_kind() const { return rep_->k; }
    [[nodiscard]] const letter& lit_letter() const { return rep_->l; }
    [[nodiscard]] const word_term& left() const { return rep_->kids[0]; }
    [[nodiscard]] const word_term& right() const { return rep_->kids[1]; }
    [[nodiscard]] const word_term& body() const { return rep_->kids[0]; }
    [[nodiscard]] const std::vector<word_term>& bodies() const { return rep_->kids; }

    [[nodiscard]] bool denotes_nonempty() const;
    [[nodiscard]] bool contains_shuffle() const;

    bool operator==(const word_term& o) const;
    bool operator!=(const word_term& o) const { return !(*this == o); }

private:
    struct node {
        kind k;
        letter l;
        std::vector<word_term> kids;
    };
    explicit word_term(std::shared_ptr<const node> n) : rep_(std::move(n)) {}
    std::shared_ptr<const node> rep_;
};

// Truth words share the term structure of the words they annotate.
using truth_word = word_term;

// Reverses the denoted word: concat swaps sides, omega and minus-omega
// powers swap, shuffle reverses each body in place.
word_term reverse_term(const word_term& t);

// The letter sequence of a finite term. Throws shape_error on omega,
// minus-omega or shuffle nodes.
finite_word to_finite(const word_term& t);

word_term from_finite(const finite_word& w);

// Zips two terms of identical shape into a term over joined letters.
word_term zip_terms(const word_term& a, const word_term& b);

// Word-term concrete syntax:
//   term    := factor*
//   factor  := primary ('^w' | '^-w')?
//   primary := letter | 'sh(' term (',' term)* ')' | '(' term ')'
//   letter  := '{' ident (',' ident)* '}' | '{}' | '<' bit (',' bit)* '>'
//            | '0' | '1'
// An empty (or all-whitespace) input denotes the empty word.
word_term parse_word_term(const std::string& text);

std::string print_word_term(const word_term& t);

// Semantic cleanup used before printing and comparing truth words: flattens
// concatenations, reduces finite power bodies to their primitive period, and
// absorbs letters into an adjacent power on its open side (x w^w when x ends
// with w, and w^-w x when x starts with w). Shuffle bodies are sorted and
// deduplicated.
word_term normalize_word_term(const word_term& t);

}  // namespace lotl
