#pragma once

#include <memory>
#include <set>
#include <string>
#include <vector>

#include "lotl/errors.hpp"

namespace lotl {

// Temporal formulas over propositional atoms. The core connectives are
// negation, disjunction, the strict until/since pair, and their gap-sensitive
// variants; everything else is sugar that desugar() rewrites away.
class formula {
  public:
    enum class kind {
        atom,
        tru,
        fls,
        lnot,
        lor,
        until,        // strict: phi U psi
        since,        // strict: phi S psi
        stavi_until,  // phi U' psi
        stavi_since,  // phi S' psi
        // sugar
        land,
        implies,
        next,         // X
        prev,         // Y
        eventually,   // F
        always,       // G
        once,         // O
        historically, // H
        until_ns,     // non-strict until: Uns
    };

    static formula atom(const std::string& name);
    static formula tru();
    static formula fls();
    static formula lnot(const formula& f);
    static formula lor(const formula& l, const formula& r);
    static formula land(const formula& l, const formula& r);
    static formula implies(const formula& l, const formula& r);
    static formula until(const formula& l, const formula& r);
    static formula since(const formula& l, const formula& r);
    static formula stavi_until(const formula& l, const formula& r);
    static formula stavi_since(const formula& l, const formula& r);
    static formula until_ns(const formula& l, const formula& r);
    static formula next(const formula& f);
    static formula prev(const formula& f);
    static formula eventually(const formula& f);
    static formula always(const formula& f);
    static formula once(const formula& f);
    static formula historically(const formula& f);

    kind node_kind() const { return rep_->k; }
    const std::string& atom_name() const;
    const formula& left() const;   // also the operand of unary nodes
    const formula& right() const;

    bool is_core() const;       // this node and all descendants are core
    bool is_temporal() const {  // node binds like a temporal connective
        switch (rep_->k) {
            case kind::until: case kind::since:
            case kind::stavi_until: case kind::stavi_since:
            case kind::until_ns:
                return true;
            default: return false;
        }
    }

    bool operator==(const formula& o) const;
    bool operator!=(const formula& o) const { return !(*this == o); }

    // Atoms appearing in the formula, sorted.
    std::vector<std::string> atoms() const;

    // Number of connective nodes (atoms and constants count as 0).
    int connective_count() const;

  private:
    struct node {
        kind k;
        std::string name;
        std::vector<formula> kids;
    };
    explicit formula(std::shared_ptr<const node> n) : rep_(std::move(n)) {}
    static formula make(kind k, std::vector<formula> kids);
    std::shared_ptr<const node> rep_;
};

// Concrete syntax. Atoms are lowercase identifiers; `true`/`false` are the
// constants. Unary operators: ! X F G Y O H. Binary, from tightest to
// loosest: temporal (U S U' S' Uns, right associative), &, |, ->.
// Unary binds tighter than all binary operators.
formula parse_formula(const std::string& text);

// Renders with the fewest parentheses that re-parse to the same tree.
std::string render_formula(const formula& f);

// Rewrites sugar into the core connectives:
//   X a      -> false U a
//   F a      -> a | (true U a)
//   G a      -> !(F !a)      (then F is rewritten)
//   a & b    -> !(!a | !b)
//   a -> b   -> !a | b
//   a Uns b  -> b | (a & (a U b))   (then & is rewritten)
// and mirrored clauses for Y, O, H via S. Each rewrite of a temporal
// abbreviation introduces exactly one U or S node.
formula desugar(const formula& f);

}  // namespace lotl
