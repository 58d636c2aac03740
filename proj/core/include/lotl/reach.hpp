#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "lotl/automaton.hpp"
#include "lotl/formula.hpp"

namespace lotl {

// Path saturation. An item certifies a run fragment from p to q whose cuts
// are labeled by exactly the states in content; the marker distinguishes
// fragments over the empty word from the rest.
struct path_item {
    int p;
    state_set content;  // includes both endpoints
    int q;
    bool nonempty;

    friend bool operator==(const path_item&, const path_item&) = default;
    friend bool operator<(const path_item& a, const path_item& b);
};

std::string render_item(const transducer& a, const path_item& it);

struct rule_set {
    bool succ = false;
    bool cat = false;
    bool omega = false;
    bool negomega = false;
    bool shuffle = false;

    static rule_set all();
    // Comma-separated rule names, e.g. "succ,cat,omega,negomega,shuffle".
    static rule_set from_string(const std::string& s);
    std::string to_string() const;
};

struct saturation_result {
    std::vector<path_item> items;  // sorted
    bool capped = false;           // hit the item cap; items are a sound under-approximation
};

inline constexpr std::size_t default_item_cap = 1000000;

saturation_result saturate(const transducer& a, rule_set rules = rule_set::all(),
                           std::size_t max_items = default_item_cap);

bool is_transition_live(const transducer& a, const saturation_result& sat,
                        const succ_transition& t);

// True when the acceptor accepts no word at all. Throws resource_error if
// the saturation was capped before any accepting item appeared.
bool is_empty(const transducer& a, rule_set rules = rule_set::all(),
              std::size_t max_items = default_item_cap);

enum class verdict { sat, unsat, unknown };
std::string to_string(verdict v);

// A live output-1 transition plus the items connecting it to an initial and
// a final state.
struct live_witness {
    succ_transition t;
    path_item to_src;
    path_item from_dst;
};

struct sat_result {
    verdict v = verdict::unknown;
    std::optional<live_witness> witness;
};

// Whether some accepted word makes the first output bit 1 somewhere; this is
// satisfiability once the automaton is a compiled formula or its product
// with an acceptor.
sat_result satisfiable_output(const transducer& a, rule_set rules = rule_set::all(),
                              std::size_t max_items = default_item_cap);

// Satisfiability of f over words indexed by arbitrary linear orderings, or
// restricted to the words some acceptor accepts. Empty props means: infer
// them from the formula (and the acceptor's alphabet, for the within form).
sat_result satisfiable(const formula& f, std::vector<std::string> props = {},
                       rule_set rules = rule_set::all(),
                       std::size_t max_items = default_item_cap);
sat_result satisfiable_within(const formula& f, const transducer& within,
                              std::vector<std::string> props = {},
                              rule_set rules = rule_set::all(),
                              std::size_t max_items = default_item_cap);

// The propositions a formula needs to run against an acceptor: its own
// atoms joined with the ones in the acceptor's input alphabet.
std::vector<std::string> props_against(const formula& f, const transducer& within);

}  // namespace lotl
