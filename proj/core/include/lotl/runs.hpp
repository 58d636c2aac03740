#pragma once

#include <string>
#include <vector>

#include "lotl/automaton.hpp"
#include "lotl/words.hpp"

namespace lotl {

// A run over a finite word labels the |w|+1 cuts with states and picks an
// output letter per position.
struct finite_run {
    std::vector<int> states;
    std::vector<int> outputs;  // indices into the output alphabet
};

// Checks one state labelling against the acceptance conditions. On failure
// *why (if given) names the first violated condition.
bool validate_finite_run(const transducer& a, const finite_word& input,
                         const std::vector<int>& states, std::string* why = nullptr);

// All accepting runs on a finite input, ordered lexicographically by state
// name sequence, then by output letters. Returns at most `limit` runs.
std::vector<finite_run> enumerate_finite_runs(const transducer& a, const finite_word& input,
                                              std::size_t limit = static_cast<std::size_t>(-1));

// A run over a word term, mirroring the term's structure. Empty labels a
// single cut; lit crosses one position; a power node lists one sub-run per
// copy of the body: finitely many transient copies and a block of copies
// that repeats forever, whose joint content feeds the limit transition at
// the closed end.
class run_term {
  public:
    enum class kind { empty, lit, concat, omega_pow, neg_omega_pow };

    static run_term empty(int state);
    static run_term lit(succ_transition t);
    static run_term concat(run_term l, run_term r);
    static run_term omega_pow(std::vector<run_term> prefix, std::vector<run_term> cycle,
                              int exit_state);
    static run_term neg_omega_pow(int entry_state, std::vector<run_term> cycle,
                                  std::vector<run_term> suffix);

    kind node_kind() const { return rep_->k; }
    int state() const;                      // empty only
    const succ_transition& trans() const;   // lit only
    const run_term& left() const;
    const run_term& right() const;
    const std::vector<run_term>& prefix() const;
    const std::vector<run_term>& cycle() const;
    const std::vector<run_term>& suffix() const;
    int limit_state() const;  // the state entering (-w) or leaving (^w) the power

    int entry() const;  // state at the leftmost cut
    int exit() const;   // state at the rightmost cut
    void content_into(state_set& s) const;
    state_set content(int universe) const;

  private:
    struct node {
        kind k;
        int state = -1;
        succ_transition t{};
        std::vector<run_term> parts;   // concat: {l, r}; powers: prefix/suffix
        std::vector<run_term> cycle_parts;
    };
    explicit run_term(std::shared_ptr<const node> n) : rep_(std::move(n)) {}
    std::shared_ptr<const node> rep_;
};

// Checks a run term against a word term: shapes correspond node by node,
// boundary states chain, each limit transition is justified by the joint
// content of the repeating block, and the endpoints are initial and final.
// On failure *why localizes the offending node, e.g. "at .cycle[1].left".
bool validate_run_term(const transducer& a, const word_term& input, const run_term& run,
                       std::string* why = nullptr);

// Searches for an accepting run on the given term. Powers are unrolled into
// at most copy_budget transient plus repeating copies (default: state count
// plus one). Throws no_run_error if the search is exhausted without a hit;
// the search is complete up to the copy budget, so absence within the budget
// is reported as such. Shuffle terms are rejected with shape_error.
run_term find_run_term(const transducer& a, const word_term& input, int copy_budget = -1);

// The output word read off a run, shaped like the run (a power's transient
// copies surface as a literal prefix or suffix around the repeating block).
word_term run_term_output(const transducer& a, const word_term& input, const run_term& run);

std::string render_run_term(const transducer& a, const run_term& run);

}  // namespace lotl
