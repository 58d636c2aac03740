#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "lotl/errors.hpp"
#include "lotl/words.hpp"

namespace lotl {

// A set of states of one fixed automaton, indexed 0..n-1.
class state_set {
  public:
    state_set() = default;
    explicit state_set(int universe) : bits_(universe, false) {}
    static state_set of(int universe, std::initializer_list<int> states);

    int universe() const { return static_cast<int>(bits_.size()); }
    bool test(int i) const { return bits_[i]; }
    void set(int i, bool v = true) { bits_[i] = v; }
    int count() const;
    bool none() const { return count() == 0; }
    bool any() const { return !none(); }
    bool subset_of(const state_set& o) const;
    bool intersects(const state_set& o) const;
    state_set union_with(const state_set& o) const;
    std::vector<int> members() const;

    bool operator==(const state_set& o) const { return bits_ == o.bits_; }
    bool operator!=(const state_set& o) const { return bits_ != o.bits_; }
    bool operator<(const state_set& o) const { return bits_ < o.bits_; }

  private:
    std::vector<bool> bits_;
};

struct succ_transition {
    int src;
    int in;   // index into the input alphabet
    int out;  // index into the output alphabet
    int dst;
};

// A letter-to-letter transducer over words indexed by linear orderings.
// Successor transitions are stored explicitly; limit transitions are given
// as predicates over state sets, so that automata whose limit behaviour is
// defined by a rule (rather than a finite table) don't have to enumerate
// the exponentially many set arguments up front.
class transducer {
  public:
    using left_limit_fn = std::function<bool(const state_set&, int)>;
    using right_limit_fn = std::function<bool(int, const state_set&)>;

    transducer(std::vector<std::string> state_names, alphabet in, alphabet out);

    int state_count() const { return static_cast<int>(names_.size()); }
    const std::string& state_name(int q) const { return names_[q]; }
    const std::vector<std::string>& state_names() const { return names_; }
    std::optional<int> state_index(const std::string& name) const;

    const alphabet& input_alphabet() const { return in_; }
    const alphabet& output_alphabet() const { return out_; }

    void add_successor(int src, int in, int out, int dst);
    const std::vector<succ_transition>& successors() const { return succs_; }
    // Transition ids, in insertion order.
    const std::vector<int>& successors_from(int src, int in) const;
    const std::vector<int>& successors_into(int dst, int in) const;

    void set_initial(int q, bool v = true) { initial_.set(q, v); }
    void set_final(int q, bool v = true) { final_.set(q, v); }
    const state_set& initial() const { return initial_; }
    const state_set& final_states() const { return final_; }

    // The set argument is always nonempty: limit conditions only arise at
    // cuts whose limit set is nonempty.
    void set_left_limit(left_limit_fn f) { left_ = std::move(f); }
    void set_right_limit(right_limit_fn f) { right_ = std::move(f); }
    bool left_limit(const state_set& P, int q) const { return left_ && left_(P, q); }
    bool right_limit(int q, const state_set& P) const { return right_ && right_(q, P); }

  private:
    std::vector<std::string> names_;
    alphabet in_;
    alphabet out_;
    std::vector<succ_transition> succs_;
    std::vector<std::vector<std::vector<int>>> from_index_;
    std::vector<std::vector<std::vector<int>>> into_index_;
    state_set initial_;
    state_set final_;
    left_limit_fn left_;
    right_limit_fn right_;
};

// Accepts the mirror image of the argument's language: successor transitions
// flip direction, limits swap sides, initial and final states trade places.
transducer reverse_automaton(const transducer& a);

// Text format, one directive per line ('#' starts a comment):
//   alphabet_in <letter>...
//   alphabet_out <letter>...
//   states <name>...
//   initial <name>...
//   final <name>...
//   succ <p> ; <a> ; <b> ; <q>
//   llim {<p>,...} ; <q>
//   rlim <q> ; {<p>,...}
// In succ lines '-' as input means every input letter, and '-' as output
// copies the input letter through.
transducer parse_automaton(const std::string& text);
transducer load_automaton_file(const std::string& path);

// Renders the same format. Limit predicates are expanded by enumerating all
// nonempty state subsets, so this refuses automata with more than
// max_expand_states states.
std::string save_automaton(const transducer& a, int max_expand_states = 12);

// Structural equality with limit predicates compared by expansion.
bool transducer_equal_expanded(const transducer& a, const transducer& b,
                               int max_expand_states = 12);

}  // namespace lotl
