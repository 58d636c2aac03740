#include "lotl/construction.hpp"

#include <algorithm>

namespace lotl {

namespace {

alphabet truth_bits() { return alphabet::bit_tuples(1); }
alphabet truth_pairs() { return alphabet::bit_tuples(2); }

// Stateless transducers: one state, every limit transition allowed.
transducer single_state(alphabet in, alphabet out) {
    transducer a({"q"}, std::move(in), std::move(out));
    a.set_initial(0);
    a.set_final(0);
    a.set_left_limit([](const state_set&, int) { return true; });
    a.set_right_limit([](int, const state_set&) { return true; });
    return a;
}

}  // namespace

transducer atom_automaton(const std::vector<std::string>& props, const std::string& name) {
    if (std::find(props.begin(), props.end(), name) == props.end())
        throw shape_error("proposition " + name + " is not among the declared propositions");
    transducer a = single_state(alphabet::power_set(props), truth_bits());
    const alphabet& in = a.input_alphabet();
    for (int i = 0; i < in.size(); ++i) {
        const auto& ps = in.at(i).as_props();
        bool holds = std::find(ps.begin(), ps.end(), name) != ps.end();
        a.add_successor(0, i, holds ? 1 : 0, 0);
    }
    return a;
}

transducer const_automaton(const std::vector<std::string>& props, bool value) {
    transducer a = single_state(alphabet::power_set(props), truth_bits());
    for (int i = 0; i < a.input_alphabet().size(); ++i) a.add_successor(0, i, value ? 1 : 0, 0);
    return a;
}

transducer not_automaton() {
    transducer a = single_state(truth_bits(), truth_bits());
    a.add_successor(0, 0, 1, 0);
    a.add_successor(0, 1, 0, 0);
    return a;
}

transducer or_automaton() {
    transducer a = single_state(truth_pairs(), truth_bits());
    for (int x = 0; x <= 1; ++x)
        for (int y = 0; y <= 1; ++y) a.add_successor(0, 2 * x + y, (x || y) ? 1 : 0, 0);
    return a;
}

// Reads the truth pair (x, y) of the operands, writes the truth of x U y
// with strict semantics. A cut's state records the pair consumed by its
// outgoing transition when those bits settle the connective; the two (1,0)
// states split on whether a witness for the until lies ahead (q2) or not
// (q4). Truth at a position equals membership of the following cut's state
// in {q0,q1,q2}, hence the outputs.
transducer until_automaton() {
    transducer a({"q0", "q1", "q2", "q3", "q4"}, truth_pairs(), truth_bits());
    for (int q = 0; q < 5; ++q) a.set_initial(q);
    a.set_final(4);

    const int in_by_src[5] = {3, 1, 2, 0, 2};  // letter index, <x,y> at 2x+y
    auto out_for = [](int dst) { return dst <= 2 ? 1 : 0; };
    for (int p = 0; p < 5; ++p)
        for (int q = 0; q < 5; ++q) {
            if (p == 2 && q >= 3) continue;
            if (p == 4 && q <= 2) continue;
            a.add_successor(p, in_by_src[p], out_for(q), q);
        }

    a.set_left_limit([](const state_set& P, int q) {
        if (P.test(0) || P.test(1) || P.test(3)) return true;
        if (P == state_set::of(5, {2})) return q <= 2;
        if (P == state_set::of(5, {4})) return q >= 3;
        return false;
    });
    a.set_right_limit([](int q, const state_set& P) {
        if (q == 2) return P.subset_of(state_set::of(5, {0, 2}));
        if (q == 4) return P.test(1) || P.test(3) || P == state_set::of(5, {4});
        return false;
    });
    return a;
}

transducer since_automaton() { return reverse_automaton(until_automaton()); }

// Reads the truth pair (x, y) of the operands, writes the truth of x U' y.
// The run tracks the gap central to the connective: q0,q1,q2 label cuts in
// a stretch where the formula holds, which can only end at a gap labelled
// q3; q4..q8 label cuts where it fails; q9 labels a failing gap (or the
// final cut) that nonetheless has x true on an interval to its left.
transducer stavi_until_automaton() {
    transducer a({"q0", "q1", "q2", "q3", "q4", "q5", "q6", "q7", "q8", "q9"}, truth_pairs(),
                 truth_bits());
    for (int q = 0; q < 10; ++q)
        if (q != 3 && q != 9) a.set_initial(q);
    a.set_final(8);
    a.set_final(9);

    // Input pair read from each state, as letter index <x,y> = 2x+y.
    const int in_by_src[10] = {-1, 2, 3, -1, 0, 1, 2, 3, -1, -1};
    auto emit = [&](int p, std::initializer_list<int> targets) {
        for (int q : targets) a.add_successor(p, in_by_src[p], q <= 2 ? 1 : 0, q);
    };
    emit(1, {0, 1, 2});
    emit(2, {0, 1, 2});
    emit(4, {0, 1, 2, 4, 5, 6, 7, 8});
    emit(5, {0, 1, 2, 4, 5, 6, 7, 8});
    emit(6, {4, 5, 6, 7, 8});
    emit(7, {4, 5, 6, 7, 8});

    auto holds_region = state_set::of(10, {0, 1, 2});
    a.set_left_limit([holds_region](const state_set& P, int q) {
        bool touches45 = P.test(4) || P.test(5);
        bool in_holds = P.subset_of(holds_region);
        if (q <= 2) return touches45 || in_holds;
        if (q == 3) return in_holds;
        if (q <= 7) return !in_holds;
        if (q == 8) return touches45;
        return !touches45 && !in_holds;  // q9
    });
    a.set_right_limit([holds_region](int q, const state_set& P) {
        bool touches_fail = P.test(4) || P.test(5) || P.test(6) || P.test(7);
        bool touches146 = P.test(1) || P.test(4) || P.test(6);
        switch (q) {
            case 0: return P.subset_of(holds_region);
            case 3: return !touches146 && P.test(5);
            case 8: return touches_fail;
            case 9: return touches_fail && (!(P.test(4) || P.test(5)) || touches146);
            default: return false;
        }
    });
    return a;
}

transducer stavi_since_automaton() { return reverse_automaton(stavi_until_automaton()); }

namespace {

// Letter index translation when two alphabets agree only up to order.
std::vector<int> letter_map(const alphabet& from, const alphabet& to, const char* what) {
    if (!from.same_letters(to))
        throw shape_error(std::string(what) + ": alphabets do not match");
    std::vector<int> m(from.size());
    for (int i = 0; i < from.size(); ++i) m[i] = *to.index_of(from.at(i));
    return m;
}

std::vector<std::vector<int>> ids_by_input(const transducer& a) {
    std::vector<std::vector<int>> by_in(a.input_alphabet().size());
    for (std::size_t id = 0; id < a.successors().size(); ++id)
        by_in[a.successors()[id].in].push_back(static_cast<int>(id));
    return by_in;
}

std::vector<std::string> pair_names(const transducer& a1, const transducer& a2) {
    std::vector<std::string> names;
    names.reserve(static_cast<std::size_t>(a1.state_count()) * a2.state_count());
    for (int i = 0; i < a1.state_count(); ++i)
        for (int j = 0; j < a2.state_count(); ++j)
            names.push_back("(" + a1.state_name(i) + "," + a2.state_name(j) + ")");
    return names;
}

// Shared by product and compose: endpoint sets combine componentwise, and a
// limit transition exists iff both projections allow it.
void combine_structure(transducer& r, const transducer& a1, const transducer& a2) {
    int n2 = a2.state_count();
    for (int i : a1.initial().members())
        for (int j : a2.initial().members()) r.set_initial(i * n2 + j);
    for (int i : a1.final_states().members())
        for (int j : a2.final_states().members()) r.set_final(i * n2 + j);

    auto project = [n1 = a1.state_count(), n2](const state_set& P) {
        std::pair<state_set, state_set> pr{state_set(n1), state_set(n2)};
        for (int q : P.members()) {
            pr.first.set(q / n2);
            pr.second.set(q % n2);
        }
        return pr;
    };
    r.set_left_limit([a1, a2, project](const state_set& P, int q) {
        auto [p1, p2] = project(P);
        int n2 = a2.state_count();
        return a1.left_limit(p1, q / n2) && a2.left_limit(p2, q % n2);
    });
    r.set_right_limit([a1, a2, project](int q, const state_set& P) {
        auto [p1, p2] = project(P);
        int n2 = a2.state_count();
        return a1.right_limit(q / n2, p1) && a2.right_limit(q % n2, p2);
    });
}

}  // namespace

transducer product(const transducer& a1, const transducer& a2) {
    auto in_map = letter_map(a1.input_alphabet(), a2.input_alphabet(), "product");
    transducer r(pair_names(a1, a2), a1.input_alphabet(),
                 alphabet::join(a1.output_alphabet(), a2.output_alphabet()));
    int n2 = a2.state_count();
    int out2 = a2.output_alphabet().size();
    auto by_in = ids_by_input(a2);
    for (const auto& t1 : a1.successors())
        for (int id2 : by_in[in_map[t1.in]]) {
            const auto& t2 = a2.successors()[id2];
            r.add_successor(t1.src * n2 + t2.src, t1.in, t1.out * out2 + t2.out,
                            t1.dst * n2 + t2.dst);
        }
    combine_structure(r, a1, a2);
    return r;
}

transducer compose(const transducer& outer, const transducer& inner) {
    auto mid_map = letter_map(inner.output_alphabet(), outer.input_alphabet(), "compose");
    transducer r(pair_names(inner, outer), inner.input_alphabet(), outer.output_alphabet());
    int n2 = outer.state_count();
    auto by_in = ids_by_input(outer);
    for (const auto& t1 : inner.successors())
        for (int id2 : by_in[mid_map[t1.out]]) {
            const auto& t2 = outer.successors()[id2];
            r.add_successor(t1.src * n2 + t2.src, t1.in, t2.out, t1.dst * n2 + t2.dst);
        }
    combine_structure(r, inner, outer);
    return r;
}

namespace {

transducer compile_core(const formula& f, const std::vector<std::string>& props) {
    using k = formula::kind;
    switch (f.node_kind()) {
        case k::atom: return atom_automaton(props, f.atom_name());
        case k::tru: return const_automaton(props, true);
        case k::fls: return const_automaton(props, false);
        case k::lnot: return compose(not_automaton(), compile_core(f.left(), props));
        case k::lor:
            return compose(or_automaton(), product(compile_core(f.left(), props),
                                                   compile_core(f.right(), props)));
        case k::until:
            return compose(until_automaton(), product(compile_core(f.left(), props),
                                                      compile_core(f.right(), props)));
        case k::since:
            return compose(since_automaton(), product(compile_core(f.left(), props),
                                                      compile_core(f.right(), props)));
        case k::stavi_until:
            return compose(stavi_until_automaton(), product(compile_core(f.left(), props),
                                                            compile_core(f.right(), props)));
        case k::stavi_since:
            return compose(stavi_since_automaton(), product(compile_core(f.left(), props),
                                                            compile_core(f.right(), props)));
        default: throw shape_error("unreachable");
    }
}

}  // namespace

transducer compile(const formula& f, const std::vector<std::string>& props) {
    for (const auto& atom : f.atoms())
        if (std::find(props.begin(), props.end(), atom) == props.end())
            throw shape_error("proposition " + atom + " is not in the alphabet");
    return compile_core(f.is_core() ? f : desugar(f), props);
}

}  // namespace lotl
