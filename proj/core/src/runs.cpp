#include "lotl/runs.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <tuple>

namespace lotl {

bool validate_finite_run(const transducer& a, const finite_word& input,
                         const std::vector<int>& states, std::string* why) {
    auto reject = [&](const std::string& msg) {
        if (why) *why = msg;
        return false;
    };
    if (states.size() != input.size() + 1)
        return reject("run has " + std::to_string(states.size()) + " states, expected " +
                      std::to_string(input.size() + 1));
    if (!a.initial().test(states.front()))
        return reject("first state " + a.state_name(states.front()) + " is not initial");
    if (!a.final_states().test(states.back()))
        return reject("last state " + a.state_name(states.back()) + " is not final");
    for (std::size_t i = 0; i < input.size(); ++i) {
        auto in = a.input_alphabet().index_of(input[i]);
        if (!in) return reject("letter " + input[i].name() + " is not in the input alphabet");
        bool found = false;
        for (int id : a.successors_from(states[i], *in))
            if (a.successors()[id].dst == states[i + 1]) found = true;
        if (!found)
            return reject("position " + std::to_string(i) + ": no transition " +
                          a.state_name(states[i]) + " -" + input[i].name() + "|?-> " +
                          a.state_name(states[i + 1]));
    }
    return true;
}

std::vector<finite_run> enumerate_finite_runs(const transducer& a, const finite_word& input,
                                              std::size_t limit) {
    std::vector<int> letters;
    for (const auto& l : input) {
        auto in = a.input_alphabet().index_of(l);
        if (!in) throw shape_error("letter " + l.name() + " is not in the input alphabet");
        letters.push_back(*in);
    }
    std::size_t n = input.size();

    // viable[i]: states at cut i from which a final state is still reachable.
    std::vector<state_set> viable(n + 1, state_set(a.state_count()));
    viable[n] = a.final_states();
    for (std::size_t i = n; i-- > 0;)
        for (const auto& t : a.successors())
            if (t.in == letters[i] && viable[i + 1].test(t.dst)) viable[i].set(t.src);

    std::vector<int> starts;
    for (int q = 0; q < a.state_count(); ++q)
        if (a.initial().test(q) && viable[0].test(q)) starts.push_back(q);
    std::sort(starts.begin(), starts.end(),
              [&](int x, int y) { return a.state_name(x) < a.state_name(y); });

    std::vector<finite_run> out;
    finite_run cur;
    auto dfs = [&](auto&& self, std::size_t i) -> void {
        if (out.size() >= limit) return;
        if (i == n) {
            out.push_back(cur);
            return;
        }
        std::vector<int> ids = a.successors_from(cur.states.back(), letters[i]);
        std::sort(ids.begin(), ids.end(), [&](int x, int y) {
            const auto& tx = a.successors()[x];
            const auto& ty = a.successors()[y];
            return std::make_pair(a.state_name(tx.dst), tx.out) <
                   std::make_pair(a.state_name(ty.dst), ty.out);
        });
        for (int id : ids) {
            const auto& t = a.successors()[id];
            if (!viable[i + 1].test(t.dst)) continue;
            cur.states.push_back(t.dst);
            cur.outputs.push_back(t.out);
            self(self, i + 1);
            cur.states.pop_back();
            cur.outputs.pop_back();
        }
    };
    for (int q : starts) {
        cur.states = {q};
        cur.outputs = {};
        dfs(dfs, 0);
        if (out.size() >= limit) break;
    }
    return out;
}

// --- run terms ---

run_term run_term::empty(int state) {
    auto n = std::make_shared<node>();
    n->k = kind::empty;
    n->state = state;
    return run_term(std::move(n));
}

run_term run_term::lit(succ_transition t) {
    auto n = std::make_shared<node>();
    n->k = kind::lit;
    n->t = t;
    return run_term(std::move(n));
}

run_term run_term::concat(run_term l, run_term r) {
    auto n = std::make_shared<node>();
    n->k = kind::concat;
    n->parts = {std::move(l), std::move(r)};
    return run_term(std::move(n));
}

run_term run_term::omega_pow(std::vector<run_term> prefix, std::vector<run_term> cycle,
                             int exit_state) {
    if (cycle.empty()) throw shape_error("omega power run needs a repeating block");
    auto n = std::make_shared<node>();
    n->k = kind::omega_pow;
    n->parts = std::move(prefix);
    n->cycle_parts = std::move(cycle);
    n->state = exit_state;
    return run_term(std::move(n));
}

run_term run_term::neg_omega_pow(int entry_state, std::vector<run_term> cycle,
                                 std::vector<run_term> suffix) {
    if (cycle.empty()) throw shape_error("minus-omega power run needs a repeating block");
    auto n = std::make_shared<node>();
    n->k = kind::neg_omega_pow;
    n->parts = std::move(suffix);
    n->cycle_parts = std::move(cycle);
    n->state = entry_state;
    return run_term(std::move(n));
}

int run_term::state() const {
    if (rep_->k != kind::empty) throw shape_error("not an empty run");
    return rep_->state;
}

const succ_transition& run_term::trans() const {
    if (rep_->k != kind::lit) throw shape_error("not a one-step run");
    return rep_->t;
}

const run_term& run_term::left() const { return rep_->parts.at(0); }
const run_term& run_term::right() const { return rep_->parts.at(1); }
const std::vector<run_term>& run_term::prefix() const { return rep_->parts; }
const std::vector<run_term>& run_term::cycle() const { return rep_->cycle_parts; }
const std::vector<run_term>& run_term::suffix() const { return rep_->parts; }

int run_term::limit_state() const {
    if (rep_->k != kind::omega_pow && rep_->k != kind::neg_omega_pow)
        throw shape_error("not a power run");
    return rep_->state;
}

int run_term::entry() const {
    switch (rep_->k) {
        case kind::empty: return rep_->state;
        case kind::lit: return rep_->t.src;
        case kind::concat: return left().entry();
        case kind::omega_pow:
            return prefix().empty() ? cycle().front().entry() : prefix().front().entry();
        case kind::neg_omega_pow: return rep_->state;
    }
    throw shape_error("unreachable");
}

int run_term::exit() const {
    switch (rep_->k) {
        case kind::empty: return rep_->state;
        case kind::lit: return rep_->t.dst;
        case kind::concat: return right().exit();
        case kind::omega_pow: return rep_->state;
        case kind::neg_omega_pow:
            return suffix().empty() ? cycle().back().exit() : suffix().back().exit();
    }
    throw shape_error("unreachable");
}

void run_term::content_into(state_set& s) const {
    switch (rep_->k) {
        case kind::empty: s.set(rep_->state); return;
        case kind::lit:
            s.set(rep_->t.src);
            s.set(rep_->t.dst);
            return;
        case kind::concat:
            left().content_into(s);
            right().content_into(s);
            return;
        case kind::omega_pow:
        case kind::neg_omega_pow:
            s.set(rep_->state);
            for (const auto& p : rep_->parts) p.content_into(s);
            for (const auto& p : rep_->cycle_parts) p.content_into(s);
            return;
    }
}

state_set run_term::content(int universe) const {
    state_set s(universe);
    content_into(s);
    return s;
}

// --- validation ---

namespace {

struct run_checker {
    const transducer& a;
    std::string* why;

    bool reject(const std::string& path, const std::string& msg) {
        if (why) *why = "at " + (path.empty() ? std::string("top") : path) + ": " + msg;
        return false;
    }

    state_set block_content(const std::vector<run_term>& parts) {
        state_set u(a.state_count());
        for (const auto& p : parts) p.content_into(u);
        return u;
    }

    bool check_chain(const std::vector<run_term>& parts, const std::string& path,
                     const char* label) {
        for (std::size_t i = 0; i + 1 < parts.size(); ++i)
            if (parts[i].exit() != parts[i + 1].entry())
                return reject(path, std::string(label) + " copies " + std::to_string(i) + " and " +
                                        std::to_string(i + 1) + " do not chain: " +
                                        a.state_name(parts[i].exit()) + " vs " +
                                        a.state_name(parts[i + 1].entry()));
        return true;
    }

    bool check(const word_term& t, const run_term& r, const std::string& path) {
        using wk = word_term::kind;
        using rk = run_term::kind;
        switch (t.node_kind()) {
            case wk::empty:
                if (r.node_kind() != rk::empty) return reject(path, "expected an empty run");
                return true;
            case wk::lit: {
                if (r.node_kind() != rk::lit) return reject(path, "expected a one-step run");
                const auto& tr = r.trans();
                auto in = a.input_alphabet().index_of(t.lit_letter());
                if (!in)
                    return reject(path, "letter " + t.lit_letter().name() +
                                            " is not in the input alphabet");
                if (tr.in != *in)
                    return reject(path, "transition reads " +
                                            a.input_alphabet().at(tr.in).name() + ", word has " +
                                            t.lit_letter().name());
                bool found = false;
                for (int id : a.successors_from(tr.src, tr.in)) {
                    const auto& s = a.successors()[id];
                    if (s.out == tr.out && s.dst == tr.dst) found = true;
                }
                if (!found)
                    return reject(path, "no such transition " + a.state_name(tr.src) + " -" +
                                            a.input_alphabet().at(tr.in).name() + "|" +
                                            a.output_alphabet().at(tr.out).name() + "-> " +
                                            a.state_name(tr.dst));
                return true;
            }
            case wk::concat: {
                if (r.node_kind() != rk::concat) return reject(path, "expected a concat run");
                if (!check(t.left(), r.left(), path + ".left")) return false;
                if (!check(t.right(), r.right(), path + ".right")) return false;
                if (r.left().exit() != r.right().entry())
                    return reject(path, "halves do not chain: " +
                                            a.state_name(r.left().exit()) + " vs " +
                                            a.state_name(r.right().entry()));
                return true;
            }
            case wk::omega: {
                if (r.node_kind() != rk::omega_pow)
                    return reject(path, "expected an omega power run");
                for (std::size_t i = 0; i < r.prefix().size(); ++i)
                    if (!check(t.body(), r.prefix()[i], path + ".prefix[" + std::to_string(i) + "]"))
                        return false;
                for (std::size_t i = 0; i < r.cycle().size(); ++i)
                    if (!check(t.body(), r.cycle()[i], path + ".cycle[" + std::to_string(i) + "]"))
                        return false;
                if (!check_chain(r.prefix(), path, "prefix")) return false;
                if (!check_chain(r.cycle(), path, "cycle")) return false;
                if (!r.prefix().empty() && r.prefix().back().exit() != r.cycle().front().entry())
                    return reject(path, "prefix does not chain into the cycle");
                if (r.cycle().back().exit() != r.cycle().front().entry())
                    return reject(path, "cycle does not close: " +
                                            a.state_name(r.cycle().back().exit()) + " vs " +
                                            a.state_name(r.cycle().front().entry()));
                state_set u = block_content(r.cycle());
                if (!a.left_limit(u, r.limit_state()))
                    return reject(path, "no left limit transition into " +
                                            a.state_name(r.limit_state()));
                return true;
            }
            case wk::neg_omega: {
                if (r.node_kind() != rk::neg_omega_pow)
                    return reject(path, "expected a minus-omega power run");
                for (std::size_t i = 0; i < r.cycle().size(); ++i)
                    if (!check(t.body(), r.cycle()[i], path + ".cycle[" + std::to_string(i) + "]"))
                        return false;
                for (std::size_t i = 0; i < r.suffix().size(); ++i)
                    if (!check(t.body(), r.suffix()[i], path + ".suffix[" + std::to_string(i) + "]"))
                        return false;
                if (!check_chain(r.cycle(), path, "cycle")) return false;
                if (!check_chain(r.suffix(), path, "suffix")) return false;
                if (r.cycle().back().exit() != r.cycle().front().entry())
                    return reject(path, "cycle does not close: " +
                                            a.state_name(r.cycle().back().exit()) + " vs " +
                                            a.state_name(r.cycle().front().entry()));
                if (!r.suffix().empty() && r.cycle().back().exit() != r.suffix().front().entry())
                    return reject(path, "cycle does not chain into the suffix");
                state_set u = block_content(r.cycle());
                if (!a.right_limit(r.limit_state(), u))
                    return reject(path, "no right limit transition out of " +
                                            a.state_name(r.limit_state()));
                return true;
            }
            case wk::shuffle:
                return reject(path, "runs over shuffle terms are not supported");
        }
        return reject(path, "unreachable");
    }
};

}  // namespace

bool validate_run_term(const transducer& a, const word_term& input, const run_term& run,
                       std::string* why) {
    run_checker c{a, why};
    if (!c.check(input, run, "")) return false;
    if (!a.initial().test(run.entry()))
        return c.reject("top", "entry state " + a.state_name(run.entry()) + " is not initial");
    if (!a.final_states().test(run.exit()))
        return c.reject("top", "exit state " + a.state_name(run.exit()) + " is not final");
    return true;
}

// --- search ---

namespace {

using frag_key = std::tuple<int, int, std::vector<bool>>;  // entry, exit, content
using frag_map = std::map<frag_key, run_term>;

std::vector<bool> key_union(const std::vector<bool>& a, const std::vector<bool>& b) {
    std::vector<bool> r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] || b[i];
    return r;
}

struct frag_search {
    const transducer& a;
    int budget;
    std::size_t items_left;

    void spend() {
        if (items_left == 0)
            throw resource_error("run search exceeded the item budget");
        --items_left;
    }

    frag_map frags(const word_term& t) {
        using wk = word_term::kind;
        switch (t.node_kind()) {
            case wk::empty: {
                frag_map m;
                for (int q = 0; q < a.state_count(); ++q) {
                    spend();
                    std::vector<bool> c(a.state_count(), false);
                    c[q] = true;
                    m.try_emplace({q, q, c}, run_term::empty(q));
                }
                return m;
            }
            case wk::lit: {
                auto in = a.input_alphabet().index_of(t.lit_letter());
                if (!in)
                    throw shape_error("letter " + t.lit_letter().name() +
                                      " is not in the input alphabet");
                frag_map m;
                for (const auto& tr : a.successors()) {
                    if (tr.in != *in) continue;
                    spend();
                    std::vector<bool> c(a.state_count(), false);
                    c[tr.src] = c[tr.dst] = true;
                    m.try_emplace({tr.src, tr.dst, c}, run_term::lit(tr));
                }
                return m;
            }
            case wk::concat: {
                frag_map l = frags(t.left());
                frag_map r = frags(t.right());
                std::map<int, std::vector<const frag_map::value_type*>> r_by_entry;
                for (const auto& kv : r) r_by_entry[std::get<0>(kv.first)].push_back(&kv);
                frag_map m;
                for (const auto& [kl, wl] : l) {
                    auto it = r_by_entry.find(std::get<1>(kl));
                    if (it == r_by_entry.end()) continue;
                    for (const auto* kvp : it->second) {
                        spend();
                        m.try_emplace({std::get<0>(kl), std::get<1>(kvp->first),
                                       key_union(std::get<2>(kl), std::get<2>(kvp->first))},
                                      run_term::concat(wl, kvp->second));
                    }
                }
                return m;
            }
            case wk::omega: return power(t, /*is_omega=*/true);
            case wk::neg_omega: return power(t, /*is_omega=*/false);
            case wk::shuffle:
                throw shape_error("run search over shuffle terms is not supported");
        }
        throw shape_error("unreachable");
    }

    // Runs over w^w and w^-w decompose into chains of per-copy runs: a block
    // that repeats forever (found as a loop among the chains) and a transient
    // chain on the closed side of the power.
    frag_map power(const word_term& t, bool is_omega) {
        frag_map body = frags(t.body());
        std::map<int, std::vector<const frag_map::value_type*>> body_by_start;
        for (const auto& kv : body) body_by_start[std::get<0>(kv.first)].push_back(&kv);

        // Chains of body fragments, deduplicated by start, current end and
        // accumulated content; explored breadth-first so each class keeps a
        // shortest witness.
        using chain_key = std::tuple<int, int, std::vector<bool>>;
        std::map<chain_key, std::vector<run_term>> reached;
        std::map<std::pair<int, std::vector<bool>>, std::vector<run_term>> loops;
        std::vector<std::pair<chain_key, std::vector<run_term>>> layer;
        std::vector<bool> none(a.state_count(), false);
        for (int q = 0; q < a.state_count(); ++q) {
            spend();
            chain_key k{q, q, none};
            reached[k] = {};
            layer.emplace_back(k, std::vector<run_term>{});
        }
        for (int depth = 0; depth < budget && !layer.empty(); ++depth) {
            std::vector<std::pair<chain_key, std::vector<run_term>>> next;
            for (const auto& [k, chain] : layer) {
                auto it = body_by_start.find(std::get<1>(k));
                if (it == body_by_start.end()) continue;
                for (const auto* kvp : it->second) {
                    const auto& bk = kvp->first;
                    chain_key nk{std::get<0>(k), std::get<1>(bk),
                                 key_union(std::get<2>(k), std::get<2>(bk))};
                    auto chain2 = chain;
                    chain2.push_back(kvp->second);
                    if (std::get<0>(nk) == std::get<1>(nk))
                        loops.try_emplace({std::get<0>(nk), std::get<2>(nk)}, chain2);
                    spend();
                    if (reached.try_emplace(nk, chain2).second) next.emplace_back(nk, chain2);
                }
            }
            layer = std::move(next);
        }

        // The transient chain sits before the repeating block for ^w (ending
        // at the block's anchor) and after it for ^-w (starting there).
        std::map<int, std::vector<const std::pair<const chain_key, std::vector<run_term>>*>>
            chains_at;
        for (const auto& kv : reached)
            chains_at[is_omega ? std::get<1>(kv.first) : std::get<0>(kv.first)].push_back(&kv);

        // States reachable across the limit, cached per loop content; limit
        // predicate calls count against the budget since they dominate on
        // large compositions.
        std::map<std::vector<bool>, std::vector<int>> limit_states;

        frag_map m;
        for (const auto& [lk, lchain] : loops) {
            int anchor = lk.first;
            auto cit = limit_states.find(lk.second);
            if (cit == limit_states.end()) {
                state_set u(a.state_count());
                for (int i = 0; i < a.state_count(); ++i)
                    if (lk.second[i]) u.set(i);
                std::vector<int> xs;
                for (int x = 0; x < a.state_count(); ++x) {
                    spend();
                    if (is_omega ? a.left_limit(u, x) : a.right_limit(x, u)) xs.push_back(x);
                }
                cit = limit_states.emplace(lk.second, std::move(xs)).first;
            }
            auto bit = chains_at.find(anchor);
            if (bit == chains_at.end()) continue;
            for (const auto* kvp : bit->second) {
                const auto& rk = kvp->first;
                for (int x : cit->second) {
                    spend();
                    std::vector<bool> c = key_union(std::get<2>(rk), lk.second);
                    c[x] = true;
                    if (is_omega)
                        m.try_emplace({std::get<0>(rk), x, c},
                                      run_term::omega_pow(kvp->second, lchain, x));
                    else
                        m.try_emplace({x, std::get<1>(rk), c},
                                      run_term::neg_omega_pow(x, lchain, kvp->second));
                }
            }
        }
        return m;
    }
};

}  // namespace

run_term find_run_term(const transducer& a, const word_term& input, int copy_budget) {
    if (copy_budget < 0) copy_budget = a.state_count() + 1;
    frag_search s{a, copy_budget, 1000000};
    frag_map m = s.frags(input);
    for (const auto& [k, w] : m)
        if (a.initial().test(std::get<0>(k)) && a.final_states().test(std::get<1>(k))) return w;
    throw no_run_error("no accepting run found (search exhausted with copy budget " +
                       std::to_string(copy_budget) + "); this rules out runs within the budget, "
                       "not in general");
}

word_term run_term_output(const transducer& a, const word_term& input, const run_term& run) {
    using wk = word_term::kind;
    switch (input.node_kind()) {
        case wk::empty: return word_term::empty();
        case wk::lit: return word_term::lit(a.output_alphabet().at(run.trans().out));
        case wk::concat:
            return word_term::concat(run_term_output(a, input.left(), run.left()),
                                     run_term_output(a, input.right(), run.right()));
        case wk::omega: {
            std::vector<word_term> parts;
            for (const auto& p : run.prefix()) parts.push_back(run_term_output(a, input.body(), p));
            std::vector<word_term> cyc;
            for (const auto& p : run.cycle()) cyc.push_back(run_term_output(a, input.body(), p));
            parts.push_back(word_term::omega(word_term::concat_all(cyc)));
            return word_term::concat_all(parts);
        }
        case wk::neg_omega: {
            std::vector<word_term> cyc;
            for (const auto& p : run.cycle()) cyc.push_back(run_term_output(a, input.body(), p));
            std::vector<word_term> parts;
            parts.push_back(word_term::neg_omega(word_term::concat_all(cyc)));
            for (const auto& p : run.suffix()) parts.push_back(run_term_output(a, input.body(), p));
            return word_term::concat_all(parts);
        }
        case wk::shuffle:
            throw shape_error("runs over shuffle terms are not supported");
    }
    throw shape_error("unreachable");
}

// --- rendering ---

namespace {

void render_tokens(const transducer& a, const run_term& r, std::vector<std::string>& out) {
    auto push_state = [&](int q) {
        std::string tok = "[" + a.state_name(q) + "]";
        if (out.empty() || out.back() != tok) out.push_back(tok);
    };
    auto push_block = [&](const std::vector<run_term>& parts) {
        for (const auto& p : parts) render_tokens(a, p, out);
    };
    switch (r.node_kind()) {
        case run_term::kind::empty: push_state(r.state()); return;
        case run_term::kind::lit: {
            const auto& t = r.trans();
            push_state(t.src);
            out.push_back(a.input_alphabet().at(t.in).name() + "|" +
                          a.output_alphabet().at(t.out).name());
            push_state(t.dst);
            return;
        }
        case run_term::kind::concat:
            render_tokens(a, r.left(), out);
            render_tokens(a, r.right(), out);
            return;
        case run_term::kind::omega_pow: {
            push_block(r.prefix());
            out.push_back("(");
            push_block(r.cycle());
            out.push_back(")^w");
            out.push_back("[" + a.state_name(r.limit_state()) + "]");
            return;
        }
        case run_term::kind::neg_omega_pow: {
            out.push_back("[" + a.state_name(r.limit_state()) + "]");
            out.push_back("(");
            push_block(r.cycle());
            out.push_back(")^-w");
            push_block(r.suffix());
            return;
        }
    }
}

}  // namespace

std::string render_run_term(const transducer& a, const run_term& run) {
    std::vector<std::string> toks;
    render_tokens(a, run, toks);
    std::string s;
    for (std::size_t i = 0; i < toks.size(); ++i) {
        if (i) s += ' ';
        s += toks[i];
    }
    return s;
}

}  // namespace lotl
