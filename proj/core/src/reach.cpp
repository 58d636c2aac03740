#include "lotl/reach.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>

#include "lotl/construction.hpp"

namespace lotl {

bool operator<(const path_item& a, const path_item& b) {
    if (a.p != b.p) return a.p < b.p;
    if (a.q != b.q) return a.q < b.q;
    if (a.content != b.content) return a.content < b.content;
    return a.nonempty < b.nonempty;
}

std::string render_item(const transducer& a, const path_item& it) {
    std::ostringstream s;
    s << "(" << a.state_name(it.p) << ", {";
    bool first = true;
    for (int q : it.content.members()) {
        if (!first) s << ",";
        first = false;
        s << a.state_name(q);
    }
    s << "}, " << a.state_name(it.q) << ", " << (it.nonempty ? "nonempty" : "empty") << ")";
    return s.str();
}

rule_set rule_set::all() { return {true, true, true, true, true}; }

rule_set rule_set::from_string(const std::string& s) {
    rule_set r;
    std::size_t pos = 0;
    while (pos <= s.size()) {
        std::size_t comma = s.find(',', pos);
        if (comma == std::string::npos) comma = s.size();
        std::string name = s.substr(pos, comma - pos);
        if (name == "succ") r.succ = true;
        else if (name == "cat") r.cat = true;
        else if (name == "omega") r.omega = true;
        else if (name == "negomega") r.negomega = true;
        else if (name == "shuffle") r.shuffle = true;
        else if (name == "all") r = all();
        else if (!name.empty())
            throw parse_error("unknown saturation rule: " + name, pos);
        pos = comma + 1;
    }
    return r;
}

std::string rule_set::to_string() const {
    std::string s;
    auto add = [&](bool on, const char* name) {
        if (!on) return;
        if (!s.empty()) s += ',';
        s += name;
    };
    add(succ, "succ");
    add(cat, "cat");
    add(omega, "omega");
    add(negomega, "negomega");
    add(shuffle, "shuffle");
    return s;
}

namespace {

struct saturator {
    const transducer& a;
    rule_set rules;
    std::size_t cap;

    std::set<path_item> items;
    std::set<path_item> work;
    std::vector<path_item> done;
    std::vector<std::vector<int>> done_by_p, done_by_q;  // indices into done
    std::vector<std::vector<int>> trans_by_src;
    bool capped = false;

    explicit saturator(const transducer& a_, rule_set rules_, std::size_t cap_)
        : a(a_), rules(rules_), cap(cap_),
          done_by_p(a_.state_count()), done_by_q(a_.state_count()),
          trans_by_src(a_.state_count()) {
        for (std::size_t i = 0; i < a.successors().size(); ++i)
            trans_by_src[a.successors()[i].src].push_back(static_cast<int>(i));
    }

    void add(path_item it) {
        if (capped || items.count(it)) return;
        if (items.size() >= cap) {
            capped = true;
            return;
        }
        work.insert(it);
        items.insert(std::move(it));
    }

    void cat_pair(const path_item& l, const path_item& r) {
        add({l.p, l.content.union_with(r.content), r.q, l.nonempty || r.nonempty});
    }

    void process(const path_item& it) {
        if (rules.succ)
            for (int ti : trans_by_src[it.q]) {
                const auto& t = a.successors()[ti];
                state_set c = it.content;
                c.set(t.dst);
                add({it.p, std::move(c), t.dst, true});
            }
        if (rules.cat) {
            if (it.p == it.q) cat_pair(it, it);
            for (int j : done_by_p[it.q]) cat_pair(it, done[j]);
            for (int j : done_by_q[it.p]) cat_pair(done[j], it);
        }
        if (it.p == it.q && it.nonempty) {
            for (int x = 0; x < a.state_count(); ++x) {
                if (rules.omega && a.left_limit(it.content, x)) {
                    state_set c = it.content;
                    c.set(x);
                    add({it.p, std::move(c), x, true});
                }
                if (rules.negomega && a.right_limit(x, it.content)) {
                    state_set c = it.content;
                    c.set(x);
                    add({x, std::move(c), it.p, true});
                }
            }
        }
        int id = static_cast<int>(done.size());
        done.push_back(it);
        done_by_p[it.p].push_back(id);
        done_by_q[it.q].push_back(id);
    }

    void drain() {
        while (!work.empty() && !capped) {
            path_item it = *work.begin();
            work.erase(work.begin());
            process(it);
        }
    }

    // Shuffles of run fragments. A candidate skeleton content U must be the
    // union of the contents of the items compatible with it: those living
    // inside U whose endpoints can be approached from U on the matching
    // side. Candidates range over the union closure of the item contents,
    // which is exhaustive since U is such a union by definition.
    bool shuffle_phase() {
        std::set<state_set> closure;
        for (const auto& it : items) closure.insert(it.content);
        std::vector<state_set> cl(closure.begin(), closure.end());
        for (std::size_t i = 0; i < cl.size(); ++i) {
            if (cl.size() > cap) {
                capped = true;
                return false;
            }
            for (std::size_t j = 0; j < i; ++j) {
                state_set uv = cl[i].union_with(cl[j]);
                if (closure.insert(uv).second) cl.push_back(uv);
            }
        }

        bool added = false;
        for (const auto& u : closure) {
            state_set covered(a.state_count());
            bool any_nonempty = false;
            for (const auto& it : items) {
                if (!it.content.subset_of(u)) continue;
                if (!a.left_limit(u, it.p) || !a.right_limit(it.q, u)) continue;
                covered = covered.union_with(it.content);
                any_nonempty = any_nonempty || it.nonempty;
            }
            if (!any_nonempty || covered != u) continue;
            for (int p = 0; p < a.state_count(); ++p) {
                if (!a.right_limit(p, u)) continue;
                for (int q = 0; q < a.state_count(); ++q) {
                    if (!a.left_limit(u, q)) continue;
                    state_set c = u;
                    c.set(p);
                    c.set(q);
                    std::size_t before = items.size();
                    add({p, std::move(c), q, true});
                    added = added || items.size() != before;
                }
            }
        }
        return added;
    }

    saturation_result run() {
        for (int p = 0; p < a.state_count(); ++p) {
            state_set c(a.state_count());
            c.set(p);
            add({p, std::move(c), p, false});
        }
        drain();
        while (rules.shuffle && !capped && shuffle_phase()) drain();
        return {{items.begin(), items.end()}, capped};
    }
};

}  // namespace

saturation_result saturate(const transducer& a, rule_set rules, std::size_t max_items) {
    return saturator(a, rules, max_items).run();
}

namespace {

// reachable[s]: an item connects some initial state to s; coreach[s]: one
// connects s to some final state. Base items make initial and final states
// cover themselves.
std::pair<state_set, state_set> ends(const transducer& a, const saturation_result& sat) {
    state_set reach(a.state_count()), coreach(a.state_count());
    for (const auto& it : sat.items) {
        if (a.initial().test(it.p)) reach.set(it.q);
        if (a.final_states().test(it.q)) coreach.set(it.p);
    }
    return {reach, coreach};
}

std::vector<std::string> props_in(const alphabet& sigma) {
    std::set<std::string> seen;
    for (int i = 0; i < sigma.size(); ++i)
        for (const auto& p : sigma.at(i).as_props()) seen.insert(p);
    return {seen.begin(), seen.end()};
}

}  // namespace

sat_result satisfiable_output(const transducer& a, rule_set rules, std::size_t max_items) {
    saturation_result sat = saturate(a, rules, max_items);
    auto [reach, coreach] = ends(a, sat);
    for (const auto& t : a.successors()) {
        if (!a.output_alphabet().at(t.out).first_bit()) continue;
        if (!reach.test(t.src) || !coreach.test(t.dst)) continue;
        live_witness w{t, {}, {}};
        for (const auto& it : sat.items) {
            if (a.initial().test(it.p) && it.q == t.src) {
                w.to_src = it;
                break;
            }
        }
        for (const auto& it : sat.items) {
            if (it.p == t.dst && a.final_states().test(it.q)) {
                w.from_dst = it;
                break;
            }
        }
        return {verdict::sat, std::move(w)};
    }
    return {sat.capped ? verdict::unknown : verdict::unsat, std::nullopt};
}

bool is_transition_live(const transducer& a, const saturation_result& sat,
                        const succ_transition& t) {
    auto [reach, coreach] = ends(a, sat);
    return reach.test(t.src) && coreach.test(t.dst);
}

bool is_empty(const transducer& a, rule_set rules, std::size_t max_items) {
    if (a.initial().intersects(a.final_states())) return false;
    saturation_result sat = saturate(a, rules, max_items);
    for (const auto& it : sat.items)
        if (it.nonempty && a.initial().test(it.p) && a.final_states().test(it.q)) return false;
    if (sat.capped)
        throw resource_error("saturation hit the item cap before finding an accepting item");
    return true;
}

std::string to_string(verdict v) {
    switch (v) {
        case verdict::sat: return "SAT";
        case verdict::unsat: return "UNSAT";
        case verdict::unknown: return "UNKNOWN";
    }
    return "UNKNOWN";
}

sat_result satisfiable(const formula& f, std::vector<std::string> props, rule_set rules,
                       std::size_t max_items) {
    if (props.empty()) props = f.atoms();
    return satisfiable_output(compile(f, props), rules, max_items);
}

sat_result satisfiable_within(const formula& f, const transducer& within,
                              std::vector<std::string> props, rule_set rules,
                              std::size_t max_items) {
    if (props.empty()) props = props_against(f, within);
    return satisfiable_output(product(compile(f, props), within), rules, max_items);
}

std::vector<std::string> props_against(const formula& f, const transducer& within) {
    std::set<std::string> ps;
    for (const auto& p : f.atoms()) ps.insert(p);
    for (const auto& p : props_in(within.input_alphabet())) ps.insert(p);
    return {ps.begin(), ps.end()};
}

}  // namespace lotl
