#include "lotl/automaton.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <map>
#include <memory>
#include <sstream>

namespace lotl {

state_set state_set::of(int universe, std::initializer_list<int> states) {
    state_set s(universe);
    for (int i : states) s.set(i);
    return s;
}

int state_set::count() const {
    return static_cast<int>(std::count(bits_.begin(), bits_.end(), true));
}

bool state_set::subset_of(const state_set& o) const {
    for (std::size_t i = 0; i < bits_.size(); ++i)
        if (bits_[i] && !o.bits_[i]) return false;
    return true;
}

bool state_set::intersects(const state_set& o) const {
    for (std::size_t i = 0; i < bits_.size(); ++i)
        if (bits_[i] && o.bits_[i]) return true;
    return false;
}

state_set state_set::union_with(const state_set& o) const {
    state_set r(universe());
    for (std::size_t i = 0; i < bits_.size(); ++i) r.bits_[i] = bits_[i] || o.bits_[i];
    return r;
}

std::vector<int> state_set::members() const {
    std::vector<int> out;
    for (int i = 0; i < universe(); ++i)
        if (bits_[i]) out.push_back(i);
    return out;
}

transducer::transducer(std::vector<std::string> state_names, alphabet in, alphabet out)
    : names_(std::move(state_names)),
      in_(std::move(in)),
      out_(std::move(out)),
      initial_(static_cast<int>(names_.size())),
      final_(static_cast<int>(names_.size())) {
    if (names_.empty()) throw shape_error("automaton needs at least one state");
    from_index_.assign(names_.size(), std::vector<std::vector<int>>(in_.size()));
    into_index_.assign(names_.size(), std::vector<std::vector<int>>(in_.size()));
}

std::optional<int> transducer::state_index(const std::string& name) const {
    for (int i = 0; i < state_count(); ++i)
        if (names_[i] == name) return i;
    return std::nullopt;
}

void transducer::add_successor(int src, int in, int out, int dst) {
    int id = static_cast<int>(succs_.size());
    succs_.push_back({src, in, out, dst});
    from_index_[src][in].push_back(id);
    into_index_[dst][in].push_back(id);
}

const std::vector<int>& transducer::successors_from(int src, int in) const {
    return from_index_[src][in];
}

const std::vector<int>& transducer::successors_into(int dst, int in) const {
    return into_index_[dst][in];
}

transducer reverse_automaton(const transducer& a) {
    transducer r(a.state_names(), a.input_alphabet(), a.output_alphabet());
    for (const auto& t : a.successors()) r.add_successor(t.dst, t.in, t.out, t.src);
    for (int q : a.final_states().members()) r.set_initial(q);
    for (int q : a.initial().members()) r.set_final(q);
    r.set_left_limit([a](const state_set& P, int q) { return a.right_limit(q, P); });
    r.set_right_limit([a](int q, const state_set& P) { return a.left_limit(P, q); });
    return r;
}

// --- text format ---

namespace {

// Splits on top-level commas; brackets of any kind nest.
std::vector<std::string> split_commas(const std::string& s) {
    std::vector<std::string> out;
    std::string cur;
    int depth = 0;
    for (char c : s) {
        if (c == '(' || c == '{' || c == '<') ++depth;
        if (c == ')' || c == '}' || c == '>') --depth;
        if (c == ',' && depth == 0) {
            out.push_back(cur);
            cur.clear();
        } else {
            cur += c;
        }
    }
    out.push_back(cur);
    return out;
}

letter parse_letter_name(const std::string& name, int line) {
    if (name.empty()) throw parse_error("line " + std::to_string(line) + ": empty letter", line);
    if (name == "0") return letter::bit(false);
    if (name == "1") return letter::bit(true);
    char open = name.front(), close = name.back();
    std::string inner = name.substr(1, name.size() - 2);
    if (open == '{' && close == '}') {
        std::vector<std::string> props;
        if (!inner.empty())
            for (const auto& p : split_commas(inner)) props.push_back(p);
        return letter::props(props);
    }
    if (open == '<' && close == '>') {
        std::vector<bool> bits;
        for (const auto& b : split_commas(inner)) {
            if (b == "0") bits.push_back(false);
            else if (b == "1") bits.push_back(true);
            else throw parse_error("line " + std::to_string(line) + ": bad bit '" + b + "'", line);
        }
        return letter::bits(bits);
    }
    if (open == '(' && close == ')') {
        auto parts = split_commas(inner);
        if (parts.size() != 2)
            throw parse_error("line " + std::to_string(line) + ": bad letter pair '" + name + "'",
                              line);
        return letter::join(parse_letter_name(parts[0], line), parse_letter_name(parts[1], line));
    }
    throw parse_error("line " + std::to_string(line) + ": bad letter '" + name + "'", line);
}

struct limit_table {
    // llim: key is the set, values are targets.  rlim: key is the set,
    // values are sources.
    std::map<std::vector<bool>, state_set> left, right;
};

std::vector<std::string> tokenize(const std::string& line) {
    std::vector<std::string> toks;
    std::istringstream in(line);
    std::string t;
    while (in >> t) {
        if (t[0] == '#') break;
        toks.push_back(t);
    }
    return toks;
}

// Re-joins tokens and splits on ';' so 'succ p ; a ; b ; q' tolerates any
// spacing around the separators.
std::vector<std::string> split_fields(const std::vector<std::string>& toks, std::size_t from,
                                      int line) {
    std::string joined;
    for (std::size_t i = from; i < toks.size(); ++i) {
        if (i > from) joined += ' ';
        joined += toks[i];
    }
    std::vector<std::string> fields;
    std::string cur;
    for (char c : joined) {
        if (c == ';') {
            fields.push_back(cur);
            cur.clear();
        } else {
            cur += c;
        }
    }
    fields.push_back(cur);
    for (auto& f : fields) {
        while (!f.empty() && f.front() == ' ') f.erase(f.begin());
        while (!f.empty() && f.back() == ' ') f.pop_back();
        if (f.empty())
            throw parse_error("line " + std::to_string(line) + ": empty field", line);
    }
    return fields;
}

}  // namespace

transducer parse_automaton(const std::string& text) {
    std::optional<alphabet> in, out;
    std::vector<std::string> state_names;
    std::vector<std::string> initial_names, final_names;
    struct raw_succ {
        std::string p, a, b, q;
        int line;
    };
    std::vector<raw_succ> raw_succs;
    struct raw_limit {
        std::string set_tok, state_tok;
        bool is_left;
        int line;
    };
    std::vector<raw_limit> raw_limits;

    std::istringstream lines(text);
    std::string line;
    int lineno = 0;
    while (std::getline(lines, line)) {
        ++lineno;
        auto toks = tokenize(line);
        if (toks.empty()) continue;
        const std::string& kw = toks[0];
        auto rest = [&](const char* what) {
            if (toks.size() < 2)
                throw parse_error("line " + std::to_string(lineno) + ": " + what + " needs arguments",
                                  lineno);
            return std::vector<std::string>(toks.begin() + 1, toks.end());
        };
        if (kw == "alphabet_in" || kw == "alphabet_out") {
            std::vector<letter> ls;
            for (const auto& t : rest(kw.c_str())) ls.push_back(parse_letter_name(t, lineno));
            (kw == "alphabet_in" ? in : out) = alphabet(std::move(ls));
        } else if (kw == "states") {
            state_names = rest("states");
        } else if (kw == "initial") {
            initial_names = rest("initial");
        } else if (kw == "final") {
            final_names = rest("final");
        } else if (kw == "succ") {
            auto fields = split_fields(toks, 1, lineno);
            if (fields.size() != 4)
                throw parse_error("line " + std::to_string(lineno) + ": succ needs 4 fields",
                                  lineno);
            raw_succs.push_back({fields[0], fields[1], fields[2], fields[3], lineno});
        } else if (kw == "llim" || kw == "rlim") {
            auto fields = split_fields(toks, 1, lineno);
            if (fields.size() != 2)
                throw parse_error("line " + std::to_string(lineno) + ": " + kw + " needs 2 fields",
                                  lineno);
            bool is_left = kw == "llim";
            raw_limits.push_back({is_left ? fields[0] : fields[1],
                                  is_left ? fields[1] : fields[0], is_left, lineno});
        } else {
            throw parse_error("line " + std::to_string(lineno) + ": unknown directive '" + kw + "'",
                              lineno);
        }
    }

    if (!in) throw parse_error("missing alphabet_in", 0);
    if (!out) throw parse_error("missing alphabet_out", 0);
    if (state_names.empty()) throw parse_error("missing states", 0);

    transducer a(state_names, *in, *out);
    auto state_of = [&](const std::string& name, int ln) {
        auto i = a.state_index(name);
        if (!i)
            throw parse_error("line " + std::to_string(ln) + ": unknown state '" + name + "'", ln);
        return *i;
    };
    auto in_letter = [&](const std::string& name, int ln) {
        auto i = in->index_of(name);
        if (!i)
            throw parse_error("line " + std::to_string(ln) + ": unknown input letter '" + name + "'",
                              ln);
        return *i;
    };

    for (const auto& n : initial_names) a.set_initial(state_of(n, 0));
    for (const auto& n : final_names) a.set_final(state_of(n, 0));

    for (const auto& s : raw_succs) {
        int p = state_of(s.p, s.line), q = state_of(s.q, s.line);
        std::vector<int> ins;
        if (s.a == "-")
            for (int i = 0; i < in->size(); ++i) ins.push_back(i);
        else
            ins.push_back(in_letter(s.a, s.line));
        for (int i : ins) {
            int o;
            if (s.b == "-") {
                auto oi = out->index_of(in->at(i).name());
                if (!oi)
                    throw parse_error("line " + std::to_string(s.line) + ": input letter " +
                                          in->at(i).name() + " has no output counterpart",
                                      s.line);
                o = *oi;
            } else {
                auto oi = out->index_of(s.b);
                if (!oi)
                    throw parse_error("line " + std::to_string(s.line) + ": unknown output letter '" +
                                          s.b + "'",
                                      s.line);
                o = *oi;
            }
            a.add_successor(p, i, o, q);
        }
    }

    auto table = std::make_shared<limit_table>();
    for (const auto& l : raw_limits) {
        const std::string& st = l.set_tok;
        if (st.size() < 2 || st.front() != '{' || st.back() != '}')
            throw parse_error("line " + std::to_string(l.line) + ": expected state set", l.line);
        state_set set(a.state_count());
        for (const auto& n : split_commas(st.substr(1, st.size() - 2))) {
            std::string name = n;
            while (!name.empty() && name.front() == ' ') name.erase(name.begin());
            while (!name.empty() && name.back() == ' ') name.pop_back();
            set.set(state_of(name, l.line));
        }
        if (set.none())
            throw parse_error("line " + std::to_string(l.line) + ": empty limit set", l.line);
        int q = state_of(l.state_tok, l.line);
        std::vector<bool> key;
        for (int i = 0; i < a.state_count(); ++i) key.push_back(set.test(i));
        auto& tgt = l.is_left ? table->left : table->right;
        auto [it, fresh] = tgt.try_emplace(key, state_set(a.state_count()));
        (void)fresh;
        it->second.set(q);
    }
    a.set_left_limit([table](const state_set& P, int q) {
        std::vector<bool> key;
        for (int i = 0; i < P.universe(); ++i) key.push_back(P.test(i));
        auto it = table->left.find(key);
        return it != table->left.end() && it->second.test(q);
    });
    a.set_right_limit([table](int q, const state_set& P) {
        std::vector<bool> key;
        for (int i = 0; i < P.universe(); ++i) key.push_back(P.test(i));
        auto it = table->right.find(key);
        return it != table->right.end() && it->second.test(q);
    });
    return a;
}

transducer load_automaton_file(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw io_error("cannot open " + path);
    std::ostringstream buf;
    buf << f.rdbuf();
    return parse_automaton(buf.str());
}

namespace {

// Enumerates every nonempty subset in mask order.
template <typename Fn>
void for_each_subset(int n, Fn fn) {
    for (unsigned long mask = 1; mask < (1ul << n); ++mask) {
        state_set s(n);
        for (int i = 0; i < n; ++i)
            if ((mask >> i) & 1) s.set(i);
        fn(s);
    }
}

std::string set_name(const transducer& a, const state_set& s) {
    std::string out = "{";
    bool first = true;
    for (int q : s.members()) {
        if (!first) out += ',';
        out += a.state_name(q);
        first = false;
    }
    out += '}';
    return out;
}

void check_expandable(const transducer& a, int max_expand_states, const char* what) {
    if (a.state_count() > max_expand_states)
        throw resource_error(std::string(what) + " needs to enumerate state subsets, and " +
                             std::to_string(a.state_count()) + " states exceed the limit of " +
                             std::to_string(max_expand_states));
}

}  // namespace

std::string save_automaton(const transducer& a, int max_expand_states) {
    check_expandable(a, max_expand_states, "saving limit transitions");
    std::ostringstream out;
    out << "alphabet_in";
    for (const auto& l : a.input_alphabet().letters()) out << ' ' << l.name();
    out << "\nalphabet_out";
    for (const auto& l : a.output_alphabet().letters()) out << ' ' << l.name();
    out << "\nstates";
    for (const auto& n : a.state_names()) out << ' ' << n;
    out << "\ninitial";
    for (int q : a.initial().members()) out << ' ' << a.state_name(q);
    out << "\nfinal";
    for (int q : a.final_states().members()) out << ' ' << a.state_name(q);
    out << '\n';
    for (const auto& t : a.successors())
        out << "succ " << a.state_name(t.src) << " ; " << a.input_alphabet().at(t.in).name()
            << " ; " << a.output_alphabet().at(t.out).name() << " ; " << a.state_name(t.dst)
            << '\n';
    for_each_subset(a.state_count(), [&](const state_set& P) {
        for (int q = 0; q < a.state_count(); ++q)
            if (a.left_limit(P, q)) out << "llim " << set_name(a, P) << " ; " << a.state_name(q) << '\n';
    });
    for_each_subset(a.state_count(), [&](const state_set& P) {
        for (int q = 0; q < a.state_count(); ++q)
            if (a.right_limit(q, P)) out << "rlim " << a.state_name(q) << " ; " << set_name(a, P) << '\n';
    });
    return out.str();
}

bool transducer_equal_expanded(const transducer& a, const transducer& b, int max_expand_states) {
    if (a.state_names() != b.state_names()) return false;
    auto letter_names = [](const alphabet& al) {
        std::vector<std::string> ns;
        for (const auto& l : al.letters()) ns.push_back(l.name());
        return ns;
    };
    if (letter_names(a.input_alphabet()) != letter_names(b.input_alphabet())) return false;
    if (letter_names(a.output_alphabet()) != letter_names(b.output_alphabet())) return false;
    if (!(a.initial() == b.initial()) || !(a.final_states() == b.final_states())) return false;
    auto succ_set = [](const transducer& t) {
        std::vector<std::tuple<int, int, int, int>> v;
        for (const auto& s : t.successors()) v.emplace_back(s.src, s.in, s.out, s.dst);
        std::sort(v.begin(), v.end());
        return v;
    };
    if (succ_set(a) != succ_set(b)) return false;
    check_expandable(a, max_expand_states, "comparing limit transitions");
    bool same = true;
    for_each_subset(a.state_count(), [&](const state_set& P) {
        for (int q = 0; q < a.state_count() && same; ++q) {
            if (a.left_limit(P, q) != b.left_limit(P, q)) same = false;
            if (a.right_limit(q, P) != b.right_limit(q, P)) same = false;
        }
    });
    return same;
}

}  // namespace lotl
