#include "lotl/words.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <set>
#include <sstream>

namespace lotl {

namespace {

std::string bits_name(const std::vector<bool>& bs) {
    if (bs.size() == 1) return bs[0] ? "1" : "0";
    std::string s = "<";
    for (std::size_t i = 0; i < bs.size(); ++i) {
        if (i) s += ',';
        s += bs[i] ? '1' : '0';
    }
    s += '>';
    return s;
}

std::string props_name(const std::vector<std::string>& ps) {
    std::string s = "{";
    for (std::size_t i = 0; i < ps.size(); ++i) {
        if (i) s += ',';
        s += ps[i];
    }
    s += '}';
    return s;
}

}  // namespace

letter letter::bit(bool b) { return bits({b}); }

letter letter::bits(const std::vector<bool>& bs) {
    if (bs.empty()) throw shape_error("a bit-tuple letter needs at least one bit");
    auto n = std::make_shared<node>();
    n->k = kind::bits;
    n->bs = bs;
    n->name = bits_name(bs);
    return letter(std::move(n));
}

letter letter::props(std::vector<std::string> names) {
    std::sort(names.begin(), names.end());
    names.erase(std::unique(names.begin(), names.end()), names.end());
    auto n = std::make_shared<node>();
    n->k = kind::props;
    n->ps = std::move(names);
    n->name = props_name(n->ps);
    return letter(std::move(n));
}

letter letter::join(const letter& a, const letter& b) {
    if (a.rep_->k == kind::bits && b.rep_->k == kind::bits) {
        std::vector<bool> bs = a.rep_->bs;
        bs.insert(bs.end(), b.rep_->bs.begin(), b.rep_->bs.end());
        return bits(bs);
    }
    auto n = std::make_shared<node>();
    n->k = kind::pair;
    n->left = a.rep_;
    n->right = b.rep_;
    n->name = "(" + a.name() + "," + b.name() + ")";
    return letter(std::move(n));
}

bool letter::is_bits() const { return rep_->k == kind::bits; }

const std::vector<bool>& letter::as_bits() const {
    if (!is_bits()) throw shape_error("letter " + name() + " is not a bit tuple");
    return rep_->bs;
}

bool letter::is_props() const { return rep_->k == kind::props; }

const std::vector<std::string>& letter::as_props() const {
    if (!is_props()) throw shape_error("letter " + name() + " is not a proposition set");
    return rep_->ps;
}

bool letter::first_bit() const {
    const node* n = rep_.get();
    while (n->k == kind::pair) n = n->left.get();
    if (n->k != kind::bits)
        throw shape_error("letter " + name() + " has no leading bit");
    return n->bs[0];
}

alphabet::alphabet(std::vector<letter> letters) : letters_(std::move(letters)) {
    std::set<std::string> seen;
    for (const auto& l : letters_)
        if (!seen.insert(l.name()).second)
            throw shape_error("duplicate letter " + l.name() + " in alphabet");
}

alphabet alphabet::bit_tuples(int k) {
    std::vector<letter> ls;
    for (int mask = 0; mask < (1 << k); ++mask) {
        std::vector<bool> bs(k);
        for (int i = 0; i < k; ++i) bs[i] = (mask >> (k - 1 - i)) & 1;
        ls.push_back(letter::bits(bs));
    }
    return alphabet(std::move(ls));
}

alphabet alphabet::power_set(const std::vector<std::string>& props) {
    std::vector<std::string> ps = props;
    std::sort(ps.begin(), ps.end());
    ps.erase(std::unique(ps.begin(), ps.end()), ps.end());
    std::vector<letter> ls;
    for (std::size_t mask = 0; mask < (std::size_t{1} << ps.size()); ++mask) {
        std::vector<std::string> subset;
        for (std::size_t i = 0; i < ps.size(); ++i)
            if ((mask >> i) & 1) subset.push_back(ps[i]);
        ls.push_back(letter::props(subset));
    }
    return alphabet(std::move(ls));
}

alphabet alphabet::join(const alphabet& a, const alphabet& b) {
    std::vector<letter> ls;
    ls.reserve(static_cast<std::size_t>(a.size()) * b.size());
    for (const auto& x : a.letters())
        for (const auto& y : b.letters()) ls.push_back(letter::join(x, y));
    return alphabet(std::move(ls));
}

std::optional<int> alphabet::index_of(const letter& l) const {
    return index_of(l.name());
}

std::optional<int> alphabet::index_of(const std::string& name) const {
    for (int i = 0; i < size(); ++i)
        if (letters_[i].name() == name) return i;
    return std::nullopt;
}

bool alphabet::same_letters(const alphabet& o) const {
    if (size() != o.size()) return false;
    std::set<std::string> a, b;
    for (const auto& l : letters_) a.insert(l.name());
    for (const auto& l : o.letters()) b.insert(l.name());
    return a == b;
}

word_term word_term::empty() {
    auto n = std::make_shared<node>();
    n->k = kind::empty;
    return word_term(std::move(n));
}

word_term word_term::lit(const letter& l) {
    auto n = std::make_shared<node>();
    n->k = kind::lit;
    n->l = l;
    return word_term(std::move(n));
}

word_term word_term::concat(const word_term& l, const word_term& r) {
    auto n = std::make_shared<node>();
    n->k = kind::concat;
    n->kids = {l, r};
    return word_term(std::move(n));
}

word_term word_term::concat_all(const std::vector<word_term>& parts) {
    if (parts.empty()) return empty();
    word_term acc = parts[0];
    for (std::size_t i = 1; i < parts.size(); ++i) acc = concat(acc, parts[i]);
    return acc;
}

word_term word_term::omega(const word_term& body) {
    if (!body.denotes_nonempty())
        throw shape_error("omega power of a term denoting the empty word");
    auto n = std::make_shared<node>();
    n->k = kind::omega;
    n->kids = {body};
    return word_term(std::move(n));
}

word_term word_term::neg_omega(const word_term& body) {
    if (!body.denotes_nonempty())
        throw shape_error("minus-omega power of a term denoting the empty word");
    auto n = std::make_shared<node>();
    n->k = kind::neg_omega;
    n->kids = {body};
    return word_term(std::move(n));
}

word_term word_term::shuffle(const std::vector<word_term>& bodies) {
    if (bodies.empty()) throw shape_error("shuffle needs at least one body");
    for (const auto& b : bodies)
        if (!b.denotes_nonempty())
            throw shape_error("shuffle body denotes the empty word");
    auto n = std::make_shared<node>();
    n->k = kind::shuffle;
    n->kids = bodies;
    return word_term(std::move(n));
}

bool word_term::denotes_nonempty() const {
    switch (rep_->k) {
        case kind::empty: return false;
        case kind::lit: return true;
        case kind::concat: return left().denotes_nonempty() || right().denotes_nonempty();
        case kind::omega:
        case kind::neg_omega:
        case kind::shuffle: return true;
    }
    return false;
}

bool word_term::contains_shuffle() const {
    switch (rep_->k) {
        case kind::empty:
        case kind::lit: return false;
        case kind::shuffle: return true;
        default:
            for (const auto& k : rep_->kids)
                if (k.contains_shuffle()) return true;
            return false;
    }
}

bool word_term::operator==(const word_term& o) const {
    if (rep_ == o.rep_) return true;
    if (rep_->k != o.rep_->k) return false;
    switch (rep_->k) {
        case kind::empty: return true;
        case kind::lit: return rep_->l == o.rep_->l;
        default:
            if (rep_->kids.size() != o.rep_->kids.size()) return false;
            for (std::size_t i = 0; i < rep_->kids.size(); ++i)
                if (!(rep_->kids[i] == o.rep_->kids[i])) return false;
            return true;
    }
}

word_term reverse_term(const word_term& t) {
    switch (t.node_kind()) {
        case word_term::kind::empty:
        case word_term::kind::lit: return t;
        case word_term::kind::concat:
            return word_term::concat(reverse_term(t.right()), reverse_term(t.left()));
        case word_term::kind::omega:
            return word_term::neg_omega(reverse_term(t.body()));
        case word_term::kind::neg_omega:
            return word_term::omega(reverse_term(t.body()));
        case word_term::kind::shuffle: {
            std::vector<word_term> bs;
            for (const auto& b : t.bodies()) bs.push_back(reverse_term(b));
            return word_term::shuffle(bs);
        }
    }
    throw shape_error("unreachable");
}

namespace {

void collect_finite(const word_term& t, finite_word& out) {
    switch (t.node_kind()) {
        case word_term::kind::empty: return;
        case word_term::kind::lit: out.push_back(t.lit_letter()); return;
        case word_term::kind::concat:
            collect_finite(t.left(), out);
            collect_finite(t.right(), out);
            return;
        default:
            throw shape_error("term denotes an infinite word");
    }
}

}  // namespace

finite_word to_finite(const word_term& t) {
    finite_word w;
    collect_finite(t, w);
    return w;
}

word_term from_finite(const finite_word& w) {
    std::vector<word_term> parts;
    parts.reserve(w.size());
    for (const auto& l : w) parts.push_back(word_term::lit(l));
    return word_term::concat_all(parts);
}

word_term zip_terms(const word_term& a, const word_term& b) {
    if (a.node_kind() != b.node_kind())
        throw shape_error("zip: term shapes differ");
    switch (a.node_kind()) {
        case word_term::kind::empty: return a;
        case word_term::kind::lit:
            return word_term::lit(letter::join(a.lit_letter(), b.lit_letter()));
        case word_term::kind::concat:
            return word_term::concat(zip_terms(a.left(), b.left()),
                                     zip_terms(a.right(), b.right()));
        case word_term::kind::omega:
            return word_term::omega(zip_terms(a.body(), b.body()));
        case word_term::kind::neg_omega:
            return word_term::neg_omega(zip_terms(a.body(), b.body()));
        case word_term::kind::shuffle: {
            if (a.bodies().size() != b.bodies().size())
                throw shape_error("zip: shuffle arities differ");
            std::vector<word_term> bs;
            for (std::size_t i = 0; i < a.bodies().size(); ++i)
                bs.push_back(zip_terms(a.bodies()[i], b.bodies()[i]));
            return word_term::shuffle(bs);
        }
    }
    throw shape_error("unreachable");
}

// --- concrete syntax ---

namespace {

struct term_parser {
    const std::string& s;
    std::size_t pos = 0;

    explicit term_parser(const std::string& text) : s(text) {}

    void skip_ws() {
        while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos]))) ++pos;
    }

    [[nodiscard]] bool at_end() {
        skip_ws();
        return pos >= s.size();
    }

    [[nodiscard]] char peek() { return pos < s.size() ? s[pos] : '\0'; }

    bool try_consume(const std::string& tok) {
        skip_ws();
        if (s.compare(pos, tok.size(), tok) == 0) {
            pos += tok.size();
            return true;
        }
        return false;
    }

    [[noreturn]] void fail(const std::string& msg) { throw parse_error(msg, pos); }

    std::string parse_ident() {
        skip_ws();
        std::size_t start = pos;
        if (pos >= s.size() || !std::islower(static_cast<unsigned char>(s[pos])))
            fail("expected identifier");
        ++pos;
        while (pos < s.size() &&
               (std::islower(static_cast<unsigned char>(s[pos])) ||
                std::isdigit(static_cast<unsigned char>(s[pos])) || s[pos] == '_'))
            ++pos;
        return s.substr(start, pos - start);
    }

    letter parse_letter() {
        skip_ws();
        if (try_consume("{")) {
            std::vector<std::string> ps;
            skip_ws();
            if (!try_consume("}")) {
                ps.push_back(parse_ident());
                while (try_consume(",")) ps.push_back(parse_ident());
                if (!try_consume("}")) fail("expected '}'");
            }
            return letter::props(ps);
        }
        if (try_consume("<")) {
            std::vector<bool> bs;
            do {
                skip_ws();
                if (peek() == '0') bs.push_back(false);
                else if (peek() == '1') bs.push_back(true);
                else fail("expected bit");
                ++pos;
            } while (try_consume(","));
            if (!try_consume(">")) fail("expected '>'");
            return letter::bits(bs);
        }
        if (peek() == '0' || peek() == '1') {
            bool b = peek() == '1';
            ++pos;
            return letter::bit(b);
        }
        fail("expected letter");
    }

    [[nodiscard]] bool starts_factor() {
        skip_ws();
        char c = peek();
        return c == '{' || c == '<' || c == '0' || c == '1' || c == '(' ||
               (c == 's' && s.compare(pos, 3, "sh(") == 0);
    }

    word_term parse_primary() {
        skip_ws();
        if (s.compare(pos, 3, "sh(") == 0) {
            pos += 3;
            std::vector<word_term> bodies;
            bodies.push_back(parse_term());
            while (try_consume(",")) bodies.push_back(parse_term());
            if (!try_consume(")")) fail("expected ')'");
            return word_term::shuffle(bodies);
        }
        if (try_consume("(")) {
            word_term t = parse_term();
            if (!try_consume(")")) fail("expected ')'");
            return t;
        }
        return word_term::lit(parse_letter());
    }

    word_term parse_factor() {
        word_term p = parse_primary();
        skip_ws();
        if (s.compare(pos, 3, "^-w") == 0) {
            pos += 3;
            return word_term::neg_omega(p);
        }
        if (s.compare(pos, 2, "^w") == 0) {
            pos += 2;
            return word_term::omega(p);
        }
        return p;
    }

    word_term parse_term() {
        std::vector<word_term> factors;
        while (starts_factor()) factors.push_back(parse_factor());
        return word_term::concat_all(factors);
    }
};

void print_term(const word_term& t, std::string& out);

void print_factor(const word_term& t, std::string& out, const char* suffix) {
    if (t.node_kind() == word_term::kind::lit) {
        out += t.lit_letter().name();
    } else {
        out += '(';
        print_term(t, out);
        out += ')';
    }
    out += suffix;
}

void print_term(const word_term& t, std::string& out) {
    switch (t.node_kind()) {
        case word_term::kind::empty: return;
        case word_term::kind::lit: out += t.lit_letter().name(); return;
        case word_term::kind::concat: {
            std::string l, r;
            print_term(t.left(), l);
            print_term(t.right(), r);
            out += l;
            if (!l.empty() && !r.empty()) out += ' ';
            out += r;
            return;
        }
        case word_term::kind::omega: print_factor(t.body(), out, "^w"); return;
        case word_term::kind::neg_omega: print_factor(t.body(), out, "^-w"); return;
        case word_term::kind::shuffle: {
            out += "sh(";
            for (std::size_t i = 0; i < t.bodies().size(); ++i) {
                if (i) out += ", ";
                print_term(t.bodies()[i], out);
            }
            out += ')';
            return;
        }
    }
}

}  // namespace

word_term parse_word_term(const std::string& text) {
    term_parser p(text);
    word_term t = p.parse_term();
    if (!p.at_end()) p.fail("unexpected trailing input");
    return t;
}

std::string print_word_term(const word_term& t) {
    std::string out;
    print_term(t, out);
    return out;
}

// --- normalization ---

namespace {

// Flattens nested concatenations into a factor list, dropping empty units.
void flatten(const word_term& t, std::vector<word_term>& out) {
    switch (t.node_kind()) {
        case word_term::kind::empty: return;
        case word_term::kind::concat:
            flatten(t.left(), out);
            flatten(t.right(), out);
            return;
        default: out.push_back(t); return;
    }
}

std::optional<finite_word> try_finite(const word_term& t) {
    try {
        return to_finite(t);
    } catch (const shape_error&) {
        return std::nullopt;
    }
}

finite_word primitive_period(const finite_word& w) {
    for (std::size_t p = 1; p < w.size(); ++p) {
        if (w.size() % p) continue;
        bool ok = true;
        for (std::size_t i = p; i < w.size() && ok; ++i) ok = w[i] == w[i % p];
        if (ok) return finite_word(w.begin(), w.begin() + static_cast<long>(p));
    }
    return w;
}

}  // namespace

word_term normalize_word_term(const word_term& t) {
    using kind = word_term::kind;
    switch (t.node_kind()) {
        case kind::empty:
        case kind::lit: return t;
        case kind::omega:
        case kind::neg_omega: {
            word_term body = normalize_word_term(t.body());
            if (auto fin = try_finite(body)) body = from_finite(primitive_period(*fin));
            return t.node_kind() == kind::omega ? word_term::omega(body)
                                                : word_term::neg_omega(body);
        }
        case kind::shuffle: {
            std::vector<word_term> bodies;
            for (const auto& b : t.bodies()) bodies.push_back(normalize_word_term(b));
            std::sort(bodies.begin(), bodies.end(),
                      [](const word_term& a, const word_term& b) {
                          return print_word_term(a) < print_word_term(b);
                      });
            bodies.erase(std::unique(bodies.begin(), bodies.end()), bodies.end());
            return word_term::shuffle(bodies);
        }
        case kind::concat: break;
    }

    std::vector<word_term> factors;
    flatten(t, factors);
    for (auto& f : factors) f = normalize_word_term(f);

    // Absorb letters into the open side of an adjacent power: x w^w == w^w
    // when x matches the tail of w cyclically, and mirrored for w^-w x.
    std::vector<word_term> out;
    for (const auto& f : factors) {
        if (f.node_kind() == kind::omega) {
            if (auto period = try_finite(f.body()); period && !period->empty()) {
                finite_word p = *period;
                while (!out.empty() && out.back().node_kind() == kind::lit &&
                       out.back().lit_letter() == p.back()) {
                    out.pop_back();
                    std::rotate(p.begin(), p.end() - 1, p.end());
                }
                out.push_back(word_term::omega(from_finite(primitive_period(p))));
                continue;
            }
        }
        out.push_back(f);
    }
    std::vector<word_term> out2;
    for (auto it = out.rbegin(); it != out.rend(); ++it) {
        const word_term& f = *it;
        if (f.node_kind() == kind::neg_omega) {
            if (auto period = try_finite(f.body()); period && !period->empty()) {
                finite_word p = *period;
                while (!out2.empty() && out2.back().node_kind() == kind::lit &&
                       out2.back().lit_letter() == p.front()) {
                    out2.pop_back();
                    std::rotate(p.begin(), p.begin() + 1, p.end());
                }
                out2.push_back(word_term::neg_omega(from_finite(primitive_period(p))));
                continue;
            }
        }
        out2.push_back(f);
    }
    std::reverse(out2.begin(), out2.end());
    return word_term::concat_all(out2);
}

}  // namespace lotl
