#include "lotl/formula.hpp"

#include <algorithm>
#include <cctype>

namespace lotl {

formula formula::atom(const std::string& name) {
    auto n = std::make_shared<node>();
    n->k = kind::atom;
    n->name = name;
    return formula(std::move(n));
}

formula formula::tru() {
    auto n = std::make_shared<node>();
    n->k = kind::tru;
    return formula(std::move(n));
}

formula formula::fls() {
    auto n = std::make_shared<node>();
    n->k = kind::fls;
    return formula(std::move(n));
}

formula formula::make(kind k, std::vector<formula> kids) {
    auto n = std::make_shared<node>();
    n->k = k;
    n->kids = std::move(kids);
    return formula(std::move(n));
}

formula formula::lnot(const formula& f) { return make(kind::lnot, {f}); }
formula formula::next(const formula& f) { return make(kind::next, {f}); }
formula formula::prev(const formula& f) { return make(kind::prev, {f}); }
formula formula::eventually(const formula& f) { return make(kind::eventually, {f}); }
formula formula::always(const formula& f) { return make(kind::always, {f}); }
formula formula::once(const formula& f) { return make(kind::once, {f}); }
formula formula::historically(const formula& f) { return make(kind::historically, {f}); }

formula formula::lor(const formula& l, const formula& r) { return make(kind::lor, {l, r}); }
formula formula::land(const formula& l, const formula& r) { return make(kind::land, {l, r}); }
formula formula::implies(const formula& l, const formula& r) { return make(kind::implies, {l, r}); }
formula formula::until(const formula& l, const formula& r) { return make(kind::until, {l, r}); }
formula formula::since(const formula& l, const formula& r) { return make(kind::since, {l, r}); }
formula formula::stavi_until(const formula& l, const formula& r) { return make(kind::stavi_until, {l, r}); }
formula formula::stavi_since(const formula& l, const formula& r) { return make(kind::stavi_since, {l, r}); }
formula formula::until_ns(const formula& l, const formula& r) { return make(kind::until_ns, {l, r}); }

const std::string& formula::atom_name() const {
    if (rep_->k != kind::atom) throw shape_error("not an atom");
    return rep_->name;
}

const formula& formula::left() const {
    if (rep_->kids.empty()) throw shape_error("formula node has no operands");
    return rep_->kids[0];
}

const formula& formula::right() const {
    if (rep_->kids.size() < 2) throw shape_error("formula node has no right operand");
    return rep_->kids[1];
}

bool formula::is_core() const {
    switch (rep_->k) {
        case kind::atom: case kind::tru: case kind::fls: break;
        case kind::lnot: case kind::lor:
        case kind::until: case kind::since:
        case kind::stavi_until: case kind::stavi_since: break;
        default: return false;
    }
    for (const auto& k : rep_->kids)
        if (!k.is_core()) return false;
    return true;
}

bool formula::operator==(const formula& o) const {
    if (rep_ == o.rep_) return true;
    if (rep_->k != o.rep_->k || rep_->name != o.rep_->name) return false;
    if (rep_->kids.size() != o.rep_->kids.size()) return false;
    for (std::size_t i = 0; i < rep_->kids.size(); ++i)
        if (rep_->kids[i] != o.rep_->kids[i]) return false;
    return true;
}

namespace {

void collect_atoms(const formula& f, std::set<std::string>& out) {
    if (f.node_kind() == formula::kind::atom) {
        out.insert(f.atom_name());
        return;
    }
    switch (f.node_kind()) {
        case formula::kind::tru: case formula::kind::fls: return;
        case formula::kind::lnot: case formula::kind::next:
        case formula::kind::prev: case formula::kind::eventually:
        case formula::kind::always: case formula::kind::once:
        case formula::kind::historically:
            collect_atoms(f.left(), out);
            return;
        default:
            collect_atoms(f.left(), out);
            collect_atoms(f.right(), out);
            return;
    }
}

}  // namespace

std::vector<std::string> formula::atoms() const {
    std::set<std::string> s;
    collect_atoms(*this, s);
    return {s.begin(), s.end()};
}

int formula::connective_count() const {
    switch (rep_->k) {
        case kind::atom: case kind::tru: case kind::fls: return 0;
        default: {
            int n = 1;
            for (const auto& k : rep_->kids) n += k.connective_count();
            return n;
        }
    }
}

// --- parsing ---

namespace {

struct formula_parser {
    const std::string& s;
    std::size_t pos = 0;

    explicit formula_parser(const std::string& text) : s(text) {}

    void skip_ws() {
        while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos]))) ++pos;
    }

    [[noreturn]] void fail(const std::string& msg) { throw parse_error(msg, pos); }

    bool try_consume(const std::string& tok) {
        skip_ws();
        if (s.compare(pos, tok.size(), tok) != 0) return false;
        // Word tokens must not run into an identifier tail.
        if (std::isalpha(static_cast<unsigned char>(tok[0]))) {
            std::size_t end = pos + tok.size();
            if (end < s.size() &&
                (std::isalnum(static_cast<unsigned char>(s[end])) || s[end] == '_' ||
                 s[end] == '\''))
                return false;
        }
        pos += tok.size();
        return true;
    }

    formula parse_implies() {
        formula l = parse_or();
        if (try_consume("->")) return formula::implies(l, parse_implies());
        return l;
    }

    formula parse_or() {
        formula l = parse_and();
        while (true) {
            skip_ws();
            // Don't eat the '|' of '->' lookalikes; '|' is a single char so safe.
            if (pos < s.size() && s[pos] == '|') {
                ++pos;
                l = formula::lor(l, parse_and());
            } else {
                return l;
            }
        }
    }

    formula parse_and() {
        formula l = parse_temporal();
        while (try_consume("&")) l = formula::land(l, parse_temporal());
        return l;
    }

    formula parse_temporal() {
        formula l = parse_unary();
        skip_ws();
        if (try_consume("Uns")) return formula::until_ns(l, parse_temporal());
        if (try_consume("U'")) return formula::stavi_until(l, parse_temporal());
        if (try_consume("S'")) return formula::stavi_since(l, parse_temporal());
        if (try_consume("U")) return formula::until(l, parse_temporal());
        if (try_consume("S")) return formula::since(l, parse_temporal());
        return l;
    }

    formula parse_unary() {
        skip_ws();
        if (try_consume("!")) return formula::lnot(parse_unary());
        if (try_consume("X")) return formula::next(parse_unary());
        if (try_consume("F")) return formula::eventually(parse_unary());
        if (try_consume("G")) return formula::always(parse_unary());
        if (try_consume("Y")) return formula::prev(parse_unary());
        if (try_consume("O")) return formula::once(parse_unary());
        if (try_consume("H")) return formula::historically(parse_unary());
        return parse_primary();
    }

    formula parse_primary() {
        skip_ws();
        if (try_consume("(")) {
            formula f = parse_implies();
            if (!try_consume(")")) fail("expected ')'");
            return f;
        }
        if (try_consume("true")) return formula::tru();
        if (try_consume("false")) return formula::fls();
        if (pos < s.size() && std::islower(static_cast<unsigned char>(s[pos]))) {
            std::size_t start = pos;
            ++pos;
            while (pos < s.size() &&
                   (std::islower(static_cast<unsigned char>(s[pos])) ||
                    std::isdigit(static_cast<unsigned char>(s[pos])) || s[pos] == '_'))
                ++pos;
            return formula::atom(s.substr(start, pos - start));
        }
        fail("expected formula");
    }
};

}  // namespace

formula parse_formula(const std::string& text) {
    formula_parser p(text);
    p.skip_ws();
    if (p.pos >= text.size()) p.fail("empty formula");
    formula f = p.parse_implies();
    p.skip_ws();
    if (p.pos < text.size()) p.fail("unexpected trailing input");
    return f;
}

// --- rendering ---

namespace {

// Binding strength, loosest first. Unary operators are tightest.
enum level { lv_implies = 0, lv_or, lv_and, lv_temporal, lv_unary, lv_primary };

int level_of(const formula& f) {
    switch (f.node_kind()) {
        case formula::kind::implies: return lv_implies;
        case formula::kind::lor: return lv_or;
        case formula::kind::land: return lv_and;
        case formula::kind::until: case formula::kind::since:
        case formula::kind::stavi_until: case formula::kind::stavi_since:
        case formula::kind::until_ns:
            return lv_temporal;
        case formula::kind::lnot: case formula::kind::next:
        case formula::kind::prev: case formula::kind::eventually:
        case formula::kind::always: case formula::kind::once:
        case formula::kind::historically:
            return lv_unary;
        default: return lv_primary;
    }
}

const char* binary_token(formula::kind k) {
    switch (k) {
        case formula::kind::implies: return "->";
        case formula::kind::lor: return "|";
        case formula::kind::land: return "&";
        case formula::kind::until: return "U";
        case formula::kind::since: return "S";
        case formula::kind::stavi_until: return "U'";
        case formula::kind::stavi_since: return "S'";
        case formula::kind::until_ns: return "Uns";
        default: return nullptr;
    }
}

const char* unary_token(formula::kind k) {
    switch (k) {
        case formula::kind::lnot: return "!";
        case formula::kind::next: return "X";
        case formula::kind::prev: return "Y";
        case formula::kind::eventually: return "F";
        case formula::kind::always: return "G";
        case formula::kind::once: return "O";
        case formula::kind::historically: return "H";
        default: return nullptr;
    }
}

void render(const formula& f, int min_level, std::string& out) {
    int lv = level_of(f);
    bool parens = lv < min_level;
    if (parens) out += '(';
    switch (lv) {
        case lv_primary:
            switch (f.node_kind()) {
                case formula::kind::atom: out += f.atom_name(); break;
                case formula::kind::tru: out += "true"; break;
                default: out += "false"; break;
            }
            break;
        case lv_unary: {
            const char* tok = unary_token(f.node_kind());
            out += tok;
            if (std::isalpha(static_cast<unsigned char>(tok[0]))) out += ' ';
            render(f.left(), lv_unary, out);
            break;
        }
        default: {
            // Binary connectives associate to the right; -> and the temporal
            // operators are rendered at level+1 on the left so a same-level
            // left child gets parenthesized. & and | are associative, either
            // grouping reads back identically, but we keep the same rule so
            // rendering is deterministic over the tree shape.
            render(f.left(), lv + 1, out);
            out += ' ';
            out += binary_token(f.node_kind());
            out += ' ';
            render(f.right(), lv, out);
            break;
        }
    }
    if (parens) out += ')';
}

}  // namespace

std::string render_formula(const formula& f) {
    std::string out;
    render(f, lv_implies, out);
    return out;
}

// --- desugaring ---

formula desugar(const formula& f) {
    using k = formula::kind;
    switch (f.node_kind()) {
        case k::atom: case k::tru: case k::fls: return f;
        case k::lnot: return formula::lnot(desugar(f.left()));
        case k::lor: return formula::lor(desugar(f.left()), desugar(f.right()));
        case k::until: return formula::until(desugar(f.left()), desugar(f.right()));
        case k::since: return formula::since(desugar(f.left()), desugar(f.right()));
        case k::stavi_until:
            return formula::stavi_until(desugar(f.left()), desugar(f.right()));
        case k::stavi_since:
            return formula::stavi_since(desugar(f.left()), desugar(f.right()));
        case k::land: {
            formula l = desugar(f.left()), r = desugar(f.right());
            return formula::lnot(formula::lor(formula::lnot(l), formula::lnot(r)));
        }
        case k::implies:
            return formula::lor(formula::lnot(desugar(f.left())), desugar(f.right()));
        case k::next: return formula::until(formula::fls(), desugar(f.left()));
        case k::prev: return formula::since(formula::fls(), desugar(f.left()));
        case k::eventually: {
            formula a = desugar(f.left());
            return formula::lor(a, formula::until(formula::tru(), a));
        }
        case k::once: {
            formula a = desugar(f.left());
            return formula::lor(a, formula::since(formula::tru(), a));
        }
        case k::always:
            return desugar(formula::lnot(formula::eventually(formula::lnot(f.left()))));
        case k::historically:
            return desugar(formula::lnot(formula::once(formula::lnot(f.left()))));
        case k::until_ns:
            return desugar(formula::lor(
                f.right(), formula::land(f.left(), formula::until(f.left(), f.right()))));
    }
    throw shape_error("unreachable");
}

}  // namespace lotl
