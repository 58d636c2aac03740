#include "lotl/oracle.hpp"

#include <algorithm>
#include <functional>
#include <limits>
#include <numeric>
#include <ostream>
#include <random>

#include "lotl/construction.hpp"
#include "lotl/runs.hpp"

namespace lotl {

namespace {

bool letter_holds(const letter& l, const std::string& prop) {
    const auto& ps = l.as_props();
    return std::find(ps.begin(), ps.end(), prop) != ps.end();
}

}  // namespace

std::vector<bool> eval_finite(const formula& f, const finite_word& w) {
    if (!f.is_core()) return eval_finite(desugar(f), w);
    std::size_t n = w.size();
    std::vector<bool> v(n);
    using k = formula::kind;
    switch (f.node_kind()) {
        case k::atom:
            for (std::size_t i = 0; i < n; ++i) v[i] = letter_holds(w[i], f.atom_name());
            return v;
        case k::tru: return std::vector<bool>(n, true);
        case k::fls: return v;
        case k::lnot: {
            v = eval_finite(f.left(), w);
            v.flip();
            return v;
        }
        case k::lor: {
            v = eval_finite(f.left(), w);
            auto r = eval_finite(f.right(), w);
            for (std::size_t i = 0; i < n; ++i) v[i] = v[i] || r[i];
            return v;
        }
        case k::until: {
            auto x = eval_finite(f.left(), w);
            auto y = eval_finite(f.right(), w);
            for (std::size_t i = n; i-- > 0;)
                v[i] = i + 1 < n && (y[i + 1] || (x[i + 1] && v[i + 1]));
            return v;
        }
        case k::since: {
            auto x = eval_finite(f.left(), w);
            auto y = eval_finite(f.right(), w);
            for (std::size_t i = 0; i < n; ++i)
                v[i] = i > 0 && (y[i - 1] || (x[i - 1] && v[i - 1]));
            return v;
        }
        case k::stavi_until:
        case k::stavi_since:
            // Finite words have no gaps, so these never hold.
            return v;
        default: throw shape_error("unreachable");
    }
}

namespace {

// One position at a time, straight from the definitions.
bool naive_at(const formula& f, const finite_word& w, std::size_t i) {
    using k = formula::kind;
    std::size_t n = w.size();
    switch (f.node_kind()) {
        case k::atom: return letter_holds(w[i], f.atom_name());
        case k::tru: return true;
        case k::fls: return false;
        case k::lnot: return !naive_at(f.left(), w, i);
        case k::lor: return naive_at(f.left(), w, i) || naive_at(f.right(), w, i);
        case k::land: return naive_at(f.left(), w, i) && naive_at(f.right(), w, i);
        case k::implies: return !naive_at(f.left(), w, i) || naive_at(f.right(), w, i);
        case k::next: return i + 1 < n && naive_at(f.left(), w, i + 1);
        case k::prev: return i > 0 && naive_at(f.left(), w, i - 1);
        case k::eventually:
            for (std::size_t j = i; j < n; ++j)
                if (naive_at(f.left(), w, j)) return true;
            return false;
        case k::always:
            for (std::size_t j = i; j < n; ++j)
                if (!naive_at(f.left(), w, j)) return false;
            return true;
        case k::once:
            for (std::size_t j = 0; j <= i; ++j)
                if (naive_at(f.left(), w, j)) return true;
            return false;
        case k::historically:
            for (std::size_t j = 0; j <= i; ++j)
                if (!naive_at(f.left(), w, j)) return false;
            return true;
        case k::until:
            for (std::size_t j = i + 1; j < n; ++j) {
                if (naive_at(f.right(), w, j)) return true;
                if (!naive_at(f.left(), w, j)) return false;
            }
            return false;
        case k::since:
            for (std::size_t j = i; j-- > 0;) {
                if (naive_at(f.right(), w, j)) return true;
                if (!naive_at(f.left(), w, j)) return false;
            }
            return false;
        case k::until_ns:
            for (std::size_t j = i; j < n; ++j) {
                if (naive_at(f.right(), w, j)) return true;
                if (!naive_at(f.left(), w, j)) return false;
            }
            return false;
        case k::stavi_until:
        case k::stavi_since:
            return false;
    }
    return false;
}

}  // namespace

std::vector<bool> eval_finite_naive(const formula& f, const finite_word& w) {
    std::vector<bool> v(w.size());
    for (std::size_t i = 0; i < w.size(); ++i) v[i] = naive_at(f, w, i);
    return v;
}

// --- ultimately periodic words ---

namespace {

struct upb {
    std::vector<bool> pre, cyc;
    bool at(std::size_t i) const {
        return i < pre.size() ? pre[i] : cyc[(i - pre.size()) % cyc.size()];
    }
};

std::size_t lcm_sz(std::size_t a, std::size_t b) { return std::lcm(a, b); }

// Evaluates over the shared shape (P, L); correctness of the cutoffs:
// until values are L-periodic from P on (the future is), and since values
// stabilize within one extra period because the period-to-period update is
// a monotone map on one bit.
upb eval_up_core(const formula& f, const up_word& w) {
    using k = formula::kind;
    switch (f.node_kind()) {
        case k::atom: {
            upb b;
            for (const auto& l : w.prefix) b.pre.push_back(letter_holds(l, f.atom_name()));
            for (const auto& l : w.cycle) b.cyc.push_back(letter_holds(l, f.atom_name()));
            return b;
        }
        case k::tru: return {{}, {true}};
        case k::fls:
        case k::stavi_until:   // an omega word has no gaps
        case k::stavi_since:
            return {{}, {false}};
        case k::lnot: {
            upb b = eval_up_core(f.left(), w);
            b.pre.flip();
            b.cyc.flip();
            return b;
        }
        default: break;
    }

    upb x = eval_up_core(f.left(), w);
    upb y = eval_up_core(f.right(), w);
    std::size_t P = std::max(x.pre.size(), y.pre.size());
    std::size_t L = lcm_sz(x.cyc.size(), y.cyc.size());
    upb b;
    switch (f.node_kind()) {
        case k::lor: {
            for (std::size_t i = 0; i < P; ++i) b.pre.push_back(x.at(i) || y.at(i));
            for (std::size_t i = P; i < P + L; ++i) b.cyc.push_back(x.at(i) || y.at(i));
            return b;
        }
        case k::until: {
            std::size_t N = P + 3 * L;
            std::vector<bool> u(N);
            bool all_x = true, any_y = false;
            for (std::size_t i = P; i < P + L; ++i) {
                all_x = all_x && x.at(i);
                any_y = any_y || y.at(i);
            }
            u[N - 1] = all_x && any_y;
            for (std::size_t i = N - 1; i-- > 0;) u[i] = y.at(i + 1) || (x.at(i + 1) && u[i + 1]);
            b.pre.assign(u.begin(), u.begin() + static_cast<long>(P));
            b.cyc.assign(u.begin() + static_cast<long>(P), u.begin() + static_cast<long>(P + L));
            return b;
        }
        case k::since: {
            std::size_t N = P + 3 * L;
            std::vector<bool> s(N);
            s[0] = false;
            for (std::size_t i = 1; i < N; ++i) s[i] = y.at(i - 1) || (x.at(i - 1) && s[i - 1]);
            for (std::size_t k0 = 0; k0 < 2; ++k0) {
                bool stable = true;
                for (std::size_t j = 0; j < L; ++j)
                    stable = stable && s[P + k0 * L + j] == s[P + (k0 + 1) * L + j];
                if (stable) {
                    b.pre.assign(s.begin(), s.begin() + static_cast<long>(P + k0 * L));
                    b.cyc.assign(s.begin() + static_cast<long>(P + k0 * L),
                                 s.begin() + static_cast<long>(P + (k0 + 1) * L));
                    return b;
                }
            }
            throw shape_error("since evaluation did not stabilize");
        }
        default: throw shape_error("unreachable");
    }
}

template <typename T>
void normalize_up_seq(std::vector<T>& pre, std::vector<T>& cyc) {
    for (std::size_t p = 1; p < cyc.size(); ++p) {
        if (cyc.size() % p) continue;
        bool ok = true;
        for (std::size_t i = p; i < cyc.size() && ok; ++i) ok = cyc[i] == cyc[i % p];
        if (ok) {
            cyc.resize(p);
            break;
        }
    }
    while (!pre.empty() && pre.back() == cyc.back()) {
        pre.pop_back();
        std::rotate(cyc.begin(), cyc.end() - 1, cyc.end());
    }
}

}  // namespace

up_bits eval_up(const formula& f, const up_word& w) {
    if (w.cycle.empty()) throw shape_error("ultimately periodic word needs a nonempty cycle");
    formula core = f.is_core() ? f : desugar(f);
    upb b = eval_up_core(core, w);
    return {std::move(b.pre), std::move(b.cyc)};
}

void normalize_up(up_word& w) { normalize_up_seq(w.prefix, w.cycle); }
void normalize_up(up_bits& b) { normalize_up_seq(b.prefix, b.cycle); }

std::optional<up_word> to_up_word(const word_term& t) {
    // Flatten concatenation left to right.
    std::vector<word_term> flat;
    std::vector<word_term> todo{t};
    while (!todo.empty()) {
        word_term cur = todo.back();
        todo.pop_back();
        if (cur.node_kind() == word_term::kind::concat) {
            todo.push_back(cur.right());
            todo.push_back(cur.left());
        } else if (cur.node_kind() != word_term::kind::empty) {
            flat.push_back(cur);
        }
    }
    if (flat.empty()) return std::nullopt;
    up_word w;
    for (std::size_t i = 0; i + 1 < flat.size(); ++i) {
        if (flat[i].node_kind() != word_term::kind::lit) return std::nullopt;
        w.prefix.push_back(flat[i].lit_letter());
    }
    const word_term& last = flat.back();
    if (last.node_kind() != word_term::kind::omega) return std::nullopt;
    try {
        w.cycle = to_finite(last.body());
    } catch (const shape_error&) {
        return std::nullopt;
    }
    if (w.cycle.empty()) return std::nullopt;
    return w;
}

word_term term_of_up(const up_word& w) {
    std::vector<word_term> parts;
    for (const auto& l : w.prefix) parts.push_back(word_term::lit(l));
    parts.push_back(word_term::omega(from_finite(w.cycle)));
    return word_term::concat_all(parts);
}

word_term term_of_up(const up_bits& b) {
    up_word w;
    for (bool x : b.prefix) w.prefix.push_back(letter::bit(x));
    for (bool x : b.cycle) w.cycle.push_back(letter::bit(x));
    return term_of_up(w);
}

// --- corpus ---

std::vector<formula> enumerate_formulas(const std::vector<std::string>& props, int max_height,
                                        bool core_only) {
    std::vector<std::vector<formula>> exact(static_cast<std::size_t>(max_height) + 1);
    for (const auto& p : props) exact[1].push_back(formula::atom(p));
    exact[1].push_back(formula::tru());
    exact[1].push_back(formula::fls());

    using unary_fn = formula (*)(const formula&);
    using binary_fn = formula (*)(const formula&, const formula&);
    std::vector<unary_fn> unaries{formula::lnot};
    std::vector<binary_fn> binaries{formula::lor, formula::until, formula::since,
                                    formula::stavi_until, formula::stavi_since};
    if (!core_only) {
        for (unary_fn u : {formula::next, formula::eventually, formula::always, formula::prev,
                           formula::once, formula::historically})
            unaries.push_back(u);
        for (binary_fn b : {formula::land, formula::implies, formula::until_ns})
            binaries.push_back(b);
    }

    for (int h = 2; h <= max_height; ++h) {
        std::vector<formula> shorter;  // height < h - 1
        for (int i = 1; i < h - 1; ++i)
            shorter.insert(shorter.end(), exact[i].begin(), exact[i].end());
        const auto& tall = exact[h - 1];
        for (auto u : unaries)
            for (const auto& f : tall) exact[h].push_back(u(f));
        for (auto b : binaries) {
            for (const auto& l : tall)
                for (const auto& r : tall) exact[h].push_back(b(l, r));
            for (const auto& l : tall)
                for (const auto& r : shorter) exact[h].push_back(b(l, r));
            for (const auto& l : shorter)
                for (const auto& r : tall) exact[h].push_back(b(l, r));
        }
    }
    std::vector<formula> all;
    for (const auto& level : exact) all.insert(all.end(), level.begin(), level.end());
    return all;
}

namespace {

// Bounded uniform draw by rejection, so results only depend on the engine's
// specified output sequence.
std::uint64_t draw_below(std::mt19937_64& g, std::uint64_t n) {
    std::uint64_t bound = std::numeric_limits<std::uint64_t>::max() / n * n;
    std::uint64_t v;
    do v = g();
    while (v >= bound);
    return v % n;
}

}  // namespace

std::vector<formula> sample_formulas(std::vector<formula> all, std::size_t cap,
                                     std::uint64_t seed) {
    if (all.size() <= cap) return all;
    std::mt19937_64 g(seed);
    for (std::size_t i = 0; i < cap; ++i) {
        std::size_t j = i + static_cast<std::size_t>(draw_below(g, all.size() - i));
        std::swap(all[i], all[j]);
    }
    all.erase(all.begin() + static_cast<long>(cap), all.end());
    return all;
}

// --- differential suite ---

namespace {

std::string bits_to_string(const std::vector<bool>& v) {
    std::string s;
    for (bool b : v) s += b ? '1' : '0';
    return s.empty() ? "(empty)" : s;
}

std::string word_to_string(const finite_word& w) {
    if (w.empty()) return "(empty)";
    std::string s;
    for (std::size_t i = 0; i < w.size(); ++i) {
        if (i) s += ' ';
        s += w[i].name();
    }
    return s;
}

struct diff_runner {
    const differential_config& cfg;
    std::ostream& report;
    differential_outcome out;

    void fail(const formula& f, const std::string& word, const std::string& what,
              const std::string& expected, const std::string& got) {
        ++out.failures;
        report << "FAIL " << render_formula(f) << " ; " << word << " ; " << what
               << " ; expected " << expected << " ; got " << got << "\n";
    }

    // Drops letters off the end while the disagreement persists.
    finite_word shrink(finite_word w, const std::function<bool(const finite_word&)>& still_fails) {
        while (!w.empty()) {
            finite_word shorter(w.begin(), w.end() - 1);
            if (!still_fails(shorter)) break;
            w = shorter;
        }
        return w;
    }

    void check_finite(const formula& f, const transducer& a, const finite_word& w) {
        ++out.cases;
        auto dp = eval_finite(f, w);
        auto nv = eval_finite_naive(f, w);
        if (dp != nv) {
            auto bad = shrink(w, [&](const finite_word& v) {
                return eval_finite(f, v) != eval_finite_naive(f, v);
            });
            fail(f, word_to_string(bad), "evaluators disagree",
                 bits_to_string(eval_finite_naive(f, bad)), bits_to_string(eval_finite(f, bad)));
            return;
        }
        auto runs = enumerate_finite_runs(a, w, 2);
        if (runs.size() != 1) {
            fail(f, word_to_string(w), "accepting runs", "1", std::to_string(runs.size()));
            return;
        }
        std::vector<bool> got;
        for (int o : runs[0].outputs) got.push_back(a.output_alphabet().at(o).first_bit());
        if (got != dp) {
            auto bad = shrink(w, [&](const finite_word& v) {
                auto rs = enumerate_finite_runs(a, v, 2);
                if (rs.size() != 1) return false;
                std::vector<bool> g;
                for (int o : rs[0].outputs) g.push_back(a.output_alphabet().at(o).first_bit());
                return g != eval_finite(f, v);
            });
            auto rs = enumerate_finite_runs(a, bad, 2);
            std::vector<bool> g;
            for (int o : rs[0].outputs) g.push_back(a.output_alphabet().at(o).first_bit());
            fail(f, word_to_string(bad), "automaton output", bits_to_string(eval_finite(f, bad)),
                 bits_to_string(g));
        }
    }

    void check_up(const formula& f, const transducer& a, const up_word& w) {
        ++out.cases;
        up_bits expected = eval_up(f, w);
        normalize_up(expected);
        std::string wname = print_word_term(term_of_up(w));
        word_term got_term = word_term::empty();
        try {
            run_term r = find_run_term(a, term_of_up(w));
            got_term = normalize_word_term(run_term_output(a, term_of_up(w), r));
        } catch (const error& e) {
            fail(f, wname, "run search", print_word_term(term_of_up(expected)), e.what());
            return;
        }
        auto got = to_up_word(got_term);
        if (!got) {
            fail(f, wname, "output shape", print_word_term(term_of_up(expected)),
                 print_word_term(got_term));
            return;
        }
        up_bits got_bits;
        for (const auto& l : got->prefix) got_bits.prefix.push_back(l.first_bit());
        for (const auto& l : got->cycle) got_bits.cycle.push_back(l.first_bit());
        normalize_up(got_bits);
        if (got_bits.prefix != expected.prefix || got_bits.cycle != expected.cycle)
            fail(f, wname, "automaton output", print_word_term(term_of_up(expected)),
                 print_word_term(term_of_up(got_bits)));
    }
};

}  // namespace

differential_outcome run_differential(const differential_config& cfg, std::ostream& report) {
    alphabet sigma = alphabet::power_set(cfg.props);
    std::mt19937_64 g(cfg.seed);

    std::vector<finite_word> finite_corpus;
    finite_corpus.push_back({});
    for (int len = 1; len <= cfg.exhaustive_len; ++len) {
        std::vector<int> idx(static_cast<std::size_t>(len), 0);
        while (true) {
            finite_word w;
            for (int i : idx) w.push_back(sigma.at(i));
            finite_corpus.push_back(w);
            std::size_t pos = idx.size();
            while (pos > 0 && ++idx[pos - 1] == sigma.size()) idx[--pos] = 0;
            if (pos == 0) break;
        }
    }
    for (int r = 0; r < cfg.random_words; ++r) {
        std::size_t len =
            1 + static_cast<std::size_t>(cfg.exhaustive_len) +
            draw_below(g, static_cast<std::uint64_t>(
                              std::max(1, cfg.max_len - cfg.exhaustive_len)));
        finite_word w;
        for (std::size_t i = 0; i < len; ++i)
            w.push_back(sigma.at(static_cast<int>(draw_below(g, sigma.size()))));
        finite_corpus.push_back(w);
    }

    std::vector<up_word> up_corpus;
    up_corpus.push_back({{}, {sigma.at(0)}});
    if (sigma.size() > 1) up_corpus.push_back({{sigma.at(1)}, {sigma.at(0), sigma.at(1)}});
    for (int r = 0; r < cfg.up_words; ++r) {
        up_word w;
        std::size_t pl = draw_below(g, static_cast<std::uint64_t>(cfg.up_prefix_max) + 1);
        std::size_t cl = 1 + draw_below(g, static_cast<std::uint64_t>(cfg.up_cycle_max));
        for (std::size_t i = 0; i < pl; ++i)
            w.prefix.push_back(sigma.at(static_cast<int>(draw_below(g, sigma.size()))));
        for (std::size_t i = 0; i < cl; ++i)
            w.cycle.push_back(sigma.at(static_cast<int>(draw_below(g, sigma.size()))));
        up_corpus.push_back(w);
    }

    auto corpus = sample_formulas(enumerate_formulas(cfg.props, cfg.max_height, cfg.core_only),
                                  cfg.corpus_cap, cfg.seed + 1);
    diff_runner runner{cfg, report, {}};
    for (const auto& f : corpus) {
        ++runner.out.formulas;
        transducer a = compile(f, cfg.props);
        for (const auto& w : finite_corpus) runner.check_finite(f, a, w);
        if (a.state_count() <= cfg.up_state_limit)
            for (const auto& w : up_corpus) runner.check_up(f, a, w);
    }
    report << "checked " << runner.out.formulas << " formulas, " << runner.out.cases
           << " cases, " << runner.out.failures << " failures\n";
    return runner.out;
}

}  // namespace lotl
