#include "lotl/cli.hpp"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <optional>
#include <ostream>

#include <CLI11.hpp>

#include "lotl/construction.hpp"
#include "lotl/oracle.hpp"
#include "lotl/reach.hpp"
#include "lotl/runs.hpp"

namespace lotl {

namespace {

std::vector<std::string> split_props(const std::string& csv) {
    std::vector<std::string> out;
    std::size_t pos = 0;
    while (pos <= csv.size()) {
        std::size_t comma = csv.find(',', pos);
        if (comma == std::string::npos) comma = csv.size();
        std::string p = csv.substr(pos, comma - pos);
        if (!p.empty()) out.push_back(p);
        pos = comma + 1;
    }
    return out;
}

std::vector<std::string> props_for(const formula& f, const std::string& csv) {
    if (!csv.empty()) return split_props(csv);
    return f.atoms();
}

// Automaton paths resolve against the fixture directory as a fallback, so
// the bundled examples work from any working directory.
std::string resolve_automaton(const std::string& path) {
    namespace fs = std::filesystem;
    if (fs::exists(path)) return path;
#ifdef LOTL_FIXTURE_DIR
    std::string in_fixtures = std::string(LOTL_FIXTURE_DIR) + "/" + path;
    if (fs::exists(in_fixtures)) return in_fixtures;
#endif
    return path;
}

std::size_t default_max_items() {
    if (const char* env = std::getenv("LOTL_MAX_ITEMS")) {
        char* end = nullptr;
        unsigned long long v = std::strtoull(env, &end, 10);
        if (end && *end == '\0' && v > 0) return static_cast<std::size_t>(v);
    }
    return default_item_cap;
}

std::string bits_line(const std::vector<bool>& v) {
    std::string s;
    for (bool b : v) {
        if (!s.empty()) s += ' ';
        s += b ? '1' : '0';
    }
    return s.empty() ? "(empty)" : s;
}

struct cli_options {
    std::string formula_text, word_text, automaton_file, out_file, within_file;
    std::string props_csv, rules = "all";
    std::size_t max_items = default_max_items();
    int depth = 3, len = 2, corpus_cap = 200;
    std::uint64_t seed = 1;
    bool core_only = false;
};

int cmd_parse(const cli_options& o, std::ostream& out) {
    out << render_formula(desugar(parse_formula(o.formula_text))) << "\n";
    return 0;
}

int cmd_compile(const cli_options& o, std::ostream& out) {
    formula f = parse_formula(o.formula_text);
    transducer a = compile(f, props_for(f, o.props_csv));
    out << "states: " << a.state_count() << "\n";
    out << "successor transitions: " << a.successors().size() << "\n";
    if (!o.out_file.empty()) {
        std::ofstream file(o.out_file);
        if (!file) throw io_error("cannot write " + o.out_file);
        file << save_automaton(a);
    }
    return 0;
}

int cmd_eval(const cli_options& o, std::ostream& out) {
    formula f = parse_formula(o.formula_text);
    transducer a = compile(f, props_for(f, o.props_csv));
    word_term input = parse_word_term(o.word_text);
    run_term r = find_run_term(a, input);
    out << print_word_term(normalize_word_term(run_term_output(a, input, r))) << "\n";
    return 0;
}

int cmd_oracle(const cli_options& o, std::ostream& out) {
    formula f = parse_formula(o.formula_text);
    word_term t = normalize_word_term(parse_word_term(o.word_text));
    if (!t.contains_shuffle()) {
        if (auto up = to_up_word(t)) {
            up_bits b = eval_up(f, *up);
            normalize_up(b);
            out << print_word_term(term_of_up(b)) << "\n";
            return 0;
        }
        try {
            finite_word w = to_finite(t);
            out << bits_line(eval_finite(f, w)) << "\n";
            return 0;
        } catch (const shape_error&) {
        }
    }
    throw shape_error("the oracle evaluates finite and ultimately periodic words only");
}

int cmd_run(const cli_options& o, std::ostream& out) {
    transducer a = load_automaton_file(resolve_automaton(o.automaton_file));
    word_term input = parse_word_term(o.word_text);
    run_term r = find_run_term(a, input);
    out << render_run_term(a, r) << "\n";
    out << "output: " << print_word_term(normalize_word_term(run_term_output(a, input, r)))
        << "\n";
    return 0;
}

int cmd_sat(const cli_options& o, std::ostream& out) {
    formula f = parse_formula(o.formula_text);
    rule_set rules = rule_set::from_string(o.rules);
    std::optional<transducer> a;
    if (o.within_file.empty()) {
        a = compile(f, props_for(f, o.props_csv));
    } else {
        transducer b = load_automaton_file(resolve_automaton(o.within_file));
        std::vector<std::string> props =
            o.props_csv.empty() ? props_against(f, b) : split_props(o.props_csv);
        a = product(compile(f, props), b);
    }
    sat_result r = satisfiable_output(*a, rules, o.max_items);
    out << to_string(r.v) << "\n";
    if (r.witness) {
        out << "  transition: " << a->state_name(r.witness->t.src) << " -"
            << a->input_alphabet().at(r.witness->t.in).name() << "|"
            << a->output_alphabet().at(r.witness->t.out).name() << "-> "
            << a->state_name(r.witness->t.dst) << "\n";
        out << "  reach:      " << render_item(*a, r.witness->to_src) << "\n";
        out << "  coreach:    " << render_item(*a, r.witness->from_dst) << "\n";
    }
    return r.v == verdict::unknown ? 5 : 0;
}

int cmd_selftest(const cli_options& o, std::ostream& out) {
    differential_config cfg;
    cfg.max_height = o.depth;
    cfg.exhaustive_len = o.len;
    cfg.max_len = o.len + 3;
    cfg.corpus_cap = static_cast<std::size_t>(o.corpus_cap);
    cfg.seed = o.seed;
    cfg.core_only = o.core_only;
    differential_outcome r = run_differential(cfg, out);
    return r.failures == 0 ? 0 : 1;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"temporal logic over arbitrary linear orderings"};
    app.require_subcommand(1);
    cli_options o;

    auto add_props = [&](CLI::App* c) {
        c->add_option("--props", o.props_csv,
                      "comma-separated atomic propositions (default: those in the formula)");
    };

    auto* parse_cmd = app.add_subcommand("parse", "parse a formula and print its core form");
    parse_cmd->add_option("formula", o.formula_text)->required();

    auto* compile_cmd = app.add_subcommand("compile", "compile a formula to a transducer");
    compile_cmd->add_option("formula", o.formula_text)->required();
    compile_cmd->add_option("--out", o.out_file, "serialize the automaton to this file");
    add_props(compile_cmd);

    auto* eval_cmd = app.add_subcommand("eval", "evaluate a formula over a word term");
    eval_cmd->add_option("formula", o.formula_text)->required();
    eval_cmd->add_option("word", o.word_text)->required();
    add_props(eval_cmd);

    auto* oracle_cmd =
        app.add_subcommand("oracle", "evaluate semantically (finite or ultimately periodic)");
    oracle_cmd->add_option("formula", o.formula_text)->required();
    oracle_cmd->add_option("word", o.word_text)->required();

    auto* run_cmd = app.add_subcommand("run", "find the run of an automaton on a word term");
    run_cmd->add_option("automaton", o.automaton_file)->required();
    run_cmd->add_option("word", o.word_text)->required();

    auto* sat_cmd = app.add_subcommand("sat", "decide satisfiability");
    sat_cmd->add_option("formula", o.formula_text)->required();
    sat_cmd->add_option("--within", o.within_file, "restrict models to this acceptor");
    sat_cmd->add_option("--rules", o.rules, "saturation rules (default: all)");
    sat_cmd->add_option("--max-items", o.max_items, "item cap (env LOTL_MAX_ITEMS)");
    add_props(sat_cmd);

    auto* self_cmd = app.add_subcommand("selftest", "run the differential suite");
    self_cmd->add_option("--depth", o.depth, "formula height bound");
    self_cmd->add_option("--len", o.len, "exhaustive word length bound");
    self_cmd->add_option("--cap", o.corpus_cap, "formula corpus cap");
    self_cmd->add_option("--seed", o.seed, "corpus seed");
    self_cmd->add_flag("--core", o.core_only, "core connectives only");

    try {
        std::vector<std::string> rev(args.rbegin(), args.rend());
        app.parse(rev);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e, out, err);
        return code == 0 ? 0 : 2;
    }

    try {
        if (parse_cmd->parsed()) return cmd_parse(o, out);
        if (compile_cmd->parsed()) return cmd_compile(o, out);
        if (eval_cmd->parsed()) return cmd_eval(o, out);
        if (oracle_cmd->parsed()) return cmd_oracle(o, out);
        if (run_cmd->parsed()) return cmd_run(o, out);
        if (sat_cmd->parsed()) return cmd_sat(o, out);
        if (self_cmd->parsed()) return cmd_selftest(o, out);
    } catch (const parse_error& e) {
        err << "parse error: " << e.what() << "\n";
        return 2;
    } catch (const shape_error& e) {
        err << "shape error: " << e.what() << "\n";
        return 3;
    } catch (const no_run_error& e) {
        err << "no run: " << e.what() << "\n";
        return 4;
    } catch (const resource_error& e) {
        err << "resource exhausted: " << e.what() << "\n";
        return 5;
    } catch (const io_error& e) {
        err << "io error: " << e.what() << "\n";
        return 6;
    }
    err << "usage error: no subcommand\n";
    return 2;
}

}  // namespace lotl
