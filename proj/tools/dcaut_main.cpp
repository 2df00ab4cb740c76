// Command-line driver for the dcaut library.
//
// Exit codes:
//   0   success / positive answer
//   1   negative answer (inequivalent, non-trivial congruence, no coloring)
//   2   language not realizable in the requested class (minimize)
//   64  malformed input, invalid argument, unsupported feature
//   65  precondition violation, inconsistent teacher answers
//   66  resource limit exceeded
//   70  internal invariant violated
//
// stdout carries all machine-readable output; stderr only diagnostics.

#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "dcaut/automaton.hpp"
#include "dcaut/errors.hpp"
#include "dcaut/hardness.hpp"
#include "dcaut/io.hpp"
#include "dcaut/langops.hpp"
#include "dcaut/learner.hpp"
#include "dcaut/priority_opt.hpp"

namespace {

using namespace dcaut;

struct CommonState {
    ParseOptions parse_options;
};

OmegaAutomaton load(const CommonState& st, const std::string& path) {
    return read_automaton_file(path, st.parse_options);
}

void emit(const OmegaAutomaton& a, const std::string& out_path) {
    if (out_path.empty())
        std::cout << print_native(a);
    else
        write_automaton_file(out_path, a);
}

Graph load_graph(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InvalidArgumentError("cannot open " + path);
    try {
        return parse_graph(in);
    } catch (const ParseError& e) {
        throw ParseError(path + ": " + e.what());
    }
}

// Splits a script argument on commas that are not inside brackets and strips
// one pair of surrounding double quotes from each piece.
std::vector<std::string> split_script(const std::string& text) {
    std::vector<std::string> parts;
    std::string cur;
    int depth = 0;
    for (char ch : text) {
        if (ch == '[') ++depth;
        if (ch == ']') --depth;
        if (ch == ',' && depth == 0) {
            parts.push_back(cur);
            cur.clear();
        } else {
            cur += ch;
        }
    }
    parts.push_back(cur);
    for (std::string& p : parts) {
        if (p.size() >= 2 && p.front() == '"' && p.back() == '"')
            p = p.substr(1, p.size() - 2);
        if (p.empty()) throw InvalidArgumentError("empty entry in --script list");
    }
    return parts;
}

int run(int argc, char** argv) {
    CLI::App app{"deterministic omega-automata with don't-care words"};
    app.require_subcommand(1);

    CommonState st;
    app.add_flag("--complete-with-selfloop", st.parse_options.complete_with_selfloop,
                 "complete partial transition functions with self-loops at parse time");

    // --- check-equiv ---------------------------------------------------
    std::string eq_a, eq_b, eq_d;
    auto* eq = app.add_subcommand("check-equiv",
                                  "test language equivalence outside a don't-care set");
    eq->add_option("A", eq_a, "first automaton file")->required();
    eq->add_option("B", eq_b, "second automaton file")->required();
    eq->add_option("--dontcare", eq_d, "don't-care automaton file (default: empty set)");

    // --- optimize-priorities --------------------------------------------
    std::string op_a, op_d, op_out;
    auto* op = app.add_subcommand(
        "optimize-priorities",
        "assign the fewest priorities consistent with the language outside the don't-care set");
    op->add_option("A", op_a, "parity automaton file")->required();
    op->add_option("--dontcare", op_d, "don't-care automaton file (default: empty set)");
    op->add_option("-o,--output", op_out, "write the optimized automaton here");

    // --- minimize --------------------------------------------------------
    std::string mn_a, mn_d, mn_target, mn_out;
    auto* mn = app.add_subcommand(
        "minimize", "canonical-quotient minimization into a target acceptance class");
    mn->add_option("A", mn_a, "automaton file")->required();
    mn->add_option("--dontcare", mn_d, "don't-care automaton file")->required();
    mn->add_option("--target", mn_target, "parity, buchi, or cobuchi")
        ->required()
        ->check(CLI::IsMember({"parity", "buchi", "cobuchi"}));
    mn->add_option("-o,--output", mn_out, "write the minimized automaton here");

    // --- minimize-wdba -----------------------------------------------------
    std::string mw_a, mw_d, mw_out;
    auto* mw = app.add_subcommand("minimize-wdba",
                                  "minimal weak Buchi automaton outside the don't-care set");
    mw->add_option("W", mw_a, "weak Buchi automaton file")->required();
    mw->add_option("--dontcare", mw_d, "don't-care automaton file")->required();
    mw->add_option("-o,--output", mw_out, "write the minimized automaton here");

    // --- learn ------------------------------------------------------------
    std::string ln_target, ln_d, ln_script, ln_out;
    bool ln_trace = false;
    auto* ln = app.add_subcommand("learn",
                                  "learn a weak Buchi automaton from membership and "
                                  "equivalence queries against a simulated teacher");
    ln->add_option("--target", ln_target, "target automaton file")->required();
    ln->add_option("--dontcare", ln_d, "don't-care automaton file")->required();
    ln->add_option("--script", ln_script,
                   "comma-separated ultimately-periodic words the teacher returns as "
                   "counterexamples before answering honestly");
    ln->add_flag("--trace", ln_trace, "print each observation table to stdout");
    ln->add_option("-o,--output", ln_out, "write the learned automaton here");

    // --- reduce -------------------------------------------------------------
    std::string rd_graph, rd_prefix;
    auto* rd = app.add_subcommand(
        "reduce", "emit the automaton pair whose equivalence queries decide graph coloring");
    rd->add_option("--graph", rd_graph, "graph file")->required();
    rd->add_option("-o,--out-prefix", rd_prefix, "path prefix for the two output files")
        ->required();

    // --- extract-coloring ----------------------------------------------------
    std::string xc_a, xc_graph;
    auto* xc = app.add_subcommand("extract-coloring",
                                  "read a proper coloring off a parity automaton");
    xc->add_option("C", xc_a, "automaton file")->required();
    xc->add_option("--graph", xc_graph, "graph file")->required();

    // --- check-trivial-rc ------------------------------------------------------
    std::string tr_d;
    auto* tr = app.add_subcommand("check-trivial-rc",
                                  "test whether the language's right congruence has one class");
    tr->add_option("D", tr_d, "automaton file")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 64;
    }

    if (eq->parsed()) {
        OmegaAutomaton a = load(st, eq_a);
        OmegaAutomaton b = load(st, eq_b);
        OmegaAutomaton d = eq_d.empty() ? empty_language_automaton(a.alphabet()) : load(st, eq_d);
        std::optional<UltimatelyPeriodicWord> ce = d_equivalent(a, b, d);
        if (!ce) {
            std::cout << "equivalent\n";
            return 0;
        }
        std::cout << "counterexample: " << print_upword(a.alphabet(), *ce) << "\n";
        return 1;
    }

    if (op->parsed()) {
        OmegaAutomaton a = load(st, op_a);
        OmegaAutomaton d = op_d.empty() ? empty_language_automaton(a.alphabet()) : load(st, op_d);
        int before = a.distinct_priority_count();
        OmegaAutomaton optimized = optimize_priorities(a, d);
        std::cout << "priorities: " << before << " -> " << optimized.distinct_priority_count()
                  << "\n";
        emit(optimized, op_out);
        return 0;
    }

    if (mn->parsed()) {
        OmegaAutomaton a = load(st, mn_a);
        OmegaAutomaton d = load(st, mn_d);
        TargetClass target = mn_target == "parity"  ? TargetClass::parity
                             : mn_target == "buchi" ? TargetClass::buchi
                                                    : TargetClass::cobuchi;
        IrcMinimization res = minimize_to_irc(a, d, target);
        if (!res.automaton) {
            std::cout << "not in class\n";
            return 2;
        }
        emit(*res.automaton, mn_out);
        return 0;
    }

    if (mw->parsed()) {
        OmegaAutomaton w = load(st, mw_a);
        OmegaAutomaton d = load(st, mw_d);
        emit(minimize_wdba(w, d), mw_out);
        return 0;
    }

    if (ln->parsed()) {
        OmegaAutomaton target = load(st, ln_target);
        OmegaAutomaton d = load(st, ln_d);
        std::vector<UltimatelyPeriodicWord> forced;
        if (!ln_script.empty())
            for (const std::string& piece : split_script(ln_script))
                forced.push_back(parse_upword(target.alphabet(), piece));
        OmegaAutomaton learned = [&] {
            std::ostream* trace = ln_trace ? &std::cout : nullptr;
            if (forced.empty()) {
                SimulatedTeacher teacher(target, d);
                return learn(teacher, trace);
            }
            ScriptedTeacher teacher(target, d, std::move(forced));
            return learn(teacher, trace);
        }();
        emit(learned, ln_out);
        return 0;
    }

    if (rd->parsed()) {
        Graph g = load_graph(rd_graph);
        Reduction r = build_reduction(g);
        std::string ag_path = rd_prefix + ".ag.aut";
        std::string dg_path = rd_prefix + ".dg.aut";
        write_automaton_file(ag_path, r.a_g);
        write_automaton_file(dg_path, r.d_g);
        std::cout << ag_path << "\n" << dg_path << "\n";
        return 0;
    }

    if (xc->parsed()) {
        OmegaAutomaton c = load(st, xc_a);
        Graph g = load_graph(xc_graph);
        std::optional<Coloring> col = extract_coloring(c, g);
        if (!col) {
            std::cout << "no coloring: some vertex loop visits no even-priority state\n";
            return 1;
        }
        for (int v = 0; v < g.num_vertices(); ++v)
            std::cout << g.vertices[v] << "=" << (*col)[v] << "\n";
        return 0;
    }

    // check-trivial-rc
    OmegaAutomaton d = load(st, tr_d);
    if (has_trivial_rc(d)) {
        std::cout << "yes\n";
        return 0;
    }
    std::cout << "no\n";
    return 1;
}

}  // namespace

int main(int argc, char** argv) {
    try {
        return run(argc, argv);
    } catch (const ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 64;
    } catch (const InvalidArgumentError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 64;
    } catch (const UnsupportedFeatureError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 64;
    } catch (const PreconditionError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 65;
    } catch (const TeacherInconsistencyError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 65;
    } catch (const ResourceLimitError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 66;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 70;
    }
}
