// Serialization: native documents, word literals, the HOA fragment, file
// dispatch, and the command-line driver end to end.

#include <catch2/catch_amalgamated.hpp>

#include <cstdio>
#include <sstream>
#include <string>
#include <vector>

#include "testutil.hpp"

using namespace dcaut;
using namespace dcaut::testing;
using Catch::Matchers::ContainsSubstring;
using Catch::Matchers::StartsWith;

namespace {

std::string tmp_path(const std::string& name) {
    return "/tmp/dcaut_io_" + std::to_string(getpid()) + "_" + name;
}

/// Writes an automaton to /tmp and returns the path (cleanup is left to the
/// OS; names are per-process unique).
std::string stash(const std::string& name, const OmegaAutomaton& a) {
    std::string path = tmp_path(name);
    write_automaton_file(path, a);
    return path;
}

OmegaAutomaton finitely_many_b() {
    DeterministicTransitionSystem flip(ab(), 2, 0, {0, 1, 0, 1});
    return OmegaAutomaton::parity(flip, {0, 1});
}

}  // namespace

TEST_CASE("native documents round-trip") {
    SECTION("a parity automaton survives printing, names excepted") {
        OmegaAutomaton a = parity4();
        OmegaAutomaton b = parse_native(print_native(a));
        CHECK(same_structure(a, b));
        CHECK(b.ts().name(3) == "3");  // the format does not carry names
    }
    SECTION("a weak automaton keeps its declaration") {
        OmegaAutomaton a = u_exact();
        std::string text = print_native(a);
        CHECK_THAT(text, ContainsSubstring("acceptance: weak-buchi"));
        OmegaAutomaton b = parse_native(text);
        CHECK(same_structure(a, b));
        CHECK(b.is_weak());
    }
    SECTION("every stored automaton is a fixed point of parse-then-print") {
        for (const char* name :
             {"parity4.aut", "dba3.aut", "dba2_reset.aut", "dba2_bloop.aut", "dba2_sticky.aut", "path3_colored.aut",
              "path3_hard.aut", "path3_padding.aut", "d_suffix_a.aut", "d_suffix_b.aut",
              "d_suffix_b_abc.aut", "h1.aut", "h2.aut", "h3.aut", "u_exact.aut",
              "u_redundant.aut"}) {
            INFO(name);
            std::string text = read_file(data_path(name));
            CHECK(print_native(parse_native(text)) == text);
        }
    }
    SECTION("the in-code fixtures match the stored files") {
        CHECK(same_structure(parity4(), load("parity4.aut")));
        CHECK(same_structure(dba3_abc(), load("dba3.aut")));
        CHECK(same_structure(u_exact(), load("u_exact.aut")));
        CHECK(same_structure(d_suffix_a(), load("d_suffix_a.aut")));
        CHECK(same_structure(d_suffix_b(), load("d_suffix_b.aut")));
    }
}

TEST_CASE("native parsing diagnostics") {
    SECTION("missing transitions are listed, and the repair flag fills them") {
        std::string doc =
            "alphabet: a b\n"
            "states: 2\n"
            "initial: 0\n"
            "acceptance: buchi\n"
            "acc 1\n"
            "trans 0 a 1\n"
            "trans 1 b 0\n";
        CHECK_THROWS_WITH(parse_native(doc),
                          ContainsSubstring("(0, b)") && ContainsSubstring("(1, a)"));
        ParseOptions repair;
        repair.complete_with_selfloop = true;
        OmegaAutomaton fixed = parse_native(doc, repair);
        CHECK(fixed.ts().next(0, 1) == 0);
        CHECK(fixed.ts().next(1, 0) == 1);
    }
    SECTION("a weak-buchi declaration is checked against the component graph") {
        std::string doc =
            "alphabet: a b\n"
            "states: 2\n"
            "initial: 0\n"
            "acceptance: weak-buchi\n"
            "acc 1\n"
            "trans 0 a 0\n"
            "trans 0 b 1\n"
            "trans 1 a 0\n"
            "trans 1 b 1\n";
        CHECK_THROWS_WITH(parse_native(doc), ContainsSubstring("weak"));
        std::string plain = doc;
        plain.replace(plain.find("weak-buchi"), 10, "buchi");
        OmegaAutomaton ok = parse_native(plain);
        CHECK_FALSE(ok.is_weak());
    }
    SECTION("unknown letters are reported with their line") {
        std::string doc =
            "alphabet: a b\n"
            "states: 1\n"
            "initial: 0\n"
            "acceptance: buchi\n"
            "trans 0 a 0\n"
            "trans 0 c 0\n";
        CHECK_THROWS_WITH(parse_native(doc), ContainsSubstring("line 6") &&
                                                 ContainsSubstring("unknown letter 'c'"));
    }
    SECTION("assorted malformed documents") {
        CHECK_THROWS_AS(parse_native("states: 1\ninitial: 0\nacceptance: buchi\n"), ParseError);
        CHECK_THROWS_AS(
            parse_native("alphabet: a\nstates: 1\ninitial: 0\nacceptance: rabin\ntrans 0 a 0\n"),
            ParseError);
        CHECK_THROWS_AS(
            parse_native("alphabet: a\nstates: 1\ninitial: 3\nacceptance: buchi\ntrans 0 a 0\n"),
            ParseError);
    }
    SECTION("the partial four-state automaton lacks one edge until repaired") {
        CHECK_THROWS_WITH(read_automaton_file(data_path("parity4_partial.aut")),
                          ContainsSubstring("parity4_partial.aut:") && ContainsSubstring("(3, b)"));
        ParseOptions repair;
        repair.complete_with_selfloop = true;
        OmegaAutomaton fixed = read_automaton_file(data_path("parity4_partial.aut"), repair);
        CHECK(same_structure(fixed, parity4()));
    }
}

TEST_CASE("ultimately periodic word literals") {
    SECTION("single-character alphabets use the compact spelling") {
        UltimatelyPeriodicWord w1(Word{0, 1}, Word{0});
        CHECK(print_upword(ab(), w1) == "ab(a)");
        CHECK(parse_upword(ab(), "ab(a)") == w1);
        UltimatelyPeriodicWord w2(Word{}, Word{0, 1});
        CHECK(print_upword(ab(), w2) == "(ab)");
        CHECK(parse_upword(ab(), "(ab)") == w2);
    }
    SECTION("multi-character alphabets use the bracketed spelling") {
        Alphabet multi({"v1", "v2", "x_v1", "x_v2"});
        UltimatelyPeriodicWord w(Word{0, 2}, Word{1});
        CHECK(print_upword(multi, w) == "[v1,x_v1](v2)");
        CHECK(parse_upword(multi, "[v1,x_v1](v2)") == w);
        UltimatelyPeriodicWord pure(Word{}, Word{3});
        CHECK(parse_upword(multi, print_upword(multi, pure)) == pure);
        CHECK(parse_upword(multi, "[v1, x_v1](v2)") == w);  // blanks tolerated
    }
    SECTION("printing then parsing is the identity on canonical words") {
        for (const UltimatelyPeriodicWord& w : all_upwords(ab(), 4))
            CHECK(parse_upword(ab(), print_upword(ab(), w)) == w);
    }
    SECTION("malformed literals") {
        CHECK_THROWS_AS(parse_upword(ab(), "ab()"), ParseError);
        CHECK_THROWS_AS(parse_upword(ab(), "c(a)"), ParseError);
        CHECK_THROWS_AS(parse_upword(ab(), "ab"), ParseError);
        Alphabet multi({"v1", "v2"});
        CHECK_THROWS_AS(parse_upword(multi, "[v1(v2)"), ParseError);
        CHECK_THROWS_AS(parse_upword(multi, "[v3](v2)"), ParseError);
    }
}

TEST_CASE("HOA interchange") {
    SECTION("a parity automaton announces both priority counts") {
        OmegaAutomaton a = parity4();
        std::string hoa = export_hoa(a);
        // acc-name carries the number of distinct priorities in use; the
        // Acceptance header carries the set count, one larger here because
        // the lowest priority is odd.
        CHECK_THAT(hoa, ContainsSubstring("acc-name: parity max even 4"));
        CHECK_THAT(hoa, ContainsSubstring("Acceptance: 5 "));
        CHECK_THAT(hoa, ContainsSubstring("properties: deterministic complete state-acc"));
        CHECK(same_structure(import_hoa(hoa), a));
    }
    SECTION("an optimized automaton exports the smaller counts") {
        OmegaAutomaton opt = optimize_priorities(parity4(), d_suffix_a());
        REQUIRE(opt.distinct_priority_count() == 3);
        std::string hoa = export_hoa(opt);
        CHECK_THAT(hoa, ContainsSubstring("acc-name: parity max even 3"));
        CHECK_THAT(hoa, ContainsSubstring("Acceptance: 3 "));
        OmegaAutomaton back = import_hoa(hoa);
        CHECK_FALSE(d_equivalent(parity4(), back, d_suffix_a()).has_value());
    }
    SECTION("weak automata round-trip with the weak property") {
        OmegaAutomaton a = u_exact();
        std::string hoa = export_hoa(a);
        CHECK_THAT(hoa, ContainsSubstring("acc-name: Buchi"));
        CHECK_THAT(hoa, ContainsSubstring(" weak"));
        OmegaAutomaton b = import_hoa(hoa);
        CHECK(same_structure(a, b));
        CHECK(b.is_weak());
    }
    SECTION("unsupported inputs are named") {
        std::string base =
            "HOA: v1\n"
            "States: 1\n"
            "Start: 0\n"
            "AP: 2 \"a\" \"b\"\n"
            "acc-name: Buchi\n"
            "Acceptance: 1 Inf(0)\n"
            "--BODY--\n"
            "State: 0 {0}\n"
            "[0&!1] 0\n"
            "[!0&1] 0\n"
            "--END--\n";
        OmegaAutomaton ok = import_hoa(base);
        CHECK(ok.num_states() == 1);
        CHECK(ok.accepting().contains(0));

        auto reject = [&](const std::string& from, const std::string& to,
                          const std::string& feature) {
            std::string doc = base;
            doc.replace(doc.find(from), from.size(), to);
            CHECK_THROWS_MATCHES(import_hoa(doc), UnsupportedFeatureError,
                                 Catch::Matchers::MessageMatches(ContainsSubstring(feature)));
        };
        reject("Start: 0", "Start: 0&1", "alternation");
        reject("Start: 0", "Start: 0\nStart: 0", "nondeterminis");
        reject("[0&!1] 0", "[0&!1] 0 {0}", "transition");
        reject("[0&!1] 0", "[0] 0", "one-hot");
        reject("[0&!1] 0\n[!0&1] 0\n", "0\n0\n", "implicit");
    }
}

TEST_CASE("automaton files on disk") {
    OmegaAutomaton a = parity4();
    SECTION("the extension picks the format") {
        std::string native = stash("roundtrip.aut", a);
        CHECK(same_structure(read_automaton_file(native), a));
        std::string hoa = stash("roundtrip.hoa", a);
        CHECK(same_structure(read_automaton_file(hoa), a));
        CHECK_THAT(read_file(hoa), StartsWith("HOA: v1"));
        CHECK_THAT(read_file(native), StartsWith("alphabet:"));
    }
    SECTION("missing files and parse failures name the path") {
        CHECK_THROWS_AS(read_automaton_file("/tmp/definitely_missing.aut"), InvalidArgumentError);
        std::string bad = tmp_path("broken.aut");
        {
            std::ofstream out(bad);
            out << "alphabet: a\nstates: 1\ninitial: 0\nacceptance: buchi\n";
            // no transitions
        }
        CHECK_THROWS_WITH(read_automaton_file(bad), StartsWith(bad + ":"));
    }
}

TEST_CASE("command line: equivalence and congruence queries") {
    SECTION("equivalence modulo the don't-care set") {
        CliResult r = run_cli("check-equiv " + data_path("h3.aut") + " " +
                              data_path("u_exact.aut") + " --dontcare " +
                              data_path("d_suffix_b.aut"));
        CHECK(r.exit_code == 0);
        CHECK(r.out == "equivalent\n");
        CHECK(r.err.empty());
    }
    SECTION("plain inequivalence yields a parseable counterexample") {
        CliResult r =
            run_cli("check-equiv " + data_path("h3.aut") + " " + data_path("u_exact.aut"));
        CHECK(r.exit_code == 1);
        REQUIRE_THAT(r.out, StartsWith("counterexample: "));
        std::string literal = r.out.substr(std::string("counterexample: ").size());
        literal.pop_back();  // newline
        UltimatelyPeriodicWord ce = parse_upword(ab(), literal);
        CHECK(accepts(load("h3.aut"), ce) != accepts(u_exact(), ce));
        CHECK(accepts(d_suffix_b(), ce));  // the two differ only on don't-cares
    }
    SECTION("trivial right-congruence test") {
        CliResult yes = run_cli("check-trivial-rc " + data_path("d_suffix_b.aut"));
        CHECK(yes.exit_code == 0);
        CHECK(yes.out == "yes\n");
        CliResult no = run_cli("check-trivial-rc " + data_path("dba3.aut"));
        CHECK(no.exit_code == 1);
        CHECK(no.out == "no\n");
        CliResult dg = run_cli("check-trivial-rc " + data_path("path3_padding.aut"));
        CHECK(dg.exit_code == 0);
        CHECK(dg.out == "yes\n");
    }
}

TEST_CASE("command line: optimization and minimization") {
    SECTION("priority optimization reports the count drop and writes a file") {
        std::string out_path = tmp_path("parity4_optimized.aut");
        CliResult r = run_cli("optimize-priorities " + data_path("parity4.aut") + " --dontcare " +
                              data_path("d_suffix_a.aut") + " -o " + out_path);
        CHECK(r.exit_code == 0);
        CHECK(r.out == "priorities: 4 -> 3\n");
        OmegaAutomaton opt = read_automaton_file(out_path);
        CHECK(opt.distinct_priority_count() == 3);
        CHECK_FALSE(d_equivalent(opt, parity4(), d_suffix_a()).has_value());
    }
    SECTION("without an output file the automaton goes to stdout") {
        CliResult r = run_cli("optimize-priorities " + data_path("parity4.aut") + " --dontcare " +
                              data_path("d_suffix_a.aut"));
        CHECK(r.exit_code == 0);
        CHECK_THAT(r.out, StartsWith("priorities: 4 -> 3\n"));
        OmegaAutomaton opt = parse_native(r.out.substr(r.out.find("alphabet:")));
        CHECK(opt.num_states() == 4);
    }
    SECTION("canonical-quotient minimization succeeds on the three-state example") {
        std::string empty_abc = stash("empty_abc.aut", empty_language_automaton(abc()));
        std::string out_path = tmp_path("dba3_min.aut");
        CliResult r = run_cli("minimize " + data_path("dba3.aut") + " --dontcare " + empty_abc +
                              " --target buchi -o " + out_path);
        CHECK(r.exit_code == 0);
        OmegaAutomaton m = read_automaton_file(out_path);
        CHECK(m.num_states() == 3);
        CHECK(m.kind() == AcceptanceKind::buchi);
    }
    SECTION("a language outside the class is reported with exit code 2") {
        std::string finb = stash("finb.aut", finitely_many_b());
        std::string empty_ab = stash("empty_ab.aut", empty_language_automaton(ab()));
        CliResult r =
            run_cli("minimize " + finb + " --dontcare " + empty_ab + " --target buchi");
        CHECK(r.exit_code == 2);
        CHECK(r.out == "not in class\n");
    }
    SECTION("weak minimization recovers the stored five-state automaton") {
        std::string out_path = tmp_path("uexact_min.aut");
        CliResult r = run_cli("minimize-wdba " + data_path("u_exact.aut") + " --dontcare " +
                              data_path("d_suffix_b.aut") + " -o " + out_path);
        CHECK(r.exit_code == 0);
        CHECK(same_structure(read_automaton_file(out_path), load("h3.aut")));
    }
}

TEST_CASE("command line: learning") {
    SECTION("the scripted run prints the stored trace and learns the result") {
        std::string out_path = tmp_path("learned.aut");
        CliResult r = run_cli("learn --target " + data_path("u_exact.aut") + " --dontcare " +
                              data_path("d_suffix_b.aut") + " --script '(a),(ab)' --trace -o " +
                              out_path);
        CHECK(r.exit_code == 0);
        CHECK(r.out == read_file(data_path("learn_trace.golden")));
        CHECK(r.err.empty());
        CHECK(same_structure(read_automaton_file(out_path), load("h3.aut")));
    }
    SECTION("the unscripted teacher reaches an equivalent minimal result") {
        std::string out_path = tmp_path("learned_honest.aut");
        CliResult r = run_cli("learn --target " + data_path("u_exact.aut") + " --dontcare " +
                              data_path("d_suffix_b.aut") + " -o " + out_path);
        CHECK(r.exit_code == 0);
        OmegaAutomaton learned = read_automaton_file(out_path);
        CHECK(learned.num_states() == 5);
        CHECK(learned.is_weak());
        CHECK_FALSE(d_equivalent(learned, u_exact(), d_suffix_b()).has_value());
    }
}

TEST_CASE("command line: reduction tools") {
    SECTION("reduce writes the instance pair and prints both paths") {
        std::string prefix = tmp_path("red");
        CliResult r = run_cli("reduce --graph " + data_path("path3_graph.txt") + " -o " + prefix);
        CHECK(r.exit_code == 0);
        CHECK(r.out == prefix + ".ag.aut\n" + prefix + ".dg.aut\n");
        CHECK(same_structure(read_automaton_file(prefix + ".ag.aut"), load("path3_hard.aut")));
        CHECK(same_structure(read_automaton_file(prefix + ".dg.aut"), load("path3_padding.aut")));
    }
    SECTION("extract-coloring prints one vertex per line") {
        CliResult r = run_cli("extract-coloring " + data_path("path3_colored.aut") + " --graph " +
                              data_path("path3_graph.txt"));
        CHECK(r.exit_code == 0);
        CHECK(r.out == "v1=1\nv2=2\nv3=2\n");
    }
    SECTION("a fruitless extraction is diagnosed with exit code 1") {
        Reduction red = build_reduction(path3());
        std::string sour = stash("sour.aut", OmegaAutomaton::parity(red.a_g.ts(), {1, 1, 1, 1}));
        CliResult r =
            run_cli("extract-coloring " + sour + " --graph " + data_path("path3_graph.txt"));
        CHECK(r.exit_code == 1);
        CHECK(r.out == "no coloring: some vertex loop visits no even-priority state\n");
    }
}

TEST_CASE("command line: failure modes and global flags") {
    SECTION("missing input files exit with the usage code") {
        CliResult r = run_cli("check-equiv /tmp/definitely_missing.aut " + data_path("parity4.aut"));
        CHECK(r.exit_code == 64);
        CHECK_THAT(r.err, ContainsSubstring("error:"));
        CHECK(r.out.empty());
    }
    SECTION("unknown subcommands exit with the usage code") {
        CliResult r = run_cli("frobnicate");
        CHECK(r.exit_code == 64);
    }
    SECTION("parse failures carry the file name; the repair flag fixes the partial automaton") {
        CliResult broken = run_cli("check-equiv " + data_path("parity4_partial.aut") + " " +
                                   data_path("parity4.aut"));
        CHECK(broken.exit_code == 64);
        CHECK_THAT(broken.err, ContainsSubstring("parity4_partial.aut"));
        CliResult repaired = run_cli("--complete-with-selfloop check-equiv " +
                                     data_path("parity4_partial.aut") + " " + data_path("parity4.aut"));
        CHECK(repaired.exit_code == 0);
        CHECK(repaired.out == "equivalent\n");
    }
    SECTION("precondition violations exit with their own code") {
        CliResult r = run_cli("minimize-wdba " + data_path("u_exact.aut") + " --dontcare " +
                              data_path("u_exact.aut"));
        CHECK(r.exit_code == 65);
        CHECK_THAT(r.err, ContainsSubstring("trivial right-congruence"));
    }
    SECTION("alphabet mismatches are invalid arguments") {
        CliResult r = run_cli("check-equiv " + data_path("parity4.aut") + " " +
                              data_path("dba3.aut"));
        CHECK(r.exit_code == 64);
    }
}
