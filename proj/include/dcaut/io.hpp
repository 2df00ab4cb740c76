#pragma once

#include <algorithm>
#include <fstream>
#include <istream>
#include <map>
#include <optional>
#include <ostream>
#include <set>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "dcaut/automaton.hpp"
#include "dcaut/errors.hpp"
#include "dcaut/state_set.hpp"
#include "dcaut/transition_system.hpp"
#include "dcaut/upword.hpp"

namespace dcaut {

// ---------------------------------------------------------------------------
// Ultimately periodic word literals: "u(v)" for single-character alphabets
// (letters concatenated), "[a,b](c)" with comma-separated letters otherwise.
// Output is always canonical; parsing canonicalizes.
// ---------------------------------------------------------------------------

namespace detail {

inline std::string join_letters(const Alphabet& alphabet, const Word& w, const char* sep) {
    std::string out;
    for (std::size_t i = 0; i < w.size(); ++i) {
        if (i) out += sep;
        out += alphabet.letter(w[i]);
    }
    return out;
}

inline Word parse_letter_list(const Alphabet& alphabet, const std::string& text, bool single) {
    Word out;
    if (single) {
        for (char ch : text) {
            std::optional<int> idx = alphabet.find(std::string(1, ch));
            if (!idx) throw ParseError("unknown letter '" + std::string(1, ch) + "'");
            out.push_back(*idx);
        }
        return out;
    }
    std::string token;
    std::istringstream in(text);
    while (std::getline(in, token, ',')) {
        // trim blanks around the token
        std::size_t b = token.find_first_not_of(" \t");
        std::size_t e = token.find_last_not_of(" \t");
        if (b == std::string::npos) throw ParseError("empty letter in word literal");
        token = token.substr(b, e - b + 1);
        std::optional<int> idx = alphabet.find(token);
        if (!idx) throw ParseError("unknown letter '" + token + "'");
        out.push_back(*idx);
    }
    return out;
}

}  // namespace detail

inline std::string print_upword(const Alphabet& alphabet, const UltimatelyPeriodicWord& w) {
    bool single = alphabet.single_char();
    const char* sep = single ? "" : ",";
    std::string spoke = detail::join_letters(alphabet, w.spoke(), sep);
    std::string cycle = detail::join_letters(alphabet, w.cycle(), sep);
    if (single) return spoke + "(" + cycle + ")";
    std::string out;
    if (!w.spoke().empty()) out += "[" + spoke + "]";
    return out + "(" + cycle + ")";
}

inline UltimatelyPeriodicWord parse_upword(const Alphabet& alphabet, const std::string& text) {
    std::size_t open = text.find('(');
    std::size_t close = text.rfind(')');
    if (open == std::string::npos || close == std::string::npos || close != text.size() - 1 ||
        close < open)
        throw ParseError("word literal must end in a parenthesized cycle: " + text);
    std::string spoke_text = text.substr(0, open);
    std::string cycle_text = text.substr(open + 1, close - open - 1);
    if (!spoke_text.empty() && spoke_text.front() == '[') {
        if (spoke_text.back() != ']') throw ParseError("unterminated '[' in word literal: " + text);
        spoke_text = spoke_text.substr(1, spoke_text.size() - 2);
        Word spoke = detail::parse_letter_list(alphabet, spoke_text, false);
        Word cycle = detail::parse_letter_list(alphabet, cycle_text, false);
        if (cycle.empty()) throw ParseError("empty cycle in word literal: " + text);
        return UltimatelyPeriodicWord(std::move(spoke), std::move(cycle));
    }
    bool single = alphabet.single_char();
    Word spoke = detail::parse_letter_list(alphabet, spoke_text, single);
    Word cycle = detail::parse_letter_list(alphabet, cycle_text, single);
    if (cycle.empty()) throw ParseError("empty cycle in word literal: " + text);
    return UltimatelyPeriodicWord(std::move(spoke), std::move(cycle));
}

// ---------------------------------------------------------------------------
// Native automaton documents.
//
//   # comment
//   alphabet: a b
//   states: 3
//   initial: 0
//   acceptance: parity | buchi | weak-buchi
//   prio <state> <priority>     (parity; unlisted states default to 0)
//   acc <state>                 (buchi / weak-buchi)
//   trans <state> <letter> <state>
//
// Parsing validates completeness (every state/letter pair) and, for
// weak-buchi, that acceptance is uniform on every component.
// ---------------------------------------------------------------------------

struct ParseOptions {
    bool complete_with_selfloop = false;
};

inline void print_native(std::ostream& out, const OmegaAutomaton& a) {
    const DeterministicTransitionSystem& ts = a.ts();
    out << "alphabet:";
    for (int i = 0; i < ts.alphabet().size(); ++i) out << " " << ts.alphabet().letter(i);
    out << "\n";
    out << "states: " << ts.num_states() << "\n";
    out << "initial: " << ts.initial() << "\n";
    if (a.kind() == AcceptanceKind::parity) {
        out << "acceptance: parity\n";
        for (int q = 0; q < ts.num_states(); ++q) out << "prio " << q << " " << a.priorities()[q] << "\n";
    } else {
        out << "acceptance: " << (a.is_weak() ? "weak-buchi" : "buchi") << "\n";
        for (int q : a.accepting().elements()) out << "acc " << q << "\n";
    }
    for (int q = 0; q < ts.num_states(); ++q)
        for (int l = 0; l < ts.alphabet().size(); ++l)
            out << "trans " << q << " " << ts.alphabet().letter(l) << " " << ts.next(q, l) << "\n";
}

inline std::string print_native(const OmegaAutomaton& a) {
    std::ostringstream out;
    print_native(out, a);
    return out.str();
}

inline OmegaAutomaton parse_native(std::istream& in, const ParseOptions& options = {}) {
    std::optional<Alphabet> alphabet;
    std::optional<int> num_states;
    std::optional<int> initial;
    std::optional<std::string> acceptance;
    std::vector<std::pair<int, int>> prio_lines;   // (state, priority)
    std::vector<int> acc_lines;                    // state
    std::map<std::pair<int, int>, int> trans;      // (state, letter) -> state

    std::string line;
    int lineno = 0;
    auto need_state = [&](int q, int at) {
        if (!num_states) throw ParseError(at, "'states:' must precede state references");
        if (q < 0 || q >= *num_states)
            throw ParseError(at, "state " + std::to_string(q) + " out of range");
    };
    while (std::getline(in, line)) {
        ++lineno;
        std::size_t hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        std::istringstream row(line);
        std::string key;
        if (!(row >> key)) continue;
        if (key == "alphabet:") {
            if (alphabet) throw ParseError(lineno, "duplicate alphabet header");
            std::vector<std::string> letters;
            std::string letter;
            while (row >> letter) letters.push_back(letter);
            if (letters.empty()) throw ParseError(lineno, "alphabet needs at least one letter");
            alphabet = Alphabet(std::move(letters));
        } else if (key == "states:") {
            if (num_states) throw ParseError(lineno, "duplicate states header");
            int n;
            if (!(row >> n) || n < 1) throw ParseError(lineno, "states must be a positive count");
            num_states = n;
        } else if (key == "initial:") {
            if (initial) throw ParseError(lineno, "duplicate initial header");
            int q;
            if (!(row >> q)) throw ParseError(lineno, "initial needs a state index");
            need_state(q, lineno);
            initial = q;
        } else if (key == "acceptance:") {
            if (acceptance) throw ParseError(lineno, "duplicate acceptance header");
            std::string name;
            if (!(row >> name)) throw ParseError(lineno, "acceptance needs a name");
            if (name != "parity" && name != "buchi" && name != "weak-buchi")
                throw ParseError(lineno, "unknown acceptance '" + name + "'");
            acceptance = name;
        } else if (key == "prio") {
            int q, p;
            if (!(row >> q >> p)) throw ParseError(lineno, "prio needs a state and a priority");
            need_state(q, lineno);
            if (p < 0) throw ParseError(lineno, "priorities must be non-negative");
            prio_lines.emplace_back(q, p);
        } else if (key == "acc") {
            int q;
            if (!(row >> q)) throw ParseError(lineno, "acc needs a state index");
            need_state(q, lineno);
            acc_lines.push_back(q);
        } else if (key == "trans") {
            int from, to;
            std::string letter;
            if (!(row >> from >> letter >> to))
                throw ParseError(lineno, "trans needs source, letter, target");
            need_state(from, lineno);
            need_state(to, lineno);
            if (!alphabet) throw ParseError(lineno, "'alphabet:' must precede transitions");
            std::optional<int> found = alphabet->find(letter);
            if (!found) throw ParseError(lineno, "unknown letter '" + letter + "'");
            int l = *found;
            auto key_pair = std::make_pair(from, l);
            if (trans.count(key_pair))
                throw ParseError(lineno, "duplicate transition for state " + std::to_string(from) +
                                             " letter '" + letter + "'");
            trans[key_pair] = to;
        } else {
            throw ParseError(lineno, "unknown directive '" + key + "'");
        }
        std::string extra;
        if (row >> extra) throw ParseError(lineno, "trailing token '" + extra + "'");
    }
    if (!alphabet) throw ParseError(lineno, "missing alphabet header");
    if (!num_states) throw ParseError(lineno, "missing states header");
    if (!initial) throw ParseError(lineno, "missing initial header");
    if (!acceptance) throw ParseError(lineno, "missing acceptance header");

    int n = *num_states;
    int m = alphabet->size();
    std::vector<StateId> delta(static_cast<std::size_t>(n) * m, -1);
    for (const auto& [key_pair, to] : trans) delta[key_pair.first * m + key_pair.second] = to;
    std::vector<std::pair<int, int>> missing;
    for (int q = 0; q < n; ++q)
        for (int l = 0; l < m; ++l)
            if (delta[q * m + l] < 0) {
                if (options.complete_with_selfloop)
                    delta[q * m + l] = q;
                else
                    missing.emplace_back(q, l);
            }
    if (!missing.empty()) {
        std::string text = "incomplete transition function; missing:";
        for (auto [q, l] : missing)
            text += " (" + std::to_string(q) + ", " + alphabet->letter(l) + ")";
        throw ParseError(lineno, text);
    }
    DeterministicTransitionSystem ts(*alphabet, n, *initial, std::move(delta));

    if (*acceptance == "parity") {
        if (!acc_lines.empty()) throw ParseError(lineno, "'acc' lines in a parity document");
        std::vector<int> prio(n, 0);
        for (auto [q, p] : prio_lines) prio[q] = p;
        return OmegaAutomaton::parity(std::move(ts), std::move(prio));
    }
    if (!prio_lines.empty()) throw ParseError(lineno, "'prio' lines in a Büchi document");
    StateSet acc(n);
    for (int q : acc_lines) acc.insert(q);
    bool weak = (*acceptance == "weak-buchi");
    if (weak && !is_mscc_uniform(ts, acc))
        throw ParseError(lineno,
                         "declared weak-buchi, but some component mixes accepting and "
                         "rejecting states");
    return OmegaAutomaton::buchi(std::move(ts), std::move(acc), weak);
}

inline OmegaAutomaton parse_native(const std::string& text, const ParseOptions& options = {}) {
    std::istringstream in(text);
    return parse_native(in, options);
}

// ---------------------------------------------------------------------------
// HOA interchange, deliberately narrow: deterministic, complete, state-based
// acceptance, one-hot labels (letter i = the valuation with exactly
// proposition i true), acc-name "Buchi" or "parity max even n".
// ---------------------------------------------------------------------------

namespace detail {

/// Order- and parity-preserving renaming of the used priorities into a
/// minimal range starting at 0 or 1. The identity whenever the used set is
/// already gap-free in this sense (which holds for everything this library
/// produces).
inline std::vector<int> compact_priorities(const std::vector<int>& prio) {
    std::set<int> used(prio.begin(), prio.end());
    std::map<int, int> to;
    int next = -1;
    for (int p : used) {
        if (next < 0)
            next = p % 2;
        else
            next += ((p % 2) == (next % 2)) ? 2 : 1;
        to[p] = next;
    }
    std::vector<int> out;
    out.reserve(prio.size());
    for (int p : prio) out.push_back(to[p]);
    return out;
}

inline std::string parity_max_even_formula(int p) {
    if (p == 0) return "Inf(0)";
    std::string rest = parity_max_even_formula(p - 1);
    std::string ps = std::to_string(p);
    if (p % 2 == 0) return "Inf(" + ps + ") | (Fin(" + ps + ") & (" + rest + "))";
    return "Fin(" + ps + ") & (" + rest + ")";
}

}  // namespace detail

inline void export_hoa(std::ostream& out, const OmegaAutomaton& a) {
    const DeterministicTransitionSystem& ts = a.ts();
    int n = ts.num_states();
    int m = ts.alphabet().size();
    std::vector<int> sets;  // per state: acceptance set index, -1 for none
    int num_sets;
    std::string acc_name, acc_formula;
    if (a.kind() == AcceptanceKind::parity) {
        sets = detail::compact_priorities(a.priorities());
        num_sets = *std::max_element(sets.begin(), sets.end()) + 1;
        // The acc-name integer records how many distinct priorities are in
        // use; the Acceptance header carries the actual set count, which is
        // one larger whenever the lowest priority is odd.
        acc_name = "parity max even " + std::to_string(a.distinct_priority_count());
        acc_formula = detail::parity_max_even_formula(num_sets - 1);
    } else {
        sets.assign(n, -1);
        for (int q : a.accepting().elements()) sets[q] = 0;
        num_sets = 1;
        acc_name = "Buchi";
        acc_formula = "Inf(0)";
    }

    out << "HOA: v1\n";
    out << "States: " << n << "\n";
    out << "Start: " << ts.initial() << "\n";
    out << "AP: " << m;
    for (int l = 0; l < m; ++l) out << " \"" << ts.alphabet().letter(l) << "\"";
    out << "\n";
    out << "acc-name: " << acc_name << "\n";
    out << "Acceptance: " << num_sets << " " << acc_formula << "\n";
    out << "properties: deterministic complete state-acc";
    if (a.kind() == AcceptanceKind::buchi && a.is_weak()) out << " weak";
    out << "\n";
    out << "--BODY--\n";
    for (int q = 0; q < n; ++q) {
        out << "State: " << q << " \"" << ts.name(q) << "\"";
        if (sets[q] >= 0) out << " {" << sets[q] << "}";
        out << "\n";
        for (int l = 0; l < m; ++l) {
            out << "[";
            for (int j = 0; j < m; ++j) {
                if (j) out << "&";
                if (j != l) out << "!";
                out << j;
            }
            out << "] " << ts.next(q, l) << "\n";
        }
    }
    out << "--END--\n";
}

inline std::string export_hoa(const OmegaAutomaton& a) {
    std::ostringstream out;
    export_hoa(out, a);
    return out.str();
}

inline OmegaAutomaton import_hoa(std::istream& in) {
    std::optional<int> num_states;
    std::optional<int> start;
    std::vector<std::string> aps;
    bool have_aps = false;
    std::optional<std::string> acc_name;
    std::optional<int> acc_count;
    bool body = false;
    int lineno = 0;
    std::string line;

    // header pass collects everything up to --BODY--
    std::vector<std::string> body_lines;
    std::vector<int> body_linenos;
    while (std::getline(in, line)) {
        ++lineno;
        if (line == "--BODY--") {
            body = true;
            continue;
        }
        if (line == "--END--") break;
        if (body) {
            body_lines.push_back(line);
            body_linenos.push_back(lineno);
            continue;
        }
        std::istringstream row(line);
        std::string key;
        if (!(row >> key)) continue;
        if (key == "HOA:") {
            std::string version;
            row >> version;
            if (version != "v1") throw UnsupportedFeatureError("HOA version " + version);
        } else if (key == "States:") {
            int v;
            if (!(row >> v) || v < 1) throw ParseError(lineno, "bad States: header");
            num_states = v;
        } else if (key == "Start:") {
            if (start) throw UnsupportedFeatureError("multiple start states (nondeterminism)");
            std::string rest;
            std::getline(row, rest);
            if (rest.find('&') != std::string::npos)
                throw UnsupportedFeatureError("alternation");
            std::istringstream value(rest);
            int v;
            if (!(value >> v)) throw ParseError(lineno, "bad Start: header");
            start = v;
        } else if (key == "AP:") {
            int count;
            if (!(row >> count) || count < 1) throw ParseError(lineno, "bad AP: header");
            std::string rest;
            std::getline(row, rest);
            std::size_t pos = 0;
            for (int i = 0; i < count; ++i) {
                std::size_t open = rest.find('"', pos);
                if (open == std::string::npos) throw ParseError(lineno, "missing AP name");
                std::size_t close = rest.find('"', open + 1);
                if (close == std::string::npos) throw ParseError(lineno, "unterminated AP name");
                aps.push_back(rest.substr(open + 1, close - open - 1));
                pos = close + 1;
            }
            have_aps = true;
        } else if (key == "acc-name:") {
            std::string rest;
            std::getline(row, rest);
            std::size_t b = rest.find_first_not_of(" \t");
            acc_name = (b == std::string::npos) ? "" : rest.substr(b);
        } else if (key == "Acceptance:") {
            int v;
            if (!(row >> v) || v < 1) throw ParseError(lineno, "bad Acceptance: header");
            acc_count = v;
        } else if (key == "properties:" || key == "name:" || key == "tool:") {
            // informative; the narrow fragment trusts acc-name for the condition shape
        } else {
            throw UnsupportedFeatureError("HOA header '" + key + "'");
        }
    }
    if (!num_states) throw ParseError(lineno, "missing States: header");
    if (!start) throw ParseError(lineno, "missing Start: header");
    if (!have_aps) throw ParseError(lineno, "missing AP: header");
    if (!acc_name) throw ParseError(lineno, "missing acc-name: header");
    if (!acc_count) throw ParseError(lineno, "missing Acceptance: header");
    if (!body) throw ParseError(lineno, "missing --BODY--");

    bool is_buchi = (*acc_name == "Buchi");
    if (!is_buchi) {
        std::istringstream an(*acc_name);
        std::string w1, w2, w3;
        int announced = 0;
        if (an >> w1 >> w2 >> w3 >> announced && w1 == "parity" && w2 == "max" &&
            w3 == "even" && announced >= 1) {
            // accepted: parity max even n (n is advisory: the distinct priority count)
        } else {
            throw UnsupportedFeatureError("acceptance '" + *acc_name + "'");
        }
    } else if (*acc_count != 1) {
        throw ParseError(lineno, "Büchi acceptance must announce exactly one set");
    }

    int n = *num_states;
    int m = static_cast<int>(aps.size());
    if (*start < 0 || *start >= n) throw ParseError(lineno, "start state out of range");
    std::vector<StateId> delta(static_cast<std::size_t>(n) * m, -1);
    std::vector<int> state_set(n, -1);
    std::vector<bool> seen_state(n, false);
    std::vector<std::string> names(n);

    int current = -1;
    for (std::size_t bi = 0; bi < body_lines.size(); ++bi) {
        const std::string& raw = body_lines[bi];
        int at = body_linenos[bi];
        std::istringstream row(raw);
        std::string first;
        if (!(row >> first)) continue;
        if (first == "State:") {
            std::string rest;
            std::getline(row, rest);
            std::istringstream srow(rest);
            int q;
            if (!(srow >> q)) throw ParseError(at, "State: needs an index");
            if (q < 0 || q >= n) throw ParseError(at, "state index out of range");
            if (seen_state[q]) throw ParseError(at, "duplicate State: " + std::to_string(q));
            seen_state[q] = true;
            current = q;
            names[q] = "q" + std::to_string(q);
            std::size_t open = rest.find('"');
            if (open != std::string::npos) {
                std::size_t close = rest.find('"', open + 1);
                if (close == std::string::npos) throw ParseError(at, "unterminated state name");
                names[q] = rest.substr(open + 1, close - open - 1);
            }
            std::size_t brace = rest.find('{');
            if (brace != std::string::npos) {
                std::size_t endb = rest.find('}', brace);
                if (endb == std::string::npos) throw ParseError(at, "unterminated acceptance sets");
                std::string inside = rest.substr(brace + 1, endb - brace - 1);
                std::istringstream sets(inside);
                int s, count = 0;
                while (sets >> s) {
                    state_set[q] = s;
                    ++count;
                }
                if (count > 1)
                    throw UnsupportedFeatureError("state in more than one acceptance set");
            }
        } else if (first.front() == '[') {
            if (current < 0) throw ParseError(at, "edge before any State:");
            std::size_t open = raw.find('[');
            std::size_t close = raw.find(']', open);
            if (close == std::string::npos) throw ParseError(at, "unterminated label");
            std::string expr = raw.substr(open + 1, close - open - 1);
            expr.erase(std::remove_if(expr.begin(), expr.end(),
                                      [](char ch) { return ch == ' ' || ch == '\t'; }),
                       expr.end());
            std::string rest = raw.substr(close + 1);
            // one-hot check: positives/negatives over all propositions
            std::vector<int> sign(m, 0);  // +1 positive, -1 negative
            std::istringstream conj(expr);
            std::string atom;
            while (std::getline(conj, atom, '&')) {
                if (atom.empty()) throw ParseError(at, "empty conjunct in label");
                bool neg = atom.front() == '!';
                std::string digits = neg ? atom.substr(1) : atom;
                if (digits.empty() ||
                    digits.find_first_not_of("0123456789") != std::string::npos) {
                    throw UnsupportedFeatureError("label expression '" + atom + "'");
                }
                int ap = std::stoi(digits);
                if (ap < 0 || ap >= m) throw ParseError(at, "proposition out of range in label");
                if (sign[ap] != 0) throw ParseError(at, "repeated proposition in label");
                sign[ap] = neg ? -1 : 1;
            }
            int letter = -1;
            bool onehot = true;
            for (int j = 0; j < m; ++j) {
                if (sign[j] == 1) {
                    if (letter >= 0) onehot = false;
                    letter = j;
                } else if (sign[j] == 0) {
                    onehot = false;  // unconstrained proposition: not a single valuation
                }
            }
            if (letter < 0 || !onehot)
                throw UnsupportedFeatureError("non-one-hot label [" + expr + "]");
            if (rest.find('&') != std::string::npos) throw UnsupportedFeatureError("alternation");
            std::istringstream targets(rest);
            int target;
            if (!(targets >> target)) throw ParseError(at, "edge needs a target state");
            if (target < 0 || target >= n) throw ParseError(at, "target state out of range");
            std::string extra;
            if (targets >> extra) {
                if (extra.front() == '{')
                    throw UnsupportedFeatureError("transition-based acceptance");
                throw UnsupportedFeatureError("multiple edge targets (nondeterminism)");
            }
            if (delta[static_cast<std::size_t>(current) * m + letter] >= 0)
                throw UnsupportedFeatureError("two edges for one letter (nondeterminism)");
            delta[static_cast<std::size_t>(current) * m + letter] = target;
        } else {
            throw UnsupportedFeatureError("implicit edge labels");
        }
    }

    std::vector<std::pair<int, int>> missing;
    for (int q = 0; q < n; ++q)
        for (int l = 0; l < m; ++l)
            if (delta[static_cast<std::size_t>(q) * m + l] < 0) missing.emplace_back(q, l);
    if (!missing.empty()) {
        std::string text = "incomplete transition function; missing:";
        for (auto [q, l] : missing) text += " (" + std::to_string(q) + ", " + aps[l] + ")";
        throw ParseError(lineno, text);
    }

    DeterministicTransitionSystem ts(Alphabet(aps), n, *start, std::move(delta),
                                     std::move(names));
    if (is_buchi) {
        StateSet acc(n);
        for (int q = 0; q < n; ++q) {
            if (state_set[q] > 0) throw ParseError(lineno, "Büchi set index must be 0");
            if (state_set[q] == 0) acc.insert(q);
        }
        bool weak = is_mscc_uniform(ts, acc);
        return OmegaAutomaton::buchi(std::move(ts), acc, weak);
    }
    std::vector<int> prio(n, 0);
    for (int q = 0; q < n; ++q) {
        if (state_set[q] < 0)
            throw UnsupportedFeatureError("state outside every priority set");
        if (state_set[q] >= *acc_count)
            throw ParseError(lineno, "priority beyond the announced set count");
        prio[q] = state_set[q];
    }
    return OmegaAutomaton::parity(std::move(ts), std::move(prio));
}

inline OmegaAutomaton import_hoa(const std::string& text) {
    std::istringstream in(text);
    return import_hoa(in);
}

// ---------------------------------------------------------------------------
// File dispatch by extension: ".hoa" is HOA, everything else native.
// ---------------------------------------------------------------------------

inline bool has_hoa_extension(const std::string& path) {
    return path.size() >= 4 && path.compare(path.size() - 4, 4, ".hoa") == 0;
}

inline OmegaAutomaton read_automaton_file(const std::string& path,
                                          const ParseOptions& options = {}) {
    std::ifstream in(path);
    if (!in) throw InvalidArgumentError("cannot open " + path);
    try {
        if (has_hoa_extension(path)) return import_hoa(in);
        return parse_native(in, options);
    } catch (const ParseError& e) {
        throw ParseError(path + ": " + e.what());
    }
}

inline void write_automaton_file(const std::string& path, const OmegaAutomaton& a) {
    std::ofstream out(path);
    if (!out) throw InvalidArgumentError("cannot open " + path + " for writing");
    if (has_hoa_extension(path))
        export_hoa(out, a);
    else
        print_native(out, a);
}

}  // namespace dcaut
