#pragma once

#include <algorithm>
#include <deque>
#include <map>
#include <optional>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

#include "dcaut/automaton.hpp"
#include "dcaut/errors.hpp"
#include "dcaut/langops.hpp"
#include "dcaut/state_set.hpp"
#include "dcaut/transition_system.hpp"
#include "dcaut/upword.hpp"

namespace dcaut {

enum class MemberAnswer { yes, no, dont_care };

/// Oracle interface for learning an unknown language U relative to a
/// don't-care set D with trivial right-congruence. member(u, v) classifies
/// u·v^ω (Yes: in U outside D; No: outside both; DontCare: in D);
/// equivalence either confirms the hypothesis up to D or returns a
/// counterexample outside D.
class Teacher {
public:
    virtual ~Teacher() = default;
    virtual const Alphabet& alphabet() const = 0;
    virtual MemberAnswer member(const Word& spoke, const Word& cycle) = 0;
    virtual std::optional<UltimatelyPeriodicWord> equivalence(const OmegaAutomaton& hypothesis) = 0;
};

/// Teacher backed by explicit automata for U and D. Counts queries.
class SimulatedTeacher : public Teacher {
public:
    SimulatedTeacher(OmegaAutomaton target, OmegaAutomaton dontcare)
        : target_(std::move(target)), dontcare_(std::move(dontcare)) {
        if (target_.alphabet() != dontcare_.alphabet())
            throw InvalidArgumentError("teacher requires one common alphabet");
        if (has_trivial_rc(dontcare_))
            return;
        throw PreconditionError("don't-care language lacks a trivial right-congruence");
    }

    const Alphabet& alphabet() const override { return target_.alphabet(); }

    MemberAnswer member(const Word& spoke, const Word& cycle) override {
        if (cycle.empty()) throw InvalidArgumentError("membership cycle must be non-empty");
        ++member_count_;
        UltimatelyPeriodicWord w(spoke, cycle);
        if (accepts(dontcare_, w)) return MemberAnswer::dont_care;
        return accepts(target_, w) ? MemberAnswer::yes : MemberAnswer::no;
    }

    std::optional<UltimatelyPeriodicWord> equivalence(const OmegaAutomaton& hypothesis) override {
        ++equivalence_count_;
        return d_equivalent(hypothesis, target_, dontcare_);
    }

    const OmegaAutomaton& target() const { return target_; }
    const OmegaAutomaton& dontcare() const { return dontcare_; }
    long member_queries() const { return member_count_; }
    long equivalence_queries() const { return equivalence_count_; }

private:
    OmegaAutomaton target_;
    OmegaAutomaton dontcare_;
    long member_count_ = 0;
    long equivalence_count_ = 0;
};

/// Teacher that answers equivalence queries from a queue of prepared
/// counterexamples, for reproducing a specific run. Each dequeued word is
/// verified to be a genuine counterexample for the submitted hypothesis;
/// if not (or once the queue is empty), the simulated teacher answers.
class ScriptedTeacher : public Teacher {
public:
    ScriptedTeacher(OmegaAutomaton target, OmegaAutomaton dontcare,
                    std::vector<UltimatelyPeriodicWord> forced)
        : inner_(std::move(target), std::move(dontcare)),
          forced_(forced.begin(), forced.end()) {}

    const Alphabet& alphabet() const override { return inner_.alphabet(); }

    MemberAnswer member(const Word& spoke, const Word& cycle) override {
        return inner_.member(spoke, cycle);
    }

    std::optional<UltimatelyPeriodicWord> equivalence(const OmegaAutomaton& hypothesis) override {
        if (!forced_.empty()) {
            UltimatelyPeriodicWord ce = forced_.front();
            forced_.pop_front();
            if (!accepts(inner_.dontcare(), ce) &&
                accepts(hypothesis, ce) != accepts(inner_.target(), ce))
                return ce;
        }
        return inner_.equivalence(hypothesis);
    }

    const SimulatedTeacher& inner() const { return inner_; }

private:
    SimulatedTeacher inner_;
    std::deque<UltimatelyPeriodicWord> forced_;
};

/// The learner's observation table: a prefix-closed word list S (kept in
/// shortlex order), a suffix-closed experiment list E of canonical UP words
/// outside D, and Yes/No entries for all rows in S ∪ SΣ. Entries can never
/// be don't-care: experiments are outside D and D's membership depends only
/// on the tail.
class ObservationTable {
public:
    explicit ObservationTable(Alphabet alphabet) : alphabet_(std::move(alphabet)) {}

    const Alphabet& alphabet() const { return alphabet_; }
    const std::vector<Word>& prefixes() const { return s_; }
    const std::vector<UltimatelyPeriodicWord>& experiments() const { return e_; }

    bool has_prefix(const Word& u) const { return std::binary_search(s_.begin(), s_.end(), u, ShortlexLess{}); }

    const std::vector<bool>& row(const Word& u) const {
        auto it = rows_.find(u);
        if (it == rows_.end()) throw InvalidArgumentError("no table row for the given word");
        return it->second;
    }

    bool value(const Word& u, int col) const {
        const std::vector<bool>& r = row(u);
        if (col < 0 || col >= static_cast<int>(r.size()))
            throw InvalidArgumentError("experiment index out of range");
        return r[col];
    }

    /// All s·σ with s ∈ S, in shortlex order, without duplicates.
    std::vector<Word> boundary() const {
        std::vector<Word> out;
        for (const Word& s : s_)
            for (int a = 0; a < alphabet_.size(); ++a) {
                Word t = s;
                t.push_back(a);
                out.push_back(std::move(t));
            }
        std::sort(out.begin(), out.end(), ShortlexLess{});
        out.erase(std::unique(out.begin(), out.end()), out.end());
        return out;
    }

    /// Words in SΣ whose row matches no S row (empty iff closed).
    std::vector<Word> closedness_defects() const {
        std::vector<Word> out;
        for (const Word& t : boundary()) {
            if (has_prefix(t)) continue;
            bool matched = false;
            for (const Word& s : s_)
                if (row(s) == row(t)) {
                    matched = true;
                    break;
                }
            if (!matched) out.push_back(t);
        }
        return out;
    }

    bool is_closed() const { return closedness_defects().empty(); }

    // Mutation is driven by the free functions below.
    friend ObservationTable make_observation_table(Teacher& teacher);
    friend ObservationTable& close_table(ObservationTable& table, Teacher& teacher);
    friend ObservationTable& add_experiment(ObservationTable& table, Teacher& teacher,
                                            const UltimatelyPeriodicWord& w);

private:
    bool cell(Teacher& teacher, const Word& u, const UltimatelyPeriodicWord& e) const {
        Word spoke = u;
        spoke.insert(spoke.end(), e.spoke().begin(), e.spoke().end());
        MemberAnswer ans = teacher.member(spoke, e.cycle());
        if (ans == MemberAnswer::dont_care)
            throw InternalInvariantError(
                "membership for table cell " + word_to_string(alphabet_, u) + " / " +
                print_cell_name(e) +
                " answered don't-care; the don't-care set lacks trivial right-congruence");
        return ans == MemberAnswer::yes;
    }

    std::string print_cell_name(const UltimatelyPeriodicWord& e) const {
        return word_to_string(alphabet_, e.spoke()) + "(" + word_to_string(alphabet_, e.cycle()) + ")";
    }

    void ensure_row(Teacher& teacher, const Word& u) {
        std::vector<bool>& r = rows_[u];
        while (r.size() < e_.size()) r.push_back(cell(teacher, u, e_[r.size()]));
    }

    void add_prefix(Teacher& teacher, const Word& u) {
        s_.insert(std::upper_bound(s_.begin(), s_.end(), u, ShortlexLess{}), u);
        ensure_row(teacher, u);
        for (int a = 0; a < alphabet_.size(); ++a) {
            Word t = u;
            t.push_back(a);
            ensure_row(teacher, t);
        }
    }

    Alphabet alphabet_;
    std::vector<Word> s_;
    std::vector<UltimatelyPeriodicWord> e_;
    std::map<Word, std::vector<bool>> rows_;
};

/// Fresh table with S = {ε}, E = ∅.
inline ObservationTable make_observation_table(Teacher& teacher) {
    ObservationTable table(teacher.alphabet());
    table.add_prefix(teacher, Word{});
    return table;
}

/// Repeatedly moves the lexicographically least boundary word whose row
/// matches no S row into S, until the table is closed.
inline ObservationTable& close_table(ObservationTable& table, Teacher& teacher) {
    for (;;) {
        std::vector<Word> defects = table.closedness_defects();
        if (defects.empty()) return table;
        const Word& pick = *std::min_element(defects.begin(), defects.end());
        table.add_prefix(teacher, pick);
    }
}

/// Extends E by the suffix closure of w (new elements sorted by total
/// length, then spoke, then cycle) and fills all rows.
inline ObservationTable& add_experiment(ObservationTable& table, Teacher& teacher,
                                        const UltimatelyPeriodicWord& w) {
    std::vector<UltimatelyPeriodicWord> fresh;
    for (const UltimatelyPeriodicWord& u : w.suffix_closure())
        if (std::find(table.e_.begin(), table.e_.end(), u) == table.e_.end()) fresh.push_back(u);
    std::sort(fresh.begin(), fresh.end(), UpwordLengthLess{});
    for (UltimatelyPeriodicWord& u : fresh) table.e_.push_back(std::move(u));
    for (auto& [word, r] : table.rows_) {
        (void)r;
        table.ensure_row(teacher, word);
    }
    return table;
}

/// The transition system T_{S,f} of a closed table: one state per S word,
/// transitions by row matching, initial state ε.
inline DeterministicTransitionSystem table_transition_system(const ObservationTable& table) {
    std::vector<Word> defects = table.closedness_defects();
    if (!defects.empty())
        throw PreconditionError("observation table is not closed: no matching row for " +
                                word_to_string(table.alphabet(), defects.front()));
    const std::vector<Word>& s = table.prefixes();
    int n = static_cast<int>(s.size());
    auto state_of = [&](const Word& u) {
        const std::vector<bool>& r = table.row(u);
        for (int j = 0; j < n; ++j)
            if (table.row(s[j]) == r) return j;
        throw InternalInvariantError("closed table has an unmatched row");
    };
    std::vector<StateId> delta(n * table.alphabet().size());
    std::vector<std::string> names;
    names.reserve(n);
    int initial = -1;
    for (int i = 0; i < n; ++i) {
        names.push_back(word_to_string(table.alphabet(), s[i]));
        if (s[i].empty()) initial = i;
        for (int a = 0; a < table.alphabet().size(); ++a) {
            Word t = s[i];
            t.push_back(a);
            delta[i * table.alphabet().size() + a] = state_of(t);
        }
    }
    if (initial < 0) throw InternalInvariantError("observation table lost the empty word");
    return DeterministicTransitionSystem(table.alphabet(), n, initial, std::move(delta),
                                         std::move(names));
}

/// Witness that the acceptance marking failed: states s (marked Yes) and t
/// (marked No) share a component, connected by z (s to t) and w (t to s),
/// with pure-cycle experiments x^ω, y^ω recurring through s resp. t.
struct Conflict {
    Word s, t, x, y, z, w;
};

struct MarkResult {
    std::optional<StateSet> accepting;
    std::optional<Conflict> conflict;
};

/// Marks every state in Inf(s·α) with the table entry f(s, α). Succeeds
/// with the accepting set (states of non-transient components carrying no
/// No-mark) unless some component carries both marks; then the
/// lexicographically least qualifying conflict is assembled.
inline MarkResult mark(const ObservationTable& table, const DeterministicTransitionSystem& ts) {
    const std::vector<Word>& s = table.prefixes();
    int n = static_cast<int>(s.size());
    if (ts.num_states() != n)
        throw InvalidArgumentError("transition system does not match the table");
    std::vector<bool> yes_mark(n, false), no_mark(n, false);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < static_cast<int>(table.experiments().size()); ++j) {
            const UltimatelyPeriodicWord& e = table.experiments()[j];
            Word spoke = s[i];
            spoke.insert(spoke.end(), e.spoke().begin(), e.spoke().end());
            StateSet inf = inf_set(ts, UltimatelyPeriodicWord(spoke, e.cycle()));
            for (int q : inf.elements()) (table.value(s[i], j) ? yes_mark : no_mark)[q] = true;
        }

    SccDecomposition dec = msccs(ts);
    auto mixed = [&](int comp) {
        bool y = false, no = false;
        for (int q : dec.components[comp].elements()) {
            y = y || yes_mark[q];
            no = no || no_mark[q];
        }
        return y && no;
    };

    int s_idx = -1;
    for (int i = 0; i < n && s_idx < 0; ++i)
        if (yes_mark[i] && mixed(dec.component_of[i])) s_idx = i;

    if (s_idx < 0) {
        StateSet acc(n);
        for (int c = 0; c < dec.size(); ++c) {
            if (dec.transient[c]) continue;
            bool rejected = false;
            for (int q : dec.components[c].elements()) rejected = rejected || no_mark[q];
            if (!rejected) acc |= dec.components[c];
        }
        return {acc, std::nullopt};
    }

    int comp = dec.component_of[s_idx];
    int t_idx = -1;
    for (int i = 0; i < n && t_idx < 0; ++i)
        if (no_mark[i] && dec.component_of[i] == comp) t_idx = i;

    auto find_cycle_experiment = [&](int state, bool wanted) -> const UltimatelyPeriodicWord* {
        const UltimatelyPeriodicWord* best = nullptr;
        for (int j = 0; j < static_cast<int>(table.experiments().size()); ++j) {
            const UltimatelyPeriodicWord& e = table.experiments()[j];
            if (!e.spoke().empty()) continue;
            if (table.value(s[state], j) != wanted) continue;
            if (!inf_set(ts, UltimatelyPeriodicWord(s[state], e.cycle())).contains(state)) continue;
            if (!best || e.cycle().size() < best->cycle().size()) best = &e;
        }
        return best;
    };
    const UltimatelyPeriodicWord* x = find_cycle_experiment(s_idx, true);
    const UltimatelyPeriodicWord* y = find_cycle_experiment(t_idx, false);
    if (!x || !y)
        throw InternalInvariantError("marking conflict lacks a recurring cycle experiment");
    auto connector = [&](int from, int to) {
        StateSet goal(n);
        goal.insert(to);
        std::optional<std::pair<Word, StateId>> path = shortest_word(ts, from, goal);
        if (!path) throw InternalInvariantError("conflict states are not connected");
        return path->first;
    };
    Conflict c{s[s_idx], s[t_idx], x->cycle(), y->cycle(),
               connector(s_idx, t_idx), connector(t_idx, s_idx)};
    return {std::nullopt, std::move(c)};
}

namespace detail {

inline Word word_concat(const Word& a, const Word& b) {
    Word out = a;
    out.insert(out.end(), b.begin(), b.end());
    return out;
}

inline Word word_power(const Word& w, int k) {
    Word out;
    out.reserve(w.size() * k);
    for (int i = 0; i < k; ++i) out.insert(out.end(), w.begin(), w.end());
    return out;
}

}  // namespace detail

/// Resolves a marking conflict by probing the candidate experiments
/// x^kz·y^ω, y^kw·x^ω and the (z′w′)-power family for growing k until one
/// distinguishes two currently merged states. All probed words end in x^ω
/// or y^ω (both outside D), so an honest teacher never answers don't-care.
inline UltimatelyPeriodicWord distinguishing_experiment(Teacher& teacher,
                                                        const ObservationTable& table,
                                                        const Conflict& c) {
    auto in_u = [&](const Word& spoke, const Word& cycle) {
        MemberAnswer ans = teacher.member(spoke, cycle);
        if (ans == MemberAnswer::dont_care)
            throw TeacherInconsistencyError(
                "membership query " + word_to_string(teacher.alphabet(), spoke) + "(" +
                word_to_string(teacher.alphabet(), cycle) +
                ") answered don't-care during conflict resolution");
        return ans == MemberAnswer::yes;
    };
    using detail::word_concat;
    using detail::word_power;
    int cap = 2 * static_cast<int>(table.prefixes().size()) + 64;
    for (int k = 1; k <= cap; ++k) {
        Word zp = word_concat(word_power(c.x, k), c.z);
        Word wp = word_concat(word_power(c.y, k), c.w);
        if (in_u(word_concat(c.s, zp), c.y)) return UltimatelyPeriodicWord(zp, c.y);
        if (!in_u(word_concat(c.t, wp), c.x)) return UltimatelyPeriodicWord(wp, c.x);
        for (int i = 1; i <= k; ++i) {
            Word zw = word_power(word_concat(zp, wp), i);
            Word wz = word_power(word_concat(wp, zp), i);
            if (!in_u(word_concat(c.s, zw), c.x)) return UltimatelyPeriodicWord(zw, c.x);
            Word wzw = word_concat(wz, wp);
            if (!in_u(word_concat(c.t, wzw), c.x)) return UltimatelyPeriodicWord(wzw, c.x);
            Word zwz = word_concat(zw, zp);
            if (in_u(word_concat(c.s, zwz), c.y)) return UltimatelyPeriodicWord(zwz, c.y);
            if (in_u(word_concat(c.t, wz), c.y)) return UltimatelyPeriodicWord(wz, c.y);
        }
    }
    throw TeacherInconsistencyError("conflict resolution found no distinguishing experiment up to k=" +
                                    std::to_string(cap));
}

/// Renders the table in the shape used for golden-file traces: a header of
/// experiment literals, S rows, a dashed rule, then boundary rows, with 1
/// for Yes and 0 for No.
inline void print_table(std::ostream& out, const ObservationTable& table) {
    const Alphabet& ab = table.alphabet();
    auto label_of = [&](const Word& w) { return word_to_string(ab, w); };
    auto width_of = [](const std::string& label) -> std::size_t {
        return label == "ε" ? 1 : label.size();
    };

    std::vector<Word> s_rows = table.prefixes();
    std::vector<Word> b_rows;
    for (const Word& t : table.boundary())
        if (!table.has_prefix(t)) b_rows.push_back(t);

    std::size_t label_w = 0;
    for (const Word& w : s_rows) label_w = std::max(label_w, width_of(label_of(w)));
    for (const Word& w : b_rows) label_w = std::max(label_w, width_of(label_of(w)));
    std::vector<std::string> headers;
    std::vector<std::size_t> col_w;
    for (const UltimatelyPeriodicWord& e : table.experiments()) {
        std::string h = word_to_string(ab, e.spoke());
        if (e.spoke().empty()) h.clear();
        h += "(" + word_to_string(ab, e.cycle()) + ")";
        col_w.push_back(h.size());
        headers.push_back(std::move(h));
    }

    auto emit = [&](const std::string& label, const std::vector<std::string>& cells) {
        std::string line = label;
        line.append(label_w - width_of(label), ' ');
        line += " |";
        for (std::size_t j = 0; j < cells.size(); ++j) {
            line += " " + cells[j];
            line.append(col_w[j] - cells[j].size(), ' ');
        }
        while (!line.empty() && line.back() == ' ') line.pop_back();
        out << line << "\n";
    };
    auto emit_row = [&](const Word& w) {
        std::vector<std::string> cells;
        const std::vector<bool>& r = table.row(w);
        for (bool v : r) cells.emplace_back(v ? "1" : "0");
        emit(label_of(w), cells);
    };

    out << "table |S|=" << s_rows.size() << " |E|=" << table.experiments().size() << "\n";
    emit("", headers);
    for (const Word& w : s_rows) emit_row(w);
    std::string rule(label_w + 1, '-');
    rule += "+";
    std::size_t tail = 0;
    for (std::size_t w : col_w) tail += w + 1;
    rule.append(tail, '-');
    out << rule << "\n";
    for (const Word& w : b_rows) emit_row(w);
    out << "\n";
}

/// Progress record of a learning run: one entry per closed table.
struct LearnLog {
    struct Iteration {
        int num_prefixes = 0;
        int num_experiments = 0;
        int num_states = 0;
        std::optional<StateSet> accepting;
        std::optional<Conflict> conflict;
        std::optional<UltimatelyPeriodicWord> experiment;
        std::optional<UltimatelyPeriodicWord> counterexample;
        bool confirmed = false;
    };
    std::vector<Iteration> iterations;
};

/// The learning loop: close the table, build T_{S,f}, mark; on conflict add
/// a distinguishing experiment, otherwise submit the hypothesis and process
/// the counterexample, until the teacher confirms. Returns a weak Büchi
/// automaton that is D-equivalent to U with Ind(∼_{U,D}) states.
inline OmegaAutomaton learn(Teacher& teacher, std::ostream* trace = nullptr,
                            LearnLog* log = nullptr) {
    ObservationTable table = make_observation_table(teacher);
    std::size_t last_size = 0;
    int stagnant = 0;
    for (;;) {
        close_table(table, teacher);
        DeterministicTransitionSystem ts = table_transition_system(table);
        if (trace) print_table(*trace, table);
        LearnLog::Iteration it;
        it.num_prefixes = static_cast<int>(table.prefixes().size());
        it.num_experiments = static_cast<int>(table.experiments().size());
        it.num_states = ts.num_states();

        MarkResult mr = mark(table, ts);
        if (mr.conflict) {
            it.conflict = mr.conflict;
            UltimatelyPeriodicWord exp = distinguishing_experiment(teacher, table, *mr.conflict);
            it.experiment = exp;
            if (log) log->iterations.push_back(std::move(it));
            add_experiment(table, teacher, exp);
        } else {
            it.accepting = mr.accepting;
            OmegaAutomaton hypothesis = OmegaAutomaton::buchi(ts, *mr.accepting, /*weak=*/true);
            std::optional<UltimatelyPeriodicWord> ce = teacher.equivalence(hypothesis);
            if (!ce) {
                it.confirmed = true;
                if (log) log->iterations.push_back(std::move(it));
                return hypothesis;
            }
            it.counterexample = ce;
            if (log) log->iterations.push_back(std::move(it));
            MemberAnswer probe = teacher.member(ce->spoke(), ce->cycle());
            if (probe == MemberAnswer::dont_care)
                throw TeacherInconsistencyError("counterexample " +
                                                word_to_string(teacher.alphabet(), ce->spoke()) +
                                                "(" + word_to_string(teacher.alphabet(), ce->cycle()) +
                                                ") lies in the don't-care set");
            if (accepts(hypothesis, *ce) == (probe == MemberAnswer::yes))
                throw TeacherInconsistencyError(
                    "equivalence query returned a word that is not a counterexample");
            add_experiment(table, teacher, *ce);
        }

        if (table.prefixes().size() > last_size) {
            last_size = table.prefixes().size();
            stagnant = 0;
        } else if (++stagnant > 2 * static_cast<int>(last_size) + 8) {
            throw TeacherInconsistencyError("learner is not discovering new states; "
                                            "teacher answers are inconsistent");
        }
    }
}

}  // namespace dcaut
