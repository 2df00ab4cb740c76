#pragma once

#include <algorithm>
#include <deque>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "dcaut/alphabet.hpp"
#include "dcaut/errors.hpp"
#include "dcaut/state_set.hpp"
#include "dcaut/upword.hpp"

namespace dcaut {

using StateId = int;

/// A complete deterministic transition system. Reachability of every state
/// is NOT enforced (parsed documents and enumerated tables keep their raw
/// shape); use trim() where a language-level operation needs it.
class DeterministicTransitionSystem {
public:
    DeterministicTransitionSystem(Alphabet alphabet, int num_states, StateId initial,
                                  std::vector<StateId> delta, std::vector<std::string> names = {})
        : alphabet_(std::move(alphabet)),
          num_states_(num_states),
          initial_(initial),
          delta_(std::move(delta)),
          names_(std::move(names)) {
        if (num_states_ <= 0) throw InvalidArgumentError("transition system needs at least one state");
        if (initial_ < 0 || initial_ >= num_states_)
            throw InvalidArgumentError("initial state out of range");
        if (static_cast<int>(delta_.size()) != num_states_ * alphabet_.size())
            throw InvalidArgumentError("transition table has the wrong size");
        for (StateId t : delta_)
            if (t < 0 || t >= num_states_)
                throw InvalidArgumentError("transition target out of range");
        if (names_.empty()) {
            names_.reserve(num_states_);
            for (int i = 0; i < num_states_; ++i) names_.push_back(std::to_string(i));
        } else if (static_cast<int>(names_.size()) != num_states_) {
            throw InvalidArgumentError("state name list has the wrong size");
        }
    }

    const Alphabet& alphabet() const { return alphabet_; }
    int num_states() const { return num_states_; }
    StateId initial() const { return initial_; }
    const std::string& name(StateId s) const { return names_[s]; }
    const std::vector<std::string>& names() const { return names_; }

    StateId next(StateId s, int letter) const { return delta_[s * alphabet_.size() + letter]; }

    const std::vector<StateId>& delta() const { return delta_; }

    StateId run_state(const Word& w, StateId from) const {
        StateId s = from;
        for (int a : w) s = next(s, a);
        return s;
    }
    StateId run_state(const Word& w) const { return run_state(w, initial_); }

    StateSet reachable_from(StateId s) const {
        StateSet seen(num_states_);
        std::deque<StateId> todo{s};
        seen.insert(s);
        while (!todo.empty()) {
            StateId q = todo.front();
            todo.pop_front();
            for (int a = 0; a < alphabet_.size(); ++a) {
                StateId t = next(q, a);
                if (!seen.contains(t)) {
                    seen.insert(t);
                    todo.push_back(t);
                }
            }
        }
        return seen;
    }

    bool is_trim() const { return reachable_from(initial_).count() == num_states_; }

    struct TrimResult;

    /// Restriction to the states reachable from the initial state, keeping
    /// their relative order.
    TrimResult trim() const;

    DeterministicTransitionSystem with_names(std::vector<std::string> names) const {
        return DeterministicTransitionSystem(alphabet_, num_states_, initial_, delta_, std::move(names));
    }

private:
    Alphabet alphabet_;
    int num_states_;
    StateId initial_;
    std::vector<StateId> delta_;
    std::vector<std::string> names_;
};

struct DeterministicTransitionSystem::TrimResult {
    DeterministicTransitionSystem ts;
    std::vector<StateId> old_to_new;  // -1 for dropped states
    std::vector<StateId> new_to_old;
};

inline DeterministicTransitionSystem::TrimResult DeterministicTransitionSystem::trim() const {
    StateSet keep = reachable_from(initial_);
    std::vector<StateId> old_to_new(num_states_, -1), new_to_old;
    for (int s = 0; s < num_states_; ++s)
        if (keep.contains(s)) {
            old_to_new[s] = static_cast<int>(new_to_old.size());
            new_to_old.push_back(s);
        }
    int m = static_cast<int>(new_to_old.size());
    std::vector<StateId> delta(m * alphabet_.size());
    std::vector<std::string> names(m);
    for (int s = 0; s < m; ++s) {
        names[s] = names_[new_to_old[s]];
        for (int a = 0; a < alphabet_.size(); ++a)
            delta[s * alphabet_.size() + a] = old_to_new[next(new_to_old[s], a)];
    }
    return {DeterministicTransitionSystem(alphabet_, m, old_to_new[initial_], std::move(delta),
                                          std::move(names)),
            std::move(old_to_new), std::move(new_to_old)};
}

/// The set of states visited infinitely often when reading w from `from`:
/// run the spoke, then apply the cycle until the cycle-application sequence
/// repeats a state, then collect everything visited letter-by-letter during
/// one period of that repetition.
inline StateSet inf_set(const DeterministicTransitionSystem& ts, const UltimatelyPeriodicWord& w,
                        StateId from) {
    StateId s = ts.run_state(w.spoke(), from);
    std::vector<int> seen_at(ts.num_states(), -1);
    std::vector<StateId> seq{s};
    seen_at[s] = 0;
    for (;;) {
        StateId t = ts.run_state(w.cycle(), seq.back());
        if (seen_at[t] >= 0) {
            StateSet inf(ts.num_states());
            StateId cur = t;
            int period = static_cast<int>(seq.size()) - seen_at[t];
            for (int i = 0; i < period; ++i)
                for (int a : w.cycle()) {
                    inf.insert(cur);
                    cur = ts.next(cur, a);
                }
            return inf;
        }
        seen_at[t] = static_cast<int>(seq.size());
        seq.push_back(t);
    }
}

inline StateSet inf_set(const DeterministicTransitionSystem& ts, const UltimatelyPeriodicWord& w) {
    return inf_set(ts, w, ts.initial());
}

/// Maximal strongly connected components of the subgraph induced by
/// `restrict_to` (the whole system if absent). Components are listed in
/// topological order of the component DAG: every edge goes from an earlier
/// component to a later one. A component is transient iff it is a single
/// state without a self-loop; transient states never carry an infinity set.
struct SccDecomposition {
    std::vector<StateSet> components;
    std::vector<int> component_of;  // -1 outside the restriction
    std::vector<bool> transient;

    int size() const { return static_cast<int>(components.size()); }
};

inline SccDecomposition msccs(const DeterministicTransitionSystem& ts,
                              const std::optional<StateSet>& restrict_to = std::nullopt) {
    int n = ts.num_states();
    int na = ts.alphabet().size();
    auto inside = [&](StateId s) { return !restrict_to || restrict_to->contains(s); };

    // Iterative Tarjan; neighbors in letter order, roots in state order.
    std::vector<int> index(n, -1), low(n, 0), comp(n, -1);
    std::vector<bool> on_stack(n, false);
    std::vector<StateId> stack;
    std::vector<StateSet> comps_rev;
    int counter = 0;

    struct Frame {
        StateId s;
        int next_letter;
    };
    std::vector<Frame> call;

    for (StateId root = 0; root < n; ++root) {
        if (!inside(root) || index[root] >= 0) continue;
        call.push_back({root, 0});
        index[root] = low[root] = counter++;
        stack.push_back(root);
        on_stack[root] = true;
        while (!call.empty()) {
            Frame& f = call.back();
            if (f.next_letter < na) {
                StateId t = ts.next(f.s, f.next_letter++);
                if (!inside(t)) continue;
                if (index[t] < 0) {
                    index[t] = low[t] = counter++;
                    stack.push_back(t);
                    on_stack[t] = true;
                    call.push_back({t, 0});
                } else if (on_stack[t]) {
                    low[f.s] = std::min(low[f.s], index[t]);
                }
            } else {
                StateId s = f.s;
                call.pop_back();
                if (!call.empty()) low[call.back().s] = std::min(low[call.back().s], low[s]);
                if (low[s] == index[s]) {
                    StateSet c(n);
                    for (;;) {
                        StateId t = stack.back();
                        stack.pop_back();
                        on_stack[t] = false;
                        comp[t] = static_cast<int>(comps_rev.size());
                        c.insert(t);
                        if (t == s) break;
                    }
                    comps_rev.push_back(std::move(c));
                }
            }
        }
    }

    SccDecomposition out;
    int k = static_cast<int>(comps_rev.size());
    out.components.reserve(k);
    for (int i = k - 1; i >= 0; --i) out.components.push_back(std::move(comps_rev[i]));
    out.component_of.assign(n, -1);
    for (StateId s = 0; s < n; ++s)
        if (comp[s] >= 0) out.component_of[s] = k - 1 - comp[s];
    out.transient.assign(k, false);
    for (int i = 0; i < k; ++i) {
        if (out.components[i].count() != 1) continue;
        StateId s = out.components[i].elements()[0];
        bool self = false;
        for (int a = 0; a < na && !self; ++a) self = ts.next(s, a) == s;
        out.transient[i] = !self;
    }
    return out;
}

/// Reachable synchronous product. State 0 is (initial, initial); discovery
/// order is BFS with letters in alphabet order, so the numbering is
/// canonical. proj1/proj2 send a product state to its components.
struct ProductTs {
    DeterministicTransitionSystem ts;
    std::vector<StateId> proj1, proj2;
    std::map<std::pair<StateId, StateId>, StateId> index;

    std::optional<StateId> find(StateId a, StateId b) const {
        auto it = index.find({a, b});
        if (it == index.end()) return std::nullopt;
        return it->second;
    }
};

inline ProductTs product(const DeterministicTransitionSystem& t1,
                         const DeterministicTransitionSystem& t2) {
    if (t1.alphabet() != t2.alphabet())
        throw InvalidArgumentError("product requires identical alphabets");
    int na = t1.alphabet().size();
    std::map<std::pair<StateId, StateId>, StateId> index;
    std::vector<std::pair<StateId, StateId>> states;
    std::deque<StateId> queue;
    auto intern = [&](StateId a, StateId b) {
        auto [it, fresh] = index.emplace(std::make_pair(a, b), static_cast<int>(states.size()));
        if (fresh) {
            states.emplace_back(a, b);
            queue.push_back(it->second);
        }
        return it->second;
    };
    intern(t1.initial(), t2.initial());
    std::vector<std::vector<StateId>> rows;
    while (!queue.empty()) {
        StateId s = queue.front();
        queue.pop_front();
        auto [p, q] = states[s];
        std::vector<StateId> row(na);
        for (int a = 0; a < na; ++a) row[a] = intern(t1.next(p, a), t2.next(q, a));
        if (static_cast<int>(rows.size()) <= s) rows.resize(s + 1);
        rows[s] = std::move(row);
    }
    int m = static_cast<int>(states.size());
    std::vector<StateId> flat;
    flat.reserve(static_cast<size_t>(m) * na);
    std::vector<std::string> names;
    names.reserve(m);
    std::vector<StateId> proj1, proj2;
    for (int s = 0; s < m; ++s) {
        for (int a = 0; a < na; ++a) flat.push_back(rows[s][a]);
        names.push_back("(" + t1.name(states[s].first) + "," + t2.name(states[s].second) + ")");
        proj1.push_back(states[s].first);
        proj2.push_back(states[s].second);
    }
    return {DeterministicTransitionSystem(t1.alphabet(), m, 0, std::move(flat), std::move(names)),
            std::move(proj1), std::move(proj2), std::move(index)};
}

/// Quotient by a state partition. Class ids are normalized by first
/// occurrence (scanning states in index order); the partition must be a
/// congruence, otherwise the witnessing (state pair, letter) is reported.
struct QuotientTs {
    DeterministicTransitionSystem ts;
    std::vector<StateId> h;  // original state -> quotient state
};

inline QuotientTs quotient(const DeterministicTransitionSystem& ts, const std::vector<int>& classes) {
    int n = ts.num_states();
    if (static_cast<int>(classes.size()) != n)
        throw InvalidArgumentError("partition has the wrong number of entries");
    std::map<int, int> remap;
    std::vector<int> h(n);
    std::vector<StateId> rep;
    for (int s = 0; s < n; ++s) {
        auto [it, fresh] = remap.emplace(classes[s], static_cast<int>(rep.size()));
        h[s] = it->second;
        if (fresh) rep.push_back(s);
    }
    int k = static_cast<int>(rep.size());
    int na = ts.alphabet().size();
    for (int s = 0; s < n; ++s)
        for (int a = 0; a < na; ++a)
            if (h[ts.next(s, a)] != h[ts.next(rep[h[s]], a)])
                throw PreconditionError(
                    "partition is not a congruence: states " + ts.name(rep[h[s]]) + " and " +
                    ts.name(s) + " are in one class but disagree on letter '" +
                    ts.alphabet().letter(a) + "'");
    std::vector<StateId> delta(k * na);
    std::vector<std::string> names(k);
    for (int c = 0; c < k; ++c) {
        names[c] = ts.name(rep[c]);
        for (int a = 0; a < na; ++a) delta[c * na + a] = h[ts.next(rep[c], a)];
    }
    return {DeterministicTransitionSystem(ts.alphabet(), k, h[ts.initial()], std::move(delta),
                                          std::move(names)),
            std::move(h)};
}

/// Lexicographically least shortest word from `from` to any state in `goal`,
/// moving only through states in `within` (everywhere if absent). Returns
/// the word and the reached goal state. A path of length zero is allowed.
inline std::optional<std::pair<Word, StateId>> shortest_word(
    const DeterministicTransitionSystem& ts, StateId from, const StateSet& goal,
    const std::optional<StateSet>& within = std::nullopt) {
    auto inside = [&](StateId s) { return !within || within->contains(s); };
    if (!inside(from)) return std::nullopt;
    int n = ts.num_states();
    std::vector<StateId> prev_state(n, -1);
    std::vector<int> prev_letter(n, -1);
    std::vector<bool> seen(n, false);
    std::deque<StateId> todo{from};
    seen[from] = true;
    // BFS with letters in alphabet order yields the lex-least shortest path.
    while (!todo.empty()) {
        StateId s = todo.front();
        todo.pop_front();
        if (goal.contains(s)) {
            Word w;
            for (StateId cur = s; cur != from; cur = prev_state[cur]) w.push_back(prev_letter[cur]);
            std::reverse(w.begin(), w.end());
            return std::make_pair(std::move(w), s);
        }
        for (int a = 0; a < ts.alphabet().size(); ++a) {
            StateId t = ts.next(s, a);
            if (!inside(t) || seen[t]) continue;
            seen[t] = true;
            prev_state[t] = s;
            prev_letter[t] = a;
            todo.push_back(t);
        }
    }
    return std::nullopt;
}

/// Least (length, lex) non-empty word labeling a cycle from `at` back to
/// `at` inside `within`. Exists iff at's component is non-transient.
inline std::optional<Word> shortest_nonempty_loop(const DeterministicTransitionSystem& ts, StateId at,
                                                  const std::optional<StateSet>& within = std::nullopt) {
    std::optional<Word> best;
    StateSet goal(ts.num_states());
    goal.insert(at);
    for (int a = 0; a < ts.alphabet().size(); ++a) {
        StateId t = ts.next(at, a);
        if (within && !within->contains(t)) continue;
        auto back = shortest_word(ts, t, goal, within);
        if (!back) continue;
        Word w{a};
        w.insert(w.end(), back->first.begin(), back->first.end());
        if (!best || w.size() < best->size()) best = std::move(w);
    }
    return best;
}

}  // namespace dcaut
