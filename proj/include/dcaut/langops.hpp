#pragma once

#include <algorithm>
#include <deque>
#include <map>
#include <optional>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "dcaut/automaton.hpp"
#include "dcaut/errors.hpp"
#include "dcaut/transition_system.hpp"

namespace dcaut {

/// Membership of an ultimately periodic word, evaluated on the infinity set
/// of its run.
inline bool accepts(const OmegaAutomaton& a, const UltimatelyPeriodicWord& w, StateId from) {
    StateSet inf = inf_set(a.ts(), w, from);
    if (a.kind() == AcceptanceKind::buchi) return inf.intersects(a.accepting());
    int mx = -1;
    for (int s : inf.elements()) mx = std::max(mx, a.priorities()[s]);
    return mx % 2 == 0;
}

inline bool accepts(const OmegaAutomaton& a, const UltimatelyPeriodicWord& w) {
    return accepts(a, w, a.ts().initial());
}

/// Asks for a word alpha outside the don't-care language with
/// alpha in L(left from left_state) xor alpha in L(right from right_state).
/// Value-semantic: copies its automata.
struct SeparationQuery {
    OmegaAutomaton left;
    StateId left_state;
    OmegaAutomaton right;
    StateId right_state;
    OmegaAutomaton dontcare;

    SeparationQuery(OmegaAutomaton l, StateId ls, OmegaAutomaton r, StateId rs, OmegaAutomaton d)
        : left(std::move(l)), left_state(ls), right(std::move(r)), right_state(rs),
          dontcare(std::move(d)) {
        if (left.alphabet() != right.alphabet() || left.alphabet() != dontcare.alphabet())
            throw InvalidArgumentError("separation query requires one common alphabet");
        if (left_state < 0 || left_state >= left.num_states() || right_state < 0 ||
            right_state >= right.num_states())
            throw InvalidArgumentError("separation query state out of range");
    }
};

namespace detail {

// Triple synchronous product (left x right x dontcare) reachable from the
// queried state pair, with the three per-state priority vectors.
struct TripleProduct {
    DeterministicTransitionSystem ts;
    std::vector<int> c1, c2, c3;
};

inline TripleProduct triple_product(const SeparationQuery& q) {
    std::vector<int> pl = q.left.parity_view();
    std::vector<int> pr = q.right.parity_view();
    std::vector<int> pd = q.dontcare.parity_view();
    int na = q.left.alphabet().size();
    std::map<std::tuple<StateId, StateId, StateId>, StateId> index;
    std::vector<std::tuple<StateId, StateId, StateId>> states;
    std::deque<StateId> queue;
    auto intern = [&](StateId a, StateId b, StateId c) {
        auto [it, fresh] = index.emplace(std::make_tuple(a, b, c), static_cast<int>(states.size()));
        if (fresh) {
            states.emplace_back(a, b, c);
            queue.push_back(it->second);
        }
        return it->second;
    };
    intern(q.left_state, q.right_state, q.dontcare.ts().initial());
    std::vector<std::vector<StateId>> rows;
    while (!queue.empty()) {
        StateId s = queue.front();
        queue.pop_front();
        auto [x, y, z] = states[s];
        std::vector<StateId> row(na);
        for (int a = 0; a < na; ++a)
            row[a] = intern(q.left.ts().next(x, a), q.right.ts().next(y, a),
                            q.dontcare.ts().next(z, a));
        if (static_cast<int>(rows.size()) <= s) rows.resize(s + 1);
        rows[s] = std::move(row);
    }
    int m = static_cast<int>(states.size());
    std::vector<StateId> flat;
    flat.reserve(static_cast<size_t>(m) * na);
    TripleProduct out{DeterministicTransitionSystem(q.left.alphabet(), 1, 0,
                                                    std::vector<StateId>(na, 0)),
                      {}, {}, {}};
    for (int s = 0; s < m; ++s) {
        for (int a = 0; a < na; ++a) flat.push_back(rows[s][a]);
        auto [x, y, z] = states[s];
        out.c1.push_back(pl[x]);
        out.c2.push_back(pr[y]);
        out.c3.push_back(pd[z]);
    }
    out.ts = DeterministicTransitionSystem(q.left.alphabet(), m, 0, std::move(flat));
    return out;
}

inline std::vector<int> sorted_values(const std::vector<int>& v) {
    std::vector<int> out = v;
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

}  // namespace detail

/// A canonical separating lasso, or absent when the two state languages
/// agree on every word outside the don't-care language. The returned
/// witness is re-checked against all three automata before being handed
/// out; a failed check is a bug, not a caller error.
inline std::optional<UltimatelyPeriodicWord> separating_lasso(const SeparationQuery& q) {
    detail::TripleProduct prod = detail::triple_product(q);
    int n = prod.ts.num_states();
    std::vector<int> vals1 = detail::sorted_values(prod.c1);
    std::vector<int> vals2 = detail::sorted_values(prod.c2);
    std::vector<int> vals3 = detail::sorted_values(prod.c3);

    for (int i : vals1) {
        for (int j : vals2) {
            if ((i + j) % 2 == 0) continue;  // need opposite acceptance
            for (int k : vals3) {
                if (k % 2 == 0) continue;  // the witness must stay outside D
                StateSet allowed(n);
                for (int s = 0; s < n; ++s)
                    if (prod.c1[s] <= i && prod.c2[s] <= j && prod.c3[s] <= k) allowed.insert(s);
                if (allowed.empty()) continue;
                SccDecomposition dec = msccs(prod.ts, allowed);
                // Least reachable component whose maxima hit (i,j,k) exactly.
                std::optional<std::pair<Word, StateId>> entry;
                std::optional<int> chosen;
                for (int c = 0; c < dec.size(); ++c) {
                    if (dec.transient[c]) continue;
                    int m1 = -1, m2 = -1, m3 = -1;
                    for (int s : dec.components[c].elements()) {
                        m1 = std::max(m1, prod.c1[s]);
                        m2 = std::max(m2, prod.c2[s]);
                        m3 = std::max(m3, prod.c3[s]);
                    }
                    if (m1 != i || m2 != j || m3 != k) continue;
                    auto e = shortest_word(prod.ts, prod.ts.initial(), dec.components[c]);
                    if (!e) continue;  // not reachable (cut off outside restriction is fine)
                    if (!entry || e->first.size() < entry->first.size()) {
                        entry = e;
                        chosen = c;
                    }
                }
                if (!chosen) continue;
                const StateSet& comp = dec.components[*chosen];
                // Cycle through the least states attaining each maximum.
                StateId t1 = -1, t2 = -1, t3 = -1;
                for (int s : comp.elements()) {
                    if (t1 < 0 && prod.c1[s] == i) t1 = s;
                    if (t2 < 0 && prod.c2[s] == j) t2 = s;
                    if (t3 < 0 && prod.c3[s] == k) t3 = s;
                }
                Word cycle;
                StateId cur = entry->second;
                for (StateId target : {t1, t2, t3}) {
                    StateSet goal(n);
                    goal.insert(target);
                    auto leg = shortest_word(prod.ts, cur, goal, comp);
                    if (!leg) throw InternalInvariantError("separating lasso: disconnected component");
                    cycle.insert(cycle.end(), leg->first.begin(), leg->first.end());
                    cur = target;
                }
                {
                    StateSet goal(n);
                    goal.insert(entry->second);
                    auto leg = shortest_word(prod.ts, cur, goal, comp);
                    if (!leg) throw InternalInvariantError("separating lasso: disconnected component");
                    cycle.insert(cycle.end(), leg->first.begin(), leg->first.end());
                }
                if (cycle.empty()) {
                    auto loop = shortest_nonempty_loop(prod.ts, entry->second, comp);
                    if (!loop) throw InternalInvariantError("separating lasso: no cycle in component");
                    cycle = *loop;
                }
                UltimatelyPeriodicWord w(entry->first, cycle);
                bool inl = accepts(q.left, w, q.left_state);
                bool inr = accepts(q.right, w, q.right_state);
                bool ind = accepts(q.dontcare, w);
                if (inl == inr || ind)
                    throw InternalInvariantError("separating lasso failed verification");
                return w;
            }
        }
    }
    return std::nullopt;
}

/// Language equivalence up to the don't-care set, from the initial states.
/// Returns a counterexample word outside D, or absent if equivalent.
inline std::optional<UltimatelyPeriodicWord> d_equivalent(const OmegaAutomaton& a,
                                                          const OmegaAutomaton& b,
                                                          const OmegaAutomaton& dontcare) {
    return separating_lasso(
        SeparationQuery(a, a.ts().initial(), b, b.ts().initial(), dontcare));
}

/// True iff membership in L(A) only depends on word tails: every pair of
/// reachable states has the same state language.
inline bool has_trivial_rc(const OmegaAutomaton& a) {
    OmegaAutomaton at = a.trimmed();
    OmegaAutomaton none = empty_language_automaton(at.alphabet());
    for (StateId p = 0; p < at.num_states(); ++p)
        for (StateId q = p + 1; q < at.num_states(); ++q)
            if (separating_lasso(SeparationQuery(at, p, at, q, none))) return false;
    return true;
}

/// Partition of the reachable states by D-relative language equivalence
/// (two states are equivalent iff their languages agree outside D). Holds a
/// trimmed copy of the automaton it partitions plus, for every pair of
/// distinct classes, a canonical witness word separating them.
class CongruencePartition {
public:
    CongruencePartition(OmegaAutomaton owner, std::vector<int> classes, int num_classes,
                        std::map<std::pair<int, int>, UltimatelyPeriodicWord> witnesses)
        : owner_(std::move(owner)), classes_(std::move(classes)), num_classes_(num_classes),
          witnesses_(std::move(witnesses)) {}

    const OmegaAutomaton& owner() const { return owner_; }
    const std::vector<int>& classes() const { return classes_; }
    int num_classes() const { return num_classes_; }
    int class_of(StateId s) const { return classes_.at(s); }

    StateId representative(int cls) const {
        for (StateId s = 0; s < static_cast<int>(classes_.size()); ++s)
            if (classes_[s] == cls) return s;
        throw InvalidArgumentError("no such class");
    }

    /// Witness separating two distinct classes (order-insensitive).
    const UltimatelyPeriodicWord& witness(int c1, int c2) const {
        auto it = witnesses_.find({std::min(c1, c2), std::max(c1, c2)});
        if (it == witnesses_.end()) throw InvalidArgumentError("no witness for this class pair");
        return it->second;
    }

    const std::map<std::pair<int, int>, UltimatelyPeriodicWord>& witnesses() const {
        return witnesses_;
    }

private:
    OmegaAutomaton owner_;
    std::vector<int> classes_;
    int num_classes_;
    std::map<std::pair<int, int>, UltimatelyPeriodicWord> witnesses_;
};

/// Computes the D-relative congruence partition of A's reachable states.
/// Requires the don't-care language to have trivial right-congruence
/// (otherwise the relation need not be well defined on words).
inline CongruencePartition d_congruence(const OmegaAutomaton& a, const OmegaAutomaton& dontcare) {
    if (a.alphabet() != dontcare.alphabet())
        throw InvalidArgumentError("automaton and don't-care set need one common alphabet");
    {
        OmegaAutomaton dt = dontcare.trimmed();
        OmegaAutomaton none = empty_language_automaton(dt.alphabet());
        for (StateId p = 0; p < dt.num_states(); ++p)
            for (StateId q = p + 1; q < dt.num_states(); ++q)
                if (separating_lasso(SeparationQuery(dt, p, dt, q, none)))
                    throw PreconditionError(
                        "don't-care language lacks a trivial right-congruence: states " +
                        dt.ts().name(p) + " and " + dt.ts().name(q) + " differ");
    }
    OmegaAutomaton at = a.trimmed();
    std::vector<int> classes(at.num_states(), -1);
    std::vector<StateId> reps;
    std::map<std::pair<int, int>, UltimatelyPeriodicWord> witnesses;
    for (StateId s = 0; s < at.num_states(); ++s) {
        std::vector<UltimatelyPeriodicWord> found;
        int cls = -1;
        for (int c = 0; c < static_cast<int>(reps.size()); ++c) {
            auto w = separating_lasso(SeparationQuery(at, reps[c], at, s, dontcare));
            if (!w) {
                cls = c;
                break;
            }
            found.push_back(*w);
        }
        if (cls >= 0) {
            classes[s] = cls;
            continue;
        }
        int fresh = static_cast<int>(reps.size());
        classes[s] = fresh;
        for (int c = 0; c < fresh; ++c) witnesses.emplace(std::make_pair(c, fresh), found[c]);
        reps.push_back(s);
    }
    return CongruencePartition(std::move(at), std::move(classes),
                               static_cast<int>(reps.size()), std::move(witnesses));
}

/// The quotient of A's (trimmed) transition system by the D-relative
/// congruence, plus the projection map and the partition it came from.
struct CongruenceQuotient {
    DeterministicTransitionSystem ts;
    std::vector<StateId> h;  // trimmed-A state -> quotient state
    CongruencePartition partition;
};

inline CongruenceQuotient congruence_quotient(const OmegaAutomaton& a,
                                              const OmegaAutomaton& dontcare) {
    CongruencePartition part = d_congruence(a, dontcare);
    QuotientTs q = quotient(part.owner().ts(), part.classes());
    return {std::move(q.ts), std::move(q.h), std::move(part)};
}

}  // namespace dcaut
