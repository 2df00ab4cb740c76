#pragma once

#include <algorithm>
#include <climits>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <utility>
#include <vector>

#include "dcaut/automaton.hpp"
#include "dcaut/errors.hpp"
#include "dcaut/langops.hpp"
#include "dcaut/state_set.hpp"
#include "dcaut/transition_system.hpp"

namespace dcaut {

/// Answers "union of all relevant inf-set images of type t inside P"
/// queries against a quotient T' of an automaton A, relative to a don't-care
/// automaton D. Type 0 sets come from accepted words outside D, type 1 sets
/// from rejected words outside D; both are images under h of inf-sets of A.
///
/// Implemented on the synchronous product of A and D: a set is a relevant
/// inf-set image iff it is the h-image of a strongly connected, edged
/// subgraph of the product whose A-priority maximum has parity t and whose
/// D-priority maximum is odd. subset_union(P, t) never enumerates the
/// families; it scans maxima pairs and reads them off component-wise.
/// Queries are memoized; the object is not thread-safe.
class FamilyOracle {
public:
    FamilyOracle(const OmegaAutomaton& a, const OmegaAutomaton& dontcare,
                 const DeterministicTransitionSystem& tprime, const std::vector<StateId>& h)
        : num_quotient_states_(tprime.num_states()),
          product_(DeterministicTransitionSystem(a.alphabet(), 1, 0,
                                                 std::vector<StateId>(a.alphabet().size(), 0))) {
        if (a.alphabet() != dontcare.alphabet() || a.alphabet() != tprime.alphabet())
            throw InvalidArgumentError("family oracle requires one common alphabet");
        if (static_cast<int>(h.size()) != a.num_states())
            throw InvalidArgumentError("quotient map has the wrong size");
        std::vector<bool> hit(tprime.num_states(), false);
        for (StateId s = 0; s < a.num_states(); ++s) {
            if (h[s] < 0 || h[s] >= tprime.num_states())
                throw InvalidArgumentError("quotient map target out of range");
            hit[h[s]] = true;
            for (int l = 0; l < a.alphabet().size(); ++l)
                if (h[a.ts().next(s, l)] != tprime.next(h[s], l))
                    throw PreconditionError("quotient map is not a homomorphism: state " +
                                            a.ts().name(s) + " under letter '" +
                                            a.alphabet().letter(l) + "'");
        }
        if (h[a.ts().initial()] != tprime.initial())
            throw PreconditionError("quotient map does not preserve the initial state");
        for (int qs = 0; qs < tprime.num_states(); ++qs)
            if (!hit[qs])
                throw PreconditionError("quotient map is not surjective: state " +
                                        tprime.name(qs) + " has no preimage");

        std::vector<int> ap = a.parity_view();
        std::vector<int> dp = dontcare.parity_view();
        ProductTs prod = dcaut::product(a.ts(), dontcare.ts());
        a_prio_.reserve(prod.ts.num_states());
        d_prio_.reserve(prod.ts.num_states());
        h_.reserve(prod.ts.num_states());
        for (int s = 0; s < prod.ts.num_states(); ++s) {
            a_prio_.push_back(ap[prod.proj1[s]]);
            d_prio_.push_back(dp[prod.proj2[s]]);
            h_.push_back(h[prod.proj1[s]]);
        }
        product_ = std::move(prod.ts);
    }

    int quotient_size() const { return num_quotient_states_; }
    const DeterministicTransitionSystem& product() const { return product_; }
    int product_a_priority(StateId s) const { return a_prio_.at(s); }
    int product_d_priority(StateId s) const { return d_prio_.at(s); }
    StateId product_image(StateId s) const { return h_.at(s); }

    /// Union of all type-t relevant inf-set images contained in P.
    StateSet subset_union(const StateSet& p, int t) const {
        if (p.universe_size() != num_quotient_states_)
            throw InvalidArgumentError("query set is over the wrong universe");
        if (t != 0 && t != 1) throw InvalidArgumentError("set type must be 0 or 1");
        auto key = std::make_pair(p, t);
        auto memo = memo_.find(key);
        if (memo != memo_.end()) return memo->second;

        int n = product_.num_states();
        StateSet result(num_quotient_states_);
        std::vector<int> avals = distinct_sorted(a_prio_), dvals = distinct_sorted(d_prio_);
        for (int i : avals) {
            if (i % 2 != t) continue;
            for (int j : dvals) {
                if (j % 2 == 0) continue;
                StateSet allowed(n);
                for (int s = 0; s < n; ++s)
                    if (p.contains(h_[s]) && a_prio_[s] <= i && d_prio_[s] <= j) allowed.insert(s);
                if (allowed.empty()) continue;
                SccDecomposition dec = msccs(product_, allowed);
                for (int c = 0; c < dec.size(); ++c) {
                    if (dec.transient[c]) continue;
                    int m1 = -1, m2 = -1;
                    for (int s : dec.components[c].elements()) {
                        m1 = std::max(m1, a_prio_[s]);
                        m2 = std::max(m2, d_prio_[s]);
                    }
                    if (m1 != i || m2 != j) continue;
                    for (int s : dec.components[c].elements()) result.insert(h_[s]);
                }
            }
        }
        memo_.emplace(std::move(key), result);
        return result;
    }

private:
    static std::vector<int> distinct_sorted(const std::vector<int>& v) {
        std::set<int> s(v.begin(), v.end());
        return std::vector<int>(s.begin(), s.end());
    }

    int num_quotient_states_;
    DeterministicTransitionSystem product_;
    std::vector<int> a_prio_, d_prio_;
    std::vector<StateId> h_;
    mutable std::map<std::pair<StateSet, int>, StateSet> memo_;
};

inline FamilyOracle build_family_oracle(const OmegaAutomaton& a, const OmegaAutomaton& dontcare,
                                        const DeterministicTransitionSystem& tprime,
                                        const std::vector<StateId>& h) {
    return FamilyOracle(a, dontcare, tprime, h);
}

/// Oracle for A against its own transition system (identity map).
inline FamilyOracle build_family_oracle(const OmegaAutomaton& a, const OmegaAutomaton& dontcare) {
    std::vector<StateId> id(a.num_states());
    for (int s = 0; s < a.num_states(); ++s) id[s] = s;
    return FamilyOracle(a, dontcare, a.ts(), id);
}

/// Explicitly listed families, mostly for tests and cross-checks; answers
/// the same queries as FamilyOracle.
struct ExplicitFamilies {
    std::vector<StateSet> f0, f1;

    StateSet subset_union(const StateSet& p, int t) const {
        StateSet out(p.universe_size());
        for (const StateSet& r : (t == 0 ? f0 : f1))
            if (r.is_subset_of(p)) out |= r;
        return out;
    }
};

/// A parity assignment over quotient states plus its distinct-value count.
struct ChainAssignment {
    std::vector<int> priorities;
    int distinct_count = 0;
};

/// Outcome of the optimal consistent parity search: either an assignment
/// using the minimum possible number of distinct priorities, or the
/// strongly connected set of states within which no consistent condition
/// can exist.
struct ParitySearchResult {
    std::optional<ChainAssignment> assignment;
    StateSet offending_component;
};

namespace detail {

/// Core of the search. Per component of T', priorities are found by
/// repeatedly peeling X <- U(X, type), alternating the type: states leaving
/// at level k take the k-th priority from the top. Both top parities are
/// tried; fewer levels wins and ties prefer an even bottom. Failure of both
/// attempts (the peel reaches a fixpoint) certifies that no consistent
/// condition exists at all. States in no family set, including all
/// transient states, are harmless and get the minimum used priority.
inline ParitySearchResult peel_chains(const DeterministicTransitionSystem& tprime,
                                      const std::function<StateSet(const StateSet&, int)>& U) {
    int n = tprime.num_states();
    ParitySearchResult res;
    res.offending_component = StateSet(n);
    StateSet constrained = U(StateSet::full(n), 0) | U(StateSet::full(n), 1);
    std::vector<int> prios(n, -1);

    struct Attempt {
        bool ok = false;
        std::vector<StateSet> levels;  // top first
        int bottom_parity = 0;
        StateSet stuck;
    };
    auto attempt = [&](const StateSet& comp, int top_parity) {
        Attempt at;
        at.stuck = StateSet(n);
        StateSet x = comp;
        int t = top_parity;
        while (!x.empty()) {
            StateSet next = U(x, 1 - t);
            if (next == x) {
                at.stuck = x;
                return at;
            }
            at.levels.push_back(x - next);
            at.bottom_parity = t;
            x = next;
            t = 1 - t;
        }
        at.ok = true;
        return at;
    };

    SccDecomposition dec = msccs(tprime);
    for (int c = 0; c < dec.size(); ++c) {
        if (dec.transient[c]) continue;
        Attempt even = attempt(dec.components[c], 0);
        Attempt odd = attempt(dec.components[c], 1);
        const Attempt* pick = nullptr;
        if (even.ok && odd.ok)
            pick = even.levels.size() < odd.levels.size()   ? &even
                   : odd.levels.size() < even.levels.size() ? &odd
                   : even.bottom_parity == 0                ? &even
                                                            : &odd;
        else if (even.ok)
            pick = &even;
        else if (odd.ok)
            pick = &odd;
        else {
            res.offending_component = even.stuck;
            return res;
        }
        int m = static_cast<int>(pick->levels.size());
        for (int k = 0; k < m; ++k)
            for (int s : pick->levels[k].elements()) prios[s] = (m - 1 - k) + pick->bottom_parity;
    }

    int min_used = INT_MAX;
    for (int s = 0; s < n; ++s)
        if (prios[s] >= 0 && constrained.contains(s)) min_used = std::min(min_used, prios[s]);
    if (min_used == INT_MAX) min_used = 0;
    for (int s = 0; s < n; ++s)
        if (prios[s] < 0 || !constrained.contains(s)) prios[s] = min_used;

    std::set<int> distinct(prios.begin(), prios.end());
    res.assignment = ChainAssignment{std::move(prios), static_cast<int>(distinct.size())};
    return res;
}

}  // namespace detail

inline ParitySearchResult optimal_consistent_parity(const FamilyOracle& oracle,
                                                    const DeterministicTransitionSystem& tprime) {
    if (tprime.num_states() != oracle.quotient_size())
        throw InvalidArgumentError("quotient system does not match the oracle");
    return detail::peel_chains(
        tprime, [&](const StateSet& p, int t) { return oracle.subset_union(p, t); });
}

inline ParitySearchResult optimal_consistent_parity(const ExplicitFamilies& families,
                                                    const DeterministicTransitionSystem& tprime) {
    return detail::peel_chains(
        tprime, [&](const StateSet& p, int t) { return families.subset_union(p, t); });
}

/// Reassigns priorities of A to the minimum possible number of distinct
/// values without changing the language relative to the don't-care set.
inline OmegaAutomaton optimize_priorities(const OmegaAutomaton& a, const OmegaAutomaton& dontcare) {
    FamilyOracle oracle = build_family_oracle(a, dontcare);
    ParitySearchResult res = optimal_consistent_parity(oracle, a.ts());
    if (!res.assignment)
        throw InternalInvariantError("no consistent condition on the automaton's own system");
    return OmegaAutomaton::parity(a.ts(), std::move(res.assignment->priorities));
}

/// Optimal consistent condition on a given quotient T' of A, or absent when
/// no condition on T' matches A's language outside the don't-care set.
struct QuotientOptimization {
    std::optional<OmegaAutomaton> automaton;
    StateSet offending_component;
};

inline QuotientOptimization optimize_on_quotient(const OmegaAutomaton& a,
                                                 const OmegaAutomaton& dontcare,
                                                 const DeterministicTransitionSystem& tprime,
                                                 const std::vector<StateId>& h) {
    FamilyOracle oracle = build_family_oracle(a, dontcare, tprime, h);
    ParitySearchResult res = optimal_consistent_parity(oracle, tprime);
    if (!res.assignment) return {std::nullopt, res.offending_component};
    return {OmegaAutomaton::parity(tprime, std::move(res.assignment->priorities)),
            StateSet(tprime.num_states())};
}

enum class TargetClass { parity, buchi, cobuchi };

/// Canonical-quotient minimization: quotient A by the D-relative congruence
/// and put a condition of the requested class on it. Absent (with the
/// component that cannot be handled) when the language, relative to D, has
/// no such automaton over its canonical structure. Co-Buchi results are
/// parity automata with priorities within {0,1}, Buchi results carry an
/// explicit accepting set.
struct IrcMinimization {
    std::optional<OmegaAutomaton> automaton;
    StateSet offending_component;
};

inline IrcMinimization minimize_to_irc(const OmegaAutomaton& a, const OmegaAutomaton& dontcare,
                                       TargetClass target) {
    CongruenceQuotient cq = congruence_quotient(a, dontcare);
    FamilyOracle oracle(cq.partition.owner(), dontcare, cq.ts, cq.h);
    int n = cq.ts.num_states();

    if (target == TargetClass::parity) {
        ParitySearchResult res = optimal_consistent_parity(oracle, cq.ts);
        if (!res.assignment) return {std::nullopt, res.offending_component};
        return {OmegaAutomaton::parity(cq.ts, std::move(res.assignment->priorities)), StateSet(n)};
    }

    SccDecomposition dec = msccs(cq.ts);
    if (target == TargetClass::buchi) {
        StateSet acc(n);
        for (int c = 0; c < dec.size(); ++c) {
            if (dec.transient[c]) continue;
            const StateSet& comp = dec.components[c];
            StateSet rejecting = oracle.subset_union(comp, 1);
            if (!oracle.subset_union(rejecting, 0).empty()) return {std::nullopt, comp};
            acc |= comp - rejecting;
        }
        return {OmegaAutomaton::buchi(cq.ts, std::move(acc)), StateSet(n)};
    }

    // co-Buchi: priorities within {0,1}.
    std::vector<int> prios(n, 1);
    for (int c = 0; c < dec.size(); ++c) {
        if (dec.transient[c]) continue;
        const StateSet& comp = dec.components[c];
        StateSet accepting = oracle.subset_union(comp, 0);
        if (!oracle.subset_union(accepting, 1).empty()) return {std::nullopt, comp};
        for (int s : accepting.elements()) prios[s] = 0;
    }
    return {OmegaAutomaton::parity(cq.ts, std::move(prios)), StateSet(n)};
}

/// The unique minimal weak Buchi automaton for L(W) relative to the
/// don't-care set: the congruence quotient with one acceptance bit per
/// component. Components realized by no relevant word are rejecting.
inline OmegaAutomaton minimize_wdba(const OmegaAutomaton& w, const OmegaAutomaton& dontcare) {
    if (w.kind() != AcceptanceKind::buchi)
        throw InvalidArgumentError("weak minimization expects a Buchi automaton");
    OmegaAutomaton wt = w.trimmed();
    {
        std::string bad;
        if (!is_mscc_uniform(wt.ts(), wt.accepting(), &bad))
            throw PreconditionError("automaton is not weak: component " + bad +
                                    " mixes accepting and rejecting states");
    }
    OmegaAutomaton wp = OmegaAutomaton::parity(wt.ts(), wt.parity_view());
    CongruenceQuotient cq = congruence_quotient(wp, dontcare);
    FamilyOracle oracle(cq.partition.owner(), dontcare, cq.ts, cq.h);
    int n = cq.ts.num_states();
    StateSet acc(n);
    SccDecomposition dec = msccs(cq.ts);
    for (int c = 0; c < dec.size(); ++c) {
        if (dec.transient[c]) continue;
        const StateSet& comp = dec.components[c];
        bool has_accepted = !oracle.subset_union(comp, 0).empty();
        bool has_rejected = !oracle.subset_union(comp, 1).empty();
        if (has_accepted && has_rejected)
            throw InternalInvariantError("weak quotient component " + comp.to_string() +
                                         " carries both accepted and rejected words");
        if (has_accepted) acc |= comp;
    }
    return OmegaAutomaton::buchi(cq.ts, std::move(acc), /*weak=*/true);
}

/// Lexicographically least consistent priority map with values in
/// {0..max_priorities-1}, or absent. Guarded against large searches.
inline std::optional<std::vector<int>> brute_force_consistent_parity(const ExplicitFamilies& families,
                                                                     int num_states,
                                                                     int max_priorities) {
    if (num_states <= 0 || max_priorities <= 0)
        throw InvalidArgumentError("state and priority counts must be positive");
    double combos = 1;
    for (int i = 0; i < num_states; ++i) {
        combos *= max_priorities;
        if (combos > 1e7)
            throw ResourceLimitError("brute-force parity search would exceed 1e7 assignments");
    }
    auto consistent = [&](const std::vector<int>& c) {
        for (int t = 0; t < 2; ++t)
            for (const StateSet& r : (t == 0 ? families.f0 : families.f1)) {
                int mx = -1;
                for (int s : r.elements()) mx = std::max(mx, c[s]);
                if (mx < 0 || mx % 2 != t) return false;
            }
        return true;
    };
    std::vector<int> c(num_states, 0);
    for (;;) {
        if (consistent(c)) return c;
        int i = num_states - 1;
        while (i >= 0 && ++c[i] == max_priorities) c[i--] = 0;
        if (i < 0) return std::nullopt;
    }
}

}  // namespace dcaut
