#pragma once

#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "dcaut/errors.hpp"
#include "dcaut/state_set.hpp"
#include "dcaut/transition_system.hpp"

namespace dcaut {

enum class AcceptanceKind { parity, buchi };

/// True iff every component either lies inside `accepting` or misses it.
inline bool is_mscc_uniform(const DeterministicTransitionSystem& ts, const StateSet& accepting,
                            std::string* offending = nullptr) {
    SccDecomposition dec = msccs(ts);
    for (int c = 0; c < dec.size(); ++c) {
        const StateSet& comp = dec.components[c];
        if (!comp.intersects(accepting) || comp.is_subset_of(accepting)) continue;
        if (offending) *offending = comp.to_string();
        return false;
    }
    return true;
}

/// A deterministic omega-automaton: a complete transition system plus either
/// a max-even parity condition or a Buchi set (optionally flagged weak,
/// which is validated, never assumed). Value type; immutable once built.
class OmegaAutomaton {
public:
    static OmegaAutomaton parity(DeterministicTransitionSystem ts, std::vector<int> priorities) {
        if (static_cast<int>(priorities.size()) != ts.num_states())
            throw InvalidArgumentError("priority list has the wrong size");
        for (int p : priorities)
            if (p < 0) throw InvalidArgumentError("priorities must be non-negative");
        OmegaAutomaton a(std::move(ts));
        a.kind_ = AcceptanceKind::parity;
        a.priorities_ = std::move(priorities);
        return a;
    }

    static OmegaAutomaton buchi(DeterministicTransitionSystem ts, StateSet accepting,
                                bool weak = false) {
        if (accepting.universe_size() != ts.num_states())
            throw InvalidArgumentError("accepting set is over the wrong universe");
        if (weak) {
            std::string bad;
            if (!is_mscc_uniform(ts, accepting, &bad))
                throw InvalidArgumentError("automaton is not weak: component " + bad +
                                           " mixes accepting and rejecting states");
        }
        OmegaAutomaton a(std::move(ts));
        a.kind_ = AcceptanceKind::buchi;
        a.accepting_ = std::move(accepting);
        a.weak_ = weak;
        return a;
    }

    AcceptanceKind kind() const { return kind_; }
    const DeterministicTransitionSystem& ts() const { return ts_; }
    const Alphabet& alphabet() const { return ts_.alphabet(); }
    int num_states() const { return ts_.num_states(); }
    bool is_weak() const { return weak_; }

    const std::vector<int>& priorities() const {
        if (kind_ != AcceptanceKind::parity)
            throw InvalidArgumentError("not a parity automaton");
        return priorities_;
    }

    const StateSet& accepting() const {
        if (kind_ != AcceptanceKind::buchi)
            throw InvalidArgumentError("not a Buchi automaton");
        return accepting_;
    }

    /// Max-even parity priorities with the same language: parity automata
    /// keep their map, Buchi states become 2 (accepting) / 1 (rejecting).
    std::vector<int> parity_view() const {
        if (kind_ == AcceptanceKind::parity) return priorities_;
        std::vector<int> p(ts_.num_states(), 1);
        for (int s : accepting_.elements()) p[s] = 2;
        return p;
    }

    /// Priorities 0 (accepting) / 1 (rejecting). Language-preserving only
    /// for weak automata, hence restricted to them.
    std::vector<int> cobuchi_view() const {
        if (kind_ != AcceptanceKind::buchi || !weak_)
            throw InvalidArgumentError("co-Buchi view is defined for weak Buchi automata only");
        std::vector<int> p(ts_.num_states(), 1);
        for (int s : accepting_.elements()) p[s] = 0;
        return p;
    }

    int distinct_priority_count() const {
        std::set<int> vals(priorities().begin(), priorities().end());
        return static_cast<int>(vals.size());
    }

    OmegaAutomaton trimmed() const {
        auto tr = ts_.trim();
        if (kind_ == AcceptanceKind::parity) {
            std::vector<int> p;
            p.reserve(tr.new_to_old.size());
            for (StateId s : tr.new_to_old) p.push_back(priorities_[s]);
            return parity(std::move(tr.ts), std::move(p));
        }
        StateSet acc(tr.ts.num_states());
        for (int s = 0; s < tr.ts.num_states(); ++s)
            if (accepting_.contains(tr.new_to_old[s])) acc.insert(s);
        return buchi(std::move(tr.ts), std::move(acc), weak_);
    }

private:
    explicit OmegaAutomaton(DeterministicTransitionSystem ts) : ts_(std::move(ts)) {}

    DeterministicTransitionSystem ts_;
    AcceptanceKind kind_ = AcceptanceKind::parity;
    std::vector<int> priorities_;
    StateSet accepting_;
    bool weak_ = false;
};

/// The empty don't-care set as an automaton: one all-rejecting state.
inline OmegaAutomaton empty_language_automaton(const Alphabet& alphabet) {
    std::vector<StateId> delta(alphabet.size(), 0);
    return OmegaAutomaton::parity(
        DeterministicTransitionSystem(alphabet, 1, 0, std::move(delta)), {1});
}

}  // namespace dcaut
