#pragma once

#include <algorithm>
#include <set>
#include <tuple>
#include <vector>

#include "dcaut/alphabet.hpp"
#include "dcaut/errors.hpp"

namespace dcaut {

/// An ultimately periodic word u·v^ω, always held in canonical form:
///   - the cycle v is primitive (not a power of a shorter word), and
///   - the spoke u is rolled: while u ends with the same letter the cycle
///     ends with, that letter is dropped from u and v is rotated right.
/// Two canonical forms are structurally equal iff they denote the same word,
/// so operator== is language-level equality.
class UltimatelyPeriodicWord {
public:
    UltimatelyPeriodicWord(Word spoke, Word cycle) {
        if (cycle.empty()) throw InvalidArgumentError("ultimately periodic word needs a non-empty cycle");
        // Primitive root of the cycle.
        int n = static_cast<int>(cycle.size());
        for (int p = 1; p <= n; ++p) {
            if (n % p != 0) continue;
            bool ok = true;
            for (int i = p; i < n && ok; ++i) ok = cycle[i] == cycle[i - p];
            if (ok) {
                cycle.resize(p);
                break;
            }
        }
        // Roll the spoke into the cycle.
        while (!spoke.empty() && spoke.back() == cycle.back()) {
            spoke.pop_back();
            std::rotate(cycle.begin(), cycle.end() - 1, cycle.end());
        }
        spoke_ = std::move(spoke);
        cycle_ = std::move(cycle);
    }

    const Word& spoke() const { return spoke_; }
    const Word& cycle() const { return cycle_; }

    /// The word with its first letter removed (still canonical).
    UltimatelyPeriodicWord tail() const {
        if (!spoke_.empty()) return UltimatelyPeriodicWord(Word(spoke_.begin() + 1, spoke_.end()), cycle_);
        Word c = cycle_;
        std::rotate(c.begin(), c.begin() + 1, c.end());
        return UltimatelyPeriodicWord({}, std::move(c));
    }

    /// All distinct suffixes (including the word itself), in the order they
    /// appear while peeling letters from the front.
    std::vector<UltimatelyPeriodicWord> suffix_closure() const {
        std::vector<UltimatelyPeriodicWord> out;
        std::set<UltimatelyPeriodicWord> seen;
        UltimatelyPeriodicWord cur = *this;
        while (seen.insert(cur).second) {
            out.push_back(cur);
            cur = cur.tail();
        }
        return out;
    }

    int letter_at(size_t i) const {
        if (i < spoke_.size()) return spoke_[i];
        return cycle_[(i - spoke_.size()) % cycle_.size()];
    }

    /// First n letters, for unfolding-based cross-checks.
    Word unfold(size_t n) const {
        Word out;
        out.reserve(n);
        for (size_t i = 0; i < n; ++i) out.push_back(letter_at(i));
        return out;
    }

    size_t length() const { return spoke_.size() + cycle_.size(); }

    bool operator==(const UltimatelyPeriodicWord& o) const {
        return spoke_ == o.spoke_ && cycle_ == o.cycle_;
    }
    bool operator!=(const UltimatelyPeriodicWord& o) const { return !(*this == o); }
    bool operator<(const UltimatelyPeriodicWord& o) const {
        return std::tie(spoke_, cycle_) < std::tie(o.spoke_, o.cycle_);
    }

private:
    Word spoke_, cycle_;
};

inline UltimatelyPeriodicWord normalize_upword(Word spoke, Word cycle) {
    return UltimatelyPeriodicWord(std::move(spoke), std::move(cycle));
}

/// Orders experiment columns the way new table columns are appended:
/// total length, then spoke, then cycle.
struct UpwordLengthLess {
    bool operator()(const UltimatelyPeriodicWord& a, const UltimatelyPeriodicWord& b) const {
        if (a.length() != b.length()) return a.length() < b.length();
        return std::tie(a.spoke(), a.cycle()) < std::tie(b.spoke(), b.cycle());
    }
};

}  // namespace dcaut
