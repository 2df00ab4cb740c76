#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "dcaut/errors.hpp"

namespace dcaut {

/// A set of state indices over a fixed universe {0..n-1}. Plain bitset with
/// the handful of operations the algorithms need; totally ordered so it can
/// key std::map (memoization, family listings).
class StateSet {
public:
    StateSet() = default;

    explicit StateSet(int universe) : n_(universe), bits_((universe + 63) / 64, 0) {
        if (universe < 0) throw InvalidArgumentError("negative universe size");
    }

    static StateSet full(int universe) {
        StateSet s(universe);
        for (int i = 0; i < universe; ++i) s.insert(i);
        return s;
    }

    static StateSet of(int universe, std::initializer_list<int> elems) {
        StateSet s(universe);
        for (int e : elems) s.insert(e);
        return s;
    }

    int universe_size() const { return n_; }

    void insert(int i) {
        check(i);
        bits_[i >> 6] |= (uint64_t{1} << (i & 63));
    }

    void erase(int i) {
        check(i);
        bits_[i >> 6] &= ~(uint64_t{1} << (i & 63));
    }

    bool contains(int i) const {
        check(i);
        return (bits_[i >> 6] >> (i & 63)) & 1;
    }

    int count() const {
        int c = 0;
        for (uint64_t w : bits_) c += __builtin_popcountll(w);
        return c;
    }

    bool empty() const {
        for (uint64_t w : bits_)
            if (w) return false;
        return true;
    }

    StateSet& operator|=(const StateSet& o) {
        match(o);
        for (size_t i = 0; i < bits_.size(); ++i) bits_[i] |= o.bits_[i];
        return *this;
    }

    StateSet& operator&=(const StateSet& o) {
        match(o);
        for (size_t i = 0; i < bits_.size(); ++i) bits_[i] &= o.bits_[i];
        return *this;
    }

    StateSet& subtract(const StateSet& o) {
        match(o);
        for (size_t i = 0; i < bits_.size(); ++i) bits_[i] &= ~o.bits_[i];
        return *this;
    }

    friend StateSet operator|(StateSet a, const StateSet& b) { return a |= b; }
    friend StateSet operator&(StateSet a, const StateSet& b) { return a &= b; }
    friend StateSet operator-(StateSet a, const StateSet& b) { return a.subtract(b); }

    bool is_subset_of(const StateSet& o) const {
        match(o);
        for (size_t i = 0; i < bits_.size(); ++i)
            if (bits_[i] & ~o.bits_[i]) return false;
        return true;
    }

    bool intersects(const StateSet& o) const {
        match(o);
        for (size_t i = 0; i < bits_.size(); ++i)
            if (bits_[i] & o.bits_[i]) return true;
        return false;
    }

    bool operator==(const StateSet& o) const { return n_ == o.n_ && bits_ == o.bits_; }
    bool operator!=(const StateSet& o) const { return !(*this == o); }
    bool operator<(const StateSet& o) const {
        if (n_ != o.n_) return n_ < o.n_;
        return bits_ < o.bits_;
    }

    std::vector<int> elements() const {
        std::vector<int> out;
        for (int i = 0; i < n_; ++i)
            if (contains(i)) out.push_back(i);
        return out;
    }

    std::string to_string() const {
        std::string out = "{";
        bool first = true;
        for (int i = 0; i < n_; ++i) {
            if (!contains(i)) continue;
            if (!first) out += ",";
            out += std::to_string(i);
            first = false;
        }
        return out + "}";
    }

private:
    void check(int i) const {
        if (i < 0 || i >= n_) throw InvalidArgumentError("state index out of range");
    }
    void match(const StateSet& o) const {
        if (n_ != o.n_) throw InvalidArgumentError("state sets over different universes");
    }

    int n_ = 0;
    std::vector<uint64_t> bits_;
};

}  // namespace dcaut
