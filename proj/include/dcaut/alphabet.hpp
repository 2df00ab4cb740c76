#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "dcaut/errors.hpp"

namespace dcaut {

/// A finite, ordered set of letters. The given order is THE order: every
/// lexicographic tie-break in the library uses letter indices.
class Alphabet {
public:
    Alphabet() = default;

    explicit Alphabet(std::vector<std::string> letters) : letters_(std::move(letters)) {
        if (letters_.empty())
            throw InvalidArgumentError("alphabet must contain at least one letter");
        for (int i = 0; i < static_cast<int>(letters_.size()); ++i) {
            const std::string& tok = letters_[i];
            if (tok.empty())
                throw InvalidArgumentError("alphabet letter may not be empty");
            if (tok.find_first_of(" \t\r\n(),[]") != std::string::npos)
                throw InvalidArgumentError("alphabet letter '" + tok +
                                           "' contains a delimiter character");
            if (!index_.emplace(tok, i).second)
                throw InvalidArgumentError("duplicate alphabet letter '" + tok + "'");
        }
    }

    int size() const { return static_cast<int>(letters_.size()); }

    const std::string& letter(int i) const {
        if (i < 0 || i >= size()) throw InvalidArgumentError("letter index out of range");
        return letters_[i];
    }

    const std::vector<std::string>& letters() const { return letters_; }

    std::optional<int> find(const std::string& tok) const {
        auto it = index_.find(tok);
        if (it == index_.end()) return std::nullopt;
        return it->second;
    }

    int index_of(const std::string& tok) const {
        auto i = find(tok);
        if (!i) throw InvalidArgumentError("letter '" + tok + "' is not in the alphabet");
        return *i;
    }

    /// True when every letter is a single character; controls the compact
    /// word syntax ("ab(a)" instead of "[a,b](a)").
    bool single_char() const {
        for (const auto& l : letters_)
            if (l.size() != 1) return false;
        return true;
    }

    bool operator==(const Alphabet& o) const { return letters_ == o.letters_; }
    bool operator!=(const Alphabet& o) const { return !(*this == o); }

private:
    std::vector<std::string> letters_;
    std::map<std::string, int> index_;
};

/// A finite word as letter indices into some Alphabet.
using Word = std::vector<int>;

/// Renders a finite word; empty word prints as the empty-word symbol.
inline std::string word_to_string(const Alphabet& a, const Word& w) {
    if (w.empty()) return "ε";  // ε
    std::string out;
    bool compact = a.single_char();
    for (size_t i = 0; i < w.size(); ++i) {
        if (!compact && i > 0) out += ',';
        out += a.letter(w[i]);
    }
    return out;
}

/// Shortlex: by length first, then letter indices.
struct ShortlexLess {
    bool operator()(const Word& a, const Word& b) const {
        if (a.size() != b.size()) return a.size() < b.size();
        return a < b;
    }
};

}  // namespace dcaut
